#include "pacsim/tomography.hpp"

#include <algorithm>
#include <cmath>

namespace pacsim {

BinnedData bin_records(const std::vector<QuadratureRecord>& records,
                       const std::vector<double>& phases,
                       const std::vector<double>& bin_edges) {
    if (bin_edges.size() < 2) throw BadBinning("bin_records: need at least one bin");
    BinnedData data;
    data.phases = phases;
    data.bin_edges = bin_edges;
    int bins = static_cast<int>(bin_edges.size()) - 1;
    data.counts.assign(phases.size(), std::vector<long>(bins, 0));

    for (const auto& rec : records) {
        int phase_idx = -1;
        for (std::size_t i = 0; i < phases.size(); ++i) {
            if (std::abs(rec.theta - phases[i]) < 1e-9) {
                phase_idx = static_cast<int>(i);
                break;
            }
        }
        if (phase_idx < 0)
            throw PhaseNotOnGrid("bin_records: record phase " + std::to_string(rec.theta) +
                                 " not on the phase grid");
        auto it = std::upper_bound(bin_edges.begin(), bin_edges.end(), rec.x);
        int bin = std::clamp(static_cast<int>(it - bin_edges.begin()) - 1, 0, bins - 1);
        ++data.counts[phase_idx][bin];
        ++data.total;
    }
    return data;
}

std::pair<DensityMatrix, MaxLikReport> maxlik_reconstruct(
    const BinnedData& data, const std::vector<HomodynePovm>& povms, int dim,
    const MaxLikOptions& opts) {
    if (povms.size() != data.phases.size())
        throw DimMismatch("maxlik_reconstruct: one POVM per phase required");
    if (povms.size() < 2)
        throw std::invalid_argument("maxlik_reconstruct: at least 2 phases required");
    for (const auto& povm : povms)
        if (povm.dim() != dim) throw DimMismatch("maxlik_reconstruct: POVM dim mismatch");

    // flatten occupied cells
    struct Cell {
        const Mat* op;
        double freq;
    };
    std::vector<Cell> cells;
    for (std::size_t p = 0; p < povms.size(); ++p) {
        for (std::size_t b = 0; b < data.counts[p].size(); ++b) {
            long c = data.counts[p][b];
            if (c > 0)
                cells.push_back({&povms[p].elements[b],
                                 static_cast<double>(c) / static_cast<double>(data.total)});
        }
    }
    if (cells.empty()) throw std::invalid_argument("maxlik_reconstruct: empty dataset");

    DensityMatrix rho = DensityMatrix::maximally_mixed(dim);
    MaxLikReport report;
    std::vector<double> probs(cells.size(), 0.0), prev_probs(cells.size(), 0.0);
    double prev_loglik = -std::numeric_limits<double>::infinity();

    for (int iter = 0; iter < opts.max_iter; ++iter) {
        double loglik = 0.0;
        Mat r = Mat::Zero(dim, dim);
        for (std::size_t j = 0; j < cells.size(); ++j) {
            double p = (cells[j].op->conjugate().cwiseProduct(rho.elems)).sum().real();
            if (p < opts.prob_floor) {
                p = opts.prob_floor;
                if (iter == 0) ++report.floored_bins;
            }
            probs[j] = p;
            loglik += cells[j].freq * std::log(p);
            r += (cells[j].freq / p) * (*cells[j].op);
        }
        report.likelihood_trace.push_back(loglik);
        report.iterations = iter + 1;
        report.log_likelihood = loglik;

        if (opts.check_invariants && loglik < prev_loglik - 1e-10 * std::max(1.0, std::abs(prev_loglik)))
            throw std::runtime_error("maxlik_reconstruct: likelihood decreased");
        prev_loglik = loglik;

        Mat step = r * rho.elems * r;
        Mat next = (opts.dilution > 0.0)
                       ? Mat((1.0 - opts.dilution) * rho.elems + opts.dilution * step)
                       : step;
        next /= next.trace().real();
        rho.elems = 0.5 * (next + Mat(next.adjoint()));

        if (opts.check_invariants) rho.check_valid(1e-9, 1e-9, 1e-9);

        if (iter > 0) {
            double max_change = 0.0;
            for (std::size_t j = 0; j < cells.size(); ++j)
                max_change = std::max(max_change, std::abs(probs[j] - prev_probs[j]) /
                                                      std::max(probs[j], opts.prob_floor));
            if (max_change < opts.tol) {
                report.stop_reason = StopReason::converged;
                return {rho, report};
            }
        }
        prev_probs = probs;
    }
    report.stop_reason = StopReason::max_iter;
    return {rho, report};
}

std::pair<std::vector<double>, double> loss_sweep_fidelity(
    const BinnedData& data, const FockVector& true_state,
    const std::vector<double>& eta_grid, const MaxLikOptions& opts) {
    int dim = true_state.dim();
    std::vector<double> fidelities;
    fidelities.reserve(eta_grid.size());
    double best_eta = eta_grid.empty() ? 1.0 : eta_grid.front();
    double best_f = -1.0;
    for (double eta : eta_grid) {
        std::vector<HomodynePovm> povms;
        povms.reserve(data.phases.size());
        for (double theta : data.phases)
            povms.push_back(build_povm(theta, data.bin_edges, eta, dim));
        auto [rho, report] = maxlik_reconstruct(data, povms, dim, opts);
        double f = state_fidelity(rho, true_state);
        fidelities.push_back(f);
        if (f > best_f) {
            best_f = f;
            best_eta = eta;
        }
    }
    return {fidelities, best_eta};
}

}  // namespace pacsim
