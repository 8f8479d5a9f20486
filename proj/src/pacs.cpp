#include "pacsim/pacs.hpp"

#include <cmath>

namespace pacsim {

int pacs_dim(const PacsSpec& spec) {
    return default_dim(std::norm(spec.alpha) + spec.n);
}

FockVector pacs_state(const PacsSpec& spec, int dim) {
    FockVector psi = coherent_state(spec.alpha, dim);
    for (int rep = 0; rep < spec.n; ++rep) {
        Vec raised = Vec::Zero(dim);
        for (int m = 0; m < dim - 1; ++m)
            raised[m + 1] = std::sqrt(static_cast<double>(m + 1)) * psi.amps[m];
        psi.amps = raised;
    }
    // the creation operator must not push weight against the truncation edge
    if (std::norm(psi.amps[dim - 1]) > 1e-10 * psi.amps.squaredNorm())
        throw TruncationError("pacs_state: support reaches the truncation edge");
    psi.normalize();
    return psi;
}

FockVector pacs_state_displaced(const PacsSpec& spec, int dim) {
    int n = spec.n;
    if (n >= dim) throw TruncationError("pacs_state_displaced: dim <= n");
    // build on a larger space so the displacement passes its lower-half
    // unitarity check, then truncate
    int work_dim = 2 * (dim + default_dim(std::norm(spec.alpha)));
    for (int attempt = 0;; ++attempt) {
        Vec core = Vec::Zero(work_dim);
        Complex ac = std::conj(spec.alpha);
        for (int m = 0; m <= n; ++m) {
            double mag =
                std::exp(log_factorial(n) - 0.5 * log_factorial(m) - log_factorial(n - m));
            core[m] = mag * std::pow(ac, n - m);
        }
        try {
            FockOperator d = displacement(spec.alpha, work_dim);
            Vec full = d.elems * core;
            FockVector psi{full.head(dim)};
            psi.normalize();
            return psi;
        } catch (const TruncationError&) {
            // the unitarity check on the working space can fail for large
            // displacements; retry with more headroom before giving up
            if (attempt >= 3) throw;
            work_dim *= 2;
        }
    }
}

double normalization(const PacsSpec& spec) {
    double a2 = std::norm(spec.alpha);
    return std::exp(-0.5 * log_factorial(spec.n)) / std::sqrt(laguerre(spec.n, 0, -a2));
}

Complex antinormal_moment(int m, int n, Complex alpha) {
    if (m < 0 || n < 0) throw std::invalid_argument("antinormal_moment: negative order");
    if (m < n) return std::conj(antinormal_moment(n, m, alpha));
    double a2 = std::norm(alpha);
    if (m > n && a2 == 0.0) return 0.0;
    return std::pow(alpha, m - n) * std::exp(log_factorial(n)) * laguerre(n, m - n, -a2);
}

double gain(const PacsSpec& spec) {
    if (spec.alpha == Complex(0.0, 0.0)) throw UndefinedGain();
    double a2 = std::norm(spec.alpha);
    return laguerre(spec.n, 1, -a2) / laguerre(spec.n, 0, -a2);
}

QuadStats quad_stats(const PacsSpec& spec) {
    int n = spec.n;
    double a2 = std::norm(spec.alpha);
    double l0 = laguerre(n, 0, -a2);
    double l1 = laguerre(n, 1, -a2);
    double l2 = laguerre(n, 2, -a2);
    double lnp1 = laguerre(n + 1, 0, -a2);
    QuadStats qs;
    qs.vx = 2.0 / l0 * (a2 * l2 + (n + 1) * lnp1) - 1.0 - 4.0 * a2 * (l1 / l0) * (l1 / l0);
    qs.vp = 2.0 / l0 * ((n + 1) * lnp1 - a2 * l2) - 1.0;
    qs.cov_xp = 0.0;
    qs.mean_x = 2.0 * std::abs(spec.alpha) * l1 / l0;
    qs.mean_p = 0.0;
    return qs;
}

double deterministic_amp_variance(double g) {
    if (g < 1.0) throw std::invalid_argument("deterministic_amp_variance: g must be >= 1");
    return 2.0 * g * g - 1.0;
}

double fano(const PacsSpec& spec) {
    int n = spec.n;
    double a2 = std::norm(spec.alpha);
    double l0 = laguerre(n, 0, -a2);
    double l1 = laguerre(n + 1, 0, -a2);
    double l2 = laguerre(n + 2, 0, -a2);
    double mean = (n + 1) * l1 / l0 - 1.0;  // <n> = <a a^dag> - 1
    if (mean <= 0.0) throw UndefinedFano();
    return ((n + 2) * (n + 1) * l2 - 2.0 * l0) / ((n + 1) * l1 - l0) -
           (n + 1) * l1 / l0 - 2.0;
}

double coherent_fidelity(const PacsSpec& spec, Complex beta) {
    int n = spec.n;
    double a2 = std::norm(spec.alpha);
    double b2 = std::norm(beta);
    if (b2 == 0.0 && n > 0) return 0.0;
    double log_f = n * std::log(b2 > 0 ? b2 : 1.0) - std::norm(spec.alpha - beta) -
                   log_factorial(n);
    return std::exp(log_f) / laguerre(n, 0, -a2);
}

Complex beta_opt(const PacsSpec& spec) {
    double a2 = std::norm(spec.alpha);
    if (a2 == 0.0) return std::sqrt(static_cast<double>(spec.n));
    return 0.5 * spec.alpha * (1.0 + std::sqrt(1.0 + 4.0 * spec.n / a2));
}

}  // namespace pacsim
