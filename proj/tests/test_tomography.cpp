#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pacsim/pacs.hpp"
#include "pacsim/tomography.hpp"

#include <cmath>
#include <numbers>

using namespace pacsim;

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<double> phases6() {
    std::vector<double> p;
    for (int i = 0; i < 6; ++i) p.push_back(kPi * i / 6.0);
    return p;
}

// ideal PACS truncated to the reconstruction dimension
FockVector truncated_pacs(const PacsSpec& spec, int dim_rec) {
    FockVector full = pacs_state(spec, pacs_dim(spec));
    FockVector out{full.amps.head(dim_rec)};
    out.normalize();
    return out;
}
}  // namespace

TEST_CASE("bin_records") {
    std::vector<double> edges = {-1.0, 0.0, 1.0};
    std::vector<double> phases = {0.0, 0.5};
    std::vector<QuadratureRecord> recs = {
        {0.0, -0.5}, {0.0, 0.5}, {0.5, 0.5}, {0.0, -0.5}};
    BinnedData data = bin_records(recs, phases, edges);
    CHECK(data.total == 4);
    CHECK(data.counts[0][0] == 2);
    CHECK(data.counts[0][1] == 1);
    CHECK(data.counts[1][1] == 1);
    CHECK_THROWS_AS(bin_records({{0.3, 0.0}}, phases, edges), PhaseNotOnGrid);
}

TEST_CASE("closed loop on a coherent state, eta = 1") {
    Complex alpha(0.5, 0.0);
    int dim_sim = default_dim(std::norm(alpha));
    DensityMatrix rho = DensityMatrix::from_pure(coherent_state(alpha, dim_sim));
    auto phases = phases6();
    auto records = sample_dataset(rho, phases, std::vector<int>(6, 5000), 1.0, 3);
    auto edges = default_bin_edges(101, 8.0, 10.0);
    BinnedData data = bin_records(records, phases, edges);
    int dim_rec = 10;
    std::vector<HomodynePovm> povms;
    for (double theta : phases) povms.push_back(build_povm(theta, edges, 1.0, dim_rec));
    auto [rec, report] = maxlik_reconstruct(data, povms, dim_rec);
    CHECK(state_fidelity(rec, coherent_state(alpha, dim_rec)) > 0.99);
    CHECK(report.iterations > 0);
    // monotone likelihood
    for (std::size_t i = 1; i < report.likelihood_trace.size(); ++i)
        CHECK(report.likelihood_trace[i] >= report.likelihood_trace[i - 1] - 1e-9);
    rec.check_valid(1e-9, 1e-9, 1e-9);
}

TEST_CASE("loss-compensated reconstruction undoes simulated loss") {
    PacsSpec spec{Complex(0.8, 0.0), 1};
    int dim_sim = pacs_dim(spec);
    DensityMatrix rho = DensityMatrix::from_pure(pacs_state(spec, dim_sim));
    auto phases = phases6();
    double eta = 0.7;
    auto records = sample_dataset(rho, phases, std::vector<int>(6, 8000), eta, 11);
    auto edges = default_bin_edges(101, 8.0, 10.0);
    BinnedData data = bin_records(records, phases, edges);
    int dim_rec = 12;
    std::vector<HomodynePovm> povms;
    for (double theta : phases) povms.push_back(build_povm(theta, edges, eta, dim_rec));
    auto [rec, report] = maxlik_reconstruct(data, povms, dim_rec);
    CHECK(state_fidelity(rec, truncated_pacs(spec, dim_rec)) > 0.97);
}

TEST_CASE("options are honored") {
    std::vector<double> edges = default_bin_edges(41, 6.0, 8.0);
    std::vector<double> phases = {0.0, kPi / 2.0};
    DensityMatrix rho = DensityMatrix::from_pure(fock_state(0, 6));
    auto records = sample_dataset(rho, phases, {2000, 2000}, 1.0, 5);
    BinnedData data = bin_records(records, phases, edges);
    std::vector<HomodynePovm> povms;
    for (double theta : phases) povms.push_back(build_povm(theta, edges, 1.0, 6));
    MaxLikOptions opts;
    opts.max_iter = 3;
    auto [rec, report] = maxlik_reconstruct(data, povms, 6, opts);
    CHECK(report.iterations == 3);
    CHECK(report.stop_reason == StopReason::max_iter);

    MaxLikOptions diluted;
    diluted.dilution = 0.5;
    diluted.max_iter = 200;
    auto [rec2, report2] = maxlik_reconstruct(data, povms, 6, diluted);
    CHECK(state_fidelity(rec2, fock_state(0, 6)) > 0.98);
}

TEST_CASE("loss sweep peaks at the true efficiency") {
    PacsSpec spec{Complex(0.7, 0.0), 1};
    int dim_sim = pacs_dim(spec);
    DensityMatrix rho = DensityMatrix::from_pure(pacs_state(spec, dim_sim));
    auto phases = phases6();
    double eta_true = 0.6;
    auto records = sample_dataset(rho, phases, std::vector<int>(6, 6000), eta_true, 17);
    auto edges = default_bin_edges(101, 8.0, 10.0);
    BinnedData data = bin_records(records, phases, edges);
    MaxLikOptions opts;
    opts.max_iter = 300;
    FockVector target = truncated_pacs(spec, 12);
    auto [curve, best] =
        loss_sweep_fidelity(data, target, {0.4, 0.5, 0.6, 0.7, 0.8}, opts);
    CHECK(std::abs(best - eta_true) < 0.11);
    CHECK(curve.size() == 5);
}
