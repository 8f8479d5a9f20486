#ifndef PACSIM_TOMOGRAPHY_HPP
#define PACSIM_TOMOGRAPHY_HPP

#include "pacsim/homodyne.hpp"

#include <vector>

namespace pacsim {

struct PhaseNotOnGrid : std::runtime_error {
    explicit PhaseNotOnGrid(const std::string& what) : std::runtime_error(what) {}
};

// Histogram of quadrature records over a (phase, bin) grid.
struct BinnedData {
    std::vector<double> phases;
    std::vector<double> bin_edges;
    std::vector<std::vector<long>> counts;  // counts[phase][bin]
    long total = 0;
};

enum class StopReason { converged, max_iter };

struct MaxLikReport {
    int iterations = 0;
    double log_likelihood = 0.0;
    StopReason stop_reason = StopReason::max_iter;
    std::vector<double> likelihood_trace;
    int floored_bins = 0;  // nonzero-count bins that hit the probability floor
};

struct MaxLikOptions {
    int max_iter = 2000;
    double tol = 1e-9;           // max relative bin-probability change
    double prob_floor = 1e-12;
    double dilution = 0.0;       // 0 = plain RrhoR; else rho <- (1-e)rho + e step
    bool check_invariants = true;
};

BinnedData bin_records(const std::vector<QuadratureRecord>& records,
                       const std::vector<double>& phases,
                       const std::vector<double>& bin_edges);

// Iterative RrhoR maximum-likelihood reconstruction, one POVM per phase.
std::pair<DensityMatrix, MaxLikReport> maxlik_reconstruct(
    const BinnedData& data, const std::vector<HomodynePovm>& povms, int dim,
    const MaxLikOptions& opts = {});

// Reconstruct assuming each efficiency in eta_grid, score against true_state.
// Returns the fidelity curve and the argmax efficiency.
std::pair<std::vector<double>, double> loss_sweep_fidelity(
    const BinnedData& data, const FockVector& true_state,
    const std::vector<double>& eta_grid, const MaxLikOptions& opts = {});

}  // namespace pacsim

#endif
