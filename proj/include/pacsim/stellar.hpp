#ifndef PACSIM_STELLAR_HPP
#define PACSIM_STELLAR_HPP

#include "pacsim/fock.hpp"

#include <vector>

namespace pacsim {

struct GaussianParams {
    Complex beta;       // displacement
    double r = 0.0;     // squeezing magnitude, >= 0
    double theta = 0.0; // squeezing angle
};

struct UnsupportedRank : std::runtime_error {
    explicit UnsupportedRank(const std::string& what) : std::runtime_error(what) {}
};
struct OutOfGrid : std::runtime_error {
    explicit OutOfGrid(const std::string& what) : std::runtime_error(what) {}
};
struct CubicRootStructureViolation : std::runtime_error {
    explicit CubicRootStructureViolation(const std::string& what) : std::runtime_error(what) {}
};

// Fidelity threshold F_th,k(alpha) for certifying stellar rank k by fidelity
// with the n-photon-added coherent state. Rank k >= 2 entries are best-effort
// lower bounds (multi-start local optimization).
struct ThresholdCurve {
    std::vector<double> alpha_grid;
    std::vector<double> f_th;
    int rank = 0;
    int target_n = 0;
    bool lower_bound = false;
};

// Fock expansion of the squeezed coherent state (Hermite-polynomial
// amplitudes). Norm must close to 1e-8 at the given truncation.
FockVector gaussian_fock_expansion(const GaussianParams& g, int dim);

struct GaussianFidelityResult {
    double f_max = 0.0;
    double b_opt = 0.0;
    double r_opt = 0.0;
};

// Maximum fidelity of (a^*|0> + |1>)/sqrt(1+a^2) with a pure Gaussian state,
// from the stationarity cubic a^2 z^3 + 9 z^2 - (6+a^2) z + 1 = 0, z = e^{-2r}.
GaussianFidelityResult gaussian_fidelity_n1(double a);

// Max fidelity of |psi> with U_G (c_0|0> + .. + c_{k-1}|k-1>), optimized over
// the Gaussian unitary by multi-start Nelder-Mead; the superposition
// coefficients are eliminated exactly by projection.
double max_rank_k_fidelity(const FockVector& psi, int k, int starts = 32);

// Undisplaced PACS core: normalized superposition of |0>..|n> whose
// displacement by alpha gives the n-photon-added coherent state.
FockVector pacs_core_state(double alpha, int n, int dim);

ThresholdCurve threshold_curve(int n, int k, const std::vector<double>& alpha_grid);

// Largest curve rank with F_measured > F_th(alpha); 0 when below all curves.
int witness(double f_measured, const std::vector<ThresholdCurve>& curves, double alpha);

}  // namespace pacsim

#endif
