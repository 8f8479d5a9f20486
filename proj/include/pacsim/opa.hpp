#ifndef PACSIM_OPA_HPP
#define PACSIM_OPA_HPP

#include "pacsim/fock.hpp"

namespace pacsim {

// Pure signal (x) idler amplitude grid, amps(s, i).
struct TwoModeState {
    Mat amps;
    int dim_signal() const { return static_cast<int>(amps.rows()); }
    int dim_idler() const { return static_cast<int>(amps.cols()); }
    double norm() const { return amps.norm(); }
};

struct OpaParams {
    double lambda = 0.0;  // tanh of the interaction strength, in [0,1)
    Complex alpha;        // coherent seed of the signal mode
};

// Spatially multiplexed click-detector PNRD.
struct PnrdModel {
    double eta = 1.0;  // single-photon detector efficiency
    int channels = 1;  // multiplexing arms
};

struct UnsupportedConfiguration : std::runtime_error {
    explicit UnsupportedConfiguration(const std::string& what) : std::runtime_error(what) {}
};

// U_OPA (|alpha>_S |0>_I) via the factored decomposition
// e^{lambda aS^dag aI^dag} (1-lambda^2)^{(nS+nI+1)/2} e^{-lambda aS aI}.
TwoModeState opa_apply(const OpaParams& params, int dim_signal, int dim_idler);

// Same state by dense exponentiation of kappa(aS^dag aI^dag - aS aI) on the
// product space; validation route, O((dS*dI)^3).
TwoModeState opa_apply_dense(const OpaParams& params, int dim_signal, int dim_idler);

// Signal state conditional on n idler photons, with its heralding probability.
std::pair<FockVector, double> herald_n(const TwoModeState& state, int n);

// Closed-form heralding probability
// P_H = (1-l^2) l^{2n} L_n(-(1-l^2)|alpha|^2) e^{-l^2 |alpha|^2}.
double heralding_probability(const OpaParams& params, int n);

// P_R(alpha, n) = P_H(alpha,n)/P_H(0,n) = L_n(-|alpha|^2) in the small-lambda
// limit.
double relative_heralding(Complex alpha, int n);

// Probability that n incident photons produce an n-fold coincidence across the
// model's arms under even splitting: eta^n c!/((c-n)! c^n).
double pnrd_accept_prob(const PnrdModel& model, int n);

// Probability that n+1 incident photons still trigger only an n-fold
// coincidence (false herald); diagnostic only, not folded into rates.
double pnrd_false_herald_prob(const PnrdModel& model, int n);

// Per-pulse heralding rate proxy: P_H * accept probability.
double end_to_end_rate(const OpaParams& params, const PnrdModel& model, int n);

}  // namespace pacsim

#endif
