#ifndef PACSIM_PACS_HPP
#define PACSIM_PACS_HPP

#include "pacsim/fock.hpp"

namespace pacsim {

// n-photon-added coherent state N a^dag^n |alpha>
struct PacsSpec {
    Complex alpha;
    int n = 0;
};

// Quadrature statistics in vacuum-variance-1 units, quadrature axis aligned
// with arg(alpha).
struct QuadStats {
    double vx = 0.0;
    double vp = 0.0;
    double cov_xp = 0.0;
    double mean_x = 0.0;
    double mean_p = 0.0;
};

// Suggested truncation for a given PACS.
int pacs_dim(const PacsSpec& spec);

// Normalized a^dag^n |alpha> by repeated creation-operator action.
FockVector pacs_state(const PacsSpec& spec, int dim);

// Same state built as a displaced superposition of the first n+1 Fock states;
// independent construction route kept for cross-validation.
FockVector pacs_state_displaced(const PacsSpec& spec, int dim);

// N_n(alpha) = [n! L_n(-|alpha|^2)]^{-1/2}
double normalization(const PacsSpec& spec);

// <alpha| a^m a^dag^n |alpha> = alpha^{m-n} n! L_n^{(m-n)}(-|alpha|^2), m >= n;
// the m < n case follows by conjugation.
Complex antinormal_moment(int m, int n, Complex alpha);

// Amplification gain g_n = L_n^{(1)}(-|alpha|^2) / L_n(-|alpha|^2).
// Throws UndefinedGain at alpha = 0.
double gain(const PacsSpec& spec);

// Closed-form quadrature variances; cov_xp vanishes identically.
QuadStats quad_stats(const PacsSpec& spec);

// Quadrature variance 2g^2 - 1 of a deterministic phase-insensitive amplifier
// with gain g; the benchmark PACS amplification beats.
double deterministic_amp_variance(double g);

// Fano factor <(dn)^2>/<n>. Throws UndefinedFano for vacuum.
double fano(const PacsSpec& spec);

// |<beta|alpha,n>|^2
double coherent_fidelity(const PacsSpec& spec, Complex beta);

// Coherent amplitude maximizing coherent_fidelity; sqrt(n) in the alpha -> 0
// limit.
Complex beta_opt(const PacsSpec& spec);

}  // namespace pacsim

#endif
