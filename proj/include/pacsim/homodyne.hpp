#ifndef PACSIM_HOMODYNE_HPP
#define PACSIM_HOMODYNE_HPP

#include "pacsim/fock.hpp"

#include <cstdint>
#include <vector>

namespace pacsim {

// One homodyne sample: local-oscillator phase and quadrature value,
// vacuum-variance-1 units.
struct QuadratureRecord {
    double theta = 0.0;
    double x = 0.0;
};

struct BadBinning : std::runtime_error {
    explicit BadBinning(const std::string& what) : std::runtime_error(what) {}
};

// Binned, loss-adjusted quadrature projectors at one phase.
struct HomodynePovm {
    double theta = 0.0;
    double eta = 1.0;
    std::vector<double> bin_edges;  // size B+1
    std::vector<Mat> elements;      // size B, each dim x dim
    int dim() const { return elements.empty() ? 0 : static_cast<int>(elements[0].rows()); }
};

// Default binning: 201 uniform bins over [-10, 10] plus overflow bins reaching
// +-12.
std::vector<double> default_bin_edges(int inner_bins = 201, double inner_half_range = 10.0,
                                      double outer_edge = 12.0);

// Harmonic-oscillator position wavefunction <x|n> with vacuum variance 1:
// psi_n(x) = (2 pi)^{-1/4} (2^n n!)^{-1/2} H_n(x/sqrt(2)) e^{-x^2/4}.
double quad_wavefunction(int n, double x);

// Quadrature pdf of rho at phase theta through a loss channel of
// transmittance eta.
double quad_pdf(const DensityMatrix& rho, double theta, double x, double eta);

// POVM elements Pi_b = sum_k A_k^dag (int_bin |x_theta><x_theta| dx) A_k with
// the loss Kraus set; completeness over the bins holds up to the quadrature
// tail outside the outermost edges.
HomodynePovm build_povm(double theta, const std::vector<double>& bin_edges, double eta,
                        int dim);

// I.i.d. samples from quad_pdf per phase via inverse-CDF sampling; each phase
// owns an independent RNG substream derived from the seed, so the dataset is
// reproducible and independent of evaluation order.
std::vector<QuadratureRecord> sample_dataset(const DensityMatrix& rho,
                                             const std::vector<double>& phases,
                                             const std::vector<int>& counts, double eta,
                                             std::uint64_t seed);

// splitmix64 step; the project's substream derivation.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace pacsim

#endif
