#ifndef PACSIM_ANALYSIS_HPP
#define PACSIM_ANALYSIS_HPP

#include "pacsim/fock.hpp"

#include <optional>
#include <vector>

namespace pacsim {

struct WignerGrid {
    std::vector<double> x_axis;
    std::vector<double> p_axis;
    std::vector<std::vector<double>> values;  // values[ix][ip]
    double normalization = 0.0;               // grid quadrature of the full grid
    double min_value = 0.0;
};

// W(x,p) = (1/2pi) Tr[rho D(gamma) Pi D^dag(gamma)], gamma = (x+ip)/2,
// vacuum-variance-1 convention. rho is zero-padded to a working dimension
// large enough for the displacement at the grid corners.
WignerGrid wigner(const DensityMatrix& rho, const std::vector<double>& x_axis,
                  const std::vector<double>& p_axis);

std::vector<double> linspace(double lo, double hi, int points);

double purity(const DensityMatrix& rho);

// Tr[rho_out a] / Tr[rho_in a]; loss-invariant gain estimate.
Complex experimental_gain(const DensityMatrix& rho_out, const DensityMatrix& rho_in);

// Population weight of D(-alpha) rho D^dag(-alpha) outside span{|0..n>}.
double displaced_localization(const DensityMatrix& rho, Complex alpha, int n);

struct PhotonStats {
    std::vector<double> probabilities;
    double mean = 0.0;
    double variance = 0.0;
    // disengaged for zero-mean states; 0 by convention for variance-free Fock
    // states
    std::optional<double> fano;
};

PhotonStats photon_stats(const DensityMatrix& rho);

// Quadrature moments of rho along/against the axis at angle phase_ref:
// x = a e^{-i t} + a^dag e^{i t}.
struct RhoQuadStats {
    double mean_x = 0.0, mean_p = 0.0, vx = 0.0, vp = 0.0;
};
RhoQuadStats rho_quad_stats(const DensityMatrix& rho, double phase_ref);

}  // namespace pacsim

#endif
