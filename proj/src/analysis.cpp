#include "pacsim/analysis.hpp"

#include <cmath>
#include <numbers>

namespace pacsim {

std::vector<double> linspace(double lo, double hi, int points) {
    std::vector<double> axis(points);
    for (int i = 0; i < points; ++i)
        axis[i] = lo + (hi - lo) * i / (points - 1);
    return axis;
}

namespace {

// Displaced-parity trace at one phase-space point. Columns of D(gamma) are
// built by the exact recurrence c_n = (a^dag - conj(gamma)) c_{n-1} / sqrt(n),
// which closes on the truncated row space of rho.
double wigner_point(const Mat& rho, Complex gamma, int work_dim) {
    int d = static_cast<int>(rho.rows());
    double g2 = std::norm(gamma);

    Vec col(d);
    for (int m = 0; m < d; ++m) {
        double logmag = -0.5 * g2 + 0.5 * m * std::log(g2 > 0 ? g2 : 1.0) - 0.5 * log_factorial(m);
        col[m] = (g2 > 0 || m == 0) ? std::polar(std::exp(logmag), m * std::arg(gamma))
                                    : Complex(0.0);
    }

    double parity_sum = 0.0;
    Complex gc = std::conj(gamma);
    Vec next(d);
    for (int n = 0; n < work_dim; ++n) {
        if (n > 0) {
            double inv = 1.0 / std::sqrt(static_cast<double>(n));
            next[0] = -gc * col[0] * inv;
            for (int m = 1; m < d; ++m)
                next[m] = (std::sqrt(static_cast<double>(m)) * col[m - 1] - gc * col[m]) * inv;
            col.swap(next);
        }
        double quad = (col.adjoint() * rho * col)(0, 0).real();
        parity_sum += (n % 2 == 0) ? quad : -quad;
    }
    return parity_sum / (2.0 * std::numbers::pi);
}

}  // namespace

WignerGrid wigner(const DensityMatrix& rho, const std::vector<double>& x_axis,
                  const std::vector<double>& p_axis) {
    if (x_axis.empty() || p_axis.empty())
        throw std::invalid_argument("wigner: empty axis");
    double corner = 0.0;
    for (double x : x_axis)
        for (double p : {p_axis.front(), p_axis.back()})
            corner = std::max(corner, 0.25 * (x * x + p * p));
    for (double p : p_axis)
        for (double x : {x_axis.front(), x_axis.back()})
            corner = std::max(corner, 0.25 * (x * x + p * p));
    int work_dim = default_dim(corner) + rho.dim();

    WignerGrid grid;
    grid.x_axis = x_axis;
    grid.p_axis = p_axis;
    grid.values.assign(x_axis.size(), std::vector<double>(p_axis.size(), 0.0));
    grid.min_value = std::numeric_limits<double>::infinity();

    for (std::size_t ix = 0; ix < x_axis.size(); ++ix) {
        for (std::size_t ip = 0; ip < p_axis.size(); ++ip) {
            Complex gamma(0.5 * x_axis[ix], 0.5 * p_axis[ip]);
            double w = wigner_point(rho.elems, gamma, work_dim);
            grid.values[ix][ip] = w;
            grid.min_value = std::min(grid.min_value, w);
        }
    }

    // trapezoid quadrature of the grid
    double norm = 0.0;
    for (std::size_t ix = 0; ix + 1 < x_axis.size(); ++ix) {
        for (std::size_t ip = 0; ip + 1 < p_axis.size(); ++ip) {
            double cell = 0.25 * (grid.values[ix][ip] + grid.values[ix + 1][ip] +
                                  grid.values[ix][ip + 1] + grid.values[ix + 1][ip + 1]);
            norm += cell * (x_axis[ix + 1] - x_axis[ix]) * (p_axis[ip + 1] - p_axis[ip]);
        }
    }
    grid.normalization = norm;
    return grid;
}

double purity(const DensityMatrix& rho) {
    return (rho.elems * rho.elems).trace().real();
}

namespace {

Complex mean_annihilation(const DensityMatrix& rho) {
    Complex m = 0.0;
    for (int n = 1; n < rho.dim(); ++n)
        m += std::sqrt(static_cast<double>(n)) * rho.elems(n, n - 1);
    return m;
}

}  // namespace

Complex experimental_gain(const DensityMatrix& rho_out, const DensityMatrix& rho_in) {
    Complex a_in = mean_annihilation(rho_in);
    if (std::abs(a_in) < 1e-14) throw UndefinedGain();
    return mean_annihilation(rho_out) / a_in;
}

double displaced_localization(const DensityMatrix& rho, Complex alpha, int n) {
    // displacement unitarity must hold on the lower half, so give the
    // operator twice the reach of the padded state
    int work_dim = 2 * (rho.dim() + default_dim(std::norm(alpha)));
    Mat padded = Mat::Zero(work_dim, work_dim);
    padded.topLeftCorner(rho.dim(), rho.dim()) = rho.elems;
    FockOperator d = displacement(-alpha, work_dim);
    Mat shifted = d.elems * padded * d.elems.adjoint();
    double inside = 0.0;
    for (int m = 0; m <= n && m < work_dim; ++m) inside += shifted(m, m).real();
    return 1.0 - inside;
}

PhotonStats photon_stats(const DensityMatrix& rho) {
    PhotonStats stats;
    stats.probabilities.resize(rho.dim());
    for (int m = 0; m < rho.dim(); ++m) {
        double p = rho.elems(m, m).real();
        stats.probabilities[m] = p;
        stats.mean += m * p;
        stats.variance += static_cast<double>(m) * m * p;
    }
    stats.variance -= stats.mean * stats.mean;
    if (stats.mean > 1e-12) stats.fano = stats.variance / stats.mean;
    return stats;
}

RhoQuadStats rho_quad_stats(const DensityMatrix& rho, double phase_ref) {
    Complex m1 = mean_annihilation(rho);
    Complex m2 = 0.0;
    double naad = 0.0;
    for (int n = 2; n < rho.dim(); ++n)
        m2 += std::sqrt(static_cast<double>(n) * (n - 1)) * rho.elems(n, n - 2);
    for (int n = 0; n < rho.dim(); ++n) naad += (n + 1.0) * rho.elems(n, n).real();

    Complex rot = std::polar(1.0, -phase_ref);
    RhoQuadStats qs;
    qs.mean_x = 2.0 * (m1 * rot).real();
    qs.mean_p = 2.0 * (m1 * rot).imag();
    double second = 2.0 * naad - 1.0;
    qs.vx = second + 2.0 * (m2 * rot * rot).real() - qs.mean_x * qs.mean_x;
    qs.vp = second - 2.0 * (m2 * rot * rot).real() - qs.mean_p * qs.mean_p;
    return qs;
}

}  // namespace pacsim
