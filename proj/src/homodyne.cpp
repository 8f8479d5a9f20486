#include "pacsim/homodyne.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace pacsim {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1]
constexpr int kGlOrder = 16;
constexpr double kGlNodes[kGlOrder] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
constexpr double kGlWeights[kGlOrder] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

// psi_0..psi_{dim-1} at x, by the normalized Hermite recurrence
void wavefunctions(int dim, double x, double* out) {
    double u = x / std::numbers::sqrt2;
    double gauss = std::pow(2.0 * std::numbers::pi, -0.25) * std::exp(-0.25 * x * x);
    out[0] = gauss;
    if (dim == 1) return;
    out[1] = std::numbers::sqrt2 * u * gauss;
    for (int n = 2; n < dim; ++n)
        out[n] = std::sqrt(2.0 / n) * u * out[n - 1] - std::sqrt((n - 1.0) / n) * out[n - 2];
}

}  // namespace

std::vector<double> default_bin_edges(int inner_bins, double inner_half_range,
                                      double outer_edge) {
    std::vector<double> edges;
    edges.reserve(inner_bins + 3);
    edges.push_back(-outer_edge);
    for (int b = 0; b <= inner_bins; ++b)
        edges.push_back(-inner_half_range + 2.0 * inner_half_range * b / inner_bins);
    edges.push_back(outer_edge);
    return edges;
}

double quad_wavefunction(int n, double x) {
    std::vector<double> psi(n + 1);
    wavefunctions(n + 1, x, psi.data());
    return psi[n];
}

double quad_pdf(const DensityMatrix& rho, double theta, double x, double eta) {
    if (eta <= 0.0 || eta > 1.0) throw std::invalid_argument("quad_pdf: eta outside (0,1]");
    DensityMatrix lossy;
    const Mat* elems = &rho.elems;
    if (eta < 1.0) {
        lossy = loss_channel(rho, eta);
        elems = &lossy.elems;
    }
    int dim = static_cast<int>(elems->rows());
    std::vector<double> psi(dim);
    wavefunctions(dim, x, psi.data());
    Vec v(dim);
    for (int n = 0; n < dim; ++n) v[n] = psi[n] * std::polar(1.0, n * theta);
    return (v.adjoint() * (*elems) * v)(0, 0).real();
}

HomodynePovm build_povm(double theta, const std::vector<double>& bin_edges, double eta,
                        int dim) {
    if (bin_edges.size() < 2) throw BadBinning("build_povm: need at least one bin");
    for (std::size_t i = 1; i < bin_edges.size(); ++i)
        if (!(bin_edges[i] > bin_edges[i - 1]))
            throw BadBinning("build_povm: bin edges must be strictly increasing");

    int bins = static_cast<int>(bin_edges.size()) - 1;
    auto kraus = loss_kraus(dim, eta);

    HomodynePovm povm;
    povm.theta = theta;
    povm.eta = eta;
    povm.bin_edges = bin_edges;
    povm.elements.reserve(bins);

    std::vector<double> psi(dim);
    Vec phase(dim);
    for (int n = 0; n < dim; ++n) phase[n] = std::polar(1.0, n * theta);

    for (int b = 0; b < bins; ++b) {
        double lo = bin_edges[b], hi = bin_edges[b + 1];
        // split wide bins so the fixed-order quadrature stays accurate
        int pieces = std::max(1, static_cast<int>(std::ceil((hi - lo) / 0.25)));
        Eigen::MatrixXd overlap = Eigen::MatrixXd::Zero(dim, dim);
        for (int piece = 0; piece < pieces; ++piece) {
            double a = lo + (hi - lo) * piece / pieces;
            double c = lo + (hi - lo) * (piece + 1) / pieces;
            double half = 0.5 * (c - a), mid = 0.5 * (a + c);
            for (int g = 0; g < kGlOrder; ++g) {
                double x = mid + half * kGlNodes[g];
                double w = half * kGlWeights[g];
                wavefunctions(dim, x, psi.data());
                for (int m = 0; m < dim; ++m)
                    for (int n = 0; n <= m; ++n) overlap(m, n) += w * psi[m] * psi[n];
            }
        }
        overlap.triangularView<Eigen::StrictlyUpper>() =
            overlap.transpose().triangularView<Eigen::StrictlyUpper>();

        Mat ideal = phase.conjugate().asDiagonal() * overlap.cast<Complex>() *
                    phase.asDiagonal();
        Mat element = Mat::Zero(dim, dim);
        for (const auto& ak : kraus) element += ak.adjoint() * ideal * ak;
        povm.elements.push_back(0.5 * (element + Mat(element.adjoint())));
    }
    return povm;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + stream * 0x9e3779b97f4a7c15ULL + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<QuadratureRecord> sample_dataset(const DensityMatrix& rho,
                                             const std::vector<double>& phases,
                                             const std::vector<int>& counts, double eta,
                                             std::uint64_t seed) {
    if (phases.size() != counts.size())
        throw std::invalid_argument("sample_dataset: phases/counts size mismatch");

    DensityMatrix rho_eff = (eta < 1.0) ? loss_channel(rho, eta) : rho;

    constexpr double kRange = 12.0;
    constexpr int kGrid = 4801;

    std::vector<QuadratureRecord> records;
    for (std::size_t i = 0; i < phases.size(); ++i) {
        if (counts[i] <= 0) throw std::invalid_argument("sample_dataset: counts must be > 0");
        double theta = phases[i];

        std::vector<double> xs(kGrid), pdf(kGrid), cdf(kGrid);
        for (int g = 0; g < kGrid; ++g) {
            xs[g] = -kRange + 2.0 * kRange * g / (kGrid - 1);
            pdf[g] = std::max(0.0, quad_pdf(rho_eff, theta, xs[g], 1.0));
        }
        cdf[0] = 0.0;
        for (int g = 1; g < kGrid; ++g)
            cdf[g] = cdf[g - 1] + 0.5 * (pdf[g] + pdf[g - 1]) * (xs[g] - xs[g - 1]);
        double total = cdf.back();

        std::mt19937_64 rng(mix_seed(seed, i));
        std::uniform_real_distribution<double> uni(0.0, total);
        for (int s = 0; s < counts[i]; ++s) {
            double u = uni(rng);
            auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
            int hi = std::clamp(static_cast<int>(it - cdf.begin()), 1, kGrid - 1);
            double span = cdf[hi] - cdf[hi - 1];
            double frac = span > 0.0 ? (u - cdf[hi - 1]) / span : 0.5;
            records.push_back({theta, xs[hi - 1] + frac * (xs[hi] - xs[hi - 1])});
        }
    }
    return records;
}

}  // namespace pacsim
