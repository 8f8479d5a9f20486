#include "pacsim/fock.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <vector>

namespace pacsim {

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double laguerre(int n, int k, double x) {
    if (n < 0) throw std::invalid_argument("laguerre: n must be >= 0");
    if (k < -n) throw std::invalid_argument("laguerre: k must be >= -n");
    if (x > 0.0 && k >= 0) {
        // the finite sum alternates for x > 0 and loses digits by n ~ 30;
        // the three-term recurrence is stable there
        double lm1 = 1.0;
        if (n == 0) return lm1;
        double l = 1.0 + k - x;
        for (int j = 1; j < n; ++j) {
            double lp1 = ((2.0 * j + 1.0 + k - x) * l - (j + k) * lm1) / (j + 1.0);
            lm1 = l;
            l = lp1;
        }
        return l;
    }
    // L_n^{(k)}(x) = sum_j binom(n+k, n-j) (-x)^j / j!  (all terms positive for x <= 0)
    double sum = 0.0;
    for (int j = 0; j < n + 1; ++j) {
        if (k + j < 0) continue;  // binom(n+k, n-j) vanishes when n-j > n+k
        double log_binom = log_factorial(n + k) - log_factorial(n - j) - log_factorial(k + j);
        double coeff = std::exp(log_binom - log_factorial(j));
        double power = std::pow(-x, j);
        sum += coeff * power;
    }
    return sum;
}

double hermite(int n, double x) {
    double h0 = 1.0;
    if (n == 0) return h0;
    double h1 = 2.0 * x;
    for (int m = 2; m <= n; ++m) {
        double h2 = 2.0 * x * h1 - 2.0 * (m - 1) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

Complex hermite(int n, Complex z) {
    Complex h0 = 1.0;
    if (n == 0) return h0;
    Complex h1 = 2.0 * z;
    for (int m = 2; m <= n; ++m) {
        Complex h2 = 2.0 * z * h1 - 2.0 * (m - 1.0) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

int default_dim(double mu) {
    return static_cast<int>(std::ceil(mu + 8.0 * std::sqrt(mu) + 12.0));
}

Complex FockVector::overlap(const FockVector& other) const {
    if (dim() != other.dim()) throw DimMismatch("FockVector::overlap: dimension mismatch");
    return amps.dot(other.amps);  // conjugates *this
}

DensityMatrix DensityMatrix::from_pure(const FockVector& psi) {
    DensityMatrix rho;
    rho.elems = psi.amps * psi.amps.adjoint();
    return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    DensityMatrix rho;
    rho.elems = Mat::Identity(dim, dim) / static_cast<double>(dim);
    return rho;
}

double DensityMatrix::hermiticity_defect() const {
    return (elems - elems.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (elems + elems.adjoint()),
                                          Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

void DensityMatrix::check_valid(double herm_tol, double eig_tol, double trace_tol) const {
    if (hermiticity_defect() > herm_tol)
        throw std::runtime_error("DensityMatrix: not Hermitian");
    if (min_eigenvalue() < -eig_tol)
        throw std::runtime_error("DensityMatrix: negative eigenvalue");
    if (std::abs(trace() - 1.0) > trace_tol)
        throw std::runtime_error("DensityMatrix: trace != 1");
}

FockVector coherent_state(Complex alpha, int dim, double tail_tol) {
    if (dim < 1) throw std::invalid_argument("coherent_state: dim must be >= 1");
    FockVector psi;
    psi.amps.resize(dim);
    double a2 = std::norm(alpha);
    // log-magnitude recursion keeps amplitudes finite for any alpha
    for (int n = 0; n < dim; ++n) {
        double logmag = -0.5 * a2 + 0.5 * n * std::log(a2 > 0 ? a2 : 1.0) - 0.5 * log_factorial(n);
        double phase = std::arg(alpha) * n;
        psi.amps[n] = (a2 > 0 || n == 0)
                          ? std::polar(std::exp(logmag), phase)
                          : Complex(0.0, 0.0);
    }
    double tail = 1.0 - psi.amps.squaredNorm();
    if (tail > tail_tol)
        throw TruncationError("coherent_state: tail mass " + std::to_string(tail) +
                              " exceeds tolerance at dim " + std::to_string(dim));
    return psi;
}

FockVector fock_state(int n, int dim) {
    if (n < 0 || n >= dim) throw std::out_of_range("fock_state: level outside truncation");
    FockVector psi;
    psi.amps = Vec::Zero(dim);
    psi.amps[n] = 1.0;
    return psi;
}

std::pair<FockOperator, FockOperator> ladder_ops(int dim) {
    if (dim < 2) throw std::invalid_argument("ladder_ops: dim must be >= 2");
    Mat a = Mat::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return {FockOperator{a}, FockOperator{a.adjoint()}};
}

FockOperator number_op(int dim) {
    Mat n = Mat::Zero(dim, dim);
    for (int m = 0; m < dim; ++m) n(m, m) = static_cast<double>(m);
    return FockOperator{n};
}

namespace {

void check_unitary_lower_half(const Mat& u, const char* name) {
    int half = static_cast<int>(u.rows()) / 2;
    Mat defect = (u.adjoint() * u - Mat::Identity(u.rows(), u.cols()))
                     .topLeftCorner(half, half);
    if (defect.cwiseAbs().maxCoeff() > 1e-8)
        throw TruncationError(std::string(name) +
                              ": truncation too small for unitarity on lower half");
}

}  // namespace

FockOperator displacement(Complex alpha, int dim) {
    Mat d(dim, dim);
    double a2 = std::norm(alpha);
    Complex malphac = -std::conj(alpha);
    for (int m = 0; m < dim; ++m) {
        for (int n = 0; n <= m; ++n) {
            // <m|D|n> = sqrt(n!/m!) alpha^{m-n} e^{-|a|^2/2} L_n^{(m-n)}(|a|^2)
            double mag = std::exp(0.5 * (log_factorial(n) - log_factorial(m)) - 0.5 * a2);
            d(m, n) = mag * std::pow(alpha, m - n) * laguerre(n, m - n, a2);
            if (m != n) {
                double mag2 = std::exp(0.5 * (log_factorial(n) - log_factorial(m)) - 0.5 * a2);
                d(n, m) = mag2 * std::pow(malphac, m - n) * laguerre(n, m - n, a2);
            }
        }
    }
    check_unitary_lower_half(d, "displacement");
    return FockOperator{d};
}

FockOperator displacement_exp(Complex alpha, int dim) {
    auto [a, adag] = ladder_ops(dim);
    Mat gen = alpha * adag.elems - std::conj(alpha) * a.elems;
    Mat d = gen.exp();
    check_unitary_lower_half(d, "displacement_exp");
    return FockOperator{d};
}

FockOperator squeeze(double r, double theta, int dim) {
    auto [a, adag] = ladder_ops(dim);
    Complex phase = std::polar(1.0, theta);
    Mat gen = 0.5 * r * (phase * adag.elems * adag.elems -
                         std::conj(phase) * a.elems * a.elems);
    Mat s = gen.exp();
    check_unitary_lower_half(s, "squeeze");
    return FockOperator{s};
}

std::vector<Mat> loss_kraus(int dim, double eta) {
    if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("loss_kraus: eta outside [0,1]");
    std::vector<Mat> kraus;
    kraus.reserve(dim);
    for (int k = 0; k < dim; ++k) {
        Mat ak = Mat::Zero(dim, dim);
        for (int n = k; n < dim; ++n) {
            double log_binom = log_factorial(n) - log_factorial(k) - log_factorial(n - k);
            double log_amp = 0.5 * log_binom;
            if (n - k > 0) {
                if (eta == 0.0) continue;
                log_amp += 0.5 * (n - k) * std::log(eta);
            }
            if (k > 0) {
                if (eta == 1.0) continue;
                log_amp += 0.5 * k * std::log(1.0 - eta);
            }
            ak(n - k, n) = std::exp(log_amp);
        }
        kraus.push_back(std::move(ak));
    }
    return kraus;
}

DensityMatrix loss_channel(const DensityMatrix& rho, double eta) {
    int dim = rho.dim();
    auto kraus = loss_kraus(dim, eta);
    Mat out = Mat::Zero(dim, dim);
    for (const auto& ak : kraus) out += ak * rho.elems * ak.adjoint();
    return DensityMatrix{out};
}

double state_fidelity(const DensityMatrix& rho, const FockVector& target) {
    if (rho.dim() != target.dim())
        throw DimMismatch("state_fidelity: dimension mismatch");
    return (target.amps.adjoint() * rho.elems * target.amps)(0, 0).real();
}

double pure_fidelity(const FockVector& a, const FockVector& b) {
    return std::norm(a.overlap(b));
}

}  // namespace pacsim
