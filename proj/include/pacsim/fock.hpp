#ifndef PACSIM_FOCK_HPP
#define PACSIM_FOCK_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace pacsim {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// --- error taxonomy -------------------------------------------------------

struct TruncationError : std::runtime_error {
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};
struct UndefinedGain : std::runtime_error {
    UndefinedGain() : std::runtime_error("gain is undefined for alpha = 0") {}
};
struct UndefinedFano : std::runtime_error {
    UndefinedFano() : std::runtime_error("Fano factor is undefined for vacuum (zero mean photon number)") {}
};
struct DimMismatch : std::runtime_error {
    explicit DimMismatch(const std::string& what) : std::runtime_error(what) {}
};

// --- special functions -----------------------------------------------------

// Generalized Laguerre polynomial L_n^{(k)}(x) via the finite-sum definition,
// coefficients through log-factorials so large n stays finite.
double laguerre(int n, int k, double x);

// Physicists' Hermite polynomial, real and complex argument.
double hermite(int n, double x);
Complex hermite(int n, Complex z);

// ln(n!)
double log_factorial(int n);

// Default truncation for mean occupation mu: ceil(mu + 8*sqrt(mu) + 12).
int default_dim(double mu);

// --- states and operators ---------------------------------------------------

// Complex amplitudes over |0>..|D-1> of a single mode. Pure states keep unit
// norm; heralded slices may carry norm < 1 until renormalized.
struct FockVector {
    Vec amps;

    int dim() const { return static_cast<int>(amps.size()); }
    double norm() const { return amps.norm(); }
    void normalize() { amps /= amps.norm(); }
    Complex overlap(const FockVector& other) const;
};

struct FockOperator {
    Mat elems;
    int dim() const { return static_cast<int>(elems.rows()); }
};

// Hermitian, PSD, unit-trace matrix in the Fock basis.
struct DensityMatrix {
    Mat elems;

    int dim() const { return static_cast<int>(elems.rows()); }
    double trace() const { return elems.trace().real(); }

    static DensityMatrix from_pure(const FockVector& psi);
    static DensityMatrix maximally_mixed(int dim);

    // max |rho - rho^dagger| entry
    double hermiticity_defect() const;
    // smallest eigenvalue of the Hermitian part
    double min_eigenvalue() const;
    void check_valid(double herm_tol = 1e-10, double eig_tol = 1e-9,
                     double trace_tol = 1e-10) const;
};

// amps[n] = e^{-|alpha|^2/2} alpha^n / sqrt(n!). Throws TruncationError when
// the truncated tail mass exceeds tail_tol.
FockVector coherent_state(Complex alpha, int dim, double tail_tol = 1e-10);

FockVector fock_state(int n, int dim);

// (annihilation, creation) matrices on the truncated space.
std::pair<FockOperator, FockOperator> ladder_ops(int dim);

FockOperator number_op(int dim);

// Displacement operator exp(alpha a^dag - alpha^* a) from closed-form Laguerre
// matrix elements. Unitarity on the lowest dim/2 levels is checked to 1e-8.
FockOperator displacement(Complex alpha, int dim);

// Same operator by dense exponentiation of the generator; second route used
// for cross-validation.
FockOperator displacement_exp(Complex alpha, int dim);

// Squeeze operator exp{(e^{i theta} a^dag^2 - e^{-i theta} a^2) r/2}.
FockOperator squeeze(double r, double theta, int dim);

// Pure-loss channel with transmittance eta, Kraus form
// A_k |n> = sqrt(C(n,k) eta^{n-k} (1-eta)^k) |n-k>.
DensityMatrix loss_channel(const DensityMatrix& rho, double eta);

std::vector<Mat> loss_kraus(int dim, double eta);

// <target| rho |target>
double state_fidelity(const DensityMatrix& rho, const FockVector& target);

// |<a|b>|^2 for pure states
double pure_fidelity(const FockVector& a, const FockVector& b);

}  // namespace pacsim

#endif
