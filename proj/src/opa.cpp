#include "pacsim/opa.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <bit>
#include <cmath>

namespace pacsim {

TwoModeState opa_apply(const OpaParams& params, int dim_signal, int dim_idler) {
    double l = params.lambda;
    if (l < 0.0 || l >= 1.0)
        throw UnsupportedConfiguration("opa_apply: lambda outside [0,1)");
    FockVector seed = coherent_state(params.alpha, dim_signal);

    // e^{-lambda aS aI} is the identity on |alpha>_S |0>_I; the diagonal factor
    // gives a (1-l^2)^{(n+1)/2} weight, then the pair-creation series spreads
    // amplitude along the n -> (n+k, k) diagonals.
    Vec attenuated(dim_signal);
    for (int n = 0; n < dim_signal; ++n)
        attenuated[n] = seed.amps[n] * std::pow(1.0 - l * l, 0.5 * (n + 1));

    Mat out = Mat::Zero(dim_signal, dim_idler);
    for (int k = 0; k < dim_idler; ++k) {
        double lk = (k == 0) ? 1.0 : std::pow(l, k);
        for (int n = 0; n + k < dim_signal; ++n) {
            double w = std::exp(0.5 * (log_factorial(n + k) - log_factorial(n)) -
                                0.5 * log_factorial(k));
            out(n + k, k) += lk * w * attenuated[n];
        }
    }
    TwoModeState state{out};
    if (std::abs(state.norm() - 1.0) > 1e-6)
        throw TruncationError("opa_apply: truncation too small, norm defect " +
                              std::to_string(std::abs(state.norm() - 1.0)));
    return state;
}

TwoModeState opa_apply_dense(const OpaParams& params, int dim_signal, int dim_idler) {
    double l = params.lambda;
    double kappa = std::atanh(l);
    int total = dim_signal * dim_idler;
    auto [a_s, adag_s] = ladder_ops(dim_signal);
    auto [a_i, adag_i] = ladder_ops(dim_idler);
    Mat id_s = Mat::Identity(dim_signal, dim_signal);
    Mat id_i = Mat::Identity(dim_idler, dim_idler);

    auto kron = [](const Mat& a, const Mat& b) {
        Mat out(a.rows() * b.rows(), a.cols() * b.cols());
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j)
                out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        return out;
    };

    Mat pair_create = kron(adag_s.elems, adag_i.elems);
    Mat gen = kappa * (pair_create - Mat(pair_create.adjoint()));
    Mat u = gen.exp();

    FockVector seed = coherent_state(params.alpha, dim_signal);
    Vec input = Vec::Zero(total);
    for (int s = 0; s < dim_signal; ++s) input[s * dim_idler] = seed.amps[s];
    Vec output = u * input;

    Mat amps(dim_signal, dim_idler);
    for (int s = 0; s < dim_signal; ++s)
        for (int i = 0; i < dim_idler; ++i) amps(s, i) = output[s * dim_idler + i];
    return TwoModeState{amps};
}

std::pair<FockVector, double> herald_n(const TwoModeState& state, int n) {
    if (n < 0 || n >= state.dim_idler())
        throw std::out_of_range("herald_n: idler level outside truncation");
    FockVector psi{state.amps.col(n)};
    double prob = psi.amps.squaredNorm();
    if (prob > 0.0) psi.normalize();
    return {psi, prob};
}

double heralding_probability(const OpaParams& params, int n) {
    double l2 = params.lambda * params.lambda;
    double a2 = std::norm(params.alpha);
    return (1.0 - l2) * std::pow(l2, n) * laguerre(n, 0, -(1.0 - l2) * a2) *
           std::exp(-l2 * a2);
}

double relative_heralding(Complex alpha, int n) {
    return laguerre(n, 0, -std::norm(alpha));
}

double pnrd_accept_prob(const PnrdModel& model, int n) {
    if (n < 0) throw std::invalid_argument("pnrd_accept_prob: n < 0");
    if (model.eta < 0.0 || model.eta > 1.0 || model.channels < 1)
        throw UnsupportedConfiguration("pnrd_accept_prob: eta outside [0,1] or no arms");
    if (n == 0) return 1.0;
    int c = model.channels;
    if (n > c) return 0.0;  // an n-fold coincidence needs at least n arms
    // all n photons land in distinct arms and each is detected
    double p = std::pow(model.eta, n);
    for (int j = 0; j < n; ++j) p *= static_cast<double>(c - j) / c;
    return p;
}

double pnrd_false_herald_prob(const PnrdModel& model, int n) {
    int c = model.channels;
    int photons = n + 1;
    if (n < 0 || n > c)
        throw UnsupportedConfiguration("pnrd_false_herald_prob: invalid coincidence order");
    if (photons > 12)
        throw UnsupportedConfiguration("pnrd_false_herald_prob: enumeration limit");
    double eta = model.eta;
    double total = 0.0;
    long assignments = 1;
    for (int i = 0; i < photons; ++i) assignments *= c;
    for (long a = 0; a < assignments; ++a) {
        int arm_of[12];
        long rem = a;
        for (int i = 0; i < photons; ++i) {
            arm_of[i] = static_cast<int>(rem % c);
            rem /= c;
        }
        for (int d = 0; d < (1 << photons); ++d) {
            unsigned clicked = 0;
            double p = 1.0;
            for (int i = 0; i < photons; ++i) {
                if (d & (1 << i)) {
                    p *= eta;
                    clicked |= 1u << arm_of[i];
                } else {
                    p *= 1.0 - eta;
                }
            }
            if (std::popcount(clicked) == n) total += p;
        }
    }
    return total / static_cast<double>(assignments);
}

double end_to_end_rate(const OpaParams& params, const PnrdModel& model, int n) {
    return heralding_probability(params, n) * pnrd_accept_prob(model, n);
}

}  // namespace pacsim
