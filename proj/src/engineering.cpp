#include "pacsim/engineering.hpp"

#include <cmath>

namespace pacsim {

double DiagonalPolynomial::eval(double n) const {
    double value = 0.0;
    for (int k = degree(); k >= 0; --k) value = value * n + coeffs[k];
    return value;
}

long long q_poly(int j, int order, int n) {
    if (j < 0 || j > order) throw std::invalid_argument("q_poly: j outside [0, N]");
    long long prod = 1;
    for (int k = 1 - j; k <= order - j; ++k) prod *= (n + k);
    return prod;
}

SequenceDecomposition decompose(const DiagonalPolynomial& target, double gamma) {
    int order = target.degree();
    if (order < 0) throw std::invalid_argument("decompose: empty polynomial");
    SequenceDecomposition dec;
    dec.order = order;
    dec.gamma = gamma;
    dec.b.resize(order + 1);
    for (int j = 0; j <= order; ++j) {
        double residual = target.eval(j);
        for (int k = 0; k < j; ++k)
            residual -= dec.b[k] * static_cast<double>(q_poly(k, order, j));
        long long qjj = q_poly(j, order, j);
        if (qjj == 0)
            throw DegenerateLeadingValue("decompose: Q_j(j) vanished at j = " +
                                         std::to_string(j));
        dec.b[j] = residual / static_cast<double>(qjj);
    }
    // the recursion interpolates S exactly at the first N+1 integers
    for (int m = 0; m <= order; ++m) {
        double value = 0.0;
        for (int j = 0; j <= order; ++j)
            value += dec.b[j] * static_cast<double>(q_poly(j, order, m));
        if (std::abs(value - target.eval(m)) > 1e-12 * std::max(1.0, std::abs(target.eval(m))))
            throw std::runtime_error("decompose: residual check failed");
    }
    return dec;
}

FockVector apply_sequence(const SequenceDecomposition& dec, const FockVector& psi) {
    int dim = psi.dim();
    int order = dec.order;
    int top = dim - 1;
    while (top >= 0 && std::norm(psi.amps[top]) < 1e-30) --top;
    if (top + order >= dim)
        throw TruncationError("apply_sequence: need " + std::to_string(order) +
                              " levels of headroom above the state support");

    auto lower = [dim](const Vec& v) {
        Vec out = Vec::Zero(dim);
        for (int m = 0; m + 1 < dim; ++m) out[m] = std::sqrt(m + 1.0) * v[m + 1];
        return out;
    };
    auto raise = [dim](const Vec& v) {
        Vec out = Vec::Zero(dim);
        for (int m = 1; m < dim; ++m) out[m] = std::sqrt(static_cast<double>(m)) * v[m - 1];
        return out;
    };

    Vec total = Vec::Zero(dim);
    for (int j = 0; j <= order; ++j) {
        if (dec.b[j] == 0.0) continue;
        Vec v = psi.amps;
        for (int rep = 0; rep < j; ++rep) v = lower(v);
        for (int rep = 0; rep < order; ++rep) v = raise(v);
        for (int rep = 0; rep < order - j; ++rep) v = lower(v);
        total += dec.b[j] * v;
    }
    if (dec.gamma != 1.0)
        for (int m = 0; m < dim; ++m) total[m] *= std::pow(dec.gamma, m);
    return FockVector{total};
}

}  // namespace pacsim
