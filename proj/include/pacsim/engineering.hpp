#ifndef PACSIM_ENGINEERING_HPP
#define PACSIM_ENGINEERING_HPP

#include "pacsim/fock.hpp"

#include <vector>

namespace pacsim {

struct DegenerateLeadingValue : std::runtime_error {
    explicit DegenerateLeadingValue(const std::string& what) : std::runtime_error(what) {}
};

// Diagonal target operation S(n) = sum_k s_k n^k.
struct DiagonalPolynomial {
    std::vector<double> coeffs;  // s_0 .. s_N
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    double eval(double n) const;
};

// S(n) = sum_j b_j Q_j(n), realized by the addition/subtraction sequences
// a^{N-j} a^dag^N a^j, with an optional diagonal attenuation gamma^n.
struct SequenceDecomposition {
    int order = 0;               // N
    std::vector<double> b;       // b_0 .. b_N
    double gamma = 1.0;
};

// Q_j(n) = prod_{k=1-j}^{N-j} (n+k); vanishes for n < j.
long long q_poly(int j, int order, int n);

// Iterative solve b_j = [S(j) - sum_{k<j} b_k Q_k(j)] / Q_j(j).
SequenceDecomposition decompose(const DiagonalPolynomial& target, double gamma = 1.0);

// gamma^n sum_j b_j a^{N-j} a^dag^N a^j applied to psi (result unnormalized).
FockVector apply_sequence(const SequenceDecomposition& dec, const FockVector& psi);

}  // namespace pacsim

#endif
