#include "pacsim/stellar.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace pacsim {

namespace {

// <m|D(beta)|j>; the beta power is carried in log space so large photon
// offsets cannot overflow before the factorial ratio damps them
Complex displacement_element(int m, int j, Complex beta) {
    double b2 = std::norm(beta);
    double babs = std::abs(beta);
    if (b2 == 0.0) return (m == j) ? Complex(1.0) : Complex(0.0);
    int lo = std::min(m, j), hi = std::max(m, j), k = hi - lo;
    double log_mag =
        0.5 * (log_factorial(lo) - log_factorial(hi)) - 0.5 * b2 + k * std::log(babs);
    Complex unit = (m >= j) ? beta / babs : -std::conj(beta) / babs;
    Complex phase = std::pow(unit, k);
    return std::exp(log_mag) * phase * laguerre(lo, k, b2);
}

// D(-beta) psi for a short target vector, evaluated at dim entries
Vec displace_back(const Vec& psi, Complex beta, int dim) {
    Vec out = Vec::Zero(dim);
    for (int j = 0; j < psi.size(); ++j) {
        if (psi[j] == Complex(0.0)) continue;
        for (int m = 0; m < dim; ++m) out[m] += displacement_element(m, j, -beta) * psi[j];
    }
    return out;
}

// squeezed vacuum amplitudes at dim entries; r may be negative
Vec squeezed_vacuum(double r, double theta, int dim) {
    Vec s = Vec::Zero(dim);
    double ch = std::cosh(r);
    Complex ratio = 0.5 * std::polar(std::tanh(r), theta);
    Complex term = 1.0 / std::sqrt(ch);
    for (int m = 0; 2 * m < dim; ++m) {
        if (m > 0)
            term *= ratio * std::sqrt((2.0 * m) * (2.0 * m - 1.0)) / static_cast<double>(m);
        s[2 * m] = term;
    }
    return s;
}

// S(r,theta)|m> from S|m-1> via S a^dag S^dag = cosh r a^dag - e^{-i theta} sinh r a
Vec squeezed_next(const Vec& prev, double r, double theta, int m) {
    int dim = static_cast<int>(prev.size());
    double ch = std::cosh(r);
    Complex sh = std::polar(std::sinh(r), -theta);
    Vec next = Vec::Zero(dim);
    for (int j = 1; j < dim; ++j) next[j] = ch * std::sqrt(static_cast<double>(j)) * prev[j - 1];
    for (int j = 0; j + 1 < dim; ++j)
        next[j] -= sh * std::sqrt(j + 1.0) * prev[j + 1];
    return next / std::sqrt(static_cast<double>(m));
}

// sum_{m<k} |<D(beta)S(r,theta) m | psi>|^2
double rank_k_overlap(const Vec& psi, Complex beta, double r, double theta, int k) {
    // clamp the search region; fidelity with few-photon targets is negligible
    // out here and the working dimension stays bounded
    if (std::abs(r) > 3.0 || std::abs(beta) > 6.0) return 0.0;
    double mu = std::norm(beta) + std::sinh(r) * std::sinh(r);
    int dim = default_dim(mu) + k + static_cast<int>(psi.size());
    Vec dpsi = displace_back(psi, beta, dim);
    Vec s = squeezed_vacuum(r, theta, dim);
    double f = 0.0;
    for (int m = 0; m < k; ++m) {
        if (m > 0) s = squeezed_next(s, r, theta, m);
        f += std::norm(s.dot(dpsi));
    }
    return f;
}

// Nelder-Mead maximizer
double nelder_mead_max(const std::function<double(const std::vector<double>&)>& f,
                       std::vector<double> start, double step, int max_iter,
                       std::vector<double>* arg_out = nullptr) {
    int n = static_cast<int>(start.size());
    std::vector<std::vector<double>> simplex(n + 1, start);
    std::vector<double> val(n + 1);
    for (int i = 0; i < n; ++i) simplex[i + 1][i] += step;
    for (int i = 0; i <= n; ++i) val[i] = f(simplex[i]);

    for (int iter = 0; iter < max_iter; ++iter) {
        std::vector<int> order(n + 1);
        for (int i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return val[a] > val[b]; });
        int best = order[0], worst = order[n], second_worst = order[n - 1];
        if (val[best] - val[worst] < 1e-11) break;

        std::vector<double> centroid(n, 0.0);
        for (int i = 0; i <= n; ++i)
            if (i != worst)
                for (int d = 0; d < n; ++d) centroid[d] += simplex[i][d] / n;

        auto blend = [&](double t) {
            std::vector<double> p(n);
            for (int d = 0; d < n; ++d)
                p[d] = centroid[d] + t * (centroid[d] - simplex[worst][d]);
            return p;
        };

        auto reflected = blend(1.0);
        double fr = f(reflected);
        if (fr > val[best]) {
            auto expanded = blend(2.0);
            double fe = f(expanded);
            if (fe > fr) {
                simplex[worst] = expanded;
                val[worst] = fe;
            } else {
                simplex[worst] = reflected;
                val[worst] = fr;
            }
        } else if (fr > val[second_worst]) {
            simplex[worst] = reflected;
            val[worst] = fr;
        } else {
            auto contracted = blend(-0.5);
            double fc = f(contracted);
            if (fc > val[worst]) {
                simplex[worst] = contracted;
                val[worst] = fc;
            } else {
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (int d = 0; d < n; ++d)
                        simplex[i][d] = 0.5 * (simplex[i][d] + simplex[best][d]);
                    val[i] = f(simplex[i]);
                }
            }
        }
    }
    int best = static_cast<int>(std::max_element(val.begin(), val.end()) - val.begin());
    if (arg_out) *arg_out = simplex[best];
    return val[best];
}

double n1_fidelity(double a, double b, double r) {
    double ch = std::cosh(r);
    return (a * ch + b) * (a * ch + b) * std::exp(-(1.0 - std::tanh(r)) * b * b) /
           ((1.0 + a * a) * ch * ch * ch);
}

}  // namespace

FockVector gaussian_fock_expansion(const GaussianParams& g, int dim) {
    if (g.r < 0.0) throw std::invalid_argument("gaussian_fock_expansion: r must be >= 0");
    FockVector psi;
    psi.amps.resize(dim);
    if (g.r < 1e-12) {
        psi = coherent_state(g.beta, dim, 1e-8);
        return psi;
    }
    // <n|D(beta)S(r,theta)|0> with the generator (e^{i theta} a^dag^2 - h.c.) r/2:
    //   (nu/2)^{n/2} / sqrt(n! cosh r)
    //   * exp(-|beta|^2/2 - conj(beta)^2 nu / 2)
    //   * H_n( (beta + conj(beta) nu) / sqrt(2 nu) ),  nu = -e^{i theta} tanh r
    double t = std::tanh(g.r);
    double ch = std::cosh(g.r);
    Complex et = -std::polar(t, g.theta);
    Complex w = std::sqrt(et);  // principal branch
    Complex bc = std::conj(g.beta);
    Complex pref = std::exp(-0.5 * std::norm(g.beta) - 0.5 * bc * bc * et);
    Complex arg = (g.beta + bc * et) / (std::numbers::sqrt2 * w);

    // H_n grows factorially, and w^n / sqrt(n!) underflows at the same rate;
    // carry the Hermite magnitude in log space so the product stays finite
    double log_w = std::log(std::abs(w));
    Complex u = w / std::abs(w);
    Complex h_prev = 0.0, h = 1.0;  // H_{-1} = 0, H_0 = 1
    double h_scale = 0.0;           // log magnitude factored out of h, h_prev
    Complex un = 1.0;
    for (int n = 0; n < dim; ++n) {
        double habs = std::abs(h);
        if (habs == 0.0) {
            psi.amps[n] = 0.0;
        } else {
            double log_mag = -0.5 * (n * std::numbers::ln2 + log_factorial(n)) -
                             0.5 * std::log(ch) + n * log_w + h_scale + std::log(habs);
            psi.amps[n] = std::exp(log_mag) * un * (h / habs) * pref;
        }
        Complex h_next = 2.0 * arg * h - 2.0 * static_cast<double>(n) * h_prev;
        h_prev = h;
        h = h_next;
        if (std::abs(h) > 1e120) {
            h *= 1e-120;
            h_prev *= 1e-120;
            h_scale += 120.0 * std::numbers::ln10;
        }
        un *= u;
    }
    double defect = std::abs(psi.norm() - 1.0);
    if (defect > 1e-8)
        throw TruncationError("gaussian_fock_expansion: norm defect " + std::to_string(defect));
    return psi;
}

GaussianFidelityResult gaussian_fidelity_n1(double a) {
    if (a < 0.0) throw std::invalid_argument("gaussian_fidelity_n1: a must be >= 0");
    if (a < 1e-6) {
        // degenerate cubic: z = 1/3 twice; F = e^{r-1}/cosh^2 r at tanh r = 1/2
        double r = std::atanh(0.5);
        double f = std::exp(r - 1.0) / (std::cosh(r) * std::cosh(r));
        return {f, std::numbers::sqrt2, r};
    }
    // companion matrix of z^3 + c2 z^2 + c1 z + c0
    double a2 = a * a;
    double c2 = 9.0 / a2, c1 = -(6.0 + a2) / a2, c0 = 1.0 / a2;
    Eigen::Matrix3d companion;
    companion << 0, 0, -c0, 1, 0, -c1, 0, 1, -c2;
    Eigen::EigenSolver<Eigen::Matrix3d> es(companion);

    int n_real = 0, n_unit = 0, n_negative = 0;
    std::vector<double> unit_roots;
    for (int i = 0; i < 3; ++i) {
        Complex z = es.eigenvalues()[i];
        if (std::abs(z.imag()) > 1e-8 * (1.0 + std::abs(z))) continue;
        ++n_real;
        if (z.real() > 0.0 && z.real() < 1.0) {
            ++n_unit;
            unit_roots.push_back(z.real());
        } else if (z.real() < 0.0) {
            ++n_negative;
        }
    }
    if (n_real != 3 || n_unit != 2 || n_negative != 1)
        throw CubicRootStructureViolation(
            "gaussian_fidelity_n1: unexpected cubic root structure at a = " +
            std::to_string(a));

    GaussianFidelityResult best{};
    for (double z : unit_roots) {
        double r = -0.5 * std::log(z);
        double denom = 3.0 * z - 1.0;
        if (std::abs(denom) < 1e-14) continue;
        double b = a * std::cosh(r) * (1.0 - z) / denom;
        if (b < 0.0) continue;
        double f = n1_fidelity(a, b, r);
        if (f > best.f_max) best = {f, b, r};
    }
    // boundary candidate: plain coherent state
    double f0 = a2 / (1.0 + a2);
    if (f0 > best.f_max) best = {f0, a, 0.0};
    return best;
}

FockVector pacs_core_state(double alpha, int n, int dim) {
    if (dim < n + 1) throw TruncationError("pacs_core_state: dim <= n");
    FockVector psi;
    psi.amps = Vec::Zero(dim);
    for (int m = 0; m <= n; ++m) {
        double mag = std::exp(log_factorial(n) - 0.5 * log_factorial(m) - log_factorial(n - m));
        psi.amps[m] = mag * std::pow(alpha, n - m);
    }
    psi.normalize();
    return psi;
}

double max_rank_k_fidelity(const FockVector& psi, int k, int starts) {
    if (k < 1) throw UnsupportedRank("max_rank_k_fidelity: k must be >= 1");
    auto objective = [&](const std::vector<double>& p) {
        return rank_k_overlap(psi.amps, Complex(p[0], p[1]), p[2], p[3], k);
    };

    std::vector<double> b_starts = {0.25, 1.0, 2.0, 3.0};
    std::vector<double> r_starts = {-0.6, -0.2, 0.2, 0.6};
    std::vector<double> th_starts = {0.0, 0.5 * std::numbers::pi};
    double best = 0.0;
    int launched = 0;
    for (double b0 : b_starts) {
        for (double r0 : r_starts) {
            for (double th0 : th_starts) {
                if (launched++ >= starts) break;
                double f = nelder_mead_max(objective, {b0, 0.0, r0, th0}, 0.3, 400);
                best = std::max(best, f);
            }
        }
    }
    return best;
}

ThresholdCurve threshold_curve(int n, int k, const std::vector<double>& alpha_grid) {
    if (k < 1 || k > n)
        throw UnsupportedRank("threshold_curve: rank " + std::to_string(k) +
                              " not reachable for n = " + std::to_string(n));
    ThresholdCurve curve;
    curve.alpha_grid = alpha_grid;
    curve.rank = k;
    curve.target_n = n;
    curve.lower_bound = (k >= 2);
    curve.f_th.reserve(alpha_grid.size());
    for (double alpha : alpha_grid) {
        if (n == 1 && k == 1) {
            curve.f_th.push_back(gaussian_fidelity_n1(alpha).f_max);
        } else {
            FockVector core = pacs_core_state(alpha, n, n + 1);
            curve.f_th.push_back(max_rank_k_fidelity(core, k));
        }
    }
    return curve;
}

namespace {

double interpolate_threshold(const ThresholdCurve& curve, double alpha) {
    const auto& grid = curve.alpha_grid;
    if (grid.empty() || alpha < grid.front() - 1e-12 || alpha > grid.back() + 1e-12)
        throw OutOfGrid("witness: alpha outside the threshold grid");
    if (grid.size() == 1) return curve.f_th.front();
    auto it = std::upper_bound(grid.begin(), grid.end(), alpha);
    int hi = std::clamp(static_cast<int>(it - grid.begin()), 1,
                        static_cast<int>(grid.size()) - 1);
    double t = (alpha - grid[hi - 1]) / (grid[hi] - grid[hi - 1]);
    return curve.f_th[hi - 1] + t * (curve.f_th[hi] - curve.f_th[hi - 1]);
}

}  // namespace

int witness(double f_measured, const std::vector<ThresholdCurve>& curves, double alpha) {
    int certified = 0;
    for (const auto& curve : curves)
        if (f_measured > interpolate_threshold(curve, alpha))
            certified = std::max(certified, curve.rank);
    return certified;
}

}  // namespace pacsim
