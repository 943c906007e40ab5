#pragma once

// Reference computations used only by the tests. Each one is deliberately
// naive so it shares no code path with the library it checks.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

// f^(k) = (1/M) sum_m f(t_m) e^{-i k t_m}, O(M) per coefficient.
inline Complex direct_coefficient(const std::vector<Complex>& f, long k) {
    const double M = static_cast<double>(f.size());
    Complex s = 0.0;
    for (std::size_t m = 0; m < f.size(); ++m)
        s += f[m] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) * static_cast<double>(m) / M);
    return s / M;
}

// (f*g)(t_m) = (1/M) sum_s f(t_{m-s}) g(t_s), O(M^2).
inline std::vector<Complex> direct_convolution(const std::vector<Complex>& f, const std::vector<Complex>& g) {
    const std::size_t M = f.size();
    std::vector<Complex> out(M);
    for (std::size_t m = 0; m < M; ++m) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < M; ++j) s += f[(m + M - j) % M] * g[j];
        out[m] = s / static_cast<double>(M);
    }
    return out;
}

// Trapezoid quadrature of |f| on the circle with normalized measure.
inline double quadrature_l1(const std::vector<Complex>& f) {
    double s = 0.0;
    for (const auto& x : f) s += std::abs(x);
    return s / static_cast<double>(f.size());
}

// Closed-form Fejer kernel: (1/n) (sin(n t / 2) / sin(t / 2))^2, value n at t = 0.
inline double fejer_closed_form(long n, double t) {
    const double den = std::sin(0.5 * t);
    if (std::abs(den) < 1e-300) return static_cast<double>(n);
    const double num = std::sin(0.5 * static_cast<double>(n) * t);
    return num * num / (static_cast<double>(n) * den * den);
}

// Closed-form Poisson kernel (1 - r^2) / (1 - 2 r cos t + r^2).
inline double poisson_closed_form(double r, double t) {
    return (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(t) + r * r);
}

// Singular values as square roots of the eigenvalues of S^* S, descending.
inline Eigen::VectorXd singular_values_by_eigen(const Eigen::MatrixXcd& s) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s.adjoint() * s);
    Eigen::VectorXd ev = es.eigenvalues();
    Eigen::VectorXd out(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) out(i) = std::sqrt(std::max(0.0, ev(ev.size() - 1 - i)));
    return out;
}

}  // namespace oracle
