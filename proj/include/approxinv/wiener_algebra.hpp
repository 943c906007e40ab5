#pragma once

// The convolution algebra L1(T) on M equispaced samples of the circle, with
// normalized Haar measure (total mass 1), and its Fourier side.
//
// The M-point circle is formally a finite unital algebra. It is used as a
// truncation of the non-unital L1(T): every net is evaluated only at orders
// n well below M/2, where the continuum behavior is reproduced.
//
// Signals keep their normalized spectrum f^(k) = (1/M) sum_m f(t_m) e^{-ik t_m}
// as canonical data, so convolution is exact coefficient multiplication even
// when Wiener-division coefficients are astronomically large.

#include <cstddef>
#include <optional>
#include <vector>

#include "approxinv/core.hpp"

namespace approxinv::wiener {

class CircleGrid {
public:
    /// Throws std::invalid_argument if samples < 8.
    explicit CircleGrid(std::size_t samples);

    std::size_t size() const noexcept { return samples_; }
    double angle(std::size_t m) const noexcept;
    /// Largest |k| a transform may request: M/2 - 1.
    long max_order() const noexcept { return static_cast<long>(samples_ / 2) - 1; }

    bool operator==(const CircleGrid&) const = default;

private:
    std::size_t samples_;
};

class CircleSignal {
public:
    CircleSignal() = default;

    static CircleSignal from_samples(const CircleGrid& grid, std::vector<Complex> samples);
    /// Spectrum in FFT order (entry k holds frequency k mod M).
    static CircleSignal from_spectrum(const CircleGrid& grid, std::vector<Complex> spectrum);

    const CircleGrid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return spectrum_.size(); }
    const std::vector<Complex>& spectrum() const noexcept { return spectrum_; }
    /// f^(k) for any integer k (taken mod M).
    Complex coefficient(long k) const;
    /// Values f(t_m), synthesized from the spectrum.
    std::vector<Complex> samples() const;

private:
    CircleSignal(CircleGrid grid, std::vector<Complex> spectrum) : grid_(grid), spectrum_(std::move(spectrum)) {}

    CircleGrid grid_{8};
    std::vector<Complex> spectrum_;
};

/// Coefficients f^(k) for |k| <= max_order.
class FourierCoeffs {
public:
    FourierCoeffs(long max_order, std::vector<Complex> values);

    long max_order() const noexcept { return max_order_; }
    Complex operator()(long k) const;

private:
    long max_order_;
    std::vector<Complex> values_;  // index k + max_order
};

/// Order of a Fejer kernel; n >= 1.
class FejerOrder {
public:
    explicit FejerOrder(long n);
    long value() const noexcept { return n_; }

private:
    long n_;
};

// --- basic operations --------------------------------------------------------

double l1_norm(const CircleSignal& f);
/// (f*g)(t_m) = (1/M) sum_s f(t_m - t_s) g(t_s); throws std::invalid_argument on grid mismatch.
CircleSignal convolve(const CircleSignal& f, const CircleSignal& g);
/// Throws AliasingError if max_order >= M/2.
FourierCoeffs fourier(const CircleSignal& f, long max_order);

CircleSignal add(const CircleSignal& a, const CircleSignal& b);
CircleSignal scale(Complex c, const CircleSignal& a);
/// f*(t) = conj(f(-t)); spectrum conj(f^(k)).
CircleSignal involution(const CircleSignal& a);
/// Circular shift L_y f with y = shift * 2 pi / M.
CircleSignal translate(const CircleSignal& f, long shift);

// --- named signals -----------------------------------------------------------

CircleSignal constant(const CircleGrid& grid, Complex c);
/// e^{ik t}.
CircleSignal character(const CircleGrid& grid, long k);
/// Coefficients (1 - |k|/n)_+. Throws AliasingError if n >= M/2.
CircleSignal fejer_kernel(const CircleGrid& grid, FejerOrder n);
CircleSignal fejer_kernel(const CircleGrid& grid, long n);
/// Coefficients r^|k| for |k| < M/2.
CircleSignal poisson_kernel(const CircleGrid& grid, double r);
/// Trig polynomial with the given coefficients c_{-d..d} (index k + d).
CircleSignal trig_polynomial(const CircleGrid& grid, const std::vector<Complex>& coeffs);

/// Fejer family n -> K_n, norm bound 1.
ApproxIdentityFamily<CircleSignal> fejer_family(const CircleGrid& grid);

// --- Gelfand side ------------------------------------------------------------

struct GelfandBound {
    double sup_transform = 0.0;  // max_k |f^(k)|
    double l1 = 0.0;             // ||f||_1
};

GelfandBound gelfand_sup_bound(const CircleSignal& f);

/// Per-frequency traces of |e_j^(k) - 1|.
std::vector<ResidualTrace> aid_pointwise_limit_check(const ApproxIdentityFamily<CircleSignal>& family,
                                                     const std::vector<long>& frequencies,
                                                     const Schedule& schedule, double tol = kAsymptoticTol);

/// Coefficient-side weighted norm sum_k w(|k|) |f^(k)|; documentation-level only,
/// no Beurling-Domar check.
double weighted_coefficient_norm(const CircleSignal& f, const std::vector<double>& weights);

// --- Wiener division ---------------------------------------------------------

/// 1e-12 * max_k |f^(k)|.
double default_division_floor(const CircleSignal& f);

struct BandReport {
    bool ok = true;
    std::optional<long> offending_frequency;
};

/// |f^(k)| > floor for every |k| < n.
BandReport band_check(const CircleSignal& f, long n, double floor);

/// h_n with h^_n(k) = (1 - |k|/n)_+ / f^(k), so f*h_n = K_n.
/// Throws DivisionFloorError at the first |k| < n with |f^(k)| <= floor.
CircleSignal wiener_division(const CircleSignal& f, long n, double floor);
CircleSignal wiener_division(const CircleSignal& f, long n);

/// Net j -> h_j.
InverseNet<CircleSignal> wiener_division_net(const CircleSignal& f, std::optional<double> floor = std::nullopt);

/// Refuter: band failure of f up to order n.
Refuter<CircleSignal> band_refuter(long n, std::optional<double> floor = std::nullopt);

/// Witness: unit-norm character at frequency N; value |f^(N)| (exact).
ZeroDivisorModulus<CircleSignal> tdz_witness(const CircleSignal& f, long frequency);

// --- model -------------------------------------------------------------------

class CircleAlgebra {
public:
    using element_type = CircleSignal;

    explicit CircleAlgebra(CircleGrid grid) : grid_(grid) {}

    const CircleGrid& grid() const noexcept { return grid_; }

    CircleSignal add(const CircleSignal& a, const CircleSignal& b) const { return wiener::add(a, b); }
    CircleSignal scale(Complex c, const CircleSignal& a) const { return wiener::scale(c, a); }
    CircleSignal multiply(const CircleSignal& a, const CircleSignal& b) const { return convolve(a, b); }
    CircleSignal involution(const CircleSignal& a) const { return wiener::involution(a); }
    double norm(const CircleSignal& a) const { return l1_norm(a); }
    bool is_unital() const noexcept { return false; }

    /// Trig polynomial of degree <= 16 with complex normal coefficients.
    CircleSignal random_element(Rng& rng) const;

private:
    CircleGrid grid_;
};

/// Constant 1, Poisson r in {0.3, 0.5}, and `smooth_count` seeded trig
/// polynomials of degree <= 8 with coefficients u_k 0.3^|k| (|u_k| <= 1).
std::vector<CircleSignal> standard_test_set(const CircleGrid& grid, std::uint64_t seed,
                                            std::size_t smooth_count = 4);

/// Wiener-division certificate for f with refuter `band_refuter(max index)`.
ApproxInvCertificate<CircleSignal> check_wiener_invertible(const CircleAlgebra& model, const CircleSignal& f,
                                                           const std::vector<CircleSignal>& test_set, double tol,
                                                           const Schedule& schedule,
                                                           std::optional<double> floor = std::nullopt);

struct ProductCheck {
    ApproxInvCertificate<CircleSignal> certificate;  // for f1*f2
    std::optional<int> failing_factor;               // 1 or 2 when a band check failed
    std::optional<long> offending_frequency;
    double max_member_norm = 0.0;                    // sup_j ||(f1*f2) * w_j||_1
};

/// Certifies f1*f2 with the net h_j(f1) * h_j(f2). Band failures of either
/// factor refute, naming the factor and frequency.
ProductCheck product_invertibility_check(const CircleAlgebra& model, const CircleSignal& f1,
                                         const CircleSignal& f2, const std::vector<CircleSignal>& test_set,
                                         double tol, const Schedule& schedule,
                                         std::optional<double> floor = std::nullopt);

}  // namespace approxinv::wiener
