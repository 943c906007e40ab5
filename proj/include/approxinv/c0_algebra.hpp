#pragma once

// C0(X) on a finite symmetric grid over [-L, L]. "Vanishing at infinity" is
// encoded as a bound on the two extreme grid values (the tail tolerance).

#include <cstddef>
#include <functional>
#include <vector>

#include "approxinv/core.hpp"

namespace approxinv::c0 {

class GridSpace {
public:
    /// Throws std::invalid_argument unless half_width > 0, points >= 3 and tail_tolerance > 0.
    GridSpace(double half_width, std::size_t points, double tail_tolerance);

    double half_width() const noexcept { return half_width_; }
    std::size_t size() const noexcept { return points_; }
    double spacing() const noexcept { return spacing_; }
    double tail_tolerance() const noexcept { return tail_tolerance_; }
    double point(std::size_t i) const noexcept { return -half_width_ + static_cast<double>(i) * spacing_; }
    /// Index of the grid point closest to 0.
    std::size_t center() const noexcept { return (points_ - 1) / 2; }

    bool operator==(const GridSpace&) const = default;

private:
    double half_width_;
    std::size_t points_;
    double tail_tolerance_;
    double spacing_;
};

class C0Element {
public:
    C0Element() = default;
    explicit C0Element(std::vector<Complex> values) : values_(std::move(values)) {}

    const std::vector<Complex>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    Complex operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<Complex> values_;
};

/// Validated element: checks grid size and the tail invariant.
C0Element make_element(const GridSpace& space, std::vector<Complex> values);
/// Samples f on the grid and validates.
C0Element sample(const GridSpace& space, const std::function<Complex(double)>& f);
C0Element zero_element(const GridSpace& space);

double sup_norm(const C0Element& f);

struct CompactWindow {
    std::size_t first;
    std::size_t last;
};

/// Nested windows K(n), each turned into a piecewise-linear plateau e_K that
/// is 1 on K(n) and ramps linearly to 0 over `ramp` cells on either side.
class WindowFamily {
public:
    WindowFamily(GridSpace space, std::function<CompactWindow(NetIndex)> growth, std::size_t ramp);

    const GridSpace& space() const noexcept { return space_; }
    std::size_t ramp() const noexcept { return ramp_; }

    /// Throws std::invalid_argument if the window plus ramp leaves the grid.
    CompactWindow window(NetIndex n) const;
    C0Element operator()(NetIndex n) const;

    ApproxIdentityFamily<C0Element> as_family() const;

private:
    GridSpace space_;
    std::function<CompactWindow(NetIndex)> growth_;
    std::size_t ramp_;
};

WindowFamily plateau_family(const GridSpace& space, std::function<CompactWindow(NetIndex)> growth,
                            std::size_t ramp);

/// K(n) = center +- n*step_cells (symmetric about 0).
std::function<CompactWindow(NetIndex)> symmetric_growth(const GridSpace& space, std::size_t step_cells);

struct NonvanishingReport {
    bool nonvanishing = false;
    std::size_t argmin = 0;  // index of min |f|
    double min_abs = 0.0;
};

NonvanishingReport is_nonvanishing(const C0Element& f, double threshold);

/// Default division threshold: 1e-12 relative to sup_norm(f).
double default_division_threshold(const C0Element& f);

/// g_K = e_K / f on the support of e_K (zero elsewhere), so f g_K = e_K.
/// Evaluating a member throws SingularDivision where |f| <= threshold on that support.
InverseNet<C0Element> reciprocal_inverse_net(const C0Element& f, const WindowFamily& family, double threshold);
InverseNet<C0Element> reciprocal_inverse_net(const C0Element& f, const WindowFamily& family);

/// f g with g a 0/1 cutoff: |f g - f| <= eps/2 everywhere and f g has an exact zero.
/// Throws CannotPerturb when |f| >= eps/2 on the whole grid.
C0Element perturb_to_noninvertible(const C0Element& f, double eps);

class C0Algebra {
public:
    using element_type = C0Element;

    explicit C0Algebra(GridSpace space) : space_(space) {}

    const GridSpace& space() const noexcept { return space_; }

    C0Element add(const C0Element& a, const C0Element& b) const;
    C0Element scale(Complex c, const C0Element& a) const;
    C0Element multiply(const C0Element& a, const C0Element& b) const;
    C0Element involution(const C0Element& a) const;
    double norm(const C0Element& a) const { return sup_norm(a); }
    bool is_unital() const noexcept { return false; }

    /// Rational bump a e^{i w t} / (1 + ((t - mu)/s)^2), compliant with the tail bound.
    C0Element random_element(Rng& rng) const;

private:
    GridSpace space_;
};

/// f(t) (t - t_i) / (softness + |t - t_i|): same decay as f, exact zero at grid point i.
C0Element insert_zero(const GridSpace& space, const C0Element& f, std::size_t index, double softness);

/// Refuter: fires on an (exact, to threshold) zero of f on the grid.
Refuter<C0Element> zero_refuter(double threshold);

/// Gaussian bumps centred near 0, negligible outside |t| > 12.
std::vector<C0Element> gaussian_test_set(const GridSpace& space, std::size_t count, std::uint64_t seed);

/// Full criterion check: refuter first, then the reciprocal net along `schedule`.
ApproxInvCertificate<C0Element> check_c0_invertible(const C0Algebra& model, const C0Element& f,
                                                    const WindowFamily& family,
                                                    const std::vector<C0Element>& test_set, double tol,
                                                    const Schedule& schedule, double threshold);

}  // namespace approxinv::c0
