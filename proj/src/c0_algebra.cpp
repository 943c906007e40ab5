#include "approxinv/c0_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace approxinv::c0 {

namespace {

void require_same_size(const C0Element& a, const C0Element& b) {
    if (a.size() != b.size()) throw std::invalid_argument("C0 elements live on different grids");
}

}  // namespace

GridSpace::GridSpace(double half_width, std::size_t points, double tail_tolerance)
    : half_width_(half_width), points_(points), tail_tolerance_(tail_tolerance), spacing_(0.0) {
    if (!(half_width > 0.0)) throw std::invalid_argument("GridSpace: half width must be positive");
    if (points < 3) throw std::invalid_argument("GridSpace: need at least 3 points");
    if (!(tail_tolerance > 0.0)) throw std::invalid_argument("GridSpace: tail tolerance must be positive");
    spacing_ = 2.0 * half_width / static_cast<double>(points - 1);
}

C0Element make_element(const GridSpace& space, std::vector<Complex> values) {
    if (values.size() != space.size()) throw std::invalid_argument("C0 element size does not match the grid");
    for (const auto& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("C0 element has non-finite values");
    if (std::abs(values.front()) > space.tail_tolerance() || std::abs(values.back()) > space.tail_tolerance())
        throw std::invalid_argument("C0 element violates the tail bound at the grid boundary");
    return C0Element(std::move(values));
}

C0Element sample(const GridSpace& space, const std::function<Complex(double)>& f) {
    std::vector<Complex> v(space.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(space.point(i));
    return make_element(space, std::move(v));
}

C0Element zero_element(const GridSpace& space) { return C0Element(std::vector<Complex>(space.size())); }

double sup_norm(const C0Element& f) {
    double m = 0.0;
    for (const auto& v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

// --- plateaus ---------------------------------------------------------------

WindowFamily::WindowFamily(GridSpace space, std::function<CompactWindow(NetIndex)> growth, std::size_t ramp)
    : space_(space), growth_(std::move(growth)), ramp_(ramp) {
    if (ramp == 0) throw std::invalid_argument("plateau ramp must be at least one cell");
}

CompactWindow WindowFamily::window(NetIndex n) const {
    const CompactWindow k = growth_(n);
    if (k.first > k.last) throw std::invalid_argument("window has first > last");
    if (k.first < ramp_ || k.last + ramp_ > space_.size() - 1)
        throw std::invalid_argument("window plus ramp exceeds the grid");
    return k;
}

C0Element WindowFamily::operator()(NetIndex n) const {
    const CompactWindow k = window(n);
    const double r = static_cast<double>(ramp_);
    std::vector<Complex> v(space_.size());
    for (std::size_t i = k.first - ramp_; i <= k.last + ramp_; ++i) {
        double value = 1.0;
        if (i < k.first) value = 1.0 - static_cast<double>(k.first - i) / r;
        if (i > k.last) value = 1.0 - static_cast<double>(i - k.last) / r;
        v[i] = value;
    }
    return C0Element(std::move(v));
}

ApproxIdentityFamily<C0Element> WindowFamily::as_family() const {
    return {[fam = *this](NetIndex n) { return fam(n); }, 1.0};
}

WindowFamily plateau_family(const GridSpace& space, std::function<CompactWindow(NetIndex)> growth,
                            std::size_t ramp) {
    return WindowFamily(space, std::move(growth), ramp);
}

std::function<CompactWindow(NetIndex)> symmetric_growth(const GridSpace& space, std::size_t step_cells) {
    const std::size_t c = space.center();
    return [c, step_cells](NetIndex n) {
        const std::size_t h = static_cast<std::size_t>(n.value()) * step_cells;
        // Let WindowFamily::window report overflow past the left edge.
        const std::size_t first = h > c ? 0 : c - h;
        return CompactWindow{first, c + h};
    };
}

// --- criterion --------------------------------------------------------------

NonvanishingReport is_nonvanishing(const C0Element& f, double threshold) {
    NonvanishingReport r;
    if (f.size() == 0) return r;
    r.min_abs = std::abs(f[0]);
    for (std::size_t i = 1; i < f.size(); ++i) {
        const double a = std::abs(f[i]);
        if (a < r.min_abs) {
            r.min_abs = a;
            r.argmin = i;
        }
    }
    r.nonvanishing = r.min_abs > threshold;
    return r;
}

double default_division_threshold(const C0Element& f) { return 1e-12 * sup_norm(f); }

InverseNet<C0Element> reciprocal_inverse_net(const C0Element& f, const WindowFamily& family, double threshold) {
    if (f.size() != family.space().size()) throw std::invalid_argument("element and family grids differ");
    return {[f, family, threshold](NetIndex n) {
                const C0Element e = family(n);
                std::vector<Complex> g(f.size());
                for (std::size_t i = 0; i < f.size(); ++i) {
                    if (e[i] == Complex{}) continue;
                    if (!(std::abs(f[i]) > threshold))
                        throw SingularDivision("reciprocal net: |f| at or below threshold at grid index " +
                                                   std::to_string(i),
                                               i);
                    g[i] = e[i] / f[i];
                }
                return C0Element(std::move(g));
            },
            Side::right};
}

InverseNet<C0Element> reciprocal_inverse_net(const C0Element& f, const WindowFamily& family) {
    return reciprocal_inverse_net(f, family, default_division_threshold(f));
}

C0Element perturb_to_noninvertible(const C0Element& f, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("perturb_to_noninvertible: eps must be positive");
    const double half = eps / 2.0;
    if (eps >= 2.0 * sup_norm(f)) return C0Element(std::vector<Complex>(f.size()));

    // Hull of the indices where |f| >= eps/2; the cutoff is 1 there and 0 outside.
    std::size_t first = f.size();
    std::size_t last = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (std::abs(f[i]) >= half) {
            first = std::min(first, i);
            last = i;
        }
    }
    if (first == 0 && last == f.size() - 1)
        throw CannotPerturb("|f| >= eps/2 on the whole grid including the boundary cells");

    std::vector<Complex> v(f.size());
    for (std::size_t i = first; i <= last && i < f.size(); ++i) v[i] = f[i];
    return C0Element(std::move(v));
}

// --- model ------------------------------------------------------------------

C0Element C0Algebra::add(const C0Element& a, const C0Element& b) const {
    require_same_size(a, b);
    std::vector<Complex> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
    return C0Element(std::move(v));
}

C0Element C0Algebra::scale(Complex c, const C0Element& a) const {
    std::vector<Complex> v(a.values());
    for (auto& x : v) x *= c;
    return C0Element(std::move(v));
}

C0Element C0Algebra::multiply(const C0Element& a, const C0Element& b) const {
    require_same_size(a, b);
    std::vector<Complex> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] * b[i];
    return C0Element(std::move(v));
}

C0Element C0Algebra::involution(const C0Element& a) const {
    std::vector<Complex> v(a.values());
    for (auto& x : v) x = std::conj(x);
    return C0Element(std::move(v));
}

C0Element C0Algebra::random_element(Rng& rng) const {
    std::uniform_real_distribution<double> amp(0.5, 1.0), scale(0.5, 1.0), mu(-2.0, 2.0), freq(-1.0, 1.0);
    const double a = amp(rng), s = scale(rng), m = mu(rng), w = freq(rng);
    std::vector<Complex> v(space_.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double t = space_.point(i);
        const double u = (t - m) / s;
        v[i] = std::polar(a / (1.0 + u * u), w * t);
    }
    // Rescale the tails into the bound if the grid is too short for the decay.
    const double edge = std::max(std::abs(v.front()), std::abs(v.back()));
    if (edge > space_.tail_tolerance())
        for (auto& x : v) x *= space_.tail_tolerance() / edge;
    return C0Element(std::move(v));
}

C0Element insert_zero(const GridSpace& space, const C0Element& f, std::size_t index, double softness) {
    if (index >= space.size() || f.size() != space.size()) throw std::invalid_argument("insert_zero: bad index or size");
    if (!(softness > 0.0)) throw std::invalid_argument("insert_zero: softness must be positive");
    std::vector<Complex> v(f.values());
    const double ti = space.point(index);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double d = space.point(i) - ti;
        v[i] *= i == index ? 0.0 : d / (softness + std::abs(d));
    }
    return make_element(space, std::move(v));
}

Refuter<C0Element> zero_refuter(double threshold) {
    return [threshold](const C0Element& f) -> std::optional<std::string> {
        const auto r = is_nonvanishing(f, threshold);
        if (r.nonvanishing) return std::nullopt;
        return "f vanishes (|f| <= " + std::to_string(threshold) + ") at grid index " + std::to_string(r.argmin);
    };
}

std::vector<C0Element> gaussian_test_set(const GridSpace& space, std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> mu(-2.0, 2.0), width(0.5, 1.5), phase(0.0, 6.283185307179586);
    std::vector<C0Element> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double m = mu(rng), s = width(rng), p = phase(rng);
        out.push_back(sample(space, [=](double t) {
            const double u = (t - m) / s;
            return std::polar(std::exp(-0.5 * u * u), p);
        }));
    }
    return out;
}

ApproxInvCertificate<C0Element> check_c0_invertible(const C0Algebra& model, const C0Element& f,
                                                    const WindowFamily& family,
                                                    const std::vector<C0Element>& test_set, double tol,
                                                    const Schedule& schedule, double threshold) {
    return check_approx_invertible(model, f, reciprocal_inverse_net(f, family, threshold), test_set, tol,
                                   schedule, zero_refuter(threshold));
}

}  // namespace approxinv::c0
