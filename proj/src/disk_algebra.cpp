#include "approxinv/disk_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace approxinv::disk {

namespace {

std::vector<Complex> circle_points(const CircleSampling& s) {
    std::vector<Complex> pts(s.angles);
    for (std::size_t m = 0; m < s.angles; ++m) pts[m] = s.point(1.0, m);
    return pts;
}

// f - 1 is holomorphic, so its sup over the sampled annulus is attained on the
// innermost or outermost circle; searching over those two is exact and cheaper.
std::vector<Complex> annulus_boundary_points(const CircleSampling& s) {
    const auto [lo, hi] = std::minmax_element(s.radii.begin(), s.radii.end());
    std::vector<Complex> pts;
    pts.reserve(2 * s.angles);
    for (double r : {*lo, *hi})
        for (std::size_t m = 0; m < s.angles; ++m) pts.push_back(s.point(r, m));
    return pts;
}

/// Horner without the constant term: z (c_1 + z (c_2 + ...)).
Complex eval(const Complex* c, std::size_t d, Complex z) {
    Complex acc = 0.0;
    for (std::size_t k = d; k-- > 0;) acc = acc * z + c[k];
    return acc * z;
}

/// Real parametrization: 2 reals per complex coefficient.
using Params = std::vector<double>;
using Objective = std::function<double(const Params&)>;

std::vector<Complex> to_complex(const double* p, std::size_t d) {
    std::vector<Complex> c(d);
    for (std::size_t k = 0; k < d; ++k) c[k] = {p[2 * k], p[2 * k + 1]};
    return c;
}

double golden_section(const std::function<double(double)>& phi, double lo, double hi, std::size_t iterations,
                      double& argmin) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = phi(x1), f2 = phi(x2);
    for (std::size_t i = 0; i < iterations; ++i) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = phi(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = phi(x2);
        }
    }
    argmin = f1 < f2 ? x1 : x2;
    return std::min(f1, f2);
}

/// Random starts in the disk of radius `start_radius`, then golden-section
/// coordinate passes on the best few.
std::pair<double, Params> randomized_search(std::size_t dim, const Objective& objective, const SearchOptions& o,
                                            std::size_t& evaluations) {
    Rng rng(o.seed);
    std::vector<std::pair<double, Params>> best;
    const std::size_t keep = std::max<std::size_t>(1, o.refine_best);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t s = 0; s < o.starts; ++s) {
        Params p(dim);
        // A random overall scale per start so that small polynomials are explored too.
        const double radius = o.start_radius * unit(rng);
        for (std::size_t k = 0; 2 * k < dim; ++k) {
            const Complex c = uniform_in_disk(rng, radius);
            p[2 * k] = c.real();
            p[2 * k + 1] = c.imag();
        }
        const double v = objective(p);
        ++evaluations;
        if (best.size() < keep || v < best.back().first) {
            best.emplace_back(v, std::move(p));
            std::sort(best.begin(), best.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            if (best.size() > keep) best.pop_back();
        }
    }

    for (auto& [value, p] : best) {
        double width = 0.5 * o.start_radius;
        for (std::size_t pass = 0; pass < o.refine_passes; ++pass, width /= 3.0) {
            for (std::size_t i = 0; i < dim; ++i) {
                const double x0 = p[i];
                double arg = x0;
                const double v = golden_section(
                    [&](double t) {
                        p[i] = t;
                        ++evaluations;
                        return objective(p);
                    },
                    x0 - width, x0 + width, 24, arg);
                if (v < value) {
                    value = v;
                    p[i] = arg;
                } else {
                    p[i] = x0;
                }
            }
        }
    }
    const auto it = std::min_element(best.begin(), best.end(),
                                     [](const auto& a, const auto& b) { return a.first < b.first; });
    return *it;
}

}  // namespace

PolyA0::PolyA0(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {}

PolyA0 PolyA0::monomial(std::size_t k, Complex c) {
    if (k == 0) throw std::invalid_argument("A0(D) has no constant monomial");
    std::vector<Complex> v(k);
    v[k - 1] = c;
    return PolyA0(std::move(v));
}

Complex PolyA0::operator()(Complex z) const { return eval(coeffs_.data(), coeffs_.size(), z); }

CircleSampling::CircleSampling(std::size_t angles_, std::vector<double> radii_)
    : angles(angles_), radii(std::move(radii_)) {
    if (angles < 1024) throw std::invalid_argument("CircleSampling: need at least 1024 angles");
    for (double r : radii)
        if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("CircleSampling: radii must lie in (0, 1]");
}

std::vector<double> CircleSampling::default_radii() {
    std::vector<double> r;
    for (int i = 0; i <= 10; ++i) r.push_back(0.5 + 0.05 * i);
    r.back() = 1.0;
    return r;
}

Complex CircleSampling::point(double radius, std::size_t m) const {
    // (2 pi m) / M keeps nested sample sets bit-identical under refinement by powers of two.
    return std::polar(radius, (2.0 * std::numbers::pi * static_cast<double>(m)) / static_cast<double>(angles));
}

PolyA0 add(const PolyA0& a, const PolyA0& b) {
    std::vector<Complex> c(std::max(a.degree(), b.degree()));
    for (std::size_t k = 0; k < a.degree(); ++k) c[k] += a.coefficients()[k];
    for (std::size_t k = 0; k < b.degree(); ++k) c[k] += b.coefficients()[k];
    return PolyA0(std::move(c));
}

PolyA0 scale(Complex s, const PolyA0& a) {
    std::vector<Complex> c(a.coefficients());
    for (auto& x : c) x *= s;
    return PolyA0(std::move(c));
}

PolyA0 multiply(const PolyA0& a, const PolyA0& b) {
    if (a.degree() == 0 || b.degree() == 0) return PolyA0();
    // z^i * z^j = z^{i+j}; coefficient index is power - 1.
    std::vector<Complex> c(a.degree() + b.degree());
    for (std::size_t i = 0; i < a.degree(); ++i)
        for (std::size_t j = 0; j < b.degree(); ++j) c[i + j + 1] += a.coefficients()[i] * b.coefficients()[j];
    return PolyA0(std::move(c));
}

double sup_norm_disk(const PolyA0& p, const CircleSampling& sampling) {
    double m = 0.0;
    for (std::size_t k = 0; k < sampling.angles; ++k) m = std::max(m, std::abs(p(sampling.point(1.0, k))));
    return m;
}

bool schwarz_check(const PolyA0& p, Complex z, const CircleSampling& sampling) {
    if (std::abs(z) > 1.0) throw std::invalid_argument("schwarz_check: |z| must be <= 1");
    return std::abs(p(z)) <= std::abs(z) * sup_norm_disk(p, sampling) + 1e-9;
}

double annulus_deviation(const PolyA0& p, const CircleSampling& sampling) {
    double m = 0.0;
    for (double r : sampling.radii)
        for (std::size_t k = 0; k < sampling.angles; ++k)
            m = std::max(m, std::abs(p(sampling.point(r, k)) - 1.0));
    return m;
}

double product_deviation(const PolyA0& f1, const PolyA0& f2, const CircleSampling& sampling) {
    const PolyA0 prod = multiply(f1, f2);
    double m = 0.0;
    for (std::size_t k = 0; k < sampling.angles; ++k) {
        const Complex z = sampling.point(1.0, k);
        m = std::max(m, std::abs(prod(z) - z));
    }
    return m;
}

IsometryReport chi1_isometry_check(const PolyA0& f, const CircleSampling& sampling) {
    return {sup_norm_disk(multiply(f, PolyA0::monomial(1)), sampling), sup_norm_disk(f, sampling)};
}

SearchResult minimize_annulus_deviation(const CircleSampling& sampling, const SearchOptions& options) {
    const auto pts = annulus_boundary_points(sampling);
    const std::size_t d = options.degree;
    const Objective obj = [&](const Params& p) {
        const auto c = to_complex(p.data(), d);
        double m = 0.0;
        for (const Complex& z : pts) m = std::max(m, std::abs(eval(c.data(), d, z) - 1.0));
        return m;
    };
    SearchResult r;
    auto [v, p] = randomized_search(2 * d, obj, options, r.evaluations);
    r.minimum = v;
    r.argmin = {PolyA0(to_complex(p.data(), d))};
    return r;
}

SearchResult minimize_product_deviation(const CircleSampling& sampling, const SearchOptions& options) {
    const auto pts = circle_points(sampling);
    const std::size_t d = options.degree;
    const Objective obj = [&](const Params& p) {
        const auto c1 = to_complex(p.data(), d);
        const auto c2 = to_complex(p.data() + 2 * d, d);
        double m = 0.0;
        for (const Complex& z : pts) m = std::max(m, std::abs(eval(c1.data(), d, z) * eval(c2.data(), d, z) - z));
        return m;
    };
    SearchResult r;
    auto [v, p] = randomized_search(4 * d, obj, options, r.evaluations);
    r.minimum = v;
    r.argmin = {PolyA0(to_complex(p.data(), d)), PolyA0(to_complex(p.data() + 2 * d, d))};
    return r;
}

SearchResult minimize_identity_residual(const CircleSampling& sampling, const SearchOptions& options) {
    const auto pts = circle_points(sampling);
    const std::size_t d = options.degree;
    const Objective obj = [&](const Params& p) {
        const auto c = to_complex(p.data(), d);
        double m = 0.0;
        for (const Complex& z : pts) m = std::max(m, std::abs(z * eval(c.data(), d, z) - z));
        return m;
    };
    SearchResult r;
    auto [v, p] = randomized_search(2 * d, obj, options, r.evaluations);
    r.minimum = v;
    r.argmin = {PolyA0(to_complex(p.data(), d))};
    return r;
}

PolyA0 SmallDiskAlgebra::random_element(Rng& rng) const {
    std::vector<Complex> c(8);
    for (auto& x : c) x = uniform_in_disk(rng, 1.0);
    return PolyA0(std::move(c));
}

}  // namespace approxinv::disk
