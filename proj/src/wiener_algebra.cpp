#include "approxinv/wiener_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "detail/fft.hpp"

namespace approxinv::wiener {

namespace {

std::size_t slot(long k, std::size_t m) {
    const long mm = static_cast<long>(m);
    return static_cast<std::size_t>(((k % mm) + mm) % mm);
}

/// Signed frequency of FFT slot i, in (-M/2, M/2].
long frequency_of(std::size_t i, std::size_t m) {
    return i <= m / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(m);
}

void require_same_grid(const CircleSignal& a, const CircleSignal& b) {
    if (!(a.grid() == b.grid()) || a.size() != b.size())
        throw std::invalid_argument("circle signals live on different grids");
}

}  // namespace

CircleGrid::CircleGrid(std::size_t samples) : samples_(samples) {
    if (samples < 8) throw std::invalid_argument("CircleGrid: need at least 8 samples");
}

double CircleGrid::angle(std::size_t m) const noexcept {
    return 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(samples_);
}

CircleSignal CircleSignal::from_samples(const CircleGrid& grid, std::vector<Complex> samples) {
    if (samples.size() != grid.size()) throw std::invalid_argument("sample count does not match the grid");
    for (const auto& v : samples)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("circle signal has non-finite values");
    detail::fft_forward(samples);
    const double inv = 1.0 / static_cast<double>(grid.size());
    for (auto& c : samples) c *= inv;
    return CircleSignal(grid, std::move(samples));
}

CircleSignal CircleSignal::from_spectrum(const CircleGrid& grid, std::vector<Complex> spectrum) {
    if (spectrum.size() != grid.size()) throw std::invalid_argument("spectrum length does not match the grid");
    return CircleSignal(grid, std::move(spectrum));
}

Complex CircleSignal::coefficient(long k) const { return spectrum_[slot(k, spectrum_.size())]; }

std::vector<Complex> CircleSignal::samples() const {
    std::vector<Complex> v(spectrum_);
    detail::fft_backward(v);
    return v;
}

FourierCoeffs::FourierCoeffs(long max_order, std::vector<Complex> values)
    : max_order_(max_order), values_(std::move(values)) {
    if (max_order < 0 || values_.size() != static_cast<std::size_t>(2 * max_order + 1))
        throw std::invalid_argument("FourierCoeffs: size must be 2*max_order+1");
}

Complex FourierCoeffs::operator()(long k) const {
    if (k < -max_order_ || k > max_order_) throw std::out_of_range("FourierCoeffs: frequency out of band");
    return values_[static_cast<std::size_t>(k + max_order_)];
}

FejerOrder::FejerOrder(long n) : n_(n) {
    if (n < 1) throw std::invalid_argument("Fejer order must be >= 1");
}

// --- basic operations --------------------------------------------------------

double l1_norm(const CircleSignal& f) {
    const auto v = f.samples();
    double s = 0.0;
    for (const auto& x : v) s += std::abs(x);
    return s / static_cast<double>(v.size());
}

CircleSignal convolve(const CircleSignal& f, const CircleSignal& g) {
    require_same_grid(f, g);
    std::vector<Complex> s(f.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = f.spectrum()[i] * g.spectrum()[i];
    return CircleSignal::from_spectrum(f.grid(), std::move(s));
}

FourierCoeffs fourier(const CircleSignal& f, long max_order) {
    if (max_order < 0) throw std::invalid_argument("fourier: negative order");
    if (max_order > f.grid().max_order()) throw AliasingError("fourier: order must be below M/2");
    std::vector<Complex> v(static_cast<std::size_t>(2 * max_order + 1));
    for (long k = -max_order; k <= max_order; ++k) v[static_cast<std::size_t>(k + max_order)] = f.coefficient(k);
    return FourierCoeffs(max_order, std::move(v));
}

CircleSignal add(const CircleSignal& a, const CircleSignal& b) {
    require_same_grid(a, b);
    std::vector<Complex> s(a.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = a.spectrum()[i] + b.spectrum()[i];
    return CircleSignal::from_spectrum(a.grid(), std::move(s));
}

CircleSignal scale(Complex c, const CircleSignal& a) {
    std::vector<Complex> s(a.spectrum());
    for (auto& x : s) x *= c;
    return CircleSignal::from_spectrum(a.grid(), std::move(s));
}

CircleSignal involution(const CircleSignal& a) {
    std::vector<Complex> s(a.spectrum());
    for (auto& x : s) x = std::conj(x);
    return CircleSignal::from_spectrum(a.grid(), std::move(s));
}

CircleSignal translate(const CircleSignal& f, long shift) {
    // (L_y f)(t) = f(t - y)  <=>  coefficient k picks up e^{-i k y}.
    const std::size_t m = f.size();
    std::vector<Complex> s(f.spectrum());
    for (std::size_t i = 0; i < m; ++i) {
        const long k = frequency_of(i, m);
        const long phase_index = static_cast<long>(slot(k * shift, m));
        s[i] *= std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(phase_index) / static_cast<double>(m));
    }
    return CircleSignal::from_spectrum(f.grid(), std::move(s));
}

// --- named signals -----------------------------------------------------------

CircleSignal constant(const CircleGrid& grid, Complex c) {
    std::vector<Complex> s(grid.size());
    s[0] = c;
    return CircleSignal::from_spectrum(grid, std::move(s));
}

CircleSignal character(const CircleGrid& grid, long k) {
    std::vector<Complex> s(grid.size());
    s[slot(k, grid.size())] = 1.0;
    return CircleSignal::from_spectrum(grid, std::move(s));
}

CircleSignal fejer_kernel(const CircleGrid& grid, FejerOrder order) {
    const long n = order.value();
    if (n >= static_cast<long>(grid.size() / 2)) throw AliasingError("fejer_kernel: order must be below M/2");
    std::vector<Complex> s(grid.size());
    for (long k = -(n - 1); k <= n - 1; ++k)
        s[slot(k, grid.size())] = 1.0 - static_cast<double>(std::abs(k)) / static_cast<double>(n);
    return CircleSignal::from_spectrum(grid, std::move(s));
}

CircleSignal fejer_kernel(const CircleGrid& grid, long n) { return fejer_kernel(grid, FejerOrder(n)); }

CircleSignal poisson_kernel(const CircleGrid& grid, double r) {
    if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("poisson_kernel: r must lie in [0, 1)");
    const std::size_t m = grid.size();
    std::vector<Complex> s(m);
    for (std::size_t i = 0; i < m; ++i) {
        const long k = frequency_of(i, m);
        if (std::abs(k) < static_cast<long>(m / 2)) s[i] = std::pow(r, static_cast<double>(std::abs(k)));
    }
    return CircleSignal::from_spectrum(grid, std::move(s));
}

CircleSignal trig_polynomial(const CircleGrid& grid, const std::vector<Complex>& coeffs) {
    if (coeffs.size() % 2 == 0) throw std::invalid_argument("trig_polynomial: need 2d+1 coefficients");
    const long d = static_cast<long>(coeffs.size() / 2);
    if (d > grid.max_order()) throw AliasingError("trig_polynomial: degree must be below M/2");
    std::vector<Complex> s(grid.size());
    for (long k = -d; k <= d; ++k) s[slot(k, grid.size())] = coeffs[static_cast<std::size_t>(k + d)];
    return CircleSignal::from_spectrum(grid, std::move(s));
}

ApproxIdentityFamily<CircleSignal> fejer_family(const CircleGrid& grid) {
    return {[grid](NetIndex n) { return fejer_kernel(grid, static_cast<long>(n.value())); }, 1.0};
}

// --- Gelfand side ------------------------------------------------------------

GelfandBound gelfand_sup_bound(const CircleSignal& f) {
    GelfandBound b;
    for (const auto& c : f.spectrum()) b.sup_transform = std::max(b.sup_transform, std::abs(c));
    b.l1 = l1_norm(f);
    return b;
}

std::vector<ResidualTrace> aid_pointwise_limit_check(const ApproxIdentityFamily<CircleSignal>& family,
                                                     const std::vector<long>& frequencies,
                                                     const Schedule& schedule, double tol) {
    validate_schedule(schedule);
    std::vector<ResidualTrace> traces(frequencies.size(), ResidualTrace(tol));
    for (const NetIndex j : schedule) {
        const CircleSignal e = family(j);
        for (std::size_t i = 0; i < frequencies.size(); ++i) {
            if (std::abs(frequencies[i]) > e.grid().max_order())
                throw AliasingError("aid_pointwise_limit_check: frequency outside the band");
            const double r = std::abs(e.coefficient(frequencies[i]) - 1.0);
            traces[i].push({j, r, r, r, 0.0});
        }
    }
    return traces;
}

double weighted_coefficient_norm(const CircleSignal& f, const std::vector<double>& weights) {
    const std::size_t m = f.size();
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto k = static_cast<std::size_t>(std::abs(frequency_of(i, m)));
        const double w = k < weights.size() ? weights[k] : (weights.empty() ? 1.0 : weights.back());
        s += w * std::abs(f.spectrum()[i]);
    }
    return s;
}

// --- Wiener division ---------------------------------------------------------

double default_division_floor(const CircleSignal& f) {
    double m = 0.0;
    for (const auto& c : f.spectrum()) m = std::max(m, std::abs(c));
    return 1e-12 * m;
}

BandReport band_check(const CircleSignal& f, long n, double floor) {
    if (n < 1) throw std::invalid_argument("band_check: n must be >= 1");
    if (n >= static_cast<long>(f.size() / 2)) throw AliasingError("band_check: order must be below M/2");
    // Scan outward from 0 so the reported frequency is the smallest |k|.
    for (long a = 0; a < n; ++a) {
        for (long k : {a, -a}) {
            if (!(std::abs(f.coefficient(k)) > floor)) return {false, k};
            if (a == 0) break;
        }
    }
    return {true, std::nullopt};
}

CircleSignal wiener_division(const CircleSignal& f, long n, double floor) {
    const BandReport band = band_check(f, n, floor);
    if (!band.ok)
        throw DivisionFloorError("wiener_division: |f^(" + std::to_string(*band.offending_frequency) +
                                     ")| is at or below the division floor",
                                 *band.offending_frequency);
    std::vector<Complex> s(f.size());
    for (long k = -(n - 1); k <= n - 1; ++k) {
        const double fejer = 1.0 - static_cast<double>(std::abs(k)) / static_cast<double>(n);
        s[slot(k, f.size())] = fejer / f.coefficient(k);
    }
    return CircleSignal::from_spectrum(f.grid(), std::move(s));
}

CircleSignal wiener_division(const CircleSignal& f, long n) { return wiener_division(f, n, default_division_floor(f)); }

InverseNet<CircleSignal> wiener_division_net(const CircleSignal& f, std::optional<double> floor) {
    const double fl = floor.value_or(default_division_floor(f));
    return {[f, fl](NetIndex j) { return wiener_division(f, static_cast<long>(j.value()), fl); }, Side::right};
}

Refuter<CircleSignal> band_refuter(long n, std::optional<double> floor) {
    return [n, floor](const CircleSignal& f) -> std::optional<std::string> {
        const BandReport r = band_check(f, n, floor.value_or(default_division_floor(f)));
        if (r.ok) return std::nullopt;
        return "f^(" + std::to_string(*r.offending_frequency) + ") vanishes below the division floor";
    };
}

ZeroDivisorModulus<CircleSignal> tdz_witness(const CircleSignal& f, long frequency) {
    if (std::abs(frequency) > f.grid().max_order()) throw AliasingError("tdz_witness: frequency must be below M/2");
    CircleSignal chi = character(f.grid(), frequency);
    const double chi_norm = l1_norm(chi);
    chi = scale(1.0 / chi_norm, chi);
    const double value = l1_norm(convolve(f, chi)) / l1_norm(chi);
    return {value, std::move(chi), ModulusMethod::exact};
}

// --- model -------------------------------------------------------------------

CircleSignal CircleAlgebra::random_element(Rng& rng) const {
    constexpr long degree = 16;
    std::vector<Complex> c(2 * degree + 1);
    for (auto& x : c) x = complex_normal(rng);
    return trig_polynomial(grid_, c);
}

std::vector<CircleSignal> standard_test_set(const CircleGrid& grid, std::uint64_t seed, std::size_t smooth_count) {
    std::vector<CircleSignal> out{constant(grid, 1.0), poisson_kernel(grid, 0.3), poisson_kernel(grid, 0.5)};
    Rng rng(seed);
    constexpr long degree = 8;
    for (std::size_t i = 0; i < smooth_count; ++i) {
        std::vector<Complex> c(2 * degree + 1);
        for (long k = -degree; k <= degree; ++k)
            c[static_cast<std::size_t>(k + degree)] =
                uniform_in_disk(rng, 1.0) * std::pow(0.3, static_cast<double>(std::abs(k)));
        out.push_back(trig_polynomial(grid, c));
    }
    return out;
}

ApproxInvCertificate<CircleSignal> check_wiener_invertible(const CircleAlgebra& model, const CircleSignal& f,
                                                           const std::vector<CircleSignal>& test_set, double tol,
                                                           const Schedule& schedule, std::optional<double> floor) {
    validate_schedule(schedule);
    const long top = static_cast<long>(schedule.back().value());
    return check_approx_invertible(model, f, wiener_division_net(f, floor), test_set, tol, schedule,
                                   band_refuter(top, floor));
}

ProductCheck product_invertibility_check(const CircleAlgebra& model, const CircleSignal& f1, const CircleSignal& f2,
                                         const std::vector<CircleSignal>& test_set, double tol,
                                         const Schedule& schedule, std::optional<double> floor) {
    validate_schedule(schedule);
    const long top = static_cast<long>(schedule.back().value());
    const CircleSignal product = convolve(f1, f2);

    ProductCheck out{{product, std::nullopt, {}, {}, Verdict::inconclusive, {}}, std::nullopt, std::nullopt, 0.0};
    const CircleSignal* factors[] = {&f1, &f2};
    for (int i = 0; i < 2; ++i) {
        const CircleSignal& f = *factors[i];
        const BandReport r = band_check(f, top, floor.value_or(default_division_floor(f)));
        if (!r.ok) {
            out.failing_factor = i + 1;
            out.offending_frequency = r.offending_frequency;
            out.certificate.verdict = Verdict::refuted;
            out.certificate.reason = "factor " + std::to_string(i + 1) + ": f^(" +
                                     std::to_string(*r.offending_frequency) + ") vanishes below the division floor";
            return out;
        }
    }

    const auto h1 = wiener_division_net(f1, floor);
    const auto h2 = wiener_division_net(f2, floor);
    const InverseNet<CircleSignal> w{[h1, h2](NetIndex j) { return convolve(h1(j), h2(j)); }, Side::right};
    for (const NetIndex j : schedule) out.max_member_norm = std::max(out.max_member_norm, l1_norm(convolve(product, w(j))));
    out.certificate = check_approx_invertible(model, product, w, test_set, tol, schedule);
    return out;
}

}  // namespace approxinv::wiener
