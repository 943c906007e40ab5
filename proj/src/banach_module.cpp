#include "approxinv/banach_module.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace approxinv::module {

namespace {

void require_compatible(const ModuleSignal& a, const ModuleSignal& b) {
    if (!(a.signal().grid() == b.signal().grid())) throw std::invalid_argument("module signals on different grids");
    if (a.exponent().value() != b.exponent().value())
        throw std::invalid_argument("module signals with different exponents");
}

double lp_norm(const std::vector<Complex>& v, ModuleExponent p) {
    if (p.is_infinite()) {
        double m = 0.0;
        for (const auto& x : v) m = std::max(m, std::abs(x));
        return m;
    }
    double top = 0.0;
    for (const auto& x : v) top = std::max(top, std::abs(x));
    if (top == 0.0) return 0.0;
    double s = 0.0;
    for (const auto& x : v) s += std::pow(std::abs(x) / top, p.value());
    return top * std::pow(s / static_cast<double>(v.size()), 1.0 / p.value());
}

}  // namespace

ModuleExponent::ModuleExponent(double p) : p_(p) {
    if (!(p >= 1.0)) throw std::invalid_argument("module exponent must be >= 1");
}

ModuleExponent ModuleExponent::infinity() { return ModuleExponent(std::numeric_limits<double>::infinity()); }

bool ModuleExponent::is_infinite() const noexcept { return p_ == std::numeric_limits<double>::infinity(); }

double module_norm(const ModuleSignal& g) { return lp_norm(g.signal().samples(), g.exponent()); }

double module_distance(const ModuleSignal& a, const ModuleSignal& b) {
    require_compatible(a, b);
    return module_norm(
        ModuleSignal(wiener::add(a.signal(), wiener::scale(-1.0, b.signal())), a.exponent()));
}

ModuleSignal module_action(const CircleSignal& f, const ModuleSignal& g) {
    return ModuleSignal(wiener::convolve(f, g.signal()), g.exponent());
}

ResidualTrace module_identity_convergence(const ApproxIdentityFamily<CircleSignal>& family, const ModuleSignal& b,
                                          const Schedule& schedule, double tol) {
    validate_schedule(schedule);
    ResidualTrace trace(tol);
    for (const NetIndex j : schedule) {
        const CircleSignal e = family(j);
        const double r = module_distance(module_action(e, b), b);
        trace.push({j, r, r, r, wiener::l1_norm(e)});
    }
    return trace;
}

double density_residual(const CircleSignal& f, const ModuleSignal& z, long n, std::optional<double> floor) {
    const double fl = floor.value_or(wiener::default_division_floor(f));
    const auto band = wiener::band_check(f, n, fl);
    if (!band.ok)
        throw DivisionFloorError("density_residual: |f^(" + std::to_string(*band.offending_frequency) +
                                     ")| is at or below the division floor",
                                 *band.offending_frequency);

    const std::size_t m = f.size();
    std::vector<Complex> y(m);
    for (long k = -(n - 1); k <= n - 1; ++k) {
        const auto i = static_cast<std::size_t>(((k % static_cast<long>(m)) + static_cast<long>(m)) % static_cast<long>(m));
        y[i] = z.signal().spectrum()[i] / f.spectrum()[i];
    }
    const ModuleSignal ys(CircleSignal::from_spectrum(f.grid(), std::move(y)), z.exponent());
    return module_distance(module_action(f, ys), z);
}

void NoiseSpec::validate() const {
    if (!(sigma >= 0.0)) throw std::invalid_argument("noise sigma must be >= 0");
}

ModuleSignal blur(const CircleSignal& f, const ModuleSignal& g, const NoiseSpec& noise) {
    noise.validate();
    ModuleSignal b = module_action(f, g);
    if (noise.sigma == 0.0) return b;
    Rng rng(noise.seed);
    auto v = b.signal().samples();
    for (auto& x : v) x += complex_normal(rng, noise.sigma / std::sqrt(2.0));
    return ModuleSignal(CircleSignal::from_samples(f.grid(), std::move(v)), g.exponent());
}

DeconvolutionReport deconvolve(const CircleSignal& f, const ModuleSignal& b, long n,
                               const std::optional<ModuleSignal>& ground_truth, std::optional<double> floor) {
    const CircleSignal h = floor ? wiener::wiener_division(f, n, *floor) : wiener::wiener_division(f, n);
    DeconvolutionReport r{module_action(h, b), std::nullopt, std::nullopt};
    if (ground_truth) {
        r.error = module_distance(r.recovered, *ground_truth);
        const double gn = module_norm(*ground_truth);
        if (gn > 0.0) r.relative_error = *r.error / gn;
    }
    return r;
}

CircleSignal smooth_signal(const CircleGrid& grid, double rho, long degree, Rng& rng) {
    std::vector<Complex> c(static_cast<std::size_t>(2 * degree + 1));
    for (long k = -degree; k <= degree; ++k)
        c[static_cast<std::size_t>(k + degree)] =
            uniform_in_disk(rng, 1.0) * std::pow(rho, static_cast<double>(std::abs(k)));
    return wiener::trig_polynomial(grid, c);
}

}  // namespace approxinv::module
