#pragma once

// Lp(T) on the shared circle grid as a Banach module over L1(T), acting by
// circular convolution, plus Wiener deconvolution through the division net.

#include <cstdint>
#include <optional>
#include <vector>

#include "approxinv/core.hpp"
#include "approxinv/wiener_algebra.hpp"

namespace approxinv::module {

using wiener::CircleGrid;
using wiener::CircleSignal;

/// Exponent p in [1, inf] of the module norm ((1/M) sum |g|^p)^{1/p}.
class ModuleExponent {
public:
    explicit ModuleExponent(double p);
    static ModuleExponent infinity();

    double value() const noexcept { return p_; }
    bool is_infinite() const noexcept;

private:
    double p_;
};

class ModuleSignal {
public:
    ModuleSignal(CircleSignal signal, ModuleExponent p) : signal_(std::move(signal)), p_(p) {}

    const CircleSignal& signal() const noexcept { return signal_; }
    ModuleExponent exponent() const noexcept { return p_; }

private:
    CircleSignal signal_;
    ModuleExponent p_;
};

double module_norm(const ModuleSignal& g);
/// ||a - b||_B; throws std::invalid_argument on grid or exponent mismatch.
double module_distance(const ModuleSignal& a, const ModuleSignal& b);

/// f (*) g = f * g (circular convolution); throws std::invalid_argument on grid mismatch.
ModuleSignal module_action(const CircleSignal& f, const ModuleSignal& g);

/// Trace of ||e_j (*) b - b||_B.
ResidualTrace module_identity_convergence(const ApproxIdentityFamily<CircleSignal>& family, const ModuleSignal& b,
                                          const Schedule& schedule, double tol = kAsymptoticTol);

/// min over y band-limited below n of ||f (*) y - z||_B, with y^(k) = z^(k)/f^(k)
/// for |k| < n (optimal for p = 2; an upper bound otherwise). Throws
/// DivisionFloorError when f^ vanishes in the band.
double density_residual(const CircleSignal& f, const ModuleSignal& z, long n,
                        std::optional<double> floor = std::nullopt);

struct NoiseSpec {
    double sigma = 0.0;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument if sigma < 0.
    void validate() const;
};

/// b = f (*) g plus i.i.d. complex Gaussian noise of standard deviation sigma per sample.
ModuleSignal blur(const CircleSignal& f, const ModuleSignal& g, const NoiseSpec& noise);

struct DeconvolutionReport {
    ModuleSignal recovered;
    std::optional<double> error;           // ||g_n - g||_B when ground truth was given
    std::optional<double> relative_error;  // error / ||g||_B
};

/// g_n = h_n (*) b with h_n = wiener_division(f, n).
DeconvolutionReport deconvolve(const CircleSignal& f, const ModuleSignal& b, long n,
                               const std::optional<ModuleSignal>& ground_truth = std::nullopt,
                               std::optional<double> floor = std::nullopt);

/// Random trig polynomial with geometric coefficient decay |g^(k)| <= rho^|k|, |k| <= degree.
CircleSignal smooth_signal(const CircleGrid& grid, double rho, long degree, Rng& rng);

}  // namespace approxinv::module
