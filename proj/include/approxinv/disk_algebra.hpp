#pragma once

// The small disk algebra A0(D): polynomials with zero constant term under the
// sup norm over the closed disk. Every sup here is a sampled lower bound of
// the true sup, which is the safe direction for the lower bounds checked.

#include <cstddef>
#include <vector>

#include "approxinv/core.hpp"

namespace approxinv::disk {

/// p(z) = sum_{k=1}^{d} c_k z^k. The constant term is 0 by construction.
class PolyA0 {
public:
    PolyA0() = default;
    /// coeffs[0] is c_1.
    explicit PolyA0(std::vector<Complex> coeffs);

    static PolyA0 monomial(std::size_t k, Complex c = 1.0);

    std::size_t degree() const noexcept { return coeffs_.size(); }
    const std::vector<Complex>& coefficients() const noexcept { return coeffs_; }
    Complex operator()(Complex z) const;

private:
    std::vector<Complex> coeffs_;
};

struct CircleSampling {
    /// Throws std::invalid_argument if angles < 1024 or any radius is outside (0, 1].
    explicit CircleSampling(std::size_t angles = 1024, std::vector<double> radii = default_radii());

    static std::vector<double> default_radii();  // 0.5, 0.55, ..., 1.0

    Complex point(double radius, std::size_t m) const;

    std::size_t angles;
    std::vector<double> radii;
};

PolyA0 add(const PolyA0& a, const PolyA0& b);
PolyA0 scale(Complex c, const PolyA0& a);
/// Exact coefficient convolution; degree adds.
PolyA0 multiply(const PolyA0& a, const PolyA0& b);

/// max |p| over the sampled unit circle.
double sup_norm_disk(const PolyA0& p, const CircleSampling& sampling);
/// |p(z)| <= |z| sup_norm_disk(p) + 1e-9. Throws std::invalid_argument if |z| > 1.
bool schwarz_check(const PolyA0& p, Complex z, const CircleSampling& sampling);
/// Sampled sup over the annulus 1/2 <= |z| <= 1 of |p(z) - 1|.
double annulus_deviation(const PolyA0& p, const CircleSampling& sampling);
/// Sampled sup over the circle of |f1 f2 - z|.
double product_deviation(const PolyA0& f1, const PolyA0& f2, const CircleSampling& sampling);

struct IsometryReport {
    double product_norm = 0.0;  // ||f chi_1||
    double norm = 0.0;          // ||f||
};

IsometryReport chi1_isometry_check(const PolyA0& f, const CircleSampling& sampling);

struct SearchOptions {
    std::size_t starts = 10000;
    std::size_t degree = 8;
    double start_radius = 2.0;
    std::size_t refine_best = 4;
    std::size_t refine_passes = 6;
    std::uint64_t seed = 0;
};

struct SearchResult {
    double minimum = 0.0;
    std::vector<PolyA0> argmin;  // one polynomial, or the two factors
    std::size_t evaluations = 0;
};

/// Randomized minimization of annulus_deviation over degree <= d.
SearchResult minimize_annulus_deviation(const CircleSampling& sampling, const SearchOptions& options);
/// Randomized minimization of product_deviation over pairs of degree <= d.
SearchResult minimize_product_deviation(const CircleSampling& sampling, const SearchOptions& options);
/// Randomized minimization of ||chi_1 g - chi_1|| over g of degree <= d.
SearchResult minimize_identity_residual(const CircleSampling& sampling, const SearchOptions& options);

class SmallDiskAlgebra {
public:
    using element_type = PolyA0;

    explicit SmallDiskAlgebra(CircleSampling sampling = CircleSampling()) : sampling_(std::move(sampling)) {}

    const CircleSampling& sampling() const noexcept { return sampling_; }

    PolyA0 add(const PolyA0& a, const PolyA0& b) const { return disk::add(a, b); }
    PolyA0 scale(Complex c, const PolyA0& a) const { return disk::scale(c, a); }
    PolyA0 multiply(const PolyA0& a, const PolyA0& b) const { return disk::multiply(a, b); }
    double norm(const PolyA0& a) const { return sup_norm_disk(a, sampling_); }
    bool is_unital() const noexcept { return false; }

    /// Degree <= 8, coefficients uniform in the disk of radius 1.
    PolyA0 random_element(Rng& rng) const;

private:
    CircleSampling sampling_;
};

}  // namespace approxinv::disk
