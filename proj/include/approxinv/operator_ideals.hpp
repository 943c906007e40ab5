#pragma once

// Schatten-class operator ideals on a finite-dimensional surrogate Hilbert
// space C^n. Convention throughout: T e_k = lambda_k u_k, with e_k the input
// (right) singular vectors and u_k the output (left) singular vectors.
//
// At finite truncation "dense range" coincides with "surjective" and
// "injective" with "bounded below"; only those shadows are testable here.

#include <Eigen/Dense>

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "approxinv/core.hpp"

namespace approxinv::ideals {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct SingularSystem {
    Eigen::VectorXd values;  // lambda_1 >= ... >= lambda_n >= 0
    Matrix output;           // columns u_k
    Matrix input;            // columns e_k
};

/// One-sided (Hestenes) Jacobi SVD. Throws ConvergenceError past the sweep cap.
SingularSystem svd(const Matrix& s);

/// a_k(S) = lambda_k, 1 <= k <= n. Throws std::invalid_argument otherwise.
double approximation_number(const Matrix& s, std::size_t k);
/// The rank-(k-1) truncation sum_{i<k} lambda_i u_i e_i^*, which attains a_k.
Matrix best_rank_approximation(const Matrix& s, std::size_t rank);

/// Schatten exponent p in [1, inf].
class SchattenParams {
public:
    explicit SchattenParams(double p);
    static SchattenParams infinity() { return SchattenParams(std::numeric_limits<double>::infinity()); }

    double p() const noexcept { return p_; }
    bool is_infinite() const noexcept { return p_ == std::numeric_limits<double>::infinity(); }

private:
    double p_;
};

double schatten_norm(const Matrix& s, SchattenParams params);
double schatten_norm(const Eigen::VectorXd& singular_values, SchattenParams params);
double op_norm(const Matrix& s);

/// f (x) g : v -> <v, g> f.
Matrix rank_one(const Vector& f, const Vector& g);

/// m -> sum_{j<=m} b_j b_j^*, capped at m = n. Throws std::invalid_argument
/// if the columns of `basis` are not orthonormal within 1e-9.
ApproxIdentityFamily<Matrix> projection_family(const Matrix& basis);

struct StrongConvergence {
    bool precondition_ok = true;  // family declares a bound and respects it
    std::string violation;
    bool verdict = false;
    std::vector<double> residuals;  // max_v max(||S_j v - v||, ||S_j^* v - v||) per index
};

StrongConvergence strong_convergence_check(const ApproxIdentityFamily<Matrix>& family,
                                           const std::vector<Vector>& test_vectors, const Schedule& schedule,
                                           double tol);

/// 1e-10 * lambda_1.
double default_rank_threshold(const SingularSystem& sys);

/// U_m = sum_{k<=m} (1/lambda_k) e_k u_k^*, so T U_m = P_m onto span(u_1..u_m).
/// Throws RankDeficient if some lambda_k <= threshold.
InverseNet<Matrix> right_inverse_net(const Matrix& t, std::optional<double> threshold = std::nullopt);
/// P_m = sum_{k<=m} u_k u_k^*.
Matrix output_projection(const SingularSystem& sys, std::size_t m);

struct RangeKernelReport {
    bool dense_range = false;
    bool injective = false;
    double smallest_singular_value = 0.0;
};

RangeKernelReport range_kernel_refuter(const Matrix& t, double threshold);

/// Unit vector; throws std::invalid_argument unless ||a|| = 1 within 1e-12.
class PureStateVector {
public:
    explicit PureStateVector(Vector a);
    const Vector& vector() const noexcept { return a_; }

private:
    Vector a_;
};

/// tau_a(T) = <T a, a>.
Complex pure_state_value(const Matrix& t, const PureStateVector& a);
/// T in N_{tau_a}  <=>  ||T a|| <= tol.
bool modular_ideal_membership(const Matrix& t, const PureStateVector& a, double tol = 1e-12);

struct PureStateMinimum {
    double value = 0.0;  // min_a ||T^* a|| = sqrt(min_a tau_a(T T^*))
    Vector argmin;
};

/// Sampled unit vectors followed by inverse-iteration refinement on T T^*.
PureStateMinimum pure_state_minimum(const Matrix& t, std::size_t samples, std::uint64_t seed);

/// dense_range(T) == injective(T^*), and for full-rank T the adjoint U_m^*
/// net gives U_m^* T^* = (T U_m)^* within 1e-9.
bool adjoint_duality_check(const Matrix& t, double threshold = 1e-8);

/// Rank refuter: fires when lambda_n <= threshold.
Refuter<Matrix> rank_refuter(double threshold);

/// Exact inf_{||y||=1} ||x y|| = lambda_n under the operator norm, witness e_n e_n^*.
ZeroDivisorModulus<Matrix> exact_zero_divisor_modulus(const Matrix& x);

/// Norm on the matrix algebra: operator norm (full algebra B(C^n), unital)
/// or a Schatten norm (surrogate of the non-unital ideal).
class MatrixAlgebra {
public:
    using element_type = Matrix;

    static MatrixAlgebra operator_norm(std::size_t n) { return MatrixAlgebra(n, std::nullopt); }
    static MatrixAlgebra schatten(std::size_t n, SchattenParams p) { return MatrixAlgebra(n, p); }

    std::size_t dimension() const noexcept { return n_; }

    Matrix add(const Matrix& a, const Matrix& b) const { return a + b; }
    Matrix scale(Complex c, const Matrix& a) const { return c * a; }
    Matrix multiply(const Matrix& a, const Matrix& b) const { return a * b; }
    Matrix involution(const Matrix& a) const { return a.adjoint(); }
    double norm(const Matrix& a) const;
    bool is_unital() const noexcept { return !p_.has_value(); }
    Matrix identity() const { return Matrix::Identity(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_)); }

    /// Complex Gaussian entries.
    Matrix random_element(Rng& rng) const;

private:
    MatrixAlgebra(std::size_t n, std::optional<SchattenParams> p) : n_(n), p_(p) {}

    std::size_t n_;
    std::optional<SchattenParams> p_;
};

Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng);
/// Random n x n matrix of exact rank r (r < n gives a singular matrix).
Matrix random_rank_matrix(std::size_t n, std::size_t r, Rng& rng);
Vector random_unit_vector(std::size_t n, Rng& rng);
/// Columns form a random orthonormal basis (Gram-Schmidt on a Gaussian matrix).
Matrix random_orthonormal_basis(std::size_t n, Rng& rng);

}  // namespace approxinv::ideals
