#include "approxinv/operator_ideals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace approxinv::ideals {

namespace {

constexpr double kSweepThreshold = 1e-12;  // relative off-diagonal mass that ends iteration

void require_square(const Matrix& s, const char* who) {
    if (s.rows() != s.cols()) throw std::invalid_argument(std::string(who) + ": matrix must be square");
}

/// Fills the flagged columns of u with unit vectors orthogonal to the others.
void complete_orthonormal(Matrix& u, const std::vector<bool>& needs) {
    const Eigen::Index n = u.rows();
    Eigen::Index candidate = 0;
    std::vector<Eigen::Index> ready;
    for (Eigen::Index k = 0; k < u.cols(); ++k)
        if (!needs[static_cast<std::size_t>(k)]) ready.push_back(k);

    for (Eigen::Index k = 0; k < u.cols(); ++k) {
        if (!needs[static_cast<std::size_t>(k)]) continue;
        while (candidate < n) {
            Vector v = Vector::Unit(n, candidate++);
            for (int pass = 0; pass < 2; ++pass)
                for (Eigen::Index j : ready) v -= u.col(j).dot(v) * u.col(j);
            const double nv = v.norm();
            if (nv > 1e-6) {
                u.col(k) = v / nv;
                ready.push_back(k);
                break;
            }
        }
    }
}

}  // namespace

SingularSystem svd(const Matrix& s) {
    require_square(s, "svd");
    const Eigen::Index n = s.cols();
    Matrix a = s;
    Matrix v = Matrix::Identity(n, n);
    const double eps = std::numeric_limits<double>::epsilon();
    const std::size_t cap = 100 * static_cast<std::size_t>(std::max<Eigen::Index>(n, 1) * std::max<Eigen::Index>(n, 1));

    bool converged = n <= 1;
    for (std::size_t sweep = 0; sweep < cap && !converged; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double alpha = a.col(p).squaredNorm();
                const double beta = a.col(q).squaredNorm();
                const Complex gamma = a.col(p).dot(a.col(q));  // a_p^* a_q
                const double g = std::abs(gamma);
                if (g == 0.0 || alpha == 0.0 || beta == 0.0) continue;
                const double rel = g / std::sqrt(alpha * beta);
                off = std::max(off, rel);
                if (rel <= eps) continue;

                // Make gamma real and positive, then apply a real rotation.
                const Complex phase = std::conj(gamma) / g;
                a.col(q) *= phase;
                v.col(q) *= phase;
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = c * t;
                const Vector ap = a.col(p), aq = a.col(q);
                a.col(p) = c * ap - sn * aq;
                a.col(q) = sn * ap + c * aq;
                const Vector vp = v.col(p), vq = v.col(q);
                v.col(p) = c * vp - sn * vq;
                v.col(q) = sn * vp + c * vq;
            }
        }
        converged = off <= kSweepThreshold;
    }
    if (!converged) throw ConvergenceError("svd: Jacobi sweeps did not converge");

    // Singular values from the original operator; sort non-increasing.
    const Matrix tv = s * v;
    std::vector<double> lambda(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) lambda[static_cast<std::size_t>(k)] = tv.col(k).norm();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        return lambda[static_cast<std::size_t>(i)] > lambda[static_cast<std::size_t>(j)];
    });

    SingularSystem sys{Eigen::VectorXd(n), Matrix::Zero(n, n), Matrix(n, n)};
    const double top = n > 0 ? lambda[static_cast<std::size_t>(order[0])] : 0.0;
    const double tiny = static_cast<double>(n) * eps * top;
    std::vector<bool> needs(static_cast<std::size_t>(n), false);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        const double l = lambda[static_cast<std::size_t>(src)];
        sys.values(k) = l;
        sys.input.col(k) = v.col(src);
        if (l > tiny && l > 0.0) {
            sys.output.col(k) = tv.col(src) / l;
        } else {
            needs[static_cast<std::size_t>(k)] = true;
        }
    }
    complete_orthonormal(sys.output, needs);
    return sys;
}

double approximation_number(const Matrix& s, std::size_t k) {
    require_square(s, "approximation_number");
    if (k < 1 || k > static_cast<std::size_t>(s.rows()))
        throw std::invalid_argument("approximation_number: k out of range");
    return svd(s).values(static_cast<Eigen::Index>(k - 1));
}

Matrix best_rank_approximation(const Matrix& s, std::size_t rank) {
    const SingularSystem sys = svd(s);
    Matrix f = Matrix::Zero(s.rows(), s.cols());
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(rank) && k < sys.values.size(); ++k)
        f += sys.values(k) * sys.output.col(k) * sys.input.col(k).adjoint();
    return f;
}

SchattenParams::SchattenParams(double p) : p_(p) {
    if (!(p >= 1.0)) throw std::invalid_argument("Schatten exponent must be >= 1");
}

double schatten_norm(const Eigen::VectorXd& lambda, SchattenParams params) {
    if (lambda.size() == 0) return 0.0;
    if (params.is_infinite()) return lambda.maxCoeff();
    const double top = lambda.maxCoeff();
    if (top == 0.0) return 0.0;
    // Scale by the largest value to keep pow() in range.
    double s = 0.0;
    for (Eigen::Index k = 0; k < lambda.size(); ++k) s += std::pow(lambda(k) / top, params.p());
    return top * std::pow(s, 1.0 / params.p());
}

double schatten_norm(const Matrix& s, SchattenParams params) { return schatten_norm(svd(s).values, params); }

double op_norm(const Matrix& s) {
    if (s.size() == 0) return 0.0;
    return svd(s).values(0);
}

Matrix rank_one(const Vector& f, const Vector& g) { return f * g.adjoint(); }

ApproxIdentityFamily<Matrix> projection_family(const Matrix& basis) {
    const Matrix gram = basis.adjoint() * basis;
    if ((gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() > 1e-9)
        throw std::invalid_argument("projection_family: basis is not orthonormal");
    return {[basis](NetIndex m) {
                const Eigen::Index k = std::min<Eigen::Index>(static_cast<Eigen::Index>(m.value()), basis.cols());
                return Matrix(basis.leftCols(k) * basis.leftCols(k).adjoint());
            },
            1.0};
}

StrongConvergence strong_convergence_check(const ApproxIdentityFamily<Matrix>& family,
                                           const std::vector<Vector>& test_vectors, const Schedule& schedule,
                                           double tol) {
    validate_schedule(schedule);
    StrongConvergence out;
    if (!family.norm_bound) {
        out.precondition_ok = false;
        out.violation = "family declares no uniform operator-norm bound";
        return out;
    }
    for (const NetIndex j : schedule) {
        const Matrix s = family(j);
        const double sn = op_norm(s);
        if (sn > *family.norm_bound + tol) {
            out.precondition_ok = false;
            out.violation = "||S_" + std::to_string(j.value()) + "|| = " + std::to_string(sn) +
                            " exceeds the declared bound";
        }
        double r = 0.0;
        for (const Vector& v : test_vectors)
            r = std::max({r, (s * v - v).norm(), (s.adjoint() * v - v).norm()});
        out.residuals.push_back(r);
    }
    out.verdict = out.precondition_ok && !out.residuals.empty() && out.residuals.back() <= tol;
    return out;
}

double default_rank_threshold(const SingularSystem& sys) {
    return sys.values.size() == 0 ? 0.0 : 1e-10 * sys.values(0);
}

InverseNet<Matrix> right_inverse_net(const Matrix& t, std::optional<double> threshold) {
    require_square(t, "right_inverse_net");
    const SingularSystem sys = svd(t);
    const double thr = threshold.value_or(default_rank_threshold(sys));
    for (Eigen::Index k = 0; k < sys.values.size(); ++k)
        if (!(sys.values(k) > thr))
            throw RankDeficient("right_inverse_net: lambda_" + std::to_string(k + 1) +
                                    " is at or below the rank threshold",
                                static_cast<std::size_t>(k + 1));
    return {[sys](NetIndex m) {
                const Eigen::Index n = sys.values.size();
                const Eigen::Index k = std::min<Eigen::Index>(static_cast<Eigen::Index>(m.value()), n);
                Matrix u = Matrix::Zero(n, n);
                for (Eigen::Index i = 0; i < k; ++i)
                    u += (1.0 / sys.values(i)) * sys.input.col(i) * sys.output.col(i).adjoint();
                return u;
            },
            Side::right};
}

Matrix output_projection(const SingularSystem& sys, std::size_t m) {
    const Eigen::Index k = std::min<Eigen::Index>(static_cast<Eigen::Index>(m), sys.output.cols());
    return sys.output.leftCols(k) * sys.output.leftCols(k).adjoint();
}

RangeKernelReport range_kernel_refuter(const Matrix& t, double threshold) {
    require_square(t, "range_kernel_refuter");
    RangeKernelReport r;
    if (t.size() == 0) return r;
    const auto lam = svd(t).values;
    const auto lam_adj = svd(t.adjoint()).values;
    r.smallest_singular_value = lam(lam.size() - 1);
    r.injective = r.smallest_singular_value > threshold;
    // Ran(T) dense  <=>  ker(T^*) = {0}.
    r.dense_range = lam_adj(lam_adj.size() - 1) > threshold;
    return r;
}

PureStateVector::PureStateVector(Vector a) : a_(std::move(a)) {
    if (std::abs(a_.norm() - 1.0) > 1e-12) throw std::invalid_argument("pure state vector must have unit norm");
}

Complex pure_state_value(const Matrix& t, const PureStateVector& a) {
    return a.vector().dot(t * a.vector());  // <T a, a> = a^* T a
}

bool modular_ideal_membership(const Matrix& t, const PureStateVector& a, double tol) {
    return (t * a.vector()).norm() <= tol;
}

PureStateMinimum pure_state_minimum(const Matrix& t, std::size_t samples, std::uint64_t seed) {
    require_square(t, "pure_state_minimum");
    const Eigen::Index n = t.rows();
    const Matrix tstar = t.adjoint();
    Rng rng(seed);

    PureStateMinimum best{std::numeric_limits<double>::infinity(), Vector()};
    for (std::size_t i = 0; i < std::max<std::size_t>(samples, 1); ++i) {
        Vector a = random_unit_vector(static_cast<std::size_t>(n), rng);
        const double v = (tstar * a).norm();
        if (v < best.value) best = {v, a};
    }

    // Inverse iteration on T T^* (+ small shift) converges to the minimizing direction.
    const Matrix b = t * tstar;
    const double shift = 1e-14 * std::max(1.0, b.cwiseAbs().maxCoeff());
    const Eigen::PartialPivLU<Matrix> lu(b + shift * Matrix::Identity(n, n));
    Vector a = best.argmin;
    for (int it = 0; it < 200; ++it) {
        Vector next = lu.solve(a);
        const double nn = next.norm();
        if (!std::isfinite(nn) || nn == 0.0) break;
        next /= nn;
        const double v = (tstar * next).norm();
        const bool settled = (next - a * (a.dot(next) / std::abs(a.dot(next)))).norm() < 1e-14;
        a = next;
        if (v < best.value) best = {v, a};
        if (settled) break;
    }
    return best;
}

bool adjoint_duality_check(const Matrix& t, double threshold) {
    const RangeKernelReport direct = range_kernel_refuter(t, threshold);
    const RangeKernelReport adjoint = range_kernel_refuter(t.adjoint(), threshold);
    if (direct.dense_range != adjoint.injective) return false;
    if (direct.injective != adjoint.dense_range) return false;
    if (!direct.dense_range) return true;

    // U_m^* is a left net for T^*: U_m^* T^* = (T U_m)^*.
    const auto net = right_inverse_net(t);
    const Eigen::Index n = t.rows();
    Rng rng(0x5eed);
    const Matrix c = random_matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n), rng);
    for (Eigen::Index m = 1; m <= n; ++m) {
        const Matrix u = net(NetIndex(static_cast<std::uint32_t>(m)));
        const Matrix right = t * u;
        const Matrix left = u.adjoint() * t.adjoint();
        if ((left - right.adjoint()).cwiseAbs().maxCoeff() > 1e-9) return false;
        const double r1 = (right * c - c).norm();
        const double r2 = (c.adjoint() * left - c.adjoint()).norm();
        if (std::abs(r1 - r2) > 1e-9) return false;
    }
    return true;
}

Refuter<Matrix> rank_refuter(double threshold) {
    return [threshold](const Matrix& x) -> std::optional<std::string> {
        const auto lam = svd(x).values;
        const double smallest = lam.size() ? lam(lam.size() - 1) : 0.0;
        if (smallest > threshold) return std::nullopt;
        return "smallest singular value " + std::to_string(smallest) + " <= rank threshold (range not dense)";
    };
}

ZeroDivisorModulus<Matrix> exact_zero_divisor_modulus(const Matrix& x) {
    const SingularSystem sys = svd(x);
    const Eigen::Index last = sys.values.size() - 1;
    const Vector e = sys.input.col(last);
    return {sys.values(last), rank_one(e, e), ModulusMethod::exact};
}

double MatrixAlgebra::norm(const Matrix& a) const {
    if (!p_) return op_norm(a);
    if (p_->p() == 2.0) return a.norm();  // Frobenius = Schatten-2
    return schatten_norm(a, *p_);
}

Matrix MatrixAlgebra::random_element(Rng& rng) const { return random_matrix(n_, n_, rng); }

Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = complex_normal(rng, std::sqrt(0.5));
    return m;
}

Matrix random_rank_matrix(std::size_t n, std::size_t r, Rng& rng) {
    if (r == 0) return Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    return random_matrix(n, r, rng) * random_matrix(r, n, rng);
}

Vector random_unit_vector(std::size_t n, Rng& rng) {
    Vector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = complex_normal(rng);
    return v / v.norm();
}

Matrix random_orthonormal_basis(std::size_t n, Rng& rng) {
    const Matrix g = random_matrix(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    return qr.householderQ() * Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

}  // namespace approxinv::ideals
