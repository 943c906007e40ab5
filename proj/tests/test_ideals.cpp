#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "approxinv/operator_ideals.hpp"
#include "oracles.hpp"

using namespace approxinv;
using namespace approxinv::ideals;

namespace {

Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TEST_CASE("Jacobi SVD against the eigenvalue oracle") {
    Rng rng(123);
    std::uniform_int_distribution<int> dim(1, 32);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = static_cast<std::size_t>(dim(rng));
        const Matrix s = trial % 5 == 0 ? random_rank_matrix(n, n / 2, rng) : random_matrix(n, n, rng);
        const auto sys = svd(s);
        const auto ref = oracle::singular_values_by_eigen(s);
        const double scale = std::max(1.0, sys.values(0));

        // Eigenvalues of S^*S lose half the digits near zero; compare squares.
        for (Eigen::Index k = 0; k < sys.values.size(); ++k) {
            CHECK(sys.values(k) >= 0.0);
            if (k > 0) CHECK(sys.values(k) <= sys.values(k - 1));
            CHECK(std::abs(sys.values(k) * sys.values(k) - ref(k) * ref(k)) <= 1e-10 * scale * scale);
        }
        const Matrix rebuilt = sys.output * sys.values.cast<Complex>().asDiagonal() * sys.input.adjoint();
        CHECK(max_abs(rebuilt - s) <= 1e-10 * scale);
        const auto ni = static_cast<Eigen::Index>(n);
        CHECK(max_abs(sys.output.adjoint() * sys.output - identity(ni)) <= 1e-10);
        CHECK(max_abs(sys.input.adjoint() * sys.input - identity(ni)) <= 1e-10);
    }
}

TEST_CASE("approximation numbers and Eckart-Young") {
    Rng rng(9);
    const Matrix s = random_matrix(8, 8, rng);
    const auto sys = svd(s);
    CHECK_THROWS_AS(approximation_number(s, 0), std::invalid_argument);
    CHECK_THROWS_AS(approximation_number(s, 9), std::invalid_argument);
    for (std::size_t k = 1; k <= 8; ++k) {
        const double a = approximation_number(s, k);
        CHECK(a == doctest::Approx(sys.values(static_cast<Eigen::Index>(k - 1))));
        // The truncated expansion attains a_k ...
        CHECK(op_norm(s - best_rank_approximation(s, k - 1)) == doctest::Approx(a).epsilon(1e-10));
        // ... and no random matrix of rank k-1 does better.
        for (int t = 0; t < 20; ++t) {
            const Matrix b = k == 1 ? Matrix::Zero(8, 8) : random_rank_matrix(8, k - 1, rng);
            CHECK(op_norm(s - b) >= a - 1e-12);
        }
    }
}

TEST_CASE("Schatten norms") {
    CHECK_THROWS_AS(SchattenParams(0.5), std::invalid_argument);
    Rng rng(21);
    const std::vector<SchattenParams> ps = {SchattenParams(1.0), SchattenParams(1.5), SchattenParams(2.0),
                                            SchattenParams(3.0), SchattenParams::infinity()};
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix a = random_matrix(6, 6, rng);
        double prev = std::numeric_limits<double>::infinity();
        for (const auto& p : ps) {
            const double v = schatten_norm(a, p);
            CHECK(v <= prev * (1.0 + 1e-12));  // non-increasing in p
            CHECK(op_norm(a) <= v + 1e-9);
            prev = v;
        }
        CHECK(schatten_norm(a, SchattenParams(2.0)) == doctest::Approx(a.norm()).epsilon(1e-12));
        CHECK(schatten_norm(a, SchattenParams::infinity()) == doctest::Approx(op_norm(a)));

        const Vector f = random_unit_vector(6, rng) * 1.7;
        const Vector g = random_unit_vector(6, rng) * 0.4;
        for (const auto& p : ps) CHECK(std::abs(schatten_norm(rank_one(f, g), p) - f.norm() * g.norm()) <= 1e-10);
    }
}

TEST_CASE("right inverse net of a full-rank operator") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix t = random_matrix(16, 16, rng);
        const auto sys = svd(t);
        const auto net = right_inverse_net(t);
        CHECK(net.side == Side::right);
        for (std::uint32_t m = 1; m <= 16; ++m)
            CHECK(max_abs(t * net(NetIndex(m)) - output_projection(sys, m)) <= 1e-9);
        CHECK(max_abs(t * net(NetIndex(16)) - identity(16)) <= 1e-9);
        // Past the dimension the net is constant.
        CHECK(max_abs(net(NetIndex(40)) - net(NetIndex(16))) == 0.0);
    }

    const Matrix sing = random_rank_matrix(6, 4, rng);
    try {
        (void)right_inverse_net(sing);
        FAIL("expected rank deficiency");
    } catch (const RankDeficient& e) {
        CHECK(e.k() == 5);
    }
    CHECK(rank_refuter(1e-8)(sing).has_value());
    CHECK_FALSE(rank_refuter(1e-8)(random_matrix(6, 6, rng)).has_value());
}

TEST_CASE("property: right zero divisors are refuted") {
    const auto model = MatrixAlgebra::operator_norm(5);
    Rng rng(44);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix x = random_rank_matrix(5, 3, rng);
        const auto mod = exact_zero_divisor_modulus(x);
        CHECK(mod.value <= 1e-12);
        CHECK(mod.method == ModulusMethod::exact);
        CHECK(op_norm(mod.witness) == doctest::Approx(1.0));
        CHECK(op_norm(x * mod.witness) <= 1e-12);
        const auto c = check_approx_invertible(model, x, constant_net(Matrix(Matrix::Zero(5, 5)), Side::right),
                                               {model.random_element(rng)}, 1e-9, NetIndex(2), rank_refuter(1e-8));
        CHECK(c.verdict == Verdict::refuted);
    }
}

TEST_CASE("range, kernel and pure states") {
    Rng rng(77);
    const double thr = 1e-8;
    for (int trial = 0; trial < 30; ++trial) {
        const bool singular = trial % 3 == 0;
        const Matrix t = singular ? random_rank_matrix(8, 6, rng) : random_matrix(8, 8, rng);
        const auto rk = range_kernel_refuter(t, thr);
        CHECK(rk.dense_range == !singular);
        CHECK(rk.injective == !singular);

        const auto pm = pure_state_minimum(t, 32, 1000 + trial);
        CHECK(std::abs(pm.argmin.norm() - 1.0) < 1e-12);
        CHECK(std::abs(pm.value - rk.smallest_singular_value) <= 1e-8);
        // Brute-force sampling can only find larger values.
        double brute = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 2000; ++i) brute = std::min(brute, (t.adjoint() * random_unit_vector(8, rng)).norm());
        CHECK(pm.value <= brute + 1e-12);
        CHECK((pm.value > thr) == rk.dense_range);
        CHECK(adjoint_duality_check(t, thr));
    }

    CHECK_THROWS_AS(PureStateVector(Vector::Ones(3)), std::invalid_argument);
    const Matrix t = random_matrix(4, 4, rng);
    const PureStateVector a(random_unit_vector(4, rng));
    CHECK(std::abs(pure_state_value(t, a) - a.vector().dot(t * a.vector())) < 1e-15);
}

TEST_CASE("property: T in the left kernel of a pure state factors through I - P_a") {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix t = random_rank_matrix(6, 5, rng);
        const auto sys = svd(t);
        const PureStateVector a(sys.input.col(5));
        CHECK(modular_ideal_membership(t, a, 1e-10));
        const Matrix p = rank_one(a.vector(), a.vector());
        CHECK(max_abs(t - t * (identity(6) - p)) <= 1e-10);
        CHECK_FALSE(modular_ideal_membership(random_matrix(6, 6, rng), a));
    }
}

TEST_CASE("property: strong convergence matches approximate identity for compacts") {
    const auto model = MatrixAlgebra::operator_norm(6);
    Rng rng(12);
    const auto sched = schedule_up_to(6);
    std::vector<Vector> vectors;
    std::vector<Matrix> compacts;
    for (int i = 0; i < 5; ++i) {
        vectors.push_back(random_unit_vector(6, rng));
        compacts.push_back(random_matrix(6, 6, rng));
    }
    for (int f = 0; f < 10; ++f) {
        const Matrix basis = random_orthonormal_basis(6, rng);
        ApproxIdentityFamily<Matrix> family = projection_family(basis);
        if (f % 2 == 1) {
            // Stops one vector short of the whole space.
            family = {[basis](NetIndex m) {
                          const Eigen::Index k = std::min<Eigen::Index>(m.value(), 5);
                          return Matrix(basis.leftCols(k) * basis.leftCols(k).adjoint());
                      },
                      1.0};
        }
        const auto strong = strong_convergence_check(family, vectors, sched, 1e-9);
        const auto aid = check_approximate_identity(model, family, compacts, 1e-9, sched);
        CHECK(strong.precondition_ok);
        CHECK(strong.verdict == aid.pass);
        CHECK(strong.verdict == (f % 2 == 0));
    }

    const Matrix basis = random_orthonormal_basis(6, rng);
    const auto fam = projection_family(basis);
    const ApproxIdentityFamily<Matrix> unbounded{fam.generator, std::nullopt};
    CHECK_FALSE(strong_convergence_check(unbounded, vectors, sched, 1e-9).precondition_ok);
    const ApproxIdentityFamily<Matrix> loud{[fam](NetIndex m) { return Matrix(2.0 * fam(m)); }, 1.0};
    CHECK_FALSE(strong_convergence_check(loud, vectors, sched, 1e-9).precondition_ok);
    CHECK_THROWS_AS(projection_family(Matrix::Ones(3, 3)), std::invalid_argument);
}

TEST_CASE("property: matrix algebras are submultiplicative") {
    Rng rng(101);
    const auto op = MatrixAlgebra::operator_norm(5);
    const auto s1 = MatrixAlgebra::schatten(5, SchattenParams(1.0));
    const auto s2 = MatrixAlgebra::schatten(5, SchattenParams(2.0));
    CHECK(op.is_unital());
    CHECK_FALSE(s1.is_unital());
    for (int i = 0; i < 200; ++i) {
        const Matrix a = op.random_element(rng);
        const Matrix b = op.random_element(rng);
        for (const auto* m : {&op, &s1, &s2}) {
            CHECK(m->norm(a * b) <= m->norm(a) * m->norm(b) * (1.0 + 1e-12));
            CHECK(m->norm(a.adjoint()) == doctest::Approx(m->norm(a)).epsilon(1e-12));
        }
    }
}

TEST_CASE("property: starred matrix data gives identical residuals") {
    const auto model = MatrixAlgebra::schatten(8, SchattenParams(2.0));
    Rng rng(55);
    const Matrix x = model.random_element(rng);
    std::vector<Matrix> tests, starred;
    for (int i = 0; i < 4; ++i) {
        tests.push_back(model.random_element(rng));
        starred.push_back(tests.back().adjoint());
    }
    const auto net = right_inverse_net(x);
    const auto sched = schedule_up_to(8);
    const auto c = check_approx_invertible(model, x, net, tests, 1e-9, sched);
    const auto cs = check_approx_invertible(model, Matrix(x.adjoint()), adjoint_net(model, net), starred, 1e-9, sched);
    CHECK(cs.verdict == Verdict::certified_two_sided);
    for (std::size_t i = 0; i < tests.size(); ++i)
        for (std::size_t j = 0; j < sched.size(); ++j)
            CHECK(std::abs(c.right_traces[i].entries()[j].residual - cs.left_traces[i].entries()[j].residual) <
                  1e-12);
}

TEST_CASE("random helpers") {
    Rng rng(6);
    const Matrix q = random_orthonormal_basis(7, rng);
    CHECK(max_abs(q.adjoint() * q - identity(7)) < 1e-12);
    const auto sys = svd(random_rank_matrix(7, 3, rng));
    CHECK(sys.values(2) > 1e-3);
    CHECK(sys.values(3) < 1e-12);
    CHECK(std::abs(random_unit_vector(9, rng).norm() - 1.0) < 1e-14);
}
