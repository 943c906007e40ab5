// Acceptance run: one PASS/FAIL line per criterion. Usage: acceptance <path-to-approxinv_cli>

#include <Eigen/SVD>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include "approxinv/banach_module.hpp"
#include "approxinv/c0_algebra.hpp"
#include "approxinv/disk_algebra.hpp"
#include "approxinv/operator_ideals.hpp"
#include "approxinv/wiener_algebra.hpp"
#include "oracles.hpp"

using namespace approxinv;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::string sci(double v) {
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << v;
    return s.str();
}

std::vector<Complex> diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    std::vector<Complex> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

Outcome fejer_identity() {
    Outcome o;
    const wiener::CircleGrid grid(4096);
    double mass = 0.0, coeff = 0.0;
    for (const long n : {1L, 2L, 3L, 4L, 5L, 7L, 8L, 15L, 16L, 31L, 64L, 100L, 127L, 128L, 200L, 255L, 256L}) {
        const auto k = wiener::fejer_kernel(grid, n);
        const auto s = k.samples();
        mass = std::max(mass, std::abs(oracle::quadrature_l1(s) - 1.0));
        for (long j = -(n + 2); j <= n + 2; ++j) {
            const double want = std::max(0.0, 1.0 - static_cast<double>(std::abs(j)) / static_cast<double>(n));
            coeff = std::max(coeff, std::abs(oracle::direct_coefficient(s, j) - want));
        }
    }
    o.require(mass <= 1e-9, "||K_n||_1 off by " + sci(mass));
    o.require(coeff <= 1e-10, "coefficients off by " + sci(coeff));

    const wiener::CircleAlgebra model(grid);
    const auto tests = wiener::standard_test_set(grid, 1);
    const auto r = check_approximate_identity(model, wiener::fejer_family(grid), tests, 1e-2, doubling_schedule(8, 128));
    o.require(r.pass, "approximate identity check failed at n = 128");
    // Independent O(M^2) convolution of the first test element.
    const auto k128 = wiener::fejer_kernel(grid, 128).samples();
    const auto y = tests.front().samples();
    const double direct = oracle::quadrature_l1(diff(oracle::direct_convolution(k128, y), y));
    o.require(direct <= 1e-2, "direct residual " + sci(direct));
    o.detail = o.pass ? "mass err " + sci(mass) + ", coeff err " + sci(coeff) + ", direct residual " + sci(direct)
                      : o.detail;
    return o;
}

Outcome wiener_division() {
    Outcome o;
    const wiener::CircleGrid grid(4096);
    double worst = 0.0;
    for (const double r : {0.3, 0.5, 0.7}) {
        const auto f = wiener::poisson_kernel(grid, r);
        for (long n = 1; n <= 128; ++n) {
            const auto h = wiener::wiener_division(f, n, std::numeric_limits<double>::min());
            const auto d = diff(wiener::convolve(f, h).samples(), wiener::fejer_kernel(grid, n).samples());
            worst = std::max(worst, oracle::quadrature_l1(d));
        }
    }
    o.require(worst <= 1e-9, "||f*h_n - K_n||_1 = " + sci(worst));
    bool raised = false;
    try {
        (void)wiener::wiener_division(wiener::character(grid, 1), 4);
    } catch (const DivisionFloorError& e) {
        raised = e.frequency() == 0;
    }
    o.require(raised, "no division-floor error at k = 0 for e^{it}");
    if (o.pass) o.detail = "max residual " + sci(worst) + ", floor error raised";
    return o;
}

Outcome um_net() {
    using namespace ideals;
    Outcome o;
    Rng rng(316);
    std::vector<Matrix> cs;
    for (int i = 0; i < 20; ++i) cs.push_back(random_matrix(16, 16, rng));
    double proj = 0.0, sch = 0.0;
    const SchattenParams two(2.0);
    for (int i = 0; i < 50; ++i) {
        const Matrix t = random_matrix(16, 16, rng);
        const auto sys = svd(t);
        const auto net = right_inverse_net(t);
        for (std::uint32_t m = 1; m <= 16; ++m)
            proj = std::max(proj, (t * net(NetIndex(m)) - output_projection(sys, m)).cwiseAbs().maxCoeff());
        const Matrix tu = t * net(NetIndex(16));
        for (const auto& c : cs) sch = std::max(sch, schatten_norm(Matrix(tu * c - c), two));
    }
    o.require(proj <= 1e-9, "T U_m - P_m = " + sci(proj));
    o.require(sch <= 1e-9, "Schatten-2 residual " + sci(sch));

    const auto model = MatrixAlgebra::operator_norm(16);
    const Matrix sing = random_rank_matrix(16, 15, rng);
    const auto cert = check_approx_invertible(model, sing, constant_net(Matrix(Matrix::Zero(16, 16)), Side::right),
                                              {cs.front()}, 1e-9, NetIndex(16), rank_refuter(1e-8));
    o.require(cert.verdict == Verdict::refuted, "rank-deficient T was not refuted");
    if (o.pass) o.detail = "projection err " + sci(proj) + ", Schatten-2 err " + sci(sch) + ", singular T refuted";
    return o;
}

Outcome pure_state() {
    using namespace ideals;
    Outcome o;
    const double thr = 1e-8;
    int disagreements = 0, singular = 0;
    for (int i = 0; i < 100; ++i) {
        Rng rng(4000 + i);
        const bool make_singular = i % 4 == 0;
        const Matrix t = make_singular ? random_rank_matrix(16, 15 - i % 3, rng) : random_matrix(16, 16, rng);
        singular += make_singular;
        const Eigen::JacobiSVD<Matrix> ref(t);
        const bool by_sigma = ref.singularValues()(15) > thr;
        const bool dense = range_kernel_refuter(t, thr).dense_range;
        const bool by_state = pure_state_minimum(t, 64, 9000 + i).value > thr;
        if (by_sigma != dense || by_sigma != by_state || by_sigma == make_singular) ++disagreements;
    }
    o.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
    o.detail = std::to_string(disagreements) + " disagreements over 100 matrices (" + std::to_string(singular) +
               " singular)";
    return o;
}

Outcome schatten() {
    using namespace ideals;
    Outcome o;
    double rank_one_err = 0.0, dominance = -1.0;
    for (const double p : {1.0, 1.5, 2.0, std::numeric_limits<double>::infinity()}) {
        const SchattenParams sp(p);
        Rng rng(500);
        std::uniform_real_distribution<double> amp(0.5, 2.0);
        for (int i = 0; i < 200; ++i) {
            const Vector f = amp(rng) * random_unit_vector(12, rng);
            const Vector g = amp(rng) * random_unit_vector(12, rng);
            rank_one_err = std::max(rank_one_err, std::abs(schatten_norm(rank_one(f, g), sp) - f.norm() * g.norm()));
            const Matrix a = random_matrix(12, 12, rng);
            dominance = std::max(dominance, Eigen::JacobiSVD<Matrix>(a).singularValues()(0) - schatten_norm(a, sp));
        }
    }
    o.require(rank_one_err <= 1e-10, "rank-one err " + sci(rank_one_err));
    o.require(dominance <= 1e-9, "||A|| exceeds ||A||_p by " + sci(dominance));
    if (o.pass) o.detail = "rank-one err " + sci(rank_one_err) + ", max(||A|| - ||A||_p) " + sci(dominance);
    return o;
}

Outcome disk_bounds() {
    Outcome o;
    const disk::CircleSampling sampling(1024);
    disk::SearchOptions opt;
    opt.starts = 10000;
    opt.degree = 8;
    opt.seed = 13;
    const double bound = 1.0 / 3.0 - 1e-2;
    const auto prod = disk::minimize_product_deviation(sampling, opt);
    const auto ann = disk::minimize_annulus_deviation(sampling, opt);
    o.require(prod.minimum >= bound, "product minimum " + sci(prod.minimum));
    o.require(ann.minimum >= bound, "annulus minimum " + sci(ann.minimum));
    const disk::SmallDiskAlgebra model(sampling);
    Rng rng(200);
    double iso = 0.0;
    for (int i = 0; i < 200; ++i) {
        const auto p = model.random_element(rng);
        // z p has the same sup on the unit circle; compare the sampled maxima directly.
        const auto zp = disk::multiply(disk::PolyA0::monomial(1), p);
        double a = 0.0, b = 0.0;
        for (std::size_t m = 0; m < 1024; ++m) {
            const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / 1024.0);
            a = std::max(a, std::abs(p(z)));
            b = std::max(b, std::abs(zp(z)));
        }
        iso = std::max(iso, std::abs(a - b));
    }
    o.require(iso <= 1e-12, "isometry err " + sci(iso));
    if (o.pass)
        o.detail = "product min " + sci(prod.minimum) + ", annulus min " + sci(ann.minimum) + ", isometry err " +
                   sci(iso);
    return o;
}

Outcome c0_criterion() {
    Outcome o;
    const c0::GridSpace space(40.0, 2001, 1e-3);
    const c0::C0Algebra model(space);
    const std::size_t step = space.center() / 40;
    const auto family = c0::plateau_family(space, c0::symmetric_growth(space, step), step);
    const auto tests = c0::gaussian_test_set(space, 4, 7);
    const auto sched = doubling_schedule(1, 32);
    int disagreements = 0, certified = 0;
    double worst = 0.0;
    bool perturb_ok = true;
    Rng rng(707);
    for (int k = 0; k < 50; ++k) {
        auto f = model.random_element(rng);
        if (k % 2 == 1) f = c0::insert_zero(space, f, space.center() - 40 + static_cast<std::size_t>(3 * k), 0.5);
        // Oracle: scan the samples directly.
        double minabs = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < space.size(); ++i) minabs = std::min(minabs, std::abs(f[i]));
        const bool nonvanishing = minabs > 1e-6;
        const auto c = c0::check_c0_invertible(model, f, family, tests, 1e-2, sched, 1e-6);
        if (c.certifies_right() != nonvanishing) ++disagreements;
        if (!c.certifies_right()) continue;
        ++certified;
        for (const double eps : {1e-1, 1e-2}) {
            const auto g = c0::perturb_to_noninvertible(f, eps);
            double d = 0.0;
            bool zero = false;
            for (std::size_t i = 0; i < space.size(); ++i) {
                d = std::max(d, std::abs(g[i] - f[i]));
                zero = zero || g[i] == Complex(0.0);
            }
            worst = std::max(worst, d / eps);
            perturb_ok = perturb_ok && d <= eps && zero;
        }
    }
    o.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
    o.require(perturb_ok, "perturbation contract violated");
    if (o.pass)
        o.detail = "0 disagreements over 50 elements (" + std::to_string(certified) +
                   " certified), max distance/eps " + sci(worst);
    return o;
}

Outcome module_deconvolution() {
    Outcome o;
    const wiener::CircleGrid grid(4096);
    const long degree = 96;
    Rng rng(88);
    const auto f = wiener::poisson_kernel(grid, 0.5);
    const module::ModuleSignal g(module::smooth_signal(grid, 0.97, degree, rng), module::ModuleExponent(2.0));
    const auto gs = g.signal().samples();
    std::vector<double> power;
    double total = 0.0;
    for (long k = -degree; k <= degree; ++k) {
        power.push_back(std::norm(oracle::direct_coefficient(gs, k)));
        total += power.back();
    }
    const auto b = module::blur(f, g, {});
    double worst_rel = 0.0;
    for (long n = 8; n <= 256; n *= 2) {
        const auto rep = module::deconvolve(f, b, n, g, std::numeric_limits<double>::min());
        double tail = 0.0;
        for (long k = -degree; k <= degree; ++k) {
            const double w = std::min(1.0, static_cast<double>(std::abs(k)) / static_cast<double>(n));
            tail += w * w * power[static_cast<std::size_t>(k + degree)];
        }
        const double expect = std::sqrt(tail / total);
        worst_rel = std::max(worst_rel, std::abs(*rep.relative_error - expect) / expect);
    }
    o.require(worst_rel <= 1e-9, "deconvolution vs Parseval tail rel err " + sci(worst_rel));

    const auto fd = wiener::poisson_kernel(grid, 0.9);
    double density = 0.0;
    for (int k = 0; k < 20; ++k) {
        Rng trng(900 + k);
        std::uniform_real_distribution<double> rho(0.3, 0.9);
        const double r = rho(trng);
        const module::ModuleSignal z(module::smooth_signal(grid, r, grid.max_order(), trng),
                                     module::ModuleExponent(2.0));
        density = std::max(density, module::density_residual(fd, z, 128));
    }
    o.require(density <= 1e-3, "density residual " + sci(density));
    if (o.pass) o.detail = "Parseval rel err " + sci(worst_rel) + ", max density residual " + sci(density);
    return o;
}

Outcome duality_products() {
    Outcome o;
    int duality_failures = 0;
    for (int i = 0; i < 100; ++i) {
        Rng rng(6000 + i);
        const ideals::Matrix t =
            i % 5 == 0 ? ideals::random_rank_matrix(10, 7, rng) : ideals::random_matrix(10, 10, rng);
        if (!ideals::adjoint_duality_check(t, 1e-8)) ++duality_failures;
    }
    o.require(duality_failures == 0, std::to_string(duality_failures) + " duality failures");

    const wiener::CircleGrid grid(4096);
    const wiener::CircleAlgebra model(grid);
    const auto tests = wiener::standard_test_set(grid, 3);
    const auto sched = doubling_schedule(8, 256);
    const std::vector<wiener::CircleSignal> pool = {
        wiener::poisson_kernel(grid, 0.9), wiener::poisson_kernel(grid, 0.95),
        wiener::translate(wiener::poisson_kernel(grid, 0.92), 585), wiener::character(grid, 1),
        wiener::fejer_kernel(grid, 5)};
    std::vector<bool> single;
    for (const auto& f : pool) single.push_back(wiener::check_wiener_invertible(model, f, tests, 1e-2, sched).certifies_right());
    int mismatches = 0, cases = 0;
    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = 0; j < pool.size(); ++j) {
            if (i == j) continue;
            ++cases;
            const auto pc = wiener::product_invertibility_check(model, pool[i], pool[j], tests, 1e-2, sched);
            if (pc.certificate.certifies_right() != (single[i] && single[j])) ++mismatches;
        }
    o.require(cases == 20 && mismatches == 0, std::to_string(mismatches) + " product mismatches");
    o.require(single[0] && !single[3], "factor pool lacks passing or failing members");
    if (o.pass) o.detail = "duality on 100 matrices, 20 product cases agree";
    return o;
}

Outcome tdz_decay() {
    Outcome o;
    const wiener::CircleGrid grid(4096);
    const auto f = wiener::poisson_kernel(grid, 0.5);
    const double v20 = wiener::tdz_witness(f, 20).value;
    o.require(std::abs(v20 - std::pow(0.5, 20)) <= 1e-10, "value at 20 is " + sci(v20));
    double prev = std::numeric_limits<double>::infinity();
    for (long n = 1; n <= 64; ++n) {
        const double v = wiener::tdz_witness(f, n).value;
        o.require(v < prev, "not decreasing at N = " + std::to_string(n));
        prev = v;
    }
    if (o.pass) o.detail = "value at 20 = " + sci(v20) + ", strictly decreasing on [1, 64]";
    return o;
}

int run_cli(const std::string& cli, const std::string& args) {
    const int status = std::system(("\"" + cli + "\" " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string csv_without_elapsed(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::string line, out;
    while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
    return out;
}

Outcome cli_determinism(const std::string& cli) {
    Outcome o;
    const fs::path root = fs::temp_directory_path() / "approxinv_acceptance";
    fs::remove_all(root);
    fs::create_directories(root);
    const std::string common = "--scenario fejer --scenario tdz --scenario pure-state --scenario wiener-division --seed 99";
    const int a = run_cli(cli, common + " --out \"" + (root / "a").string() + "\"");
    const int b = run_cli(cli, common + " --out \"" + (root / "b").string() + "\"");
    o.require(a == 0 && b == 0, "exit codes " + std::to_string(a) + ", " + std::to_string(b));
    for (const char* name : {"fejer.csv", "tdz.csv", "pure-state.csv", "wiener-division.csv"}) {
        const auto x = csv_without_elapsed(root / "a" / name);
        o.require(!x.empty() && x == csv_without_elapsed(root / "b" / name), std::string(name) + " differs");
    }

    std::ofstream(root / "empty.ini") << "[nets]\ntdz =\n";
    const int c = run_cli(cli, "--config \"" + (root / "empty.ini").string() + "\" --out \"" + (root / "c").string() + "\"");
    o.require(c == 2, "empty schedule exit code " + std::to_string(c));

    std::ofstream(root / "strict.ini") << "[tolerances]\nexact = 1e-300\n";
    const int d = run_cli(cli, "--config \"" + (root / "strict.ini").string() +
                                   "\" --scenario wiener-division --out \"" + (root / "d").string() + "\"");
    o.require(d == 1, "failing property exit code " + std::to_string(d));
    fs::remove_all(root);
    if (o.pass) o.detail = "identical CSVs, exit codes 0 / 1 / 2";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: acceptance <path-to-approxinv_cli>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"Fejer approximate identity", fejer_identity},
        {"Wiener division exactness", wiener_division},
        {"U_m net", um_net},
        {"three-way range criterion", pure_state},
        {"Schatten contracts", schatten},
        {"disk algebra 1/3 bounds", disk_bounds},
        {"C0 criterion and interior emptiness", c0_criterion},
        {"module density and deconvolution", module_deconvolution},
        {"duality and products", duality_products},
        {"divisor-of-zero decay", tdz_decay},
        {"CLI determinism and exit codes", [&] { return cli_determinism(cli); }},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.pass;
        std::cout << "criterion " << (i + 1) << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first
                  << ": " << o.detail << std::endl;
    }
    return all ? 0 : 1;
}
