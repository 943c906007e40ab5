#include "approxinv/scenarios.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <limits>

#include "approxinv/banach_module.hpp"
#include "approxinv/c0_algebra.hpp"
#include "approxinv/core.hpp"
#include "approxinv/disk_algebra.hpp"
#include "approxinv/operator_ideals.hpp"
#include "approxinv/wiener_algebra.hpp"

namespace approxinv::cli {

namespace {

using Clock = std::chrono::steady_clock;

class Recorder {
public:
    Recorder(std::string scenario, std::string model) : scenario_(std::move(scenario)), model_(std::move(model)) {}

    void add(const std::string& statement, std::uint32_t index, double residual, double bound, bool ok) {
        push(statement, index, residual, bound, ok ? "pass" : "fail");
    }

    void info(const std::string& statement, std::uint32_t index, double residual, double bound) {
        push(statement, index, residual, bound, "info");
    }

    void push(const std::string& statement, std::uint32_t index, double residual, double bound,
              const std::string& verdict) {
        const auto now = Clock::now();
        const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
        last_ = now;
        rows_.push_back({scenario_, model_, statement, index, residual, bound, verdict, ms});
    }

    std::vector<ReportRow> take() { return std::move(rows_); }

private:
    std::string scenario_;
    std::string model_;
    Clock::time_point last_ = Clock::now();
    std::vector<ReportRow> rows_;
};

Schedule to_schedule(const std::vector<std::uint32_t>& v) {
    Schedule s;
    s.reserve(v.size());
    for (auto i : v) s.emplace_back(i);
    return s;
}

std::vector<std::uint32_t> doubling(std::uint32_t first, std::uint32_t last) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = first; v <= last; v *= 2) out.push_back(v);
    if (out.empty()) out.push_back(std::max<std::uint32_t>(1, last));
    return out;
}

std::vector<std::uint32_t> range_to(std::uint32_t last) {
    std::vector<std::uint32_t> out(std::max<std::uint32_t>(last, 1));
    for (std::uint32_t i = 0; i < out.size(); ++i) out[i] = i + 1;
    return out;
}

std::uint32_t circle_cap(const ModelParams& m, std::uint32_t want) {
    const auto top = static_cast<std::uint32_t>(m.circle_samples / 2 - 1);
    return std::min(want, top);
}

// Seed of the k-th independent case of a scenario.
std::uint64_t case_seed(std::uint64_t seed, std::uint64_t k) { return mix64(seed ^ mix64(k)); }

void require_below_nyquist(const ScenarioConfig& c) {
    const auto top = static_cast<std::uint32_t>(c.model.circle_samples / 2 - 1);
    if (c.schedule.back() > top)
        throw ConfigError(fmt::format("scenario '{}': net index {} exceeds M/2 - 1 = {}", c.name, c.schedule.back(), top));
}

// --- scenarios -----------------------------------------------------------------

void run_fejer(const ScenarioConfig& c, Recorder& rec) {
    require_below_nyquist(c);
    const wiener::CircleGrid grid(c.model.circle_samples);
    const wiener::CircleAlgebra model(grid);
    const auto tests = wiener::standard_test_set(grid, c.seed);
    const auto check = check_approximate_identity(model, wiener::fejer_family(grid), tests, c.tolerances.asymptotic,
                                                  to_schedule(c.schedule));
    for (std::size_t i = 0; i < c.schedule.size(); ++i) {
        double worst = 0.0;
        for (const auto& t : check.traces) worst = std::max(worst, t.entries()[i].residual);
        const double norm = check.traces.front().entries()[i].member_norm;
        rec.add("example:convolution_algebra", c.schedule[i], std::abs(norm - 1.0), c.tolerances.exact,
                std::abs(norm - 1.0) <= c.tolerances.exact);
        rec.info("DefinitionAppId", c.schedule[i], worst, c.tolerances.asymptotic);
    }
    double final_worst = 0.0;
    for (const auto& t : check.traces) final_worst = std::max(final_worst, t.final_residual());
    rec.add("DefinitionAppId", c.schedule.back(), final_worst, c.tolerances.asymptotic, check.pass);
}

void run_wiener_division(const ScenarioConfig& c, Recorder& rec) {
    require_below_nyquist(c);
    const wiener::CircleGrid grid(c.model.circle_samples);
    // Poisson coefficients r^|k| are exact, so only a representable floor is needed.
    const double floor = std::numeric_limits<double>::min();
    for (const double r : {0.3, 0.5, 0.7}) {
        const auto f = wiener::poisson_kernel(grid, r);
        for (const auto n : c.schedule) {
            const auto h = wiener::wiener_division(f, n, floor);
            const auto diff = wiener::add(wiener::convolve(f, h), wiener::scale(-1.0, wiener::fejer_kernel(grid, n)));
            const double res = wiener::l1_norm(diff);
            rec.add("thm:Wiener_ainv-Wie-alg", n, res, c.tolerances.exact, res <= c.tolerances.exact);
        }
    }
    // e^{it} has a vanishing zeroth coefficient: division must refuse at k = 0.
    const auto chi = wiener::character(grid, 1);
    bool raised = false;
    try {
        (void)wiener::wiener_division(chi, c.schedule.front());
    } catch (const DivisionFloorError& e) {
        raised = e.frequency() == 0;
    }
    rec.add("thm:Wiener_ainv-Wie-alg", c.schedule.front(), std::abs(chi.coefficient(0)),
            wiener::default_division_floor(chi), raised);
}

void run_um_net(const ScenarioConfig& c, Recorder& rec) {
    using namespace ideals;
    const std::size_t n = c.model.matrix_size;
    std::vector<Matrix> ts, cs;
    for (std::uint64_t k = 0; k < 50; ++k) {
        Rng rng(case_seed(c.seed, k));
        ts.push_back(random_matrix(n, n, rng));
    }
    for (std::uint64_t k = 0; k < 20; ++k) {
        Rng rng(case_seed(c.seed, 1000 + k));
        cs.push_back(random_matrix(n, n, rng));
    }
    std::vector<InverseNet<Matrix>> nets;
    std::vector<SingularSystem> systems;
    for (const auto& t : ts) {
        nets.push_back(right_inverse_net(t));
        systems.push_back(svd(t));
    }
    for (const auto m : c.schedule) {
        double proj = 0.0, sch = 0.0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const Matrix tu = ts[i] * nets[i](NetIndex(m));
            proj = std::max(proj, (tu - output_projection(systems[i], m)).cwiseAbs().maxCoeff());
            // Schatten-2 is the Frobenius norm.
            for (const auto& cm : cs) sch = std::max(sch, (tu * cm - cm).norm());
        }
        rec.add("prop:ApprInvCompact-opi", m, proj, c.tolerances.exact, proj <= c.tolerances.exact);
        if (m >= n)
            rec.add("prop:ApprInvCompact-opi", m, sch, c.tolerances.exact, sch <= c.tolerances.exact);
        else
            rec.info("prop:ApprInvCompact-opi", m, sch, c.tolerances.exact);
    }
    // A rank-deficient operator is a right zero divisor and has no right net.
    Rng rng(case_seed(c.seed, 5000));
    const Matrix sing = random_rank_matrix(n, n > 1 ? n - 1 : 0, rng);
    bool refused = false;
    try {
        (void)right_inverse_net(sing);
    } catch (const RankDeficient&) {
        refused = true;
    }
    const bool refuted = static_cast<bool>(rank_refuter(1e-8 * std::max(1.0, op_norm(sing)))(sing));
    rec.add("prop:right_zero_divisor_is_not_appinvr", 1, exact_zero_divisor_modulus(sing).value, 1e-8,
            refused && refuted);
}

void run_pure_state(const ScenarioConfig& c, Recorder& rec) {
    using namespace ideals;
    const std::size_t n = c.model.matrix_size;
    const double thr = 1e-8;
    std::uint32_t duality_failures = 0;
    for (const auto idx : c.schedule) {
        Rng rng(case_seed(c.seed, idx));
        // Every fourth case is singular (rank n-1 or lower).
        const Matrix t = idx % 4 == 0 ? random_rank_matrix(n, n - std::min<std::size_t>(n, 1 + idx % 3), rng)
                                      : random_matrix(n, n, rng);
        const auto report = range_kernel_refuter(t, thr);
        const auto pmin = pure_state_minimum(t, 64, case_seed(c.seed, 100000 + idx));
        const bool by_sigma = report.smallest_singular_value > thr;
        const bool by_state = pmin.value > thr;
        const bool agree = by_sigma == report.dense_range && by_sigma == by_state;
        rec.add("Appinvl-modi-C*", idx, std::abs(pmin.value - report.smallest_singular_value), thr, agree);
        if (!adjoint_duality_check(t, thr)) ++duality_failures;
    }
    rec.add("AppInvr-AppInvl", c.schedule.back(), duality_failures, 0.0, duality_failures == 0);
}

void run_c0_interior(const ScenarioConfig& c, Recorder& rec) {
    const c0::GridSpace space(c.model.c0_half_width, c.model.c0_points, c.model.c0_tail_tolerance);
    const c0::C0Algebra model(space);
    const std::size_t step = std::max<std::size_t>(1, space.center() / 40);
    const auto family = c0::plateau_family(space, c0::symmetric_growth(space, step), step);
    (void)family.window(NetIndex(c.schedule.back()));  // fail early if the schedule leaves the grid
    const auto tests = c0::gaussian_test_set(space, 4, c.seed);
    const double thr = 1e-6;
    const auto schedule = to_schedule(c.schedule);

    std::vector<c0::C0Element> certified;
    for (std::uint32_t k = 0; k < 50; ++k) {
        Rng rng(case_seed(c.seed, k));
        auto f = model.random_element(rng);
        std::bernoulli_distribution vanish(0.5);
        if (vanish(rng)) {
            std::uniform_int_distribution<std::size_t> near(space.center() - std::min(space.center(), step * 5),
                                                            space.center() + std::min(space.center(), step * 5));
            std::uniform_real_distribution<double> soft(0.2, 2.0);
            f = c0::insert_zero(space, f, near(rng), soft(rng));
        }
        const bool nonvanishing = c0::is_nonvanishing(f, thr).nonvanishing;
        const auto cert = c0::check_c0_invertible(model, f, family, tests, c.tolerances.asymptotic, schedule, thr);
        double res = 0.0;
        for (const auto& t : cert.right_traces) res = std::max(res, t.final_residual());
        rec.add("prop:criterion_ainv_in_csa", k + 1, res, c.tolerances.asymptotic,
                cert.certifies_right() == nonvanishing);
        if (cert.certifies_right()) certified.push_back(f);
    }
    for (const double eps : {1e-1, 1e-2}) {
        double worst = 0.0;
        bool ok = true;
        for (const auto& f : certified) {
            try {
                const auto g = c0::perturb_to_noninvertible(f, eps);
                double d = 0.0;
                for (std::size_t i = 0; i < space.size(); ++i) d = std::max(d, std::abs(g[i] - f[i]));
                worst = std::max(worst, d);
                ok = ok && d <= eps && !c0::is_nonvanishing(g, 0.0).nonvanishing;
            } catch (const CannotPerturb&) {
                ok = false;
            }
        }
        rec.add("app-inv-C0T", static_cast<std::uint32_t>(certified.size()), worst, eps, ok);
    }
}

void run_disk13(const ScenarioConfig& c, Recorder& rec) {
    const disk::CircleSampling sampling(c.model.disk_angles);
    const double bound = 1.0 / 3.0 - 1e-2;
    for (const auto degree : c.schedule) {
        disk::SearchOptions opt;
        opt.starts = c.model.disk_starts;
        opt.degree = degree;
        opt.seed = case_seed(c.seed, degree);
        const auto prod = disk::minimize_product_deviation(sampling, opt);
        rec.add("lem:monomial_can_not_be_approximated", degree, prod.minimum, bound, prod.minimum >= bound);
        const auto ann = disk::minimize_annulus_deviation(sampling, opt);
        rec.add("lem:small_disk_algebra_far_from_unity", degree, ann.minimum, bound, ann.minimum >= bound);
    }
    const disk::SmallDiskAlgebra model(sampling);
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 200; ++k) {
        Rng rng(case_seed(c.seed, 10000 + k));
        const auto r = disk::chi1_isometry_check(model.random_element(rng), sampling);
        worst = std::max(worst, std::abs(r.product_norm - r.norm));
    }
    rec.add("lem:monomial_can_not_be_approximated", 200, worst, 1e-12, worst <= 1e-12);
}

void run_deconv(const ScenarioConfig& c, Recorder& rec) {
    require_below_nyquist(c);
    const wiener::CircleGrid grid(c.model.circle_samples);
    const module::ModuleExponent p(c.model.module_p);
    const bool hilbert = c.model.module_p == 2.0;
    const double floor = std::numeric_limits<double>::min();

    Rng rng(case_seed(c.seed, 0));
    const auto f = wiener::poisson_kernel(grid, 0.5);
    const module::ModuleSignal g(module::smooth_signal(grid, 0.97, 96, rng), p);
    const double gnorm = module::module_norm(g);
    const auto clean = module::blur(f, g, {0.0, 0});
    const auto noisy = module::blur(f, g, {c.noise_sigma, case_seed(c.seed, 1)});

    double prev = std::numeric_limits<double>::infinity();
    for (const auto n : c.schedule) {
        const auto rep = module::deconvolve(f, clean, n, g, floor);
        const double err = *rep.relative_error;
        if (hilbert) {
            // Parseval: ||K_n * g - g||_2^2 = sum_k |K^_n(k) - 1|^2 |g^(k)|^2.
            double tail2 = 0.0;
            for (long k = -grid.max_order(); k <= grid.max_order(); ++k) {
                const double w = std::min(1.0, static_cast<double>(std::abs(k)) / n);
                tail2 += w * w * std::norm(g.signal().coefficient(k));
            }
            const double tail = std::sqrt(tail2) / gnorm;
            rec.add("prop-module-2", n, err, tail, std::abs(err - tail) <= 1e-9 * tail + 1e-300 && err <= prev);
        } else {
            rec.add("prop-module-2", n, err, prev, err <= prev);
        }
        prev = err;
        rec.info("prop-module-2", n, *module::deconvolve(f, noisy, n, g, floor).relative_error, c.noise_sigma);
    }

    const auto fd = wiener::poisson_kernel(grid, 0.9);
    const long nd = std::min<long>(128, grid.max_order());
    for (std::uint32_t k = 0; k < 20; ++k) {
        Rng trng(case_seed(c.seed, 100 + k));
        std::uniform_real_distribution<double> rho(0.3, 0.9);
        const module::ModuleSignal z(module::smooth_signal(grid, rho(trng), grid.max_order(), trng), p);
        const double res = module::density_residual(fd, z, nd);
        rec.add("prop-module-1", k + 1, res, 1e-3, res <= 1e-3);
    }
}

void run_tdz(const ScenarioConfig& c, Recorder& rec) {
    require_below_nyquist(c);
    const wiener::CircleGrid grid(c.model.circle_samples);
    const auto f = wiener::poisson_kernel(grid, 0.5);
    double prev = std::numeric_limits<double>::infinity();
    for (const auto n : c.schedule) {
        const auto w = wiener::tdz_witness(f, n);
        const double expect = std::pow(0.5, n);
        rec.add("AppInvR->TdzL", n, w.value, expect, std::abs(w.value - expect) <= 1e-10 && w.value < prev);
        prev = w.value;
    }
}

void run_schatten(const ScenarioConfig& c, Recorder& rec) {
    using namespace ideals;
    const std::size_t n = c.model.matrix_size;
    for (std::size_t pi = 0; pi < c.model.schatten_p.size(); ++pi) {
        const SchattenParams sp(c.model.schatten_p[pi]);
        double rank_one_err = 0.0, dominance = -std::numeric_limits<double>::infinity();
        for (const auto idx : c.schedule) {
            Rng rng(case_seed(c.seed, idx));
            std::uniform_real_distribution<double> amp(0.5, 2.0);
            const Vector f = amp(rng) * random_unit_vector(n, rng);
            const Vector g = amp(rng) * random_unit_vector(n, rng);
            rank_one_err = std::max(rank_one_err, std::abs(schatten_norm(rank_one(f, g), sp) - f.norm() * g.norm()));
            const Matrix a = random_matrix(n, n, rng);
            dominance = std::max(dominance, op_norm(a) - schatten_norm(a, sp));
        }
        const auto index = static_cast<std::uint32_t>(pi + 1);
        rec.add("OI4", index, rank_one_err, 1e-10, rank_one_err <= 1e-10);
        rec.add("eq:HSch-opi", index, std::max(dominance, 0.0), 1e-9, dominance <= 1e-9);
    }
}

void run_products(const ScenarioConfig& c, Recorder& rec) {
    require_below_nyquist(c);
    const wiener::CircleGrid grid(c.model.circle_samples);
    const wiener::CircleAlgebra model(grid);
    const auto tests = wiener::standard_test_set(grid, c.seed);
    const auto schedule = to_schedule(c.schedule);
    const double tol = c.tolerances.asymptotic;

    const std::vector<wiener::CircleSignal> pool = {
        wiener::poisson_kernel(grid, 0.9), wiener::poisson_kernel(grid, 0.95),
        wiener::translate(wiener::poisson_kernel(grid, 0.92), static_cast<long>(grid.size() / 7)),
        wiener::character(grid, 1), wiener::fejer_kernel(grid, 5)};
    std::vector<bool> single;
    for (const auto& f : pool) single.push_back(wiener::check_wiener_invertible(model, f, tests, tol, schedule).certifies_right());

    std::uint32_t k = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        for (std::size_t j = 0; j < pool.size(); ++j) {
            if (i == j) continue;
            const auto pc = wiener::product_invertibility_check(model, pool[i], pool[j], tests, tol, schedule);
            double res = 0.0;
            for (const auto& t : pc.certificate.right_traces) res = std::max(res, t.final_residual());
            rec.add("prop:bounded_approx_inv_of_product", ++k, res, tol,
                    pc.certificate.certifies_right() == (single[i] && single[j]));
        }
    }
}

struct Entry {
    ScenarioInfo info;
    std::string model;
    void (*run)(const ScenarioConfig&, Recorder&);
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> table = {
        {{"fejer", {"example:convolution_algebra", "DefinitionAppId"}, "Fejer kernels as a bounded approximate identity of L1(T)"},
         "L1(T)", run_fejer},
        {{"wiener-division", {"thm:Wiener_ainv-Wie-alg"}, "exact Wiener division f*h_n = K_n and the division floor"},
         "L1(T)", run_wiener_division},
        {{"um-net", {"prop:ApprInvCompact-opi", "prop:right_zero_divisor_is_not_appinvr"},
          "right inverse net U_m of a full-rank operator; rank-deficient refusal"},
         "B(H)", run_um_net},
        {{"pure-state", {"Appinvl-modi-C*", "AppInvr-AppInvl"},
          "dense range vs smallest singular value vs pure-state minimum; adjoint duality"},
         "B(H)", run_pure_state},
        {{"c0-interior", {"prop:criterion_ainv_in_csa", "app-inv-C0T"},
          "C0 criterion (certified iff nonvanishing) and perturbation to a zero"},
         "C0(R)", run_c0_interior},
        {{"disk13", {"lem:monomial_can_not_be_approximated", "lem:small_disk_algebra_far_from_unity"},
          "randomized search for the 1/3 lower bounds in the small disk algebra"},
         "A0(D)", run_disk13},
        {{"deconv", {"prop-module-1", "prop-module-2"}, "module density and Wiener deconvolution in Lp(T)"},
         "Lp(T)", run_deconv},
        {{"tdz", {"AppInvR->TdzL"}, "divisor-of-zero witnesses for the Poisson kernel"}, "L1(T)", run_tdz},
        {{"schatten", {"OI4", "eq:HSch-opi"}, "rank-one normalization and operator-norm domination in S_p"},
         "S_p", run_schatten},
        {{"products", {"prop:bounded_approx_inv_of_product"}, "product certification against factor certification"},
         "L1(T)", run_products},
    };
    return table;
}

const Entry& find_entry(const std::string& name) {
    for (const auto& e : entries())
        if (e.info.name == name) return e;
    throw ConfigError("unknown scenario '" + name + "'");
}

}  // namespace

const std::vector<ScenarioInfo>& list_scenarios() {
    static const std::vector<ScenarioInfo> infos = [] {
        std::vector<ScenarioInfo> v;
        for (const auto& e : entries()) v.push_back(e.info);
        return v;
    }();
    return infos;
}

bool is_registered(const std::string& name) {
    return std::any_of(entries().begin(), entries().end(), [&](const Entry& e) { return e.info.name == name; });
}

std::vector<std::uint32_t> default_schedule(const std::string& name, const ModelParams& m) {
    if (name == "fejer" || name == "products") return doubling(8, circle_cap(m, 256));
    if (name == "wiener-division") return doubling(8, circle_cap(m, 128));
    if (name == "deconv") return doubling(8, circle_cap(m, 256));
    if (name == "tdz") return range_to(circle_cap(m, 64));
    if (name == "um-net") return range_to(static_cast<std::uint32_t>(m.matrix_size));
    if (name == "pure-state") return range_to(100);
    if (name == "schatten") return range_to(200);
    if (name == "c0-interior") return doubling(1, 32);
    if (name == "disk13") return {static_cast<std::uint32_t>(m.disk_degree)};
    throw ConfigError("unknown scenario '" + name + "'");
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
    config.validate();
    const Entry& entry = find_entry(config.name);
    Recorder rec(config.name, entry.model);
    try {
        entry.run(config, rec);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        std::cerr << config.name << ": " << e.what() << '\n';
        rec.push(entry.info.statement_ids.front(), 0, 0.0, 0.0, "error");
    }
    ScenarioResult out{config.name, rec.take(), true};
    for (const auto& r : out.rows) out.pass = out.pass && (r.verdict == "pass" || r.verdict == "info");
    write_csv(config.out_dir / (config.name + ".csv"), out.rows);
    return out;
}

RunSummary run_all(const RunConfig& config) {
    std::vector<std::string> names = config.scenarios;
    if (names.empty())
        for (const auto& info : list_scenarios()) names.push_back(info.name);

    // Validate everything up front so a config error never leaves partial output.
    std::vector<ScenarioConfig> configs;
    for (const auto& name : names) {
        if (!is_registered(name)) throw ConfigError("unknown scenario '" + name + "'");
        configs.push_back(config.scenario_config(name));
        configs.back().validate();
    }

    std::vector<std::future<ScenarioResult>> jobs;
    for (const auto& c : configs) jobs.push_back(std::async(std::launch::async, run_scenario, c));

    RunSummary summary;
    summary.pass = true;
    for (auto& j : jobs) {
        summary.results.push_back(j.get());
        summary.pass = summary.pass && summary.results.back().pass;
    }

    // Join barrier passed: every scenario file is complete.
    std::filesystem::create_directories(config.out_dir);
    std::ofstream out(config.out_dir / "summary.csv", std::ios::binary | std::ios::trunc);
    out << "scenario,rows,failures,verdict\n";
    for (const auto& r : summary.results) {
        const auto failures = std::count_if(r.rows.begin(), r.rows.end(), [](const ReportRow& row) {
            return row.verdict != "pass" && row.verdict != "info";
        });
        out << fmt::format("{},{},{},{}\n", r.name, r.rows.size(), failures, r.pass ? "pass" : "fail");
    }
    return summary;
}

}  // namespace approxinv::cli
