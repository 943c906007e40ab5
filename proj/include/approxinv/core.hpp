#pragma once

// Generic machinery shared by every algebra model: sequential nets, residual
// traces, and the verifiers for approximate identities, approximate
// invertibility, quasi-invertibility and combined nets.
//
// A model is any type satisfying `AlgebraModel`; elements are plain values
// and every verifier is a pure function of its arguments.

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "approxinv/errors.hpp"
#include "approxinv/rng.hpp"

namespace approxinv {

using Complex = std::complex<double>;

/// Tolerance for identities that hold exactly up to rounding.
inline constexpr double kExactTol = 1e-9;
/// Tolerance for asymptotic convergence at default resolutions.
inline constexpr double kAsymptoticTol = 1e-2;

// ---------------------------------------------------------------------------
// Models
// ---------------------------------------------------------------------------

template <class M>
concept AlgebraModel = requires(const M& m, const typename M::element_type& a,
                                const typename M::element_type& b, Complex c) {
    typename M::element_type;
    { m.add(a, b) } -> std::convertible_to<typename M::element_type>;
    { m.scale(c, a) } -> std::convertible_to<typename M::element_type>;
    { m.multiply(a, b) } -> std::convertible_to<typename M::element_type>;
    { m.norm(a) } -> std::convertible_to<double>;
    { m.is_unital() } -> std::convertible_to<bool>;
};

template <class M>
concept InvolutiveModel = AlgebraModel<M> && requires(const M& m, const typename M::element_type& a) {
    { m.involution(a) } -> std::convertible_to<typename M::element_type>;
};

template <class M>
concept SamplingModel = AlgebraModel<M> && requires(const M& m, Rng& rng) {
    { m.random_element(rng) } -> std::convertible_to<typename M::element_type>;
};

template <AlgebraModel M>
using Element = typename M::element_type;

template <AlgebraModel M>
Element<M> subtract(const M& m, const Element<M>& a, const Element<M>& b) {
    return m.add(a, m.scale(Complex(-1.0, 0.0), b));
}

// ---------------------------------------------------------------------------
// Nets
// ---------------------------------------------------------------------------

/// Refinement parameter of a sequential net; strictly positive.
class NetIndex {
public:
    explicit NetIndex(std::uint32_t value) : value_(value) {
        if (value == 0) throw std::invalid_argument("NetIndex must be strictly positive");
    }

    std::uint32_t value() const noexcept { return value_; }
    auto operator<=>(const NetIndex&) const = default;

private:
    std::uint32_t value_;
};

/// Increasing list of net indices at which a net is evaluated.
using Schedule = std::vector<NetIndex>;

/// 1, 2, ..., max_index.
Schedule schedule_up_to(std::uint32_t max_index);
/// first, 2*first, 4*first, ... while <= last.
Schedule doubling_schedule(std::uint32_t first, std::uint32_t last);
/// Throws std::invalid_argument unless non-empty and strictly increasing.
void validate_schedule(const Schedule& schedule);

template <class E>
struct ApproxIdentityFamily {
    std::function<E(NetIndex)> generator;
    std::optional<double> norm_bound;

    E operator()(NetIndex j) const { return generator(j); }
};

enum class Side { left, right };

template <class E>
struct InverseNet {
    std::function<E(NetIndex)> generator;
    Side side = Side::right;

    E operator()(NetIndex j) const { return generator(j); }
};

template <class E>
InverseNet<E> constant_net(E value, Side side) {
    return {[v = std::move(value)](NetIndex) { return v; }, side};
}

template <class E>
ApproxIdentityFamily<E> constant_family(E value, std::optional<double> bound = std::nullopt) {
    return {[v = std::move(value)](NetIndex) { return v; }, bound};
}

// ---------------------------------------------------------------------------
// Traces and verdicts
// ---------------------------------------------------------------------------

struct TraceEntry {
    NetIndex index;
    double residual;        // max(left, right)
    double left_residual;   // norm(e_j x - x)
    double right_residual;  // norm(x e_j - x)
    double member_norm;     // norm(e_j)
};

/// Residuals of one test element along a net, ordered by strictly increasing index.
class ResidualTrace {
public:
    explicit ResidualTrace(double tolerance);

    /// Appends an entry; rejects non-increasing indices and non-finite or negative residuals.
    void push(const TraceEntry& entry);

    const std::vector<TraceEntry>& entries() const noexcept { return entries_; }
    double tolerance() const noexcept { return tolerance_; }
    bool empty() const noexcept { return entries_.empty(); }
    const TraceEntry& back() const { return entries_.back(); }
    double final_residual() const;

private:
    std::vector<TraceEntry> entries_;
    double tolerance_;
};

struct DecayVerdict {
    bool pass = false;
    bool eventually_nonincreasing = false;  // diagnostic only
};

/// Pass iff the final residual is <= tol. Throws on an empty trace.
DecayVerdict residual_decay_verdict(const ResidualTrace& trace, double tol);

struct IdentityCheck {
    std::vector<ResidualTrace> traces;  // one per test element
    bool bound_ok = true;
    double max_member_norm = 0.0;
    bool pass = false;
};

enum class Verdict { certified_right, certified_left, certified_two_sided, refuted, inconclusive };

std::string to_string(Verdict v);

template <class E>
struct ApproxInvCertificate {
    E element;
    std::optional<InverseNet<E>> net;
    std::vector<ResidualTrace> left_traces;   // family l_j x (or r_j x as diagnostic)
    std::vector<ResidualTrace> right_traces;  // family x r_j (or x l_j as diagnostic)
    Verdict verdict = Verdict::inconclusive;
    std::string reason;

    bool certifies_right() const {
        return verdict == Verdict::certified_right || verdict == Verdict::certified_two_sided;
    }
    bool certifies_left() const {
        return verdict == Verdict::certified_left || verdict == Verdict::certified_two_sided;
    }
};

enum class ModulusMethod { exact, sampled };

template <class E>
struct ZeroDivisorModulus {
    double value = 0.0;
    E witness;
    ModulusMethod method = ModulusMethod::sampled;
};

/// Model-specific analytic refuter: returns a reason when x provably is not
/// approximately invertible on the checked side.
template <class E>
using Refuter = std::function<std::optional<std::string>(const E&)>;

// ---------------------------------------------------------------------------
// Verifiers
// ---------------------------------------------------------------------------

namespace detail {

inline double checked_norm(double v, const char* what) {
    if (!std::isfinite(v)) throw NumericOverflow(std::string("non-finite norm in ") + what);
    return v;
}

}  // namespace detail

template <AlgebraModel M>
IdentityCheck check_approximate_identity(const M& model, const ApproxIdentityFamily<Element<M>>& family,
                                         const std::vector<Element<M>>& test_set, double tol,
                                         const Schedule& schedule) {
    if (test_set.empty()) throw std::invalid_argument("check_approximate_identity: empty test set");
    validate_schedule(schedule);

    IdentityCheck out;
    out.traces.assign(test_set.size(), ResidualTrace(tol));
    for (const NetIndex j : schedule) {
        const auto e = family(j);
        const double e_norm = detail::checked_norm(model.norm(e), "family member");
        out.max_member_norm = std::max(out.max_member_norm, e_norm);
        if (family.norm_bound && e_norm > *family.norm_bound + tol) out.bound_ok = false;

        for (std::size_t i = 0; i < test_set.size(); ++i) {
            const auto& x = test_set[i];
            const double left =
                detail::checked_norm(model.norm(subtract(model, model.multiply(e, x), x)), "left residual");
            const double right =
                detail::checked_norm(model.norm(subtract(model, model.multiply(x, e), x)), "right residual");
            out.traces[i].push({j, std::max(left, right), left, right, e_norm});
        }
    }

    out.pass = out.bound_ok;
    for (const auto& t : out.traces) out.pass = out.pass && residual_decay_verdict(t, tol).pass;
    return out;
}

template <AlgebraModel M>
IdentityCheck check_approximate_identity(const M& model, const ApproxIdentityFamily<Element<M>>& family,
                                         const std::vector<Element<M>>& test_set, double tol,
                                         NetIndex max_index) {
    return check_approximate_identity(model, family, test_set, tol, schedule_up_to(max_index.value()));
}

/// Builds x*r_j (right net) or l_j*x (left net) and certifies it as an
/// approximate identity. The opposite product is also traced; when both pass
/// the verdict is two-sided. Only `refuter` can produce `refuted`.
template <AlgebraModel M>
ApproxInvCertificate<Element<M>> check_approx_invertible(const M& model, const Element<M>& x,
                                                         const InverseNet<Element<M>>& net,
                                                         const std::vector<Element<M>>& test_set, double tol,
                                                         const Schedule& schedule,
                                                         const Refuter<Element<M>>& refuter = {}) {
    using E = Element<M>;
    if (!(model.norm(x) > tol))
        throw std::invalid_argument("zero element cannot be approximately invertible");

    ApproxInvCertificate<E> cert{x, net, {}, {}, Verdict::inconclusive, {}};
    if (refuter) {
        if (auto why = refuter(x)) {
            cert.verdict = Verdict::refuted;
            cert.reason = *why;
            return cert;
        }
    }

    ApproxIdentityFamily<E> x_times_net{[model, x, net](NetIndex j) { return model.multiply(x, net(j)); },
                                        std::nullopt};
    ApproxIdentityFamily<E> net_times_x{[model, x, net](NetIndex j) { return model.multiply(net(j), x); },
                                        std::nullopt};
    auto right = check_approximate_identity(model, x_times_net, test_set, tol, schedule);
    auto left = check_approximate_identity(model, net_times_x, test_set, tol, schedule);
    cert.right_traces = std::move(right.traces);
    cert.left_traces = std::move(left.traces);

    const bool primary = net.side == Side::right ? right.pass : left.pass;
    const bool secondary = net.side == Side::right ? left.pass : right.pass;
    if (primary && secondary) {
        cert.verdict = Verdict::certified_two_sided;
    } else if (primary) {
        cert.verdict = net.side == Side::right ? Verdict::certified_right : Verdict::certified_left;
    } else {
        cert.verdict = Verdict::inconclusive;
        cert.reason = "residuals did not fall below tolerance along this net";
    }
    return cert;
}

template <AlgebraModel M>
ApproxInvCertificate<Element<M>> check_approx_invertible(const M& model, const Element<M>& x,
                                                         const InverseNet<Element<M>>& net,
                                                         const std::vector<Element<M>>& test_set, double tol,
                                                         NetIndex max_index,
                                                         const Refuter<Element<M>>& refuter = {}) {
    return check_approx_invertible(model, x, net, test_set, tol, schedule_up_to(max_index.value()), refuter);
}

/// a o b = ab - a - b.
template <AlgebraModel M>
Element<M> circle_op(const M& model, const Element<M>& a, const Element<M>& b) {
    return subtract(model, subtract(model, model.multiply(a, b), a), b);
}

/// Trace of norm(a o b_j). Left/right columns carry the same value.
template <AlgebraModel M>
ResidualTrace quasi_inv_residual(const M& model, const Element<M>& a, const InverseNet<Element<M>>& net,
                                 const Schedule& schedule, double tol = kExactTol) {
    validate_schedule(schedule);
    ResidualTrace trace(tol);
    for (const NetIndex j : schedule) {
        const auto b = net(j);
        const double r = detail::checked_norm(model.norm(circle_op(model, a, b)), "circle residual");
        trace.push({j, r, r, r, model.norm(b)});
    }
    return trace;
}

/// Diagonal net k -> r_k * l_k; x w_k x is then an approximate identity when
/// both sides certify.
template <AlgebraModel M>
InverseNet<Element<M>> combine_nets(const M& model, const InverseNet<Element<M>>& left,
                                    const InverseNet<Element<M>>& right) {
    if (left.side != Side::left || right.side != Side::right)
        throw std::invalid_argument("combine_nets: expected a left net and a right net");
    return {[model, left, right](NetIndex k) { return model.multiply(right(k), left(k)); }, Side::right};
}

/// Family k -> x w_k x.
template <AlgebraModel M>
ApproxIdentityFamily<Element<M>> sandwich_family(const M& model, const Element<M>& x,
                                                 const InverseNet<Element<M>>& w) {
    return {[model, x, w](NetIndex k) { return model.multiply(model.multiply(x, w(k)), x); }, std::nullopt};
}

/// Upper estimate of inf over the unit sphere of norm(x y), by sampling.
template <SamplingModel M>
ZeroDivisorModulus<Element<M>> zero_divisor_modulus(const M& model, const Element<M>& x,
                                                    std::size_t candidate_count, std::uint64_t seed) {
    if (candidate_count == 0) throw std::invalid_argument("zero_divisor_modulus: candidate_count must be > 0");
    if (!(model.norm(x) > 0.0)) throw std::invalid_argument("zero_divisor_modulus: x must be non-zero");

    Rng rng(seed);
    std::optional<ZeroDivisorModulus<Element<M>>> best;
    for (std::size_t i = 0; i < candidate_count; ++i) {
        auto y = model.random_element(rng);
        const double ny = model.norm(y);
        if (!(ny > 0.0)) continue;
        y = model.scale(Complex(1.0 / ny, 0.0), y);
        const double v = detail::checked_norm(model.norm(model.multiply(x, y)), "zero-divisor candidate");
        if (!best || v < best->value) best = ZeroDivisorModulus<Element<M>>{v, y, ModulusMethod::sampled};
    }
    if (!best) throw std::runtime_error("zero_divisor_modulus: every candidate was zero");
    return *best;
}

/// Same residuals for x* with the starred net and starred test set.
template <InvolutiveModel M>
InverseNet<Element<M>> adjoint_net(const M& model, const InverseNet<Element<M>>& net) {
    return {[model, net](NetIndex j) { return model.involution(net(j)); },
            net.side == Side::right ? Side::left : Side::right};
}

}  // namespace approxinv
