#include "approxinv/core.hpp"

#include <algorithm>

namespace approxinv {

Schedule schedule_up_to(std::uint32_t max_index) {
    Schedule s;
    s.reserve(max_index);
    for (std::uint32_t j = 1; j <= max_index; ++j) s.emplace_back(j);
    return s;
}

Schedule doubling_schedule(std::uint32_t first, std::uint32_t last) {
    if (first == 0) throw std::invalid_argument("doubling_schedule: first must be positive");
    Schedule s;
    for (std::uint64_t j = first; j <= last; j *= 2) s.emplace_back(static_cast<std::uint32_t>(j));
    return s;
}

void validate_schedule(const Schedule& schedule) {
    if (schedule.empty()) throw std::invalid_argument("empty net schedule");
    for (std::size_t i = 1; i < schedule.size(); ++i)
        if (!(schedule[i - 1] < schedule[i]))
            throw std::invalid_argument("net schedule must be strictly increasing");
}

ResidualTrace::ResidualTrace(double tolerance) : tolerance_(tolerance) {
    if (!(tolerance > 0.0)) throw std::invalid_argument("ResidualTrace: tolerance must be positive");
}

void ResidualTrace::push(const TraceEntry& entry) {
    if (!entries_.empty() && !(entries_.back().index < entry.index))
        throw std::invalid_argument("ResidualTrace: indices must be strictly increasing");
    for (double v : {entry.residual, entry.left_residual, entry.right_residual, entry.member_norm})
        if (!std::isfinite(v) || v < 0.0)
            throw NumericOverflow("ResidualTrace: residuals must be finite and non-negative");
    entries_.push_back(entry);
}

double ResidualTrace::final_residual() const {
    if (entries_.empty()) throw std::invalid_argument("ResidualTrace: empty trace");
    return entries_.back().residual;
}

DecayVerdict residual_decay_verdict(const ResidualTrace& trace, double tol) {
    const auto& e = trace.entries();
    if (e.empty()) throw std::invalid_argument("residual_decay_verdict: empty trace");

    // Longest non-increasing suffix; "eventually" means it covers at least half the trace.
    std::size_t start = e.size() - 1;
    while (start > 0 && e[start - 1].residual >= e[start].residual) --start;
    const std::size_t suffix = e.size() - start;

    return {e.back().residual <= tol, 2 * suffix >= e.size()};
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::certified_right: return "certified-right";
        case Verdict::certified_left: return "certified-left";
        case Verdict::certified_two_sided: return "certified-two-sided";
        case Verdict::refuted: return "refuted";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

}  // namespace approxinv
