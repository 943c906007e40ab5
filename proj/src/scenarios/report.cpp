#include "approxinv/scenarios.hpp"

#include <fmt/format.h>

#include <fstream>

namespace approxinv::cli {

namespace {

// Fields are plain identifiers; quote anything that would break the row.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace

std::string format_row(const ReportRow& row) {
    return fmt::format("{},{},{},{},{:.15e},{:.15e},{},{:.15e}", csv_field(row.scenario), csv_field(row.model),
                       csv_field(row.statement_id), row.net_index, row.residual, row.bound,
                       csv_field(row.verdict), row.elapsed_ms);
}

void write_csv(const std::filesystem::path& path, const std::vector<ReportRow>& rows) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << kCsvHeader << '\n';
    for (const auto& r : rows) out << format_row(r) << '\n';
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace approxinv::cli
