#pragma once

// Report tables produced by the command-line front end.
//
// A report renders to one of three formats. JSON is canonical (sorted keys)
// and follows
//   { "version", "command", "params": {..., "seed"}, "results": [...],
//     "verdict": "pass" | "fail", "details": {...}, "timing": {...} }
// where everything except "timing" is a pure function of the parameters.
// CSV prints the results table only, under fixed column headers.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cobw/numth.hpp"
#include "cobw/wtheory.hpp"

namespace cobw::report {

inline constexpr const char* kVersion = "0.1.0";

enum class Format { json, csv, md };

struct Report {
    std::string command;
    nlohmann::json params = nlohmann::json::object();
    std::vector<std::string> columns; // fixed CSV/markdown column order
    nlohmann::json results = nlohmann::json::array();
    nlohmann::json details = nlohmann::json::object();
    bool passed = true;
    double duration_ms = 0.0;
};

// Columns: k, m_k, binom_gcd, agree, r_coefficient
Report mktable(unsigned kmax);
// Columns: p, sample, n, degree, passed, asserted, quotient_dim, kernel_dim, witness
Report landweber(const wtheory::LandweberOptions& options);
// Columns: k, m_k, m_k_minus_1, a_k, c, epsilon, case, identity, search_c, search_epsilon
Report fermat(std::uint64_t kmax, std::optional<numth::Integer> search_bound);
// Columns: k, coefficient, exactness
Report nseries(const numth::Integer& n, const numth::Integer& q, unsigned order);

// Everything except timing, as canonical JSON text.
std::string payload(const Report& r);
std::string render(const Report& r, Format format, bool include_timing = true);

} // namespace cobw::report
