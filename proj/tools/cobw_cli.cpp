// cobw: verification suites for the c1-spherical bordism ring.
//
// Exit codes: 0 all checks pass, 1 a mathematical check failed,
// 2 usage or configuration error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "cobw/cobw.h"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct ReportDeleter {
    void operator()(cobw_report* r) const { cobw_report_free(r); }
};
using ReportPtr = std::unique_ptr<cobw_report, ReportDeleter>;

struct Common {
    std::string format = "json";
    std::string out;
    bool no_timing = false;
};

void add_common(CLI::App* cmd, Common& c)
{
    cmd->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "md"}))
        ->capture_default_str();
    cmd->add_option("--out", c.out, "Write the report to this file instead of stdout");
    cmd->add_flag("--no-timing", c.no_timing, "Omit the timing block from JSON output");
}

// Runs one report builder and emits it; returns the process exit code.
template <typename Build>
int run(const Common& c, Build&& build)
{
    cobw_report* raw = nullptr;
    const cobw_status st = build(&raw);
    ReportPtr report(raw);
    if (st == COBW_ERR_INVALID_ARGUMENT || st == COBW_ERR_OUT_OF_RANGE) {
        std::cerr << "cobw: " << cobw_last_error() << "\n";
        return kUsage;
    }
    if (st != COBW_OK) {
        std::cerr << "cobw: " << cobw_status_message(st) << ": " << cobw_last_error() << "\n";
        return kFail;
    }

    static const std::map<std::string, cobw_format> formats{
        {"json", COBW_FORMAT_JSON}, {"csv", COBW_FORMAT_CSV}, {"md", COBW_FORMAT_MD}};
    char* text = nullptr;
    if (cobw_report_render(report.get(), formats.at(c.format), c.no_timing ? 0 : 1, &text) != COBW_OK) {
        std::cerr << "cobw: " << cobw_last_error() << "\n";
        return kFail;
    }
    std::string body(text);
    cobw_string_free(text);

    if (c.out.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(c.out, std::ios::binary);
        if (!f) {
            std::cerr << "cobw: cannot write " << c.out << "\n";
            return kUsage;
        }
        f << body;
    }
    const bool passed = cobw_report_passed(report.get()) != 0;
    if (!passed)
        std::cerr << "cobw: " << "check failed; see report\n";
    return passed ? kPass : kFail;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Verification suites for the c1-spherical bordism ring and its formal group law"};
    app.set_version_flag("--version", std::string(cobw_version()));
    app.require_subcommand(1);

    // mktable
    Common mk_common;
    unsigned kmax_table = 16;
    auto* mk = app.add_subcommand("mktable", "Table of m_k, the binomial-gcd cross-check and r_k");
    mk->add_option("--kmax", kmax_table, "Largest k")->check(CLI::Range(1u, 1000000u))->capture_default_str();
    add_common(mk, mk_common);

    // landweber
    Common lw_common;
    cobw_landweber_params lw;
    cobw_landweber_params_default(&lw);
    long long q = lw.q;
    bool fault = false;
    auto* land = app.add_subcommand("landweber", "Regularity of (p, v1, v2, ...) in weights up to --degmax");
    land->add_option("--q", q, "Multiplication parameter q")->capture_default_str();
    land->add_option("--pmax", lw.pmax, "Largest prime")->check(CLI::Range(2u, 1000u))->capture_default_str();
    land->add_option("--nmax", lw.nmax, "Largest n (0: all with p^n - 1 <= degmax)")->capture_default_str();
    land->add_option("--degmax", lw.degmax, "Weight bound")->check(CLI::Range(3u, 200u))->capture_default_str();
    land->add_option("--samples", lw.samples, "Decomposable perturbations per v_n (sample 0 is unperturbed)")
        ->check(CLI::Range(1u, 10000u))
        ->capture_default_str();
    land->add_option("--seed", lw.seed, "Perturbation seed")->capture_default_str();
    land->add_option("--threads", lw.threads, "Worker threads (0: all cores)")->capture_default_str();
    land->add_flag("--fault", fault, "Replace v1 of the smallest prime by a multiple of p (negative control)");
    add_common(land, lw_common);

    // fermat
    Common fe_common;
    std::uint64_t kmax_fermat = 64;
    long long search_bound = -1;
    auto* fer = app.add_subcommand("fermat", "Generator corrections c_k and units eps_k");
    fer->add_option("--kmax", kmax_fermat, "Largest k")->check(CLI::Range(std::uint64_t{3}, std::uint64_t{100000000}))->capture_default_str();
    fer->add_option("--search-bound", search_bound, "Also search integral c_k with |c_k| <= bound")
        ->check(CLI::NonNegativeNumber);
    add_common(fer, fe_common);

    // nseries
    Common ns_common;
    long long n = 2;
    unsigned order = 4;
    auto* ns = app.add_subcommand("nseries", "Coefficients of the n-series of F_W");
    ns->add_option("--n", n, "n")->capture_default_str();
    ns->add_option("--q", q, "Multiplication parameter q")->capture_default_str();
    ns->add_option("--order", order, "Largest k (coefficient of u^(k+1))")
        ->check(CLI::Range(0u, 200u))
        ->capture_default_str();
    add_common(ns, ns_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    if (*mk)
        return run(mk_common, [&](cobw_report** r) { return cobw_report_mktable(kmax_table, r); });
    if (*land) {
        lw.q = q;
        lw.fault = fault ? 1 : 0;
        return run(lw_common, [&](cobw_report** r) { return cobw_report_landweber(&lw, r); });
    }
    if (*fer)
        return run(fe_common, [&](cobw_report** r) { return cobw_report_fermat(kmax_fermat, search_bound, r); });
    if (*ns)
        return run(ns_common, [&](cobw_report** r) { return cobw_report_nseries(n, q, order, r); });
    return kUsage;
}
