#include "cobw/report.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

#include "cobw/errors.hpp"

namespace cobw::report {

using nlohmann::json;

namespace {

class Stopwatch {
public:
    double elapsed_ms() const
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string cell_text(const json& v)
{
    if (v.is_null())
        return "";
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

json envelope(const Report& r)
{
    json j;
    j["version"] = kVersion;
    j["command"] = r.command;
    j["params"] = r.params;
    j["results"] = r.results;
    j["details"] = r.details;
    j["verdict"] = r.passed ? "pass" : "fail";
    return j;
}

} // namespace

Report mktable(unsigned kmax)
{
    if (kmax < 1)
        throw std::invalid_argument("mktable: kmax must be >= 1");
    Stopwatch clock;
    Report r;
    r.command = "mktable";
    r.params = {{"kmax", kmax}};
    r.columns = {"k", "m_k", "binom_gcd", "agree", "r_coefficient"};
    for (unsigned k = 1; k <= kmax; ++k) {
        const auto m = numth::m(k);
        const auto g = numth::binom_gcd(k);
        json row = {{"k", k}, {"m_k", m.get_str()}, {"binom_gcd", g.get_str()}, {"agree", m == g}};
        row["r_coefficient"] = k > 2 ? json(wtheory::r_coefficient(k).get_str()) : json(nullptr);
        r.passed = r.passed && m == g;
        r.results.push_back(std::move(row));
    }
    r.duration_ms = clock.elapsed_ms();
    return r;
}

Report landweber(const wtheory::LandweberOptions& options)
{
    Stopwatch clock;
    Report r;
    r.command = "landweber";
    r.params = {{"q", options.q.get_str()},
                {"pmax", options.p_max},
                {"nmax", options.n_max},
                {"degmax", options.max_weight},
                {"samples", options.samples},
                {"seed", options.seed},
                {"fault", options.fault}};
    r.columns = {"p", "sample", "n", "degree", "passed", "asserted", "quotient_dim", "kernel_dim", "witness"};

    const auto rep = wtheory::landweber_verify(options);
    for (const auto& c : rep.cells) {
        r.results.push_back({{"p", c.p},
                             {"sample", c.sample},
                             {"n", c.step},
                             {"degree", c.degree},
                             {"passed", c.passed},
                             {"asserted", c.asserted},
                             {"quotient_dim", c.quotient_dim},
                             {"kernel_dim", c.kernel_dim},
                             {"witness", c.witness ? json(c.witness->to_string()) : json(nullptr)}});
    }
    json sequences = json::array();
    for (const auto& s : rep.sequences) {
        json elems = json::array();
        for (const auto& e : s.elements)
            elems.push_back(e.to_string());
        sequences.push_back({{"p", s.p}, {"sample", s.sample}, {"v", elems}});
    }
    r.details = {{"sequences", sequences},
                 {"perturbation_invariant", rep.perturbation_invariant},
                 {"regular", rep.regular},
                 {"scope", "verified over F_p in every weight <= degmax; F_W above weight 2 is known only modulo "
                           "decomposables, so v_n lifts are sampled as epsilon_n x_{p^n-1} + delta"}};
    r.passed = rep.regular;
    r.duration_ms = clock.elapsed_ms();
    return r;
}

Report fermat(std::uint64_t kmax, std::optional<numth::Integer> search_bound)
{
    if (kmax < 3)
        throw std::invalid_argument("fermat: kmax must be >= 3");
    Stopwatch clock;
    Report r;
    r.command = "fermat";
    r.params = {{"kmax", kmax}, {"search_bound", search_bound ? json(search_bound->get_str()) : json(nullptr)}};
    r.columns = {"k", "m_k", "m_k_minus_1", "a_k", "c", "epsilon", "case", "identity", "search_c", "search_epsilon"};
    for (std::uint64_t k = 3; k <= kmax; ++k) {
        json row = {{"k", k}};
        try {
            const auto rec = wtheory::fermat_ck(k);
            row["m_k"] = rec.m_k.get_str();
            row["m_k_minus_1"] = rec.m_k_minus_1.get_str();
            row["a_k"] = rec.a_k.get_str();
            row["c"] = rec.c.to_string();
            row["epsilon"] = rec.epsilon.to_string();
            row["case"] = wtheory::to_string(rec.tag);
            row["identity"] = "ok";
        } catch (const VerificationError& e) {
            row["identity"] = std::string("violated: ") + e.what();
            r.passed = false;
        }
        if (search_bound) {
            const auto hit = wtheory::integral_ck_search(k, *search_bound);
            row["search_c"] = hit ? json(hit->c.get_str()) : json("none");
            row["search_epsilon"] = hit ? json(hit->epsilon.to_string()) : json("none");
        } else {
            row["search_c"] = nullptr;
            row["search_epsilon"] = nullptr;
        }
        r.results.push_back(std::move(row));
    }
    if (search_bound)
        r.details["search_note"] = "search_c = none only means no integral c with |c| <= search_bound";
    r.duration_ms = clock.elapsed_ms();
    return r;
}

Report nseries(const numth::Integer& n, const numth::Integer& q, unsigned order)
{
    Stopwatch clock;
    Report r;
    r.command = "nseries";
    r.params = {{"n", n.get_str()}, {"q", q.get_str()}, {"order", order}};
    r.columns = {"k", "coefficient", "exactness"};
    auto ring = gring::Presentation::w_ring(q);
    for (unsigned k = 0; k <= order; ++k) {
        r.results.push_back({{"k", k},
                             {"coefficient", wtheory::nseries_coeff(ring, n, k).to_string()},
                             {"exactness", k <= 2 ? "exact" : "mod decomposables"}});
    }
    r.details["series"] = "coefficient of u^(k+1) in [n](u) over Z[x1,x2,...]/(x1^2 = (4q+1) x2)";
    r.duration_ms = clock.elapsed_ms();
    return r;
}

std::string payload(const Report& r) { return envelope(r).dump(); }

std::string render(const Report& r, Format format, bool include_timing)
{
    switch (format) {
    case Format::json: {
        json j = envelope(r);
        if (include_timing)
            j["timing"] = {{"duration_ms", r.duration_ms}};
        return j.dump(2) + "\n";
    }
    case Format::csv: {
        std::ostringstream os;
        for (std::size_t i = 0; i < r.columns.size(); ++i)
            os << (i ? "," : "") << r.columns[i];
        os << "\n";
        for (const auto& row : r.results) {
            for (std::size_t i = 0; i < r.columns.size(); ++i)
                os << (i ? "," : "") << csv_escape(cell_text(row.value(r.columns[i], json(nullptr))));
            os << "\n";
        }
        return os.str();
    }
    case Format::md: {
        std::ostringstream os;
        os << "# " << r.command << "\n\n";
        os << "parameters: `" << r.params.dump() << "`\n\n";
        os << "|";
        for (const auto& c : r.columns)
            os << " " << c << " |";
        os << "\n|";
        for (std::size_t i = 0; i < r.columns.size(); ++i)
            os << "---|";
        os << "\n";
        for (const auto& row : r.results) {
            os << "|";
            for (const auto& c : r.columns)
                os << " " << cell_text(row.value(c, json(nullptr))) << " |";
            os << "\n";
        }
        os << "\nverdict: **" << (r.passed ? "pass" : "fail") << "**\n";
        if (include_timing)
            os << "\nduration: " << r.duration_ms << " ms\n";
        return os.str();
    }
    }
    throw std::invalid_argument("unknown report format");
}

} // namespace cobw::report
