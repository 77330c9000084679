#include <doctest.h>

#include <json.hpp>

#include "cobw/report.hpp"

using namespace cobw;
using nlohmann::json;

TEST_CASE("mktable rows")
{
    const auto r = report::mktable(16);
    CHECK(r.passed);
    REQUIRE(r.results.size() == 16);
    const auto& k4 = r.results[3];
    CHECK(k4["k"] == 4);
    CHECK(k4["m_k"] == "5");
    CHECK(k4["agree"] == true);
    CHECK(k4["r_coefficient"] == "-3");
    CHECK(r.results[0]["r_coefficient"].is_null());
    CHECK(r.results[15]["m_k"] == "17");
}

TEST_CASE("nseries rows")
{
    const auto r = report::nseries(3, 0, 2);
    REQUIRE(r.results.size() == 3);
    CHECK(r.results[0]["coefficient"] == "1:3");
    CHECK(r.results[1]["coefficient"] == "x1:-3");
    CHECK(r.results[2]["coefficient"] == "x2:1");
    const auto one = report::nseries(1, 5, 4);
    CHECK(one.results[0]["coefficient"] == "1:1");
    for (std::size_t i = 1; i < one.results.size(); ++i)
        CHECK(one.results[i]["coefficient"] == "0");
    CHECK(one.results[4]["exactness"] == "mod decomposables");
}

TEST_CASE("fermat rows")
{
    const auto r = report::fermat(8, numth::Integer(10));
    CHECK(r.passed);
    REQUIRE(r.results.size() == 6);
    const auto& k4 = r.results[1];
    CHECK(k4["c"] == "-2/5");
    CHECK(k4["search_c"] == "-4");
    CHECK(k4["search_epsilon"] == "-17");
    const auto& k8 = r.results[5];
    CHECK(k8["c"] == "0");
    CHECK(k8["epsilon"] == "5");
    CHECK(k8["case"] == "k=8");
}

TEST_CASE("rendering")
{
    auto r = report::mktable(3);
    r.duration_ms = 12.5;
    const auto j = json::parse(report::render(r, report::Format::json));
    CHECK(j["verdict"] == "pass");
    CHECK(j["version"] == report::kVersion);
    CHECK(j.contains("timing"));
    CHECK_FALSE(json::parse(report::render(r, report::Format::json, false)).contains("timing"));
    CHECK(json::parse(report::payload(r)) == json::parse(report::render(r, report::Format::json, false)));

    const auto csv = report::render(r, report::Format::csv);
    CHECK(csv.rfind("k,m_k,binom_gcd,agree,r_coefficient\n", 0) == 0);
    CHECK(csv.find("3,2,2,true,1\n") != std::string::npos);
    const auto md = report::render(r, report::Format::md);
    CHECK(md.find("| k | m_k |") != std::string::npos);
}

TEST_CASE("landweber payload is deterministic and records the seed")
{
    wtheory::LandweberOptions o;
    o.p_max = 3;
    o.max_weight = 12;
    o.samples = 3;
    o.seed = 99;
    const auto a = report::landweber(o);
    o.threads = 1;
    const auto b = report::landweber(o);
    CHECK(report::payload(a) == report::payload(b));
    const auto j = json::parse(report::payload(a));
    CHECK(j["params"]["seed"] == 99);
    CHECK(j["details"]["regular"] == true);
    o.seed = 100;
    CHECK(report::payload(report::landweber(o)) != report::payload(a));
}
