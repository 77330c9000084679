#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string cmd = std::string(COBW_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0)
        r.out.append(buf.data(), n);
    const int status = pclose(f);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

} // namespace

TEST_CASE("exit codes")
{
    CHECK(run("mktable --kmax 16").code == 0);
    CHECK(run("landweber --degmax 12").code == 0);
    CHECK(run("landweber --degmax 12 --fault").code == 1);
    CHECK(run("landweber --degmax 1").code == 2);
    CHECK(run("mktable --format xml").code == 2);
    CHECK(run("nosuch").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("fermat --kmax 8 --search-bound 10").code == 0);
    CHECK(run("--version").code == 0);
}

TEST_CASE("json envelope")
{
    const auto r = run("nseries --n 3 --q 0 --order 2");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["command"] == "nseries");
    CHECK(j["verdict"] == "pass");
    CHECK(j["results"][1]["coefficient"] == "x1:-3");
    CHECK(j.contains("timing"));
}

TEST_CASE("fault report carries a witness")
{
    const auto r = run("landweber --degmax 12 --fault --no-timing");
    REQUIRE(r.code == 1);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["verdict"] == "fail");
    bool witness = false;
    for (const auto& row : j["results"])
        if (row["passed"] == false)
            witness |= row["witness"].is_string() && !row["witness"].get<std::string>().empty();
    CHECK(witness);
}

TEST_CASE("identical flags give identical payloads")
{
    const std::string flags = "landweber --q 1 --pmax 3 --degmax 16 --samples 4 --seed 5 --no-timing";
    const auto a = run(flags), b = run(flags + " --threads 1");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
}
