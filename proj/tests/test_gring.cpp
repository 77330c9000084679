#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "cobw/gring.hpp"

using namespace cobw::gring;

namespace {

// Explicitly generates partitions of d into parts from `allowed` and counts
// those accepted by `keep`.
unsigned long long count_partitions(unsigned d, const std::set<unsigned>& allowed,
                                    const std::function<bool(const std::vector<unsigned>&)>& keep)
{
    unsigned long long n = 0;
    std::vector<unsigned> parts;
    std::function<void(unsigned, unsigned)> rec = [&](unsigned rest, unsigned max_part) {
        if (rest == 0) {
            n += keep(parts) ? 1 : 0;
            return;
        }
        for (unsigned k = std::min(rest, max_part); k >= 1; --k) {
            if (!allowed.count(k))
                continue;
            parts.push_back(k);
            rec(rest - k, k);
            parts.pop_back();
        }
    };
    rec(d, d);
    return n;
}

std::set<unsigned> range_without(unsigned d, std::set<unsigned> skip)
{
    std::set<unsigned> s;
    for (unsigned k = 1; k <= d; ++k)
        if (!skip.count(k))
            s.insert(k);
    return s;
}

RingElement random_element(const PresentationPtr& R, std::mt19937_64& rng, unsigned max_weight)
{
    RingElement e(R);
    for (unsigned d = 0; d <= max_weight; ++d)
        for (const auto& m : R->basis(d))
            if (rng() % 3 == 0)
                e += RingElement::monomial(R, m, Integer(static_cast<long>(rng() % 9) - 4));
    return e;
}

} // namespace

TEST_CASE("w-ring relation and normal form")
{
    for (long q = -3; q <= 3; ++q) {
        auto W = Presentation::w_ring(q);
        const auto x1 = RingElement::generator(W, 1), x2 = RingElement::generator(W, 2);
        CHECK(x1 * x1 == x2 * Integer(4 * q + 1));
        CHECK((x1 * x1 * x1) == x1 * x2 * Integer(4 * q + 1));
        CHECK((x1.pow(4)) == x2.pow(2) * Integer((4 * q + 1) * (4 * q + 1)));
    }
}

TEST_CASE("text form round trip")
{
    auto W = Presentation::w_ring(1);
    const auto e = RingElement::parse(W, "x1*x3:-3;x2^2:1");
    CHECK(e.to_string() == "x1*x3:-3;x2^2:1");
    CHECK(RingElement::parse(W, e.to_string()) == e);
    CHECK(RingElement(W).to_string() == "0");
    CHECK(RingElement::constant(W, 7).to_string() == "1:7");
    CHECK(RingElement::parse(W, "x1^2:1") == RingElement::generator(W, 2) * Integer(5));
    CHECK_THROWS(RingElement::parse(W, "y1:1"));
    CHECK_THROWS(RingElement::parse(W, "x1:"));

    std::mt19937_64 rng(9);
    for (int i = 0; i < 50; ++i) {
        const auto r = random_element(W, rng, 8);
        CHECK(RingElement::parse(W, r.to_string()) == r);
    }
}

TEST_CASE("ring axioms on random elements")
{
    std::mt19937_64 rng(21);
    for (auto R : {Presentation::w_ring(-2), Presentation::w_ring(3), Presentation::polynomial("x", {2})}) {
        for (int i = 0; i < 20; ++i) {
            const auto a = random_element(R, rng, 4), b = random_element(R, rng, 4), c = random_element(R, rng, 4);
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a - a == RingElement(R));
        }
    }
}

TEST_CASE("graded ranks against partition enumeration")
{
    auto W = Presentation::w_ring(0);
    auto F = Presentation::polynomial("x", {2});
    auto A = Presentation::polynomial("a");
    for (unsigned d = 0; d <= 30; ++d) {
        CAPTURE(d);
        const auto all = range_without(d, {});
        const auto w_oracle = count_partitions(d, all, [](const std::vector<unsigned>& p) {
            return std::count(p.begin(), p.end(), 1u) <= 1;
        });
        const auto f_oracle = count_partitions(d, range_without(d, {2}), [](const auto&) { return true; });
        CHECK(graded_rank(*W, d) == w_oracle);
        CHECK(graded_rank(*F, d) == f_oracle);
        CHECK(W->basis(d).size() == w_oracle);
        CHECK(graded_rank(*A, d) == count_partitions(d, all, [](const auto&) { return true; }));
    }
    CHECK(graded_rank(*W, 4) == 3);
}

TEST_CASE("basis order and weights")
{
    auto W = Presentation::w_ring(0);
    const auto& b = W->basis(4);
    REQUIRE(b.size() == 3);
    for (std::size_t i = 0; i + 1 < b.size(); ++i)
        CHECK(b[i + 1] < b[i]);
    for (const auto& m : b) {
        CHECK(m.weight() == 4);
        CHECK(W->basis_index(m) < b.size());
    }
    CHECK(b[0].to_string("x") == "x4");
}

TEST_CASE("decomposables index at weight 2")
{
    for (long q = -3; q <= 3; ++q) {
        auto W = Presentation::w_ring(q);
        const auto piece = decomposables_piece(W, 2);
        REQUIRE(piece.index());
        CHECK(*piece.index() == std::abs(4 * q + 1));
    }
    auto F = Presentation::polynomial("x");
    CHECK(decomposables_piece(F, 2).index() == std::nullopt); // x2 not decomposable
    CHECK(decomposables_piece(F, 5).rank() == graded_rank(*F, 5) - 1);
    CHECK_THROWS(decomposables_piece(F, 1));
}

TEST_CASE("s-numbers")
{
    auto U = Presentation::polynomial("a", {}, SNumbers::unitary);
    CHECK(s_number(4, RingElement::generator(U, 4)) == -5);
    CHECK(s_number(5, RingElement::generator(U, 5)) == -1);
    CHECK(s_number(4, RingElement::generator(U, 1) * RingElement::generator(U, 3)) == 0);
    auto W = Presentation::w_ring(0);
    CHECK(s_number(4, RingElement::generator(W, 4)) == 5 * 2);
    CHECK(s_number(1, RingElement::generator(W, 1)) == 2);
    CHECK_THROWS(s_number(2, RingElement::generator(W, 2)));
}

TEST_CASE("mod decomposables and reduction mod p")
{
    auto W = Presentation::w_ring(1);
    const auto e = RingElement::parse(W, "x3:4;x1*x2:7;1:2");
    CHECK(e.mod_decomposables() == RingElement::parse(W, "x3:4;1:2"));
    CHECK(e.reduce_mod(3) == RingElement::parse(W, "x3:1;x1*x2:1;1:2"));
    // the x2 coefficient only matters modulo 4q+1 = 5
    CHECK(RingElement::parse(W, "x2:7").mod_decomposables() == RingElement::parse(W, "x2:2"));
}

TEST_CASE("injectivity of multiplication")
{
    auto F = Presentation::polynomial("x");
    const auto x1 = RingElement::generator(F, 1);
    CHECK(mult_injective(x1, {}, 2, 10).injective);
    const auto bad = mult_injective(x1 * Integer(2), {}, 2, 6);
    CHECK_FALSE(bad.injective);
    REQUIRE(bad.first_failure());
    CHECK(bad.first_failure()->witness);
    CHECK(bad.first_failure()->degree == 0);
    // x1 kills x2 in Z[x1, x2]/(x1 x2)
    auto G = Presentation::free("y", {{1, 1}, {2, 2}});
    const auto y1 = RingElement::generator(G, 1), y2 = RingElement::generator(G, 2);
    const auto r = mult_injective(y1, {y1 * y2}, 3, 6);
    CHECK_FALSE(r.injective);
    REQUIRE(r.first_failure());
    CHECK(r.first_failure()->degree == 2);
    CHECK(*r.first_failure()->witness == y2);
    CHECK(mult_injective(y2, {y1}, 3, 10).injective);
}

TEST_CASE("regular sequences")
{
    auto F = Presentation::polynomial("x");
    const auto x1 = RingElement::generator(F, 1), x2 = RingElement::generator(F, 2),
               x3 = RingElement::generator(F, 3);
    for (const auto& c : regular_sequence_check({x1, x3}, 2, 10))
        CHECK(c.passed);
    // x1*x2 vanishes modulo x1, so it acts by zero on a nonzero quotient
    bool failed = false;
    for (const auto& c : regular_sequence_check({x1, x1 * x2}, 2, 6))
        failed |= !c.passed;
    CHECK(failed);
    CHECK_THROWS(regular_sequence_check({x3, x1}, 2, 6));
}

TEST_CASE("ideal membership mod p")
{
    auto F = Presentation::polynomial("x");
    const auto x1 = RingElement::generator(F, 1), x2 = RingElement::generator(F, 2);
    CHECK(in_ideal_mod_p(x1 * x2, {x1}, 5));
    CHECK(in_ideal_mod_p(x2 * Integer(5), {}, 5));
    CHECK_FALSE(in_ideal_mod_p(x2, {x1}, 5));
    CHECK(in_ideal_mod_p(x2 + x1 * x1, {x2 + x1 * x1}, 5));
}
