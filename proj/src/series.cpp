#include "cobw/series.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cobw::series {

namespace {

unsigned total(const Series::Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

RingElement reduce(const RingElement& c, Reduction red)
{
    return red == Reduction::mod_decomposables ? c.mod_decomposables() : c;
}

// Copy of a one-variable series as a series in `variables` variables using variable `index`.
Series embed(const Series& s, unsigned variables, unsigned index)
{
    Series out(s.ring(), variables, s.max_weight(), s.degree());
    for (const auto& [e, c] : s.terms()) {
        Series::Exponents x(variables, 0);
        x[index] = e[0];
        out.set(x, c);
    }
    return out;
}

// g(inner) for a one-variable degree-1 series g and a degree-1 series inner
// with no constant term, by Horner's rule: inner * (g1 + inner * (g2 + ...)).
Series apply_univariate(const Series& g, const Series& inner, Reduction red)
{
    const unsigned n = inner.variables();
    const unsigned D = std::min(g.max_weight(), inner.max_weight());
    unsigned top = 0;
    for (const auto& [e, c] : g.terms())
        top = std::max(top, e[0]);
    if (top == 0)
        return Series(inner.ring(), n, D, 1);
    const Series in = inner.truncated(D);
    Series acc = Series::constant(g.coefficient({top}), n, D);
    for (unsigned i = top - 1; i >= 1; --i) {
        acc = in.multiply(acc, red);
        // acc has no constant term here, so this adds g_i in place
        acc.set(Series::Exponents(n, 0), reduce(g.coefficient({i}), red));
    }
    return in.multiply(acc, red);
}

} // namespace

// ---- Series ------------------------------------------------------------

Series::Series(PresentationPtr ring, unsigned variables, unsigned max_weight, int degree)
    : ring_(std::move(ring)), variables_(variables), max_weight_(max_weight), degree_(degree)
{
    if (!ring_)
        throw std::invalid_argument("Series needs a presentation");
    if (variables == 0)
        throw std::invalid_argument("Series needs at least one variable");
}

Series Series::variable(PresentationPtr ring, unsigned variables, unsigned max_weight, unsigned index)
{
    if (index >= variables)
        throw std::invalid_argument("variable index out of range");
    Series s(ring, variables, max_weight, 1);
    Exponents e(variables, 0);
    e[index] = 1;
    s.set(e, RingElement::constant(ring, 1));
    return s;
}

Series Series::constant(const RingElement& c, unsigned variables, unsigned max_weight)
{
    if (!c.is_homogeneous())
        throw std::invalid_argument("constant series needs a homogeneous coefficient");
    const auto w = c.weight();
    Series s(c.ring(), variables, max_weight, w ? -static_cast<int>(*w) : 0);
    s.set(Exponents(variables, 0), c);
    return s;
}

long Series::weight_of(const Exponents& e) const { return static_cast<long>(total(e)) - degree_; }

RingElement Series::coefficient(const Exponents& e) const
{
    if (e.size() != variables_)
        throw std::invalid_argument("exponent arity does not match series");
    auto it = terms_.find(e);
    return it == terms_.end() ? RingElement(ring_) : it->second;
}

void Series::set(const Exponents& e, RingElement c)
{
    if (e.size() != variables_)
        throw std::invalid_argument("exponent arity does not match series");
    if (c.is_zero()) {
        terms_.erase(e);
        return;
    }
    const long w = weight_of(e);
    if (!c.is_homogeneous() || static_cast<long>(*c.weight()) != w)
        throw std::invalid_argument("coefficient " + c.to_string() + " must be homogeneous of weight " +
                                    std::to_string(w));
    if (w > static_cast<long>(max_weight_))
        return;
    terms_.insert_or_assign(e, std::move(c));
}

void Series::check_compatible(const Series& o) const
{
    if (variables_ != o.variables_)
        throw std::invalid_argument("series have different numbers of variables");
    if (ring_ != o.ring_ && *ring_ != *o.ring_)
        throw std::invalid_argument("series live over different rings");
}

Series Series::operator+(const Series& o) const
{
    check_compatible(o);
    // an empty series carries no grading constraint
    const int degree = o.terms_.empty() ? degree_ : (terms_.empty() ? o.degree_ : degree_);
    if (!terms_.empty() && !o.terms_.empty() && degree_ != o.degree_)
        throw std::invalid_argument("adding series of different degrees");
    Series out(ring_, variables_, std::min(max_weight_, o.max_weight_), degree);
    // both operands hold validated terms of the same degree
    for (const auto* s : {this, &o})
        for (const auto& [e, c] : s->terms_) {
            if (s->weight_of(e) > static_cast<long>(out.max_weight_))
                continue;
            auto [it, inserted] = out.terms_.try_emplace(e, c);
            if (!inserted) {
                it->second += c;
                if (it->second.is_zero())
                    out.terms_.erase(it);
            }
        }
    return out;
}

Series Series::operator-() const
{
    Series out = *this;
    for (auto& [e, c] : out.terms_)
        c = -c;
    return out;
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

bool Series::operator==(const Series& o) const
{
    return variables_ == o.variables_ && *ring_ == *o.ring_ && terms_ == o.terms_;
}

Series Series::multiply(const Series& o, Reduction red) const
{
    check_compatible(o);
    const unsigned D = std::min(max_weight_, o.max_weight_);
    Series out(ring_, variables_, D, degree_ + o.degree_);
    std::map<Exponents, RingElement> acc;
    for (const auto& [ea, ca] : terms_) {
        const long wa = weight_of(ea);
        if (wa > static_cast<long>(D))
            continue;
        for (const auto& [eb, cb] : o.terms_) {
            if (wa + o.weight_of(eb) > static_cast<long>(D))
                continue;
            Exponents e(variables_);
            for (unsigned i = 0; i < variables_; ++i)
                e[i] = ea[i] + eb[i];
            auto it = acc.find(e);
            if (it == acc.end())
                it = acc.emplace(std::move(e), RingElement(ring_)).first;
            it->second.add_product(ca, cb);
        }
    }
    // products of homogeneous coefficients are homogeneous of the right weight
    for (auto& [e, c] : acc) {
        RingElement r = red == Reduction::exact ? std::move(c) : c.mod_decomposables();
        if (!r.is_zero())
            out.terms_.emplace(e, std::move(r));
    }
    return out;
}

Series Series::scale(const RingElement& c, Reduction red) const
{
    return multiply(constant(c, variables_, max_weight_), red);
}

Series Series::pow(unsigned k, Reduction red) const
{
    Series out = constant(RingElement::constant(ring_, 1), variables_, max_weight_);
    for (unsigned i = 0; i < k; ++i)
        out = out.multiply(*this, red);
    return out;
}

Series Series::reduced(Reduction red) const
{
    if (red == Reduction::exact)
        return *this;
    Series out(ring_, variables_, max_weight_, degree_);
    for (const auto& [e, c] : terms_)
        out.set(e, c.mod_decomposables());
    return out;
}

Series Series::truncated(unsigned max_weight) const
{
    Series out(ring_, variables_, std::min(max_weight, max_weight_), degree_);
    for (const auto& [e, c] : terms_)
        out.set(e, c);
    return out;
}

// ---- TruncatedSeries1 ----------------------------------------------------

TruncatedSeries1::TruncatedSeries1(Series s)
    : s_(std::move(s))
{
    if (s_.variables() != 1)
        throw std::invalid_argument("TruncatedSeries1 needs a one-variable series");
    if (!s_.terms().empty() && s_.degree() != 1)
        throw std::invalid_argument("TruncatedSeries1 needs a degree-1 series");
    if (s_.degree() != 1)
        s_ = Series(s_.ring(), 1, s_.max_weight(), 1);
}

TruncatedSeries1 TruncatedSeries1::zero(PresentationPtr ring, unsigned max_weight)
{
    return TruncatedSeries1(Series(std::move(ring), 1, max_weight, 1));
}

TruncatedSeries1 TruncatedSeries1::identity(PresentationPtr ring, unsigned max_weight)
{
    return TruncatedSeries1(Series::variable(std::move(ring), 1, max_weight, 0));
}

TruncatedSeries1 TruncatedSeries1::from_coefficients(PresentationPtr ring, unsigned max_weight,
                                                     const std::vector<RingElement>& coefficients)
{
    Series s(ring, 1, max_weight, 1);
    for (std::size_t i = 0; i < coefficients.size(); ++i)
        s.set({static_cast<std::uint32_t>(i + 1)}, coefficients[i]);
    return TruncatedSeries1(std::move(s));
}

std::string TruncatedSeries1::to_string() const
{
    std::string out;
    for (const auto& [e, c] : s_.terms()) {
        if (!out.empty())
            out += " + ";
        out += "(" + c.to_string() + ")u^" + std::to_string(e[0]);
    }
    return out.empty() ? "0" : out;
}

// ---- FormalGroupLaw --------------------------------------------------------

FormalGroupLaw::FormalGroupLaw(Series s)
    : s_(std::move(s))
{
    if (s_.variables() != 2 || s_.degree() != 1)
        throw std::invalid_argument("a formal group law is a two-variable series of degree 1");
    const auto one = RingElement::constant(s_.ring(), 1);
    if (s_.coefficient({1, 0}) != one || s_.coefficient({0, 1}) != one)
        throw std::invalid_argument("formal group law must start with u + v");
    for (const auto& [e, c] : s_.terms()) {
        if ((e[0] == 0 || e[1] == 0) && e[0] + e[1] != 1)
            throw std::invalid_argument("formal group law has a pure power term u^" + std::to_string(e[0]) +
                                        " v^" + std::to_string(e[1]));
        if (s_.coefficient({e[1], e[0]}) != c)
            throw std::invalid_argument("formal group law is not commutative at (" + std::to_string(e[0]) + ", " +
                                        std::to_string(e[1]) + ")");
    }
}

FormalGroupLaw FormalGroupLaw::additive(PresentationPtr ring, unsigned max_weight)
{
    return FormalGroupLaw(Series::variable(ring, 2, max_weight, 0) + Series::variable(ring, 2, max_weight, 1));
}

FormalGroupLaw FormalGroupLaw::multiplicative(const RingElement& c, unsigned max_weight)
{
    if (c.weight() != 1u)
        throw std::invalid_argument("multiplicative law needs a weight-1 coefficient");
    Series s = Series::variable(c.ring(), 2, max_weight, 0) + Series::variable(c.ring(), 2, max_weight, 1);
    s.set({1, 1}, c);
    return FormalGroupLaw(std::move(s));
}

// ---- substitution ----------------------------------------------------------

Series substitute(const FormalGroupLaw& F, const Series& a, const Series& b, Reduction red)
{
    if (a.variables() != b.variables())
        throw std::invalid_argument("substitute: arguments have different arities");
    if (a.degree() != 1 || b.degree() != 1)
        throw std::invalid_argument("substitute: arguments must have degree 1");
    const unsigned n = a.variables();
    const unsigned D = std::min({F.max_weight(), a.max_weight(), b.max_weight()});
    const auto& ring = F.ring();

    unsigned top_i = 0, top_j = 0;
    for (const auto& [e, c] : F.series().terms()) {
        top_i = std::max(top_i, e[0]);
        top_j = std::max(top_j, e[1]);
    }
    std::vector<Series> a_pow;
    a_pow.push_back(Series::constant(RingElement::constant(ring, 1), n, D));
    for (unsigned i = 1; i <= top_i; ++i)
        a_pow.push_back(a_pow.back().multiply(a, red));

    // rows[j] = sum_i w_ij a^i, a series of degree 1 - j
    std::vector<Series> rows;
    for (unsigned j = 0; j <= top_j; ++j)
        rows.emplace_back(ring, n, D, 1 - static_cast<int>(j));
    for (const auto& [e, c] : F.series().terms())
        rows[e[1]] = rows[e[1]] + a_pow[e[0]].scale(reduce(c, red), red);

    Series acc = rows[top_j];
    for (unsigned j = top_j; j-- > 0;)
        acc = acc.multiply(b, red) + rows[j];
    return acc;
}

TruncatedSeries1 compose(const TruncatedSeries1& g, const TruncatedSeries1& h, Reduction red)
{
    return TruncatedSeries1(apply_univariate(g.series(), h.series(), red));
}

// ---- axioms ------------------------------------------------------------------

namespace {

bool exponent_order(const Series::Exponents& a, const Series::Exponents& b)
{
    const auto ta = total(a), tb = total(b);
    return ta != tb ? ta < tb : a < b;
}

std::optional<Series::Exponents> first_difference(const Series& x, const Series& y)
{
    std::vector<Series::Exponents> keys;
    for (const auto* s : {&x, &y})
        for (const auto& [e, c] : s->terms())
            keys.push_back(e);
    std::sort(keys.begin(), keys.end(), exponent_order);
    for (const auto& e : keys)
        if (x.coefficient(e) != y.coefficient(e))
            return e;
    return std::nullopt;
}

} // namespace

AxiomVerdict check_axioms(const FormalGroupLaw& F, bool mod_decomposables)
{
    const Reduction red = mod_decomposables ? Reduction::mod_decomposables : Reduction::exact;
    const Series s = F.series().reduced(red);
    AxiomVerdict v;
    const auto one = RingElement::constant(F.ring(), 1);

    const auto fail = [&](std::string axiom, Series::Exponents e, std::string detail) {
        v.passed = false;
        v.axiom = std::move(axiom);
        v.exponent = std::move(e);
        v.detail = std::move(detail);
        return v;
    };

    if (s.coefficient({1, 0}) != one)
        return fail("unitality", {1, 0}, "coefficient of u is not 1");
    if (s.coefficient({0, 1}) != one)
        return fail("unitality", {0, 1}, "coefficient of v is not 1");
    for (const auto& [e, c] : s.terms())
        if ((e[0] == 0 || e[1] == 0) && e[0] + e[1] != 1)
            return fail("unitality", e, "pure power term " + c.to_string());
    for (const auto& [e, c] : s.terms())
        if (s.coefficient({e[1], e[0]}) != c)
            return fail("commutativity", e, c.to_string() + " != " + s.coefficient({e[1], e[0]}).to_string());

    const unsigned D = F.max_weight();
    const auto& ring = F.ring();
    const Series u = Series::variable(ring, 3, D, 0);
    const Series w = Series::variable(ring, 3, D, 1);
    const Series z = Series::variable(ring, 3, D, 2);
    const FormalGroupLaw G(s);
    const Series left = substitute(G, substitute(G, u, w, red), z, red);
    const Series right = substitute(G, u, substitute(G, w, z, red), red);
    if (auto e = first_difference(left, right))
        return fail("associativity", *e,
                    left.coefficient(*e).to_string() + " != " + right.coefficient(*e).to_string());
    return v;
}

// ---- n-series and v_n --------------------------------------------------------

TruncatedSeries1 n_series(const FormalGroupLaw& F, unsigned n, Reduction red)
{
    const unsigned D = F.max_weight();
    const Series u = Series::variable(F.ring(), 1, D, 0);
    Series acc(F.ring(), 1, D, 1);
    for (unsigned i = 0; i < n; ++i)
        acc = substitute(F, u, acc, red);
    return TruncatedSeries1(std::move(acc));
}

namespace {

std::uint64_t checked_power(std::uint64_t p, unsigned n, std::uint64_t limit)
{
    std::uint64_t r = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (r > limit / p + 1)
            return limit + 2;
        r *= p;
    }
    return r;
}

} // namespace

RingElement vn(const FormalGroupLaw& F, std::uint32_t p, unsigned n, Reduction red)
{
    if (p < 2)
        throw std::invalid_argument("vn: p must be a prime");
    const std::uint64_t D = F.max_weight();
    const std::uint64_t pn = checked_power(p, n, D + 1);
    if (pn - 1 > D)
        throw std::out_of_range("v_" + std::to_string(n) + " for p = " + std::to_string(p) + " needs weight " +
                                std::to_string(pn - 1) + " but the law is truncated at weight " + std::to_string(D));
    return n_series(F, p, red).coefficient(static_cast<unsigned>(pn));
}

// ---- isomorphisms ----------------------------------------------------------------

SeriesIso::SeriesIso(TruncatedSeries1 g)
    : g_(std::move(g)), lambda_(0)
{
    const auto lead = g_.coefficient(1);
    const auto& ring = g_.ring();
    if (lead == RingElement::constant(ring, 1))
        lambda_ = 1;
    else if (lead == RingElement::constant(ring, -1))
        lambda_ = -1;
    else
        throw std::invalid_argument("isomorphism needs leading coefficient +-1, got " + lead.to_string());
}

TruncatedSeries1 SeriesIso::inverse() const
{
    const auto& ring = g_.ring();
    const unsigned D = g_.max_weight();
    Series h(ring, 1, D, 1);
    h.set({1}, RingElement::constant(ring, lambda_));
    for (unsigned N = 2; N <= D + 1; ++N) {
        // coefficient of u^N in g(h) is lambda h_N + (terms in lower h_i);
        // it only needs coefficients up to weight N - 1
        const TruncatedSeries1 gt(g_.series().truncated(N - 1)), ht(h.truncated(N - 1));
        const auto c = compose(gt, ht).coefficient(N);
        h.set({N}, c * Integer(-lambda_));
    }
    return TruncatedSeries1(std::move(h));
}

SeriesIso SeriesIso::after(const SeriesIso& other) const { return SeriesIso(compose(g_, other.g_)); }

FormalGroupLaw apply_iso(const FormalGroupLaw& F, const SeriesIso& g, Reduction red)
{
    const Series ginv = g.inverse().series();
    const Series inner = substitute(F, embed(ginv, 2, 0), embed(ginv, 2, 1), red);
    return FormalGroupLaw(apply_univariate(g.series().series(), inner, red));
}

// ---- p-typical shape ---------------------------------------------------------------

ShapeVerdict p_typical_shape(const FormalGroupLaw& F, std::uint32_t p, unsigned n)
{
    const unsigned D = F.max_weight();
    const auto series = n_series(F, p);
    std::vector<RingElement> ideal;
    for (unsigned i = 1; i < n; ++i) {
        const std::uint64_t pi = checked_power(p, i, D + 1);
        if (pi - 1 > D)
            throw std::out_of_range("p_typical_shape: v_" + std::to_string(i) + " lies beyond the truncation");
        ideal.push_back(series.coefficient(static_cast<unsigned>(pi)));
    }
    const std::uint64_t pn = checked_power(p, n, std::uint64_t(1) << 40);
    ShapeVerdict v;
    for (const auto& [e, c] : series.series().terms()) {
        if (e[0] % pn == 0)
            continue;
        if (!gring::in_ideal_mod_p(c, ideal, p)) {
            v.passed = false;
            v.offending_exponent = e[0];
            return v;
        }
    }
    return v;
}

// ---- classification mod decomposables ---------------------------------------------------

std::map<unsigned, RingElement> classify_mod_decomposables(const FormalGroupLaw& F)
{
    std::map<unsigned, RingElement> r;
    const auto& ring = F.ring();
    for (unsigned k = 1; k <= F.max_weight(); ++k) {
        const Integer mk = numth::m(k);
        std::vector<Integer> b;
        std::vector<RingElement> w;
        for (unsigned i = 1; i <= k; ++i) {
            b.push_back(numth::binomial(k + 1, i) / mk);
            w.push_back(F.coefficient(i, k + 1 - i).mod_decomposables());
        }
        // Bezout coefficients t with sum t_i b_i = 1
        std::vector<Integer> t{1};
        Integer g = b[0];
        for (std::size_t i = 1; i < b.size(); ++i) {
            Integer ng, s, ti;
            mpz_gcdext(ng.get_mpz_t(), s.get_mpz_t(), ti.get_mpz_t(), g.get_mpz_t(), b[i].get_mpz_t());
            for (auto& x : t)
                x *= s;
            t.push_back(ti);
            g = ng;
        }
        if (g != 1)
            throw std::logic_error("binomial quotients are not coprime at k = " + std::to_string(k));
        RingElement rk(ring);
        for (std::size_t i = 0; i < b.size(); ++i)
            rk += w[i] * t[i];
        rk = rk.mod_decomposables();
        for (std::size_t i = 0; i < b.size(); ++i)
            if ((rk * b[i]).mod_decomposables() != w[i])
                throw std::domain_error("no r_" + std::to_string(k) + " matches the coefficient at (" +
                                        std::to_string(i + 1) + ", " + std::to_string(k - i) + ")");
        r.emplace(k, std::move(rk));
    }
    return r;
}

} // namespace cobw::series
