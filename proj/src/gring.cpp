#include "cobw/gring.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "cobw/linalg.hpp"

namespace cobw::gring {

using linalg::FpEchelon;
using linalg::FpRow;

// ---- Monomial ----------------------------------------------------------

std::uint32_t Monomial::exponent(std::uint32_t index) const
{
    for (const auto& [i, e] : factors_)
        if (i == index)
            return e;
    return 0;
}

unsigned Monomial::length() const
{
    unsigned n = 0;
    for (const auto& f : factors_)
        n += f.second;
    return n;
}

std::string Monomial::to_string(const std::string& symbol) const
{
    if (factors_.empty())
        return "1";
    std::string out;
    for (const auto& [i, e] : factors_) {
        if (!out.empty())
            out += '*';
        out += symbol + std::to_string(i);
        if (e != 1)
            out += '^' + std::to_string(e);
    }
    return out;
}

bool operator<(const Monomial& a, const Monomial& b)
{
    if (a.weight_ != b.weight_)
        return a.weight_ < b.weight_;
    // lexicographic, highest generator index most significant
    auto i = a.factors_.rbegin();
    auto j = b.factors_.rbegin();
    for (; i != a.factors_.rend() && j != b.factors_.rend(); ++i, ++j) {
        if (i->first != j->first)
            return i->first < j->first;
        if (i->second != j->second)
            return i->second < j->second;
    }
    return i == a.factors_.rend() && j != b.factors_.rend();
}

std::size_t Monomial::hash() const
{
    std::size_t h = weight_;
    for (const auto& [i, e] : factors_)
        h = h * 1000003u ^ (std::size_t(i) << 16 | e);
    return h;
}

// ---- Presentation --------------------------------------------------------

PresentationPtr Presentation::w_ring(const Integer& q)
{
    std::shared_ptr<Presentation> p(new Presentation);
    p->w_ring_ = true;
    p->q_ = q;
    p->relation_scalar_ = 4 * q + 1;
    p->symbol_ = "x";
    p->s_numbers_ = SNumbers::w_ring;
    return p;
}

PresentationPtr Presentation::polynomial(std::string symbol, std::set<std::uint32_t> skipped, SNumbers s_numbers)
{
    if (skipped.count(0))
        throw std::invalid_argument("generator indices start at 1");
    std::shared_ptr<Presentation> p(new Presentation);
    p->symbol_ = std::move(symbol);
    p->skipped_ = std::move(skipped);
    p->s_numbers_ = s_numbers;
    return p;
}

PresentationPtr Presentation::free(std::string symbol, std::map<std::uint32_t, unsigned> weights)
{
    for (const auto& [i, w] : weights)
        if (i == 0 || w == 0)
            throw std::invalid_argument("generator indices and weights must be positive");
    std::shared_ptr<Presentation> p(new Presentation);
    p->symbol_ = std::move(symbol);
    p->standard_ = false;
    p->weights_ = std::move(weights);
    return p;
}

bool Presentation::has_generator(std::uint32_t index) const
{
    if (index == 0)
        return false;
    if (standard_)
        return !skipped_.count(index);
    return weights_.count(index) > 0;
}

unsigned Presentation::weight_of(std::uint32_t index) const
{
    if (!has_generator(index))
        throw std::invalid_argument("no generator " + symbol_ + std::to_string(index) + " in " + describe());
    return standard_ ? index : weights_.at(index);
}

std::vector<std::uint32_t> Presentation::generators_up_to(unsigned weight) const
{
    std::vector<std::uint32_t> out;
    if (standard_) {
        for (std::uint32_t i = 1; i <= weight; ++i)
            if (!skipped_.count(i))
                out.push_back(i);
    } else {
        for (const auto& [i, w] : weights_)
            if (w <= weight)
                out.push_back(i);
    }
    return out;
}

Monomial Presentation::monomial(std::vector<Monomial::Factor> factors) const
{
    std::sort(factors.begin(), factors.end());
    Monomial m;
    for (const auto& [i, e] : factors) {
        if (e == 0)
            continue;
        m.weight_ += weight_of(i) * e;
        if (!m.factors_.empty() && m.factors_.back().first == i)
            m.factors_.back().second += e;
        else
            m.factors_.emplace_back(i, e);
    }
    return m;
}

Monomial Presentation::generator(std::uint32_t index, std::uint32_t exponent) const
{
    return monomial({{index, exponent}});
}

bool Presentation::is_normal(const Monomial& m) const
{
    return !w_ring_ || m.exponent(1) <= 1;
}

std::pair<Integer, Monomial> Presentation::normalize(const Monomial& m) const
{
    if (!w_ring_ || m.factors_.empty() || m.factors_[0].first != 1 || m.factors_[0].second < 2)
        return {Integer(1), m};
    const std::uint32_t e = m.factors_[0].second;
    Monomial out;
    out.weight_ = m.weight_;
    if (e % 2)
        out.factors_.emplace_back(1, 1);
    std::size_t rest = 1;
    if (rest < m.factors_.size() && m.factors_[rest].first == 2) {
        out.factors_.emplace_back(2, m.factors_[rest].second + e / 2);
        ++rest;
    } else {
        out.factors_.emplace_back(2, e / 2);
    }
    out.factors_.insert(out.factors_.end(), m.factors_.begin() + static_cast<std::ptrdiff_t>(rest), m.factors_.end());
    return {numth::pow(relation_scalar_, e / 2), out};
}

std::pair<Integer, Monomial> Presentation::multiply(const Monomial& a, const Monomial& b) const
{
    Monomial m;
    m.weight_ = a.weight_ + b.weight_;
    m.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto i = a.factors_.begin();
    auto j = b.factors_.begin();
    while (i != a.factors_.end() || j != b.factors_.end()) {
        if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first))
            m.factors_.push_back(*i++);
        else if (i == a.factors_.end() || j->first < i->first)
            m.factors_.push_back(*j++);
        else {
            m.factors_.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    return normalize(m);
}

bool Presentation::multiply_into(const Monomial& a, const Monomial& b, Monomial& out, Integer& scale) const
{
    auto& f = out.factors_;
    f.clear();
    out.weight_ = a.weight_ + b.weight_;
    auto i = a.factors_.begin();
    auto j = b.factors_.begin();
    while (i != a.factors_.end() || j != b.factors_.end()) {
        if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first))
            f.push_back(*i++);
        else if (i == a.factors_.end() || j->first < i->first)
            f.push_back(*j++);
        else {
            f.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    if (!w_ring_ || f.empty() || f[0].first != 1 || f[0].second < 2)
        return false;
    const std::uint32_t half = f[0].second / 2;
    const bool odd = f[0].second % 2;
    if (f.size() > 1 && f[1].first == 2) {
        f[1].second += half;
        if (odd)
            f[0].second = 1;
        else
            f.erase(f.begin());
    } else if (odd) {
        f[0].second = 1;
        f.insert(f.begin() + 1, {2, half});
    } else {
        f[0] = {2, half};
    }
    mpz_pow_ui(scale.get_mpz_t(), relation_scalar_.get_mpz_t(), half);
    return true;
}

const Presentation::Piece& Presentation::piece(unsigned d) const
{
    std::lock_guard lock(cache_mutex_);
    auto it = cache_.find(d);
    if (it != cache_.end())
        return *it->second;

    auto piece = std::make_unique<Piece>();
    const auto gens = generators_up_to(d);
    std::vector<Monomial::Factor> current;
    // choose exponents for generators from the highest index down
    std::function<void(std::size_t, unsigned)> walk = [&](std::size_t pos, unsigned remaining) {
        if (remaining == 0) {
            Monomial m;
            m.weight_ = d;
            m.factors_.assign(current.rbegin(), current.rend());
            piece->monomials.push_back(std::move(m));
            return;
        }
        if (pos == gens.size())
            return;
        const std::uint32_t g = gens[gens.size() - 1 - pos];
        const unsigned w = weight_of(g);
        unsigned max_e = remaining / w;
        if (w_ring_ && g == 1)
            max_e = std::min(max_e, 1u);
        for (unsigned e = max_e + 1; e-- > 0;) {
            if (e > 0)
                current.emplace_back(g, e);
            walk(pos + 1, remaining - e * w);
            if (e > 0)
                current.pop_back();
        }
    };
    walk(0, d);
    std::sort(piece->monomials.begin(), piece->monomials.end(),
              [](const Monomial& a, const Monomial& b) { return b < a; });
    for (std::uint32_t i = 0; i < piece->monomials.size(); ++i)
        piece->index.emplace(piece->monomials[i], i);
    auto& ref = *piece;
    cache_.emplace(d, std::move(piece));
    return ref;
}

const std::vector<Monomial>& Presentation::basis(unsigned d) const { return piece(d).monomials; }

std::uint32_t Presentation::basis_index(const Monomial& m) const
{
    const auto& p = piece(m.weight());
    auto it = p.index.find(m);
    if (it == p.index.end())
        throw std::invalid_argument("monomial " + m.to_string(symbol_) + " is not in normal form");
    return it->second;
}

bool Presentation::operator==(const Presentation& o) const
{
    return w_ring_ == o.w_ring_ && q_ == o.q_ && symbol_ == o.symbol_ && s_numbers_ == o.s_numbers_ &&
           standard_ == o.standard_ && skipped_ == o.skipped_ && weights_ == o.weights_;
}

std::string Presentation::describe() const
{
    std::ostringstream os;
    if (w_ring_) {
        os << "Z[x1,x2,...]/(x1^2 = " << relation_scalar_.get_str() << " x2)";
    } else if (standard_) {
        os << "Z[" << symbol_ << "k : k >= 1";
        for (auto s : skipped_)
            os << ", k != " << s;
        os << "]";
    } else {
        os << "Z[";
        bool first = true;
        for (const auto& [i, w] : weights_) {
            os << (first ? "" : ", ") << symbol_ << i << " (weight " << w << ")";
            first = false;
        }
        os << "]";
    }
    return os.str();
}

// ---- RingElement ---------------------------------------------------------

RingElement::RingElement(PresentationPtr ring)
    : ring_(std::move(ring))
{
    if (!ring_)
        throw std::invalid_argument("RingElement needs a presentation");
}

RingElement RingElement::constant(PresentationPtr ring, const Integer& c)
{
    RingElement r(std::move(ring));
    r.add_term(Monomial{}, c);
    return r;
}

RingElement RingElement::generator(PresentationPtr ring, std::uint32_t index)
{
    RingElement r(ring);
    r.add_term(ring->generator(index), 1);
    return r;
}

RingElement RingElement::monomial(PresentationPtr ring, const Monomial& m, const Integer& c)
{
    RingElement r(ring);
    auto [s, n] = ring->normalize(m);
    r.add_term(n, s * c);
    return r;
}

void RingElement::add_term(const Monomial& m, const Integer& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

void RingElement::check_same_ring(const RingElement& o) const
{
    if (ring_ != o.ring_ && *ring_ != *o.ring_)
        throw std::invalid_argument("ring elements belong to different presentations");
}

std::optional<unsigned> RingElement::weight() const
{
    if (terms_.empty())
        return std::nullopt;
    const unsigned w = terms_.begin()->first.weight();
    if (terms_.rbegin()->first.weight() != w)
        return std::nullopt;
    return w;
}

bool RingElement::is_homogeneous() const { return is_zero() || weight().has_value(); }

Integer RingElement::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Integer(0) : it->second;
}

RingElement& RingElement::operator+=(const RingElement& o)
{
    check_same_ring(o);
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

RingElement& RingElement::operator-=(const RingElement& o)
{
    check_same_ring(o);
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

RingElement RingElement::operator+(const RingElement& o) const
{
    RingElement r = *this;
    r += o;
    return r;
}

RingElement RingElement::operator-(const RingElement& o) const
{
    RingElement r = *this;
    r -= o;
    return r;
}

RingElement RingElement::operator-() const
{
    RingElement r = *this;
    for (auto& [m, c] : r.terms_)
        c = -c;
    return r;
}

RingElement RingElement::operator*(const Integer& c) const
{
    if (c == 0)
        return RingElement(ring_);
    RingElement r = *this;
    for (auto& [m, v] : r.terms_)
        v *= c;
    return r;
}

RingElement RingElement::operator*(const RingElement& o) const
{
    RingElement r(ring_);
    r.add_product(*this, o);
    return r;
}

RingElement& RingElement::add_product(const RingElement& a, const RingElement& b)
{
    check_same_ring(a);
    check_same_ring(b);
    Monomial m;
    Integer s, t;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            const bool scaled = ring_->multiply_into(ma, mb, m, s);
            auto it = terms_.lower_bound(m);
            if (it == terms_.end() || it->first != m)
                it = terms_.emplace_hint(it, m, 0);
            if (!scaled) {
                mpz_addmul(it->second.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
            } else {
                mpz_mul(t.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
                mpz_addmul(it->second.get_mpz_t(), t.get_mpz_t(), s.get_mpz_t());
            }
            if (it->second == 0)
                terms_.erase(it);
        }
    return *this;
}

RingElement RingElement::pow(unsigned e) const
{
    RingElement result = constant(ring_, 1);
    RingElement base = *this;
    while (e) {
        if (e & 1)
            result = result * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return result;
}

RingElement RingElement::mod_decomposables() const
{
    RingElement r(ring_);
    for (const auto& [m, c] : terms_) {
        if (m.is_one()) {
            r.add_term(m, c);
        } else if (m.is_generator()) {
            if (ring_->is_w_ring() && m.factors()[0].first == 2) {
                const Integer n = abs(ring_->relation_scalar());
                Integer rem = c % n; // sign follows c
                if (2 * rem > n)
                    rem -= n;
                else if (-2 * rem > n)
                    rem += n;
                r.add_term(m, rem);
            } else {
                r.add_term(m, c);
            }
        }
    }
    return r;
}

RingElement RingElement::reduce_mod(const Integer& p) const
{
    RingElement r(ring_);
    for (const auto& [m, c] : terms_) {
        Integer v;
        mpz_fdiv_r(v.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
        r.add_term(m, v);
    }
    return r;
}

std::string RingElement::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!out.empty())
            out += ';';
        out += it->first.to_string(ring_->symbol()) + ':' + it->second.get_str();
    }
    return out;
}

RingElement RingElement::parse(PresentationPtr ring, const std::string& text)
{
    RingElement r(ring);
    if (text == "0")
        return r;
    std::stringstream terms(text);
    std::string term;
    const std::string& sym = ring->symbol();
    while (std::getline(terms, term, ';')) {
        const auto colon = term.rfind(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("term '" + term + "' lacks ':coefficient'");
        Integer c;
        if (c.set_str(term.substr(colon + 1), 10) != 0)
            throw std::invalid_argument("bad coefficient in '" + term + "'");
        const std::string mono = term.substr(0, colon);
        std::vector<Monomial::Factor> factors;
        if (mono != "1") {
            std::stringstream parts(mono);
            std::string f;
            while (std::getline(parts, f, '*')) {
                if (f.compare(0, sym.size(), sym) != 0)
                    throw std::invalid_argument("factor '" + f + "' does not use symbol '" + sym + "'");
                const auto caret = f.find('^');
                try {
                    const auto index = std::stoul(f.substr(sym.size(), caret - sym.size()));
                    const auto e = caret == std::string::npos ? 1ul : std::stoul(f.substr(caret + 1));
                    factors.emplace_back(static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(e));
                } catch (const std::logic_error&) {
                    throw std::invalid_argument("malformed factor '" + f + "'");
                }
            }
        }
        auto [s, m] = ring->normalize(ring->monomial(std::move(factors)));
        r.add_term(m, s * c);
    }
    return r;
}

bool RingElement::operator==(const RingElement& o) const
{
    return (ring_ == o.ring_ || *ring_ == *o.ring_) && terms_ == o.terms_;
}

RingElement normal_form(const PresentationPtr& ring, const std::vector<std::pair<Monomial, Integer>>& raw)
{
    RingElement r(ring);
    for (const auto& [m, c] : raw)
        r += RingElement::monomial(ring, m, c);
    return r;
}

unsigned long long graded_rank(const Presentation& ring, unsigned d) { return ring.basis(d).size(); }

// ---- graded pieces -------------------------------------------------------

std::vector<RingElement> GradedPiece::elements(const PresentationPtr& ring) const
{
    std::vector<RingElement> out;
    for (const auto& row : rows) {
        RingElement e(ring);
        for (const auto& [col, v] : row)
            e += RingElement::monomial(ring, basis.at(col), v);
        out.push_back(std::move(e));
    }
    return out;
}

std::optional<Integer> GradedPiece::index() const
{
    if (prime || rows.size() != basis.size())
        return std::nullopt;
    // echelon with one pivot per column: the index is the product of pivots
    Integer idx = 1;
    for (const auto& row : rows)
        idx *= abs(row.front().second);
    return idx;
}

GradedPiece decomposables_piece(const PresentationPtr& ring, unsigned d, std::optional<std::uint32_t> prime)
{
    if (d < 2)
        throw std::invalid_argument("decomposables_piece: weight must be >= 2");
    GradedPiece piece;
    piece.weight = d;
    piece.prime = prime;
    piece.basis = ring->basis(d);
    const std::size_t n = piece.basis.size();

    // x_i * m spans all products of two positive-weight elements
    std::vector<linalg::ZRow> spanning;
    for (auto g : ring->generators_up_to(d - 1)) {
        const Monomial x = ring->generator(g);
        for (const auto& m : ring->basis(d - x.weight())) {
            auto [s, prod] = ring->multiply(x, m);
            spanning.push_back({{ring->basis_index(prod), s}});
        }
    }
    if (prime) {
        FpEchelon ech(*prime, n);
        for (const auto& row : spanning) {
            Integer v;
            mpz_fdiv_r_ui(v.get_mpz_t(), row[0].second.get_mpz_t(), *prime);
            if (v != 0)
                ech.insert({{row[0].first, static_cast<std::uint32_t>(v.get_ui())}});
        }
        for (const auto& row : ech.rows()) {
            linalg::ZRow z;
            for (const auto& [c, v] : row)
                z.emplace_back(c, Integer(v));
            piece.rows.push_back(std::move(z));
        }
    } else {
        linalg::ZEchelon ech(n);
        for (auto& row : spanning)
            ech.insert(std::move(row));
        piece.rows = ech.rows();
    }
    return piece;
}

Integer s_number(unsigned k, const RingElement& e)
{
    const auto& ring = *e.ring();
    if (k == 0)
        throw std::invalid_argument("s_number: weight must be positive");
    if (!e.is_zero() && e.weight() != k)
        throw std::invalid_argument("s_number: element is not homogeneous of weight " + std::to_string(k));
    Integer scale;
    std::uint32_t index = 0;
    switch (ring.s_numbers()) {
    case SNumbers::w_ring:
        if (k == 2)
            throw std::invalid_argument("s_2 is not determined on the w-ring");
        index = k;
        scale = numth::m(k) * (k > 1 ? numth::m(k - 1) : Integer(1));
        break;
    case SNumbers::unitary:
        index = k;
        scale = -numth::m(k);
        break;
    case SNumbers::none:
        throw std::invalid_argument("s_number: presentation " + ring.describe() + " carries no s-number convention");
    }
    if (!ring.has_generator(index) || ring.weight_of(index) != k)
        return 0;
    return scale * e.coefficient(ring.generator(index));
}

// ---- regularity ------------------------------------------------------------

const DegreeVerdict* InjectivityResult::first_failure() const
{
    for (const auto& d : degrees)
        if (!d.injective)
            return &d;
    return nullptr;
}

namespace {

// Graded pieces of (R / I) (x) F_p up to a weight bound; I grows by extend().
class QuotientTower {
public:
    QuotientTower(PresentationPtr ring, std::uint32_t p, unsigned max_weight)
        : ring_(std::move(ring)), p_(p), max_weight_(max_weight)
    {
        if (!numth::is_prime(Integer(p)))
            throw std::invalid_argument(std::to_string(p) + " is not prime");
        for (unsigned d = 0; d <= max_weight; ++d)
            ideal_.emplace_back(p, ring_->basis(d).size());
    }

    // Checks injectivity of multiplication by e on the current quotient
    // and then adds e to the ideal.
    std::vector<DegreeVerdict> extend(const RingElement& e)
    {
        if (e.ring() != ring_ && *e.ring() != *ring_)
            throw std::invalid_argument("element and ideal live in different presentations");
        const auto w = e.weight();
        if (!w || *w == 0)
            throw std::invalid_argument("regularity checks need homogeneous elements of positive weight");

        std::vector<std::pair<Monomial, std::uint32_t>> factor;
        for (const auto& [m, c] : e.terms()) {
            const auto v = mod_p(c);
            if (v)
                factor.emplace_back(m, v);
        }

        std::vector<DegreeVerdict> verdicts;
        if (*w > max_weight_)
            return verdicts;
        // descending so that I_d is read before I_{d+w} is extended
        for (unsigned d = max_weight_ - *w + 1; d-- > 0;) {
            const auto& source = ring_->basis(d);
            auto& target = ideal_[d + *w];
            DegreeVerdict v;
            v.degree = d;
            for (std::uint32_t j = 0; j < source.size(); ++j) {
                if (ideal_[d].is_pivot(j))
                    continue;
                ++v.quotient_dim;
                FpRow dependency;
                if (!target.insert(product_row(factor, source[j]), {{j, 1}}, &dependency)) {
                    ++v.kernel_dim;
                    if (!v.witness)
                        v.witness = row_element(dependency, source);
                }
            }
            target.clear_tags();
            v.injective = v.kernel_dim == 0;
            verdicts.push_back(std::move(v));
        }
        std::reverse(verdicts.begin(), verdicts.end());
        return verdicts;
    }

    bool contains(const RingElement& e) const
    {
        const auto w = e.weight();
        if (!w)
            return e.is_zero();
        if (*w > max_weight_)
            throw std::invalid_argument("element weight exceeds tower bound");
        FpRow row;
        for (const auto& [m, c] : e.terms())
            if (auto v = mod_p(c))
                row.emplace_back(ring_->basis_index(m), v);
        std::sort(row.begin(), row.end());
        return ideal_[*w].reduce(std::move(row)).empty();
    }

private:
    std::uint32_t mod_p(const Integer& c) const
    {
        return static_cast<std::uint32_t>(mpz_fdiv_ui(c.get_mpz_t(), p_));
    }

    FpRow product_row(const std::vector<std::pair<Monomial, std::uint32_t>>& factor, const Monomial& m) const
    {
        FpRow row;
        row.reserve(factor.size());
        for (const auto& [t, c] : factor) {
            auto [s, prod] = ring_->multiply(t, m);
            const auto v = static_cast<std::uint32_t>(std::uint64_t(c) * mod_p(s) % p_);
            if (v)
                row.emplace_back(ring_->basis_index(prod), v);
        }
        std::sort(row.begin(), row.end());
        // merge collisions produced by the x1^2 rewrite
        FpRow merged;
        for (const auto& [col, v] : row) {
            if (!merged.empty() && merged.back().first == col) {
                merged.back().second = static_cast<std::uint32_t>((merged.back().second + v) % p_);
                if (merged.back().second == 0)
                    merged.pop_back();
            } else {
                merged.emplace_back(col, v);
            }
        }
        return merged;
    }

    RingElement row_element(const FpRow& row, const std::vector<Monomial>& basis) const
    {
        RingElement r(ring_);
        for (const auto& [col, v] : row)
            r += RingElement::monomial(ring_, basis[col], v);
        return r;
    }

    PresentationPtr ring_;
    std::uint32_t p_;
    unsigned max_weight_;
    std::vector<FpEchelon> ideal_;
};

void require_homogeneous(const RingElement& e)
{
    if (e.is_zero() || !e.weight())
        throw std::invalid_argument("element " + e.to_string() + " is not homogeneous of a definite weight");
}

} // namespace

InjectivityResult mult_injective(const RingElement& e, const std::vector<RingElement>& ideal_gens, std::uint32_t p,
                                 unsigned max_weight)
{
    require_homogeneous(e);
    QuotientTower tower(e.ring(), p, max_weight);
    for (const auto& g : ideal_gens) {
        require_homogeneous(g);
        tower.extend(g);
    }
    InjectivityResult result;
    result.degrees = tower.extend(e);
    for (const auto& d : result.degrees)
        result.injective = result.injective && d.injective;
    return result;
}

std::vector<RegularityCell> regular_sequence_check(const std::vector<RingElement>& elems, std::uint32_t p,
                                                   unsigned max_weight)
{
    if (elems.empty())
        throw std::invalid_argument("regular_sequence_check: empty sequence");
    unsigned last = 0;
    for (const auto& e : elems) {
        require_homogeneous(e);
        if (*e.weight() <= last)
            throw std::invalid_argument("regular_sequence_check: weights must be strictly increasing");
        last = *e.weight();
    }
    std::vector<RegularityCell> cells;
    // Each R_d is free on the normal-form monomials, so p is a nonzerodivisor.
    RegularityCell base;
    base.step = 0;
    base.degree = max_weight;
    base.asserted = true;
    cells.push_back(base);

    QuotientTower tower(elems.front().ring(), p, max_weight);
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (auto& v : tower.extend(elems[i])) {
            RegularityCell c;
            c.step = static_cast<unsigned>(i + 1);
            c.degree = v.degree;
            c.passed = v.injective;
            c.quotient_dim = v.quotient_dim;
            c.kernel_dim = v.kernel_dim;
            c.witness = std::move(v.witness);
            cells.push_back(std::move(c));
        }
    }
    return cells;
}

bool in_ideal_mod_p(const RingElement& e, const std::vector<RingElement>& ideal_gens, std::uint32_t p)
{
    if (e.is_zero())
        return true;
    require_homogeneous(e);
    QuotientTower tower(e.ring(), p, *e.weight());
    for (const auto& g : ideal_gens) {
        if (g.is_zero())
            continue;
        require_homogeneous(g);
        tower.extend(g);
    }
    return tower.contains(e);
}

} // namespace cobw::gring
