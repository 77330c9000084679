#pragma once

// Graded commutative rings given by weighted generators.
//
// Weights are positive integers: generator x_k of the cobordism rings has
// weight k, which stands for cohomological degree -2k. Two kinds of
// presentation exist:
//
//   free      Z[generators], each generator with its own weight;
//   w-ring    Z[x1, x2, x3, ...] / (x1^2 = (4q+1) x2), weight(x_k) = k.
//
// In a w-ring every element is kept in normal form, i.e. the exponent of x1
// is 0 or 1. Monomials within one weight are ordered graded-lexicographically
// with higher generator indices more significant; this fixes matrix layouts
// and makes every witness deterministic.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cobw/numth.hpp"

namespace cobw::gring {

using numth::Integer;

class Monomial {
public:
    using Factor = std::pair<std::uint32_t, std::uint32_t>; // (generator index, exponent)

    Monomial() = default;

    const std::vector<Factor>& factors() const { return factors_; }
    unsigned weight() const { return weight_; }
    std::uint32_t exponent(std::uint32_t index) const;
    bool is_one() const { return factors_.empty(); }
    // Single generator to the first power.
    bool is_generator() const { return factors_.size() == 1 && factors_[0].second == 1; }
    // Number of generator factors counted with multiplicity.
    unsigned length() const;

    std::string to_string(const std::string& symbol) const;

    friend bool operator==(const Monomial& a, const Monomial& b)
    {
        return a.weight_ == b.weight_ && a.factors_ == b.factors_;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
    friend bool operator<(const Monomial& a, const Monomial& b);

    std::size_t hash() const;

private:
    friend class Presentation;
    std::vector<Factor> factors_; // sorted by index, exponents > 0
    unsigned weight_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

// How s-numbers normalise the generator of each weight.
enum class SNumbers {
    none,
    unitary,  // s_k(a_k) = -m_k
    w_ring,   // s_k(x_k) = +m_k m_{k-1}
};

class Presentation;
using PresentationPtr = std::shared_ptr<const Presentation>;

class Presentation {
public:
    // Z[x1, x2, ...]/(x1^2 = (4q+1) x2).
    static PresentationPtr w_ring(const Integer& q);
    // Z[g_k : k >= 1, k not skipped], weight(g_k) = k.
    static PresentationPtr polynomial(std::string symbol, std::set<std::uint32_t> skipped = {},
                                      SNumbers s_numbers = SNumbers::none);
    // Z[g_i : i in weights], with the given weights.
    static PresentationPtr free(std::string symbol, std::map<std::uint32_t, unsigned> weights);

    bool is_w_ring() const { return w_ring_; }
    const Integer& q() const { return q_; }
    // 4q + 1 for a w-ring.
    const Integer& relation_scalar() const { return relation_scalar_; }
    const std::string& symbol() const { return symbol_; }
    SNumbers s_numbers() const { return s_numbers_; }

    bool has_generator(std::uint32_t index) const;
    unsigned weight_of(std::uint32_t index) const;
    std::vector<std::uint32_t> generators_up_to(unsigned weight) const;

    // Builds a monomial without normalising it (x1^2 is representable).
    Monomial monomial(std::vector<Monomial::Factor> factors) const;
    Monomial generator(std::uint32_t index, std::uint32_t exponent = 1) const;
    bool is_normal(const Monomial& m) const;

    // Rewrites x1^e to x1^(e mod 2) ((4q+1) x2)^(e div 2); identity for free rings.
    std::pair<Integer, Monomial> normalize(const Monomial& m) const;
    // Product of two monomials followed by normalize().
    std::pair<Integer, Monomial> multiply(const Monomial& a, const Monomial& b) const;
    // Same, writing into out (reusing its storage). Returns false when the
    // scalar is 1, in which case scale is left untouched.
    bool multiply_into(const Monomial& a, const Monomial& b, Monomial& out, Integer& scale) const;

    // Normal-form monomials of weight d, in decreasing monomial order.
    const std::vector<Monomial>& basis(unsigned d) const;
    // Position of a normal-form monomial inside basis(weight()).
    std::uint32_t basis_index(const Monomial& m) const;

    bool operator==(const Presentation& o) const;
    bool operator!=(const Presentation& o) const { return !(*this == o); }

    std::string describe() const;

private:
    Presentation() = default;

    struct Piece {
        std::vector<Monomial> monomials;
        std::unordered_map<Monomial, std::uint32_t, MonomialHash> index;
    };
    const Piece& piece(unsigned d) const;

    bool w_ring_ = false;
    Integer q_ = 0;
    Integer relation_scalar_ = 1;
    std::string symbol_ = "x";
    SNumbers s_numbers_ = SNumbers::none;
    // Either an explicit generator table or "every index not skipped".
    bool standard_ = true;
    std::set<std::uint32_t> skipped_;
    std::map<std::uint32_t, unsigned> weights_;

    mutable std::mutex cache_mutex_;
    mutable std::map<unsigned, std::unique_ptr<Piece>> cache_;
};

class RingElement {
public:
    using Terms = std::map<Monomial, Integer>;

    explicit RingElement(PresentationPtr ring);

    static RingElement constant(PresentationPtr ring, const Integer& c);
    static RingElement generator(PresentationPtr ring, std::uint32_t index);
    static RingElement monomial(PresentationPtr ring, const Monomial& m, const Integer& c = 1);

    const PresentationPtr& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // Common weight of all terms; nullopt for zero or inhomogeneous elements.
    std::optional<unsigned> weight() const;
    bool is_homogeneous() const;
    Integer coefficient(const Monomial& m) const;

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator-() const;
    RingElement operator*(const RingElement& o) const;
    RingElement operator*(const Integer& c) const;
    RingElement& operator+=(const RingElement& o);
    RingElement& operator-=(const RingElement& o);
    // *this += a * b without building the product separately.
    RingElement& add_product(const RingElement& a, const RingElement& b);
    RingElement pow(unsigned e) const;

    // Image in R / J^2 where J is the ideal of positive-weight elements.
    // Products of generators vanish; in a w-ring the class of c x2 is taken
    // modulo 4q+1 (the decomposable x1*x1), with a symmetric representative.
    RingElement mod_decomposables() const;
    // Coefficients reduced into [0, p).
    RingElement reduce_mod(const Integer& p) const;

    // Canonical form "x1*x3:-3;x2^2:1", terms in decreasing monomial order;
    // "0" for zero and "1:c" for a constant term.
    std::string to_string() const;
    static RingElement parse(PresentationPtr ring, const std::string& text);

    bool operator==(const RingElement& o) const;
    bool operator!=(const RingElement& o) const { return !(*this == o); }

private:
    void add_term(const Monomial& m, const Integer& c);
    void check_same_ring(const RingElement& o) const;

    PresentationPtr ring_;
    Terms terms_;
};

// Normal form of an arbitrary integer combination of (possibly non-normal) monomials.
RingElement normal_form(const PresentationPtr& ring, const std::vector<std::pair<Monomial, Integer>>& raw);

unsigned long long graded_rank(const Presentation& ring, unsigned d);

// Submodule of the weight-d piece, as rows over basis(d).
struct GradedPiece {
    unsigned weight = 0;
    std::vector<Monomial> basis;
    std::optional<std::uint32_t> prime; // nullopt: a Z-lattice basis
    std::vector<std::vector<std::pair<std::uint32_t, Integer>>> rows;

    std::size_t rank() const { return rows.size(); }
    std::vector<RingElement> elements(const PresentationPtr& ring) const;
    // Index of the lattice inside Z^basis when it has full rank; nullopt otherwise.
    std::optional<Integer> index() const;
};

// Span of all products a*b with a, b homogeneous of positive weight and
// weight(a) + weight(b) = d; reduced to a lattice basis (prime = nullopt)
// or an F_p echelon basis.
GradedPiece decomposables_piece(const PresentationPtr& ring, unsigned d,
                                std::optional<std::uint32_t> prime = std::nullopt);

// s_k(e): coefficient of the weight-k generator scaled by its s-number.
Integer s_number(unsigned k, const RingElement& e);

// ---- regularity over F_p ----------------------------------------------

struct DegreeVerdict {
    unsigned degree = 0;          // source weight d
    bool injective = true;
    std::size_t quotient_dim = 0; // dim of (R / I)_d over F_p
    std::size_t kernel_dim = 0;
    std::optional<RingElement> witness; // nonzero in (R / I)_d, killed by e
};

struct InjectivityResult {
    bool injective = true;
    std::vector<DegreeVerdict> degrees;
    // First failing degree's witness, if any.
    const DegreeVerdict* first_failure() const;
};

// Checks that multiplication by e is injective on (R / (ideal_gens)) (x) F_p
// in every source weight d with d + weight(e) <= max_weight.
InjectivityResult mult_injective(const RingElement& e, const std::vector<RingElement>& ideal_gens,
                                 std::uint32_t p, unsigned max_weight);

struct RegularityCell {
    unsigned step = 0;   // 0 is multiplication by p on R itself
    unsigned degree = 0;
    bool passed = true;
    bool asserted = false; // true when the verdict follows from freeness, not from a rank computation
    std::size_t quotient_dim = 0;
    std::size_t kernel_dim = 0;
    std::optional<RingElement> witness;
};

// (p, elems[0], elems[1], ...) regular up to max_weight. Weights must be increasing.
std::vector<RegularityCell> regular_sequence_check(const std::vector<RingElement>& elems, std::uint32_t p,
                                                   unsigned max_weight);

// Graded ideal membership of a homogeneous element over F_p.
bool in_ideal_mod_p(const RingElement& e, const std::vector<RingElement>& ideal_gens, std::uint32_t p);

} // namespace cobw::gring
