#pragma once

// Weight-truncated power series over a graded ring.
//
// Every series variable carries weight -1 (cohomological degree 2). A series
// of degree s stores, for the monomial u1^e1 ... un^en, a coefficient that is
// homogeneous of weight |e| - s, and keeps only coefficients of weight at most
// max_weight. Formal group laws, n-series and isomorphisms all have degree 1,
// so the coefficient of u^i v^j has weight i + j - 1. Because weights are
// never negative, products and substitutions computed under this truncation
// are exact in every weight they keep.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cobw/gring.hpp"

namespace cobw::series {

using gring::Integer;
using gring::PresentationPtr;
using gring::RingElement;

// Coefficient arithmetic: exact, or in R / J^2 after every product.
enum class Reduction { exact, mod_decomposables };

class Series {
public:
    using Exponents = std::vector<std::uint32_t>;

    Series(PresentationPtr ring, unsigned variables, unsigned max_weight, int degree = 1);

    // The series u_index (0-based variable index).
    static Series variable(PresentationPtr ring, unsigned variables, unsigned max_weight, unsigned index);
    // A ring element as a series with only a constant term.
    static Series constant(const RingElement& c, unsigned variables, unsigned max_weight);

    const PresentationPtr& ring() const { return ring_; }
    unsigned variables() const { return variables_; }
    unsigned max_weight() const { return max_weight_; }
    int degree() const { return degree_; }
    const std::map<Exponents, RingElement>& terms() const { return terms_; }

    RingElement coefficient(const Exponents& e) const;
    // Stores c at e after checking its weight; silently drops terms above the truncation.
    void set(const Exponents& e, RingElement c);

    Series operator+(const Series& o) const;
    Series operator-(const Series& o) const;
    Series operator-() const;
    bool operator==(const Series& o) const;

    Series multiply(const Series& o, Reduction red = Reduction::exact) const;
    Series scale(const RingElement& c, Reduction red = Reduction::exact) const;
    Series pow(unsigned k, Reduction red = Reduction::exact) const;
    Series reduced(Reduction red) const;
    Series truncated(unsigned max_weight) const;

    // Coefficient weight of exponent e for this series.
    long weight_of(const Exponents& e) const;

private:
    void check_compatible(const Series& o) const;

    PresentationPtr ring_;
    unsigned variables_;
    unsigned max_weight_;
    int degree_;
    std::map<Exponents, RingElement> terms_;
};

// One-variable series of degree 1: u^i has a coefficient of weight i - 1.
class TruncatedSeries1 {
public:
    explicit TruncatedSeries1(Series s);
    static TruncatedSeries1 zero(PresentationPtr ring, unsigned max_weight);
    static TruncatedSeries1 identity(PresentationPtr ring, unsigned max_weight);
    // coefficients[i - 1] is the coefficient of u^i.
    static TruncatedSeries1 from_coefficients(PresentationPtr ring, unsigned max_weight,
                                              const std::vector<RingElement>& coefficients);

    const Series& series() const { return s_; }
    const PresentationPtr& ring() const { return s_.ring(); }
    unsigned max_weight() const { return s_.max_weight(); }
    RingElement coefficient(unsigned i) const { return s_.coefficient({i}); }
    bool operator==(const TruncatedSeries1& o) const { return s_ == o.s_; }

    std::string to_string() const;

private:
    Series s_;
};

// Two-variable degree-1 series that is unital and commutative; associativity
// is a property checked by check_axioms, since several laws used here are
// group laws only modulo decomposables.
class FormalGroupLaw {
public:
    explicit FormalGroupLaw(Series s);

    static FormalGroupLaw additive(PresentationPtr ring, unsigned max_weight);
    // u + v + c uv with c homogeneous of weight 1.
    static FormalGroupLaw multiplicative(const RingElement& c, unsigned max_weight);

    const Series& series() const { return s_; }
    const PresentationPtr& ring() const { return s_.ring(); }
    unsigned max_weight() const { return s_.max_weight(); }
    RingElement coefficient(unsigned i, unsigned j) const { return s_.coefficient({i, j}); }

private:
    Series s_;
};

struct AxiomVerdict {
    bool passed = true;
    std::string axiom;                     // first failing axiom, empty on success
    std::vector<std::uint32_t> exponent;   // first failing coefficient
    std::string detail;
};

// F(A, B) for series A, B in the same variables, each of degree 1.
Series substitute(const FormalGroupLaw& F, const Series& a, const Series& b, Reduction red = Reduction::exact);
// g(h(u)).
TruncatedSeries1 compose(const TruncatedSeries1& g, const TruncatedSeries1& h, Reduction red = Reduction::exact);

AxiomVerdict check_axioms(const FormalGroupLaw& F, bool mod_decomposables);

TruncatedSeries1 n_series(const FormalGroupLaw& F, unsigned n, Reduction red = Reduction::exact);

// Coefficient of u^(p^n) in [p](u). Throws std::out_of_range when p^n - 1
// exceeds the truncation.
RingElement vn(const FormalGroupLaw& F, std::uint32_t p, unsigned n, Reduction red = Reduction::exact);

// g(u) = lambda u + ..., lambda = +-1.
class SeriesIso {
public:
    explicit SeriesIso(TruncatedSeries1 g);

    const TruncatedSeries1& series() const { return g_; }
    int lambda() const { return lambda_; }
    TruncatedSeries1 inverse() const;
    // this after other: u -> g(other(u)).
    SeriesIso after(const SeriesIso& other) const;

private:
    TruncatedSeries1 g_;
    int lambda_;
};

// g(F(g^-1(u), g^-1(v))).
FormalGroupLaw apply_iso(const FormalGroupLaw& F, const SeriesIso& g, Reduction red = Reduction::exact);

struct ShapeVerdict {
    bool passed = true;
    std::optional<unsigned> offending_exponent;
};

// Over R / (p, v_1, ..., v_{n-1}) the p-series is a series in u^(p^n):
// every coefficient of u^i with p^n not dividing i lies in that ideal.
ShapeVerdict p_typical_shape(const FormalGroupLaw& F, std::uint32_t p, unsigned n);

// r_k with F = u + v + sum r_k ((u+v)^(k+1) - u^(k+1) - v^(k+1)) / m_k mod J^2.
// Throws std::domain_error naming the first (i, j) that admits no solution.
std::map<unsigned, RingElement> classify_mod_decomposables(const FormalGroupLaw& F);

} // namespace cobw::series
