#pragma once

// Constructions specific to the c1-spherical bordism ring (Omega_W, *_q),
// presented as Z[x1, x2, ...]/(x1^2 = (4q+1) x2), and to the formal group
// law F_W over it.
//
// F_W is known exactly only through weight 2 (w11 = -x1, w12 = -2q x2).
// Above weight 2 only its classes modulo decomposables are known, so
// representatives carry that caveat and the Landweber check samples
// decomposable perturbations instead of fixing one lift.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cobw/gring.hpp"
#include "cobw/numth.hpp"
#include "cobw/series.hpp"

namespace cobw::wtheory {

using gring::Integer;
using gring::PresentationPtr;
using gring::RingElement;
using numth::LocalRational;
using series::FormalGroupLaw;

// u + v + sum_k r_k ((u+v)^(k+1) - u^(k+1) - v^(k+1)) / m_k, truncated at weight D.
// r[k] must be homogeneous of weight k (or zero).
FormalGroupLaw law_from_classes(const PresentationPtr& ring, const std::map<unsigned, RingElement>& r, unsigned D);

// The universal law modulo decomposables over Z[a1, a2, ...] (s_k(a_k) = -m_k).
FormalGroupLaw universal_fgl_mod_sq(unsigned D);

// -(1 + (-1)^k (k+1)) / m_{k-1}; throws VerificationError if not integral.
Integer r_coefficient(std::uint64_t k);

// Coefficient of u^(k+1) in [n]_W(u); for k > 2 a class modulo decomposables.
RingElement nseries_coeff(const PresentationPtr& w_ring, const Integer& n, unsigned k);
RingElement nseries_coeff(const Integer& n, unsigned k, const Integer& q);

// x_{p^n - 1}-coefficient of v_n; throws VerificationError if divisible by p.
Integer epsilon(std::uint32_t p, unsigned n, const Integer& q);

struct WFglData {
    Integer q;
    unsigned max_weight = 0;
    RingElement omega11;  // exact
    RingElement omega12;  // exact
    std::map<unsigned, RingElement> r; // r_k classes, k > 2
    FormalGroupLaw representative;     // exact through weight 2
    static constexpr unsigned exact_weight = 2;
};

WFglData w_fgl_representative(const Integer& q, unsigned D);

// ---- Landweber exactness -------------------------------------------------

struct LandweberOptions {
    Integer q = 0;
    std::uint32_t p_max = 5;
    unsigned max_weight = 32;
    unsigned samples = 8;
    std::uint64_t seed = 1;
    unsigned n_max = 0; // 0: every n with p^n - 1 <= max_weight
    // Replace v_1 for the smallest prime by a multiple of that prime.
    bool fault = false;
    unsigned threads = 0; // 0: hardware concurrency
};

struct LandweberCell {
    std::uint32_t p = 0;
    unsigned sample = 0;
    unsigned step = 0;     // n; 0 is multiplication by p
    unsigned degree = 0;
    bool passed = true;
    bool asserted = false;
    std::size_t quotient_dim = 0;
    std::size_t kernel_dim = 0;
    std::optional<RingElement> witness;
};

struct SequenceRecord {
    std::uint32_t p = 0;
    unsigned sample = 0;
    std::vector<RingElement> elements; // v_1, v_2, ... representatives
};

struct RegularityReport {
    LandweberOptions options;
    std::vector<SequenceRecord> sequences;
    std::vector<LandweberCell> cells; // sorted by (p, sample, step, degree)
    bool regular = true;
    // every (p, step, degree) got the same verdict for all samples
    bool perturbation_invariant = true;
};

RegularityReport landweber_verify(const LandweberOptions& options);

// v_n representatives epsilon_n x_{p^n-1} + delta for one prime and sample.
std::vector<RingElement> vn_representatives(const PresentationPtr& w_ring, std::uint32_t p, unsigned max_weight,
                                            unsigned sample, std::uint64_t seed, unsigned n_max = 0);

// ---- Fermat arithmetic ------------------------------------------------------

enum class FermatCase {
    unit_m,            // m_{k-1} = 1
    odd_prime,         // m_{k-1} an odd prime
    two,               // m_{k-1} = 2
    exceptional_eight, // k = 8
};

std::string to_string(FermatCase c);

struct FermatRecord {
    std::uint64_t k = 0;
    Integer m_k, m_k_minus_1;
    Integer a_k; // (1 + (-1)^k (k+1)) / m_{k-1}
    LocalRational c, epsilon;
    FermatCase tag = FermatCase::unit_m;
};

// Throws VerificationError if the identity 1 + (-1)^k (k+1) + c m_k m_{k-1} = eps m_{k-1}
// fails, c is not in Z[P^-1] or eps is not a unit there.
FermatRecord fermat_ck(std::uint64_t k);

struct IntegralSolution {
    Integer c;
    LocalRational epsilon;
};

// Searches c = 0, -1, 1, -2, 2, ... with |c| <= bound. Absence proves nothing.
std::optional<IntegralSolution> integral_ck_search(std::uint64_t k, const Integer& bound);

struct RankRow {
    unsigned degree = 0;
    unsigned long long w_ring_rank = 0;
    unsigned long long polynomial_rank = 0; // Z[x1, x3, x4, ...]
};

// Throws VerificationError on the first weight where the ranks differ.
std::vector<RankRow> wkring_rank_check(unsigned D);

} // namespace cobw::wtheory
