#include "cobw/wtheory.hpp"

#include <algorithm>
#include <future>
#include <random>
#include <stdexcept>
#include <thread>

#include "cobw/errors.hpp"

namespace cobw::wtheory {

using series::Series;

namespace {

Integer sign_pow(std::uint64_t k) { return k % 2 ? Integer(-1) : Integer(1); }

// 1 + (-1)^k (k + 1)
Integer fermat_numerator(std::uint64_t k) { return 1 + sign_pow(k) * Integer(k + 1); }

// Fermat primes large enough to cover every prime factor of v.
numth::FermatSet covering_fermat_set(const Integer& v)
{
    Integer bound = abs(v);
    const Integer cap = numth::pow(Integer(2), 32) + 1;
    return numth::FermatSet(bound < 5 ? Integer(5) : (bound > cap ? cap : bound));
}

} // namespace

FormalGroupLaw law_from_classes(const PresentationPtr& ring, const std::map<unsigned, RingElement>& r, unsigned D)
{
    Series s = Series::variable(ring, 2, D, 0) + Series::variable(ring, 2, D, 1);
    for (const auto& [k, rk] : r) {
        if (k == 0 || k > D || rk.is_zero())
            continue;
        const Integer mk = numth::m(k);
        for (unsigned i = 1; i <= k; ++i) {
            const Integer b = numth::exact_div(numth::binomial(k + 1, i), mk, "binomial over m_k");
            s.set({i, k + 1 - i}, rk * b);
        }
    }
    return FormalGroupLaw(std::move(s));
}

FormalGroupLaw universal_fgl_mod_sq(unsigned D)
{
    if (D < 1)
        throw std::invalid_argument("universal_fgl_mod_sq: D must be >= 1");
    auto ring = gring::Presentation::polynomial("a", {}, gring::SNumbers::unitary);
    std::map<unsigned, RingElement> r;
    for (unsigned k = 1; k <= D; ++k)
        r.emplace(k, RingElement::generator(ring, k));
    return law_from_classes(ring, r, D);
}

Integer r_coefficient(std::uint64_t k)
{
    if (k <= 2)
        throw std::invalid_argument("r_coefficient is defined for k > 2");
    return -numth::exact_div(fermat_numerator(k), numth::m(k - 1), "r_k coefficient");
}

RingElement nseries_coeff(const PresentationPtr& w_ring, const Integer& n, unsigned k)
{
    if (!w_ring->is_w_ring())
        throw std::invalid_argument("nseries_coeff needs a w-ring presentation");
    if (n < 0)
        throw std::invalid_argument("nseries_coeff: n must be >= 0");
    const Integer& q = w_ring->q();
    switch (k) {
    case 0:
        return RingElement::constant(w_ring, n);
    case 1:
        return RingElement::generator(w_ring, 1) * Integer(-numth::exact_div(n * (n - 1), 2, "n(n-1)/2"));
    case 2: {
        const Integer a = numth::exact_div(n * (n - 1) * (n - 2), 6, "n(n-1)(n-2)/6");
        const Integer b = numth::exact_div(n * (n - 1) * (n + 1), 3, "n(n-1)(n+1)/3");
        return RingElement::generator(w_ring, 2) * Integer((4 * q + 1) * a - 2 * q * b);
    }
    default: {
        const Integer lead =
            numth::exact_div(numth::pow(n, k + 1) - n, numth::m(k), "(n^(k+1) - n) / m_k");
        return RingElement::generator(w_ring, k) * Integer(lead * r_coefficient(k));
    }
    }
}

RingElement nseries_coeff(const Integer& n, unsigned k, const Integer& q)
{
    return nseries_coeff(gring::Presentation::w_ring(q), n, k);
}

Integer epsilon(std::uint32_t p, unsigned n, const Integer& q)
{
    if (!numth::is_prime(Integer(p)))
        throw std::invalid_argument("epsilon: p must be prime");
    if (n == 0)
        throw std::invalid_argument("epsilon: n must be >= 1");
    const Integer pn = numth::pow(Integer(p), n);
    if (pn - 1 > 1u << 20)
        throw std::invalid_argument("epsilon: p^n too large");
    const auto k = static_cast<unsigned>(pn.get_ui() - 1);
    auto ring = gring::Presentation::w_ring(q);
    const Integer eps = nseries_coeff(ring, Integer(p), k).coefficient(ring->generator(k));
    if (mpz_divisible_ui_p(eps.get_mpz_t(), p))
        throw VerificationError("epsilon_" + std::to_string(n) + " = " + eps.get_str() + " vanishes mod " +
                                std::to_string(p) + " at q = " + q.get_str());
    return eps;
}

WFglData w_fgl_representative(const Integer& q, unsigned D)
{
    if (D < 2)
        throw std::invalid_argument("w_fgl_representative: D must be >= 2");
    auto ring = gring::Presentation::w_ring(q);
    std::map<unsigned, RingElement> r;
    r.emplace(1, -RingElement::generator(ring, 1));
    r.emplace(2, RingElement::generator(ring, 2) * Integer(-2 * q));
    std::map<unsigned, RingElement> higher;
    for (unsigned k = 3; k <= D; ++k) {
        auto rk = RingElement::generator(ring, k) * r_coefficient(k);
        r.emplace(k, rk);
        higher.emplace(k, std::move(rk));
    }
    auto law = law_from_classes(ring, r, D);
    return WFglData{q, D, r.at(1), r.at(2), std::move(higher), std::move(law)};
}

// ---- Landweber ---------------------------------------------------------------

std::vector<RingElement> vn_representatives(const PresentationPtr& w_ring, std::uint32_t p, unsigned max_weight,
                                            unsigned sample, std::uint64_t seed, unsigned n_max)
{
    std::vector<RingElement> out;
    Integer pn = p;
    for (unsigned n = 1; pn - 1 <= max_weight && (n_max == 0 || n <= n_max); ++n, pn *= p) {
        const auto k = static_cast<unsigned>(pn.get_ui() - 1);
        RingElement v = RingElement::generator(w_ring, k) * epsilon(p, n, w_ring->q());
        // weights 1 and 2 are known exactly; sample 0 is the bare class
        if (sample > 0 && k > 2) {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), p, n, sample};
            std::mt19937_64 rng(seq);
            for (const auto& b : gring::decomposables_piece(w_ring, k).elements(w_ring))
                v += b * Integer(static_cast<long>(rng() % 7) - 3);
        }
        out.push_back(std::move(v));
    }
    return out;
}

RegularityReport landweber_verify(const LandweberOptions& options)
{
    if (options.max_weight < 3)
        throw std::invalid_argument("landweber_verify: degree bound must be >= 3");
    if (options.p_max < 2)
        throw std::invalid_argument("landweber_verify: pmax must be >= 2");
    if (options.samples == 0)
        throw std::invalid_argument("landweber_verify: need at least one sample");

    auto ring = gring::Presentation::w_ring(options.q);
    std::vector<std::uint32_t> primes;
    for (std::uint32_t p = 2; p <= options.p_max; ++p)
        if (numth::is_prime(Integer(p)))
            primes.push_back(p);

    RegularityReport report;
    report.options = options;
    for (auto p : primes)
        for (unsigned s = 0; s < options.samples; ++s) {
            SequenceRecord rec{p, s, vn_representatives(ring, p, options.max_weight, s, options.seed, options.n_max)};
            if (options.fault && p == primes.front())
                rec.elements.front() = rec.elements.front() * Integer(p);
            report.sequences.push_back(std::move(rec));
        }

    const auto run = [&](const SequenceRecord& rec) {
        std::vector<LandweberCell> cells;
        for (auto& c : gring::regular_sequence_check(rec.elements, rec.p, options.max_weight)) {
            LandweberCell cell;
            cell.p = rec.p;
            cell.sample = rec.sample;
            cell.step = c.step;
            cell.degree = c.degree;
            cell.passed = c.passed;
            cell.asserted = c.asserted;
            cell.quotient_dim = c.quotient_dim;
            cell.kernel_dim = c.kernel_dim;
            cell.witness = std::move(c.witness);
            cells.push_back(std::move(cell));
        }
        return cells;
    };

    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::vector<LandweberCell>> results(report.sequences.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < report.sequences.size(); ++i)
            results[i] = run(report.sequences[i]);
    } else {
        // chains are independent; each slot is written by exactly one task
        std::size_t next = 0;
        while (next < report.sequences.size()) {
            std::vector<std::future<void>> batch;
            for (unsigned t = 0; t < threads && next < report.sequences.size(); ++t, ++next)
                batch.push_back(std::async(std::launch::async, [&, i = next] { results[i] = run(report.sequences[i]); }));
            for (auto& f : batch)
                f.get();
        }
    }
    for (auto& r : results)
        for (auto& c : r)
            report.cells.push_back(std::move(c));
    std::stable_sort(report.cells.begin(), report.cells.end(), [](const LandweberCell& a, const LandweberCell& b) {
        return std::tie(a.p, a.sample, a.step, a.degree) < std::tie(b.p, b.sample, b.step, b.degree);
    });

    std::map<std::tuple<std::uint32_t, unsigned, unsigned>, bool> verdicts;
    for (const auto& c : report.cells) {
        report.regular = report.regular && c.passed;
        auto [it, inserted] = verdicts.emplace(std::make_tuple(c.p, c.step, c.degree), c.passed);
        if (!inserted && it->second != c.passed)
            report.perturbation_invariant = false;
    }
    return report;
}

// ---- Fermat ----------------------------------------------------------------------

std::string to_string(FermatCase c)
{
    switch (c) {
    case FermatCase::unit_m:
        return "m_{k-1}=1";
    case FermatCase::odd_prime:
        return "odd prime";
    case FermatCase::two:
        return "m_{k-1}=2";
    case FermatCase::exceptional_eight:
        return "k=8";
    }
    return "?";
}

FermatRecord fermat_ck(std::uint64_t k)
{
    if (k <= 2)
        throw std::invalid_argument("fermat_ck is defined for k > 2");
    FermatRecord rec;
    rec.k = k;
    rec.m_k = numth::m(k);
    rec.m_k_minus_1 = numth::m(k - 1);
    const Integer numerator = fermat_numerator(k);
    rec.a_k = numth::exact_div(numerator, rec.m_k_minus_1, "A_k");
    rec.epsilon = LocalRational(1);

    if (k == 8) {
        rec.tag = FermatCase::exceptional_eight;
        rec.c = LocalRational(0);
        rec.epsilon = LocalRational(5);
    } else if (rec.m_k_minus_1 == 1) {
        rec.tag = FermatCase::unit_m;
        rec.c = LocalRational(numth::exact_div(-sign_pow(k) * Integer(k + 1), rec.m_k, "(k+1)/m_k"));
    } else if (rec.m_k_minus_1 != 2) {
        rec.tag = FermatCase::odd_prime;
        const auto pp = numth::prime_power(Integer(k));
        if (!pp || pp->prime != rec.m_k_minus_1)
            throw VerificationError("k = " + std::to_string(k) + " should be a power of m_{k-1}");
        const Integer top = numth::pow(pp->prime, pp->exponent - 1) + 1;
        rec.c = LocalRational(numth::exact_div(top, rec.m_k, "(p^(s-1)+1)/m_k"));
    } else {
        rec.tag = FermatCase::two;
        unsigned ell = 0;
        while ((std::uint64_t(1) << ell) < k)
            ++ell;
        if ((std::uint64_t(1) << ell) != k)
            throw VerificationError("m_{k-1} = 2 but k = " + std::to_string(k) + " is not a power of two");
        if (rec.m_k != 1 && !std::holds_alternative<numth::FermatCase>(numth::classify_2pow_plus_1(k)))
            throw VerificationError("k + 1 = " + std::to_string(k + 1) + " is neither prime-free nor a Fermat prime");
        rec.c = LocalRational(-numth::pow(Integer(2), ell - 1), rec.m_k);
    }

    const LocalRational lhs =
        LocalRational(numerator) + rec.c * LocalRational(rec.m_k) * LocalRational(rec.m_k_minus_1);
    const LocalRational rhs = rec.epsilon * LocalRational(rec.m_k_minus_1);
    if (!(lhs == rhs))
        throw VerificationError("identity fails at k = " + std::to_string(k) + ": " + lhs.to_string() +
                                " != " + rhs.to_string());
    const auto P = covering_fermat_set(Integer(k + 1));
    if (!numth::in_localization(rec.c, P))
        throw VerificationError("c_" + std::to_string(k) + " = " + rec.c.to_string() + " is not in Z[P^-1]");
    if (!numth::is_unit_in_localization(rec.epsilon, P))
        throw VerificationError("epsilon_" + std::to_string(k) + " = " + rec.epsilon.to_string() +
                                " is not a unit of Z[P^-1]");
    return rec;
}

std::optional<IntegralSolution> integral_ck_search(std::uint64_t k, const Integer& bound)
{
    if (k <= 2)
        throw std::invalid_argument("integral_ck_search is defined for k > 2");
    if (bound < 0)
        throw std::invalid_argument("integral_ck_search: bound must be >= 0");
    const Integer mk = numth::m(k);
    const Integer a = numth::exact_div(fermat_numerator(k), numth::m(k - 1), "A_k");
    for (Integer step = 0; step <= bound; ++step) {
        for (const Integer& c : {Integer(-step), Integer(step)}) {
            const Integer eps = a + c * mk;
            if (eps != 0 && numth::is_unit_in_localization(LocalRational(eps), covering_fermat_set(eps)))
                return IntegralSolution{c, LocalRational(eps)};
            if (step == 0)
                break;
        }
    }
    return std::nullopt;
}

std::vector<RankRow> wkring_rank_check(unsigned D)
{
    auto w = gring::Presentation::w_ring(0);
    auto poly = gring::Presentation::polynomial("x", {2});
    std::vector<RankRow> rows;
    for (unsigned d = 0; d <= D; ++d) {
        RankRow row{d, gring::graded_rank(*w, d), gring::graded_rank(*poly, d)};
        if (row.w_ring_rank != row.polynomial_rank)
            throw VerificationError("graded ranks differ at weight " + std::to_string(d));
        rows.push_back(row);
    }
    return rows;
}

} // namespace cobw::wtheory
