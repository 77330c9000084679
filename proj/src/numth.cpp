#include "cobw/numth.hpp"

#include <stdexcept>

#include "cobw/errors.hpp"

namespace cobw::numth {

Integer pow(const Integer& base, unsigned long exponent)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

Integer binomial(std::uint64_t n, std::uint64_t k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Integer exact_div(const Integer& a, const Integer& b, const char* what)
{
    if (b == 0)
        throw VerificationError(std::string(what) + ": division by zero");
    Integer q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0)
        throw VerificationError(std::string(what) + ": " + a.get_str() + " is not divisible by " + b.get_str());
    return q;
}

std::string to_string(const Integer& v) { return v.get_str(); }

bool is_prime(const Integer& n)
{
    if (n < 2)
        return false;
    if (n < 4)
        return true;
    if (mpz_even_p(n.get_mpz_t()))
        return false;
    for (Integer d = 3; d * d <= n; d += 2)
        if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()))
            return false;
    return true;
}

std::optional<PrimePower> prime_power(const Integer& n)
{
    if (n < 2)
        throw std::invalid_argument("prime_power: n must be >= 2, got " + n.get_str());
    // smallest prime factor
    Integer p = n;
    if (mpz_even_p(n.get_mpz_t())) {
        p = 2;
    } else {
        for (Integer d = 3; d * d <= n; d += 2) {
            if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
                p = d;
                break;
            }
        }
    }
    Integer rest = n;
    unsigned s = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
        rest /= p;
        ++s;
    }
    if (rest != 1)
        return std::nullopt;
    return PrimePower{p, s};
}

Integer m(std::uint64_t k)
{
    if (k == 0)
        throw std::invalid_argument("m_k is defined for k >= 1");
    auto pp = prime_power(Integer(k) + 1);
    return pp ? pp->prime : Integer(1);
}

Integer binom_gcd(std::uint64_t k)
{
    if (k == 0)
        throw std::invalid_argument("binom_gcd is defined for k >= 1");
    const std::uint64_t n = k + 1;
    // C(n, i+1) = C(n, i) * (n - i) / (i + 1); stop once the gcd is 1.
    Integer c = n;
    Integer g = c;
    for (std::uint64_t i = 1; i < k && g != 1; ++i) {
        c *= n - i;
        c = exact_div(c, Integer(i + 1), "binomial recurrence");
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    return g;
}

FermatSet::FermatSet(const Integer& bound)
    : bound_(bound)
{
    if (bound < 5)
        throw std::invalid_argument("fermat_set: bound must be >= 5, got " + bound.get_str());
    for (unsigned long t = 1;; ++t) {
        Integer candidate = pow(Integer(2), t) + 1;
        if (candidate > bound)
            break;
        if (candidate > 3 && is_prime(candidate))
            primes_.push_back(candidate);
    }
}

bool FermatSet::contains(const Integer& p) const
{
    for (const auto& q : primes_)
        if (q == p)
            return true;
    return false;
}

FermatSet fermat_set(const Integer& bound) { return FermatSet(bound); }

LocalRational::LocalRational(const Integer& num, const Integer& den)
    : value_(num, den)
{
    if (den == 0)
        throw std::invalid_argument("LocalRational: zero denominator");
    value_.canonicalize();
}

LocalRational::LocalRational(const mpq_class& q)
    : value_(q)
{
    value_.canonicalize();
}

std::string LocalRational::to_string() const { return value_.get_str(); }

namespace {

// Strip every factor from P; returns the cofactor's absolute value.
Integer strip_fermat(Integer v, const FermatSet& P)
{
    v = abs(v);
    for (const auto& p : P.primes())
        while (v != 0 && mpz_divisible_p(v.get_mpz_t(), p.get_mpz_t()))
            v /= p;
    return v;
}

} // namespace

bool in_localization(const LocalRational& r, const FermatSet& P)
{
    return strip_fermat(r.den(), P) == 1;
}

bool is_unit_in_localization(const LocalRational& r, const FermatSet& P)
{
    if (r.num() == 0)
        return false;
    return strip_fermat(r.num(), P) == 1 && strip_fermat(r.den(), P) == 1;
}

TwoPowerClass classify_2pow_plus_1(std::uint64_t k)
{
    if (k <= 2 || (k & (k - 1)) != 0)
        return NotApplicable{};
    auto pp = prime_power(Integer(k) + 1);
    if (!pp)
        return NotApplicable{};
    if (k == 8)
        return ExceptionalEight{};
    unsigned ell = 0;
    while ((std::uint64_t(1) << ell) != k)
        ++ell;
    const bool ell_power_of_two = (ell & (ell - 1)) == 0;
    if (!ell_power_of_two || pp->exponent != 1 || !is_prime(pp->prime))
        throw VerificationError("2^" + std::to_string(ell) + " + 1 = " + pp->prime.get_str() + "^" +
                                std::to_string(pp->exponent) + " violates the Fermat classification");
    return FermatCase{ell, 1, pp->prime};
}

} // namespace cobw::numth
