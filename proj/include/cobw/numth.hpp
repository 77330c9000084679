#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace cobw::numth {

using Integer = mpz_class;

struct PrimePower {
    Integer prime;
    unsigned exponent = 0;
};

// gcd of C(k+1, i) for 1 <= i <= k, via the prime-power case split.
Integer m(std::uint64_t k);

// Same value computed directly from the binomial coefficients.
Integer binom_gcd(std::uint64_t k);

// (p, s) with n = p^s, or nullopt. Trial division; n must be >= 2.
std::optional<PrimePower> prime_power(const Integer& n);

bool is_prime(const Integer& n);

// Fermat primes 2^t + 1 that are > 3 and <= bound. Complete only up to bound.
class FermatSet {
public:
    explicit FermatSet(const Integer& bound);

    const Integer& bound() const { return bound_; }
    const std::vector<Integer>& primes() const { return primes_; }
    bool contains(const Integer& p) const;

private:
    Integer bound_;
    std::vector<Integer> primes_;
};

FermatSet fermat_set(const Integer& bound);

// Exact rational in lowest terms with positive denominator.
class LocalRational {
public:
    LocalRational() = default;
    LocalRational(const Integer& num, const Integer& den = 1);
    LocalRational(long v) : LocalRational(Integer(v)) {}
    explicit LocalRational(const mpq_class& q);

    Integer num() const { return value_.get_num(); }
    Integer den() const { return value_.get_den(); }
    const mpq_class& value() const { return value_; }
    bool is_integer() const { return value_.get_den() == 1; }

    LocalRational operator+(const LocalRational& o) const { return LocalRational(mpq_class(value_ + o.value_)); }
    LocalRational operator-(const LocalRational& o) const { return LocalRational(mpq_class(value_ - o.value_)); }
    LocalRational operator*(const LocalRational& o) const { return LocalRational(mpq_class(value_ * o.value_)); }
    LocalRational operator-() const { return LocalRational(mpq_class(-value_)); }
    bool operator==(const LocalRational& o) const { return value_ == o.value_; }

    std::string to_string() const;

private:
    mpq_class value_{0};
};

// r lies in Z[P^-1]: every prime factor of den(r) is in P.
bool in_localization(const LocalRational& r, const FermatSet& P);

// r is a unit of Z[P^-1]: r = +-(product of powers of elements of P).
bool is_unit_in_localization(const LocalRational& r, const FermatSet& P);

// Case split for k = 2^l with k + 1 = p^s.
struct NotApplicable {};
struct ExceptionalEight {};
struct FermatCase {
    unsigned ell = 0;    // k = 2^ell, and ell = 2^n
    unsigned s = 1;
    Integer prime;       // k + 1
};
using TwoPowerClass = std::variant<NotApplicable, ExceptionalEight, FermatCase>;

// Throws VerificationError if k = 2^l, k + 1 = p^s but neither k = 8 nor
// (l a power of two, s = 1) holds.
TwoPowerClass classify_2pow_plus_1(std::uint64_t k);

// Helpers shared by other modules.
Integer binomial(std::uint64_t n, std::uint64_t k);
Integer pow(const Integer& base, unsigned long exponent);
Integer exact_div(const Integer& a, const Integer& b, const char* what);
std::string to_string(const Integer& v);

} // namespace cobw::numth
