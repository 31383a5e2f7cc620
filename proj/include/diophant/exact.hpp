#pragma once

// Exact arithmetic layer: arbitrary-precision integers and rationals (GMP),
// closed rational intervals, integer floor-powers, exact power comparison,
// and certified natural-log enclosures.
//
// Every non-integer real quantity in this project lives in a RatInterval
// whose endpoints are exact rationals, so enclosure soundness is purely a
// matter of monotonicity arguments -- no rounding ever happens.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace diophant {

using BigInt = mpz_class;
using Rat = mpq_class;

// Thrown when a sweep or construction would exceed an explicit resource cap.
class budget_error : public std::runtime_error {
public:
    budget_error(const std::string& what, unsigned long long attempted)
        : std::runtime_error(what), attempted_(attempted) {}
    unsigned long long attempted() const { return attempted_; }

private:
    unsigned long long attempted_;
};

// Canonical rational: gcd(|num|, den) == 1, den > 0.  mpq_class arithmetic
// preserves canonical form, so this is only needed at construction sites.
Rat make_rat(const BigInt& num, const BigInt& den);
Rat rat_from_long(long num, long den = 1);

// Base-10 integer parsing (the gmpxx string constructor auto-detects bases,
// which turns leading zeros into octal).
BigInt parse_bigint(const std::string& text);

// Parses "p/q", "p", or a plain decimal like "0.25" into an exact rational.
Rat parse_rat(const std::string& text);

// "p/q" (or "p" when q == 1).
std::string rational_string(const Rat& x);

// Deterministic decimal rendering, truncated toward zero at `significant`
// digits.  Switches to scientific notation outside [1e-6, 1e18) so output
// stays bounded even for astronomically large convergent denominators.
std::string decimal_string(const Rat& x, std::size_t significant = 20);

std::size_t decimal_digits(const BigInt& x);

struct RatInterval {
    Rat lo, hi;

    RatInterval() : lo(0), hi(0) {}
    explicit RatInterval(const Rat& point) : lo(point), hi(point) {}
    RatInterval(const Rat& lo_, const Rat& hi_);

    static RatInterval ordered(const Rat& a, const Rat& b);

    bool is_point() const { return lo == hi; }
    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }

    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool contains(const RatInterval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool intersects(const RatInterval& o) const { return lo <= o.hi && o.lo <= hi; }

    // Certified order: true only when every point of *this relates to every
    // point of `o` as stated.
    bool certainly_less(const RatInterval& o) const { return hi < o.lo; }
    bool certainly_greater(const RatInterval& o) const { return lo > o.hi; }
    bool certainly_less(const Rat& r) const { return hi < r; }
    bool certainly_greater(const Rat& r) const { return lo > r; }
    bool certainly_le(const Rat& r) const { return hi <= r; }
    bool certainly_ge(const Rat& r) const { return lo >= r; }

    RatInterval operator-() const { return RatInterval(-hi, -lo); }
    RatInterval operator+(const RatInterval& o) const { return RatInterval(lo + o.lo, hi + o.hi); }
    RatInterval operator-(const RatInterval& o) const { return RatInterval(lo - o.hi, hi - o.lo); }
    RatInterval operator*(const RatInterval& o) const;
    RatInterval operator+(const Rat& r) const { return RatInterval(lo + r, hi + r); }
    RatInterval operator-(const Rat& r) const { return RatInterval(lo - r, hi - r); }
    RatInterval operator*(const Rat& r) const;

    // Requires 0 strictly outside [lo, hi].
    RatInterval reciprocal() const;
    RatInterval operator/(const RatInterval& o) const { return *this * o.reciprocal(); }

    static RatInterval hull(const RatInterval& a, const RatInterval& b);
};

RatInterval abs(const RatInterval& a);
RatInterval min(const RatInterval& a, const RatInterval& b);
RatInterval max(const RatInterval& a, const RatInterval& b);

// floor(sqrt(x)) and floor(x^(1/n)) for nonnegative integers.
BigInt isqrt(const BigInt& x);
BigInt iroot(const BigInt& x, unsigned long n);

// The unique r with r^v <= q^u < (r+1)^v for gamma = u/v, i.e. floor(q^gamma).
// No floating point anywhere: q^u is formed exactly, then the integer v-th
// root is taken.  Rejects q < 1 and gamma <= 0.
BigInt floor_pow(const BigInt& q, const Rat& gamma);

// Exact ordering of a^e1 vs b^e2 for positive rationals.  Cheap bit-length
// bounds decide most cases; otherwise falls back to exact cross-multiplied
// expansion.
std::strong_ordering pow_compare(const Rat& a, unsigned long e1, const Rat& b, unsigned long e2);

// Encloses sqrt(x) for x >= 0 with absolute width <= 2^-bits.
RatInterval sqrt_enclose(const Rat& x, unsigned bits);

// Certified natural logarithm.  Output contains ln(y) for every y in the
// input; width <= 2^-bits * max(1, |ln x|).  Input must be strictly positive.
RatInterval log_enclose(const RatInterval& x, unsigned bits = 96);
RatInterval log_enclose_rat(const Rat& x, unsigned bits = 96);

// Enclosure of ln 2 with width <= 2^-bits (cached per precision).
RatInterval ln2_enclose(unsigned bits);

}  // namespace diophant
