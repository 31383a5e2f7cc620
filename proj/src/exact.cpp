#include "diophant/exact.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace diophant {

Rat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("make_rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat rat_from_long(long num, long den) { return make_rat(BigInt(num), BigInt(den)); }

BigInt parse_bigint(const std::string& text) {
    BigInt v;
    if (text.empty() || mpz_set_str(v.get_mpz_t(), text.c_str(), 10) != 0)
        throw std::invalid_argument("not a base-10 integer: '" + text + "'");
    return v;
}

Rat parse_rat(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_rat: empty string");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        return make_rat(parse_bigint(text.substr(0, slash)), parse_bigint(text.substr(slash + 1)));
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        std::size_t frac = text.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+")
            throw std::invalid_argument("parse_rat: bad decimal '" + text + "'");
        BigInt num = parse_bigint(digits);
        BigInt den(1);
        mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(frac));
        return make_rat(num, den);
    }
    return make_rat(parse_bigint(text), BigInt(1));
}

std::string rational_string(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::size_t decimal_digits(const BigInt& x) {
    return mpz_sizeinbase(x.get_mpz_t(), 10);
}

namespace {

// floor(log10(|x|)) for x != 0, exact.
long floor_log10_abs(const Rat& x) {
    BigInt n = ::abs(x.get_num());
    const BigInt& d = x.get_den();
    long est = static_cast<long>(decimal_digits(n)) - static_cast<long>(decimal_digits(d));
    // sizeinbase can overestimate each digit count by one; fix up by exact
    // comparison against powers of ten.
    for (long e = est - 2; e <= est + 2; ++e) {
        BigInt p10;
        mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(e >= 0 ? e : -e));
        // compare |x| against 10^e and 10^(e+1)
        bool ge_low = (e >= 0) ? (n >= d * p10) : (n * p10 >= d);
        BigInt p10n;
        long e1 = e + 1;
        mpz_ui_pow_ui(p10n.get_mpz_t(), 10, static_cast<unsigned long>(e1 >= 0 ? e1 : -e1));
        bool lt_high = (e1 >= 0) ? (n < d * p10n) : (n * p10n < d);
        if (ge_low && lt_high) return e;
    }
    throw std::logic_error("floor_log10_abs: estimate failed");
}

}  // namespace

std::string decimal_string(const Rat& x, std::size_t significant) {
    if (significant == 0) significant = 1;
    if (x == 0) return "0";
    bool neg = x < 0;
    Rat a = neg ? Rat(-x) : x;
    long e = floor_log10_abs(a);  // 10^e <= a < 10^(e+1)
    // mantissa digits: floor(a * 10^(significant-1-e)), truncated toward zero
    long shift = static_cast<long>(significant) - 1 - e;
    BigInt scaled;
    {
        BigInt p10;
        mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift >= 0 ? shift : -shift));
        if (shift >= 0)
            mpz_fdiv_q(scaled.get_mpz_t(), BigInt(a.get_num() * p10).get_mpz_t(), a.get_den().get_mpz_t());
        else
            mpz_fdiv_q(scaled.get_mpz_t(), a.get_num().get_mpz_t(), BigInt(a.get_den() * p10).get_mpz_t());
    }
    std::string digits = scaled.get_str();
    // Exact powers of ten can round the digit count up; renormalize.
    if (digits.size() > significant) {
        e += static_cast<long>(digits.size() - significant);
        digits.resize(significant);
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();

    std::string out = neg ? "-" : "";
    if (e >= -6 && e < 18) {
        if (e >= 0) {
            if (static_cast<std::size_t>(e) + 1 >= digits.size()) {
                out += digits;
                out.append(static_cast<std::size_t>(e) + 1 - digits.size(), '0');
            } else {
                out += digits.substr(0, static_cast<std::size_t>(e) + 1) + "." +
                       digits.substr(static_cast<std::size_t>(e) + 1);
            }
        } else {
            out += "0.";
            out.append(static_cast<std::size_t>(-e) - 1, '0');
            out += digits;
        }
    } else {
        out += digits.substr(0, 1);
        if (digits.size() > 1) out += "." + digits.substr(1);
        out += "e" + std::to_string(e);
    }
    return out;
}

RatInterval::RatInterval(const Rat& lo_, const Rat& hi_) : lo(lo_), hi(hi_) {
    if (lo > hi) throw std::invalid_argument("RatInterval: lo > hi");
}

RatInterval RatInterval::ordered(const Rat& a, const Rat& b) {
    return a <= b ? RatInterval(a, b) : RatInterval(b, a);
}

RatInterval RatInterval::operator*(const RatInterval& o) const {
    Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    return RatInterval(std::min({a, b, c, d}), std::max({a, b, c, d}));
}

RatInterval RatInterval::operator*(const Rat& r) const {
    if (r >= 0) return RatInterval(lo * r, hi * r);
    return RatInterval(hi * r, lo * r);
}

RatInterval RatInterval::reciprocal() const {
    if (lo <= 0 && hi >= 0) throw std::domain_error("RatInterval::reciprocal: interval contains 0");
    return RatInterval(1 / hi, 1 / lo);
}

RatInterval RatInterval::hull(const RatInterval& a, const RatInterval& b) {
    return RatInterval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

RatInterval abs(const RatInterval& a) {
    if (a.lo >= 0) return a;
    if (a.hi <= 0) return -a;
    return RatInterval(Rat(0), std::max(Rat(-a.lo), a.hi));
}

RatInterval min(const RatInterval& a, const RatInterval& b) {
    return RatInterval(std::min(a.lo, b.lo), std::min(a.hi, b.hi));
}

RatInterval max(const RatInterval& a, const RatInterval& b) {
    return RatInterval(std::max(a.lo, b.lo), std::max(a.hi, b.hi));
}

BigInt isqrt(const BigInt& x) {
    if (x < 0) throw std::domain_error("isqrt: negative input");
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    return r;
}

BigInt iroot(const BigInt& x, unsigned long n) {
    if (x < 0) throw std::domain_error("iroot: negative input");
    if (n == 0) throw std::domain_error("iroot: zeroth root");
    BigInt r;
    mpz_root(r.get_mpz_t(), x.get_mpz_t(), n);
    return r;
}

namespace {

unsigned long to_ulong_exponent(const BigInt& e, const char* what) {
    if (!e.fits_ulong_p())
        throw budget_error(std::string(what) + ": exponent too large", ~0ull);
    return e.get_ui();
}

}  // namespace

BigInt floor_pow(const BigInt& q, const Rat& gamma) {
    if (q < 1) throw std::domain_error("floor_pow: q must be >= 1");
    if (gamma <= 0) throw std::domain_error("floor_pow: gamma must be positive");
    unsigned long u = to_ulong_exponent(gamma.get_num(), "floor_pow");
    unsigned long v = to_ulong_exponent(gamma.get_den(), "floor_pow");
    // Guard against pathological blowups (q^u beyond ~2^31 bits).
    unsigned long long bits = static_cast<unsigned long long>(mpz_sizeinbase(q.get_mpz_t(), 2)) * u;
    if (bits > (1ull << 31))
        throw budget_error("floor_pow: q^u would exceed 2^31 bits", bits);
    BigInt p;
    mpz_pow_ui(p.get_mpz_t(), q.get_mpz_t(), u);
    if (v == 1) return p;
    return iroot(p, v);
}

std::strong_ordering pow_compare(const Rat& a, unsigned long e1, const Rat& b, unsigned long e2) {
    if (a <= 0 || b <= 0) throw std::domain_error("pow_compare: bases must be positive");
    auto cmp_rat = [](const Rat& x, const Rat& y) {
        int c = ::cmp(x, y);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    };
    if (e1 == 0 && e2 == 0) return std::strong_ordering::equal;
    if (e1 == 0) return cmp_rat(Rat(1), b) == std::strong_ordering::equal
                            ? std::strong_ordering::equal
                            : (b > 1 ? std::strong_ordering::less : std::strong_ordering::greater);
    if (e2 == 0) return cmp_rat(a, Rat(1));
    if (e1 == e2) return cmp_rat(a, b);
    if (a == b) {
        if (a == 1) return std::strong_ordering::equal;
        bool grow = a > 1;
        if (e1 < e2) return grow ? std::strong_ordering::less : std::strong_ordering::greater;
        return grow ? std::strong_ordering::greater : std::strong_ordering::less;
    }

    // Bit-length shortcut: log2(n/d) lies in [bits(n)-bits(d)-1, bits(n)-bits(d)+1].
    auto log2_bounds = [](const Rat& x) {
        long n = static_cast<long>(mpz_sizeinbase(x.get_num().get_mpz_t(), 2));
        long d = static_cast<long>(mpz_sizeinbase(x.get_den().get_mpz_t(), 2));
        return std::pair<long, long>{n - d - 1, n - d + 1};
    };
    auto [alo, ahi] = log2_bounds(a);
    auto [blo, bhi] = log2_bounds(b);
    // Overflow-safe only for sane exponents; our callers use small ones.
    long double l1lo = static_cast<long double>(alo) * e1, l1hi = static_cast<long double>(ahi) * e1;
    long double l2lo = static_cast<long double>(blo) * e2, l2hi = static_cast<long double>(bhi) * e2;
    if (l1hi < l2lo) return std::strong_ordering::less;
    if (l1lo > l2hi) return std::strong_ordering::greater;

    // Exact expansion: a^e1 <=> b^e2 as na^e1 * db^e2 <=> nb^e2 * da^e1.
    unsigned long long lbits =
        static_cast<unsigned long long>(mpz_sizeinbase(a.get_num().get_mpz_t(), 2)) * e1 +
        static_cast<unsigned long long>(mpz_sizeinbase(b.get_den().get_mpz_t(), 2)) * e2;
    unsigned long long rbits =
        static_cast<unsigned long long>(mpz_sizeinbase(b.get_num().get_mpz_t(), 2)) * e2 +
        static_cast<unsigned long long>(mpz_sizeinbase(a.get_den().get_mpz_t(), 2)) * e1;
    if (lbits > (1ull << 31) || rbits > (1ull << 31))
        throw budget_error("pow_compare: exact expansion too large", std::max(lbits, rbits));
    BigInt lhs, rhs, t;
    mpz_pow_ui(lhs.get_mpz_t(), a.get_num().get_mpz_t(), e1);
    mpz_pow_ui(t.get_mpz_t(), b.get_den().get_mpz_t(), e2);
    lhs *= t;
    mpz_pow_ui(rhs.get_mpz_t(), b.get_num().get_mpz_t(), e2);
    mpz_pow_ui(t.get_mpz_t(), a.get_den().get_mpz_t(), e1);
    rhs *= t;
    int c = ::cmp(lhs, rhs);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

RatInterval sqrt_enclose(const Rat& x, unsigned bits) {
    if (x < 0) throw std::domain_error("sqrt_enclose: negative input");
    if (x == 0) return RatInterval(Rat(0));
    // floor(sqrt(x * 4^bits)) = r gives sqrt(x) in [r, r+1] / 2^bits.
    BigInt scaled;
    {
        BigInt four_p(1);
        mpz_mul_2exp(four_p.get_mpz_t(), four_p.get_mpz_t(), 2ul * bits);
        mpz_fdiv_q(scaled.get_mpz_t(), BigInt(x.get_num() * four_p).get_mpz_t(), x.get_den().get_mpz_t());
    }
    BigInt r = isqrt(scaled);
    BigInt two_p(1);
    mpz_mul_2exp(two_p.get_mpz_t(), two_p.get_mpz_t(), bits);
    return RatInterval(make_rat(r, two_p), make_rat(r + 1, two_p));
}

namespace {

// Partial atanh series: 2 * sum_{j=0}^{J-1} z^(2j+1) / (2j+1), summed exactly.
// For z in [0, 1/3] the truncation error is in [0, (9/4) z^(2J+1) / (2J+1)].
Rat atanh_partial(const Rat& z, unsigned terms) {
    Rat z2 = z * z;
    Rat acc(0);
    for (long j = static_cast<long>(terms) - 1; j >= 0; --j) {
        acc = acc * z2 + make_rat(BigInt(1), BigInt(2 * j + 1));
        if (j > 0) {
            // Horner step happens above; nothing else to do.
        }
    }
    return 2 * z * acc;
}

Rat atanh_remainder_bound(const Rat& z, unsigned terms) {
    // 2 * z^(2J+1) / ((2J+1)(1-z^2)) <= (9/4) z^(2J+1) / (2J+1)  for z <= 1/3.
    BigInt zn, zd;
    mpz_pow_ui(zn.get_mpz_t(), z.get_num().get_mpz_t(), 2 * terms + 1);
    mpz_pow_ui(zd.get_mpz_t(), z.get_den().get_mpz_t(), 2 * terms + 1);
    return make_rat(9 * zn, 4 * zd * (2 * terms + 1));
}

unsigned terms_for(unsigned prec) {
    // Need (9/4) 3^-(2J+1) / (2J+1) <= 2^-prec; 2J+1 >= prec / log2(3) + 2 is ample.
    return prec / 3 + 4;
}

// ln of the dyadic rational M / 2^prec, M in [2^prec, 2^(prec+1)].
// Returns [S, S + R] where S is the exact partial sum and R bounds the tail.
RatInterval ln_dyadic(const BigInt& M, unsigned prec) {
    BigInt two_p(1);
    mpz_mul_2exp(two_p.get_mpz_t(), two_p.get_mpz_t(), prec);
    Rat z = make_rat(M - two_p, M + two_p);  // in [0, 1/3]
    unsigned J = terms_for(prec + 4);
    Rat s = atanh_partial(z, J);
    Rat r = atanh_remainder_bound(z, J);
    return RatInterval(s, s + r);
}

}  // namespace

RatInterval ln2_enclose(unsigned bits) {
    static std::mutex mu;
    static std::map<unsigned, RatInterval> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.lower_bound(bits);
        if (it != cache.end()) return it->second;
    }
    // ln 2 = 2 atanh(1/3).
    Rat z = rat_from_long(1, 3);
    unsigned J = terms_for(bits + 4);
    Rat s = atanh_partial(z, J);
    RatInterval result(s, s + atanh_remainder_bound(z, J));
    {
        std::lock_guard<std::mutex> lock(mu);
        cache.emplace(bits, result);
    }
    return result;
}

RatInterval log_enclose_rat(const Rat& x, unsigned bits) {
    if (x <= 0) throw std::domain_error("log_enclose: input must be strictly positive");
    if (x == 1) {
        Rat eps = make_rat(BigInt(1), BigInt(1) << std::min<unsigned>(bits + 4, 512));
        return RatInterval(-eps, eps);
    }

    // Normalize: x = m * 2^e with m in [1, 2).
    long e = static_cast<long>(mpz_sizeinbase(x.get_num().get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(x.get_den().get_mpz_t(), 2));
    auto cmp_pow2 = [&x](long k) {
        // sign of x - 2^k
        BigInt lhs = x.get_num(), rhs = x.get_den();
        if (k >= 0)
            mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<unsigned long>(k));
        else
            mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<unsigned long>(-k));
        return ::cmp(lhs, rhs);
    };
    while (cmp_pow2(e) < 0) --e;
    while (cmp_pow2(e + 1) >= 0) ++e;

    unsigned prec = bits + 8;
    // M = floor(m * 2^prec) with m = x / 2^e.
    BigInt M;
    {
        BigInt num = x.get_num(), den = x.get_den();
        long shift = static_cast<long>(prec) - e;
        if (shift >= 0)
            mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(shift));
        else
            mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(-shift));
        mpz_fdiv_q(M.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    // ln m in [ln(M/2^prec).lo, ln((M+1)/2^prec).hi]
    RatInterval ln_m(ln_dyadic(M, prec).lo, ln_dyadic(M + 1, prec).hi);

    if (e == 0) return ln_m;
    unsigned ebits = static_cast<unsigned>(mpz_sizeinbase(BigInt(e < 0 ? -e : e).get_mpz_t(), 2));
    RatInterval l2 = ln2_enclose(bits + ebits + 8);
    RatInterval scaled = l2 * Rat(e);
    return scaled + ln_m;
}

RatInterval log_enclose(const RatInterval& x, unsigned bits) {
    if (x.lo <= 0) throw std::domain_error("log_enclose: interval must be strictly positive");
    if (x.is_point()) return log_enclose_rat(x.lo, bits);
    return RatInterval(log_enclose_rat(x.lo, bits).lo, log_enclose_rat(x.hi, bits).hi);
}

}  // namespace diophant
