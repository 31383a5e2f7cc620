#pragma once

// Continued-fraction engine: partial-quotient rules, the convergent
// recurrence p_{k+1} = a_{k+1} p_k + p_{k-1} (same for q), enclosures of the
// value theta, and the approximation defect D_k = q_k |q_k theta - p_k|.

#include "diophant/exact.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace diophant {

struct ExplicitRule {
    std::vector<BigInt> quotients;  // a_0, a_1, ...; finite prefix of an expansion
};
struct PeriodicRule {
    std::vector<BigInt> prefix;  // may be empty
    std::vector<BigInt> period;  // non-empty
};
struct PowerGrowthRule {
    Rat gamma;  // positive; a_0 = 1, a_{k+1} = floor(q_k^gamma) + 1
};
struct SuperGrowthRule {};  // a_0 = 1, a_1 = 2, a_{k+1} = floor(q_k^k) + 1
struct RationalRule {
    BigInt num, den;  // theta = num/den >= 1; expansion via Euclid
};

class QuotientRule {
public:
    using Variant =
        std::variant<ExplicitRule, PeriodicRule, PowerGrowthRule, SuperGrowthRule, RationalRule>;

    static QuotientRule explicit_list(std::vector<BigInt> quotients);
    static QuotientRule periodic(std::vector<BigInt> prefix, std::vector<BigInt> period);
    static QuotientRule power_growth(const Rat& gamma);
    static QuotientRule super_growth();
    static QuotientRule rational(const BigInt& num, const BigInt& den);

    // Textual form used by the CLI and caches:
    //   power:U/V | super | quotients:a0,a1,... | periodic:prefix;period | rational:P/Q
    static QuotientRule parse(const std::string& spec);
    std::string to_string() const;

    bool is_rational() const { return std::holds_alternative<RationalRule>(v_); }
    bool is_power_growth() const { return std::holds_alternative<PowerGrowthRule>(v_); }
    bool is_super_growth() const { return std::holds_alternative<SuperGrowthRule>(v_); }
    bool is_explicit() const { return std::holds_alternative<ExplicitRule>(v_); }
    bool is_periodic() const { return std::holds_alternative<PeriodicRule>(v_); }

    // Largest quotient this rule can ever produce, when that is knowable.
    // Periodic rules are genuinely bounded; for an explicit list the bound
    // only covers the supplied prefix (the tail is unknown data).
    std::optional<BigInt> quotient_bound() const;

    const Variant& variant() const { return v_; }

private:
    explicit QuotientRule(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

struct Convergent {
    long k = 0;
    BigInt a, p, q;
};

// Thrown when an explicit quotient list runs out before the requested depth.
class quotients_exhausted : public std::runtime_error {
public:
    explicit quotients_exhausted(long depth)
        : std::runtime_error("explicit quotient list exhausted at index " + std::to_string(depth)) {}
};

// Thrown when a comparison genuinely exceeds what the supplied data can
// decide (an explicit quotient prefix pins theta only to a finite width).
class data_exhausted : public std::runtime_error {
public:
    data_exhausted()
        : std::runtime_error(
              "comparison undecidable from the supplied quotients: the data pins theta only to "
              "a finite width; supply more quotients or use a periodic/growth rule") {}
};

class CFNumber {
public:
    static constexpr std::size_t kDefaultDigitBudget = 8'000'000;

    explicit CFNumber(QuotientRule rule, std::size_t digit_budget = kDefaultDigitBudget);

    const QuotientRule& rule() const { return rule_; }
    bool is_rational() const { return rule_.is_rational(); }

    // True once a Rational expansion has been fully produced.
    bool terminated() const { return terminated_; }
    // Highest cached convergent index; -1 before the first extension.
    long last_index() const { return static_cast<long>(cache_.size()) - 1; }
    std::size_t digit_budget() const { return digit_budget_; }

    // Appends a_{k+1}; nullopt when a Rational expansion terminates.
    std::optional<BigInt> next_quotient();

    // Ensures convergents 0..depth exist (or the full finite expansion) and
    // returns the cached prefix.
    std::span<const Convergent> extend_convergents(long depth);

    const Convergent& at(long k);
    const Convergent& cached(long k) const { return cache_.at(static_cast<std::size_t>(k)); }

    // Bracket of theta with endpoints p_j/q_j, p_{j+1}/q_{j+1}, j = k+refine.
    // Width 1/(q_j q_{j+1}); degenerate exact point for rational theta.
    RatInterval enclose_theta(long k, long refine = 2);

    // Bracket of theta between the mediant of convergents j-1, j and
    // convergent j; needs no convergent beyond index j.  Used where the next
    // convergent would blow the digit budget.
    RatInterval enclose_theta_mediant(long j);

    // |q_k theta - p_k| in [1/(q_k + q_{k+1}), 1/q_{k+1}] (exact for rational
    // theta, [0,0] at the final index).  Needs convergents to k+1 only.
    RatInterval linear_defect(long k);

    // D_k = q_k |q_k theta - p_k| via the refine-deep theta bracket.
    RatInterval approx_defect(long k, long refine = 2);

    // Exact value for rational rules.
    Rat rational_value() const;

    nlohmann::json cache_to_json() const;
    static CFNumber from_cache_json(const nlohmann::json& j,
                                    std::size_t digit_budget = kDefaultDigitBudget);

private:
    void append(const BigInt& a);
    void check_digit_budget(const BigInt& a) const;

    QuotientRule rule_;
    std::vector<Convergent> cache_;
    bool terminated_ = false;
    std::size_t digit_budget_;
    // Euclid state for Rational rules: theta tail = euclid_r0_ / euclid_r1_.
    BigInt euclid_r0_, euclid_r1_;
};

}  // namespace diophant
