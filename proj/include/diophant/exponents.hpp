#pragma once

// Certified estimators for the regular, uniform, and weak uniform Diophantine
// exponents of a continued-fraction value and of its associated lattice,
// plus verifiers for the inequalities tying them together.
//
// All estimates are finite-depth traces of certified intervals.  Tail
// estimates take the extremum over a trailing window of the trace (max for
// the regular exponent, min for the weak uniform one), which converges to
// the defining limsup/liminf as the depth grows.

#include "diophant/cf.hpp"
#include "diophant/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace diophant {

struct TraceEntry {
    long k = 0;
    RatInterval lambda;
};

struct ExponentEstimate {
    std::string quantity;  // "omega" | "omega_hat" | "omega_hat_hat" | "omega_hat_hat_lattice"
    std::string route;     // how the value was obtained (log trace, product floor, ...)
    std::vector<TraceEntry> trace;
    std::optional<RatInterval> tail;  // absent iff infinite
    bool infinite = false;
    std::optional<Rat> target;  // analytic limit, when the rule pins one
    long window_used = 0;
};

struct CheckRow {
    long k = 0;
    bool holds = false;
    std::string lhs, rhs;  // decimal renderings of the two compared sides
};

struct VerificationReport {
    std::string claim;
    std::vector<CheckRow> rows;
    std::optional<long> first_k;  // start of the trailing run where the claim holds
    bool verdict = false;
    bool inconclusive = false;  // budget/tie limited; verdict not certified either way
    std::string detail;
};

// Thrown when the convergent-sequence formula cannot be applied and no other
// certified route exists; carries the failed premise report.
class formula_inapplicable : public std::runtime_error {
public:
    formula_inapplicable(const std::string& what, VerificationReport report)
        : std::runtime_error(what), report_(std::move(report)) {}
    const VerificationReport& report() const { return report_; }

private:
    VerificationReport report_;
};

// Trailing-window size: half the trace by default.
long default_window(std::size_t trace_len);

// omega: trace 1 + ln a_{k+1} / ln q_k, tail = max over the window.
// Rational input yields the infinite flag.
ExponentEstimate regular_exponent(CFNumber& cf, long depth, long window = 0);

// omega-hat: exactly 1 for irrationals, certified constructively by empty
// parallelogram sweeps for every feasible index; infinite for rationals.
ExponentEstimate uniform_exponent(CFNumber& cf, long depth,
                                  unsigned long long sweep_budget = 20000);

// Weak uniform exponent of the lattice.  Routes:
//   - rational theta: infinite;
//   - certified defect-ratio decay: trace -ln pi2(v_k) / (2 ln sup(v_{k+1}))
//     over the convergent points, tail = min over the window;
//   - bounded quotients: exactly 0 (the product functional has a certified
//     positive floor, so no positive exponent is attainable);
//   - otherwise: formula_inapplicable carrying the premise report.
ExponentEstimate weak_exponent_lattice(CFNumber& cf, long depth, long window = 0);

// Weak uniform exponent of the value itself: 1 + 2 * lattice exponent.
ExponentEstimate weak_exponent_number(CFNumber& cf, long depth, long window = 0);

// The successive-minima formula applied to an explicitly given hyperbolic
// sequence (needs >= 3 members).  When a positive global product floor is
// supplied (bounded-quotient regime) returns exactly 0 instead.
ExponentEstimate weak_exponent_from_minima(const MinimaSequence& seq, long window = 0,
                                           std::optional<Rat> pi2_floor = std::nullopt);

// f(t)^2 = min pi2 over nonzero points with sup <= t (exhaustive, with a
// sound pruning of the search box).  Marked empty when t lies below the
// first minimum.
struct ProfilePoint {
    Rat t;
    bool empty = false;
    RatInterval f2;
};
std::vector<ProfilePoint> minimum_product_profile(CFNumber& cf, const std::vector<Rat>& ts,
                                                  unsigned long long budget = 100'000'000ull);

// Certified per-k comparison D_k > 3 D_{k+1}; reports the first index from
// which the inequality holds through the last checked index.
VerificationReport verify_defect_ratio(CFNumber& cf, long depth);

// On the constructed minima sequence (unit point + convergent points, with
// certified strictly decreasing pi2), checks
//   sup(z_{k+1}) > (4/3) phi^(k-2) / pi2(z_k)  for every k >= 2,
// phi taken as a certified golden-ratio enclosure.  Also records the
// consequence pi2(z_k) * sup(z_{k+1}) > 1 per row.
VerificationReport verify_growth_bound(CFNumber& cf, long depth);

// Classical defect bounds 1/(a_{k+1}+2) < D_k < 1/a_{k+1} for k = 0..kmax,
// certified strictly via adaptively deepened enclosures.
VerificationReport verify_classical_sandwich(CFNumber& cf, long kmax);

// Power-growth rules: exact checks 1/(q_k^g + 3) < D_k < 1/q_k^g (k >= 1).
VerificationReport verify_product_bounds(CFNumber& cf, long depth);

// Power-growth rules: exact checks q_k^(1+g) < q_{k+1} < 3 q_k^(1+g) (k >= 1).
VerificationReport verify_denominator_growth(CFNumber& cf, long depth);

// One certified solution of |x| <= t, |theta x - y| <= t^-gamma, searched
// over convergents.  Absence among convergents is a report, not an error.
struct DirichletSolution {
    bool found = false;
    BigInt x, y;
    Rat t, gamma;
    std::string note;
};
DirichletSolution dirichlet_solve(CFNumber& cf, const Rat& t, const Rat& gamma);

// Samples `count` values of t geometrically spaced in [1, tmax] and requires
// a certified solution at each.
VerificationReport verify_dirichlet(CFNumber& cf, const Rat& tmax, int count, const Rat& gamma);

// End-to-end spectrum check for a power-growth rule: certify the defect
// ratio premise, estimate the lattice exponent, and compare the tail against
// gamma/(2+2gamma) within tol (by interval containment).
VerificationReport verify_spectrum_point(const Rat& gamma, long depth, const Rat& tol,
                                         long window = 0,
                                         std::size_t digit_budget = CFNumber::kDefaultDigitBudget);
std::vector<VerificationReport> verify_spectrum_points(
    const std::vector<Rat>& gammas, long depth, const Rat& tol, long window = 0,
    std::size_t digit_budget = CFNumber::kDefaultDigitBudget);

// Empty-parallelogram sweeps for k = 0..kmax (or as far as the budget
// allows; inconclusive when nothing was feasible).
VerificationReport verify_empty_parallelograms(CFNumber& cf, long kmax,
                                               unsigned long long budget = 20000);

// Internal building block, exposed for tests: entries (pi2, sup) of the
// convergent point sequence; pi2 present for k <= depth-1.
struct SeqEntry {
    long k = -1;  // -1 for the unit point
    std::optional<RatInterval> pi2;
    RatInterval sup;
};
std::vector<SeqEntry> convergent_sequence_entries(CFNumber& cf, long depth, bool include_unit);

}  // namespace diophant
