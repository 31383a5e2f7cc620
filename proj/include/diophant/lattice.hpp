#pragma once

// The planar lattice spanned over Z^2 by the map (x, y) |-> (tx - y, x + ty)
// for a continued-fraction value t > 1: box enumeration with certified
// membership, relative minima (coordinate-box minimality), hyperbolic minima
// (sup-ball product minimality), and the convergent-derived shortcuts for
// both.  The lattice is invariant under the quarter turn
// (z1, z2) |-> (-z2, z1), whose preimage action is (x, y) |-> (-y, x).

#include "diophant/cf.hpp"

#include <map>
#include <set>
#include <utility>
#include <vector>

namespace diophant {

// A shared, refinable enclosure of theta.  Comparisons that come out
// ambiguous at the current width re-run after refine().
class ThetaView {
public:
    ThetaView(CFNumber& cf, const Rat& width_cap);

    const RatInterval& theta() const { return cur_; }
    bool exact() const { return exact_; }
    CFNumber& cf() const { return *cf_; }

    // Moves the bracket one convergent deeper.  Returns false once the value
    // is exact, the rule's data is exhausted, or the digit budget is hit.
    bool refine();

private:
    void recompute();
    CFNumber* cf_;
    long level_;
    RatInterval cur_;
    bool exact_ = false;
};

// Certified sign that theta > 1 (needed module-wide; the map is only
// considered for theta > 1).
bool theta_greater_one(ThetaView& view);

struct LatticePoint {
    BigInt x, y;                   // integer preimage
    RatInterval z1, z2, sup, pi2;  // tx - y, x + ty, max(|z1|,|z2|), |z1|*|z2|
    long k = -1;                   // convergent index, or -1
    bool provisional = false;      // boundary-uncertain tail member of a filtered sequence
};

LatticePoint make_lattice_point(const RatInterval& theta, const BigInt& x, const BigInt& y,
                                long k = -1);

// Image of the convergent preimage (q_k, p_k); z1 = q_k t - p_k, z2 = q_k + p_k t.
LatticePoint convergent_point(CFNumber& cf, long k, long refine = 2);
// Image of (1, 0).
LatticePoint unit_point(CFNumber& cf, long refine = 2);

// Quarter turn: preimage (-y, x), coordinates (-z2, z1).  sup and pi2 are
// carried over unchanged (they are exactly invariant).
LatticePoint rotate(const LatticePoint& pt);
LatticePoint negate(const LatticePoint& pt);

// Deterministic class representative of {±(x,y), ±(-y,x)}: the member whose
// z2 is positive, lexicographically smallest preimage among those.
std::pair<BigInt, BigInt> canonical_preimage(ThetaView& view, const BigInt& x, const BigInt& y);

// All nonzero lattice points with |z1| <= lambda1 and |z2| <= lambda2, by
// exhaustive sweep of the integer preimage box (bounds widened by the theta
// enclosure so nothing is missed).  Throws budget_error when the candidate
// count would exceed `budget`.
std::vector<LatticePoint> enumerate_box(CFNumber& cf, const Rat& lambda1, const Rat& lambda2,
                                        unsigned long long budget = 100'000'000ull);

enum class MinimaKind { relative, hyperbolic };

struct TieNote {
    std::pair<BigInt, BigInt> a, b;  // canonical preimages with undecidable product order
};

struct MinimaSequence {
    MinimaKind kind = MinimaKind::relative;
    Rat bound;
    bool complete = false;
    std::vector<LatticePoint> points;  // ordered by increasing sup-norm
    std::vector<TieNote> ties;
};

// Relative minima from the convergent characterization: one representative
// per class, namely the unit point and the convergent points, in sup order.
// Rejects rational theta (the characterization needs an infinite expansion).
MinimaSequence relative_minima_from_convergents(CFNumber& cf, const Rat& T);

// Exhaustively certified minima with sup <= T, from a full box sweep.
MinimaSequence brute_force_minima(CFNumber& cf, const Rat& T, MinimaKind kind,
                                  unsigned long long budget = 100'000'000ull);

// Running strict-minimum filter on pi2 over a complete relative sequence.
// A point is kept iff its pi2 is certifiedly below every earlier point's.
// The last kept point is flagged provisional unless a later relative minimum
// with certifiedly larger pi2 follows it inside the bound.
MinimaSequence hyperbolic_from_relative(CFNumber& cf, const MinimaSequence& relative);

// True iff the region |x t - y| <= |q_k t - p_k|, |x| <= q_{k+1} contains no
// integer points other than 0, ±(q_k, p_k), ±(q_{k+1}, p_{k+1}).
bool empty_parallelogram(CFNumber& cf, long k, unsigned long long budget = 100'000'000ull);

// Positive lower bound on pi2 over all nonzero lattice points, available for
// bounded-quotient rules: pi2 >= 2/(A+2) where A bounds every quotient.
// For an explicit (finite) rule the bound covers only the supplied prefix,
// flagged via assumes_bounded_tail.
struct ProductFloor {
    Rat pi2_floor;
    BigInt quotient_bound;
    bool assumes_bounded_tail = false;
};
std::optional<ProductFloor> global_pi2_floor(CFNumber& cf);

// Canonical class keys of a sequence (for class-set comparisons).
std::set<std::pair<std::string, std::string>> class_key_set(CFNumber& cf,
                                                            const MinimaSequence& seq);

}  // namespace diophant
