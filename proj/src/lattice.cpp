#include "diophant/lattice.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <tuple>

namespace diophant {

namespace {

Rat default_view_width() {
    BigInt d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, 30);
    return make_rat(BigInt(1), d);
}

Rat tie_width_floor() {
    // Comparisons still ambiguous once the theta bracket is this narrow are
    // reported as ties (exact coincidences are real for quadratic irrationals).
    BigInt d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, 60);
    return make_rat(BigInt(1), d);
}

BigInt floor_rat(const Rat& r) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

BigInt ceil_rat(const Rat& r) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

long to_long_checked(const BigInt& v, const char* what) {
    if (!v.fits_slong_p()) throw budget_error(std::string(what) + ": value out of range", ~0ull);
    return v.get_si();
}

// Linear form c1 * theta + c0.  The z1 coordinate of preimage (x, y) is the
// form (x, -y); the z2 coordinate is (y, x).
struct LinForm {
    BigInt c1, c0;
};

LinForm z1_form(const BigInt& x, const BigInt& y) { return {x, -y}; }
LinForm z2_form(const BigInt& x, const BigInt& y) { return {y, x}; }

RatInterval eval_form(const RatInterval& theta, const LinForm& f) {
    return theta * Rat(f.c1) + Rat(f.c0);
}

RatInterval eval_abs_form(const RatInterval& theta, const LinForm& f) {
    return abs(eval_form(theta, f));
}

bool abs_forms_identical(const LinForm& a, const LinForm& b) {
    return (a.c1 == b.c1 && a.c0 == b.c0) || (a.c1 == -b.c1 && a.c0 == -b.c0);
}

enum class Ord { less, equal, greater };
enum class OrdT { less, equal, greater, unknown };

[[noreturn]] void unresolvable() { throw data_exhausted(); }

// Sign of a linear form.  For irrational theta a nonzero form never
// vanishes, so refinement always separates it from zero.
int form_sign(ThetaView& view, const LinForm& f) {
    if (f.c1 == 0) return sgn(f.c0);
    for (;;) {
        RatInterval v = eval_form(view.theta(), f);
        if (v.lo > 0) return 1;
        if (v.hi < 0) return -1;
        if (view.exact()) return sgn(v.lo);
        if (!view.refine()) unresolvable();
    }
}

// |a| vs |b|.  Distinct |forms| differ at every irrational theta, so this
// always terminates; coincidences are caught symbolically first.
Ord compare_abs_forms(ThetaView& view, const LinForm& a, const LinForm& b) {
    if (abs_forms_identical(a, b)) return Ord::equal;
    for (;;) {
        RatInterval ia = eval_abs_form(view.theta(), a);
        RatInterval ib = eval_abs_form(view.theta(), b);
        if (ia.hi < ib.lo) return Ord::less;
        if (ia.lo > ib.hi) return Ord::greater;
        if (view.exact()) {
            int c = ::cmp(ia.lo, ib.lo);
            return c < 0 ? Ord::less : (c > 0 ? Ord::greater : Ord::equal);
        }
        if (!view.refine()) unresolvable();
    }
}

// |form| vs a rational bound.  Equality is only possible when the theta
// coefficient vanishes or theta itself is rational.
Ord compare_abs_form_rat(ThetaView& view, const LinForm& f, const Rat& r) {
    if (f.c1 == 0) {
        int c = ::cmp(::abs(Rat(f.c0)), r);
        return c < 0 ? Ord::less : (c > 0 ? Ord::greater : Ord::equal);
    }
    for (;;) {
        RatInterval ia = eval_abs_form(view.theta(), f);
        if (ia.hi < r) return Ord::less;
        if (ia.lo > r) return Ord::greater;
        if (view.exact()) {
            int c = ::cmp(ia.lo, r);
            return c < 0 ? Ord::less : (c > 0 ? Ord::greater : Ord::equal);
        }
        if (!view.refine()) unresolvable();
    }
}

// The sup-norm is max(|z1 form|, |z2 form|); the two coordinates of a
// nonzero preimage never coincide in absolute value, so the achieving form
// is well defined.
LinForm sup_form(ThetaView& view, const BigInt& x, const BigInt& y) {
    LinForm f1 = z1_form(x, y), f2 = z2_form(x, y);
    return compare_abs_forms(view, f1, f2) == Ord::less ? f2 : f1;
}

Ord compare_sup(ThetaView& view, const std::pair<BigInt, BigInt>& a,
                const std::pair<BigInt, BigInt>& b) {
    return compare_abs_forms(view, sup_form(view, a.first, a.second),
                             sup_form(view, b.first, b.second));
}

// pi2 of a preimage is |A t^2 + B t - A| with A = xy, B = x^2 - y^2.  Two
// products coincide symbolically iff the (A, B) pairs agree up to sign;
// deeper coincidences (algebraic identities of theta) are undecidable from
// the expansion alone and surface as ties.
struct QuadForm {
    BigInt A, B;
};

QuadForm pi2_quad(const BigInt& x, const BigInt& y) { return {x * y, x * x - y * y}; }

bool quads_identical(const QuadForm& a, const QuadForm& b) {
    return (a.A == b.A && a.B == b.B) || (a.A == -b.A && a.B == -b.B);
}

RatInterval eval_pi2(const RatInterval& theta, const std::pair<BigInt, BigInt>& pre) {
    return eval_abs_form(theta, z1_form(pre.first, pre.second)) *
           eval_abs_form(theta, z2_form(pre.first, pre.second));
}

OrdT compare_pi2(ThetaView& view, const std::pair<BigInt, BigInt>& a,
                 const std::pair<BigInt, BigInt>& b) {
    if (quads_identical(pi2_quad(a.first, a.second), pi2_quad(b.first, b.second)))
        return OrdT::equal;
    const Rat floor_w = tie_width_floor();
    for (;;) {
        RatInterval ia = eval_pi2(view.theta(), a);
        RatInterval ib = eval_pi2(view.theta(), b);
        if (ia.hi < ib.lo) return OrdT::less;
        if (ia.lo > ib.hi) return OrdT::greater;
        if (view.exact()) {
            int c = ::cmp(ia.lo, ib.lo);
            return c < 0 ? OrdT::less : (c > 0 ? OrdT::greater : OrdT::equal);
        }
        if (view.theta().width() < floor_w || !view.refine()) return OrdT::unknown;
    }
}

}  // namespace

ThetaView::ThetaView(CFNumber& cf, const Rat& width_cap) : cf_(&cf), level_(0) {
    recompute();
    while (!exact_ && level_ >= 0 && cur_.width() > width_cap) {
        if (!refine()) break;
    }
}

void ThetaView::recompute() {
    CFNumber& cf = *cf_;
    if (cf.is_rational()) {
        cf.extend_convergents(level_ + 1);
        if (cf.terminated() && cf.last_index() <= level_) {
            cur_ = RatInterval(cf.rational_value());
            exact_ = true;
            return;
        }
        const Convergent& a = cf.cached(level_);
        const Convergent& b = cf.cached(level_ + 1);
        cur_ = RatInterval::ordered(make_rat(a.p, a.q), make_rat(b.p, b.q));
        return;
    }
    try {
        cf.extend_convergents(level_ + 1);
        const Convergent& a = cf.cached(level_);
        const Convergent& b = cf.cached(level_ + 1);
        cur_ = RatInterval::ordered(make_rat(a.p, a.q), make_rat(b.p, b.q));
    } catch (const quotients_exhausted&) {
        // Explicit list ran out: the sharpest bracket the data allows.  The
        // tail x of theta = [a_0; ..., a_L, x] ranges over (1, oo), which the
        // Moebius map sends onto the segment between the mediant and the last
        // convergent.
        long last = cf.last_index();
        if (last < 0) throw;
        if (last == 0) {
            Rat a0 = make_rat(cf.cached(0).p, cf.cached(0).q);
            cur_ = RatInterval(a0, a0 + 1);
        } else {
            cur_ = cf.enclose_theta_mediant(last);
        }
        level_ = -1;  // cannot refine further
    }
}

bool ThetaView::refine() {
    if (exact_ || level_ < 0) return false;
    long saved = level_;
    ++level_;
    try {
        recompute();
    } catch (const budget_error&) {
        level_ = saved;
        recompute();
        return false;
    }
    return exact_ || level_ < 0 || level_ == saved + 1;
}

bool theta_greater_one(ThetaView& view) {
    CFNumber& cf = view.cf();
    if (cf.is_rational()) return cf.rational_value() > 1;
    // Irrational rules enforce a_0 >= 1, and theta = a_0 + 1/x with x > 1.
    return true;
}

LatticePoint make_lattice_point(const RatInterval& theta, const BigInt& x, const BigInt& y,
                                long k) {
    LatticePoint p;
    p.x = x;
    p.y = y;
    p.k = k;
    p.z1 = theta * Rat(x) - Rat(y);
    p.z2 = theta * Rat(y) + Rat(x);
    RatInterval a1 = abs(p.z1), a2 = abs(p.z2);
    p.sup = max(a1, a2);
    p.pi2 = a1 * a2;
    return p;
}

namespace {

void require_theta_above_one(CFNumber& cf) {
    ThetaView probe(cf, Rat(1));
    if (!theta_greater_one(probe)) throw std::domain_error("lattice requires theta > 1");
}

}  // namespace

LatticePoint convergent_point(CFNumber& cf, long k, long refine) {
    require_theta_above_one(cf);
    const Convergent c = cf.at(k);
    RatInterval theta = cf.enclose_theta(k, std::max<long>(refine, 1));
    return make_lattice_point(theta, c.q, c.p, k);
}

LatticePoint unit_point(CFNumber& cf, long refine) {
    require_theta_above_one(cf);
    RatInterval theta = cf.enclose_theta(0, std::max<long>(refine, 1));
    return make_lattice_point(theta, BigInt(1), BigInt(0), -1);
}

LatticePoint rotate(const LatticePoint& pt) {
    LatticePoint r;
    r.x = -pt.y;
    r.y = pt.x;
    r.z1 = -pt.z2;
    r.z2 = pt.z1;
    r.sup = pt.sup;
    r.pi2 = pt.pi2;
    r.k = pt.k;
    r.provisional = pt.provisional;
    return r;
}

LatticePoint negate(const LatticePoint& pt) {
    LatticePoint r = pt;
    r.x = -pt.x;
    r.y = -pt.y;
    r.z1 = -pt.z1;
    r.z2 = -pt.z2;
    return r;
}

std::pair<BigInt, BigInt> canonical_preimage(ThetaView& view, const BigInt& x, const BigInt& y) {
    if (x == 0 && y == 0) throw std::domain_error("canonical_preimage: zero point");
    const std::pair<BigInt, BigInt> cands[4] = {{x, y}, {-x, -y}, {-y, x}, {y, -x}};
    const std::pair<BigInt, BigInt>* best = nullptr;
    for (const auto& c : cands) {
        if (form_sign(view, z2_form(c.first, c.second)) <= 0) continue;
        if (!best || c < *best) best = &c;
    }
    if (!best) {
        // Rational theta can zero z2 on one orientation pair; fall back to z1 > 0.
        for (const auto& c : cands) {
            if (form_sign(view, z2_form(c.first, c.second)) != 0) continue;
            if (form_sign(view, z1_form(c.first, c.second)) <= 0) continue;
            if (!best || c < *best) best = &c;
        }
    }
    if (!best) throw std::logic_error("canonical_preimage: no representative found");
    return *best;
}

std::vector<LatticePoint> enumerate_box(CFNumber& cf, const Rat& lambda1, const Rat& lambda2,
                                        unsigned long long budget) {
    if (lambda1 <= 0 || lambda2 <= 0)
        throw std::domain_error("enumerate_box: bounds must be positive");
    ThetaView view(cf, default_view_width());
    if (!theta_greater_one(view)) throw std::domain_error("lattice requires theta > 1");
    const RatInterval theta = view.theta();

    // Inverse map: x = (t z1 + z2) / (1 + t^2); evaluating over the theta
    // enclosure can only widen the preimage box, so nothing is missed.
    RatInterval xb = (theta * lambda1 + RatInterval(lambda2)) / (theta * theta + Rat(1));
    long X = to_long_checked(floor_rat(xb.hi), "enumerate_box x bound");

    std::vector<LatticePoint> out;
    unsigned long long attempted = 0;
    for (long x = -X; x <= X; ++x) {
        // |t x - y| <= l1  =>  y in t x + [-l1, l1]
        RatInterval tx = theta * Rat(x);
        Rat y1lo = tx.lo - lambda1, y1hi = tx.hi + lambda1;
        // |x + t y| <= l2  =>  y in [-l2 - x, l2 - x] / t
        RatInterval y2 = RatInterval(Rat(-lambda2 - x), Rat(lambda2 - x)) * theta.reciprocal();
        Rat ylo = std::max(y1lo, y2.lo), yhi = std::min(y1hi, y2.hi);
        BigInt yl = ceil_rat(ylo), yh = floor_rat(yhi);
        if (yh < yl) continue;
        BigInt cnt = yh - yl + 1;
        if (!cnt.fits_ulong_p())
            throw budget_error("enumerate_box: preimage budget exceeded", budget + 1);
        attempted += cnt.get_ui();
        if (attempted > budget)
            throw budget_error("enumerate_box: preimage budget exceeded (attempted " +
                                   std::to_string(attempted) + " of " + std::to_string(budget) +
                                   ")",
                               attempted);
        long yl_l = to_long_checked(yl, "enumerate_box y bound");
        long yh_l = to_long_checked(yh, "enumerate_box y bound");
        for (long y = yl_l; y <= yh_l; ++y) {
            if (x == 0 && y == 0) continue;
            BigInt bx(x), by(y);
            if (compare_abs_form_rat(view, z1_form(bx, by), lambda1) == Ord::greater) continue;
            if (compare_abs_form_rat(view, z2_form(bx, by), lambda2) == Ord::greater) continue;
            out.push_back(make_lattice_point(view.theta(), bx, by));
        }
    }
    return out;
}

MinimaSequence relative_minima_from_convergents(CFNumber& cf, const Rat& T) {
    if (cf.is_rational())
        throw std::domain_error("convergent minima route requires irrational theta");
    if (T <= 0) throw std::domain_error("bound must be positive");
    ThetaView view(cf, default_view_width());

    MinimaSequence seq;
    seq.kind = MinimaKind::relative;
    seq.bound = T;
    seq.complete = true;

    // Unit point first: its sup is theta itself (z2 = 1 < theta).
    if (compare_abs_form_rat(view, LinForm{BigInt(1), BigInt(0)}, T) != Ord::greater)
        seq.points.push_back(make_lattice_point(view.theta(), BigInt(1), BigInt(0), -1));

    // Convergent points in increasing sup order; sup(image of (q_k, p_k)) is
    // q_k + p_k theta, strictly increasing, so the first exceedance stops.
    for (long k = 0;; ++k) {
        Convergent c;
        try {
            c = cf.at(k);
        } catch (const quotients_exhausted&) {
            seq.complete = false;  // finite data: tail membership unknown
            break;
        }
        bool in = compare_abs_form_rat(view, z1_form(c.q, c.p), T) != Ord::greater &&
                  compare_abs_form_rat(view, z2_form(c.q, c.p), T) != Ord::greater;
        if (!in) break;
        seq.points.push_back(make_lattice_point(view.theta(), c.q, c.p, k));
    }
    return seq;
}

namespace {

struct ClassRec {
    std::pair<BigInt, BigInt> pre;  // canonical preimage
    LatticePoint pt;
    long conv_k = -1;
};

std::vector<ClassRec> dedupe_classes(ThetaView& view, const std::vector<LatticePoint>& pts) {
    std::map<std::pair<BigInt, BigInt>, ClassRec> classes;
    for (const auto& p : pts) {
        auto key = canonical_preimage(view, p.x, p.y);
        if (classes.count(key)) continue;
        ClassRec rec;
        rec.pre = key;
        rec.pt = make_lattice_point(view.theta(), key.first, key.second);
        classes.emplace(key, std::move(rec));
    }
    std::vector<ClassRec> out;
    out.reserve(classes.size());
    for (auto& [k, v] : classes) out.push_back(std::move(v));
    return out;
}

void label_classes(ThetaView& view, std::vector<ClassRec>& classes) {
    CFNumber& cf = view.cf();
    std::map<std::pair<BigInt, BigInt>, long> conv_keys;
    BigInt max_comp(0);
    for (const auto& c : classes) {
        max_comp = std::max(max_comp, BigInt(::abs(c.pre.first)));
        max_comp = std::max(max_comp, BigInt(::abs(c.pre.second)));
    }
    conv_keys[canonical_preimage(view, BigInt(1), BigInt(0))] = -1;
    for (long k = 0;; ++k) {
        Convergent c;
        try {
            c = cf.at(k);
        } catch (const quotients_exhausted&) {
            break;
        }
        if (c.q > max_comp) break;  // p_k >= q_k, so no later class can match
        conv_keys[canonical_preimage(view, c.q, c.p)] = k;
    }
    for (auto& c : classes) {
        auto it = conv_keys.find(c.pre);
        if (it != conv_keys.end()) c.conv_k = it->second;
    }
}

void sort_by_sup(ThetaView& view, std::vector<ClassRec>& classes) {
    std::stable_sort(classes.begin(), classes.end(), [&](const ClassRec& a, const ClassRec& b) {
        if (a.pt.sup.hi < b.pt.sup.lo) return true;
        if (a.pt.sup.lo > b.pt.sup.hi) return false;
        Ord o = compare_sup(view, a.pre, b.pre);
        if (o != Ord::equal) return o == Ord::less;
        OrdT p = compare_pi2(view, a.pre, b.pre);
        if (p == OrdT::less) return true;
        if (p == OrdT::greater) return false;
        return a.pre < b.pre;
    });
}

// Pareto staircase on (|z1|, |z2|) value pairs; both orientations of every
// class participate so rotations are accounted for.  A point is a relative
// minimum iff no other value pair is coordinatewise <= its own (equal value
// pairs survive together: the defining sum inequality is strict).  Only
// linear forms are compared here, so every comparison is decidable.
std::vector<ClassRec> staircase_relative(ThetaView& view, std::vector<ClassRec>& classes) {
    struct Entry {
        LinForm uf, vf;
        RatInterval u, v;
        std::size_t cls;
        bool swapped;
    };
    std::vector<Entry> entries;
    entries.reserve(classes.size() * 2);
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& [x, y] = classes[i].pre;
        LinForm f1 = z1_form(x, y), f2 = z2_form(x, y);
        RatInterval u = eval_abs_form(view.theta(), f1);
        RatInterval v = eval_abs_form(view.theta(), f2);
        entries.push_back({f1, f2, u, v, i, false});
        entries.push_back({f2, f1, v, u, i, true});
    }
    auto cmp_u = [&](const Entry& a, const Entry& b) -> Ord {
        if (a.u.hi < b.u.lo) return Ord::less;
        if (a.u.lo > b.u.hi) return Ord::greater;
        return compare_abs_forms(view, a.uf, b.uf);
    };
    auto cmp_v = [&](const Entry& a, const Entry& b) -> Ord {
        if (a.v.hi < b.v.lo) return Ord::less;
        if (a.v.lo > b.v.hi) return Ord::greater;
        return compare_abs_forms(view, a.vf, b.vf);
    };
    std::sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) {
        Ord o = cmp_u(a, b);
        if (o != Ord::equal) return o == Ord::less;
        o = cmp_v(a, b);
        if (o != Ord::equal) return o == Ord::less;
        auto ka = std::make_tuple(classes[a.cls].pre, a.swapped);
        auto kb = std::make_tuple(classes[b.cls].pre, b.swapped);
        return ka < kb;
    });

    std::vector<char> survives(classes.size(), 0);
    const Entry* best_v = nullptr;  // minimal v among strictly smaller u
    std::size_t i = 0;
    while (i < entries.size()) {
        std::size_t j = i + 1;
        while (j < entries.size() && cmp_u(entries[i], entries[j]) == Ord::equal) ++j;
        std::size_t gmin = i;
        for (std::size_t g = i + 1; g < j; ++g)
            if (cmp_v(entries[g], entries[gmin]) == Ord::less) gmin = g;
        for (std::size_t g = i; g < j; ++g) {
            bool below_prev = !best_v || cmp_v(entries[g], *best_v) == Ord::less;
            bool group_minimal = g == gmin || cmp_v(entries[g], entries[gmin]) == Ord::equal;
            if (below_prev && group_minimal && !entries[g].swapped)
                survives[entries[g].cls] = 1;
        }
        if (!best_v || cmp_v(entries[gmin], *best_v) == Ord::less) best_v = &entries[gmin];
        i = j;
    }

    std::vector<ClassRec> out;
    for (std::size_t c = 0; c < classes.size(); ++c)
        if (survives[c]) out.push_back(classes[c]);
    return out;
}

// Sweep in ascending sup order deciding sup-ball product minimality.  In
// definition mode a point is kept iff no processed point (sup <= its own)
// has certifiedly smaller pi2.  In strict-filter mode a point is kept iff
// its pi2 is certifiedly below every earlier point's.  Undecidable product
// comparisons become tie notes and exclude the point from the kept list.
struct HyperResult {
    std::vector<std::size_t> kept;
    std::vector<TieNote> ties;
};

HyperResult hyperbolic_sweep(ThetaView& view, const std::vector<ClassRec>& ordered,
                             bool strict_filter) {
    HyperResult res;
    struct Low {
        Rat lo;
        std::size_t idx;
    };
    std::vector<Low> lows;  // processed points sorted by pi2 lower endpoint
    std::optional<Rat> min_lo, min_hi;

    auto decide = [&](std::size_t zi, const RatInterval& pz,
                      std::span<const std::size_t> peers) -> int {
        // 1 keep, 0 drop, -1 tie
        bool peers_pending = !peers.empty();
        if (!min_hi && !peers_pending) return 1;
        if (min_lo && pz.hi < *min_lo && !peers_pending) return 1;
        if (min_hi && pz.lo > *min_hi) return 0;  // the running minimum's witness beats it
        bool unknown_seen = false;
        auto check = [&](std::size_t wi) -> bool {  // true = certified drop
            OrdT o = compare_pi2(view, ordered[zi].pre, ordered[wi].pre);
            if (strict_filter) {
                if (o == OrdT::less) return false;
                if (o == OrdT::unknown) {
                    unknown_seen = true;
                    res.ties.push_back({ordered[zi].pre, ordered[wi].pre});
                    return false;
                }
                return true;  // greater or equal: not strictly below
            }
            if (o == OrdT::greater) return true;
            if (o == OrdT::unknown) {
                unknown_seen = true;
                res.ties.push_back({ordered[zi].pre, ordered[wi].pre});
            }
            return false;  // less/equal never violates the definition
        };
        for (const Low& w : lows) {
            // Sorted by lo: once lo > pz.hi every remaining point is
            // certifiedly above z, harmless in both modes.
            if (w.lo > pz.hi) break;
            if (check(w.idx)) return 0;
        }
        for (std::size_t wi : peers)
            if (check(wi)) return 0;
        return unknown_seen ? -1 : 1;
    };

    std::size_t i = 0;
    while (i < ordered.size()) {
        std::size_t j = i + 1;
        if (!strict_filter) {
            // Points tied in sup must see each other as potential witnesses.
            while (j < ordered.size() && compare_sup(view, ordered[i].pre, ordered[j].pre) == Ord::equal)
                ++j;
        }
        std::vector<RatInterval> pzs;
        for (std::size_t g = i; g < j; ++g) pzs.push_back(eval_pi2(view.theta(), ordered[g].pre));
        for (std::size_t g = i; g < j; ++g) {
            std::vector<std::size_t> peers;
            for (std::size_t h = i; h < j; ++h)
                if (h != g) peers.push_back(h);
            if (decide(g, pzs[g - i], peers) == 1) res.kept.push_back(g);
        }
        for (std::size_t g = i; g < j; ++g) {
            const RatInterval& pz = pzs[g - i];
            if (!min_lo || pz.lo < *min_lo) min_lo = pz.lo;
            if (!min_hi || pz.hi < *min_hi) min_hi = pz.hi;
            Low entry{pz.lo, g};
            auto pos = std::lower_bound(lows.begin(), lows.end(), entry,
                                        [](const Low& a, const Low& b) { return a.lo < b.lo; });
            lows.insert(pos, entry);
        }
        i = j;
    }
    return res;
}

}  // namespace

MinimaSequence brute_force_minima(CFNumber& cf, const Rat& T, MinimaKind kind,
                                  unsigned long long budget) {
    if (T <= 0) throw std::domain_error("bound must be positive");
    ThetaView view(cf, default_view_width());
    if (!theta_greater_one(view)) throw std::domain_error("lattice requires theta > 1");
    auto pts = enumerate_box(cf, T, T, budget);
    auto classes = dedupe_classes(view, pts);
    label_classes(view, classes);

    MinimaSequence seq;
    seq.kind = kind;
    seq.bound = T;

    if (kind == MinimaKind::relative) {
        auto survivors = staircase_relative(view, classes);
        sort_by_sup(view, survivors);
        for (auto& c : survivors) {
            c.pt.k = c.conv_k;
            seq.points.push_back(c.pt);
        }
        seq.complete = true;
        return seq;
    }

    sort_by_sup(view, classes);
    auto res = hyperbolic_sweep(view, classes, /*strict_filter=*/false);
    for (std::size_t idx : res.kept) {
        ClassRec& c = classes[idx];
        c.pt.k = c.conv_k;
        seq.points.push_back(c.pt);
    }
    seq.ties = std::move(res.ties);
    seq.complete = seq.ties.empty();
    return seq;
}

MinimaSequence hyperbolic_from_relative(CFNumber& cf, const MinimaSequence& relative) {
    if (relative.kind != MinimaKind::relative)
        throw std::domain_error("hyperbolic_from_relative: input must be a relative sequence");
    ThetaView view(cf, default_view_width());

    std::vector<ClassRec> ordered;
    ordered.reserve(relative.points.size());
    for (const auto& p : relative.points) {
        ClassRec rec;
        rec.pre = {p.x, p.y};
        rec.pt = p;
        rec.conv_k = p.k;
        ordered.push_back(std::move(rec));
    }
    auto res = hyperbolic_sweep(view, ordered, /*strict_filter=*/true);

    MinimaSequence seq;
    seq.kind = MinimaKind::hyperbolic;
    seq.bound = relative.bound;
    for (std::size_t idx : res.kept) seq.points.push_back(ordered[idx].pt);
    seq.ties = std::move(res.ties);

    // Boundary rule: the last kept point stays provisional unless some later
    // relative minimum inside the bound has certifiedly larger pi2.
    if (!res.kept.empty()) {
        std::size_t last = res.kept.back();
        bool followed = false;
        for (std::size_t j = last + 1; j < ordered.size() && !followed; ++j)
            followed = compare_pi2(view, ordered[j].pre, ordered[last].pre) == OrdT::greater;
        seq.points.back().provisional = !followed;
    }
    seq.complete = seq.ties.empty();
    return seq;
}

bool empty_parallelogram(CFNumber& cf, long k, unsigned long long budget) {
    ThetaView view(cf, default_view_width());
    if (!theta_greater_one(view)) throw std::domain_error("lattice requires theta > 1");
    const Convergent ck = cf.at(k);
    const Convergent cn = cf.at(k + 1);
    if (!cn.q.fits_slong_p() || static_cast<unsigned long long>(cn.q.get_si()) > budget)
        throw budget_error("empty_parallelogram: |x| range exceeds budget",
                           cn.q.fits_ulong_p() ? cn.q.get_ui() : ~0ull);
    long X = cn.q.get_si();
    const LinForm dform = z1_form(ck.q, ck.p);  // |q_k t - p_k|

    // x = 0 admits only y = 0 (the width is below 1); start at 1 and use the
    // point symmetry to cover negative x.
    for (long x = 1; x <= X; ++x) {
        RatInterval tx = view.theta() * Rat(x);
        RatInterval d = eval_abs_form(view.theta(), dform);
        BigInt ylo = ceil_rat(tx.lo - d.hi), yhi = floor_rat(tx.hi + d.hi);
        for (BigInt y = ylo; y <= yhi; ++y) {
            BigInt bx(x);
            if ((bx == ck.q && y == ck.p) || (bx == cn.q && y == cn.p)) continue;
            if (compare_abs_forms(view, z1_form(bx, y), dform) != Ord::greater) return false;
        }
    }
    return true;
}

std::optional<ProductFloor> global_pi2_floor(CFNumber& cf) {
    auto bound = cf.rule().quotient_bound();
    if (!bound || cf.is_rational()) return std::nullopt;
    // Every nonzero point is coordinate-dominated by a relative minimum;
    // those are the unit class (pi2 = theta > 1) and the convergent classes,
    // whose pi2 = D_k (1 + theta p_k/q_k) > 2 D_k > 2/(a_{k+1}+2) >= 2/(A+2),
    // using D_k >= q_k/(q_k + q_{k+1}) and q_{k+1} < (a_{k+1}+1) q_k.
    ProductFloor f;
    f.quotient_bound = *bound;
    f.pi2_floor = make_rat(BigInt(2), *bound + 2);
    f.assumes_bounded_tail = cf.rule().is_explicit();
    return f;
}

std::set<std::pair<std::string, std::string>> class_key_set(CFNumber& cf,
                                                            const MinimaSequence& seq) {
    ThetaView view(cf, default_view_width());
    std::set<std::pair<std::string, std::string>> keys;
    for (const auto& p : seq.points) {
        auto key = canonical_preimage(view, p.x, p.y);
        keys.emplace(key.first.get_str(), key.second.get_str());
    }
    return keys;
}

}  // namespace diophant
