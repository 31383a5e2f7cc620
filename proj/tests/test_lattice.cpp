#include "diophant/lattice.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

using namespace diophant;

namespace {

CFNumber golden() { return CFNumber(QuotientRule::periodic({BigInt(1)}, {BigInt(1)})); }
CFNumber root2() { return CFNumber(QuotientRule::periodic({BigInt(1)}, {BigInt(2)})); }
CFNumber power1() { return CFNumber(QuotientRule::power_growth(Rat(1))); }

// Tiny independent sweep: all preimages in [-n, n]^2 whose images certifiedly
// lie in the box, using a deep theta bracket directly.
std::vector<std::pair<long, long>> box_oracle(CFNumber& cf, long n, const Rat& l1, const Rat& l2) {
    RatInterval th = cf.enclose_theta(0, 40);
    std::vector<std::pair<long, long>> out;
    for (long x = -n; x <= n; ++x)
        for (long y = -n; y <= n; ++y) {
            if (x == 0 && y == 0) continue;
            RatInterval z1 = th * Rat(x) - Rat(y);
            RatInterval z2 = th * Rat(y) + Rat(x);
            RatInterval a1 = abs(z1), a2 = abs(z2);
            bool in = a1.hi <= l1 && a2.hi <= l2;
            bool outside = a1.lo > l1 || a2.lo > l2;
            REQUIRE((in || outside));  // the bracket is tiny; no ambiguity expected
            if (in) out.emplace_back(x, y);
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<long, long>> preimages(const std::vector<LatticePoint>& pts) {
    std::vector<std::pair<long, long>> out;
    for (const auto& p : pts) out.emplace_back(p.x.get_si(), p.y.get_si());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<long, long>> seq_preimages(const MinimaSequence& seq) {
    std::vector<std::pair<long, long>> out;
    for (const auto& p : seq.points) out.emplace_back(p.x.get_si(), p.y.get_si());
    return out;
}

bool contains_value(const RatInterval& i, double v, double slack = 1e-3) {
    return i.lo.get_d() <= v + slack && i.hi.get_d() >= v - slack;
}

}  // namespace

TEST_CASE("convergent and unit points") {
    CFNumber g = golden();
    LatticePoint v1 = convergent_point(g, 1);
    CHECK(v1.x == 1);
    CHECK(v1.y == 2);
    CHECK(contains_value(v1.z1, -0.3819660113));
    CHECK(contains_value(v1.z2, 4.2360679775));

    CFNumber r = root2();
    LatticePoint v0 = convergent_point(r, 0, 8);
    CHECK(v0.x == 1);
    CHECK(v0.y == 1);
    CHECK(v0.pi2.contains(Rat(1)));  // (t-1)(t+1) = t^2 - 1 = 1 at t = sqrt2
    CHECK(v0.pi2.width() < rat_from_long(1, 1000));

    CFNumber pg = power1();
    LatticePoint u = unit_point(pg);
    CHECK(u.x == 1);
    CHECK(u.y == 0);
    LatticePoint w0 = convergent_point(pg, 0);
    // z1 = t - 1, z2 = 1 + t
    CHECK(contains_value(w0.z1, 0.4310293));
    CHECK(contains_value(w0.z2, 2.4310293));
}

TEST_CASE("rotation: preimage map, exact pi2/sup carry-over, order four") {
    CFNumber r = root2();
    LatticePoint p = convergent_point(r, 0);
    LatticePoint rp = rotate(p);
    CHECK(rp.x == -1);
    CHECK(rp.y == 1);
    CHECK(rp.pi2.lo == p.pi2.lo);
    CHECK(rp.pi2.hi == p.pi2.hi);
    CHECK(rp.sup.lo == p.sup.lo);
    LatticePoint p4 = rotate(rotate(rotate(rotate(p))));
    CHECK(p4.x == p.x);
    CHECK(p4.y == p.y);
    // rotated coordinates are (-z2, z1)
    CHECK(rp.z1.lo == (-p.z2).lo);
    CHECK(rp.z2.hi == p.z1.hi);
}

TEST_CASE("canonical class representative is orientation independent") {
    CFNumber g = golden();
    ThetaView view(g, rat_from_long(1, 1000000));
    auto c0 = canonical_preimage(view, BigInt(2), BigInt(3));
    for (auto [x, y] : std::vector<std::pair<long, long>>{{-2, -3}, {-3, 2}, {3, -2}}) {
        auto c = canonical_preimage(view, BigInt(x), BigInt(y));
        CHECK(c == c0);
    }
}

TEST_CASE("enumerate_box matches the independent sweep and respects boundaries") {
    CFNumber r = root2();
    // empty small box: the first minimum has sup = sqrt2 > 1/2
    CHECK(enumerate_box(r, rat_from_long(1, 2), rat_from_long(1, 2)).empty());

    // |z1| <= 1, |z2| <= 3 contains exactly +-(1,1) and the boundary points +-(0,1)
    auto pts = enumerate_box(r, Rat(1), Rat(3));
    auto got = preimages(pts);
    std::vector<std::pair<long, long>> expect = {{-1, -1}, {0, -1}, {0, 1}, {1, 1}};
    CHECK(got == expect);
    CHECK(got == box_oracle(r, 5, Rat(1), Rat(3)));

    CFNumber g = golden();
    auto gpts = enumerate_box(g, Rat(5), Rat(5));
    CHECK(preimages(gpts) == box_oracle(g, 8, Rat(5), Rat(5)));
    // closed under negation and rotation of preimages
    auto gpre = preimages(gpts);
    std::set<std::pair<long, long>> keys(gpre.begin(), gpre.end());
    for (auto [x, y] : keys) {
        CHECK(keys.count({-x, -y}));
        CHECK(keys.count({-y, x}));
    }
}

TEST_CASE("enumerate_box budget error carries the attempted count") {
    CFNumber g = golden();
    try {
        enumerate_box(g, Rat(100), Rat(100), 10);
        FAIL("expected budget_error");
    } catch (const budget_error& e) {
        CHECK(e.attempted() > 10);
    }
}

TEST_CASE("relative minima from convergents: examples") {
    CFNumber r = root2();
    MinimaSequence seq = relative_minima_from_convergents(r, Rat(50));
    std::vector<std::pair<long, long>> expect = {{1, 0}, {1, 1}, {2, 3}, {5, 7}, {12, 17}};
    CHECK(seq_preimages(seq) == expect);
    CHECK(seq.complete);
    const double sups[] = {1.41421, 2.41421, 6.24264, 14.89949, 36.04163};
    for (std::size_t i = 0; i < seq.points.size(); ++i)
        CHECK(contains_value(seq.points[i].sup, sups[i]));
    // ordered by strictly increasing sup, certified
    for (std::size_t i = 0; i + 1 < seq.points.size(); ++i)
        CHECK(seq.points[i].sup.hi < seq.points[i + 1].sup.lo);

    CFNumber g = golden();
    MinimaSequence gs = relative_minima_from_convergents(g, Rat(3));
    CHECK(seq_preimages(gs) == std::vector<std::pair<long, long>>{{1, 0}, {1, 1}});

    MinimaSequence tiny = relative_minima_from_convergents(g, rat_from_long(1, 10));
    CHECK(tiny.points.empty());

    CFNumber rat(QuotientRule::rational(BigInt(10), BigInt(7)));
    CHECK_THROWS_AS(relative_minima_from_convergents(rat, Rat(10)), std::domain_error);
}

TEST_CASE("brute relative minima equal the convergent route") {
    struct Case {
        CFNumber cf;
        long T;
    };
    std::vector<Case> cases;
    cases.push_back({root2(), 80});
    cases.push_back({golden(), 80});
    cases.push_back({power1(), 60});
    cases.push_back({CFNumber(QuotientRule::power_growth(rat_from_long(1, 2))), 60});
    for (auto& c : cases) {
        MinimaSequence conv = relative_minima_from_convergents(c.cf, Rat(c.T));
        MinimaSequence brute = brute_force_minima(c.cf, Rat(c.T), MinimaKind::relative);
        CHECK(brute.complete);
        CHECK(class_key_set(c.cf, conv) == class_key_set(c.cf, brute));
        CHECK(conv.points.size() == brute.points.size());
    }
}

TEST_CASE("brute hyperbolic minima: sqrt2 keeps the unit class and the product-1 class") {
    CFNumber r = root2();
    MinimaSequence seq = brute_force_minima(r, Rat(100), MinimaKind::hyperbolic);
    CHECK(seq.ties.empty());
    CHECK(seq.complete);
    REQUIRE(seq.points.size() == 2);
    CHECK(contains_value(seq.points[0].sup, 1.41421));
    CHECK(contains_value(seq.points[0].pi2, 1.41421));
    CHECK(contains_value(seq.points[1].sup, 2.41421));
    CHECK(seq.points[1].pi2.contains(Rat(1)));
    // strictly increasing sup, strictly decreasing pi2 (certified)
    CHECK(seq.points[0].sup.hi < seq.points[1].sup.lo);
    CHECK(seq.points[1].pi2.hi < seq.points[0].pi2.lo);
}

TEST_CASE("brute hyperbolic minima: power growth keeps every convergent class") {
    CFNumber pg = power1();
    MinimaSequence seq = brute_force_minima(pg, Rat(200), MinimaKind::hyperbolic);
    CHECK(seq.ties.empty());
    REQUIRE(seq.points.size() == 5);
    std::vector<long> ks;
    for (const auto& p : seq.points) ks.push_back(p.k);
    CHECK(ks == std::vector<long>{-1, 0, 1, 2, 3});
    const double pi2s[] = {1.43103, 1.04785, 0.86808, 0.36667, 0.05155};
    for (std::size_t i = 0; i < seq.points.size(); ++i)
        CHECK(contains_value(seq.points[i].pi2, pi2s[i]));
    for (std::size_t i = 0; i + 1 < seq.points.size(); ++i) {
        CHECK(seq.points[i].sup.hi < seq.points[i + 1].sup.lo);
        CHECK(seq.points[i + 1].pi2.hi < seq.points[i].pi2.lo);
    }
}

TEST_CASE("golden ratio: equal products surface as ties, not guesses") {
    CFNumber g = golden();
    MinimaSequence seq = brute_force_minima(g, Rat(30), MinimaKind::hyperbolic);
    // every unit-norm class shares pi2 = phi exactly; only the first point is
    // decided, the coincidences are reported
    CHECK(!seq.ties.empty());
    CHECK(!seq.complete);
    REQUIRE(!seq.points.empty());
    CHECK(seq.points.front().k == -1);
}

TEST_CASE("hyperbolic subset of relative (brute, decided sets)") {
    for (CFNumber cf : {root2(), power1()}) {
        MinimaSequence rel = brute_force_minima(cf, Rat(100), MinimaKind::relative);
        MinimaSequence hyp = brute_force_minima(cf, Rat(100), MinimaKind::hyperbolic);
        auto rk = class_key_set(cf, rel);
        auto hk = class_key_set(cf, hyp);
        CHECK(std::includes(rk.begin(), rk.end(), hk.begin(), hk.end()));
    }
}

TEST_CASE("hyperbolic filter over the relative sequence matches brute force") {
    for (CFNumber cf : {root2(), power1()}) {
        MinimaSequence rel = relative_minima_from_convergents(cf, Rat(100));
        MinimaSequence filt = hyperbolic_from_relative(cf, rel);
        MinimaSequence brute = brute_force_minima(cf, Rat(100), MinimaKind::hyperbolic);
        CHECK(class_key_set(cf, filt) == class_key_set(cf, brute));
        CHECK(filt.ties.empty());
    }
    // sqrt2: the filtered tail is certifiedly followed, so not provisional
    CFNumber r = root2();
    MinimaSequence filt = hyperbolic_from_relative(r, relative_minima_from_convergents(r, Rat(100)));
    REQUIRE(filt.points.size() == 2);
    CHECK(!filt.points.back().provisional);
    // power growth: the last kept point has no later relative minimum inside
    // the bound, so it stays provisional
    CFNumber pg = power1();
    MinimaSequence pf = hyperbolic_from_relative(pg, relative_minima_from_convergents(pg, Rat(200)));
    REQUIRE(!pf.points.empty());
    CHECK(pf.points.back().provisional);

    MinimaSequence empty_rel;
    empty_rel.kind = MinimaKind::relative;
    empty_rel.bound = Rat(1);
    empty_rel.complete = true;
    CFNumber g = golden();
    CHECK(hyperbolic_from_relative(g, empty_rel).points.empty());
}

TEST_CASE("empty parallelogram sweeps") {
    CFNumber g = golden();
    CHECK(empty_parallelogram(g, 0));
    CHECK(empty_parallelogram(g, 3));
    CFNumber r = root2();
    CHECK(empty_parallelogram(r, 2));
    CFNumber pg = power1();
    for (long k = 0; k <= 3; ++k) CHECK(empty_parallelogram(pg, k));
}

TEST_CASE("product floor for bounded-quotient rules") {
    CFNumber g = golden();
    auto f = global_pi2_floor(g);
    REQUIRE(f.has_value());
    CHECK(f->pi2_floor == rat_from_long(2, 3));
    CHECK(!f->assumes_bounded_tail);
    // the floor really is below every observed pi2
    auto pts = enumerate_box(g, Rat(40), Rat(40));
    for (const auto& p : pts) CHECK(p.pi2.lo > f->pi2_floor);

    CFNumber ex(QuotientRule::explicit_list(std::vector<BigInt>(12, BigInt(1))));
    auto fe = global_pi2_floor(ex);
    REQUIRE(fe.has_value());
    CHECK(fe->assumes_bounded_tail);

    CFNumber pg = power1();
    CHECK(!global_pi2_floor(pg).has_value());
}

TEST_CASE("theta below one is rejected module-wide") {
    CFNumber one(QuotientRule::rational(BigInt(1), BigInt(1)));
    CHECK_THROWS_AS(enumerate_box(one, Rat(1), Rat(1)), std::domain_error);
    CHECK_THROWS_AS(unit_point(one), std::domain_error);
}

TEST_CASE("rational lattices still enumerate exactly") {
    CFNumber r(QuotientRule::rational(BigInt(3), BigInt(2)));
    auto pts = enumerate_box(r, Rat(2), Rat(3));
    // theta = 3/2: coordinates are exact rationals; spot-check (1, 1) -> z1 = 1/2
    bool found = false;
    for (const auto& p : pts)
        if (p.x == 1 && p.y == 1) {
            found = true;
            CHECK(p.z1.is_point());
            CHECK(p.z1.lo == rat_from_long(1, 2));
            CHECK(p.z2.lo == rat_from_long(5, 2));
        }
    CHECK(found);
}

TEST_CASE("rotation invariance: swapped box bounds contain the rotated preimages") {
    CFNumber r = root2();
    auto pts = enumerate_box(r, Rat(1), Rat(3));
    auto swapped = enumerate_box(r, Rat(3), Rat(1));
    std::set<std::pair<long, long>> rot;
    for (const auto& p : pts) rot.emplace(-p.y.get_si(), p.x.get_si());
    auto spre = preimages(swapped);
    std::set<std::pair<long, long>> skeys(spre.begin(), spre.end());
    CHECK(rot == skeys);
}
