#include "diophant/cf.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <vector>

using namespace diophant;

namespace {

// Independent recurrence oracle: convergents from a plain quotient list.
struct PQ {
    BigInt p, q;
};
std::vector<PQ> recurrence_oracle(const std::vector<long>& quotients) {
    std::vector<PQ> out;
    BigInt p_prev(1), q_prev(0);
    for (std::size_t i = 0; i < quotients.size(); ++i) {
        BigInt a(quotients[i]);
        if (i == 0) {
            out.push_back({a, BigInt(1)});
        } else {
            out.push_back({a * out.back().p + p_prev, a * out.back().q + q_prev});
            p_prev = out[out.size() - 2].p;
            q_prev = out[out.size() - 2].q;
        }
    }
    return out;
}

// Independent Euclid oracle for a rational expansion.
std::vector<BigInt> euclid_oracle(long num, long den) {
    std::vector<BigInt> out;
    BigInt r0(num), r1(den);
    while (r1 != 0) {
        BigInt a, rem;
        mpz_fdiv_qr(a.get_mpz_t(), rem.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
        out.push_back(a);
        r0 = r1;
        r1 = rem;
    }
    return out;
}

CFNumber golden() { return CFNumber(QuotientRule::periodic({BigInt(1)}, {BigInt(1)})); }
CFNumber root2() { return CFNumber(QuotientRule::periodic({BigInt(1)}, {BigInt(2)})); }

}  // namespace

TEST_CASE("rule parsing round-trips") {
    for (const char* spec : {"power:1/1", "power:2", "super", "quotients:1,2,3",
                             "periodic:1;2", "periodic:;1", "rational:10/7"}) {
        QuotientRule r = QuotientRule::parse(spec);
        QuotientRule again = QuotientRule::parse(r.to_string());
        CHECK(r.to_string() == again.to_string());
    }
    CHECK_THROWS(QuotientRule::parse("nonsense:1"));
    CHECK_THROWS(QuotientRule::parse("power:0"));
    CHECK_THROWS(QuotientRule::parse("quotients:1,0,2"));
    CHECK_THROWS(QuotientRule::parse("periodic:1;"));
    CHECK_THROWS(QuotientRule::parse("rational:3/7"));  // below 1
}

TEST_CASE("golden ratio convergents are Fibonacci") {
    CFNumber cf = golden();
    auto conv = cf.extend_convergents(4);
    auto oracle = recurrence_oracle({1, 1, 1, 1, 1});
    REQUIRE(conv.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(conv[i].p == oracle[i].p);
        CHECK(conv[i].q == oracle[i].q);
    }
    CHECK(conv[4].p == 8);
    CHECK(conv[4].q == 5);
}

TEST_CASE("power growth gamma=1 produces the expected table") {
    CFNumber cf(QuotientRule::power_growth(Rat(1)));
    auto conv = cf.extend_convergents(4);
    long expect_a[] = {1, 2, 3, 8, 59};
    auto oracle = recurrence_oracle({1, 2, 3, 8, 59});
    REQUIRE(conv.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(conv[i].a == expect_a[i]);
        CHECK(conv[i].p == oracle[i].p);
        CHECK(conv[i].q == oracle[i].q);
    }
    CHECK(conv[4].p == 4907);
    CHECK(conv[4].q == 3429);
}

TEST_CASE("next_quotient growth rules") {
    CFNumber pg(QuotientRule::power_growth(Rat(1)));
    CHECK(*pg.next_quotient() == 1);  // a_0
    CHECK(*pg.next_quotient() == 2);  // after q_0 = 1
    pg.extend_convergents(2);
    CHECK(pg.cached(2).q == 7);
    CHECK(*pg.next_quotient() == 8);  // floor(7) + 1

    CFNumber sg(QuotientRule::super_growth());
    sg.extend_convergents(2);
    CHECK(sg.cached(1).a == 2);
    CHECK(sg.cached(1).q == 2);
    CHECK(sg.cached(2).a == 3);  // floor(2^1) + 1 after q_1 = 2
    sg.extend_convergents(3);
    CHECK(sg.cached(3).a == 50);  // floor(7^2) + 1
}

TEST_CASE("rational expansions terminate via Euclid") {
    CFNumber cf(QuotientRule::rational(BigInt(10), BigInt(7)));
    auto conv = cf.extend_convergents(10);
    auto oracle = euclid_oracle(10, 7);
    REQUIRE(conv.size() == oracle.size());
    for (std::size_t i = 0; i < conv.size(); ++i) CHECK(conv[i].a == oracle[i]);
    CHECK(cf.terminated());
    CHECK(conv.back().p == 10);
    CHECK(conv.back().q == 7);
    CHECK(cf.next_quotient() == std::nullopt);
}

TEST_CASE("explicit list exhaustion is an error, not termination") {
    CFNumber cf(QuotientRule::explicit_list({BigInt(1), BigInt(2), BigInt(3)}));
    cf.extend_convergents(2);
    CHECK(!cf.terminated());
    CHECK_THROWS_AS(cf.at(3), quotients_exhausted);
}

TEST_CASE("determinant identity across rules and depths") {
    std::vector<CFNumber> numbers;
    numbers.push_back(golden());
    numbers.push_back(root2());
    numbers.emplace_back(QuotientRule::power_growth(Rat(1)));
    numbers.emplace_back(QuotientRule::power_growth(rat_from_long(1, 2)));
    numbers.emplace_back(QuotientRule::super_growth());
    numbers.emplace_back(QuotientRule::rational(BigInt(355), BigInt(113)));
    numbers.emplace_back(QuotientRule::explicit_list({BigInt(2), BigInt(7), BigInt(1), BigInt(5)}));
    for (auto& cf : numbers) {
        long depth = cf.rule().is_super_growth()   ? 6
                     : cf.rule().is_power_growth() ? 10
                     : cf.rule().is_explicit()     ? 3
                                                   : 12;
        auto conv = cf.extend_convergents(depth);
        for (std::size_t k = 1; k < conv.size(); ++k) {
            BigInt det = conv[k].p * conv[k - 1].q - conv[k - 1].p * conv[k].q;
            BigInt expected = (k % 2 == 0) ? BigInt(-1) : BigInt(1);  // (-1)^(k-1)
            CHECK(det == expected);
            CHECK(conv[k].q >= conv[k - 1].q);
            if (k >= 2) CHECK(conv[k].q > conv[k - 1].q);
        }
    }
}

TEST_CASE("theta enclosures bracket the value and nest under refinement") {
    CFNumber pg(QuotientRule::power_growth(Rat(1)));
    RatInterval t1 = pg.enclose_theta(2, 1);
    CHECK(t1.lo == make_rat(BigInt(4907), BigInt(3429)));
    CHECK(t1.hi == make_rat(BigInt(83), BigInt(58)));

    CFNumber g = golden();
    RatInterval t0 = g.enclose_theta(0, 0);
    CHECK(t0.lo == 1);
    CHECK(t0.hi == 2);
    for (long refine = 0; refine < 6; ++refine) {
        RatInterval outer = g.enclose_theta(0, refine);
        RatInterval inner = g.enclose_theta(0, refine + 1);
        CHECK(outer.lo <= inner.lo);
        CHECK(inner.hi <= outer.hi);
        // width is exactly 1/(q_j q_{j+1})
        const Convergent& a = g.cached(refine);
        const Convergent& b = g.cached(refine + 1);
        CHECK(outer.width() == make_rat(BigInt(1), a.q * b.q));
    }

    CFNumber r(QuotientRule::rational(BigInt(10), BigInt(7)));
    RatInterval tr = r.enclose_theta(5, 2);
    CHECK(tr.is_point());
    CHECK(tr.lo == rat_from_long(10, 7));
}

TEST_CASE("mediant bracket agrees with the convergent bracket") {
    CFNumber pg(QuotientRule::power_growth(Rat(1)));
    pg.extend_convergents(7);
    for (long j = 1; j <= 5; ++j) {
        RatInterval med = pg.enclose_theta_mediant(j);
        RatInterval conv = pg.enclose_theta(j, 0);  // [c_j, c_{j+1}] ordered
        // both contain theta, so they overlap
        CHECK(med.lo <= conv.hi);
        CHECK(conv.lo <= med.hi);
        // the mediant bracket needs no convergent beyond j and contains the deeper one
        CHECK(med.contains(pg.enclose_theta(j, 1)));
    }
}

TEST_CASE("defect enclosures: golden ratio and the quotient sandwich") {
    CFNumber g = golden();
    RatInterval d1 = g.approx_defect(1, 12);
    // D_1 = 2 - phi = 0.381966...
    CHECK(d1.lo > rat_from_long(3819, 10000));
    CHECK(d1.hi < rat_from_long(3820, 10000));
    CHECK(d1.lo > rat_from_long(1, 3));  // bound from a_2 = 1
    CHECK(d1.hi < 1);

    CFNumber pg(QuotientRule::power_growth(Rat(1)));
    RatInterval d3 = pg.approx_defect(3, 2);
    CHECK(d3.lo > rat_from_long(1, 61));  // a_4 = 59
    CHECK(d3.hi < rat_from_long(1, 59));

    CFNumber r(QuotientRule::rational(BigInt(10), BigInt(7)));
    r.extend_convergents(10);
    RatInterval dr = r.approx_defect(r.last_index(), 2);
    CHECK(dr.is_point());
    CHECK(dr.lo == 0);
}

TEST_CASE("classical sandwich 1/(a+2) < D_k < 1/a across rules") {
    auto check_rule = [](CFNumber cf, long maxk, long refine) {
        cf.extend_convergents(maxk + refine + 1);
        for (long k = 0; k <= maxk; ++k) {
            RatInterval d = cf.approx_defect(k, refine);
            BigInt a_next = cf.cached(k + 1).a;
            CHECK(d.lo > make_rat(BigInt(1), a_next + 2));
            CHECK(d.hi < make_rat(BigInt(1), a_next));
            // linear bracket, derived without the deep enclosure, overlaps
            RatInterval lin = cf.linear_defect(k) * Rat(cf.cached(k).q);
            CHECK(lin.lo <= d.hi);
            CHECK(d.lo <= lin.hi);
        }
    };
    check_rule(golden(), 20, 3);
    check_rule(root2(), 20, 2);
    check_rule(CFNumber(QuotientRule::power_growth(Rat(1))), 10, 2);
    check_rule(CFNumber(QuotientRule::super_growth()), 5, 2);
}

TEST_CASE("power growth sandwiches hold exactly") {
    for (const Rat& g : {rat_from_long(1, 2), Rat(1), Rat(2)}) {
        CFNumber cf(QuotientRule::power_growth(g));
        long depth = g == rat_from_long(1, 2) ? 12 : (g == 1 ? 10 : 7);
        cf.extend_convergents(depth);
        unsigned long u = g.get_num().get_ui(), v = g.get_den().get_ui();
        for (long k = 1; k < depth; ++k) {
            const BigInt& qk = cf.cached(k).q;
            const BigInt& qn = cf.cached(k + 1).q;
            // q_k^(1+g) < q_{k+1} < 3 q_k^(1+g), exactly
            BigInt lhs, rhs, three_v;
            mpz_pow_ui(lhs.get_mpz_t(), qn.get_mpz_t(), v);
            mpz_pow_ui(rhs.get_mpz_t(), qk.get_mpz_t(), u + v);
            mpz_ui_pow_ui(three_v.get_mpz_t(), 3, v);
            CHECK(lhs > rhs);
            CHECK(lhs < three_v * rhs);
            // 1/(q^g + 3) < D_k < 1/q^g via exact power comparisons
            RatInterval lin = cf.linear_defect(k) * Rat(qk);
            CHECK(pow_compare(lin.hi, v, make_rat(BigInt(1), qk), u) == std::strong_ordering::less);
            Rat bound = (1 - 3 * lin.lo) / lin.lo;
            bool lower = bound <= 0 ||
                         pow_compare(Rat(qk), u, bound, v) == std::strong_ordering::greater;
            CHECK(lower);
        }
    }
}

TEST_CASE("cache serialization round-trips and resumes") {
    CFNumber cf(QuotientRule::power_growth(Rat(1)));
    cf.extend_convergents(5);
    auto j = cf.cache_to_json();
    CFNumber back = CFNumber::from_cache_json(j);
    CHECK(back.last_index() == 5);
    back.extend_convergents(8);

    CFNumber fresh(QuotientRule::power_growth(Rat(1)));
    fresh.extend_convergents(8);
    for (long k = 0; k <= 8; ++k) {
        CHECK(back.cached(k).p == fresh.cached(k).p);
        CHECK(back.cached(k).q == fresh.cached(k).q);
    }

    CFNumber r(QuotientRule::rational(BigInt(355), BigInt(113)));
    r.extend_convergents(20);
    CFNumber r2 = CFNumber::from_cache_json(r.cache_to_json());
    CHECK(r2.terminated());
    CHECK(r2.rational_value() == rat_from_long(355, 113));
}

TEST_CASE("digit budget stops runaway growth with a budget error") {
    CFNumber cf(QuotientRule::super_growth(), 2000);
    CHECK_THROWS_AS(cf.extend_convergents(30), budget_error);
    // what was computed before the failure is still usable
    CHECK(cf.last_index() >= 4);
}
