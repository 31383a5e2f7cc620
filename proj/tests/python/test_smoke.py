"""Smoke tests for the python bindings, with small independent oracles."""

import math
from fractions import Fraction

import pytest

import diophant as dp


def frac_pair(pair):
    return Fraction(pair[0]), Fraction(pair[1])


def fibonacci_convergents(n):
    rows = [(1, 1)]
    p_prev, q_prev = 1, 0
    for _ in range(n):
        p, q = rows[-1]
        rows.append((p + p_prev, q + q_prev))
        p_prev, q_prev = p, q
    return rows


def test_convergent_tables():
    cf = dp.ContinuedFraction("power:1/1")
    assert cf.quotients(4) == [1, 2, 3, 8, 59]
    conv = cf.convergents(4)
    assert [(p, q) for (_, _, p, q) in conv] == [(1, 1), (3, 2), (10, 7), (83, 58), (4907, 3429)]

    g = dp.ContinuedFraction("periodic:1;1")
    got = [(p, q) for (_, _, p, q) in g.convergents(6)]
    assert got == fibonacci_convergents(6)

    r = dp.ContinuedFraction("rational:10/7")
    r.convergents(10)
    assert r.terminated


def test_theta_brackets_value():
    cf = dp.ContinuedFraction("periodic:1;2")  # sqrt(2)
    lo, hi = frac_pair(cf.theta(0, refine=10))
    assert lo < hi
    assert float(lo) < math.sqrt(2) < float(hi)
    assert float(hi - lo) < 1e-7


def test_floor_pow_against_python():
    assert dp.floor_pow(7, "1/2") == 2
    assert dp.floor_pow(3429, "2") == 3429**2
    for q in (1, 5, 144, 10**6):
        for num, den in ((1, 2), (2, 3), (3, 1)):
            r = dp.floor_pow(q, f"{num}/{den}")
            assert r**den <= q**num < (r + 1) ** den


def test_pow_compare():
    assert dp.pow_compare("2", 3, "8", 1) == 0
    assert dp.pow_compare("7", 3, "58", 2) == -1
    assert dp.pow_compare("3/2", 2, "2", 1) == 1


def test_log_enclose_brackets_math_log():
    for x in ("2", "10", "1/3", "355/113"):
        lo, hi = frac_pair(dp.log_enclose(x, bits=64))
        ln = math.log(Fraction(x))
        # float(...) rounds the exact rational endpoints; allow one ulp of slack
        assert float(lo) <= ln + 1e-12
        assert ln - 1e-12 <= float(hi)
        assert float(hi - lo) < 1e-15


def test_exponents_power_growth():
    out = dp.exponents("power:1/1", depth=12)
    lat = out["omega_hat_hat_lattice"]
    assert lat["infinite"] is False
    tail_lo = Fraction(lat["tail"]["lo"]["rat"])
    tail_hi = Fraction(lat["tail"]["hi"]["rat"])
    assert abs(tail_lo - Fraction(1, 4)) < Fraction(1, 50)
    assert abs(tail_hi - Fraction(1, 4)) < Fraction(1, 50)
    assert Fraction(lat["target"]["rat"]) == Fraction(1, 4)
    num = out["omega_hat_hat"]
    assert Fraction(num["tail"]["lo"]["rat"]) == 1 + 2 * tail_lo


def test_exponents_rational_infinite():
    out = dp.exponents("rational:10/7", depth=5)
    for key in ("omega", "omega_hat", "omega_hat_hat", "omega_hat_hat_lattice"):
        assert out[key]["infinite"] is True


def test_minima_routes_agree():
    conv = dp.minima("periodic:1;2", "50", kind="relative", mode="convergent")
    brute = dp.minima("periodic:1;2", "50", kind="relative", mode="brute")
    assert len(conv["points"]) == len(brute["points"]) == 5
    hyp = dp.minima("periodic:1;2", "100", kind="hyperbolic", mode="brute")
    assert len(hyp["points"]) == 2
    assert hyp["ties"] == []


def test_profile_constant_for_golden():
    out = dp.profile("periodic:1;1", ["10", "100", "1000"])
    rows = out["profile"]
    assert all(not r["empty"] for r in rows)
    phi = (1 + math.sqrt(5)) / 2
    for r in rows:
        assert float(Fraction(r["f2"]["lo"]["rat"])) <= phi <= float(Fraction(r["f2"]["hi"]["rat"]))


def test_verify_spectrum_point():
    out = dp.verify("spectrum-point", gamma="1", depth=10, tol="1/50")
    assert out["verdict"] is True
    bad = dp.verify("spectrum-point", gamma="1", depth=8, tol="1/1000")
    assert bad["verdict"] is False


def test_verify_premise_and_budget_errors():
    ok = dp.verify("lemma2-premise", rule="power:1/1", depth=10)
    assert ok["verdict"] is True
    assert ok["reports"][0]["first_k"] == 2
    golden = dp.verify("lemma2-premise", rule="periodic:1;1", depth=10)
    assert golden["verdict"] is False
    with pytest.raises(RuntimeError):
        dp.minima("periodic:1;1", "5000", mode="brute", budget=100)


def test_determinism():
    a = dp.exponents("power:1/1", depth=10)
    b = dp.exponents("power:1/1", depth=10)
    assert a == b
