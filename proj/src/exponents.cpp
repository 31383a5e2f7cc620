#include "diophant/exponents.hpp"

#include <algorithm>
#include <future>

namespace diophant {

namespace {

Rat lambda_width_target() {
    BigInt d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, 4);
    return make_rat(BigInt(1), d);  // 1e-4: two orders under the 1e-2 tolerances
}

// Golden ratio enclosure, refined enough for strict-inequality checks.
RatInterval golden_ratio_enclosure() {
    BigInt d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, 10);
    return RatInterval(make_rat(BigInt("16180339887"), d), make_rat(BigInt("16180339888"), d));
}

Rat rat_pow(const Rat& base, unsigned long e) {
    BigInt n, d;
    mpz_pow_ui(n.get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), base.get_den().get_mpz_t(), e);
    return make_rat(n, d);
}

unsigned long small_exponent(const BigInt& e, const char* what) {
    if (e < 0 || !e.fits_ulong_p())
        throw std::domain_error(std::string(what) + ": exponent out of range");
    return e.get_ui();
}

// Defect enclosure |q_k theta - p_k|: the mediant-derived bracket
// [1/(q_k+q_{k+1}), 1/q_{k+1}] once the next denominator dwarfs q_k,
// otherwise the deeper convergent bracket for a relatively tight interval.
RatInterval defect_interval(CFNumber& cf, long k) {
    if (cf.is_rational()) return cf.linear_defect(k);  // exact
    const Convergent ck = cf.at(k);
    const Convergent cn = cf.at(k + 1);
    if (decimal_digits(cn.q) >= decimal_digits(ck.q) + 7) return cf.linear_defect(k);
    try {
        RatInterval th = cf.enclose_theta(k, 2);
        RatInterval d = abs(th * Rat(ck.q) - Rat(ck.p));
        if (d.lo > 0) return d;
    } catch (const budget_error&) {
    } catch (const quotients_exhausted&) {
    }
    return cf.linear_defect(k);
}

RatInterval window_min(const std::vector<TraceEntry>& trace, long w) {
    RatInterval out = trace[trace.size() - static_cast<std::size_t>(w)].lambda;
    for (std::size_t i = trace.size() - static_cast<std::size_t>(w); i < trace.size(); ++i) {
        out.lo = std::min(out.lo, trace[i].lambda.lo);
        out.hi = std::min(out.hi, trace[i].lambda.hi);
    }
    return out;
}

RatInterval window_max(const std::vector<TraceEntry>& trace, long w) {
    RatInterval out = trace[trace.size() - static_cast<std::size_t>(w)].lambda;
    for (std::size_t i = trace.size() - static_cast<std::size_t>(w); i < trace.size(); ++i) {
        out.lo = std::max(out.lo, trace[i].lambda.lo);
        out.hi = std::max(out.hi, trace[i].lambda.hi);
    }
    return out;
}

long clamp_window(long window, std::size_t len) {
    if (len == 0) return 0;
    long w = window > 0 ? window : default_window(len);
    return std::min<long>(w, static_cast<long>(len));
}

// ln(num_of) / ln(den_of) as a certified interval, precision escalated until
// the width target is met (or the input interval widths dominate).
RatInterval log_ratio(const RatInterval& num_of, const RatInterval& den_of, bool negate_num) {
    const Rat target = lambda_width_target();
    RatInterval lam(Rat(0));
    for (unsigned bits = 64; bits <= 512; bits *= 2) {
        RatInterval ln_num = log_enclose(num_of, bits);
        if (negate_num) ln_num = -ln_num;
        RatInterval ln_den = log_enclose(den_of, bits);
        if (!(ln_den.lo > 0))
            throw std::logic_error("log_ratio: denominator log not certified positive");
        lam = ln_num / ln_den;
        if (lam.width() <= target) break;
    }
    return lam;
}

}  // namespace

long default_window(std::size_t trace_len) {
    return std::max<long>(1, static_cast<long>(trace_len) / 2);
}

std::vector<SeqEntry> convergent_sequence_entries(CFNumber& cf, long depth, bool include_unit) {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    ThetaView view(cf, make_rat(BigInt(1), BigInt("1000000000000000000000000000000")));
    std::vector<SeqEntry> entries;
    if (include_unit) {
        SeqEntry e;
        e.k = -1;
        e.sup = view.theta();
        e.pi2 = view.theta();  // |theta| * |1|
        entries.push_back(std::move(e));
    }
    long avail = depth;
    try {
        cf.extend_convergents(depth);
    } catch (const quotients_exhausted&) {
    }
    avail = std::min(avail, cf.last_index());
    for (long k = 0; k <= avail; ++k) {
        const Convergent c = cf.cached(k);
        SeqEntry e;
        e.k = k;
        e.sup = view.theta() * Rat(c.p) + Rat(c.q);  // q_k + p_k theta dominates |z1| < 1
        if (k + 1 <= avail) {
            RatInterval d = defect_interval(cf, k);
            e.pi2 = d * e.sup;
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

ExponentEstimate regular_exponent(CFNumber& cf, long depth, long window) {
    if (depth < 2) throw std::invalid_argument("depth must be >= 2");
    ExponentEstimate est;
    est.quantity = "omega";
    if (cf.is_rational()) {
        est.infinite = true;
        est.route = "rational value: exponent infinite";
        return est;
    }
    est.route = "log trace 1 + ln a_{k+1} / ln q_k";
    try {
        cf.extend_convergents(depth);
    } catch (const quotients_exhausted&) {
    }
    long last = std::min(depth, cf.last_index());
    for (long k = 1; k + 1 <= last; ++k) {
        const Convergent& ck = cf.cached(k);
        if (ck.q < 2) continue;  // ln q_0-like entries are undefined
        const Convergent& cn = cf.cached(k + 1);
        RatInterval lam = log_ratio(RatInterval(Rat(cn.a)), RatInterval(Rat(ck.q)), false);
        est.trace.push_back({k, lam + Rat(1)});
    }
    long w = clamp_window(window, est.trace.size());
    est.window_used = w;
    if (w > 0) est.tail = window_max(est.trace, w);
    if (cf.rule().is_power_growth())
        est.target = Rat(1) + std::get<PowerGrowthRule>(cf.rule().variant()).gamma;
    else if (cf.rule().is_periodic())
        est.target = Rat(1);
    return est;
}

ExponentEstimate uniform_exponent(CFNumber& cf, long depth, unsigned long long sweep_budget) {
    ExponentEstimate est;
    est.quantity = "omega_hat";
    if (cf.is_rational()) {
        est.infinite = true;
        est.route = "rational value: exponent infinite";
        return est;
    }
    long certified_to = -1;
    for (long k = 0; k <= depth; ++k) {
        Convergent cn;
        try {
            cn = cf.at(k + 1);
            if (!cn.q.fits_ulong_p() || cn.q.get_ui() > sweep_budget) break;
            if (!empty_parallelogram(cf, k, sweep_budget)) {
                est.route = "parallelogram sweep failed (unexpected)";
                est.tail = RatInterval(Rat(1));
                return est;
            }
        } catch (const quotients_exhausted&) {
            break;
        } catch (const budget_error&) {
            break;
        } catch (const data_exhausted&) {
            break;  // explicit prefix too short to decide deeper sweeps
        }
        certified_to = k;
    }
    est.tail = RatInterval(Rat(1));
    est.route = certified_to >= 0
                    ? "constant 1; empty-parallelogram sweeps certified for k <= " +
                          std::to_string(certified_to)
                    : "constant 1; sweeps skipped (budget)";
    return est;
}

ExponentEstimate weak_exponent_lattice(CFNumber& cf, long depth, long window) {
    ExponentEstimate est;
    est.quantity = "omega_hat_hat_lattice";
    if (cf.is_rational()) {
        est.infinite = true;
        est.route = "rational value: exponent infinite";
        return est;
    }
    VerificationReport premise;
    premise.claim = "lemma2-premise";
    try {
        premise = verify_defect_ratio(cf, depth);
    } catch (const std::domain_error& e) {
        premise.detail = e.what();  // theta outside (1,2): premise inapplicable
    }
    if (premise.verdict) {
        est.route = "convergent minima trace (defect ratio certified from k = " +
                    std::to_string(*premise.first_k) + ")";
        auto entries = convergent_sequence_entries(cf, depth, false);
        for (std::size_t i = 1; i + 1 < entries.size(); ++i) {
            if (!entries[i].pi2) break;
            est.trace.push_back(
                {entries[i].k, log_ratio(*entries[i].pi2, entries[i + 1].sup, true) * rat_from_long(1, 2)});
        }
        long w = clamp_window(window, est.trace.size());
        est.window_used = w;
        if (w > 0) est.tail = window_min(est.trace, w);
        if (cf.rule().is_power_growth()) {
            const Rat& g = std::get<PowerGrowthRule>(cf.rule().variant()).gamma;
            est.target = g / (2 + 2 * g);
        } else if (cf.rule().is_super_growth()) {
            est.target = rat_from_long(1, 2);
        }
        return est;
    }
    if (auto floor = global_pi2_floor(cf)) {
        est.route = "product floor " + rational_string(floor->pi2_floor) +
                    " from quotient bound " + floor->quotient_bound.get_str() +
                    (floor->assumes_bounded_tail ? " (assumes the unlisted tail stays bounded)"
                                                 : "");
        est.tail = RatInterval(Rat(0));
        est.target = Rat(0);
        return est;
    }
    throw formula_inapplicable(
        "weak exponent: defect-ratio premise not certified and no product floor available",
        std::move(premise));
}

ExponentEstimate weak_exponent_number(CFNumber& cf, long depth, long window) {
    ExponentEstimate est;
    est.quantity = "omega_hat_hat";
    if (cf.is_rational()) {
        est.infinite = true;
        est.route = "rational value: exponent infinite";
        return est;
    }
    ExponentEstimate lat = weak_exponent_lattice(cf, depth, window);
    est.route = "transfer 1 + 2 * lattice exponent; " + lat.route;
    for (const auto& e : lat.trace)
        est.trace.push_back({e.k, e.lambda * Rat(2) + Rat(1)});
    if (lat.tail) est.tail = *lat.tail * Rat(2) + Rat(1);
    if (lat.target) est.target = Rat(1) + 2 * *lat.target;
    est.window_used = lat.window_used;
    return est;
}

ExponentEstimate weak_exponent_from_minima(const MinimaSequence& seq, long window,
                                           std::optional<Rat> pi2_floor) {
    ExponentEstimate est;
    est.quantity = "omega_hat_hat_lattice";
    if (pi2_floor && *pi2_floor > 0) {
        est.route = "product floor " + rational_string(*pi2_floor) + " over a complete sequence";
        est.tail = RatInterval(Rat(0));
        est.target = Rat(0);
        return est;
    }
    if (seq.kind != MinimaKind::hyperbolic)
        throw std::domain_error("weak_exponent_from_minima: needs a hyperbolic sequence");
    if (seq.points.size() < 3) throw std::domain_error("sequence too short (needs >= 3 members)");
    est.route = "successive minima trace";
    for (std::size_t j = 0; j + 1 < seq.points.size(); ++j) {
        const auto& z = seq.points[j];
        const auto& znext = seq.points[j + 1];
        if (!(z.pi2.lo > 0))
            throw std::domain_error("weak_exponent_from_minima: product not certified positive");
        est.trace.push_back(
            {static_cast<long>(j + 1), log_ratio(z.pi2, znext.sup, true) * rat_from_long(1, 2)});
    }
    long w = clamp_window(window, est.trace.size());
    est.window_used = w;
    if (w > 0) est.tail = window_min(est.trace, w);
    return est;
}

std::vector<ProfilePoint> minimum_product_profile(CFNumber& cf, const std::vector<Rat>& ts,
                                                  unsigned long long budget) {
    std::vector<ProfilePoint> out;
    ThetaView view(cf, make_rat(BigInt(1), BigInt("1000000000000000000000000000000")));
    if (!theta_greater_one(view)) throw std::domain_error("lattice requires theta > 1");
    for (const Rat& t : ts) {
        ProfilePoint pp;
        pp.t = t;
        if (t <= 0 || view.theta().certainly_greater(t)) {
            // Below the first minimum (the unit point, sup = theta): empty ball.
            pp.empty = true;
            out.push_back(std::move(pp));
            continue;
        }
        // Witness bound B0 for the minimum: the unit point plus every
        // convergent point inside the ball.
        Rat b0 = view.theta().hi;
        for (long k = 0;; ++k) {
            Convergent c;
            try {
                c = cf.at(k);
            } catch (const quotients_exhausted&) {
                break;
            } catch (const budget_error&) {
                break;
            } catch (const std::out_of_range&) {
                break;  // rational expansion ended
            }
            RatInterval sup = view.theta() * Rat(c.p) + Rat(c.q);
            if (!(sup.hi <= t)) break;
            RatInterval pi2 = defect_interval(cf, k) * sup;
            b0 = std::min(b0, pi2.hi);
        }
        // Any point of the ball with pi2 <= B0 has, after rotation, a first
        // coordinate at most sqrt(B0) <= (1+B0)/2, so the minimum over the
        // ball equals the minimum over this narrow box.
        Rat l1 = (1 + b0) / 2;
        if (l1 > t) l1 = t;
        auto pts = enumerate_box(cf, l1, t, budget);
        if (pts.empty()) throw std::logic_error("profile: witness box unexpectedly empty");
        RatInterval f2 = pts.front().pi2;
        for (const auto& p : pts) {
            f2.lo = std::min(f2.lo, p.pi2.lo);
            f2.hi = std::min(f2.hi, p.pi2.hi);
        }
        pp.f2 = f2;
        out.push_back(std::move(pp));
    }
    return out;
}

VerificationReport verify_defect_ratio(CFNumber& cf, long depth) {
    VerificationReport rep;
    rep.claim = "lemma2-premise";
    if (cf.is_rational()) throw std::domain_error("defect ratio premise needs irrational theta");
    if (depth < 3) throw std::invalid_argument("depth must be >= 3");
    // The premise is stated for 1 < theta < 2, i.e. a_0 = 1 for irrationals.
    if (cf.at(0).a != 1)
        throw std::domain_error("defect ratio premise needs 1 < theta < 2 (a_0 = 1)");

    try {
        cf.extend_convergents(depth);
    } catch (const quotients_exhausted&) {
        rep.inconclusive = true;
    }
    long last = std::min(depth, cf.last_index());
    RatInterval dk = defect_interval(cf, 1) * Rat(cf.cached(1).q);
    for (long k = 1; k + 2 <= last; ++k) {
        RatInterval dn = defect_interval(cf, k + 1) * Rat(cf.cached(k + 1).q);
        CheckRow row;
        row.k = k;
        row.lhs = decimal_string(dk.lo, 12);
        row.rhs = decimal_string(3 * dn.hi, 12);
        row.holds = dk.lo > 3 * dn.hi;
        if (!row.holds && !(dk.hi <= 3 * dn.lo)) rep.inconclusive = true;  // not separated
        rep.rows.push_back(std::move(row));
        dk = dn;
    }
    // Trailing run where the comparison holds.
    long first = -1;
    for (auto it = rep.rows.rbegin(); it != rep.rows.rend(); ++it) {
        if (!it->holds) break;
        first = it->k;
    }
    if (first >= 0 && !rep.rows.empty()) {
        rep.first_k = first;
        rep.verdict = true;
        rep.detail = "defect ratio > 3 certified for k in [" + std::to_string(first) + ", " +
                     std::to_string(rep.rows.back().k) + "]";
    } else {
        rep.detail = "no trailing run of certified defect-ratio decay";
    }
    return rep;
}

VerificationReport verify_growth_bound(CFNumber& cf, long depth) {
    VerificationReport rep;
    rep.claim = "lemma3-growth";
    if (cf.is_rational()) throw std::domain_error("growth bound needs irrational theta");
    auto entries = convergent_sequence_entries(cf, depth, true);

    // The successive minima are the running strict minima of pi2 over the
    // relative sequence (unit point + convergent points, in sup order), so
    // non-improving members are skipped.  Keep an entry iff its pi2 is
    // certifiedly below every earlier pi2; drop it iff some earlier pi2 is
    // certifiedly at most its own.  Anything else we cannot order.
    for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
        if (!(entries[i].sup.hi < entries[i + 1].sup.lo)) {
            rep.detail = "sup ordering not certified at position " + std::to_string(i);
            rep.inconclusive = true;
            return rep;
        }
    }
    std::vector<std::size_t> seq;  // indices into entries
    std::optional<Rat> min_lo, min_hi;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!entries[i].pi2) break;
        const RatInterval& p = *entries[i].pi2;
        if (!min_lo) {
            seq.push_back(i);
        } else if (p.hi < *min_lo) {
            seq.push_back(i);
        } else if (!(*min_hi <= p.lo)) {
            rep.detail = "pi2 ordering undecidable at position " + std::to_string(i);
            rep.inconclusive = true;
            return rep;
        }
        if (!min_lo || p.lo < *min_lo) min_lo = p.lo;
        if (!min_hi || p.hi < *min_hi) min_hi = p.hi;
    }
    if (seq.size() < 3) {
        rep.detail = "fewer than three successive minima within depth";
        rep.inconclusive = true;
        return rep;
    }

    const RatInterval phi = golden_ratio_enclosure();
    bool all = true;
    long consequence_failures = 0;
    std::string skipped;
    for (std::size_t i = 0; i < entries.size() && entries[i].pi2; ++i)
        if (std::find(seq.begin(), seq.end(), i) == seq.end())
            skipped += (skipped.empty() ? "" : ",") + std::to_string(entries[i].k);
    // Row index k is the 1-based position in the successive-minima sequence.
    for (std::size_t j = 2; j < seq.size(); ++j) {
        const SeqEntry& zk = entries[seq[j - 1]];
        const SeqEntry& znext = entries[seq[j]];
        CheckRow row;
        row.k = static_cast<long>(j);
        Rat rhs = Rat(4) * rat_pow(phi.hi, static_cast<unsigned long>(j - 2)) / (3 * zk.pi2->lo);
        row.lhs = decimal_string(znext.sup.lo, 12);
        row.rhs = decimal_string(rhs, 12);
        row.holds = znext.sup.lo > rhs;
        all = all && row.holds;
        if (!(zk.pi2->lo * znext.sup.lo > 1)) ++consequence_failures;
        rep.rows.push_back(std::move(row));
    }
    rep.verdict = all && !rep.rows.empty();
    if (rep.verdict) rep.first_k = 2;
    rep.detail = "growth bound rows checked: " + std::to_string(rep.rows.size()) +
                 "; consequence pi2(z_k)*sup(z_{k+1}) > 1 failures: " +
                 std::to_string(consequence_failures) +
                 (skipped.empty() ? "" : "; non-minimal convergent indices skipped: " + skipped);
    return rep;
}

VerificationReport verify_classical_sandwich(CFNumber& cf, long kmax) {
    VerificationReport rep;
    rep.claim = "classical-sandwich";
    if (cf.is_rational())
        throw std::domain_error("classical sandwich sweep needs irrational theta");
    bool all = true;
    for (long k = 0; k <= kmax; ++k) {
        BigInt a_next;
        try {
            a_next = cf.at(k + 1).a;
        } catch (const quotients_exhausted&) {
            rep.inconclusive = rep.inconclusive || k == 0;
            break;
        } catch (const budget_error&) {
            rep.detail = "stopped by digit budget at k = " + std::to_string(k);
            break;
        }
        Rat lo_bound = make_rat(BigInt(1), a_next + 2);
        Rat hi_bound = make_rat(BigInt(1), a_next);
        CheckRow row;
        row.k = k;
        row.holds = false;
        for (long refine = 2; refine <= 8; ++refine) {
            RatInterval d;
            try {
                d = cf.approx_defect(k, refine);
            } catch (const quotients_exhausted&) {
                d = cf.linear_defect(k) * Rat(cf.cached(k).q);
            } catch (const budget_error&) {
                d = cf.linear_defect(k) * Rat(cf.cached(k).q);
            }
            row.lhs = decimal_string(d.lo, 12);
            row.rhs = decimal_string(d.hi, 12);
            if (d.lo > lo_bound && d.hi < hi_bound) {
                row.holds = true;
                break;
            }
        }
        all = all && row.holds;
        rep.rows.push_back(std::move(row));
    }
    rep.verdict = all && !rep.rows.empty();
    if (rep.verdict) rep.first_k = 0;
    if (rep.detail.empty())
        rep.detail = "strict containment certified for " + std::to_string(rep.rows.size()) +
                     " indices";
    return rep;
}

VerificationReport verify_product_bounds(CFNumber& cf, long depth) {
    VerificationReport rep;
    rep.claim = "product-bounds";
    if (!cf.rule().is_power_growth())
        throw std::domain_error("product bounds are stated for power-growth rules");
    const Rat& g = std::get<PowerGrowthRule>(cf.rule().variant()).gamma;
    unsigned long u = small_exponent(g.get_num(), "gamma");
    unsigned long v = small_exponent(g.get_den(), "gamma");
    cf.extend_convergents(depth);
    bool all = true;
    for (long k = 1; k + 1 <= depth; ++k) {
        const Convergent& ck = cf.cached(k);
        RatInterval lin = cf.linear_defect(k);
        Rat dlo = lin.lo * ck.q, dhi = lin.hi * ck.q;
        // upper: D_k < q_k^-g  <=>  dhi^v < q_k^-u
        bool upper = pow_compare(dhi, v, make_rat(BigInt(1), ck.q), u) == std::strong_ordering::less;
        // lower: D_k > 1/(q_k^g + 3)  <=>  q_k^g > (1 - 3 dlo)/dlo
        Rat bound = (1 - 3 * dlo) / dlo;
        bool lower = bound <= 0 ||
                     pow_compare(Rat(ck.q), u, bound, v) == std::strong_ordering::greater;
        CheckRow row;
        row.k = k;
        row.lhs = decimal_string(dlo, 12);
        row.rhs = decimal_string(dhi, 12);
        row.holds = upper && lower;
        all = all && row.holds;
        rep.rows.push_back(std::move(row));
    }
    rep.verdict = all && !rep.rows.empty();
    if (rep.verdict) rep.first_k = 1;
    rep.detail = "exact power comparisons of the defect against 1/(q^g+3) and 1/q^g";
    return rep;
}

VerificationReport verify_denominator_growth(CFNumber& cf, long depth) {
    VerificationReport rep;
    rep.claim = "denominator-sandwich";
    if (!cf.rule().is_power_growth())
        throw std::domain_error("denominator sandwich is stated for power-growth rules");
    const Rat& g = std::get<PowerGrowthRule>(cf.rule().variant()).gamma;
    unsigned long u = small_exponent(g.get_num(), "gamma");
    unsigned long v = small_exponent(g.get_den(), "gamma");
    cf.extend_convergents(depth);
    bool all = true;
    for (long k = 1; k + 1 <= depth; ++k) {
        const BigInt& qk = cf.cached(k).q;
        const BigInt& qn = cf.cached(k + 1).q;
        BigInt lhs, rhs, three_v;
        mpz_pow_ui(lhs.get_mpz_t(), qn.get_mpz_t(), v);
        mpz_pow_ui(rhs.get_mpz_t(), qk.get_mpz_t(), u + v);
        mpz_ui_pow_ui(three_v.get_mpz_t(), 3, v);
        CheckRow row;
        row.k = k;
        row.holds = lhs > rhs && lhs < three_v * rhs;
        row.lhs = std::to_string(decimal_digits(qk)) + " digits";
        row.rhs = std::to_string(decimal_digits(qn)) + " digits";
        all = all && row.holds;
        rep.rows.push_back(std::move(row));
    }
    rep.verdict = all && !rep.rows.empty();
    if (rep.verdict) rep.first_k = 1;
    rep.detail = "exact integer checks q_k^(1+g) < q_{k+1} < 3 q_k^(1+g)";
    return rep;
}

DirichletSolution dirichlet_solve(CFNumber& cf, const Rat& t, const Rat& gamma) {
    if (t < 1) throw std::domain_error("dirichlet: t must be >= 1");
    if (gamma <= 0) throw std::domain_error("dirichlet: gamma must be positive");
    DirichletSolution sol;
    sol.t = t;
    sol.gamma = gamma;
    unsigned long u = small_exponent(gamma.get_num(), "gamma");
    unsigned long v = small_exponent(gamma.get_den(), "gamma");

    long last = -1;
    for (long k = 0;; ++k) {
        Convergent c;
        try {
            c = cf.at(k);
        } catch (const quotients_exhausted&) {
            break;
        } catch (const budget_error&) {
            break;
        } catch (const std::out_of_range&) {
            break;  // rational expansion ended
        }
        if (Rat(c.q) > t) break;
        last = k;
    }
    for (long k = last; k >= 0; --k) {
        RatInterval d = cf.linear_defect(k);
        bool ok = d.hi == 0 ||
                  pow_compare(d.hi, v, 1 / t, u) != std::strong_ordering::greater;
        if (ok) {
            sol.found = true;
            sol.x = cf.cached(k).q;
            sol.y = cf.cached(k).p;
            sol.note = "convergent index " + std::to_string(k);
            return sol;
        }
    }
    sol.note = "no convergent solution within |x| <= t";
    return sol;
}

VerificationReport verify_dirichlet(CFNumber& cf, const Rat& tmax, int count, const Rat& gamma) {
    VerificationReport rep;
    rep.claim = "dirichlet";
    if (count < 1) throw std::invalid_argument("dirichlet: need count >= 1");
    BigInt tmax_floor;
    mpz_fdiv_q(tmax_floor.get_mpz_t(), tmax.get_num().get_mpz_t(), tmax.get_den().get_mpz_t());
    if (tmax_floor < 1) throw std::domain_error("dirichlet: tmax must be >= 1");

    std::vector<Rat> ts;
    for (int i = 0; i < count; ++i) {
        Rat t;
        if (count == 1 || i == count - 1)
            t = Rat(tmax_floor);
        else if (i == 0)
            t = 1;
        else
            t = Rat(floor_pow(tmax_floor, make_rat(BigInt(i), BigInt(count - 1))));
        if (t < 1) t = 1;
        if (ts.empty() || ts.back() != t) ts.push_back(t);
    }
    bool all = true;
    for (const Rat& t : ts) {
        DirichletSolution s = dirichlet_solve(cf, t, gamma);
        CheckRow row;
        row.k = static_cast<long>(rep.rows.size());
        row.lhs = "t = " + rational_string(t);
        row.rhs = s.found ? "(" + s.x.get_str() + ", " + s.y.get_str() + ")" : "none";
        row.holds = s.found;
        all = all && row.holds;
        rep.rows.push_back(std::move(row));
    }
    rep.verdict = all;
    rep.detail = "certified solutions at " + std::to_string(ts.size()) + " sampled t values";
    return rep;
}

VerificationReport verify_spectrum_point(const Rat& gamma, long depth, const Rat& tol, long window,
                                         std::size_t digit_budget) {
    VerificationReport rep;
    rep.claim = "spectrum-point";
    CFNumber cf(QuotientRule::power_growth(gamma), digit_budget);
    Rat target = gamma / (2 + 2 * gamma);
    ExponentEstimate est;
    try {
        est = weak_exponent_lattice(cf, depth, window);
    } catch (const formula_inapplicable& e) {
        rep.inconclusive = true;
        rep.detail = std::string("premise not certified: ") + e.what();
        return rep;
    }
    if (!est.tail) {
        rep.inconclusive = true;
        rep.detail = "no tail estimate";
        return rep;
    }
    RatInterval band(target - tol, target + tol);
    for (const auto& e : est.trace) {
        CheckRow row;
        row.k = e.k;
        row.lhs = decimal_string(e.lambda.lo, 12) + ".." + decimal_string(e.lambda.hi, 12);
        row.rhs = decimal_string(target, 12);
        row.holds = band.contains(e.lambda);
        rep.rows.push_back(std::move(row));
    }
    rep.verdict = band.contains(*est.tail);
    rep.detail = "tail [" + decimal_string(est.tail->lo, 12) + ", " +
                 decimal_string(est.tail->hi, 12) + "] vs target " + rational_string(target) +
                 " +- " + rational_string(tol) + " (window " + std::to_string(est.window_used) +
                 "); " + est.route;
    if (rep.verdict) rep.first_k = est.trace.empty() ? 0 : est.trace.back().k - est.window_used + 1;
    return rep;
}

std::vector<VerificationReport> verify_spectrum_points(const std::vector<Rat>& gammas,
                                                       long depth, const Rat& tol, long window,
                                                       std::size_t digit_budget) {
    std::vector<std::future<VerificationReport>> futs;
    futs.reserve(gammas.size());
    for (const Rat& g : gammas)
        futs.push_back(std::async(std::launch::async, [g, depth, tol, window, digit_budget] {
            return verify_spectrum_point(g, depth, tol, window, digit_budget);
        }));
    std::vector<VerificationReport> out;
    out.reserve(futs.size());
    for (auto& f : futs) out.push_back(f.get());
    return out;
}

VerificationReport verify_empty_parallelograms(CFNumber& cf, long kmax,
                                               unsigned long long budget) {
    VerificationReport rep;
    rep.claim = "empty-parallelogram";
    if (cf.is_rational())
        throw std::domain_error("empty parallelogram sweep needs irrational theta");
    bool all = true;
    long done = -1;
    for (long k = 0; k <= kmax; ++k) {
        try {
            const Convergent& cn = cf.at(k + 1);
            if (!cn.q.fits_ulong_p() || cn.q.get_ui() > budget) break;
            CheckRow row;
            row.k = k;
            row.holds = empty_parallelogram(cf, k, budget);
            row.lhs = "|x| <= " + cn.q.get_str();
            row.rhs = row.holds ? "empty" : "extra point";
            all = all && row.holds;
            rep.rows.push_back(std::move(row));
            done = k;
        } catch (const quotients_exhausted&) {
            break;
        } catch (const budget_error&) {
            break;
        }
    }
    rep.verdict = all && !rep.rows.empty();
    rep.inconclusive = done < kmax;
    if (rep.verdict) rep.first_k = 0;
    rep.detail = "sweeps certified for k <= " + std::to_string(done);
    return rep;
}

}  // namespace diophant
