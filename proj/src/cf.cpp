#include "diophant/cf.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace diophant {

namespace {

void require_quotients_valid(const std::vector<BigInt>& qs, bool is_prefix_of_period) {
    for (std::size_t i = 0; i < qs.size(); ++i) {
        if (qs[i] < 1)
            throw std::invalid_argument("quotient a_" + std::to_string(i) +
                                        (is_prefix_of_period ? " (period)" : "") + " must be >= 1");
    }
}

std::vector<BigInt> parse_int_list(const std::string& s) {
    std::vector<BigInt> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(parse_bigint(item));
    }
    return out;
}

std::string join_int_list(const std::vector<BigInt>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += v[i].get_str();
    }
    return out;
}

}  // namespace

QuotientRule QuotientRule::explicit_list(std::vector<BigInt> quotients) {
    if (quotients.empty()) throw std::invalid_argument("explicit rule needs at least a_0");
    require_quotients_valid(quotients, false);
    return QuotientRule(ExplicitRule{std::move(quotients)});
}

QuotientRule QuotientRule::periodic(std::vector<BigInt> prefix, std::vector<BigInt> period) {
    if (period.empty()) throw std::invalid_argument("periodic rule needs a non-empty period");
    require_quotients_valid(prefix, false);
    require_quotients_valid(period, true);
    return QuotientRule(PeriodicRule{std::move(prefix), std::move(period)});
}

QuotientRule QuotientRule::power_growth(const Rat& gamma) {
    if (gamma <= 0) throw std::invalid_argument("power growth needs gamma > 0");
    return QuotientRule(PowerGrowthRule{gamma});
}

QuotientRule QuotientRule::super_growth() { return QuotientRule(SuperGrowthRule{}); }

QuotientRule QuotientRule::rational(const BigInt& num, const BigInt& den) {
    if (den < 1) throw std::invalid_argument("rational rule needs den >= 1");
    if (num < den) throw std::invalid_argument("rational rule needs num/den >= 1");
    return QuotientRule(RationalRule{num, den});
}

QuotientRule QuotientRule::parse(const std::string& spec) {
    auto colon = spec.find(':');
    std::string head = colon == std::string::npos ? spec : spec.substr(0, colon);
    std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "super") return super_growth();
    if (head == "power") {
        return power_growth(parse_rat(body));
    }
    if (head == "quotients") {
        return explicit_list(parse_int_list(body));
    }
    if (head == "periodic") {
        auto semi = body.find(';');
        if (semi == std::string::npos)
            throw std::invalid_argument("periodic rule: expected 'periodic:prefix;period'");
        return periodic(parse_int_list(body.substr(0, semi)), parse_int_list(body.substr(semi + 1)));
    }
    if (head == "rational") {
        auto slash = body.find('/');
        if (slash == std::string::npos) return rational(parse_bigint(body), BigInt(1));
        return rational(parse_bigint(body.substr(0, slash)),
                        parse_bigint(body.substr(slash + 1)));
    }
    throw std::invalid_argument("unknown rule spec '" + spec + "'");
}

std::string QuotientRule::to_string() const {
    return std::visit(
        [](const auto& r) -> std::string {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, ExplicitRule>)
                return "quotients:" + join_int_list(r.quotients);
            else if constexpr (std::is_same_v<T, PeriodicRule>)
                return "periodic:" + join_int_list(r.prefix) + ";" + join_int_list(r.period);
            else if constexpr (std::is_same_v<T, PowerGrowthRule>)
                return "power:" + rational_string(r.gamma);
            else if constexpr (std::is_same_v<T, SuperGrowthRule>)
                return "super";
            else
                return "rational:" + r.num.get_str() + "/" + r.den.get_str();
        },
        v_);
}

std::optional<BigInt> QuotientRule::quotient_bound() const {
    if (const auto* e = std::get_if<ExplicitRule>(&v_)) {
        BigInt m = 0;
        for (const auto& a : e->quotients) m = std::max(m, a);
        return m;
    }
    if (const auto* p = std::get_if<PeriodicRule>(&v_)) {
        BigInt m = 0;
        for (const auto& a : p->prefix) m = std::max(m, a);
        for (const auto& a : p->period) m = std::max(m, a);
        return m;
    }
    return std::nullopt;
}

CFNumber::CFNumber(QuotientRule rule, std::size_t digit_budget)
    : rule_(std::move(rule)), digit_budget_(digit_budget) {
    if (const auto* r = std::get_if<RationalRule>(&rule_.variant())) {
        euclid_r0_ = r->num;
        euclid_r1_ = r->den;
    }
}

void CFNumber::check_digit_budget(const BigInt& a) const {
    if (cache_.empty()) return;
    std::size_t next_digits = decimal_digits(a) + decimal_digits(cache_.back().q) + 1;
    if (next_digits > digit_budget_)
        throw budget_error("digit budget exceeded: next denominator needs ~" +
                               std::to_string(next_digits) + " digits (budget " +
                               std::to_string(digit_budget_) + "); raise --max-digits",
                           next_digits);
}

void CFNumber::append(const BigInt& a) {
    long k = static_cast<long>(cache_.size());
    if (k == 0) {
        if (a < 1) throw std::invalid_argument("a_0 must be >= 1");
        cache_.push_back({0, a, a, BigInt(1)});
        return;
    }
    if (a < 1) throw std::invalid_argument("a_" + std::to_string(k) + " must be >= 1");
    check_digit_budget(a);
    const Convergent& c1 = cache_.back();
    BigInt p_prev = (k >= 2) ? cache_[static_cast<std::size_t>(k - 2)].p : BigInt(1);
    BigInt q_prev = (k >= 2) ? cache_[static_cast<std::size_t>(k - 2)].q : BigInt(0);
    cache_.push_back({k, a, a * c1.p + p_prev, a * c1.q + q_prev});
}

std::optional<BigInt> CFNumber::next_quotient() {
    long k = static_cast<long>(cache_.size());  // index of the quotient being produced
    BigInt a;
    const auto& v = rule_.variant();
    if (const auto* e = std::get_if<ExplicitRule>(&v)) {
        if (static_cast<std::size_t>(k) >= e->quotients.size()) throw quotients_exhausted(k);
        a = e->quotients[static_cast<std::size_t>(k)];
    } else if (const auto* pr = std::get_if<PeriodicRule>(&v)) {
        std::size_t idx = static_cast<std::size_t>(k);
        if (idx < pr->prefix.size())
            a = pr->prefix[idx];
        else
            a = pr->period[(idx - pr->prefix.size()) % pr->period.size()];
    } else if (const auto* pg = std::get_if<PowerGrowthRule>(&v)) {
        if (k == 0)
            a = 1;
        else {
            const BigInt& qk = cache_.back().q;
            std::size_t est = static_cast<std::size_t>(
                static_cast<double>(decimal_digits(qk)) *
                    (1.0 + pg->gamma.get_d()) + 2.0);
            if (est > digit_budget_)
                throw budget_error("digit budget exceeded at index " + std::to_string(k), est);
            a = floor_pow(qk, pg->gamma) + 1;
        }
    } else if (std::holds_alternative<SuperGrowthRule>(v)) {
        if (k == 0)
            a = 1;
        else if (k == 1)
            a = 2;  // floor(q_0^0) + 1 with q_0 = 1
        else {
            const BigInt& qk = cache_.back().q;
            std::size_t est = static_cast<std::size_t>(decimal_digits(qk)) *
                                  static_cast<std::size_t>(k) + 2;
            if (est > digit_budget_)
                throw budget_error("digit budget exceeded at index " + std::to_string(k), est);
            a = floor_pow(qk, Rat(k - 1)) + 1;
        }
    } else {
        if (terminated_) return std::nullopt;
        // One Euclid step: a = floor(r0/r1), (r0, r1) <- (r1, r0 - a r1).
        BigInt rem;
        mpz_fdiv_qr(a.get_mpz_t(), rem.get_mpz_t(), euclid_r0_.get_mpz_t(), euclid_r1_.get_mpz_t());
        euclid_r0_ = euclid_r1_;
        euclid_r1_ = rem;
        if (euclid_r1_ == 0) terminated_ = true;
    }
    append(a);
    return cache_.back().a;
}

std::span<const Convergent> CFNumber::extend_convergents(long depth) {
    if (depth < 0) throw std::invalid_argument("extend_convergents: negative depth");
    while (last_index() < depth) {
        if (terminated_) break;
        next_quotient();
    }
    std::size_t n = std::min<std::size_t>(cache_.size(), static_cast<std::size_t>(depth) + 1);
    return {cache_.data(), n};
}

const Convergent& CFNumber::at(long k) {
    if (k < 0) throw std::out_of_range("convergent index must be >= 0");
    extend_convergents(k);
    if (last_index() < k)
        throw std::out_of_range("expansion terminated before index " + std::to_string(k));
    return cache_[static_cast<std::size_t>(k)];
}

RatInterval CFNumber::enclose_theta(long k, long refine) {
    if (k < 0 || refine < 0) throw std::invalid_argument("enclose_theta: negative argument");
    long j = k + refine;
    extend_convergents(j + 1);
    if (is_rational() && terminated_ && last_index() <= j) return RatInterval(rational_value());
    if (last_index() < j + 1)
        throw std::out_of_range("expansion terminated before index " + std::to_string(j + 1));
    const Convergent& cj = cached(j);
    const Convergent& cj1 = cached(j + 1);
    return RatInterval::ordered(make_rat(cj.p, cj.q), make_rat(cj1.p, cj1.q));
}

RatInterval CFNumber::enclose_theta_mediant(long j) {
    if (j < 1) throw std::invalid_argument("enclose_theta_mediant: needs j >= 1");
    extend_convergents(j);
    if (is_rational() && terminated_ && last_index() <= j) return RatInterval(rational_value());
    if (last_index() < j)
        throw std::out_of_range("expansion terminated before index " + std::to_string(j));
    const Convergent& prev = cached(j - 1);
    const Convergent& cur = cached(j);
    // theta lies strictly between p_j/q_j and the mediant (p_{j-1}+p_j)/(q_{j-1}+q_j):
    // the tail x = [a_{j+1}; ...] > 1 maps monotonically onto that segment.
    return RatInterval::ordered(make_rat(prev.p + cur.p, prev.q + cur.q), make_rat(cur.p, cur.q));
}

RatInterval CFNumber::linear_defect(long k) {
    if (k < 0) throw std::invalid_argument("linear_defect: negative index");
    extend_convergents(k + 1);
    if (last_index() < k)
        throw std::out_of_range("expansion terminated before index " + std::to_string(k));
    if (is_rational() && terminated_ && last_index() <= k + 1) {
        const Convergent& ck = cached(k);
        Rat v = rational_value();
        Rat d = ck.q * v - ck.p;
        if (d < 0) d = -d;
        return RatInterval(d);
    }
    const Convergent& ck = cached(k);
    const Convergent& cn = cached(k + 1);
    return RatInterval(make_rat(BigInt(1), ck.q + cn.q), make_rat(BigInt(1), cn.q));
}

RatInterval CFNumber::approx_defect(long k, long refine) {
    if (is_rational()) {
        RatInterval d = linear_defect(k);
        return d * Rat(cached(k).q);
    }
    RatInterval theta = enclose_theta(k, std::max<long>(refine, 1));
    const Convergent& ck = cached(k);
    RatInterval diff = abs(theta * Rat(ck.q) - Rat(ck.p));
    return diff * Rat(ck.q);
}

Rat CFNumber::rational_value() const {
    const auto* r = std::get_if<RationalRule>(&rule_.variant());
    if (!r) throw std::logic_error("rational_value: not a rational rule");
    return make_rat(r->num, r->den);
}

nlohmann::json CFNumber::cache_to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["rule"] = rule_.to_string();
    j["terminated"] = terminated_;
    nlohmann::ordered_json qs = nlohmann::ordered_json::array();
    nlohmann::ordered_json ps = nlohmann::ordered_json::array();
    nlohmann::ordered_json den = nlohmann::ordered_json::array();
    for (const auto& c : cache_) {
        qs.push_back(c.a.get_str());
        ps.push_back(c.p.get_str());
        den.push_back(c.q.get_str());
    }
    j["quotients"] = std::move(qs);
    j["p"] = std::move(ps);
    j["q"] = std::move(den);
    return j;
}

CFNumber CFNumber::from_cache_json(const nlohmann::json& j, std::size_t digit_budget) {
    CFNumber cf(QuotientRule::parse(j.at("rule").get<std::string>()), digit_budget);
    const auto& qs = j.at("quotients");
    const auto& ps = j.at("p");
    const auto& den = j.at("q");
    if (qs.size() != ps.size() || qs.size() != den.size())
        throw std::invalid_argument("cache: mismatched array lengths");
    // Replay quotients through the rule so Euclid state stays consistent,
    // then cross-check the stored convergents.
    for (std::size_t i = 0; i < qs.size(); ++i) {
        auto a = cf.next_quotient();
        if (!a || *a != parse_bigint(qs[i].get<std::string>()))
            throw std::invalid_argument("cache: quotient mismatch at index " + std::to_string(i));
        const Convergent& c = cf.cached(static_cast<long>(i));
        if (c.p != parse_bigint(ps[i].get<std::string>()) ||
            c.q != parse_bigint(den[i].get<std::string>()))
            throw std::invalid_argument("cache: convergent mismatch at index " + std::to_string(i));
    }
    return cf;
}

}  // namespace diophant
