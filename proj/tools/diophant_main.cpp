// diophant: a workbench for continued fractions, the associated planar
// lattices, their relative/hyperbolic minima, and certified Diophantine
// exponent estimates.
//
// Exit codes: 0 verified/ok, 1 certified failure, 2 inconclusive (budget,
// ties, missing data), 3 usage or domain errors.

#include "diophant/exponents.hpp"
#include "diophant/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace diophant;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 3;

struct CommonOpts {
    std::string rule;
    std::string out;
    std::string format = "json";
    std::string cache;
    long depth = 10;
    long window = 0;
    std::string bound = "100";
    std::string tol = "1/100";
    std::size_t max_digits = 100000;
    unsigned long long max_preimages = 100000000ull;
    long seed = 0;  // accepted for interface stability; nothing is randomized
};

void emit(const CommonOpts& opts, const json& j, const std::string& csv) {
    std::string text = opts.format == "csv" ? csv : j.dump(2) + "\n";
    if (opts.out.empty())
        std::cout << text;
    else
        atomic_write(opts.out, text);
}

json header(const std::string& command, const CommonOpts& opts) {
    json j;
    j["schema"] = 1;
    j["command"] = command;
    if (!opts.rule.empty()) j["rule"] = opts.rule;
    return j;
}

std::size_t digit_budget(const CommonOpts& opts) {
    if (const char* env = std::getenv("DIOPHANT_MAX_DIGITS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return opts.max_digits;
}

CFNumber load_cf(const CommonOpts& opts) {
    std::size_t budget = digit_budget(opts);
    if (!opts.cache.empty() && std::filesystem::exists(opts.cache)) {
        std::ifstream in(opts.cache);
        nlohmann::json j = nlohmann::json::parse(in);
        CFNumber cf = CFNumber::from_cache_json(j, budget);
        if (cf.rule().to_string() != QuotientRule::parse(opts.rule).to_string())
            throw std::invalid_argument("cache rule mismatch: cache holds " +
                                        cf.rule().to_string());
        return cf;
    }
    return CFNumber(QuotientRule::parse(opts.rule), budget);
}

int cmd_construct(const CommonOpts& opts) {
    CFNumber cf = load_cf(opts);
    cf.extend_convergents(opts.depth);
    if (!opts.cache.empty()) atomic_write(opts.cache, cf.cache_to_json().dump(2) + "\n");
    json j = header("construct", opts);
    j["depth"] = opts.depth;
    j["result"] = convergents_json(cf, opts.depth);
    emit(opts, j, convergents_csv(cf, opts.depth));
    return kExitOk;
}

int cmd_exponents(const CommonOpts& opts) {
    CFNumber cf = load_cf(opts);
    json j = header("exponents", opts);
    j["depth"] = opts.depth;

    std::string csv;
    json result;
    ExponentEstimate omega = regular_exponent(cf, opts.depth, opts.window);
    result["omega"] = estimate_json(omega);
    csv += "# omega\n" + estimate_csv(omega);
    ExponentEstimate omega_hat = uniform_exponent(cf, opts.depth);
    result["omega_hat"] = estimate_json(omega_hat);

    try {
        ExponentEstimate lat = weak_exponent_lattice(cf, opts.depth, opts.window);
        ExponentEstimate num = weak_exponent_number(cf, opts.depth, opts.window);
        result["omega_hat_hat_lattice"] = estimate_json(lat);
        result["omega_hat_hat"] = estimate_json(num);
        csv += "# omega_hat_hat_lattice\n" + estimate_csv(lat);
        csv += "# omega_hat_hat\n" + estimate_csv(num);
    } catch (const formula_inapplicable& e) {
        json err;
        err["error"] = e.what();
        err["premise"] = report_json(e.report());
        result["omega_hat_hat_lattice"] = err;
        j["result"] = std::move(result);
        emit(opts, j, csv);
        return kExitInconclusive;
    }
    j["result"] = std::move(result);
    emit(opts, j, csv);
    return kExitOk;
}

int cmd_minima(const CommonOpts& opts, const std::string& kind_s, const std::string& mode,
               bool diff) {
    CFNumber cf = load_cf(opts);
    Rat bound = parse_rat(opts.bound);
    MinimaKind kind = kind_s == "hyperbolic" ? MinimaKind::hyperbolic : MinimaKind::relative;

    auto convergent_route = [&](CFNumber& c) {
        MinimaSequence rel = relative_minima_from_convergents(c, bound);
        if (kind == MinimaKind::relative) return rel;
        return hyperbolic_from_relative(c, rel);
    };

    if (diff) {
        MinimaSequence a = convergent_route(cf);
        MinimaSequence b = brute_force_minima(cf, bound, kind, opts.max_preimages);
        auto ka = class_key_set(cf, a);
        auto kb = class_key_set(cf, b);
        json j = header("minima", opts);
        j["bound"] = opts.bound;
        j["kind"] = kind_s;
        j["diff"] = true;
        j["equal"] = ka == kb;
        j["convergent_classes"] = ka.size();
        j["brute_classes"] = kb.size();
        emit(opts, j, "equal," + std::string(ka == kb ? "1" : "0") + "\n");
        return ka == kb ? kExitOk : kExitFail;
    }

    MinimaSequence seq =
        mode == "brute" ? brute_force_minima(cf, bound, kind, opts.max_preimages)
                        : convergent_route(cf);
    json j = header("minima", opts);
    j["bound"] = opts.bound;
    j["kind"] = kind_s;
    j["mode"] = mode;
    j["result"] = minima_json(seq);
    emit(opts, j, minima_csv(seq));
    return seq.ties.empty() ? kExitOk : kExitInconclusive;
}

int cmd_profile(const CommonOpts& opts, const std::string& ts) {
    CFNumber cf = load_cf(opts);
    std::vector<Rat> t_list;
    std::stringstream ss(ts);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) t_list.push_back(parse_rat(item));
    if (t_list.empty()) throw std::invalid_argument("profile: empty t list");
    auto prof = minimum_product_profile(cf, t_list, opts.max_preimages);
    json j = header("profile", opts);
    j["result"] = profile_json(prof);
    emit(opts, j, profile_csv(prof));
    return kExitOk;
}

int report_exit(const std::vector<VerificationReport>& reps) {
    bool any_inconclusive = false, all_true = true;
    for (const auto& r : reps) {
        any_inconclusive = any_inconclusive || r.inconclusive;
        all_true = all_true && r.verdict;
    }
    if (any_inconclusive) return kExitInconclusive;
    return all_true ? kExitOk : kExitFail;
}

int cmd_verify(const CommonOpts& opts, const std::string& claim, const std::string& gamma_list,
               const std::string& tmax, int samples, const std::string& exponent) {
    std::vector<VerificationReport> reports;
    if (claim == "spectrum-point") {
        std::vector<Rat> gammas;
        std::string src = gamma_list;
        if (src.empty()) {
            QuotientRule rule = QuotientRule::parse(opts.rule);
            if (!rule.is_power_growth())
                throw std::invalid_argument("spectrum-point needs --gamma or a power rule");
            gammas.push_back(std::get<PowerGrowthRule>(rule.variant()).gamma);
        } else {
            std::stringstream ss(src);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) gammas.push_back(parse_rat(item));
        }
        Rat tol = parse_rat(opts.tol);
        reports = verify_spectrum_points(gammas, opts.depth, tol, opts.window, digit_budget(opts));
    } else {
        CFNumber cf = load_cf(opts);
        if (claim == "lemma2-premise")
            reports.push_back(verify_defect_ratio(cf, opts.depth));
        else if (claim == "lemma3-growth")
            reports.push_back(verify_growth_bound(cf, opts.depth));
        else if (claim == "product-bounds")
            reports.push_back(verify_product_bounds(cf, opts.depth));
        else if (claim == "denominator-sandwich")
            reports.push_back(verify_denominator_growth(cf, opts.depth));
        else if (claim == "dirichlet")
            reports.push_back(verify_dirichlet(cf, parse_rat(tmax), samples, parse_rat(exponent)));
        else if (claim == "empty-parallelogram")
            reports.push_back(verify_empty_parallelograms(cf, opts.depth));
        else
            throw std::invalid_argument("unknown claim '" + claim + "'");
    }

    json j = header("verify", opts);
    j["claim"] = claim;
    j["depth"] = opts.depth;
    if (reports.size() == 1) {
        j["result"] = report_json(reports.front());
    } else {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(report_json(r));
        j["result"] = std::move(arr);
    }
    std::string csv = "claim,verdict,inconclusive\n";
    for (const auto& r : reports)
        csv += r.claim + "," + (r.verdict ? "1" : "0") + "," + (r.inconclusive ? "1" : "0") + "\n";
    emit(opts, j, csv);
    return report_exit(reports);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"diophant: continued fractions, planar lattice minima, and certified "
                 "Diophantine exponent estimates"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string kind = "relative", mode = "convergent", claim, t_list = "10,100,1000";
    std::string gamma_list, tmax = "10000", exponent = "1";
    int samples = 10;
    bool diff = false;

    auto add_common = [&](CLI::App* sub, bool needs_rule) {
        if (needs_rule)
            sub->add_option("--rule", opts.rule,
                            "power:U/V | super | quotients:a0,a1,... | "
                            "periodic:prefix;period | rational:P/Q")
                ->required();
        sub->add_option("--out", opts.out, "output path (default: stdout)");
        sub->add_option("--format", opts.format, "json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--cache", opts.cache, "convergent cache path (construct writes it)");
        sub->add_option("--max-digits", opts.max_digits,
                        "denominator digit budget (env DIOPHANT_MAX_DIGITS overrides)");
        sub->add_option("--max-preimages", opts.max_preimages, "preimage sweep budget");
        sub->add_option("--seed", opts.seed, "accepted and ignored: nothing is randomized");
    };

    CLI::App* construct = app.add_subcommand("construct", "build a convergent table");
    add_common(construct, true);
    construct->add_option("--depth", opts.depth, "highest convergent index");

    CLI::App* exponents = app.add_subcommand("exponents", "estimate all four exponents");
    add_common(exponents, true);
    exponents->add_option("--depth", opts.depth, "trace depth");
    exponents->add_option("--window", opts.window, "trailing window (default: half the trace)");

    CLI::App* minima = app.add_subcommand("minima", "relative/hyperbolic minima sequences");
    add_common(minima, true);
    minima->add_option("--bound", opts.bound, "sup-norm bound T");
    minima->add_option("--kind", kind, "relative|hyperbolic")
        ->check(CLI::IsMember({"relative", "hyperbolic"}));
    minima->add_option("--mode", mode, "convergent|brute")
        ->check(CLI::IsMember({"convergent", "brute"}));
    minima->add_flag("--diff", diff, "run both modes and compare class sets");

    CLI::App* verify = app.add_subcommand("verify", "certify a named claim");
    verify->add_option("claim", claim,
                       "lemma2-premise|lemma3-growth|product-bounds|denominator-sandwich|"
                       "dirichlet|spectrum-point|empty-parallelogram")
        ->required();
    add_common(verify, false);
    verify->add_option("--rule", opts.rule, "rule spec (see construct)");
    verify->add_option("--depth", opts.depth, "depth / highest index");
    verify->add_option("--tol", opts.tol, "tolerance as a rational, e.g. 1/100");
    verify->add_option("--window", opts.window, "trailing window override");
    verify->add_option("--gamma", gamma_list, "comma list of gammas for spectrum-point");
    verify->add_option("--tmax", tmax, "largest t for dirichlet");
    verify->add_option("--samples", samples, "sample count for dirichlet");
    verify->add_option("--exponent", exponent, "gamma in the dirichlet system");

    CLI::App* profile = app.add_subcommand("profile", "minimum product over sup-balls");
    add_common(profile, true);
    profile->add_option("--t", t_list, "comma list of t values");

    CLI11_PARSE(app, argc, argv);

    try {
        if (construct->parsed()) return cmd_construct(opts);
        if (exponents->parsed()) return cmd_exponents(opts);
        if (minima->parsed()) return cmd_minima(opts, kind, mode, diff);
        if (verify->parsed()) return cmd_verify(opts, claim, gamma_list, tmax, samples, exponent);
        if (profile->parsed()) return cmd_profile(opts, t_list);
    } catch (const budget_error& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return kExitInconclusive;
    } catch (const quotients_exhausted& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return kExitInconclusive;
    } catch (const data_exhausted& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return kExitInconclusive;
    } catch (const formula_inapplicable& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return kExitInconclusive;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
