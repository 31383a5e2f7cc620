// Python bindings: the main workbench operations, returning plain python
// structures (ints, strings, dicts parsed from the same JSON the CLI emits).

#include "diophant/exponents.hpp"
#include "diophant/io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace diophant;

namespace {

py::int_ to_py_int(const BigInt& v) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

py::object json_to_py(const json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

std::pair<std::string, std::string> interval_strings(const RatInterval& i) {
    return {rational_string(i.lo), rational_string(i.hi)};
}

CFNumber make_cf(const std::string& rule, std::size_t max_digits) {
    return CFNumber(QuotientRule::parse(rule), max_digits);
}

py::dict verify_dispatch(const std::string& claim, const std::string& rule, long depth,
                         const std::string& tol, const std::string& gammas,
                         const std::string& tmax, int samples, const std::string& exponent,
                         long window, std::size_t max_digits) {
    std::vector<VerificationReport> reports;
    if (claim == "spectrum-point") {
        std::vector<Rat> gs;
        if (!gammas.empty()) {
            std::stringstream ss(gammas);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) gs.push_back(parse_rat(item));
        } else {
            QuotientRule r = QuotientRule::parse(rule);
            if (!r.is_power_growth())
                throw std::invalid_argument("spectrum-point needs gamma or a power rule");
            gs.push_back(std::get<PowerGrowthRule>(r.variant()).gamma);
        }
        for (const Rat& g : gs)
            reports.push_back(verify_spectrum_point(g, depth, parse_rat(tol), window, max_digits));
    } else {
        CFNumber cf = make_cf(rule, max_digits);
        if (claim == "lemma2-premise")
            reports.push_back(verify_defect_ratio(cf, depth));
        else if (claim == "lemma3-growth")
            reports.push_back(verify_growth_bound(cf, depth));
        else if (claim == "product-bounds")
            reports.push_back(verify_product_bounds(cf, depth));
        else if (claim == "denominator-sandwich")
            reports.push_back(verify_denominator_growth(cf, depth));
        else if (claim == "dirichlet")
            reports.push_back(verify_dirichlet(cf, parse_rat(tmax), samples, parse_rat(exponent)));
        else if (claim == "empty-parallelogram")
            reports.push_back(verify_empty_parallelograms(cf, depth));
        else
            throw std::invalid_argument("unknown claim '" + claim + "'");
    }
    py::dict out;
    out["claim"] = claim;
    bool all = true, inconclusive = false;
    py::list reps;
    for (const auto& r : reports) {
        all = all && r.verdict;
        inconclusive = inconclusive || r.inconclusive;
        reps.append(json_to_py(report_json(r)));
    }
    out["verdict"] = all;
    out["inconclusive"] = inconclusive;
    out["reports"] = reps;
    return out;
}

}  // namespace

PYBIND11_MODULE(_diophant, m) {
    m.doc() = "Continued fractions, planar lattice minima, and certified Diophantine "
              "exponent estimates";

    py::register_exception<budget_error>(m, "BudgetError", PyExc_RuntimeError);
    py::register_exception<quotients_exhausted>(m, "QuotientsExhausted", PyExc_RuntimeError);
    py::register_exception<data_exhausted>(m, "DataExhausted", PyExc_RuntimeError);
    py::register_exception<formula_inapplicable>(m, "FormulaInapplicable", PyExc_RuntimeError);

    py::class_<CFNumber>(m, "ContinuedFraction")
        .def(py::init([](const std::string& rule, std::size_t max_digits) {
                 return make_cf(rule, max_digits);
             }),
             py::arg("rule"), py::arg("max_digits") = CFNumber::kDefaultDigitBudget)
        .def("rule", [](const CFNumber& cf) { return cf.rule().to_string(); })
        .def_property_readonly("terminated", &CFNumber::terminated)
        .def("quotients",
             [](CFNumber& cf, long depth) {
                 py::list out;
                 for (const auto& c : cf.extend_convergents(depth)) out.append(to_py_int(c.a));
                 return out;
             },
             py::arg("depth"))
        .def("convergents",
             [](CFNumber& cf, long depth) {
                 py::list out;
                 for (const auto& c : cf.extend_convergents(depth))
                     out.append(py::make_tuple(c.k, to_py_int(c.a), to_py_int(c.p), to_py_int(c.q)));
                 return out;
             },
             py::arg("depth"))
        .def("theta",
             [](CFNumber& cf, long k, long refine) {
                 return interval_strings(cf.enclose_theta(k, refine));
             },
             py::arg("k"), py::arg("refine") = 2)
        .def("defect",
             [](CFNumber& cf, long k, long refine) {
                 return interval_strings(cf.approx_defect(k, refine));
             },
             py::arg("k"), py::arg("refine") = 2)
        .def("cache_json", [](const CFNumber& cf) { return cf.cache_to_json().dump(2); })
        .def("__repr__",
             [](const CFNumber& cf) { return "ContinuedFraction('" + cf.rule().to_string() + "')"; });

    m.def("floor_pow",
          [](py::int_ q, const std::string& gamma) {
              BigInt qi(py::str(q).cast<std::string>());
              return to_py_int(floor_pow(qi, parse_rat(gamma)));
          },
          py::arg("q"), py::arg("gamma"));

    m.def("pow_compare",
          [](const std::string& a, unsigned long e1, const std::string& b, unsigned long e2) {
              auto o = pow_compare(parse_rat(a), e1, parse_rat(b), e2);
              return o == std::strong_ordering::less ? -1 : (o == std::strong_ordering::greater ? 1 : 0);
          },
          py::arg("a"), py::arg("e1"), py::arg("b"), py::arg("e2"));

    m.def("log_enclose",
          [](const std::string& x, unsigned bits) {
              return interval_strings(log_enclose_rat(parse_rat(x), bits));
          },
          py::arg("x"), py::arg("bits") = 96);

    m.def("exponents",
          [](const std::string& rule, long depth, long window, std::size_t max_digits) {
              CFNumber cf = make_cf(rule, max_digits);
              py::dict out;
              out["omega"] = json_to_py(estimate_json(regular_exponent(cf, depth, window)));
              out["omega_hat"] = json_to_py(estimate_json(uniform_exponent(cf, depth)));
              out["omega_hat_hat_lattice"] =
                  json_to_py(estimate_json(weak_exponent_lattice(cf, depth, window)));
              out["omega_hat_hat"] =
                  json_to_py(estimate_json(weak_exponent_number(cf, depth, window)));
              return out;
          },
          py::arg("rule"), py::arg("depth") = 10, py::arg("window") = 0,
          py::arg("max_digits") = CFNumber::kDefaultDigitBudget);

    m.def("minima",
          [](const std::string& rule, const std::string& bound, const std::string& kind,
             const std::string& mode, unsigned long long budget, std::size_t max_digits) {
              CFNumber cf = make_cf(rule, max_digits);
              Rat T = parse_rat(bound);
              MinimaKind mk = kind == "hyperbolic" ? MinimaKind::hyperbolic : MinimaKind::relative;
              MinimaSequence seq;
              if (mode == "brute") {
                  seq = brute_force_minima(cf, T, mk, budget);
              } else {
                  MinimaSequence rel = relative_minima_from_convergents(cf, T);
                  seq = mk == MinimaKind::relative ? rel : hyperbolic_from_relative(cf, rel);
              }
              return json_to_py(minima_json(seq));
          },
          py::arg("rule"), py::arg("bound"), py::arg("kind") = "relative",
          py::arg("mode") = "convergent", py::arg("budget") = 100000000ull,
          py::arg("max_digits") = CFNumber::kDefaultDigitBudget);

    m.def("profile",
          [](const std::string& rule, const std::vector<std::string>& ts,
             unsigned long long budget, std::size_t max_digits) {
              CFNumber cf = make_cf(rule, max_digits);
              std::vector<Rat> t_list;
              for (const auto& t : ts) t_list.push_back(parse_rat(t));
              return json_to_py(profile_json(minimum_product_profile(cf, t_list, budget)));
          },
          py::arg("rule"), py::arg("ts"), py::arg("budget") = 100000000ull,
          py::arg("max_digits") = CFNumber::kDefaultDigitBudget);

    m.def("verify", &verify_dispatch, py::arg("claim"), py::arg("rule") = "",
          py::arg("depth") = 10, py::arg("tol") = "1/100", py::arg("gamma") = "",
          py::arg("tmax") = "10000", py::arg("samples") = 10, py::arg("exponent") = "1",
          py::arg("window") = 0, py::arg("max_digits") = CFNumber::kDefaultDigitBudget);

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
