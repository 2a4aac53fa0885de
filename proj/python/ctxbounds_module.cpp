#include "ctxbounds/classical.hpp"
#include "ctxbounds/errors.hpp"
#include "ctxbounds/hypergraph.hpp"
#include "ctxbounds/instances.hpp"
#include "ctxbounds/lp_bound.hpp"
#include "ctxbounds/onc.hpp"
#include "ctxbounds/quantum.hpp"
#include "ctxbounds/report.hpp"
#include "ctxbounds/theta.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cmath>

namespace py = pybind11;
using namespace ctxbounds;

namespace {

py::object fraction(const Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(to_string(r));
}

// Accepts int, str ("p/q") or fractions.Fraction.
Rational to_rational(const py::handle& obj) {
  if (py::isinstance<py::float_>(obj)) throw py::type_error("floats are not accepted; pass a Fraction or a 'p/q' string");
  return parse_rational(py::str(obj).cast<std::string>());
}

py::list fractions(const std::vector<Rational>& v) {
  py::list out;
  for (const Rational& r : v) out.append(fraction(r));
  return out;
}

py::list findings(const ValidationReport& report) {
  py::list out;
  for (const Finding& f : report.findings) {
    out.append(py::dict(py::arg("severity") = to_string(f.severity), py::arg("location") = f.location,
                        py::arg("message") = f.message));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_ctxbounds, m) {
  m.doc() = "Bounds for contextuality scenarios";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  py::class_<ContextHypergraph>(m, "Hypergraph")
      .def_readonly("name", &ContextHypergraph::name)
      .def_readonly("outcomes", &ContextHypergraph::outcomes)
      .def_property_readonly("contexts",
                             [](const ContextHypergraph& h) {
                               std::vector<std::vector<std::string>> out;
                               for (const Context& c : h.contexts) {
                                 auto& ids = out.emplace_back();
                                 for (OutcomeIndex i : c) ids.push_back(h.outcomes[i]);
                               }
                               return out;
                             })
      .def_property_readonly("weights", [](const ContextHypergraph& h) { return fractions(h.weights); })
      .def_property_readonly("multiplicities", &context_multiplicities)
      .def_property_readonly("penalty_slope", [](const ContextHypergraph& h) { return fraction(penalty_slope(h)); })
      .def("to_json", &emit_hypergraph)
      .def("__eq__", [](const ContextHypergraph& a, const ContextHypergraph& b) { return a == b; })
      .def("__repr__", [](const ContextHypergraph& h) {
        return "<Hypergraph '" + h.name + "' with " + std::to_string(h.outcome_count()) + " outcomes and " +
               std::to_string(h.context_count()) + " contexts>";
      });

  m.def(
      "make_hypergraph",
      [](std::string name, std::vector<std::string> outcomes, const std::vector<std::vector<std::string>>& contexts,
         const std::optional<std::vector<py::object>>& weights) {
        std::vector<Rational> w;
        if (weights) {
          for (const auto& x : *weights) w.push_back(to_rational(x));
        }
        return make_hypergraph(std::move(name), std::move(outcomes), contexts, std::move(w));
      },
      py::arg("name"), py::arg("outcomes"), py::arg("contexts"), py::arg("weights") = py::none());
  m.def("parse_hypergraph", [](const std::string& text) { return parse_hypergraph(text); });
  m.def("load_hypergraph", &load_hypergraph);
  m.def("validate", [](const ContextHypergraph& h) {
    const ValidationReport r = validate(h);
    return py::make_tuple(r.ok, findings(r));
  });
  m.def("instance", [](const std::string& name) { return named_instance(name).hypergraph; });
  m.def("exclusivity_edges", [](const ContextHypergraph& h) { return exclusivity_graph(h).edges(); });

  m.def("beta_classical", [](const ContextHypergraph& h) {
    const ClassicalBoundResult r = beta_classical(h);
    std::vector<std::string> support;
    for (OutcomeIndex i : r.witness.support()) support.push_back(h.outcomes[i]);
    return py::make_tuple(fraction(r.value), support);
  });
  m.def("beta_general", [](const ContextHypergraph& h) {
    const GeneralBoundResult r = beta_general(h);
    return py::dict(py::arg("value") = fraction(r.value), py::arg("witness") = fractions(r.witness.t),
                    py::arg("alternative_optima") = r.alternative_optima,
                    py::arg("context_duals") = fractions(r.context_duals));
  });
  m.def(
      "beta_quantum",
      [](const ContextHypergraph& h, int max_iterations) {
        ThetaOptions opts;
        opts.max_iterations = max_iterations;
        const QuantumBoundResult r = lovasz_theta(exclusivity_graph(h), h.weights, opts);
        return py::dict(py::arg("value") = r.value, py::arg("certified_error") = r.certified_error,
                        py::arg("lower") = r.lower, py::arg("upper") = r.upper, py::arg("certified") = r.certified,
                        py::arg("iterations") = r.iterations, py::arg("gram_rank") = r.gram_rank);
      },
      py::arg("hypergraph"), py::arg("max_iterations") = 10000);

  m.def("robust_bound", [](const ContextHypergraph& h, const py::object& eps) {
    return fraction(robust_bound(h, to_rational(eps)));
  });
  m.def("critical_epsilon", [](const ContextHypergraph& h, double target) { return critical_epsilon(h, target); });

  m.def("sample_onc", [](const ContextHypergraph& h, const py::object& eps, std::uint64_t seed, std::size_t size) {
    return emit_hv_model(sample_onc(h, to_rational(eps), seed, size), h);
  }, py::arg("hypergraph"), py::arg("epsilon"), py::arg("seed"), py::arg("size") = 200);
  m.def("verify_onc", [](const ContextHypergraph& h, const std::string& model_json) {
    const FiniteHVModel model = parse_hv_model(model_json, h);
    const ONCReport onc = validate_onc(h, model);
    const CollapsedModel y = collapse(h, model);
    const Prop1Report p1 = prop1_check(h, model, y);
    const Rational sum_t = weighted_sum(h, expectations(h, model, default_context_choice(h)));
    return py::dict(py::arg("feasible") = onc.feasible, py::arg("epsilon_max") = fraction(onc.epsilon_max),
                    py::arg("collapse_bound_holds") = p1.holds,
                    py::arg("collapsed_noncontextual") = satisfies_context_constraints(h, y),
                    py::arg("weighted_sum") = fraction(sum_t),
                    py::arg("robust_bound") = fraction(robust_bound(h, onc.epsilon_max)));
  });

  m.def("quantum_model", [](const std::string& name) -> std::optional<std::string> {
    const NamedInstance inst = named_instance(name);
    if (!inst.model) return std::nullopt;
    return emit_quantum_model(*inst.model);
  });
  m.def("verify_quantum", [](const ContextHypergraph& h, const std::string& model_json, double tol) {
    const QuantumModel q = parse_quantum_model(model_json);
    const ValidationReport r = verify_quantum_model(h, q, tol);
    return py::make_tuple(r.ok, findings(r), max_quantum_value(h, q).value);
  }, py::arg("hypergraph"), py::arg("model_json"), py::arg("tol") = kProjectorTolerance);

  m.def(
      "analyze_json",
      [](const std::filesystem::path& path, const std::string& bounds, std::optional<std::string> target,
         std::optional<std::string> epsilon, int sdp_iterations) {
        AnalyzeArgs args;
        args.hypergraph = path;
        args.bounds = bounds;
        args.target = std::move(target);
        args.epsilon = std::move(epsilon);
        args.sdp_iterations = sdp_iterations;
        return report_to_json(analyze(args));
      },
      py::arg("path"), py::arg("bounds") = "all", py::arg("target") = py::none(), py::arg("epsilon") = py::none(),
      py::arg("sdp_iterations") = 10000);
}
