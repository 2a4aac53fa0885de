#include "ctxbounds/report.hpp"

#include "ctxbounds/classical.hpp"
#include "ctxbounds/errors.hpp"
#include "ctxbounds/hypergraph.hpp"
#include "ctxbounds/instances.hpp"
#include "ctxbounds/lp_bound.hpp"
#include "ctxbounds/onc.hpp"
#include "ctxbounds/quantum.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

namespace ctxbounds {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Validation failure with its already-formatted findings.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt9(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

ordered_json rational_json(const Rational& r) {
  return ordered_json{{"rational", to_string(r)}, {"decimal", round_sig9(to_double(r))}};
}

Rational rational_from(const json& j) { return parse_rational(j.at("rational").get<std::string>()); }

std::string findings_text(const ValidationReport& report) {
  std::ostringstream os;
  for (const Finding& f : report.findings) {
    os << "  " << to_string(f.severity) << " [" << f.location << "] " << f.message << "\n";
  }
  return os.str();
}

ordered_json findings_json(const ValidationReport& report) {
  ordered_json arr = ordered_json::array();
  for (const Finding& f : report.findings) {
    arr.push_back({{"severity", to_string(f.severity)}, {"location", f.location}, {"message", f.message}});
  }
  return arr;
}

ContextHypergraph load_valid_hypergraph(const std::filesystem::path& path, std::ostream& err) {
  ContextHypergraph h = load_hypergraph(path);
  const ValidationReport report = validate(h);
  if (!report.ok) {
    throw InvalidInput("hypergraph '" + h.name + "' failed validation:\n" + findings_text(report));
  }
  if (report.warning_count() > 0) err << "hypergraph '" << h.name << "':\n" << findings_text(report);
  return h;
}

void emit_output(const std::string& text, const std::optional<std::filesystem::path>& out_path, std::ostream& out) {
  if (!out_path) {
    out << text;
    return;
  }
  std::ofstream f(*out_path);
  if (!f) throw std::ios_base::failure("cannot write " + out_path->string());
  f << text;
  if (!f) throw std::ios_base::failure("write failed for " + out_path->string());
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const BudgetExceeded& e) {
    err << "error: budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const DimensionMismatch& e) {
    err << "error: dimension mismatch: " << e.what() << "\n";
    return kExitIo;
  } catch (const ParseError& e) {
    err << "error: invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

std::set<std::string> parse_bounds(const std::string& list) {
  std::set<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "all") {
      out.insert({"cl", "g", "qu"});
    } else if (item == "cl" || item == "g" || item == "qu") {
      out.insert(item);
    } else if (!item.empty()) {
      throw std::invalid_argument("unknown bound '" + item + "' (expected cl, g, qu or all)");
    }
  }
  return out;
}

double parse_number(const std::string& text) {
  if (text.find('/') != std::string::npos) return to_double(parse_rational(text));
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("malformed number '" + text + "'");
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// BoundsReport serialisation

std::string report_to_json(const BoundsReport& r) {
  ordered_json j;
  j["schema_version"] = r.schema_version;
  j["instance"] = r.instance;
  j["outcomes"] = r.outcome_count;
  j["contexts"] = r.context_count;
  j["multiplicities"] = r.multiplicities;
  j["penalty_slope"] = rational_json(r.penalty_slope);
  if (r.beta_cl) {
    j["beta_cl"] = rational_json(*r.beta_cl);
    j["beta_cl"]["witness"] = r.cl_witness;
  }
  if (r.beta_g) {
    j["beta_g"] = rational_json(*r.beta_g);
    ordered_json t = ordered_json::array();
    for (const Rational& v : r.g_witness) t.push_back(to_string(v));
    j["beta_g"]["witness"] = std::move(t);
    j["beta_g"]["alternative_optima"] = r.g_alternative_optima;
  }
  if (r.beta_qu) {
    const auto& q = *r.beta_qu;
    j["beta_qu"] = {{"value", q.value},         {"certified_error", q.certified_error},
                    {"lower", q.lower},         {"upper", q.upper},
                    {"certified", q.certified}, {"iterations", q.iterations},
                    {"gram_rank", q.gram_rank}};
  }
  if (r.critical_epsilon) {
    const auto& c = *r.critical_epsilon;
    j["critical_epsilon"] = {{"target_source", c.target_source}, {"target", c.target}};
    j["critical_epsilon"]["value"] = c.value ? ordered_json(*c.value) : ordered_json(nullptr);
  }
  if (r.robust) {
    j["robust_bound"] = {{"epsilon", rational_json(r.robust->epsilon)}, {"bound", rational_json(r.robust->bound)}};
  }
  if (r.quantum_model) {
    ordered_json state = ordered_json::array();
    for (const auto& [re, im] : r.quantum_model->state) state.push_back({re, im});
    j["quantum_model"] = {{"max_value", r.quantum_model->max_value},
                          {"state", std::move(state)},
                          {"verified", r.quantum_model->verified}};
  }
  if (r.timings_ms) {
    ordered_json t = ordered_json::object();
    for (const auto& [name, ms] : *r.timings_ms) t[name] = ms;
    j["timings_ms"] = std::move(t);
  }
  return j.dump(2) + "\n";
}

BoundsReport report_from_json(std::string_view text) {
  const json j = json::parse(text);
  BoundsReport r;
  r.schema_version = j.at("schema_version").get<int>();
  if (r.schema_version != kReportSchemaVersion) {
    throw ParseError("/schema_version", "unsupported schema version " + std::to_string(r.schema_version));
  }
  r.instance = j.at("instance").get<std::string>();
  r.outcome_count = j.at("outcomes").get<std::size_t>();
  r.context_count = j.at("contexts").get<std::size_t>();
  r.multiplicities = j.at("multiplicities").get<std::vector<std::size_t>>();
  r.penalty_slope = rational_from(j.at("penalty_slope"));
  if (j.contains("beta_cl")) {
    r.beta_cl = rational_from(j["beta_cl"]);
    r.cl_witness = j["beta_cl"].at("witness").get<std::vector<std::string>>();
  }
  if (j.contains("beta_g")) {
    r.beta_g = rational_from(j["beta_g"]);
    for (const auto& v : j["beta_g"].at("witness")) r.g_witness.push_back(parse_rational(v.get<std::string>()));
    r.g_alternative_optima = j["beta_g"].at("alternative_optima").get<bool>();
  }
  if (j.contains("beta_qu")) {
    const json& q = j["beta_qu"];
    r.beta_qu = QuantumBoundSummary{q.at("value").get<double>(),     q.at("certified_error").get<double>(),
                                    q.at("lower").get<double>(),     q.at("upper").get<double>(),
                                    q.at("certified").get<bool>(),   q.at("iterations").get<int>(),
                                    q.at("gram_rank").get<std::size_t>()};
  }
  if (j.contains("critical_epsilon")) {
    const json& c = j["critical_epsilon"];
    CriticalEpsilonSummary s;
    s.target_source = c.at("target_source").get<std::string>();
    s.target = c.at("target").get<double>();
    if (!c.at("value").is_null()) s.value = c["value"].get<double>();
    r.critical_epsilon = s;
  }
  if (j.contains("robust_bound")) {
    r.robust = RobustBoundSummary{rational_from(j["robust_bound"].at("epsilon")),
                                  rational_from(j["robust_bound"].at("bound"))};
  }
  if (j.contains("quantum_model")) {
    QuantumModelSummary s;
    s.max_value = j["quantum_model"].at("max_value").get<double>();
    for (const auto& z : j["quantum_model"].at("state")) s.state.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
    s.verified = j["quantum_model"].at("verified").get<bool>();
    r.quantum_model = s;
  }
  if (j.contains("timings_ms")) {
    std::vector<std::pair<std::string, double>> t;
    for (const auto& [name, ms] : j["timings_ms"].items()) t.emplace_back(name, ms.get<double>());
    r.timings_ms = std::move(t);
  }
  return r;
}

std::string report_to_text(const BoundsReport& r) {
  std::ostringstream os;
  os << "instance: " << r.instance << "\n";
  os << "outcomes: " << r.outcome_count << "  contexts: " << r.context_count << "\n";
  os << "multiplicities k_i:";
  for (std::size_t k : r.multiplicities) os << " " << k;
  os << "\n";
  os << "penalty slope sum lambda_i(k_i-1) = " << to_string(r.penalty_slope) << " ("
     << fmt9(to_double(r.penalty_slope)) << ")\n";
  if (r.beta_cl) {
    os << "beta_cl = " << to_string(*r.beta_cl) << " (" << fmt9(to_double(*r.beta_cl)) << ")  witness {";
    for (std::size_t k = 0; k < r.cl_witness.size(); ++k) os << (k ? "," : "") << r.cl_witness[k];
    os << "}\n";
  }
  if (r.beta_g) {
    os << "beta_g  = " << to_string(*r.beta_g) << " (" << fmt9(to_double(*r.beta_g)) << ")  vertex (";
    for (std::size_t k = 0; k < r.g_witness.size(); ++k) os << (k ? "," : "") << to_string(r.g_witness[k]);
    os << ")" << (r.g_alternative_optima ? "  [alternative optima]" : "") << "\n";
  }
  if (r.beta_qu) {
    const auto& q = *r.beta_qu;
    os << "beta_qu = " << fmt9(q.value) << " +/- " << fmt9(q.certified_error) << "  [" << fmt9(q.lower) << ", "
       << fmt9(q.upper) << "] " << (q.certified ? "certified" : "UNCERTIFIED") << ", " << q.iterations
       << " iterations, gram rank " << q.gram_rank << "\n";
  }
  if (r.critical_epsilon) {
    const auto& c = *r.critical_epsilon;
    os << "critical epsilon (target " << c.target_source << " = " << fmt9(c.target)
       << ") = " << (c.value ? fmt9(*c.value) : std::string("inf")) << "\n";
  }
  if (r.robust) {
    os << "robust bound at epsilon " << to_string(r.robust->epsilon) << " (" << fmt9(to_double(r.robust->epsilon))
       << ") = " << to_string(r.robust->bound) << " (" << fmt9(to_double(r.robust->bound)) << ")\n";
  }
  if (r.quantum_model) {
    os << "quantum model: " << (r.quantum_model->verified ? "valid" : "INVALID") << ", max value "
       << fmt9(r.quantum_model->max_value) << ", top state (";
    for (std::size_t k = 0; k < r.quantum_model->state.size(); ++k) {
      os << (k ? ", " : "") << fmt9(r.quantum_model->state[k].first);
      if (r.quantum_model->state[k].second != 0.0) os << (r.quantum_model->state[k].second < 0 ? "" : "+") << fmt9(r.quantum_model->state[k].second) << "i";
    }
    os << ")\n";
  }
  if (r.timings_ms) {
    os << "timings (ms):";
    for (const auto& [name, ms] : *r.timings_ms) os << " " << name << "=" << fmt9(ms);
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Commands

BoundsReport analyze(const AnalyzeArgs& args) {
  std::ostringstream warnings;
  const ContextHypergraph h = load_valid_hypergraph(args.hypergraph, warnings);
  const std::set<std::string> bounds = parse_bounds(args.bounds);
  const bool target_qu = args.target && *args.target == "qu";
  const bool need_cl = bounds.count("cl") || args.target || args.epsilon;
  const bool need_qu = bounds.count("qu") || target_qu;

  std::vector<std::pair<std::string, double>> timings;
  const auto timed = [&](const std::string& name, const auto& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    timings.emplace_back(name, round_sig9(elapsed.count()));
  };

  BoundsReport r;
  r.instance = h.name;
  r.outcome_count = h.outcome_count();
  r.context_count = h.context_count();
  r.multiplicities = context_multiplicities(h);
  r.penalty_slope = penalty_slope(h);

  if (need_cl) {
    timed("beta_cl", [&] {
      const ClassicalBoundResult cl = beta_classical(h);
      r.beta_cl = cl.value;
      for (OutcomeIndex i : cl.witness.support()) r.cl_witness.push_back(h.outcomes[i]);
    });
  }
  if (bounds.count("g")) {
    timed("beta_g", [&] {
      const GeneralBoundResult g = beta_general(h);
      r.beta_g = g.value;
      r.g_witness = g.witness.t;
      r.g_alternative_optima = g.alternative_optima;
    });
  }
  if (need_qu) {
    timed("beta_qu", [&] {
      ThetaOptions opts;
      opts.max_iterations = args.sdp_iterations;
      const QuantumBoundResult q = lovasz_theta(exclusivity_graph(h), h.weights, opts);
      r.beta_qu = QuantumBoundSummary{round_sig9(q.value), round_sig9(q.certified_error), round_sig9(q.lower),
                                      round_sig9(q.upper),  q.certified,                  q.iterations,
                                      q.gram_rank};
    });
  }
  if (args.target) {
    CriticalEpsilonSummary c;
    double target = 0.0;
    if (target_qu) {
      c.target_source = "qu";
      target = r.beta_qu->value;
      // On perfect graphs theta equals beta_cl; do not let rounding put it below.
      const double cl = to_double(*r.beta_cl);
      if (target < cl && cl - target <= r.beta_qu->certified_error + 1e-9) target = cl;
    } else {
      c.target_source = "value";
      target = parse_number(*args.target);
    }
    c.target = round_sig9(target);
    const double eps = critical_epsilon(*r.beta_cl, r.penalty_slope, target);
    if (std::isfinite(eps)) c.value = round_sig9(eps);
    r.critical_epsilon = c;
  }
  if (args.epsilon) {
    const Rational eps = parse_rational(*args.epsilon);
    r.robust = RobustBoundSummary{eps, robust_bound(*r.beta_cl, r.penalty_slope, eps)};
  }
  if (args.model) {
    timed("quantum_model", [&] {
      const QuantumModel q = load_quantum_model(*args.model);
      QuantumModelSummary s;
      s.verified = verify_quantum_model(h, q).ok;
      const QuantumOptimum opt = max_quantum_value(h, q);
      s.max_value = round_sig9(opt.value);
      for (Eigen::Index k = 0; k < opt.state_vector.size(); ++k) {
        s.state.emplace_back(round_sig9(opt.state_vector(k).real()), round_sig9(opt.state_vector(k).imag()));
      }
      r.quantum_model = s;
    });
  }
  if (args.timings) r.timings_ms = timings;
  return r;
}

int run_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const BoundsReport r = analyze(args);
    emit_output(args.format == OutputFormat::Json ? report_to_json(r) : report_to_text(r), args.out, out);
    if (r.beta_qu && !r.beta_qu->certified) {
      err << "error: theta SDP did not certify within " << args.sdp_iterations << " iterations\n";
      return static_cast<int>(kExitBudget);
    }
    return static_cast<int>(kExitOk);
  });
}

int run_verify_quantum(const VerifyQuantumArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ContextHypergraph h = load_valid_hypergraph(args.hypergraph, err);
    const QuantumModel q = load_quantum_model(args.model);
    const ValidationReport report = verify_quantum_model(h, q, args.tol);

    std::vector<double> context_lmax;
    for (const Context& c : h.contexts) {
      HermitianOperator sum = HermitianOperator::zero(q.dimension);
      for (OutcomeIndex i : c) sum += q.projector(h.outcomes[i]);
      context_lmax.push_back(max_eigenvalue(sum));
    }
    const QuantumOptimum opt = max_quantum_value(h, q);

    std::string text;
    if (args.format == OutputFormat::Json) {
      ordered_json j;
      j["schema_version"] = kReportSchemaVersion;
      j["instance"] = h.name;
      j["dimension"] = q.dimension;
      j["tolerance"] = args.tol;
      j["ok"] = report.ok;
      ordered_json ctx = ordered_json::array();
      for (std::size_t c = 0; c < h.context_count(); ++c) {
        ordered_json ids = ordered_json::array();
        for (OutcomeIndex i : h.contexts[c]) ids.push_back(h.outcomes[i]);
        ctx.push_back({{"context", c}, {"outcomes", ids}, {"lambda_max", round_sig9(context_lmax[c])}});
      }
      j["contexts"] = std::move(ctx);
      j["findings"] = findings_json(report);
      j["max_quantum_value"] = round_sig9(opt.value);
      text = j.dump(2) + "\n";
    } else {
      std::ostringstream os;
      os << "instance: " << h.name << "  dimension: " << q.dimension << "  tol: " << fmt9(args.tol) << "\n";
      for (std::size_t c = 0; c < h.context_count(); ++c) {
        os << "context " << c << " {";
        for (std::size_t k = 0; k < h.contexts[c].size(); ++k) os << (k ? "," : "") << h.outcomes[h.contexts[c][k]];
        os << "}: lambda_max = " << fmt9(context_lmax[c]) << (context_lmax[c] > 1.0 + args.tol ? "  FAIL" : "  ok")
           << "\n";
      }
      os << findings_text(report);
      os << "max quantum value = " << fmt9(opt.value) << "\n";
      os << (report.ok ? "PASS" : "FAIL") << "\n";
      text = os.str();
    }
    emit_output(text, args.out, out);
    return static_cast<int>(report.ok ? kExitOk : kExitInvalid);
  });
}

int run_verify_onc(const VerifyOncArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ContextHypergraph h = load_valid_hypergraph(args.hypergraph, err);
    const FiniteHVModel m = load_hv_model(args.model, h);
    const ONCReport onc = validate_onc(h, m);
    const CollapsedModel y = collapse(h, m);
    const Prop1Report p1 = prop1_check(h, m, y);
    const ContextChoice choice = default_context_choice(h);
    const Rational sum_t = weighted_sum(h, expectations(h, m, choice));
    const Rational beta_cl = beta_classical(h).value;
    const Rational bound = robust_bound(beta_cl, penalty_slope(h), onc.epsilon_max);
    const bool collapsed_ok = satisfies_context_constraints(h, y);
    const bool ok = onc.feasible && p1.holds && collapsed_ok && sum_t <= bound;

    std::string text;
    if (args.format == OutputFormat::Json) {
      ordered_json j;
      j["schema_version"] = kReportSchemaVersion;
      j["instance"] = h.name;
      j["sample_points"] = m.sample_count();
      j["feasible"] = onc.feasible;
      ordered_json viol = ordered_json::array();
      for (const auto& v : onc.violations) viol.push_back({{"context", v.context}, {"sample", v.sample}, {"sum", v.sum}});
      j["violations"] = std::move(viol);
      j["epsilon_max"] = rational_json(onc.epsilon_max);
      ordered_json table = ordered_json::array();
      for (const auto& d : onc.disagreements) {
        table.push_back({{"outcome", h.outcomes[d.outcome]},
                         {"context_a", d.context_a},
                         {"context_b", d.context_b},
                         {"probability", to_string(d.probability)}});
      }
      j["disagreements"] = std::move(table);
      ordered_json margins = ordered_json::array();
      for (const auto& e : p1.entries) {
        margins.push_back({{"outcome", h.outcomes[e.outcome]},
                           {"k", e.multiplicity},
                           {"probability", to_string(e.probability)},
                           {"bound", to_string(e.bound)},
                           {"margin", to_string(e.margin)}});
      }
      j["collapse_deviation"] = {{"holds", p1.holds}, {"entries", std::move(margins)}};
      j["collapsed_noncontextual"] = collapsed_ok;
      j["weighted_sum"] = rational_json(sum_t);
      j["beta_cl"] = rational_json(beta_cl);
      j["robust_bound"] = rational_json(bound);
      j["ok"] = ok;
      text = j.dump(2) + "\n";
    } else {
      std::ostringstream os;
      os << "instance: " << h.name << "  sample points: " << m.sample_count() << "\n";
      os << "per-context constraint: " << (onc.feasible ? "satisfied" : "VIOLATED") << "\n";
      for (const auto& v : onc.violations) {
        os << "  context " << v.context << " at sample " << v.sample << ": sum = " << v.sum << "\n";
      }
      os << "epsilon_max = " << to_string(onc.epsilon_max) << " (" << fmt9(to_double(onc.epsilon_max)) << ")\n";
      for (const auto& d : onc.disagreements) {
        os << "  Pr{X^" << d.context_a << "_" << h.outcomes[d.outcome] << " != X^" << d.context_b << "_"
           << h.outcomes[d.outcome] << "} = " << to_string(d.probability) << "\n";
      }
      os << "collapsed model non-contextual: " << (collapsed_ok ? "yes" : "NO") << "\n";
      os << "collapse deviation margins, (k_i-1)*eps - Pr{some copy differs from Y_i}:\n";
      for (const auto& e : p1.entries) {
        os << "  " << h.outcomes[e.outcome] << ": k=" << e.multiplicity << "  " << to_string(e.probability)
           << " <= " << to_string(e.bound) << "  margin " << to_string(e.margin) << "\n";
      }
      os << "sum lambda_i t_i = " << to_string(sum_t) << " (" << fmt9(to_double(sum_t)) << ")  robust bound "
         << to_string(bound) << " (" << fmt9(to_double(bound)) << ")\n";
      os << (ok ? "PASS" : "FAIL") << "\n";
      text = os.str();
    }
    emit_output(text, args.out, out);
    return static_cast<int>(ok ? kExitOk : kExitInvalid);
  });
}

int run_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ContextHypergraph h = load_valid_hypergraph(args.hypergraph, err);
    const Rational eps = parse_rational(args.epsilon);
    const Rational beta_cl = beta_classical(h).value;
    const Rational slope = penalty_slope(h);
    const ContextChoice choice = default_context_choice(h);

    std::optional<Rational> max_eps, min_p1, max_sum, min_p2, min_rep;
    bool all_ok = true;
    std::size_t repeat_checks = 0;
    const auto keep_min = [](std::optional<Rational>& slot, const Rational& v) {
      if (!slot || v < *slot) slot = v;
    };
    const auto keep_max = [](std::optional<Rational>& slot, const Rational& v) {
      if (!slot || v > *slot) slot = v;
    };

    for (std::size_t trial = 0; trial < args.trials; ++trial) {
      const FiniteHVModel m = sample_onc(h, eps, args.seed + trial, args.size);
      const ONCReport onc = validate_onc(h, m);
      const CollapsedModel y = collapse(h, m);
      const Prop1Report p1 = prop1_check(h, m, y);
      const Rational sum_t = weighted_sum(h, expectations(h, m, choice));
      const Rational bound = robust_bound(beta_cl, slope, onc.epsilon_max);
      all_ok = all_ok && onc.feasible && p1.holds && satisfies_context_constraints(h, y) && sum_t <= bound;

      keep_max(max_eps, onc.epsilon_max);
      for (const auto& e : p1.entries) keep_min(min_p1, e.margin);
      keep_max(max_sum, sum_t);
      keep_min(min_p2, bound - sum_t);
      for (const auto& d : onc.disagreements) {
        for (int xi = 0; xi <= 1; ++xi) {
          for (const auto& [c, cp] : {std::pair{d.context_a, d.context_b}, std::pair{d.context_b, d.context_a}}) {
            try {
              const RepeatabilityResult rep = repeatability_bound(h, m, d.outcome, c, cp, xi, onc.epsilon_max);
              keep_min(min_rep, rep.bound - rep.conditional);
              all_ok = all_ok && rep.holds;
              ++repeat_checks;
            } catch (const std::domain_error&) {
            }
          }
        }
      }
    }
    const Rational nominal = robust_bound(beta_cl, slope, eps);
    const auto or_zero = [](const std::optional<Rational>& v) { return v.value_or(Rational(0)); };

    std::string text;
    if (args.format == OutputFormat::Json) {
      ordered_json j;
      j["schema_version"] = kReportSchemaVersion;
      j["instance"] = h.name;
      j["epsilon"] = rational_json(eps);
      j["seed"] = args.seed;
      j["size"] = args.size;
      j["trials"] = args.trials;
      j["beta_cl"] = rational_json(beta_cl);
      j["penalty_slope"] = rational_json(slope);
      j["nominal_robust_bound"] = rational_json(nominal);
      j["max_epsilon_measured"] = rational_json(or_zero(max_eps));
      j["min_collapse_margin"] = rational_json(or_zero(min_p1));
      j["max_weighted_sum"] = rational_json(or_zero(max_sum));
      j["min_robust_margin"] = rational_json(or_zero(min_p2));
      j["repeatability_checks"] = repeat_checks;
      j["min_repeatability_margin"] = rational_json(or_zero(min_rep));
      j["all_checks_pass"] = all_ok;
      text = j.dump(2) + "\n";
    } else {
      std::ostringstream os;
      os << "instance: " << h.name << "  epsilon: " << to_string(eps) << "  seed: " << args.seed
         << "  size: " << args.size << "  trials: " << args.trials << "\n";
      os << "beta_cl = " << to_string(beta_cl) << "  penalty slope = " << to_string(slope)
         << "  nominal robust bound = " << to_string(nominal) << " (" << fmt9(to_double(nominal)) << ")\n";
      os << "max measured epsilon = " << to_string(or_zero(max_eps)) << " (" << fmt9(to_double(or_zero(max_eps)))
         << ")\n";
      os << "min collapse margin = " << to_string(or_zero(min_p1)) << "\n";
      os << "max sum lambda_i t_i = " << to_string(or_zero(max_sum)) << " (" << fmt9(to_double(or_zero(max_sum)))
         << ")\n";
      os << "min robust-bound margin = " << to_string(or_zero(min_p2)) << "\n";
      os << "repeatability checks = " << repeat_checks << "  min margin = " << to_string(or_zero(min_rep)) << "\n";
      os << (all_ok ? "PASS" : "FAIL") << "\n";
      text = os.str();
    }
    emit_output(text, args.out, out);
    return static_cast<int>(all_ok ? kExitOk : kExitInvalid);
  });
}

int run_emit(const EmitArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const NamedInstance inst = named_instance(args.name);
    std::error_code ec;
    std::filesystem::create_directories(args.out_dir, ec);
    if (ec) throw std::ios_base::failure("cannot create " + args.out_dir.string() + ": " + ec.message());
    const auto hpath = args.out_dir / (args.name + ".json");
    emit_output(emit_hypergraph(inst.hypergraph), hpath, out);
    out << hpath.string() << "\n";
    if (inst.model) {
      const auto qpath = args.out_dir / (args.name + ".quantum.json");
      emit_output(emit_quantum_model(*inst.model), qpath, out);
      out << qpath.string() << "\n";
    }
    return static_cast<int>(kExitOk);
  });
}

}  // namespace ctxbounds
