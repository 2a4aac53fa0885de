#include "ctxbounds/hypergraph.hpp"
#include "ctxbounds/instances.hpp"
#include "ctxbounds/onc.hpp"
#include "ctxbounds/quantum.hpp"
#include "ctxbounds/report.hpp"
#include "support.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace ctxbounds;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("ctxbounds_report_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

struct Run {
  int code;
  std::string out;
  std::string err;
};

template <typename Args, typename Fn>
Run run(Fn fn, const Args& args) {
  std::ostringstream out, err;
  const int code = fn(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("analyze pentagon") {
  TempDir tmp;
  const fs::path file = tmp.path / "pentagon.json";
  write(file, emit_hypergraph(cycle_instance(5)));

  AnalyzeArgs args;
  args.hypergraph = file;
  args.target = "qu";
  args.epsilon = "1/100";
  const BoundsReport r = analyze(args);
  CHECK(*r.beta_cl == 2);
  CHECK(*r.beta_g == Rational(5, 2));
  CHECK(std::abs(r.beta_qu->value - std::sqrt(5.0)) <= 1e-6);
  CHECK(r.beta_qu->certified);
  CHECK(std::abs(*r.critical_epsilon->value - 0.0472136) <= 1e-6);
  CHECK(r.robust->bound == Rational(41, 20));
  CHECK(r.cl_witness == std::vector<std::string>{"0", "2"});
  CHECK_FALSE(r.timings_ms.has_value());

  // Report invariants.
  CHECK(to_double(*r.beta_cl) <= r.beta_qu->value + r.beta_qu->certified_error);
  CHECK(r.beta_qu->value <= to_double(*r.beta_g) + r.beta_qu->certified_error);

  args.format = OutputFormat::Json;
  const Run json_run = run(run_analyze, args);
  CHECK(json_run.code == 0);
  CHECK(report_from_json(json_run.out) == r);
  args.format = OutputFormat::Text;
  const Run text_run = run(run_analyze, args);
  CHECK(text_run.code == 0);
  CHECK(text_run.out.find("beta_g  = 5/2") != std::string::npos);
  CHECK(text_run.out.find("0.047213596") != std::string::npos);
}

TEST_CASE("analyze variants") {
  TempDir tmp;
  const fs::path mp = tmp.path / "mp24.json";
  write(mp, emit_hypergraph(peres_mermin_24().hypergraph));
  AnalyzeArgs args;
  args.hypergraph = mp;
  args.bounds = "cl,qu";
  args.target = "6";
  const BoundsReport r = analyze(args);
  CHECK(*r.beta_cl == 5);
  CHECK_FALSE(r.beta_g.has_value());
  CHECK(std::abs(r.beta_qu->value - 6.0) <= 1e-5);
  CHECK(r.critical_epsilon->target_source == "value");
  CHECK(std::abs(*r.critical_epsilon->value - 1.0 / 72) <= 1e-7);

  const fs::path single = tmp.path / "single.json";
  write(single, emit_hypergraph(single_context_instance(4)));
  args = {};
  args.hypergraph = single;
  args.target = "qu";
  const BoundsReport s = analyze(args);
  CHECK(*s.beta_cl == 1);
  CHECK(*s.beta_g == 1);
  CHECK(std::abs(s.beta_qu->value - 1.0) <= 1e-6);
  CHECK_FALSE(s.critical_epsilon->value.has_value());
  CHECK(report_from_json(report_to_json(s)) == s);

  args.timings = true;
  CHECK(analyze(args).timings_ms->size() == 3);

  const fs::path model = tmp.path / "pentagon.quantum.json";
  write(model, emit_quantum_model(kcbs_pentagon().model));
  const fs::path pentagon = tmp.path / "pentagon.json";
  write(pentagon, emit_hypergraph(cycle_instance(5)));
  args = {};
  args.hypergraph = pentagon;
  args.bounds = "cl";
  args.model = model;
  const BoundsReport q = analyze(args);
  CHECK(q.quantum_model->verified);
  CHECK(std::abs(q.quantum_model->max_value - std::sqrt(5.0)) <= 1e-8);
  CHECK(report_from_json(report_to_json(q)) == q);
}

TEST_CASE("json contains every text number") {
  TempDir tmp;
  const fs::path file = tmp.path / "c7.json";
  write(file, emit_hypergraph(cycle_instance(7)));
  AnalyzeArgs args;
  args.hypergraph = file;
  args.target = "qu";
  args.epsilon = "1/30";
  const BoundsReport r = analyze(args);
  const std::string json = report_to_json(r);
  const std::string text = report_to_text(r);
  const auto json_numbers = nlohmann::json::parse(json).dump();
  // Every decimal token of the text report appears in the JSON document.
  std::istringstream words(text);
  std::string w;
  while (words >> w) {
    const std::string token = w.substr(0, w.find_first_of(",)]"));
    const std::string clean = token.front() == '(' || token.front() == '[' ? token.substr(1) : token;
    if (clean.find('.') == std::string::npos) continue;
    try {
      std::size_t used = 0;
      std::stod(clean, &used);
      if (used != clean.size()) continue;
    } catch (const std::exception&) {
      continue;
    }
    const double x = std::stod(clean);
    CHECK_MESSAGE(json_numbers.find(nlohmann::json(x).dump()) != std::string::npos, clean);
  }
}

TEST_CASE("exit codes") {
  TempDir tmp;
  AnalyzeArgs args;
  args.hypergraph = tmp.path / "missing.json";
  CHECK(run(run_analyze, args).code == kExitIo);

  write(tmp.path / "bad.json", R"({"name":"x","outcomes":["a"],"contexts":[["a","z"]]})");
  args.hypergraph = tmp.path / "bad.json";
  const Run bad = run(run_analyze, args);
  CHECK(bad.code == kExitInvalid);
  CHECK(bad.err.find("/contexts/0/1") != std::string::npos);

  write(tmp.path / "empty.json", R"({"name":"x","outcomes":["a"],"contexts":[[]]})");
  args.hypergraph = tmp.path / "empty.json";
  CHECK(run(run_analyze, args).code == kExitInvalid);

  write(tmp.path / "c9.json", emit_hypergraph(cycle_instance(9)));
  args.hypergraph = tmp.path / "c9.json";
  args.sdp_iterations = 2;
  CHECK(run(run_analyze, args).code == kExitBudget);

  args.sdp_iterations = 10000;
  args.bounds = "cl,zz";
  CHECK(run(run_analyze, args).code == kExitInvalid);

  args.bounds = "all";
  args.out = tmp.path / "no_such_dir" / "out.json";
  CHECK(run(run_analyze, args).code == kExitIo);
}

TEST_CASE("verify-quantum command") {
  TempDir tmp;
  const KcbsInstance k = kcbs_pentagon();
  write(tmp.path / "p.json", emit_hypergraph(k.hypergraph));
  write(tmp.path / "p.quantum.json", emit_quantum_model(k.model));
  VerifyQuantumArgs args;
  args.hypergraph = tmp.path / "p.json";
  args.model = tmp.path / "p.quantum.json";
  const Run ok = run(run_verify_quantum, args);
  CHECK(ok.code == 0);
  CHECK(ok.out.find("max quantum value = 2.23606798") != std::string::npos);

  QuantumModel bent = k.model;
  ComplexVector v = bent.vectors.at("3");
  v(0) += 0.1;
  bent.add_vector("3", v);
  write(tmp.path / "bent.json", emit_quantum_model(bent));
  args.model = tmp.path / "bent.json";
  const Run fail = run(run_verify_quantum, args);
  CHECK(fail.code == kExitInvalid);
  CHECK(fail.out.find("FAIL") != std::string::npos);
  CHECK(fail.out.find("{2,3}") != std::string::npos);

  write(tmp.path / "dim.json", R"({"dimension":2,"projectors":{"0":{"vector":[[1,0],[0,0],[0,0]]}}})");
  args.model = tmp.path / "dim.json";
  CHECK(run(run_verify_quantum, args).code == kExitIo);
}

TEST_CASE("verify-onc command") {
  TempDir tmp;
  const ContextHypergraph p = cycle_instance(5);
  write(tmp.path / "p.json", emit_hypergraph(p));
  VerifyOncArgs args;
  args.hypergraph = tmp.path / "p.json";
  args.model = tmp.path / "zero.json";
  args.format = OutputFormat::Json;

  write(args.model, emit_hv_model(support::pentagon_flip_model(p, false), p));
  Run r = run(run_verify_onc, args);
  CHECK(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["epsilon_max"]["rational"] == "0");
  for (const auto& e : j["collapse_deviation"]["entries"]) CHECK(e["margin"] == "0");

  write(args.model, emit_hv_model(sample_onc(p, Rational(1, 20), 3, 200), p));
  r = run(run_verify_onc, args);
  CHECK(r.code == 0);
  j = nlohmann::json::parse(r.out);
  for (const auto& e : j["collapse_deviation"]["entries"]) CHECK(parse_rational(e["margin"].get<std::string>()) >= 0);

  FiniteHVModel bad = support::pentagon_flip_model(p, false);
  bad.tables[{0, 1}][3] = 1;
  write(args.model, emit_hv_model(bad, p));
  CHECK(run(run_verify_onc, args).code == kExitInvalid);
}

TEST_CASE("simulate command") {
  TempDir tmp;
  write(tmp.path / "p.json", emit_hypergraph(cycle_instance(5)));
  SimulateArgs args;
  args.hypergraph = tmp.path / "p.json";
  args.format = OutputFormat::Json;
  args.seed = 12;
  args.trials = 30;
  args.epsilon = "0";
  Run r = run(run_simulate, args);
  CHECK(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(parse_rational(j["max_weighted_sum"]["rational"].get<std::string>()) <= 2);

  args.epsilon = "1/100";
  args.trials = 200;
  r = run(run_simulate, args);
  CHECK(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(parse_rational(j["max_weighted_sum"]["rational"].get<std::string>()) <= Rational(41, 20));
  CHECK(j["all_checks_pass"] == true);
  CHECK(run(run_simulate, args).out == r.out);
}

TEST_CASE("instances emit command") {
  TempDir tmp;
  EmitArgs args;
  args.name = "mp24";
  args.out_dir = tmp.path / "lib";
  CHECK(run(run_emit, args).code == 0);
  const ContextHypergraph h = load_hypergraph(args.out_dir / "mp24.json");
  CHECK(h == peres_mermin_24().hypergraph);
  CHECK(verify_quantum_model(h, load_quantum_model(args.out_dir / "mp24.quantum.json")).ok);
  args.name = "pentagon";
  CHECK(run(run_emit, args).code == 0);
  CHECK(load_hypergraph(args.out_dir / "pentagon.json") == cycle_instance(5));
  args.name = "nonsense";
  CHECK(run(run_emit, args).code == kExitInvalid);
}
