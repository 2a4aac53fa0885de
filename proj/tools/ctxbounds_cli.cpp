// ctxbounds: bounds for contextuality scenarios.
#include "ctxbounds/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

using namespace ctxbounds;

namespace {

const std::map<std::string, OutputFormat> kFormats{{"text", OutputFormat::Text}, {"json", OutputFormat::Json}};

void add_format(CLI::App* cmd, OutputFormat& format, std::optional<std::filesystem::path>& out) {
  cmd->add_option("--format", format, "Output format (text or json)")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case).description(""))
      ->option_text("json|text");
  cmd->add_option("--out", out, "Write the report here instead of stdout");
}

// --seed wins, then CTXBOUNDS_SEED, then 0.
std::uint64_t seed_from_env(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CTXBOUNDS_SEED")) {
    try {
      std::size_t used = 0;
      const std::uint64_t v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw CLI::ValidationError("CTXBOUNDS_SEED", std::string("not an unsigned integer: '") + env + "'");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical, general and quantum bounds for contextuality scenarios"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "Compute bounds for a hypergraph");
  analyze->add_option("hypergraph", analyze_args.hypergraph, "Hypergraph JSON file")->required();
  analyze->add_option("--bounds", analyze_args.bounds, "Comma list of cl, g, qu, all")->capture_default_str();
  analyze->add_option("--target", analyze_args.target, "Critical epsilon target: qu or a number");
  analyze->add_option("--epsilon", analyze_args.epsilon, "Report the robust bound at this epsilon (p/q or decimal)");
  analyze->add_option("--model", analyze_args.model, "Quantum model JSON; reports its optimal value");
  analyze->add_option("--sdp-iters", analyze_args.sdp_iterations, "Interior-point iteration budget")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  analyze->add_flag("--timings", analyze_args.timings, "Include wall-clock timings");
  add_format(analyze, analyze_args.format, analyze_args.out);

  VerifyQuantumArgs vq_args;
  auto* vq = app.add_subcommand("verify-quantum", "Check a projector model against a hypergraph");
  vq->add_option("hypergraph", vq_args.hypergraph, "Hypergraph JSON file")->required();
  vq->add_option("model", vq_args.model, "Quantum model JSON file")->required();
  vq->add_option("--tol", vq_args.tol, "Numerical tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  add_format(vq, vq_args.format, vq_args.out);

  VerifyOncArgs vo_args;
  auto* vo = app.add_subcommand("verify-onc", "Check an epsilon-ONC hidden-variable model");
  vo->add_option("hypergraph", vo_args.hypergraph, "Hypergraph JSON file")->required();
  vo->add_option("model", vo_args.model, "Hidden-variable model JSON file")->required();
  add_format(vo, vo_args.format, vo_args.out);

  SimulateArgs sim_args;
  std::optional<std::uint64_t> seed_flag;
  auto* sim = app.add_subcommand("simulate", "Sample random epsilon-ONC models and check the bounds");
  sim->add_option("hypergraph", sim_args.hypergraph, "Hypergraph JSON file")->required();
  sim->add_option("--epsilon", sim_args.epsilon, "Flip budget per incidence (p/q or decimal)")->capture_default_str();
  sim->add_option("--seed", seed_flag, "RNG seed (falls back to CTXBOUNDS_SEED, then 0)");
  sim->add_option("--size", sim_args.size, "Sample points per model")->capture_default_str()->check(CLI::PositiveNumber);
  sim->add_option("--trials", sim_args.trials, "Number of models")->capture_default_str()->check(CLI::PositiveNumber);
  add_format(sim, sim_args.format, sim_args.out);

  EmitArgs emit_args;
  auto* instances = app.add_subcommand("instances", "Built-in instance library");
  instances->require_subcommand(1);
  auto* emit = instances->add_subcommand("emit", "Write a built-in instance (and its quantum model) as JSON");
  emit->add_option("name", emit_args.name, "pentagon, mp24, cycle<n> or single<n>")->required();
  emit->add_option("--out", emit_args.out_dir, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
    if (sim->parsed()) sim_args.seed = seed_from_env(seed_flag);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  if (analyze->parsed()) return run_analyze(analyze_args, std::cout, std::cerr);
  if (vq->parsed()) return run_verify_quantum(vq_args, std::cout, std::cerr);
  if (vo->parsed()) return run_verify_onc(vo_args, std::cout, std::cerr);
  if (sim->parsed()) return run_simulate(sim_args, std::cout, std::cerr);
  if (emit->parsed()) return run_emit(emit_args, std::cout, std::cerr);
  return kExitInvalid;
}
