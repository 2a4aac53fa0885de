#pragma once

#include "ctxbounds/hypergraph.hpp"
#include "ctxbounds/rational.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ctxbounds {

using Indicator = std::vector<std::uint8_t>;  // one 0/1 value per sample point

/// Finite hidden-variable model: sample points 0..Ω−1 with exact
/// probabilities and one 0/1 table X^C_i per incidence i ∈ C.
struct FiniteHVModel {
  std::vector<Rational> mu;
  std::map<std::pair<std::size_t, OutcomeIndex>, Indicator> tables;  // (context, outcome)

  std::size_t sample_count() const { return mu.size(); }

  /// Throws std::invalid_argument when the incidence has no table.
  const Indicator& table(std::size_t context, OutcomeIndex outcome) const;

  bool operator==(const FiniteHVModel&) const = default;
};

/// {"omega": Ω, "mu": ["p/q", ...], "tables": {"<context>/<outcome-id>": [0,1,...]}}
FiniteHVModel parse_hv_model(std::string_view json_text, const ContextHypergraph& h);
FiniteHVModel load_hv_model(const std::filesystem::path& path, const ContextHypergraph& h);
std::string emit_hv_model(const FiniteHVModel& m, const ContextHypergraph& h);

struct Disagreement {
  OutcomeIndex outcome = 0;
  std::size_t context_a = 0;
  std::size_t context_b = 0;
  Rational probability;  // Pr{X^{C_a}_i ≠ X^{C_b}_i}
};

struct ContextViolation {
  std::size_t context = 0;
  std::size_t sample = 0;
  int sum = 0;
};

struct ONCReport {
  Rational epsilon_max;  // largest entry of `disagreements`, 0 if none
  std::vector<Disagreement> disagreements;
  bool feasible = true;
  std::vector<ContextViolation> violations;
};

/// Exact disagreement probabilities for every (i, C, C') with i ∈ C ∩ C'
/// and the per-context constraint at every sample point. Throws
/// std::invalid_argument for a missing or mis-sized table, a non-0/1 value,
/// a negative probability, or probabilities not summing to 1.
ONCReport validate_onc(const ContextHypergraph& h, const FiniteHVModel& m);

/// Y_i = Π_{C∋i} X^C_i pointwise (an outcome in no context gets Y_i ≡ 1).
struct CollapsedModel {
  std::vector<Rational> mu;
  std::vector<Indicator> y;  // aligned with outcomes
};

CollapsedModel collapse(const ContextHypergraph& h, const FiniteHVModel& m);

/// True iff Σ_{i∈C} Y_i ≤ 1 at every sample point for every context.
bool satisfies_context_constraints(const ContextHypergraph& h, const CollapsedModel& y);

struct Prop1Entry {
  OutcomeIndex outcome = 0;
  std::size_t multiplicity = 0;  // k_i
  Rational probability;          // Pr{∃C∋i: X^C_i ≠ Y_i}
  Rational bound;                // (k_i − 1)·ε
  Rational margin;               // bound − probability
};

struct Prop1Report {
  Rational epsilon;
  std::vector<Prop1Entry> entries;
  bool holds = true;
};

/// Checks Pr{∃C∋i: X^C_i ≠ Y_i} ≤ (k_i − 1)·ε with ε the model's epsilon_max.
Prop1Report prop1_check(const ContextHypergraph& h, const FiniteHVModel& m, const CollapsedModel& y);

/// β_cl + eps·Σ_i λ_i(k_i − 1). Throws std::invalid_argument for eps < 0.
Rational robust_bound(const ContextHypergraph& h, const Rational& eps);
Rational robust_bound(const Rational& beta_cl, const Rational& slope, const Rational& eps);

/// (target − β_cl)/Σ_i λ_i(k_i − 1); +inf when the slope is zero. Throws
/// std::invalid_argument when target < β_cl.
double critical_epsilon(const ContextHypergraph& h, double beta_target);
double critical_epsilon(const Rational& beta_cl, const Rational& slope, double beta_target);

/// Outcome → chosen context containing it.
using ContextChoice = std::map<OutcomeIndex, std::size_t>;

/// First context (in list order) containing each outcome; outcomes in no
/// context are left out.
ContextChoice default_context_choice(const ContextHypergraph& h);

/// t_i = Σ_ω μ(ω) X^{C_i}_i(ω). Throws std::invalid_argument when a chosen
/// context does not contain its outcome.
std::map<OutcomeIndex, Rational> expectations(const ContextHypergraph& h, const FiniteHVModel& m,
                                              const ContextChoice& choice);

/// Σ_i λ_i t_i over the outcomes present in `t`.
Rational weighted_sum(const ContextHypergraph& h, const std::map<OutcomeIndex, Rational>& t);

struct RepeatabilityResult {
  Rational conditional;  // Pr{X^{C'}_i ≠ ξ | X^C_i = ξ}
  Rational bound;        // ε / Pr{X^C_i = ξ}
  bool holds = true;
};

/// Throws std::invalid_argument unless i ∈ C ∩ C', std::domain_error when
/// Pr{X^C_i = ξ} = 0. `epsilon` defaults to the model's epsilon_max.
RepeatabilityResult repeatability_bound(const ContextHypergraph& h, const FiniteHVModel& m, OutcomeIndex i,
                                        std::size_t c, std::size_t c_prime, int xi);
RepeatabilityResult repeatability_bound(const ContextHypergraph& h, const FiniteHVModel& m, OutcomeIndex i,
                                        std::size_t c, std::size_t c_prime, int xi, const Rational& epsilon);

/// Seeded ε-ONC model on `size` equiprobable points. Each point draws a
/// random non-contextual assignment that every context copy inherits; then
/// each incidence copy is flipped on floor(eps·size) randomly chosen points,
/// a 0→1 flip being dropped when its context already holds a 1. Each copy
/// thus differs from the base on mass ≤ eps, so epsilon_max ≤ 2·eps.
/// Randomness is a pure function of (seed, point, incidence).
FiniteHVModel sample_onc(const ContextHypergraph& h, const Rational& eps, std::uint64_t seed, std::size_t size);

}  // namespace ctxbounds
