#pragma once

#include "ctxbounds/rational.hpp"
#include "ctxbounds/validation.hpp"

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ctxbounds {

using OutcomeIndex = std::size_t;
using Context = std::vector<OutcomeIndex>;

/// Outcome set, context family and non-negative rational weights of a
/// non-contextuality inequality. Contexts store indices into `outcomes`; the
/// outcome order is the canonical order used for every tie-break downstream.
struct ContextHypergraph {
  std::string name;
  std::vector<std::string> outcomes;
  std::vector<Context> contexts;
  std::vector<Rational> weights;  // aligned with outcomes

  std::size_t outcome_count() const { return outcomes.size(); }
  std::size_t context_count() const { return contexts.size(); }

  /// Index of an outcome id; throws std::out_of_range for an unknown id.
  OutcomeIndex index_of(std::string_view id) const;

  /// True iff `i` is a member of context `c`.
  bool contains(std::size_t c, OutcomeIndex i) const;

  bool operator==(const ContextHypergraph&) const = default;
};

/// Builds a hypergraph from outcome-id lists. Missing weights default to 1.
/// Throws ParseError for unknown or duplicate ids. The result is canonical.
ContextHypergraph make_hypergraph(std::string name, std::vector<std::string> outcomes,
                                  const std::vector<std::vector<std::string>>& contexts,
                                  std::vector<Rational> weights = {});

/// Parses the hypergraph JSON document. Duplicate contexts are dropped (first
/// occurrence kept), so context indices refer to the deduplicated list.
ContextHypergraph parse_hypergraph(std::string_view json_text);
ContextHypergraph load_hypergraph(const std::filesystem::path& path);

/// JSON document accepted by parse_hypergraph; weights are emitted as "p/q".
std::string emit_hypergraph(const ContextHypergraph& h);

/// Drops later duplicates of a context (same outcome set), keeping order.
ContextHypergraph canonicalize(ContextHypergraph h);

ValidationReport validate(const ContextHypergraph& h);

/// Throws std::invalid_argument listing the errors when validate() fails.
void require_valid(const ContextHypergraph& h);

/// Simple graph on the outcomes, i ~ j iff they share a context.
class ExclusivityGraph {
 public:
  ExclusivityGraph() = default;
  explicit ExclusivityGraph(std::vector<std::string> vertices);

  std::size_t size() const { return vertices_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }

  bool adjacent(std::size_t i, std::size_t j) const { return adj_[i * size() + j] != 0; }
  void connect(std::size_t i, std::size_t j);

  std::size_t edge_count() const;
  /// Edges (i, j) with i < j in row-major order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  std::vector<std::size_t> neighbors(std::size_t i) const;

  bool operator==(const ExclusivityGraph&) const = default;

 private:
  std::vector<std::string> vertices_;
  std::vector<unsigned char> adj_;
};

ExclusivityGraph exclusivity_graph(const ContextHypergraph& h);

/// k_i: number of distinct contexts containing outcome i, aligned with outcomes.
std::vector<std::size_t> context_multiplicities(const ContextHypergraph& h);

/// Σ_i λ_i·max(k_i − 1, 0), the slope of the robust bound in ε.
Rational penalty_slope(const ContextHypergraph& h);

}  // namespace ctxbounds
