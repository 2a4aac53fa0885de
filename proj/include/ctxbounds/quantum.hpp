#pragma once

#include "ctxbounds/hypergraph.hpp"
#include "ctxbounds/linalg.hpp"
#include "ctxbounds/validation.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ctxbounds {

inline constexpr double kProjectorTolerance = 1e-9;

/// Projector per outcome id on C^d, optionally with the unit vector of a
/// rank-one projector.
struct QuantumModel {
  std::size_t dimension = 0;
  std::map<std::string, HermitianOperator> projectors;
  std::map<std::string, ComplexVector> vectors;

  /// Adds |v⟩⟨v| for the normalised `v` and records the vector.
  void add_vector(const std::string& id, const ComplexVector& v);
  void add_projector(const std::string& id, HermitianOperator p);

  /// Throws std::invalid_argument for an unknown id.
  const HermitianOperator& projector(const std::string& id) const;
};

/// Parses {"dimension": d, "projectors": {id: {"vector": [[re,im],...]} |
/// {"matrix": [[[re,im],...],...]}}}. Vectors are normalised; a norm off by
/// more than 1e-6 is a ParseError. Wrong operator sizes raise DimensionMismatch.
QuantumModel parse_quantum_model(std::string_view json_text);
QuantumModel load_quantum_model(const std::filesystem::path& path);
std::string emit_quantum_model(const QuantumModel& q);

/// Density operator, positive semidefinite with unit trace.
class QuantumState {
 public:
  /// Throws std::invalid_argument unless ρ ⪰ −tol and |tr ρ − 1| ≤ tol.
  static QuantumState from_density(HermitianOperator rho, double tol = kProjectorTolerance);
  static QuantumState pure(const ComplexVector& psi);

  const HermitianOperator& density() const { return rho_; }
  std::size_t dimension() const { return rho_.dimension(); }

 private:
  explicit QuantumState(HermitianOperator rho) : rho_(std::move(rho)) {}
  HermitianOperator rho_;
};

/// Per-context effects Q^C_i for each incidence i ∈ C, keyed by
/// (context index, outcome id), next to the projectors they approximate.
struct EffectAssignment {
  std::map<std::pair<std::size_t, std::string>, HermitianOperator> effects;
  QuantumModel reference;
};

struct IncidenceDeviation {
  std::size_t context = 0;
  std::string outcome;
  double distance = 0.0;  // ‖Q^C_i − P_i‖
};

struct EpsilonPreciseReport {
  ValidationReport report;
  std::vector<IncidenceDeviation> deviations;
  double worst_distance = 0.0;
};

/// Hermiticity, ‖P² − P‖ ≤ tol per projector and λ_max(Σ_{i∈C} P_i) ≤ 1 + tol
/// per context. Throws DimensionMismatch or std::invalid_argument (missing
/// outcome); violations are report findings.
ValidationReport verify_quantum_model(const ContextHypergraph& h, const QuantumModel& q,
                                      double tol = kProjectorTolerance);

/// 0 ≤ Q^C_i ≤ 1, Σ_{i∈C} Q^C_i ≤ 1 + tol and ‖Q^C_i − P_i‖ ≤ eps + tol.
EpsilonPreciseReport verify_epsilon_precise(const ContextHypergraph& h, const EffectAssignment& e, double eps,
                                            double tol = kProjectorTolerance);

/// Σ_i λ_i tr(ρ P_i).
double quantum_value(const ContextHypergraph& h, const QuantumModel& q, const QuantumState& rho);

struct QuantumOptimum {
  double value = 0.0;
  QuantumState witness;
  ComplexVector state_vector;
};

/// λ_max(Σ_i λ_i P_i) and the pure state on its top eigenvector.
QuantumOptimum max_quantum_value(const ContextHypergraph& h, const QuantumModel& q);

}  // namespace ctxbounds
