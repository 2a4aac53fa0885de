#include "ctxbounds/instances.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ctxbounds {

namespace {

void check(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("instance self-check failed: " + what);
}

}  // namespace

ContextHypergraph cycle_instance(int n) {
  if (n < 3) throw std::invalid_argument("cycle instance needs n >= 3, got " + std::to_string(n));
  std::vector<std::string> outcomes;
  std::vector<std::vector<std::string>> contexts;
  for (int i = 0; i < n; ++i) outcomes.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i) contexts.push_back({std::to_string(i), std::to_string((i + 1) % n)});
  return make_hypergraph(n == 5 ? "pentagon" : "cycle" + std::to_string(n), std::move(outcomes), contexts);
}

ContextHypergraph single_context_instance(int n) {
  if (n < 1) throw std::invalid_argument("single-context instance needs n >= 1");
  std::vector<std::string> outcomes;
  for (int i = 0; i < n; ++i) outcomes.push_back(std::to_string(i));
  return make_hypergraph("single" + std::to_string(n), outcomes, {outcomes});
}

KcbsInstance kcbs_pentagon() {
  ContextHypergraph h = cycle_instance(5);
  const double c5 = std::cos(std::numbers::pi / 5.0);
  const double cos_theta = std::sqrt(c5 / (1.0 + c5));
  const double sin_theta = std::sqrt(1.0 - cos_theta * cos_theta);

  QuantumModel q;
  q.dimension = 3;
  std::vector<ComplexVector> vs;
  for (int j = 0; j < 5; ++j) {
    const double phi = 4.0 * std::numbers::pi * j / 5.0;
    ComplexVector v(3);
    v << cos_theta, sin_theta * std::cos(phi), sin_theta * std::sin(phi);
    vs.push_back(v);
    q.add_vector(std::to_string(j), v);
  }
  for (int j = 0; j < 5; ++j) {
    check(std::abs(vs[static_cast<std::size_t>(j)].dot(vs[static_cast<std::size_t>((j + 1) % 5)])) <= 1e-12,
          "KCBS vectors " + std::to_string(j) + " and " + std::to_string((j + 1) % 5) + " not orthogonal");
  }
  ComplexVector axis = ComplexVector::Zero(3);
  axis(0) = 1.0;
  KcbsInstance inst{std::move(h), std::move(q), QuantumState::pure(axis)};
  check(std::abs(max_quantum_value(inst.hypergraph, inst.model).value - std::sqrt(5.0)) <= 1e-9,
        "KCBS optimum differs from sqrt(5)");
  return inst;
}

PeresMerminInstance peres_mermin_24() {
  // Sign patterns in {0,+1,-1}^4 whose first non-zero entry is +1 and whose
  // support has size 1, 2 or 4.
  std::vector<std::array<int, 4>> rays;
  for (int code = 0; code < 81; ++code) {
    std::array<int, 4> v{};
    int rest = code;
    for (int k = 0; k < 4; ++k) {
      const int digit = rest % 3;
      rest /= 3;
      v[static_cast<std::size_t>(k)] = digit == 0 ? 0 : (digit == 1 ? 1 : -1);
    }
    int support = 0;
    int first = 0;
    for (int x : v) {
      if (x != 0) {
        if (support == 0) first = x;
        ++support;
      }
    }
    if (first == 1 && (support == 1 || support == 2 || support == 4)) rays.push_back(v);
  }
  std::stable_sort(rays.begin(), rays.end(), [](const auto& a, const auto& b) {
    const auto weight = [](const std::array<int, 4>& v) {
      int s = 0;
      for (int x : v) s += x != 0;
      return s;
    };
    if (weight(a) != weight(b)) return weight(a) < weight(b);
    // Same weight: compare coordinates with '+' < '-' < '0'.
    for (std::size_t k = 0; k < 4; ++k) {
      const int ka = a[k] == 0 ? 2 : (a[k] == 1 ? 0 : 1);
      const int kb = b[k] == 0 ? 2 : (b[k] == 1 ? 0 : 1);
      if (ka != kb) return ka < kb;
    }
    return false;
  });
  check(rays.size() == 24, "expected 24 Peres rays");

  const auto label = [](const std::array<int, 4>& v) {
    std::string s;
    for (int x : v) s += x == 0 ? '0' : (x > 0 ? '+' : '-');
    return s;
  };
  const auto orthogonal = [](const std::array<int, 4>& a, const std::array<int, 4>& b) {
    int dot = 0;
    for (std::size_t k = 0; k < 4; ++k) dot += a[k] * b[k];
    return dot == 0;
  };

  std::vector<std::string> outcomes;
  for (const auto& r : rays) outcomes.push_back(label(r));
  std::vector<std::vector<std::string>> contexts;
  const std::size_t n = rays.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!orthogonal(rays[a], rays[b])) continue;
      for (std::size_t c = b + 1; c < n; ++c) {
        if (!orthogonal(rays[a], rays[c]) || !orthogonal(rays[b], rays[c])) continue;
        for (std::size_t d = c + 1; d < n; ++d) {
          if (orthogonal(rays[a], rays[d]) && orthogonal(rays[b], rays[d]) && orthogonal(rays[c], rays[d])) {
            contexts.push_back({outcomes[a], outcomes[b], outcomes[c], outcomes[d]});
          }
        }
      }
    }
  }

  PeresMerminInstance inst;
  inst.hypergraph = make_hypergraph("mp24", outcomes, contexts);
  inst.model.dimension = 4;
  for (std::size_t a = 0; a < n; ++a) {
    ComplexVector v(4);
    for (Eigen::Index k = 0; k < 4; ++k) v(k) = static_cast<double>(rays[a][static_cast<std::size_t>(k)]);
    inst.model.add_vector(outcomes[a], v);
  }

  const ContextHypergraph& h = inst.hypergraph;
  check(h.context_count() == 24, "expected 24 contexts, found " + std::to_string(h.context_count()));
  for (std::size_t c = 0; c < h.context_count(); ++c) {
    check(h.contexts[c].size() == 4, "context of size != 4");
    ComplexMatrix basis(4, 4);
    for (Eigen::Index k = 0; k < 4; ++k) {
      basis.col(k) = inst.model.vectors.at(h.outcomes[h.contexts[c][static_cast<std::size_t>(k)]]);
    }
    const double err = (basis.adjoint() * basis - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff();
    check(err <= 1e-12, "context " + std::to_string(c) + " is not an orthonormal basis");
  }
  for (std::size_t k : context_multiplicities(h)) check(k == 4, "outcome multiplicity differs from 4");
  HermitianOperator sum = HermitianOperator::zero(4);
  for (const auto& id : h.outcomes) sum += inst.model.projector(id);
  check((sum.matrix() - 6.0 * ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-9,
        "sum of projectors differs from 6 * identity");
  return inst;
}

NamedInstance named_instance(const std::string& name) {
  if (name == "pentagon" || name == "kcbs") {
    KcbsInstance k = kcbs_pentagon();
    return {std::move(k.hypergraph), std::move(k.model)};
  }
  if (name == "mp24" || name == "peres-mermin") {
    PeresMerminInstance p = peres_mermin_24();
    return {std::move(p.hypergraph), std::move(p.model)};
  }
  const auto numeric_suffix = [&](const std::string& prefix) -> std::optional<int> {
    if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) return std::nullopt;
    const std::string digits = name.substr(prefix.size());
    if (digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 6) return std::nullopt;
    return std::stoi(digits);
  };
  if (const auto n = numeric_suffix("cycle")) return {cycle_instance(*n), std::nullopt};
  if (const auto n = numeric_suffix("single")) return {single_context_instance(*n), std::nullopt};
  throw std::invalid_argument("unknown instance '" + name + "'");
}

std::vector<std::string> instance_names() { return {"pentagon", "mp24", "cycle<n>", "single<n>"}; }

}  // namespace ctxbounds
