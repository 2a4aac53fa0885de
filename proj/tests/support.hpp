#pragma once

// Independent oracles and generators shared by the unit and acceptance tests.
// Nothing here calls the solvers under test.

#include "ctxbounds/hypergraph.hpp"
#include "ctxbounds/onc.hpp"
#include "ctxbounds/quantum.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace support {

using ctxbounds::ContextHypergraph;
using ctxbounds::Rational;

// Hypergraph on up to max_n outcomes with 1..4-element contexts and weights p/q.
inline ContextHypergraph random_hypergraph(std::mt19937_64& rng, std::size_t max_n, std::size_t min_n = 1) {
  std::uniform_int_distribution<std::size_t> n_dist(min_n, max_n);
  const std::size_t n = n_dist(rng);
  std::vector<std::string> outcomes;
  for (std::size_t i = 0; i < n; ++i) outcomes.push_back("v" + std::to_string(i));
  std::uniform_int_distribution<std::size_t> m_dist(1, n + 3);
  std::uniform_int_distribution<std::size_t> size_dist(1, std::min<std::size_t>(4, n));
  std::vector<std::vector<std::string>> contexts;
  const std::size_t m = m_dist(rng);
  for (std::size_t c = 0; c < m; ++c) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(size_dist(rng));
    std::vector<std::string> ctx;
    for (std::size_t i : idx) ctx.push_back(outcomes[i]);
    contexts.push_back(ctx);
  }
  std::uniform_int_distribution<int> p_dist(0, 5), q_dist(1, 4);
  std::vector<Rational> weights;
  for (std::size_t i = 0; i < n; ++i) weights.emplace_back(p_dist(rng), q_dist(rng));
  return ctxbounds::make_hypergraph("random", outcomes, contexts, weights);
}

inline bool mask_is_nc(const ContextHypergraph& h, std::uint64_t mask) {
  for (const auto& c : h.contexts) {
    int ones = 0;
    for (std::size_t i : c) ones += (mask >> i) & 1U;
    if (ones > 1) return false;
  }
  return true;
}

// max Σ λ_i x_i over all 2^n assignments.
inline Rational brute_force_beta_cl(const ContextHypergraph& h) {
  const std::size_t n = h.outcome_count();
  Rational best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (!mask_is_nc(h, mask)) continue;
    Rational v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) v += h.weights[i];
    }
    best = std::max(best, v);
  }
  return best;
}

inline std::size_t brute_force_nc_count(const ContextHypergraph& h) {
  std::size_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << h.outcome_count()); ++mask) count += mask_is_nc(h, mask);
  return count;
}

// Packing LP optimum by enumerating every basis of n tight constraints among
// the context rows, t_i ≤ 1 and t_i ≥ 0. Floating point; small n only.
inline double vertex_enumeration_lp(const ContextHypergraph& h) {
  const std::size_t n = h.outcome_count();
  std::vector<Eigen::VectorXd> a;
  std::vector<double> b;
  for (const auto& c : h.contexts) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t i : c) row(static_cast<Eigen::Index>(i)) = 1.0;
    a.push_back(row);
    b.push_back(1.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::VectorXd up = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    up(static_cast<Eigen::Index>(i)) = 1.0;
    a.push_back(up);
    b.push_back(1.0);
    a.push_back(-up);
    b.push_back(0.0);
  }
  const std::size_t rows = a.size();
  Eigen::VectorXd lambda(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) lambda(static_cast<Eigen::Index>(i)) = ctxbounds::to_double(h.weights[i]);

  double best = -1.0;
  std::vector<bool> pick(rows, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n), true);
  do {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
    Eigen::Index r = 0;
    for (std::size_t k = 0; k < rows; ++k) {
      if (!pick[k]) continue;
      m.row(r) = a[k].transpose();
      rhs(r) = b[k];
      ++r;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    if (lu.rank() < static_cast<Eigen::Index>(n)) continue;
    const Eigen::VectorXd t = lu.solve(rhs);
    bool feasible = true;
    for (std::size_t k = 0; k < rows && feasible; ++k) feasible = a[k].dot(t) <= b[k] + 1e-9;
    if (feasible) best = std::max(best, lambda.dot(t));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

// 50 equiprobable points: points 0..24 carry {0,2}, points 25..49 carry {1,3};
// X^{C0}_0 is switched off at point 0 only (C0 = {0,1}, C4 = {4,0}).
inline ctxbounds::FiniteHVModel pentagon_flip_model(const ContextHypergraph& pentagon, bool flip = true) {
  ctxbounds::FiniteHVModel m;
  const std::size_t omega = 50;
  m.mu.assign(omega, Rational(1, 50));
  for (std::size_t c = 0; c < pentagon.context_count(); ++c) {
    for (std::size_t i : pentagon.contexts[c]) {
      ctxbounds::Indicator x(omega, 0);
      for (std::size_t w = 0; w < omega; ++w) {
        const bool first_half = w < 25;
        x[w] = first_half ? (i == 0 || i == 2) : (i == 1 || i == 3);
      }
      m.tables[{c, i}] = x;
    }
  }
  if (flip) m.tables[{0, 0}][0] = 0;
  return m;
}

inline ctxbounds::ContextChoice random_context_choice(const ContextHypergraph& h, std::mt19937_64& rng) {
  ctxbounds::ContextChoice choice;
  for (std::size_t i = 0; i < h.outcome_count(); ++i) {
    std::vector<std::size_t> owners;
    for (std::size_t c = 0; c < h.context_count(); ++c) {
      if (std::find(h.contexts[c].begin(), h.contexts[c].end(), i) != h.contexts[c].end()) owners.push_back(c);
    }
    if (owners.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, owners.size() - 1);
    choice[i] = owners[pick(rng)];
  }
  return choice;
}

// Mixed state: normalised W W† for a random complex d×d matrix W.
inline ctxbounds::QuantumState random_state(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ctxbounds::ComplexMatrix w(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (Eigen::Index r = 0; r < w.rows(); ++r) {
    for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = {g(rng), g(rng)};
  }
  ctxbounds::ComplexMatrix rho = w * w.adjoint();
  rho /= rho.trace().real();
  return ctxbounds::QuantumState::from_density(ctxbounds::HermitianOperator::from_matrix(rho));
}

inline double odd_cycle_theta(int n) {
  const double c = std::cos(3.14159265358979323846 / n);
  return n * c / (1.0 + c);
}

}  // namespace support
