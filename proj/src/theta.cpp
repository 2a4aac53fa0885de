#include "ctxbounds/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ctxbounds {

namespace {

using Edge = std::pair<Eigen::Index, Eigen::Index>;

// Largest α ≥ 0 with S + α·D still positive definite, or +inf.
double max_step(const RealMatrix& s, const RealMatrix& d) {
  Eigen::LLT<RealMatrix> llt(s);
  if (llt.info() != Eigen::Success) return 0.0;
  const RealMatrix l = llt.matrixL();
  const RealMatrix linv_d = l.triangularView<Eigen::Lower>().solve(d);
  const RealMatrix w = l.triangularView<Eigen::Lower>().solve(linv_d.transpose());
  const double lmin = jacobi_eigen(0.5 * (w + w.transpose()), 1e-12).values(0);
  if (lmin >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

double step_length(const RealMatrix& s, const RealMatrix& d) {
  const double a = max_step(s, d);
  return std::min(1.0, 0.95 * a);
}

RealMatrix dual_slack(double t, const RealVector& y, const std::vector<Edge>& edges, const RealMatrix& c) {
  const Eigen::Index n = c.rows();
  RealMatrix z = t * RealMatrix::Identity(n, n) - c;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    z(edges[e].first, edges[e].second) += y(static_cast<Eigen::Index>(e));
    z(edges[e].second, edges[e].first) += y(static_cast<Eigen::Index>(e));
  }
  return z;
}

}  // namespace

QuantumBoundResult lovasz_theta(const ExclusivityGraph& g, const std::vector<Rational>& weights,
                                const ThetaOptions& options) {
  if (weights.size() != g.size()) throw std::invalid_argument("weight vector does not match vertex count");
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (weights[i] < 0) throw std::invalid_argument("theta weights must be non-negative");
    if (weights[i] > 0) active.push_back(i);
  }

  QuantumBoundResult result;
  result.gram = RealMatrix::Zero(static_cast<Eigen::Index>(g.size()), static_cast<Eigen::Index>(g.size()));
  const auto n = static_cast<Eigen::Index>(active.size());
  if (n == 0) {
    result.certified = true;
    return result;
  }

  RealVector sqrt_w(n);
  for (Eigen::Index a = 0; a < n; ++a) sqrt_w(a) = std::sqrt(to_double(weights[active[static_cast<std::size_t>(a)]]));
  const RealMatrix c = sqrt_w * sqrt_w.transpose();
  std::vector<Edge> edges;
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      if (g.adjacent(active[static_cast<std::size_t>(a)], active[static_cast<std::size_t>(b)])) edges.emplace_back(a, b);
    }
  }
  const auto m_edges = static_cast<Eigen::Index>(edges.size());

  // Primal: max <C,X>, tr X = 1, X_ab = 0 on edges, X ⪰ 0.
  // Dual:   min t, Z = tI + Σ y_e (E_ab + E_ba) − C ⪰ 0.
  RealMatrix x = RealMatrix::Identity(n, n) / static_cast<double>(n);
  double t = sqrt_w.squaredNorm() + 1.0;
  RealVector y = RealVector::Zero(m_edges);
  RealMatrix z = dual_slack(t, y, edges, c);

  int iter = 0;
  double mu = (z.cwiseProduct(x)).sum() / (2.0 * static_cast<double>(n));
  for (; iter < options.max_iterations; ++iter) {
    const double phi = t;
    const double psi = (c.cwiseProduct(x)).sum();
    // psi is only a valid bound once X satisfies the equality constraints.
    double infeasibility = std::abs(x.trace() - 1.0);
    for (const auto& [a, b] : edges) infeasibility = std::max(infeasibility, std::abs(x(a, b)));
    if (infeasibility <= options.gap_tolerance &&
        phi - psi <= options.gap_tolerance * std::max(1.0, std::abs(phi))) {
      break;
    }

    Eigen::LLT<RealMatrix> zllt(z);
    if (zllt.info() != Eigen::Success) break;
    RealMatrix zi = zllt.solve(RealMatrix::Identity(n, n));
    zi = (0.5 * (zi + zi.transpose())).eval();
    const RealMatrix xzi = x * zi;

    // Schur complement M_kl = tr(A_k Z⁻¹ A_l X), constraint 0 is the trace.
    const Eigen::Index m = m_edges + 1;
    RealMatrix schur(m, m);
    RealVector rhs(m);
    schur(0, 0) = xzi.trace();
    rhs(0) = mu * zi.trace() - 1.0;
    for (Eigen::Index e = 0; e < m_edges; ++e) {
      const auto [i, j] = edges[static_cast<std::size_t>(e)];
      schur(0, e + 1) = schur(e + 1, 0) = xzi(j, i) + xzi(i, j);
      rhs(e + 1) = mu * 2.0 * zi(i, j);
      for (Eigen::Index f = e; f < m_edges; ++f) {
        const auto [p, q] = edges[static_cast<std::size_t>(f)];
        const double v = zi(j, p) * x(q, i) + zi(j, q) * x(p, i) + zi(i, p) * x(q, j) + zi(i, q) * x(p, j);
        schur(e + 1, f + 1) = schur(f + 1, e + 1) = v;
      }
    }
    Eigen::LDLT<RealMatrix> sldlt(schur);
    if (sldlt.info() != Eigen::Success) break;
    const RealVector dy = sldlt.solve(rhs);

    RealMatrix dz = dy(0) * RealMatrix::Identity(n, n);
    for (Eigen::Index e = 0; e < m_edges; ++e) {
      dz(edges[static_cast<std::size_t>(e)].first, edges[static_cast<std::size_t>(e)].second) += dy(e + 1);
      dz(edges[static_cast<std::size_t>(e)].second, edges[static_cast<std::size_t>(e)].first) += dy(e + 1);
    }
    RealMatrix dx = mu * zi - x - zi * dz * x;
    dx = (0.5 * (dx + dx.transpose())).eval();

    const double alpha_p = step_length(x, dx);
    const double alpha_d = step_length(z, dz);
    if (alpha_p <= 0.0 && alpha_d <= 0.0) break;

    x += alpha_p * dx;
    t += alpha_d * dy(0);
    y += alpha_d * dy.tail(m_edges);
    z = dual_slack(t, y, edges, c);

    mu = (z.cwiseProduct(x)).sum() / (2.0 * static_cast<double>(n));
    if (alpha_p + alpha_d > 1.8) mu *= 0.5;
  }
  result.iterations = iter;

  // Certificate. Repair the primal exactly onto its affine constraints and
  // mix in I/n until it is PSD; shift the dual by its most negative eigenvalue.
  RealMatrix xc = 0.5 * (x + x.transpose());
  for (const auto& [a, b] : edges) xc(a, b) = xc(b, a) = 0.0;
  xc /= xc.trace();
  const double xmin = jacobi_eigen(xc).values(0);
  if (xmin < 0.0) {
    const double inv_n = 1.0 / static_cast<double>(n);
    const double mix = -xmin / (inv_n - xmin);
    xc = (1.0 - mix) * xc + mix * inv_n * RealMatrix::Identity(n, n);
  }
  const double zmin = jacobi_eigen(z).values(0);
  const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(n) *
                          std::max({1.0, c.norm(), z.norm()});
  result.lower = (c.cwiseProduct(xc)).sum() - rounding;
  result.upper = t + std::max(0.0, -zmin) + rounding;
  result.value = 0.5 * (result.lower + result.upper);
  result.certified_error = 0.5 * (result.upper - result.lower);
  result.certified = result.certified_error <= options.certify_tolerance;

  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      result.gram(static_cast<Eigen::Index>(active[static_cast<std::size_t>(a)]),
                  static_cast<Eigen::Index>(active[static_cast<std::size_t>(b)])) = xc(a, b);
    }
  }
  const RealVector ev = jacobi_eigen(xc).values;
  const double top = ev(n - 1);
  result.gram_rank = static_cast<std::size_t>((ev.array() > 1e-6 * top).count());
  return result;
}

}  // namespace ctxbounds
