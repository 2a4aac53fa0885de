#include "ctxbounds/quantum.hpp"

#include "ctxbounds/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace ctxbounds {

using nlohmann::json;

void QuantumModel::add_vector(const std::string& id, const ComplexVector& v) {
  if (static_cast<std::size_t>(v.size()) != dimension) {
    throw DimensionMismatch("vector for '" + id + "' has length " + std::to_string(v.size()) + ", expected " +
                            std::to_string(dimension));
  }
  const ComplexVector unit = v / v.norm();
  projectors.insert_or_assign(id, HermitianOperator::projector_onto(unit));
  vectors.insert_or_assign(id, unit);
}

void QuantumModel::add_projector(const std::string& id, HermitianOperator p) {
  if (p.dimension() != dimension) {
    throw DimensionMismatch("operator for '" + id + "' has dimension " + std::to_string(p.dimension()) +
                            ", expected " + std::to_string(dimension));
  }
  projectors.insert_or_assign(id, std::move(p));
  vectors.erase(id);
}

const HermitianOperator& QuantumModel::projector(const std::string& id) const {
  const auto it = projectors.find(id);
  if (it == projectors.end()) throw std::invalid_argument("quantum model has no projector for outcome '" + id + "'");
  return it->second;
}

namespace {

Complex parse_complex(const json& v, const std::string& loc) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ParseError(loc, "complex entry must be [re, im]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

json emit_complex(Complex z) { return json::array({z.real(), z.imag()}); }

}  // namespace

QuantumModel parse_quantum_model(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("", "quantum model must be a JSON object");
  if (!doc.contains("dimension") || !doc["dimension"].is_number_unsigned() || doc["dimension"].get<std::size_t>() == 0) {
    throw ParseError("/dimension", "dimension must be a positive integer");
  }
  QuantumModel q;
  q.dimension = doc["dimension"].get<std::size_t>();
  const auto d = static_cast<Eigen::Index>(q.dimension);
  if (!doc.contains("projectors") || !doc["projectors"].is_object()) {
    throw ParseError("/projectors", "missing projectors object");
  }
  for (const auto& [id, entry] : doc["projectors"].items()) {
    const std::string loc = "/projectors/" + id;
    if (entry.contains("vector")) {
      const json& vec = entry["vector"];
      if (!vec.is_array()) throw ParseError(loc + "/vector", "vector must be an array");
      if (static_cast<Eigen::Index>(vec.size()) != d) {
        throw DimensionMismatch(loc + ": vector has length " + std::to_string(vec.size()) + ", expected " +
                                std::to_string(d));
      }
      ComplexVector v(d);
      for (Eigen::Index r = 0; r < d; ++r) v(r) = parse_complex(vec[static_cast<std::size_t>(r)], loc + "/vector/" + std::to_string(r));
      const double norm = v.norm();
      if (std::abs(norm - 1.0) > 1e-6) {
        throw ParseError(loc + "/vector", "vector norm " + std::to_string(norm) + " deviates from 1 by more than 1e-6");
      }
      q.add_vector(id, v);
    } else if (entry.contains("matrix")) {
      const json& mat = entry["matrix"];
      if (!mat.is_array()) throw ParseError(loc + "/matrix", "matrix must be an array of rows");
      if (static_cast<Eigen::Index>(mat.size()) != d) {
        throw DimensionMismatch(loc + ": matrix has " + std::to_string(mat.size()) + " rows, expected " + std::to_string(d));
      }
      ComplexMatrix m(d, d);
      for (Eigen::Index r = 0; r < d; ++r) {
        const json& row = mat[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
          throw DimensionMismatch(loc + ": matrix row " + std::to_string(r) + " has the wrong length");
        }
        for (Eigen::Index col = 0; col < d; ++col) {
          m(r, col) = parse_complex(row[static_cast<std::size_t>(col)],
                                    loc + "/matrix/" + std::to_string(r) + "/" + std::to_string(col));
        }
      }
      try {
        q.add_projector(id, HermitianOperator::from_matrix(m));
      } catch (const DimensionMismatch&) {
        throw;
      } catch (const std::invalid_argument& e) {
        throw ParseError(loc + "/matrix", e.what());
      }
    } else {
      throw ParseError(loc, "projector needs a \"vector\" or a \"matrix\"");
    }
  }
  return q;
}

QuantumModel load_quantum_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open quantum model file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_quantum_model(ss.str());
}

std::string emit_quantum_model(const QuantumModel& q) {
  json doc;
  doc["dimension"] = q.dimension;
  json projectors = json::object();
  for (const auto& [id, p] : q.projectors) {
    json entry;
    if (const auto it = q.vectors.find(id); it != q.vectors.end()) {
      json vec = json::array();
      for (Eigen::Index r = 0; r < it->second.size(); ++r) vec.push_back(emit_complex(it->second(r)));
      entry["vector"] = std::move(vec);
    } else {
      json mat = json::array();
      for (Eigen::Index r = 0; r < p.matrix().rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < p.matrix().cols(); ++c) row.push_back(emit_complex(p.matrix()(r, c)));
        mat.push_back(std::move(row));
      }
      entry["matrix"] = std::move(mat);
    }
    projectors[id] = std::move(entry);
  }
  doc["projectors"] = std::move(projectors);
  return doc.dump(2) + "\n";
}

QuantumState QuantumState::from_density(HermitianOperator rho, double tol) {
  const double tr = rho.trace();
  if (std::abs(tr - 1.0) > tol) throw std::invalid_argument("density operator has trace " + std::to_string(tr));
  const double lmin = min_eigenvalue(rho);
  if (lmin < -tol) throw std::invalid_argument("density operator has negative eigenvalue " + std::to_string(lmin));
  return QuantumState(std::move(rho));
}

QuantumState QuantumState::pure(const ComplexVector& psi) {
  return QuantumState(HermitianOperator::projector_onto(psi));
}

namespace {

void require_coverage(const ContextHypergraph& h, const QuantumModel& q) {
  for (const std::string& id : h.outcomes) {
    const HermitianOperator& p = q.projector(id);
    if (p.dimension() != q.dimension) {
      throw DimensionMismatch("projector '" + id + "' has dimension " + std::to_string(p.dimension()) +
                              ", model dimension is " + std::to_string(q.dimension));
    }
  }
}

std::string context_label(const ContextHypergraph& h, std::size_t c) {
  std::string s = "{";
  for (std::size_t k = 0; k < h.contexts[c].size(); ++k) {
    if (k) s += ",";
    s += h.outcomes[h.contexts[c][k]];
  }
  return s + "}";
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

}  // namespace

ValidationReport verify_quantum_model(const ContextHypergraph& h, const QuantumModel& q, double tol) {
  require_coverage(h, q);
  ValidationReport report;
  for (const std::string& id : h.outcomes) {
    const HermitianOperator& p = q.projector(id);
    const ComplexMatrix& m = p.matrix();
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol) report.fail("/projectors/" + id, "not Hermitian: deviation " + fmt(herm));
    const double idem = operator_norm_distance(HermitianOperator::from_matrix(m * m, 1e-6), p);
    if (idem > tol) report.fail("/projectors/" + id, "not idempotent: ||P^2 - P|| = " + fmt(idem));
  }
  for (std::size_t c = 0; c < h.contexts.size(); ++c) {
    HermitianOperator sum = HermitianOperator::zero(q.dimension);
    for (OutcomeIndex i : h.contexts[c]) sum += q.projector(h.outcomes[i]);
    const double lmax = max_eigenvalue(sum);
    if (lmax > 1.0 + tol) {
      report.fail("/contexts/" + std::to_string(c),
                  "context " + context_label(h, c) + " violates sum of projectors <= 1: lambda_max = " +
                      std::to_string(lmax) + " (excess " + fmt(lmax - 1.0) + ")");
    }
  }
  return report;
}

EpsilonPreciseReport verify_epsilon_precise(const ContextHypergraph& h, const EffectAssignment& e, double eps,
                                            double tol) {
  require_coverage(h, e.reference);
  EpsilonPreciseReport out;
  const std::size_t d = e.reference.dimension;
  for (std::size_t c = 0; c < h.contexts.size(); ++c) {
    HermitianOperator sum = HermitianOperator::zero(d);
    for (OutcomeIndex i : h.contexts[c]) {
      const std::string& id = h.outcomes[i];
      const auto it = e.effects.find({c, id});
      if (it == e.effects.end()) {
        throw std::invalid_argument("no effect for outcome '" + id + "' in context " + std::to_string(c));
      }
      const HermitianOperator& effect = it->second;
      if (effect.dimension() != d) {
        throw DimensionMismatch("effect for '" + id + "' in context " + std::to_string(c) + " has dimension " +
                                std::to_string(effect.dimension()));
      }
      const std::string loc = "/effects/" + std::to_string(c) + "/" + id;
      const RealVector ev = eigenvalues(effect);
      if (ev(0) < -tol || ev(ev.size() - 1) > 1.0 + tol) {
        out.report.fail(loc, "effect spectrum [" + std::to_string(ev(0)) + ", " + std::to_string(ev(ev.size() - 1)) +
                                 "] leaves [0, 1]");
      }
      const double dist = operator_norm_distance(effect, e.reference.projector(id));
      out.deviations.push_back({c, id, dist});
      out.worst_distance = std::max(out.worst_distance, dist);
      if (dist > eps + tol) {
        out.report.fail(loc, "||Q - P|| = " + std::to_string(dist) + " exceeds eps = " + std::to_string(eps));
      }
      sum += effect;
    }
    const double lmax = max_eigenvalue(sum);
    if (lmax > 1.0 + tol) {
      out.report.fail("/contexts/" + std::to_string(c),
                      "context " + context_label(h, c) + " effects sum to lambda_max = " + std::to_string(lmax));
    }
  }
  return out;
}

double quantum_value(const ContextHypergraph& h, const QuantumModel& q, const QuantumState& rho) {
  require_coverage(h, q);
  if (rho.dimension() != q.dimension) {
    throw DimensionMismatch("state dimension " + std::to_string(rho.dimension()) + " differs from model dimension " +
                            std::to_string(q.dimension));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < h.outcome_count(); ++i) {
    const double w = to_double(h.weights[i]);
    if (w == 0.0) continue;
    total += w * trace_product(rho.density(), q.projector(h.outcomes[i]));
  }
  return total;
}

QuantumOptimum max_quantum_value(const ContextHypergraph& h, const QuantumModel& q) {
  require_coverage(h, q);
  HermitianOperator sum = HermitianOperator::zero(q.dimension);
  for (std::size_t i = 0; i < h.outcome_count(); ++i) {
    sum += q.projector(h.outcomes[i]) * to_double(h.weights[i]);
  }
  const HermitianEigen eig = hermitian_eigen(sum.matrix());
  const Eigen::Index top = eig.values.size() - 1;
  ComplexVector psi = eig.vectors.col(top);
  // Canonical phase: first non-negligible coordinate real positive.
  for (Eigen::Index r = 0; r < psi.size(); ++r) {
    if (std::abs(psi(r)) > 1e-12) {
      psi *= std::conj(psi(r)) / std::abs(psi(r));
      break;
    }
  }
  return {eig.values(top), QuantumState::pure(psi), psi};
}

}  // namespace ctxbounds
