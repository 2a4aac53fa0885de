#include "ctxbounds/onc.hpp"

#include "ctxbounds/classical.hpp"
#include "ctxbounds/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace ctxbounds {

using nlohmann::json;

const Indicator& FiniteHVModel::table(std::size_t context, OutcomeIndex outcome) const {
  const auto it = tables.find({context, outcome});
  if (it == tables.end()) {
    throw std::invalid_argument("missing table for outcome index " + std::to_string(outcome) + " in context " +
                                std::to_string(context));
  }
  return it->second;
}

namespace {

// μ scaled to a common denominator so event probabilities are integer sums.
class Measure {
 public:
  explicit Measure(const std::vector<Rational>& mu) {
    for (const Rational& p : mu) denom_ = boost::multiprecision::lcm(denom_, boost::multiprecision::denominator(p));
    BigInt total = 0;
    for (const Rational& p : mu) {
      big_.push_back(boost::multiprecision::numerator(p) * (denom_ / boost::multiprecision::denominator(p)));
      total += abs(big_.back());
    }
    small_ok_ = total <= BigInt(std::numeric_limits<std::int64_t>::max());
    if (small_ok_) {
      for (const BigInt& b : big_) small_.push_back(b.convert_to<std::int64_t>());
    }
  }

  template <class Event>
  Rational of(Event&& event) const {
    if (small_ok_) {
      std::int64_t sum = 0;
      for (std::size_t w = 0; w < small_.size(); ++w) {
        if (event(w)) sum += small_[w];
      }
      return Rational(BigInt(sum), denom_);
    }
    BigInt sum = 0;
    for (std::size_t w = 0; w < big_.size(); ++w) {
      if (event(w)) sum += big_[w];
    }
    return Rational(sum, denom_);
  }

 private:
  BigInt denom_ = 1;
  std::vector<BigInt> big_;
  std::vector<std::int64_t> small_;
  bool small_ok_ = false;
};

std::vector<std::vector<std::size_t>> contexts_of(const ContextHypergraph& h) {
  std::vector<std::vector<std::size_t>> out(h.outcome_count());
  for (std::size_t c = 0; c < h.context_count(); ++c) {
    for (OutcomeIndex i : h.contexts[c]) out[i].push_back(c);
  }
  return out;
}

void check_model_shape(const ContextHypergraph& h, const FiniteHVModel& m) {
  const std::size_t n = m.sample_count();
  if (n == 0) throw std::invalid_argument("model has no sample points");
  Rational total = 0;
  for (std::size_t w = 0; w < n; ++w) {
    if (m.mu[w] < 0) throw std::invalid_argument("negative probability at sample point " + std::to_string(w));
    total += m.mu[w];
  }
  if (total != 1) throw std::invalid_argument("probabilities sum to " + to_string(total) + ", not 1");
  for (std::size_t c = 0; c < h.context_count(); ++c) {
    for (OutcomeIndex i : h.contexts[c]) {
      const Indicator& t = m.table(c, i);
      if (t.size() != n) {
        throw std::invalid_argument("table for '" + h.outcomes[i] + "' in context " + std::to_string(c) + " has " +
                                    std::to_string(t.size()) + " entries, expected " + std::to_string(n));
      }
      for (std::uint8_t v : t) {
        if (v > 1) throw std::invalid_argument("table values must be 0 or 1");
      }
    }
  }
}

}  // namespace

FiniteHVModel parse_hv_model(std::string_view json_text, const ContextHypergraph& h) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("", "hidden-variable model must be a JSON object");
  if (!doc.contains("omega") || !doc["omega"].is_number_unsigned()) {
    throw ParseError("/omega", "omega must be a non-negative integer");
  }
  const auto omega = doc["omega"].get<std::size_t>();
  FiniteHVModel m;
  if (!doc.contains("mu") || !doc["mu"].is_array() || doc["mu"].size() != omega) {
    throw ParseError("/mu", "mu must list one probability per sample point");
  }
  for (std::size_t w = 0; w < omega; ++w) {
    const json& p = doc["mu"][w];
    const std::string loc = "/mu/" + std::to_string(w);
    try {
      if (p.is_string()) m.mu.push_back(parse_rational(p.get<std::string>()));
      else if (p.is_number_integer()) m.mu.emplace_back(BigInt(p.get<std::int64_t>()));
      else throw ParseError(loc, "probability must be a \"p/q\" string");
    } catch (const std::invalid_argument& e) {
      throw ParseError(loc, e.what());
    }
  }
  if (!doc.contains("tables") || !doc["tables"].is_object()) throw ParseError("/tables", "missing tables object");
  for (const auto& [key, values] : doc["tables"].items()) {
    const std::string loc = "/tables/" + key;
    const auto slash = key.find('/');
    if (slash == std::string::npos) throw ParseError(loc, "table key must be \"<context-index>/<outcome-id>\"");
    std::size_t context = 0;
    try {
      std::size_t used = 0;
      context = std::stoul(key.substr(0, slash), &used);
      if (used != slash) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ParseError(loc, "context index is not an integer");
    }
    if (context >= h.context_count()) throw ParseError(loc, "context index out of range");
    OutcomeIndex outcome = 0;
    try {
      outcome = h.index_of(key.substr(slash + 1));
    } catch (const std::out_of_range& e) {
      throw ParseError(loc, e.what());
    }
    if (!h.contains(context, outcome)) throw ParseError(loc, "outcome is not a member of the context");
    if (!values.is_array() || values.size() != omega) throw ParseError(loc, "table must have omega entries");
    Indicator t;
    for (const json& v : values) {
      if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1)) {
        throw ParseError(loc, "table entries must be 0 or 1");
      }
      t.push_back(static_cast<std::uint8_t>(v.get<int>()));
    }
    m.tables[{context, outcome}] = std::move(t);
  }
  return m;
}

FiniteHVModel load_hv_model(const std::filesystem::path& path, const ContextHypergraph& h) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open hidden-variable model file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_hv_model(ss.str(), h);
}

std::string emit_hv_model(const FiniteHVModel& m, const ContextHypergraph& h) {
  json doc;
  doc["omega"] = m.sample_count();
  json mu = json::array();
  for (const Rational& p : m.mu) mu.push_back(to_string(p));
  doc["mu"] = std::move(mu);
  json tables = json::object();
  for (const auto& [key, values] : m.tables) {
    json arr = json::array();
    for (std::uint8_t v : values) arr.push_back(static_cast<int>(v));
    tables[std::to_string(key.first) + "/" + h.outcomes.at(key.second)] = std::move(arr);
  }
  doc["tables"] = std::move(tables);
  return doc.dump() + "\n";
}

ONCReport validate_onc(const ContextHypergraph& h, const FiniteHVModel& m) {
  require_valid(h);
  check_model_shape(h, m);
  const Measure measure(m.mu);
  ONCReport report;
  report.epsilon_max = 0;

  const auto owning = contexts_of(h);
  for (OutcomeIndex i = 0; i < h.outcome_count(); ++i) {
    for (std::size_t a = 0; a < owning[i].size(); ++a) {
      for (std::size_t b = a + 1; b < owning[i].size(); ++b) {
        const Indicator& xa = m.table(owning[i][a], i);
        const Indicator& xb = m.table(owning[i][b], i);
        Rational p = measure.of([&](std::size_t w) { return xa[w] != xb[w]; });
        if (p > report.epsilon_max) report.epsilon_max = p;
        report.disagreements.push_back({i, owning[i][a], owning[i][b], std::move(p)});
      }
    }
  }

  for (std::size_t c = 0; c < h.context_count(); ++c) {
    for (std::size_t w = 0; w < m.sample_count(); ++w) {
      int sum = 0;
      for (OutcomeIndex i : h.contexts[c]) sum += m.table(c, i)[w];
      if (sum > 1) {
        report.feasible = false;
        report.violations.push_back({c, w, sum});
      }
    }
  }
  return report;
}

CollapsedModel collapse(const ContextHypergraph& h, const FiniteHVModel& m) {
  check_model_shape(h, m);
  CollapsedModel out;
  out.mu = m.mu;
  out.y.assign(h.outcome_count(), Indicator(m.sample_count(), 1));
  for (std::size_t c = 0; c < h.context_count(); ++c) {
    for (OutcomeIndex i : h.contexts[c]) {
      const Indicator& x = m.table(c, i);
      for (std::size_t w = 0; w < x.size(); ++w) out.y[i][w] &= x[w];
    }
  }
  return out;
}

bool satisfies_context_constraints(const ContextHypergraph& h, const CollapsedModel& y) {
  for (const Context& c : h.contexts) {
    for (std::size_t w = 0; w < y.mu.size(); ++w) {
      int sum = 0;
      for (OutcomeIndex i : c) sum += y.y[i][w];
      if (sum > 1) return false;
    }
  }
  return true;
}

Prop1Report prop1_check(const ContextHypergraph& h, const FiniteHVModel& m, const CollapsedModel& y) {
  const ONCReport onc = validate_onc(h, m);
  const Measure measure(m.mu);
  const auto k = context_multiplicities(h);
  const auto owning = contexts_of(h);
  Prop1Report report;
  report.epsilon = onc.epsilon_max;
  for (OutcomeIndex i = 0; i < h.outcome_count(); ++i) {
    Prop1Entry e;
    e.outcome = i;
    e.multiplicity = k[i];
    e.probability = measure.of([&](std::size_t w) {
      for (std::size_t c : owning[i]) {
        if (m.table(c, i)[w] != y.y[i][w]) return true;
      }
      return false;
    });
    e.bound = k[i] > 1 ? Rational(onc.epsilon_max * static_cast<long>(k[i] - 1)) : Rational(0);
    e.margin = e.bound - e.probability;
    if (e.margin < 0) report.holds = false;
    report.entries.push_back(std::move(e));
  }
  return report;
}

Rational robust_bound(const Rational& beta_cl, const Rational& slope, const Rational& eps) {
  if (eps < 0) throw std::invalid_argument("epsilon must be non-negative, got " + to_string(eps));
  return beta_cl + eps * slope;
}

Rational robust_bound(const ContextHypergraph& h, const Rational& eps) {
  if (eps < 0) throw std::invalid_argument("epsilon must be non-negative, got " + to_string(eps));
  return robust_bound(beta_classical(h).value, penalty_slope(h), eps);
}

double critical_epsilon(const Rational& beta_cl, const Rational& slope, double beta_target) {
  const double cl = to_double(beta_cl);
  if (beta_target < cl) {
    throw std::invalid_argument("target " + std::to_string(beta_target) + " is below the classical bound " +
                                to_string(beta_cl));
  }
  if (slope == 0) return std::numeric_limits<double>::infinity();
  return (beta_target - cl) / to_double(slope);
}

double critical_epsilon(const ContextHypergraph& h, double beta_target) {
  return critical_epsilon(beta_classical(h).value, penalty_slope(h), beta_target);
}

ContextChoice default_context_choice(const ContextHypergraph& h) {
  ContextChoice choice;
  for (std::size_t c = 0; c < h.context_count(); ++c) {
    for (OutcomeIndex i : h.contexts[c]) choice.emplace(i, c);
  }
  return choice;
}

std::map<OutcomeIndex, Rational> expectations(const ContextHypergraph& h, const FiniteHVModel& m,
                                              const ContextChoice& choice) {
  check_model_shape(h, m);
  const Measure measure(m.mu);
  std::map<OutcomeIndex, Rational> t;
  for (const auto& [i, c] : choice) {
    if (i >= h.outcome_count() || c >= h.context_count() || !h.contains(c, i)) {
      throw std::invalid_argument("context " + std::to_string(c) + " does not contain outcome index " +
                                  std::to_string(i));
    }
    const Indicator& x = m.table(c, i);
    t[i] = measure.of([&](std::size_t w) { return x[w] == 1; });
  }
  return t;
}

Rational weighted_sum(const ContextHypergraph& h, const std::map<OutcomeIndex, Rational>& t) {
  Rational s = 0;
  for (const auto& [i, v] : t) s += h.weights.at(i) * v;
  return s;
}

RepeatabilityResult repeatability_bound(const ContextHypergraph& h, const FiniteHVModel& m, OutcomeIndex i,
                                        std::size_t c, std::size_t c_prime, int xi, const Rational& epsilon) {
  if (c >= h.context_count() || c_prime >= h.context_count() || i >= h.outcome_count() || !h.contains(c, i) ||
      !h.contains(c_prime, i)) {
    throw std::invalid_argument("outcome index " + std::to_string(i) + " is not in both contexts " +
                                std::to_string(c) + " and " + std::to_string(c_prime));
  }
  if (xi != 0 && xi != 1) throw std::invalid_argument("xi must be 0 or 1");
  check_model_shape(h, m);
  const Measure measure(m.mu);
  const Indicator& x = m.table(c, i);
  const Indicator& xp = m.table(c_prime, i);
  const auto v = static_cast<std::uint8_t>(xi);
  const Rational p_cond = measure.of([&](std::size_t w) { return x[w] == v; });
  if (p_cond == 0) {
    throw std::domain_error("conditioning event X^C_i = " + std::to_string(xi) + " has probability 0");
  }
  const Rational p_joint = measure.of([&](std::size_t w) { return x[w] == v && xp[w] != v; });
  RepeatabilityResult r;
  r.conditional = p_joint / p_cond;
  r.bound = epsilon / p_cond;
  r.holds = r.conditional <= r.bound;
  return r;
}

RepeatabilityResult repeatability_bound(const ContextHypergraph& h, const FiniteHVModel& m, OutcomeIndex i,
                                        std::size_t c, std::size_t c_prime, int xi) {
  return repeatability_bound(h, m, i, c, c_prime, xi, validate_onc(h, m).epsilon_max);
}

namespace {

constexpr std::uint64_t kStreamBaseOrder = 0x6a09e667f3bcc908ULL;
constexpr std::uint64_t kStreamBaseCoin = 0xbb67ae8584caa73bULL;
constexpr std::uint64_t kStreamFlip = 0x3c6ef372fe94f82bULL;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based draw keyed by (seed, stream, point, index).
std::uint64_t draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t point, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(seed ^ stream) ^ point) ^ index);
}

}  // namespace

FiniteHVModel sample_onc(const ContextHypergraph& h, const Rational& eps, std::uint64_t seed, std::size_t size) {
  require_valid(h);
  if (eps < 0 || eps > 1) throw std::invalid_argument("eps must lie in [0, 1], got " + to_string(eps));
  if (size == 0) throw std::invalid_argument("size must be at least 1");
  const std::size_t n = h.outcome_count();
  const ExclusivityGraph g = exclusivity_graph(h);

  FiniteHVModel m;
  m.mu.assign(size, Rational(1, static_cast<long>(size)));

  // Base non-contextual assignment per point: visit outcomes in a random
  // order and take each with probability 1/2 unless a neighbour was taken.
  std::vector<Indicator> base(n, Indicator(size, 0));
  std::vector<std::size_t> order(n);
  for (std::size_t w = 0; w < size; ++w) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto ka = draw(seed, kStreamBaseOrder, w, a);
      const auto kb = draw(seed, kStreamBaseOrder, w, b);
      return ka != kb ? ka < kb : a < b;
    });
    for (std::size_t i : order) {
      if (!(draw(seed, kStreamBaseCoin, w, i) & 1)) continue;
      bool blocked = false;
      for (std::size_t j = 0; j < n && !blocked; ++j) blocked = base[j][w] && g.adjacent(i, j);
      if (!blocked) base[i][w] = 1;
    }
  }
  for (std::size_t c = 0; c < h.context_count(); ++c) {
    for (OutcomeIndex i : h.contexts[c]) m.tables[{c, i}] = base[i];
  }

  const BigInt flips_big = boost::multiprecision::numerator(eps) * static_cast<unsigned long>(size) /
                           boost::multiprecision::denominator(eps);
  const auto flips = flips_big.convert_to<std::size_t>();
  if (flips == 0) return m;

  std::vector<std::size_t> points(size);
  std::uint64_t incidence = 0;
  for (std::size_t c = 0; c < h.context_count(); ++c) {
    for (OutcomeIndex i : h.contexts[c]) {
      std::iota(points.begin(), points.end(), std::size_t{0});
      std::partial_sort(points.begin(), points.begin() + static_cast<std::ptrdiff_t>(flips), points.end(),
                        [&](std::size_t a, std::size_t b) {
                          const auto ka = draw(seed, kStreamFlip, a, incidence);
                          const auto kb = draw(seed, kStreamFlip, b, incidence);
                          return ka != kb ? ka < kb : a < b;
                        });
      std::vector<std::size_t> chosen(points.begin(), points.begin() + static_cast<std::ptrdiff_t>(flips));
      std::sort(chosen.begin(), chosen.end());
      Indicator& x = m.tables[{c, i}];
      for (std::size_t w : chosen) {
        if (x[w]) {
          x[w] = 0;
          continue;
        }
        bool occupied = false;
        for (OutcomeIndex j : h.contexts[c]) occupied = occupied || (j != i && m.tables[{c, j}][w]);
        if (!occupied) x[w] = 1;
      }
      ++incidence;
    }
  }
  return m;
}

}  // namespace ctxbounds
