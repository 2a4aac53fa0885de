#include "ctxbounds/hypergraph.hpp"

#include "ctxbounds/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ctxbounds {

using nlohmann::json;

const char* to_string(Severity s) { return s == Severity::Error ? "error" : "warning"; }

void ValidationReport::warn(std::string location, std::string message) {
  findings.push_back({Severity::Warning, std::move(location), std::move(message)});
}

void ValidationReport::fail(std::string location, std::string message) {
  findings.push_back({Severity::Error, std::move(location), std::move(message)});
  ok = false;
}

std::size_t ValidationReport::error_count() const {
  return static_cast<std::size_t>(std::count_if(findings.begin(), findings.end(), [](const Finding& f) {
    return f.severity == Severity::Error;
  }));
}

std::size_t ValidationReport::warning_count() const { return findings.size() - error_count(); }

OutcomeIndex ContextHypergraph::index_of(std::string_view id) const {
  const auto it = std::find(outcomes.begin(), outcomes.end(), id);
  if (it == outcomes.end()) {
    throw std::out_of_range("unknown outcome id '" + std::string(id) + "'");
  }
  return static_cast<OutcomeIndex>(it - outcomes.begin());
}

bool ContextHypergraph::contains(std::size_t c, OutcomeIndex i) const {
  const Context& ctx = contexts.at(c);
  return std::find(ctx.begin(), ctx.end(), i) != ctx.end();
}

namespace {

std::vector<OutcomeIndex> sorted_copy(const Context& c) {
  std::vector<OutcomeIndex> s(c);
  std::sort(s.begin(), s.end());
  return s;
}

Rational parse_weight(const json& value, const std::string& location) {
  if (value.is_string()) {
    Rational w;
    try {
      w = parse_rational(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(location, e.what());
    }
    return w;
  }
  if (value.is_number_integer()) {
    if (value.is_number_unsigned()) return Rational(BigInt(value.get<std::uint64_t>()));
    return Rational(BigInt(value.get<std::int64_t>()));
  }
  if (value.is_number_float()) {
    throw ParseError(location, "floating-point weight rejected; use an integer or a \"p/q\" string");
  }
  throw ParseError(location, "weight must be an integer or a \"p/q\" string");
}

}  // namespace

ContextHypergraph make_hypergraph(std::string name, std::vector<std::string> outcomes,
                                  const std::vector<std::vector<std::string>>& contexts,
                                  std::vector<Rational> weights) {
  ContextHypergraph h;
  h.name = std::move(name);
  std::map<std::string, OutcomeIndex> index;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!index.emplace(outcomes[i], i).second) {
      throw ParseError("/outcomes/" + std::to_string(i), "duplicate outcome id '" + outcomes[i] + "'");
    }
  }
  h.outcomes = std::move(outcomes);
  for (std::size_t c = 0; c < contexts.size(); ++c) {
    Context ctx;
    for (std::size_t k = 0; k < contexts[c].size(); ++k) {
      const auto it = index.find(contexts[c][k]);
      if (it == index.end()) {
        throw ParseError("/contexts/" + std::to_string(c) + "/" + std::to_string(k),
                         "context " + std::to_string(c) + " references undeclared outcome '" +
                             contexts[c][k] + "'");
      }
      ctx.push_back(it->second);
    }
    h.contexts.push_back(std::move(ctx));
  }
  if (weights.empty()) weights.assign(h.outcomes.size(), Rational(1));
  if (weights.size() != h.outcomes.size()) {
    throw ParseError("/weights", "weight count does not match outcome count");
  }
  h.weights = std::move(weights);
  return canonicalize(std::move(h));
}

ContextHypergraph parse_hypergraph(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("", "hypergraph document must be a JSON object");

  std::string name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ParseError("/name", "name must be a string");
    name = doc["name"].get<std::string>();
  }

  if (!doc.contains("outcomes") || !doc["outcomes"].is_array()) {
    throw ParseError("/outcomes", "missing outcomes array");
  }
  std::vector<std::string> outcomes;
  for (std::size_t i = 0; i < doc["outcomes"].size(); ++i) {
    const json& id = doc["outcomes"][i];
    if (!id.is_string()) throw ParseError("/outcomes/" + std::to_string(i), "outcome id must be a string");
    outcomes.push_back(id.get<std::string>());
  }

  if (!doc.contains("contexts") || !doc["contexts"].is_array()) {
    throw ParseError("/contexts", "missing contexts array");
  }
  std::vector<std::vector<std::string>> contexts;
  for (std::size_t c = 0; c < doc["contexts"].size(); ++c) {
    const json& ctx = doc["contexts"][c];
    const std::string loc = "/contexts/" + std::to_string(c);
    if (!ctx.is_array()) throw ParseError(loc, "context must be an array of outcome ids");
    std::vector<std::string> ids;
    for (std::size_t k = 0; k < ctx.size(); ++k) {
      if (!ctx[k].is_string()) throw ParseError(loc + "/" + std::to_string(k), "outcome id must be a string");
      ids.push_back(ctx[k].get<std::string>());
    }
    contexts.push_back(std::move(ids));
  }

  std::vector<Rational> weights(outcomes.size(), Rational(1));
  if (doc.contains("weights")) {
    const json& w = doc["weights"];
    if (!w.is_object()) throw ParseError("/weights", "weights must be an object");
    for (const auto& [id, value] : w.items()) {
      const std::string loc = "/weights/" + id;
      const auto it = std::find(outcomes.begin(), outcomes.end(), id);
      if (it == outcomes.end()) throw ParseError(loc, "weight given for undeclared outcome '" + id + "'");
      Rational r = parse_weight(value, loc);
      if (r < 0) throw ParseError(loc, "negative weight " + to_string(r) + " for outcome '" + id + "'");
      weights[static_cast<std::size_t>(it - outcomes.begin())] = std::move(r);
    }
  }
  return make_hypergraph(std::move(name), std::move(outcomes), contexts, std::move(weights));
}

ContextHypergraph load_hypergraph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open hypergraph file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_hypergraph(ss.str());
}

std::string emit_hypergraph(const ContextHypergraph& h) {
  json doc;
  doc["name"] = h.name;
  doc["outcomes"] = h.outcomes;
  json weights = json::object();
  for (std::size_t i = 0; i < h.outcomes.size() && i < h.weights.size(); ++i) {
    weights[h.outcomes[i]] = to_string(h.weights[i]);
  }
  doc["weights"] = std::move(weights);
  json contexts = json::array();
  for (const Context& c : h.contexts) {
    json ids = json::array();
    for (OutcomeIndex i : c) ids.push_back(h.outcomes.at(i));
    contexts.push_back(std::move(ids));
  }
  doc["contexts"] = std::move(contexts);
  return doc.dump(2) + "\n";
}

ContextHypergraph canonicalize(ContextHypergraph h) {
  std::set<std::vector<OutcomeIndex>> seen;
  std::vector<Context> kept;
  for (Context& c : h.contexts) {
    if (seen.insert(sorted_copy(c)).second) kept.push_back(std::move(c));
  }
  h.contexts = std::move(kept);
  return h;
}

ValidationReport validate(const ContextHypergraph& h) {
  ValidationReport report;
  const std::size_t n = h.outcomes.size();

  std::map<std::string, std::size_t> first_seen;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [it, inserted] = first_seen.emplace(h.outcomes[i], i);
    if (!inserted) {
      report.fail("/outcomes/" + std::to_string(i),
                  "duplicate outcome id '" + h.outcomes[i] + "' (first at index " + std::to_string(it->second) + ")");
    }
  }

  if (h.weights.size() != n) {
    report.fail("/weights", "expected " + std::to_string(n) + " weights, found " + std::to_string(h.weights.size()));
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (h.weights[i] < 0) {
        report.fail("/weights/" + h.outcomes[i], "negative weight " + to_string(h.weights[i]));
      }
    }
  }

  std::vector<bool> covered(n, false);
  std::set<std::vector<OutcomeIndex>> seen;
  for (std::size_t c = 0; c < h.contexts.size(); ++c) {
    const Context& ctx = h.contexts[c];
    const std::string loc = "/contexts/" + std::to_string(c);
    if (ctx.empty()) {
      report.fail(loc, "empty context");
      continue;
    }
    bool in_range = true;
    for (std::size_t k = 0; k < ctx.size(); ++k) {
      if (ctx[k] >= n) {
        report.fail(loc + "/" + std::to_string(k), "outcome index " + std::to_string(ctx[k]) + " is not declared");
        in_range = false;
      } else {
        covered[ctx[k]] = true;
      }
    }
    if (!in_range) continue;
    const auto sorted = sorted_copy(ctx);
    for (std::size_t k = 1; k < sorted.size(); ++k) {
      if (sorted[k] == sorted[k - 1]) {
        report.fail(loc, "outcome '" + h.outcomes[sorted[k]] + "' listed twice in one context");
      }
    }
    if (!seen.insert(sorted).second) {
      report.warn(loc, "duplicate context; counted once");
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!covered[i]) {
      report.warn("/outcomes/" + std::to_string(i), "outcome '" + h.outcomes[i] + "' belongs to no context");
    }
  }
  return report;
}

void require_valid(const ContextHypergraph& h) {
  const ValidationReport report = validate(h);
  if (report.ok) return;
  std::string message = "invalid hypergraph '" + h.name + "':";
  for (const Finding& f : report.findings) {
    if (f.severity == Severity::Error) message += " [" + f.location + "] " + f.message + ";";
  }
  throw std::invalid_argument(message);
}

ExclusivityGraph::ExclusivityGraph(std::vector<std::string> vertices)
    : vertices_(std::move(vertices)), adj_(vertices_.size() * vertices_.size(), 0) {}

void ExclusivityGraph::connect(std::size_t i, std::size_t j) {
  if (i == j) return;
  adj_[i * size() + j] = 1;
  adj_[j * size() + i] = 1;
}

std::size_t ExclusivityGraph::edge_count() const {
  return static_cast<std::size_t>(std::count(adj_.begin(), adj_.end(), 1)) / 2;
}

std::vector<std::pair<std::size_t, std::size_t>> ExclusivityGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      if (adjacent(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<std::size_t> ExclusivityGraph::neighbors(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < size(); ++j) {
    if (adjacent(i, j)) out.push_back(j);
  }
  return out;
}

ExclusivityGraph exclusivity_graph(const ContextHypergraph& h) {
  ExclusivityGraph g(h.outcomes);
  for (const Context& c : h.contexts) {
    for (std::size_t a = 0; a < c.size(); ++a) {
      for (std::size_t b = a + 1; b < c.size(); ++b) g.connect(c[a], c[b]);
    }
  }
  return g;
}

std::vector<std::size_t> context_multiplicities(const ContextHypergraph& h) {
  std::vector<std::size_t> k(h.outcomes.size(), 0);
  std::set<std::vector<OutcomeIndex>> seen;
  for (const Context& c : h.contexts) {
    auto s = sorted_copy(c);
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (!seen.insert(s).second) continue;
    for (OutcomeIndex i : s) ++k.at(i);
  }
  return k;
}

Rational penalty_slope(const ContextHypergraph& h) {
  const auto k = context_multiplicities(h);
  Rational slope = 0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] > 1) slope += h.weights[i] * static_cast<long>(k[i] - 1);
  }
  return slope;
}

}  // namespace ctxbounds
