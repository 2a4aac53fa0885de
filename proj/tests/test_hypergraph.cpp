#include "ctxbounds/errors.hpp"
#include "ctxbounds/hypergraph.hpp"
#include "ctxbounds/instances.hpp"
#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace ctxbounds;

namespace {

const char* kPentagon = R"({"name": "pentagon", "outcomes": ["0","1","2","3","4"],
  "contexts": [["0","1"],["1","2"],["2","3"],["3","4"],["4","0"]]})";

bool has_finding(const ValidationReport& r, Severity s, const std::string& fragment) {
  for (const auto& f : r.findings) {
    if (f.severity == s && f.message.find(fragment) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("parse pentagon") {
  const ContextHypergraph h = parse_hypergraph(kPentagon);
  CHECK(h.name == "pentagon");
  CHECK(h.outcome_count() == 5);
  CHECK(h.context_count() == 5);
  for (const Rational& w : h.weights) CHECK(w == 1);
  CHECK(h == cycle_instance(5));
  CHECK(validate(h).ok);
  CHECK(validate(h).findings.empty());
}

TEST_CASE("parse singleton") {
  const ContextHypergraph h = parse_hypergraph(R"({"name":"s","outcomes":["a"],"weights":{"a":1},"contexts":[["a"]]})");
  CHECK(h.outcome_count() == 1);
  CHECK(h.context_count() == 1);
  CHECK(h.weights[0] == 1);
}

TEST_CASE("parse weights") {
  const ContextHypergraph h = parse_hypergraph(
      R"({"name":"w","outcomes":["a","b"],"weights":{"a":"3/4","b":2},"contexts":[["a","b"]]})");
  CHECK(h.weights[0] == Rational(3, 4));
  CHECK(h.weights[1] == 2);
  CHECK_THROWS_AS(parse_hypergraph(R"({"name":"w","outcomes":["a"],"weights":{"a":0.5},"contexts":[["a"]]})"),
                  ParseError);
}

TEST_CASE("parse errors carry locations") {
  try {
    parse_hypergraph(R"({"name":"x","outcomes":["a","b"],"contexts":[["a"],["b","z"]]})");
    FAIL("expected a ParseError");
  } catch (const ParseError& e) {
    CHECK(e.location() == "/contexts/1/1");
    CHECK(std::string(e.what()).find("'z'") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_hypergraph(R"({"name":"x","outcomes":["a","a"],"contexts":[["a"]]})"), ParseError);
  CHECK_THROWS_AS(parse_hypergraph(R"({"name":"x","outcomes":["a"],"weights":{"a":"-1"},"contexts":[["a"]]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_hypergraph(R"({"name":"x","outcomes":["a"]})"), ParseError);
  CHECK_THROWS_AS(parse_hypergraph("[1,2"), ParseError);
}

TEST_CASE("validate findings") {
  ContextHypergraph h = cycle_instance(5);
  h.contexts.push_back({});
  ValidationReport r = validate(h);
  CHECK_FALSE(r.ok);
  CHECK(r.error_count() == 1);

  ContextHypergraph iso = make_hypergraph("iso", {"a", "b", "c"}, {{"a", "b"}});
  r = validate(iso);
  CHECK(r.ok);
  CHECK(r.warning_count() == 1);
  CHECK(has_finding(r, Severity::Warning, "'c'"));

  ContextHypergraph neg = cycle_instance(3);
  neg.weights[1] = Rational(-1, 2);
  CHECK_FALSE(validate(neg).ok);
  const ContextHypergraph before = neg;
  CHECK(validate(neg).findings.size() == validate(neg).findings.size());
  CHECK(neg == before);
}

TEST_CASE("exclusivity graph") {
  const ExclusivityGraph c5 = exclusivity_graph(cycle_instance(5));
  CHECK(c5.edge_count() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK_FALSE(c5.adjacent(i, i));
    CHECK(c5.adjacent(i, (i + 1) % 5));
    CHECK_FALSE(c5.adjacent(i, (i + 2) % 5));
  }
  const ExclusivityGraph k6 = exclusivity_graph(single_context_instance(6));
  CHECK(k6.edge_count() == 15);
}

TEST_CASE("Peres graph matches the Gram zero pattern") {
  const PeresMerminInstance mp = peres_mermin_24();
  const ExclusivityGraph g = exclusivity_graph(mp.hypergraph);
  const auto& ids = mp.hypergraph.outcomes;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = 0; j < ids.size(); ++j) {
      const bool orth = i != j && std::abs(mp.model.vectors.at(ids[i]).dot(mp.model.vectors.at(ids[j]))) < 1e-12;
      CHECK(g.adjacent(i, j) == orth);
    }
  }
  CHECK(g.edge_count() == 108);
}

TEST_CASE("multiplicities") {
  for (std::size_t k : context_multiplicities(cycle_instance(5))) CHECK(k == 2);
  for (std::size_t k : context_multiplicities(single_context_instance(4))) CHECK(k == 1);
  for (std::size_t k : context_multiplicities(peres_mermin_24().hypergraph)) CHECK(k == 4);
}

TEST_CASE("duplicate contexts are dropped") {
  const ContextHypergraph h = parse_hypergraph(
      R"({"name":"d","outcomes":["a","b","c"],"contexts":[["a","b"],["b","a"],["b","c"]]})");
  CHECK(h.context_count() == 2);
  CHECK(context_multiplicities(h) == std::vector<std::size_t>{1, 2, 1});
}

TEST_CASE("property: graph invariances and multiplicity identity") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const ContextHypergraph h = support::random_hypergraph(rng, 12);
    const ExclusivityGraph g = exclusivity_graph(h);

    std::size_t total = 0;
    for (std::size_t k : context_multiplicities(h)) total += k;
    std::size_t sizes = 0;
    for (const auto& c : h.contexts) sizes += c.size();
    CHECK(total == sizes);

    ContextHypergraph permuted = h;
    std::shuffle(permuted.contexts.begin(), permuted.contexts.end(), rng);
    CHECK(exclusivity_graph(permuted) == g);

    ContextHypergraph duplicated = h;
    duplicated.contexts.push_back(h.contexts.front());
    CHECK(exclusivity_graph(duplicated) == g);

    ContextHypergraph grown = h;
    grown.contexts.push_back({0, h.outcome_count() - 1});
    if (h.outcome_count() == 1) grown.contexts.back().pop_back();
    const ExclusivityGraph bigger = exclusivity_graph(grown);
    for (const auto& [i, j] : g.edges()) CHECK(bigger.adjacent(i, j));

    const ContextHypergraph once = parse_hypergraph(emit_hypergraph(h));
    CHECK(once == h);
    CHECK(parse_hypergraph(emit_hypergraph(once)) == once);
  }
}
