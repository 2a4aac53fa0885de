#include "ctxbounds/classical.hpp"
#include "ctxbounds/instances.hpp"
#include "ctxbounds/lp_bound.hpp"
#include "ctxbounds/theta.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace ctxbounds;

TEST_CASE("pentagon instance") {
  const KcbsInstance k = kcbs_pentagon();
  CHECK(validate(k.hypergraph).ok);
  CHECK(beta_classical(k.hypergraph).value == 2);
  // Gram zero pattern is exactly the C5 edge set.
  const ExclusivityGraph g = exclusivity_graph(k.hypergraph);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i + 1; j < 5; ++j) {
      const double ip = std::abs(k.model.vectors.at(std::to_string(i)).dot(k.model.vectors.at(std::to_string(j))));
      CHECK((ip < 1e-12) == g.adjacent(i, j));
    }
  }
  CHECK(g == exclusivity_graph(cycle_instance(5)));
}

TEST_CASE("Peres instance") {
  const PeresMerminInstance mp = peres_mermin_24();
  const ContextHypergraph& h = mp.hypergraph;
  CHECK(h.outcome_count() == 24);
  CHECK(h.context_count() == 24);
  for (const auto& c : h.contexts) CHECK(c.size() == 4);
  CHECK(validate(h).ok);
  CHECK(verify_quantum_model(h, mp.model).ok);
  CHECK(beta_classical(h).value == 5);
  CHECK(beta_general(h).value == 6);
  // First non-zero coordinate of each stored vector is real and positive.
  for (const auto& [id, v] : mp.model.vectors) {
    Eigen::Index k = 0;
    while (std::abs(v(k)) < 1e-12) ++k;
    CHECK(v(k).real() > 0);
    CHECK(std::abs(v(k).imag()) < 1e-15);
  }
}

TEST_CASE("cycles") {
  CHECK(beta_classical(cycle_instance(4)).value == 2);
  CHECK(beta_general(cycle_instance(4)).value == 2);
  CHECK(support::brute_force_beta_cl(cycle_instance(4)) == 2);
  CHECK(beta_classical(cycle_instance(7)).value == 3);
  CHECK(beta_general(cycle_instance(7)).value == Rational(7, 2));
  CHECK_THROWS_AS(cycle_instance(2), std::invalid_argument);
}

TEST_CASE("named instances") {
  CHECK(named_instance("pentagon").model.has_value());
  CHECK(named_instance("kcbs").hypergraph == cycle_instance(5));
  CHECK(named_instance("peres-mermin").hypergraph.outcome_count() == 24);
  CHECK(named_instance("cycle9").hypergraph == cycle_instance(9));
  CHECK_FALSE(named_instance("single3").model.has_value());
  CHECK_THROWS_AS(named_instance("cube"), std::invalid_argument);
  CHECK_THROWS_AS(named_instance("cycle"), std::invalid_argument);
  for (const std::string& name : {"pentagon", "mp24", "cycle6", "single4"}) {
    const NamedInstance inst = named_instance(name);
    CHECK(validate(inst.hypergraph).ok);
    if (inst.model) CHECK(verify_quantum_model(inst.hypergraph, *inst.model).ok);
  }
}
