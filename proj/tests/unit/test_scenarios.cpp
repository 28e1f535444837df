#include <doctest.h>

#include <cmath>

#include "superselect/entanglement.hpp"
#include "superselect/scenarios.hpp"

using namespace superselect;

TEST_CASE("scenario names round-trip") {
  for (auto kind : all_scenarios()) {
    CHECK(parse_scenario(scenario_name(kind)) == kind);
  }
  CHECK_THROWS_AS(parse_scenario("bell_zero"), LookupError);
}

TEST_CASE("every scenario's expectations hold under independent checks") {
  for (auto kind : all_scenarios()) {
    CAPTURE(scenario_name(kind));
    const auto sc = build_scenario({kind});
    CHECK(validate_registry(sc.registry).empty());
    CHECK_NOTHROW(check_labels(sc.registry, sc.state));
    CHECK(sc.state.is_normalized());

    const auto check = validate_superselection(sc.registry, sc.state);
    if (sc.expected.sector) {
      REQUIRE(check.valid());
      CHECK(*check.sector == *sc.expected.sector);
    } else {
      CHECK_FALSE(check.valid());
      std::vector<SectorIndex> seen;
      for (const auto& [q, _] : check.weights) seen.push_back(q);
      CHECK(seen == sc.expected.violation_sectors);
      continue;
    }
    const auto rep = analyze_entanglement(sc.registry, sc.state);
    CHECK(rep.defined == sc.expected.entanglement_defined);
    if (sc.expected.packaged_entangled) {
      CHECK(rep.every_cut == *sc.expected.packaged_entangled);
    }
  }
}

TEST_CASE("bell scenarios are orthonormal and conjugation eigenstates") {
  const auto plus = build_scenario({ScenarioKind::bell_plus});
  const auto minus = build_scenario({ScenarioKind::bell_minus});
  CHECK(std::abs(inner_product(plus.state, minus.state)) <= 1e-15);
  CHECK(max_deviation(charge_conjugate(plus.registry, plus.state), plus.state) <= 1e-12);
  CHECK(max_deviation(charge_conjugate(minus.registry, minus.state),
                      minus.state.scaled(-1.0)) <= 1e-12);
}

TEST_CASE("parameterized scenarios") {
  const auto hybrid = build_scenario({ScenarioKind::hybrid_pair, 0.6, 0.8});
  CHECK(hybrid.state.amplitude({{{"e-", 0}, {"e+", 1}}}) == Amplitude{0.6});
  CHECK(hybrid.state.amplitude({{{"e+", 1}, {"e-", 0}}}) == Amplitude{0.8});
  CHECK(*hybrid.expected.packaged_entangled);

  const auto product = build_scenario({ScenarioKind::hybrid_pair, 1.0, 0.0});
  CHECK_FALSE(*product.expected.packaged_entangled);
  CHECK_FALSE(is_packaged_entangled(product.registry, product.state));

  const auto meson = build_scenario({ScenarioKind::meson_superposition, 0.6, Amplitude{0.0, 0.8}});
  CHECK(meson.state.registers() == 1);
  CHECK_FALSE(meson.expected.entanglement_defined);

  CHECK_THROWS_AS(build_scenario({ScenarioKind::hybrid_pair, 0.6, 0.6}), DomainError);
  CHECK_THROWS_AS(build_scenario({ScenarioKind::meson_superposition, 1.0, 1.0}), DomainError);
}
