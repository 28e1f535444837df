#include <doctest.h>

#include "superselect/charges.hpp"
#include "superselect/errors.hpp"
#include "superselect/scenarios.hpp"

using namespace superselect;

namespace {

SpeciesRegistry with_photon() {
  return SpeciesRegistry({{"electric", ChargeKind::gauged, "e"}},
                         {{"e-", ChargeVector{-1}, 2, "e+"},
                          {"e+", ChargeVector{+1}, 2, "e-"},
                          {"gamma", ChargeVector{0}, 2, "gamma"}});
}

}  // namespace

TEST_CASE("add_charges sums componentwise") {
  CHECK(add_charges(ChargeVector{-1}, ChargeVector{+1}) == ChargeVector{0});
  CHECK(add_charges(ChargeVector{0, 0}, ChargeVector{0, 0}) == ChargeVector{0, 0});
  CHECK(add_charges(ChargeVector{-1}, ChargeVector{-1}) == ChargeVector{-2});
  CHECK((ChargeVector{3, -4} + ChargeVector{-1, 1}) == ChargeVector{2, -3});
  CHECK(-ChargeVector{2, -5} == ChargeVector{-2, 5});
}

TEST_CASE("add_charges rejects arity mismatch") {
  CHECK_THROWS_AS(add_charges(ChargeVector{1}, ChargeVector{1, 0}),
                  ConfigurationError);
}

TEST_CASE("conjugate_species") {
  const auto epm = electron_positron_registry(2);
  const auto& pos = conjugate_species(epm, "e-");
  CHECK(pos.id == "e+");
  CHECK(pos.charges == ChargeVector{+1});

  const auto kaons = neutral_kaon_registry();
  const auto& kbar = conjugate_species(kaons, "K0");
  CHECK(kbar.id == "K0bar");
  CHECK(kbar.charges[0] == 0);
  CHECK(kbar.charges[1] == -kaons.at("K0").charges[1]);
  CHECK(kbar.charges[1] != 0);

  CHECK(conjugate_species(with_photon(), "gamma").id == "gamma");
  CHECK_THROWS_AS(conjugate_species(epm, "mu-"), LookupError);
}

TEST_CASE("validate_registry accepts the standard registries") {
  CHECK(validate_registry(electron_positron_registry(1)).empty());
  CHECK(validate_registry(electron_positron_registry(2)).empty());
  CHECK(validate_registry(neutral_kaon_registry()).empty());
  CHECK(validate_registry(color_toy_registry()).empty());
  CHECK(validate_registry(with_photon()).empty());
}

TEST_CASE("validate_registry reports broken conjugate charges once per pair") {
  SpeciesRegistry r({{"electric", ChargeKind::gauged, "e"}},
                    {{"e-", ChargeVector{-1}, 1, "e+"},
                     {"e+", ChargeVector{-1}, 1, "e-"}});
  const auto v = validate_registry(r);
  REQUIRE(v.size() == 1);
  CHECK(v[0].species == "e+/e-");
  CHECK(v[0].invariant == "conjugate charges negated");
}

TEST_CASE("validate_registry reports a dangling conjugate") {
  SpeciesRegistry r({{"electric", ChargeKind::gauged, "e"}},
                    {{"e-", ChargeVector{-1}, 1, "e+"}});
  const auto v = validate_registry(r);
  REQUIRE(v.size() == 1);
  CHECK(v[0].species == "e-");
  CHECK(v[0].invariant == "conjugate resolves");
}

TEST_CASE("validate_registry catches the remaining invariants") {
  SpeciesRegistry r({{"electric", ChargeKind::gauged, "e"},
                     {"electric", ChargeKind::global, ""}},
                    {{"a", ChargeVector{1, 0}, 1, "b"},
                     {"b", ChargeVector{-1, 0}, 2, "a"},
                     {"c", ChargeVector{0}, 0, "c"},
                     {"d", ChargeVector{0, 0}, 1, "a"},
                     {"gamma", ChargeVector{1, 0}, 1, "gamma"}});
  std::vector<std::string> broken;
  for (const auto& v : validate_registry(r)) broken.push_back(v.invariant);
  auto has = [&](const char* what) {
    return std::find(broken.begin(), broken.end(), what) != broken.end();
  };
  CHECK(has("unique component name"));
  CHECK(has("charge arity"));
  CHECK(has("positive spin multiplicity"));
  CHECK(has("conjugate spin multiplicity"));
  CHECK(has("conjugation is an involution"));
  CHECK(has("conjugate charges negated"));  // self-conjugate but charged
}

TEST_CASE("species invariants hold on every valid registry") {
  for (const auto& r : {electron_positron_registry(2), neutral_kaon_registry(),
                        color_toy_registry(), with_photon()}) {
    REQUIRE(validate_registry(r).empty());
    for (const auto& s : r.species()) {
      const auto& c = conjugate_species(r, s.id);
      CHECK((s.charges + c.charges).is_zero());
      CHECK(conjugate_species(r, c.id).id == s.id);
      CHECK(c.spin_multiplicity == s.spin_multiplicity);
    }
  }
}

TEST_CASE("registry lookups") {
  const auto r = color_toy_registry();
  CHECK(r.component_index("color_b") == 2);
  CHECK_THROWS_AS(r.component_index("hypercharge"), LookupError);
  CHECK(r.gauged_components() == std::vector<std::size_t>{0});
  CHECK(r.sorted_ids() ==
        std::vector<std::string>{"q_a", "q_b", "qbar_a", "qbar_b"});
  CHECK_THROWS_AS(r.at("gluon"), LookupError);
}
