#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "superselect/state.hpp"

namespace superselect {

enum class ScenarioKind {
  bell_plus,
  bell_minus,
  hybrid_pair,
  forbidden_pm2e,
  meson_superposition,
  color_singlet_toy,
};

/// Scenario name plus the (alpha, beta) amplitudes used by the two
/// parameterized kinds. Other kinds ignore the amplitudes.
struct ScenarioId {
  ScenarioKind kind = ScenarioKind::bell_plus;
  Amplitude alpha{std::numbers::sqrt2 / 2.0};
  Amplitude beta{std::numbers::sqrt2 / 2.0};
};

std::string_view scenario_name(ScenarioKind kind);
/// Throws LookupError for an unknown name.
ScenarioKind parse_scenario(std::string_view name);
std::vector<ScenarioKind> all_scenarios();

/// What the independent modules are expected to find for a scenario.
struct ScenarioExpectation {
  std::optional<SectorIndex> sector;          // set when the state is physical
  std::vector<SectorIndex> violation_sectors;  // set when it is not
  bool entanglement_defined = false;
  std::optional<bool> packaged_entangled;
  std::vector<std::string> flags;
};

struct Scenario {
  ScenarioId id;
  SpeciesRegistry registry;
  StateVector state{1};
  ScenarioExpectation expected;
};

/// Throws DomainError when |alpha|^2 + |beta|^2 is not 1 within 1e-9.
Scenario build_scenario(const ScenarioId& id);

/// e- / e+ with one gauged electric component in units of e.
SpeciesRegistry electron_positron_registry(int spin_multiplicity);
/// K0 / K0bar: electric charge (gauged) zero, strangeness (global) +/-1.
SpeciesRegistry neutral_kaon_registry();
/// Quark / antiquark toy with two global color-like labels.
SpeciesRegistry color_toy_registry();

/// alpha |e-:up, e+:s> + beta |e+:s, e-:up> over spin-1/2 e-/e+, with up = 0
/// and s = 1 (anti-correlated spins) or s = 0 (aligned spins).
StateVector hybrid_pair_state(Amplitude alpha, Amplitude beta,
                              bool aligned_spins = false);

}  // namespace superselect
