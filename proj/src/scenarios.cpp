#include "superselect/scenarios.hpp"

#include <array>
#include <cmath>

namespace superselect {

namespace {

constexpr std::array kNames{
    std::pair{ScenarioKind::bell_plus, std::string_view{"bell_plus"}},
    std::pair{ScenarioKind::bell_minus, std::string_view{"bell_minus"}},
    std::pair{ScenarioKind::hybrid_pair, std::string_view{"hybrid_pair"}},
    std::pair{ScenarioKind::forbidden_pm2e, std::string_view{"forbidden_pm2e"}},
    std::pair{ScenarioKind::meson_superposition,
              std::string_view{"meson_superposition"}},
    std::pair{ScenarioKind::color_singlet_toy,
              std::string_view{"color_singlet_toy"}},
};

BasisState labels(std::initializer_list<RegisterLabel> l) { return {l}; }

void check_amplitudes(const ScenarioId& id) {
  const double total = std::norm(id.alpha) + std::norm(id.beta);
  if (std::abs(total - 1.0) > 1e-9) {
    throw DomainError("scenario amplitudes are not normalized: |alpha|^2 + "
                      "|beta|^2 = " + std::to_string(total));
  }
}

}  // namespace

std::string_view scenario_name(ScenarioKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

ScenarioKind parse_scenario(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  throw LookupError("unknown scenario '" + std::string(name) + "'");
}

std::vector<ScenarioKind> all_scenarios() {
  std::vector<ScenarioKind> out;
  for (const auto& [k, _] : kNames) out.push_back(k);
  return out;
}

SpeciesRegistry electron_positron_registry(int spin_multiplicity) {
  return SpeciesRegistry(
      {{"electric", ChargeKind::gauged, "e"}},
      {{"e-", ChargeVector{-1}, spin_multiplicity, "e+"},
       {"e+", ChargeVector{+1}, spin_multiplicity, "e-"}});
}

SpeciesRegistry neutral_kaon_registry() {
  return SpeciesRegistry(
      {{"electric", ChargeKind::gauged, "e"},
       {"strangeness", ChargeKind::global, ""}},
      {{"K0", ChargeVector{0, +1}, 1, "K0bar"},
       {"K0bar", ChargeVector{0, -1}, 1, "K0"}});
}

SpeciesRegistry color_toy_registry() {
  // Electric charge in units of e/3; color_a / color_b stand in for two
  // color labels and are additive only.
  return SpeciesRegistry(
      {{"electric", ChargeKind::gauged, "e/3"},
       {"color_a", ChargeKind::global, ""},
       {"color_b", ChargeKind::global, ""}},
      {{"q_a", ChargeVector{2, 1, 0}, 1, "qbar_a"},
       {"q_b", ChargeVector{2, 0, 1}, 1, "qbar_b"},
       {"qbar_a", ChargeVector{-2, -1, 0}, 1, "q_a"},
       {"qbar_b", ChargeVector{-2, 0, -1}, 1, "q_b"}});
}

StateVector hybrid_pair_state(Amplitude alpha, Amplitude beta,
                              bool aligned_spins) {
  const int s = aligned_spins ? 0 : 1;
  return StateVector(2, {{labels({{"e-", 0}, {"e+", s}}), alpha},
                         {labels({{"e+", s}, {"e-", 0}}), beta}});
}

Scenario build_scenario(const ScenarioId& id) {
  const double h = std::numbers::sqrt2 / 2.0;
  Scenario out;
  out.id = id;
  auto& ex = out.expected;

  switch (id.kind) {
    case ScenarioKind::bell_plus:
    case ScenarioKind::bell_minus: {
      const double sign = id.kind == ScenarioKind::bell_plus ? 1.0 : -1.0;
      out.registry = electron_positron_registry(1);
      out.state = StateVector(2, {{labels({{"e-", 0}, {"e+", 0}}), h},
                                  {labels({{"e+", 0}, {"e-", 0}}), sign * h}});
      ex.sector = SectorIndex{{0}};
      ex.entanglement_defined = true;
      ex.packaged_entangled = true;
      break;
    }
    case ScenarioKind::hybrid_pair: {
      check_amplitudes(id);
      out.registry = electron_positron_registry(2);
      out.state = hybrid_pair_state(id.alpha, id.beta);
      ex.sector = SectorIndex{{0}};
      ex.entanglement_defined = true;
      ex.packaged_entangled = std::abs(id.alpha) > kPruneTolerance &&
                              std::abs(id.beta) > kPruneTolerance;
      ex.flags.push_back("hybrid_spin_charge");
      break;
    }
    case ScenarioKind::forbidden_pm2e: {
      out.registry = electron_positron_registry(1);
      out.state = StateVector(2, {{labels({{"e-", 0}, {"e-", 0}}), h},
                                  {labels({{"e+", 0}, {"e+", 0}}), h}});
      ex.violation_sectors = {SectorIndex{{-2}}, SectorIndex{{2}}};
      ex.flags.push_back("superselection_violation");
      break;
    }
    case ScenarioKind::meson_superposition: {
      check_amplitudes(id);
      out.registry = neutral_kaon_registry();
      out.state = StateVector(1, {{labels({{"K0", 0}}), id.alpha},
                                  {labels({{"K0bar", 0}}), id.beta}});
      ex.sector = SectorIndex{{0}};
      ex.entanglement_defined = false;
      ex.flags.push_back("single_register");
      break;
    }
    case ScenarioKind::color_singlet_toy: {
      out.registry = color_toy_registry();
      out.state = StateVector(2, {{labels({{"q_a", 0}, {"qbar_a", 0}}), h},
                                  {labels({{"q_b", 0}, {"qbar_b", 0}}), h}});
      ex.sector = SectorIndex{{0}};
      ex.entanglement_defined = true;
      ex.packaged_entangled = true;
      ex.flags.push_back("toy_color_not_su3");
      break;
    }
  }
  return out;
}

}  // namespace superselect
