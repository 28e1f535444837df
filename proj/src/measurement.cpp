#include "superselect/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace superselect {

SpinObservable SpinObservable::spin_z(const SpeciesRegistry& registry,
                                      std::size_t register_index) {
  SpinObservable obs{register_index, {}};
  for (const auto& s : registry.species()) {
    const auto m = static_cast<std::size_t>(std::max(s.spin_multiplicity, 1));
    std::vector<std::vector<Amplitude>> basis(m, std::vector<Amplitude>(m));
    for (std::size_t k = 0; k < m; ++k) basis[k][k] = 1.0;
    obs.bases[s.id] = std::move(basis);
  }
  return obs;
}

SpinObservable SpinObservable::spin_x(const SpeciesRegistry& registry,
                                      std::size_t register_index) {
  SpinObservable obs{register_index, {}};
  const double h = std::numbers::sqrt2 / 2.0;
  for (const auto& s : registry.species()) {
    if (s.spin_multiplicity == 1) {
      obs.bases[s.id] = {{1.0}};
    } else if (s.spin_multiplicity == 2) {
      obs.bases[s.id] = {{h, h}, {h, -h}};
    } else {
      throw ConfigurationError("spin-x is defined for two-state species only; '" +
                               s.id + "' has " +
                               std::to_string(s.spin_multiplicity));
    }
  }
  return obs;
}

void validate_observable(const SpeciesRegistry& registry,
                         const SpinObservable& obs) {
  for (const auto& [id, basis] : obs.bases) {
    const auto m = static_cast<std::size_t>(registry.at(id).spin_multiplicity);
    if (basis.size() != m) {
      throw ConfigurationError("observable basis for '" + id + "' has " +
                               std::to_string(basis.size()) + " vectors, "
                               "expected " + std::to_string(m));
    }
    for (const auto& v : basis) {
      if (v.size() != m) {
        throw ConfigurationError("observable basis vector for '" + id +
                                 "' has dimension " + std::to_string(v.size()));
      }
    }
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        Amplitude g{};
        for (std::size_t j = 0; j < m; ++j) g += std::conj(basis[a][j]) * basis[b][j];
        if (std::abs(g - (a == b ? 1.0 : 0.0)) > 1e-10) {
          throw ConfigurationError("observable basis for '" + id +
                                   "' is not orthonormal");
        }
      }
    }
  }
}

std::vector<MeasurementRecord> measure_spin(const SpeciesRegistry& registry,
                                            const StateVector& s,
                                            const SpinObservable& obs) {
  check_labels(registry, s);
  if (!s.is_normalized()) {
    throw DomainError("measurement requires a normalized state (norm " +
                      std::to_string(s.norm()) + ")");
  }
  require_single_sector(registry, s);
  const std::size_t reg = obs.register_index;
  if (reg >= s.registers()) {
    throw DomainError("register " + std::to_string(reg) + " out of range for " +
                      std::to_string(s.registers()) + " registers");
  }
  validate_observable(registry, obs);

  // Group terms by everything except the measured spin; each group carries
  // the local spin-space vector of one species at the measured register.
  struct Group {
    const std::vector<std::vector<Amplitude>>* basis;
    std::vector<Amplitude> local;
  };
  std::map<BasisState, Group> groups;
  std::size_t outcomes = 0;
  for (const auto& [b, a] : s.terms()) {
    const auto& species = b[reg].species;
    auto it = obs.bases.find(species);
    if (it == obs.bases.end()) {
      throw ConfigurationError("observable has no basis for species '" +
                               species + "'");
    }
    BasisState rest = b;
    rest.labels[reg].spin = 0;
    auto [g, fresh] = groups.try_emplace(std::move(rest));
    if (fresh) {
      g->second.basis = &it->second;
      g->second.local.assign(it->second.size(), Amplitude{});
    }
    g->second.local[static_cast<std::size_t>(b[reg].spin)] += a;
    outcomes = std::max(outcomes, it->second.size());
  }

  std::vector<MeasurementRecord> records;
  for (std::size_t k = 0; k < outcomes; ++k) {
    std::vector<std::pair<BasisState, Amplitude>> terms;
    for (const auto& [rest, g] : groups) {
      if (k >= g.basis->size()) continue;
      const auto& e = (*g.basis)[k];
      Amplitude coef{};
      for (std::size_t j = 0; j < e.size(); ++j) coef += std::conj(e[j]) * g.local[j];
      for (std::size_t j = 0; j < e.size(); ++j) {
        BasisState b = rest;
        b.labels[reg].spin = static_cast<int>(j);
        terms.emplace_back(std::move(b), e[j] * coef);
      }
    }
    StateVector projected(s.registers(), terms);
    if (projected.empty()) continue;
    const double p = projected.squared_norm();
    records.push_back({k, p, projected.normalized()});
  }
  return records;
}

MeasurementRecord sample_measurement(const SpeciesRegistry& registry,
                                     const StateVector& s,
                                     const SpinObservable& obs,
                                     std::mt19937_64& rng) {
  auto records = measure_spin(registry, s, obs);
  double total = 0.0;
  for (const auto& r : records) total += r.probability;
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
  double acc = 0.0;
  for (auto& r : records) {
    acc += r.probability;
    if (u < acc) return std::move(r);
  }
  return std::move(records.back());
}

MeasurementRecord sample_measurement(const SpeciesRegistry& registry,
                                     const StateVector& s,
                                     const SpinObservable& obs,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_measurement(registry, s, obs, rng);
}

SectorIndex read_total_charge(const SpeciesRegistry& registry,
                              const StateVector& s) {
  check_labels(registry, s);
  return require_single_sector(registry, s);
}

}  // namespace superselect
