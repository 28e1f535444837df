#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "superselect/state.hpp"

namespace superselect {

/// Projective measurement of the spin (external) label of one register.
/// Each species gets its own orthonormal basis of its spin space; outcome k
/// projects onto the k-th vector of whichever species occupies the register.
struct SpinObservable {
  std::size_t register_index = 0;
  std::map<std::string, std::vector<std::vector<Amplitude>>> bases;

  /// Standard basis for every species of the registry.
  static SpinObservable spin_z(const SpeciesRegistry& registry,
                               std::size_t register_index);
  /// (|0> +/- |1>)/sqrt(2) for two-state species, trivial for one-state ones.
  /// Throws ConfigurationError if some species has more than two spin states.
  static SpinObservable spin_x(const SpeciesRegistry& registry,
                               std::size_t register_index);
};

/// Throws ConfigurationError unless each basis has the species' multiplicity
/// as size and dimension and is unitary within 1e-10.
void validate_observable(const SpeciesRegistry& registry,
                         const SpinObservable& obs);

struct MeasurementRecord {
  std::size_t outcome = 0;
  double probability = 0.0;
  StateVector post_state{1};
};

/// Born-rule outcome distribution with renormalized post-measurement states,
/// ordered by outcome. Outcomes of zero probability are omitted. The state
/// must be normalized (DomainError) and in one sector (SuperselectionError).
std::vector<MeasurementRecord> measure_spin(const SpeciesRegistry& registry,
                                            const StateVector& s,
                                            const SpinObservable& obs);

/// One outcome drawn from measure_spin's distribution.
MeasurementRecord sample_measurement(const SpeciesRegistry& registry,
                                     const StateVector& s,
                                     const SpinObservable& obs,
                                     std::uint64_t seed);
MeasurementRecord sample_measurement(const SpeciesRegistry& registry,
                                     const StateVector& s,
                                     const SpinObservable& obs,
                                     std::mt19937_64& rng);

/// Net gauged charge of the whole state. This is the only charge readout on
/// offer; a single register's charge cannot be measured apart from its
/// species.
SectorIndex read_total_charge(const SpeciesRegistry& registry,
                              const StateVector& s);

}  // namespace superselect
