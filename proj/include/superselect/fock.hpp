#pragma once

// Fixed-register product basis. Register k holds exactly one excitation,
// identified by a species and a spin index; registers are distinguishable
// slots (momentum labels), so no exchange symmetrization is applied.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "superselect/charges.hpp"

namespace superselect {

struct RegisterLabel {
  std::string species;
  int spin = 0;

  auto operator<=>(const RegisterLabel&) const = default;
};

/// One label per register. Ordering is lexicographic over registers, which
/// gives the documented basis order (register-major, species id, spin).
struct BasisState {
  std::vector<RegisterLabel> labels;

  std::size_t registers() const { return labels.size(); }
  const RegisterLabel& operator[](std::size_t k) const { return labels[k]; }

  auto operator<=>(const BasisState&) const = default;
};

/// Net charge restricted to the gauged components.
struct SectorIndex {
  std::vector<std::int64_t> gauged_charges;

  auto operator<=>(const SectorIndex&) const = default;
};

SectorIndex operator-(const SectorIndex& q);

std::string to_string(const RegisterLabel& label);
std::string to_string(const BasisState& b);
std::string to_string(const SectorIndex& q);

using SpeciesSubset = std::optional<std::vector<std::string>>;

/// Throws LookupError for unknown species, DomainError for a spin index
/// outside the species' multiplicity.
void check_label(const SpeciesRegistry& registry, const RegisterLabel& label);

/// Every (species, spin) label of the allowed species, in basis order.
std::vector<RegisterLabel> local_labels(const SpeciesRegistry& registry,
                                        const SpeciesSubset& allowed = {});

/// All product states over `n` registers, in basis order.
std::vector<BasisState> enumerate_basis(const SpeciesRegistry& registry,
                                        std::size_t n,
                                        const SpeciesSubset& allowed = {});

ChargeVector total_charge(const SpeciesRegistry& registry, const BasisState& b);

/// Gauged projection of a full charge vector.
SectorIndex sector_of(const SpeciesRegistry& registry, const ChargeVector& q);
SectorIndex sector_of(const SpeciesRegistry& registry, const BasisState& b);

/// The product states of enumerate_basis whose gauged charge equals `q`.
std::vector<BasisState> sector_basis(const SpeciesRegistry& registry,
                                     std::size_t n, const SectorIndex& q,
                                     const SpeciesSubset& allowed = {});

}  // namespace superselect
