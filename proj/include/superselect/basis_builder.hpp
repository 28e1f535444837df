#pragma once

// Orthonormal bases of a charge sector made entirely of packaged entangled
// states. The construction starts from the product basis of the sector,
// seeds it with pairwise (a +/- b)/sqrt(2) combinations, orthonormalizes by
// Gram-Schmidt, and then repairs any vector that still factorizes across
// some cut by rotating it against another basis vector. Plane rotations
// inside an orthonormal set keep both the span and orthonormality, so only
// the entanglement predicate has to be rechecked after each repair.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "superselect/state.hpp"

namespace superselect {

struct BuilderConfig {
  double ortho_tolerance = 1e-9;
  int max_repair_attempts = 64;
  std::uint64_t rng_seed = 0;

  /// Throws ConfigurationError on a non-positive tolerance or attempt count.
  void validate() const;
};

struct RepairStep {
  std::size_t partner = 0;
  double angle = 0.0;
  bool accepted = false;
};

struct VectorDiagnostics {
  bool seeded_entangled = false;
  std::vector<RepairStep> repairs;
  bool entangled = false;
};

struct EntangledBasis {
  std::vector<StateVector> vectors;
  SectorIndex sector;
  std::size_t registers = 0;
  SpeciesSubset allowed;
  BuilderConfig config;
  std::vector<VectorDiagnostics> diagnostics;  // one per vector
  /// Set when the sector admits no entangled vector at all: a single
  /// register, or a one-dimensional sector.
  bool degenerate = false;
  std::vector<std::size_t> separable;  // indices failing the predicate
};

/// Throws DomainError for an empty sector and BuilderError when a vector
/// cannot be made entangled within cfg.max_repair_attempts rotations.
EntangledBasis build_packaged_entangled_basis(
    const SpeciesRegistry& registry, std::size_t registers,
    const SectorIndex& sector, const BuilderConfig& cfg = {},
    const SpeciesSubset& allowed = {});

struct BasisFinding {
  enum class Kind { count, norm, orthogonality, span, sector, entanglement };
  Kind kind;
  std::optional<std::size_t> index;
  std::string detail;
};

std::string to_string(BasisFinding::Kind kind);

/// Rechecks every EntangledBasis invariant from scratch. Empty iff all hold.
std::vector<BasisFinding> verify_basis(const EntangledBasis& basis,
                                       const SpeciesRegistry& registry);

/// Frobenius distance between the projector onto `vectors` and the projector
/// onto the sector, both written in the product basis.
double span_deviation(const std::vector<StateVector>& vectors,
                      const std::vector<BasisState>& sector);

}  // namespace superselect
