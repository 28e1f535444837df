#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "superselect/errors.hpp"
#include "superselect/fock.hpp"

namespace superselect {

using Amplitude = std::complex<double>;

/// Amplitudes with magnitude below this are never stored.
inline constexpr double kPruneTolerance = 1e-12;
/// A state counts as normalized when | ||psi|| - 1 | <= kNormTolerance.
inline constexpr double kNormTolerance = 1e-9;

/// Finite superposition of product states over a fixed number of registers.
/// Immutable once constructed.
class StateVector {
 public:
  using Terms = std::map<BasisState, Amplitude>;

  explicit StateVector(std::size_t registers) : registers_(registers) {}
  /// Merges repeated keys and prunes small amplitudes. Throws ShapeError if
  /// a key does not have `registers` labels.
  StateVector(std::size_t registers,
              std::span<const std::pair<BasisState, Amplitude>> terms);
  StateVector(std::size_t registers,
              std::initializer_list<std::pair<BasisState, Amplitude>> terms)
      : StateVector(registers, std::span(terms.begin(), terms.size())) {}

  static StateVector basis(const BasisState& b, Amplitude a = 1.0);

  std::size_t registers() const { return registers_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Amplitude amplitude(const BasisState& b) const;

  double squared_norm() const;
  double norm() const;
  bool is_normalized() const;

  /// Throws DomainError on the zero state.
  StateVector normalized() const;
  StateVector scaled(Amplitude factor) const;

  bool operator==(const StateVector&) const = default;

 private:
  std::size_t registers_;
  Terms terms_;
};

/// Linear combination sum_i c_i |psi_i>. Throws ShapeError on mixed
/// register counts or an empty input list.
StateVector superpose(std::span<const std::pair<Amplitude, StateVector>> parts);
StateVector superpose(
    std::initializer_list<std::pair<Amplitude, StateVector>> parts);

/// <a|b>, conjugate-linear in `a`.
Amplitude inner_product(const StateVector& a, const StateVector& b);

/// Largest |a_k - b_k| over the union of both supports.
double max_deviation(const StateVector& a, const StateVector& b);

/// Throws LookupError/DomainError when any label does not resolve.
void check_labels(const SpeciesRegistry& registry, const StateVector& s);

struct SectorPart {
  StateVector state;
  double weight = 0.0;  // squared norm of `state`
};

using SectorDecomposition = std::map<SectorIndex, SectorPart>;

/// Groups terms by gauged total charge. The parts sum back to `s` exactly.
SectorDecomposition sector_decompose(const SpeciesRegistry& registry,
                                     const StateVector& s);

/// Result of a superselection check: a unique sector, or every sector the
/// state touches with its weight.
struct SuperselectionCheck {
  std::optional<SectorIndex> sector;
  std::vector<std::pair<SectorIndex, double>> weights;

  bool valid() const { return sector.has_value(); }
};

/// Throws DomainError on the zero state.
SuperselectionCheck validate_superselection(const SpeciesRegistry& registry,
                                            const StateVector& s);

/// Raised by physical entry points given a state spanning several sectors.
class SuperselectionError : public Error {
 public:
  explicit SuperselectionError(
      std::vector<std::pair<SectorIndex, double>> weights);
  const std::vector<std::pair<SectorIndex, double>>& weights() const {
    return weights_;
  }

 private:
  std::vector<std::pair<SectorIndex, double>> weights_;
};

/// validate_superselection, throwing SuperselectionError on violation.
SectorIndex require_single_sector(const SpeciesRegistry& registry,
                                  const StateVector& s);

/// U(1) rotation generated by one gauged component: each term picks up
/// exp(+i q theta) with q its total charge in that component. Throws
/// ConfigurationError for a global component, LookupError for an unknown one.
StateVector apply_u1_gauge(const SpeciesRegistry& registry,
                           const StateVector& s, std::string_view component,
                           double theta);

/// Replaces every species by its conjugate; spins and amplitudes unchanged.
StateVector charge_conjugate(const SpeciesRegistry& registry,
                             const StateVector& s);

}  // namespace superselect
