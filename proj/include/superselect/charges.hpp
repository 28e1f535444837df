#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace superselect {

enum class ChargeKind { gauged, global };

std::string_view to_string(ChargeKind kind);

/// One additive charge component. Gauged components define superselection
/// sectors; global ones (flavor, toy color) only label species.
struct ChargeComponentSpec {
  std::string name;
  ChargeKind kind = ChargeKind::gauged;
  std::string unit;  // documentation only
};

/// Integer charges, one entry per component of the owning registry.
class ChargeVector {
 public:
  ChargeVector() = default;
  explicit ChargeVector(std::vector<std::int64_t> components)
      : components_(std::move(components)) {}
  ChargeVector(std::initializer_list<std::int64_t> components)
      : components_(components) {}

  static ChargeVector zero(std::size_t arity) {
    return ChargeVector(std::vector<std::int64_t>(arity, 0));
  }

  std::size_t arity() const { return components_.size(); }
  std::int64_t operator[](std::size_t i) const { return components_[i]; }
  const std::vector<std::int64_t>& components() const { return components_; }
  bool is_zero() const;

  ChargeVector operator-() const;

  auto operator<=>(const ChargeVector&) const = default;

 private:
  std::vector<std::int64_t> components_;
};

/// Componentwise sum. Throws ConfigurationError on arity mismatch.
ChargeVector add_charges(const ChargeVector& a, const ChargeVector& b);

inline ChargeVector operator+(const ChargeVector& a, const ChargeVector& b) {
  return add_charges(a, b);
}

std::string to_string(const ChargeVector& q);

/// A particle species: one indivisible block of internal quantum numbers.
/// The charges are a property of the species and cannot be split off from
/// it; a register label therefore only ever names a species.
struct Species {
  std::string id;
  ChargeVector charges;
  int spin_multiplicity = 1;
  std::string conjugate_id;
};

struct RegistryViolation {
  std::string species;
  std::string invariant;
  std::string detail;
};

/// Charge components and species known to a simulation. Construction does
/// not enforce the species invariants; use validate_registry for that.
class SpeciesRegistry {
 public:
  SpeciesRegistry() = default;
  SpeciesRegistry(std::vector<ChargeComponentSpec> charge_specs,
                  std::vector<Species> species);

  const std::vector<ChargeComponentSpec>& charge_specs() const {
    return charge_specs_;
  }
  const std::vector<Species>& species() const { return species_; }

  /// nullptr when the id is unknown.
  const Species* find(std::string_view id) const;
  /// Throws LookupError when the id is unknown.
  const Species& at(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }

  /// Throws LookupError when no component has that name.
  std::size_t component_index(std::string_view name) const;
  /// Positions of the gauged components, in registry order.
  const std::vector<std::size_t>& gauged_components() const {
    return gauged_;
  }

  /// Species ids in lexicographic order.
  std::vector<std::string> sorted_ids() const;

 private:
  std::vector<ChargeComponentSpec> charge_specs_;
  std::vector<Species> species_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::size_t> gauged_;
};

/// Charge conjugation at the species level. Throws LookupError when `id` or
/// its partner does not resolve.
const Species& conjugate_species(const SpeciesRegistry& registry,
                                 std::string_view id);

/// Empty iff every species and registry invariant holds.
std::vector<RegistryViolation> validate_registry(
    const SpeciesRegistry& registry);

}  // namespace superselect
