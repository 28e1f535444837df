#include "superselect/fock.hpp"

#include <algorithm>
#include <sstream>

#include "superselect/errors.hpp"

namespace superselect {

SectorIndex operator-(const SectorIndex& q) {
  SectorIndex out = q;
  for (auto& c : out.gauged_charges) c = -c;
  return out;
}

std::string to_string(const RegisterLabel& label) {
  return label.species + ":" + std::to_string(label.spin);
}

std::string to_string(const BasisState& b) {
  std::string out = "[";
  for (std::size_t k = 0; k < b.registers(); ++k) {
    if (k) out += ", ";
    out += to_string(b[k]);
  }
  return out + "]";
}

std::string to_string(const SectorIndex& q) {
  return to_string(ChargeVector(q.gauged_charges));
}

void check_label(const SpeciesRegistry& registry, const RegisterLabel& label) {
  const Species& s = registry.at(label.species);
  if (label.spin < 0 || label.spin >= s.spin_multiplicity) {
    throw DomainError("spin index " + std::to_string(label.spin) +
                      " outside multiplicity " +
                      std::to_string(s.spin_multiplicity) + " of '" + s.id +
                      "'");
  }
}

std::vector<RegisterLabel> local_labels(const SpeciesRegistry& registry,
                                        const SpeciesSubset& allowed) {
  std::vector<std::string> ids;
  if (allowed) {
    if (allowed->empty()) {
      throw ConfigurationError("allowed species subset is empty");
    }
    for (const auto& id : *allowed) registry.at(id);
    ids = *allowed;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  } else {
    ids = registry.sorted_ids();
    if (ids.empty()) throw ConfigurationError("registry has no species");
  }

  std::vector<RegisterLabel> labels;
  for (const auto& id : ids) {
    const int mult = registry.at(id).spin_multiplicity;
    for (int spin = 0; spin < mult; ++spin) labels.push_back({id, spin});
  }
  return labels;
}

std::vector<BasisState> enumerate_basis(const SpeciesRegistry& registry,
                                        std::size_t n,
                                        const SpeciesSubset& allowed) {
  if (n == 0) throw ConfigurationError("register count must be at least 1");
  const auto labels = local_labels(registry, allowed);
  const std::size_t base = labels.size();

  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) total *= base;

  std::vector<BasisState> out;
  out.reserve(total);
  // Odometer over label indices, last register fastest.
  std::vector<std::size_t> digits(n, 0);
  for (std::size_t count = 0; count < total; ++count) {
    BasisState b;
    b.labels.reserve(n);
    for (std::size_t d : digits) b.labels.push_back(labels[d]);
    out.push_back(std::move(b));
    for (std::size_t k = n; k-- > 0;) {
      if (++digits[k] < base) break;
      digits[k] = 0;
    }
  }
  return out;
}

ChargeVector total_charge(const SpeciesRegistry& registry,
                          const BasisState& b) {
  ChargeVector q = ChargeVector::zero(registry.charge_specs().size());
  for (const auto& label : b.labels) {
    q = add_charges(q, registry.at(label.species).charges);
  }
  return q;
}

SectorIndex sector_of(const SpeciesRegistry& registry, const ChargeVector& q) {
  SectorIndex out;
  for (std::size_t i : registry.gauged_components()) {
    out.gauged_charges.push_back(q[i]);
  }
  return out;
}

SectorIndex sector_of(const SpeciesRegistry& registry, const BasisState& b) {
  return sector_of(registry, total_charge(registry, b));
}

std::vector<BasisState> sector_basis(const SpeciesRegistry& registry,
                                     std::size_t n, const SectorIndex& q,
                                     const SpeciesSubset& allowed) {
  if (q.gauged_charges.size() != registry.gauged_components().size()) {
    throw ConfigurationError(
        "sector index has " + std::to_string(q.gauged_charges.size()) +
        " components, registry has " +
        std::to_string(registry.gauged_components().size()) + " gauged");
  }
  auto all = enumerate_basis(registry, n, allowed);
  std::vector<BasisState> out;
  for (auto& b : all) {
    if (sector_of(registry, b) == q) out.push_back(std::move(b));
  }
  return out;
}

}  // namespace superselect
