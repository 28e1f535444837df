#include "superselect/charges.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "superselect/errors.hpp"

namespace superselect {

std::string_view to_string(ChargeKind kind) {
  return kind == ChargeKind::gauged ? "gauged" : "global";
}

bool ChargeVector::is_zero() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](std::int64_t c) { return c == 0; });
}

ChargeVector ChargeVector::operator-() const {
  std::vector<std::int64_t> out(components_.size());
  std::transform(components_.begin(), components_.end(), out.begin(),
                 [](std::int64_t c) { return -c; });
  return ChargeVector(std::move(out));
}

ChargeVector add_charges(const ChargeVector& a, const ChargeVector& b) {
  if (a.arity() != b.arity()) {
    throw ConfigurationError("charge arity mismatch: " +
                             std::to_string(a.arity()) + " vs " +
                             std::to_string(b.arity()));
  }
  std::vector<std::int64_t> out(a.arity());
  for (std::size_t i = 0; i < a.arity(); ++i) out[i] = a[i] + b[i];
  return ChargeVector(std::move(out));
}

std::string to_string(const ChargeVector& q) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < q.arity(); ++i) {
    if (i) os << ',';
    os << q[i];
  }
  os << ')';
  return os.str();
}

SpeciesRegistry::SpeciesRegistry(std::vector<ChargeComponentSpec> charge_specs,
                                 std::vector<Species> species)
    : charge_specs_(std::move(charge_specs)), species_(std::move(species)) {
  // First occurrence wins on duplicate ids; validate_registry reports them.
  for (std::size_t i = 0; i < species_.size(); ++i) {
    index_.try_emplace(species_[i].id, i);
  }
  for (std::size_t i = 0; i < charge_specs_.size(); ++i) {
    if (charge_specs_[i].kind == ChargeKind::gauged) gauged_.push_back(i);
  }
}

const Species* SpeciesRegistry::find(std::string_view id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &species_[it->second];
}

const Species& SpeciesRegistry::at(std::string_view id) const {
  if (const Species* s = find(id)) return *s;
  throw LookupError("unknown species '" + std::string(id) + "'");
}

std::size_t SpeciesRegistry::component_index(std::string_view name) const {
  for (std::size_t i = 0; i < charge_specs_.size(); ++i) {
    if (charge_specs_[i].name == name) return i;
  }
  throw LookupError("unknown charge component '" + std::string(name) + "'");
}

std::vector<std::string> SpeciesRegistry::sorted_ids() const {
  std::vector<std::string> ids;
  ids.reserve(index_.size());
  for (const auto& [id, _] : index_) ids.push_back(id);
  return ids;
}

const Species& conjugate_species(const SpeciesRegistry& registry,
                                 std::string_view id) {
  const Species& s = registry.at(id);
  const Species* partner = registry.find(s.conjugate_id);
  if (partner == nullptr) {
    throw LookupError("species '" + s.id + "' has unresolved conjugate '" +
                      s.conjugate_id + "'");
  }
  return *partner;
}

std::vector<RegistryViolation> validate_registry(
    const SpeciesRegistry& registry) {
  std::vector<RegistryViolation> out;
  const std::size_t arity = registry.charge_specs().size();

  std::set<std::string> names;
  for (const auto& spec : registry.charge_specs()) {
    if (!names.insert(spec.name).second) {
      out.push_back({"", "unique component name",
                     "charge component '" + spec.name + "' is declared twice"});
    }
  }

  std::set<std::string> ids;
  for (const auto& s : registry.species()) {
    if (!ids.insert(s.id).second) {
      out.push_back({s.id, "unique species id", "species id declared twice"});
    }
    if (s.charges.arity() != arity) {
      out.push_back({s.id, "charge arity",
                     "has " + std::to_string(s.charges.arity()) +
                         " charges, registry has " + std::to_string(arity) +
                         " components"});
    }
    if (s.spin_multiplicity < 1) {
      out.push_back({s.id, "positive spin multiplicity",
                     "multiplicity is " + std::to_string(s.spin_multiplicity)});
    }
  }

  for (const auto& s : registry.species()) {
    const Species* c = registry.find(s.conjugate_id);
    if (c == nullptr) {
      out.push_back({s.id, "conjugate resolves",
                     "conjugate_id '" + s.conjugate_id + "' is not registered"});
      continue;
    }
    if (c->conjugate_id != s.id) {
      out.push_back({s.id, "conjugation is an involution",
                     "conjugate of '" + c->id + "' is '" + c->conjugate_id +
                         "', not '" + s.id + "'"});
      continue;
    }
    // Pair-level checks are reported once, from the lexicographically
    // smaller member of the pair.
    if (c->id < s.id) continue;
    const std::string pair = s.id == c->id ? s.id : s.id + "/" + c->id;
    if (s.charges.arity() == c->charges.arity() && s.charges != -c->charges) {
      out.push_back({pair, "conjugate charges negated",
                     to_string(s.charges) + " vs " + to_string(c->charges)});
    }
    if (s.spin_multiplicity != c->spin_multiplicity) {
      out.push_back({pair, "conjugate spin multiplicity",
                     std::to_string(s.spin_multiplicity) + " vs " +
                         std::to_string(c->spin_multiplicity)});
    }
  }
  return out;
}

}  // namespace superselect
