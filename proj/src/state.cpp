#include "superselect/state.hpp"

#include <algorithm>
#include <cmath>

namespace superselect {

namespace {

void prune(StateVector::Terms& terms) {
  std::erase_if(terms, [](const auto& kv) {
    return std::abs(kv.second) < kPruneTolerance;
  });
}

std::string describe(const std::vector<std::pair<SectorIndex, double>>& w) {
  std::string out = "state spans " + std::to_string(w.size()) + " sectors:";
  for (const auto& [q, weight] : w) {
    out += " " + to_string(q) + "@" + std::to_string(weight);
  }
  return out;
}

}  // namespace

StateVector::StateVector(
    std::size_t registers,
    std::span<const std::pair<BasisState, Amplitude>> terms)
    : registers_(registers) {
  for (const auto& [b, a] : terms) {
    if (b.registers() != registers_) {
      throw ShapeError("basis state " + to_string(b) + " has " +
                       std::to_string(b.registers()) + " registers, expected " +
                       std::to_string(registers_));
    }
    terms_[b] += a;
  }
  prune(terms_);
}

StateVector StateVector::basis(const BasisState& b, Amplitude a) {
  const std::pair<BasisState, Amplitude> term{b, a};
  return StateVector(b.registers(), std::span(&term, 1));
}

Amplitude StateVector::amplitude(const BasisState& b) const {
  auto it = terms_.find(b);
  return it == terms_.end() ? Amplitude{} : it->second;
}

double StateVector::squared_norm() const {
  double sum = 0.0;
  for (const auto& [_, a] : terms_) sum += std::norm(a);
  return sum;
}

double StateVector::norm() const { return std::sqrt(squared_norm()); }

bool StateVector::is_normalized() const {
  return std::abs(norm() - 1.0) <= kNormTolerance;
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (terms_.empty() || n == 0.0) {
    throw DomainError("cannot normalize the zero state");
  }
  return scaled(1.0 / n);
}

StateVector StateVector::scaled(Amplitude factor) const {
  StateVector out(registers_);
  for (const auto& [b, a] : terms_) out.terms_.emplace_hint(out.terms_.end(), b, a * factor);
  prune(out.terms_);
  return out;
}

StateVector superpose(
    std::span<const std::pair<Amplitude, StateVector>> parts) {
  if (parts.empty()) throw ShapeError("superpose needs at least one state");
  const std::size_t n = parts.front().second.registers();
  std::vector<std::pair<BasisState, Amplitude>> terms;
  for (const auto& [c, s] : parts) {
    if (s.registers() != n) {
      throw ShapeError("superpose: register counts " + std::to_string(n) +
                       " and " + std::to_string(s.registers()) + " differ");
    }
    for (const auto& [b, a] : s.terms()) terms.emplace_back(b, c * a);
  }
  return StateVector(n, terms);
}

StateVector superpose(
    std::initializer_list<std::pair<Amplitude, StateVector>> parts) {
  return superpose(std::span(parts.begin(), parts.size()));
}

Amplitude inner_product(const StateVector& a, const StateVector& b) {
  if (a.registers() != b.registers()) {
    throw ShapeError("inner product of states with " +
                     std::to_string(a.registers()) + " and " +
                     std::to_string(b.registers()) + " registers");
  }
  Amplitude sum{};
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  for (const auto& [basis, amp] : small.terms()) {
    auto it = large.terms().find(basis);
    if (it == large.terms().end()) continue;
    sum += &small == &a ? std::conj(amp) * it->second
                        : std::conj(it->second) * amp;
  }
  return sum;
}

double max_deviation(const StateVector& a, const StateVector& b) {
  double worst = 0.0;
  for (const auto& [basis, amp] : a.terms()) {
    worst = std::max(worst, std::abs(amp - b.amplitude(basis)));
  }
  for (const auto& [basis, amp] : b.terms()) {
    worst = std::max(worst, std::abs(amp - a.amplitude(basis)));
  }
  return worst;
}

void check_labels(const SpeciesRegistry& registry, const StateVector& s) {
  for (const auto& [b, _] : s.terms()) {
    for (const auto& label : b.labels) check_label(registry, label);
  }
}

SectorDecomposition sector_decompose(const SpeciesRegistry& registry,
                                     const StateVector& s) {
  std::map<SectorIndex, std::vector<std::pair<BasisState, Amplitude>>> groups;
  for (const auto& [b, a] : s.terms()) {
    groups[sector_of(registry, b)].emplace_back(b, a);
  }
  SectorDecomposition out;
  for (auto& [q, terms] : groups) {
    StateVector part(s.registers(), terms);
    const double w = part.squared_norm();
    out.emplace(q, SectorPart{std::move(part), w});
  }
  return out;
}

SuperselectionCheck validate_superselection(const SpeciesRegistry& registry,
                                            const StateVector& s) {
  if (s.empty()) {
    throw DomainError("superselection is undefined for the zero state");
  }
  SuperselectionCheck check;
  for (const auto& [q, part] : sector_decompose(registry, s)) {
    check.weights.emplace_back(q, part.weight);
  }
  if (check.weights.size() == 1) check.sector = check.weights.front().first;
  return check;
}

SuperselectionError::SuperselectionError(
    std::vector<std::pair<SectorIndex, double>> weights)
    : Error(describe(weights)), weights_(std::move(weights)) {}

SectorIndex require_single_sector(const SpeciesRegistry& registry,
                                  const StateVector& s) {
  auto check = validate_superselection(registry, s);
  if (!check.valid()) throw SuperselectionError(std::move(check.weights));
  return *check.sector;
}

StateVector apply_u1_gauge(const SpeciesRegistry& registry,
                           const StateVector& s, std::string_view component,
                           double theta) {
  const std::size_t c = registry.component_index(component);
  if (registry.charge_specs()[c].kind != ChargeKind::gauged) {
    throw ConfigurationError("charge component '" + std::string(component) +
                             "' is global; only gauged components generate "
                             "gauge transformations");
  }
  std::vector<std::pair<BasisState, Amplitude>> terms;
  terms.reserve(s.size());
  for (const auto& [b, a] : s.terms()) {
    const auto q = static_cast<double>(total_charge(registry, b)[c]);
    terms.emplace_back(b, a * std::polar(1.0, q * theta));
  }
  return StateVector(s.registers(), terms);
}

StateVector charge_conjugate(const SpeciesRegistry& registry,
                             const StateVector& s) {
  std::vector<std::pair<BasisState, Amplitude>> terms;
  terms.reserve(s.size());
  for (const auto& [b, a] : s.terms()) {
    BasisState image = b;
    for (auto& label : image.labels) {
      label.species = conjugate_species(registry, label.species).id;
    }
    terms.emplace_back(std::move(image), a);
  }
  return StateVector(s.registers(), terms);
}

}  // namespace superselect
