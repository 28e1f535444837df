#include "superselect/basis_builder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "superselect/entanglement.hpp"

namespace superselect {

namespace {

StateVector to_state(const std::vector<BasisState>& basis,
                     const Eigen::VectorXcd& v) {
  std::vector<std::pair<BasisState, Amplitude>> terms;
  terms.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    terms.emplace_back(basis[i], v(static_cast<Eigen::Index>(i)));
  }
  return StateVector(basis.front().registers(), terms);
}

bool entangled_everywhere(const std::vector<BasisState>& basis,
                          const Eigen::VectorXcd& v) {
  return entanglement_report(to_state(basis, v)).every_cut;
}

// Number of cuts with Schmidt rank above one.
std::size_t entangled_cuts(const std::vector<BasisState>& basis,
                           const Eigen::VectorXcd& v) {
  std::size_t count = 0;
  for (const auto& c : entanglement_report(to_state(basis, v)).cuts) {
    count += c.schmidt.rank > 1;
  }
  return count;
}

// Modified Gram-Schmidt with one reorthogonalization pass, in place.
void orthonormalize(std::vector<Eigen::VectorXcd>& vs) {
  for (std::size_t k = 0; k < vs.size(); ++k) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < k; ++j) {
        vs[k] -= vs[j].dot(vs[k]) * vs[j];
      }
    }
    const double norm = vs[k].norm();
    if (norm < 1e-12) {
      throw BuilderError("seed vector " + std::to_string(k) +
                         " is linearly dependent on its predecessors");
    }
    vs[k] /= norm;
  }
}

// Uniform double in [0, 1) from the top 53 bits.
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

void BuilderConfig::validate() const {
  if (!(ortho_tolerance > 0.0)) {
    throw ConfigurationError("ortho_tolerance must be positive");
  }
  if (max_repair_attempts < 1) {
    throw ConfigurationError("max_repair_attempts must be at least 1");
  }
}

EntangledBasis build_packaged_entangled_basis(const SpeciesRegistry& registry,
                                              std::size_t registers,
                                              const SectorIndex& sector,
                                              const BuilderConfig& cfg,
                                              const SpeciesSubset& allowed) {
  cfg.validate();
  const auto product = sector_basis(registry, registers, sector, allowed);
  if (product.empty()) {
    throw DomainError("sector " + to_string(sector) + " is empty for " +
                      std::to_string(registers) + " registers");
  }
  const std::size_t d = product.size();
  const auto dim = static_cast<Eigen::Index>(d);

  std::vector<Eigen::VectorXcd> vs;
  vs.reserve(d);
  const double h = std::numbers::sqrt2 / 2.0;
  for (std::size_t k = 0; k + 1 < d; k += 2) {
    const auto a = static_cast<Eigen::Index>(k);
    Eigen::VectorXcd plus = Eigen::VectorXcd::Zero(dim);
    plus(a) = h;
    plus(a + 1) = h;
    Eigen::VectorXcd minus = plus;
    minus(a + 1) = -h;
    vs.push_back(std::move(plus));
    vs.push_back(std::move(minus));
  }
  if (d % 2 == 1) {
    vs.push_back(Eigen::VectorXcd::Unit(dim, dim - 1));
  }
  orthonormalize(vs);

  EntangledBasis out;
  out.sector = sector;
  out.registers = registers;
  out.allowed = allowed;
  out.config = cfg;
  out.diagnostics.resize(d);

  if (registers < 2 || d < 2) {
    out.degenerate = true;
    for (std::size_t k = 0; k < d; ++k) {
      const bool ok = registers >= 2 && entangled_everywhere(product, vs[k]);
      out.diagnostics[k].seeded_entangled = ok;
      out.diagnostics[k].entangled = ok;
      if (!ok) out.separable.push_back(k);
      out.vectors.push_back(to_state(product, vs[k]));
    }
    return out;
  }

  std::mt19937_64 rng(cfg.rng_seed);
  std::vector<bool> ok(d);
  for (std::size_t k = 0; k < d; ++k) ok[k] = entangled_everywhere(product, vs[k]);

  for (std::size_t k = 0; k < d; ++k) {
    auto& diag = out.diagnostics[k];
    diag.seeded_entangled = ok[k];
    int attempts = 0;
    const std::size_t all_cuts = (std::size_t{1} << (registers - 1)) - 1;
    std::size_t progress = ok[k] ? all_cuts : entangled_cuts(product, vs[k]);

    // A rotation is kept when v_k ends up entangled across more cuts than
    // before, and an earlier partner stays entangled across all of them.
    auto try_rotation = [&](std::size_t j, double angle) {
      ++attempts;
      const double c = std::cos(angle), s = std::sin(angle);
      Eigen::VectorXcd vk = c * vs[k] + s * vs[j];
      Eigen::VectorXcd vj = -s * vs[k] + c * vs[j];
      const std::size_t cuts = entangled_cuts(product, vk);
      bool accept = cuts > progress;
      bool j_ok = false;
      if (accept) {
        j_ok = entangled_everywhere(product, vj);
        // Vectors after k are rechecked on their own turn.
        accept = j > k || j_ok;
      }
      diag.repairs.push_back({j, angle, accept});
      if (accept) {
        vs[k] = std::move(vk);
        vs[j] = std::move(vj);
        progress = cuts;
        ok[k] = cuts == all_cuts;
        ok[j] = j_ok;
      }
      return accept;
    };

    // Deterministic pi/4 mixes: predecessors first, then later vectors.
    for (std::size_t j = 0; j < d && !ok[k] && attempts < cfg.max_repair_attempts; ++j) {
      if (j == k) continue;
      try_rotation(j, std::numbers::pi / 4.0);
    }
    while (!ok[k] && attempts < cfg.max_repair_attempts) {
      std::size_t j = static_cast<std::size_t>(unit_draw(rng) * static_cast<double>(d - 1));
      if (j >= k) ++j;
      const double angle = unit_draw(rng) * std::numbers::pi / 2.0;
      try_rotation(j, angle);
    }
    if (!ok[k]) {
      throw BuilderError("vector " + std::to_string(k) + " of sector " +
                         to_string(sector) + " is still separable after " +
                         std::to_string(attempts) + " repair rotations");
    }
    diag.entangled = true;
  }

  for (const auto& v : vs) out.vectors.push_back(to_state(product, v));
  return out;
}

std::string to_string(BasisFinding::Kind kind) {
  switch (kind) {
    case BasisFinding::Kind::count: return "count";
    case BasisFinding::Kind::norm: return "norm";
    case BasisFinding::Kind::orthogonality: return "orthogonality";
    case BasisFinding::Kind::span: return "span";
    case BasisFinding::Kind::sector: return "sector";
    case BasisFinding::Kind::entanglement: return "entanglement";
  }
  return "unknown";
}

double span_deviation(const std::vector<StateVector>& vectors,
                      const std::vector<BasisState>& sector) {
  std::map<BasisState, Eigen::Index> index;
  for (const auto& b : sector) index.try_emplace(b, 0);
  for (const auto& v : vectors) {
    for (const auto& [b, _] : v.terms()) index.try_emplace(b, 0);
  }
  Eigen::Index i = 0;
  for (auto& [_, idx] : index) idx = i++;

  const auto dim = static_cast<Eigen::Index>(index.size());
  Eigen::MatrixXcd cols = Eigen::MatrixXcd::Zero(dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    for (const auto& [b, a] : vectors[k].terms()) {
      cols(index.at(b), static_cast<Eigen::Index>(k)) = a;
    }
  }
  Eigen::MatrixXcd target = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& b : sector) {
    target(index.at(b), index.at(b)) = 1.0;
  }
  return (cols * cols.adjoint() - target).norm();
}

std::vector<BasisFinding> verify_basis(const EntangledBasis& basis,
                                       const SpeciesRegistry& registry) {
  using Kind = BasisFinding::Kind;
  std::vector<BasisFinding> findings;
  const double tol = basis.config.ortho_tolerance;
  const auto sector = sector_basis(registry, basis.registers, basis.sector,
                                   basis.allowed);
  const auto& vs = basis.vectors;

  if (vs.size() != sector.size()) {
    findings.push_back({Kind::count, std::nullopt,
                        std::to_string(vs.size()) + " vectors for a sector of "
                        "dimension " + std::to_string(sector.size())});
  }

  for (std::size_t k = 0; k < vs.size(); ++k) {
    const double norm = vs[k].norm();
    if (std::abs(norm - 1.0) > tol) {
      findings.push_back({Kind::norm, k, "norm " + std::to_string(norm)});
    }
    for (std::size_t j = 0; j < k; ++j) {
      const double overlap = std::abs(inner_product(vs[j], vs[k]));
      if (overlap > tol) {
        findings.push_back({Kind::orthogonality, k,
                            "|<" + std::to_string(j) + "|" + std::to_string(k) +
                                ">| = " + std::to_string(overlap)});
      }
    }
    for (const auto& [b, _] : vs[k].terms()) {
      if (sector_of(registry, b) != basis.sector) {
        findings.push_back({Kind::sector, k,
                            "term " + to_string(b) + " lies outside sector " +
                                to_string(basis.sector)});
        break;
      }
    }
  }

  const double dev = span_deviation(vs, sector);
  if (dev > 1e-8) {
    std::size_t rank = 0;
    if (!vs.empty()) {
      std::map<BasisState, Eigen::Index> index;
      for (const auto& v : vs) {
        for (const auto& [b, _] : v.terms()) index.try_emplace(b, 0);
      }
      Eigen::Index i = 0;
      for (auto& [_, idx] : index) idx = i++;
      Eigen::MatrixXcd cols = Eigen::MatrixXcd::Zero(
          static_cast<Eigen::Index>(index.size()), static_cast<Eigen::Index>(vs.size()));
      for (std::size_t k = 0; k < vs.size(); ++k) {
        for (const auto& [b, a] : vs[k].terms()) {
          cols(index.at(b), static_cast<Eigen::Index>(k)) = a;
        }
      }
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cols);
      svd.setThreshold(1e-8);
      rank = static_cast<std::size_t>(svd.rank());
    }
    findings.push_back({Kind::span, std::nullopt,
                        "projector deviation " + std::to_string(dev) +
                            ", projector rank " + std::to_string(rank) +
                            " vs sector dimension " +
                            std::to_string(sector.size())});
  }

  for (std::size_t k = 0; k < vs.size(); ++k) {
    if (vs[k].empty()) continue;
    const bool excused =
        basis.degenerate &&
        std::find(basis.separable.begin(), basis.separable.end(), k) !=
            basis.separable.end();
    if (excused) continue;
    const auto report = entanglement_report(vs[k].normalized());
    if (!report.every_cut) {
      findings.push_back({Kind::entanglement, k,
                          "factorizes across at least one cut"});
    }
  }
  return findings;
}

}  // namespace superselect
