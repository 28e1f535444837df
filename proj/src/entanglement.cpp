#include "superselect/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace superselect {

namespace {

using LabelTuple = std::vector<RegisterLabel>;

LabelTuple project(const BasisState& b, const std::vector<std::size_t>& regs) {
  LabelTuple out;
  out.reserve(regs.size());
  for (std::size_t k : regs) out.push_back(b[k]);
  return out;
}

void require_normalized(const StateVector& s, const char* what) {
  if (!s.is_normalized()) {
    throw DomainError(std::string(what) + " requires a normalized state (norm " +
                      std::to_string(s.norm()) + ")");
  }
}

std::size_t product_of_sizes(const std::vector<std::vector<std::string>>& f,
                             const std::vector<std::size_t>& regs) {
  std::size_t d = 1;
  for (std::size_t k : regs) d *= f[k].size();
  return d;
}

}  // namespace

Bipartition::Bipartition(std::size_t registers, std::vector<std::size_t> left)
    : registers_(registers), left_(std::move(left)) {
  std::sort(left_.begin(), left_.end());
  left_.erase(std::unique(left_.begin(), left_.end()), left_.end());
  if (!left_.empty() && left_.back() >= registers_) {
    throw DomainError("cut register " + std::to_string(left_.back()) +
                      " out of range for " + std::to_string(registers_) +
                      " registers");
  }
  if (left_.empty() || left_.size() == registers_) {
    throw DomainError("bipartition must split the registers into two "
                      "nonempty parts");
  }
  for (std::size_t k = 0; k < registers_; ++k) {
    if (!contains_left(k)) right_.push_back(k);
  }
}

std::vector<Bipartition> Bipartition::all(std::size_t registers) {
  std::vector<Bipartition> cuts;
  if (registers < 2) return cuts;
  const std::size_t rest = registers - 1;
  // Bit j of mask places register j+1 on the left; register 0 always is.
  for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << rest); ++mask) {
    std::vector<std::size_t> left{0};
    for (std::size_t j = 0; j < rest; ++j) {
      if (mask & (std::size_t{1} << j)) left.push_back(j + 1);
    }
    cuts.emplace_back(registers, std::move(left));
  }
  return cuts;
}

bool Bipartition::contains_left(std::size_t k) const {
  return std::binary_search(left_.begin(), left_.end(), k);
}

std::string Bipartition::to_string() const {
  auto side = [](const std::vector<std::size_t>& v) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(v[i]);
    }
    return out + "}";
  };
  return side(left_) + "|" + side(right_);
}

SchmidtResult schmidt(const StateVector& s, const Bipartition& cut) {
  if (cut.registers() != s.registers()) {
    throw DomainError("cut over " + std::to_string(cut.registers()) +
                      " registers applied to a state with " +
                      std::to_string(s.registers()));
  }
  require_normalized(s, "schmidt decomposition");

  std::map<LabelTuple, Eigen::Index> rows, cols;
  for (const auto& [b, _] : s.terms()) {
    rows.try_emplace(project(b, cut.left()), 0);
    cols.try_emplace(project(b, cut.right()), 0);
  }
  Eigen::Index i = 0;
  for (auto& [_, idx] : rows) idx = i++;
  i = 0;
  for (auto& [_, idx] : cols) idx = i++;

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(
      static_cast<Eigen::Index>(rows.size()),
      static_cast<Eigen::Index>(cols.size()));
  for (const auto& [b, a] : s.terms()) {
    m(rows.at(project(b, cut.left())), cols.at(project(b, cut.right()))) = a;
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  SchmidtResult out;
  out.singular_values.assign(sv.data(), sv.data() + sv.size());
  std::sort(out.singular_values.begin(), out.singular_values.end(),
            std::greater<>());
  const double floor = kRankTolerance * out.singular_values.front();
  out.rank = static_cast<std::size_t>(
      std::count_if(out.singular_values.begin(), out.singular_values.end(),
                    [floor](double x) { return x > floor; }));
  return out;
}

namespace {

double entropy_of(const SchmidtResult& r) {
  double h = 0.0;
  for (double sigma : r.singular_values) {
    const double p = sigma * sigma;
    if (p > 0.0) h -= p * std::log(p);
  }
  return std::max(h, 0.0);
}

}  // namespace

double entanglement_entropy(const StateVector& s, const Bipartition& cut) {
  return entropy_of(schmidt(s, cut));
}

EntanglementReport entanglement_report(const StateVector& s) {
  require_normalized(s, "entanglement analysis");
  EntanglementReport report;
  report.defined = s.registers() >= 2;
  if (!report.defined) return report;

  report.every_cut = true;
  for (auto& cut : Bipartition::all(s.registers())) {
    auto r = schmidt(s, cut);
    const double h = entropy_of(r);
    report.every_cut = report.every_cut && r.rank > 1;
    report.some_cut = report.some_cut || r.rank > 1;
    report.cuts.push_back({std::move(cut), std::move(r), h});
  }
  return report;
}

EntanglementReport analyze_entanglement(const SpeciesRegistry& registry,
                                        const StateVector& s) {
  check_labels(registry, s);
  require_single_sector(registry, s);
  return entanglement_report(s);
}

bool is_packaged_entangled(const SpeciesRegistry& registry,
                           const StateVector& s) {
  return analyze_entanglement(registry, s).every_cut;
}

bool is_entangled_somewhere(const SpeciesRegistry& registry,
                            const StateVector& s) {
  return analyze_entanglement(registry, s).some_cut;
}

DensityMatrix::DensityMatrix(std::vector<std::vector<std::string>> factors,
                             Eigen::MatrixXcd entries)
    : factors_(std::move(factors)), entries_(std::move(entries)) {
  std::size_t dim = 1;
  for (const auto& f : factors_) {
    if (f.empty()) throw DomainError("density matrix factor is empty");
    dim *= f.size();
  }
  if (entries_.rows() != entries_.cols() ||
      static_cast<std::size_t>(entries_.rows()) != dim) {
    throw DomainError("density matrix is " + std::to_string(entries_.rows()) +
                      "x" + std::to_string(entries_.cols()) +
                      ", factors imply dimension " + std::to_string(dim));
  }
  basis_labels_.reserve(dim);
  std::vector<std::size_t> digits(factors_.size(), 0);
  for (std::size_t row = 0; row < dim; ++row) {
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < factors_.size(); ++k) {
      labels.push_back(factors_[k][digits[k]]);
    }
    basis_labels_.push_back(std::move(labels));
    for (std::size_t k = factors_.size(); k-- > 0;) {
      if (++digits[k] < factors_[k].size()) break;
      digits[k] = 0;
    }
  }
}

void validate_density_matrix(const DensityMatrix& rho) {
  const auto& m = rho.entries();
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-10) {
    throw DomainError("density matrix is not Hermitian (deviation " +
                      std::to_string(asym) + ")");
  }
  const auto trace = m.trace();
  if (std::abs(trace - Amplitude{1.0, 0.0}) > 1e-9) {
    throw DomainError("density matrix trace is " +
                      std::to_string(trace.real()) + ", expected 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10) {
    throw DomainError("density matrix has negative eigenvalue " +
                      std::to_string(eig.eigenvalues().minCoeff()));
  }
}

DensityMatrix internal_charge_marginal(const SpeciesRegistry& registry,
                                       const StateVector& s) {
  check_labels(registry, s);
  require_normalized(s, "internal charge marginal");
  const std::size_t n = s.registers();

  std::vector<std::vector<std::string>> factors(n);
  for (const auto& [b, _] : s.terms()) {
    for (std::size_t k = 0; k < n; ++k) factors[k].push_back(b[k].species);
  }
  for (auto& f : factors) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
  }

  auto row_of = [&](const BasisState& b) {
    Eigen::Index row = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto& f = factors[k];
      const auto pos = std::lower_bound(f.begin(), f.end(), b[k].species) - f.begin();
      row = row * static_cast<Eigen::Index>(f.size()) + pos;
    }
    return row;
  };

  Eigen::Index dim = 1;
  for (const auto& f : factors) dim *= static_cast<Eigen::Index>(f.size());

  // One internal-label vector per joint spin configuration; the marginal is
  // the sum of their projectors.
  std::map<std::vector<int>, Eigen::VectorXcd> branches;
  for (const auto& [b, a] : s.terms()) {
    std::vector<int> spins(n);
    for (std::size_t k = 0; k < n; ++k) spins[k] = b[k].spin;
    auto [it, fresh] = branches.try_emplace(spins);
    if (fresh) it->second = Eigen::VectorXcd::Zero(dim);
    it->second(row_of(b)) += a;
  }

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [_, v] : branches) rho += v * v.adjoint();
  return DensityMatrix(std::move(factors), std::move(rho));
}

PptResult ppt_check(const DensityMatrix& rho, const Bipartition& cut) {
  if (cut.registers() != rho.factors().size()) {
    throw DomainError("cut over " + std::to_string(cut.registers()) +
                      " registers applied to a density matrix over " +
                      std::to_string(rho.factors().size()));
  }
  validate_density_matrix(rho);

  const auto& f = rho.factors();
  const std::size_t n = f.size();
  const std::size_t dl = product_of_sizes(f, cut.left());
  const std::size_t dr = product_of_sizes(f, cut.right());
  const std::size_t dim = rho.dimension();

  // Split every product row index into (left index, right index).
  std::vector<std::size_t> left_of(dim), right_of(dim);
  std::vector<std::size_t> digits(n, 0);
  for (std::size_t row = 0; row < dim; ++row) {
    std::size_t l = 0, r = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (cut.contains_left(k)) {
        l = l * f[k].size() + digits[k];
      } else {
        r = r * f[k].size() + digits[k];
      }
    }
    left_of[row] = l;
    right_of[row] = r;
    for (std::size_t k = n; k-- > 0;) {
      if (++digits[k] < f[k].size()) break;
      digits[k] = 0;
    }
  }

  const auto& m = rho.entries();
  Eigen::MatrixXcd pt(static_cast<Eigen::Index>(dim),
                      static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const auto row = static_cast<Eigen::Index>(left_of[i] * dr + right_of[j]);
      const auto col = static_cast<Eigen::Index>(left_of[j] * dr + right_of[i]);
      pt(row, col) = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(pt, Eigen::EigenvaluesOnly);
  PptResult out;
  out.min_eigenvalue = eig.eigenvalues().minCoeff();
  out.left_dimension = dl;
  out.right_dimension = dr;
  if (out.min_eigenvalue < -kPptTolerance) {
    out.verdict = PptVerdict::entangled;
    out.conclusive = true;
  } else {
    out.verdict = PptVerdict::separable_consistent;
    out.conclusive = std::min(dl, dr) == 1 || dl * dr <= 6;
  }
  return out;
}

}  // namespace superselect
