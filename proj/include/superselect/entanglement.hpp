#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "superselect/state.hpp"

namespace superselect {

/// Singular values at or below kRankTolerance * sigma_1 count as zero.
inline constexpr double kRankTolerance = 1e-9;

/// Split of the registers {0..n-1} into two nonempty complementary sets.
class Bipartition {
 public:
  /// Throws DomainError for an empty or full `left`, or an index >= n.
  Bipartition(std::size_t registers, std::vector<std::size_t> left);

  /// Every cut once, with register 0 always on the left: 2^(n-1) - 1 cuts.
  static std::vector<Bipartition> all(std::size_t registers);

  std::size_t registers() const { return registers_; }
  const std::vector<std::size_t>& left() const { return left_; }
  const std::vector<std::size_t>& right() const { return right_; }
  bool contains_left(std::size_t k) const;

  std::string to_string() const;

  bool operator==(const Bipartition&) const = default;

 private:
  std::size_t registers_;
  std::vector<std::size_t> left_;
  std::vector<std::size_t> right_;
};

struct SchmidtResult {
  std::vector<double> singular_values;  // descending
  std::size_t rank = 0;
};

/// Schmidt coefficients of a normalized state across `cut`. Throws
/// DomainError for unnormalized input or a cut over the wrong register count.
SchmidtResult schmidt(const StateVector& s, const Bipartition& cut);

/// Von Neumann entropy of either side of the cut, in nats.
double entanglement_entropy(const StateVector& s, const Bipartition& cut);

struct CutReport {
  Bipartition cut;
  SchmidtResult schmidt;
  double entropy = 0.0;
};

struct EntanglementReport {
  std::vector<CutReport> cuts;
  /// False for single-register states, where no cut exists.
  bool defined = false;
  /// Schmidt rank > 1 across every cut.
  bool every_cut = false;
  /// Schmidt rank > 1 across at least one cut.
  bool some_cut = false;

  bool packaged_entangled() const { return every_cut; }
};

/// Per-cut analysis of a normalized state, without a superselection check.
EntanglementReport entanglement_report(const StateVector& s);

/// The packaged-entanglement decision: the state must lie in one charge
/// sector (SuperselectionError otherwise) and be non-factorizable across
/// every bipartition of its registers.
EntanglementReport analyze_entanglement(const SpeciesRegistry& registry,
                                        const StateVector& s);
bool is_packaged_entangled(const SpeciesRegistry& registry,
                           const StateVector& s);
/// Weaker reading: non-factorizable across at least one bipartition.
bool is_entangled_somewhere(const SpeciesRegistry& registry,
                            const StateVector& s);

/// Density matrix over a product of per-register species bases.
class DensityMatrix {
 public:
  /// Throws DomainError when the factor dimensions do not match `entries`.
  DensityMatrix(std::vector<std::vector<std::string>> factors,
                Eigen::MatrixXcd entries);

  const std::vector<std::vector<std::string>>& factors() const {
    return factors_;
  }
  /// Row/column labels: one species per register, in row-major product order.
  const std::vector<std::vector<std::string>>& basis_labels() const {
    return basis_labels_;
  }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  std::size_t dimension() const {
    return static_cast<std::size_t>(entries_.rows());
  }

 private:
  std::vector<std::vector<std::string>> factors_;
  std::vector<std::vector<std::string>> basis_labels_;
  Eigen::MatrixXcd entries_;
};

/// Throws DomainError unless the matrix is Hermitian (1e-10), positive
/// semidefinite (eigenvalues >= -1e-10) and of unit trace (1e-9).
void validate_density_matrix(const DensityMatrix& rho);

/// Reduced state of the species labels of all registers, obtained by tracing
/// out every spin index. Each register's factor holds the species that occur
/// there in the support of `s`, sorted by id.
DensityMatrix internal_charge_marginal(const SpeciesRegistry& registry,
                                       const StateVector& s);

enum class PptVerdict { separable_consistent, entangled };

struct PptResult {
  PptVerdict verdict = PptVerdict::separable_consistent;
  double min_eigenvalue = 0.0;
  /// PPT decides separability only for 2x2 and 2x3 splits; larger splits
  /// with a positive partial transpose are not conclusive.
  bool conclusive = true;
  std::size_t left_dimension = 0;
  std::size_t right_dimension = 0;
};

inline constexpr double kPptTolerance = 1e-10;

/// Partial transpose on the right factor of `cut`. Entangled iff its
/// smallest eigenvalue is below -kPptTolerance.
PptResult ppt_check(const DensityMatrix& rho, const Bipartition& cut);

}  // namespace superselect
