#pragma once

// SU(2) representation theory on N qubits: irrep and multiplicity dimensions,
// coupling paths, the coupled-basis (Schur) transform, Wigner D matrices and
// the isotypic projectors.
//
// Conventions:
//  * angular momenta are stored doubled (twoJ, twoM) so half-integers stay exact;
//  * qubit 1 is the most significant bit of a computational basis index and
//    |0> is spin up (m = +1/2);
//  * coupling is strictly sequential, qubit 1 first;
//  * the coupled basis lists irreps with j descending, then m descending,
//    then multiplicity path, so each irrep block is H_jR (x) H_jP with the
//    R factor major.

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "srf/linalg.hpp"

namespace srf {

using BigInt = boost::multiprecision::cpp_int;

/// Total angular momentum label j, stored as 2j.
struct IrrepLabel {
  int twoJ = 0;

  [[nodiscard]] double j() const { return 0.5 * twoJ; }
  static IrrepLabel from_j(int j) { return IrrepLabel{2 * j}; }
  friend bool operator==(IrrepLabel, IrrepLabel) = default;
  friend auto operator<=>(IrrepLabel, IrrepLabel) = default;
};

/// Throws DomainError unless N is a positive even integer.
void require_even_n(int n);

/// Throws DomainError unless 0 <= twoJ <= N and twoJ has the parity of N.
void require_valid_label(int n, IrrepLabel j);

/// All labels for N qubits, j ascending from 0 to N/2.
std::vector<IrrepLabel> irrep_labels(int n);

/// Sequential coupling path: steps of +1/-1 applied to 2j starting at 0.
struct BratteliPath {
  std::vector<std::int8_t> steps;

  [[nodiscard]] int final_twoJ() const;
  /// Every prefix sum non-negative and first step +1.
  [[nodiscard]] bool valid() const;
};

struct CoupledBasisIndex {
  IrrepLabel j;
  int twoM = 0;
  Index pathIndex = 0;

  friend bool operator==(const CoupledBasisIndex&, const CoupledBasisIndex&) = default;
};

struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// Uniformly random rotation (Haar on SO(3) in z-y-z Euler angles).
EulerAngles random_euler_angles(Rng& rng);

/// d_jR = 2j + 1.
int dim_irrep(IrrepLabel j);

/// Exact binomial coefficient.
BigInt binomial(int n, int k);

/// d_jP = C(N, N/2 - j) (2j+1) / (N/2 + j + 1), in exact integer arithmetic.
BigInt dim_multiplicity(int n, IrrepLabel j);

/// dim_multiplicity converted to a machine index; ResourceError if it does not fit.
Index dim_multiplicity_index(int n, IrrepLabel j);

/// All coupling paths ending at 2j, lexicographic with the +1 step ordered first.
std::vector<BratteliPath> enumerate_paths(int n, IrrepLabel j);

/// One irrep block of the coupled basis.
struct IrrepBlock {
  IrrepLabel j;
  Index offset = 0;
  Index dimR = 0;
  Index dimP = 0;

  [[nodiscard]] Index size() const { return dimR * dimP; }
};

/// Block structure of the coupled basis without the transform itself.
/// Cheap to build for any N whose Hilbert space fits a machine index.
class CoupledLayout {
 public:
  explicit CoupledLayout(int n);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] Index dimension() const { return dim_; }
  /// Blocks in basis order (j descending).
  [[nodiscard]] const std::vector<IrrepBlock>& blocks() const { return blocks_; }
  [[nodiscard]] const IrrepBlock& block(IrrepLabel j) const;

  /// Column of |j, m, path> in the coupled basis.
  [[nodiscard]] Index column(const CoupledBasisIndex& idx) const;
  [[nodiscard]] CoupledBasisIndex label(Index column) const;

 private:
  int n_;
  Index dim_;
  std::vector<IrrepBlock> blocks_;
};

inline constexpr int kDefaultMaxSchurN = 12;

/// Unitary V whose columns are the coupled basis states written in the
/// computational basis: V^dagger R(Omega)^{(x)N} V = (+)_j D^j(Omega) (x) I.
struct SchurTransform {
  CoupledLayout layout;
  ComplexMatrix v;
  std::vector<CoupledBasisIndex> ordering;

  [[nodiscard]] int n() const { return layout.n(); }
};

/// Builds V by sequential j (x) 1/2 Clebsch-Gordan coupling.
/// DomainError for odd N, ResourceError above maxN.
SchurTransform schur_transform(int n, int maxN = kDefaultMaxSchurN);

/// Closed-form <j, m - sigma; 1/2, sigma | J, m> for J = j +- 1/2 (Condon-Shortley).
/// twoSigma is +1 or -1.
double cg_half(int twoJparent, int twoJ, int twoM, int twoSigma);

/// Spin-j angular momentum matrices in the basis m = j, j-1, ..., -j.
ComplexMatrix spin_jz(IrrepLabel j);
ComplexMatrix spin_jy(IrrepLabel j);
ComplexMatrix spin_jx(IrrepLabel j);

/// exp(-i alpha Jz) exp(-i beta Jy) exp(-i gamma Jz) on the spin-j irrep.
ComplexMatrix wigner_D(IrrepLabel j, const EulerAngles& omega);

/// R(Omega)^{(x)N} with R = wigner_D(1/2, Omega).
ComplexMatrix rotation_tensor_power(const EulerAngles& omega, int n);

/// (+)_j D^j(Omega) (x) I_{d_jP} in coupled-basis order.
ComplexMatrix block_rotation(const CoupledLayout& layout, const EulerAngles& omega);

/// Projector onto the total-angular-momentum-j subspace, computational basis.
ComplexMatrix projector(const SchurTransform& st, IrrepLabel j);
ComplexMatrix projector(int n, IrrepLabel j);

}  // namespace srf
