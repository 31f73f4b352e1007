#pragma once

// Dense complex linear algebra shared by every other module.

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace srf {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;
using Rng = std::mt19937_64;

inline constexpr double kStateNormTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = -1e-10;

struct RngSeed {
  std::uint64_t value = 0;
};

/// Independent generator for task `stream` of a run seeded with `seed`.
/// Streams never share state, so parallel tasks stay reproducible.
Rng make_rng(RngSeed seed, std::uint64_t stream = 0);

/// Derives a child seed; used when one experiment hands seeds to another.
RngSeed derive_seed(RngSeed seed, std::uint64_t stream);

/// Unit vector in C^dim.
class PureState {
 public:
  /// Throws DomainError when the norm differs from 1 by more than 1e-12.
  explicit PureState(ComplexVector amplitudes);

  /// Rescales a nonzero vector to unit norm.
  static PureState normalized(ComplexVector v);

  [[nodiscard]] Index dim() const { return amps_.size(); }
  [[nodiscard]] const ComplexVector& amplitudes() const { return amps_; }
  [[nodiscard]] ComplexMatrix projector() const { return amps_ * amps_.adjoint(); }

 private:
  ComplexVector amps_;
};

/// How much of the state invariant a DensityMatrix constructor checks.
/// `Structure` skips the eigenvalue test, for outputs of trace-preserving
/// completely positive maps applied to valid states.
enum class Validation { Full, Structure };

class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m, Validation v = Validation::Full);
  explicit DensityMatrix(const PureState& psi);

  [[nodiscard]] Index dim() const { return m_.rows(); }
  [[nodiscard]] const ComplexMatrix& matrix() const { return m_; }

 private:
  ComplexMatrix m_;
};

/// Largest entrywise |X - X^dagger|.
double hermitian_defect(const ComplexMatrix& x);

/// Sum of singular values. Hermitian inputs (within 1e-10) go through the
/// eigenvalue route, anything else through an SVD.
double trace_norm(const ComplexMatrix& x);

enum class TraceSide { Left, Right };

/// Traces out one factor of a dimLeft x dimRight bipartite operator.
/// Composite index convention: a * dimRight + b.
ComplexMatrix partial_trace(const ComplexMatrix& x, Index dimLeft, Index dimRight,
                            TraceSide traced);
DensityMatrix partial_trace(const DensityMatrix& rho, Index dimLeft, Index dimRight,
                            TraceSide traced);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of
/// R's diagonal pushed back into Q.
ComplexMatrix haar_unitary(Index dim, Rng& rng);
ComplexMatrix haar_unitary(Index dim, RngSeed seed);

/// Normalized complex Gaussian vector (unitarily invariant measure).
PureState random_pure_state(Index dim, Rng& rng);
PureState random_pure_state(Index dim, RngSeed seed);

/// Random full-rank mixed state G G^dagger / Tr(G G^dagger) from a Ginibre G.
DensityMatrix random_density_matrix(Index dim, Rng& rng);

/// Vector of i.i.d. standard complex Gaussians (E|z|^2 = 1).
ComplexVector gaussian_vector(Index dim, Rng& rng);

}  // namespace srf
