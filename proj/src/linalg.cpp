#include "srf/linalg.hpp"

#include <cmath>
#include <string>

#include "srf/errors.hpp"

namespace srf {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void require_square(const ComplexMatrix& x, const char* what) {
  if (x.rows() != x.cols()) {
    throw DimensionError(std::string(what) + ": expected a square matrix, got " +
                         std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
  }
}

}  // namespace

Rng make_rng(RngSeed seed, std::uint64_t stream) {
  const std::uint64_t mixed = splitmix64(seed.value ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(mixed), static_cast<std::uint32_t>(mixed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

RngSeed derive_seed(RngSeed seed, std::uint64_t stream) {
  return RngSeed{splitmix64(seed.value + 0x5851f42d4c957f2dULL * (stream + 1))};
}

PureState::PureState(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw DomainError("PureState: empty amplitude vector");
  if (!amps_.allFinite()) throw DomainError("PureState: non-finite amplitude");
  const double n = amps_.norm();
  if (std::abs(n - 1.0) > kStateNormTol) {
    throw DomainError("PureState: norm " + std::to_string(n) + " differs from 1");
  }
}

PureState PureState::normalized(ComplexVector v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("PureState: cannot normalize zero vector");
  v /= n;
  return PureState(std::move(v));
}

DensityMatrix::DensityMatrix(ComplexMatrix m, Validation v) : m_(std::move(m)) {
  require_square(m_, "DensityMatrix");
  if (m_.size() == 0) throw DomainError("DensityMatrix: empty matrix");
  if (!m_.allFinite()) throw DomainError("DensityMatrix: non-finite entry");
  if (hermitian_defect(m_) > kHermitianTol) throw DomainError("DensityMatrix: not Hermitian");
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw DomainError("DensityMatrix: trace " + std::to_string(tr) + " differs from 1");
  }
  if (v == Validation::Full) {
    const ComplexMatrix h = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < kPsdTol) {
      throw DomainError("DensityMatrix: negative eigenvalue " +
                        std::to_string(es.eigenvalues().minCoeff()));
    }
  }
}

DensityMatrix::DensityMatrix(const PureState& psi)
    : DensityMatrix(psi.projector(), Validation::Structure) {}

double hermitian_defect(const ComplexMatrix& x) {
  if (x.rows() != x.cols()) return INFINITY;
  if (x.size() == 0) return 0.0;
  return (x - x.adjoint()).cwiseAbs().maxCoeff();
}

double trace_norm(const ComplexMatrix& x) {
  require_square(x, "trace_norm");
  if (x.size() == 0) return 0.0;
  if (hermitian_defect(x) <= 1e-10) {
    const ComplexMatrix h = 0.5 * (x + x.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }
  Eigen::BDCSVD<ComplexMatrix> svd(x);
  return svd.singularValues().sum();
}

ComplexMatrix partial_trace(const ComplexMatrix& x, Index dimLeft, Index dimRight,
                            TraceSide traced) {
  require_square(x, "partial_trace");
  if (dimLeft <= 0 || dimRight <= 0 || dimLeft * dimRight != x.rows()) {
    throw DimensionError("partial_trace: factor dimensions " + std::to_string(dimLeft) + "x" +
                         std::to_string(dimRight) + " do not match operator dimension " +
                         std::to_string(x.rows()));
  }
  if (traced == TraceSide::Left) {
    ComplexMatrix out = ComplexMatrix::Zero(dimRight, dimRight);
    for (Index a = 0; a < dimLeft; ++a) out += x.block(a * dimRight, a * dimRight, dimRight, dimRight);
    return out;
  }
  ComplexMatrix out(dimLeft, dimLeft);
  for (Index a = 0; a < dimLeft; ++a) {
    for (Index c = 0; c < dimLeft; ++c) {
      out(a, c) = x.block(a * dimRight, c * dimRight, dimRight, dimRight).trace();
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, Index dimLeft, Index dimRight,
                            TraceSide traced) {
  return DensityMatrix(partial_trace(rho.matrix(), dimLeft, dimRight, traced), Validation::Structure);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector gaussian_vector(Index dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexVector v(dim);
  for (Index i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

ComplexMatrix haar_unitary(Index dim, Rng& rng) {
  if (dim <= 0) throw DomainError("haar_unitary: dimension must be positive");
  ComplexMatrix g(dim, dim);
  for (Index c = 0; c < dim; ++c) g.col(c) = gaussian_vector(dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Index c = 0; c < dim; ++c) {
    const Complex d = r(c, c);
    const double mag = std::abs(d);
    q.col(c) *= mag > 0.0 ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

ComplexMatrix haar_unitary(Index dim, RngSeed seed) {
  Rng rng = make_rng(seed);
  return haar_unitary(dim, rng);
}

PureState random_pure_state(Index dim, Rng& rng) {
  if (dim <= 0) throw DomainError("random_pure_state: dimension must be positive");
  return PureState::normalized(gaussian_vector(dim, rng));
}

PureState random_pure_state(Index dim, RngSeed seed) {
  Rng rng = make_rng(seed);
  return random_pure_state(dim, rng);
}

DensityMatrix random_density_matrix(Index dim, Rng& rng) {
  if (dim <= 0) throw DomainError("random_density_matrix: dimension must be positive");
  ComplexMatrix g(dim, dim);
  for (Index c = 0; c < dim; ++c) g.col(c) = gaussian_vector(dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho));
}

}  // namespace srf
