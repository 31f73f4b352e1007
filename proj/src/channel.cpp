#include "srf/channel.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "srf/errors.hpp"

namespace srf {

BlockState to_block_state(const ComplexMatrix& coupled, const CoupledLayout& layout, bool keepCross) {
  if (coupled.rows() != layout.dimension() || coupled.cols() != layout.dimension()) {
    throw DimensionError("block state: operator dimension " + std::to_string(coupled.rows()) +
                         " does not match the coupled basis dimension " + std::to_string(layout.dimension()));
  }
  BlockState out;
  out.n = layout.n();
  for (const auto& b : layout.blocks()) {
    out.blocks.push_back(Sector{b.j, b.dimR, b.dimP, coupled.block(b.offset, b.offset, b.size(), b.size())});
  }
  if (keepCross) out.crossBlocks = coupled;
  return out;
}

ComplexMatrix assemble(const BlockState& state, const CoupledLayout& layout) {
  ComplexMatrix out = state.crossBlocks.size() != 0 ? state.crossBlocks
                                                     : ComplexMatrix::Zero(layout.dimension(), layout.dimension());
  for (const auto& s : state.blocks) {
    const IrrepBlock& b = layout.block(s.j);
    out.block(b.offset, b.offset, b.size(), b.size()) = s.m;
  }
  return out;
}

BlockState twirl_blocks(const BlockState& state) {
  BlockState out;
  out.n = state.n;
  for (const auto& s : state.blocks) {
    const ComplexMatrix multiplicity = partial_trace(s.m, s.dimR, s.dimP, TraceSide::Left);
    const ComplexMatrix depolarized = ComplexMatrix::Identity(s.dimR, s.dimR) / static_cast<double>(s.dimR);
    out.blocks.push_back(Sector{s.j, s.dimR, s.dimP, kron(depolarized, multiplicity)});
  }
  return out;
}

DensityMatrix twirl_block(const DensityMatrix& rhoCoupled, const CoupledLayout& layout) {
  const BlockState twirled = twirl_blocks(to_block_state(rhoCoupled.matrix(), layout, false));
  return DensityMatrix(assemble(twirled, layout), Validation::Structure);
}

DensityMatrix twirl_block(const DensityMatrix& rhoCoupled, const SchurTransform& st) {
  return twirl_block(rhoCoupled, st.layout);
}

QuadratureSpec QuadratureSpec::defaults(int n) { return QuadratureSpec{2 * n + 2, n + 2, 2 * n + 2}; }

bool QuadratureSpec::exact_for(int n) const {
  return nAlpha >= 2 * n + 1 && nGamma >= 2 * n + 1 && nBeta >= n + 1;
}

void gauss_legendre(int count, RealVector& nodes, RealVector& weights) {
  if (count < 1) throw DomainError("gauss_legendre: need at least one node");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(count, count);
  for (int k = 1; k < count; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  nodes = es.eigenvalues();
  weights.resize(count);
  for (int k = 0; k < count; ++k) weights(k) = 2.0 * es.eigenvectors()(0, k) * es.eigenvectors()(0, k);
}

namespace {

int qubit_count(Index dim) {
  if (dim < 2 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
    throw DimensionError("twirl_oracle: dimension " + std::to_string(dim) + " is not 2^N");
  }
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

/// Entrywise weight of sum_k w_k Z(theta_k) (.) Z(theta_k)^dagger on a uniform grid.
/// Z(theta) = exp(-i theta Jz)^{(x)N} is diagonal with phase exp(-i theta m(x)).
ComplexMatrix uniform_dephasing_kernel(int n, int points) {
  const Index dim = Index{1} << n;
  std::vector<Complex> byDelta(static_cast<std::size_t>(2 * n + 1));
  for (int delta = -n; delta <= n; ++delta) {
    Complex acc = 0.0;
    for (int k = 0; k < points; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / points;
      acc += std::exp(Complex(0.0, -theta * delta));
    }
    byDelta[static_cast<std::size_t>(delta + n)] = acc / static_cast<double>(points);
  }
  // m(x) - m(y) = popcount(y) - popcount(x) in units of hbar (doubled m cancels the 1/2)
  ComplexMatrix kernel(dim, dim);
  for (Index x = 0; x < dim; ++x) {
    const int px = std::popcount(static_cast<std::uint64_t>(x));
    for (Index y = 0; y < dim; ++y) {
      const int py = std::popcount(static_cast<std::uint64_t>(y));
      kernel(x, y) = byDelta[static_cast<std::size_t>(py - px + n)];
    }
  }
  return kernel;
}

}  // namespace

TwirlOracleResult twirl_oracle(const DensityMatrix& rho, const QuadratureSpec& q, Execution exec) {
  const int n = qubit_count(rho.dim());
  if (n > kMaxOracleN) throw ResourceError("twirl_oracle: dense quadrature limited to N <= 8");
  if (q.nAlpha < 1 || q.nBeta < 1 || q.nGamma < 1) throw DomainError("twirl_oracle: quadrature sizes must be >= 1");

  const ComplexMatrix afterGamma = rho.matrix().cwiseProduct(uniform_dephasing_kernel(n, q.nGamma));

  RealVector nodes, weights;
  gauss_legendre(q.nBeta, nodes, weights);
  std::vector<ComplexMatrix> terms(static_cast<std::size_t>(q.nBeta));
  for_each_index(static_cast<std::size_t>(q.nBeta), exec, [&](std::size_t b) {
    const double beta = std::acos(std::clamp(nodes(static_cast<Index>(b)), -1.0, 1.0));
    const ComplexMatrix y = rotation_tensor_power(EulerAngles{0.0, beta, 0.0}, n);
    terms[b] = (0.5 * weights(static_cast<Index>(b))) * (y * afterGamma * y.adjoint());
  });
  ComplexMatrix afterBeta = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (const auto& t : terms) afterBeta += t;

  ComplexMatrix out = afterBeta.cwiseProduct(uniform_dephasing_kernel(n, q.nAlpha));
  out = (0.5 * (out + out.adjoint())).eval();
  return TwirlOracleResult{DensityMatrix(std::move(out), Validation::Structure), q, q.exact_for(n)};
}

TwirlOracleResult twirl_oracle(const DensityMatrix& rho) {
  return twirl_oracle(rho, QuadratureSpec::defaults(qubit_count(rho.dim())));
}

std::vector<ComplexMatrix> reduced_blocks(const ComplexVector& phi, const WorkingSpace& ws) {
  if (phi.size() != ws.k()) {
    throw DimensionError("reduced map: state dimension " + std::to_string(phi.size()) + " differs from K=" +
                         std::to_string(ws.k()));
  }
  const Index d = ws.d();
  const Index da = ws.d_alpha();
  std::vector<ComplexMatrix> out;
  out.reserve(ws.sectors().size());
  for (const auto& s : ws.sectors()) {
    // M(m, l) = <j m l | phi>;  Tr_R |phi_j><phi_j| = M^T conj(M)
    const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
        phi.data() + s.offset, d, da);
    out.push_back(m.transpose() * m.conjugate());
  }
  return out;
}

DensityMatrix reduced_map_F(const PureState& phi, const WorkingSpace& ws) {
  const auto blocks = reduced_blocks(phi.amplitudes(), ws);
  const Index da = ws.d_alpha();
  ComplexMatrix out = ComplexMatrix::Zero(ws.d_p(), ws.d_p());
  for (std::size_t s = 0; s < blocks.size(); ++s) {
    out.block(static_cast<Index>(s) * da, static_cast<Index>(s) * da, da, da) = blocks[s];
  }
  return DensityMatrix(std::move(out), Validation::Structure);
}

DensityMatrix reduced_map_F(const PureState& phiCoupled, const WorkingSpace& ws, const CoupledLayout& layout) {
  return reduced_map_F(project_to_working_space(phiCoupled, ws, layout), ws);
}

DensityMatrix twirl_working_state(const PureState& phi, const WorkingSpace& ws) {
  const auto blocks = reduced_blocks(phi.amplitudes(), ws);
  const Index da = ws.d_alpha();
  ComplexMatrix out = ComplexMatrix::Zero(ws.twirl_support_dim(), ws.twirl_support_dim());
  Index offset = 0;
  for (std::size_t s = 0; s < blocks.size(); ++s) {
    const Index dr = ws.sectors()[s].dimR;
    out.block(offset, offset, dr * da, dr * da) =
        kron(ComplexMatrix::Identity(dr, dr) / static_cast<double>(dr), blocks[s]);
    offset += dr * da;
  }
  return DensityMatrix(std::move(out), Validation::Structure);
}

ReferenceStates reference_states(const WorkingSpace& ws) {
  const Index da = ws.d_alpha();
  const double ny = static_cast<double>(ws.sectors().size());
  ComplexMatrix rho0 = ComplexMatrix::Zero(ws.twirl_support_dim(), ws.twirl_support_dim());
  Index offset = 0;
  for (const auto& s : ws.sectors()) {
    const Index size = s.dimR * da;
    rho0.block(offset, offset, size, size) =
        ComplexMatrix::Identity(size, size) / (static_cast<double>(size) * ny);
    offset += size;
  }
  ComplexMatrix varrho0 = ComplexMatrix::Identity(ws.d_p(), ws.d_p()) / static_cast<double>(ws.d_p());
  return ReferenceStates{DensityMatrix(std::move(rho0)), DensityMatrix(std::move(varrho0))};
}

DensityMatrix reference_state_coupled(const WorkingSpace& ws, const CoupledLayout& layout) {
  if (layout.n() != ws.n()) throw DimensionError("reference state: layout built for a different N");
  const Index da = ws.d_alpha();
  const double ny = static_cast<double>(ws.sectors().size());
  ComplexMatrix out = ComplexMatrix::Zero(layout.dimension(), layout.dimension());
  for (const auto& s : ws.sectors()) {
    const IrrepBlock& b = layout.block(s.j);
    ComplexMatrix retained = ComplexMatrix::Zero(b.dimP, b.dimP);
    retained.topLeftCorner(da, da).setIdentity();
    retained /= static_cast<double>(da) * ny;
    out.block(b.offset, b.offset, b.size(), b.size()) =
        kron(ComplexMatrix::Identity(b.dimR, b.dimR) / static_cast<double>(b.dimR), retained);
  }
  return DensityMatrix(std::move(out), Validation::Structure);
}

}  // namespace srf
