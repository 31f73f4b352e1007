#pragma once

// The reference-frame twirl E(rho) = int R(Omega)^{(x)N} rho R(Omega)^{dagger (x)N} dOmega.
//
// Two independent implementations: the block action in the coupled basis
// (depolarize every H_jR, keep every H_jP, drop cross-irrep coherences) and a
// product-quadrature evaluation of the group integral in the computational
// basis. Everything on the working space is done in reduced block form so
// that it scales past the dense 2^N limit.

#include <vector>

#include "srf/linalg.hpp"
#include "srf/parallel.hpp"
#include "srf/repkit.hpp"
#include "srf/workspace.hpp"

namespace srf {

/// One irrep sector of an operator in the coupled basis, (R,P) ordered.
struct Sector {
  IrrepLabel j;
  Index dimR = 0;
  Index dimP = 0;
  ComplexMatrix m;
};

/// Block-diagonal part of a coupled-basis operator, plus the off-diagonal
/// inter-irrep sectors when they are retained.
struct BlockState {
  int n = 0;
  std::vector<Sector> blocks;
  /// Full matrix before the twirl; empty afterwards (cross sectors are exactly zero).
  ComplexMatrix crossBlocks;
};

BlockState to_block_state(const ComplexMatrix& coupled, const CoupledLayout& layout, bool keepCross = true);
ComplexMatrix assemble(const BlockState& state, const CoupledLayout& layout);

/// (I_dR / dR) (x) Tr_R on every sector; cross-irrep sectors discarded.
BlockState twirl_blocks(const BlockState& state);

/// Block action of E on a coupled-basis state.
DensityMatrix twirl_block(const DensityMatrix& rhoCoupled, const CoupledLayout& layout);
DensityMatrix twirl_block(const DensityMatrix& rhoCoupled, const SchurTransform& st);

/// Product rule over Euler angles: uniform grids in alpha and gamma, Gauss-Legendre in cos(beta).
struct QuadratureSpec {
  int nAlpha = 1;
  int nBeta = 1;
  int nGamma = 1;

  /// nAlpha = nGamma = 2N+2, nBeta = N+2.
  static QuadratureSpec defaults(int n);
  /// Whether the rule integrates the degree-2N integrand exactly.
  [[nodiscard]] bool exact_for(int n) const;
};

struct TwirlOracleResult {
  DensityMatrix rho;
  QuadratureSpec quadrature;
  bool quadratureExact = false;
};

inline constexpr int kMaxOracleN = 8;

/// Gauss-Legendre nodes and weights on [-1, 1] (Golub-Welsch).
void gauss_legendre(int count, RealVector& nodes, RealVector& weights);

/// Numerical group integral of the twirl in the computational basis, for N <= 8.
/// The triple sum is evaluated factor by factor (gamma, then beta, then alpha),
/// which is the same sum as the full product rule. Beta nodes may run in
/// parallel; terms are added in node order.
TwirlOracleResult twirl_oracle(const DensityMatrix& rho, const QuadratureSpec& q,
                               Execution exec = Execution::Parallel);
TwirlOracleResult twirl_oracle(const DensityMatrix& rho);

/// F(phi) = sum_{j in Y} Tr_jR(Pi_j phi Pi_j) on H'_P (dimension d_P), for phi in H'.
/// The result is block diagonal with one DAlpha x DAlpha block per j in Y.
DensityMatrix reduced_map_F(const PureState& phi, const WorkingSpace& ws);

/// Same, for a coupled-basis state; DomainError if it leaks outside H'.
DensityMatrix reduced_map_F(const PureState& phiCoupled, const WorkingSpace& ws, const CoupledLayout& layout);

/// Per-irrep blocks Tr_jR of a working-space state, in Y order.
std::vector<ComplexMatrix> reduced_blocks(const ComplexVector& phi, const WorkingSpace& ws);

/// E(phi) for phi in H', on the support space (+)_{j in Y} H_jR (x) H'_jP.
DensityMatrix twirl_working_state(const PureState& phi, const WorkingSpace& ws);

struct ReferenceStates {
  /// rho0 on the twirl support space (+)_{j in Y} H_jR (x) H'_jP.
  DensityMatrix rho0;
  /// varrho0 = I / d_P on H'_P.
  DensityMatrix varrho0;
};

/// rho0 = (1/|Y|) sum_{j in Y} (I_dR / dR) (x) (I_DAlpha / DAlpha) and varrho0 = I_P / d_P.
ReferenceStates reference_states(const WorkingSpace& ws);

/// rho0 as a full coupled-basis matrix, for dense cross-checks at small N.
DensityMatrix reference_state_coupled(const WorkingSpace& ws, const CoupledLayout& layout);

}  // namespace srf
