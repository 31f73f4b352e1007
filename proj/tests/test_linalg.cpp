#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "srf/errors.hpp"
#include "srf/linalg.hpp"

using namespace srf;

namespace {

ComplexMatrix random_hermitian(Index dim, Rng& rng) {
  ComplexMatrix g(dim, dim);
  for (Index c = 0; c < dim; ++c) g.col(c) = gaussian_vector(dim, rng);
  return g + g.adjoint();
}

struct MeanAndError {
  double mean;
  double stdErr;
};

template <class F>
MeanAndError sample_mean(std::size_t n, F&& draw) {
  double s = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = draw(i);
    s += x;
    s2 += x * x;
  }
  const double mean = s / n;
  const double var = (s2 - n * mean * mean) / (n - 1.0);
  return {mean, std::sqrt(var / n)};
}

}  // namespace

TEST(TraceNorm, DiagonalSigns) {
  ComplexMatrix x = ComplexMatrix::Zero(2, 2);
  x(0, 0) = 1.0;
  x(1, 1) = -1.0;
  EXPECT_NEAR(trace_norm(x), 2.0, 1e-14);
}

TEST(TraceNorm, StateMinusItselfIsZero) {
  Rng rng = make_rng(RngSeed{3});
  const DensityMatrix rho = random_density_matrix(5, rng);
  EXPECT_EQ(trace_norm(rho.matrix() - rho.matrix()), 0.0);
}

TEST(TraceNorm, NilpotentUsesSingularValues) {
  ComplexMatrix x = ComplexMatrix::Zero(2, 2);
  x(0, 1) = 1.0;
  EXPECT_NEAR(trace_norm(x), 1.0, 1e-14);
}

TEST(TraceNorm, NonSquareIsDimensionError) {
  EXPECT_THROW(trace_norm(ComplexMatrix::Zero(2, 3)), DimensionError);
}

TEST(TraceNorm, TriangleInequality) {
  Rng rng = make_rng(RngSeed{11});
  for (int t = 0; t < 1000; ++t) {
    const ComplexMatrix a = random_hermitian(4, rng), b = random_hermitian(4, rng), c = random_hermitian(4, rng);
    EXPECT_LE(trace_norm(a - c), trace_norm(a - b) + trace_norm(b - c) + 1e-12);
  }
}

TEST(TraceNorm, PureStateDistanceChain) {
  Rng rng = make_rng(RngSeed{12});
  for (int t = 0; t < 10000; ++t) {
    const PureState phi = random_pure_state(4, rng), psi = random_pure_state(4, rng);
    const double overlap = std::norm(phi.amplitudes().dot(psi.amplitudes()));
    const double tn = trace_norm(phi.projector() - psi.projector());
    ASSERT_NEAR(tn, 2.0 * std::sqrt(std::max(0.0, 1.0 - overlap)), 1e-10);
    ASSERT_GE((phi.amplitudes() - psi.amplitudes()).squaredNorm() + 1e-12, 0.25 * tn * tn);
  }
}

TEST(PartialTrace, ProductState) {
  Rng rng = make_rng(RngSeed{5});
  const DensityMatrix a = random_density_matrix(2, rng), b = random_density_matrix(3, rng);
  const ComplexMatrix ab = kron(a.matrix(), b.matrix());
  EXPECT_LT((partial_trace(ab, 2, 3, TraceSide::Right) - a.matrix()).norm(), 1e-14);
  EXPECT_LT((partial_trace(ab, 2, 3, TraceSide::Left) - b.matrix()).norm(), 1e-14);
}

TEST(PartialTrace, MaximallyEntangled) {
  const Index d = 3;
  ComplexVector v = ComplexVector::Zero(d * d);
  for (Index i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(double(d));
  const DensityMatrix rho{PureState(v)};
  const ComplexMatrix id = ComplexMatrix::Identity(d, d) / double(d);
  EXPECT_LT((partial_trace(rho, d, d, TraceSide::Left).matrix() - id).norm(), 1e-14);
  EXPECT_LT((partial_trace(rho, d, d, TraceSide::Right).matrix() - id).norm(), 1e-14);
}

TEST(PartialTrace, MatchesIndexSummation) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng = make_rng(RngSeed{100}, s);
    const DensityMatrix rho = random_density_matrix(4, rng);
    for (bool left : {false, true}) {
      const ComplexMatrix mine = partial_trace(rho.matrix(), 2, 2, left ? TraceSide::Left : TraceSide::Right);
      EXPECT_LT((mine - oracle::partial_trace(rho.matrix(), 2, 2, left)).cwiseAbs().maxCoeff(), 1e-12);
    }
    const DensityMatrix big = random_density_matrix(6, rng);
    EXPECT_LT((partial_trace(big.matrix(), 2, 3, TraceSide::Left) - oracle::partial_trace(big.matrix(), 2, 3, true))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-12);
  }
}

TEST(PartialTrace, InvertsTensorEmbedding) {
  Rng rng = make_rng(RngSeed{6});
  const DensityMatrix sigma = random_density_matrix(3, rng);
  const ComplexMatrix tau = random_density_matrix(4, rng).matrix();
  EXPECT_LT((partial_trace(kron(tau, sigma.matrix()), 4, 3, TraceSide::Left) - sigma.matrix()).norm(), 1e-14);
}

TEST(PartialTrace, PreservesTrace) {
  Rng rng = make_rng(RngSeed{7});
  const DensityMatrix rho = random_density_matrix(6, rng);
  EXPECT_NEAR(partial_trace(rho, 3, 2, TraceSide::Right).matrix().trace().real(), 1.0, 1e-12);
}

TEST(PartialTrace, MismatchIsDimensionError) {
  EXPECT_THROW(partial_trace(ComplexMatrix::Identity(6, 6), 2, 2, TraceSide::Left), DimensionError);
}

TEST(HaarUnitary, DimensionOneIsPhase) {
  const ComplexMatrix u = haar_unitary(1, RngSeed{9});
  ASSERT_EQ(u.rows(), 1);
  EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-14);
}

TEST(HaarUnitary, DimensionZeroIsDomainError) { EXPECT_THROW(haar_unitary(0, RngSeed{1}), DomainError); }

TEST(HaarUnitary, IsUnitary) {
  for (Index dim : {2, 5, 17}) {
    const ComplexMatrix u = haar_unitary(dim, RngSeed{static_cast<std::uint64_t>(dim)});
    EXPECT_LT((u.adjoint() * u - ComplexMatrix::Identity(dim, dim)).norm(), 1e-12);
  }
}

TEST(HaarUnitary, SecondMomentOfEntry) {
  const Index k = 4;
  const auto r = sample_mean(100000, [&](std::size_t i) {
    Rng rng = make_rng(RngSeed{21}, i);
    return std::norm(haar_unitary(k, rng)(0, 0));
  });
  EXPECT_NEAR(r.mean, 1.0 / k, 3.0 * r.stdErr);
}

TEST(HaarUnitary, FourthMomentTwoDimensions) {
  const auto r = sample_mean(100000, [&](std::size_t i) {
    Rng rng = make_rng(RngSeed{22}, i);
    return std::pow(std::norm(haar_unitary(2, rng)(0, 0)), 2);
  });
  EXPECT_NEAR(r.mean, oracle::beta_second_moment(2), 3.0 * r.stdErr);
  EXPECT_NEAR(oracle::beta_second_moment(2), 1.0 / 3.0, 1e-15);
}

TEST(HaarUnitary, InvariantUnderFixedRotations) {
  const ComplexMatrix w = haar_unitary(3, RngSeed{500});
  const auto left = sample_mean(50000, [&](std::size_t i) {
    Rng rng = make_rng(RngSeed{23}, i);
    return std::pow(std::norm((w * haar_unitary(3, rng))(0, 0)), 2);
  });
  const auto right = sample_mean(50000, [&](std::size_t i) {
    Rng rng = make_rng(RngSeed{24}, i);
    return std::pow(std::norm((haar_unitary(3, rng) * w)(0, 1)), 2);
  });
  EXPECT_NEAR(left.mean, oracle::beta_second_moment(3), 4.0 * left.stdErr);
  EXPECT_NEAR(right.mean, oracle::beta_second_moment(3), 4.0 * right.stdErr);
}

TEST(RandomPureState, DimensionOne) {
  const PureState s = random_pure_state(1, RngSeed{4});
  EXPECT_NEAR(std::abs(s.amplitudes()(0)), 1.0, 1e-14);
}

TEST(RandomPureState, DimensionZeroIsDomainError) { EXPECT_THROW(random_pure_state(0, RngSeed{4}), DomainError); }

TEST(RandomPureState, NormsAndComponentDensity) {
  const Index dim = 6;
  const auto r = sample_mean(100000, [&](std::size_t i) {
    const PureState s = random_pure_state(dim, RngSeed{31 + i});
    EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-12);
    return std::norm(s.amplitudes()(0));
  });
  EXPECT_NEAR(r.mean, 1.0 / dim, 3.0 * r.stdErr);
}

TEST(States, ValidationRejectsBadInput) {
  EXPECT_THROW(PureState(ComplexVector::Ones(2)), DomainError);
  ComplexMatrix notHermitian = ComplexMatrix::Identity(2, 2) / 2.0;
  notHermitian(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix{notHermitian}, DomainError);
  EXPECT_THROW(DensityMatrix{ComplexMatrix::Identity(2, 2)}, DomainError);
  ComplexMatrix negative = ComplexMatrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix{negative}, DomainError);
  EXPECT_NO_THROW(DensityMatrix(negative, Validation::Structure));
  EXPECT_THROW(DensityMatrix(ComplexMatrix::Zero(2, 3)), DimensionError);
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
  Rng a = make_rng(RngSeed{42}, 3), b = make_rng(RngSeed{42}, 3), c = make_rng(RngSeed{42}, 4);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
}
