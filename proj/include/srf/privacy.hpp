#pragma once

// Privacy functional f(phi) = ||E(phi) - rho0||_1 on the working space, random
// subspaces, covering nets and the Monte Carlo experiments that probe its
// concentration.
//
// Every experiment is a deterministic function of its parameters and seed.
// Sample i draws from make_rng(seed, i); the Parallel and Serial execution
// paths therefore give bit-identical reports.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "srf/channel.hpp"
#include "srf/linalg.hpp"
#include "srf/parallel.hpp"
#include "srf/workspace.hpp"

namespace srf {

/// log2(C ln 2 / (5832 sqrt 15)), the additive constant tied to a Levy constant C.
double cprime_from_levy(double levyC);

struct PrivacyParams {
  double delta = 0.5;
  double epsilon = 0.5 / 3.0;
  double gamma = 0.2;
  /// Levy constant C; not fixed by the theory, fitted from tails in practice.
  double levyC = 1.0;
  double cPrime = cprime_from_levy(1.0);

  /// epsilon = delta / 3 and cPrime from levyC unless given.
  static PrivacyParams for_delta(double delta, double levyC = 1.0, std::optional<double> cPrime = std::nullopt);
  /// DomainError unless 0 < epsilon < delta <= 2, gamma > 0 and levyC > 0.
  void validate() const;
};

// ---------------------------------------------------------------------------
// f and its two evaluation routes

/// f via the reduced map: sum_j ||Tr_jR(phi_j) - I/d_P||_1 on d_P-dimensional blocks.
double f_eval(const PureState& phi, const WorkingSpace& ws);

enum class FCheck { None, CrossCheck };

/// With CrossCheck, also evaluates f_via_twirl and throws std::logic_error if
/// the two differ by more than 1e-9.
double f_eval(const PureState& phi, const WorkingSpace& ws, FCheck check);

/// f through the twirl itself, in block arithmetic over the full multiplicity
/// spaces: embed into each H_jR (x) H_jP, partial-trace the projected state,
/// subtract rho0's multiplicity factor. Uses ||(I/d) (x) X||_1 = ||X||_1.
double f_via_twirl(const PureState& phi, const WorkingSpace& ws);

/// f through the computational basis: embed with V, rotate back, apply
/// twirl_block on the whole 2^N space and take one dense trace norm.
double f_via_full_space(const PureState& phi, const WorkingSpace& ws, const SchurTransform& st);

/// f(phi_i) for phi_i = random_pure_state(K, make_rng(seed, i)), i < count.
std::vector<double> sample_f_values(const WorkingSpace& ws, std::size_t count, RngSeed seed,
                                    Execution exec = Execution::Parallel);

double helstrom_distinguish(const DensityMatrix& rho1, const DensityMatrix& rho2);

// ---------------------------------------------------------------------------
// subspaces and nets

struct SubspaceSample {
  Index ambientDim = 0;
  Index dimS = 0;
  RngSeed seed;
  /// K x dimS, orthonormal columns.
  ComplexMatrix basis;

  [[nodiscard]] PureState basis_state(Index i) const;
  /// B c for unit coefficients c.
  [[nodiscard]] PureState state(const ComplexVector& coeffs) const;
};

/// S = U S0 with U Haar on H' and S0 the span of the first dimS coordinates.
SubspaceSample sample_subspace(const WorkingSpace& ws, Index dimS, RngSeed seed);

/// Largest principal angle between two subspaces of equal ambient dimension.
double max_principal_angle(const SubspaceSample& a, const SubspaceSample& b);

struct NetOptions {
  std::size_t consecutiveRejections = 10000;
  std::size_t certificationProbes = 10000;
};

struct EpsNet {
  int dimS = 0;
  double epsilon = 0.0;
  std::vector<ComplexVector> points;
  /// ceil((5/epsilon)^(2 dimS)).
  double sizeBound = 0.0;
  /// Fresh probes that passed the final covering pass.
  std::size_t certifiedProbes = 0;

  [[nodiscard]] double nearest_distance(const ComplexVector& v) const;
  [[nodiscard]] bool covers(const ComplexVector& v) const { return nearest_distance(v) <= epsilon / 2.0; }
};

inline constexpr int kMaxNetDim = 3;

/// Greedy random epsilon/2-net on the unit sphere of C^dimS.
/// ResourceError for dimS > 3, DomainError for epsilon outside (0, 1].
EpsNet build_eps_net(int dimS, double epsilon, RngSeed seed, const NetOptions& opts = {});

struct EstimateOptions {
  std::size_t restarts = 8;
  int maxIterations = 200;
  /// Net spacing is netEpsilon / 2, so the certified bound is net max + netEpsilon.
  double netEpsilon = 0.5;
  NetOptions net;
};

struct MaxFEstimate {
  double lowerBound = 0.0;
  std::optional<double> certifiedUpperBound;
  ComplexVector argmax;
  std::optional<std::size_t> netSize;
  double netEpsilon = 0.0;
  /// f values of the random probes, in probe order.
  std::vector<double> probes;
};

/// Best f over `budget` random states of S, refined by alternating ascent.
/// A certified bound is attached when dimS <= 2.
MaxFEstimate estimate_max_f(const SubspaceSample& s, const WorkingSpace& ws, std::size_t budget, RngSeed seed,
                            const EstimateOptions& opts = {});

// ---------------------------------------------------------------------------
// experiments

struct ConcentrationReport {
  std::size_t nSamples = 0;
  Index k = 0;
  RngSeed seed;
  double meanF = 0.0;
  double medianF = 0.0;
  double stdF = 0.0;
  double stdErr = 0.0;
  double lemma4Bound = 0.0;    // 1/sqrt(alpha)
  double tighterBound = 0.0;   // sqrt(DAlpha/D)
  bool meanWithinLemma4 = false;
  bool meanWithinTighter = false;
  bool medianWithinTwiceMean = false;
  std::vector<double> gammas;
  std::vector<double> tails;
  std::vector<double> levyBounds;
  double levyC = 0.0;
  /// Largest C for which exp2(-C (K-1) gamma^2 / 2) majorizes every empirical tail;
  /// absent when no tail is positive.
  std::optional<double> fittedC;
};

double median(std::vector<double> values);

/// Mean and median of f over Haar-random phi in H' (nSamples >= 100).
ConcentrationReport mean_f_experiment(const WorkingSpace& ws, std::size_t nSamples, RngSeed seed,
                                      Execution exec = Execution::Parallel);

/// Empirical Pr(|f - median| > gamma) per gamma, Levy-form comparison and fitted C (nSamples >= 1000).
ConcentrationReport concentration_experiment(const WorkingSpace& ws, std::size_t nSamples,
                                             const std::vector<double>& gammaGrid, const PrivacyParams& params,
                                             RngSeed seed, Execution exec = Execution::Parallel);

struct ConcentrationTrend {
  std::vector<ConcentrationReport> reports;  // ordered by K ascending
  /// Per gamma: tails non-increasing as K grows.
  std::vector<bool> sharpening;
};

ConcentrationTrend concentration_trend(const std::vector<WorkingSpace>& family, std::size_t nSamples,
                                       const std::vector<double>& gammaGrid, const PrivacyParams& params,
                                       RngSeed seed, Execution exec = Execution::Parallel);

struct LipschitzOptions {
  /// Every second pair is a nearby pair at this Euclidean distance.
  double nearbyDistance = 1e-4;
};

struct LipschitzReport {
  std::size_t nPairs = 0;
  std::size_t skipped = 0;
  double maxRatio = 0.0;
  double maxRatioNearby = 0.0;
  bool withinBound = false;  // maxRatio <= 2 + 1e-9
};

LipschitzReport lipschitz_check(const WorkingSpace& ws, std::size_t nPairs, RngSeed seed,
                                const LipschitzOptions& opts = {}, Execution exec = Execution::Parallel);

/// int U_ij U*_kl U_mn U*_pq dU over U(K).
double haar_fourth_moment(Index k, Index i, Index j, Index kk, Index l, Index m, Index n, Index p, Index q);

struct MomentEntry {
  std::string name;
  double estimate = 0.0;
  double estimateImag = 0.0;
  double stdErr = 0.0;
  double stdErrImag = 0.0;
  double exact = 0.0;
  bool withinTolerance = false;  // 4 standard errors
};

struct HaarMomentReport {
  Index k = 0;
  std::size_t nSamples = 0;
  std::vector<MomentEntry> moments;
  double sumRuleExact = 0.0;
  double sumRuleMaxDeviation = 0.0;
};

/// Monte Carlo |U11|^4, |U11|^2 |U12|^2 and U11 U12* U22 U21* against the
/// closed form. DomainError for K < 2.
HaarMomentReport haar_moment_check(Index k, std::size_t nSamples, RngSeed seed,
                                   Execution exec = Execution::Parallel);

struct Theorem1Options {
  std::size_t budget = 64;
  std::size_t statesPerSubspace = 200;
  EstimateOptions estimate;
};

struct Theorem1Report {
  int n = 0;
  double delta = 0.0;
  double alpha = 0.0;
  double epsilon = 0.0;
  double cPrime = 0.0;
  double boundBits = 0.0;
  bool feasible = false;
  std::string reason;
  Index dimS = 0;
  bool dimClamped = false;
  std::optional<nlohmann::json> workspace;
  std::size_t nSubspaces = 0;
  std::vector<double> lowerBounds;
  double fractionNonPrivate = 0.0;
  double fractionStatesAboveDelta = 0.0;
};

/// Samples subspaces at the dimension the bound permits with alpha = 36/delta^2
/// and epsilon = delta/3. Infeasible parameters yield feasible = false.
Theorem1Report theorem1_experiment(int n, double delta, const PrivacyParams& params, std::size_t nSubspaces,
                                   RngSeed seed, const Theorem1Options& opts = {});

nlohmann::json to_json(const ConcentrationReport& r);
nlohmann::json to_json(const LipschitzReport& r);
nlohmann::json to_json(const HaarMomentReport& r);
nlohmann::json to_json(const Theorem1Report& r);
nlohmann::json to_json(const EpsNet& net);

}  // namespace srf
