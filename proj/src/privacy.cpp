#include "srf/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "srf/capacity.hpp"
#include "srf/errors.hpp"

namespace srf {

double cprime_from_levy(double levyC) {
  return std::log2(levyC * std::log(2.0) / (5832.0 * std::sqrt(15.0)));
}

PrivacyParams PrivacyParams::for_delta(double delta, double levyC, std::optional<double> cPrime) {
  PrivacyParams p;
  p.delta = delta;
  p.epsilon = delta / 3.0;
  p.levyC = levyC;
  p.cPrime = cPrime.value_or(cprime_from_levy(levyC));
  p.validate();
  return p;
}

void PrivacyParams::validate() const {
  if (!(delta > 0.0 && delta <= 2.0)) throw DomainError("privacy params: delta must lie in (0, 2]");
  if (!(epsilon > 0.0 && epsilon < delta)) throw DomainError("privacy params: need 0 < epsilon < delta");
  if (!(gamma > 0.0)) throw DomainError("privacy params: gamma must be positive");
  if (!(levyC > 0.0)) throw DomainError("privacy params: Levy constant must be positive");
  if (!std::isfinite(cPrime)) throw DomainError("privacy params: cPrime must be finite");
}

namespace {

/// Hermitian sign function, sign(0) = 0.
ComplexMatrix hermitian_sign(const ComplexMatrix& x) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (x + x.adjoint()));
  RealVector s = es.eigenvalues().unaryExpr([](double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); });
  return es.eigenvectors() * s.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

double f_from_blocks(const std::vector<ComplexMatrix>& blocks, Index dP) {
  const double shift = 1.0 / static_cast<double>(dP);
  double total = 0.0;
  for (const auto& a : blocks) {
    ComplexMatrix x = a;
    x.diagonal().array() -= shift;
    total += trace_norm(x);
  }
  return total;
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

double f_eval(const PureState& phi, const WorkingSpace& ws) {
  return f_from_blocks(reduced_blocks(phi.amplitudes(), ws), ws.d_p());
}

double f_eval(const PureState& phi, const WorkingSpace& ws, FCheck check) {
  const double f = f_eval(phi, ws);
  if (check == FCheck::CrossCheck) {
    const double viaTwirl = f_via_twirl(phi, ws);
    if (std::abs(f - viaTwirl) > 1e-9) {
      throw std::logic_error("f_eval: reduced route " + std::to_string(f) + " disagrees with twirl route " +
                             std::to_string(viaTwirl));
    }
  }
  return f;
}

double f_via_twirl(const PureState& phi, const WorkingSpace& ws) {
  if (phi.dim() != ws.k()) throw DimensionError("f_via_twirl: state dimension differs from K");
  const Index da = ws.d_alpha();
  const double weight = 1.0 / (static_cast<double>(da) * static_cast<double>(ws.sectors().size()));
  double total = 0.0;
  for (const auto& s : ws.sectors()) {
    if (s.dimP > BigInt(8192)) throw ResourceError("f_via_twirl: multiplicity space too large for dense blocks");
    const Index dimP = static_cast<Index>(s.dimP.convert_to<std::int64_t>());
    const Index dimR = s.dimR;
    ComplexVector block = ComplexVector::Zero(dimR * dimP);
    for (Index mIndex = 0; mIndex < ws.d(); ++mIndex) {
      for (Index l = 0; l < da; ++l) block(mIndex * dimP + l) = phi.amplitudes()(s.offset + mIndex * da + l);
    }
    const ComplexMatrix projected = block * block.adjoint();
    ComplexMatrix diff = partial_trace(projected, dimR, dimP, TraceSide::Left);
    diff.diagonal().head(da).array() -= weight;
    total += trace_norm(diff);
  }
  return total;
}

double f_via_full_space(const PureState& phi, const WorkingSpace& ws, const SchurTransform& st) {
  const PureState computational = embed_state(phi, ws, EmbedTarget::Computational, st);
  const PureState coupled = PureState::normalized(st.v.adjoint() * computational.amplitudes());
  const DensityMatrix twirled = twirl_block(DensityMatrix(coupled), st.layout);
  const DensityMatrix rho0 = reference_state_coupled(ws, st.layout);
  return trace_norm(twirled.matrix() - rho0.matrix());
}

std::vector<double> sample_f_values(const WorkingSpace& ws, std::size_t count, RngSeed seed, Execution exec) {
  std::vector<double> out(count);
  for_each_index(count, exec, [&](std::size_t i) {
    Rng rng = make_rng(seed, i);
    out[i] = f_eval(random_pure_state(ws.k(), rng), ws);
  });
  return out;
}

double helstrom_distinguish(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim()) {
    throw DimensionError("helstrom_distinguish: states of dimension " + std::to_string(rho1.dim()) + " and " +
                         std::to_string(rho2.dim()));
  }
  return 0.5 + 0.25 * trace_norm(rho1.matrix() - rho2.matrix());
}

PureState SubspaceSample::basis_state(Index i) const {
  if (i < 0 || i >= dimS) throw DimensionError("subspace basis index out of range");
  return PureState::normalized(basis.col(i));
}

PureState SubspaceSample::state(const ComplexVector& coeffs) const {
  if (coeffs.size() != dimS) throw DimensionError("subspace coefficients have the wrong dimension");
  return PureState::normalized(basis * coeffs);
}

SubspaceSample sample_subspace(const WorkingSpace& ws, Index dimS, RngSeed seed) {
  if (dimS < 1 || dimS > ws.k()) {
    throw DomainError("sample_subspace: dimension " + std::to_string(dimS) + " outside [1, K=" +
                      std::to_string(ws.k()) + "]");
  }
  const ComplexMatrix u = haar_unitary(ws.k(), seed);
  return SubspaceSample{ws.k(), dimS, seed, u.leftCols(dimS)};
}

double max_principal_angle(const SubspaceSample& a, const SubspaceSample& b) {
  if (a.ambientDim != b.ambientDim || a.dimS != b.dimS) throw DimensionError("principal angle: shape mismatch");
  Eigen::JacobiSVD<ComplexMatrix> svd(a.basis.adjoint() * b.basis);
  const double smallest = std::clamp(svd.singularValues().minCoeff(), 0.0, 1.0);
  return std::acos(smallest);
}

double EpsNet::nearest_distance(const ComplexVector& v) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : points) best = std::min(best, (p - v).squaredNorm());
  return std::sqrt(best);
}

EpsNet build_eps_net(int dimS, double epsilon, RngSeed seed, const NetOptions& opts) {
  if (dimS < 1) throw DomainError("build_eps_net: dimension must be positive");
  if (dimS > kMaxNetDim) throw ResourceError("build_eps_net: covering nets limited to dimS <= 3");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("build_eps_net: epsilon must lie in (0, 1]");

  EpsNet net;
  net.dimS = dimS;
  net.epsilon = epsilon;
  net.sizeBound = std::ceil(std::pow(5.0 / epsilon, 2.0 * dimS));
  const double radius = epsilon / 2.0;

  Rng rng = make_rng(seed, 0);
  std::size_t rejections = 0;
  while (rejections < opts.consecutiveRejections) {
    ComplexVector p = random_pure_state(dimS, rng).amplitudes();
    if (net.nearest_distance(p) > radius) {
      net.points.push_back(std::move(p));
      rejections = 0;
    } else {
      ++rejections;
    }
  }
  // covering pass on an independent stream; a miss joins the net and restarts the pass
  Rng probes = make_rng(seed, 1);
  std::size_t clean = 0;
  while (clean < opts.certificationProbes) {
    ComplexVector p = random_pure_state(dimS, probes).amplitudes();
    if (net.nearest_distance(p) > radius) {
      net.points.push_back(std::move(p));
      clean = 0;
    } else {
      ++clean;
    }
  }
  net.certifiedProbes = clean;
  if (static_cast<double>(net.points.size()) > net.sizeBound) {
    throw std::logic_error("build_eps_net: net exceeds the (5/epsilon)^(2 dim) size bound");
  }
  return net;
}

namespace {

struct AscentWorkspace {
  const SubspaceSample& s;
  const WorkingSpace& ws;

  double value(const ComplexVector& coeffs) const { return f_eval(s.state(coeffs), ws); }

  /// One alternating step: G = sign(F(phi) - I/d_P), then the top eigenvector of B^dagger (I (x) G) B.
  ComplexVector step(const ComplexVector& coeffs) const {
    const ComplexVector phi = s.basis * coeffs;
    const auto blocks = reduced_blocks(phi, ws);
    const double shift = 1.0 / static_cast<double>(ws.d_p());
    const Index d = ws.d();
    const Index da = ws.d_alpha();
    std::vector<ComplexMatrix> signs;
    signs.reserve(blocks.size());
    for (const auto& a : blocks) {
      ComplexMatrix x = a;
      x.diagonal().array() -= shift;
      signs.push_back(hermitian_sign(x));
    }
    ComplexMatrix hb(s.basis.rows(), s.basis.cols());
    for (Index c = 0; c < s.basis.cols(); ++c) {
      for (std::size_t k = 0; k < signs.size(); ++k) {
        const Index off = ws.sectors()[k].offset;
        using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
        const Eigen::Map<const RowMajor> m(s.basis.col(c).data() + off, d, da);
        Eigen::Map<RowMajor> out(hb.col(c).data() + off, d, da);
        out = m * signs[k].transpose();
      }
    }
    const ComplexMatrix reduced = s.basis.adjoint() * hb;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (reduced + reduced.adjoint()));
    return es.eigenvectors().col(s.dimS - 1);
  }
};

}  // namespace

MaxFEstimate estimate_max_f(const SubspaceSample& s, const WorkingSpace& ws, std::size_t budget, RngSeed seed,
                            const EstimateOptions& opts) {
  if (budget < 1) throw DomainError("estimate_max_f: budget must be at least 1");
  if (s.ambientDim != ws.k()) throw DimensionError("estimate_max_f: subspace lives in a different working space");

  const AscentWorkspace asc{s, ws};
  MaxFEstimate out;
  out.netEpsilon = opts.netEpsilon;

  if (s.dimS == 1) {
    // phase invariance collapses the sphere of a line to one state
    const double f = asc.value(ComplexVector::Ones(1));
    out.lowerBound = f;
    out.certifiedUpperBound = f;
    out.argmax = ComplexVector::Ones(1);
    out.probes.assign(budget, f);
    return out;
  }

  Rng rng = make_rng(seed, 0);
  std::vector<ComplexVector> starts;
  starts.reserve(budget);
  out.probes.reserve(budget);
  for (std::size_t i = 0; i < budget; ++i) {
    starts.push_back(random_pure_state(s.dimS, rng).amplitudes());
    out.probes.push_back(asc.value(starts.back()));
  }
  std::vector<std::size_t> order(budget);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return out.probes[a] > out.probes[b]; });

  out.lowerBound = -1.0;
  const std::size_t restarts = std::min(budget, std::max<std::size_t>(opts.restarts, 1));
  for (std::size_t r = 0; r < restarts; ++r) {
    ComplexVector c = starts[order[r]];
    double f = out.probes[order[r]];
    for (int it = 0; it < opts.maxIterations; ++it) {
      const ComplexVector next = asc.step(c);
      const double fn = asc.value(next);
      if (!(fn > f + 1e-13)) break;
      c = next;
      f = fn;
    }
    if (f > out.lowerBound) {
      out.lowerBound = f;
      out.argmax = c;
    }
  }

  if (s.dimS <= 2) {
    const EpsNet net = build_eps_net(static_cast<int>(s.dimS), opts.netEpsilon, derive_seed(seed, 1), opts.net);
    double netMax = 0.0;
    for (const auto& p : net.points) netMax = std::max(netMax, asc.value(p));
    out.certifiedUpperBound = netMax + opts.netEpsilon;
    out.netSize = net.points.size();
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw DomainError("median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

namespace {

ConcentrationReport summarize(const WorkingSpace& ws, const std::vector<double>& values, RngSeed seed) {
  ConcentrationReport r;
  r.nSamples = values.size();
  r.k = ws.k();
  r.seed = seed;
  r.meanF = mean_of(values);
  r.medianF = median(values);
  r.stdF = sample_std(values, r.meanF);
  r.stdErr = r.stdF / std::sqrt(static_cast<double>(values.size()));
  r.lemma4Bound = 1.0 / std::sqrt(ws.alpha());
  r.tighterBound = std::sqrt(static_cast<double>(ws.d_alpha()) / static_cast<double>(ws.d()));
  r.meanWithinLemma4 = r.meanF <= r.lemma4Bound + 3.0 * r.stdErr;
  r.meanWithinTighter = r.meanF <= r.tighterBound + 3.0 * r.stdErr;
  r.medianWithinTwiceMean = r.medianF <= 2.0 * r.meanF;
  return r;
}

}  // namespace

ConcentrationReport mean_f_experiment(const WorkingSpace& ws, std::size_t nSamples, RngSeed seed, Execution exec) {
  if (nSamples < 100) throw DomainError("mean_f_experiment: need at least 100 samples");
  return summarize(ws, sample_f_values(ws, nSamples, seed, exec), seed);
}

ConcentrationReport concentration_experiment(const WorkingSpace& ws, std::size_t nSamples,
                                             const std::vector<double>& gammaGrid, const PrivacyParams& params,
                                             RngSeed seed, Execution exec) {
  if (nSamples < 1000) throw DomainError("concentration_experiment: need at least 1000 samples");
  if (!(params.levyC > 0.0)) throw DomainError("concentration_experiment: Levy constant must be positive");
  const std::vector<double> values = sample_f_values(ws, nSamples, seed, exec);
  ConcentrationReport r = summarize(ws, values, seed);
  r.levyC = params.levyC;
  r.gammas = gammaGrid;
  std::sort(r.gammas.begin(), r.gammas.end());
  const double km1 = static_cast<double>(ws.k() - 1);
  for (double g : r.gammas) {
    if (!(g > 0.0)) throw DomainError("concentration_experiment: gamma values must be positive");
    const auto exceed = std::count_if(values.begin(), values.end(),
                                      [&](double f) { return std::abs(f - r.medianF) > g; });
    const double tail = static_cast<double>(exceed) / static_cast<double>(values.size());
    r.tails.push_back(tail);
    r.levyBounds.push_back(std::exp2(-params.levyC * km1 * g * g / 2.0));
    if (tail > 0.0) {
      const double c = -2.0 * std::log2(tail) / (km1 * g * g);
      r.fittedC = r.fittedC ? std::min(*r.fittedC, c) : c;
    }
  }
  return r;
}

ConcentrationTrend concentration_trend(const std::vector<WorkingSpace>& family, std::size_t nSamples,
                                       const std::vector<double>& gammaGrid, const PrivacyParams& params,
                                       RngSeed seed, Execution exec) {
  std::vector<const WorkingSpace*> sorted;
  for (const auto& ws : family) sorted.push_back(&ws);
  std::stable_sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->k() < b->k(); });
  ConcentrationTrend t;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    t.reports.push_back(concentration_experiment(*sorted[i], nSamples, gammaGrid, params, derive_seed(seed, i), exec));
  }
  const std::size_t ng = t.reports.empty() ? 0 : t.reports.front().gammas.size();
  for (std::size_t g = 0; g < ng; ++g) {
    bool ok = true;
    for (std::size_t i = 1; i < t.reports.size(); ++i) ok = ok && t.reports[i].tails[g] <= t.reports[i - 1].tails[g];
    t.sharpening.push_back(ok);
  }
  return t;
}

LipschitzReport lipschitz_check(const WorkingSpace& ws, std::size_t nPairs, RngSeed seed,
                                const LipschitzOptions& opts, Execution exec) {
  if (nPairs < 1) throw DomainError("lipschitz_check: need at least one pair");
  std::vector<double> ratios(nPairs, -1.0);
  for_each_index(nPairs, exec, [&](std::size_t i) {
    Rng rng = make_rng(seed, i);
    const PureState phi = random_pure_state(ws.k(), rng);
    ComplexVector psi;
    if (i % 2 == 1) {
      ComplexVector xi = gaussian_vector(ws.k(), rng);
      xi -= phi.amplitudes() * phi.amplitudes().dot(xi);
      xi.normalize();
      const double t = 2.0 * std::asin(opts.nearbyDistance / 2.0);
      psi = std::cos(t) * phi.amplitudes() + std::sin(t) * xi;
    } else {
      psi = random_pure_state(ws.k(), rng).amplitudes();
    }
    const PureState other = PureState::normalized(psi);
    const double dist = (phi.amplitudes() - other.amplitudes()).norm();
    if (dist < 1e-14) return;
    ratios[i] = std::abs(f_eval(phi, ws) - f_eval(other, ws)) / dist;
  });
  LipschitzReport r;
  r.nPairs = nPairs;
  for (std::size_t i = 0; i < nPairs; ++i) {
    if (ratios[i] < 0.0) {
      ++r.skipped;
      continue;
    }
    r.maxRatio = std::max(r.maxRatio, ratios[i]);
    if (i % 2 == 1) r.maxRatioNearby = std::max(r.maxRatioNearby, ratios[i]);
  }
  r.withinBound = r.maxRatio <= 2.0 + 1e-9;
  return r;
}

double haar_fourth_moment(Index k, Index i, Index j, Index kk, Index l, Index m, Index n, Index p, Index q) {
  if (k < 2) throw DomainError("haar_fourth_moment: the closed form needs K >= 2");
  const auto d = [](Index a, Index b) { return a == b ? 1.0 : 0.0; };
  const double kd = static_cast<double>(k);
  const double direct = d(i, kk) * d(j, l) * d(m, p) * d(n, q) + d(i, p) * d(j, q) * d(kk, m) * d(l, n);
  const double crossed = d(i, kk) * d(j, q) * d(l, n) * d(m, p) + d(i, p) * d(j, l) * d(kk, m) * d(n, q);
  return (direct - crossed / kd) / (kd * kd - 1.0);
}

HaarMomentReport haar_moment_check(Index k, std::size_t nSamples, RngSeed seed, Execution exec) {
  if (k < 2) throw DomainError("haar_moment_check: K must be at least 2");
  if (nSamples < 2) throw DomainError("haar_moment_check: need at least two samples");
  struct Draw {
    double fourth, mixed;
    Complex cross;
    double sumRule;
  };
  std::vector<Draw> draws(nSamples);
  for_each_index(nSamples, exec, [&](std::size_t s) {
    Rng rng = make_rng(seed, s);
    const ComplexMatrix u = haar_unitary(k, rng);
    const double a11 = std::norm(u(0, 0));
    const double a12 = std::norm(u(0, 1));
    double rowSq = 0.0;
    for (Index c = 0; c < k; ++c) rowSq += std::norm(u(0, c));
    draws[s] = Draw{a11 * a11, a11 * a12, u(0, 0) * std::conj(u(0, 1)) * u(1, 1) * std::conj(u(1, 0)),
                    rowSq * rowSq};
  });

  HaarMomentReport r;
  r.k = k;
  r.nSamples = nSamples;
  const double ns = static_cast<double>(nSamples);
  auto add = [&](std::string name, auto getRe, auto getIm, double exact) {
    std::vector<double> re(nSamples), im(nSamples);
    for (std::size_t s = 0; s < nSamples; ++s) {
      re[s] = getRe(draws[s]);
      im[s] = getIm(draws[s]);
    }
    MomentEntry e;
    e.name = std::move(name);
    e.estimate = mean_of(re);
    e.estimateImag = mean_of(im);
    e.stdErr = sample_std(re, e.estimate) / std::sqrt(ns);
    e.stdErrImag = sample_std(im, e.estimateImag) / std::sqrt(ns);
    e.exact = exact;
    e.withinTolerance = std::abs(e.estimate - exact) <= 4.0 * e.stdErr &&
                        std::abs(e.estimateImag) <= 4.0 * e.stdErrImag;
    r.moments.push_back(std::move(e));
  };
  const auto zero = [](const Draw&) { return 0.0; };
  // zero-based indices: U_11 -> (0,0)
  add("|U11|^4", [](const Draw& d) { return d.fourth; }, zero, haar_fourth_moment(k, 0, 0, 0, 0, 0, 0, 0, 0));
  add("|U11|^2|U12|^2", [](const Draw& d) { return d.mixed; }, zero, haar_fourth_moment(k, 0, 0, 0, 0, 0, 1, 0, 1));
  add("U11 U12* U22 U21*", [](const Draw& d) { return d.cross.real(); }, [](const Draw& d) { return d.cross.imag(); },
      haar_fourth_moment(k, 0, 0, 0, 1, 1, 1, 1, 0));

  r.sumRuleExact = 0.0;
  for (Index j = 0; j < k; ++j) {
    for (Index l = 0; l < k; ++l) r.sumRuleExact += haar_fourth_moment(k, 0, j, 0, j, 0, l, 0, l);
  }
  for (const auto& d : draws) r.sumRuleMaxDeviation = std::max(r.sumRuleMaxDeviation, std::abs(d.sumRule - 1.0));
  return r;
}

Theorem1Report theorem1_experiment(int n, double delta, const PrivacyParams& params, std::size_t nSubspaces,
                                   RngSeed seed, const Theorem1Options& opts) {
  require_even_n(n);
  if (!(delta > 0.0 && delta <= 2.0)) throw DomainError("theorem1_experiment: delta must lie in (0, 2]");
  Theorem1Report r;
  r.n = n;
  r.delta = delta;
  r.alpha = 36.0 / (delta * delta);
  r.epsilon = delta / 3.0;
  r.cPrime = params.cPrime;
  r.boundBits = thm1_dim_bound(n, delta, params.cPrime);
  r.nSubspaces = nSubspaces;

  std::optional<WorkingSpace> ws;
  try {
    ws = build_working_space(n, r.alpha);
  } catch (const DomainError& e) {
    r.reason = std::string("working space does not exist: ") + e.what();
    return r;
  }
  r.workspace = to_json(*ws);

  // largest integer dim with log2(dim) strictly below the bound
  const double cap = std::exp2(r.boundBits);
  if (!(cap > 1.0)) {
    r.reason = "dimension bound admits no subspace (2^bound <= 1)";
    return r;
  }
  double dimS = std::ceil(cap) - 1.0;
  if (dimS >= static_cast<double>(ws->k())) {
    dimS = static_cast<double>(ws->k());
    r.dimClamped = true;
  }
  r.dimS = static_cast<Index>(dimS);
  r.feasible = true;

  std::size_t nonPrivate = 0;
  std::size_t statesAbove = 0;
  std::size_t statesTotal = 0;
  for (std::size_t i = 0; i < nSubspaces; ++i) {
    const SubspaceSample s = sample_subspace(*ws, r.dimS, derive_seed(seed, 2 * i));
    const MaxFEstimate est = estimate_max_f(s, *ws, opts.budget, derive_seed(seed, 2 * i + 1), opts.estimate);
    r.lowerBounds.push_back(est.lowerBound);
    if (est.lowerBound > delta) ++nonPrivate;
    Rng rng = make_rng(derive_seed(seed, 2 * i + 1), 7);
    for (std::size_t t = 0; t < opts.statesPerSubspace; ++t) {
      const PureState phi = s.state(random_pure_state(s.dimS, rng).amplitudes());
      if (f_eval(phi, *ws) > delta) ++statesAbove;
      ++statesTotal;
    }
  }
  if (nSubspaces > 0) r.fractionNonPrivate = static_cast<double>(nonPrivate) / static_cast<double>(nSubspaces);
  if (statesTotal > 0) r.fractionStatesAboveDelta = static_cast<double>(statesAbove) / static_cast<double>(statesTotal);
  return r;
}

nlohmann::json to_json(const ConcentrationReport& r) {
  nlohmann::json j{{"nSamples", r.nSamples},
                   {"K", r.k},
                   {"seed", r.seed.value},
                   {"meanF", r.meanF},
                   {"medianF", r.medianF},
                   {"stdF", r.stdF},
                   {"stdErr", r.stdErr},
                   {"lemma4Bound", r.lemma4Bound},
                   {"tighterBound", r.tighterBound},
                   {"meanWithinLemma4", r.meanWithinLemma4},
                   {"meanWithinTighter", r.meanWithinTighter},
                   {"medianWithinTwiceMean", r.medianWithinTwiceMean}};
  if (!r.gammas.empty()) {
    j["gamma"] = r.gammas;
    j["tail"] = r.tails;
    j["levyBound"] = r.levyBounds;
    j["levyC"] = r.levyC;
    j["fittedC"] = r.fittedC ? nlohmann::json(*r.fittedC) : nlohmann::json(nullptr);
  }
  return j;
}

nlohmann::json to_json(const LipschitzReport& r) {
  return {{"nPairs", r.nPairs},
          {"skipped", r.skipped},
          {"maxRatio", r.maxRatio},
          {"maxRatioNearby", r.maxRatioNearby},
          {"bound", 2.0},
          {"withinBound", r.withinBound}};
}

nlohmann::json to_json(const HaarMomentReport& r) {
  nlohmann::json moments = nlohmann::json::array();
  for (const auto& m : r.moments) {
    moments.push_back({{"name", m.name},
                       {"estimate", m.estimate},
                       {"estimateImag", m.estimateImag},
                       {"stdErr", m.stdErr},
                       {"stdErrImag", m.stdErrImag},
                       {"exact", m.exact},
                       {"withinTolerance", m.withinTolerance}});
  }
  return {{"K", r.k},
          {"nSamples", r.nSamples},
          {"moments", moments},
          {"sumRuleExact", r.sumRuleExact},
          {"sumRuleMaxDeviation", r.sumRuleMaxDeviation}};
}

nlohmann::json to_json(const Theorem1Report& r) {
  nlohmann::json j{{"N", r.n},
                   {"delta", r.delta},
                   {"alpha", r.alpha},
                   {"epsilon", r.epsilon},
                   {"cPrime", r.cPrime},
                   {"boundBits", r.boundBits},
                   {"status", r.feasible ? "feasible" : "infeasible"}};
  if (!r.feasible) {
    j["reason"] = r.reason;
    return j;
  }
  j["dimS"] = r.dimS;
  j["dimClamped"] = r.dimClamped;
  j["nSubspaces"] = r.nSubspaces;
  j["lowerBounds"] = r.lowerBounds;
  j["fractionNonPrivate"] = r.fractionNonPrivate;
  j["fractionStatesAboveDelta"] = r.fractionStatesAboveDelta;
  return j;
}

nlohmann::json to_json(const EpsNet& net) {
  return {{"dimS", net.dimS},
          {"epsilon", net.epsilon},
          {"size", net.points.size()},
          {"sizeBound", net.sizeBound},
          {"certifiedProbes", net.certifiedProbes}};
}

}  // namespace srf
