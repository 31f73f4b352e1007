// Acceptance checks: one PASS/FAIL line per criterion.
// Usage: srf-acceptance <path-to-srf-run> <scratch-dir>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "srf/capacity.hpp"
#include "srf/channel.hpp"
#include "srf/privacy.hpp"
#include "srf/repkit.hpp"
#include "srf/workspace.hpp"

using namespace srf;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(4);
  ss << x;
  return ss.str();
}

ComplexMatrix block_twirl(const SchurTransform& st, const ComplexMatrix& rho) {
  const DensityMatrix coupled(st.v.adjoint() * rho * st.v, Validation::Structure);
  return st.v * twirl_block(coupled, st.layout).matrix() * st.v.adjoint();
}

Outcome dimension_completeness() {
  for (int n = 2; n <= 64; n += 2) {
    BigInt total = 0;
    for (const IrrepLabel j : irrep_labels(n)) total += BigInt(dim_irrep(j)) * dim_multiplicity(n, j);
    if (total != (BigInt(1) << n)) return {false, "mismatch at N=" + std::to_string(n)};
  }
  return {true, "sum (2j+1) d_jP = 2^N for every even N <= 64"};
}

Outcome schur_certification() {
  double worst = 0.0;
  for (int n = 2; n <= 8; n += 2) {
    const SchurTransform st = schur_transform(n);
    Rng rng = make_rng(RngSeed{2}, n);
    for (int t = 0; t < 20; ++t) {
      const EulerAngles omega = random_euler_angles(rng);
      const ComplexMatrix lhs = st.v.adjoint() * rotation_tensor_power(omega, n) * st.v;
      worst = std::max(worst, (lhs - block_rotation(st.layout, omega)).norm());
    }
  }
  return {worst < 1e-9, "max Frobenius deviation " + fmt(worst)};
}

Outcome twirl_oracle_equivalence() {
  double worst = 0.0;
  for (int n = 2; n <= 6; n += 2) {
    const SchurTransform st = schur_transform(n);
    for (std::uint64_t i = 0; i < 50; ++i) {
      Rng rng = make_rng(RngSeed{3}, 100 * n + i);
      const DensityMatrix rho = random_density_matrix(st.v.rows(), rng);
      worst = std::max(worst, trace_norm(block_twirl(st, rho.matrix()) - twirl_oracle(rho).rho.matrix()));
    }
  }
  return {worst < 1e-8, "max trace distance " + fmt(worst)};
}

Outcome channel_laws() {
  double idem = 0.0, cov = 0.0, dfs = 0.0;
  for (int n = 2; n <= 6; n += 2) {
    const SchurTransform st = schur_transform(n);
    for (std::uint64_t i = 0; i < 20; ++i) {
      Rng rng = make_rng(RngSeed{4}, 100 * n + i);
      const DensityMatrix rho = random_density_matrix(st.v.rows(), rng);
      const ComplexMatrix e = block_twirl(st, rho.matrix());
      idem = std::max(idem, trace_norm(block_twirl(st, e) - e));
      const ComplexMatrix r = rotation_tensor_power(random_euler_angles(rng), n);
      cov = std::max(cov, trace_norm(block_twirl(st, r * rho.matrix() * r.adjoint()) - e));
    }
    Rng rng = make_rng(RngSeed{4}, n);
    for (const auto& b : st.layout.blocks()) {
      ComplexMatrix rho = ComplexMatrix::Zero(st.v.rows(), st.v.rows());
      rho.block(b.offset, b.offset, b.size(), b.size()) =
          kron(ComplexMatrix::Identity(b.dimR, b.dimR) / double(b.dimR), random_density_matrix(b.dimP, rng).matrix());
      dfs = std::max(dfs, trace_norm(twirl_block(DensityMatrix(rho), st.layout).matrix() - rho));
    }
  }
  return {idem < 1e-9 && cov < 1e-9 && dfs < 1e-9,
          "idempotence " + fmt(idem) + ", covariance " + fmt(cov) + ", fixed subsystems " + fmt(dfs)};
}

Outcome reduction_identity() {
  double worst = 0.0;
  {
    const WorkingSpace ws = build_working_space(8, 2.0);
    const SchurTransform st = schur_transform(8);
    for (std::uint64_t i = 0; i < 1000; ++i) {
      Rng rng = make_rng(RngSeed{5}, i);
      const PureState phi = random_pure_state(ws.k(), rng);
      worst = std::max(worst, std::abs(f_via_full_space(phi, ws, st) - f_eval(phi, ws)));
    }
  }
  {
    const WorkingSpace ws = build_working_space(12, 2.0);
    for (std::uint64_t i = 0; i < 1000; ++i) {
      Rng rng = make_rng(RngSeed{6}, i);
      const PureState phi = random_pure_state(ws.k(), rng);
      worst = std::max(worst, std::abs(f_via_twirl(phi, ws) - f_eval(phi, ws)));
    }
  }
  return {worst < 1e-9, "max |E-route - F-route| " + fmt(worst) + " (N=8 full space, N=12 blocks)"};
}

Outcome lipschitz() {
  const LipschitzReport r = lipschitz_check(build_working_space(12, 2.0), 10000, RngSeed{7});
  return {r.withinBound, "max ratio " + fmt(r.maxRatio) + ", nearby " + fmt(r.maxRatioNearby)};
}

Outcome mean_bounds() {
  bool ok = true;
  std::string detail;
  const std::pair<int, double> cases[] = {{8, 2.0}, {12, 2.0}, {12, 4.0}, {14, 2.0}};
  for (const auto& [n, alpha] : cases) {
    const ConcentrationReport r = mean_f_experiment(build_working_space(n, alpha), 2000, RngSeed{8});
    ok = ok && r.meanWithinLemma4 && r.meanWithinTighter;
    detail += "(" + std::to_string(n) + "," + fmt(alpha) + "): " + fmt(r.meanF) + " vs " + fmt(r.lemma4Bound) + "/" +
              fmt(r.tighterBound) + "  ";
  }
  return {ok, detail};
}

Outcome haar_moments() {
  bool ok = true;
  std::string detail;
  for (Index k : {2, 3, 4, 8}) {
    const HaarMomentReport r = haar_moment_check(k, 100000, RngSeed{9});
    double worstZ = 0.0;
    for (const auto& m : r.moments) {
      ok = ok && m.withinTolerance;
      worstZ = std::max(worstZ, std::abs(m.estimate - m.exact) / m.stdErr);
    }
    detail += "K=" + std::to_string(k) + " max z " + fmt(worstZ) + "  ";
  }
  return {ok, detail};
}

Outcome concentration_trend_check() {
  PrivacyParams params;
  const ConcentrationReport r10 = concentration_experiment(build_working_space(10, 2.0), 5000, {0.2}, params, RngSeed{10});
  const ConcentrationReport r14 = concentration_experiment(build_working_space(14, 2.0), 5000, {0.2}, params, RngSeed{10});
  const auto c = [](const ConcentrationReport& r) { return r.fittedC ? fmt(*r.fittedC) : std::string("none"); };
  return {r14.tails[0] <= r10.tails[0],
          "tail N=10 " + fmt(r10.tails[0]) + ", N=14 " + fmt(r14.tails[0]) + "; fitted C " + c(r10) + ", " + c(r14)};
}

Outcome capacity_formulas() {
  const auto near = [](double a, double b) { return std::abs(a - b) <= 1e-12; };
  bool ok = near(q_perfect(4), std::log2(5.0)) && near(q_perfect(2), std::log2(3.0)) &&
            near(c_perfect_asymptotic(16), 12.0) && near(c_perfect_asymptotic(2), 3.0) &&
            near(thm1_dim_bound(1024, 0.125, 0.0), 19.5) && near(thm1_dim_bound(64, 1.0, 0.25), 18.25) &&
            near(classical_capacity_upper(16, 0.0), 15.0) && near(classical_capacity_upper(16, 0.5), 21.0) &&
            rank_pi_prime(4) == 15 && rank_pi_prime(2) == 4;
  for (int n = 4; n <= 64; n += 2) {
    const RankChain c = rank_chain(n);
    ok = ok && c.rankBelowMiddle && c.middleBelowCubic;
  }
  const RankChain two = rank_chain(2);
  ok = ok && !two.middleBelowCubic && two.rankBelowCubic;
  return {ok, "examples exact; chain holds for 4 <= N <= 64; N=2: middle " + two.middle.str() + " > cubic " +
                  two.cubic.str() + ", rank " + two.rank.str() + " <= cubic"};
}

Outcome privacy_semantics() {
  const WorkingSpace ws = build_working_space(12, 2.0);
  const SubspaceSample s = sample_subspace(ws, 2, RngSeed{11});
  EstimateOptions opts;
  opts.netEpsilon = 0.3;
  const MaxFEstimate e = estimate_max_f(s, ws, 64, RngSeed{12}, opts);
  if (!e.certifiedUpperBound) return {false, "no certified bound"};
  const double delta = *e.certifiedUpperBound;
  double worst = 0.0;
  Rng rng = make_rng(RngSeed{13});
  for (int i = 0; i < 1000; ++i) {
    const PureState a = s.state(random_pure_state(2, rng).amplitudes());
    const PureState b = s.state(random_pure_state(2, rng).amplitudes());
    worst = std::max(worst, helstrom_distinguish(twirl_working_state(a, ws), twirl_working_state(b, ws)));
  }
  return {worst <= (1.0 + delta) / 2.0 + 1e-9,
          "certified delta " + fmt(delta) + " (lower " + fmt(e.lowerBound) + "), max Helstrom " + fmt(worst) +
              " <= " + fmt((1.0 + delta) / 2.0)};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome reproducibility(const std::string& tool, const std::string& dir) {
  const std::vector<std::string> runs{
      "--command mean-f --n 12 --alpha 4 --samples 2000 --seed 7",
      "--command concentration --n 10 --alpha 2 --samples 2000 --seed 3",
      "--command theorem1 --n 12 --delta 2 --c-prime 0 --samples 2 --seed 5",
      "--command twirl-check --n 4 --samples 5 --seed 9",
      "--command haar-moments --k 4 --samples 20000 --seed 1",
  };
  int identical = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const std::string a = dir + "/repro_" + std::to_string(i) + "_a.json";
    const std::string b = dir + "/repro_" + std::to_string(i) + "_b.json";
    const int ra = std::system((tool + " " + runs[i] + " --out " + a).c_str());
    const int rb = std::system((tool + " " + runs[i] + " --out " + b).c_str());
    const std::string ta = slurp(a), tb = slurp(b);
    if (ra == 0 && rb == 0 && !ta.empty() && ta == tb) ++identical;
    std::remove(a.c_str());
    std::remove(b.c_str());
  }
  return {identical == static_cast<int>(runs.size()),
          std::to_string(identical) + "/" + std::to_string(runs.size()) + " commands byte-identical"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: srf-acceptance <srf-run> <scratch-dir>\n";
    return 2;
  }
  const std::string tool = argv[1], dir = argv[2];

  struct Criterion {
    int id;
    const char* name;
    double budgetSeconds;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {1, "dimension completeness", 1, dimension_completeness},
      {2, "Schur certification", 30, schur_certification},
      {3, "twirl oracle equivalence", 60, twirl_oracle_equivalence},
      {4, "channel laws", 30, channel_laws},
      {5, "trace-norm reduction identity", 60, reduction_identity},
      {6, "Lipschitz bound", 60, lipschitz},
      {7, "mean of f", 300, mean_bounds},
      {8, "Haar fourth moment", 120, haar_moments},
      {9, "concentration trend", 600, concentration_trend_check},
      {10, "capacity formulas", 1, capacity_formulas},
      {11, "privacy semantics", 120, privacy_semantics},
      {12, "reproducibility", 60, [&] { return reproducibility(tool, dir); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool inTime = secs < c.budgetSeconds;
    const bool pass = o.pass && inTime;
    if (!pass) ++failures;
    std::cout << (pass ? "PASS" : "FAIL") << " " << c.id << " " << c.name << ": " << o.detail << " [" << fmt(secs)
              << " s" << (inTime ? "" : ", over budget") << "]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
