#include "srf/capacity.hpp"

#include <cmath>
#include <string>

#include "srf/errors.hpp"
#include "srf/workspace.hpp"

namespace srf {

double q_perfect(int n) {
  require_even_n(n);
  return std::log2(static_cast<double>(n) + 1.0);
}

double c_perfect_asymptotic(int n) {
  require_even_n(n);
  return 3.0 * std::log2(static_cast<double>(n));
}

double thm1_dim_bound(int n, double delta, double cPrime) {
  require_even_n(n);
  if (!(delta > 0.0 && delta <= 2.0)) throw DomainError("thm1_dim_bound: delta must lie in (0, 2]");
  return 3.0 * std::log2(static_cast<double>(n)) + 3.5 * std::log2(delta) + cPrime;
}

double classical_capacity_upper(int n, double delta) {
  require_even_n(n);
  if (!(delta >= 0.0 && delta <= 0.5)) {
    throw DomainError("classical_capacity_upper: the bound requires 0 <= delta <= 1/2, got " +
                      std::to_string(delta));
  }
  return 3.0 * (1.0 + delta) * std::log2(static_cast<double>(n)) + 3.0;
}

BigInt rank_pi_prime(int n) {
  BigInt total = 0;
  for (const IrrepLabel j : irrep_labels(n)) {
    const BigInt dr = dim_irrep(j);
    const BigInt dp = dim_multiplicity(n, j);
    total += dr * (dp < dr ? dp : dr);
  }
  return total;
}

double min_delta_for_advantage(int n, double cPrime) {
  require_even_n(n);
  const double nn = n;
  return std::exp2((std::log2(nn + 1.0) - 3.0 * std::log2(nn) - cPrime) / 3.5);
}

RankChain rank_chain(int n) {
  RankChain c;
  c.n = n;
  c.rank = rank_pi_prime(n);
  c.middle = BigInt(n / 2 + 1) * BigInt(n + 1) * BigInt(n + 1);
  c.cubic = BigInt(2) * BigInt(n) * BigInt(n) * BigInt(n);
  c.rankBelowMiddle = c.rank <= c.middle;
  c.middleBelowCubic = c.middle <= c.cubic;
  c.rankBelowCubic = c.rank <= c.cubic;
  return c;
}

CapacityBounds capacity_bounds(int n, double delta, double cPrime) {
  CapacityBounds b;
  b.n = n;
  b.delta = delta;
  b.cPrime = cPrime;
  b.qPerfect = q_perfect(n);
  b.cPerfectAsymptotic = c_perfect_asymptotic(n);
  // a zero delta is meaningful for the classical bound but not for the log2 delta term
  b.thm1Bound = delta > 0.0 ? thm1_dim_bound(n, delta, cPrime) : -INFINITY;
  if (delta >= 0.0 && delta <= 0.5) b.classicalUpper = classical_capacity_upper(n, delta);
  b.rankPiPrimeTight = rank_pi_prime(n);
  b.advantageDeltaThreshold = min_delta_for_advantage(n, cPrime);
  return b;
}

nlohmann::json to_json(const CapacityBounds& b) {
  nlohmann::json j{{"N", b.n},
                   {"delta", b.delta},
                   {"cPrime", b.cPrime},
                   {"qPerfect", b.qPerfect},
                   {"cPerfectAsymptotic", b.cPerfectAsymptotic},
                   {"cPerfectIsAsymptoticReference", true},
                   {"rankPiPrimeTight", big_to_json(b.rankPiPrimeTight)},
                   {"advantageDeltaThreshold", b.advantageDeltaThreshold},
                   {"advantageScaling", "delta ~ N^(-4/7)"}};
  j["thm1Bound"] = std::isfinite(b.thm1Bound) ? nlohmann::json(b.thm1Bound) : nlohmann::json(nullptr);
  j["classicalUpper"] = b.classicalUpper ? nlohmann::json(*b.classicalUpper) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const RankChain& c) {
  return {{"N", c.n},
          {"rank", big_to_json(c.rank)},
          {"middle", big_to_json(c.middle)},
          {"cubic", big_to_json(c.cubic)},
          {"rankBelowMiddle", c.rankBelowMiddle},
          {"middleBelowCubic", c.middleBelowCubic},
          {"rankBelowCubic", c.rankBelowCubic}};
}

}  // namespace srf
