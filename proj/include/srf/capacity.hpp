#pragma once

// Closed-form private-capacity quantities for a shared Cartesian frame on N qubits.
// Bit quantities are returned as reals; callers floor when they need a message count.

#include <cstdint>
#include <optional>

#include "json.hpp"
#include "srf/repkit.hpp"

namespace srf {

/// Perfectly private quantum capacity, log2(N + 1).
double q_perfect(int n);

/// Asymptotic perfectly private classical capacity, 3 log2 N.
double c_perfect_asymptotic(int n);

/// Random-subspace dimension bound in bits: 3 log2 N + 3.5 log2 delta + cPrime.
double thm1_dim_bound(int n, double delta, double cPrime);

/// Upper bound on the delta-private classical capacity, 3 (1 + delta) log2 N + 3.
/// DomainError unless 0 <= delta <= 1/2.
double classical_capacity_upper(int n, double delta);

/// Tight sum_j d_jR min(d_jR, d_jP), exact.
BigInt rank_pi_prime(int n);

/// Smallest delta at which the random-subspace bound beats log2(N + 1).
double min_delta_for_advantage(int n, double cPrime);

/// The rank chain rank <= (N/2 + 1)(N + 1)^2 <= 2 N^3, term by term.
struct RankChain {
  int n = 0;
  BigInt rank;
  BigInt middle;
  BigInt cubic;
  bool rankBelowMiddle = false;
  bool middleBelowCubic = false;
  bool rankBelowCubic = false;
};

RankChain rank_chain(int n);

struct CapacityBounds {
  int n = 0;
  double delta = 0.0;
  double cPrime = 0.0;
  double qPerfect = 0.0;
  double cPerfectAsymptotic = 0.0;
  double thm1Bound = 0.0;
  /// Absent when delta lies outside [0, 1/2].
  std::optional<double> classicalUpper;
  BigInt rankPiPrimeTight;
  double advantageDeltaThreshold = 0.0;
};

CapacityBounds capacity_bounds(int n, double delta, double cPrime);

nlohmann::json to_json(const CapacityBounds& b);
nlohmann::json to_json(const RankChain& c);

}  // namespace srf
