#pragma once

// The working space H' = (+)_{j in Y} H'_jR (x) H'_jP used for random-subspace
// encryption.
//
// Coordinate order on H': irreps j in Y ascending, then the retained m index
// (highest m first), then the retained multiplicity path. Coordinate
// (j, mIndex, l) therefore sits at offset_j + mIndex * DAlpha + l, which is
// the same R-major ordering the coupled basis uses inside each irrep block.

#include <optional>
#include <vector>

#include "json.hpp"
#include "srf/linalg.hpp"
#include "srf/repkit.hpp"

namespace srf {

/// One irrep of the working space.
struct WorkingSector {
  IrrepLabel j;
  int dimR = 0;     // 2j + 1
  BigInt dimP;      // full multiplicity dimension d_jP
  Index offset = 0; // first coordinate of this sector in H'
};

class WorkingSpace {
 public:
  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] double alpha() const { return alpha_; }
  [[nodiscard]] IrrepLabel j_min() const { return jMin_; }
  [[nodiscard]] const std::vector<WorkingSector>& sectors() const { return sectors_; }
  [[nodiscard]] std::vector<IrrepLabel> irreps() const;

  /// D = 2 jMin + 1, the retained dimension of every H'_jR.
  [[nodiscard]] Index d() const { return d_; }
  /// DAlpha = floor(D / alpha), the retained dimension of every H'_jP.
  [[nodiscard]] Index d_alpha() const { return dAlpha_; }
  /// K = |Y| D DAlpha.
  [[nodiscard]] Index k() const { return k_; }
  /// d_P = |Y| DAlpha, dimension of the reduced space H'_P.
  [[nodiscard]] Index d_p() const { return static_cast<Index>(sectors_.size()) * dAlpha_; }
  /// Dimension of (+)_{j in Y} H_jR (x) H'_jP, the support of twirled working states.
  [[nodiscard]] Index twirl_support_dim() const;

  /// Coupled-basis label of H' coordinate `coord`.
  [[nodiscard]] CoupledBasisIndex embed(Index coord) const;

  friend WorkingSpace build_working_space(int n, double alpha, std::optional<IrrepLabel> jMinOverride);

 private:
  int n_ = 0;
  double alpha_ = 0.0;
  IrrepLabel jMin_;
  Index d_ = 0;
  Index dAlpha_ = 0;
  Index k_ = 0;
  std::vector<WorkingSector> sectors_;
};

/// round(N/3) with ties rounded up.
IrrepLabel default_j_min(int n);

/// Validated working space. Retains the D highest-m states of each H_jR and the
/// first DAlpha coupling paths of each H_jP.
/// DomainError for odd N, alpha <= 1, DAlpha = 0, jMin >= N/2 or a sector
/// whose multiplicity space is smaller than DAlpha.
WorkingSpace build_working_space(int n, double alpha, std::optional<IrrepLabel> jMinOverride = std::nullopt);

/// (2/27) N^3 / alpha.
double asymptotic_K(int n, double alpha);

/// Exact K from the dimension formulas alone; 0 when the space does not exist.
Index exact_K(int n, double alpha);

enum class EmbedTarget { Coupled, Computational };

/// Isometric embedding of a K-dimensional state into the coupled basis.
PureState embed_state(const PureState& v, const WorkingSpace& ws, const CoupledLayout& layout);

/// Embedding into the coupled basis or, through V, the computational basis.
PureState embed_state(const PureState& v, const WorkingSpace& ws, EmbedTarget target,
                      const SchurTransform& st);

/// Inverse of the coupled embedding. DomainError when more than 1e-10 of the
/// norm lies outside H'.
PureState project_to_working_space(const PureState& coupled, const WorkingSpace& ws,
                                   const CoupledLayout& layout, double leakageTol = 1e-10);

/// JSON descriptor embedded in experiment outputs.
nlohmann::json to_json(const WorkingSpace& ws);

/// Big integers serialize as JSON numbers when they fit in 64 bits, as decimal strings otherwise.
nlohmann::json big_to_json(const BigInt& x);

}  // namespace srf
