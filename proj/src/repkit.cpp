#include "srf/repkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "srf/errors.hpp"

namespace srf {

void require_even_n(int n) {
  if (n <= 0 || n % 2 != 0) {
    throw DomainError("N must be a positive even integer, got " + std::to_string(n));
  }
}

void require_valid_label(int n, IrrepLabel j) {
  require_even_n(n);
  if (j.twoJ < 0 || j.twoJ > n) {
    throw DomainError("irrep 2j=" + std::to_string(j.twoJ) + " out of range for N=" + std::to_string(n));
  }
  if ((j.twoJ - n) % 2 != 0) {
    throw DomainError("irrep 2j=" + std::to_string(j.twoJ) + " has the wrong parity for N=" +
                      std::to_string(n));
  }
}

std::vector<IrrepLabel> irrep_labels(int n) {
  require_even_n(n);
  std::vector<IrrepLabel> out;
  for (int tj = 0; tj <= n; tj += 2) out.push_back(IrrepLabel{tj});
  return out;
}

int BratteliPath::final_twoJ() const {
  int s = 0;
  for (auto step : steps) s += step;
  return s;
}

bool BratteliPath::valid() const {
  if (steps.empty() || steps.front() != 1) return false;
  int s = 0;
  for (auto step : steps) {
    if (step != 1 && step != -1) return false;
    s += step;
    if (s < 0) return false;
  }
  return true;
}

EulerAngles random_euler_angles(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  EulerAngles o;
  o.alpha = two_pi * unit(rng);
  o.beta = std::acos(std::clamp(1.0 - 2.0 * unit(rng), -1.0, 1.0));
  o.gamma = two_pi * unit(rng);
  return o;
}

int dim_irrep(IrrepLabel j) { return j.twoJ + 1; }

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt dim_multiplicity(int n, IrrepLabel j) {
  require_valid_label(n, j);
  const int half = n / 2;
  const int jj = j.twoJ / 2;
  BigInt num = binomial(n, half - jj) * (2 * jj + 1);
  const int den = half + jj + 1;
  BigInt q = num / den;
  if (q * den != num) throw std::logic_error("dim_multiplicity: inexact division");
  return q;
}

Index dim_multiplicity_index(int n, IrrepLabel j) {
  const BigInt d = dim_multiplicity(n, j);
  if (d > BigInt(std::numeric_limits<std::int64_t>::max() / 64)) {
    throw ResourceError("multiplicity dimension too large for dense storage at N=" + std::to_string(n));
  }
  return static_cast<Index>(d.convert_to<std::int64_t>());
}

namespace {

void extend_paths(int n, int target, std::vector<std::int8_t>& prefix, int current,
                  std::vector<BratteliPath>& out) {
  const int remaining = n - static_cast<int>(prefix.size());
  if (remaining == 0) {
    if (current == target) out.push_back(BratteliPath{prefix});
    return;
  }
  for (std::int8_t step : {std::int8_t{1}, std::int8_t{-1}}) {
    const int next = current + step;
    if (next < 0) continue;
    if (std::abs(next - target) > remaining - 1) continue;
    prefix.push_back(step);
    extend_paths(n, target, prefix, next, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<BratteliPath> enumerate_paths(int n, IrrepLabel j) {
  require_valid_label(n, j);
  std::vector<BratteliPath> out;
  std::vector<std::int8_t> prefix;
  prefix.reserve(n);
  extend_paths(n, j.twoJ, prefix, 0, out);
  return out;
}

CoupledLayout::CoupledLayout(int n) : n_(n), dim_(0) {
  require_even_n(n);
  if (n > 40) throw ResourceError("coupled layout limited to N <= 40, got " + std::to_string(n));
  for (int tj = n; tj >= 0; tj -= 2) {
    IrrepBlock b;
    b.j = IrrepLabel{tj};
    b.offset = dim_;
    b.dimR = tj + 1;
    b.dimP = dim_multiplicity_index(n, b.j);
    dim_ += b.size();
    blocks_.push_back(b);
  }
}

const IrrepBlock& CoupledLayout::block(IrrepLabel j) const {
  require_valid_label(n_, j);
  return blocks_[static_cast<std::size_t>((n_ - j.twoJ) / 2)];
}

Index CoupledLayout::column(const CoupledBasisIndex& idx) const {
  const IrrepBlock& b = block(idx.j);
  if (std::abs(idx.twoM) > idx.j.twoJ || (idx.j.twoJ - idx.twoM) % 2 != 0) {
    throw DomainError("coupled index: invalid m for the given j");
  }
  if (idx.pathIndex < 0 || idx.pathIndex >= b.dimP) throw DomainError("coupled index: path out of range");
  const Index mIndex = (idx.j.twoJ - idx.twoM) / 2;
  return b.offset + mIndex * b.dimP + idx.pathIndex;
}

CoupledBasisIndex CoupledLayout::label(Index column) const {
  if (column < 0 || column >= dim_) throw DimensionError("coupled index: column out of range");
  for (const auto& b : blocks_) {
    if (column < b.offset + b.size()) {
      const Index local = column - b.offset;
      const Index mIndex = local / b.dimP;
      return CoupledBasisIndex{b.j, b.j.twoJ - 2 * static_cast<int>(mIndex), local % b.dimP};
    }
  }
  throw std::logic_error("coupled index: layout inconsistent");
}

double cg_half(int twoJparent, int twoJ, int twoM, int twoSigma) {
  const int tj = twoJparent;
  const int parentTwoM = twoM - twoSigma;
  if (std::abs(parentTwoM) > tj || std::abs(twoM) > twoJ) return 0.0;
  const double denom = 2.0 * (tj + 1);
  const double plus = std::sqrt((tj + twoM + 1) / denom);
  const double minus = std::sqrt((tj - twoM + 1) / denom);
  if (twoJ == tj + 1) return twoSigma > 0 ? plus : minus;
  if (twoJ == tj - 1) return twoSigma > 0 ? -minus : plus;
  return 0.0;
}

SchurTransform schur_transform(int n, int maxN) {
  require_even_n(n);
  if (n > maxN) {
    throw ResourceError("schur_transform: N=" + std::to_string(n) + " exceeds the dense limit " +
                        std::to_string(maxN));
  }

  struct Node {
    int twoJ;
    Eigen::MatrixXd states;  // rows: computational basis of the first k qubits; cols: m descending
  };
  std::vector<Node> level{Node{0, Eigen::MatrixXd::Ones(1, 1)}};

  for (int k = 0; k < n; ++k) {
    std::vector<Node> next;
    next.reserve(level.size() * 2);
    for (const Node& parent : level) {
      for (int step : {1, -1}) {
        const int tJ = parent.twoJ + step;
        if (tJ < 0) continue;
        const Index rows = parent.states.rows() * 2;
        Node child{tJ, Eigen::MatrixXd::Zero(rows, tJ + 1)};
        for (int c = 0; c <= tJ; ++c) {
          const int tM = tJ - 2 * c;
          for (int sigma : {1, -1}) {
            const double coeff = cg_half(parent.twoJ, tJ, tM, sigma);
            if (coeff == 0.0) continue;
            const int parentCol = (parent.twoJ - (tM - sigma)) / 2;
            const int bit = sigma > 0 ? 0 : 1;
            for (Index x = 0; x < parent.states.rows(); ++x) {
              child.states(2 * x + bit, c) += coeff * parent.states(x, parentCol);
            }
          }
        }
        next.push_back(std::move(child));
      }
    }
    level = std::move(next);
  }

  CoupledLayout layout(n);
  SchurTransform st{layout, ComplexMatrix::Zero(layout.dimension(), layout.dimension()), {}};
  st.ordering.resize(static_cast<std::size_t>(layout.dimension()));
  std::vector<Index> seen(static_cast<std::size_t>(n + 1), 0);
  for (const Node& node : level) {
    const IrrepBlock& b = layout.block(IrrepLabel{node.twoJ});
    const Index path = seen[static_cast<std::size_t>(node.twoJ)]++;
    for (Index mIndex = 0; mIndex < b.dimR; ++mIndex) {
      const Index col = b.offset + mIndex * b.dimP + path;
      st.v.col(col) = node.states.col(mIndex).cast<Complex>();
      st.ordering[static_cast<std::size_t>(col)] =
          CoupledBasisIndex{b.j, b.j.twoJ - 2 * static_cast<int>(mIndex), path};
    }
  }
  for (const auto& b : layout.blocks()) {
    if (seen[static_cast<std::size_t>(b.j.twoJ)] != b.dimP) {
      throw std::logic_error("schur_transform: path count disagrees with multiplicity formula");
    }
  }
  return st;
}

ComplexMatrix spin_jz(IrrepLabel j) {
  const Index d = j.twoJ + 1;
  ComplexMatrix z = ComplexMatrix::Zero(d, d);
  for (Index k = 0; k < d; ++k) z(k, k) = 0.5 * (j.twoJ - 2 * static_cast<double>(k));
  return z;
}

namespace {

/// J+ in the m-descending basis: <m+1|J+|m> = sqrt((j-m)(j+m+1)).
ComplexMatrix spin_jplus(IrrepLabel j) {
  const Index d = j.twoJ + 1;
  const double jj = j.j();
  ComplexMatrix p = ComplexMatrix::Zero(d, d);
  for (Index k = 1; k < d; ++k) {
    const double m = jj - static_cast<double>(k);  // column state m, raised to row k-1
    p(k - 1, k) = std::sqrt((jj - m) * (jj + m + 1.0));
  }
  return p;
}

}  // namespace

ComplexMatrix spin_jx(IrrepLabel j) {
  const ComplexMatrix p = spin_jplus(j);
  return 0.5 * (p + p.adjoint());
}

ComplexMatrix spin_jy(IrrepLabel j) {
  const ComplexMatrix p = spin_jplus(j);
  return Complex(0.0, -0.5) * (p - p.adjoint());
}

ComplexMatrix wigner_D(IrrepLabel j, const EulerAngles& omega) {
  if (j.twoJ < 0) throw DomainError("wigner_D: negative j");
  const Index d = j.twoJ + 1;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(spin_jy(j));
  ComplexVector phases(d);
  for (Index k = 0; k < d; ++k) phases(k) = std::exp(Complex(0.0, -omega.beta * es.eigenvalues()(k)));
  ComplexMatrix dy = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  ComplexMatrix out(d, d);
  for (Index r = 0; r < d; ++r) {
    const double mr = 0.5 * (j.twoJ - 2 * static_cast<double>(r));
    for (Index c = 0; c < d; ++c) {
      const double mc = 0.5 * (j.twoJ - 2 * static_cast<double>(c));
      out(r, c) = std::exp(Complex(0.0, -omega.alpha * mr - omega.gamma * mc)) * dy(r, c);
    }
  }
  return out;
}

ComplexMatrix rotation_tensor_power(const EulerAngles& omega, int n) {
  const ComplexMatrix r = wigner_D(IrrepLabel{1}, omega);
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int k = 0; k < n; ++k) out = kron(out, r);
  return out;
}

ComplexMatrix block_rotation(const CoupledLayout& layout, const EulerAngles& omega) {
  ComplexMatrix out = ComplexMatrix::Zero(layout.dimension(), layout.dimension());
  for (const auto& b : layout.blocks()) {
    out.block(b.offset, b.offset, b.size(), b.size()) =
        kron(wigner_D(b.j, omega), ComplexMatrix::Identity(b.dimP, b.dimP));
  }
  return out;
}

ComplexMatrix projector(const SchurTransform& st, IrrepLabel j) {
  const IrrepBlock& b = st.layout.block(j);
  const auto cols = st.v.middleCols(b.offset, b.size());
  return cols * cols.adjoint();
}

ComplexMatrix projector(int n, IrrepLabel j) {
  require_valid_label(n, j);
  return projector(schur_transform(n), j);
}

}  // namespace srf
