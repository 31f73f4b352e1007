#include "srf/workspace.hpp"

#include <cmath>
#include <string>

#include "srf/errors.hpp"

namespace srf {

std::vector<IrrepLabel> WorkingSpace::irreps() const {
  std::vector<IrrepLabel> out;
  out.reserve(sectors_.size());
  for (const auto& s : sectors_) out.push_back(s.j);
  return out;
}

Index WorkingSpace::twirl_support_dim() const {
  Index total = 0;
  for (const auto& s : sectors_) total += s.dimR * dAlpha_;
  return total;
}

CoupledBasisIndex WorkingSpace::embed(Index coord) const {
  if (coord < 0 || coord >= k_) throw DimensionError("working space coordinate out of range");
  const Index block = d_ * dAlpha_;
  const auto& s = sectors_[static_cast<std::size_t>(coord / block)];
  const Index local = coord % block;
  const Index mIndex = local / dAlpha_;
  return CoupledBasisIndex{s.j, s.j.twoJ - 2 * static_cast<int>(mIndex), local % dAlpha_};
}

IrrepLabel default_j_min(int n) {
  require_even_n(n);
  // floor(N/3 + 1/2) in integers
  return IrrepLabel::from_j((2 * n + 3) / 6);
}

WorkingSpace build_working_space(int n, double alpha, std::optional<IrrepLabel> jMinOverride) {
  require_even_n(n);
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw DomainError("working space: alpha must be a finite real > 1");
  }
  const IrrepLabel jMin = jMinOverride.value_or(default_j_min(n));
  require_valid_label(n, jMin);
  if (jMin.twoJ >= n) {
    throw DomainError("working space: jMin must be below N/2 (N=" + std::to_string(n) + ")");
  }

  WorkingSpace ws;
  ws.n_ = n;
  ws.alpha_ = alpha;
  ws.jMin_ = jMin;
  ws.d_ = jMin.twoJ + 1;
  ws.dAlpha_ = static_cast<Index>(std::floor(static_cast<double>(ws.d_) / alpha));
  if (ws.dAlpha_ < 1) {
    throw DomainError("working space: DAlpha = floor(D/alpha) = 0 (D=" + std::to_string(ws.d_) +
                      ", alpha=" + std::to_string(alpha) + ")");
  }
  Index offset = 0;
  for (int tj = jMin.twoJ; tj < n; tj += 2) {
    WorkingSector s;
    s.j = IrrepLabel{tj};
    s.dimR = tj + 1;
    s.dimP = dim_multiplicity(n, s.j);
    s.offset = offset;
    if (s.dimR < ws.d_ || s.dimP < BigInt(ws.dAlpha_)) {
      throw DomainError("working space: subspace existence fails at 2j=" + std::to_string(tj));
    }
    offset += ws.d_ * ws.dAlpha_;
    ws.sectors_.push_back(std::move(s));
  }
  ws.k_ = offset;
  return ws;
}

double asymptotic_K(int n, double alpha) {
  require_even_n(n);
  const double nn = n;
  return 2.0 / 27.0 * nn * nn * nn / alpha;
}

Index exact_K(int n, double alpha) {
  try {
    return build_working_space(n, alpha).k();
  } catch (const DomainError&) {
    return 0;
  }
}

PureState embed_state(const PureState& v, const WorkingSpace& ws, const CoupledLayout& layout) {
  if (v.dim() != ws.k()) {
    throw DimensionError("embed_state: state has dimension " + std::to_string(v.dim()) + ", expected K=" +
                         std::to_string(ws.k()));
  }
  if (layout.n() != ws.n()) throw DimensionError("embed_state: layout built for a different N");
  ComplexVector out = ComplexVector::Zero(layout.dimension());
  for (Index c = 0; c < ws.k(); ++c) out(layout.column(ws.embed(c))) = v.amplitudes()(c);
  return PureState(std::move(out));
}

PureState embed_state(const PureState& v, const WorkingSpace& ws, EmbedTarget target,
                      const SchurTransform& st) {
  PureState coupled = embed_state(v, ws, st.layout);
  if (target == EmbedTarget::Coupled) return coupled;
  return PureState::normalized(st.v * coupled.amplitudes());
}

PureState project_to_working_space(const PureState& coupled, const WorkingSpace& ws,
                                   const CoupledLayout& layout, double leakageTol) {
  if (layout.n() != ws.n() || coupled.dim() != layout.dimension()) {
    throw DimensionError("project_to_working_space: state is not in this coupled basis");
  }
  ComplexVector out(ws.k());
  std::vector<bool> retained(static_cast<std::size_t>(layout.dimension()), false);
  for (Index c = 0; c < ws.k(); ++c) {
    const Index col = layout.column(ws.embed(c));
    out(c) = coupled.amplitudes()(col);
    retained[static_cast<std::size_t>(col)] = true;
  }
  double outside = 0.0;
  for (Index col = 0; col < layout.dimension(); ++col) {
    if (!retained[static_cast<std::size_t>(col)]) outside += std::norm(coupled.amplitudes()(col));
  }
  const double leakage = std::sqrt(outside);
  if (leakage > leakageTol) {
    throw DomainError("state leaks outside the working space (norm " + std::to_string(leakage) + ")");
  }
  return PureState::normalized(std::move(out));
}

nlohmann::json big_to_json(const BigInt& x) {
  if (x >= 0 && x <= BigInt(std::numeric_limits<std::uint64_t>::max())) {
    return nlohmann::json(x.convert_to<std::uint64_t>());
  }
  return nlohmann::json(x.str());
}

nlohmann::json to_json(const WorkingSpace& ws) {
  nlohmann::json sectors = nlohmann::json::array();
  for (const auto& s : ws.sectors()) {
    sectors.push_back({{"j", s.j.j()}, {"twoJ", s.j.twoJ}, {"dimR", s.dimR}, {"dimP", big_to_json(s.dimP)}});
  }
  return {{"N", ws.n()},
          {"alpha", ws.alpha()},
          {"jMin", ws.j_min().j()},
          {"D", ws.d()},
          {"DAlpha", ws.d_alpha()},
          {"K", ws.k()},
          {"dP", ws.d_p()},
          {"Y", sectors}};
}

}  // namespace srf
