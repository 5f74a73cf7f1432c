#pragma once

#include <array>
#include <vector>

#include "modflow/graded.hpp"

namespace modflow {

/// Outcome of the modularity classification of a partial isometry.
///
/// An element is modular exactly when all of its homogeneous components are
/// partial isometries whose source projections are mutually orthogonal and
/// whose range projections are mutually orthogonal. The zero_defect flag
/// records whether v_0* v_0 - v_0 v_0* stays inside the algebra proper (it
/// always does for 1x1 elements; kept for matrix-algebra callers).
struct ModularityReport {
  bool is_partial_isometry = false;
  bool is_modular = false;
  std::vector<int> degrees;
  bool component_sources_orthogonal = false;
  bool component_ranges_orthogonal = false;
  bool zero_component_defect_in_algebra = true;
  double max_violation = 0.0;
};

template <AlgebraModel M>
ModularityReport classify_modular(const M& m, const Graded<M>& v, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("classify_modular: tol must be positive");
  ModularityReport rep;
  const auto vstar = adj(m, v);

  // v v* v = v
  rep.max_violation = norm(m, sub(m, mul(m, mul(m, v, vstar), v), v));
  rep.is_partial_isometry = rep.max_violation <= tol;

  bool components_pi = true;
  for (const auto& [k, x] : v.parts()) {
    rep.degrees.push_back(k);
    auto c = Graded<M>::homogeneous(m, k, x);
    const double viol =
        norm(m, sub(m, mul(m, mul(m, c, adj(m, c)), c), c));
    rep.max_violation = std::max(rep.max_violation, viol);
    if (viol > tol) components_pi = false;
  }

  rep.component_sources_orthogonal = true;
  rep.component_ranges_orthogonal = true;
  for (auto i = v.parts().begin(); i != v.parts().end(); ++i) {
    for (auto j = std::next(i); j != v.parts().end(); ++j) {
      auto a = Graded<M>::homogeneous(m, i->first, i->second);
      auto b = Graded<M>::homogeneous(m, j->first, j->second);
      const double src =
          norm(m, mul(m, mul(m, adj(m, a), a), mul(m, adj(m, b), b)));
      const double rng =
          norm(m, mul(m, mul(m, a, adj(m, a)), mul(m, b, adj(m, b))));
      rep.max_violation = std::max({rep.max_violation, src, rng});
      if (src > tol) rep.component_sources_orthogonal = false;
      if (rng > tol) rep.component_ranges_orthogonal = false;
    }
  }

  rep.is_modular = rep.is_partial_isometry && components_pi &&
                   rep.component_sources_orthogonal && rep.component_ranges_orthogonal;
  return rep;
}

// ---------------------------------------------------------------------------
// 2x2 matrix amplification M_2(A), itself an AlgebraModel. The gauge action
// is entrywise, so degrees and traces work blockwise; the trace adds the
// diagonal (unnormalised, so flows over direct sums add).
// ---------------------------------------------------------------------------

template <AlgebraModel M>
struct Mat2Model {
  using Scalar = typename M::Scalar;
  struct Component {
    std::array<typename M::Component, 4> e;  // row-major 2x2
  };

  M base;

  explicit Mat2Model(M b) : base(std::move(b)) {}

  Component zero_component() const {
    auto z = base.scale(base.from_int(0), base.one());
    return Component{{z, z, z, z}};
  }

  Component mul(const Component& a, const Component& b) const {
    Component c = zero_component();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          c.e[std::size_t(2 * i + j)] =
              base.add(c.e[std::size_t(2 * i + j)],
                       base.mul(a.e[std::size_t(2 * i + k)], b.e[std::size_t(2 * k + j)]));
    return c;
  }

  Component adj(const Component& a) const {
    return Component{{base.adj(a.e[0]), base.adj(a.e[2]), base.adj(a.e[1]),
                      base.adj(a.e[3])}};
  }

  Component add(const Component& a, const Component& b) const {
    Component c = zero_component();
    for (int i = 0; i < 4; ++i)
      c.e[std::size_t(i)] = base.add(a.e[std::size_t(i)], b.e[std::size_t(i)]);
    return c;
  }

  Component scale(const Scalar& s, const Component& a) const {
    Component c = zero_component();
    for (int i = 0; i < 4; ++i) c.e[std::size_t(i)] = base.scale(s, a.e[std::size_t(i)]);
    return c;
  }

  Scalar from_int(int k) const { return base.from_int(k); }
  Scalar twist_factor(int k) const { return base.twist_factor(k); }

  std::complex<double> tau(const Component& a) const {
    return base.tau(a.e[0]) + base.tau(a.e[3]);
  }

  double norm(const Component& a) const {
    double out = 0.0;
    for (const auto& x : a.e) out = std::max(out, base.norm(x));
    return out;
  }

  bool is_negligible(const Component& a) const {
    for (const auto& x : a.e)
      if (!base.is_negligible(x)) return false;
    return true;
  }

  Component one() const {
    Component c = zero_component();
    c.e[0] = base.one();
    c.e[3] = base.one();
    return c;
  }

  bool compatible(const Component& a, const Component& b) const {
    return base.compatible(a.e[0], b.e[0]);
  }

  KmsContext kms() const { return base.kms(); }
};

/// Embeds a graded element into M_2 at the given block position.
template <AlgebraModel M>
Graded<Mat2Model<M>> embed_block(const Mat2Model<M>& m2, const Graded<M>& a, int row,
                                 int col) {
  Graded<Mat2Model<M>> out;
  for (const auto& [k, x] : a.parts()) {
    auto c = m2.zero_component();
    c.e[std::size_t(2 * row + col)] = x;
    out.set(m2, k, c);
  }
  return out;
}

/// diag(v, w): the direct sum of two elements of the same algebra.
template <AlgebraModel M>
Graded<Mat2Model<M>> direct_sum(const Mat2Model<M>& m2, const Graded<M>& v,
                                const Graded<M>& w) {
  return add(m2, embed_block(m2, v, 0, 0), embed_block(m2, w, 1, 1));
}

/// The self-adjoint unitary  u_v = [[1 - v*v, v*], [v, 1 - vv*]]  attached to
/// a partial isometry v. Throws when v is not a partial isometry within tol.
template <AlgebraModel M>
Graded<Mat2Model<M>> doubling_unitary(const Mat2Model<M>& m2, const Graded<M>& v,
                                      double tol = 1e-10) {
  const M& m = m2.base;
  const auto vstar = adj(m, v);
  if (norm(m, sub(m, mul(m, mul(m, v, vstar), v), v)) > tol)
    throw std::invalid_argument("doubling_unitary: input is not a partial isometry");

  const auto unit = Graded<M>::unit(m);
  auto u = embed_block(m2, sub(m, unit, mul(m, vstar, v)), 0, 0);
  u = add(m2, u, embed_block(m2, vstar, 0, 1));
  u = add(m2, u, embed_block(m2, v, 1, 0));
  u = add(m2, u, embed_block(m2, sub(m, unit, mul(m, v, vstar)), 1, 1));

  const auto usq = mul(m2, u, u);
  if (norm(m2, sub(m2, usq, Graded<Mat2Model<M>>::unit(m2))) > tol ||
      norm(m2, sub(m2, adj(m2, u), u)) > tol)
    throw std::invalid_argument("doubling_unitary: result failed the unitarity check");
  return u;
}

/// gauge_t: degree-k component scaled by e^{ikt}. Only meaningful for models
/// with floating complex scalars; used by the brute-force invariance oracle.
template <AlgebraModel M>
  requires std::same_as<typename M::Scalar, std::complex<double>>
Graded<M> gauge_rotate(const M& m, const Graded<M>& a, double t) {
  Graded<M> out;
  for (const auto& [k, x] : a.parts())
    out.set(m, k, m.scale(std::exp(std::complex<double>(0.0, k * t)), x));
  return out;
}

}  // namespace modflow
