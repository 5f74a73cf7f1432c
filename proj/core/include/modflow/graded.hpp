#pragma once

#include <complex>
#include <concepts>
#include <map>
#include <stdexcept>
#include <utility>

#include "modflow/kms.hpp"

namespace modflow {

/// Contract a degree-graded *-algebra model has to satisfy to plug into the
/// generic layer. A Component is one homogeneous piece; its degree is
/// tracked externally by Graded. Scalars are complex (exact rational-complex
/// or floating) and the model converts small integers and twist factors into
/// them.
template <class M>
concept AlgebraModel = requires(const M& m, const typename M::Component& x,
                                const typename M::Scalar& s, int k) {
  typename M::Component;
  typename M::Scalar;
  { m.mul(x, x) } -> std::same_as<typename M::Component>;
  { m.adj(x) } -> std::same_as<typename M::Component>;
  { m.add(x, x) } -> std::same_as<typename M::Component>;
  { m.scale(s, x) } -> std::same_as<typename M::Component>;
  { m.from_int(k) } -> std::same_as<typename M::Scalar>;
  { m.twist_factor(k) } -> std::same_as<typename M::Scalar>;
  { m.tau(x) } -> std::same_as<std::complex<double>>;
  { m.norm(x) } -> std::same_as<double>;
  { m.is_negligible(x) } -> std::same_as<bool>;
  { m.one() } -> std::same_as<typename M::Component>;
  { m.compatible(x, x) } -> std::same_as<bool>;
  { m.kms() } -> std::same_as<KmsContext>;
};

/// Element of a graded algebra: a finite formal sum of homogeneous
/// components keyed by integer degree. Values are immutable once built;
/// every operation returns a new element.
template <AlgebraModel M>
class Graded {
 public:
  using Component = typename M::Component;

  Graded() = default;

  static Graded homogeneous(const M& m, int degree, Component c) {
    Graded g;
    g.set(m, degree, std::move(c));
    return g;
  }

  static Graded unit(const M& m) { return homogeneous(m, 0, m.one()); }

  void set(const M& m, int degree, Component c) {
    if (!m.is_negligible(c)) parts_.insert_or_assign(degree, std::move(c));
  }

  void accumulate(const M& m, int degree, const Component& c) {
    auto it = parts_.find(degree);
    if (it == parts_.end()) {
      set(m, degree, c);
      return;
    }
    it->second = m.add(it->second, c);
    if (m.is_negligible(it->second)) parts_.erase(it);
  }

  const std::map<int, Component>& parts() const { return parts_; }
  bool is_zero() const { return parts_.empty(); }

  bool has_degree(int k) const { return parts_.count(k) != 0; }
  const Component& part(int k) const { return parts_.at(k); }

  int min_degree() const { return parts_.empty() ? 0 : parts_.begin()->first; }
  int max_degree() const { return parts_.empty() ? 0 : parts_.rbegin()->first; }

 private:
  std::map<int, Component> parts_;
};

namespace detail {
template <AlgebraModel M>
void require_compatible(const M& m, const Graded<M>& a, const Graded<M>& b) {
  if (a.is_zero() || b.is_zero()) return;
  if (!m.compatible(a.parts().begin()->second, b.parts().begin()->second))
    throw std::invalid_argument("graded elements belong to different models");
}
}  // namespace detail

/// Degree-additive product: (ab)_n = sum_{k+l=n} a_k b_l.
template <AlgebraModel M>
Graded<M> mul(const M& m, const Graded<M>& a, const Graded<M>& b) {
  detail::require_compatible(m, a, b);
  Graded<M> out;
  for (const auto& [k, x] : a.parts())
    for (const auto& [l, y] : b.parts()) out.accumulate(m, k + l, m.mul(x, y));
  return out;
}

/// Adjoint: degree map negated, components starred.
template <AlgebraModel M>
Graded<M> adj(const M& m, const Graded<M>& a) {
  Graded<M> out;
  for (const auto& [k, x] : a.parts()) out.set(m, -k, m.adj(x));
  return out;
}

template <AlgebraModel M>
Graded<M> add(const M& m, const Graded<M>& a, const Graded<M>& b) {
  detail::require_compatible(m, a, b);
  Graded<M> out = a;
  for (const auto& [k, x] : b.parts()) out.accumulate(m, k, x);
  return out;
}

template <AlgebraModel M>
Graded<M> sub(const M& m, const Graded<M>& a, const Graded<M>& b) {
  detail::require_compatible(m, a, b);
  Graded<M> out = a;
  for (const auto& [k, x] : b.parts()) out.accumulate(m, k, m.scale(m.from_int(-1), x));
  return out;
}

template <AlgebraModel M>
Graded<M> scale(const M& m, const typename M::Scalar& s, const Graded<M>& a) {
  Graded<M> out;
  for (const auto& [k, x] : a.parts()) out.set(m, k, m.scale(s, x));
  return out;
}

/// Analytic continuation of the gauge action to -i*beta: degree k scaled by
/// e^{k beta}.
template <AlgebraModel M>
Graded<M> twist(const M& m, const Graded<M>& a) {
  Graded<M> out;
  for (const auto& [k, x] : a.parts()) out.set(m, k, m.scale(m.twist_factor(k), x));
  return out;
}

template <AlgebraModel M>
Graded<M> twist_inverse(const M& m, const Graded<M>& a) {
  Graded<M> out;
  for (const auto& [k, x] : a.parts()) out.set(m, k, m.scale(m.twist_factor(-k), x));
  return out;
}

/// [D, a]: degree-k component scaled by k.
template <AlgebraModel M>
Graded<M> d_commutator(const M& m, const Graded<M>& a) {
  Graded<M> out;
  for (const auto& [k, x] : a.parts()) out.set(m, k, m.scale(m.from_int(k), x));
  return out;
}

/// phi(a) = tau(a_0): the state kills every nonzero degree.
template <AlgebraModel M>
std::complex<double> phi(const M& m, const Graded<M>& a) {
  return a.has_degree(0) ? m.tau(a.part(0)) : std::complex<double>{};
}

/// Largest component norm; the residual magnitude used by every tolerance
/// check in the generic layer.
template <AlgebraModel M>
double norm(const M& m, const Graded<M>& a) {
  double out = 0.0;
  for (const auto& [k, x] : a.parts()) out = std::max(out, m.norm(x));
  return out;
}

/// |phi(ba) - phi(twist(a) b)|: the twisted trace identity residual, zero for
/// every KMS pair.
template <AlgebraModel M>
double kms_identity_residual(const M& m, const Graded<M>& a, const Graded<M>& b) {
  const auto lhs = phi(m, mul(m, b, a));
  const auto rhs = phi(m, mul(m, twist(m, a), b));
  return std::abs(lhs - rhs);
}

}  // namespace modflow
