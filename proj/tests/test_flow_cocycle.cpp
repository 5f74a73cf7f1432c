#include <doctest.h>

#include <random>

#include "modflow/cocycle.hpp"
#include "modflow/cuntz.hpp"
#include "modflow/fermion.hpp"
#include "modflow/spectral_flow.hpp"

using namespace modflow;

namespace {

fermion::Element random_monomial(const fermion::Model& m, std::mt19937& rng,
                                 int max_factors) {
  auto acc = fermion::Element::unit(m);
  const int count = 1 + int(rng() % unsigned(max_factors));
  for (int i = 0; i < count; ++i) {
    auto g = fermion::generator_element(m, 1 + int(rng() % unsigned(m.modes())));
    if (rng() % 2) g = adj(m, g);
    acc = mul(m, acc, g);
  }
  return acc;
}

}  // namespace

TEST_CASE("three routes agree on the generator word of O_2") {
  cuntz::Model m(2);
  const auto v = cuntz::word_element(m, cuntz::Word{{1}, {}});
  const auto data = flow::extract_trace_data(m, v);
  const auto rep = flow::compute_report(data);

  CHECK(rep.sf_trace == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(rep.sf_trace == rep.sf_laurent_at_exp_minus_beta);  // identical route data
  REQUIRE(rep.sf_residue.has_value());
  CHECK(std::abs(rep.sf_residue->value + 0.5) < 1e-3);
  CHECK(std::abs(rep.eta_contribution) < 1e-10);
  CHECK(std::abs(rep.kernel_correction) < 1e-15);
  CHECK(!rep.extrapolation_dependent);
}

TEST_CASE("residue route on fermion generators") {
  fermion::Model m(2, 0.25);
  SUBCASE("single generator: -lambda") {
    const auto data = flow::extract_trace_data(m, fermion::generator_element(m, 1));
    const auto res = flow::sf_residue(data);
    CHECK(std::abs(res.flow.value + 0.25) < 1e-3);
    CHECK(std::abs(res.eta_contribution.value) < 1e-10);
  }
  SUBCASE("pair product: -2 lambda^2") {
    const auto v =
        mul(m, fermion::generator_element(m, 1), fermion::generator_element(m, 2));
    const auto res = flow::sf_residue(flow::extract_trace_data(m, v));
    CHECK(std::abs(res.flow.value + 0.125) < 1e-3);
  }
}

TEST_CASE("non-modular inputs are rejected by the flow routes") {
  fermion::Model m(2, 0.25);
  const auto bad =
      add(m, fermion::generator_element(m, 1), fermion::generator_element(m, 2));
  // unnormalised sum: not a partial isometry
  CHECK_THROWS_AS(flow::extract_trace_data(m, bad), std::invalid_argument);
}

TEST_CASE("eta vanishes identically on full-subspace models across the r window") {
  cuntz::Model oc(2);
  fermion::Model fm(3, 0.1);
  for (double r : {0.51, 0.75, 1.0, 2.0}) {
    const auto v = cuntz::word_element(oc, cuntz::Word{{1, 2}, {1}});
    CHECK(std::abs(cocycle::eta_r(oc, v, adj(oc, v), r)) == 0.0);
    const auto w = mul(fm, fermion::generator_element(fm, 1),
                       fermion::generator_element(fm, 3));
    CHECK(std::abs(cocycle::eta_r(fm, w, adj(fm, w), r)) == 0.0);
  }
  // degree selection: pairs whose degrees do not cancel contribute nothing
  const auto g1 = fermion::generator_element(fm, 1);
  const auto g2 = fermion::generator_element(fm, 2);
  CHECK(std::abs(cocycle::eta_r(fm, g1, g2, 1.0)) == 0.0);
  CHECK(std::abs(cocycle::psi_r(fm, g1, g2, 1.0)) == 0.0);
}

TEST_CASE("connes coboundary of psi^r vanishes") {
  fermion::Model m(2, 0.25);
  const auto psi = cocycle::psi_cochain(m);
  const auto B = cocycle::connes_B(m, psi);
  std::mt19937 rng(71);
  for (double r : {0.51, 0.75, 1.0, 2.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto a0 = random_monomial(m, rng, 4);
      CHECK(std::abs(B.eval({a0}, r)) < 1e-10);
    }
  }
}

TEST_CASE("b of psi^r is residue-free on degree-cancelling triples") {
  fermion::Model m(2, 0.25);
  const auto psi = cocycle::psi_cochain(m);
  const auto b_psi = cocycle::b_twisted(m, psi);
  const auto a1 = fermion::generator_element(m, 1);
  const auto a2 = fermion::generator_element(m, 2);
  // degrees +1, +1, -2: cancel in total
  const std::vector<fermion::Element> triple{a1, a2, adj(m, mul(m, a1, a2))};
  const auto res = residue_at_half(
      [&](double r) { return b_psi.eval(triple, r).real(); });
  CHECK(std::abs(res.value) < 1e-3);
  const auto res_im = residue_at_half(
      [&](double r) { return b_psi.eval(triple, r).imag(); });
  CHECK(std::abs(res_im.value) < 1e-3);
}

TEST_CASE("psi residue reproduces the flow on full models") {
  cuntz::Model m(2);
  const auto v = cuntz::word_element(m, cuntz::Word{{1}, {}});
  const auto res = residue_at_half(
      [&](double r) { return cocycle::psi_r(m, v, adj(m, v), r).real(); });
  CHECK(std::abs(res.value + 0.5) < 1e-3);
  // (r - 1/2) psi^r(S_1, S_1*) -> -1/2
  const double near = (0.5001 - 0.5) * cocycle::psi_r(m, v, adj(m, v), 0.5001).real();
  CHECK(std::abs(near + 0.5) < 1e-2);
}

TEST_CASE("twisted cyclicity residual on fermion pairs") {
  fermion::Model m(3, 0.3);
  std::mt19937 rng(97);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a0 = random_monomial(m, rng, 4);
    const auto a1 = random_monomial(m, rng, 4);
    CHECK(cocycle::cyclicity_residual(m, a0, a1) < 1e-10);
  }
  // degree-mismatched pairs vanish term by term
  const auto g1 = fermion::generator_element(m, 1);
  const auto g2 = fermion::generator_element(m, 2);
  CHECK(cocycle::cyclicity_residual(m, g1, g2) == 0.0);
}

TEST_CASE("phi1 values on fermion generators") {
  fermion::Model m(1, 0.25);
  const auto g = fermion::generator_element(m, 1);
  CHECK(cocycle::phi1(m, g, adj(m, g)).real() == doctest::Approx(-0.25).epsilon(1e-14));
  // [D, f] = 0 for degree-zero f
  const auto f = mul(m, g, adj(m, g));
  CHECK(std::abs(cocycle::phi1(m, f, f)) == 0.0);
}

TEST_CASE("dixmier limits reach 2 phi(a)") {
  SUBCASE("fermion projection at lambda 0.25") {
    fermion::Model m(1, 0.25);
    const auto g = fermion::generator_element(m, 1);
    const auto a = mul(m, g, adj(m, g));
    const auto lim = cocycle::dixmier_limit(m, a);
    CHECK(std::abs(lim.value - 0.5) < 1e-3);
    CHECK(lim.value <= 2.0 * 0.25 * (1.0 + 1e-3));  // never exceeds 2 phi(a)
  }
  SUBCASE("cuntz range projection") {
    cuntz::Model m(2);
    const auto a = cuntz::word_element(m, cuntz::Word{{1}, {1}});
    const auto lim = cocycle::dixmier_limit(m, a);
    CHECK(std::abs(lim.value - 1.0) < 1e-3);
  }
  SUBCASE("zero element") {
    fermion::Model m(1, 0.25);
    const auto lim = cocycle::dixmier_limit(m, fermion::Element{});
    CHECK(lim.value == 0.0);
  }
  SUBCASE("nonpositive matrix input is rejected") {
    fermion::Model m(1, 0.25);
    const auto g = fermion::generator_element(m, 1);
    // a_1 + a_1* is self-adjoint with spectrum {-1, +1}
    const auto v = add(m, g, adj(m, g));
    const auto x = mul(m, v, mul(m, v, v));  // stays degree-mixed; use v^2 - 2 instead
    const auto vsq = mul(m, v, v);           // = 1, positive
    CHECK(cocycle::dixmier_limit(m, vsq).value == doctest::Approx(2.0).epsilon(1e-6));
    const auto neg = sub(m, vsq, scale(m, std::complex<double>(3.0), Graded<fermion::Model>::unit(m)));
    CHECK_THROWS_AS(cocycle::dixmier_limit(m, neg), std::invalid_argument);
  }
}

TEST_CASE("theta helper ties to eta through the coboundary identity") {
  // On full models both sides vanish; the q-deformed table gives a genuine
  // nontrivial check of eta = theta(s) - theta(shift) for r > 1.
  const auto iso = tables::suq2_isometry(0.5, 2);
  const auto s = iso.range.phi_d_sequence();
  const long mdeg = -iso.degree;
  for (double r : {1.75, 2.0}) {
    const auto eta = eta_series(s, mdeg, r);
    const auto th = theta_series(s, r);
    const auto th_shift = theta_series(s.shifted(mdeg), r);
    const double slack = eta.error_bound + th.error_bound + th_shift.error_bound + 1e-9;
    CHECK(std::abs(eta.value - (th.value - th_shift.value)) < slack);
  }
  // algebra-model theta on degree-zero elements is zero (constant sequences)
  fermion::Model m(1, 0.25);
  const auto g = fermion::generator_element(m, 1);
  CHECK(std::abs(cocycle::theta_r(m, mul(m, g, adj(m, g)), 1.5)) == 0.0);
}

TEST_CASE("sum additivity over fermion direct sums") {
  fermion::Model m(2, 0.25);
  Mat2Model<fermion::Model> m2(m);
  const auto v = fermion::generator_element(m, 1);
  const auto w = mul(m, fermion::generator_element(m, 1), fermion::generator_element(m, 2));
  const auto vw = direct_sum(m2, v, w);
  CHECK(classify_modular(m2, vw, 1e-10).is_modular);
  const double whole = flow::sf_trace(flow::extract_trace_data(m2, vw));
  const double split = flow::sf_trace(flow::extract_trace_data(m, v)) +
                       flow::sf_trace(flow::extract_trace_data(m, w));
  CHECK(whole == doctest::Approx(split).epsilon(1e-14));
}
