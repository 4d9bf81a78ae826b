#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qrf/core.hpp"
#include "qrf/resources.hpp"

#include <cmath>

using namespace qrf;
using namespace qrf::resources;

namespace {

const std::vector<int> kOneMode = {0, 1};
const std::vector<int> kTwoModes = {0, 1, 1, 2};

StateVector two_mode_single_photon() {
  Vector v = Vector::Zero(4);
  v(1) = v(2) = 1 / std::sqrt(2.0);
  return StateVector(v, {2, 2});
}

// (|01>_A |10>_B + |10>_A |01>_B)/sqrt(2) with two modes per wing
StateVector entangled_pair_state() {
  Vector v = Vector::Zero(16);
  v(1 * 4 + 2) = 1 / std::sqrt(2.0);
  v(2 * 4 + 1) = 1 / std::sqrt(2.0);
  return StateVector(v, {4, 4});
}

}  // namespace

TEST_CASE("e_ssr_pure on the reference states") {
  CHECK(e_ssr_pure(entangled_pair_state(), kTwoModes, kTwoModes) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e_ssr_pure(two_mode_single_photon(), kOneMode, kOneMode) ==
        doctest::Approx(0.0).epsilon(1e-12));
  StateVector product = tensor(StateVector::basis(1, {2}), StateVector::basis(0, {2}));
  CHECK(e_ssr_pure(product, kOneMode, kOneMode) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("e_ssr is bounded by the unrestricted entanglement") {
  Rng rng(40);
  for (int t = 0; t < 40; ++t) {
    Vector v(16);
    for (int i = 0; i < 16; ++i) v(i) = Complex(rng.normal(), rng.normal());
    v /= v.norm();
    StateVector psi(v, {4, 4});
    double restricted = e_ssr_pure(psi, kTwoModes, kTwoModes);
    double full = entanglement_entropy(psi, 1);
    CHECK(restricted <= full + 1e-10);
  }
}

TEST_CASE("siv values and additivity") {
  CHECK(siv(two_mode_single_photon(), kOneMode, kOneMode) == doctest::Approx(1.0).epsilon(1e-12));

  StateVector sharp = tensor(StateVector::basis(1, {2}), StateVector::basis(0, {2}));
  CHECK(siv(sharp, kOneMode, kOneMode) == doctest::Approx(0.0).epsilon(1e-12));

  // two refbit copies: regroup (A1,B1,A2,B2) -> (A1,A2),(B1,B2)
  StateVector one = two_mode_single_photon();
  StateVector pair = tensor(one, one);
  Vector grouped = Vector::Zero(16);
  for (int a1 = 0; a1 < 2; ++a1)
    for (int b1 = 0; b1 < 2; ++b1)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int b2 = 0; b2 < 2; ++b2)
          grouped((a1 * 2 + a2) * 4 + (b1 * 2 + b2)) =
              pair.amplitudes()(a1 * 8 + b1 * 4 + a2 * 2 + b2);
  CHECK(siv(StateVector(grouped, {4, 4}), kTwoModes, kTwoModes) ==
        doctest::Approx(2.0).epsilon(1e-12));

  // plus states are not total-number eigenstates
  Vector plus(2);
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  StateVector pp = tensor(StateVector(plus, {2}), StateVector(plus, {2}));
  CHECK_THROWS(siv(pp, kOneMode, kOneMode));
}

TEST_CASE("refbit activation") {
  auto res = activate_refbit();
  CHECK(res.success_probability == doctest::Approx(0.25).epsilon(1e-12));
  // post state (|01>_A |10>_B + |10>_A |01>_B)/sqrt(2) in wing order (A1,A2,B1,B2)
  Vector expected = Vector::Zero(16);
  expected(0 * 8 + 1 * 4 + 1 * 2 + 0) = 1 / std::sqrt(2.0);
  expected(1 * 8 + 0 * 4 + 0 * 2 + 1) = 1 / std::sqrt(2.0);
  CHECK((res.post_state.amplitudes() - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("two-copy distillation") {
  auto res = two_copy_distill();
  CHECK(res.success_probability == doctest::Approx(0.5).epsilon(1e-12));
  // regroup wings and evaluate the restricted entanglement: one ebit
  Vector post = res.post_state.amplitudes();
  Vector grouped = Vector::Zero(16);
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2)
          grouped((a1 * 2 + a2) * 4 + (b1 * 2 + b2)) = post(a1 * 8 + a2 * 4 + b1 * 2 + b2);
  CHECK(e_ssr_pure(StateVector(grouped, {4, 4}), kTwoModes, kTwoModes) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("protocol outputs are local-number eigenstates") {
  for (auto res : {activate_refbit(), two_copy_distill()}) {
    const Vector& v = res.post_state.amplitudes();
    for (long idx = 0; idx < 16; ++idx) {
      if (std::abs(v(idx)) < 1e-15) continue;
      int a1 = int(idx >> 3) & 1, a2 = int(idx >> 2) & 1;
      int b1 = int(idx >> 1) & 1, b2 = int(idx) & 1;
      CHECK(a1 + a2 == 1);
      CHECK(b1 + b2 == 1);
    }
  }
}

TEST_CASE("bit commitment tokens") {
  auto res = bit_commitment_tokens();
  CHECK(std::abs(res.rho0.matrix().trace().real() - 1.0) < 1e-12);
  CHECK(std::abs(res.rho1.matrix().trace().real() - 1.0) < 1e-12);

  // pinched (j,m)-diagonals agree: invisible to J^2-diagonal measurements
  for (int i = 0; i < 6; ++i)
    CHECK(std::abs(res.rho0.matrix()(i, i).real() - res.rho1.matrix()(i, i).real()) < 1e-12);
  CHECK_FALSE(res.ssr_distinguishable);

  // but the states differ: non-unit fidelity bounds Alice's control
  CHECK(res.fidelity < 1.0 - 1e-6);
  CHECK(res.fidelity == doctest::Approx(1.0 / 9.0).epsilon(1e-8));
}
