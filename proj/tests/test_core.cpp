#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qrf/core.hpp"
#include "qrf/rng.hpp"

#include <cmath>

using namespace qrf;

namespace {

StateVector ket(int index, Dims dims) { return StateVector::basis(index, std::move(dims)); }

StateVector plus_state() {
  Vector v(2);
  v << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  return StateVector(v, {2});
}

StateVector singlet() {
  Vector v = Vector::Zero(4);
  v(1) = 1 / std::sqrt(2.0);
  v(2) = -1 / std::sqrt(2.0);
  return StateVector(v, {2, 2});
}

Matrix random_unitary(long n, Rng& rng) {
  Matrix a(n, n);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) a(r, c) = Complex(rng.normal(), rng.normal());
  return Eigen::HouseholderQR<Matrix>(a).householderQ();
}

}  // namespace

TEST_CASE("tensor products") {
  StateVector s01 = tensor(ket(0, {2}), ket(1, {2}));
  CHECK(s01.amplitudes()(1) == Complex(1.0));
  CHECK(s01.amplitudes()(0) == Complex(0.0));
  CHECK(s01.dims() == Dims{2, 2});

  DensityOperator mm = tensor(DensityOperator::maximally_mixed({2}),
                              DensityOperator::maximally_mixed({2}));
  CHECK((mm.matrix() - Matrix::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() < 1e-15);

  StateVector pp = tensor(plus_state(), plus_state());
  for (int i = 0; i < 4; ++i) CHECK(std::abs(pp.amplitudes()(i) - Complex(0.5)) < 1e-15);
}

TEST_CASE("partial trace") {
  DensityOperator bell = DensityOperator::from_pure(singlet());
  DensityOperator reduced = partial_trace(bell, {0});
  CHECK((reduced.matrix() - Matrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-14);

  // two singlet pairs, drop the last qubit
  StateVector psi1 = tensor(singlet(), singlet());
  DensityOperator traced = partial_trace(DensityOperator::from_pure(psi1), {0, 1, 2});
  Matrix outer = singlet().amplitudes() * singlet().amplitudes().adjoint();
  Matrix half = Matrix::Identity(2, 2) / 2.0;
  Matrix expected = kron(outer, half);
  CHECK((traced.matrix() - expected).cwiseAbs().maxCoeff() < 1e-13);

  // keeping every factor of a product state returns the factor
  DensityOperator prod = tensor(DensityOperator::from_pure(plus_state()),
                                DensityOperator::maximally_mixed({3}));
  DensityOperator first = partial_trace(prod, {0});
  CHECK((first.matrix() - DensityOperator::from_pure(plus_state()).matrix())
            .cwiseAbs()
            .maxCoeff() < 1e-14);

  CHECK_THROWS(partial_trace(bell, {}));
}

TEST_CASE("partial trace inverts tensor (random)") {
  Rng rng(3);
  for (int t = 0; t < 25; ++t) {
    Matrix g(3, 3), h(2, 2);
    for (int i = 0; i < 9; ++i) g(i / 3, i % 3) = Complex(rng.normal(), rng.normal());
    for (int i = 0; i < 4; ++i) h(i / 2, i % 2) = Complex(rng.normal(), rng.normal());
    Matrix a = g * g.adjoint(), b = h * h.adjoint();
    a /= a.trace();
    b /= b.trace();
    DensityOperator rho(a, {3}), sigma(b, {2});
    DensityOperator back = partial_trace(tensor(rho, sigma), {0});
    CHECK((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    // keeping a non-leading factor works the same way
    DensityOperator second = partial_trace(tensor(rho, sigma), {1});
    CHECK((second.matrix() - sigma.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    DensityOperator middle = partial_trace(tensor(tensor(rho, sigma), rho), {1});
    CHECK((middle.matrix() - sigma.matrix()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("fidelity is symmetric") {
  Rng rng(19);
  for (int t = 0; t < 20; ++t) {
    Matrix g(4, 4), h(4, 4);
    for (int i = 0; i < 16; ++i) {
      g(i / 4, i % 4) = Complex(rng.normal(), rng.normal());
      h(i / 4, i % 4) = Complex(rng.normal(), rng.normal());
    }
    Matrix a = g * g.adjoint(), b = h * h.adjoint();
    a /= a.trace();
    b /= b.trace();
    DensityOperator rho(a, {4}), sigma(b, {4});
    CHECK(fidelity(rho, sigma) == doctest::Approx(fidelity(sigma, rho)).epsilon(1e-10));
  }
}

TEST_CASE("apply_channel") {
  Vector p = plus_state().amplitudes();
  DensityOperator rho = DensityOperator::from_pure(plus_state());
  CHECK((apply_channel(QuantumChannel::identity(2), rho).matrix() - rho.matrix())
            .cwiseAbs()
            .maxCoeff() < 1e-15);

  // completely depolarizing qubit channel
  Matrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;
  std::vector<Matrix> kraus = {Matrix::Identity(2, 2) / 2, x / 2, y / 2, z / 2};
  DensityOperator depol = apply_channel(QuantumChannel(kraus, "depolarizing"), rho);
  CHECK((depol.matrix() - Matrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-14);

  // photon-number pinch on a single mode with n_max = 1
  Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  DensityOperator pinched = apply_channel(QuantumChannel({p0, p1}, "number pinch"), rho);
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = expected(1, 1) = 0.5;
  CHECK((pinched.matrix() - expected).cwiseAbs().maxCoeff() < 1e-14);

  CHECK_THROWS(apply_channel(QuantumChannel::identity(3), rho));
}

TEST_CASE("channel application preserves trace and hermiticity (random)") {
  Rng rng(17);
  for (int t = 0; t < 1000; ++t) {
    long n = 2 + long(rng.uniform() * 15);  // dims up to 16
    Matrix g(n, n);
    for (long i = 0; i < n * n; ++i) g(i / n, i % n) = Complex(rng.normal(), rng.normal());
    Matrix m = g * g.adjoint();
    m /= m.trace();
    DensityOperator rho(m, {int(n)});
    Matrix u = random_unitary(n, rng), w = random_unitary(n, rng);
    QuantumChannel ch({u / std::sqrt(2.0), w / std::sqrt(2.0)}, "random mix");
    DensityOperator out = apply_channel(ch, rho);
    CHECK(std::abs(out.matrix().trace().real() - 1.0) < 1e-10);
    CHECK((out.matrix() - out.matrix().adjoint()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("measurement sampling") {
  Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  Povm zmeas({p0, p1}, {"0", "1"});

  DensityOperator zero = DensityOperator::from_pure(ket(0, {2}));
  for (std::uint64_t seed = 0; seed < 32; ++seed)
    CHECK(sample_measurement(zmeas, zero, seed) == "0");

  // frequencies on |+> over 1e5 trials: binomial 3 sigma band around 1/2
  DensityOperator plus = DensityOperator::from_pure(plus_state());
  long n = 100000, zeros = 0;
  Rng seeds(21);
  for (long t = 0; t < n; ++t)
    if (sample_measurement(zmeas, plus, seeds.bits()) == "0") ++zeros;
  double freq = double(zeros) / n;
  double sigma = std::sqrt(0.25 / n);
  CHECK(std::abs(freq - 0.5) < 3 * sigma);
}

TEST_CASE("fidelity and entanglement entropy") {
  DensityOperator rho = DensityOperator::from_pure(plus_state());
  CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(entanglement_entropy(singlet(), 1) == doctest::Approx(1.0).epsilon(1e-12));

  DensityOperator mixed = DensityOperator::maximally_mixed({2});
  DensityOperator zero = DensityOperator::from_pure(ket(0, {2}));
  CHECK(fidelity(mixed, zero) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("json round trip") {
  StateVector s = singlet();
  StateVector back = state_vector_from_json(to_json(s));
  CHECK((back.amplitudes() - s.amplitudes()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(back.dims() == s.dims());

  DensityOperator rho = DensityOperator::from_pure(s);
  DensityOperator rho_back = density_from_json(to_json(rho));
  CHECK((rho_back.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("constructor invariants") {
  Vector bad(2);
  bad << 1.0, 1.0;  // norm sqrt(2)
  CHECK_THROWS(StateVector(bad, {2}));
  CHECK_THROWS(StateVector(plus_state().amplitudes(), {3}));

  Matrix nh(2, 2);
  nh << 1, 1, 0, 0;
  CHECK_THROWS(DensityOperator(nh, {2}));

  Matrix not_tp(2, 2);
  not_tp << 0.5, 0, 0, 0.5;
  CHECK_THROWS(QuantumChannel({not_tp}, "bad"));
}
