#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qrf/core.hpp"
#include "qrf/group.hpp"

#include <cmath>
#include <map>

using namespace qrf;
using namespace qrf::group;

namespace {
constexpr double kPi = 3.14159265358979323846;

Vector comp_ket(const char* bits) {
  int n = int(std::string(bits).size());
  long idx = 0;
  for (const char* p = bits; *p; ++p) idx = idx * 2 + (*p - '0');
  Vector v = Vector::Zero(1L << n);
  v(idx) = 1.0;
  return v;
}
}  // namespace

TEST_CASE("clebsch_gordan basics") {
  CHECK(clebsch_gordan(0.5, 0.5, 0, 0.5, -0.5, 0) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(clebsch_gordan(0.5, 0.5, 0, -0.5, 0.5, 0) ==
        doctest::Approx(-1 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(clebsch_gordan(0.5, 0.5, 1, 0.5, 0.5, 1) == doctest::Approx(1.0).epsilon(1e-14));
  // selection rules
  CHECK(clebsch_gordan(0.5, 0.5, 1, 0.5, 0.5, 0) == 0.0);
  CHECK(clebsch_gordan(1, 0.5, 3, 0.5, 0.5, 1) == 0.0);
  CHECK_THROWS(clebsch_gordan(0.3, 0.5, 1, 0, 0.5, 0.5));
}

TEST_CASE("clebsch_gordan orthonormality for (1, 1/2)") {
  for (double j : {0.5, 1.5}) {
    for (double m = -j; m <= j; m += 1.0) {
      double acc = 0;
      for (double m1 : {-1.0, 0.0, 1.0})
        for (double m2 : {-0.5, 0.5}) {
          double c = clebsch_gordan(1, 0.5, j, m1, m2, m);
          acc += c * c;
        }
      CHECK(acc == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("wigner_d small cases") {
  double beta = 0.7;
  RealMatrix d = wigner_d(HalfInt(1), beta);
  CHECK(d(0, 0) == doctest::Approx(std::cos(beta / 2)).epsilon(1e-14));
  CHECK(d(0, 1) == doctest::Approx(-std::sin(beta / 2)).epsilon(1e-14));
  CHECK(d(1, 0) == doctest::Approx(std::sin(beta / 2)).epsilon(1e-14));

  RealMatrix d1 = wigner_d(HalfInt(2), beta);
  CHECK(d1(1, 1) == doctest::Approx(std::cos(beta)).epsilon(1e-14));  // d^1_00 = P_1
}

TEST_CASE("wigner_D unitarity") {
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    double a = rng.uniform(0, 2 * kPi), b = rng.uniform(0, kPi), g = rng.uniform(0, 2 * kPi);
    for (int tj = 1; tj <= 8; ++tj) {
      Matrix d = wigner_D(HalfInt(tj), a, b, g);
      CHECK((d * d.adjoint() - Matrix::Identity(tj + 1, tj + 1)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("wigner_D is a representation") {
  Rng rng(55);
  for (int t = 0; t < 25; ++t) {
    Su2Element g = Su2Element::haar_sample(rng);
    Su2Element h = Su2Element::haar_sample(rng);
    for (int tj : {1, 2, 3, 4}) {
      Matrix lhs = (g * h).matrix(HalfInt(tj));
      Matrix rhs = g.matrix(HalfInt(tj)) * h.matrix(HalfInt(tj));
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("clebsch_gordan completeness") {
  // sum_{j,m} <j1 m1; j2 m2|j m><j1 m1'; j2 m2'|j m> = delta_{m1 m1'} delta_{m2 m2'}
  double j1 = 1.5, j2 = 1.0;
  for (double m1 = -j1; m1 <= j1; m1 += 1.0)
    for (double m2 = -j2; m2 <= j2; m2 += 1.0)
      for (double m1p = -j1; m1p <= j1; m1p += 1.0)
        for (double m2p = -j2; m2p <= j2; m2p += 1.0) {
          double acc = 0;
          for (double j = std::abs(j1 - j2); j <= j1 + j2; j += 1.0)
            for (double m = -j; m <= j; m += 1.0)
              acc += clebsch_gordan(j1, j2, j, m1, m2, m) *
                     clebsch_gordan(j1, j2, j, m1p, m2p, m);
          double expected = (m1 == m1p && m2 == m2p) ? 1.0 : 0.0;
          CHECK(std::abs(acc - expected) < 1e-12);
        }
}

TEST_CASE("Su2Element euler round trip and class angle") {
  Rng rng(42);
  for (int t = 0; t < 50; ++t) {
    Su2Element g = Su2Element::haar_sample(rng);
    auto [a, b, c] = g.euler_zyz();
    Matrix u = g.matrix2();
    Matrix v = wigner_D(HalfInt(1), a, b, c);
    CHECK((u - v).cwiseAbs().maxCoeff() < 1e-11);
    // class angle from the trace
    double tr = u.trace().real();
    CHECK(tr == doctest::Approx(2 * std::cos(g.class_angle() / 2)).epsilon(1e-10));
  }
}

TEST_CASE("couple_qubits N=2 matches the coupled basis states") {
  IrrepDecomposition dec = couple_qubits(2);
  REQUIRE(dec.blocks().size() == 2);
  CHECK(dec.blocks()[0].j.twice == 2);
  CHECK(dec.blocks()[0].multiplicity == 1);
  CHECK(dec.blocks()[1].j.twice == 0);
  CHECK(dec.blocks()[1].multiplicity == 1);

  const Matrix& v = dec.isometry();
  CHECK((v * v.adjoint() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-13);

  // |1,1> = |00>, |1,0> = (|01>+|10>)/sqrt2, |1,-1> = |11>, |0,0> = singlet
  Vector r2 = (comp_ket("01") + comp_ket("10")) / std::sqrt(2.0);
  Vector s = (comp_ket("01") - comp_ket("10")) / std::sqrt(2.0);
  CHECK(std::abs(Complex(v.row(0) * comp_ket("00"))) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(Complex(v.row(1) * r2)) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(Complex(v.row(2) * comp_ket("11"))) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(Complex(v.row(3) * s)) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("couple_qubits N=3 matches the printed j=1/2 doublets") {
  IrrepDecomposition dec = couple_qubits(3);
  REQUIRE(dec.blocks().size() == 2);
  CHECK(dec.blocks()[0].j.twice == 3);
  CHECK(dec.blocks()[0].multiplicity == 1);
  CHECK(dec.blocks()[1].j.twice == 1);
  CHECK(dec.blocks()[1].multiplicity == 2);

  const Matrix& v = dec.isometry();
  long off = dec.blocks()[1].offset;
  // lambda = 0: singlet of the first pair times the third qubit
  Vector up0 = (comp_ket("010") - comp_ket("100")) / std::sqrt(2.0);   // m = +1/2
  Vector dn0 = (comp_ket("011") - comp_ket("101")) / std::sqrt(2.0);   // m = -1/2
  // lambda = 1: first pair coupled to the triplet
  Vector up1 = (2 * comp_ket("001") - comp_ket("010") - comp_ket("100")) / std::sqrt(6.0);
  Vector dn1 = (2 * comp_ket("110") - comp_ket("101") - comp_ket("011")) / std::sqrt(6.0);
  CHECK(std::abs(Complex(v.row(off + 0) * up0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(Complex(v.row(off + 1) * dn0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(Complex(v.row(off + 2) * up1)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(Complex(v.row(off + 3) * dn1)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("couple_qubits N=4 multiplicities") {
  IrrepDecomposition dec = couple_qubits(4);
  std::map<int, int> mult;
  long total = 0;
  for (const auto& blk : dec.blocks()) {
    mult[blk.j.twice] = blk.multiplicity;
    total += blk.gauge_dim * blk.multiplicity;
  }
  CHECK(mult[0] == 2);
  CHECK(mult[2] == 3);
  CHECK(mult[4] == 1);
  CHECK(total == 16);
}

TEST_CASE("isometry block-diagonalizes collective rotations") {
  Rng rng(9);
  for (int n = 1; n <= 6; ++n) {
    IrrepDecomposition dec = couple_qubits(n);
    const Matrix& v = dec.isometry();
    for (int t = 0; t < 100; ++t) {
      Su2Element g = Su2Element::haar_sample(rng);
      Matrix rotated = v * g.collective(n) * v.adjoint();
      Matrix expected = Matrix::Zero(v.rows(), v.cols());
      for (const auto& blk : dec.blocks()) {
        Matrix dj = g.matrix(blk.j);
        for (int lam = 0; lam < blk.multiplicity; ++lam)
          expected.block(blk.offset + lam * blk.gauge_dim, blk.offset + lam * blk.gauge_dim,
                         blk.gauge_dim, blk.gauge_dim) = dj;
      }
      CHECK((rotated - expected).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("multiplicity formula and message counts") {
  CHECK(multiplicity(4, HalfInt(2)) == 3);
  CHECK(classical_message_count(2) == 2);
  CHECK(classical_message_count(4) == 6);
  CHECK_THROWS(multiplicity(4, HalfInt(1)));  // N-2j odd
  for (int n = 1; n <= 12; ++n) {
    long long total = 0, csum = 0;
    for (int tj = n % 2; tj <= n; tj += 2) {
      total += (tj + 1) * multiplicity(n, HalfInt(tj));
      csum += multiplicity(n, HalfInt(tj));
    }
    CHECK(total == (1LL << n));
    CHECK(csum == classical_message_count(n));
  }
}

TEST_CASE("characters") {
  CHECK(su2_character(HalfInt(2), 0.0) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(su2_character(HalfInt(7), 0.0) == doctest::Approx(8.0).epsilon(1e-13));
  for (double w : {0.3, 1.0, 2.5, 5.0})
    CHECK(su2_character(HalfInt(2), w) == doctest::Approx(1 + 2 * std::cos(w)).epsilon(1e-12));

  // orthogonality under the Weyl measure
  for (int tj = 0; tj <= 6; tj += 2)
    for (int tk = 0; tk <= 6; tk += 2) {
      double val = integrate_class_function([&](double w) {
        return su2_character(HalfInt(tj), w) * su2_character(HalfInt(tk), w);
      });
      CHECK(std::abs(val - (tj == tk ? 1.0 : 0.0)) < 1e-8);
    }
}

TEST_CASE("character expansions") {
  CharacterExpansion f = CharacterExpansion::cartesian_fidelity();
  CHECK(f(0.0) == doctest::Approx(1.0).epsilon(1e-13));  // normalized at the identity
  for (double w : {0.4, 1.7, 3.0})
    CHECK(f(w) == doctest::Approx(0.25 + 0.25 * (1 + 2 * std::cos(w))).epsilon(1e-12));
}

TEST_CASE("legendre polynomials and largest zeros") {
  CHECK(legendre(2, 0.3) == doctest::Approx(0.5 * (3 * 0.09 - 1)).epsilon(1e-14));
  CHECK(legendre_largest_zero(2) == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(legendre_largest_zero(1) == doctest::Approx(0.0));
  for (int l = 2; l <= 25; ++l) {
    double x = legendre_largest_zero(l);
    CHECK(std::abs(legendre(l, x)) < 1e-11);
    CHECK(x > legendre_largest_zero(l - 1));
  }
}

TEST_CASE("gauss_legendre integrates exactly") {
  auto q = gauss_legendre(24, 0.0, kPi);
  double val = 0;
  for (int i = 0; i < 24; ++i) val += q.weights[i] * std::sin(q.nodes[i]);
  CHECK(val == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("haar sampling statistics") {
  // fixed seed reproducibility
  Su2Element a = haar_sample_su2(123), b = haar_sample_su2(123);
  CHECK(a.w() == b.w());
  CHECK(a.x() == b.x());

  Rng rng(2024);
  long n = 100000;
  Matrix mean = Matrix::Zero(2, 2);
  std::vector<long> hist(20, 0);
  for (long t = 0; t < n; ++t) {
    Su2Element g = Su2Element::haar_sample(rng);
    mean += g.matrix2();
    int bin = std::min(19, int(g.class_angle() / (2 * kPi) * 20));
    ++hist[bin];
  }
  mean /= double(n);
  // Schur orthogonality: mean of D^{1/2} vanishes; per-entry sigma ~ 1/sqrt(2n)
  CHECK(mean.cwiseAbs().maxCoeff() < 4.0 / std::sqrt(double(n)));

  // class-angle histogram against the Weyl density (1/pi) sin^2(w/2)
  double chi2 = 0;
  for (int k = 0; k < 20; ++k) {
    double lo = 2 * kPi * k / 20.0, hi = 2 * kPi * (k + 1) / 20.0;
    double p = (hi - lo - std::sin(hi) + std::sin(lo)) / (2 * kPi);  // int of weyl density
    double expect = p * n;
    chi2 += (hist[k] - expect) * (hist[k] - expect) / expect;
  }
  CHECK(chi2 < 45.0);  // dof 19, p ~ 0.999 cutoff
}

TEST_CASE("decomposition json export") {
  IrrepDecomposition dec = couple_qubits(2);
  std::string j = dec.to_json();
  CHECK(j.find("\"n_qubits\":2") != std::string::npos);
  CHECK(j.find("blocks") != std::string::npos);
  CHECK(j.find("isometry") != std::string::npos);
}

TEST_CASE("couple_qubits bounds") {
  CHECK_THROWS(couple_qubits(0));
  CHECK_THROWS(couple_qubits(11));
}
