/// @file
/// SU(2) and U(1) representation machinery: Clebsch-Gordan coefficients,
/// Wigner matrices, the N-qubit collective irrep decomposition with
/// multiplicities, characters, Legendre polynomials and Haar sampling.
#pragma once

#include "qrf/rng.hpp"
#include "qrf/types.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace qrf::group {

/// Half-integer stored as 2j to avoid floating-point label drift.
struct HalfInt {
  int twice = 0;

  constexpr HalfInt() = default;
  constexpr explicit HalfInt(int two_j) : twice(two_j) {}
  static HalfInt from_double(double j);

  double value() const { return twice / 2.0; }
  int dim() const { return twice + 1; }  // 2j+1
  bool is_integer() const { return twice % 2 == 0; }

  friend bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
  friend auto operator<=>(HalfInt a, HalfInt b) { return a.twice <=> b.twice; }
};

/// Condon-Shortley Clebsch-Gordan coefficient <j1 m1; j2 m2 | j m>.
/// Returns 0 outside the triangle or when m != m1+m2.
double clebsch_gordan(double j1, double j2, double j, double m1, double m2, double m);

/// Reduced Wigner matrix d^j(beta), rows/cols ordered m = j, j-1, ..., -j.
RealMatrix wigner_d(HalfInt j, double beta);

/// Full Wigner matrix D^j(alpha,beta,gamma) = e^{-i m' alpha} d^j_{m'm}(beta) e^{-i m gamma}.
Matrix wigner_D(HalfInt j, double alpha, double beta, double gamma);

/// SU(2) element as a unit quaternion; U = w I - i (x sx + y sy + z sz).
class Su2Element {
 public:
  Su2Element(double w, double x, double y, double z);

  static Su2Element identity() { return {1, 0, 0, 0}; }
  static Su2Element from_euler(double alpha, double beta, double gamma);
  static Su2Element haar_sample(Rng& rng);

  /// zyz Euler angles (alpha, beta, gamma) with beta in [0,pi].
  std::array<double, 3> euler_zyz() const;

  /// Conjugation class angle omega in [0,2pi]; trace U = 2 cos(omega/2).
  double class_angle() const;

  Matrix matrix2() const;                  ///< spin-1/2 representation
  Matrix matrix(HalfInt j) const;          ///< spin-j representation D^j
  Matrix collective(int n_qubits) const;   ///< U^{tensor N} on N qubits

  Su2Element inverse() const { return {w_, -x_, -y_, -z_}; }
  friend Su2Element operator*(const Su2Element& a, const Su2Element& b);

  double w() const { return w_; }
  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }

 private:
  double w_, x_, y_, z_;
};

/// One irrep block of the N-qubit decomposition: rows [offset, offset + (2j+1)c_j)
/// of the coupled basis, ordered (lambda, m) with m fastest (descending from +j).
struct IrrepBlock {
  HalfInt j;
  int gauge_dim = 0;     // 2j+1
  int multiplicity = 0;  // c_j
  long offset = 0;
};

/// Decomposition of (C^2)^{tensor N} under collective SU(2).
/// isometry() maps computational-basis vectors to the coupled basis ordered
/// (j descending, lambda ascending by coupling path, m descending);
/// collective rotations become block-diagonal I_{c_j} (x) D^j.
class IrrepDecomposition {
 public:
  int n_qubits() const { return n_; }
  const std::vector<IrrepBlock>& blocks() const { return blocks_; }
  const Matrix& isometry() const { return isometry_; }
  long dim() const { return isometry_.rows(); }

  const IrrepBlock* block(HalfInt j) const;

  std::string to_json() const;

  friend IrrepDecomposition couple_qubits(int n_qubits);

 private:
  int n_ = 0;
  std::vector<IrrepBlock> blocks_;
  Matrix isometry_;
};

/// Sequential Clebsch-Gordan coupling of N <= 10 qubits. Multiplicity labels
/// enumerate intermediate-j paths in lexicographic order, so for N=3 the
/// lambda=0 pair couples the first two qubits to a singlet.
IrrepDecomposition couple_qubits(int n_qubits);

/// c_j^(N) = binom(N, N/2-j) (2j+1)/(N/2+j+1).
long long multiplicity(int n_qubits, HalfInt j);

/// Number of perfectly distinguishable classical messages on N qubits under
/// collective decoherence: sum_j c_j = binom(N, floor(N/2)).
long long classical_message_count(int n_qubits);

/// SU(2) character chi_j(omega) = sin((2j+1)omega/2)/sin(omega/2).
double su2_character(HalfInt j, double omega);

/// Real class function given by a character expansion sum_j a_j chi_j(omega).
struct CharacterExpansion {
  std::vector<std::pair<HalfInt, double>> terms;

  double operator()(double omega) const;

  /// The Cartesian-frame fidelity payoff 1/4 + (1/4) chi_1, normalized to 1
  /// at the identity.
  static CharacterExpansion cartesian_fidelity();
};

double legendre(int l, double x);

/// Largest root of P_l, found by bracketed bisection on (x_{l-1,max}, 1).
double legendre_largest_zero(int l);

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n nodes on [a,b].
Quadrature gauss_legendre(int n, double a, double b);

/// Integral of a class function against the SU(2) Weyl measure
/// (1/pi) sin^2(omega/2) d omega on [0,2pi).
double integrate_class_function(const std::function<double(double)>& f, int nodes = 256);

Su2Element haar_sample_su2(std::uint64_t seed);

}  // namespace qrf::group
