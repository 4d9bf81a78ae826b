/// @file
/// Exact quantum objects: state vectors, density operators, channels and
/// POVMs over an explicit tensor factorization, with JSON serialization.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrf {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Ordered list of subsystem dimensions.
using Dims = std::vector<int>;

long dim_product(const Dims& dims);

/// Pure state: unit-norm complex amplitude vector over `dims`.
class StateVector {
 public:
  StateVector(Vector amplitudes, Dims dims);

  const Vector& amplitudes() const { return amp_; }
  const Dims& dims() const { return dims_; }
  long dim() const { return amp_.size(); }

  /// Basis ket |index> on the given factorization.
  static StateVector basis(long index, Dims dims);

 private:
  Vector amp_;
  Dims dims_;
};

/// Mixed state: Hermitian, unit-trace, positive semidefinite matrix.
/// Eigenvalues in [-1e-10, 0) are tolerated (roundoff) and treated as 0.
class DensityOperator {
 public:
  DensityOperator(Matrix matrix, Dims dims);

  const Matrix& matrix() const { return mat_; }
  const Dims& dims() const { return dims_; }
  long dim() const { return mat_.rows(); }

  static DensityOperator from_pure(const StateVector& psi);
  static DensityOperator maximally_mixed(Dims dims);

  /// Eigenvalues sorted descending, negatives clipped to 0.
  RealVector spectrum() const;

 private:
  Matrix mat_;
  Dims dims_;
};

/// Completely positive trace-preserving map stored as a Kraus list.
class QuantumChannel {
 public:
  QuantumChannel(std::vector<Matrix> kraus, std::string label = "");

  const std::vector<Matrix>& kraus() const { return kraus_; }
  const std::string& label() const { return label_; }
  long dim() const { return kraus_.front().rows(); }

  static QuantumChannel identity(long dim);

 private:
  std::vector<Matrix> kraus_;
  std::string label_;
};

/// Positive effects summing to the identity on their joint support.
class Povm {
 public:
  Povm(std::vector<Matrix> effects, std::vector<std::string> labels);

  const std::vector<Matrix>& effects() const { return effects_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return effects_.size(); }

 private:
  std::vector<Matrix> effects_;
  std::vector<std::string> labels_;
};

// JSON schema {dims, re, im}, row-major for matrices.
std::string to_json(const StateVector& psi);
std::string to_json(const DensityOperator& rho);
StateVector state_vector_from_json(const std::string& text);
DensityOperator density_from_json(const std::string& text);

}  // namespace qrf
