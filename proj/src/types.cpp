#include "qrf/types.hpp"

#include <json.hpp>

#include <cmath>

namespace qrf {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr double kKrausTol = 1e-10;

void check_dims(const Dims& dims, long n, const char* what) {
  if (dims.empty()) throw std::invalid_argument(std::string(what) + ": empty dims");
  for (int d : dims)
    if (d < 1) throw std::invalid_argument(std::string(what) + ": nonpositive dim");
  if (dim_product(dims) != n)
    throw std::invalid_argument(std::string(what) + ": dims do not match size " + std::to_string(n));
}

}  // namespace

long dim_product(const Dims& dims) {
  long p = 1;
  for (int d : dims) p *= d;
  return p;
}

StateVector::StateVector(Vector amplitudes, Dims dims)
    : amp_(std::move(amplitudes)), dims_(std::move(dims)) {
  check_dims(dims_, amp_.size(), "StateVector");
  double n2 = amp_.squaredNorm();
  if (std::abs(n2 - 1.0) > 1e-10)
    throw std::invalid_argument("StateVector: squared norm " + std::to_string(n2) + " != 1");
  if (std::abs(n2 - 1.0) > kNormTol) amp_ /= std::sqrt(n2);
}

StateVector StateVector::basis(long index, Dims dims) {
  Vector v = Vector::Zero(dim_product(dims));
  v(index) = 1.0;
  return StateVector(std::move(v), std::move(dims));
}

DensityOperator::DensityOperator(Matrix matrix, Dims dims)
    : mat_(std::move(matrix)), dims_(std::move(dims)) {
  if (mat_.rows() != mat_.cols()) throw std::invalid_argument("DensityOperator: not square");
  check_dims(dims_, mat_.rows(), "DensityOperator");
  if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw std::invalid_argument("DensityOperator: not Hermitian");
  mat_ = (mat_ + Matrix(mat_.adjoint())) / 2.0;
  if (std::abs(mat_.trace().real() - 1.0) > kTraceTol || std::abs(mat_.trace().imag()) > kTraceTol)
    throw std::invalid_argument("DensityOperator: trace != 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(mat_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol)
    throw std::invalid_argument("DensityOperator: negative eigenvalue " +
                                std::to_string(es.eigenvalues().minCoeff()));
}

DensityOperator DensityOperator::from_pure(const StateVector& psi) {
  return DensityOperator(psi.amplitudes() * psi.amplitudes().adjoint(), psi.dims());
}

DensityOperator DensityOperator::maximally_mixed(Dims dims) {
  long n = dim_product(dims);
  return DensityOperator(Matrix::Identity(n, n) / double(n), std::move(dims));
}

RealVector DensityOperator::spectrum() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(mat_, Eigen::EigenvaluesOnly);
  RealVector ev = es.eigenvalues().reverse();
  for (long i = 0; i < ev.size(); ++i)
    if (ev(i) < 0) ev(i) = 0;
  return ev;
}

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus, std::string label)
    : kraus_(std::move(kraus)), label_(std::move(label)) {
  if (kraus_.empty()) throw std::invalid_argument("QuantumChannel: no Kraus operators");
  long n = kraus_.front().rows();
  Matrix sum = Matrix::Zero(n, n);
  for (const Matrix& k : kraus_) {
    if (k.rows() != n || k.cols() != n)
      throw std::invalid_argument("QuantumChannel: inconsistent Kraus dimensions");
    sum += k.adjoint() * k;
  }
  if ((sum - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > kKrausTol)
    throw std::invalid_argument("QuantumChannel: sum K^dag K != I");
}

QuantumChannel QuantumChannel::identity(long dim) {
  return QuantumChannel({Matrix::Identity(dim, dim)}, "identity");
}

Povm::Povm(std::vector<Matrix> effects, std::vector<std::string> labels)
    : effects_(std::move(effects)), labels_(std::move(labels)) {
  if (effects_.empty()) throw std::invalid_argument("Povm: no effects");
  if (labels_.size() != effects_.size()) throw std::invalid_argument("Povm: label count mismatch");
  long n = effects_.front().rows();
  Matrix sum = Matrix::Zero(n, n);
  for (const Matrix& e : effects_) {
    if (e.rows() != n || e.cols() != n) throw std::invalid_argument("Povm: inconsistent dims");
    if ((e - e.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
      throw std::invalid_argument("Povm: effect not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(e, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kKrausTol)
      throw std::invalid_argument("Povm: effect not positive");
    sum += e;
  }
  // Completeness on the joint support: sum must act as identity there.
  Eigen::SelfAdjointEigenSolver<Matrix> es(sum);
  for (long i = 0; i < es.eigenvalues().size(); ++i) {
    double ev = es.eigenvalues()(i);
    if (std::abs(ev) > kKrausTol && std::abs(ev - 1.0) > kKrausTol)
      throw std::invalid_argument("Povm: effects do not resolve identity on their support");
  }
}

namespace {

nlohmann::json matrix_json(const Matrix& m, const Dims& dims) {
  nlohmann::json j;
  j["dims"] = dims;
  std::vector<double> re, im;
  re.reserve(m.size());
  im.reserve(m.size());
  for (long r = 0; r < m.rows(); ++r)
    for (long c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  j["re"] = re;
  j["im"] = im;
  return j;
}

std::pair<std::vector<Complex>, Dims> parse_payload(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Dims dims = j.at("dims").get<Dims>();
  auto re = j.at("re").get<std::vector<double>>();
  auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != im.size()) throw std::invalid_argument("json: re/im size mismatch");
  std::vector<Complex> data(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) data[i] = Complex(re[i], im[i]);
  return {std::move(data), std::move(dims)};
}

}  // namespace

std::string to_json(const StateVector& psi) {
  Matrix row(1, psi.dim());
  row.row(0) = psi.amplitudes().transpose();
  return matrix_json(row, psi.dims()).dump();
}

std::string to_json(const DensityOperator& rho) {
  return matrix_json(rho.matrix(), rho.dims()).dump();
}

StateVector state_vector_from_json(const std::string& text) {
  auto [data, dims] = parse_payload(text);
  Vector v(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) v(i) = data[i];
  return StateVector(std::move(v), std::move(dims));
}

DensityOperator density_from_json(const std::string& text) {
  auto [data, dims] = parse_payload(text);
  long n = dim_product(dims);
  if (long(data.size()) != n * n) throw std::invalid_argument("json: not a square matrix payload");
  Matrix m(n, n);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) m(r, c) = data[r * n + c];
  return DensityOperator(std::move(m), std::move(dims));
}

}  // namespace qrf
