#include "qrf/twirl.hpp"

#include "qrf/core.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace qrf::twirl {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

DensityOperator u1_twirl(const DensityOperator& rho, const std::vector<int>& number_spectrum) {
  if (long(number_spectrum.size()) != rho.dim())
    throw std::invalid_argument("u1_twirl: spectrum length mismatch");
  Matrix out = rho.matrix();
  for (long r = 0; r < out.rows(); ++r)
    for (long c = 0; c < out.cols(); ++c)
      if (number_spectrum[r] != number_spectrum[c]) out(r, c) = 0;
  return DensityOperator(std::move(out), rho.dims());
}

const group::IrrepDecomposition& cached_coupling(int n_qubits) {
  static std::map<int, group::IrrepDecomposition> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n_qubits);
  if (it == cache.end()) it = cache.emplace(n_qubits, group::couple_qubits(n_qubits)).first;
  return it->second;
}

Matrix block_twirl_coupled(const Matrix& sigma, const group::IrrepDecomposition& dec) {
  Matrix out = Matrix::Zero(sigma.rows(), sigma.cols());
  for (const auto& blk : dec.blocks()) {
    int d = blk.gauge_dim, c = blk.multiplicity;
    long off = blk.offset;
    // coupled index within block: lambda * d + m_index
    for (int a = 0; a < c; ++a)
      for (int b = 0; b < c; ++b) {
        Complex tr = 0;
        for (int m = 0; m < d; ++m) tr += sigma(off + a * d + m, off + b * d + m);
        tr /= double(d);
        for (int m = 0; m < d; ++m) out(off + a * d + m, off + b * d + m) = tr;
      }
  }
  return out;
}

DensityOperator su2_twirl_qubits(const DensityOperator& rho, int n_qubits) {
  if (rho.dim() != (1L << n_qubits))
    throw std::invalid_argument("su2_twirl_qubits: dimension mismatch");
  const auto& dec = cached_coupling(n_qubits);
  const Matrix& v = dec.isometry();
  Matrix sigma = v * rho.matrix() * v.adjoint();
  Matrix out = block_twirl_coupled(sigma, dec);
  return DensityOperator(v.adjoint() * out * v, rho.dims());
}

SampledTwirl dense_twirl_via_sampling(const DensityOperator& rho,
                                      const std::function<Matrix(Rng&)>& sample, long n_samples,
                                      std::uint64_t seed) {
  if (n_samples < 100) throw std::invalid_argument("dense_twirl_via_sampling: need >= 100 samples");
  Rng rng(seed);
  long n = rho.dim();
  Matrix acc = Matrix::Zero(n, n);
  RealMatrix acc2 = RealMatrix::Zero(n, n);  // per-entry |t_ij|^2 sums
  for (long s = 0; s < n_samples; ++s) {
    Matrix u = sample(rng);
    Matrix t = u * rho.matrix() * u.adjoint();
    acc += t;
    acc2 += t.cwiseAbs2();
  }
  Matrix avg = acc / double(n_samples);
  // Frobenius norm of the elementwise standard error of the mean
  double var_sum = 0;
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) {
      double v = acc2(r, c) / n_samples - std::norm(avg(r, c));
      var_sum += std::max(0.0, v) * n_samples / double(n_samples - 1);
    }
  return {DensityOperator((avg + Matrix(avg.adjoint())) / 2.0, rho.dims()),
          std::sqrt(var_sum / double(n_samples))};
}

DensityOperator weighted_u1_twirl(const DensityOperator& rho,
                                  const std::vector<int>& number_spectrum,
                                  const std::function<double(double)>& phase_density,
                                  int quadrature_nodes) {
  if (long(number_spectrum.size()) != rho.dim())
    throw std::invalid_argument("weighted_u1_twirl: spectrum length mismatch");
  // midpoint rule: spectrally accurate for smooth periodic densities
  double h = 2 * kPi / quadrature_nodes;
  std::vector<double> nodes(quadrature_nodes), dens(quadrature_nodes);
  double total = 0;
  for (int i = 0; i < quadrature_nodes; ++i) {
    nodes[i] = (i + 0.5) * h;
    dens[i] = phase_density(nodes[i]);
    total += h * dens[i];
  }
  if (std::abs(total - 1.0) > 1e-8)
    throw std::invalid_argument("weighted_u1_twirl: distribution integrates to " + std::to_string(total));

  // Fourier coefficients c_k = int p(phi) e^{i k phi} for the shifts present
  std::map<int, Complex> fourier;
  Matrix out = rho.matrix();
  for (long r = 0; r < out.rows(); ++r)
    for (long c = 0; c < out.cols(); ++c) {
      int k = number_spectrum[r] - number_spectrum[c];
      if (k == 0) continue;
      auto it = fourier.find(k);
      if (it == fourier.end()) {
        Complex acc = 0;
        for (int i = 0; i < quadrature_nodes; ++i)
          acc += h * dens[i] * std::exp(Complex(0, k * nodes[i]));
        it = fourier.emplace(k, acc).first;
      }
      out(r, c) *= it->second;
    }
  return DensityOperator(std::move(out), rho.dims());
}

QuantumChannel super_twirl_u1(const QuantumChannel& ch, const std::vector<int>& number_spectrum) {
  if (long(number_spectrum.size()) != ch.dim())
    throw std::invalid_argument("super_twirl_u1: spectrum length mismatch");
  std::vector<Matrix> kraus;
  for (const Matrix& k : ch.kraus()) {
    std::map<int, Matrix> shifts;
    for (long r = 0; r < k.rows(); ++r)
      for (long c = 0; c < k.cols(); ++c) {
        if (k(r, c) == Complex(0)) continue;
        int d = number_spectrum[r] - number_spectrum[c];
        auto it = shifts.find(d);
        if (it == shifts.end()) it = shifts.emplace(d, Matrix::Zero(k.rows(), k.cols())).first;
        it->second(r, c) = k(r, c);
      }
    for (auto& [d, m] : shifts) kraus.push_back(std::move(m));
  }
  return QuantumChannel(std::move(kraus), ch.label() + "~u1");
}

QuantumChannel super_twirl_finite(const QuantumChannel& ch, const std::vector<Matrix>& group) {
  if (group.empty()) throw std::invalid_argument("super_twirl_finite: empty group");
  std::vector<Matrix> kraus;
  double w = 1.0 / std::sqrt(double(group.size()));
  for (const Matrix& u : group)
    for (const Matrix& k : ch.kraus()) kraus.push_back(w * u * k * u.adjoint());
  return QuantumChannel(std::move(kraus), ch.label() + "~G");
}

Matrix choi_matrix(const QuantumChannel& ch) {
  long n = ch.dim();
  Matrix choi = Matrix::Zero(n * n, n * n);
  for (const Matrix& k : ch.kraus()) {
    Vector v(n * n);
    for (long r = 0; r < n; ++r)
      for (long c = 0; c < n; ++c) v(r * n + c) = k(r, c);
    choi += v * v.adjoint();
  }
  return choi;
}

bool is_g_invariant(const Matrix& op, const std::vector<Matrix>& group, double tol) {
  for (const Matrix& u : group) {
    double err = (op * u - u * op).cwiseAbs().maxCoeff();
    if (err > tol) return false;
  }
  return true;
}

bool is_g_invariant(const QuantumChannel& ch, const std::vector<Matrix>& group, double tol) {
  Matrix base = choi_matrix(ch);
  for (const Matrix& u : group) {
    std::vector<Matrix> conj;
    conj.reserve(ch.kraus().size());
    for (const Matrix& k : ch.kraus()) conj.push_back(u * k * u.adjoint());
    Matrix other = choi_matrix(QuantumChannel(std::move(conj), "conj"));
    if ((base - other).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

std::vector<Matrix> u1_elements(const std::vector<int>& number_spectrum,
                                const std::vector<double>& phases) {
  std::vector<Matrix> out;
  long n = number_spectrum.size();
  for (double phi : phases) {
    Matrix u = Matrix::Zero(n, n);
    for (long i = 0; i < n; ++i) u(i, i) = std::exp(Complex(0, number_spectrum[i] * phi));
    out.push_back(std::move(u));
  }
  return out;
}

std::vector<Matrix> su2_collective_elements(int n_qubits, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Matrix> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i)
    out.push_back(group::Su2Element::haar_sample(rng).collective(n_qubits));
  return out;
}

}  // namespace qrf::twirl
