#include "qrf/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qrf {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (long i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return StateVector(kron(a.amplitudes(), b.amplitudes()), std::move(dims));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityOperator(kron(a.matrix(), b.matrix()), std::move(dims));
}

namespace {

// Unravels flat index into per-subsystem digits (first subsystem slowest).
void unravel(long index, const Dims& dims, std::vector<int>& digits) {
  for (int k = int(dims.size()) - 1; k >= 0; --k) {
    digits[k] = int(index % dims[k]);
    index /= dims[k];
  }
}

}  // namespace

DensityOperator partial_trace(const DensityOperator& rho, const std::set<int>& keep) {
  const Dims& dims = rho.dims();
  int n = int(dims.size());
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  for (int k : keep)
    if (k < 0 || k >= n) throw std::invalid_argument("partial_trace: bad subsystem index");

  Dims kept_dims, traced_dims;
  std::vector<int> kept_idx, traced_idx;
  for (int k = 0; k < n; ++k) {
    if (keep.count(k)) {
      kept_dims.push_back(dims[k]);
      kept_idx.push_back(k);
    } else {
      traced_dims.push_back(dims[k]);
      traced_idx.push_back(k);
    }
  }
  long dk = dim_product(kept_dims);
  long dt = traced_dims.empty() ? 1 : dim_product(traced_dims);
  if (traced_idx.empty()) return rho;

  // strides of each subsystem in the flat index
  std::vector<long> stride(n, 1);
  for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];

  Matrix out = Matrix::Zero(dk, dk);
  std::vector<int> dig(kept_dims.size()), digc(kept_dims.size()), digt(traced_dims.size());
  for (long r = 0; r < dk; ++r) {
    unravel(r, kept_dims, dig);
    for (long c = 0; c < dk; ++c) {
      unravel(c, kept_dims, digc);
      Complex acc = 0;
      for (long t = 0; t < dt; ++t) {
        unravel(t, traced_dims, digt);
        long row = 0, col = 0;
        for (std::size_t k = 0; k < kept_idx.size(); ++k) {
          row += stride[kept_idx[k]] * dig[k];
          col += stride[kept_idx[k]] * digc[k];
        }
        for (std::size_t k = 0; k < traced_idx.size(); ++k) {
          long off = stride[traced_idx[k]] * digt[k];
          row += off;
          col += off;
        }
        acc += rho.matrix()(row, col);
      }
      out(r, c) = acc;
    }
  }
  return DensityOperator(std::move(out), std::move(kept_dims));
}

DensityOperator apply_channel(const QuantumChannel& ch, const DensityOperator& rho) {
  if (ch.dim() != rho.dim()) throw std::invalid_argument("apply_channel: dimension mismatch");
  Matrix out = Matrix::Zero(rho.dim(), rho.dim());
  for (const Matrix& k : ch.kraus()) out += k * rho.matrix() * k.adjoint();
  return DensityOperator(std::move(out), rho.dims());
}

std::vector<double> outcome_probabilities(const Povm& p, const DensityOperator& rho) {
  if (p.effects().front().rows() != rho.dim())
    throw std::invalid_argument("outcome_probabilities: dimension mismatch");
  std::vector<double> probs(p.size());
  double total = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    probs[k] = std::max(0.0, (p.effects()[k] * rho.matrix()).trace().real());
    total += probs[k];
  }
  if (std::abs(total - 1.0) > 1e-8)
    throw std::invalid_argument("outcome_probabilities: probabilities sum to " + std::to_string(total));
  return probs;
}

std::string sample_measurement(const Povm& p, const DensityOperator& rho, std::uint64_t seed) {
  std::vector<double> probs = outcome_probabilities(p, rho);
  double u = Rng(seed).uniform();
  double acc = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    acc += probs[k];
    if (u < acc) return p.labels()[k];
  }
  return p.labels().back();
}

namespace {

Matrix matrix_sqrt_psd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  RealVector ev = es.eigenvalues();
  Vector root(ev.size());
  for (long i = 0; i < ev.size(); ++i) root(i) = std::sqrt(std::max(0.0, ev(i)));
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  Matrix s = matrix_sqrt_psd(rho.matrix());
  Matrix inner = matrix_sqrt_psd(s * sigma.matrix() * s);
  double t = inner.trace().real();
  return std::min(1.0, t * t);
}

double von_neumann_entropy(const DensityOperator& rho) {
  RealVector ev = rho.spectrum();
  double h = 0;
  for (long i = 0; i < ev.size(); ++i)
    if (ev(i) > 1e-15) h -= ev(i) * std::log2(ev(i));
  return h;
}

double entanglement_entropy(const StateVector& psi, int cut) {
  int n = int(psi.dims().size());
  if (cut < 1 || cut >= n) throw std::invalid_argument("entanglement_entropy: bad cut");
  std::set<int> keep;
  for (int k = 0; k < cut; ++k) keep.insert(k);
  return von_neumann_entropy(partial_trace(DensityOperator::from_pure(psi), keep));
}

}  // namespace qrf
