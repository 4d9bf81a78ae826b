#include "qrf/resources.hpp"

#include "qrf/core.hpp"

#include <cmath>
#include <map>

namespace qrf::resources {

namespace {

void check_bipartite(const StateVector& psi, const std::vector<int>& number_a,
                     const std::vector<int>& number_b) {
  if (psi.dims().size() != 2) throw std::invalid_argument("expected bipartite dims [d_A, d_B]");
  if (long(number_a.size()) != psi.dims()[0] || long(number_b.size()) != psi.dims()[1])
    throw std::invalid_argument("local number spectrum length mismatch");
}

}  // namespace

double e_ssr_pure(const StateVector& psi, const std::vector<int>& number_a,
                  const std::vector<int>& number_b) {
  check_bipartite(psi, number_a, number_b);
  long da = psi.dims()[0], db = psi.dims()[1];

  // indices of each local charge value
  std::map<int, std::vector<long>> sectors_a, sectors_b;
  for (long i = 0; i < da; ++i) sectors_a[number_a[i]].push_back(i);
  for (long i = 0; i < db; ++i) sectors_b[number_b[i]].push_back(i);

  double total = 0;
  for (const auto& [na, rows] : sectors_a)
    for (const auto& [nb, cols] : sectors_b) {
      Matrix block(rows.size(), cols.size());
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
          block(r, c) = psi.amplitudes()(rows[r] * db + cols[c]);
      double p = block.squaredNorm();
      if (p < 1e-15) continue;
      Eigen::JacobiSVD<Matrix> svd(block);
      double h = 0;
      for (long i = 0; i < svd.singularValues().size(); ++i) {
        double lam = svd.singularValues()(i) * svd.singularValues()(i) / p;
        if (lam > 1e-15) h -= lam * std::log2(lam);
      }
      total += p * h;
    }
  return total;
}

double siv(const StateVector& psi, const std::vector<int>& number_a,
           const std::vector<int>& number_b) {
  check_bipartite(psi, number_a, number_b);
  long da = psi.dims()[0], db = psi.dims()[1];
  double mean_tot = 0, var_tot = 0, mean_a = 0, mean_a2 = 0;
  for (long i = 0; i < da; ++i)
    for (long k = 0; k < db; ++k) {
      double p = std::norm(psi.amplitudes()(i * db + k));
      double tot = number_a[i] + number_b[k];
      mean_tot += p * tot;
      var_tot += p * tot * tot;
      mean_a += p * number_a[i];
      mean_a2 += p * double(number_a[i]) * number_a[i];
    }
  var_tot -= mean_tot * mean_tot;
  if (var_tot > 1e-10)
    throw std::invalid_argument("siv: not an eigenstate of total number (variance " +
                                std::to_string(var_tot) + ")");
  return 4.0 * (mean_a2 - mean_a * mean_a);
}

namespace {

// Product of elementary two-level mode states over wings ordered
// (A modes..., B modes...); amplitude indexed by occupation bits.
ProtocolResult project_local_singles(const Vector& joint, int modes_per_wing) {
  int total = 2 * modes_per_wing;
  long dim = 1L << total;
  Vector post = Vector::Zero(dim);
  double norm2 = 0;
  for (long idx = 0; idx < dim; ++idx) {
    if (joint(idx) == Complex(0)) continue;
    int na = 0, nb = 0;
    for (int m = 0; m < modes_per_wing; ++m) {
      na += int(idx >> (total - 1 - m)) & 1;
      nb += int(idx >> (modes_per_wing - 1 - m)) & 1;
    }
    if (na == 1 && nb == 1) {
      post(idx) = joint(idx);
      norm2 += std::norm(joint(idx));
    }
  }
  post /= std::sqrt(norm2);
  Dims dims(total, 2);
  return {norm2, StateVector(std::move(post), std::move(dims))};
}

}  // namespace

ProtocolResult activate_refbit() {
  // wings ordered (A1, A2 | B1, B2); A1B1 carries the two-mode single photon,
  // A2B2 the refbit |+>|+>
  Vector joint = Vector::Zero(16);
  double r2 = 1.0 / std::sqrt(2.0);
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2) {
          if (a1 + b1 != 1) continue;  // single photon across A1B1
          long idx = a1 * 8 + a2 * 4 + b1 * 2 + b2;
          joint(idx) = r2 * 0.5;  // r2 from the photon, 1/2 from |+>|+>
        }
  return project_local_singles(joint, 2);
}

ProtocolResult two_copy_distill() {
  // wings ordered (A1, A2 | B1, B2); copies live on A1B1 and A2B2
  Vector joint = Vector::Zero(16);
  double half = 0.5;
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2) {
          if (a1 + b1 != 1 || a2 + b2 != 1) continue;
          long idx = a1 * 8 + a2 * 4 + b1 * 2 + b2;
          joint(idx) = half;
        }
  return project_local_singles(joint, 2);
}

BitCommitmentTokens bit_commitment_tokens() {
  // token basis |j,m>: (0,0),(1,0),(2,0),(1,1),(2,1),(2,2)
  Dims two_j = {0, 2, 4, 2, 4, 4};
  Dims ms = {0, 0, 0, 1, 1, 2};
  auto build = [&](int b) {
    double s = b == 0 ? 1.0 : -1.0;
    Vector phi0 = Vector::Zero(6), phi1 = Vector::Zero(6), phi2 = Vector::Zero(6);
    phi0(0) = 2.0 / 3.0;
    phi0(1) = s / std::sqrt(2.0);
    phi0(2) = std::sqrt(2.0) / 6.0;
    phi1(3) = s * std::sqrt(3.0) / 2.0;
    phi1(4) = -0.5;
    phi2(5) = 1.0;
    Matrix rho = 0.5 * (phi0 * phi0.adjoint()) + (1.0 / 3.0) * (phi1 * phi1.adjoint()) +
                 (1.0 / 6.0) * (phi2 * phi2.adjoint());
    return DensityOperator(std::move(rho), {6});
  };
  BitCommitmentTokens out{build(0), build(1), 0, false, two_j, ms};
  out.fidelity = qrf::fidelity(out.rho0, out.rho1);
  // pinch over the (j,m) labels: all six basis states carry distinct labels,
  // so the pinched states are the diagonals
  double diff = 0;
  for (int i = 0; i < 6; ++i)
    diff = std::max(diff,
                    std::abs(out.rho0.matrix()(i, i).real() - out.rho1.matrix()(i, i).real()));
  out.ssr_distinguishable = diff > 1e-10;
  return out;
}

}  // namespace qrf::resources
