#include "adchain/spin_algebra.hpp"

#include <bit>

#include "adchain/errors.hpp"

namespace adchain {

SingleSpinOps single_spin_ops() {
  SingleSpinOps ops;
  ops.iz << 0.5, 0.0, 0.0, -0.5;
  ops.iplus << 0.0, 1.0, 0.0, 0.0;
  ops.iminus << 0.0, 0.0, 1.0, 0.0;
  return ops;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXcd embed(const Eigen::Matrix2cd& op, int site, int n_spins) {
  if (n_spins < 1 || n_spins > kMaxSpins)
    throw ParameterError("embed: n_spins must be in [1, " + std::to_string(kMaxSpins) + "]");
  if (site < 1 || site > n_spins) throw ParameterError("embed: site out of range");

  const int dim = 1 << n_spins;
  const int bit = spin_bit(site, n_spins);
  const int low_mask = (1 << bit) - 1;

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  // Walk the 2^(N-1) configurations of the other spins and place the 2x2
  // block at the row/column pair that differs only in the target bit.
  for (int rest = 0; rest < dim / 2; ++rest) {
    const int base = ((rest & ~low_mask) << 1) | (rest & low_mask);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) out(base | (r << bit), base | (c << bit)) = op(r, c);
  }
  return out;
}

Eigen::MatrixXcd total_iz(int n_spins) {
  return total_iz_diagonal(n_spins).cast<std::complex<double>>().asDiagonal();
}

Eigen::VectorXd total_iz_diagonal(int n_spins) {
  if (n_spins < 1 || n_spins > kMaxSpins)
    throw ParameterError("total_iz: n_spins must be in [1, " + std::to_string(kMaxSpins) + "]");
  const int dim = 1 << n_spins;
  Eigen::VectorXd diag(dim);
  for (int i = 0; i < dim; ++i)
    diag(i) = 0.5 * (n_spins - 2 * std::popcount(static_cast<unsigned>(i)));
  return diag;
}

}  // namespace adchain
