#ifndef ADCHAIN_SPIN_ALGEBRA_HPP
#define ADCHAIN_SPIN_ALGEBRA_HPP

#include <Eigen/Dense>

namespace adchain {

// Basis convention (normative for the whole library):
//
//   * The N-spin product basis is indexed by i in [0, 2^N).
//   * Spin k (1-indexed, k = 1..N) maps to bit (N - k) of i, so spin 1 is the
//     most significant bit and spin N the least significant one.
//   * Bit value 0 means spin up (I^z eigenvalue +1/2), bit value 1 spin down
//     (-1/2). Hence index 0 is |up,up,...,up>.
//
// Two-spin reduced bases inherit the same rule: for a pair (m, n) with m < n
// the states are ordered |uu>, |ud>, |du>, |dd> with spin m on the high bit.

inline constexpr int kMaxSpins = 10;

// Bit position of spin `site` (1-indexed) in a basis index.
inline int spin_bit(int site, int n_spins) { return n_spins - site; }

struct SingleSpinOps {
  Eigen::Matrix2cd iz;      // diag(+1/2, -1/2)
  Eigen::Matrix2cd iplus;   // |up><down|
  Eigen::Matrix2cd iminus;  // |down><up|
};

SingleSpinOps single_spin_ops();

// Kronecker product, left factor on the high bits.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Lift a single-spin operator to the N-spin space:
// Id x ... x op (slot `site`) x ... x Id. Throws ParameterError when `site`
// or `n_spins` is out of range.
Eigen::MatrixXcd embed(const Eigen::Matrix2cd& op, int site, int n_spins);

// Sum of I_k^z over all sites; diagonal in the product basis.
Eigen::MatrixXcd total_iz(int n_spins);

// Diagonal of total_iz: entry i equals (N - 2*popcount(i)) / 2.
Eigen::VectorXd total_iz_diagonal(int n_spins);

}  // namespace adchain

#endif
