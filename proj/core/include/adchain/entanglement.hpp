#ifndef ADCHAIN_ENTANGLEMENT_HPP
#define ADCHAIN_ENTANGLEMENT_HPP

#include <array>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "adchain/hamiltonian.hpp"
#include "adchain/thermo.hpp"

namespace adchain {

// Ordered spin pair, 1-indexed, m < n. In the reduced 4x4 basis spin m sits
// on the high bit (states |uu>, |ud>, |du>, |dd>).
struct SpinPair {
  SpinPair(int m, int n);

  int m;
  int n;
};

struct ReducedDensity {
  SpinPair pair;
  Eigen::Matrix4cd rho;  // Hermitian, trace 1, PSD up to numerical noise
};

// Two-spin reduced density matrix of the Gibbs state, accumulated directly
// from eigenvectors without materializing the full 2^N x 2^N density matrix.
ReducedDensity reduce(const Spectrum& spec, double beta, SpinPair pair);

// Same contraction for caller-supplied weights (must be non-negative and
// sum to 1); `reduce` is this with Gibbs weights.
ReducedDensity reduce_from_weights(const Eigen::MatrixXcd& eigenvectors,
                                   const Eigen::VectorXd& weights, SpinPair pair,
                                   int n_spins);

// Spin-flipped conjugate (sy x sy) conj(rho) (sy x sy).
Eigen::Matrix4cd spin_flip(const ReducedDensity& rho);

struct ConcurrenceResult {
  double value;                    // max(q, 0), in [0, 1]
  double q;                        // l1 - l2 - l3 - l4 before clamping
  std::array<double, 4> lambdas;   // sqrt of R eigenvalues, descending
};

// Wootters concurrence from the non-Hermitian product
// R = rho (sy x sy) conj(rho) (sy x sy), solved with a general complex 4x4
// eigenvalue routine. Eigenvalues with |Im| > 1e-9 or real part < -1e-9
// signal an invalid density matrix and raise NumericError; small negative
// real parts are clamped to zero before the square root.
ConcurrenceResult concurrence(const ReducedDensity& rho);

// Closed-form concurrence for X-structured states (nonzero entries only on
// the diagonal and anti-diagonal): 2*max(0, |r14| - sqrt(r22 r33),
// |r23| - sqrt(r11 r44)). Throws ParameterError when the off-X entries
// exceed 1e-12. Kept as an independent cross-check of `concurrence`.
double concurrence_xstate_oracle(const ReducedDensity& rho);

// Concurrence of the thermal state at one (omega0, beta) point.
double thermal_concurrence(const ChainGeometry& geometry, double omega0, double beta,
                           SpinPair pair);

struct BoundaryPoint {
  double omega0;
  std::optional<double> beta_star;  // empty where no entanglement below beta_max
};

// For each field value, the smallest beta where the pair concurrence turns
// positive: coarse scan in beta followed by bisection on the sign of q to
// |dbeta| <= 1e-6. Absence below beta_max is reported, not an error.
std::vector<BoundaryPoint> phase_boundary(const ChainGeometry& geometry, SpinPair pair,
                                          std::span<const double> omega0_grid,
                                          double beta_max = 100.0);

}  // namespace adchain

#endif
