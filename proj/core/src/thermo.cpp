#include "adchain/thermo.hpp"

#include <bit>
#include <cmath>
#include <vector>

#include "adchain/errors.hpp"
#include "adchain/spin_algebra.hpp"

#ifdef ADCHAIN_USE_LAPACKE
#include <lapacke.h>
#endif

namespace adchain {

namespace {

// 2019 SI exact values.
constexpr double kPlanck = 6.62607015e-34;     // J s
constexpr double kBoltzmann = 1.380649e-23;    // J / K

void check_beta(double beta) {
  if (!(beta >= 0.0) || beta > kBetaMax)
    throw ParameterError("beta must lie in [0, " + std::to_string(kBetaMax) + "]");
}

// Boltzmann factors relative to the ground state; the shift keeps every
// exponent non-positive so nothing overflows for any beta in the domain.
// Scalar std::exp on purpose: Eigen's vectorized exp saturates around
// exp(-709.8) instead of underflowing to zero, which would lend a frozen
// state a phantom beta-linear entropy of order 1e-300 where the true value
// is exactly 0.0, and the isentrope bracket keys off that distinction.
Eigen::VectorXd shifted_boltzmann(const Spectrum& spec, double beta) {
  const double lmin = spec.eigenvalues(0);
  Eigen::VectorXd w(spec.eigenvalues.size());
  for (Eigen::Index i = 0; i < w.size(); ++i)
    w(i) = std::exp(-beta * (spec.eigenvalues(i) - lmin));
  return w;
}

}  // namespace

int Spectrum::n_spins() const {
  const auto d = static_cast<unsigned>(dim());
  return std::countr_zero(d);
}

Spectrum diagonalize(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols()) throw ParameterError("diagonalize: matrix must be square");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (!h.allFinite()) throw NumericError("diagonalize: non-finite matrix entries");
  const double herm_defect = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (herm_defect > 1e-10 * scale)
    throw ParameterError("diagonalize: input is not Hermitian (defect " +
                         std::to_string(herm_defect) + ")");

  Spectrum spec;
#ifdef ADCHAIN_USE_LAPACKE
  {
    const auto n = static_cast<lapack_int>(h.rows());
    Eigen::MatrixXcd vecs = h;  // overwritten with eigenvectors, column-major
    Eigen::VectorXd vals(n);
    const lapack_int info = LAPACKE_zheevd(
        LAPACK_COL_MAJOR, 'V', 'L', n,
        reinterpret_cast<lapack_complex_double*>(vecs.data()), n, vals.data());
    if (info == 0) {
      spec.eigenvalues = std::move(vals);
      spec.eigenvectors = std::move(vecs);
      return spec;
    }
    // fall through to the Eigen solver on breakdown
  }
#endif
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success)
    throw NumericError("diagonalize: eigensolver failed to converge for dim " +
                       std::to_string(h.rows()));
  spec.eigenvalues = solver.eigenvalues();
  spec.eigenvectors = solver.eigenvectors();
  return spec;
}

double log_partition(const Spectrum& spec, double beta) {
  check_beta(beta);
  if (!spec.eigenvalues.allFinite())
    throw NumericError("log_partition: non-finite eigenvalues");
  const double lmin = spec.eigenvalues(0);
  return -beta * lmin + std::log(shifted_boltzmann(spec, beta).sum());
}

Eigen::VectorXd gibbs_weights(const Spectrum& spec, double beta) {
  check_beta(beta);
  Eigen::VectorXd w = shifted_boltzmann(spec, beta);
  return w / w.sum();
}

double entropy(const Spectrum& spec, double beta) {
  // ln Z_shifted + beta <E - E0>, not ln Z + beta <E>: the two are equal,
  // but the second cancels beta*E0 between its terms and rounds the entropy
  // of a cold state to zero ulps of beta*|E0|. The shifted form keeps both
  // terms non-negative, so S ~ 1e-33 near a ground-state isentrope survives.
  const Eigen::VectorXd w = gibbs_weights(spec, beta);
  const double mean_shifted =
      w.dot((spec.eigenvalues.array() - spec.eigenvalues(0)).matrix());
  return std::log(shifted_boltzmann(spec, beta).sum()) + beta * mean_shifted;
}

double heat_capacity(const Spectrum& spec, double beta) {
  const Eigen::VectorXd w = gibbs_weights(spec, beta);
  const double mean_e = w.dot(spec.eigenvalues);
  const Eigen::ArrayXd centered = spec.eigenvalues.array() - mean_e;
  const double var = (w.array() * centered.square()).sum();
  return beta * beta * var;
}

Magnetization magnetization(const Spectrum& spec, double beta) {
  const Eigen::VectorXd w = gibbs_weights(spec, beta);
  const Eigen::VectorXd iz = total_iz_diagonal(spec.n_spins());
  // <v_i| Iz |v_i> needs only the diagonal of Iz in the product basis.
  const Eigen::VectorXd per_state = spec.eigenvectors.cwiseAbs2().transpose() * iz;
  Magnetization m;
  m.mean_iz = w.dot(per_state);
  m.polarization = -2.0 * m.mean_iz / spec.n_spins();
  return m;
}

double kelvin_from_beta(double d12_hz, double beta) {
  if (!(d12_hz > 0.0) || !(beta > 0.0))
    throw ParameterError("kelvin_from_beta: inputs must be positive");
  return kPlanck * d12_hz / (kBoltzmann * beta);
}

}  // namespace adchain
