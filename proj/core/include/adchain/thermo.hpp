#ifndef ADCHAIN_THERMO_HPP
#define ADCHAIN_THERMO_HPP

#include <Eigen/Dense>

namespace adchain {

// Supported inverse-temperature domain, beta = D12 / (kB * T) dimensionless.
inline constexpr double kBetaMax = 1e6;

// Eigendecomposition of a Hamiltonian at one field point. All thermodynamic
// quantities are analytic in these eigenvalues, so one Spectrum serves every
// beta query at that field.
struct Spectrum {
  Eigen::VectorXd eigenvalues;    // ascending, units of D12
  Eigen::MatrixXcd eigenvectors;  // orthonormal columns, same ordering

  int dim() const { return static_cast<int>(eigenvalues.size()); }
  int n_spins() const;
};

// Dense Hermitian eigensolve. Throws ParameterError for non-Hermitian input
// (checked to 1e-10 relative) and NumericError when the solver fails.
Spectrum diagonalize(const Eigen::MatrixXcd& h);

// ln Z with the ground-state shift: -beta*l0 + ln sum_i exp(-beta*(l_i - l0)).
double log_partition(const Spectrum& spec, double beta);

// Gibbs weights w_i = exp(-beta*(l_i - l0)) / sum_j exp(-beta*(l_j - l0)).
Eigen::VectorXd gibbs_weights(const Spectrum& spec, double beta);

// Entropy S/kB = ln Z + beta * <e>; decreasing in beta, N ln 2 at beta = 0.
double entropy(const Spectrum& spec, double beta);

// Heat capacity C/kB = beta^2 * Var(e) over the Gibbs distribution.
double heat_capacity(const Spectrum& spec, double beta);

struct Magnetization {
  double mean_iz;       // <sum_k I_k^z>, dimensionless
  double polarization;  // -2 <sum_k I_k^z> / N, in [-1, 1]
};

// Gibbs expectation of the total I^z; the field derivative of the partition
// function reduces to it by trace cyclicity, so this is the magnetization up
// to the gyromagnetic factor.
Magnetization magnetization(const Spectrum& spec, double beta);

// Spin temperature in kelvin for a dipolar constant given as a cyclic
// frequency: T = h_Planck * d12_hz / (kB * beta).
double kelvin_from_beta(double d12_hz, double beta);

}  // namespace adchain

#endif
