#ifndef ADCHAIN_HAMILTONIAN_HPP
#define ADCHAIN_HAMILTONIAN_HPP

#include <Eigen/Dense>

#include "adchain/spin_algebra.hpp"

namespace adchain {

// Linear, equally spaced chain of N dipolar-coupled spins 1/2 in a field
// tilted by the polar angle theta and azimuth phi relative to the chain axis.
// Every pair shares the same angles; couplings fall off as 1/|j-k|^3 and are
// expressed in units of the nearest-neighbour constant D12, as is every
// energy produced by this module.
struct ChainGeometry {
  ChainGeometry(int n_spins, double theta, double phi);

  // Dimensionless coupling b_jk = 1/|j-k|^3 for 1-indexed sites j != k.
  double coupling(int j, int k) const;

  int n_spins;
  double theta;  // radians, in [0, pi]
  double phi;    // radians, in [0, 2*pi)
};

struct FieldSpec {
  explicit FieldSpec(double omega0);

  double omega0;  // Zeeman splitting in units of D12, >= 0
};

// Zeeman term omega0 * sum_k I_k^z; diagonal, traceless.
Eigen::MatrixXcd build_hz(const ChainGeometry& geometry, const FieldSpec& field);

// Full untruncated dipolar interaction: for every pair j < k the secular
// family (1-3cos^2 theta)[IzIz - (I+I- + I-I+)/4], the single-flip family
// -(3/4) sin(2 theta) [e^{-i phi}(IzI+ + I+Iz) + h.c.] and the double-flip
// family -(3/4) sin^2(theta) [e^{-2i phi} I+I+ + h.c.], weighted by b_jk.
Eigen::MatrixXcd build_hdd(const ChainGeometry& geometry);

// Total Hamiltonian, Zeeman plus dipolar.
Eigen::MatrixXcd build_h(const ChainGeometry& geometry, const FieldSpec& field);

// Local dipolar field sqrt(Tr(Hdd^2) / Tr((sum I^z)^2)) in units of D12.
double local_field(const ChainGeometry& geometry);

// Same trace ratio evaluated on a caller-supplied dipolar matrix.
double local_field_of(const Eigen::MatrixXcd& hdd, int n_spins);

// Ratio sweep_rate / (gamma * h_loc^2) of the adiabaticity condition
// dH0/dt << gamma * H_loc^2; values much below 1 indicate an adiabatic sweep.
// Inputs carry physical units (field-units/s, rad/(s*field-unit), field-units).
double adiabaticity_margin(double sweep_rate, double gamma, double h_loc_physical);

}  // namespace adchain

#endif
