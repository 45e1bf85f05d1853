#include "adchain/hamiltonian.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "adchain/errors.hpp"

namespace adchain {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// +1/2 for spin up (bit 0), -1/2 for spin down (bit 1).
double zval(int state, int bit) { return (state >> bit) & 1 ? -0.5 : 0.5; }

}  // namespace

ChainGeometry::ChainGeometry(int n_spins_, double theta_, double phi_)
    : n_spins(n_spins_), theta(theta_), phi(phi_) {
  if (n_spins < 2 || n_spins > kMaxSpins)
    throw ParameterError("ChainGeometry: n_spins must be in [2, " + std::to_string(kMaxSpins) +
                         "]");
  if (!(theta >= 0.0 && theta <= std::numbers::pi))
    throw ParameterError("ChainGeometry: theta must be in [0, pi]");
  if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi))
    throw ParameterError("ChainGeometry: phi must be in [0, 2*pi)");
}

double ChainGeometry::coupling(int j, int k) const {
  if (j < 1 || j > n_spins || k < 1 || k > n_spins || j == k)
    throw ParameterError("ChainGeometry::coupling: invalid site pair");
  const double d = std::abs(j - k);
  return 1.0 / (d * d * d);
}

FieldSpec::FieldSpec(double omega0_) : omega0(omega0_) {
  if (!(omega0 >= 0.0)) throw ParameterError("FieldSpec: omega0 must be >= 0");
}

Eigen::MatrixXcd build_hz(const ChainGeometry& geometry, const FieldSpec& field) {
  return (field.omega0 * total_iz_diagonal(geometry.n_spins))
      .cast<std::complex<double>>()
      .asDiagonal();
}

Eigen::MatrixXcd build_hdd(const ChainGeometry& geometry) {
  const int n = geometry.n_spins;
  const int dim = 1 << n;
  const double ct = std::cos(geometry.theta);
  const double st = std::sin(geometry.theta);

  // Family prefactors, common to every pair.
  const double a = 1.0 - 3.0 * ct * ct;              // secular
  const double b1 = -0.75 * std::sin(2.0 * geometry.theta);  // single flip
  const double b2 = -0.75 * st * st;                 // double flip
  const std::complex<double> em1 = std::exp(-kI * geometry.phi);
  const std::complex<double> em2 = std::exp(-2.0 * kI * geometry.phi);

  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);

  for (int j = 1; j < n; ++j) {
    for (int k = j + 1; k <= n; ++k) {
      const double b = geometry.coupling(j, k);
      const int bj = spin_bit(j, n);
      const int bk = spin_bit(k, n);
      for (int s = 0; s < dim; ++s) {
        const bool dj = (s >> bj) & 1;  // spin j down
        const bool dk = (s >> bk) & 1;  // spin k down
        // Iz Iz
        h(s, s) += b * a * zval(s, bj) * zval(s, bk);
        // flip-flop -(a/4)(I+I- + I-I+)
        if (dj != dk) h(s ^ (1 << bj) ^ (1 << bk), s) += -0.25 * b * a;
        // single-flip family; e^{-i phi} with a raising, e^{+i phi} with a
        // lowering operator, the spectator spin contributing its Iz value
        if (dk) h(s ^ (1 << bk), s) += b * b1 * em1 * zval(s, bj);          // Iz_j I+_k
        else    h(s ^ (1 << bk), s) += b * b1 * std::conj(em1) * zval(s, bj);  // Iz_j I-_k
        if (dj) h(s ^ (1 << bj), s) += b * b1 * em1 * zval(s, bk);          // I+_j Iz_k
        else    h(s ^ (1 << bj), s) += b * b1 * std::conj(em1) * zval(s, bk);  // I-_j Iz_k
        // double-flip family
        if (dj && dk) h(s ^ (1 << bj) ^ (1 << bk), s) += b * b2 * em2;             // I+_j I+_k
        if (!dj && !dk) h(s ^ (1 << bj) ^ (1 << bk), s) += b * b2 * std::conj(em2);  // I-_j I-_k
      }
    }
  }
  return h;
}

Eigen::MatrixXcd build_h(const ChainGeometry& geometry, const FieldSpec& field) {
  Eigen::MatrixXcd h = build_hdd(geometry);
  h.diagonal() += (field.omega0 * total_iz_diagonal(geometry.n_spins))
                      .cast<std::complex<double>>();
  return h;
}

double local_field_of(const Eigen::MatrixXcd& hdd, int n_spins) {
  const double tr_hdd2 = hdd.squaredNorm();  // Tr(H^2) for Hermitian H
  const double tr_iz2 = total_iz_diagonal(n_spins).squaredNorm();
  return std::sqrt(tr_hdd2 / tr_iz2);
}

double local_field(const ChainGeometry& geometry) {
  return local_field_of(build_hdd(geometry), geometry.n_spins);
}

double adiabaticity_margin(double sweep_rate, double gamma, double h_loc_physical) {
  if (!(sweep_rate > 0.0) || !(gamma > 0.0) || !(h_loc_physical > 0.0))
    throw ParameterError("adiabaticity_margin: all inputs must be positive");
  return sweep_rate / (gamma * h_loc_physical * h_loc_physical);
}

}  // namespace adchain
