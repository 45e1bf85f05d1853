#ifndef ADCHAIN_ISENTROPE_HPP
#define ADCHAIN_ISENTROPE_HPP

#include <optional>
#include <span>
#include <vector>

#include "adchain/entanglement.hpp"
#include "adchain/hamiltonian.hpp"
#include "adchain/thermo.hpp"

namespace adchain {

enum class GridSpacing { linear, logarithmic };

// Demagnetization schedule: a strictly descending field grid starting at or
// below the initial field. Linear grids may end at zero; logarithmic ones
// must stay positive.
struct ADSchedule {
  ADSchedule(double omega0_init, double beta_init, std::vector<double> omega0_grid);

  static ADSchedule make(double omega0_init, double beta_init, double omega0_final,
                         int grid_points, GridSpacing spacing);

  double omega0_init;
  double beta_init;
  std::vector<double> omega0_grid;
};

// One sample along the trajectory. `concurrence` is aligned with the pair
// list handed to run_ad.
struct TrajectoryPoint {
  double omega0;
  double beta;
  double entropy;        // S/kB, equals the initial entropy up to solver tolerance
  double heat_capacity;  // C/kB for the whole chain
  double polarization;   // -2 <sum I^z> / N
  std::vector<double> concurrence;
};

struct Trajectory {
  std::vector<SpinPair> pairs;
  std::vector<TrajectoryPoint> points;
  double s_init;
  // Set when the entropy floor made S = s_init unsolvable at some field;
  // `points` then holds the valid prefix and truncated_at_omega0 the first
  // field value that failed.
  bool truncated = false;
  std::optional<double> truncated_at_omega0;
};

// Inverse temperature with entropy(spec, beta) = s_target. Bracketing from
// [0, 1] with doubling, then bisection with a safeguarded secant step;
// convergence on |dS| <= 1e-13 * N. Throws UnreachableEntropyError above
// N ln 2, EntropyFloorError at or below ln(g0), NumericError when the
// bracket would pass beta = 1e6.
double solve_beta(const Spectrum& spec, double s_target);

// Adiabatic demagnetization: the entropy at (omega0_init, beta_init) is held
// fixed while the field steps down the grid; each point diagonalizes once,
// solves for beta and evaluates heat capacity, polarization and the
// requested pair concurrences.
Trajectory run_ad(const ChainGeometry& geometry, const ADSchedule& schedule,
                  std::span<const SpinPair> pairs);

// High-temperature isentrope beta_in * sqrt((omega_in^2 + h_loc^2) /
// (omega^2 + h_loc^2)); follows from the quadratic expansion of ln Z and
// Tr(Hz Hdd) = 0, which make beta^2 (omega0^2 + h_loc^2) invariant.
double ht_beta(double beta_in, double omega_in, double omega, double h_loc);

// Curie-law leading order beta*omega0/2 of the polarization -2<sum I^z>/N.
double ht_polarization(double beta, double omega0);

}  // namespace adchain

#endif
