#include "adchain/isentrope.hpp"

#include <algorithm>
#include <cmath>

#include "adchain/errors.hpp"

namespace adchain {

namespace {

constexpr double kGroundGapTolerance = 1e-9;

}  // namespace

ADSchedule::ADSchedule(double omega0_init_, double beta_init_, std::vector<double> grid)
    : omega0_init(omega0_init_), beta_init(beta_init_), omega0_grid(std::move(grid)) {
  if (!(omega0_init >= 0.0)) throw ParameterError("ADSchedule: omega0_init must be >= 0");
  if (!(beta_init >= 0.0)) throw ParameterError("ADSchedule: beta_init must be >= 0");
  if (omega0_grid.size() < 2) throw ParameterError("ADSchedule: grid needs at least 2 points");
  if (omega0_grid.front() > omega0_init)
    throw ParameterError("ADSchedule: grid must start at or below omega0_init");
  if (!(omega0_grid.back() >= 0.0)) throw ParameterError("ADSchedule: grid must end >= 0");
  for (std::size_t i = 1; i < omega0_grid.size(); ++i)
    if (!(omega0_grid[i] < omega0_grid[i - 1]))
      throw ParameterError("ADSchedule: grid must be strictly descending");
}

ADSchedule ADSchedule::make(double omega0_init, double beta_init, double omega0_final,
                            int grid_points, GridSpacing spacing) {
  if (grid_points < 2) throw ParameterError("ADSchedule: grid_points must be >= 2");
  if (!(omega0_final < omega0_init))
    throw ParameterError("ADSchedule: omega0_final must be below omega0_init");
  std::vector<double> grid(grid_points);
  if (spacing == GridSpacing::logarithmic) {
    if (!(omega0_final > 0.0) || !(omega0_init > 0.0))
      throw ParameterError("ADSchedule: logarithmic grid requires positive endpoints");
    const double step = std::log(omega0_final / omega0_init) / (grid_points - 1);
    for (int i = 0; i < grid_points; ++i) grid[i] = omega0_init * std::exp(step * i);
  } else {
    const double step = (omega0_final - omega0_init) / (grid_points - 1);
    for (int i = 0; i < grid_points; ++i) grid[i] = omega0_init + step * i;
  }
  grid.front() = omega0_init;
  grid.back() = omega0_final;
  return ADSchedule(omega0_init, beta_init, std::move(grid));
}

double solve_beta(const Spectrum& spec, double s_target) {
  const int dim = spec.dim();
  const int n = spec.n_spins();
  const double s_max = std::log(static_cast<double>(dim));
  if (s_target > s_max)
    throw UnreachableEntropyError("solve_beta: target entropy " + std::to_string(s_target) +
                                  " exceeds N ln 2 = " + std::to_string(s_max));
  if (s_target >= s_max) return 0.0;

  int g0 = 1;
  while (g0 < dim && spec.eigenvalues(g0) - spec.eigenvalues(0) <= kGroundGapTolerance) ++g0;
  const double s_floor = std::log(static_cast<double>(g0));
  // A degenerate floor is approached only asymptotically, so targets at or
  // within noise of it are unsolvable. A unique ground state is different:
  // any non-negative target is reachable within the solver tolerance band.
  if (g0 > 1 ? s_target <= s_floor + 1e-12 : s_target < 0.0)
    throw EntropyFloorError(s_target, s_floor);

  // S(beta) is strictly decreasing wherever the spectrum is non-flat, so a
  // sign change of S - s_target brackets the unique root.
  double lo = 0.0, s_lo = s_max;
  double hi = 1.0, s_hi = entropy(spec, hi);
  while (s_hi >= s_target) {
    lo = hi;
    s_lo = s_hi;
    hi *= 2.0;
    if (hi > kBetaMax)
      throw NumericError("solve_beta: bracket expansion passed beta = " +
                         std::to_string(kBetaMax));
    s_hi = entropy(spec, hi);
  }

  const double tol = 1e-13 * n;
  double best_beta = hi;
  double best_err = std::abs(s_hi - s_target);
  for (int it = 0; it < 240; ++it) {
    // Secant candidate through the bracket endpoints; fall back to the
    // midpoint whenever it degenerates or every third step, which keeps the
    // interval shrinking. Convergence is judged on dS, not on dbeta.
    double cand = 0.5 * (lo + hi);
    if (it % 3 != 2 && s_lo != s_hi) {
      const double secant = lo + (s_lo - s_target) * (hi - lo) / (s_lo - s_hi);
      if (secant > lo && secant < hi) cand = secant;
    }
    const double s_cand = entropy(spec, cand);
    const double err = std::abs(s_cand - s_target);
    if (err < best_err) {
      best_err = err;
      best_beta = cand;
    }
    if (err <= tol) return cand;
    if (s_cand >= s_target) {
      lo = cand;
      s_lo = s_cand;
    } else {
      hi = cand;
      s_hi = s_cand;
    }
    if (hi - lo <= 1e-16 * hi) break;  // interval exhausted at double precision
  }
  if (best_err > 1e-12 * n)
    throw NumericError("solve_beta: entropy residual " + std::to_string(best_err) +
                       " did not reach tolerance");
  return best_beta;
}

Trajectory run_ad(const ChainGeometry& geometry, const ADSchedule& schedule,
                  std::span<const SpinPair> pairs) {
  for (const SpinPair& p : pairs)
    if (p.n > geometry.n_spins) throw ParameterError("run_ad: pair exceeds chain length");

  const Spectrum spec_in = diagonalize(build_h(geometry, FieldSpec(schedule.omega0_init)));
  const double s_in = entropy(spec_in, schedule.beta_init);

  Trajectory traj;
  traj.pairs.assign(pairs.begin(), pairs.end());
  traj.s_init = s_in;
  traj.points.reserve(schedule.omega0_grid.size());

  for (double omega0 : schedule.omega0_grid) {
    const Spectrum spec = diagonalize(build_h(geometry, FieldSpec(omega0)));
    double beta;
    try {
      beta = solve_beta(spec, s_in);
    } catch (const EntropyFloorError&) {
      traj.truncated = true;
      traj.truncated_at_omega0 = omega0;
      break;
    }
    TrajectoryPoint point;
    point.omega0 = omega0;
    point.beta = beta;
    point.entropy = entropy(spec, beta);
    point.heat_capacity = heat_capacity(spec, beta);
    point.polarization = magnetization(spec, beta).polarization;
    if (!pairs.empty()) {
      const Eigen::VectorXd weights = gibbs_weights(spec, beta);
      point.concurrence.reserve(pairs.size());
      for (const SpinPair& p : pairs)
        point.concurrence.push_back(
            concurrence(reduce_from_weights(spec.eigenvectors, weights, p,
                                            geometry.n_spins))
                .value);
    }
    traj.points.push_back(std::move(point));
  }
  return traj;
}

double ht_beta(double beta_in, double omega_in, double omega, double h_loc) {
  if (omega == omega_in) return beta_in;
  return beta_in * std::sqrt((omega_in * omega_in + h_loc * h_loc) /
                             (omega * omega + h_loc * h_loc));
}

double ht_polarization(double beta, double omega0) { return 0.5 * beta * omega0; }

}  // namespace adchain
