#include "adchain/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "adchain/errors.hpp"
#include "adchain/spin_algebra.hpp"

namespace adchain {

namespace {

// sigma_y x sigma_y in the |uu>, |ud>, |du>, |dd> basis.
const Eigen::Matrix4cd kFlip = [] {
  Eigen::Matrix4cd f = Eigen::Matrix4cd::Zero();
  f(0, 3) = -1.0;
  f(1, 2) = 1.0;
  f(2, 1) = 1.0;
  f(3, 0) = -1.0;
  return f;
}();

constexpr double kEigTolerance = 1e-9;

}  // namespace

SpinPair::SpinPair(int m_, int n_) : m(m_), n(n_) {
  if (m < 1 || n <= m) throw ParameterError("SpinPair: need 1 <= m < n");
}

ReducedDensity reduce_from_weights(const Eigen::MatrixXcd& eigenvectors,
                                   const Eigen::VectorXd& weights, SpinPair pair,
                                   int n_spins) {
  if (pair.n > n_spins) throw ParameterError("reduce: pair exceeds chain length");
  const int dim = 1 << n_spins;
  if (eigenvectors.rows() != dim || weights.size() != eigenvectors.cols())
    throw ParameterError("reduce: inconsistent eigenvector/weight dimensions");

  const int bm = spin_bit(pair.m, n_spins);
  const int bn = spin_bit(pair.n, n_spins);

  // Scatter the 2^(N-2) spectator configurations around the pair bits once;
  // full indices are then rest_base | offset[a].
  const int rest_dim = dim / 4;
  std::vector<int> rest_base(rest_dim);
  for (int rest = 0; rest < rest_dim; ++rest) {
    int idx = 0;
    int src = 0;
    for (int bit = 0; bit < n_spins; ++bit) {
      if (bit == bm || bit == bn) continue;
      idx |= ((rest >> src) & 1) << bit;
      ++src;
    }
    rest_base[rest] = idx;
  }
  // Pair state a = 2*s_m + s_n with the down bit set at the matching position.
  const std::array<int, 4> offset = {0, 1 << bn, 1 << bm, (1 << bm) | (1 << bn)};

  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  std::array<std::complex<double>, 4> amp;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    const double w = weights(i);
    if (w == 0.0) continue;
    const auto col = eigenvectors.col(i);
    for (int rest = 0; rest < rest_dim; ++rest) {
      const int base = rest_base[rest];
      for (int a = 0; a < 4; ++a) amp[a] = col(base | offset[a]);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) rho(a, b) += w * amp[a] * std::conj(amp[b]);
    }
  }
  return ReducedDensity{pair, rho};
}

ReducedDensity reduce(const Spectrum& spec, double beta, SpinPair pair) {
  return reduce_from_weights(spec.eigenvectors, gibbs_weights(spec, beta), pair,
                             spec.n_spins());
}

Eigen::Matrix4cd spin_flip(const ReducedDensity& rho) {
  return kFlip * rho.rho.conjugate() * kFlip;
}

// Diagonal similarity scaling (Parlett-Reinsch, power-of-two factors so the
// transform is exact). R = rho * rho_tilde is badly scaled whenever rho is
// close to pure, and its small eigenvalues are then ill conditioned under
// the unbalanced Schur iteration Eigen uses; LAPACK would balance internally,
// Eigen does not, and without this step the concurrence loses half its digits
// on cold thermal states.
static void balance(Eigen::Matrix4cd& a) {
  bool again = true;
  while (again) {
    again = false;
    for (int i = 0; i < 4; ++i) {
      double c = 0.0, r = 0.0;
      for (int j = 0; j < 4; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      while (c < r / 2.0) { c *= 2.0; r /= 2.0; f *= 2.0; }
      while (c >= r * 2.0) { c /= 2.0; r *= 2.0; f /= 2.0; }
      // Only keep scalings that shrink the combined norm, otherwise the
      // sweep can cycle.
      if (f != 1.0 && c + r < 0.95 * s) {
        again = true;
        a.col(i) *= f;
        a.row(i) /= f;
      }
    }
  }
}

ConcurrenceResult concurrence(const ReducedDensity& rho) {
  Eigen::Matrix4cd r = rho.rho * spin_flip(rho);
  const double r_norm = r.norm();
  balance(r);
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(r, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw NumericError("concurrence: 4x4 eigenvalue computation failed");

  // R is often rank deficient (exactly so for pure states); its zero
  // eigenvalues come back as solver noise that the square root would blow up
  // from 1e-15 to 1e-8, so anything below the noise floor is an exact zero.
  // Sampling Haar-random pure states puts the observed noise at up to about
  // 274 eps |R|, hence the 1024 eps gate with margin. Genuine eigenvalues
  // this small are unresolvable by any double precision eigensolve anyway.
  const double zero_clamp = 1024.0 * std::numeric_limits<double>::epsilon() * r_norm;

  ConcurrenceResult out;
  for (int k = 0; k < 4; ++k) {
    const std::complex<double> ev = solver.eigenvalues()(k);
    if (std::abs(ev.imag()) > kEigTolerance)
      throw NumericError("concurrence: R eigenvalue has imaginary part " +
                         std::to_string(ev.imag()));
    double re = ev.real();
    if (re < -kEigTolerance)
      throw NumericError("concurrence: R eigenvalue is negative: " + std::to_string(re));
    if (re < zero_clamp) re = 0.0;
    out.lambdas[k] = std::sqrt(re);
  }
  std::sort(out.lambdas.begin(), out.lambdas.end(), std::greater<>());
  out.q = out.lambdas[0] - out.lambdas[1] - out.lambdas[2] - out.lambdas[3];
  out.value = std::max(out.q, 0.0);
  return out;
}

double concurrence_xstate_oracle(const ReducedDensity& rho) {
  const Eigen::Matrix4cd& r = rho.rho;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if (a == b || a + b == 3) continue;
      if (std::abs(r(a, b)) > 1e-12)
        throw ParameterError("concurrence_xstate_oracle: matrix is not X-structured");
    }
  const double inner = std::abs(r(0, 3)) - std::sqrt(std::abs(r(1, 1)) * std::abs(r(2, 2)));
  const double outer = std::abs(r(1, 2)) - std::sqrt(std::abs(r(0, 0)) * std::abs(r(3, 3)));
  return 2.0 * std::max({0.0, inner, outer});
}

double thermal_concurrence(const ChainGeometry& geometry, double omega0, double beta,
                           SpinPair pair) {
  const Spectrum spec = diagonalize(build_h(geometry, FieldSpec(omega0)));
  return concurrence(reduce(spec, beta, pair)).value;
}

std::vector<BoundaryPoint> phase_boundary(const ChainGeometry& geometry, SpinPair pair,
                                          std::span<const double> omega0_grid,
                                          double beta_max) {
  if (pair.n > geometry.n_spins) throw ParameterError("phase_boundary: pair exceeds chain");
  if (!(beta_max > 0.0)) throw ParameterError("phase_boundary: beta_max must be positive");
  for (double w : omega0_grid)
    if (!(w > 0.0)) throw ParameterError("phase_boundary: grid must be positive");

  constexpr double kCoarseStep = 0.05;
  constexpr double kBetaResolution = 1e-6;

  std::vector<BoundaryPoint> out;
  out.reserve(omega0_grid.size());
  for (double omega0 : omega0_grid) {
    const Spectrum spec = diagonalize(build_h(geometry, FieldSpec(omega0)));
    const auto q_of = [&](double beta) {
      return concurrence(reduce(spec, beta, pair)).q;
    };

    // March up in beta until q changes sign, then bisect the bracket. The
    // fully mixed state has q = -1/2, so the scan always starts negative.
    std::optional<double> star;
    double lo = 0.0;
    double q_lo = q_of(lo);
    for (double hi = kCoarseStep; hi <= beta_max + 0.5 * kCoarseStep; hi += kCoarseStep) {
      const double beta_hi = std::min(hi, beta_max);
      const double q_hi = q_of(beta_hi);
      if (q_lo <= 0.0 && q_hi > 0.0) {
        double a = lo, b = beta_hi;
        while (b - a > kBetaResolution) {
          const double mid = 0.5 * (a + b);
          (q_of(mid) > 0.0 ? b : a) = mid;
        }
        star = 0.5 * (a + b);
        break;
      }
      lo = beta_hi;
      q_lo = q_hi;
    }
    out.push_back(BoundaryPoint{omega0, star});
  }
  return out;
}

}  // namespace adchain
