#include "spinweave/observables.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

namespace spinweave {

namespace {

using Complex = std::complex<double>;

/// sigma_y (x) sigma_y in the |00>,|01>,|10>,|11> basis: the real
/// antidiagonal (-1, 1, 1, -1).
Eigen::Matrix4cd spin_flip_kernel() {
  Eigen::Matrix4cd y = Eigen::Matrix4cd::Zero();
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  return y;
}

void validate_density(const TwoSiteDensity& rho) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidArgument("density matrix is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-12 || std::abs(rho.trace().imag()) > 1e-12)
    throw InvalidArgument("density matrix trace is not 1");
}

}  // namespace

TargetState make_w_target(std::span<const int> ends,
                          std::span<const std::complex<double>> weights) {
  if (ends.size() != weights.size() || ends.empty())
    throw InvalidArgument("target needs matching site and weight lists");
  double norm2 = 0.0;
  for (const Complex& w : weights) norm2 += std::norm(w);
  if (std::abs(norm2 - 1.0) > 1e-12)
    throw InvalidArgument("target weights are not normalized");
  TargetState target;
  for (std::size_t i = 0; i < ends.size(); ++i) {
    if (ends[i] < 1) throw InvalidArgument("target site out of range");
    for (std::size_t k = 0; k < i; ++k)
      if (ends[k] == ends[i]) throw InvalidArgument("duplicate target site");
    target.amplitudes.emplace_back(ends[i], weights[i]);
  }
  return target;
}

namespace {

TargetState pair_target(const SpinNetwork& net, double sign) {
  const auto& ends = net.branch_ends();
  if (ends.size() != 2)
    throw InvalidArgument("plus/minus targets need exactly two branch ends");
  const double w = 1.0 / std::sqrt(2.0);
  TargetState target;
  target.amplitudes.emplace_back(ends[0], Complex(w, 0.0));
  target.amplitudes.emplace_back(ends[1], Complex(sign * w, 0.0));
  return target;
}

}  // namespace

TargetState plus_target(const SpinNetwork& net) { return pair_target(net, 1.0); }
TargetState minus_target(const SpinNetwork& net) { return pair_target(net, -1.0); }

SubspaceState target_to_state(const TargetState& target, int n) {
  SubspaceState c = SubspaceState::Zero(n);
  for (const auto& [site, amp] : target.amplitudes) {
    if (site < 1 || site > n) throw InvalidArgument("target site out of range");
    c[site - 1] = amp;
  }
  return c;
}

Eigen::VectorXd site_probabilities(const SubspaceState& state) {
  return state.cwiseAbs2();
}

double fidelity(const SubspaceState& state, const TargetState& target) {
  Complex overlap = 0.0;
  for (const auto& [site, amp] : target.amplitudes) {
    if (site < 1 || site > state.size())
      throw InvalidArgument("target site out of range");
    overlap += std::conj(amp) * state[site - 1];
  }
  return std::norm(overlap);
}

double fidelity(const SubspaceState& state, const SubspaceState& target) {
  if (state.size() != target.size()) throw InvalidArgument("dimension mismatch");
  return std::norm(target.dot(state));
}

TwoSiteDensity reduced_two_site_density(const SubspaceState& state, int a, int b) {
  if (a == b) throw InvalidArgument("need two distinct sites");
  if (a < 1 || a > state.size() || b < 1 || b > state.size())
    throw InvalidArgument("site out of range");
  const Complex ca = state[a - 1];
  const Complex cb = state[b - 1];
  const double p_rest = std::max(0.0, 1.0 - std::norm(ca) - std::norm(cb));
  TwoSiteDensity rho = TwoSiteDensity::Zero();
  rho(0, 0) = p_rest;
  rho(1, 1) = std::norm(cb);
  rho(2, 2) = std::norm(ca);
  rho(1, 2) = cb * std::conj(ca);
  rho(2, 1) = ca * std::conj(cb);
  return rho;
}

double concurrence(const TwoSiteDensity& rho) {
  validate_density(rho);

  // Spectral factor rho = L L^dagger with eigenvalues at the rounding
  // floor truncated to exact zeros; the Wootters lambdas are then the
  // singular values of the symmetric matrix L^T (sy x sy) L, which keeps
  // the small lambdas at absolute machine accuracy instead of the
  // sqrt-amplified error of eigenvalues of rho rho~.
  Eigen::SelfAdjointEigenSolver<TwoSiteDensity> solver(rho);
  if (solver.info() != Eigen::Success)
    throw NumericalError("density eigendecomposition failed");
  constexpr double kRankTol = 1e-13;
  std::vector<int> kept;
  for (int i = 0; i < 4; ++i) {
    const double p = solver.eigenvalues()[i];
    if (p < -1e-10) throw NumericalError("density matrix has a negative eigenvalue");
    if (p > kRankTol) kept.push_back(i);
  }
  if (kept.empty()) return 0.0;

  Eigen::MatrixXcd factor(4, static_cast<int>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c)
    factor.col(static_cast<int>(c)) =
        std::sqrt(solver.eigenvalues()[kept[c]]) * solver.eigenvectors().col(kept[c]);

  const Eigen::MatrixXcd b = factor.transpose() * spin_flip_kernel() * factor;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b);
  double lambdas[4] = {0.0, 0.0, 0.0, 0.0};
  for (int i = 0; i < svd.singularValues().size() && i < 4; ++i)
    lambdas[i] = svd.singularValues()[i];
  std::sort(lambdas, lambdas + 4, std::greater<double>());
  return std::max(lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3], 0.0);
}

double tangle(const TwoSiteDensity& rho) {
  const double c = concurrence(rho);
  return c * c;
}

double eof_from_tangle(double tau) {
  if (tau < -1e-12 || tau > 1.0 + 1e-12)
    throw InvalidArgument("tangle must lie in [0, 1]");
  tau = std::clamp(tau, 0.0, 1.0);
  const double x = 0.5 * (1.0 + std::sqrt(1.0 - tau));
  if (x <= 0.0 || x >= 1.0) return 0.0;  // h(0) = h(1) = 0 by continuity
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double eof(const TwoSiteDensity& rho) { return eof_from_tangle(tangle(rho)); }

std::vector<Peak> detect_revivals(std::span<const double> times,
                                  std::span<const double> values, double threshold) {
  if (times.size() != values.size()) throw InvalidArgument("sample size mismatch");
  if (times.size() < 3) throw InvalidArgument("need at least 3 samples");
  if (!(threshold > 0.0 && threshold <= 1.0))
    throw InvalidArgument("threshold must lie in (0, 1]");

  std::vector<Peak> peaks;
  const std::size_t n = times.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (values[i] < threshold) continue;
    if (!(values[i] > values[i - 1] && values[i] > values[i + 1])) continue;

    const double left = values[i - 1];
    const double mid = values[i];
    const double right = values[i + 1];
    const double denom = left - 2.0 * mid + right;
    const double half_step = 0.5 * (times[i + 1] - times[i - 1]);
    double offset = 0.0;
    if (denom < -std::numeric_limits<double>::min())
      offset = 0.5 * (left - right) / denom;

    Peak peak;
    peak.time = times[i] + offset * half_step;
    peak.value = mid - 0.25 * (left - right) * offset;

    // Half-maximum crossings by linear interpolation on each side.
    const double half = 0.5 * peak.value;
    double t_left = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t j = i; j-- > 0;) {
      if (values[j] <= half) {
        const double frac = (half - values[j]) / (values[j + 1] - values[j]);
        t_left = times[j] + frac * (times[j + 1] - times[j]);
        break;
      }
    }
    double t_right = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t j = i + 1; j < n; ++j) {
      if (values[j] <= half) {
        const double frac = (values[j - 1] - half) / (values[j - 1] - values[j]);
        t_right = times[j - 1] + frac * (times[j] - times[j - 1]);
        break;
      }
    }
    peak.fwhm = t_right - t_left;  // NaN propagates when a side is missing
    peaks.push_back(peak);
  }
  return peaks;
}

}  // namespace spinweave
