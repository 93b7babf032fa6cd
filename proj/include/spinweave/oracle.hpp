#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "spinweave/network.hpp"

namespace spinweave {

/// State over the full 2^N computational basis; bit k-1 of a basis index
/// gives the state of site k.
struct FullState {
  int n_sites = 0;
  Eigen::VectorXcd amplitudes;

  /// Amplitude of the Hamming-weight-1 basis state with the excitation
  /// at `site`.
  std::complex<double> weight_one_amplitude(int site) const;
  /// Total probability outside the weight-1 sector.
  double leakage() const;
};

/// Evolves |0...0 1_site 0...0> under the full XY Hamiltonian, assembled
/// directly from bit operations on the 2^N basis (a code path independent
/// of the subspace engine) and applied through a Chebyshev expansion of
/// exp(-iHt). N is capped at 14.
FullState full_space_evolve(const SpinNetwork& net, int init_site, double t);

/// End-site survival amplitude of a 3-site chain with couplings
/// (a: end-middle, b: middle-inner) started at the end:
/// c_end(t) = (b^2 + a^2 cos wt)/w^2, w = sqrt(a^2+b^2). Real-valued.
double analytic_three_site(double a, double b, double t);

/// 2-site chain with coupling a started at the end:
/// (c_end, c_neighbor) = (cos at, -i sin at).
std::pair<std::complex<double>, std::complex<double>> analytic_two_site(double a, double t);

struct CrossCheckRow {
  std::string name;
  int n_sites = 0;
  double max_amplitude_deviation = 0.0;
  double max_leakage = 0.0;
};

struct CrossCheckReport {
  std::vector<CrossCheckRow> rows;
  double max_amplitude_deviation = 0.0;
  double max_leakage = 0.0;
};

/// Compares subspace propagation against the full-space engine on a
/// built-in family of networks with N <= max_n, at 20 deterministic
/// pseudo-random times per network and initial site.
CrossCheckReport cross_check(int max_n = 10);

}  // namespace spinweave
