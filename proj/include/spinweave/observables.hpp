#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "spinweave/dynamics.hpp"
#include "spinweave/network.hpp"

namespace spinweave {

/// Normalized single-excitation superposition given as (site, amplitude)
/// pairs over a few sites.
struct TargetState {
  std::vector<std::pair<int, std::complex<double>>> amplitudes;
};

/// W-style target over the given branch ends; weights must be normalized.
TargetState make_w_target(std::span<const int> ends,
                          std::span<const std::complex<double>> weights);

/// |+> = (|n2> + |n3>)/sqrt(2) over the two branch ends of a Y.
TargetState plus_target(const SpinNetwork& net);
/// |-> = (|n2> - |n3>)/sqrt(2).
TargetState minus_target(const SpinNetwork& net);

/// Dense vector of a target in an n-dimensional site basis.
SubspaceState target_to_state(const TargetState& target, int n);

/// p_k = |c_k|^2.
Eigen::VectorXd site_probabilities(const SubspaceState& state);

/// Squared overlap |<target|state>|^2.
double fidelity(const SubspaceState& state, const TargetState& target);
double fidelity(const SubspaceState& state, const SubspaceState& target);

/// Two-qubit density matrix in the computational basis |00>,|01>,|10>,|11>.
using TwoSiteDensity = Eigen::Matrix4cd;

/// Partial trace of a single-excitation pure state onto sites (a, b):
/// rho = p_rest |00><00| + |phi><phi| with phi = c_a|10> + c_b|01>.
TwoSiteDensity reduced_two_site_density(const SubspaceState& state, int a, int b);

/// Wootters concurrence: C = max(l1-l2-l3-l4, 0) with l_i the square
/// roots, in decreasing order, of the eigenvalues of
/// rho (sy x sy) rho* (sy x sy).
double concurrence(const TwoSiteDensity& rho);

/// tau = C^2.
double tangle(const TwoSiteDensity& rho);

/// Entanglement of formation E_F = h((1 + sqrt(1 - tau))/2) with h the
/// binary Shannon entropy, h(0) = h(1) = 0.
double eof(const TwoSiteDensity& rho);
double eof_from_tangle(double tau);

struct Peak {
  double time = 0.0;
  double value = 0.0;
  double fwhm = 0.0;  // NaN when no half-maximum crossing brackets the peak
};

/// Interior local maxima of a sampled observable at or above `threshold`,
/// peak times and values refined by a three-point quadratic fit, with the
/// full width at half maximum of each peak. Endpoints are never reported.
std::vector<Peak> detect_revivals(std::span<const double> times,
                                  std::span<const double> values, double threshold);

}  // namespace spinweave
