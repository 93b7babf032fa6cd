#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "spinweave/network.hpp"

namespace spinweave {

/// Complex amplitudes over the site basis; entry k-1 belongs to site k.
using SubspaceState = Eigen::VectorXcd;

/// Basis state |k> (single excitation at site k) of dimension n.
SubspaceState site_basis_state(int n, int site);

/// True within tol of unit norm.
bool is_normalized(const SubspaceState& c, double tol = 1e-12);

/// Single-excitation block of the XY Hamiltonian: <k|H|k> = E_k and
/// <k|H|l> = J_kl on edges. The dense symmetric matrix is diagonalized
/// eagerly; the decomposition is validated (residual and orthogonality
/// within 1e-10) and eigenvector signs are fixed so the first
/// non-negligible component is positive, for reproducible output.
class SubspaceHamiltonian {
 public:
  explicit SubspaceHamiltonian(const SpinNetwork& net);

  int dimension() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  /// Ascending.
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  /// Columns are orthonormal eigenvectors matching eigenvalues().
  const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }

 private:
  Eigen::MatrixXd matrix_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
};

/// Exact evolution c(t) = V exp(-i Lambda t) V^T c0.
SubspaceState propagate(const SubspaceHamiltonian& h, const SubspaceState& c0, double t);

struct PhaseFlip {
  int site = 0;
};
struct LocalPhase {
  int site = 0;
  double phi = 0.0;
};
using LocalOperation = std::variant<PhaseFlip, LocalPhase>;

struct Event {
  double time = 0.0;
  LocalOperation op;
};

/// Ordered list of instantaneous local operations; times must be
/// nondecreasing and nonnegative.
class EventSchedule {
 public:
  EventSchedule() = default;
  explicit EventSchedule(std::vector<Event> events);

  const std::vector<Event>& events() const { return events_; }
  bool empty() const { return events_.empty(); }

 private:
  std::vector<Event> events_;
};

/// phase_flip: c_k -> -c_k; local_phase: c_k -> exp(i phi) c_k.
SubspaceState apply_event(const SubspaceState& state, const LocalOperation& op);

/// Uniform time grid over [0, T] with sampled states.
struct Trajectory {
  Eigen::VectorXd times;
  std::vector<SubspaceState> states;
  std::string provenance;
};

/// Piecewise evolution: propagate to each event time, apply the
/// operation, continue. An event falling exactly on a grid time is
/// applied before that sample is recorded. Norm conservation is checked
/// at every sample (1e-10).
Trajectory run_schedule(const SpinNetwork& net, const SubspaceState& c0,
                        const EventSchedule& schedule, double total_time, int n_samples);

}  // namespace spinweave
