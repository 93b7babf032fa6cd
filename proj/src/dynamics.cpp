#include "spinweave/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace spinweave {

SubspaceState site_basis_state(int n, int site) {
  if (site < 1 || site > n) throw InvalidArgument("site out of range");
  SubspaceState c = SubspaceState::Zero(n);
  c[site - 1] = 1.0;
  return c;
}

bool is_normalized(const SubspaceState& c, double tol) {
  return std::abs(c.squaredNorm() - 1.0) <= tol;
}

SubspaceHamiltonian::SubspaceHamiltonian(const SpinNetwork& net) {
  const int n = net.size();
  matrix_ = Eigen::MatrixXd::Zero(n, n);
  for (int s = 1; s <= n; ++s) matrix_(s - 1, s - 1) = net.onsite_energy(s);
  for (const Edge& e : net.edges()) {
    matrix_(e.a - 1, e.b - 1) = e.coupling;
    matrix_(e.b - 1, e.a - 1) = e.coupling;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix_);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigendecomposition failed to converge");
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();

  // Sign convention: first component of non-negligible magnitude positive.
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      double v = eigenvectors_(k, m);
      if (std::abs(v) > 1e-12) {
        if (v < 0.0) eigenvectors_.col(m) = -eigenvectors_.col(m);
        break;
      }
    }
  }

  const double scale = std::max(
      {1e-300, std::abs(eigenvalues_[0]), std::abs(eigenvalues_[n - 1])});
  const double residual =
      (matrix_ * eigenvectors_ - eigenvectors_ * eigenvalues_.asDiagonal())
          .cwiseAbs()
          .maxCoeff();
  if (residual > 1e-10 * scale)
    throw NumericalError("spectral residual exceeds tolerance");
  const double ortho =
      (eigenvectors_.transpose() * eigenvectors_ - Eigen::MatrixXd::Identity(n, n))
          .cwiseAbs()
          .maxCoeff();
  if (ortho > 1e-10) throw NumericalError("eigenvector matrix is not orthogonal");
}

SubspaceState propagate(const SubspaceHamiltonian& h, const SubspaceState& c0, double t) {
  if (c0.size() != h.dimension())
    throw InvalidArgument("state dimension does not match the Hamiltonian");
  if (t == 0.0) return c0;
  Eigen::VectorXcd modal = h.eigenvectors().transpose() * c0;
  for (int m = 0; m < modal.size(); ++m)
    modal[m] *= std::polar(1.0, -h.eigenvalues()[m] * t);
  return h.eigenvectors() * modal;
}

EventSchedule::EventSchedule(std::vector<Event> events) : events_(std::move(events)) {
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (events_[i].time < 0.0) throw InvalidArgument("event times must be nonnegative");
    if (i > 0 && events_[i].time < events_[i - 1].time)
      throw InvalidArgument("event times must be nondecreasing");
  }
}

SubspaceState apply_event(const SubspaceState& state, const LocalOperation& op) {
  SubspaceState out = state;
  std::visit(
      [&](const auto& o) {
        if (o.site < 1 || o.site > state.size())
          throw InvalidArgument("event site out of range");
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, PhaseFlip>)
          out[o.site - 1] = -out[o.site - 1];
        else
          out[o.site - 1] *= std::polar(1.0, o.phi);
      },
      op);
  return out;
}

Trajectory run_schedule(const SpinNetwork& net, const SubspaceState& c0,
                        const EventSchedule& schedule, double total_time, int n_samples) {
  if (!(total_time > 0.0)) throw InvalidArgument("total time must be positive");
  if (n_samples < 2) throw InvalidArgument("need at least 2 samples");
  if (c0.size() != net.size())
    throw InvalidArgument("initial state dimension does not match the network");
  if (!is_normalized(c0)) throw InvalidArgument("initial state is not normalized");
  for (const Event& e : schedule.events())
    if (e.time > total_time) throw InvalidArgument("event time beyond the run length");

  SubspaceHamiltonian h(net);
  Trajectory traj;
  traj.times.resize(n_samples);
  traj.states.reserve(static_cast<std::size_t>(n_samples));
  {
    std::ostringstream p;
    p << "N=" << net.size() << " events=" << schedule.events().size()
      << " T=" << total_time << " samples=" << n_samples;
    traj.provenance = p.str();
  }

  SubspaceState state = c0;
  double now = 0.0;
  std::size_t next_event = 0;
  for (int i = 0; i < n_samples; ++i) {
    const double t_sample = total_time * i / (n_samples - 1);
    while (next_event < schedule.events().size() &&
           schedule.events()[next_event].time <= t_sample) {
      const Event& e = schedule.events()[next_event];
      state = propagate(h, state, e.time - now);
      now = e.time;
      state = apply_event(state, e.op);
      ++next_event;
    }
    state = propagate(h, state, t_sample - now);
    now = t_sample;
    if (std::abs(state.squaredNorm() - 1.0) > 1e-10)
      throw NumericalError("norm drifted beyond tolerance during evolution");
    traj.times[i] = t_sample;
    traj.states.push_back(state);
  }
  return traj;
}

}  // namespace spinweave
