// Acceptance suite: every release-gating numerical claim, one line each.
// Run through ctest or directly; exits nonzero when any criterion fails.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "spinweave/couplings.hpp"
#include "spinweave/dynamics.hpp"
#include "spinweave/network.hpp"
#include "spinweave/observables.hpp"
#include "spinweave/oracle.hpp"
#include "spinweave/scenarios.hpp"

using namespace spinweave;

namespace {

const double kPi = std::acos(-1.0);
int failures = 0;

struct Criterion {
  const char* id;
  const char* title;
  std::function<void(std::vector<std::string>&)> body;
};

void expect(std::vector<std::string>& problems, bool ok, const std::string& detail) {
  if (!ok) problems.push_back(detail);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

std::vector<double> column_of(const ResultTable& table, const std::string& name) {
  const int c = table.column_index(name);
  if (c < 0) throw Error("missing column " + name);
  std::vector<double> out(static_cast<std::size_t>(table.data.rows()));
  for (Eigen::Index i = 0; i < table.data.rows(); ++i)
    out[static_cast<std::size_t>(i)] = table.data(i, c);
  return out;
}

std::vector<double> times_of(const ResultTable& table) { return column_of(table, "t"); }

void check_revival_spacing(std::vector<std::string>& problems, const ResultTable& table,
                           const std::string& column, double spacing, double tol,
                           const std::string& label) {
  const std::vector<Peak> peaks =
      detect_revivals(times_of(table), column_of(table, column), 0.99);
  expect(problems, peaks.size() >= 2, label + ": fewer than 2 detected peaks");
  for (std::size_t k = 1; k < peaks.size(); ++k) {
    const double gap = peaks[k].time - peaks[k - 1].time;
    expect(problems, std::abs(gap - spacing) <= tol,
           label + ": peak spacing " + num(gap) + " vs " + num(spacing));
  }
}

double first_peak_fwhm(const ResultTable& table, const std::string& column) {
  const std::vector<Peak> peaks =
      detect_revivals(times_of(table), column_of(table, column), 0.99);
  if (peaks.empty()) throw Error("no peaks detected for " + column);
  return peaks.front().fwhm;
}

// ---- criteria ------------------------------------------------------------

void criterion_transfer_symmetric_y(std::vector<std::string>& problems) {
  struct Setup {
    const char* preset_name;
    int n2;
    int n3;
  };
  for (const Setup& setup : {Setup{"fig4_333", 7, 10}, Setup{"fig4_101010", 21, 31}}) {
    const Scenario scenario = preset(setup.preset_name)[0];
    const ResultTable table = run_scenario(scenario);
    const SpinNetwork net = apply_rule(build_topology(scenario.topology), scenario.rule);
    const SubspaceHamiltonian h(net);
    const SubspaceState at_transfer =
        propagate(h, site_basis_state(net.size(), 1), kPi / 2.0);
    const double f_plus = fidelity(at_transfer, plus_target(net));
    expect(problems, f_plus >= 1.0 - 1e-9,
           std::string(setup.preset_name) + ": F_plus(pi/2) = " + num(f_plus));
    const double p2 = std::norm(at_transfer[setup.n2 - 1]);
    const double p3 = std::norm(at_transfer[setup.n3 - 1]);
    expect(problems, std::abs(p2 - 0.5) <= 1e-9 && std::abs(p3 - 0.5) <= 1e-9,
           std::string(setup.preset_name) + ": end probabilities " + num(p2) + ", " +
               num(p3));
    check_revival_spacing(problems, table, "F_plus", kPi, 1e-4, setup.preset_name);
  }
}

void criterion_eof_curve(std::vector<std::string>& problems) {
  const Scenario scenario = preset("fig5_eof")[0];
  const ResultTable table = run_scenario(scenario);
  const SpinNetwork net = apply_rule(build_topology(scenario.topology), scenario.rule);
  const SubspaceHamiltonian h(net);
  for (int k = 0; k < 4; ++k) {
    const double t = kPi / 2.0 + k * kPi;
    const SubspaceState c = propagate(h, site_basis_state(10, 1), t);
    const double value = eof(reduced_two_site_density(c, 7, 10));
    expect(problems, std::abs(value - 1.0) <= 1e-9,
           "EOF(7,10) at pi/2 + " + std::to_string(k) + "pi = " + num(value));
  }
  check_revival_spacing(problems, table, "EOF_7_10", kPi, 1e-4, "fig5_eof");
}

void criterion_asymmetric_transfer(std::vector<std::string>& problems) {
  for (const auto& [l1, l2, l3] : {std::tuple{5, 2, 2}, std::tuple{7, 1, 1}}) {
    const SpinNetwork net = assign_perfect_transfer(build_y(l1, l2, l3), 1.0);
    const SubspaceHamiltonian h(net);
    const SubspaceState c = propagate(h, site_basis_state(net.size(), 1), kPi / 2.0);
    const double f = fidelity(c, plus_target(net));
    expect(problems, f >= 1.0 - 1e-9,
           "(" + std::to_string(l1) + "," + std::to_string(l2) + "," +
               std::to_string(l3) + "): F_plus(pi/2) = " + num(f));
  }
}

void criterion_peak_narrowing(std::vector<std::string>& problems) {
  auto fwhm_of = [](const char* name) {
    return first_peak_fwhm(run_scenario(preset(name)[0]), "F_plus");
  };
  const double w333 = fwhm_of("fig4_333");
  const double w101010 = fwhm_of("fig4_101010");
  const double w522 = fwhm_of("fig6_522");
  const double w711 = fwhm_of("fig6_711");
  expect(problems, w101010 < w333,
         "FWHM(10,10,10) = " + num(w101010) + " !< FWHM(3,3,3) = " + num(w333));
  expect(problems, w711 < w522 && w522 < w333,
         "FWHM ordering: " + num(w711) + ", " + num(w522) + ", " + num(w333));
}

void criterion_eigenstate_freezing(std::vector<std::string>& problems) {
  const SpinNetwork net = assign_perfect_transfer(build_y(7, 1, 1), 1.0);
  const EventSchedule flip({{kPi / 2.0, PhaseFlip{10}}});
  const Trajectory traj =
      run_schedule(net, site_basis_state(10, 1), flip, 4.0 * kPi, 4001);
  const TargetState minus = minus_target(net);
  double worst = 1.0;
  for (int i = 0; i < 4001; ++i) {
    if (traj.times[i] < kPi / 2.0) continue;
    worst = std::min(worst, fidelity(traj.states[static_cast<std::size_t>(i)], minus));
  }
  expect(problems, worst >= 1.0 - 1e-9, "min F_minus after the flip = " + num(worst));
}

void criterion_dynamical_freezing(std::vector<std::string>& problems) {
  const ResultTable table = run_scenario(preset("fig7_freeze_333")[0]);
  check_revival_spacing(problems, table, "F_minus", kPi / 2.0, 1e-4, "fig7_freeze_333");
  for (const char* column : {"p_1", "p_2", "p_3", "p_4"}) {
    const std::vector<double> values = column_of(table, column);
    const double peak = *std::max_element(values.begin(), values.end());
    expect(problems, peak < 1e-10,
           std::string("fig7_freeze_333: max ") + column + " = " + num(peak));
  }
}

void criterion_antisymmetric_components(std::vector<std::string>& problems) {
  const ResultTable table = run_scenario(preset("fig7_freeze_522")[0]);
  for (const char* column : {"im_c_8", "im_c_10"}) {
    std::vector<double> v = column_of(table, column);
    double worst = 0.0;
    for (double x : v) worst = std::max(worst, std::abs(x));
    expect(problems, worst < 1e-10, std::string("max |") + column + "| = " + num(worst));
  }
  for (const char* column : {"re_c_7", "re_c_9"}) {
    std::vector<double> v = column_of(table, column);
    double worst = 0.0;
    for (double x : v) worst = std::max(worst, std::abs(x));
    expect(problems, worst < 1e-10, std::string("max |") + column + "| = " + num(worst));
  }
  // Oscillation period 2 pi / sqrt(7): spacing of re_c_8 maxima.
  const std::vector<Peak> peaks =
      detect_revivals(times_of(table), column_of(table, "re_c_8"), 0.5);
  const double period = 2.0 * kPi / std::sqrt(7.0);
  expect(problems, peaks.size() >= 2, "fig7_freeze_522: fewer than 2 component peaks");
  for (std::size_t k = 1; k < peaks.size(); ++k) {
    const double gap = peaks[k].time - peaks[k - 1].time;
    expect(problems, std::abs(gap - period) <= 1e-4,
           "component period " + num(gap) + " vs " + num(period));
  }
}

void criterion_random_matched(std::vector<std::string>& problems) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const SpinNetwork net = assign_random_matched(build_y(3, 3, 3), seed);
    const SubspaceHamiltonian h(net);
    SubspaceState minus = SubspaceState::Zero(10);
    minus[6] = 1.0 / std::sqrt(2.0);
    minus[9] = -1.0 / std::sqrt(2.0);
    const double a = net.coupling(9, 10);
    const double b = net.coupling(8, 9);
    const double revival = 2.0 * kPi / std::hypot(a, b);
    const double f = fidelity(propagate(h, minus, revival), minus_target(net));
    expect(problems, f >= 1.0 - 1e-6,
           "seed " + std::to_string(seed) + ": F_minus(2pi/w) = " + num(f));
    const Trajectory traj = run_schedule(net, minus, EventSchedule{}, revival, 101);
    double silent = 0.0;
    for (const SubspaceState& state : traj.states)
      for (int k = 0; k < 4; ++k) silent = std::max(silent, std::norm(state[k]));
    expect(problems, silent < 1e-10,
           "seed " + std::to_string(seed) + ": hub/input probability " + num(silent));
  }
}

void criterion_star_w_states(std::vector<std::string>& problems) {
  for (int p : {3, 4, 5}) {
    const SpinNetwork net = assign_perfect_transfer(build_star(3, 3, p), 1.0);
    const SubspaceHamiltonian h(net);
    const SubspaceState c = propagate(h, site_basis_state(net.size(), 1), kPi / 2.0);
    const std::vector<int>& ends = net.branch_ends();
    const std::vector<std::complex<double>> weights(
        ends.size(), std::complex<double>(1.0 / std::sqrt(double(p)), 0.0));
    const double f = fidelity(c, make_w_target(ends, weights));
    expect(problems, f >= 1.0 - 1e-9,
           "star(3,3," + std::to_string(p) + "): F_W(pi/2) = " + num(f));
  }
}

void criterion_bifurcation_freeze(std::vector<std::string>& problems) {
  const TreeSpec spec{3,
                      {TreeSpec{2, {TreeSpec{1, {}}, TreeSpec{1, {}}}},
                       TreeSpec{2, {TreeSpec{1, {}}, TreeSpec{1, {}}}}}};
  const SpinNetwork net = assign_perfect_transfer(build_tree(spec, true), 1.0);
  const SubspaceHamiltonian h(net);
  const SubspaceState arrived = propagate(h, site_basis_state(14, 1), kPi / 2.0);
  for (int end : {8, 9, 13, 14}) {
    const double p = std::norm(arrived[end - 1]);
    expect(problems, std::abs(p - 0.25) <= 1e-9,
           "p_" + std::to_string(end) + "(pi/2) = " + num(p));
  }

  // Flip one spin of each bifurcation pair; the result is an eigenstate.
  SubspaceState flipped = apply_event(apply_event(arrived, PhaseFlip{9}), PhaseFlip{14});
  const std::complex<double> energy = flipped.dot(h.matrix() * flipped);
  const double residual = (h.matrix() * flipped - energy * flipped).norm();
  expect(problems, residual < 1e-9, "eigenstate residual = " + num(residual));

  const EventSchedule flips(
      {{kPi / 2.0, PhaseFlip{9}}, {kPi / 2.0, PhaseFlip{14}}});
  const Trajectory traj =
      run_schedule(net, site_basis_state(14, 1), flips, 4.0 * kPi, 2001);
  double worst = 1.0;
  for (int i = 0; i < 2001; ++i) {
    if (traj.times[i] < kPi / 2.0) continue;
    worst = std::min(worst, fidelity(traj.states[static_cast<std::size_t>(i)], flipped));
  }
  expect(problems, worst >= 1.0 - 1e-9, "min fidelity to the flipped state = " + num(worst));
}

void criterion_oracle_equivalence(std::vector<std::string>& problems) {
  const CrossCheckReport report = cross_check(10);
  expect(problems, report.rows.size() >= 8, "cross-check covered too few networks");
  expect(problems, report.max_amplitude_deviation < 1e-10,
         "max amplitude deviation = " + num(report.max_amplitude_deviation));
  expect(problems, report.max_leakage < 1e-20,
         "weight-1 leakage = " + num(report.max_leakage));
}

void criterion_wootters_consistency(std::vector<std::string>& problems) {
  std::mt19937 rng(20240605);
  std::normal_distribution<double> g(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 5 + trial % 6;
    SubspaceState c(n);
    for (int i = 0; i < n; ++i) c[i] = std::complex<double>(g(rng), g(rng));
    c /= c.norm();
    std::uniform_int_distribution<int> pick(1, n);
    const int a = pick(rng);
    int b = pick(rng);
    while (b == a) b = pick(rng);
    const double via_eq6 = concurrence(reduced_two_site_density(c, a, b));
    const double closed_form = 2.0 * std::abs(c[a - 1]) * std::abs(c[b - 1]);
    worst = std::max(worst, std::abs(via_eq6 - closed_form));
  }
  expect(problems, worst < 1e-12, "max |C - 2|c_a||c_b|| = " + num(worst));
  expect(problems, eof_from_tangle(0.0) == 0.0, "E_F(0) != 0");
  expect(problems, eof_from_tangle(1.0) == 1.0, "E_F(1) != 1");
}

void criterion_engine_invariants(std::vector<std::string>& problems) {
  const SpinNetwork nets[] = {assign_perfect_transfer(build_y(3, 3, 3), 1.0),
                              assign_random_matched(build_y(3, 3, 3), 9)};
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> tdist(0.0, 20.0 * kPi);
  std::normal_distribution<double> g(0.0, 1.0);
  for (const SpinNetwork& net : nets) {
    const SubspaceHamiltonian h(net);
    SubspaceState c(net.size());
    for (int i = 0; i < net.size(); ++i) c[i] = std::complex<double>(g(rng), g(rng));
    c /= c.norm();
    for (int trial = 0; trial < 25; ++trial) {
      const double t1 = tdist(rng);
      const double t2 = tdist(rng);
      const SubspaceState a = propagate(h, c, t1);
      expect(problems, std::abs(a.norm() - 1.0) < 1e-12,
             "norm drift " + num(std::abs(a.norm() - 1.0)) + " at t = " + num(t1));
      const double compose = (propagate(h, a, t2) - propagate(h, c, t1 + t2)).norm();
      expect(problems, compose < 1e-10, "composition defect " + num(compose));
      const double reverse = (propagate(h, a, -t1) - c).norm();
      expect(problems, reverse < 1e-10, "time-reversal defect " + num(reverse));
    }
  }
}

void run(const Criterion& criterion) {
  std::vector<std::string> problems;
  try {
    criterion.body(problems);
  } catch (const std::exception& e) {
    problems.push_back(std::string("exception: ") + e.what());
  }
  if (problems.empty()) {
    std::printf("[PASS] %s %s\n", criterion.id, criterion.title);
  } else {
    ++failures;
    std::printf("[FAIL] %s %s\n", criterion.id, criterion.title);
    for (const std::string& p : problems) std::printf("       - %s\n", p.c_str());
  }
  std::fflush(stdout);
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"01", "perfect transfer on symmetric Y structures", criterion_transfer_symmetric_y},
      {"02", "entanglement of formation reaches 1 with pi revivals", criterion_eof_curve},
      {"03", "asymmetric (5,2,2) and (7,1,1) transfer", criterion_asymmetric_transfer},
      {"04", "first-peak FWHM narrows with arm length", criterion_peak_narrowing},
      {"05", "(7,1,1) phase flip freezes an exact eigenstate", criterion_eigenstate_freezing},
      {"06", "(3,3,3) |-> dynamics: pi/2 revivals, silent hub and input",
       criterion_dynamical_freezing},
      {"07", "(5,2,2) antisymmetric sector components and period",
       criterion_antisymmetric_components},
      {"08", "random matched couplings revive |-> across 100 seeds",
       criterion_random_matched},
      {"09", "star families deliver symmetric W states", criterion_star_w_states},
      {"10", "bifurcation structure freezes completely after paired flips",
       criterion_bifurcation_freeze},
      {"11", "full-space oracle equivalence and leakage", criterion_oracle_equivalence},
      {"12", "Wootters concurrence closed-form consistency", criterion_wootters_consistency},
      {"13", "norm, composition and time-reversal invariants", criterion_engine_invariants},
  };
  for (const Criterion& criterion : criteria) run(criterion);
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
