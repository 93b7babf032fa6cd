#include "spinweave/oracle.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "spinweave/couplings.hpp"
#include "spinweave/dynamics.hpp"

namespace spinweave {

namespace {

using Complex = std::complex<double>;

/// One application of the full XY Hamiltonian to a 2^N vector, assembled
/// from bit operations: hopping moves the excitation across each edge,
/// on-site energies act diagonally. Amplitude never crosses
/// Hamming-weight sectors.
void apply_full_hamiltonian(const SpinNetwork& net, const Eigen::VectorXcd& in,
                            Eigen::VectorXcd& out, const Eigen::VectorXd& diagonal) {
  const std::int64_t dim = in.size();
  if (diagonal.size() > 0)
    out = diagonal.cast<Complex>().cwiseProduct(in);
  else
    out.setZero();
  for (const Edge& e : net.edges()) {
    const std::uint64_t mask_a = 1ull << (e.a - 1);
    const std::uint64_t mask_b = 1ull << (e.b - 1);
    const std::uint64_t both = mask_a | mask_b;
    for (std::int64_t idx = 0; idx < dim; ++idx) {
      const std::uint64_t bits = static_cast<std::uint64_t>(idx) & both;
      if (bits == mask_a || bits == mask_b)
        out[static_cast<std::int64_t>(static_cast<std::uint64_t>(idx) ^ both)] +=
            e.coupling * in[idx];
    }
  }
}

}  // namespace

std::complex<double> FullState::weight_one_amplitude(int site) const {
  if (site < 1 || site > n_sites) throw InvalidArgument("site out of range");
  return amplitudes[static_cast<std::int64_t>(1ull << (site - 1))];
}

double FullState::leakage() const {
  double total = 0.0;
  for (std::int64_t idx = 0; idx < amplitudes.size(); ++idx)
    if (std::popcount(static_cast<std::uint64_t>(idx)) != 1)
      total += std::norm(amplitudes[idx]);
  return total;
}

FullState full_space_evolve(const SpinNetwork& net, int init_site, double t) {
  const int n = net.size();
  if (n > 14)
    throw InvalidArgument("full-space evolution is capped at 14 sites");
  if (init_site < 1 || init_site > n) throw InvalidArgument("site out of range");
  const std::int64_t dim = std::int64_t{1} << n;

  FullState state;
  state.n_sites = n;
  state.amplitudes = Eigen::VectorXcd::Zero(dim);
  state.amplitudes[static_cast<std::int64_t>(1ull << (init_site - 1))] = 1.0;
  if (t == 0.0) return state;

  Eigen::VectorXd diagonal;
  double energy_bound = 0.0;
  bool any_onsite = false;
  for (int s = 1; s <= n; ++s) {
    const double e = net.onsite_energy(s);
    if (e != 0.0) any_onsite = true;
    energy_bound += std::abs(e);
  }
  if (any_onsite) {
    diagonal.resize(dim);
    for (std::int64_t idx = 0; idx < dim; ++idx) {
      double e = 0.0;
      for (int s = 1; s <= n; ++s)
        if (static_cast<std::uint64_t>(idx) & (1ull << (s - 1))) e += net.onsite_energy(s);
      diagonal[idx] = e;
    }
  }

  // Chebyshev expansion of exp(-iHt) with a Gershgorin spectral bound.
  double radius = energy_bound;
  for (const Edge& e : net.edges()) radius += e.coupling;
  radius = std::max(radius, 1e-8);
  const double x = radius * std::abs(t);
  const double direction = t > 0.0 ? -1.0 : 1.0;  // (-i sgn t)^k phases

  Eigen::VectorXcd previous = state.amplitudes;  // T_0 v
  Eigen::VectorXcd current(dim);
  apply_full_hamiltonian(net, previous, current, diagonal);
  current /= radius;  // T_1 v

  Eigen::VectorXcd accumulated = std::cyl_bessel_j(0, x) * previous;
  Complex phase(0.0, direction);
  accumulated += 2.0 * std::cyl_bessel_j(1, x) * phase * current;

  Eigen::VectorXcd scratch(dim);
  const int min_terms = static_cast<int>(x) + 10;
  for (int k = 2; k < min_terms + 4000; ++k) {
    apply_full_hamiltonian(net, current, scratch, diagonal);
    scratch = (2.0 / radius) * scratch - previous;
    previous.swap(current);
    current.swap(scratch);
    phase *= Complex(0.0, direction);
    const double coefficient = 2.0 * std::cyl_bessel_j(static_cast<unsigned>(k), x);
    accumulated += coefficient * phase * current;
    if (k > min_terms && std::abs(coefficient) < 1e-18) break;
  }

  state.amplitudes = std::move(accumulated);
  return state;
}

double analytic_three_site(double a, double b, double t) {
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidArgument("couplings must be positive");
  const double w2 = a * a + b * b;
  return (b * b + a * a * std::cos(std::sqrt(w2) * t)) / w2;
}

std::pair<std::complex<double>, std::complex<double>> analytic_two_site(double a, double t) {
  if (!(a > 0.0)) throw InvalidArgument("coupling must be positive");
  return {Complex(std::cos(a * t), 0.0), Complex(0.0, -std::sin(a * t))};
}

CrossCheckReport cross_check(int max_n) {
  struct Case {
    std::string name;
    SpinNetwork net;
  };
  std::vector<Case> cases;
  cases.push_back({"path(2) uniform", assign_uniform(build_path(2), 1.0)});
  cases.push_back({"path(5) perfect", assign_perfect_transfer(build_path(5), 1.0)});
  cases.push_back({"y(1,1,1) perfect", assign_perfect_transfer(build_y(1, 1, 1), 1.0)});
  cases.push_back({"y(2,1,1) perfect", assign_perfect_transfer(build_y(2, 1, 1), 1.0)});
  cases.push_back({"y(2,2,2) uniform", assign_uniform(build_y(2, 2, 2), 0.7)});
  cases.push_back({"y(3,3,3) perfect", assign_perfect_transfer(build_y(3, 3, 3), 1.0)});
  cases.push_back({"y(3,3,3) random(7)", assign_random_matched(build_y(3, 3, 3), 7)});
  cases.push_back({"star(1,1,3) perfect", assign_perfect_transfer(build_star(1, 1, 3), 1.0)});
  cases.push_back({"star(2,1,4) perfect", assign_perfect_transfer(build_star(2, 1, 4), 1.0)});
  cases.push_back(
      {"tree(1;1(1,1),1(1,1)) perfect",
       assign_perfect_transfer(
           build_tree(TreeSpec{1,
                               {TreeSpec{1, {TreeSpec{1, {}}, TreeSpec{1, {}}}},
                                TreeSpec{1, {TreeSpec{1, {}}, TreeSpec{1, {}}}}}},
                      true),
           1.0)});

  CrossCheckReport report;
  SplitMix64 rng(0x5eedu);
  for (const Case& c : cases) {
    if (c.net.size() > max_n) continue;
    CrossCheckRow row;
    row.name = c.name;
    row.n_sites = c.net.size();
    SubspaceHamiltonian h(c.net);
    const int init_sites[2] = {c.net.input_site(), c.net.size()};
    for (int init : init_sites) {
      for (int trial = 0; trial < 20; ++trial) {
        const double t = 4.0 * M_PI * rng.next_unit_open_closed();
        const SubspaceState reduced = propagate(h, site_basis_state(c.net.size(), init), t);
        const FullState full = full_space_evolve(c.net, init, t);
        for (int s = 1; s <= c.net.size(); ++s)
          row.max_amplitude_deviation =
              std::max(row.max_amplitude_deviation,
                       std::abs(full.weight_one_amplitude(s) - reduced[s - 1]));
        row.max_leakage = std::max(row.max_leakage, full.leakage());
      }
    }
    report.max_amplitude_deviation =
        std::max(report.max_amplitude_deviation, row.max_amplitude_deviation);
    report.max_leakage = std::max(report.max_leakage, row.max_leakage);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace spinweave
