#include "spinweave/couplings.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

namespace spinweave {

namespace {

constexpr double kRelTol = 1e-12;

bool close_rel(double x, double y) {
  return std::abs(x - y) <= kRelTol * std::max(std::abs(x), std::abs(y));
}

/// Distance of every site from the input along the tree.
std::vector<int> distances_from_input(const SpinNetwork& net) {
  std::vector<int> dist(static_cast<std::size_t>(net.size()), -1);
  std::deque<int> queue{net.input_site()};
  dist[static_cast<std::size_t>(net.input_site() - 1)] = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (const auto& [v, j] : net.neighbors(u)) {
      if (dist[static_cast<std::size_t>(v - 1)] < 0) {
        dist[static_cast<std::size_t>(v - 1)] = dist[static_cast<std::size_t>(u - 1)] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

}  // namespace

EffectiveChain effective_chain(const SpinNetwork& net) {
  const std::vector<int> dist = distances_from_input(net);
  const int depth = *std::max_element(dist.begin(), dist.end());
  EffectiveChain chain;
  chain.length = depth + 1;
  chain.column_map.assign(static_cast<std::size_t>(chain.length), {});
  for (int s = 1; s <= net.size(); ++s)
    chain.column_map[static_cast<std::size_t>(dist[static_cast<std::size_t>(s - 1)])]
        .push_back(s);

  chain.couplings.reserve(static_cast<std::size_t>(depth));
  for (int d = 0; d < depth; ++d) {
    // Each node of the column must couple to the next column with one
    // value j and fan-out n; the projected coupling j*sqrt(n) must agree
    // across the column.
    double column_value = -1.0;
    for (int s : chain.column_map[static_cast<std::size_t>(d)]) {
      double j = -1.0;
      int fan_out = 0;
      for (const auto& [v, jv] : net.neighbors(s)) {
        if (dist[static_cast<std::size_t>(v - 1)] != d + 1) continue;
        ++fan_out;
        if (j < 0.0) {
          j = jv;
        } else if (!close_rel(j, jv)) {
          throw InvalidArgument(
              "not projectable: unequal couplings out of site " + std::to_string(s));
        }
      }
      if (fan_out == 0)
        throw InvalidArgument("not projectable: branch ends at site " +
                              std::to_string(s) + " before the last column");
      double value = j * std::sqrt(static_cast<double>(fan_out));
      if (column_value < 0.0) {
        column_value = value;
      } else if (!close_rel(column_value, value)) {
        throw InvalidArgument("not projectable: column " + std::to_string(d + 1) +
                              " couples unevenly to the next column");
      }
    }
    chain.couplings.push_back(column_value);
  }
  return chain;
}

SpinNetwork assign_perfect_transfer(const SpinNetwork& net, double alpha) {
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  const std::vector<int> dist = distances_from_input(net);
  const int depth = *std::max_element(dist.begin(), dist.end());
  for (int end : net.branch_ends())
    if (dist[static_cast<std::size_t>(end - 1)] != depth)
      throw InvalidArgument(
          "timing violation: branch ends are not equidistant from the input");

  const int chain_length = depth + 1;
  std::vector<int> fan_out(static_cast<std::size_t>(net.size()), 0);
  for (const Edge& e : net.edges()) {
    int parent = dist[static_cast<std::size_t>(e.a - 1)] < dist[static_cast<std::size_t>(e.b - 1)]
                     ? e.a
                     : e.b;
    ++fan_out[static_cast<std::size_t>(parent - 1)];
  }

  std::vector<double> couplings;
  couplings.reserve(net.edges().size());
  for (const Edge& e : net.edges()) {
    int a_dist = dist[static_cast<std::size_t>(e.a - 1)];
    int b_dist = dist[static_cast<std::size_t>(e.b - 1)];
    int parent = a_dist < b_dist ? e.a : e.b;
    int position = std::max(a_dist, b_dist);  // effective bond index 1..L-1
    double effective =
        alpha * std::sqrt(static_cast<double>(position) *
                          static_cast<double>(chain_length - position));
    couplings.push_back(
        effective / std::sqrt(static_cast<double>(fan_out[static_cast<std::size_t>(parent - 1)])));
  }
  return net.with_couplings(couplings);
}

SpinNetwork assign_uniform(const SpinNetwork& net, double j) {
  if (!(j > 0.0)) throw InvalidArgument("uniform coupling must be positive");
  std::vector<double> couplings(net.edges().size(), j);
  return net.with_couplings(couplings);
}

SpinNetwork assign_random_matched(const SpinNetwork& net, std::uint64_t seed) {
  if (net.hubs().size() != 1 || net.branch_ends().size() != 2 ||
      net.branch_table().size() != 3)
    throw InvalidArgument("random matched couplings need a two-output Y");
  const auto& input_chain = net.branch_table()[0];
  const auto& branch_a = net.branch_table()[1];
  const auto& branch_b = net.branch_table()[2];
  if (branch_a.size() != branch_b.size())
    throw InvalidArgument("random matched couplings need l2 = l3");
  const int hub = net.hubs()[0];

  SplitMix64 rng(seed);
  std::map<std::pair<int, int>, double> assignment;
  auto set = [&](int a, int b, double j) {
    assignment[{std::min(a, b), std::max(a, b)}] = j;
  };
  // Input-branch couplings, input site towards the hub.
  int prev = input_chain.front();
  for (std::size_t i = 1; i < input_chain.size(); ++i) {
    set(prev, input_chain[i], rng.next_unit_open_closed());
    prev = input_chain[i];
  }
  set(prev, hub, rng.next_unit_open_closed());
  // One output sequence (hub coupling first), mirrored onto both branches.
  prev = hub;
  int prev_b = hub;
  for (std::size_t i = 0; i < branch_a.size(); ++i) {
    double j = rng.next_unit_open_closed();
    set(prev, branch_a[i], j);
    set(prev_b, branch_b[i], j);
    prev = branch_a[i];
    prev_b = branch_b[i];
  }

  std::vector<double> couplings;
  couplings.reserve(net.edges().size());
  for (const Edge& e : net.edges()) couplings.push_back(assignment.at({e.a, e.b}));
  return net.with_couplings(couplings);
}

SpinNetwork apply_rule(const SpinNetwork& net, const CouplingRule& rule) {
  return std::visit(
      [&](const auto& r) -> SpinNetwork {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, PerfectTransfer>)
          return assign_perfect_transfer(net, r.alpha);
        else if constexpr (std::is_same_v<T, UniformCoupling>)
          return assign_uniform(net, r.j);
        else
          return assign_random_matched(net, r.seed);
      },
      rule);
}

}  // namespace spinweave
