#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "spinweave/network.hpp"

namespace spinweave {

/// 1D chain obtained by projecting the columns (distance classes from the
/// input site) of a network onto single nodes.
struct EffectiveChain {
  int length = 0;                             // L, number of columns
  std::vector<double> couplings;              // L-1 values, units of alpha
  std::vector<std::vector<int>> column_map;   // column_map[i] = sites at distance i
};

struct PerfectTransfer {
  double alpha = 1.0;
};
struct UniformCoupling {
  double j = 1.0;
};
struct RandomMatched {
  std::uint64_t seed = 0;
};
using CouplingRule = std::variant<PerfectTransfer, UniformCoupling, RandomMatched>;

/// Portable, explicitly seeded 64-bit generator (SplitMix64: Steele,
/// Lea & Flood 2014). Used wherever reproducible coupling sequences are
/// required, so that documented seeds give the same networks everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform on (0, 1]: 1 - u with u on [0, 1), so couplings never vanish.
  double next_unit_open_closed() {
    return 1.0 - static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// Column projection. Each column must couple to the next with a single
/// per-node coupling value, and the per-node effective values j*sqrt(n)
/// must agree across the column; otherwise a not-projectable error is
/// raised. The effective coupling between columns i and i+1 is that
/// common value.
EffectiveChain effective_chain(const SpinNetwork& net);

/// Sets physical couplings so the effective chain carries the exact
/// perfect-transfer profile alpha*sqrt(i(L-i)), dividing by sqrt(p) at
/// every hub with p outgoing branches. Requires all branch ends
/// equidistant from the input site (timing-violation error otherwise).
SpinNetwork assign_perfect_transfer(const SpinNetwork& net, double alpha);

/// All couplings set to j > 0.
SpinNetwork assign_uniform(const SpinNetwork& net, double j);

/// Couplings drawn uniform on (0, 1] from SplitMix64(seed): first the
/// input-branch couplings (input site towards the hub, hub coupling
/// included), then one output-branch sequence (hub-to-branch coupling
/// first) mirrored onto both output branches. Requires a Y with l2 = l3.
SpinNetwork assign_random_matched(const SpinNetwork& net, std::uint64_t seed);

/// Dispatch over the rule variant.
SpinNetwork apply_rule(const SpinNetwork& net, const CouplingRule& rule);

}  // namespace spinweave
