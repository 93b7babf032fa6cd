#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spinweave/errors.hpp"

namespace spinweave {

enum class SiteRole { Input, Hub, Interior, BranchEnd };

/// Undirected coupling between sites a < b (1-based), in units of alpha.
struct Edge {
  int a = 0;
  int b = 0;
  double coupling = 1.0;
};

/// Recursive description of a branched chain: `segment` sites in a row,
/// then (if `children` is non-empty) a hub followed by the child branches.
/// An empty child list terminates the branch at its last segment site.
struct TreeSpec {
  int segment = 1;
  std::vector<TreeSpec> children;
};

/// A tree of spins with on-site energies and positive couplings.
///
/// Sites are labelled 1..N clockwise (depth-first): the input chain first,
/// then each hub followed by its branches in order. Values are immutable
/// after construction and safe to share across threads.
class SpinNetwork {
 public:
  SpinNetwork(int n_sites, std::vector<Edge> edges, int input_site = 1,
              std::vector<double> onsite_energies = {});

  int size() const { return n_; }
  int input_site() const { return input_site_; }
  double onsite_energy(int site) const;
  SiteRole role(int site) const;

  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(int a, int b) const;
  double coupling(int a, int b) const;
  /// Neighbors of `site` as (site, coupling) pairs, ascending by index.
  const std::vector<std::pair<int, double>>& neighbors(int site) const;

  /// Hub sites (degree >= 3), ascending.
  const std::vector<int>& hubs() const { return hubs_; }
  /// Branch-end sites (non-input leaves) in clockwise depth-first order;
  /// for a Y these are {n2, n3}.
  const std::vector<int>& branch_ends() const { return branch_ends_; }
  /// Maximal hub-free segments in depth-first order, hub sites excluded.
  /// Entry 0 is the input chain (branch 1 of the labelling convention).
  const std::vector<std::vector<int>>& branch_table() const { return branch_table_; }

  /// Copy with couplings replaced, one value per edge in edges() order.
  SpinNetwork with_couplings(std::span<const double> couplings) const;

  /// Plain-text edge list: header `sites N input K`, role lines
  /// `hub i` / `end i`, then one `i j J` line per edge with couplings
  /// printed to 17 significant digits (bit-exact round trip).
  std::string to_text() const;
  static SpinNetwork from_text(const std::string& text);

 private:
  void validate_and_index();

  int n_ = 0;
  int input_site_ = 1;
  std::vector<Edge> edges_;
  std::vector<double> onsite_;
  std::vector<SiteRole> roles_;
  std::vector<std::vector<std::pair<int, double>>> adjacency_;
  std::vector<int> hubs_;
  std::vector<int> branch_ends_;
  std::vector<std::vector<int>> branch_table_;
};

/// Path graph 1-2-...-n with unit couplings.
SpinNetwork build_path(int n);

/// Y structure (l1, l2, l3): input chain of l1 sites, one hub, two output
/// branches; N = l1+l2+l3+1, branch ends n2 = l1+l2+1 and n3 = N.
SpinNetwork build_y(int l1, int l2, int l3);

/// Star family (m, l, l, ..., l): input chain of m sites, one hub,
/// p output branches of l sites each.
SpinNetwork build_star(int m, int l, int p);

/// General branched structure from a TreeSpec. With `transfer_timed` set,
/// requires every output path from the first hub to have the same number
/// of sites (needed for simultaneous arrival at the branch ends).
SpinNetwork build_tree(const TreeSpec& spec, bool transfer_timed = false);

/// True iff the two output branches of a Y have equal length and
/// identical coupling sequences (hub couplings included) -- exactly the
/// condition for the branch-swap operator to commute with H.
bool check_output_symmetry(const SpinNetwork& net);

/// Number of sites a TreeSpec would build.
int tree_site_count(const TreeSpec& spec);

}  // namespace spinweave
