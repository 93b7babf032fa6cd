#include "spinweave/network.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <deque>
#include <sstream>

namespace spinweave {

namespace {

std::string format_coupling(double j) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", j);
  return buf;
}

}  // namespace

SpinNetwork::SpinNetwork(int n_sites, std::vector<Edge> edges, int input_site,
                         std::vector<double> onsite_energies)
    : n_(n_sites), input_site_(input_site), edges_(std::move(edges)),
      onsite_(std::move(onsite_energies)) {
  if (onsite_.empty()) onsite_.assign(static_cast<std::size_t>(std::max(n_, 0)), 0.0);
  validate_and_index();
}

void SpinNetwork::validate_and_index() {
  if (n_ < 2) throw InvalidArgument("network needs at least 2 sites");
  if (static_cast<int>(onsite_.size()) != n_)
    throw InvalidArgument("on-site energy list does not match site count");
  if (input_site_ < 1 || input_site_ > n_)
    throw InvalidArgument("input site out of range");
  if (static_cast<int>(edges_.size()) != n_ - 1)
    throw InvalidArgument("a tree on N sites needs exactly N-1 edges");

  for (Edge& e : edges_) {
    if (e.a > e.b) std::swap(e.a, e.b);
    if (e.a < 1 || e.b > n_ || e.a == e.b)
      throw InvalidArgument("edge endpoints out of range");
    if (!(e.coupling > 0.0)) throw InvalidArgument("couplings must be positive");
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& x, const Edge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i - 1].a == edges_[i].a && edges_[i - 1].b == edges_[i].b)
      throw InvalidArgument("duplicate edge");

  adjacency_.assign(static_cast<std::size_t>(n_), {});
  for (const Edge& e : edges_) {
    adjacency_[static_cast<std::size_t>(e.a - 1)].emplace_back(e.b, e.coupling);
    adjacency_[static_cast<std::size_t>(e.b - 1)].emplace_back(e.a, e.coupling);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());

  // Connectivity: |E| = N-1 plus connected means no cycles.
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  std::deque<int> queue{input_site_};
  seen[static_cast<std::size_t>(input_site_ - 1)] = 1;
  int reached = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (const auto& [v, j] : adjacency_[static_cast<std::size_t>(u - 1)]) {
      if (!seen[static_cast<std::size_t>(v - 1)]) {
        seen[static_cast<std::size_t>(v - 1)] = 1;
        ++reached;
        queue.push_back(v);
      }
    }
  }
  if (reached != n_) throw InvalidArgument("network is not connected");

  if (adjacency_[static_cast<std::size_t>(input_site_ - 1)].size() != 1)
    throw InvalidArgument("input site must sit at the end of the input chain");

  roles_.assign(static_cast<std::size_t>(n_), SiteRole::Interior);
  hubs_.clear();
  for (int s = 1; s <= n_; ++s) {
    std::size_t deg = adjacency_[static_cast<std::size_t>(s - 1)].size();
    if (s == input_site_) {
      roles_[static_cast<std::size_t>(s - 1)] = SiteRole::Input;
    } else if (deg == 1) {
      roles_[static_cast<std::size_t>(s - 1)] = SiteRole::BranchEnd;
    } else if (deg >= 3) {
      roles_[static_cast<std::size_t>(s - 1)] = SiteRole::Hub;
      hubs_.push_back(s);
    }
  }

  // Depth-first walk from the input with ascending neighbor order gives
  // the clockwise branch enumeration: segments between hubs become the
  // branch table, leaves become branch ends.
  branch_ends_.clear();
  branch_table_.clear();
  std::vector<std::vector<int>> table;
  std::vector<int> ends;
  auto walk = [&](auto&& self, int site, int parent, std::vector<int> seg) -> void {
    const bool is_hub = roles_[static_cast<std::size_t>(site - 1)] == SiteRole::Hub;
    if (is_hub) {
      if (!seg.empty()) table.push_back(std::move(seg));
      for (const auto& [v, j] : adjacency_[static_cast<std::size_t>(site - 1)])
        if (v != parent) self(self, v, site, {});
      return;
    }
    seg.push_back(site);
    int child = 0;
    for (const auto& [v, j] : adjacency_[static_cast<std::size_t>(site - 1)])
      if (v != parent) child = v;
    if (child == 0) {
      ends.push_back(site);
      table.push_back(std::move(seg));
      return;
    }
    self(self, child, site, std::move(seg));
  };
  walk(walk, input_site_, 0, {});
  branch_table_ = std::move(table);
  branch_ends_ = std::move(ends);
}

double SpinNetwork::onsite_energy(int site) const {
  if (site < 1 || site > n_) throw InvalidArgument("site out of range");
  return onsite_[static_cast<std::size_t>(site - 1)];
}

SiteRole SpinNetwork::role(int site) const {
  if (site < 1 || site > n_) throw InvalidArgument("site out of range");
  return roles_[static_cast<std::size_t>(site - 1)];
}

bool SpinNetwork::has_edge(int a, int b) const {
  if (a < 1 || a > n_ || b < 1 || b > n_) return false;
  for (const auto& [v, j] : adjacency_[static_cast<std::size_t>(a - 1)])
    if (v == b) return true;
  return false;
}

double SpinNetwork::coupling(int a, int b) const {
  if (a < 1 || a > n_ || b < 1 || b > n_) throw InvalidArgument("site out of range");
  for (const auto& [v, j] : adjacency_[static_cast<std::size_t>(a - 1)])
    if (v == b) return j;
  throw InvalidArgument("no such edge");
}

const std::vector<std::pair<int, double>>& SpinNetwork::neighbors(int site) const {
  if (site < 1 || site > n_) throw InvalidArgument("site out of range");
  return adjacency_[static_cast<std::size_t>(site - 1)];
}

SpinNetwork SpinNetwork::with_couplings(std::span<const double> couplings) const {
  if (couplings.size() != edges_.size())
    throw InvalidArgument("coupling list does not match edge count");
  std::vector<Edge> edges = edges_;
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i].coupling = couplings[i];
  return SpinNetwork(n_, std::move(edges), input_site_, onsite_);
}

std::string SpinNetwork::to_text() const {
  std::ostringstream out;
  out << "sites " << n_ << " input " << input_site_ << "\n";
  for (int h : hubs_) out << "hub " << h << "\n";
  for (int e : branch_ends_) out << "end " << e << "\n";
  for (const Edge& e : edges_)
    out << e.a << " " << e.b << " " << format_coupling(e.coupling) << "\n";
  return out.str();
}

SpinNetwork SpinNetwork::from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  int n = -1;
  int input = 1;
  std::vector<int> hubs;
  std::vector<int> ends;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank line
    if (first == "sites") {
      std::string kw;
      if (!(ls >> n >> kw >> input) || kw != "input")
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected `sites N input K`");
    } else if (first == "hub") {
      int s;
      if (!(ls >> s)) throw ParseError("line " + std::to_string(line_no) + ": bad hub line");
      hubs.push_back(s);
    } else if (first == "end") {
      int s;
      if (!(ls >> s)) throw ParseError("line " + std::to_string(line_no) + ": bad end line");
      ends.push_back(s);
    } else {
      Edge e;
      std::istringstream es(line);
      if (!(es >> e.a >> e.b >> e.coupling))
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected an `i j J` edge line");
      edges.push_back(e);
    }
  }
  if (n < 0) throw ParseError("missing `sites N input K` header line");
  SpinNetwork net(n, std::move(edges), input);
  for (int h : hubs)
    if (net.role(h) != SiteRole::Hub)
      throw ParseError("declared hub " + std::to_string(h) + " has degree < 3");
  for (int e : ends)
    if (net.role(e) != SiteRole::BranchEnd)
      throw ParseError("declared end " + std::to_string(e) + " is not a leaf");
  return net;
}

int tree_site_count(const TreeSpec& spec) {
  int count = spec.segment;
  if (!spec.children.empty()) {
    ++count;  // the hub
    for (const TreeSpec& child : spec.children) count += tree_site_count(child);
  }
  return count;
}

namespace {

void validate_tree_spec(const TreeSpec& spec, bool root) {
  if (spec.segment < 0) throw InvalidArgument("tree segment length must be >= 0");
  if (root && spec.segment < 1)
    throw InvalidArgument("input chain needs at least one site");
  if (spec.children.empty()) {
    if (spec.segment < 1)
      throw InvalidArgument("a terminating branch needs at least one site");
    return;
  }
  if (spec.children.size() < 2)
    throw InvalidArgument("a hub needs at least two outgoing branches");
  for (const TreeSpec& child : spec.children) validate_tree_spec(child, false);
}

// Number of sites from just past a hub down to the leaves; throws when
// subtrees disagree so simultaneous arrival is impossible.
int timed_depth(const TreeSpec& spec) {
  if (spec.children.empty()) return spec.segment;
  int depth = -1;
  for (const TreeSpec& child : spec.children) {
    int d = timed_depth(child);
    if (depth >= 0 && d != depth)
      throw InvalidArgument(
          "timing violation: output paths from a hub have different lengths");
    depth = d;
  }
  return spec.segment + 1 + depth;
}

struct TreeEmitter {
  int next = 1;
  std::vector<Edge> edges;

  void emit(const TreeSpec& spec, int attach) {
    int prev = attach;
    for (int i = 0; i < spec.segment; ++i) {
      int site = next++;
      if (prev != 0) edges.push_back({prev, site, 1.0});
      prev = site;
    }
    if (spec.children.empty()) return;
    int hub = next++;
    if (prev != 0) edges.push_back({prev, hub, 1.0});
    for (const TreeSpec& child : spec.children) emit(child, hub);
  }
};

}  // namespace

SpinNetwork build_tree(const TreeSpec& spec, bool transfer_timed) {
  validate_tree_spec(spec, true);
  if (transfer_timed && !spec.children.empty()) {
    for (const TreeSpec& child : spec.children) timed_depth(child);
    int depth = -1;
    for (const TreeSpec& child : spec.children) {
      int d = timed_depth(child);
      if (depth >= 0 && d != depth)
        throw InvalidArgument(
            "timing violation: output paths from the first hub have different lengths");
      depth = d;
    }
  }
  TreeEmitter emitter;
  emitter.emit(spec, 0);
  int n = emitter.next - 1;
  return SpinNetwork(n, std::move(emitter.edges), 1);
}

SpinNetwork build_path(int n) {
  if (n < 2) throw InvalidArgument("a path needs at least 2 sites");
  return build_tree(TreeSpec{n, {}});
}

SpinNetwork build_y(int l1, int l2, int l3) {
  if (l1 < 1 || l2 < 1 || l3 < 1)
    throw InvalidArgument("Y branch lengths must be >= 1");
  return build_tree(TreeSpec{l1, {TreeSpec{l2, {}}, TreeSpec{l3, {}}}});
}

SpinNetwork build_star(int m, int l, int p) {
  if (m < 1 || l < 1) throw InvalidArgument("star branch lengths must be >= 1");
  if (p < 2) throw InvalidArgument("a star needs at least 2 output branches");
  TreeSpec spec{m, std::vector<TreeSpec>(static_cast<std::size_t>(p), TreeSpec{l, {}})};
  return build_tree(spec);
}

bool check_output_symmetry(const SpinNetwork& net) {
  if (net.hubs().size() != 1)
    throw InvalidArgument("output symmetry is defined for a single-hub Y");
  int hub = net.hubs()[0];
  if (net.neighbors(hub).size() != 3)
    throw InvalidArgument("output symmetry is defined for a two-output Y");

  // The neighbor on the input side is the one whose subtree contains the
  // input site.
  const auto& table = net.branch_table();
  if (table.empty() || table[0].empty() || table[0].front() != net.input_site())
    throw InvalidArgument("malformed branch table");
  int toward_input = table[0].back();  // last input-chain site touches the hub

  std::vector<std::vector<double>> sequences;
  for (const auto& [v, j] : net.neighbors(hub)) {
    if (v == toward_input) continue;
    std::vector<double> seq{j};
    int prev = hub;
    int cur = v;
    while (true) {
      int nxt = 0;
      double nj = 0.0;
      for (const auto& [w, wj] : net.neighbors(cur)) {
        if (w == prev) continue;
        if (nxt != 0) throw InvalidArgument("output branch contains another hub");
        nxt = w;
        nj = wj;
      }
      if (nxt == 0) break;
      seq.push_back(nj);
      prev = cur;
      cur = nxt;
    }
    sequences.push_back(std::move(seq));
  }
  if (sequences.size() != 2)
    throw InvalidArgument("output symmetry is defined for a two-output Y");
  return sequences[0] == sequences[1];
}

}  // namespace spinweave
