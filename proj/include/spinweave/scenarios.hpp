#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "spinweave/couplings.hpp"
#include "spinweave/dynamics.hpp"
#include "spinweave/network.hpp"
#include "spinweave/observables.hpp"

namespace spinweave {

struct PathTopology {
  int n = 2;
};
struct YTopology {
  int l1 = 1, l2 = 1, l3 = 1;
};
struct StarTopology {
  int m = 1, l = 1, p = 2;
};
struct TreeTopology {
  TreeSpec spec;
  bool transfer_timed = false;
};
using Topology = std::variant<PathTopology, YTopology, StarTopology, TreeTopology>;

SpinNetwork build_topology(const Topology& topology);

struct InputSite {
  int site = 1;
};
enum class NamedState { Plus, Minus };
using InitialState = std::variant<InputSite, NamedState, TargetState>;

struct RevivalSpec {
  std::string column;
  double threshold = 0.99;
};

/// Declarative description of one experiment, parsed from the
/// line-oriented `key = value` config grammar. All times are in units
/// of 1/alpha.
struct Scenario {
  std::string name = "scenario";
  Topology topology;
  CouplingRule rule;
  InitialState initial;
  EventSchedule schedule;
  double total_time = 0.0;
  int n_samples = 2;
  std::vector<int> probability_sites;        // p_<site> columns
  bool fidelity_plus = false;                // F_plus
  bool fidelity_minus = false;               // F_minus
  std::optional<TargetState> fidelity_target;  // F_target
  std::optional<std::pair<int, int>> eof_pair;  // EOF_<a>_<b>
  std::vector<int> component_sites;          // re_c_<site>, im_c_<site>
  std::optional<RevivalSpec> revivals;
  std::string output_path;                   // empty: CLI default
  std::string source_text;                   // config echo
};

/// Sampled observables, one row per grid time; column 0 is `t`.
struct ResultTable {
  std::vector<std::string> columns;
  Eigen::MatrixXd data;
  std::vector<std::pair<std::string, std::string>> metadata;

  int column_index(const std::string& name) const;  // -1 when absent
};

/// Strict parser for the documented grammar: unknown sections or keys
/// are errors, messages carry line numbers, and cross-references (site
/// ranges, event times) are validated against the built topology.
Scenario parse_scenario(const std::string& text);

/// Builds the network, applies the coupling rule, runs the schedule and
/// evaluates the requested observables on the sample grid.
/// Deterministic for a fixed scenario.
ResultTable run_scenario(const Scenario& scenario);

/// Named scenarios shipping with the artifact. Group names
/// (fig6_522_711, fig7_freeze_333_522_711, fig8_random_A_B) expand to
/// several members; member names return a single scenario.
std::vector<Scenario> preset(const std::string& name);

/// Exact config text of a single preset member.
std::string preset_text(const std::string& member_name);

std::vector<std::string> preset_member_names();
std::vector<std::string> preset_group_names();

/// CSV with a `# key: value` metadata block, a mandatory header row and
/// 17-significant-digit values. Files are written to a temporary path in
/// the same directory and renamed into place.
std::string to_csv(const ResultTable& table);
void write_csv(const ResultTable& table, const std::filesystem::path& path);
ResultTable read_csv(const std::filesystem::path& path);

/// Seed recorded in table metadata: the random_matched seed when the
/// rule carries one, otherwise 0.
std::uint64_t scenario_seed(const Scenario& scenario);

}  // namespace spinweave
