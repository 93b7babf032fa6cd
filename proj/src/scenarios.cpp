#include "spinweave/scenarios.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "spinweave/version.hpp"

namespace spinweave {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string trim(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return std::string(s.substr(begin, end - begin));
}

std::vector<std::string> split(const std::string& s, char delim) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, delim)) parts.push_back(trim(item));
  if (!s.empty() && s.back() == delim) parts.push_back("");
  return parts;
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw ParseError("line " + std::to_string(line) + ": " + message);
}

double parse_double(const std::string& s, int line) {
  if (s.empty()) fail(line, "expected a number");
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE)
    fail(line, "bad number `" + s + "`");
  return v;
}

long long parse_int(const std::string& s, int line) {
  if (s.empty()) fail(line, "expected an integer");
  errno = 0;
  char* end = nullptr;
  long long v = std::strtoll(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size() || errno == ERANGE)
    fail(line, "bad integer `" + s + "`");
  return v;
}

std::uint64_t parse_seed(const std::string& s, int line) {
  if (s.empty()) fail(line, "expected a seed");
  errno = 0;
  char* end = nullptr;
  std::uint64_t v = std::strtoull(s.c_str(), &end, 0);
  if (end != s.c_str() + s.size() || errno == ERANGE)
    fail(line, "bad seed `" + s + "`");
  return v;
}

bool parse_bool(const std::string& s, int line) {
  if (s == "true") return true;
  if (s == "false") return false;
  fail(line, "expected true or false, got `" + s + "`");
}

std::vector<int> parse_int_list(const std::string& s, int line) {
  std::vector<int> out;
  for (const std::string& item : split(s, ','))
    out.push_back(static_cast<int>(parse_int(item, line)));
  return out;
}

/// `site:re` or `site:re:im` items, comma separated.
TargetState parse_amplitudes(const std::string& s, int line) {
  TargetState target;
  for (const std::string& item : split(s, ',')) {
    const std::vector<std::string> fields = split(item, ':');
    if (fields.size() != 2 && fields.size() != 3)
      fail(line, "expected site:re[:im], got `" + item + "`");
    const int site = static_cast<int>(parse_int(fields[0], line));
    const double re = parse_double(fields[1], line);
    const double im = fields.size() == 3 ? parse_double(fields[2], line) : 0.0;
    target.amplitudes.emplace_back(site, std::complex<double>(re, im));
  }
  return target;
}

TreeSpec parse_tree_node(const std::string& s, std::size_t& pos, int line) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  std::size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == start) fail(line, "expected a segment length in the tree spec");
  TreeSpec node;
  node.segment = static_cast<int>(parse_int(s.substr(start, pos - start), line));
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos < s.size() && s[pos] == '(') {
    ++pos;
    while (true) {
      node.children.push_back(parse_tree_node(s, pos, line));
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos < s.size() && s[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < s.size() && s[pos] == ')') {
        ++pos;
        break;
      }
      fail(line, "expected `,` or `)` in the tree spec");
    }
  }
  return node;
}

TreeSpec parse_tree_spec(const std::string& s, int line) {
  std::size_t pos = 0;
  TreeSpec spec = parse_tree_node(s, pos, line);
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos != s.size()) fail(line, "trailing characters after the tree spec");
  return spec;
}

struct RawValue {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, RawValue>;

struct RawScenario {
  Section topology;
  Section couplings;
  Section initial;
  Section run;
  Section observables;
  std::vector<std::pair<std::string, int>> event_lines;
};

const std::map<std::string, std::set<std::string>> kSectionKeys = {
    {"topology", {"family", "n", "l1", "l2", "l3", "m", "l", "p", "spec", "transfer_timed"}},
    {"couplings", {"rule", "alpha", "j", "seed"}},
    {"initial", {"site", "state", "amplitudes"}},
    {"run", {"T", "samples", "out", "name"}},
    {"observables",
     {"sites", "fidelity_plus", "fidelity_minus", "target", "eof", "components", "revivals"}},
};

RawScenario tokenize(const std::string& text) {
  RawScenario raw;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::string section;
  while (std::getline(in, line)) {
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const std::string content = trim(line);
    if (content.empty()) continue;
    if (content.front() == '[') {
      if (content.back() != ']') fail(line_no, "unterminated section header");
      section = trim(content.substr(1, content.size() - 2));
      if (!kSectionKeys.count(section) && section != "events")
        fail(line_no, "unknown section [" + section + "]");
      continue;
    }
    if (section.empty()) fail(line_no, "content before the first section header");
    if (section == "events") {
      raw.event_lines.emplace_back(content, line_no);
      continue;
    }
    const std::size_t eq = content.find('=');
    if (eq == std::string::npos) fail(line_no, "expected `key = value`");
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    if (!kSectionKeys.at(section).count(key))
      fail(line_no, "unknown key `" + key + "` in section [" + section + "]");
    Section& dest = section == "topology"      ? raw.topology
                    : section == "couplings"   ? raw.couplings
                    : section == "initial"     ? raw.initial
                    : section == "run"         ? raw.run
                                               : raw.observables;
    if (dest.count(key)) fail(line_no, "duplicate key `" + key + "`");
    dest[key] = {value, line_no};
  }
  return raw;
}

const RawValue& require(const Section& section, const std::string& key,
                        const std::string& section_name) {
  auto it = section.find(key);
  if (it == section.end())
    throw ParseError("missing required key `" + key + "` in section [" + section_name + "]");
  return it->second;
}

void reject_keys(const Section& section, std::initializer_list<const char*> keys,
                 const std::string& reason) {
  for (const char* key : keys)
    if (auto it = section.find(key); it != section.end())
      fail(it->second.line, "key `" + std::string(key) + "` is not valid " + reason);
}

Topology parse_topology(const Section& section) {
  const RawValue& family = require(section, "family", "topology");
  if (family.value == "path") {
    reject_keys(section, {"l1", "l2", "l3", "m", "l", "p", "spec", "transfer_timed"},
                "for family path");
    const RawValue& n = require(section, "n", "topology");
    return PathTopology{static_cast<int>(parse_int(n.value, n.line))};
  }
  if (family.value == "y") {
    reject_keys(section, {"n", "m", "l", "p", "spec", "transfer_timed"}, "for family y");
    const RawValue& l1 = require(section, "l1", "topology");
    const RawValue& l2 = require(section, "l2", "topology");
    const RawValue& l3 = require(section, "l3", "topology");
    return YTopology{static_cast<int>(parse_int(l1.value, l1.line)),
                     static_cast<int>(parse_int(l2.value, l2.line)),
                     static_cast<int>(parse_int(l3.value, l3.line))};
  }
  if (family.value == "star") {
    reject_keys(section, {"n", "l1", "l2", "l3", "spec", "transfer_timed"},
                "for family star");
    const RawValue& m = require(section, "m", "topology");
    const RawValue& l = require(section, "l", "topology");
    const RawValue& p = require(section, "p", "topology");
    return StarTopology{static_cast<int>(parse_int(m.value, m.line)),
                        static_cast<int>(parse_int(l.value, l.line)),
                        static_cast<int>(parse_int(p.value, p.line))};
  }
  if (family.value == "tree") {
    reject_keys(section, {"n", "l1", "l2", "l3", "m", "l", "p"}, "for family tree");
    const RawValue& spec = require(section, "spec", "topology");
    TreeTopology topo{parse_tree_spec(spec.value, spec.line), false};
    if (auto it = section.find("transfer_timed"); it != section.end())
      topo.transfer_timed = parse_bool(it->second.value, it->second.line);
    return topo;
  }
  fail(family.line, "unknown topology family `" + family.value + "`");
}

CouplingRule parse_rule(const Section& section) {
  const RawValue& rule = require(section, "rule", "couplings");
  if (rule.value == "perfect_transfer") {
    reject_keys(section, {"j", "seed"}, "for rule perfect_transfer");
    PerfectTransfer pt;
    if (auto it = section.find("alpha"); it != section.end()) {
      pt.alpha = parse_double(it->second.value, it->second.line);
      if (!(pt.alpha > 0.0)) fail(it->second.line, "alpha must be positive");
    }
    return pt;
  }
  if (rule.value == "uniform") {
    reject_keys(section, {"alpha", "seed"}, "for rule uniform");
    UniformCoupling u;
    if (auto it = section.find("j"); it != section.end()) {
      u.j = parse_double(it->second.value, it->second.line);
      if (!(u.j > 0.0)) fail(it->second.line, "j must be positive");
    }
    return u;
  }
  if (rule.value == "random_matched") {
    reject_keys(section, {"alpha", "j"}, "for rule random_matched");
    const RawValue& seed = require(section, "seed", "couplings");
    return RandomMatched{parse_seed(seed.value, seed.line)};
  }
  fail(rule.line, "unknown coupling rule `" + rule.value + "`");
}

InitialState parse_initial(const Section& section) {
  const int provided = static_cast<int>(section.count("site")) +
                       static_cast<int>(section.count("state")) +
                       static_cast<int>(section.count("amplitudes"));
  if (provided != 1)
    throw ParseError(
        "section [initial] needs exactly one of `site`, `state`, `amplitudes`");
  if (auto it = section.find("site"); it != section.end())
    return InputSite{static_cast<int>(parse_int(it->second.value, it->second.line))};
  if (auto it = section.find("state"); it != section.end()) {
    if (it->second.value == "plus") return NamedState::Plus;
    if (it->second.value == "minus") return NamedState::Minus;
    fail(it->second.line, "state must be plus or minus");
  }
  const RawValue& amps = section.at("amplitudes");
  return parse_amplitudes(amps.value, amps.line);
}

EventSchedule parse_events(const std::vector<std::pair<std::string, int>>& lines) {
  std::vector<Event> events;
  for (const auto& [content, line] : lines) {
    const std::vector<std::string> fields = split(content, ',');
    if (fields.size() < 3) fail(line, "expected `time, operation, site`");
    Event event;
    event.time = parse_double(fields[0], line);
    const int site = static_cast<int>(parse_int(fields[2], line));
    if (fields[1] == "phase_flip") {
      if (fields.size() != 3) fail(line, "phase_flip takes `time, phase_flip, site`");
      event.op = PhaseFlip{site};
    } else if (fields[1] == "local_phase") {
      if (fields.size() != 4)
        fail(line, "local_phase takes `time, local_phase, site, phi`");
      event.op = LocalPhase{site, parse_double(fields[3], line)};
    } else {
      fail(line, "unknown operation `" + fields[1] + "`");
    }
    events.push_back(event);
  }
  try {
    return EventSchedule(std::move(events));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("bad event list: ") + e.what());
  }
}

void check_site_range(int site, int n, const std::string& what) {
  if (site < 1 || site > n)
    throw ParseError(what + " site " + std::to_string(site) + " out of range 1.." +
                     std::to_string(n));
}

std::vector<std::string> column_names(const Scenario& s) {
  std::vector<std::string> names{"t"};
  for (int site : s.probability_sites) names.push_back("p_" + std::to_string(site));
  if (s.fidelity_plus) names.push_back("F_plus");
  if (s.fidelity_minus) names.push_back("F_minus");
  if (s.fidelity_target) names.push_back("F_target");
  if (s.eof_pair)
    names.push_back("EOF_" + std::to_string(s.eof_pair->first) + "_" +
                    std::to_string(s.eof_pair->second));
  for (int site : s.component_sites) {
    names.push_back("re_c_" + std::to_string(site));
    names.push_back("im_c_" + std::to_string(site));
  }
  return names;
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

SpinNetwork build_topology(const Topology& topology) {
  return std::visit(Overloaded{[](const PathTopology& p) { return build_path(p.n); },
                               [](const YTopology& y) { return build_y(y.l1, y.l2, y.l3); },
                               [](const StarTopology& s) { return build_star(s.m, s.l, s.p); },
                               [](const TreeTopology& t) {
                                 return build_tree(t.spec, t.transfer_timed);
                               }},
                    topology);
}

std::uint64_t scenario_seed(const Scenario& scenario) {
  if (const auto* rm = std::get_if<RandomMatched>(&scenario.rule)) return rm->seed;
  return 0;
}

int ResultTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

Scenario parse_scenario(const std::string& text) {
  const RawScenario raw = tokenize(text);
  if (raw.topology.empty() && raw.couplings.empty() && raw.run.empty())
    throw ParseError("empty scenario: missing required sections");

  Scenario s;
  s.source_text = text;
  s.topology = parse_topology(raw.topology);
  s.rule = parse_rule(raw.couplings);
  s.initial = parse_initial(raw.initial);
  s.schedule = parse_events(raw.event_lines);

  const RawValue& total = require(raw.run, "T", "run");
  s.total_time = parse_double(total.value, total.line);
  if (!(s.total_time > 0.0)) fail(total.line, "T must be positive");
  const RawValue& samples = require(raw.run, "samples", "run");
  s.n_samples = static_cast<int>(parse_int(samples.value, samples.line));
  if (s.n_samples < 2) fail(samples.line, "samples must be at least 2");
  if (auto it = raw.run.find("out"); it != raw.run.end()) s.output_path = it->second.value;
  if (auto it = raw.run.find("name"); it != raw.run.end()) s.name = it->second.value;

  if (auto it = raw.observables.find("sites"); it != raw.observables.end())
    s.probability_sites = parse_int_list(it->second.value, it->second.line);
  if (auto it = raw.observables.find("fidelity_plus"); it != raw.observables.end())
    s.fidelity_plus = parse_bool(it->second.value, it->second.line);
  if (auto it = raw.observables.find("fidelity_minus"); it != raw.observables.end())
    s.fidelity_minus = parse_bool(it->second.value, it->second.line);
  if (auto it = raw.observables.find("target"); it != raw.observables.end())
    s.fidelity_target = parse_amplitudes(it->second.value, it->second.line);
  if (auto it = raw.observables.find("eof"); it != raw.observables.end()) {
    const std::vector<int> pair = parse_int_list(it->second.value, it->second.line);
    if (pair.size() != 2 || pair[0] == pair[1])
      fail(it->second.line, "eof needs two distinct sites");
    s.eof_pair = std::make_pair(pair[0], pair[1]);
  }
  if (auto it = raw.observables.find("components"); it != raw.observables.end())
    s.component_sites = parse_int_list(it->second.value, it->second.line);
  if (auto it = raw.observables.find("revivals"); it != raw.observables.end()) {
    const std::vector<std::string> fields = split(it->second.value, ',');
    if (fields.size() != 2) fail(it->second.line, "revivals takes `column, threshold`");
    RevivalSpec spec;
    spec.column = fields[0];
    spec.threshold = parse_double(fields[1], it->second.line);
    if (!(spec.threshold > 0.0 && spec.threshold <= 1.0))
      fail(it->second.line, "revival threshold must lie in (0, 1]");
    s.revivals = spec;
  }

  // Semantic validation against the built topology. Applying the rule here
  // also surfaces timing violations and shape errors with the parse.
  SpinNetwork net = build_topology(s.topology);
  try {
    net = apply_rule(net, s.rule);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("coupling rule rejected: ") + e.what());
  }
  const int n = net.size();
  std::visit(Overloaded{[&](const InputSite& site) { check_site_range(site.site, n, "initial"); },
                        [&](NamedState) {
                          if (net.branch_ends().size() != 2)
                            throw ParseError(
                                "plus/minus initial states need exactly two branch ends");
                        },
                        [&](const TargetState& target) {
                          double norm2 = 0.0;
                          for (const auto& [site, amp] : target.amplitudes) {
                            check_site_range(site, n, "initial");
                            norm2 += std::norm(amp);
                          }
                          if (std::abs(norm2 - 1.0) > 1e-12)
                            throw ParseError("initial amplitudes are not normalized");
                        }},
             s.initial);
  for (int site : s.probability_sites) check_site_range(site, n, "probability");
  for (int site : s.component_sites) check_site_range(site, n, "component");
  if ((s.fidelity_plus || s.fidelity_minus) && net.branch_ends().size() != 2)
    throw ParseError("F_plus/F_minus need exactly two branch ends");
  if (s.fidelity_target) {
    double norm2 = 0.0;
    for (const auto& [site, amp] : s.fidelity_target->amplitudes) {
      check_site_range(site, n, "target");
      norm2 += std::norm(amp);
    }
    if (std::abs(norm2 - 1.0) > 1e-12)
      throw ParseError("target amplitudes are not normalized");
  }
  if (s.eof_pair) {
    check_site_range(s.eof_pair->first, n, "eof");
    check_site_range(s.eof_pair->second, n, "eof");
  }
  for (const Event& e : s.schedule.events()) {
    std::visit([&](const auto& op) { check_site_range(op.site, n, "event"); }, e.op);
    if (e.time > s.total_time) throw ParseError("event scheduled after the end of the run");
  }
  if (s.revivals) {
    const std::vector<std::string> names = column_names(s);
    if (std::find(names.begin(), names.end(), s.revivals->column) == names.end())
      throw ParseError("revival column `" + s.revivals->column +
                       "` is not among the requested observables");
  }
  return s;
}

ResultTable run_scenario(const Scenario& scenario) {
  SpinNetwork net = apply_rule(build_topology(scenario.topology), scenario.rule);
  const int n = net.size();

  const SubspaceState c0 = std::visit(
      Overloaded{[&](const InputSite& site) { return site_basis_state(n, site.site); },
                 [&](NamedState which) {
                   return target_to_state(which == NamedState::Plus ? plus_target(net)
                                                                    : minus_target(net),
                                          n);
                 },
                 [&](const TargetState& target) { return target_to_state(target, n); }},
      scenario.initial);

  const Trajectory traj =
      run_schedule(net, c0, scenario.schedule, scenario.total_time, scenario.n_samples);

  TargetState plus;
  TargetState minus;
  if (scenario.fidelity_plus) plus = plus_target(net);
  if (scenario.fidelity_minus) minus = minus_target(net);

  ResultTable table;
  table.columns = column_names(scenario);
  table.data.resize(scenario.n_samples, static_cast<int>(table.columns.size()));
  for (int i = 0; i < scenario.n_samples; ++i) {
    const SubspaceState& state = traj.states[static_cast<std::size_t>(i)];
    int col = 0;
    table.data(i, col++) = traj.times[i];
    for (int site : scenario.probability_sites)
      table.data(i, col++) = std::norm(state[site - 1]);
    if (scenario.fidelity_plus) table.data(i, col++) = fidelity(state, plus);
    if (scenario.fidelity_minus) table.data(i, col++) = fidelity(state, minus);
    if (scenario.fidelity_target)
      table.data(i, col++) = fidelity(state, *scenario.fidelity_target);
    if (scenario.eof_pair)
      table.data(i, col++) = eof(reduced_two_site_density(state, scenario.eof_pair->first,
                                                          scenario.eof_pair->second));
    for (int site : scenario.component_sites) {
      table.data(i, col++) = state[site - 1].real();
      table.data(i, col++) = state[site - 1].imag();
    }
  }

  table.metadata.emplace_back("spinweave_version", kVersion);
  table.metadata.emplace_back("name", scenario.name);
  table.metadata.emplace_back("seed", std::to_string(scenario_seed(scenario)));
  table.metadata.emplace_back("scenario", scenario.source_text);
  return table;
}

std::string to_csv(const ResultTable& table) {
  std::ostringstream out;
  for (const auto& [key, value] : table.metadata) {
    if (key == "scenario") {
      out << "# scenario-begin\n";
      std::istringstream lines(value);
      std::string line;
      while (std::getline(lines, line)) out << "# " << line << "\n";
      out << "# scenario-end\n";
    } else {
      out << "# " << key << ": " << value << "\n";
    }
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ",";
    out << table.columns[c];
  }
  out << "\n";
  for (Eigen::Index r = 0; r < table.data.rows(); ++r) {
    for (Eigen::Index c = 0; c < table.data.cols(); ++c) {
      if (c) out << ",";
      out << format_value(table.data(r, c));
    }
    out << "\n";
  }
  return out.str();
}

void write_csv(const ResultTable& table, const std::filesystem::path& path) {
  const std::string payload = to_csv(table);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << payload;
    if (!out) throw Error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

ResultTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  ResultTable table;
  std::string line;
  int line_no = 0;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      table.metadata.emplace_back("comment", line.substr(1));
      continue;
    }
    if (table.columns.empty()) {
      for (const std::string& name : split(line, ',')) table.columns.push_back(name);
      continue;
    }
    const std::vector<std::string> fields = split(line, ',');
    if (fields.size() != table.columns.size())
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(table.columns.size()) + " fields");
    std::vector<double> row;
    row.reserve(fields.size());
    for (const std::string& f : fields) row.push_back(parse_double(f, line_no));
    rows.push_back(std::move(row));
  }
  if (table.columns.empty()) throw ParseError("missing CSV header row");
  table.data.resize(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(table.columns.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      table.data(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return table;
}

namespace {

const char* kFourPi = "12.566370614359172";

std::string y_preset(const std::string& name, const std::string& comment, int l1, int l2,
                     int l3, const std::string& initial, const std::string& observables,
                     const std::string& extra_events = {}) {
  std::ostringstream out;
  out << "# " << comment << "\n"
      << "[topology]\n"
      << "family = y\n"
      << "l1 = " << l1 << "\n"
      << "l2 = " << l2 << "\n"
      << "l3 = " << l3 << "\n\n"
      << "[couplings]\n"
      << "rule = perfect_transfer\n"
      << "alpha = 1\n\n"
      << "[initial]\n"
      << initial << "\n";
  if (!extra_events.empty()) out << "\n[events]\n" << extra_events;
  out << "\n[run]\n"
      << "name = " << name << "\n"
      << "T = " << kFourPi << "\n"
      << "samples = 4001\n"
      << "out = " << name << ".csv\n\n"
      << "[observables]\n"
      << observables;
  return out.str();
}

std::string fig8_preset(const std::string& name, std::uint64_t seed) {
  // The drawn output-branch couplings fix the antisymmetric-sector
  // revival at 2*pi/sqrt(a^2 + b^2); T spans four of them so the grid
  // lands on each revival exactly.
  const SpinNetwork net = assign_random_matched(build_y(3, 3, 3), seed);
  const double a = net.coupling(9, 10);
  const double b = net.coupling(8, 9);
  const double revival = 2.0 * M_PI / std::hypot(a, b);
  std::ostringstream out;
  out << "# Y(3,3,3), couplings flat on (0,1] with mirrored output branches;\n"
      << "# the |-> state revives exactly while hub and input stay silent.\n"
      << "[topology]\n"
      << "family = y\n"
      << "l1 = 3\n"
      << "l2 = 3\n"
      << "l3 = 3\n\n"
      << "[couplings]\n"
      << "rule = random_matched\n"
      << "seed = " << seed << "\n\n"
      << "[initial]\n"
      << "state = minus\n\n"
      << "[run]\n"
      << "name = " << name << "\n"
      << "T = " << format_value(4.0 * revival) << "\n"
      << "samples = 4001\n"
      << "out = " << name << ".csv\n\n"
      << "[observables]\n"
      << "sites = 1, 2, 3, 4, 8, 9, 10\n"
      << "fidelity_minus = true\n"
      << "revivals = F_minus, 0.99\n";
  return out.str();
}

std::string fig9_preset() {
  std::ostringstream out;
  out << "# Y with a two-way bifurcation closing each output branch: the\n"
      << "# excitation arrives spread over the four final spins, 1/4 each.\n"
      << "[topology]\n"
      << "family = tree\n"
      << "spec = 3(2(1,1),2(1,1))\n"
      << "transfer_timed = true\n\n"
      << "[couplings]\n"
      << "rule = perfect_transfer\n"
      << "alpha = 1\n\n"
      << "[initial]\n"
      << "site = 1\n\n"
      << "[run]\n"
      << "name = fig9_bifurcation\n"
      << "T = " << kFourPi << "\n"
      << "samples = 4001\n"
      << "out = fig9_bifurcation.csv\n\n"
      << "[observables]\n"
      << "sites = 8, 9, 13, 14\n";
  return out.str();
}

}  // namespace

std::string preset_text(const std::string& name) {
  if (name == "fig4_333")
    return y_preset(name, "Y(3,3,3): transfer to the symmetric end pair and revivals.",
                    3, 3, 3, "site = 1",
                    "sites = 1, 7, 10\nfidelity_plus = true\nrevivals = F_plus, 0.99\n");
  if (name == "fig4_101010")
    return y_preset(name, "Y(10,10,10): longer arms narrow the transfer peaks.", 10, 10,
                    10, "site = 1",
                    "sites = 1, 21, 31\nfidelity_plus = true\nrevivals = F_plus, 0.99\n");
  if (name == "fig5_eof")
    return y_preset(name, "Y(3,3,3): entanglement of formation of the two branch ends.",
                    3, 3, 3, "site = 1", "eof = 7, 10\nrevivals = EOF_7_10, 0.99\n");
  if (name == "fig6_522")
    return y_preset(name, "Y(5,2,2): asymmetric arms still deliver the end pair state.",
                    5, 2, 2, "site = 1",
                    "sites = 1, 8, 10\nfidelity_plus = true\nrevivals = F_plus, 0.99\n");
  if (name == "fig6_711")
    return y_preset(name, "Y(7,1,1): the limiting asymmetric case.", 7, 1, 1, "site = 1",
                    "sites = 1, 9, 10\nfidelity_plus = true\nrevivals = F_plus, 0.99\n");
  if (name == "fig7_freeze_333")
    return y_preset(name,
                    "Y(3,3,3) started in |->: revivals every pi/2, silent hub and input.",
                    3, 3, 3, "state = minus",
                    "sites = 1, 2, 3, 4, 8, 9, 10\nfidelity_minus = true\n"
                    "revivals = F_minus, 0.99\n");
  if (name == "fig7_freeze_522")
    return y_preset(name,
                    "Y(5,2,2) started in |->: oscillation between the end pairs, with "
                    "real/imaginary components.",
                    5, 2, 2, "state = minus",
                    "sites = 6, 9, 10\nfidelity_minus = true\ncomponents = 7, 8, 9, 10\n"
                    "revivals = F_minus, 0.99\n");
  if (name == "fig7_freeze_711")
    return y_preset(name, "Y(7,1,1) started in |->: an exact eigenstate, frozen.", 7, 1,
                    1, "state = minus",
                    "sites = 8, 9, 10\nfidelity_minus = true\nrevivals = F_minus, 0.99\n");
  if (name == "fig8_random_A") return fig8_preset(name, 0xA);
  if (name == "fig8_random_B") return fig8_preset(name, 0xB);
  if (name == "fig9_bifurcation") return fig9_preset();
  throw InvalidArgument("unknown preset `" + name + "`");
}

std::vector<std::string> preset_member_names() {
  return {"fig4_333",        "fig4_101010",     "fig5_eof",
          "fig6_522",        "fig6_711",        "fig7_freeze_333",
          "fig7_freeze_522", "fig7_freeze_711", "fig8_random_A",
          "fig8_random_B",   "fig9_bifurcation"};
}

std::vector<std::string> preset_group_names() {
  return {"fig6_522_711", "fig7_freeze_333_522_711", "fig8_random_A_B"};
}

std::vector<Scenario> preset(const std::string& name) {
  std::vector<std::string> members;
  if (name == "fig6_522_711")
    members = {"fig6_522", "fig6_711"};
  else if (name == "fig7_freeze_333_522_711")
    members = {"fig7_freeze_333", "fig7_freeze_522", "fig7_freeze_711"};
  else if (name == "fig8_random_A_B")
    members = {"fig8_random_A", "fig8_random_B"};
  else
    members = {name};

  std::vector<Scenario> scenarios;
  scenarios.reserve(members.size());
  for (const std::string& member : members) {
    Scenario s = parse_scenario(preset_text(member));
    s.name = member;
    scenarios.push_back(std::move(s));
  }
  return scenarios;
}

}  // namespace spinweave
