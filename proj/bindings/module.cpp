#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "spinweave/couplings.hpp"
#include "spinweave/dynamics.hpp"
#include "spinweave/network.hpp"
#include "spinweave/observables.hpp"
#include "spinweave/oracle.hpp"
#include "spinweave/scenarios.hpp"
#include "spinweave/version.hpp"

namespace py = pybind11;
using namespace spinweave;

namespace {

EventSchedule schedule_from_tuples(const py::object& events) {
  std::vector<Event> list;
  for (const py::handle& item : events) {
    const py::sequence entry = py::reinterpret_borrow<py::sequence>(item);
    if (entry.size() < 3) throw InvalidArgument("event needs (time, op, site[, phi])");
    Event event;
    event.time = entry[0].cast<double>();
    const std::string op = entry[1].cast<std::string>();
    const int site = entry[2].cast<int>();
    if (op == "phase_flip") {
      event.op = PhaseFlip{site};
    } else if (op == "local_phase") {
      if (entry.size() != 4) throw InvalidArgument("local_phase needs (time, op, site, phi)");
      event.op = LocalPhase{site, entry[3].cast<double>()};
    } else {
      throw InvalidArgument("unknown event operation `" + op + "`");
    }
    list.push_back(event);
  }
  return EventSchedule(std::move(list));
}

TargetState target_from_pairs(
    const std::vector<std::pair<int, std::complex<double>>>& amplitudes) {
  TargetState target;
  target.amplitudes = amplitudes;
  return target;
}

std::string role_name(SiteRole role) {
  switch (role) {
    case SiteRole::Input: return "input";
    case SiteRole::Hub: return "hub";
    case SiteRole::Interior: return "interior";
    case SiteRole::BranchEnd: return "branch_end";
  }
  return "?";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Single-excitation dynamics on branched spin networks";
  m.attr("__version__") = kVersion;

  py::register_exception<ParseError>(m, "ScenarioParseError", PyExc_ValueError);
  py::register_exception<InvalidArgument>(m, "InvalidArgumentError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalValidityError",
                                         PyExc_ArithmeticError);

  py::class_<TreeSpec>(m, "TreeSpec")
      .def(py::init([](int segment, const std::vector<TreeSpec>& children) {
             return TreeSpec{segment, children};
           }),
           py::arg("segment"), py::arg("children") = std::vector<TreeSpec>{})
      .def_readwrite("segment", &TreeSpec::segment)
      .def_readwrite("children", &TreeSpec::children)
      .def("site_count", [](const TreeSpec& spec) { return tree_site_count(spec); });

  py::class_<SpinNetwork>(m, "SpinNetwork")
      .def_property_readonly("n_sites", &SpinNetwork::size)
      .def_property_readonly("input_site", &SpinNetwork::input_site)
      .def_property_readonly("hubs", &SpinNetwork::hubs)
      .def_property_readonly("branch_ends", &SpinNetwork::branch_ends)
      .def_property_readonly("branch_table", &SpinNetwork::branch_table)
      .def_property_readonly("edges",
                             [](const SpinNetwork& net) {
                               std::vector<std::tuple<int, int, double>> out;
                               for (const Edge& e : net.edges())
                                 out.emplace_back(e.a, e.b, e.coupling);
                               return out;
                             })
      .def("coupling", &SpinNetwork::coupling, py::arg("a"), py::arg("b"))
      .def("role", [](const SpinNetwork& net, int site) { return role_name(net.role(site)); },
           py::arg("site"))
      .def("onsite_energy", &SpinNetwork::onsite_energy, py::arg("site"))
      .def("with_couplings",
           [](const SpinNetwork& net, const std::vector<double>& couplings) {
             return net.with_couplings(couplings);
           },
           py::arg("couplings"))
      .def("to_text", &SpinNetwork::to_text)
      .def_static("from_text", &SpinNetwork::from_text, py::arg("text"))
      .def("__repr__", [](const SpinNetwork& net) {
        std::ostringstream out;
        out << "SpinNetwork(n_sites=" << net.size() << ", hubs=" << net.hubs().size()
            << ", branch_ends=" << net.branch_ends().size() << ")";
        return out.str();
      });

  m.def("build_path", &build_path, py::arg("n"));
  m.def("build_y", &build_y, py::arg("l1"), py::arg("l2"), py::arg("l3"));
  m.def("build_star", &build_star, py::arg("m"), py::arg("l"), py::arg("p"));
  m.def("build_tree", &build_tree, py::arg("spec"), py::arg("transfer_timed") = false);
  m.def("check_output_symmetry", &check_output_symmetry, py::arg("net"));

  py::class_<EffectiveChain>(m, "EffectiveChain")
      .def_readonly("length", &EffectiveChain::length)
      .def_readonly("couplings", &EffectiveChain::couplings)
      .def_readonly("column_map", &EffectiveChain::column_map);

  m.def("effective_chain", &effective_chain, py::arg("net"));
  m.def("assign_perfect_transfer", &assign_perfect_transfer, py::arg("net"),
        py::arg("alpha") = 1.0);
  m.def("assign_uniform", &assign_uniform, py::arg("net"), py::arg("j"));
  m.def("assign_random_matched", &assign_random_matched, py::arg("net"), py::arg("seed"));

  py::class_<SubspaceHamiltonian>(m, "SubspaceHamiltonian")
      .def(py::init<const SpinNetwork&>(), py::arg("net"))
      .def_property_readonly("dimension", &SubspaceHamiltonian::dimension)
      .def_property_readonly("matrix", &SubspaceHamiltonian::matrix)
      .def_property_readonly("eigenvalues", &SubspaceHamiltonian::eigenvalues)
      .def_property_readonly("eigenvectors", &SubspaceHamiltonian::eigenvectors)
      .def("propagate",
           [](const SubspaceHamiltonian& h, const SubspaceState& c0, double t) {
             return propagate(h, c0, t);
           },
           py::arg("state"), py::arg("t"));

  m.def("site_basis_state", &site_basis_state, py::arg("n"), py::arg("site"));
  m.def("propagate",
        [](const SpinNetwork& net, const SubspaceState& c0, double t) {
          return propagate(SubspaceHamiltonian(net), c0, t);
        },
        py::arg("net"), py::arg("state"), py::arg("t"));
  m.def("apply_event",
        [](const SubspaceState& state, const std::string& op, int site, double phi) {
          if (op == "phase_flip") return apply_event(state, PhaseFlip{site});
          if (op == "local_phase") return apply_event(state, LocalPhase{site, phi});
          throw InvalidArgument("unknown event operation `" + op + "`");
        },
        py::arg("state"), py::arg("op"), py::arg("site"), py::arg("phi") = 0.0);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("times", &Trajectory::times)
      .def_readonly("provenance", &Trajectory::provenance)
      .def_property_readonly("states", [](const Trajectory& traj) {
        Eigen::MatrixXcd out(traj.states.size(),
                             traj.states.empty() ? 0 : traj.states[0].size());
        for (std::size_t i = 0; i < traj.states.size(); ++i)
          out.row(static_cast<Eigen::Index>(i)) = traj.states[i].transpose();
        return out;
      });

  m.def("run_schedule",
        [](const SpinNetwork& net, const SubspaceState& c0, const py::object& events,
           double total_time, int n_samples) {
          return run_schedule(net, c0, schedule_from_tuples(events), total_time,
                              n_samples);
        },
        py::arg("net"), py::arg("state"), py::arg("events"), py::arg("T"),
        py::arg("samples"));

  py::class_<TargetState>(m, "TargetState")
      .def(py::init(&target_from_pairs), py::arg("amplitudes"))
      .def_readonly("amplitudes", &TargetState::amplitudes);

  m.def("make_w_target",
        [](const std::vector<int>& ends, const std::vector<std::complex<double>>& weights) {
          return make_w_target(ends, weights);
        },
        py::arg("ends"), py::arg("weights"));
  m.def("plus_target", &plus_target, py::arg("net"));
  m.def("minus_target", &minus_target, py::arg("net"));
  m.def("target_to_state", &target_to_state, py::arg("target"), py::arg("n"));

  m.def("site_probabilities", &site_probabilities, py::arg("state"));
  m.def("fidelity",
        py::overload_cast<const SubspaceState&, const TargetState&>(&fidelity),
        py::arg("state"), py::arg("target"));
  m.def("state_fidelity",
        py::overload_cast<const SubspaceState&, const SubspaceState&>(&fidelity),
        py::arg("state"), py::arg("target"));
  m.def("reduced_two_site_density", &reduced_two_site_density, py::arg("state"),
        py::arg("a"), py::arg("b"));
  m.def("concurrence", &concurrence, py::arg("rho"));
  m.def("tangle", &tangle, py::arg("rho"));
  m.def("eof", &eof, py::arg("rho"));
  m.def("eof_from_tangle", &eof_from_tangle, py::arg("tau"));

  py::class_<Peak>(m, "Peak")
      .def_readonly("time", &Peak::time)
      .def_readonly("value", &Peak::value)
      .def_readonly("fwhm", &Peak::fwhm)
      .def("__repr__", [](const Peak& p) {
        std::ostringstream out;
        out << "Peak(time=" << p.time << ", value=" << p.value << ", fwhm=" << p.fwhm
            << ")";
        return out.str();
      });

  m.def("detect_revivals",
        [](const std::vector<double>& times, const std::vector<double>& values,
           double threshold) { return detect_revivals(times, values, threshold); },
        py::arg("times"), py::arg("values"), py::arg("threshold"));

  py::class_<FullState>(m, "FullState")
      .def_readonly("n_sites", &FullState::n_sites)
      .def_readonly("amplitudes", &FullState::amplitudes)
      .def("weight_one_amplitude", &FullState::weight_one_amplitude, py::arg("site"))
      .def("leakage", &FullState::leakage);

  m.def("full_space_evolve", &full_space_evolve, py::arg("net"), py::arg("init_site"),
        py::arg("t"));
  m.def("analytic_three_site", &analytic_three_site, py::arg("a"), py::arg("b"),
        py::arg("t"));
  m.def("analytic_two_site", &analytic_two_site, py::arg("a"), py::arg("t"));

  py::class_<CrossCheckRow>(m, "CrossCheckRow")
      .def_readonly("name", &CrossCheckRow::name)
      .def_readonly("n_sites", &CrossCheckRow::n_sites)
      .def_readonly("max_amplitude_deviation", &CrossCheckRow::max_amplitude_deviation)
      .def_readonly("max_leakage", &CrossCheckRow::max_leakage);
  py::class_<CrossCheckReport>(m, "CrossCheckReport")
      .def_readonly("rows", &CrossCheckReport::rows)
      .def_readonly("max_amplitude_deviation", &CrossCheckReport::max_amplitude_deviation)
      .def_readonly("max_leakage", &CrossCheckReport::max_leakage);
  m.def("cross_check", &cross_check, py::arg("max_n") = 10);

  py::class_<Scenario>(m, "Scenario")
      .def_readonly("name", &Scenario::name)
      .def_readonly("total_time", &Scenario::total_time)
      .def_readonly("n_samples", &Scenario::n_samples)
      .def_readonly("output_path", &Scenario::output_path)
      .def_property_readonly("text",
                             [](const Scenario& s) { return s.source_text; })
      .def_property_readonly("seed", &scenario_seed)
      .def("__repr__", [](const Scenario& s) {
        return "Scenario(name=" + s.name + ")";
      });

  py::class_<ResultTable>(m, "ResultTable")
      .def_readonly("columns", &ResultTable::columns)
      .def_readonly("data", &ResultTable::data)
      .def_readonly("metadata", &ResultTable::metadata)
      .def("column_index", &ResultTable::column_index, py::arg("name"))
      .def("column",
           [](const ResultTable& table, const std::string& name) {
             const int c = table.column_index(name);
             if (c < 0) throw InvalidArgument("no column named `" + name + "`");
             return Eigen::VectorXd(table.data.col(c));
           },
           py::arg("name"));

  m.def("parse_scenario", &parse_scenario, py::arg("text"));
  m.def("run_scenario", &run_scenario, py::arg("scenario"));
  m.def("preset", &preset, py::arg("name"));
  m.def("preset_text", &preset_text, py::arg("name"));
  m.def("preset_member_names", &preset_member_names);
  m.def("preset_group_names", &preset_group_names);
  m.def("to_csv", &to_csv, py::arg("table"));
  m.def("write_csv", &write_csv, py::arg("table"), py::arg("path"));
  m.def("read_csv", &read_csv, py::arg("path"));
}
