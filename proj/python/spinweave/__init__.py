"""Single-excitation dynamics on branched spin networks.

Builders create path, Y, star and bifurcation-tree topologies; coupling
rules set perfect-transfer, uniform or seeded random matched bonds; the
dynamics engine evolves site-basis amplitude vectors exactly by spectral
decomposition, with instantaneous phase flips between samples. Observables
cover site probabilities, target fidelities, two-site reduced densities,
Wootters concurrence and entanglement of formation, plus revival peak
detection. Sites are 1-based everywhere; amplitude arrays are ordinary
numpy vectors with entry k-1 for site k; times are in units of 1/alpha.
"""

from ._core import (
    CrossCheckReport,
    CrossCheckRow,
    EffectiveChain,
    FullState,
    InvalidArgumentError,
    NumericalValidityError,
    Peak,
    ResultTable,
    ScenarioParseError,
    Scenario,
    SpinNetwork,
    SubspaceHamiltonian,
    TargetState,
    Trajectory,
    TreeSpec,
    __version__,
    analytic_three_site,
    analytic_two_site,
    apply_event,
    assign_perfect_transfer,
    assign_random_matched,
    assign_uniform,
    build_path,
    build_star,
    build_tree,
    build_y,
    check_output_symmetry,
    concurrence,
    cross_check,
    detect_revivals,
    effective_chain,
    eof,
    eof_from_tangle,
    fidelity,
    full_space_evolve,
    make_w_target,
    minus_target,
    parse_scenario,
    plus_target,
    preset,
    preset_group_names,
    preset_member_names,
    preset_text,
    propagate,
    read_csv,
    reduced_two_site_density,
    run_scenario,
    run_schedule,
    site_basis_state,
    site_probabilities,
    state_fidelity,
    tangle,
    target_to_state,
    to_csv,
    write_csv,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
