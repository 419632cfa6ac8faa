"""Waiting times for DNA words under mutation."""

from ._core import (
    BirthDeathChain,
    StepCapExceeded,
    approx3,
    build_match_chain,
    chain_summary,
    clump_size,
    condition_on_hitting,
    declumped_tv_bound,
    expected_almost_matches,
    expected_hitting_time,
    greens_function,
    headline,
    hitting_probability,
    initial_condition_bounds,
    is_repetitive,
    killed_fixation_chain,
    match_hitting_probabilities,
    match_stationary,
    moran_excursion_births,
    moran_excursion_simulate,
    overlap_shifts,
    rho1_rho2,
    run_cli,
    scan_all_words,
    simulate_segment_waiting,
    stationary_distribution,
    time_T_bounds,
)

__version__ = "0.1.0"
