from atgames.clocks import (
    ClockValuation as ClockValuation,
    SimpleConstraint as SimpleConstraint,
    Zone as Zone,
    as_rational as as_rational,
    eval_constraint as eval_constraint,
)
from atgames.automaton import (
    Action as Action,
    Configuration as Configuration,
    Location as Location,
    Run as Run,
    RunStep as RunStep,
    TimedAction as TimedAction,
    TimedGameAutomaton as TimedGameAutomaton,
    ValidationReport as ValidationReport,
    apply_action as apply_action,
    delay as delay,
    timed_succ as timed_succ,
    validate as validate,
)
from atgames.regions import (
    ClockRegion as ClockRegion,
    Region as Region,
    action_successor as action_successor,
    enumerate_regions as enumerate_regions,
    future_chain as future_chain,
    in_closure as in_closure,
    in_region as in_region,
    is_thin as is_thin,
    reachable_regions as reachable_regions,
    region_of as region_of,
    representatives as representatives,
    reset_region as reset_region,
    time_successor as time_successor,
    zone_test as zone_test,
)
from atgames.boundary_graph import (
    BoundaryMove as BoundaryMove,
    BoundaryRegionGraph as BoundaryRegionGraph,
    BrgConfig as BrgConfig,
    BrgEdge as BrgEdge,
    boundary_times as boundary_times,
    corner_point_view as corner_point_view,
    delay_window as delay_window,
    explore as explore,
    successors as successors,
    to_mpg as to_mpg,
)
from atgames.mean_payoff_game import (
    MeanPayoffGame as MeanPayoffGame,
    MpgEdge as MpgEdge,
    MpgVertex as MpgVertex,
    PositionalStrategy as PositionalStrategy,
)
from atgames.mpg_solver import (
    MpgSolution as MpgSolution,
    brute_force_solve as brute_force_solve,
    karp_mean_cycle as karp_mean_cycle,
    round_to_cycle_mean as round_to_cycle_mean,
    solve as solve,
    value_iteration as value_iteration,
    verify as verify,
)
from atgames.strategies import (
    BoundaryStrategy as BoundaryStrategy,
    BoundaryTimedAction as BoundaryTimedAction,
    EpsilonStrategy as EpsilonStrategy,
    SimpleFunction as SimpleFunction,
    epsilon_close as epsilon_close,
    perturbed_delay as perturbed_delay,
)
from atgames.average_time_game import (
    SolvedGame as SolvedGame,
    decide as decide,
    extract_boundary_strategy as extract_boundary_strategy,
    solve_average_time as solve_average_time,
)
from atgames.simulation import (
    SimulationResult as SimulationResult,
    regional_constancy_probe as regional_constancy_probe,
    sample_states as sample_states,
    simple_time_probe as simple_time_probe,
    simulate as simulate,
)
from atgames.countdown import (
    CountdownGame as CountdownGame,
    CountdownSolution as CountdownSolution,
    CrossValidationReport as CrossValidationReport,
    cross_validate as cross_validate,
    dp_solve as dp_solve,
    reduce as reduce,
)
from atgames.data_reader import (
    DataReader as DataReader,
    JSONDataReader as JSONDataReader,
    YAMLDataReader as YAMLDataReader,
    get_data_reader as get_data_reader,
)
from atgames import errors as errors
