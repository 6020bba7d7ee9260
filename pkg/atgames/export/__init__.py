from .data_writer import (
    dumps_json as dumps_json,
    write_json as write_json,
    write_lines as write_lines,
)
from .graphviz import brg_to_dot as brg_to_dot, mpg_to_dot as mpg_to_dot
from .helper import gv_quote as gv_quote, rational_to_str as rational_to_str
from .serialization import (
    automaton_to_dict as automaton_to_dict,
    brg_to_dict as brg_to_dict,
    configuration_to_dict as configuration_to_dict,
    countdown_report_to_dict as countdown_report_to_dict,
    countdown_solution_to_dict as countdown_solution_to_dict,
    countdown_to_dict as countdown_to_dict,
    mpg_to_dict as mpg_to_dict,
    solution_to_dict as solution_to_dict,
    strategy_to_dict as strategy_to_dict,
    trace_to_dict as trace_to_dict,
    values_to_dict as values_to_dict,
)
