# %% [markdown]
# # Solving average-time games
#
# `solve_average_time` explores the boundary region graph from the start configuration, solves
# the mean-payoff game on it and returns a `SolvedGame`.

# %%
from atgames import extract_boundary_strategy, solve_average_time
from atgames.example_objects import get_example_two_player

automaton = get_example_two_player()
solved = solve_average_time(automaton)
print(solved)
print(solved.graph)
assert solved.value == 1

# %% [markdown]
# The graph can be inspected directly. Each edge is a boundary move: wait until a clock reaches
# an integer, then fire an action.

# %%
for edge in solved.graph.edges:
    print(edge.source, "->", edge.target, edge.move.label)

# %% [markdown]
# ## Strategies
#
# Optimal strategies of both players are read off the mean-payoff solution as boundary timed
# actions.

# %%
min_strategy = extract_boundary_strategy(solved, "min")
max_strategy = extract_boundary_strategy(solved, "max")
for strategy in [min_strategy, max_strategy]:
    for vertex_id, boundary_action in strategy.choices.items():
        print(strategy.player, vertex_id, boundary_action)

# %% [markdown]
# Boundary actions may sit on the edge of an open guard. `epsilon_close` turns such a strategy
# into one that stays strictly inside, losing at most ε per step.

# %%
from atgames import epsilon_close, simulate

result = simulate(
    automaton, solved.initial, epsilon_close(min_strategy, "1/10"), max_strategy, steps=20
)
print(f"average time per step over 20 steps: {result.average}")
assert result.average == solved.value

# %% [markdown]
# ## Countdown games
#
# Countdown games reduce to average-time games with two clocks. `cross_validate` solves a game
# both ways and compares the results.

# %%
from atgames import cross_validate
from atgames.example_objects import get_example_countdown

print(cross_validate(get_example_countdown(4)))
print(cross_validate(get_example_countdown(3)))
