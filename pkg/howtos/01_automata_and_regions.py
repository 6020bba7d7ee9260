# %% [markdown]
# # Timed automata and regions
#
# A timed game automaton is a pydantic model. It can be built from python objects, as below,
# or read from a JSON or YAML file (see the data reader in the API documentation).
# Clock constraints are written as strings such as `c<=1` or `c1-c2>0`; a conjunction is joined
# by `&&`. All times are exact fractions.

# %%
from atgames import TimedGameAutomaton, region_of, time_successor, validate

automaton = TimedGameAutomaton(
    clocks=["c"],
    bound=2,
    locations=[
        {"name": "l_min", "owner": "min", "state_constraint": "c<=1"},
        {"name": "l_max", "owner": "max"},
    ],
    actions=[
        {
            "name": "a",
            "resets": ["c"],
            "enabled": {"l_min": "c<=1", "l_max": "false"},
            "delta": {"l_min": "l_max", "l_max": "l_max"},
        },
        {
            "name": "b",
            "resets": ["c"],
            "enabled": {"l_max": "c<=2", "l_min": "false"},
            "delta": {"l_max": "l_min", "l_min": "l_min"},
        },
    ],
    initial={"location": "l_min", "valuation": {"c": 0}},
)
print(automaton)

# %% [markdown]
# Structural errors (unknown clocks, duplicate names) are rejected when the model is built.
# Semantic conditions, like every state having a legal move, are checked separately:

# %%
report = validate(automaton)
print(report)
assert report.is_valid

# %% [markdown]
# ## Moving through the automaton
#
# A run alternates delays and actions. `timed_succ` does both at once:

# %%
from atgames import TimedAction, timed_succ

state = automaton.initial
state = timed_succ(state, TimedAction(delay="1/2", action="a"), automaton)
print(state)

# %% [markdown]
# ## Regions
#
# Clock valuations are grouped into finitely many regions, given by the integer parts of the
# clocks and the order of their fractional parts. Letting time pass moves a valuation through a
# chain of regions.

# %%
region = region_of(automaton.initial.valuation)
while region is not None:
    print(region)
    region = time_successor(region)
