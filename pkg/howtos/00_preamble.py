# %% [markdown]
# # About the HOWTOs
#
# ## Scope
#
# These HOWTOs introduce the parts of the atgames package, ordered from the automaton model up to
# the solvers. They are meant as a first overview. For reference, please refer to the API
# documentation.
#
# ## Levels of integration
#
# Most users only need three calls: read an automaton from a file, solve it, and extract the
# strategies. Each step is built from smaller pieces (regions, the boundary region graph, the
# mean-payoff solver) which can also be used on their own.
# The command line tool `atgames` wraps the same functions for use without Python.
