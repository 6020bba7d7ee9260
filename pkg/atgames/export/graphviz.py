"""DOT renderings of boundary region graphs and mean-payoff games.

Both functions yield the DOT text line by line; join them or pass them to
:py:func:`atgames.export.write_lines`.
"""

from typing import Iterator, Optional

from ..boundary_graph import BoundaryRegionGraph
from ..mean_payoff_game import MeanPayoffGame, PositionalStrategy
from .helper import gv_quote, rational_to_str

_SHAPES = {"min": "ellipse", "max": "box"}


def brg_to_dot(graph: BoundaryRegionGraph) -> Iterator[str]:
    """Vertices are labeled ``loc | valuation | region``, edges ``t=b-c via R'', a``.
    Min vertices are ellipses, Max vertices boxes; the start vertex is drawn bold."""
    yield "digraph brg {\n"
    for vertex_id, vertex in enumerate(graph.vertices):
        style = " style=bold" if vertex_id == graph.initial else ""
        yield (
            f"  {vertex_id} [shape={_SHAPES[graph.owner(vertex_id)]}{style} "
            f"label={gv_quote(vertex)}];\n"
        )
    for edge in graph.edges:
        yield f"  {edge.source} -> {edge.target} [label={gv_quote(edge.move.label)}];\n"
    yield "}\n"


def mpg_to_dot(
    game: MeanPayoffGame,
    values: Optional[dict] = None,
    strategies: tuple[PositionalStrategy, ...] = (),
) -> Iterator[str]:
    """Edges chosen by one of the given strategies are drawn bold."""
    chosen = {edge_id for strategy in strategies for edge_id in strategy.choices.values()}
    yield "digraph mpg {\n"
    for vertex in game.vertices:
        label = str(vertex.id)
        if values is not None:
            label += f" | value {rational_to_str(values[vertex.id])}"
        yield (
            f"  {gv_quote(vertex.id)} [shape={_SHAPES[vertex.owner]} label={gv_quote(label)}];\n"
        )
    for edge_id, edge in enumerate(game.edges):
        style = " style=bold" if edge_id in chosen else ""
        yield (
            f"  {gv_quote(edge.src)} -> {gv_quote(edge.dst)} "
            f"[label={gv_quote(edge.weight)}{style}];\n"
        )
    yield "}\n"
