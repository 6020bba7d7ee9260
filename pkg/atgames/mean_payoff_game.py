"""Home to finite mean-payoff games and positional strategies."""

from typing import Literal, Union

from pydantic import BaseModel as PydanticBaseModel, ConfigDict, PrivateAttr, model_validator

Owner = Literal["min", "max"]
VertexId = Union[int, str]


class MpgVertex(PydanticBaseModel):
    model_config = ConfigDict(frozen=True)

    id: VertexId
    owner: Owner


class MpgEdge(PydanticBaseModel):
    model_config = ConfigDict(frozen=True)

    src: VertexId
    dst: VertexId
    weight: int


class MeanPayoffGame(PydanticBaseModel):
    """A finite weighted game graph. Min minimises, Max maximises the limit average weight.

    Edges are identified by their position in ``edges``.

    **Example**

        >>> from atgames import MeanPayoffGame
        >>> game = MeanPayoffGame(
        >>>     vertices=[{"id": "u", "owner": "min"}, {"id": "v", "owner": "max"}],
        >>>     edges=[
        >>>         {"src": "u", "dst": "v", "weight": 1},
        >>>         {"src": "v", "dst": "u", "weight": 3},
        >>>     ],
        >>> )
    """

    model_config = ConfigDict(frozen=True)

    vertices: list[MpgVertex]
    edges: list[MpgEdge]

    _owners: dict = PrivateAttr(default_factory=dict)
    _out_edges: dict = PrivateAttr(default_factory=dict)

    @model_validator(mode="after")
    def is_well_formed(self):
        ids = [vertex.id for vertex in self.vertices]
        if not ids:
            raise ValueError("A mean-payoff game needs at least one vertex.")
        if len(set(ids)) != len(ids):
            raise ValueError("Vertex ids must be unique.")
        known = set(ids)
        for edge_id, edge in enumerate(self.edges):
            if edge.src not in known or edge.dst not in known:
                raise ValueError(
                    f"Edge {edge_id} ({edge.src} -> {edge.dst}) uses an unknown vertex."
                )
        sources = {edge.src for edge in self.edges}
        dead_ends = [vertex_id for vertex_id in ids if vertex_id not in sources]
        if dead_ends:
            raise ValueError(f"Vertices without outgoing edges: {dead_ends}")
        return self

    def model_post_init(self, __context):
        self._owners = {vertex.id: vertex.owner for vertex in self.vertices}
        self._out_edges = {vertex.id: [] for vertex in self.vertices}
        for edge_id, edge in enumerate(self.edges):
            self._out_edges[edge.src].append(edge_id)

    @property
    def ids(self) -> list[VertexId]:
        return [vertex.id for vertex in self.vertices]

    def owner(self, vertex_id: VertexId) -> Owner:
        return self._owners[vertex_id]

    def out_edges(self, vertex_id: VertexId) -> list[int]:
        return self._out_edges[vertex_id]

    def playernodes(self, owner: Owner) -> list[VertexId]:
        return [vertex.id for vertex in self.vertices if vertex.owner == owner]

    @property
    def max_abs_weight(self) -> int:
        return max((abs(edge.weight) for edge in self.edges), default=0)

    def scaled(self, factor: int) -> "MeanPayoffGame":
        if factor <= 0:
            raise ValueError("Weights can only be scaled by a positive integer.")
        return MeanPayoffGame(
            vertices=self.vertices,
            edges=[edge.model_copy(update={"weight": edge.weight * factor}) for edge in self.edges],
        )

    def __str__(self):
        return f"MeanPayoffGame with {len(self.vertices)} vertices and {len(self.edges)} edges"


class PositionalStrategy(PydanticBaseModel):
    """One edge id per vertex of the player."""

    model_config = ConfigDict(frozen=True)

    player: Owner
    choices: dict[VertexId, int]

    def check(self, game: MeanPayoffGame):
        """Raise a ValueError unless the strategy is total on the player's vertices and only
        picks their own outgoing edges."""
        for vertex_id in game.playernodes(self.player):
            if vertex_id not in self.choices:
                raise ValueError(f"Strategy of {self.player} has no choice at vertex {vertex_id}.")
            if self.choices[vertex_id] not in game.out_edges(vertex_id):
                raise ValueError(
                    f"Strategy of {self.player} picks edge {self.choices[vertex_id]}, "
                    f"which does not leave vertex {vertex_id}."
                )

    def restricted_edges(self, game: MeanPayoffGame) -> list[int]:
        """Edge ids left when this player follows the strategy and the opponent is free."""
        edge_ids = []
        for vertex_id in game.ids:
            if game.owner(vertex_id) == self.player:
                edge_ids.append(self.choices[vertex_id])
            else:
                edge_ids.extend(game.out_edges(vertex_id))
        return edge_ids
