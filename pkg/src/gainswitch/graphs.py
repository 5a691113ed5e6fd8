"""Gain graphs: undirected graphs with group-valued gains on oriented edges.

A gain on the arc (u, v) forces the inverse gain on (v, u); gains are stored
on the canonical orientation u < v so the law cannot be violated.  Vertices
are integers 0 .. n-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .algebra import GAMatrix, GroupAlgebraElement
from .groups import Group, GroupElement


class GainGraph:
    """An immutable gain graph over a finite group."""

    __slots__ = ("group", "n", "_gains", "_adj")

    def __init__(self, group: Group, n: int, gains: Dict[Tuple[int, int], int]):
        # gains: canonical arc (u, v) with u < v -> element index of psi(u, v)
        self.group = group
        self.n = n
        self._gains = dict(gains)
        adj = [set() for _ in range(n)]
        for (u, v) in self._gains:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = tuple(tuple(sorted(s)) for s in adj)

    # -- queries ------------------------------------------------------------

    def gain_index(self, u: int, v: int) -> Optional[int]:
        """Element index of psi(u, v), or None when not adjacent."""
        if u == v:
            return None
        if u < v:
            return self._gains.get((u, v))
        idx = self._gains.get((v, u))
        if idx is None:
            return None
        return int(self.group.inverse_table[idx])

    def gain(self, u: int, v: int) -> Optional[GroupElement]:
        """psi(u, v), or None when u and v are not adjacent."""
        idx = self.gain_index(u, v)
        if idx is None:
            return None
        return GroupElement(self.group, idx)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def edges(self):
        """Canonical edges (u, v, gain) with u < v, sorted."""
        for (u, v) in sorted(self._gains):
            yield u, v, GroupElement(self.group, self._gains[(u, v)])

    @property
    def edge_count(self) -> int:
        return len(self._gains)

    def underlying_edges(self) -> frozenset:
        return frozenset(self._gains)

    def adjacency(self) -> GAMatrix:
        """The n x n adjacency matrix over the group algebra."""
        z = GroupAlgebraElement.zero(self.group)
        rows = [[z] * self.n for _ in range(self.n)]
        for (u, v), idx in self._gains.items():
            rows[u][v] = GroupAlgebraElement(self.group, {idx: 1})
            rows[v][u] = GroupAlgebraElement(
                self.group, {self.group.inv_index(idx): 1}
            )
        return GAMatrix(self.group, rows)

    def psi(self, v: int, cell: Iterable[int]) -> GroupAlgebraElement:
        """Sum of the gains from v to its neighbours inside the cell."""
        acc: Dict[int, object] = {}
        for w in cell:
            idx = self.gain_index(v, w)
            if idx is not None:
                acc[idx] = acc.get(idx, 0) + 1
        return GroupAlgebraElement(self.group, acc)

    def psi_pair(self, v: int, cell_a: Iterable[int], cell_b: Iterable[int]) -> GroupAlgebraElement:
        return self.psi(v, cell_a) + self.psi(v, cell_b)

    def components(self) -> Tuple[Tuple[int, ...], ...]:
        """Connected components of the underlying graph, sorted."""
        seen = [False] * self.n
        comps = []
        for start in range(self.n):
            if seen[start]:
                continue
            stack = [start]
            seen[start] = True
            comp = []
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self._adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(tuple(sorted(comp)))
        return tuple(sorted(comps))

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def degree_sequence(self) -> Tuple[int, ...]:
        return tuple(sorted(len(a) for a in self._adj))

    def relabel(self, perm: Sequence[int]) -> "GainGraph":
        """Image under the vertex bijection v -> perm[v]."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("not a permutation of the vertex set")
        gains: Dict[Tuple[int, int], int] = {}
        for (u, v), idx in self._gains.items():
            a, b = perm[u], perm[v]
            if a < b:
                gains[(a, b)] = idx
            else:
                gains[(b, a)] = self.group.inv_index(idx)
        return GainGraph(self.group, self.n, gains)

    def __eq__(self, other):
        if not isinstance(other, GainGraph):
            return NotImplemented
        return (
            self.group == other.group
            and self.n == other.n
            and self._gains == other._gains
        )

    def __hash__(self):
        return hash((self.group, self.n, tuple(sorted(self._gains.items()))))

    def __repr__(self):
        return f"GainGraph(n={self.n}, edges={self.edge_count}, group={self.group!r})"


def build_gain_graph(group: Group, n: int, edges: Iterable[tuple]) -> GainGraph:
    """Build a gain graph from (u, v, gain) triples.

    Gains may be GroupElements, labels, or element indices.  Loops and
    conflicting duplicate edges are rejected; giving both orientations is
    allowed when the gains are consistent with the inverse law.
    """
    if n < 0:
        raise ValueError("vertex count must be >= 0")
    gains: Dict[Tuple[int, int], int] = {}
    for (u, v, raw) in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise ValueError(f"loop at vertex {u} is not allowed")
        g = group.element(raw)
        if u < v:
            key, idx = (u, v), g.index
        else:
            key, idx = (v, u), group.inv_index(g.index)
        if key in gains and gains[key] != idx:
            raise ValueError(
                f"conflicting gains for edge {key}: "
                f"{group.labels[gains[key]]} vs {group.labels[idx]}"
            )
        gains[key] = idx
    return GainGraph(group, n, gains)


@dataclass(frozen=True)
class SwitchingFunction:
    """A vertex-indexed family of group elements f: V -> G."""

    group: Group
    values: Tuple[GroupElement, ...]

    def __post_init__(self):
        for g in self.values:
            if g.group != self.group:
                raise ValueError("switching values must lie in the graph's group")

    @classmethod
    def from_values(cls, group: Group, values: Sequence) -> "SwitchingFunction":
        return cls(group, tuple(group.element(v) for v in values))

    @classmethod
    def identity(cls, group: Group, n: int) -> "SwitchingFunction":
        return cls(group, tuple(group.identity for _ in range(n)))

    def __call__(self, v: int) -> GroupElement:
        return self.values[v]

    def compose(self, other: "SwitchingFunction") -> "SwitchingFunction":
        """Pointwise product v -> self(v) * other(v)."""
        if len(self.values) != len(other.values):
            raise ValueError("switching functions of different sizes")
        return SwitchingFunction(
            self.group, tuple(a * b for a, b in zip(self.values, other.values))
        )

    def diagonal(self, n: int) -> GAMatrix:
        """The diagonal matrix F with F[v][v] = f(v)."""
        if len(self.values) != n:
            raise ValueError("size mismatch")
        z = GroupAlgebraElement.zero(self.group)
        rows = [[z] * n for _ in range(n)]
        for v, g in enumerate(self.values):
            rows[v][v] = GroupAlgebraElement.from_element(g)
        return GAMatrix(self.group, rows)


def apply_switching(g: GainGraph, f: SwitchingFunction) -> GainGraph:
    """Switch gains: psi'(u, v) = f(u)^{-1} psi(u, v) f(v)."""
    if len(f.values) != g.n:
        raise ValueError(f"switching function covers {len(f.values)} of {g.n} vertices")
    if f.group != g.group:
        raise ValueError("switching function over a different group")
    group = g.group
    gains: Dict[Tuple[int, int], int] = {}
    for (u, v), idx in g._gains.items():
        new = group.op_index(
            group.op_index(group.inv_index(f.values[u].index), idx),
            f.values[v].index,
        )
        gains[(u, v)] = new
    return GainGraph(group, g.n, gains)


def adjacency(g: GainGraph) -> GAMatrix:
    return g.adjacency()


def psi(g: GainGraph, v: int, cell: Iterable[int]) -> GroupAlgebraElement:
    return g.psi(v, cell)


def psi_pair(g: GainGraph, v: int, cell_a, cell_b) -> GroupAlgebraElement:
    return g.psi_pair(v, cell_a, cell_b)
