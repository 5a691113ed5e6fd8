"""Finite groups as explicit multiplication tables.

Elements are integer indices into a label list, with the identity pinned at
index 0.  Conjugacy classes are computed eagerly on construction.  Cyclic
groups model the complex-unit groups: for orders 1, 2 and 4 every element
carries an exact Gaussian-rational value, and the group-algebra layer
identifies sums of units with their complex value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .scalars import GaussianRational

MAX_SYMMETRIC_DEGREE = 6


class Group:
    """A finite group given by labels and a Cayley table.

    Immutable after construction and safe to share between threads.
    Equality is structural (same labels and same table).
    """

    def __init__(
        self,
        labels: Sequence[str],
        table: Sequence[Sequence[int]],
        *,
        kind: str = "table",
        meta: Optional[dict] = None,
        unit_values: Optional[Sequence[GaussianRational]] = None,
        _trusted: bool = False,
    ):
        self.labels = tuple(str(x) for x in labels)
        self.order = len(self.labels)
        self.kind = kind
        self.meta = dict(meta or {})
        if self.order == 0:
            raise ValueError("a group needs at least the identity element")
        if len(set(self.labels)) != self.order:
            raise ValueError("element labels must be distinct")
        t = np.asarray(table, dtype=np.int32)
        if t.shape != (self.order, self.order):
            raise ValueError(
                f"multiplication table must be {self.order}x{self.order}, got {t.shape}"
            )
        if t.min() < 0 or t.max() >= self.order:
            raise ValueError("multiplication table entries out of range")
        self.table = t
        self.table.setflags(write=False)
        self._check_identity()
        self.inverse_table = self._compute_inverses()
        if not _trusted or self.order <= 24:
            self._check_associativity()
        self.classes, self.class_of_index = self._conjugacy_classes()
        if unit_values is not None:
            if len(unit_values) != self.order:
                raise ValueError("unit_values length must match group order")
            self.unit_values: Optional[tuple] = tuple(unit_values)
        else:
            self.unit_values = None
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        self._hash = hash((self.labels, self.table.tobytes()))

    # -- construction-time validation ------------------------------------

    def _check_identity(self):
        n = self.order
        if not (np.array_equal(self.table[0], np.arange(n))
                and np.array_equal(self.table[:, 0], np.arange(n))):
            raise ValueError(
                f"index 0 ({self.labels[0]!r}) is not a two-sided identity"
            )

    def _compute_inverses(self) -> np.ndarray:
        n = self.order
        inv = np.full(n, -1, dtype=np.int32)
        for a in range(n):
            hits = np.flatnonzero(self.table[a] == 0)
            if len(hits) != 1 or self.table[hits[0], a] != 0:
                raise ValueError(
                    f"element {self.labels[a]!r} has no two-sided inverse"
                )
            inv[a] = hits[0]
        inv.setflags(write=False)
        return inv

    def _check_associativity(self):
        # (a*b)*c == a*(b*c), chunked over a to bound memory.
        t = self.table
        n = self.order
        for a in range(n):
            left = t[t[a], :]          # [b, c] -> (a*b)*c
            right = t[a][t]            # [b, c] -> a*(b*c)
            if not np.array_equal(left, right):
                b, c = np.argwhere(left != right)[0]
                raise ValueError(
                    "multiplication table is not associative at "
                    f"({self.labels[a]!r}, {self.labels[b]!r}, {self.labels[c]!r})"
                )

    def _conjugacy_classes(self):
        n = self.order
        t = self.table
        inv = self.inverse_table
        hs = np.arange(n)
        class_of = np.full(n, -1, dtype=np.int32)
        classes = []
        for g in range(n):
            if class_of[g] >= 0:
                continue
            orbit = np.unique(t[t[hs, g], inv[hs]])
            class_of[orbit] = len(classes)
            classes.append(tuple(int(x) for x in orbit))
        class_of.setflags(write=False)
        return tuple(classes), class_of

    # -- element access ---------------------------------------------------

    @property
    def identity(self) -> "GroupElement":
        return GroupElement(self, 0)

    def element(self, ref) -> "GroupElement":
        """Resolve an element from an index, a label, or an element."""
        if isinstance(ref, GroupElement):
            if ref.group != self:
                raise ValueError("element belongs to a different group")
            return ref
        if isinstance(ref, str):
            if ref not in self._label_index:
                raise ValueError(f"unknown element label {ref!r}")
            return GroupElement(self, self._label_index[ref])
        idx = int(ref)
        if not 0 <= idx < self.order:
            raise ValueError(f"element index {idx} out of range")
        return GroupElement(self, idx)

    def elements(self):
        return (GroupElement(self, i) for i in range(self.order))

    def op_index(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv_index(self, a: int) -> int:
        return int(self.inverse_table[a])

    def involution_indices(self) -> tuple:
        """Indices of all g with g*g = identity (identity included)."""
        return tuple(
            a for a in range(self.order) if self.table[a, a] == 0
        )

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def spec_obj(self) -> dict:
        """JSON-serializable constructor spec for this group."""
        if self.kind == "cyclic":
            return {"kind": "cyclic", "n": self.meta["n"]}
        if self.kind == "symmetric":
            return {"kind": "symmetric", "n": self.meta["n"]}
        return {
            "kind": "table",
            "labels": list(self.labels),
            "table": [[int(x) for x in row] for row in self.table],
        }

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Group):
            return NotImplemented
        return self._hash == other._hash and self.labels == other.labels and np.array_equal(
            self.table, other.table
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.kind in ("cyclic", "symmetric"):
            return f"Group({self.kind} {self.meta['n']}, order {self.order})"
        return f"Group(table, order {self.order})"


@dataclass(frozen=True)
class GroupElement:
    """An element of a Group, identified by its index."""

    group: Group
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.group.order:
            raise ValueError(f"element index {self.index} out of range")

    @property
    def label(self) -> str:
        return self.group.labels[self.index]

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if not isinstance(other, GroupElement):
            return NotImplemented
        if self.group != other.group:
            raise ValueError("cannot multiply elements of different groups")
        return GroupElement(self.group, self.group.op_index(self.index, other.index))

    def inverse(self) -> "GroupElement":
        return GroupElement(self.group, self.group.inv_index(self.index))

    def is_identity(self) -> bool:
        return self.index == 0

    def is_involution(self) -> bool:
        return self.group.op_index(self.index, self.index) == 0

    def __repr__(self):
        return self.label


def op(a: GroupElement, b: GroupElement) -> GroupElement:
    return a * b


def inverse(a: GroupElement) -> GroupElement:
    return a.inverse()


def conjugacy_class_of(a: GroupElement) -> int:
    """Id of the conjugacy class containing the element."""
    return int(a.group.class_of_index[a.index])


# -- constructors ----------------------------------------------------------


def cyclic_group(n: int) -> Group:
    """The group of n-th roots of unity, labelled z^0 .. z^{n-1}.

    For n in {1, 2, 4} the elements carry exact Gaussian-rational values
    and group-algebra sums are identified with their complex value.
    """
    if n < 1:
        raise ValueError("cyclic group order must be >= 1")
    labels = [f"z^{k}" for k in range(n)]
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    units = None
    if n in (1, 2, 4):
        i = GaussianRational.i()
        root = {1: GaussianRational(1), 2: GaussianRational(-1), 4: i}[n]
        acc = GaussianRational(1)
        vals = []
        for _ in range(n):
            vals.append(acc)
            acc = acc * root
        units = vals
    return Group(labels, table, kind="cyclic", meta={"n": n},
                 unit_values=units, _trusted=True)


def _cycle_notation(perm: tuple) -> str:
    n = len(perm)
    seen = [False] * n
    cycles = []
    for start in range(n):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = perm[x]
        cycles.append(cyc)
    if not cycles:
        return "e"
    return "".join("(" + "".join(str(p + 1) for p in cyc) + ")" for cyc in cycles)


def symmetric_group(n: int) -> Group:
    """The symmetric group on n points in cycle notation, identity 'e'.

    Composition is (s*t)(x) = s(t(x)).  Degrees above 6 are refused: the
    dense Cayley table would be too large to keep in memory.
    """
    if n < 1:
        raise ValueError("symmetric group degree must be >= 1")
    if n > MAX_SYMMETRIC_DEGREE:
        raise ValueError(
            f"symmetric group degree {n} exceeds the supported limit "
            f"{MAX_SYMMETRIC_DEGREE} (dense Cayley table would be too large)"
        )
    perms = sorted(itertools.permutations(range(n)))
    index_of = {p: i for i, p in enumerate(perms)}
    m = len(perms)
    parr = np.asarray(perms, dtype=np.int32)
    table = np.empty((m, m), dtype=np.int32)
    for i in range(m):
        composed = parr[i][parr]          # row j: s_i o s_j
        for j in range(m):
            table[i, j] = index_of[tuple(int(x) for x in composed[j])]
    labels = [_cycle_notation(p) for p in perms]
    return Group(labels, table, kind="symmetric",
                 meta={"n": n, "perms": tuple(perms)}, _trusted=True)


def table_group(labels: Sequence[str], table: Sequence[Sequence[int]]) -> Group:
    """A group from an explicit Cayley table (fully validated)."""
    return Group(labels, table, kind="table")


def make_group(spec: dict) -> Group:
    """Build a group from a JSON-style spec.

    Accepted forms: {"kind": "cyclic", "n": 4}, {"kind": "symmetric", "n": 4},
    {"kind": "table", "labels": [...], "table": [[...]]}.
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValueError("group spec must be an object with a 'kind' field")
    kind = spec["kind"]
    if kind == "cyclic":
        return cyclic_group(int(spec["n"]))
    if kind == "symmetric":
        return symmetric_group(int(spec["n"]))
    if kind == "table":
        if "labels" not in spec or "table" not in spec:
            raise ValueError("table group spec needs 'labels' and 'table'")
        return table_group(spec["labels"], spec["table"])
    raise ValueError(f"unknown group kind {kind!r}")
