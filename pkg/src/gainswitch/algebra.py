"""Exact arithmetic in group algebras and for matrices over them.

Elements are finitely supported maps from group elements to exact Gaussian
rationals.  Values are stored formally (one coefficient per group element);
equality is the algebra's: over a complex-unit group (cyclic of order 1, 2
or 4) two sums are equal when their complex values coincide, otherwise
coefficientwise.  The matrix product never reorders factors: the algebra is
noncommutative for nonabelian groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .groups import Group, GroupElement
from .scalars import GaussianRational

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)


def _as_scalar(c) -> GaussianRational:
    return c if isinstance(c, GaussianRational) else GaussianRational.coerce(c)


class GroupAlgebraElement:
    """A formal sum of group elements with Gaussian-rational coefficients."""

    __slots__ = ("group", "terms", "_canon")

    def __init__(self, group: Group, terms: Optional[Dict[int, GaussianRational]] = None):
        self.group = group
        pruned: Dict[int, GaussianRational] = {}
        if terms:
            for idx, c in terms.items():
                c = _as_scalar(c)
                if not c.is_zero():
                    if not 0 <= idx < group.order:
                        raise ValueError(f"term index {idx} out of range")
                    pruned[int(idx)] = c
        self.terms = pruned
        self._canon = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, group: Group) -> "GroupAlgebraElement":
        return cls(group)

    @classmethod
    def one(cls, group: Group) -> "GroupAlgebraElement":
        return cls(group, {0: _ONE})

    @classmethod
    def from_element(cls, g: GroupElement, coeff=1) -> "GroupAlgebraElement":
        return cls(g.group, {g.index: _as_scalar(coeff)})

    @classmethod
    def scalar(cls, group: Group, c) -> "GroupAlgebraElement":
        """A complex multiple of the identity element."""
        return cls(group, {0: _as_scalar(c)})

    # -- structure ----------------------------------------------------------

    def coeff(self, idx: int) -> GaussianRational:
        return self.terms.get(idx, _ZERO)

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(sorted(self.terms))

    def is_zero(self) -> bool:
        if self.group.unit_values is not None:
            return self._canonical()[1].is_zero()
        return not self.terms

    def canonical_terms(self) -> Dict[int, GaussianRational]:
        """Stored form reduced to the algebra's canonical representative.

        Over a complex-unit group everything collapses onto the identity
        element; otherwise this is just the pruned term map.
        """
        if self.group.unit_values is None:
            return dict(self.terms)
        val = self._canonical()[1]
        return {} if val.is_zero() else {0: val}

    def is_identity_multiple(self) -> bool:
        """Whether the value is a complex multiple of the identity element."""
        return set(self.canonical_terms()) <= {0}

    def identity_coefficient(self) -> GaussianRational:
        """The scalar c with value c*1_G; raises if not such a multiple."""
        canon = self.canonical_terms()
        if not canon:
            return _ZERO
        if set(canon) != {0}:
            raise ValueError("value is not a multiple of the identity element")
        return canon[0]

    def _canonical(self):
        if self._canon is None:
            units = self.group.unit_values
            if units is None:
                key = ("f", tuple(sorted(self.terms.items())))
            else:
                val = _ZERO
                for idx, c in self.terms.items():
                    val = val + c * units[idx]
                key = ("u", val)
            self._canon = key
        return self._canon

    # -- arithmetic ----------------------------------------------------------

    def _require_same_group(self, other: "GroupAlgebraElement"):
        if self.group != other.group:
            raise ValueError("operands belong to different groups")

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        self._require_same_group(other)
        out = dict(self.terms)
        for idx, c in other.terms.items():
            out[idx] = out.get(idx, _ZERO) + c
        return GroupAlgebraElement(self.group, out)

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        self._require_same_group(other)
        out = dict(self.terms)
        for idx, c in other.terms.items():
            out[idx] = out.get(idx, _ZERO) - c
        return GroupAlgebraElement(self.group, out)

    def __neg__(self) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.group, {i: -c for i, c in self.terms.items()})

    def scale(self, c) -> "GroupAlgebraElement":
        c = _as_scalar(c)
        return GroupAlgebraElement(
            self.group, {i: v * c for i, v in self.terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            self._require_same_group(other)
            table = self.group.table
            out: Dict[int, GaussianRational] = {}
            for ix, cx in self.terms.items():
                row = table[ix]
                for iy, cy in other.terms.items():
                    k = int(row[iy])
                    prod = cx * cy
                    if k in out:
                        out[k] = out[k] + prod
                    else:
                        out[k] = prod
            return GroupAlgebraElement(self.group, out)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def star(self) -> "GroupAlgebraElement":
        """The *-involution: conjugate coefficients, invert elements."""
        inv = self.group.inverse_table
        return GroupAlgebraElement(
            self.group, {int(inv[i]): c.conjugate() for i, c in self.terms.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        if self.group != other.group:
            return False
        return self._canonical() == other._canonical()

    def __hash__(self):
        canon = self._canonical()
        if canon[0] == "f":
            return hash((self.group, canon[0], canon[1]))
        return hash((self.group, canon[0], canon[1]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for idx in sorted(self.terms):
            c = self.terms[idx]
            label = self.group.labels[idx]
            if c == 1:
                parts.append(label)
            elif c == -1:
                parts.append(f"-{label}")
            else:
                cs = str(c)
                if ("+" in cs[1:]) or ("-" in cs[1:]):
                    cs = f"({cs})"
                parts.append(f"{cs}*{label}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"<{self} over {self.group!r}>"


def ga_add(x: GroupAlgebraElement, y: GroupAlgebraElement) -> GroupAlgebraElement:
    return x + y


def ga_scale(x: GroupAlgebraElement, c) -> GroupAlgebraElement:
    return x.scale(c)


def ga_mul(x: GroupAlgebraElement, y: GroupAlgebraElement) -> GroupAlgebraElement:
    return x * y


def star(x: GroupAlgebraElement) -> GroupAlgebraElement:
    return x.star()


@dataclass(frozen=True)
class ClassFunction:
    """A function on conjugacy classes; absent classes count as zero."""

    group: Group
    values: tuple  # tuple of (class_id, GaussianRational), sorted, no zeros

    @classmethod
    def from_dict(cls, group: Group, values: Dict[int, GaussianRational]) -> "ClassFunction":
        pruned = tuple(
            (int(c), v) for c, v in sorted(values.items()) if not _as_scalar(v).is_zero()
        )
        for c, _ in pruned:
            if not 0 <= c < len(group.classes):
                raise ValueError(f"class id {c} out of range")
        return cls(group, pruned)

    def value(self, class_id: int) -> GaussianRational:
        for c, v in self.values:
            if c == class_id:
                return v
        return _ZERO

    def _canonical(self):
        units = self.group.unit_values
        if units is None:
            return ("f", self.values)
        total = _ZERO
        for c, v in self.values:
            rep = self.group.classes[c][0]
            total = total + v * units[rep]
        return ("u", total)

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        if self.group != other.group:
            return False
        return self._canonical() == other._canonical()

    def __hash__(self):
        return hash((self.group, self._canonical()))

    def __str__(self):
        if not self.values:
            return "0"
        return ", ".join(
            f"[{self.group.labels[self.group.classes[c][0]]}]: {v}"
            for c, v in self.values
        )


def mu(x: GroupAlgebraElement) -> ClassFunction:
    """Project onto class functions: sum coefficients over each class."""
    sums: Dict[int, GaussianRational] = {}
    class_of = x.group.class_of_index
    for idx, c in x.terms.items():
        cid = int(class_of[idx])
        sums[cid] = sums.get(cid, _ZERO) + c
    return ClassFunction.from_dict(x.group, sums)


class GAMatrix:
    """A dense matrix over a group algebra."""

    __slots__ = ("group", "rows", "cols", "entries")

    def __init__(self, group: Group, entries: Sequence[Sequence[GroupAlgebraElement]]):
        self.group = group
        rows = tuple(tuple(row) for row in entries)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and column")
        ncols = len(rows[0])
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged matrix rows")
            for e in row:
                if not isinstance(e, GroupAlgebraElement) or e.group != group:
                    raise ValueError("entries must be algebra elements over one group")
        self.rows = len(rows)
        self.cols = ncols
        self.entries = rows

    @classmethod
    def zero(cls, group: Group, rows: int, cols: Optional[int] = None) -> "GAMatrix":
        cols = rows if cols is None else cols
        z = GroupAlgebraElement.zero(group)
        return cls(group, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, group: Group, n: int) -> "GAMatrix":
        z = GroupAlgebraElement.zero(group)
        one = GroupAlgebraElement.one(group)
        return cls(group, [[one if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def ones(cls, group: Group, rows: int, cols: Optional[int] = None) -> "GAMatrix":
        cols = rows if cols is None else cols
        one = GroupAlgebraElement.one(group)
        return cls(group, [[one] * cols for _ in range(rows)])

    def entry(self, i: int, j: int) -> GroupAlgebraElement:
        return self.entries[i][j]

    def __add__(self, other: "GAMatrix") -> "GAMatrix":
        self._same_shape(other)
        return GAMatrix(self.group, [
            [a + b for a, b in zip(ra, rb)]
            for ra, rb in zip(self.entries, other.entries)
        ])

    def __sub__(self, other: "GAMatrix") -> "GAMatrix":
        self._same_shape(other)
        return GAMatrix(self.group, [
            [a - b for a, b in zip(ra, rb)]
            for ra, rb in zip(self.entries, other.entries)
        ])

    def scale(self, c) -> "GAMatrix":
        return GAMatrix(self.group, [[e.scale(c) for e in row] for row in self.entries])

    def __matmul__(self, other: "GAMatrix") -> "GAMatrix":
        if not isinstance(other, GAMatrix):
            return NotImplemented
        if self.group != other.group:
            raise ValueError("matrices over different groups")
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}"
            )
        bt = list(zip(*other.entries))  # columns of other
        out = []
        for row in self.entries:
            out_row = []
            for col in bt:
                acc = GroupAlgebraElement.zero(self.group)
                for a, b in zip(row, col):
                    if a.terms and b.terms:
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return GAMatrix(self.group, out)

    def trace(self) -> GroupAlgebraElement:
        if self.rows != self.cols:
            raise ValueError("trace requires a square matrix")
        acc = GroupAlgebraElement.zero(self.group)
        for i in range(self.rows):
            acc = acc + self.entries[i][i]
        return acc

    def star(self) -> "GAMatrix":
        """Conjugate transpose with the algebra involution applied entrywise."""
        return GAMatrix(self.group, [
            [self.entries[j][i].star() for j in range(self.rows)]
            for i in range(self.cols)
        ])

    def _same_shape(self, other: "GAMatrix"):
        if self.group != other.group:
            raise ValueError("matrices over different groups")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def __eq__(self, other):
        if not isinstance(other, GAMatrix):
            return NotImplemented
        if self.group != other.group or (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(
            a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)
        )

    def __hash__(self):
        return hash((self.group, self.rows, self.cols,
                     tuple(e._canonical() for row in self.entries for e in row)))

    def __str__(self):
        cells = [[str(e) for e in row] for row in self.entries]
        width = max(len(c) for row in cells for c in row)
        return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)


def mat_mul(a: GAMatrix, b: GAMatrix) -> GAMatrix:
    return a @ b


def mat_trace(a: GAMatrix) -> GroupAlgebraElement:
    return a.trace()


def mat_star(a: GAMatrix) -> GAMatrix:
    return a.star()


def structured(group: Group, n: int, kind: str) -> GAMatrix:
    """The identity or all-ones n x n matrix over the group algebra."""
    if n < 1:
        raise ValueError("matrix size must be >= 1")
    if kind == "identity":
        return GAMatrix.identity(group, n)
    if kind == "all-ones":
        return GAMatrix.ones(group, n)
    raise ValueError(f"unknown structured matrix kind {kind!r}")
