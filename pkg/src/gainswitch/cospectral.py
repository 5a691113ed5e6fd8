"""Cospectrality machinery: trace-moment fingerprints and spectra comparison.

The fingerprint of a gain graph collects the class projections of the traces
of adjacency powers, computed with exact arithmetic.  Two graphs over the
same group compare as cospectral in the algebra sense when their
fingerprints agree; under a representation they compare through sorted
Hermitian spectra.  A brute-force closed-walk enumeration serves as an
independent oracle for the trace powers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .algebra import (
    ClassFunction,
    GAMatrix,
    GroupAlgebraElement,
    mu,
)
from .graphs import GainGraph
from .reps import Representation, hermitian_spectrum
from .scalars import GaussianRational

WALK_ORACLE_MAX_VERTICES = 8
WALK_ORACLE_MAX_LENGTH = 6


@dataclass(frozen=True)
class SpectralFingerprint:
    """Class projections of the first H trace moments of a gain graph."""

    group: object
    moments: Tuple[ClassFunction, ...]

    @property
    def depth(self) -> int:
        return len(self.moments)

    def __eq__(self, other):
        if not isinstance(other, SpectralFingerprint):
            return NotImplemented
        return self.group == other.group and self.moments == other.moments

    def __hash__(self):
        return hash((self.group, self.moments))

    def first_difference(self, other: "SpectralFingerprint") -> Optional[int]:
        """Smallest h where the moments differ, or None."""
        for h, (a, b) in enumerate(zip(self.moments, other.moments), start=1):
            if a != b:
                return h
        if self.depth != other.depth:
            return min(self.depth, other.depth) + 1
        return None

    def to_json_obj(self) -> list:
        out = []
        for h, m in enumerate(self.moments, start=1):
            classes = {
                self.group.labels[self.group.classes[c][0]]: str(v)
                for c, v in m.values
            }
            out.append({"h": h, "classes": classes})
        return out


def _collapsed_rows(g: GainGraph):
    """Adjacency over a complex-unit group as exact scalar entries."""
    units = g.group.unit_values
    zero = GaussianRational(0)
    rows = [[zero] * g.n for _ in range(g.n)]
    for (u, v, gain) in g.edges():
        rows[u][v] = rows[u][v] + units[gain.index]
        rows[v][u] = rows[v][u] + units[g.group.inv_index(gain.index)]
    return rows


def _collapsed_moments(g: GainGraph, depth: int) -> List[ClassFunction]:
    a = _collapsed_rows(g)
    n = g.n
    power = [row[:] for row in a]
    zero = GaussianRational(0)
    moments = []

    def trace(mat):
        acc = zero
        for i in range(n):
            acc = acc + mat[i][i]
        return acc

    moments.append(trace(power))
    for _ in range(depth - 1):
        nxt = []
        for i in range(n):
            prow = power[i]
            out_row = []
            for j in range(n):
                acc = zero
                for l in range(n):
                    pl = prow[l]
                    al = a[l][j]
                    if not pl.is_zero() and not al.is_zero():
                        acc = acc + pl * al
                out_row.append(acc)
            nxt.append(out_row)
        power = nxt
        moments.append(trace(power))
    out = []
    for value in moments:
        elem = GroupAlgebraElement.scalar(g.group, value)
        out.append(mu(elem))
    return out


def fingerprint(g: GainGraph, depth: Optional[int] = None) -> SpectralFingerprint:
    """Moments mu(Tr(A^h)) for h = 1..depth (default n * |G|), exact."""
    if depth is None:
        depth = default_moment_count(g)
    if depth < 1:
        raise ValueError("need at least one moment")
    if g.group.unit_values is not None:
        return SpectralFingerprint(g.group, tuple(_collapsed_moments(g, depth)))
    a = g.adjacency()
    moments = [mu(a.trace())]
    power = a
    for _ in range(depth - 1):
        power = power @ a
        moments.append(mu(power.trace()))
    return SpectralFingerprint(g.group, tuple(moments))


def default_moment_count(g: GainGraph) -> int:
    """n * |G|: enough to pin the regular-represented spectrum."""
    return max(1, g.n * g.group.order)


def g_cospectral(g1: GainGraph, g2: GainGraph, depth: Optional[int] = None) -> bool:
    """Equal fingerprints up to depth (default n * |G|), exact comparison."""
    if g1.group != g2.group:
        raise ValueError("graphs over different groups")
    if g1.n != g2.n:
        return False
    if depth is None:
        depth = default_moment_count(g1)
    return fingerprint(g1, depth) == fingerprint(g2, depth)


def pi_cospectral(
    g1: GainGraph, g2: GainGraph, rep: Representation, tol: float = 1e-8
) -> bool:
    """Sorted represented spectra agree within tol per eigenvalue."""
    if g1.group != g2.group:
        raise ValueError("graphs over different groups")
    if rep.group != g1.group:
        raise ValueError("representation over a different group")
    if g1.n != g2.n:
        return False
    s1 = hermitian_spectrum(rep.apply_mat(g1.adjacency()), tol=max(tol, 1e-10))
    s2 = hermitian_spectrum(rep.apply_mat(g2.adjacency()), tol=max(tol, 1e-10))
    return bool(np.abs(s1 - s2).max(initial=0.0) <= tol)


def walk_trace_oracle(g: GainGraph, h: int) -> GroupAlgebraElement:
    """Sum the gains of every closed walk of length h, by enumeration.

    Independent of the matrix-power path; sizes are capped to keep the
    enumeration honest but fast.
    """
    if h < 1:
        raise ValueError("walk length must be >= 1")
    if g.n > WALK_ORACLE_MAX_VERTICES or h > WALK_ORACLE_MAX_LENGTH:
        raise ValueError(
            f"oracle limited to n <= {WALK_ORACLE_MAX_VERTICES} and "
            f"h <= {WALK_ORACLE_MAX_LENGTH}"
        )
    group = g.group
    total: dict = {}

    def walk(start: int, current: int, gain_idx: int, steps_left: int):
        if steps_left == 0:
            if current == start:
                total[gain_idx] = total.get(gain_idx, 0) + 1
            return
        for w in g.neighbors(current):
            nxt = group.op_index(gain_idx, g.gain(current, w).index)
            walk(start, w, nxt, steps_left - 1)

    for v in range(g.n):
        walk(v, v, 0, h)
    return GroupAlgebraElement(group, total)


def certificate_check(a1: GAMatrix, a2: GAMatrix, q: GAMatrix, r: GAMatrix) -> bool:
    """Check the scalar-conjugation certificate for cospectrality.

    Demands: every entry of r is a complex multiple of the identity element,
    q r = r q = I, and a2 = q a1 r, all exactly.  A passing certificate
    implies equal fingerprints without computing them.
    """
    for mat in (a2, q, r):
        if mat.group != a1.group:
            raise ValueError("matrices over different groups")
    n = a1.rows
    if a1.cols != n or (a2.rows, a2.cols) != (n, n):
        raise ValueError("adjacency matrices must be square and equal-sized")
    if (q.rows, q.cols) != (n, n) or (r.rows, r.cols) != (n, n):
        raise ValueError("certificate matrices must match the adjacency size")
    for row in r.entries:
        for e in row:
            if not e.is_identity_multiple():
                return False
    eye = GAMatrix.identity(a1.group, n)
    if (q @ r) != eye or (r @ q) != eye:
        return False
    return (q @ a1) @ r == a2
