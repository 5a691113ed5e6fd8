"""WQH partitions: verification, the switching matrix, and the switched graph.

An ordered partition {C_0, C_1, ..., C_2k} with paired cells of equal size is
G-WQH when the cell sums Psi are constant on cells, swap across each pair,
and every C_0 vertex resolves against each pair either by equal sums
(case a) or by constant gains to both cells (case b).  The pi-relaxation
compares the cell-sum conditions through a unitary representation; the C_0
condition stays exact.

The block-diagonal matrix Q built from a partition is a rational, self-adjoint
involution, and conjugating the adjacency matrix by it produces exactly the
adjacency matrix of the switched graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import GAMatrix, GroupAlgebraElement
from .graphs import GainGraph, build_gain_graph
from .groups import Group, GroupElement
from .reps import Representation
from .scalars import GaussianRational


@dataclass(frozen=True)
class WQHPartition:
    """An ordered partition: C_0 first, then the paired cells in order.

    Cells are sorted vertex tuples.  Disjointness, odd cell count and
    nonempty paired cells are enforced here; the equal-size requirement on
    each pair is a verification condition so that verdicts can report it.
    """

    cells: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        cells = tuple(tuple(sorted(int(v) for v in c)) for c in self.cells)
        object.__setattr__(self, "cells", cells)
        if len(cells) < 3 or len(cells) % 2 == 0:
            raise ValueError(
                f"need an odd number of cells (C_0 plus k pairs), got {len(cells)}"
            )
        seen = set()
        for c in cells[1:]:
            if not c:
                raise ValueError("paired cells must be nonempty")
        for c in cells:
            for v in c:
                if v in seen:
                    raise ValueError(f"vertex {v} appears in more than one cell")
                seen.add(v)

    @classmethod
    def from_cells(cls, cells: Sequence[Sequence[int]]) -> "WQHPartition":
        return cls(tuple(tuple(c) for c in cells))

    @property
    def k(self) -> int:
        return (len(self.cells) - 1) // 2

    @property
    def c0(self) -> Tuple[int, ...]:
        return self.cells[0]

    def pair(self, t: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """Cells (C_{2t+1}, C_{2t+2}) of the t-th pair, t in 0..k-1."""
        return self.cells[2 * t + 1], self.cells[2 * t + 2]

    def vertices(self) -> Tuple[int, ...]:
        return tuple(sorted(v for c in self.cells for v in c))

    def validate_for(self, n: int):
        vs = self.vertices()
        if vs != tuple(range(n)):
            raise ValueError(
                f"partition covers vertices {vs[:6]}..., expected exactly 0..{n - 1}"
            )

    def to_lists(self) -> List[List[int]]:
        return [list(c) for c in self.cells]


@dataclass(frozen=True)
class CaseResolution:
    """How one C_0 vertex resolves against one pair of cells.

    g1/g2 are group elements for case (b) constants, with None meaning the
    zero gain (non-adjacency).  both_cases marks the overlap where the two
    constants coincide and case (a) holds as well.
    """

    vertex: int
    pair_index: int
    case: str  # "a" or "b"
    g1: Optional[GroupElement] = None
    g2: Optional[GroupElement] = None
    both_cases: bool = False

    def describe(self) -> str:
        if self.case == "a":
            return f"v{self.vertex} vs pair {self.pair_index}: case (a)"
        g1 = self.g1.label if self.g1 is not None else "0"
        g2 = self.g2.label if self.g2 is not None else "0"
        extra = " (also satisfies case (a))" if self.both_cases else ""
        return (
            f"v{self.vertex} vs pair {self.pair_index}: case (b) "
            f"g1={g1}, g2={g2}{extra}"
        )


@dataclass(frozen=True)
class ConditionFailure:
    """First witness found for one failed condition."""

    condition: str  # size | intra-cell constancy | cross-pair swap | C_0 case-(a) | C_0 case-(b)
    witness: str
    data: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class PartitionVerdict:
    """Outcome of a partition check with per-condition diagnostics."""

    valid: bool
    mode: str  # "G" or "pi(<kind>)"
    failures: Tuple[ConditionFailure, ...]
    case_resolutions: Tuple[CaseResolution, ...]

    def __post_init__(self):
        if not self.valid and not self.failures:
            raise ValueError("an invalid verdict must carry a witness")

    def resolution(self, vertex: int, pair_index: int) -> CaseResolution:
        for r in self.case_resolutions:
            if r.vertex == vertex and r.pair_index == pair_index:
                return r
        raise KeyError((vertex, pair_index))

    def summary(self) -> str:
        head = "valid" if self.valid else "invalid"
        lines = [f"{head} ({self.mode}-WQH)"]
        for f in self.failures:
            lines.append(f"  FAIL {f.condition}: {f.witness}")
        for r in self.case_resolutions:
            lines.append("  " + r.describe())
        return "\n".join(lines)


def _constant_gain(g: GainGraph, v: int, cell: Sequence[int]):
    """The constant c with v adjacent to every cell vertex with gain c,
    None for adjacent-to-none, or False when neither applies."""
    gains = [g.gain(v, w) for w in cell]
    if all(x is None for x in gains):
        return None
    first = gains[0]
    if first is None:
        return False
    if all(x == first for x in gains):
        return first
    return False


def _verify(graph: GainGraph, part: WQHPartition, mode: str, same) -> PartitionVerdict:
    part.validate_for(graph.n)
    cells = part.cells
    k = part.k
    failures: List[ConditionFailure] = []
    failed = set()

    def fail(condition: str, witness: str, **data):
        if condition not in failed:
            failed.add(condition)
            failures.append(ConditionFailure(condition, witness, data))

    psi_cache: Dict[Tuple[int, int], GroupAlgebraElement] = {}

    def psi(v: int, cell_idx: int) -> GroupAlgebraElement:
        key = (v, cell_idx)
        got = psi_cache.get(key)
        if got is None:
            got = graph.psi(v, cells[cell_idx])
            psi_cache[key] = got
        return got

    # condition: pair sizes
    for t in range(k):
        a, b = part.pair(t)
        if len(a) != len(b):
            fail("size", f"pair {t} has cells of sizes {len(a)} and {len(b)}",
                 pair=t, sizes=(len(a), len(b)))

    # condition: Psi constant on every cell
    for i in range(1, 2 * k + 1):
        cell = cells[i]
        if len(cell) < 2:
            continue
        v0 = cell[0]
        for j in range(1, 2 * k + 1):
            base = psi(v0, j)
            for v in cell[1:]:
                val = psi(v, j)
                if not same(val, base):
                    fail(
                        "intra-cell constancy",
                        f"vertices v{v0}, v{v} in C_{i} have different sums to "
                        f"C_{j}: {base} vs {val}",
                        i=i, j=j, v=v0, v_prime=v, values=(base, val),
                    )
                    break
            if "intra-cell constancy" in failed:
                break
        if "intra-cell constancy" in failed:
            break

    # condition: swap across pairs
    done = False
    for ti in range(k):
        i = 2 * ti + 1
        for tj in range(k):
            j = 2 * tj + 1
            for v in cells[i]:
                for vp in cells[i + 1]:
                    a1, b1 = psi(v, j), psi(vp, j + 1)
                    if not same(a1, b1):
                        fail(
                            "cross-pair swap",
                            f"v{v} in C_{i} vs v{vp} in C_{i + 1}: sum to C_{j} is "
                            f"{a1} but sum to C_{j + 1} is {b1}",
                            i=i, j=j, v=v, v_prime=vp, values=(a1, b1),
                        )
                        done = True
                        break
                    a2, b2 = psi(v, j + 1), psi(vp, j)
                    if not same(a2, b2):
                        fail(
                            "cross-pair swap",
                            f"v{v} in C_{i} vs v{vp} in C_{i + 1}: sum to C_{j + 1} is "
                            f"{a2} but sum to C_{j} is {b2}",
                            i=i, j=j, v=v, v_prime=vp, values=(a2, b2),
                        )
                        done = True
                        break
                if done:
                    break
            if done:
                break
        if done:
            break

    # condition: C_0 cases (exact in both modes)
    resolutions: List[CaseResolution] = []
    for v in cells[0]:
        for t in range(k):
            i = 2 * t + 1
            cell_a, cell_b = part.pair(t)
            g1 = _constant_gain(graph, v, cell_a)
            g2 = _constant_gain(graph, v, cell_b)
            b_ok = g1 is not False and g2 is not False and len(cell_a) == len(cell_b)
            a_ok = psi(v, i) == psi(v, i + 1)
            if b_ok:
                resolutions.append(
                    CaseResolution(v, t, "b", g1, g2, both_cases=a_ok)
                )
            elif a_ok:
                resolutions.append(CaseResolution(v, t, "a"))
            else:
                fail(
                    "C_0 case-(a)",
                    f"v{v} vs pair {t}: sums differ ({psi(v, i)} vs {psi(v, i + 1)})",
                    v=v, pair=t, values=(psi(v, i), psi(v, i + 1)),
                )
                fail(
                    "C_0 case-(b)",
                    f"v{v} vs pair {t}: gains to C_{i} or C_{i + 1} are not constant",
                    v=v, pair=t,
                )

    return PartitionVerdict(
        valid=not failures,
        mode=mode,
        failures=tuple(failures),
        case_resolutions=tuple(resolutions),
    )


def verify_gwqh(graph: GainGraph, part: WQHPartition) -> PartitionVerdict:
    """Check the exact (algebra-level) partition conditions."""
    return _verify(graph, part, "G", lambda x, y: x == y)


def verify_piwqh(
    graph: GainGraph,
    part: WQHPartition,
    rep: Representation,
    tol: float = 1e-8,
) -> PartitionVerdict:
    """Check the partition conditions through a unitary representation.

    Cell-sum comparisons use represented images (exactly when the
    representation is exact, within tol otherwise); the C_0 condition is
    checked exactly in the algebra either way.
    """
    if rep.group != graph.group:
        raise ValueError("representation over a different group")
    if rep.exact:
        same = lambda x, y: rep.image_key(x) == rep.image_key(y)
    else:
        same = lambda x, y: np.abs(rep.apply(x) - rep.apply(y)).max(initial=0.0) <= tol
    return _verify(graph, part, f"pi({rep.kind})", same)


# -- the switching matrix ------------------------------------------------------


def pair_switch_block(group: Group, m: int) -> GAMatrix:
    """The 2m x 2m block [[I - J/m, J/m], [J/m, I - J/m]] over the algebra."""
    if m < 1:
        raise ValueError("pair size must be >= 1")
    inv_m = Fraction(1, m)
    off = GroupAlgebraElement.scalar(group, inv_m)
    diag = GroupAlgebraElement.scalar(group, 1 - inv_m)
    zero_off = GroupAlgebraElement.scalar(group, -inv_m)
    rows = []
    for i in range(2 * m):
        row = []
        for j in range(2 * m):
            same_half = (i < m) == (j < m)
            if same_half:
                row.append(diag if i == j else zero_off)
            else:
                row.append(off)
        rows.append(row)
    return GAMatrix(group, rows)


def build_switch_matrix(group: Group, part: WQHPartition) -> GAMatrix:
    """The switching matrix in the graph's own vertex order.

    Identity on C_0; on each pair, I - J/m mixed with J/m across the two
    cells.  Entries are rational multiples of the identity element; the
    matrix is self-adjoint and squares to the identity.
    """
    n = len(part.vertices())
    part.validate_for(n)
    zero = GroupAlgebraElement.zero(group)
    rows = [[zero] * n for _ in range(n)]
    for v in part.c0:
        rows[v][v] = GroupAlgebraElement.one(group)
    for t in range(part.k):
        cell_a, cell_b = part.pair(t)
        if len(cell_a) != len(cell_b):
            raise ValueError(f"pair {t} has unequal cell sizes")
        m = len(cell_a)
        inv_m = Fraction(1, m)
        off = GroupAlgebraElement.scalar(group, inv_m)
        diag = GroupAlgebraElement.scalar(group, 1 - inv_m)
        neg = GroupAlgebraElement.scalar(group, -inv_m)
        for cell in (cell_a, cell_b):
            for u in cell:
                for v in cell:
                    rows[u][v] = diag if u == v else neg
        for u in cell_a:
            for v in cell_b:
                rows[u][v] = off
                rows[v][u] = off
    return GAMatrix(group, rows)


def switch_graph(
    graph: GainGraph, part: WQHPartition, verdict: PartitionVerdict
) -> GainGraph:
    """Build the switched gain graph from a valid verdict.

    Gains not incident to C_0, and gains inside C_0, are unchanged.  A C_0
    vertex in case (a) keeps its arcs to that pair; in case (b) its constant
    gains to the two cells are exchanged (a zero constant meaning no edges).
    """
    if not verdict.valid:
        raise ValueError("refusing to switch: the partition verdict is invalid")
    part.validate_for(graph.n)
    group = graph.group
    in_c0 = set(part.c0)
    pair_of: Dict[int, int] = {}
    for t in range(part.k):
        a, b = part.pair(t)
        for v in a + b:
            pair_of[v] = t

    edges = []
    for (u, v, gain) in graph.edges():
        u_c0, v_c0 = u in in_c0, v in in_c0
        if u_c0 == v_c0:
            # inside C_0, or entirely among the paired cells
            edges.append((u, v, gain))
    for v in part.c0:
        for t in range(part.k):
            res = verdict.resolution(v, t)
            cell_a, cell_b = part.pair(t)
            if res.case == "a":
                for w in cell_a + cell_b:
                    gain = graph.gain(v, w)
                    if gain is not None:
                        edges.append((v, w, gain))
            else:
                if res.g2 is not None:
                    for w in cell_a:
                        edges.append((v, w, res.g2))
                if res.g1 is not None:
                    for w in cell_b:
                        edges.append((v, w, res.g1))
    return build_gain_graph(group, graph.n, edges)


def verify_theorem_gcosp(
    graph: GainGraph,
    part: WQHPartition,
    verdict: Optional[PartitionVerdict] = None,
) -> bool:
    """Exact check that conjugating by the switching matrix yields the
    switched graph's adjacency matrix."""
    if verdict is None:
        verdict = verify_gwqh(graph, part)
    if not verdict.valid:
        raise ValueError("partition is not G-WQH")
    q = build_switch_matrix(graph.group, part)
    switched = switch_graph(graph, part, verdict)
    return (q @ graph.adjacency()) @ q == switched.adjacency()


def verify_theorem_picosp(
    graph: GainGraph,
    part: WQHPartition,
    rep: Representation,
    tol: float = 1e-8,
    verdict: Optional[PartitionVerdict] = None,
) -> bool:
    """Check the represented conjugation identity for a pi-WQH partition.

    Exact when the representation is exact, entrywise within tol otherwise.
    """
    if verdict is None:
        verdict = verify_piwqh(graph, part, rep, tol)
    if not verdict.valid:
        raise ValueError("partition is not pi-WQH for this representation")
    q = build_switch_matrix(graph.group, part)
    switched = switch_graph(graph, part, verdict)
    if rep.exact:
        lhs = rep.apply_mat_exact(switched.adjacency())
        rhs = (rep.apply_mat_exact(q) @ rep.apply_mat_exact(graph.adjacency())) \
            @ rep.apply_mat_exact(q)
        return lhs == rhs
    lhs = rep.apply_mat(switched.adjacency())
    rhs = rep.apply_mat(q) @ rep.apply_mat(graph.adjacency()) @ rep.apply_mat(q)
    return float(np.abs(lhs - rhs).max(initial=0.0)) <= tol


# -- the block lemma and its completion ---------------------------------------


@dataclass(frozen=True)
class BlockLemmaReport:
    """Whether a 2m x 2n block matrix meets the constant-sum hypothesis and
    is fixed by the pair switching blocks."""

    hypothesis: bool
    conclusion: bool
    detail: str = ""

    def __bool__(self):
        return self.hypothesis and self.conclusion


def _block(a: GAMatrix, r0: int, r1: int, c0: int, c1: int) -> List[List[GroupAlgebraElement]]:
    return [row[c0:c1] for row in a.entries[r0:r1]]


def _row_sums(rows) -> List[GroupAlgebraElement]:
    out = []
    for row in rows:
        acc = row[0]
        for e in row[1:]:
            acc = acc + e
        out.append(acc)
    return out


def _col_sums(rows) -> List[GroupAlgebraElement]:
    return _row_sums(list(map(list, zip(*rows))))


def check_block_lemma(a: GAMatrix, n_i: int, n_j: int) -> BlockLemmaReport:
    """Verify the constant-sum hypothesis on the four blocks of a and, with
    it, the exact identity Q_{n_i} a Q_{n_j} = a."""
    if a.rows != 2 * n_i or a.cols != 2 * n_j:
        raise ValueError(
            f"expected a {2 * n_i}x{2 * n_j} matrix, got {a.rows}x{a.cols}"
        )
    blocks = {
        (1, 1): _block(a, 0, n_i, 0, n_j),
        (1, 2): _block(a, 0, n_i, n_j, 2 * n_j),
        (2, 1): _block(a, n_i, 2 * n_i, 0, n_j),
        (2, 2): _block(a, n_i, 2 * n_i, n_j, 2 * n_j),
    }
    hypothesis = True
    detail = ""
    for pair, name in (((1, 1), "diagonal"), ((1, 2), "off-diagonal")):
        twin = (2, 2) if pair == (1, 1) else (2, 1)
        rows = _row_sums(blocks[pair]) + _row_sums(blocks[twin])
        cols = _col_sums(blocks[pair]) + _col_sums(blocks[twin])
        if any(r != rows[0] for r in rows[1:]):
            hypothesis = False
            detail = f"{name} blocks do not share a constant row sum"
            break
        if any(c != cols[0] for c in cols[1:]):
            hypothesis = False
            detail = f"{name} blocks do not share a constant column sum"
            break
    qi = pair_switch_block(a.group, n_i)
    qj = pair_switch_block(a.group, n_j)
    conclusion = (qi @ a) @ qj == a
    return BlockLemmaReport(hypothesis, conclusion, detail)


def block_sum_completion(a: GAMatrix, n_i: int, n_j: int) -> GAMatrix:
    """The sparse correction D that retrofits constant block sums onto a.

    Each block's first row and column absorb the defect between the actual
    row/column sums and the shared targets S1 (diagonal blocks) and S2
    (off-diagonal blocks), where S1 and S2 are the total sums of the upper
    two blocks.  When the opposite blocks have matching totals, a + D
    satisfies the block lemma hypothesis exactly.
    """
    if a.rows != 2 * n_i or a.cols != 2 * n_j:
        raise ValueError(
            f"expected a {2 * n_i}x{2 * n_j} matrix, got {a.rows}x{a.cols}"
        )
    group = a.group
    zero = GroupAlgebraElement.zero(group)
    s1 = _total(_block(a, 0, n_i, 0, n_j))
    s2 = _total(_block(a, 0, n_i, n_j, 2 * n_j))
    d_rows = [[zero] * (2 * n_j) for _ in range(2 * n_i)]
    for (r0, c0, s) in (
        (0, 0, s1),
        (0, n_j, s2),
        (n_i, 0, s2),
        (n_i, n_j, s1),
    ):
        rows = _block(a, r0, r0 + n_i, c0, c0 + n_j)
        rsums = _row_sums(rows)
        csums = _col_sums(rows)
        target_r = s.scale(Fraction(1, n_i))
        target_c = s.scale(Fraction(1, n_j))
        d_rows[r0][c0] = (target_r - rsums[0]) + (target_c - csums[0])
        for m in range(1, n_i):
            d_rows[r0 + m][c0] = target_r - rsums[m]
        for m in range(1, n_j):
            d_rows[r0][c0 + m] = target_c - csums[m]
    return GAMatrix(group, d_rows)


def _total(rows) -> GroupAlgebraElement:
    acc = rows[0][0]
    first = True
    for row in rows:
        for e in row:
            if first:
                first = False
                continue
            acc = acc + e
    return acc


def pair_submatrix(
    graph: GainGraph, part: WQHPartition, ti: int, tj: int
) -> GAMatrix:
    """Adjacency rows C_{2ti+1} + C_{2ti+2} against columns C_{2tj+1} + C_{2tj+2}."""
    a = graph.adjacency()
    ra, rb = part.pair(ti)
    ca, cb = part.pair(tj)
    rows = [
        [a.entries[u][v] for v in ca + cb]
        for u in ra + rb
    ]
    return GAMatrix(graph.group, rows)


def d_correction(
    graph: GainGraph, part: WQHPartition, ti: int, tj: int
) -> GAMatrix:
    """The correction matrix for one pair of pairs.

    For a partition that is pi-WQH the represented image of this matrix
    vanishes, which is what transfers the block lemma through the
    representation.
    """
    sub = pair_submatrix(graph, part, ti, tj)
    ra, _ = part.pair(ti)
    ca, _ = part.pair(tj)
    return block_sum_completion(sub, len(ra), len(ca))
