"""Desk-scale discovery: partition search, switching isomorphism, generators.

The partition search enumerates ordered partitions cell by cell, pruning with
incremental cell-sum checks, and returns canonical representatives only (the
anchor vertex of each pair sits in its first cell, pairs are ordered by their
anchors).  Switching isomorphism is decided by explicit witness search with
fast disconfirmers in front and an honest "inconclusive" outcome when the
budget is exhausted.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import GAMatrix, GroupAlgebraElement
from .graphs import GainGraph, SwitchingFunction, apply_switching, build_gain_graph
from .groups import Group, GroupElement
from .reps import Representation, hermitian_spectrum
from .switching import (
    PartitionVerdict,
    WQHPartition,
    switch_graph,
    verify_gwqh,
    verify_piwqh,
)


@dataclass(frozen=True)
class SearchLimits:
    """Budgets for the exhaustive searches."""

    max_vertices: int = 14
    max_cells: int = 5
    max_partitions: int = 1_000_000   # enumeration nodes examined
    iso_budget_small_group: int = 8   # max n for exact isomorphism when |G| <= 4
    iso_budget_large_group: int = 6

    def iso_budget(self, group: Group) -> int:
        return (
            self.iso_budget_small_group
            if group.order <= 4
            else self.iso_budget_large_group
        )


@dataclass(frozen=True)
class SearchResult:
    partitions: Tuple[WQHPartition, ...]
    complete: bool
    examined: int
    note: str = ""


@dataclass(frozen=True)
class IsoVerdict:
    """Outcome of a switching-isomorphism decision.

    A witness (permutation phi plus switching function f on the first
    graph's vertices) is present exactly when the result is isomorphic.
    """

    result: str  # "isomorphic" | "not-isomorphic" | "inconclusive"
    permutation: Optional[Tuple[int, ...]] = None
    switching: Optional[SwitchingFunction] = None
    reason: str = ""

    def __post_init__(self):
        has_witness = self.permutation is not None and self.switching is not None
        if (self.result == "isomorphic") != has_witness:
            raise ValueError("witness present iff isomorphic")


class _Budget(Exception):
    pass


def find_wqh_partitions(
    graph: GainGraph,
    limits: Optional[SearchLimits] = None,
    mode: str = "G",
    rep: Optional[Representation] = None,
    tol: float = 1e-8,
) -> SearchResult:
    """Enumerate partitions passing the chosen verifier.

    Candidates are pruned by cell sizes and incremental cell-sum constancy,
    then re-checked with the full verifier.  Results are canonical up to
    swapping the two cells of a pair and permuting pairs.
    """
    limits = limits or SearchLimits()
    n = graph.n
    if n > limits.max_vertices:
        return SearchResult(
            (), False, 0,
            f"graph has {n} vertices, over the max_vertices limit {limits.max_vertices}",
        )
    if mode not in ("G", "pi"):
        raise ValueError("mode must be 'G' or 'pi'")
    if mode == "pi":
        if rep is None:
            raise ValueError("pi mode needs a representation")
        if rep.exact:
            same = lambda x, y: rep.image_key(x) == rep.image_key(y)
        else:
            same = lambda x, y: np.abs(rep.apply(x) - rep.apply(y)).max(initial=0.0) <= tol
    else:
        same = lambda x, y: x == y

    max_k = (limits.max_cells - 1) // 2
    found: List[WQHPartition] = []
    state = {"examined": 0}
    psi_cache: Dict[tuple, GroupAlgebraElement] = {}

    def psi(v: int, cell: Tuple[int, ...]) -> GroupAlgebraElement:
        key = (v, cell)
        got = psi_cache.get(key)
        if got is None:
            got = graph.psi(v, cell)
            psi_cache[key] = got
        return got

    const_cache: Dict[tuple, object] = {}

    def constant_gain(v: int, cell: Tuple[int, ...]):
        key = (v, cell)
        got = const_cache.get(key, _MISSING)
        if got is _MISSING:
            got = _constant_or_none(graph, v, cell)
            const_cache[key] = got
        return got

    def bump():
        state["examined"] += 1
        if state["examined"] > limits.max_partitions:
            raise _Budget()

    def cell_constant(cell: Tuple[int, ...]) -> bool:
        if len(cell) < 2:
            return True
        base = psi(cell[0], cell)
        return all(same(psi(v, cell), base) for v in cell[1:])

    def pair_consistent(c0: Tuple[int, ...], pairs: List[Tuple[Tuple[int, ...], Tuple[int, ...]]]) -> bool:
        """Check conditions touching the newest pair against all chosen cells."""
        t_new = len(pairs) - 1
        cells = [c0]
        for a, b in pairs:
            cells.extend((a, b))
        new_idx = (2 * t_new + 1, 2 * t_new + 2)
        # C_0 cases against the new pair (exact condition, cheap)
        a, b = pairs[t_new]
        for v in c0:
            if constant_gain(v, a) is not False and constant_gain(v, b) is not False:
                continue
            if psi(v, a) == psi(v, b):
                continue
            return False
        # swap conditions for pair combinations involving the new pair
        for ti in range(len(pairs)):
            for tj in range(len(pairs)):
                if t_new not in (ti, tj):
                    continue
                i = 2 * ti + 1
                j = 2 * tj + 1
                va = cells[i][0]
                vb = cells[i + 1][0]
                if not same(psi(va, cells[j]), psi(vb, cells[j + 1])):
                    return False
                if not same(psi(va, cells[j + 1]), psi(vb, cells[j])):
                    return False
        # constancy of sums into the new cells, over every cell
        for i in range(1, len(cells)):
            cell = cells[i]
            if len(cell) < 2:
                continue
            js = new_idx if i not in new_idx else range(1, len(cells))
            for j in js:
                base = psi(cell[0], cells[j])
                for v in cell[1:]:
                    if not same(psi(v, cells[j]), base):
                        return False
        return True

    def recurse(c0: Tuple[int, ...], remaining: Tuple[int, ...],
                pairs: List[Tuple[Tuple[int, ...], Tuple[int, ...]]]):
        if not remaining:
            if pairs:
                cells = [c0]
                for a, b in pairs:
                    cells.extend((a, b))
                cand = WQHPartition.from_cells(cells)
                bump()
                verdict = (
                    verify_gwqh(graph, cand)
                    if mode == "G"
                    else verify_piwqh(graph, cand, rep, tol)
                )
                if verdict.valid:
                    found.append(cand)
            return
        if len(pairs) >= max_k:
            return
        anchor = remaining[0]
        rest = remaining[1:]
        slots_left = max_k - len(pairs) - 1
        for m in range(len(remaining) // 2, 0, -1):
            leftover = len(remaining) - 2 * m
            if leftover % 2:
                continue
            if leftover and (slots_left == 0 or leftover < 2):
                continue
            for extra in combinations(rest, m - 1):
                cell_a = tuple(sorted((anchor,) + extra))
                bump()
                if not cell_constant(cell_a):
                    continue
                pool = tuple(v for v in rest if v not in extra)
                for cell_b in combinations(pool, m):
                    bump()
                    pairs.append((cell_a, cell_b))
                    if pair_consistent(c0, pairs):
                        left = tuple(v for v in pool if v not in cell_b)
                        recurse(c0, left, pairs)
                    pairs.pop()

    complete = True
    try:
        for n0 in range(0, n - 1):
            if (n - n0) % 2:
                continue
            for c0 in combinations(range(n), n0):
                remaining = tuple(v for v in range(n) if v not in c0)
                recurse(c0, remaining, [])
    except _Budget:
        complete = False

    note = "" if complete else (
        f"stopped after examining {state['examined']} candidates "
        f"(max_partitions={limits.max_partitions}); results are partial"
    )
    return SearchResult(tuple(found), complete, state["examined"], note)


_MISSING = object()


def _constant_or_none(graph: GainGraph, v: int, cell: Sequence[int]):
    gains = [graph.gain_index(v, w) for w in cell]
    first = gains[0]
    if first is None:
        return None if all(x is None for x in gains[1:]) else False
    if all(x == first for x in gains[1:]):
        return first
    return False


# -- switching isomorphism -----------------------------------------------------


def _solve_switching(g1: GainGraph, g2: GainGraph, phi: Sequence[int]):
    """Find f with psi2(phi u, phi v) = f(u)^{-1} psi1(u, v) f(v), or None.

    phi must already be an isomorphism of the underlying graphs.  Anchors one
    vertex per component and tries every anchor value; the propagation along
    a spanning tree is forced, and all arcs are re-checked afterwards.
    """
    group = g1.group
    n = g1.n
    f = [-1] * n
    for comp in g1.components():
        anchor = comp[0]
        solved = False
        for c in range(group.order):
            assign = {anchor: c}
            stack = [anchor]
            while stack:
                x = stack.pop()
                for y in g1.neighbors(x):
                    if y in assign:
                        continue
                    psi1 = g1.gain(x, y).index
                    psi2 = g2.gain(phi[x], phi[y])
                    if psi2 is None:
                        return None  # phi was not an isomorphism after all
                    fy = group.op_index(
                        group.op_index(group.inv_index(psi1), assign[x]),
                        psi2.index,
                    )
                    assign[y] = fy
                    stack.append(y)
            ok = True
            for x in comp:
                for y in g1.neighbors(x):
                    psi1 = g1.gain(x, y).index
                    psi2 = g2.gain(phi[x], phi[y]).index
                    lhs = group.op_index(
                        group.op_index(group.inv_index(assign[x]), psi1), assign[y]
                    )
                    if lhs != psi2:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                for v in comp:
                    f[v] = assign[v]
                solved = True
                break
        if not solved:
            return None
    return SwitchingFunction(group, tuple(GroupElement(group, i) for i in f))


def witness_identity_holds(
    g1: GainGraph, g2: GainGraph, phi: Sequence[int], f: SwitchingFunction
) -> bool:
    """Exact re-check of A2 = (PF)* A1 (PF) for a claimed witness."""
    group = g1.group
    n = g1.n
    zero = GroupAlgebraElement.zero(group)
    one = GroupAlgebraElement.one(group)
    p_rows = [[zero] * n for _ in range(n)]
    for i in range(n):
        p_rows[i][phi[i]] = one
    p = GAMatrix(group, p_rows)
    inv_phi = [0] * n
    for i in range(n):
        inv_phi[phi[i]] = i
    f_rows = [[zero] * n for _ in range(n)]
    for j in range(n):
        f_rows[j][j] = GroupAlgebraElement.from_element(f(inv_phi[j]))
    fmat = GAMatrix(group, f_rows)
    pf = p @ fmat
    return (pf.star() @ g1.adjacency()) @ pf == g2.adjacency()


def _underlying_isomorphisms(g1: GainGraph, g2: GainGraph):
    """Yield vertex bijections preserving the underlying adjacency."""
    n = g1.n
    adj1 = [set(g1.neighbors(v)) for v in range(n)]
    adj2 = [set(g2.neighbors(v)) for v in range(n)]
    deg1 = [len(a) for a in adj1]
    deg2 = [len(a) for a in adj2]
    nbr_sig1 = [tuple(sorted(deg1[w] for w in adj1[v])) for v in range(n)]
    nbr_sig2 = [tuple(sorted(deg2[w] for w in adj2[v])) for v in range(n)]
    candidates = [
        [w for w in range(n) if deg1[v] == deg2[w] and nbr_sig1[v] == nbr_sig2[w]]
        for v in range(n)
    ]
    if any(not c for c in candidates):
        return
    order = sorted(range(n), key=lambda v: len(candidates[v]))
    mapping = [-1] * n
    used = [False] * n

    def extend(idx: int):
        if idx == n:
            yield tuple(mapping)
            return
        v = order[idx]
        for w in candidates[v]:
            if used[w]:
                continue
            ok = True
            for u in adj1[v]:
                mu_ = mapping[u]
                if mu_ != -1 and mu_ not in adj2[w]:
                    ok = False
                    break
            if ok:
                for u in range(n):
                    if mapping[u] != -1 and u not in adj1[v] and mapping[u] in adj2[w]:
                        ok = False
                        break
            if not ok:
                continue
            mapping[v] = w
            used[w] = True
            yield from extend(idx + 1)
            mapping[v] = -1
            used[w] = False

    yield from extend(0)


def switching_isomorphic(
    g1: GainGraph, g2: GainGraph, limits: Optional[SearchLimits] = None
) -> IsoVerdict:
    """Decide switching isomorphism by witness search.

    Fast disconfirmers (component sizes, degree sequences, underlying
    spectra) run first; the identity bijection is attempted at any size;
    the exhaustive bijection search runs only within the budget.
    """
    limits = limits or SearchLimits()
    if g1.group != g2.group:
        raise ValueError("graphs over different groups")
    if g1.n != g2.n:
        return IsoVerdict("not-isomorphic", reason="vertex counts differ")

    comp1 = sorted(len(c) for c in g1.components())
    comp2 = sorted(len(c) for c in g2.components())
    if comp1 != comp2:
        return IsoVerdict(
            "not-isomorphic",
            reason=f"component sizes differ: {comp1} vs {comp2}",
        )
    if g1.degree_sequence() != g2.degree_sequence():
        return IsoVerdict("not-isomorphic", reason="degree sequences differ")

    if g1.underlying_edges() == g2.underlying_edges():
        f = _solve_switching(g1, g2, tuple(range(g1.n)))
        if f is not None:
            return IsoVerdict(
                "isomorphic", tuple(range(g1.n)), f, reason="identity bijection"
            )

    if g1.n > limits.iso_budget(g1.group):
        return IsoVerdict(
            "inconclusive",
            reason=(
                f"{g1.n} vertices over the exact-isomorphism budget "
                f"{limits.iso_budget(g1.group)} for |G|={g1.group.order}"
            ),
        )

    if g1.n:
        s1 = hermitian_spectrum(_underlying_matrix(g1))
        s2 = hermitian_spectrum(_underlying_matrix(g2))
        if np.abs(s1 - s2).max(initial=0.0) > 1e-8:
            return IsoVerdict("not-isomorphic", reason="underlying spectra differ")

    for phi in _underlying_isomorphisms(g1, g2):
        f = _solve_switching(g1, g2, phi)
        if f is not None:
            if not witness_identity_holds(g1, g2, phi, f):
                raise AssertionError("witness failed exact re-verification")
            return IsoVerdict("isomorphic", phi, f)
    return IsoVerdict("not-isomorphic", reason="bijection search exhausted")


def _underlying_matrix(g: GainGraph) -> np.ndarray:
    m = np.zeros((g.n, g.n))
    for (u, v, _) in g.edges():
        m[u, v] = m[v, u] = 1.0
    return m


def is_nontrivial(
    graph: GainGraph,
    part: WQHPartition,
    limits: Optional[SearchLimits] = None,
    verdict: Optional[PartitionVerdict] = None,
) -> IsoVerdict:
    """Whether the switched graph fails to be switching isomorphic.

    Returns the underlying isomorphism verdict: not-isomorphic means the
    partition is nontrivial.
    """
    if verdict is None:
        verdict = verify_gwqh(graph, part)
    if not verdict.valid:
        raise ValueError("partition is not valid, nothing to switch")
    switched = switch_graph(graph, part, verdict)
    return switching_isomorphic(graph, switched, limits)


# -- random valid instances ----------------------------------------------------


def _intra_profiles(group: Group, m: int) -> List[tuple]:
    """Constructions giving every cell vertex the same in-cell sum."""
    out: List[tuple] = [("empty",)]
    invs = group.involution_indices()
    if m >= 3:
        out.extend(("cycle", g) for g in range(group.order))
    if m % 2 == 0 and m >= 4:
        out.extend(("altcycle", a, b) for a in invs for b in invs)
    if m % 2 == 0 and m >= 2:
        out.extend(("matching", a) for a in invs)
    if m >= 2:
        out.extend(("complete", a) for a in invs)
    return out


def _profile_value(group: Group, m: int, profile: tuple) -> GroupAlgebraElement:
    """The in-cell sum produced by a profile."""
    kind = profile[0]
    if kind == "empty":
        return GroupAlgebraElement.zero(group)
    if kind == "cycle":
        g = profile[1]
        acc: Dict[int, int] = {}
        for idx in (g, group.inv_index(g)):
            acc[idx] = acc.get(idx, 0) + 1
        return GroupAlgebraElement(group, acc)
    if kind == "altcycle":
        a, b = profile[1], profile[2]
        acc = {}
        for idx in (a, b):
            acc[idx] = acc.get(idx, 0) + 1
        return GroupAlgebraElement(group, acc)
    if kind == "matching":
        return GroupAlgebraElement(group, {profile[1]: 1})
    if kind == "complete":
        return GroupAlgebraElement(group, {profile[1]: m - 1})
    raise ValueError(kind)


def _profile_edges(cell: Sequence[int], profile: tuple) -> List[tuple]:
    kind = profile[0]
    m = len(cell)
    edges = []
    if kind == "empty":
        return edges
    if kind == "cycle":
        g = profile[1]
        for i in range(m):
            edges.append((cell[i], cell[(i + 1) % m], g))
    elif kind == "altcycle":
        a, b = profile[1], profile[2]
        for i in range(m):
            edges.append((cell[i], cell[(i + 1) % m], a if i % 2 == 0 else b))
    elif kind == "matching":
        a = profile[1]
        for i in range(0, m, 2):
            edges.append((cell[i], cell[i + 1], a))
    elif kind == "complete":
        a = profile[1]
        for i in range(m):
            for j in range(i + 1, m):
                edges.append((cell[i], cell[j], a))
    else:
        raise ValueError(kind)
    return edges


def _link_options(group: Group, m: int) -> List[tuple]:
    out: List[tuple] = [("empty",)]
    invs = group.involution_indices()
    out.extend(("matching", a) for a in invs)
    if m >= 2:
        out.extend(("bicycle", g) for g in range(group.order))
        out.extend(("complete", a) for a in invs)
    return out


def _link_edges(cell_a: Sequence[int], cell_b: Sequence[int], profile: tuple) -> List[tuple]:
    kind = profile[0]
    m = len(cell_a)
    edges = []
    if kind == "empty":
        return edges
    if kind == "matching":
        a = profile[1]
        for i in range(m):
            edges.append((cell_a[i], cell_b[i], a))
    elif kind == "bicycle":
        g = profile[1]
        inv = None
        for i in range(m):
            edges.append((cell_a[i], cell_b[i], g))
        for i in range(m):
            edges.append((cell_b[(i + 1) % m], cell_a[i], g))
    elif kind == "complete":
        a = profile[1]
        for u in cell_a:
            for v in cell_b:
                edges.append((u, v, a))
    else:
        raise ValueError(kind)
    return edges


def _random_instance(
    group: Group,
    n0: int,
    pair_sizes: Sequence[int],
    rng: random.Random,
    kernel_pairs: Optional[dict] = None,
    c0_case: str = "mixed",
):
    if n0 < 0 or not pair_sizes or any(m < 1 for m in pair_sizes):
        raise ValueError("need n0 >= 0 and nonempty pair sizes >= 1")
    cells: List[Tuple[int, ...]] = [tuple(range(n0))]
    nxt = n0
    for m in pair_sizes:
        cells.append(tuple(range(nxt, nxt + m)))
        cells.append(tuple(range(nxt + m, nxt + 2 * m)))
        nxt += 2 * m
    n = nxt
    part = WQHPartition.from_cells(cells)
    edges: List[tuple] = []

    # intra-pair structure
    for t, m in enumerate(pair_sizes):
        cell_a, cell_b = part.pair(t)
        options = _intra_profiles(group, m)
        if kernel_pairs is not None and kernel_pairs.get(m):
            pa, pb = rng.choice(kernel_pairs[m])
        else:
            pa = pb = rng.choice(options)
        edges.extend(_profile_edges(cell_a, pa))
        edges.extend(_profile_edges(cell_b, pb))
        link = rng.choice(_link_options(group, m))
        edges.extend(_link_edges(cell_a, cell_b, link))

    # constant blocks between different pairs
    k = len(pair_sizes)
    for ti in range(k):
        for tj in range(ti + 1, k):
            a_choice = rng.choice([None] * 3 + list(range(group.order)))
            b_choice = rng.choice([None] * 3 + list(range(group.order)))
            ca, cb = part.pair(ti)
            da, db = part.pair(tj)
            if a_choice is not None:
                for u in ca:
                    for v in da:
                        edges.append((u, v, a_choice))
                for u in cb:
                    for v in db:
                        edges.append((u, v, a_choice))
            if b_choice is not None:
                for u in ca:
                    for v in db:
                        edges.append((u, v, b_choice))
                for u in cb:
                    for v in da:
                        edges.append((u, v, b_choice))

    # inside C_0: anything goes
    c0 = part.c0
    for i in range(len(c0)):
        for j in range(i + 1, len(c0)):
            if rng.random() < 0.3:
                edges.append((c0[i], c0[j], rng.randrange(group.order)))

    # C_0 against each pair: case (a) via matched subsets, case (b) via constants
    for v in c0:
        for t, m in enumerate(pair_sizes):
            cell_a, cell_b = part.pair(t)
            case = c0_case if c0_case != "mixed" else rng.choice(("a", "b"))
            if case == "a":
                chosen = [l for l in range(m) if rng.random() < 0.5]
                for l in chosen:
                    gain = rng.randrange(group.order)
                    edges.append((v, cell_a[l], gain))
                    edges.append((v, cell_b[l], gain))
            else:
                g1 = rng.choice([None] + list(range(group.order)))
                g2 = rng.choice([None] + list(range(group.order)))
                if g1 is not None:
                    for w in cell_a:
                        edges.append((v, w, g1))
                if g2 is not None:
                    for w in cell_b:
                        edges.append((v, w, g2))

    graph = build_gain_graph(group, n, edges)
    return graph, part


def random_wqh_instance(
    group: Group,
    n0: int = 1,
    pair_sizes: Sequence[int] = (3,),
    seed: int = 0,
    c0_case: str = "mixed",
):
    """A random gain graph with a partition valid by construction.

    Deterministic in the seed.  Every output passes the exact verifier.
    """
    rng = random.Random(seed)
    return _random_instance(group, n0, pair_sizes, rng, None, c0_case)


def pi_kernel_profile_pairs(group: Group, rep: Representation) -> dict:
    """Per cell size, profile pairs with equal represented in-cell sums but
    (preferably) different exact sums."""
    out: dict = {}
    for m in (2, 3, 4):
        profiles = _intra_profiles(group, m)
        by_key: Dict[tuple, list] = {}
        for p in profiles:
            val = _profile_value(group, m, p)
            key = rep.image_key(val) if rep.exact else None
            if key is None:
                arr = rep.apply(val)
                key = tuple(np.round(arr, 9).ravel().tolist())
            by_key.setdefault(key, []).append((p, val))
        pairs = []
        for group_list in by_key.values():
            for i, (pa, va) in enumerate(group_list):
                for pb, vb in group_list[i:]:
                    if va != vb:
                        pairs.append((pa, pb))
        if pairs:
            out[m] = pairs
    return out


def random_piwqh_instance(
    group: Group,
    rep: Representation,
    n0: int = 1,
    pair_sizes: Sequence[int] = (4,),
    seed: int = 0,
    kernel_pairs: Optional[dict] = None,
):
    """A random instance valid for the representation-level verifier.

    Cells of a pair may carry different structures whose represented in-cell
    sums coincide, so the output is typically not valid in the exact sense.
    """
    rng = random.Random(seed)
    if kernel_pairs is None:
        kernel_pairs = pi_kernel_profile_pairs(group, rep)
    return _random_instance(group, n0, pair_sizes, rng, kernel_pairs, "mixed")
