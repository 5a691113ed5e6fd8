import numpy as np
import pytest

from gainswitch import (
    conjugacy_class_of,
    cyclic_group,
    inverse,
    make_group,
    op,
    symmetric_group,
    table_group,
)


def brute_force_classes(group):
    """Independent conjugacy computation: plain double loop, no numpy."""
    n = group.order
    classes = []
    assigned = [None] * n
    for g in range(n):
        if assigned[g] is not None:
            continue
        orbit = set()
        for h in range(n):
            hg = group.op_index(h, g)
            orbit.add(group.op_index(hg, group.inv_index(h)))
        cid = len(classes)
        classes.append(tuple(sorted(orbit)))
        for x in orbit:
            assigned[x] = cid
    return classes


class TestCyclic:
    def test_basic_structure(self):
        g = cyclic_group(4)
        assert g.order == 4
        assert g.labels == ("z^0", "z^1", "z^2", "z^3")
        assert g.identity.index == 0

    def test_abelian_classes_are_singletons(self):
        g = cyclic_group(4)
        assert g.classes == ((0,), (1,), (2,), (3,))

    def test_op_example(self):
        g = cyclic_group(4)
        assert (g.element("z^1") * g.element("z^3")).label == "z^0"

    def test_distinct_classes(self):
        g = cyclic_group(4)
        assert conjugacy_class_of(g.element("z^1")) != conjugacy_class_of(g.element("z^3"))

    def test_unit_values(self):
        g = cyclic_group(4)
        vals = [v.to_complex() for v in g.unit_values]
        assert vals == [1, 1j, -1, -1j]
        assert cyclic_group(3).unit_values is None

    def test_bad_order(self):
        with pytest.raises(ValueError):
            cyclic_group(0)


class TestSymmetric:
    def test_s4_order_and_classes(self):
        g = symmetric_group(4)
        assert g.order == 24
        # five cycle types, verified independently by brute-force conjugation
        oracle = brute_force_classes(g)
        assert len(oracle) == 5
        assert g.classes == tuple(oracle)

    def test_involution_product(self):
        g = symmetric_group(4)
        t = g.element("(12)")
        assert (t * t).is_identity()

    def test_disjoint_transpositions(self):
        g = symmetric_group(4)
        prod = g.element("(12)") * g.element("(34)")
        assert prod.label == "(12)(34)"

    def test_transpositions_conjugate(self):
        g = symmetric_group(4)
        a, b = g.element("(12)"), g.element("(34)")
        assert conjugacy_class_of(a) == conjugacy_class_of(b)
        h = g.element("(13)(24)")
        assert h * a * h.inverse() == b

    def test_identity_label(self):
        assert symmetric_group(3).labels[0] == "e"

    def test_degree_limit(self):
        with pytest.raises(ValueError, match="limit"):
            symmetric_group(7)


class TestTableGroup:
    def test_two_element_group(self):
        g = table_group(["e", "a"], [[0, 1], [1, 0]])
        assert g.order == 2
        assert g.labels[0] == "e"
        assert g.element("a").inverse().label == "a"

    def test_non_associative_rejected(self):
        # a*"table" that is a quasigroup but not a group
        with pytest.raises(ValueError, match="associative"):
            table_group(
                ["e", "a", "b", "c", "d"],
                [
                    [0, 1, 2, 3, 4],
                    [1, 0, 3, 4, 2],
                    [2, 4, 0, 1, 3],
                    [3, 2, 4, 0, 1],
                    [4, 3, 1, 2, 0],
                ],
            )

    def test_missing_identity_rejected(self):
        with pytest.raises(ValueError, match="identity"):
            table_group(["a", "b"], [[1, 0], [0, 1]])

    def test_duplicate_labels_rejected(self):
        with pytest.raises(ValueError, match="distinct"):
            table_group(["e", "e"], [[0, 1], [1, 0]])


class TestMakeGroup:
    @pytest.mark.parametrize(
        "spec, order",
        [
            ({"kind": "cyclic", "n": 4}, 4),
            ({"kind": "symmetric", "n": 4}, 24),
            ({"kind": "table", "labels": ["e", "a"], "table": [[0, 1], [1, 0]]}, 2),
        ],
    )
    def test_dispatch(self, spec, order):
        assert make_group(spec).order == order

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="kind"):
            make_group({"kind": "dihedral", "n": 4})

    def test_spec_roundtrip(self):
        for spec in (
            {"kind": "cyclic", "n": 4},
            {"kind": "symmetric", "n": 3},
        ):
            g = make_group(spec)
            assert make_group(g.spec_obj()) == g


class TestGroupLaws:
    @pytest.mark.parametrize("group_fn", [lambda: cyclic_group(4), lambda: symmetric_group(3), lambda: symmetric_group(4)])
    def test_associativity_exhaustive(self, group_fn):
        g = group_fn()
        t = g.table
        for a in range(g.order):
            assert np.array_equal(t[t[a], :], t[a][t])

    @pytest.mark.parametrize("group_fn", [lambda: cyclic_group(4), lambda: symmetric_group(4)])
    def test_inverse_involution(self, group_fn):
        g = group_fn()
        for a in g.elements():
            assert inverse(inverse(a)) == a

    @pytest.mark.parametrize("group_fn", [lambda: cyclic_group(4), lambda: symmetric_group(4)])
    def test_classes_partition_and_closed(self, group_fn):
        g = group_fn()
        all_members = sorted(x for c in g.classes for x in c)
        assert all_members == list(range(g.order))
        for c in g.classes:
            members = set(c)
            for x in c:
                for h in range(g.order):
                    conj = g.op_index(g.op_index(h, x), g.inv_index(h))
                    assert conj in members

    def test_mixed_group_operations_rejected(self):
        a = cyclic_group(4).element(1)
        b = cyclic_group(2).element(1)
        with pytest.raises(ValueError, match="different groups"):
            op(a, b)

    def test_identity_pinned_at_zero(self):
        for g in (cyclic_group(5), symmetric_group(3)):
            for a in g.elements():
                assert (g.identity * a) == a == (a * g.identity)
