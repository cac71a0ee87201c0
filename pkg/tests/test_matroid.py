import random
from fractions import Fraction
from itertools import combinations

import pytest

from osa import (
    AntichainViolationError,
    Arrangement,
    IncompleteCircuitsError,
    Matroid,
    MatroidError,
    NonSimpleError,
    VariableOrder,
)
from osa.exterior import elements_of, mask_from

from conftest import PAPER_NORMALS, K4_EDGES, uniform_matroid
from helpers import brute_force_rank, fraction_matrix_rank, random_order

# x,y,z,t,H,P = 1..6
X, Y, Z, T, H, P = 1, 2, 3, 4, 5, 6
PAPER_CIRCUITS = [
    (H, P, Y, Z),
    (H, P, X, T),
    (H, X, Y, Z, T),
    (P, X, Y, Z, T),
]
ORDER_XYZTHP = VariableOrder.natural(6)
ORDER_HPXYZT = VariableOrder.from_sequence([H, P, X, Y, Z, T])


@pytest.fixture(scope="module")
def paper():
    return Matroid.from_circuits(6, PAPER_CIRCUITS)


class TestFromCircuits:
    def test_paper_circuits_accepted(self, paper):
        assert paper.n == 6
        assert len(paper.circuits) == 4

    def test_free_matroid(self):
        free = Matroid.from_circuits(4, [])
        assert free.circuits == ()
        assert free.full_rank == 4

    def test_u23(self):
        m = Matroid.from_circuits(3, [(1, 2, 3)])
        assert m.circuits == (mask_from([1, 2, 3]),)

    def test_nested_circuits_rejected(self):
        with pytest.raises(AntichainViolationError):
            Matroid.from_circuits(5, [(1, 2, 3), (1, 2, 3, 4)])

    def test_incomplete_list_rejected(self):
        # {1,2,3} and {1,2,4} force a circuit inside {2,3,4} u {1,3,4}
        with pytest.raises(IncompleteCircuitsError):
            Matroid.from_circuits(4, [(1, 2, 3), (1, 2, 4)])

    def test_short_circuit_rejected(self):
        with pytest.raises(NonSimpleError):
            Matroid.from_circuits(4, [(1, 2)])

    def test_out_of_range_rejected(self):
        with pytest.raises(MatroidError):
            Matroid.from_circuits(3, [(1, 2, 4)])


class TestFromMatrix:
    def test_paper_example(self, paper):
        m = Matroid.from_matrix(Arrangement(PAPER_NORMALS))
        assert m == paper

    def test_identity_is_free(self):
        rows = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        assert Matroid.from_matrix(Arrangement(rows)).circuits == ()

    def test_vandermonde_is_u35(self):
        rows = [(1, i, i * i) for i in range(1, 6)]
        m = Matroid.from_matrix(Arrangement(rows))
        # brute-force oracle: circuits are the minimal dependent subsets
        expected = []
        for size in range(1, 6):
            for combo in combinations(range(1, 6), size):
                sub = [rows[i - 1] for i in combo]
                if fraction_matrix_rank(sub) < size and not any(
                    set(elements_of(c)) < set(combo) for c in expected
                ):
                    expected.append(mask_from(combo))
        assert m.circuits == tuple(sorted(expected, key=lambda c: (bin(c).count("1"), elements_of(c))))
        assert m == uniform_matroid(3, 5)

    def test_zero_row_rejected(self):
        with pytest.raises(NonSimpleError):
            Arrangement([(0, 0), (1, 0)])

    def test_proportional_rows_rejected(self):
        with pytest.raises(NonSimpleError):
            Arrangement([(1, 2), (2, 4), (0, 1)])

    def test_rational_entries(self):
        rows = [(Fraction(1, 2), 0), (0, Fraction(3)), (Fraction(1, 3), Fraction(1, 7))]
        m = Matroid.from_matrix(Arrangement(rows))
        assert m.circuits == (mask_from([1, 2, 3]),)


class TestFromGraph:
    def test_triangle(self):
        m = Matroid.from_graph(3, [(1, 2), (2, 3), (1, 3)])
        assert m.circuits == (mask_from([1, 2, 3]),)

    def test_k4_has_seven_circuits(self):
        m = Matroid.from_graph(4, K4_EDGES)
        triangles = [(1, 2, 4), (1, 3, 5), (2, 3, 6), (4, 5, 6)]
        quads = [(1, 2, 5, 6), (1, 3, 4, 6), (2, 3, 4, 5)]
        expected = sorted(
            (mask_from(c) for c in triangles + quads),
            key=lambda c: (bin(c).count("1"), elements_of(c)),
        )
        assert list(m.circuits) == expected

    def test_path_is_free(self):
        m = Matroid.from_graph(4, [(1, 2), (2, 3), (3, 4)])
        assert m.circuits == ()

    def test_loop_rejected(self):
        with pytest.raises(NonSimpleError):
            Matroid.from_graph(3, [(1, 1), (2, 3)])

    def test_multi_edge_rejected(self):
        with pytest.raises(NonSimpleError):
            Matroid.from_graph(3, [(1, 2), (2, 1), (2, 3)])


class TestRankClosure:
    def test_free_rank_is_size(self):
        free = Matroid.from_circuits(5, [])
        rng = random.Random(1)
        for _ in range(20):
            mask = rng.randrange(32)
            assert free.rank(mask) == bin(mask).count("1")

    def test_u23_rank(self):
        m = Matroid.from_circuits(3, [(1, 2, 3)])
        assert m.rank({1, 2, 3}) == 2

    def test_paper_full_rank(self, paper):
        assert paper.rank(range(1, 7)) == 4
        assert fraction_matrix_rank(PAPER_NORMALS) == 4

    def test_rank_against_brute_force(self, paper):
        for mask in range(64):
            assert paper.rank(mask) == brute_force_rank(paper, mask)

    def test_rank_submodular(self):
        rng = random.Random(2)
        matroids = [
            uniform_matroid(3, 6),
            Matroid.from_graph(4, K4_EDGES),
            Matroid.from_circuits(6, PAPER_CIRCUITS),
        ]
        for m in matroids:
            for _ in range(60):
                s = rng.randrange(1 << m.n)
                t = rng.randrange(1 << m.n)
                assert m.rank(s | t) + m.rank(s & t) <= m.rank(s) + m.rank(t)

    def test_closure_free(self):
        free = Matroid.from_circuits(4, [])
        assert free.closure({1, 3}) == mask_from([1, 3])

    def test_closure_u23(self):
        m = Matroid.from_circuits(3, [(1, 2, 3)])
        assert m.closure({1, 2}) == mask_from([1, 2, 3])

    def test_closure_paper(self, paper):
        # both 5-circuits pull H and P into the closure of {x,y,z,t}
        assert paper.closure({X, Y, Z, T}) == mask_from(range(1, 7))

    def test_closure_operator_laws(self, paper):
        rng = random.Random(3)
        for _ in range(60):
            s = rng.randrange(64)
            t = rng.randrange(64)
            cl = paper.closure(s)
            assert cl & s == s
            assert paper.closure(cl) == cl
            if s & ~t == 0:
                assert paper.closure(s) & ~paper.closure(t) == 0

    def test_matrix_and_circuit_routes_agree(self, paper):
        from_matrix = Matroid.from_matrix(Arrangement(PAPER_NORMALS))
        for mask in range(64):
            assert from_matrix.rank(mask) == paper.rank(mask)
            assert from_matrix.closure(mask) == paper.closure(mask)


class TestActiveAlpha:
    def test_free_has_no_active(self):
        free = Matroid.from_circuits(4, [])
        assert free.active_elements({1, 2}, VariableOrder.natural(4)) == 0

    def test_u23_active(self):
        m = Matroid.from_circuits(3, [(1, 2, 3)])
        assert m.active_elements({2, 3}, VariableOrder.natural(3)) == mask_from([1])

    def test_paper_active(self, paper):
        active = paper.active_elements({X, Y, Z, T}, ORDER_HPXYZT)
        assert active == mask_from([H, P])

    def test_dependent_input_rejected(self, paper):
        with pytest.raises(ValueError):
            paper.active_elements({H, P, Y, Z}, ORDER_HPXYZT)

    def test_active_disjoint_and_in_closure(self, paper):
        rng = random.Random(4)
        for _ in range(80):
            mask = rng.randrange(64)
            if not paper.is_independent(mask):
                continue
            order = random_order(rng, 6)
            active = paper.active_elements(mask, order)
            assert active & mask == 0
            assert active & ~paper.closure(mask) == 0

    def test_u23_alpha(self):
        m = Matroid.from_circuits(3, [(1, 2, 3)])
        assert m.alpha((1, 2, 3), VariableOrder.natural(3)) == 1

    def test_paper_alpha_P_circuit(self, paper):
        # adding H to {x,y,z,t} closes the other 5-circuit, so H is active
        # and order-smaller than P
        assert paper.alpha((P, X, Y, Z, T), ORDER_HPXYZT) == H

    def test_paper_alpha_H_circuit(self, paper):
        assert paper.alpha((H, X, Y, Z, T), ORDER_HPXYZT) == H

    def test_non_circuit_rejected(self, paper):
        with pytest.raises(ValueError):
            paper.alpha((X, Y, Z), ORDER_HPXYZT)

    def test_alpha_never_exceeds_inf(self, paper):
        rng = random.Random(5)
        for m in (paper, uniform_matroid(3, 6), Matroid.from_graph(4, K4_EDGES)):
            for _ in range(40):
                order = random_order(rng, m.n)
                for c in m.circuits:
                    a = m.alpha(c, order)
                    inf = order.min_element(c)
                    assert order.rank_of(a) <= order.rank_of(inf)
                    # brute-force the definition of alpha
                    broken = c ^ (1 << (inf - 1))
                    actives = []
                    for i in range(1, m.n + 1):
                        bit = 1 << (i - 1)
                        if bit & broken:
                            continue
                        trial = broken | bit
                        witnessed = any(
                            c2 & ~trial == 0 and order.min_element(c2) == i
                            for c2 in m.circuits
                        )
                        if witnessed:
                            actives.append(i)
                    assert a == min(actives, key=order.rank_of)


class TestForgeCircuits:
    def test_paper_natural_order(self, paper):
        expected = {mask_from(c) for c in PAPER_CIRCUITS}
        assert set(paper.forge_circuits(ORDER_XYZTHP)) == expected

    def test_paper_hp_order(self, paper):
        expected = {
            mask_from((H, P, Y, Z)),
            mask_from((H, P, X, T)),
            mask_from((H, X, Y, Z, T)),
        }
        assert set(paper.forge_circuits(ORDER_HPXYZT)) == expected

    def test_free_matroid_empty(self):
        free = Matroid.from_circuits(5, [])
        assert free.forge_circuits(VariableOrder.natural(5)) == ()

    def test_broken_circuits_incomparable(self, paper):
        rng = random.Random(6)
        for m in (paper, uniform_matroid(3, 6), Matroid.from_graph(4, K4_EDGES)):
            for _ in range(50):
                order = random_order(rng, m.n)
                brokens = [
                    c ^ (1 << (order.min_element(c) - 1))
                    for c in m.forge_circuits(order)
                ]
                for a, b in combinations(brokens, 2):
                    assert a & ~b and b & ~a


class TestNbcSets:
    def test_free_counts(self):
        free = Matroid.from_circuits(5, [])
        from math import comb

        order = VariableOrder.natural(5)
        for q in range(6):
            assert len(free.nbc_sets(order, q)) == comb(5, q)

    def test_u23_degree_two(self):
        m = Matroid.from_circuits(3, [(1, 2, 3)])
        sets = m.nbc_sets(VariableOrder.natural(3), 2)
        assert set(sets) == {mask_from([1, 2]), mask_from([1, 3])}

    def test_count_order_invariant(self, paper):
        rng = random.Random(8)
        orders = [random_order(rng, 6) for _ in range(6)] + [ORDER_XYZTHP]
        for q in range(7):
            counts = {len(paper.nbc_sets(o, q)) for o in orders}
            assert len(counts) == 1


class TestHomotopyDegree:
    def test_paper(self, paper):
        assert paper.homotopy_degree() == 2

    def test_free(self):
        assert Matroid.from_circuits(4, []).homotopy_degree() is None

    def test_u36(self):
        assert uniform_matroid(3, 6).homotopy_degree() == 2

    def test_triangle_only(self):
        # all circuits are 3-element: nothing longer than 3 exists
        m = Matroid.from_graph(3, [(1, 2), (2, 3), (1, 3)])
        assert m.homotopy_degree() is None
