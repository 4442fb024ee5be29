import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mutlab import CapExceeded, InvalidVertex, NotTwoRegular, Quiver, markov_quiver, path_quiver
from mutlab.index import (
    IndexVector,
    coeff_sum_walk,
    mutate_index,
    random_walk,
    sigma_obstruction,
)
from mutlab.surface import build_genus

from .conftest import quivers


def oracle_mutate_index(b, y, k):
    """The rule spelled out on arrow counts: i->k arrows and k->i arrows."""
    out = list(y)
    yk = y[k]
    for i in range(len(y)):
        if i == k:
            continue
        into_k = max(-int(b[k][i]), 0)
        from_k = max(int(b[k][i]), 0)
        out[i] = y[i] + into_k * max(yk, 0) - from_k * max(-yk, 0)
    out[k] = -yk
    return out


class TestMutateIndex:
    def test_markov(self):
        v = mutate_index(IndexVector((-1, -1, -1), markov_quiver()), 1)
        # 1 => 2 (out), 3 => 1 (in)
        assert v.coeffs == (1, -3, -1)
        assert v.total == -3

    def test_zero_fixed(self):
        q = build_genus(2)[1]
        for k in q.vertices:
            assert mutate_index(IndexVector((0,) * 9, q), k).coeffs == (0,) * 9

    def test_a2_changes_sum(self):
        sums = coeff_sum_walk(IndexVector((1, 0), path_quiver(2)), [1])
        assert sums == [1, -1]

    def test_empty_walk(self):
        assert coeff_sum_walk(IndexVector((2, -1), path_quiver(2)), []) == [1]

    def test_invalid_vertex(self):
        v = IndexVector((0, 0, 0), markov_quiver())
        for k in (0, 4, "1"):
            with pytest.raises(InvalidVertex):
                mutate_index(v, k)

    def test_length_checked(self):
        with pytest.raises(ValueError):
            IndexVector((1,), markov_quiver())

    def test_frozen_vertices_carry_no_coefficient(self):
        q = Quiver(2, 1, [(1, 2), (3, 1)])
        v = mutate_index(IndexVector((2, 1), q), 1)
        assert v.coeffs == (-2, 1)

    @given(quivers(max_vertices=5, max_mult=3), st.data())
    def test_matches_oracle(self, q, data):
        y = data.draw(st.lists(st.integers(-5, 5), min_size=q.n_mutable, max_size=q.n_mutable))
        k = data.draw(st.integers(1, q.n_mutable))
        b = q.exchange_matrix()
        got = mutate_index(IndexVector(tuple(y), q), k)
        assert list(got.coeffs) == oracle_mutate_index(b, y, k - 1)

    @given(quivers(max_vertices=5, max_mult=3), st.data())
    def test_involution(self, q, data):
        y = data.draw(st.lists(st.integers(-5, 5), min_size=q.n_mutable, max_size=q.n_mutable))
        k = data.draw(st.integers(1, q.n_mutable))
        v = IndexVector(tuple(y), q)
        w = mutate_index(mutate_index(v, k), k)
        assert w.coeffs == v.coeffs and w.quiver == q

    @given(quivers(max_vertices=5, max_mult=2, max_frozen=0), st.data())
    def test_sum_invariant_iff_balanced(self, q, data):
        k = data.draw(st.integers(1, q.n_mutable))
        b = q.exchange_matrix()
        outs = sum(max(int(x), 0) for x in b[k - 1])
        ins = sum(max(-int(x), 0) for x in b[k - 1])
        y = data.draw(st.lists(st.integers(-5, 5), min_size=q.n_mutable, max_size=q.n_mutable))
        v = IndexVector(tuple(y), q)
        after = mutate_index(v, k).total
        yk = y[k - 1]
        # change = -2 y_k + ins [y_k]_+ - outs [-y_k]_+
        assert after - v.total == -2 * yk + ins * max(yk, 0) - outs * max(-yk, 0)
        if ins == outs == 2:
            assert after == v.total


class TestWalks:
    @pytest.mark.parametrize("g", [2, 3])
    def test_sum_constant(self, g):
        q = build_genus(g)[1]
        n = 6 * g - 3
        ks = random_walk(q, 1000, random.Random(g))
        sums = coeff_sum_walk(IndexVector((-1,) * n, q), ks)
        assert len(sums) == 1001 and set(sums) == {-n}

    def test_random_walk_reproducible(self):
        q = build_genus(2)[1]
        assert random_walk(q, 20, random.Random(5)) == random_walk(q, 20, random.Random(5))
        assert all(1 <= k <= 9 for k in random_walk(q, 50))


class TestObstruction:
    @pytest.mark.parametrize("g,n", [(1, 3), (2, 9), (3, 15)])
    def test_sums(self, g, n):
        r = sigma_obstruction(build_genus(g)[1])
        assert (r.start_sum, r.target_sum) == (-n, n)
        assert r.invariant_holds and r.verdict == "unreachable by any mutation sequence"

    def test_json(self):
        d = sigma_obstruction(markov_quiver()).to_dict()
        assert set(d) == {"start_sum", "target_sum", "invariant_holds", "verdict"}

    def test_class_check_confirms_surface(self):
        assert sigma_obstruction(build_genus(2)[1], class_cap=100).invariant_holds

    def test_class_check_catches_non_surface(self):
        q = Quiver(4, 0, [(1, 2)] * 2 + [(2, 3)] * 2 + [(3, 4)] * 2 + [(4, 1)] * 2)
        r = sigma_obstruction(q, class_cap=100)
        assert not r.invariant_holds and r.verdict.startswith("inconclusive")

    def test_class_check_cap(self):
        with pytest.raises(CapExceeded):
            sigma_obstruction(build_genus(2)[1], class_cap=3)

    def test_not_two_regular(self):
        with pytest.raises(NotTwoRegular):
            sigma_obstruction(path_quiver(3))


def test_frozen_arrows_ignored_by_obstruction():
    q = build_genus(2)[1]
    arrows = [(a.src, a.tgt) for a in q.arrows] + [(10, 1), (2, 10)]
    r = sigma_obstruction(Quiver(9, 1, arrows))
    assert (r.start_sum, r.target_sum) == (-9, 9) and r.invariant_holds
