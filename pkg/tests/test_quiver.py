import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mutlab import (
    CapExceeded,
    InvalidExtension,
    InvalidQuiver,
    InvalidVertex,
    Quiver,
    canonical_key,
    condensation_cuts,
    cycle_quiver,
    degree_profile,
    enumerate_mutation_class,
    is_isomorphic,
    markov_quiver,
    mutate,
    path_quiver,
    triangular_extension,
)
from mutlab.fixtures import load_fixture
from mutlab.quiver import (
    canonical_labelling,
    iter_condensation_cuts,
    strongly_connected_components,
)

from .conftest import quivers, random_quiver
from .oracles import bfs_class, brute_cuts, brute_isomorphic, matrix_mutation, nx_isomorphic


def arrows_of(q):
    return sorted((a.src, a.tgt) for a in q.arrows)


class TestConstruction:
    def test_rejects_loop(self):
        with pytest.raises(InvalidQuiver):
            Quiver(2, 0, [(1, 1)])

    def test_rejects_two_cycle(self):
        with pytest.raises(InvalidQuiver):
            Quiver(2, 0, [(1, 2), (2, 1)])

    def test_rejects_out_of_range(self):
        with pytest.raises(InvalidQuiver):
            Quiver(2, 0, [(1, 3)])

    def test_arrow_ids_follow_positions(self):
        q = Quiver(3, 0, [(1, 2), (2, 3), (1, 2)])
        assert [a.id for a in q.arrows] == [0, 1, 2]
        assert q.multiplicity(1, 2) == 2

    def test_matrix_round_trip(self):
        q = markov_quiver()
        b = q.exchange_matrix()
        assert (b == -b.T).all()
        assert Quiver.from_matrix(b) == q

    def test_from_matrix_rejects_non_skew(self):
        with pytest.raises(InvalidQuiver):
            Quiver.from_matrix([[0, 1], [1, 0]])

    @given(quivers())
    def test_json_round_trip(self, q):
        assert Quiver.from_json(q.to_json()) == q

    def test_json_format(self):
        d = path_quiver(2).to_dict()
        assert d == {"n_mutable": 2, "n_frozen": 0, "arrows": [[1, 2]]}


class TestMutate:
    def test_a2_source_reversal(self):
        assert arrows_of(mutate(path_quiver(2), 1)) == [(2, 1)]

    def test_three_cycle_at_3(self):
        q = mutate(cycle_quiver(3), 3)
        assert arrows_of(q) == [(1, 3), (3, 2)]

    def test_markov_is_fixed_up_to_isomorphism(self):
        q = markov_quiver()
        for k in (1, 2, 3):
            assert is_isomorphic(mutate(q, k), q)

    @pytest.mark.parametrize("k", [0, 4, "1", None])
    def test_invalid_vertex(self, k):
        with pytest.raises(InvalidVertex):
            mutate(markov_quiver(), k)

    def test_frozen_vertex_rejected(self):
        q = Quiver(1, 1, [(1, 2)])
        with pytest.raises(InvalidVertex):
            mutate(q, 2)

    def test_frozen_composites_dropped(self):
        # 2 -> 1 -> 3 with 2, 3 frozen: no arrow 2 -> 3 appears
        q = Quiver(1, 2, [(2, 1), (1, 3)])
        assert arrows_of(mutate(q, 1)) == [(1, 2), (3, 1)]

    def test_output_arrows_sorted(self):
        q = mutate(cycle_quiver(4), 2)
        pairs = [(a.src, a.tgt) for a in q.arrows]
        assert pairs == sorted(pairs)

    @given(quivers(), st.data())
    def test_agrees_with_matrix_formula(self, q, data):
        k = data.draw(st.integers(1, q.n_mutable))
        expected = matrix_mutation(q.exchange_matrix(), k, q.n_mutable)
        assert (mutate(q, k).exchange_matrix() == expected).all()

    @given(quivers(), st.data())
    def test_involution(self, q, data):
        k = data.draw(st.integers(1, q.n_mutable))
        twice = mutate(mutate(q, k), k)
        assert twice == q
        assert canonical_key(twice) == canonical_key(q)

    @given(quivers(), st.lists(st.integers(1, 6), max_size=8))
    def test_skew_symmetry_preserved(self, q, ks):
        for k in ks:
            if k <= q.n_mutable:
                q = mutate(q, k)
        b = q.exchange_matrix()
        assert (b == -b.T).all()


class TestCanonicalKey:
    def test_markov_relabelled(self):
        q = markov_quiver()
        assert canonical_key(q.relabel({1: 2, 2: 3, 3: 1})) == canonical_key(q)

    def test_path_reversed(self):
        assert canonical_key(path_quiver(3)) == canonical_key(Quiver(3, 0, [(3, 2), (2, 1)]))

    def test_path_vs_source_in_middle(self):
        a, b = path_quiver(3), Quiver(3, 0, [(2, 1), (2, 3)])
        assert canonical_key(a) != canonical_key(b)
        assert not brute_isomorphic(a, b)

    def test_markov_vs_cycle(self):
        assert not is_isomorphic(markov_quiver(), cycle_quiver(3))

    def test_frozen_set_respected(self):
        a = Quiver(1, 1, [(1, 2)])
        b = Quiver(2, 0, [(1, 2)])
        assert canonical_key(a) != canonical_key(b)

    def test_keys_are_ordered_bytes(self):
        keys = sorted(canonical_key(q) for q in (markov_quiver(), path_quiver(3), cycle_quiver(3)))
        assert all(isinstance(k, bytes) for k in keys)

    def test_canonical_labelling_relabels_to_canonical_form(self):
        q = load_fixture("genus2")[0]
        key, order = canonical_labelling(q)
        perm = {v: i + 1 for i, v in enumerate(order)}
        assert canonical_labelling(q.relabel(perm))[0] == key

    def test_invariant_under_100_random_relabellings(self):
        rng = random.Random(7)
        q = random_quiver(rng, 7, 2)
        key = canonical_key(q)
        for _ in range(100):
            pm = list(range(1, 8))
            pf = [8, 9]
            rng.shuffle(pm)
            rng.shuffle(pf)
            perm = dict(zip(range(1, 10), pm + pf))
            assert canonical_key(q.relabel(perm)) == key

    @given(quivers(max_vertices=4, max_frozen=1), quivers(max_vertices=4, max_frozen=1))
    def test_key_equality_matches_brute_force(self, a, b):
        assert (canonical_key(a) == canonical_key(b)) == brute_isomorphic(a, b)

    def test_agrees_with_networkx_on_random_pairs(self):
        rng = random.Random(11)
        for _ in range(60):
            a = random_quiver(rng, 6, 1, density=0.5)
            b = random_quiver(rng, 6, 1, density=0.5) if rng.random() < 0.5 else a.relabel(
                dict(zip(range(1, 8), rng.sample(range(1, 7), 6) + [7]))
            )
            assert (canonical_key(a) == canonical_key(b)) == nx_isomorphic(a, b)

    def test_regular_graphs_distinguished(self):
        # two 2-regular quivers that colour refinement alone cannot split
        c6 = cycle_quiver(6)
        two_c3 = Quiver(6, 0, [(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)])
        assert canonical_key(c6) != canonical_key(two_c3)


class TestMutationClass:
    def test_markov(self):
        assert len(enumerate_mutation_class(markov_quiver())) == 1

    def test_a3(self):
        cls = enumerate_mutation_class(path_quiver(3))
        assert len(cls) == 4
        oracle = bfs_class(path_quiver(3), iso=brute_isomorphic)
        assert len(oracle) == 4
        for q in oracle:
            assert q in cls

    def test_single_vertex(self):
        assert len(enumerate_mutation_class(Quiver(1))) == 1

    @pytest.mark.parametrize("n, size", [(4, 6), (5, 19)])
    def test_type_a_counts(self, n, size):
        # class sizes of A_n quivers up to isomorphism
        assert len(enumerate_mutation_class(path_quiver(n))) == size

    def test_matches_networkx_oracle_on_d4(self):
        d4 = Quiver(4, 0, [(1, 2), (3, 2), (4, 2)])
        ours = enumerate_mutation_class(d4)
        oracle = bfs_class(d4)
        assert len(ours) == len(oracle)

    def test_cap(self):
        with pytest.raises(CapExceeded) as err:
            enumerate_mutation_class(path_quiver(5), cap=3)
        assert len(err.value.partial) == 3

    def test_cap_must_be_positive(self):
        with pytest.raises(ValueError):
            enumerate_mutation_class(markov_quiver(), cap=0)

    def test_paths_reach_representatives(self):
        cls = enumerate_mutation_class(path_quiver(4))
        for key in cls.keys:
            q = path_quiver(4)
            for k in cls.paths[key]:
                q = mutate(q, k)
            assert q == cls.representatives[key]

    def test_frozen_vertices_never_mutated(self):
        q = Quiver(2, 1, [(1, 2), (2, 3)])
        for rep in enumerate_mutation_class(q):
            assert rep.n_frozen == 1


class TestDegreeProfile:
    def test_a2(self):
        assert degree_profile(path_quiver(2)) == {1: (0, 1), 2: (1, 0)}

    def test_q11(self):
        q = load_fixture("q11")[0].induced([1, 2, 3, 4])
        prof = degree_profile(q)
        assert prof[3] == (1, 2)
        assert prof[4] == (2, 1)
        assert prof[1] == prof[2] == (2, 2)

    def test_genus2_two_regular(self):
        q = load_fixture("genus2")[0]
        assert set(degree_profile(q).values()) == {(2, 2)}

    @given(quivers())
    def test_sums(self, q):
        prof = degree_profile(q)
        assert sum(i for i, _ in prof.values()) == q.n_arrows
        assert sum(o for _, o in prof.values()) == q.n_arrows


class TestTriangularExtension:
    def test_two_points_one_arrow(self):
        assert triangular_extension(Quiver(1), Quiver(1), [(1, 1)]) == path_quiver(2)

    def test_no_arrows(self):
        q = triangular_extension(Quiver(1), Quiver(1))
        assert q.n_vertices == 2 and q.n_arrows == 0

    def test_direction_checked(self):
        with pytest.raises(InvalidExtension):
            triangular_extension(Quiver(1), Quiver(2), [(2, 1)])

    def test_glued_q11_copies(self):
        e = load_fixture("q11")[0].unfrozen()
        q = triangular_extension(e, e, [(5, 5)])
        assert (q.n_vertices, q.n_arrows) == (10, 19)
        assert q.multiplicity(5, 10) == 1
        assert condensation_cuts(q) == [([1, 2, 3, 4, 5], [6, 7, 8, 9, 10])]


class TestCuts:
    def test_three_cycle(self):
        assert condensation_cuts(cycle_quiver(3)) == []

    def test_a2(self):
        assert condensation_cuts(path_quiver(2)) == [([1], [2])]

    def test_path(self):
        assert sorted(condensation_cuts(path_quiver(3))) == [([1], [2, 3]), ([1, 2], [3])]

    @given(quivers(max_vertices=6, max_frozen=0))
    def test_matches_brute_force(self, q):
        assert sorted(condensation_cuts(q)) == brute_cuts(q)

    @given(quivers(max_vertices=6, max_frozen=0))
    def test_point_cuts_subset(self, q):
        pts = sorted(iter_condensation_cuts(q, max_side=1))
        assert pts == [c for c in brute_cuts(q) if min(len(c[0]), len(c[1])) == 1]

    @given(quivers(max_vertices=6, max_frozen=0))
    def test_scc_partition(self, q):
        import networkx as nx

        from .oracles import to_nx

        ours = sorted(map(tuple, strongly_connected_components(q)))
        theirs = sorted(tuple(sorted(c)) for c in nx.strongly_connected_components(to_nx(q)))
        assert ours == theirs

    @given(quivers(max_vertices=6, max_frozen=0))
    def test_cut_iff_extension(self, q):
        # every cut rebuilds q as a triangular extension of its two sides
        for a, b in condensation_cuts(q):
            bridging = [(a.index(s) + 1, b.index(t) + 1) for s, t in
                        ((x.src, x.tgt) for x in q.arrows) if s in a and t in b]
            rebuilt = triangular_extension(q.induced(a), q.induced(b), bridging)
            assert rebuilt == q.relabel({v: i + 1 for i, v in enumerate(a + b)})

    def test_genus2_class_strongly_connected(self):
        for rep in enumerate_mutation_class(load_fixture("genus2")[0]):
            assert condensation_cuts(rep) == []


def test_to_dot_shapes():
    q = load_fixture("hexagon")[0]
    dot = q.to_dot()
    assert dot.count("shape=box") == 6
    assert dot.count("shape=circle") == 3
    assert dot.count("->") == q.n_arrows


def test_exchange_matrix_is_numpy():
    assert isinstance(markov_quiver().exchange_matrix(), np.ndarray)


@given(st.lists(st.integers(-(10**12), 10**12), max_size=8))
def test_key_encoding_round_trip(body):
    from mutlab.canonical import decode_key, encode_key

    code = (3, 1) + tuple(body)
    assert decode_key(encode_key(code)) == code


def test_huge_multiplicities_have_keys():
    q = Quiver(3, 0, [(1, 2)] * 3 + [(2, 3)] * 3 + [(3, 1)] * 3)
    for k in (1, 2, 3, 1, 2, 3, 1, 2):
        q = Quiver._from_rows(mutate(q, k)._b, 3)
    assert max(max(r) for r in q._b) > 2**32
    assert canonical_key(q) == canonical_key(q.relabel({1: 2, 2: 3, 3: 1}))
