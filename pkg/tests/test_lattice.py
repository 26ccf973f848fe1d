import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wallman_lab.enumeration import (
    all_labeled_lattices,
    lattices_of_size,
    posets_up_to_iso,
)
from wallman_lab.errors import (
    LatticeLawViolation,
    MalformedTables,
    NotDistributive,
    NotPliand,
)
from wallman_lab.lattice import (
    Chicane,
    PliandFoursome,
    birkhoff_poset,
    chain,
    chicane_identities_hold,
    conn,
    diamond_m3,
    downset_lattice,
    enumerate_distributive,
    find_chicane,
    is_disjunctive,
    is_distributive,
    is_normal,
    join_irreducibles,
    lattice_isomorphism,
    powerset_lattice,
    satisfies_HI,
    satisfies_dim_le1,
    table_violations,
    validate,
)


def mask_meet_name(k):
    return tuple(f"s{m}" for m in range(1 << k))


class TestValidate:
    def test_two_element_lattice_is_smallest(self):
        L = chain(2)
        assert L.n == 2 and L.bottom == 0 and L.top == 1

    def test_rejects_one_element(self):
        with pytest.raises(MalformedTables):
            validate(("x",), ((0,),), ((0,),), 0, 0)

    def test_rejects_ragged_tables(self):
        with pytest.raises(MalformedTables):
            validate(("a", "b"), ((0,), (0, 1)), ((0, 1), (1, 1)), 0, 1)

    def test_reports_broken_absorption(self):
        # meet says a^b=a but join says avb=a too while order disagrees
        meet = ((0, 0, 0), (0, 1, 1), (0, 1, 2))
        join = ((0, 1, 2), (1, 1, 1), (2, 1, 2))  # 1 v 2 should be 2
        with pytest.raises(LatticeLawViolation) as exc:
            validate(("0", "m", "1"), meet, join, 0, 2)
        assert exc.value.violations

    def test_table_violations_empty_for_valid(self):
        L = powerset_lattice(2)
        assert table_violations(L.names, L.meet, L.join, L.bottom, L.top) == []


class TestStandardExamples:
    def test_chain_order(self):
        L = chain(4)
        assert L.leq(0, 3) and L.leq(1, 2) and not L.leq(2, 1)

    def test_powerset_index_is_bitmask(self):
        L = powerset_lattice(3)
        assert L.meet[0b101][0b110] == 0b100
        assert L.join[0b101][0b010] == 0b111

    def test_m3_is_not_distributive(self):
        ok, witness = is_distributive(diamond_m3())
        assert not ok and witness is not None
        x, y, z = witness
        L = diamond_m3()
        assert L.meet[x][L.join[y][z]] != L.join[L.meet[x][y]][L.meet[x][z]]

    def test_powerset_is_distributive(self):
        assert is_distributive(powerset_lattice(3)) == (True, None)


class TestDisjunctive:
    def test_powerset_disjunctive(self):
        assert is_disjunctive(powerset_lattice(2))[0]

    def test_three_chain_not_disjunctive(self):
        ok, witness = is_disjunctive(chain(3))
        assert not ok
        a, b = witness
        L = chain(3)
        # no nonzero c <= a misses b
        assert not L.leq(a, b)
        for c in L.elements():
            if c != L.bottom and L.leq(c, a):
                assert L.meet[c][b] != L.bottom

    def test_witness_requires_nonzero_c(self):
        # the separating element must be nonzero, otherwise everything passes
        ok, _ = is_disjunctive(chain(2))
        assert ok


class TestNormality:
    def test_powerset_normal_with_witness_map(self):
        L = powerset_lattice(3)
        ok, witnesses = is_normal(L)
        assert ok
        for (x, y), (u, v) in witnesses.items():
            assert L.meet[x][y] == L.bottom
            assert L.meet[x][u] == L.bottom
            assert L.meet[y][v] == L.bottom
            assert L.join[u][v] == L.top

    def test_minimal_non_normal_has_five_elements(self):
        # order: 0 < a,b < a v b < 1 with the top strictly above the join
        names = ("0", "a", "b", "ab", "1")
        meet = (
            (0, 0, 0, 0, 0),
            (0, 1, 0, 1, 1),
            (0, 0, 2, 2, 2),
            (0, 1, 2, 3, 3),
            (0, 1, 2, 3, 4),
        )
        join = (
            (0, 1, 2, 3, 4),
            (1, 1, 3, 3, 4),
            (2, 3, 2, 3, 4),
            (3, 3, 3, 3, 4),
            (4, 4, 4, 4, 4),
        )
        L = validate(names, meet, join, 0, 4)
        ok, offending = is_normal(L)
        assert not ok and offending == (1, 2)
        for n in (2, 3, 4):
            for M in lattices_of_size(n):
                assert is_normal(M)[0]

    def test_every_chain_is_normal(self):
        for k in range(2, 6):
            assert is_normal(chain(k))[0]


class TestConn:
    def test_two_element_connected(self):
        assert conn(chain(2), 1)[0]

    def test_powerset_top_disconnected(self):
        L = powerset_lattice(2)
        ok, witness = conn(L, L.top)
        assert not ok
        x, y = witness
        assert L.meet[x][y] == L.bottom and L.join[x][y] == L.top

    def test_conn_of_atom_in_powerset(self):
        L = powerset_lattice(2)
        assert conn(L, 0b01)[0]


class TestChicane:
    def test_rejects_non_pliand(self):
        L = powerset_lattice(2)
        with pytest.raises(NotPliand):
            find_chicane(L, PliandFoursome(1, 1, 0, 0))

    def test_powerset_chicane_exists(self):
        L = powerset_lattice(3)
        fs = PliandFoursome(0b001, 0b010, 0b110, 0b101)
        ch = find_chicane(L, fs)
        assert ch is not None
        assert chicane_identities_hold(L, fs, ch)

    def test_canonical_witness_triple(self):
        # X0 = C, X1 = S minus (C union D), X2 = D always works in a power set
        L = powerset_lattice(4)
        full = L.top
        for c in range(1, 16):
            for d in range(1, 16):
                if c & d:
                    continue
                fs = PliandFoursome(c, d, full & ~c, full & ~d)
                ch = Chicane(c, full & ~(c | d), d)
                assert chicane_identities_hold(L, fs, ch)

    def test_satisfies_HI_powerset(self):
        assert satisfies_HI(powerset_lattice(2))[0]
        assert satisfies_HI(powerset_lattice(3))[0]

    def test_dim_le1_powerset(self):
        ok, witnesses = satisfies_dim_le1(powerset_lattice(2))
        assert ok
        L = powerset_lattice(2)
        for (x0, y0, x1, y1), (u0, v0, u1, v1) in witnesses.items():
            assert L.join[u0][v0] == L.top and L.join[u1][v1] == L.top
            assert L.meet[L.meet[u0][v0]][L.meet[u1][v1]] == L.bottom


class TestBirkhoff:
    def test_downset_of_antichain_is_powerset(self):
        from wallman_lab.lattice import Poset

        P = Poset(3, tuple(tuple(i == j for j in range(3)) for i in range(3)))
        L = downset_lattice(P)
        assert lattice_isomorphism(L, powerset_lattice(3)) is not None

    def test_join_irreducibles_of_powerset_are_atoms(self):
        L = powerset_lattice(3)
        assert sorted(join_irreducibles(L)) == [0b001, 0b010, 0b100]

    def test_round_trip_through_poset(self):
        for L in enumerate_distributive(5):
            P = birkhoff_poset(L)
            M = downset_lattice(P)
            assert lattice_isomorphism(L, M) is not None

    def test_birkhoff_rejects_m3(self):
        with pytest.raises(NotDistributive):
            birkhoff_poset(diamond_m3())


class TestIsomorphism:
    def test_permuted_tables_are_isomorphic(self):
        L = powerset_lattice(2)
        perm = [0, 2, 1, 3]
        inv = [perm.index(i) for i in range(4)]
        names = tuple(L.names[perm[i]] for i in range(4))
        meet = tuple(
            tuple(inv[L.meet[perm[i]][perm[j]]] for j in range(4)) for i in range(4)
        )
        join = tuple(
            tuple(inv[L.join[perm[i]][perm[j]]] for j in range(4)) for i in range(4)
        )
        M = validate(names, meet, join, inv[L.bottom], inv[L.top])
        assert lattice_isomorphism(L, M) is not None

    def test_chain_vs_powerset_not_isomorphic(self):
        assert lattice_isomorphism(chain(4), powerset_lattice(2)) is None


class TestEnumeration:
    def test_poset_counts(self):
        for m, count in enumerate([1, 1, 2, 5, 16, 63], start=0):
            assert len(posets_up_to_iso(m)) == count

    def test_lattice_counts(self):
        expected = {2: 1, 3: 1, 4: 2, 5: 5, 6: 15, 7: 53, 8: 222}
        for n, count in expected.items():
            assert len(lattices_of_size(n)) == count

    def test_enumeration_matches_naive_oracle(self):
        for n in range(2, 5):
            naive = all_labeled_lattices(n)
            classes = lattices_of_size(n)
            # every naive lattice is isomorphic to exactly one class member
            for L in naive:
                hits = [M for M in classes if lattice_isomorphism(L, M) is not None]
                assert len(hits) == 1
            # and the classes are pairwise non-isomorphic
            for i, A in enumerate(classes):
                for B in classes[i + 1 :]:
                    assert lattice_isomorphism(A, B) is None

    def test_enumerated_lattices_validate(self):
        for n in range(2, 7):
            for L in lattices_of_size(n):
                assert table_violations(L.names, L.meet, L.join, L.bottom, L.top) == []

    def test_distributive_enumeration_sound_and_sorted(self):
        sizes = []
        for L in enumerate_distributive(6):
            assert is_distributive(L)[0]
            sizes.append(L.n)
        assert sizes == sorted(sizes)
        # distributive lattices are exactly the down-set lattices of posets
        by_size = {n: sum(1 for s in sizes if s == n) for n in range(2, 7)}
        expected = {}
        for m in range(1, 6):
            for P in posets_up_to_iso(m):
                n = downset_lattice(P).n
                if 2 <= n <= 6:
                    expected[n] = expected.get(n, 0) + 1
        assert by_size == {n: expected.get(n, 0) for n in range(2, 7)}


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=2, max_value=6), st.data())
def test_meet_join_laws_on_enumerated_lattices(n, data):
    lattices = lattices_of_size(n)
    L = data.draw(st.sampled_from(lattices))
    a = data.draw(st.integers(min_value=0, max_value=L.n - 1))
    b = data.draw(st.integers(min_value=0, max_value=L.n - 1))
    c = data.draw(st.integers(min_value=0, max_value=L.n - 1))
    assert L.meet[a][b] == L.meet[b][a]
    assert L.join[a][b] == L.join[b][a]
    assert L.meet[a][L.meet[b][c]] == L.meet[L.meet[a][b]][c]
    assert L.join[a][L.join[b][c]] == L.join[L.join[a][b]][c]
    assert L.meet[a][L.join[a][b]] == a
    assert L.join[a][L.meet[a][b]] == a
