import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (
    closure_by_pairs,
    core_by_conjugates,
    is_associative_table,
    normalizer_by_scan,
    perm_from_cycles,
    reduced_latin_squares,
    subgroup_closure,
    subgroups_by_subsets,
)
from transversal_lab.catalog import catalog, catalog_listing, parse_group_ref
from transversal_lab.errors import (
    ClosureTooLarge,
    GroupTooLarge,
    MalformedCycle,
    NotAGroup,
    NotASubgroup,
    ParameterOutOfRange,
    UnknownFamily,
)
from transversal_lab.groups import (
    Permutation,
    Subgroup,
    all_subgroups,
    core,
    is_core_free,
    is_elementary_abelian_2,
    is_normal,
    make_group_from_permutations,
    make_group_from_table,
    normalizer,
    perm_group,
    perm_normalizer,
    right_cosets,
    stabilizer,
    subgroup_generated,
)

# first non-associative reduced Latin square of order 5 (none exist at order 3 or 4)
NONASSOC_5 = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 3, 4, 0, 1], [3, 4, 1, 2, 0], [4, 2, 0, 1, 3]]


def test_permutation_composition_applies_left_factor_first():
    r = Permutation.from_cycles("(1 2)", 3)
    s = Permutation.from_cycles("(2 3)", 3)
    for x in range(3):
        assert (r * s)(x) == s(r(x))
    assert (r * s).cycle_string(one_based=True) == "(1 3 2)"


def test_cycle_word_composes_left_to_right():
    p = Permutation.from_cycles("(1 2)(2 3)", 3)
    assert p == Permutation.from_cycles("(1 2)", 3) * Permutation.from_cycles("(2 3)", 3)
    assert Permutation.from_cycles("()", 4).is_identity()


@pytest.mark.parametrize("word", ["(1 2", "(1 1)", "(0 1)", "(1 5)", "1 2", "(a b)"])
def test_malformed_cycles(word):
    with pytest.raises(MalformedCycle):
        Permutation.from_cycles(word, 4)


def test_trivial_and_z2_tables():
    assert make_group_from_table([[0]]).order == 1
    G = make_group_from_table([[0, 1], [1, 0]])
    assert G.order == 2 and G.inverse == (0, 1)


def test_identity_is_relabelled_to_zero():
    # Z3 with the identity stored at index 2
    G = make_group_from_table([[1, 2, 0], [2, 0, 1], [0, 1, 2]])
    assert G.table[0] == (0, 1, 2)
    assert all(G.table[i][0] == i for i in range(3))


def test_no_order3_or_order4_counterexample_exists():
    # every reduced Latin square of order <= 4 is a group table
    for n in (3, 4):
        for sq in reduced_latin_squares(n):
            assert is_associative_table(sq)
            make_group_from_table(sq)


def test_nonassociative_latin_square_rejected():
    assert NONASSOC_5 == next(s for s in reduced_latin_squares(5) if not is_associative_table(s))
    with pytest.raises(NotAGroup) as exc:
        make_group_from_table(NONASSOC_5)
    assert exc.value.reason == "non-associative triple"
    a, b, c = exc.value.witness
    t = NONASSOC_5
    assert t[t[a][b]][c] != t[a][t[b][c]]


@pytest.mark.parametrize("table, reason", [
    ([[0, 2, 1], [2, 1, 0], [1, 0, 2]], "no identity"),  # x o y = -x - y mod 3
    ([[0, 1], [1, 1]], "non-bijective row"),
    ([[0, 1], [1]], "table is not square"),
    ([[0, 5], [1, 0]], "entry out of range"),
])
def test_not_a_group_reasons(table, reason):
    with pytest.raises(NotAGroup) as exc:
        make_group_from_table(table)
    assert exc.value.reason == reason


@pytest.mark.parametrize("gens, degree, order", [
    (["(1 2)"], 2, 2),
    (["(1 2)", "(1 2 3)"], 3, 6),
    (["(1 2 3 4)", "(1 3)"], 4, 8),
])
def test_groups_from_permutations(gens, degree, order):
    G = make_group_from_permutations(gens, degree)
    perms = [perm_from_cycles([tuple(int(t) for t in w.strip("()").split())], degree) for w in gens]
    assert G.order == order == len(closure_by_pairs(perms, degree))


def test_closure_cap(monkeypatch):
    with pytest.raises(ClosureTooLarge):
        make_group_from_permutations(["(1 2)", "(1 2 3 4 5)"], 5, cap=50)
    monkeypatch.setenv("TRANSVERSAL_LAB_CAP", "10")
    with pytest.raises(ClosureTooLarge):
        perm_group([Permutation.from_cycles("(1 2 3 4)", 4), Permutation.from_cycles("(1 2)", 4)])


@pytest.mark.parametrize("ref, order", [
    ("cyclic:1", 1), ("symmetric:3", 6), ("dihedral:4", 8), ("alternating:4", 12),
    ("quaternion8", 8), ("klein4", 4), ("C2*D4", 16), ("C2xC2xC2", 8), ("S4", 24),
])
def test_catalog_orders(ref, order):
    assert parse_group_ref(ref).order == order


def test_catalog_errors():
    with pytest.raises(UnknownFamily):
        catalog("mathieu", 11)
    with pytest.raises(ParameterOutOfRange):
        catalog("cyclic", 0)
    with pytest.raises(UnknownFamily):
        parse_group_ref("F7")


def test_dihedral_numbering():
    D4 = parse_group_ref("D4")
    r, s = 1, 4
    for i in range(4):
        for j in range(2):
            x = 0
            for _ in range(i):
                x = D4.table[x][r]
            for _ in range(j):
                x = D4.table[x][s]
            assert x == i + 4 * j


def test_quaternion_relations():
    Q = parse_group_ref("Q8")
    i, j, k, m1 = 1, 2, 3, 4
    assert Q.table[i][i] == Q.table[j][j] == Q.table[k][k] == m1
    assert Q.table[i][j] == k and Q.table[j][i] == 7
    assert is_elementary_abelian_2(Q) is False


def test_catalog_listing():
    assert [e.ref for e in catalog_listing(1)] == ["C1"]
    small = {e.ref: e for e in catalog_listing(6)}
    assert {"C2", "C3", "C4", "C5", "C6", "S3", "K4", "D3"} <= set(small)
    assert small["D3"].same_as == "S3"
    assert all(e.order <= 16 for e in catalog_listing())


def test_subgroup_generated(s3_case):
    G = s3_case[0]
    assert subgroup_generated(G, []).elements == (0,)
    assert subgroup_generated(G, G.elements).order == 6
    a, b = s3_case[2].reps[1:]
    assert subgroup_generated(G, [a, b]).order == 6
    assert subgroup_generated(G, [a, b]).elements == tuple(sorted(subgroup_closure(G.table, [a, b])))


def test_subgroup_validation():
    G = parse_group_ref("C4")
    with pytest.raises(NotASubgroup):
        Subgroup(G, (0, 1))
    with pytest.raises(NotASubgroup):
        Subgroup(G, (1, 3))


@pytest.mark.parametrize("ref, count", [("C1", 1), ("C4", 3), ("S3", 6), ("D4", 10), ("Q8", 6), ("K4", 5), ("A4", 10)])
def test_all_subgroups_against_subsets(ref, count):
    G = parse_group_ref(ref)
    subs = all_subgroups(G)
    assert [H.elements for H in subs] == subgroups_by_subsets(G.table)
    assert len(subs) == count


def test_subgroup_cap():
    with pytest.raises(GroupTooLarge):
        all_subgroups(parse_group_ref("C50"))
    assert len(all_subgroups(parse_group_ref("C50"), cap=50)) == 6


def test_right_cosets(s3_case):
    G, H = s3_case[:2]
    assert right_cosets(G, Subgroup(G, tuple(G.elements))) == [tuple(G.elements)]
    assert right_cosets(G, Subgroup(G, (0,))) == [(i,) for i in G.elements]
    blocks = right_cosets(G, H)
    assert blocks[0] == H.elements and len(blocks) == 3 and all(len(b) == 2 for b in blocks)
    for b in blocks:
        x = b[0]
        assert set(b) == {G.table[h][x] for h in H.elements}


def test_core_and_normalizer_examples(s3_case, d4_case):
    G, H = s3_case[:2]
    assert core(G, H).elements == (0,)
    assert normalizer(G, H).elements == H.elements
    A3 = subgroup_generated(G, [3])
    assert core(G, A3) == A3 and normalizer(G, A3).order == 6
    D4, Hs = d4_case[:2]
    assert core(D4, Hs).elements == (0,)
    # {e, s, r^2, r^2 s}
    assert normalizer(D4, Hs).elements == (0, 2, 4, 6)


@pytest.mark.parametrize("ref", ["S3", "D4", "Q8", "A4", "D5", "C2*S3", "D6"])
def test_core_normalizer_against_oracle(ref):
    G = parse_group_ref(ref)
    for H in all_subgroups(G):
        C, N = core(G, H), normalizer(G, H)
        assert C.elements == core_by_conjugates(G.table, H.elements)
        assert N.elements == normalizer_by_scan(G.table, H.elements)
        assert set(C.elements) <= set(H.elements) and is_normal(G, C)
        assert set(H.elements) <= set(N.elements)
        assert (N.order == G.order) == is_normal(G, H)
        assert is_core_free(G, H) == (C.elements == (0,))
        assert G.order % H.order == 0
        blocks = right_cosets(G, H)
        assert sorted(itertools.chain(*blocks)) == list(G.elements)
        assert all(len(b) == H.order for b in blocks)


def _p(word, n=3):
    return Permutation.from_cycles(word, n)


def test_perm_group_examples():
    assert perm_group([], degree=3).order == 1
    assert perm_group([_p("(1 2)")]).order == 2
    S = perm_group([_p("(1 2)"), _p("(1 3)")])
    assert S.order == 6
    assert list(S.elements) == sorted(S.elements) and S.elements[0].is_identity()
    assert all(g in S for g in S.generators)


def test_stabilizer_and_normalizer_examples():
    S = perm_group([_p("(1 2)"), _p("(1 3)")])
    assert stabilizer(perm_group([], degree=3), 0).order == 1
    assert stabilizer(S, 0).order == 2
    Q = perm_group([_p("(2 3)")])
    assert perm_normalizer(S, S).order == 6
    assert perm_normalizer(S, perm_group([], degree=3)).order == 6
    assert perm_normalizer(S, Q).element_set == Q.element_set
    with pytest.raises(NotASubgroup):
        perm_normalizer(Q, S)


def test_elementary_abelian_examples():
    assert is_elementary_abelian_2(parse_group_ref("C1"))
    assert is_elementary_abelian_2(parse_group_ref("K4"))
    assert not is_elementary_abelian_2(parse_group_ref("C4"))
    assert is_elementary_abelian_2(perm_group([_p("(1 2)", 4), _p("(3 4)", 4)]))
    assert not is_elementary_abelian_2(perm_group([_p("(1 2)"), _p("(2 3)")]))
    D4 = parse_group_ref("D4")
    assert is_elementary_abelian_2(Subgroup(D4, (0, 2, 4, 6)))


perms5 = st.lists(st.permutations(range(5)).map(Permutation), min_size=0, max_size=3)


@settings(max_examples=60, deadline=None)
@given(perms5, st.randoms(use_true_random=False))
def test_closure_independent_of_generator_order(gens, rnd):
    P = perm_group(gens, degree=5)
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    assert perm_group(shuffled, degree=5).element_set == P.element_set
    assert P.element_set == set(map(Permutation, closure_by_pairs([g.image for g in gens], 5)))


@settings(max_examples=60, deadline=None)
@given(perms5, st.integers(0, 4))
def test_orbit_stabilizer(gens, x):
    P = perm_group(gens, degree=5)
    assert P.order == len(P.orbit(x)) * stabilizer(P, x).order
