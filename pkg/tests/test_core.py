import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slatdec.core import (
    Semilattice,
    canonical_form,
    chain,
    direct_product,
    isomorphism_check,
    leq,
    partial_meet,
    relabel,
    validate_semilattice,
)
from slatdec.enumeration import corpus
from slatdec.errors import (
    AssociativityViolation,
    CommutativityViolation,
    IdempotenceViolation,
    IndexOutOfRange,
    SizeOverflow,
)

from oracles import brute_isomorphic, brute_meet


@st.composite
def union_closed(draw, max_atoms=4, max_sets=7):
    """A random finite join-semilattice: a family of sets closed under union."""
    k = draw(st.integers(1, max_atoms))
    seeds = draw(st.lists(st.frozensets(st.integers(0, k - 1), min_size=1), min_size=1, max_size=max_sets))
    family = set(seeds)
    while True:
        new = {a | b for a in family for b in family} - family
        if not new:
            break
        family |= new
    elems = sorted(family, key=lambda s: (len(s), sorted(s)))
    pos = {s: i for i, s in enumerate(elems)}
    return Semilattice([[pos[a | b] for b in elems] for a in elems])


def test_two_chain_valid():
    A = validate_semilattice([[0, 1], [1, 1]])
    assert A.n == 2 and A.maximum == 1 and A.minimum == 0


def test_commutativity_violation_names_pair():
    with pytest.raises(CommutativityViolation) as exc:
        validate_semilattice([[0, 0], [1, 1]])
    assert exc.value.elements == (0, 1)


def test_idempotence_and_range_and_associativity():
    with pytest.raises(IdempotenceViolation):
        validate_semilattice([[1, 1], [1, 1]])
    with pytest.raises(IndexOutOfRange):
        validate_semilattice([[0, 2], [2, 1]])
    # commutative and idempotent but not associative: 0v1=2, 1v2=0, 0v2=1
    with pytest.raises(AssociativityViolation) as exc:
        validate_semilattice([[0, 2, 1], [2, 1, 0], [1, 0, 2]])
    assert len(exc.value.elements) == 3


def test_n5_table_passes_all_laws(N5):
    J = N5.join_table
    n = N5.n
    assert all(J[x][x] == x for x in range(n))
    assert all(J[x][y] == J[y][x] for x in range(n) for y in range(n))
    assert all(J[J[x][y]][z] == J[x][J[y][z]] for x in range(n) for y in range(n) for z in range(n))
    validate_semilattice(J)


def test_leq_examples(N5, C2):
    assert leq(C2, 0, 1)
    assert all(leq(N5, x, x) for x in N5.elements)
    assert not leq(N5, N5.index("a"), N5.index("c"))


def test_partial_meet_examples(C3, V):
    assert partial_meet(C3, 0, 2) == 0
    assert partial_meet(V, V.index("a"), V.index("b")) is None
    P = direct_product(chain(2), chain(2))
    assert partial_meet(P.semilattice, P.pair(0, 1), P.pair(1, 0)) == P.pair(0, 0)


def test_product_of_two_chains_is_diamond(B2):
    P = direct_product(chain(2), chain(2)).semilattice
    assert isomorphism_check(P, B2) is not None


def test_product_with_trivial_factor(N5):
    one = Semilattice([[0]])
    assert isomorphism_check(direct_product(N5, one).semilattice, N5) is not None


def test_product_cap():
    with pytest.raises(SizeOverflow):
        direct_product(chain(70), chain(70))


def test_product_meets_componentwise_c3_c2():
    A, B = chain(3), chain(2)
    P = direct_product(A, B)
    for (a, b), (c, d) in itertools.product(itertools.product(range(3), range(2)), repeat=2):
        m = partial_meet(P.semilattice, P.pair(a, b), P.pair(c, d))
        assert m == P.pair(min(a, c), min(b, d))


def test_isomorphism_examples(C3, V, B2):
    ident = isomorphism_check(C3, C3)
    assert ident.images == (0, 1, 2)
    assert isomorphism_check(C3, V) is None
    assert isomorphism_check(B2, direct_product(chain(2), chain(2)).semilattice).is_isomorphism()


def test_isomorphism_agrees_with_brute_force():
    structures = corpus(5)
    for A in structures:
        for B in structures:
            assert (isomorphism_check(A, B) is not None) == brute_isomorphic(A.join_table, B.join_table)


def test_meet_table_agrees_with_brute_force():
    for A in corpus(6):
        for x in A.elements:
            for y in A.elements:
                assert partial_meet(A, x, y) == brute_meet(A.join_table, x, y)


@settings(max_examples=60, deadline=None)
@given(union_closed())
def test_meet_is_greatest_lower_bound(A):
    for x in A.elements:
        for y in A.elements:
            m = partial_meet(A, x, y)
            lower = [u for u in A.elements if leq(A, u, x) and leq(A, u, y)]
            if m is None:
                assert not any(all(leq(A, u, g) for u in lower) for g in lower)
            else:
                assert leq(A, m, x) and leq(A, m, y)
                assert all(leq(A, u, m) for u in lower)


@settings(max_examples=60, deadline=None)
@given(union_closed())
def test_partial_meet_associative(A):
    for x, y, z in itertools.product(A.elements, repeat=3):
        left = A.meet(A.meet(x, y), z)
        right = A.meet(x, A.meet(y, z))
        assert left == right


@settings(max_examples=60, deadline=None)
@given(union_closed(), st.randoms(use_true_random=False))
def test_isomorphism_symmetric_and_canonical(A, rnd):
    perm = list(range(A.n))
    rnd.shuffle(perm)
    B = relabel(A, perm)
    f = isomorphism_check(A, B)
    assert f is not None and f.is_isomorphism()
    assert isomorphism_check(B, A) is not None
    assert canonical_form(A)[0] == canonical_form(B)[0]


@settings(max_examples=60, deadline=None)
@given(union_closed())
def test_unique_maximum(A):
    tops = [x for x in A.elements if all(leq(A, y, x) for y in A.elements)]
    assert tops == [A.maximum]


def test_canonical_labels_are_linear_extension():
    for A in corpus(6):
        C, perm = canonical_form(A)
        assert C == A  # corpus members are already canonical
        for x in C.elements:
            for y in C.elements:
                if leq(C, x, y):
                    assert x <= y
