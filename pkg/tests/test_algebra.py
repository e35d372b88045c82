import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptdescent.algebra import (
    ABELIAN,
    NARNG,
    RNG,
    FiniteAlgebra,
    Homomorphism,
    StructureError,
    automorphism_algebra,
    automorphism_group,
    check_homomorphism,
    compose,
    direct_product,
    generated_subalgebra,
    hom_enumerate,
    identity,
    inverse,
    pullback,
    subalgebra,
    subalgebras,
    validate_algebra,
    zero_map,
)
from ptdescent.corpus import cyclic, cyclic_ring, dihedral, group, inclusion, product, small_groups
from ptdescent.fixtures import fixture_nonassoc

S3 = dihedral(3)
R, S = S3.labels.index("r"), S3.labels.index("s")


def test_cyclic_group_passes():
    assert validate_algebra(cyclic(3))


def test_nonassoc_ring_passes_and_also_with_associativity_declared():
    A = fixture_nonassoc(2).A
    assert validate_algebra(A)
    assert validate_algebra(A.with_signature(RNG))
    # the product is not associative on the nose only through z, and z kills everything
    assert all(A.ops[0][A.ops[0][x][y]][w] == 0 for x in range(8) for y in range(8) for w in range(8))


def test_malformed_table_is_structural_error():
    bad = FiniteAlgebra("bad", ((0, 1), (1,)), (0, 1))
    with pytest.raises(StructureError):
        validate_algebra(bad)
    with pytest.raises(StructureError):
        validate_algebra(FiniteAlgebra("bad", ((0, 1), (1, 2)), (0, 1)))


def test_law_violations_carry_witnesses():
    # x + y = x - y mod 3 has 0 as right identity only
    alg = FiniteAlgebra.build("sub", [[(x - y) % 3 for y in range(3)] for x in range(3)], [0, 1, 2])
    v = validate_algebra(alg)
    assert not v and v.law == "identity" and v.witness == (1,)
    nonab = S3.with_signature(ABELIAN)
    v = validate_algebra(nonab)
    assert v.law == "commutativity" and S3.add[v.witness[0]][v.witness[1]] != S3.add[v.witness[1]][v.witness[0]]


def test_non_distributive_op_reported():
    n = 3
    sq = FiniteAlgebra.build("sq", [[(i + j) % n for j in range(n)] for i in range(n)],
                             ops={"mul": [[(i * i * j) % n for j in range(n)] for i in range(n)]},
                             signature=NARNG)
    v = validate_algebra(sq)
    assert not v and v.law == "mul: right-distributive"


def test_generator_reduced_mode_agrees_with_exhaustive():
    for alg in (fixture_nonassoc(2).A, cyclic_ring(6), product(cyclic(2), cyclic(3), cyclic(2))):
        assert bool(validate_algebra(alg, exhaustive=False)) == bool(validate_algebra(alg, exhaustive=True))
    broken = FiniteAlgebra.build("b", [[(i + j) % 4 for j in range(4)] for i in range(4)],
                                 ops={"mul": [[(i * j + (i == 3)) % 4 for j in range(4)] for i in range(4)]},
                                 signature=RNG)
    assert not validate_algebra(broken, exhaustive=False)
    assert not validate_algebra(broken, exhaustive=True)


def test_homomorphism_examples():
    assert check_homomorphism(identity(S3))
    inc = inclusion(S3, [R])
    assert check_homomorphism(inc) and inc.map == (0, 1, 2)
    C4, C2 = cyclic(4), cyclic(2)
    assert check_homomorphism(Homomorphism(C4, C2, tuple(k % 2 for k in range(4))))
    assert not check_homomorphism(Homomorphism(C2, C4, (0, 1)))


def test_signature_mismatch_is_structural():
    with pytest.raises(StructureError):
        check_homomorphism(Homomorphism(cyclic(2), cyclic_ring(2), (0, 1)))


def test_generated_subalgebra_examples():
    assert generated_subalgebra(S3, {S, R}) == frozenset(range(6))
    assert generated_subalgebra(S3, {R}) == frozenset({0, 1, 2})
    for B in small_groups(6):
        assert generated_subalgebra(B, set()) == frozenset({0})


@given(st.sampled_from(small_groups(8)), st.data())
@settings(max_examples=60, deadline=None)
def test_generated_subalgebra_idempotent_and_monotone(B, data):
    seed = data.draw(st.sets(st.integers(0, B.size - 1), max_size=3))
    extra = data.draw(st.sets(st.integers(0, B.size - 1), max_size=2))
    closed = generated_subalgebra(B, seed)
    assert generated_subalgebra(B, closed) == closed
    assert closed <= generated_subalgebra(B, seed | extra)


def test_automorphism_counts():
    assert [h.map for h in automorphism_group(cyclic(1))] == [(0,)]
    assert len(automorphism_group(cyclic(3))) == 2
    assert len(automorphism_group(product(cyclic(2), cyclic(2), cyclic(2)))) == 168
    assert len(automorphism_group(S3)) == 6


@pytest.mark.parametrize("X", small_groups(8), ids=lambda g: g.name)
def test_automorphisms_form_a_group(X):
    auts = automorphism_group(X)
    maps = {a.map for a in auts}
    assert identity(X).map in maps
    for a, b in itertools.product(auts, repeat=2):
        assert compose(a, b).map in maps
    assert all(inverse(a).map in maps for a in auts)
    alg, listed = automorphism_algebra(X)
    assert validate_algebra(alg) and listed[0].map == tuple(range(X.size))


def test_pullback_examples():
    idB = identity(S3)
    P, p1, p2 = pullback(idB, idB)
    assert P.size == 6 and p1.map == p2.map
    f, g = inclusion(S3, [R]), inclusion(S3, [S])
    assert pullback(f, g)[0].size == 1
    P, p1, p2 = pullback(f, f)
    assert P.size == 3 and p1.map == p2.map


def _test_objects():
    return [cyclic(1), cyclic(2), cyclic(3), product(cyclic(2), cyclic(2), name="V")]


@pytest.mark.parametrize("B", [group("S3"), group("C4"), group("C2^2")], ids=lambda g: g.name)
def test_pullback_universal_property(B):
    subs = [subalgebra(B, S)[1] for S in subalgebras(B)]
    for f, g in itertools.product(subs, repeat=2):
        P, p1, p2 = pullback(f, g)
        assert all(f.map[a] == g.map[c] for a, c in zip(p1.map, p2.map))
        for T in _test_objects():
            for u, v in itertools.product(hom_enumerate(T, f.source), hom_enumerate(T, g.source)):
                if compose(f, u).map != compose(g, v).map:
                    continue
                mediating = [w for w in hom_enumerate(T, P)
                             if compose(p1, w).map == u.map and compose(p2, w).map == v.map]
                assert len(mediating) == 1


def test_hom_enumerate_counts():
    assert len(hom_enumerate(cyclic(3), cyclic(2))) == 1
    assert len(hom_enumerate(cyclic(2), cyclic(2))) == 2
    for B in small_groups(6):
        assert len(hom_enumerate(cyclic(1), B)) == 1
    assert [h.map for h in hom_enumerate(cyclic(2), cyclic(2))] == [(0, 0), (0, 1)]


def test_hom_enumerate_is_lexicographic():
    homs = [h.map for h in hom_enumerate(S3, S3)]
    assert homs == sorted(homs) and len(homs) == 10


def test_zero_map_and_direct_product():
    X, Y = cyclic(2), cyclic(3)
    assert check_homomorphism(zero_map(X, Y))
    P = direct_product(X, Y)
    assert P.size == 6 and validate_algebra(P)
