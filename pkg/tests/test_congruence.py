import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptdescent.algebra import StructureError, identity, subalgebra
from ptdescent.congruence import (
    Congruence,
    NotNormalError,
    check_congruence,
    check_normal,
    check_sh_instance,
    class_of_zero,
    congruence_from_normal,
    connector,
    cooperator,
    normal_subalgebras,
)
from ptdescent.corpus import cyclic, dihedral, group, inclusion, product, small_groups
from ptdescent.fixtures import fixture_nonassoc

S3 = dihedral(3)
R, S = S3.labels.index("r"), S3.labels.index("s")


def diagonal(A):
    return congruence_from_normal(A, {0})


def total(A):
    return congruence_from_normal(A, range(A.size))


def commute_elementwise(A, N, M):
    """[N, M] = 1: the group-theoretic condition for a connector to exist."""
    return all(A.add[n][m] == A.add[m][n] for n in N for m in M)


def test_congruence_examples():
    assert len(diagonal(S3)) == 6 and len(total(S3)) == 36
    A3 = congruence_from_normal(S3, {0, 1, 2})
    assert len(A3) == 18 and class_of_zero(A3) == {0, 1, 2}
    for C in (diagonal(S3), total(S3), A3):
        assert check_congruence(C) is None


def test_non_normal_subgroup_rejected():
    with pytest.raises(NotNormalError) as err:
        congruence_from_normal(S3, {0, S})
    a, k = err.value.witness
    assert k == S and S3.add[S3.add[a][k]][S3.neg[a]] not in {0, S}


def test_non_closed_and_non_ideal():
    assert check_normal(cyclic(4), {0, 1})[0] == "closed"
    A = fixture_nonassoc(2).A
    x = A.coord_index[(1, 0, 0)]
    assert check_normal(A, {0, x})[0].endswith("ideal for mul")
    assert check_normal(A, {0, A.coord_index[(0, 0, 1)]}) is None


def test_axiom_failures():
    A = cyclic(3)
    assert check_congruence(Congruence(A, {(0, 0), (1, 1)}))[0] == "reflexive"
    assert check_congruence(Congruence(A, {(0, 0), (1, 1), (2, 2), (0, 1)}))[0] == "symmetric"
    C4 = cyclic(4)
    refl = {(a, a) for a in range(4)}
    assert check_congruence(Congruence(C4, refl | {(0, 1), (1, 0)}))[0] == "compatible with +"


def test_normal_subalgebra_counts():
    assert len(normal_subalgebras(S3)) == 3
    assert len(normal_subalgebras(group("C2^2"))) == 5
    assert len(normal_subalgebras(group("Q8"))) == 6


def test_cooperator_examples():
    assert cooperator(inclusion(S3, [R]), inclusion(S3, [S])) is None
    C6 = group("C6")
    phi = cooperator(inclusion(C6, [2]), inclusion(C6, [3]))
    assert phi is not None and phi.is_bijective()
    X = cyclic(3)
    assert cooperator(identity(X), identity(X)) is not None
    with pytest.raises(StructureError):
        cooperator(identity(X), identity(cyclic(2)))


def test_connector_on_diagonals():
    for A in (S3, cyclic(4)):
        c = connector(diagonal(A), diagonal(A))
        assert c is not None and all(x == y == z for x, y, z in c.domain)
        assert c.p == tuple(x for x, _, _ in c.domain)


def test_connector_on_total_abelian_is_mal_cev():
    A = product(cyclic(2), cyclic(3))
    c = connector(total(A), total(A))
    assert len(c.domain) == A.size ** 3
    for x, y, z in c.domain:
        assert c(x, y, z) == A.add[A.sub(x, y)][z]


def test_no_connector_for_non_abelian_total():
    assert connector(total(S3), total(S3)) is None
    A3 = congruence_from_normal(S3, {0, 1, 2})
    assert connector(A3, A3) is not None
    assert connector(A3, total(S3)) is None


def test_sh_examples_for_s3():
    A3 = congruence_from_normal(S3, {0, 1, 2})
    v = check_sh_instance(A3, A3)
    assert v.cooperates and v.connects and v.sh_respected
    v = check_sh_instance(A3, total(S3))
    assert not v.cooperates and not v.connects and v.sh_respected
    v = check_sh_instance(diagonal(S3), total(S3))
    assert v.cooperates and v.connects


def test_connector_rejects_non_congruences():
    bad = Congruence(cyclic(3), {(0, 0)})
    with pytest.raises(StructureError):
        connector(bad, diagonal(cyclic(3)))
    with pytest.raises(StructureError):
        connector(diagonal(S3), diagonal(cyclic(3)))


def _connector_axioms(c, A):
    """Brute-force check of the unit identities and compatibility with + and -."""
    dom = set(c.domain)
    for x, y, z in dom:
        if y == z and c(x, y, z) != x:
            return False
        if x == y and c(x, y, z) != z:
            return False
    for t, u in itertools.product(c.domain, repeat=2):
        s = tuple(A.add[a][b] for a, b in zip(t, u))
        if s not in dom or c(*s) != A.add[c(*t)][c(*u)]:
            return False
    return all(c(*(A.neg[a] for a in t)) == A.neg[c(*t)] for t in dom)


@pytest.mark.parametrize("A", small_groups(8), ids=lambda g: g.name)
def test_connector_existence_matches_commutator_oracle(A):
    normals = normal_subalgebras(A)
    for N, M in itertools.product(normals, repeat=2):
        c = connector(congruence_from_normal(A, N), congruence_from_normal(A, M))
        assert (c is not None) == commute_elementwise(A, N, M)
        if c is not None and len(c.domain) <= 128:
            assert _connector_axioms(c, A)


@given(st.sampled_from(small_groups(12)), st.data())
@settings(max_examples=40, deadline=None)
def test_cooperation_matches_elementwise_commuting(A, data):
    normals = normal_subalgebras(A)
    N = data.draw(st.sampled_from(normals))
    M = data.draw(st.sampled_from(normals))
    _, iN = subalgebra(A, N)
    _, iM = subalgebra(A, M)
    assert (cooperator(iN, iM) is not None) == commute_elementwise(A, N, M)
