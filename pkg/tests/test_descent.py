import itertools

import pytest

from ptdescent.actions import restrict_action, semidirect_product, trivial_action
from ptdescent.algebra import StructureError, identity
from ptdescent.corpus import cyclic, dihedral, group, inclusion, product
from ptdescent.descent import (
    Bounds,
    Cospan,
    check_fully_faithful,
    check_ua_instance,
    compose_descent,
    cross_identity_check,
    datum_from_actions,
    descent_isomorphism,
    descent_morphisms,
    essential_surjectivity_witness,
    extend_action,
    is_extremal_epi,
    make_datum,
    phi,
    phi_morphism,
    pulled_map,
    validate_descent_datum,
)
from ptdescent.fixtures import fixture_nonassoc, fixture_s3
from ptdescent.identities import IdentityParseError, evaluate_identity, parse_identity
from ptdescent.points import compose_morphisms, identity_morphism, kernel_of_point, point_morphisms
from ptdescent.sweeps import group_actions, restricted_pairs, subgroup_cospans

from instances import points_over

S3 = dihedral(3)
R, S = S3.labels.index("r"), S3.labels.index("s")


def s3_cospan():
    return Cospan(inclusion(S3, [R]), inclusion(S3, [S]))


def test_extremal_epi_examples():
    assert is_extremal_epi(s3_cospan())
    v = is_extremal_epi(Cospan(inclusion(S3, [R]), inclusion(S3, [R])))
    assert not v and v.witness == (3,)
    assert is_extremal_epi(Cospan(identity(S3), inclusion(S3, [])))
    C6 = group("C6")
    assert is_extremal_epi(Cospan(inclusion(C6, [2]), inclusion(C6, [3])))


@pytest.mark.parametrize("B", [group(n) for n in ("C2", "C4", "C2^2", "S3", "C6")], ids=lambda g: g.name)
def test_phi_is_a_valid_datum(B):
    for cs in subgroup_cospans(B, extremal_only=False):
        for P in points_over(B):
            assert validate_descent_datum(phi(cs, P))


def _kernel_negation(P):
    k = kernel_of_point(P).embed.map
    neg = {e: P.total.neg[e] for e in k}
    return next(m for m in point_morphisms(P, P) if all(m.h.map[e] == neg[e] for e in k))


def test_twisted_datum_names_unit_a():
    cs = s3_cospan()
    P = semidirect_product(trivial_action(S3, cyclic(3)))
    d = phi(cs, P)
    h = _kernel_negation(d.D)
    twist = pulled_map(d.a.source, d.a.source, h.map)
    bad = make_datum(cs, d.D, d.F, [d.a.map[twist[e]] for e in range(len(twist))], d.b.map, d.c.map)
    v = validate_descent_datum(bad)
    assert not v and v.law == "unit-A" and v.witness


def test_make_datum_shape_checks():
    cs = s3_cospan()
    d = phi(cs, semidirect_product(trivial_action(S3, cyclic(2))))
    with pytest.raises(StructureError):
        make_datum(cs, d.D, d.F, d.a.map[:-1], d.b.map, d.c.map)
    with pytest.raises(StructureError):
        make_datum(cs, d.F, d.D, d.a.map, d.b.map, d.c.map)


def test_descent_morphisms_with_coprime_kernels():
    cs = s3_cospan()
    P = semidirect_product(trivial_action(S3, cyclic(2)))
    Q = semidirect_product(trivial_action(S3, cyclic(3)))
    ms = descent_morphisms(phi(cs, P), phi(cs, Q))
    assert len(ms) == 1
    ff = check_fully_faithful(cs, P, Q)
    assert ff.bijective and ff.point_morphisms == ff.descent_morphisms == 1


def test_descent_identity_and_composition():
    cs = s3_cospan()
    for P in points_over(S3)[:6]:
        d = phi(cs, P)
        ids = [m for m in descent_morphisms(d, d)
               if m.h.map == tuple(range(d.D.total.size)) and m.k.map == tuple(range(d.F.total.size))]
        assert len(ids) == 1
        assert compose_descent(ids[0], ids[0]).key == ids[0].key
        assert descent_isomorphism(d, d) is not None


def test_fully_faithful_examples():
    fx = fixture_nonassoc(2)
    ff = check_fully_faithful(fx.cospan, semidirect_product(fx.xi), semidirect_product(fx.tau))
    assert ff.faithful and not ff.full
    assert (ff.point_morphisms, ff.descent_morphisms) == (1, 2)
    assert len(ff.unmatched) == 1
    with pytest.raises(StructureError):
        check_fully_faithful(s3_cospan(), points_over(S3)[0], points_over(group("C2"))[0])


def test_phi_functorial():
    cs = s3_cospan()
    pts = points_over(S3)[:5]
    for P, Q, T in itertools.product(pts, repeat=3):
        for j in point_morphisms(P, Q)[:3]:
            for k in point_morphisms(Q, T)[:3]:
                lhs = phi_morphism(cs, compose_morphisms(k, j))
                rhs = compose_descent(phi_morphism(cs, k), phi_morphism(cs, j))
                assert lhs.key == rhs.key
    P = pts[0]
    m = phi_morphism(cs, identity_morphism(P))
    assert m.key == (tuple(range(m.h.source.total.size)), tuple(range(m.k.source.total.size)))


# --------------------------------------------------------------------------
# extension

def test_extend_along_identity_cospan():
    B = group("C4")
    cs = Cospan(identity(B), identity(B))
    for xi in group_actions(B, cyclic(3)):
        for method in ("oracle", "propagate"):
            ext = extend_action(cs, xi, xi, method)
            assert [e.key for e in ext] == [xi.key] and ext.extremal_epi


def test_trivial_actions_extend_trivially():
    cs = s3_cospan()
    X = product(cyclic(2), cyclic(2))
    res = check_ua_instance(cs, trivial_action(cs.A, X), trivial_action(cs.C, X))
    assert res.holds and res.count == 1
    assert res.extensions.actions[0] == trivial_action(S3, X)


def test_s3_cross_check():
    fx = fixture_s3(2)
    for method in ("oracle", "propagate"):
        ext = extend_action(fx.cospan, fx.rho, fx.trivial, method)
        assert len(ext) == 0 and not ext.inconclusive
    vals = fx.report_values()
    assert vals


def test_bad_method_and_mismatched_inputs():
    fx = fixture_s3(2)
    with pytest.raises(ValueError):
        extend_action(fx.cospan, fx.rho, fx.trivial, "guess")
    with pytest.raises(StructureError):
        extend_action(fx.cospan, fx.trivial, fx.rho)


def test_inconclusive_bounds():
    fx = fixture_s3(2)
    tiny = Bounds(max_actor=2, max_nodes=1)
    ext = extend_action(fx.cospan, fx.rho, fx.trivial, "oracle", tiny)
    assert ext.inconclusive and "bound" in ext.reason
    res = check_ua_instance(fx.cospan, fx.rho, fx.trivial, "oracle", tiny)
    assert res.holds is None and res.inconclusive


def test_ua_fails_for_nonassoc():
    fx = fixture_nonassoc(2)
    xa, xc = fx.restrictions()
    res = check_ua_instance(fx.cospan, xa, xc)
    assert res.holds is False and res.count == 4
    assert fx.xi in res.extensions and fx.tau in res.extensions


@pytest.mark.parametrize("B", [group(n) for n in ("C4", "C2^2", "S3", "C6")], ids=lambda g: g.name)
def test_methods_agree(B):
    for X in (cyclic(2), cyclic(3), product(cyclic(2), cyclic(2))):
        acts = group_actions(B, X)
        for cs in subgroup_cospans(B, extremal_only=False):
            pairs = restricted_pairs(cs, acts)
            # a few pairs that are not restrictions of anything
            pairs += [(a, c) for a in group_actions(cs.A, X)[:2] for c in group_actions(cs.C, X)[-2:]]
            for xa, xc in pairs:
                o = extend_action(cs, xa, xc, "oracle")
                p = extend_action(cs, xa, xc, "propagate")
                assert [e.key for e in o] == [e.key for e in p]


def test_nonassoc_methods_agree():
    fx = fixture_nonassoc(2)
    xa, xc = fx.restrictions()
    o = extend_action(fx.cospan, xa, xc, "oracle", Bounds(table_budget=64))
    p = extend_action(fx.cospan, xa, xc, "propagate")
    assert not o.inconclusive and [e.key for e in o] == [e.key for e in p]


# --------------------------------------------------------------------------
# essential surjectivity

def test_phi_of_a_point_is_hit():
    cs = s3_cospan()
    for P in points_over(S3)[:6]:
        res = essential_surjectivity_witness(cs, phi(cs, P))
        assert res.status == "found"
        assert descent_isomorphism(phi(cs, res.point), phi(cs, P)) is not None


def test_s3_datum_has_no_preimage():
    fx = fixture_s3(2)
    d = datum_from_actions(fx.cospan, fx.rho, fx.trivial)
    assert validate_descent_datum(d)
    res = essential_surjectivity_witness(fx.cospan, d)
    assert res.status == "none" and res.candidates == 0


def test_permutation_action_is_found():
    fx = fixture_s3(2)
    perm = next(xi for xi in group_actions(fx.S3, fx.X)
                if restrict_action(fx.cospan.f, xi) == fx.rho
                and restrict_action(fx.cospan.g, xi) != fx.trivial)
    xa, xc = restrict_action(fx.cospan.f, perm), restrict_action(fx.cospan.g, perm)
    d = datum_from_actions(fx.cospan, xa, xc)
    assert validate_descent_datum(d)
    res = essential_surjectivity_witness(fx.cospan, d, method="oracle")
    assert res.status == "found" and res.point.total.size == 48


def test_nonassoc_datum_preimage():
    fx = fixture_nonassoc(2)
    d = datum_from_actions(fx.cospan, *fx.restrictions())
    res = essential_surjectivity_witness(fx.cospan, d)
    assert res.status == "found" and res.point.total.size == 16


def test_surjectivity_inconclusive():
    fx = fixture_s3(2)
    d = datum_from_actions(fx.cospan, fx.rho, fx.trivial)
    res = essential_surjectivity_witness(fx.cospan, d, Bounds(max_nodes=1))
    assert res.status in ("inconclusive", "none")
    res = essential_surjectivity_witness(fx.cospan, d, Bounds(max_actor=2), method="oracle")
    assert res.status == "inconclusive"


# --------------------------------------------------------------------------
# identities

def test_identities_hold_for_trivial_actions():
    fx = fixture_s3(2)
    xa = trivial_action(fx.cospan.A, fx.X)
    ident = "forall a:A c:C x:X . (act a (act c x)) = (act c (act a x))"
    assert cross_identity_check(xa, fx.trivial, [ident]) == []
    assert cross_identity_check(fx.rho, fx.trivial, []) == []


def test_commuting_identity_fails_for_shift_against_nontrivial():
    fx = fixture_s3(2)
    swap = next(xi for xi in group_actions(fx.cospan.C, fx.X) if xi != fx.trivial)
    ident = "forall a:A c:C x:X . (act a (act c x)) = (act c (act a x))"
    out = cross_identity_check(fx.rho, swap, [ident])
    assert len(out) == 1 and out[0].sort == "X"
    a, c, x = out[0].witness
    lhs, rhs = evaluate_identity(fx.rho, swap, ident, {"a": a, "c": c, "x": x})
    assert lhs != rhs and (lhs, rhs) == (out[0].lhs[0], out[0].rhs[0])


def test_ill_sorted_terms_are_rejected():
    fx = fixture_nonassoc(2)
    xa, xc = fx.restrictions()
    with pytest.raises(StructureError):
        cross_identity_check(xa, xc, ["forall a:A c:C . (mul a c) = a"])
    with pytest.raises(StructureError):
        cross_identity_check(xa, xc, ["forall x:X . (nosuch x x) = x"])


@pytest.mark.parametrize("text,column", [
    ("forall x:X . (+ x x", 20),
    ("forall x:Q . x = x", 8),
    ("forall x:X x:X . x = x", 12),
    ("forall x:X  x = x", 13),
    ("forall x:X . ) = x", 14),
])
def test_identity_parse_errors_have_columns(text, column):
    with pytest.raises(IdentityParseError) as err:
        parse_identity(text)
    assert err.value.column == column


def test_identity_rendering():
    ident = parse_identity("forall  x:X   y:X .  (+ x y) = (+ y x)")
    assert str(ident) == "forall x:X y:X . (+ x y) = (+ y x)"
    assert str(ident.lhs) == "(+ x y)"
