"""Descent data over a cospan for the fibration of points, and the comparison functor.

All reindexing goes through the concrete pullback cleavage of
:func:`ptdescent.points.pullback_point`; the coherence isomorphisms between
two reindexings of one point are computed elementwise by
:func:`ptdescent.points.canonical_comparison`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .actions import ActionDatum, semidirect_product
from .algebra import Homomorphism, StructureError, Verdict, PASS
from .cospan import Cospan, PairPullback, TriplePullback, is_extremal_epi
from .points import (
    Point,
    PointMorphism,
    canonical_comparison,
    check_point_morphism,
    point_morphisms,
    pullback_point,
)

__all__ = [
    "Cospan", "DescentDatum", "DescentMorphism", "FullFaithfulness", "is_extremal_epi",
    "phi", "phi_morphism", "make_datum", "validate_descent_datum", "descent_morphisms",
    "descent_isomorphism", "compose_descent", "check_fully_faithful", "datum_from_actions",
    "pull",
]


@lru_cache(maxsize=4096)
def pull(f: Homomorphism, P: Point) -> Point:
    """Memoised change of base, so repeated reindexings share element numbering."""
    return pullback_point(f, P)


def pulled_map(src: Point, tgt: Point, hmap) -> tuple[int, ...]:
    """Element map of ``f^*(h)`` between two points pulled back along the same ``f``."""
    index = tgt.total.coord_index
    return tuple(index[(w, hmap[e])] for w, e in src.total.coords)


@dataclass(frozen=True, eq=False)
class DescentDatum:
    cospan: Cospan
    D: Point
    F: Point
    a: PointMorphism
    b: PointMorphism
    c: PointMorphism


@dataclass(frozen=True, eq=False)
class DescentMorphism:
    source: DescentDatum
    target: DescentDatum
    h: PointMorphism
    k: PointMorphism

    @property
    def key(self) -> tuple:
        return (self.h.map, self.k.map)


def _legs(pb: PairPullback, X: Point, Y: Point) -> tuple[Point, Point]:
    return pull(pb.pi1, X), pull(pb.pi2, Y)


def make_datum(cs: Cospan, D: Point, F: Point, a_map, b_map, c_map) -> DescentDatum:
    """Wrap raw element maps as morphisms between the canonical reindexings."""
    if D.base != cs.A or F.base != cs.C:
        raise StructureError("D must live over A and F over C")
    morphisms = []
    for pb, X, Y, m in ((cs.AA, D, D, a_map), (cs.AC, D, F, b_map), (cs.CC, F, F, c_map)):
        src, tgt = _legs(pb, X, Y)
        m = tuple(m)
        if len(m) != src.total.size or any(not 0 <= v < tgt.total.size for v in m):
            raise StructureError("coherence map has the wrong shape")
        morphisms.append(PointMorphism(src, tgt, Homomorphism(src.total, tgt.total, m)))
    return DescentDatum(cs, D, F, *morphisms)


def phi(cs: Cospan, P: Point) -> DescentDatum:
    """``(f^*P, g^*P)`` with the canonical comparisons as coherence isomorphisms."""
    if P.base != cs.B:
        raise StructureError("phi: the point does not live over the cospan's codomain")
    D, F = pull(cs.f, P), pull(cs.g, P)
    maps = [canonical_comparison(*_legs(pb, X, Y)).map
            for pb, X, Y in ((cs.AA, D, D), (cs.AC, D, F), (cs.CC, F, F))]
    return make_datum(cs, D, F, *maps)


def phi_morphism(cs: Cospan, j: PointMorphism, source: DescentDatum | None = None,
                 target: DescentDatum | None = None) -> DescentMorphism:
    source = source or phi(cs, j.source)
    target = target or phi(cs, j.target)
    hs = [PointMorphism(X, Y, Homomorphism(X.total, Y.total, pulled_map(X, Y, j.map)))
          for X, Y in ((source.D, target.D), (source.F, target.F))]
    return DescentMorphism(source, target, *hs)


# --------------------------------------------------------------------------
# Coherence

def _first_mismatch(u, v) -> int | None:
    return next((e for e, (x, y) in enumerate(zip(u, v)) if x != y), None)


def _element(P: Point, e: int) -> tuple:
    return (e, P.total.label(e))


def _unit(delta: Homomorphism, m: PointMorphism, X: Point, name: str) -> Verdict:
    src, tgt = pull(delta, m.source), pull(delta, m.target)
    dm = pulled_map(src, tgt, m.map)
    back_t = canonical_comparison(tgt, X).map
    back_s = canonical_comparison(src, X).map
    e = _first_mismatch([back_t[v] for v in dm], back_s)
    if e is None:
        return PASS
    return Verdict(False, name, _element(src, e),
                   "the diagonal reindexing of the isomorphism is not the canonical one")


def _hexagon(tri: TriplePullback, m12: PointMorphism, m23: PointMorphism,
             m13: PointMorphism, name: str) -> Verdict:
    s12, t12 = pull(tri.p12, m12.source), pull(tri.p12, m12.target)
    s23, t23 = pull(tri.p23, m23.source), pull(tri.p23, m23.target)
    s13, t13 = pull(tri.p13, m13.source), pull(tri.p13, m13.target)
    h12 = pulled_map(s12, t12, m12.map)
    h23 = pulled_map(s23, t23, m23.map)
    h13 = pulled_map(s13, t13, m13.map)
    c1 = canonical_comparison(t12, s23).map
    c2 = canonical_comparison(s12, s13).map
    c3 = canonical_comparison(t13, t23).map
    upper = [h23[c1[h12[e]]] for e in range(s12.total.size)]
    lower = [c3[h13[c2[e]]] for e in range(s12.total.size)]
    e = _first_mismatch(upper, lower)
    if e is None:
        return PASS
    return Verdict(False, name, _element(s12, e), "cocycle hexagon does not commute")


def validate_descent_datum(d: DescentDatum) -> Verdict:
    """Isomorphism status, then unit-A, unit-C, cocycle-AAA, AAC, ACC, CCC.

    The first failing diagram is reported with one witness element.
    """
    cs = d.cospan
    for name, m in (("a", d.a), ("b", d.b), ("c", d.c)):
        v = check_point_morphism(m)
        if not v:
            return Verdict(False, f"{name}: not a point morphism ({v.law})", v.witness, v.detail)
        if not m.h.is_bijective():
            return Verdict(False, f"{name}: not an isomorphism", (), "map is not bijective")
    checks = (
        lambda: _unit(cs.delta_A, d.a, d.D, "unit-A"),
        lambda: _unit(cs.delta_C, d.c, d.F, "unit-C"),
        lambda: _hexagon(cs.AAA, d.a, d.a, d.a, "cocycle-AAA"),
        lambda: _hexagon(cs.AAC, d.a, d.b, d.b, "cocycle-AAC"),
        lambda: _hexagon(cs.ACC, d.b, d.c, d.b, "cocycle-ACC"),
        lambda: _hexagon(cs.CCC, d.c, d.c, d.c, "cocycle-CCC"),
    )
    for check in checks:
        v = check()
        if not v:
            return v
    return PASS


# --------------------------------------------------------------------------
# Morphisms

def _square(m: PointMorphism, m2: PointMorphism, left, right) -> bool:
    """``m2 o pi1^*(left) == pi2^*(right) o m``."""
    top = pulled_map(m.source, m2.source, left)
    bottom = pulled_map(m.target, m2.target, right)
    return all(m2.map[top[e]] == bottom[m.map[e]] for e in range(len(top)))


def _same_cospan(d1: DescentDatum, d2: DescentDatum) -> None:
    c1, c2 = d1.cospan, d2.cospan
    if c1 is not c2 and (c1.f != c2.f or c1.g != c2.g):
        raise StructureError("descent data over different cospans")


def descent_morphisms(d1: DescentDatum, d2: DescentDatum) -> list[DescentMorphism]:
    """All pairs ``(h, k)`` making the three squares commute, lexicographically ordered."""
    _same_cospan(d1, d2)
    hs = [h for h in point_morphisms(d1.D, d2.D) if _square(d1.a, d2.a, h.map, h.map)]
    ks = [k for k in point_morphisms(d1.F, d2.F) if _square(d1.c, d2.c, k.map, k.map)]
    return [DescentMorphism(d1, d2, h, k) for h in hs for k in ks
            if _square(d1.b, d2.b, h.map, k.map)]


def descent_isomorphism(d1: DescentDatum, d2: DescentDatum) -> DescentMorphism | None:
    if d1.D.total.size != d2.D.total.size or d1.F.total.size != d2.F.total.size:
        return None
    return next((m for m in descent_morphisms(d1, d2)
                 if m.h.h.is_bijective() and m.k.h.is_bijective()), None)


def compose_descent(n: DescentMorphism, m: DescentMorphism) -> DescentMorphism:
    """``n`` after ``m``."""
    def comp(y: PointMorphism, x: PointMorphism) -> PointMorphism:
        return PointMorphism(x.source, y.target, Homomorphism(
            x.source.total, y.target.total, tuple(y.map[v] for v in x.map)))

    return DescentMorphism(m.source, n.target, comp(n.h, m.h), comp(n.k, m.k))


@dataclass(frozen=True)
class FullFaithfulness:
    faithful: bool
    full: bool
    point_morphisms: int
    descent_morphisms: int
    collisions: tuple = field(default=())   # pairs of point morphism indices with equal images
    unmatched: tuple = field(default=())    # keys of descent morphisms without a preimage

    @property
    def bijective(self) -> bool:
        return self.faithful and self.full


def check_fully_faithful(cs: Cospan, P: Point, Q: Point) -> FullFaithfulness:
    if P.base != Q.base:
        raise StructureError("check_fully_faithful: points over different bases")
    dP, dQ = phi(cs, P), phi(cs, Q)
    js = point_morphisms(P, Q)
    images: dict[tuple, int] = {}
    collisions = []
    for i, j in enumerate(js):
        key = phi_morphism(cs, j, dP, dQ).key
        if key in images:
            collisions.append((images[key], i))
        else:
            images[key] = i
    desc = descent_morphisms(dP, dQ)
    unmatched = tuple(m.key for m in desc if m.key not in images)
    return FullFaithfulness(not collisions, not unmatched, len(js), len(desc),
                            tuple(collisions), unmatched)


def datum_from_actions(cs: Cospan, xiA: ActionDatum, xiC: ActionDatum) -> DescentDatum:
    """Datum on ``X x| A`` and ``X x| C`` whose isomorphisms keep the acted coordinate.

    Validity is not assumed: the result is meant to be checked.
    """
    if xiA.actor != cs.A or xiC.actor != cs.C:
        raise StructureError("actions must be over the feet of the cospan")
    D, F = semidirect_product(xiA), semidirect_product(xiC)
    maps = []
    for pb, X, Y in ((cs.AA, D, D), (cs.AC, D, F), (cs.CC, F, F)):
        src, tgt = _legs(pb, X, Y)
        index = tgt.total.coord_index
        ny = Y.base.size
        right = pb.pi2.map
        maps.append([index[(w, X.total.coords[e][0] * ny + right[w])]
                     for w, e in src.total.coords])
    return make_datum(cs, D, F, *maps)


# extension search and the identity cross-check live in their own modules
from .extension import (  # noqa: E402
    Bounds,
    Extensions,
    SurjectivityResult,
    UAResult,
    check_ua_instance,
    essential_surjectivity_witness,
    extend_action,
)
from .identities import cross_identity_check  # noqa: E402

__all__ += [
    "Bounds", "Extensions", "SurjectivityResult", "UAResult", "check_ua_instance",
    "essential_surjectivity_witness", "extend_action", "cross_identity_check",
]
