"""Points (split epimorphisms with a chosen section) and their change of base."""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    FiniteAlgebra,
    Homomorphism,
    StructureError,
    Verdict,
    PASS,
    check_homomorphism,
    hom_enumerate,
    identity,
    pullback,
    subalgebra,
)


class InvalidPointError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Point:
    """A point ``(p, s)`` over ``base``: ``p: total -> base`` with ``p o s = 1``.

    Points produced by change of base remember the point they were pulled
    back from (``root``) and the element map ``lift`` from ``total`` into
    ``root.total``.  Canonical comparison isomorphisms are read off from it.
    """

    total: FiniteAlgebra
    base: FiniteAlgebra
    p: Homomorphism
    s: Homomorphism
    root: "Point | None" = None
    lift: tuple[int, ...] | None = None

    def fibre(self, b: int) -> list[int]:
        return [e for e, v in enumerate(self.p.map) if v == b]

    @property
    def origin(self) -> "Point":
        return self if self.root is None else self.root

    @property
    def lift_map(self) -> tuple[int, ...]:
        return tuple(range(self.total.size)) if self.lift is None else self.lift


@dataclass(frozen=True, eq=False)
class PointMorphism:
    source: Point
    target: Point
    h: Homomorphism

    @property
    def map(self) -> tuple[int, ...]:
        return self.h.map


@dataclass(frozen=True, eq=False)
class KernelEmbedding:
    kernel: FiniteAlgebra
    embed: Homomorphism

    @property
    def inverse(self) -> dict[int, int]:
        return {e: x for x, e in enumerate(self.embed.map)}


def make_point(total: FiniteAlgebra, base: FiniteAlgebra, p, s) -> Point:
    p = p if isinstance(p, Homomorphism) else Homomorphism(total, base, tuple(p))
    s = s if isinstance(s, Homomorphism) else Homomorphism(base, total, tuple(s))
    return Point(total, base, p, s)


def check_point(P: Point) -> Verdict:
    for name, h in (("p", P.p), ("s", P.s)):
        v = check_homomorphism(h)
        if not v:
            return Verdict(False, f"{name} is not a homomorphism ({v.law})", v.witness)
    for b in range(P.base.size):
        if P.p.map[P.s.map[b]] != b:
            return Verdict(False, "p o s = 1", (b,))
    return PASS


def check_point_morphism(m: PointMorphism) -> Verdict:
    P, Q = m.source, m.target
    if P.base != Q.base:
        raise StructureError("point morphism between points over different bases")
    v = check_homomorphism(m.h)
    if not v:
        return Verdict(False, f"h is not a homomorphism ({v.law})", v.witness)
    for e in range(P.total.size):
        if Q.p.map[m.h.map[e]] != P.p.map[e]:
            return Verdict(False, "p' o h = p", (e,))
    for b in range(P.base.size):
        if m.h.map[P.s.map[b]] != Q.s.map[b]:
            return Verdict(False, "h o s = s'", (b,))
    return PASS


def identity_morphism(P: Point) -> PointMorphism:
    return PointMorphism(P, P, identity(P.total))


def compose_morphisms(n: PointMorphism, m: PointMorphism) -> PointMorphism:
    """``n`` after ``m``."""
    return PointMorphism(m.source, n.target,
                         Homomorphism(m.source.total, n.target.total,
                                      tuple(n.h.map[v] for v in m.h.map)))


def pullback_point(f: Homomorphism, P: Point) -> Point:
    """Change of base along ``f``: the point ``(pi1, <1, s f>)`` on ``A x_B E``."""
    if f.target != P.base:
        raise StructureError("pullback_point: codomain of f is not the base of P")
    total, proj1, proj2 = pullback(f, P.p, name=f"{f.source.name}x{P.total.name}")
    index = total.coord_index
    s = tuple(index[(a, P.s.map[f.map[a]])] for a in range(f.source.size))
    root_lift = P.lift_map
    lift = tuple(root_lift[e] for e in proj2.map)
    return Point(total, f.source, proj1, Homomorphism(f.source, total, s), P.origin, lift)


def cartesian_lift(pulled: Point) -> Homomorphism:
    """The map from a pulled-back total into the total it was pulled back from."""
    return Homomorphism(pulled.total, pulled.origin.total, pulled.lift_map)


def pullback_morphism(f: Homomorphism, m: PointMorphism) -> PointMorphism:
    """``f^*(m)``: ``(a, e) -> (a, h(e))``."""
    src = pullback_point(f, m.source)
    tgt = pullback_point(f, m.target)
    index = tgt.total.coord_index
    hmap = tuple(index[(a, m.h.map[e])] for a, e in src.total.coords)
    return PointMorphism(src, tgt, Homomorphism(src.total, tgt.total, hmap))


def kernel_of_point(P: Point) -> KernelEmbedding:
    ker, inc = subalgebra(P.total, P.fibre(0), name=f"Ker({P.total.name})")
    return KernelEmbedding(ker, inc)


def point_morphisms(P: Point, Q: Point) -> list[PointMorphism]:
    if P.base != Q.base:
        raise StructureError("point_morphisms: points over different bases")
    fixed = {P.s.map[b]: Q.s.map[b] for b in range(P.base.size)}
    fibres = [Q.fibre(b) for b in range(Q.base.size)]
    allowed = [fibres[P.p.map[e]] for e in range(P.total.size)]
    return [PointMorphism(P, Q, h)
            for h in hom_enumerate(P.total, Q.total, fixed=fixed, allowed=allowed)]


def is_point_isomorphism(m: PointMorphism) -> bool:
    return m.h.is_bijective()


def inverse_morphism(m: PointMorphism) -> PointMorphism:
    inv = [0] * len(m.h.map)
    for x, y in enumerate(m.h.map):
        inv[y] = x
    return PointMorphism(m.target, m.source, Homomorphism(m.target.total, m.source.total, tuple(inv)))


def same_origin(P: Point, Q: Point) -> bool:
    a, b = P.origin, Q.origin
    if a is b:
        return True
    return (a.total == b.total and a.base == b.base and a.p.map == b.p.map
            and a.s.map == b.s.map)


def canonical_comparison(P: Point, Q: Point) -> PointMorphism:
    """The comparison isomorphism between two reindexings of the same point.

    Both must be pulled back from a common origin along paths with equal
    composite; elements are matched by (base element, element of the origin).
    """
    if P.base != Q.base:
        raise StructureError("canonical comparison between points over different bases")
    if not same_origin(P, Q):
        raise StructureError("canonical comparison needs points reindexed from the same origin")
    where = {(b, e): i for i, (b, e) in enumerate(zip(Q.p.map, Q.lift_map))}
    try:
        hmap = tuple(where[(b, e)] for b, e in zip(P.p.map, P.lift_map))
    except KeyError as exc:
        raise StructureError("reindexing paths have different composites") from exc
    return PointMorphism(P, Q, Homomorphism(P.total, Q.total, hmap))
