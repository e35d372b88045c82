"""Internal actions as operation tables, validated through the semidirect product."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .algebra import (
    FiniteAlgebra,
    Homomorphism,
    Signature,
    StructureError,
    Verdict,
    PASS,
    check_homomorphism,
    validate_algebra,
)
from .points import InvalidPointError, KernelEmbedding, Point, kernel_of_point

Table = tuple[tuple[int, ...], ...]


def _freeze(t) -> Table:
    return tuple(tuple(int(v) for v in row) for row in t)


@dataclass(frozen=True, eq=False)
class ActionDatum:
    """Action of ``actor`` on ``acted``.

    ``dot[b][x]`` is the group-action part ``b . x``; for each extra
    operation ``*``, ``star_left[*][b][x] = b * x`` and
    ``star_right[*][x][b] = x * b``.
    """

    actor: FiniteAlgebra
    acted: FiniteAlgebra
    dot: Table
    star_left: Mapping[str, Table] = field(default_factory=dict)
    star_right: Mapping[str, Table] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "dot", _freeze(self.dot))
        object.__setattr__(self, "star_left", {k: _freeze(v) for k, v in self.star_left.items()})
        object.__setattr__(self, "star_right", {k: _freeze(v) for k, v in self.star_right.items()})
        ops = self.actor.signature.extra_ops
        if not self.actor.signature.compatible(self.acted.signature):
            raise StructureError("actor and acted object must share a signature")
        if set(self.star_left) != set(ops) or set(self.star_right) != set(ops):
            raise StructureError(f"star tables must be given for exactly {ops}")
        nb, nx = self.actor.size, self.acted.size
        shapes = [("dot", self.dot, nb, nx)]
        shapes += [(f"star-left {k}", t, nb, nx) for k, t in self.star_left.items()]
        shapes += [(f"star-right {k}", t, nx, nb) for k, t in self.star_right.items()]
        for name, t, rows, cols in shapes:
            if len(t) != rows or any(len(r) != cols for r in t):
                raise StructureError(f"{name} table is not {rows}x{cols}")
            if any(not 0 <= v < nx for r in t for v in r):
                raise StructureError(f"{name} table has entries outside the acted carrier")

    @property
    def key(self) -> tuple:
        ops = self.actor.signature.extra_ops
        return (self.dot, tuple(self.star_left[o] for o in ops),
                tuple(self.star_right[o] for o in ops))

    def __eq__(self, other):
        if not isinstance(other, ActionDatum):
            return NotImplemented
        return self.key == other.key and self.actor == other.actor and self.acted == other.acted

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"ActionDatum({self.actor.name} on {self.acted.name})"


def trivial_action(actor: FiniteAlgebra, acted: FiniteAlgebra) -> ActionDatum:
    nb, nx = actor.size, acted.size
    dot = [list(range(nx)) for _ in range(nb)]
    zl = [[0] * nx for _ in range(nb)]
    zr = [[0] * nb for _ in range(nx)]
    ops = actor.signature.extra_ops
    return ActionDatum(actor, acted, dot, {o: zl for o in ops}, {o: zr for o in ops})


def action_from_rows(actor, acted, dot_rows, sl_rows=None, sr_rows=None) -> ActionDatum:
    """Assemble a datum from per-actor-element rows (``sr_rows[op][b][x] = x * b``)."""
    ops = actor.signature.extra_ops
    sl = {o: sl_rows[o] for o in ops} if ops else {}
    sr = {o: [[sr_rows[o][b][x] for b in range(actor.size)] for x in range(acted.size)]
          for o in ops} if ops else {}
    return ActionDatum(actor, acted, dot_rows, sl, sr)


def semidirect_product(xi: ActionDatum, signature: Signature | None = None,
                       name: str | None = None) -> Point:
    """The split extension ``X x| B`` with elements ``(x, b)`` at index ``x*|B| + b``.

    ``(x,b) + (x',b') = (x + b.x', b + b')`` and
    ``(x,b) * (x',b') = (x*x' + b*x' + x*b', b*b')``.
    """
    B, X = xi.actor, xi.acted
    nb, nx = B.size, X.size
    sig = signature or B.signature
    n = nx * nb
    pairs = [(x, b) for x in range(nx) for b in range(nb)]
    xs = np.repeat(np.arange(nx), nb)
    bs = np.tile(np.arange(nb), nx)
    xa = X.np_add
    dot = np.asarray(xi.dot, dtype=np.intp)
    # tables are laid out on axes (x, b, x', b'); only the small factors are gathered
    add = (xa[:, dot][:, :, :, None] * nb + B.np_add[None, :, None, :]).reshape(n, n)
    neg = dot[B.np_neg[bs], X.np_neg[xs]] * nb + B.np_neg[bs]
    ops = []
    for k, op in enumerate(sig.extra_ops):
        sl = np.asarray(xi.star_left[op], dtype=np.intp)
        sr = np.asarray(xi.star_right[op], dtype=np.intp)
        inner = xa[X.np_ops[k][:, None, :], sl[None, :, :]]
        kernel_part = xa.ravel()[inner[:, :, :, None] * nx + sr[:, None, None, :]]
        ops.append((kernel_part * nb + B.np_ops[k][None, :, None, :]).reshape(n, n))
    labels = [f"({X.label(x)},{B.label(b)})" for (x, b) in pairs]
    E = FiniteAlgebra.build(name or f"{X.name}x|{B.name}", add, neg, ops, sig, labels, pairs)
    p = Homomorphism(E, B, tuple(b for (_, b) in pairs))
    s = Homomorphism(B, E, tuple(range(nb)))
    return Point(E, B, p, s)


def semidirect_kernel(xi: ActionDatum, P: Point) -> KernelEmbedding:
    """The embedding ``x -> (x, 0)`` of the acted object into its semidirect product."""
    nb = xi.actor.size
    return KernelEmbedding(xi.acted, Homomorphism(xi.acted, P.total,
                                                  tuple(x * nb for x in range(xi.acted.size))))


def element_pair(P: Point, e: int) -> tuple[int, int]:
    return P.total.coords[e]


def render_pair(xi: ActionDatum, pair: tuple[int, int]) -> str:
    x, b = pair
    if x == 0:
        return xi.actor.label(b)
    if b == 0:
        return xi.acted.label(x)
    return f"({xi.acted.label(x)},{xi.actor.label(b)})"


def validate_action(xi: ActionDatum, laws: Signature | None = None) -> Verdict:
    """An action datum is valid iff its semidirect product is an algebra satisfying
    ``laws``, the projection, section and kernel embedding are homomorphisms,
    and the datum is the one its split extension induces.

    The witness is given as ``(kernel, actor)`` pairs; ``detail`` renders
    them with display labels (pure actor or pure acted elements are shown
    bare).
    """
    laws = laws or xi.actor.signature
    if not laws.compatible(xi.actor.signature):
        raise StructureError("laws do not match the signature of the action")
    P = semidirect_product(xi, laws)
    v = validate_algebra(P.total)
    if not v:
        pairs = tuple(element_pair(P, e) for e in v.witness)
        return Verdict(False, v.law, pairs,
                       f"{v.detail} fails at " + ", ".join(render_pair(xi, q) for q in pairs))
    k = semidirect_kernel(xi, P)
    for name, h in (("projection", P.p), ("section", P.s), ("kernel embedding", k.embed)):
        hv = check_homomorphism(h)
        if not hv:
            return Verdict(False, f"{name} not a homomorphism ({hv.law})", hv.witness)
    back = action_from_point(P, k)
    if back.key != xi.key:
        return Verdict(False, "induced action", _first_difference(xi, back),
                       "datum differs from the action its split extension induces")
    return PASS


def _first_difference(xi: ActionDatum, other: ActionDatum) -> tuple:
    tables = [("dot", xi.dot, other.dot)]
    for op in xi.actor.signature.extra_ops:
        tables.append((f"star-left {op}", xi.star_left[op], other.star_left[op]))
        tables.append((f"star-right {op}", xi.star_right[op], other.star_right[op]))
    for name, t1, t2 in tables:
        for i, (r1, r2) in enumerate(zip(t1, t2)):
            for j, (a, b) in enumerate(zip(r1, r2)):
                if a != b:
                    return (name, i, j)
    return ()


def action_from_point(P: Point, k: KernelEmbedding) -> ActionDatum:
    """Read off the action of the base on a chosen kernel by conjugation and stars."""
    E, B, X = P.total, P.base, k.kernel
    kinv = k.inverse
    km, sm = k.embed.map, P.s.map

    def back(e, what):
        try:
            return kinv[e]
        except KeyError:
            raise InvalidPointError(f"{what} lands outside the kernel image") from None

    dot = [[back(E.add[E.add[sm[b]][km[x]]][E.neg[sm[b]]], f"conjugate of {x} by {b}")
            for x in range(X.size)] for b in range(B.size)]
    sl, sr = {}, {}
    for j, op in enumerate(B.signature.extra_ops):
        t = E.ops[j]
        sl[op] = [[back(t[sm[b]][km[x]], f"{B.label(b)} {op} {x}") for x in range(X.size)]
                  for b in range(B.size)]
        sr[op] = [[back(t[km[x]][sm[b]], f"{x} {op} {B.label(b)}") for b in range(B.size)]
                  for x in range(X.size)]
    return ActionDatum(B, X, dot, sl, sr)


def restrict_action(f: Homomorphism, xi: ActionDatum) -> ActionDatum:
    if f.target != xi.actor:
        raise StructureError("restrict_action: f does not land in the actor")
    m = f.map
    ops = xi.actor.signature.extra_ops
    return ActionDatum(f.source, xi.acted, [xi.dot[b] for b in m],
                       {o: [xi.star_left[o][b] for b in m] for o in ops},
                       {o: [[row[b] for b in m] for row in xi.star_right[o]] for o in ops})


def transport_action(xi: ActionDatum, iso: Homomorphism) -> ActionDatum:
    """Move an action along an isomorphism ``iso: Y -> xi.acted`` to an action on ``Y``."""
    if iso.target != xi.acted or not iso.is_bijective():
        raise StructureError("transport needs an isomorphism onto the acted object")
    fwd = iso.map
    inv = {y: x for x, y in enumerate(fwd)}
    Y = iso.source
    B = xi.actor
    ops = B.signature.extra_ops
    dot = [[inv[xi.dot[b][fwd[y]]] for y in range(Y.size)] for b in range(B.size)]
    sl = {o: [[inv[xi.star_left[o][b][fwd[y]]] for y in range(Y.size)] for b in range(B.size)]
          for o in ops}
    sr = {o: [[inv[xi.star_right[o][fwd[y]][b]] for b in range(B.size)] for y in range(Y.size)]
          for o in ops}
    return ActionDatum(B, Y, dot, sl, sr)


def check_equivariance(u: Homomorphism, xi_x: ActionDatum, xi_y: ActionDatum) -> Verdict:
    if xi_x.actor != xi_y.actor:
        raise StructureError("equivariance needs a common actor")
    if u.source != xi_x.acted or u.target != xi_y.acted:
        raise StructureError("u must map the first acted object to the second")
    m = u.map
    for b in range(xi_x.actor.size):
        for x in range(u.source.size):
            if m[xi_x.dot[b][x]] != xi_y.dot[b][m[x]]:
                return Verdict(False, "dot", (b, x), "u(b.x) = b.u(x)")
    for op in xi_x.actor.signature.extra_ops:
        l1, l2 = xi_x.star_left[op], xi_y.star_left[op]
        r1, r2 = xi_x.star_right[op], xi_y.star_right[op]
        for b in range(xi_x.actor.size):
            for x in range(u.source.size):
                if m[l1[b][x]] != l2[b][m[x]]:
                    return Verdict(False, f"star-left {op}", (b, x), f"u(b {op} x) = b {op} u(x)")
                if m[r1[x][b]] != r2[m[x]][b]:
                    return Verdict(False, f"star-right {op}", (b, x), f"u(x {op} b) = u(x) {op} b")
    return PASS


def action_from_hom(actor: FiniteAlgebra, acted: FiniteAlgebra, phi: Homomorphism,
                    auts: list[Homomorphism]) -> ActionDatum:
    """Group-signature action from ``phi: actor -> Aut(acted)``."""
    return ActionDatum(actor, acted, [auts[phi.map[b]].map for b in range(actor.size)])


def roundtrip(xi: ActionDatum) -> ActionDatum:
    P = semidirect_product(xi)
    return action_from_point(P, semidirect_kernel(xi, P))


def canonical_action(P: Point) -> tuple[ActionDatum, KernelEmbedding]:
    k = kernel_of_point(P)
    return action_from_point(P, k), k
