"""Extending a pair of actions along a cospan to an action of the codomain.

Two search methods are provided.  ``oracle`` enumerates candidate tables
outright (homomorphisms into ``Aut(X)`` in the group signature, bounded row
enumeration otherwise) and keeps the valid ones.  ``propagate`` seeds the
rows fixed by the two restrictions, closes them under identities every valid
action satisfies, and only branches on rows that remain open.  Both return
the same set whenever the oracle finishes within its bounds.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .actions import (
    ActionDatum,
    action_from_point,
    action_from_rows,
    semidirect_product,
    transport_action,
    validate_action,
)
from .algebra import (
    FiniteAlgebra,
    Homomorphism,
    StructureError,
    automorphism_algebra,
    automorphism_group,
    check_homomorphism,
    group_reduct,
    hom_enumerate,
)
from .cospan import Cospan, is_extremal_epi
from .points import Point, kernel_of_point

METHODS = ("oracle", "propagate")


@dataclass(frozen=True)
class Bounds:
    max_actor: int = 24          # oracle, group signature: |B|
    max_acted: int = 8           # oracle, group signature: |X|
    table_budget: int = 64       # oracle, other signatures: |B| * |X|
    max_candidates: int = 1 << 16
    max_nodes: int = 1 << 16     # propagate: search nodes


@dataclass(frozen=True)
class Extensions:
    actions: tuple[ActionDatum, ...]
    method: str
    extremal_epi: bool
    inconclusive: bool = False
    reason: str = ""
    nodes: int = 0

    def __len__(self):
        return len(self.actions)

    def __iter__(self) -> Iterator[ActionDatum]:
        return iter(self.actions)

    def __contains__(self, xi) -> bool:
        return any(xi.key == a.key for a in self.actions)


class _Conflict(Exception):
    pass


def _kinds(sig) -> list[tuple[str, str | None]]:
    ops = sig.extra_ops
    return [("dot", None)] + [("sl", o) for o in ops] + [("sr", o) for o in ops]


def _rows_of(xi: ActionDatum, kind: str, op: str | None) -> list[tuple[int, ...]]:
    if kind == "dot":
        return [tuple(r) for r in xi.dot]
    if kind == "sl":
        return [tuple(r) for r in xi.star_left[op]]
    t = xi.star_right[op]
    return [tuple(t[x][b] for x in range(xi.acted.size)) for b in range(xi.actor.size)]


def _seed(cs: Cospan, xiA: ActionDatum, xiC: ActionDatum) -> dict:
    """Rows of the codomain fixed by the two restrictions; raises on disagreement."""
    kinds = _kinds(cs.B.signature)
    rows: dict[tuple[int, int], tuple[int, ...]] = {}
    for leg, xi in ((cs.f, xiA), (cs.g, xiC)):
        for k, (kind, op) in enumerate(kinds):
            for a, row in enumerate(_rows_of(xi, kind, op)):
                key = (k, leg.map[a])
                if rows.setdefault(key, row) != row:
                    raise _Conflict(key)
    return rows


def _datum(B: FiniteAlgebra, X: FiniteAlgebra, rows: dict) -> ActionDatum:
    kinds = _kinds(B.signature)
    dot = [rows[(0, b)] for b in range(B.size)]
    sl = {op: [rows[(k, b)] for b in range(B.size)]
          for k, (kind, op) in enumerate(kinds) if kind == "sl"}
    sr = {op: [rows[(k, b)] for b in range(B.size)]
          for k, (kind, op) in enumerate(kinds) if kind == "sr"}
    return action_from_rows(B, X, dot, sl, sr)


def _check_inputs(cs: Cospan, xiA: ActionDatum, xiC: ActionDatum) -> FiniteAlgebra:
    if xiA.actor != cs.A or xiC.actor != cs.C:
        raise StructureError("actions must be over the feet of the cospan")
    if xiA.acted != xiC.acted:
        raise StructureError("both actions must act on the same object")
    return xiA.acted


class _Domains:
    """Candidate rows, computed lazily: automorphisms for the group part,
    additive endomorphisms for bi-distributive operations, all maps otherwise."""

    def __init__(self, B: FiniteAlgebra, X: FiniteAlgebra):
        self.B, self.X = B, X
        self._cache: dict = {}

    def rows(self, kind: str, op: str | None) -> list[tuple[int, ...]]:
        key = "aut" if kind == "dot" else ("end" if self.B.signature.bidistributive(op) else "all")
        if key not in self._cache:
            reduct = group_reduct(self.X)
            if key == "aut":
                self._cache[key] = [h.map for h in automorphism_group(reduct)]
            elif key == "end":
                self._cache[key] = [h.map for h in hom_enumerate(reduct, reduct)]
            else:
                self._cache[key] = list(itertools.product(range(self.X.size), repeat=self.X.size))
        return self._cache[key]

    def size(self, kind: str, op: str | None) -> int:
        if kind == "sl" or kind == "sr":
            if not self.B.signature.bidistributive(op):
                return self.X.size ** self.X.size
        return len(self.rows(kind, op))


# --------------------------------------------------------------------------
# Oracle

def _oracle_group(cs, xiA, xiC, X, bounds, extremal) -> Extensions:
    B = cs.B
    if B.size > bounds.max_actor or X.size > bounds.max_acted:
        return Extensions((), "oracle", extremal, True,
                          f"oracle bound exceeded: |B|={B.size} (max {bounds.max_actor}), "
                          f"|X|={X.size} (max {bounds.max_acted})")
    aut_alg, auts = automorphism_algebra(X)
    found = []
    for phi in hom_enumerate(B, aut_alg):
        xi = ActionDatum(B, X, [auts[phi.map[b]].map for b in range(B.size)])
        if (all(xi.dot[cs.f.map[a]] == xiA.dot[a] for a in range(cs.A.size))
                and all(xi.dot[cs.g.map[c]] == xiC.dot[c] for c in range(cs.C.size))
                and validate_action(xi)):
            found.append(xi)
    found.sort(key=lambda xi: xi.key)
    return Extensions(tuple(found), "oracle", extremal)


def _oracle_tables(cs, xiA, xiC, X, bounds, extremal) -> Extensions:
    B = cs.B
    if B.size * X.size > bounds.table_budget:
        return Extensions((), "oracle", extremal, True,
                          f"table budget exceeded: |B|*|X| = {B.size * X.size} "
                          f"(max {bounds.table_budget})")
    try:
        seeded = _seed(cs, xiA, xiC)
    except _Conflict:
        return Extensions((), "oracle", extremal)
    kinds = _kinds(B.signature)
    doms = _Domains(B, X)
    free = [(k, b) for k in range(len(kinds)) for b in range(B.size) if (k, b) not in seeded]
    count = 1
    for k, _ in free:
        count *= doms.size(*kinds[k])
        if count > bounds.max_candidates:
            return Extensions((), "oracle", extremal, True,
                              f"more than {bounds.max_candidates} candidate tables")
    found = []
    for choice in itertools.product(*(doms.rows(*kinds[k]) for k, _ in free)):
        rows = dict(seeded)
        rows.update(zip(free, choice))
        xi = _datum(B, X, rows)
        if validate_action(xi):
            found.append(xi)
    found.sort(key=lambda xi: xi.key)
    return Extensions(tuple(found), "oracle", extremal)


# --------------------------------------------------------------------------
# Propagation

class _State:
    """Rows as a dense array with a mask of which ones are fixed."""

    def __init__(self, nk: int, nb: int, nx: int):
        self.vals = np.zeros((nk, nb, nx), dtype=np.intp)
        self.known = np.zeros((nk, nb), dtype=bool)

    def copy(self) -> "_State":
        c = _State.__new__(_State)
        c.vals, c.known = self.vals.copy(), self.known.copy()
        return c

    def rows(self) -> dict:
        return {(k, b): tuple(self.vals[k, b].tolist())
                for k, b in zip(*np.nonzero(self.known))}


class _Propagator:
    def __init__(self, B: FiniteAlgebra, X: FiniteAlgebra):
        self.B, self.X = B, X
        self.kinds = _kinds(B.signature)
        sig = B.signature
        self.bidist = {k for k, (kind, op) in enumerate(self.kinds)
                       if op is not None and sig.bidistributive(op)}
        self.assoc = {k for k, (kind, op) in enumerate(self.kinds)
                      if op is not None and sig.has(op, "associative")}
        self.partner = {}
        for k, (kind, op) in enumerate(self.kinds):
            if op is not None and sig.has(op, "commutative"):
                other = "sr" if kind == "sl" else "sl"
                self.partner[k] = self.kinds.index((other, op))

    def close(self, st: _State, fresh: list) -> None:
        """Apply the deduction rules until nothing new follows; raise on conflict.

        Every rule is an identity that holds in any valid action: the group
        part is a homomorphism into permutations, star rows of a
        bi-distributive operation are additive in the actor, associativity
        composes star rows, and commutativity identifies left and right rows.
        """
        B, X = self.B, self.X
        badd, bneg = B.np_add, B.np_neg
        xadd, xneg = X.np_add, X.np_neg
        bmuls = {k: B.np_ops[B.signature.extra_ops.index(self.kinds[k][1])] for k in self.assoc}
        work = list(fresh)

        def put(k, targets, rows):
            targets = np.atleast_1d(targets)
            rows = rows.reshape(len(targets), -1)
            new = ~st.known[k, targets]
            if new.any():
                st.vals[k, targets[new]] = rows[new]
            if (st.vals[k, targets] != rows).any():
                raise _Conflict((k, int(targets[0])))
            if new.any():
                fresh_b = np.unique(targets[new])
                st.known[k, fresh_b] = True
                work.extend((k, int(b)) for b in fresh_b)

        while work:
            k, b = work.pop()
            r = st.vals[k, b]
            kind = self.kinds[k][0]
            K = np.flatnonzero(st.known[k])
            R = st.vals[k, K]
            if kind == "dot":
                inv = np.empty_like(r)
                inv[r] = np.arange(len(r))
                put(k, bneg[b], inv)
                put(k, badd[b, K], r[R])
                put(k, badd[K, b], R[:, r])
            if k in self.bidist:
                put(k, bneg[b], xneg[r])
                put(k, badd[b, K], xadd[r[None, :], R])
                put(k, badd[K, b], xadd[R, r[None, :]])
            if k in self.assoc:
                bmul = bmuls[k]
                if kind == "sl":
                    put(k, bmul[b, K], r[R])
                    put(k, bmul[K, b], R[:, r])
                else:
                    put(k, bmul[b, K], R[:, r])
                    put(k, bmul[K, b], r[R])
            if k in self.partner:
                put(self.partner[k], b, r)


def _propagate(cs, xiA, xiC, X, bounds, extremal) -> Extensions:
    B = cs.B
    try:
        seeded = _seed(cs, xiA, xiC)
    except _Conflict:
        return Extensions((), "propagate", extremal)
    prop = _Propagator(B, X)
    if B.signature.group_commutative:
        ident = tuple(range(X.size))
        for b in range(B.size):
            if seeded.setdefault((0, b), ident) != ident:
                return Extensions((), "propagate", extremal)
    st = _State(len(prop.kinds), B.size, X.size)
    for (k, b), row in seeded.items():
        st.vals[k, b] = row
        st.known[k, b] = True
    doms = _Domains(B, X)
    found: list[ActionDatum] = []
    nodes = 0

    def search(st: _State, fresh: list) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > bounds.max_nodes:
            return False
        try:
            prop.close(st, fresh)
        except _Conflict:
            return True
        open_rows = np.argwhere(~st.known)
        if len(open_rows) == 0:
            xi = _datum(B, X, st.rows())
            if validate_action(xi):
                found.append(xi)
            return True
        key = (int(open_rows[0][0]), int(open_rows[0][1]))
        for row in doms.rows(*prop.kinds[key[0]]):
            branch = st.copy()
            branch.vals[key] = row
            branch.known[key] = True
            if not search(branch, [key]):
                return False
        return True

    if not search(st, list(seeded)):
        return Extensions((), "propagate", extremal, True,
                          f"search exceeded {bounds.max_nodes} nodes", nodes)
    found.sort(key=lambda xi: xi.key)
    return Extensions(tuple(found), "propagate", extremal, nodes=nodes)


def extend_action(cs: Cospan, xiA: ActionDatum, xiC: ActionDatum, method: str = "propagate",
                  bounds: Bounds | None = None) -> Extensions:
    """All valid actions of ``B`` restricting to ``xiA`` along ``f`` and ``xiC`` along ``g``."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    bounds = bounds or Bounds()
    X = _check_inputs(cs, xiA, xiC)
    extremal = bool(is_extremal_epi(cs))
    if method == "propagate":
        return _propagate(cs, xiA, xiC, X, bounds, extremal)
    if not cs.B.signature.extra_ops:
        return _oracle_group(cs, xiA, xiC, X, bounds, extremal)
    return _oracle_tables(cs, xiA, xiC, X, bounds, extremal)


@dataclass(frozen=True)
class UAResult:
    holds: bool | None
    extensions: Extensions

    @property
    def count(self) -> int:
        return len(self.extensions)

    @property
    def inconclusive(self) -> bool:
        return self.extensions.inconclusive


def check_ua_instance(cs: Cospan, xiA: ActionDatum, xiC: ActionDatum,
                      method: str = "propagate", bounds: Bounds | None = None) -> UAResult:
    """Uniqueness of the extension: at most one valid action of the codomain."""
    ext = extend_action(cs, xiA, xiC, method, bounds)
    return UAResult(None if ext.inconclusive else len(ext) <= 1, ext)


# --------------------------------------------------------------------------
# Essential surjectivity

@dataclass(frozen=True)
class SurjectivityResult:
    status: str                      # "found", "none" or "inconclusive"
    point: Point | None = None
    candidates: int = 0
    reason: str = ""
    extensions: Extensions | None = field(default=None, repr=False)


def _kernel_comparison(d) -> tuple[Homomorphism, object, object]:
    """``ker D -> ker F`` read off from ``b`` on the fibre over the zero of ``A x_B C``."""
    kD, kF = kernel_of_point(d.D), kernel_of_point(d.F)
    src, tgt = d.b.source, d.b.target
    zero = 0  # (0, 0) is the least pair, hence index 0
    s_index = src.total.coord_index
    back = kF.inverse
    theta = []
    for x in range(kD.kernel.size):
        e = s_index[(zero, kD.embed.map[x])]
        w, e2 = tgt.total.coords[d.b.map[e]]
        if w != zero or e2 not in back:
            raise StructureError("b does not preserve the fibre over zero")
        theta.append(back[e2])
    return Homomorphism(kD.kernel, kF.kernel, tuple(theta)), kD, kF


def essential_surjectivity_witness(cs: Cospan, d, bounds: Bounds | None = None,
                                   method: str = "propagate") -> SurjectivityResult:
    """Search for a point ``P`` over ``B`` with ``phi(P)`` isomorphic to ``d``.

    Any such ``P`` has kernel ``ker D`` with an action extending the two
    actions read off from ``d``, so trying every extension is exhaustive.
    """
    from .descent import descent_isomorphism, phi

    theta, kD, kF = _kernel_comparison(d)
    if not theta.is_bijective() or not check_homomorphism(theta):
        raise StructureError("b does not induce an isomorphism of kernels")
    xiD = action_from_point(d.D, kD)
    xiF = transport_action(action_from_point(d.F, kF), theta)
    ext = extend_action(cs, xiD, xiF, method, bounds)
    if ext.inconclusive:
        return SurjectivityResult("inconclusive", None, 0, ext.reason, ext)
    for i, xi in enumerate(ext):
        P = semidirect_product(xi)
        if descent_isomorphism(phi(cs, P), d) is not None:
            return SurjectivityResult("found", P, i + 1, "", ext)
    return SurjectivityResult("none", None, len(ext),
                              f"none of the {len(ext)} extensions is sent to the datum", ext)
