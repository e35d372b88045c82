"""Congruences, cooperators and connectors on finite groups with operations."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    FiniteAlgebra,
    Homomorphism,
    StructureError,
    check_homomorphism,
    direct_product,
    is_closed,
    subalgebra,
    subalgebras,
)


class NotNormalError(StructureError):
    def __init__(self, message: str, witness: tuple):
        super().__init__(f"{message}: witness {witness}")
        self.witness = witness


@dataclass(frozen=True, eq=False)
class Congruence:
    base: FiniteAlgebra
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset((int(a), int(b)) for a, b in self.pairs))

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def __len__(self):
        return len(self.pairs)

    def __eq__(self, other):
        if not isinstance(other, Congruence):
            return NotImplemented
        return self.base == other.base and self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)

    def matrix(self) -> np.ndarray:
        n = self.base.size
        m = np.zeros((n, n), dtype=bool)
        for a, b in self.pairs:
            m[a, b] = True
        return m


def check_congruence(R: Congruence) -> tuple | None:
    """First failed congruence axiom as ``(name, witness)``, or ``None``."""
    A, m = R.base, R.matrix()
    n = A.size
    idx = np.arange(n)
    if not m[idx, idx].all():
        return ("reflexive", (int(np.flatnonzero(~m[idx, idx])[0]),))
    bad = np.argwhere(m != m.T)
    if len(bad):
        return ("symmetric", tuple(map(int, bad[0])))
    trans = (m.astype(np.int64) @ m.astype(np.int64)) > 0
    bad = np.argwhere(trans & ~m)
    if len(bad):
        return ("transitive", tuple(map(int, bad[0])))
    pairs = np.argwhere(m)
    for name, table in [("+", A.np_add)] + list(zip(A.signature.extra_ops, A.np_ops)):
        a, b = pairs[:, 0], pairs[:, 1]
        ok = m[table[a[:, None], a[None, :]], table[b[:, None], b[None, :]]]
        bad = np.argwhere(~ok)
        if len(bad):
            i, j = bad[0]
            return (f"compatible with {name}", (tuple(map(int, pairs[i])), tuple(map(int, pairs[j]))))
    if not m[A.np_neg[pairs[:, 0]], A.np_neg[pairs[:, 1]]].all():
        return ("compatible with -", ())
    return None


def check_normal(A: FiniteAlgebra, N) -> tuple | None:
    """First failure of ``N`` being a normal subgroup and an ideal, as ``(name, witness)``."""
    N = frozenset(N)
    if not is_closed(A, N):
        return ("closed", tuple(sorted(N)))
    members = np.zeros(A.size, dtype=bool)
    members[list(N)] = True
    ns = np.asarray(sorted(N), dtype=np.intp)
    everything = np.arange(A.size)
    conj = A.np_add[A.np_add[everything[:, None], ns[None, :]], A.np_neg[everything][:, None]]
    bad = np.argwhere(~members[conj])
    if len(bad):
        a, k = bad[0]
        return ("normal", (int(a), int(ns[k])))
    for name, op in zip(A.signature.extra_ops, A.np_ops):
        for side, vals in (("left", op[np.ix_(everything, ns)]), ("right", op[np.ix_(ns, everything)].T)):
            bad = np.argwhere(~members[vals])
            if len(bad):
                a, k = bad[0]
                return (f"{side} ideal for {name}", (int(a), int(ns[k])))
    return None


def congruence_from_normal(A: FiniteAlgebra, N) -> Congruence:
    """``{(a, b) | a - b in N}`` for a normal ideal ``N``; rejects anything else."""
    failure = check_normal(A, N)
    if failure:
        raise NotNormalError(f"not a normal subalgebra ({failure[0]})", failure[1])
    members = set(N)
    return Congruence(A, frozenset((a, b) for a in range(A.size) for b in range(A.size)
                                   if A.sub(a, b) in members))


def class_of_zero(R: Congruence) -> frozenset[int]:
    return frozenset(a for a, b in R.pairs if b == 0)


def normal_subalgebras(A: FiniteAlgebra) -> list[frozenset[int]]:
    return [N for N in subalgebras(A) if check_normal(A, N) is None]


def cooperator(h: Homomorphism, k: Homomorphism) -> Homomorphism | None:
    """The homomorphism ``(x, y) -> h(x) + k(y)`` on ``X x Y`` if it is one."""
    if h.target != k.target:
        raise StructureError("cooperator needs a common codomain")
    P = direct_product(h.source, k.source)
    phi = Homomorphism(P, h.target, tuple(h.target.add[h.map[x]][k.map[y]] for x, y in P.coords))
    return phi if check_homomorphism(phi) else None


# --------------------------------------------------------------------------
# Connectors

@dataclass(frozen=True, eq=False)
class Connector:
    R: Congruence
    S: Congruence
    domain: tuple[tuple[int, int, int], ...]
    p: tuple[int, ...]

    def __call__(self, x: int, y: int, z: int) -> int:
        return self.p[self.domain.index((x, y, z))]

    def as_dict(self) -> dict:
        return dict(zip(self.domain, self.p))


class _Triples:
    """The algebra ``R x_A S = {(x, y, z) | x R y, y S z}`` kept as arrays."""

    def __init__(self, R: Congruence, S: Congruence):
        A = R.base
        n = A.size
        mr, ms = R.matrix(), S.matrix()
        x, y, z = np.nonzero(mr[:, :, None] & ms[None, :, :])
        self.A = A
        self.T = np.stack([x, y, z], axis=1)
        self.lookup = np.full(n ** 3, -1, dtype=np.intp)
        self.code_of = lambda t: (t[..., 0] * n + t[..., 1]) * n + t[..., 2]
        self.lookup[self.code_of(self.T)] = np.arange(len(self.T))

    def __len__(self):
        return len(self.T)

    def combine(self, table: np.ndarray, i, js) -> tuple[np.ndarray, np.ndarray]:
        """Indices of ``t_i o t_j`` and ``t_j o t_i`` for all ``j`` in ``js``."""
        ti, tj = self.T[i][None, :], self.T[js]
        first = self.lookup[self.code_of(table[ti, tj])]
        second = self.lookup[self.code_of(table[tj, ti])]
        return first, second


class _Clash(Exception):
    pass


def _propagate(tri: _Triples, p: np.ndarray, known: np.ndarray, work: list) -> None:
    A = tri.A
    tables = [A.np_add] + list(A.np_ops)

    def put(targets, values):
        new = ~known[targets]
        p[targets[new]] = values[new]
        if (p[targets] != values).any():
            raise _Clash
        fresh = np.unique(targets[new])
        known[fresh] = True
        work.extend(int(t) for t in fresh)

    while work:
        i = work.pop()
        put(np.array([tri.lookup[tri.code_of(A.np_neg[tri.T[i]])]]), np.array([A.neg[p[i]]]))
        K = np.flatnonzero(known)
        for table in tables:
            first, second = tri.combine(table, i, K)
            put(first, table[p[i], p[K]])
            put(second, table[p[K], p[i]])


def _is_connector(tri: _Triples, p: np.ndarray) -> bool:
    A, T = tri.A, tri.T
    x, y, z = T[:, 0], T[:, 1], T[:, 2]
    if not ((p[(y == z)] == x[y == z]).all() and (p[(x == y)] == z[x == y]).all()):
        return False
    if (p[tri.lookup[tri.code_of(A.np_neg[T])]] != A.np_neg[p]).any():
        return False
    for table in [A.np_add] + list(A.np_ops):
        both = tri.lookup[tri.code_of(table[T[:, None, :], T[None, :, :]])]
        if (p[both] != table[p[:, None], p[None, :]]).any():
            return False
    return True


def connector(R: Congruence, S: Congruence, max_nodes: int = 1 << 14) -> Connector | None:
    """A connector for ``R`` and ``S``, or ``None`` when none exists.

    The unit identities pin ``p`` on degenerate triples; closing under the
    operations then fixes it everywhere the degenerate triples generate.
    Remaining triples, if any, are branched on.
    """
    if R.base != S.base:
        raise StructureError("connector needs congruences on the same algebra")
    for C in (R, S):
        failure = check_congruence(C)
        if failure:
            raise StructureError(f"not a congruence ({failure[0]}): {failure[1]}")
    tri = _Triples(R, S)
    T = tri.T
    p = np.zeros(len(tri), dtype=np.intp)
    known = np.zeros(len(tri), dtype=bool)
    work: list[int] = []
    try:
        for mask, col in ((T[:, 1] == T[:, 2], 0), (T[:, 0] == T[:, 1], 2)):
            idx = np.flatnonzero(mask)
            new = ~known[idx]
            p[idx[new]] = T[idx[new], col]
            if (p[idx] != T[idx, col]).any():
                return None
            known[idx] = True
            work.extend(int(i) for i in idx[new])
        _propagate(tri, p, known, work)
    except _Clash:
        return None
    nodes = 0

    def search(p, known):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise RuntimeError(f"connector search exceeded {max_nodes} nodes")
        free = np.flatnonzero(~known)
        if len(free) == 0:
            return p if _is_connector(tri, p) else None
        i = int(free[0])
        for v in range(R.base.size):
            p2, k2 = p.copy(), known.copy()
            p2[i], k2[i] = v, True
            try:
                _propagate(tri, p2, k2, [i])
            except _Clash:
                continue
            found = search(p2, k2)
            if found is not None:
                return found
        return None

    result = search(p, known)
    if result is None:
        return None
    domain = tuple(tuple(int(v) for v in t) for t in T)
    return Connector(R, S, domain, tuple(int(v) for v in result))


@dataclass(frozen=True)
class SHVerdict:
    cooperates: bool
    connects: bool
    cooperator: Homomorphism | None = None
    connector: Connector | None = None

    @property
    def sh_respected(self) -> bool:
        return (not self.cooperates) or self.connects


def check_sh_instance(R: Congruence, S: Congruence) -> SHVerdict:
    """Do ``R`` and ``S`` centralise each other whenever their zero classes cooperate?"""
    A = R.base
    _, inc_r = subalgebra(A, class_of_zero(R))
    _, inc_s = subalgebra(A, class_of_zero(S))
    phi = cooperator(inc_r, inc_s)
    conn = connector(R, S)
    return SHVerdict(phi is not None, conn is not None, phi, conn)
