"""Finite groups with operations.

Elements are positional indices ``0..n-1`` with ``0`` the group identity.
The group operation is written additively and is not assumed commutative;
extra binary operations are carried as tables aligned with
``Signature.extra_ops``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

LAW_FLAGS = ("left-distributive", "right-distributive", "associative", "commutative")

# n**3 above this switches law checks to the generator-reduced tests
EXHAUSTIVE_LIMIT = 1 << 18


class StructureError(ValueError):
    """Malformed tables, out-of-range entries or mismatched signatures."""


@dataclass(frozen=True)
class Signature:
    extra_ops: tuple[str, ...] = ()
    op_laws: tuple[frozenset[str], ...] = ()
    group_commutative: bool = False

    def __post_init__(self):
        if len(set(self.extra_ops)) != len(self.extra_ops):
            raise StructureError(f"duplicate operation names in {self.extra_ops}")
        if any(not name or not isinstance(name, str) for name in self.extra_ops):
            raise StructureError("operation names must be nonempty strings")
        if len(self.op_laws) != len(self.extra_ops):
            raise StructureError("one law set per extra operation")
        for laws in self.op_laws:
            unknown = set(laws) - set(LAW_FLAGS)
            if unknown:
                raise StructureError(f"unknown law flags {sorted(unknown)}")

    @classmethod
    def make(cls, ops: Mapping[str, Iterable[str]] | None = None,
             group_commutative: bool = False) -> "Signature":
        ops = dict(ops or {})
        return cls(tuple(ops), tuple(frozenset(v) for v in ops.values()), group_commutative)

    def has(self, op: str, law: str) -> bool:
        return law in self.op_laws[self.extra_ops.index(op)]

    def bidistributive(self, op: str) -> bool:
        return self.has(op, "left-distributive") and self.has(op, "right-distributive")

    def compatible(self, other: "Signature") -> bool:
        return self.extra_ops == other.extra_ops

    def describe(self) -> str:
        parts = ["abelian" if self.group_commutative else "group"]
        for op, laws in zip(self.extra_ops, self.op_laws):
            parts.append(f"{op}[{','.join(f for f in LAW_FLAGS if f in laws)}]")
        return " ".join(parts)


GROUP = Signature()
ABELIAN = Signature(group_commutative=True)
NARNG = Signature.make({"mul": ["left-distributive", "right-distributive"]}, True)
RNG = Signature.make({"mul": ["left-distributive", "right-distributive", "associative"]}, True)


def _freeze(table) -> tuple[tuple[int, ...], ...]:
    if isinstance(table, np.ndarray):
        return tuple(map(tuple, table.tolist()))
    return tuple(tuple(int(v) for v in row) for row in table)


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    """A finite group with extra binary operations.

    Equality and hashing are structural: names, labels and coordinates are
    presentation only.
    """

    name: str
    add: tuple[tuple[int, ...], ...]
    neg: tuple[int, ...]
    ops: tuple[tuple[tuple[int, ...], ...], ...] = ()
    signature: Signature = GROUP
    labels: tuple[str, ...] | None = field(default=None, repr=False)
    coords: tuple[tuple[int, ...], ...] | None = field(default=None, repr=False)

    @classmethod
    def build(cls, name, add, neg=None, ops: Mapping[str, object] | Sequence | None = None,
              signature: Signature = GROUP, labels=None, coords=None) -> "FiniteAlgebra":
        arrays = {}
        if isinstance(add, np.ndarray):
            arrays["np_add"] = add.astype(np.intp, copy=False)
        add = _freeze(add)
        if neg is None:
            neg = tuple(next((y for y in range(len(add)) if add[x][y] == 0), 0)
                        for x in range(len(add)))
        if ops is None:
            ops = ()
        elif isinstance(ops, Mapping):
            missing = set(signature.extra_ops) ^ set(ops)
            if missing:
                raise StructureError(f"operation tables do not match signature: {sorted(missing)}")
            ops = tuple(ops[name] for name in signature.extra_ops)
        if ops and all(isinstance(t, np.ndarray) for t in ops):
            arrays["np_ops"] = tuple(t.astype(np.intp, copy=False) for t in ops)
        neg = tuple(neg.tolist()) if isinstance(neg, np.ndarray) else tuple(int(v) for v in neg)
        alg = cls(name, add, neg, tuple(_freeze(t) for t in ops),
                  signature, None if labels is None else tuple(labels),
                  None if coords is None else tuple(tuple(c) for c in coords))
        # seed the cached numpy views; cached_property reads the instance dict
        alg.__dict__.update(arrays)
        return alg

    @property
    def size(self) -> int:
        return len(self.add)

    def __len__(self):
        return len(self.add)

    def __eq__(self, other):
        if not isinstance(other, FiniteAlgebra):
            return NotImplemented
        return (self.add == other.add and self.neg == other.neg and self.ops == other.ops
                and self.signature == other.signature)

    def __hash__(self):
        return hash((self.add, self.neg, self.ops, self.signature))

    def __repr__(self):
        return f"FiniteAlgebra({self.name!r}, size={self.size}, {self.signature.describe()})"

    def table(self, op: str) -> tuple[tuple[int, ...], ...]:
        return self.ops[self.signature.extra_ops.index(op)]

    def label(self, i: int) -> str:
        if self.labels is not None:
            return self.labels[i]
        return str(i)

    def sub(self, x: int, y: int) -> int:
        return self.add[x][self.neg[y]]

    @cached_property
    def np_add(self) -> np.ndarray:
        return np.asarray(self.add, dtype=np.intp).reshape(self.size, self.size)

    @cached_property
    def np_neg(self) -> np.ndarray:
        return np.asarray(self.neg, dtype=np.intp)

    @cached_property
    def np_ops(self) -> tuple[np.ndarray, ...]:
        return tuple(np.asarray(t, dtype=np.intp).reshape(self.size, self.size) for t in self.ops)

    @cached_property
    def coord_index(self) -> dict[tuple[int, ...], int]:
        if self.coords is None:
            raise StructureError(f"{self.name} carries no coordinates")
        return {c: i for i, c in enumerate(self.coords)}

    def renamed(self, name: str, labels=None) -> "FiniteAlgebra":
        return FiniteAlgebra(name, self.add, self.neg, self.ops, self.signature,
                             self.labels if labels is None else tuple(labels), self.coords)

    def with_signature(self, signature: Signature) -> "FiniteAlgebra":
        if not signature.compatible(self.signature):
            raise StructureError("signature change must keep the operation names")
        return FiniteAlgebra(self.name, self.add, self.neg, self.ops, signature,
                             self.labels, self.coords)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check; ``witness`` holds element indices."""

    ok: bool
    law: str | None = None
    witness: tuple = ()
    detail: str = ""

    def __bool__(self):
        return self.ok


PASS = Verdict(True)


# --------------------------------------------------------------------------
# Law checking

def _check_shape(alg: FiniteAlgebra) -> None:
    n = alg.size
    if n < 1:
        raise StructureError(f"{alg.name}: empty carrier")
    if len(alg.neg) != n:
        raise StructureError(f"{alg.name}: neg has length {len(alg.neg)}, expected {n}")
    if len(alg.ops) != len(alg.signature.extra_ops):
        raise StructureError(f"{alg.name}: {len(alg.ops)} operation tables for "
                             f"{len(alg.signature.extra_ops)} declared operations")
    tables = [("add", alg.add)] + list(zip(alg.signature.extra_ops, alg.ops))
    for label, table in tables:
        if len(table) != n or any(len(row) != n for row in table):
            raise StructureError(f"{alg.name}: table {label} is not {n}x{n}")
    arrays = [("add", alg.np_add)] + list(zip(alg.signature.extra_ops, alg.np_ops))
    for label, a in arrays + [("neg", alg.np_neg)]:
        if a.min() < 0 or a.max() >= n:
            raise StructureError(f"{alg.name}: {label} has entries outside 0..{n - 1}")
    if alg.labels is not None and len(alg.labels) != n:
        raise StructureError(f"{alg.name}: {len(alg.labels)} labels for {n} elements")


def _first(mask: np.ndarray, *axes) -> tuple | None:
    if not mask.any():
        return None
    hits = np.argwhere(mask)
    if hits.size == 0:
        return None
    row = hits[0]
    return tuple(int(axes[k][row[k]]) if axes and axes[k] is not None else int(row[k])
                 for k in range(len(row)))


def _magma_closure(add: np.ndarray, seed: Iterable[int]) -> set[int]:
    members = set(seed)
    frontier = sorted(members)
    while frontier:
        cur = np.fromiter(sorted(members), dtype=np.intp)
        fr = np.asarray(frontier, dtype=np.intp)
        found = set(np.unique(add[np.ix_(fr, cur)]).tolist())
        found |= set(np.unique(add[np.ix_(cur, fr)]).tolist())
        frontier = sorted(found - members)
        members |= found
    return members


def additive_generators(alg: FiniteAlgebra) -> list[int]:
    """Greedy generating set of the carrier under ``add`` alone (as a magma).

    Zero is tried last: in a finite group any nonempty set already reaches it.
    """
    gens: list[int] = []
    reached: set[int] = set()
    for x in [*range(1, alg.size), 0]:
        if x not in reached:
            gens.append(x)
            reached = _magma_closure(alg.np_add, gens)
            if len(reached) == alg.size:
                break
    return gens


def validate_algebra(alg: FiniteAlgebra, exhaustive: bool | None = None) -> Verdict:
    """Check group axioms and every declared law; report the first violation.

    Violations are searched in lexicographic order of the witness tuple.  Above
    ``EXHAUSTIVE_LIMIT`` the cubic laws are decided on an additive generating
    set (Light's test for associativity, additivity closure for the others),
    which is equivalent for finite carriers.
    """
    _check_shape(alg)
    n = alg.size
    if exhaustive is None:
        exhaustive = n ** 3 <= EXHAUSTIVE_LIMIT
    add, neg = alg.np_add, alg.np_neg
    idx = np.arange(n)

    hit = _first((add[0] != idx) | (add[:, 0] != idx))
    if hit:
        return Verdict(False, "identity", hit, "0 + x = x = x + 0")
    hit = _first((add[idx, neg] != 0) | (add[neg, idx] != 0))
    if hit:
        return Verdict(False, "inverse", hit, "x + (-x) = 0 = (-x) + x")

    everything = idx
    gens = everything if exhaustive else np.asarray(additive_generators(alg), dtype=np.intp)

    # associativity of add; the middle variable ranges over generators (Light)
    # whole rows and columns are gathered at once, which is much cheaper than 3-index fancy indexing
    lhs = add[add[:, gens]]
    rhs = np.take(add, add[gens], axis=1)
    hit = _first(lhs != rhs, everything, gens, everything)
    if hit:
        return Verdict(False, "associativity", hit, "(x + y) + z = x + (y + z)")

    if alg.signature.group_commutative:
        hit = _first(add != add.T)
        if hit:
            return Verdict(False, "commutativity", hit, "x + y = y + x")

    for name, laws, op in zip(alg.signature.extra_ops, alg.signature.op_laws, alg.np_ops):

        def left_distributive(us):
            # u*(v+w) = u*v + u*w with v restricted to generators
            left = np.take(op[us], add[gens], axis=1)
            right = add[op[np.ix_(us, gens)][:, :, None], op[us][:, None, :]]
            hit = _first(left != right, us, gens, everything)
            if hit:
                return Verdict(False, f"{name}: left-distributive", hit,
                               f"x {name} (y + z) = x {name} y + x {name} z")

        def right_distributive():
            left = op[add[gens]]
            right = add.ravel()[op[gens][:, None, :] * n + op[None, :, :]]
            hit = _first(left != right, gens, everything, everything)
            if hit:
                return Verdict(False, f"{name}: right-distributive", hit,
                               f"(x + y) {name} z = x {name} z + y {name} z")

        # a failed Verdict is falsy, so the checks are chained on None explicitly
        both = "left-distributive" in laws and "right-distributive" in laws
        if not exhaustive and both and alg.signature.group_commutative:
            # once (x + y)*z splits and + commutes, left additivity need only
            # hold for generators in the first slot
            checks = [right_distributive, lambda: left_distributive(gens)]
        else:
            checks = ([lambda: left_distributive(everything)] if "left-distributive" in laws else [])
            checks += [right_distributive] if "right-distributive" in laws else []
        for check in checks:
            failure = check()
            if failure is not None:
                return failure
        if "associative" in laws:
            g = gens if ("left-distributive" in laws and "right-distributive" in laws) else everything
            left = op[op[np.ix_(g, g)][:, :, None], g[None, None, :]]
            right = op[g[:, None, None], op[np.ix_(g, g)][None, :, :]]
            hit = _first(left != right, g, g, g)
            if hit:
                return Verdict(False, f"{name}: associative", hit,
                               f"(x {name} y) {name} z = x {name} (y {name} z)")
        if "commutative" in laws:
            hit = _first(op != op.T)
            if hit:
                return Verdict(False, f"{name}: commutative", hit, f"x {name} y = y {name} x")
    return PASS


# --------------------------------------------------------------------------
# Homomorphisms

@dataclass(frozen=True, eq=False)
class Homomorphism:
    source: FiniteAlgebra
    target: FiniteAlgebra
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(v) for v in self.map))

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __eq__(self, other):
        if not isinstance(other, Homomorphism):
            return NotImplemented
        return self.map == other.map and self.source == other.source and self.target == other.target

    def __hash__(self):
        return hash(self.map)

    def __repr__(self):
        return f"Homomorphism({self.source.name} -> {self.target.name}, {self.map})"

    def image(self) -> frozenset[int]:
        return frozenset(self.map)

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def is_bijective(self) -> bool:
        return self.is_injective() and len(self.map) == self.target.size


def identity(alg: FiniteAlgebra) -> Homomorphism:
    return Homomorphism(alg, alg, tuple(range(alg.size)))


def zero_map(source: FiniteAlgebra, target: FiniteAlgebra) -> Homomorphism:
    return Homomorphism(source, target, (0,) * source.size)


def compose(g: Homomorphism, f: Homomorphism) -> Homomorphism:
    """``g`` after ``f``."""
    if f.target.size != g.source.size:
        raise StructureError(f"cannot compose {g!r} after {f!r}")
    return Homomorphism(f.source, g.target, tuple(g.map[v] for v in f.map))


def inverse(h: Homomorphism) -> Homomorphism:
    if not h.is_bijective():
        raise StructureError(f"{h!r} is not bijective")
    inv = [0] * len(h.map)
    for x, y in enumerate(h.map):
        inv[y] = x
    return Homomorphism(h.target, h.source, tuple(inv))


def check_homomorphism(h: Homomorphism) -> Verdict:
    src, tgt = h.source, h.target
    if not src.signature.compatible(tgt.signature):
        raise StructureError(f"signature mismatch: {src.signature.extra_ops} vs "
                             f"{tgt.signature.extra_ops}")
    if len(h.map) != src.size or any(not 0 <= v < tgt.size for v in h.map):
        raise StructureError(f"map of {h!r} is not a function {src.size} -> {tgt.size}")
    m = np.asarray(h.map, dtype=np.intp)
    if m[0] != 0:
        return Verdict(False, "zero", (0,), "h(0) = 0")
    hit = _first(m[src.np_neg] != tgt.np_neg[m])
    if hit:
        return Verdict(False, "neg", hit, "h(-x) = -h(x)")
    hit = _first(m[src.np_add] != tgt.np_add[m[:, None], m[None, :]])
    if hit:
        return Verdict(False, "add", hit, "h(x + y) = h(x) + h(y)")
    for name, s_op, t_op in zip(src.signature.extra_ops, src.np_ops, tgt.np_ops):
        hit = _first(m[s_op] != t_op[m[:, None], m[None, :]])
        if hit:
            return Verdict(False, name, hit, f"h(x {name} y) = h(x) {name} h(y)")
    return PASS


# --------------------------------------------------------------------------
# Subalgebras

def generated_subalgebra(alg: FiniteAlgebra, seed: Iterable[int]) -> frozenset[int]:
    members = {0, *seed}
    if any(not 0 <= x < alg.size for x in members):
        raise StructureError("seed element outside the carrier")
    tables = (alg.np_add,) + alg.np_ops
    frontier = sorted(members)
    while frontier:
        cur = np.fromiter(sorted(members), dtype=np.intp)
        fr = np.asarray(frontier, dtype=np.intp)
        found = set(alg.np_neg[fr].tolist())
        for t in tables:
            found.update(np.unique(t[np.ix_(fr, cur)]).tolist())
            found.update(np.unique(t[np.ix_(cur, fr)]).tolist())
        frontier = sorted(found - members)
        members |= found
    return frozenset(members)


def is_closed(alg: FiniteAlgebra, subset: Iterable[int]) -> bool:
    subset = frozenset(subset)
    return 0 in subset and generated_subalgebra(alg, subset) == subset


def subalgebra(alg: FiniteAlgebra, subset: Iterable[int], name: str | None = None
               ) -> tuple[FiniteAlgebra, Homomorphism]:
    """Reify a closed subset as an algebra, renumbered in increasing index order."""
    elems = sorted(set(subset))
    if not is_closed(alg, elems):
        raise StructureError(f"subset {elems} is not a subalgebra of {alg.name}")
    pos = {e: i for i, e in enumerate(elems)}
    add = [[pos[alg.add[a][b]] for b in elems] for a in elems]
    neg = [pos[alg.neg[a]] for a in elems]
    ops = [[[pos[t[a][b]] for b in elems] for a in elems] for t in alg.ops]
    labels = [alg.label(e) for e in elems]
    coords = None if alg.coords is None else [alg.coords[e] for e in elems]
    sub = FiniteAlgebra.build(name or f"{alg.name}<{','.join(labels)}>", add, neg, ops,
                              alg.signature, labels, coords)
    return sub, Homomorphism(sub, alg, tuple(elems))


def subalgebras(alg: FiniteAlgebra) -> list[frozenset[int]]:
    """All subalgebras, ordered by size then sorted elements."""
    found = {frozenset({0})}
    frontier = [frozenset({0})]
    while frontier:
        nxt = []
        for s in frontier:
            for x in range(alg.size):
                if x not in s:
                    t = generated_subalgebra(alg, s | {x})
                    if t not in found:
                        found.add(t)
                        nxt.append(t)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


# --------------------------------------------------------------------------
# Products and pullbacks

def _tuple_algebra(name: str, tuples: list[tuple[int, ...]], factors: Sequence[FiniteAlgebra],
                   signature: Signature) -> FiniteAlgebra:
    sizes = [f.size for f in factors]
    radix = np.cumprod([1] + sizes[:0:-1])[::-1]
    T = np.asarray(tuples, dtype=np.intp).reshape(len(tuples), len(factors))
    lookup = np.full(int(np.prod(sizes)), -1, dtype=np.intp)
    lookup[T @ radix] = np.arange(len(tuples))

    def lift(tables):
        key = sum(tab[T[:, k][:, None], T[:, k][None, :]] * radix[k]
                  for k, tab in enumerate(tables))
        out = lookup[key]
        if (out < 0).any():
            raise StructureError(f"{name}: carrier is not closed under the operations")
        return out

    add = lift([f.np_add for f in factors])
    neg = lookup[sum(f.np_neg[T[:, k]] * radix[k] for k, f in enumerate(factors))]
    ops = [lift([f.np_ops[j] for f in factors]) for j in range(len(signature.extra_ops))]
    labels = ["(" + ",".join(f.label(a[k]) for k, f in enumerate(factors)) + ")" for a in tuples]
    return FiniteAlgebra.build(name, add, neg, ops, signature, labels, tuples)


def direct_product(x: FiniteAlgebra, y: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    if not x.signature.compatible(y.signature):
        raise StructureError("direct product needs a shared signature")
    tuples = list(itertools.product(range(x.size), range(y.size)))
    sig = x.signature if x.signature == y.signature else Signature(
        x.signature.extra_ops,
        tuple(a & b for a, b in zip(x.signature.op_laws, y.signature.op_laws)),
        x.signature.group_commutative and y.signature.group_commutative)
    return _tuple_algebra(name or f"{x.name}x{y.name}", tuples, [x, y], sig)


def fibre_product(maps: Sequence[Homomorphism], name: str | None = None
                  ) -> tuple[FiniteAlgebra, list[Homomorphism]]:
    """Limit of several homs into a common codomain, carrier in lexicographic order."""
    if not maps:
        raise StructureError("fibre product of no maps")
    base = maps[0].target
    for m in maps:
        if m.target.size != base.size or not m.source.signature.compatible(base.signature):
            raise StructureError("fibre product needs a common codomain and signature")
    fibres = [[[] for _ in range(base.size)] for _ in maps]
    for k, m in enumerate(maps):
        for a, b in enumerate(m.map):
            fibres[k][b].append(a)
    tuples = sorted(t for b in range(base.size)
                    for t in itertools.product(*(fibres[k][b] for k in range(len(maps)))))
    alg = _tuple_algebra(name or "x".join(m.source.name for m in maps), tuples,
                         [m.source for m in maps], maps[0].source.signature)
    projs = [Homomorphism(alg, m.source, tuple(t[k] for t in tuples)) for k, m in enumerate(maps)]
    return alg, projs


def pullback(f: Homomorphism, g: Homomorphism, name: str | None = None
             ) -> tuple[FiniteAlgebra, Homomorphism, Homomorphism]:
    alg, (p1, p2) = fibre_product([f, g], name)
    return alg, p1, p2


# --------------------------------------------------------------------------
# Homomorphism enumeration

def hom_enumerate(source: FiniteAlgebra, target: FiniteAlgebra,
                  fixed: Mapping[int, int] | None = None,
                  allowed: Sequence[Iterable[int] | None] | None = None) -> list[Homomorphism]:
    """All homomorphisms ``source -> target`` in lexicographic order of their tables.

    ``fixed`` pins images of some elements; ``allowed[x]`` restricts the image
    of ``x``.  Images of generators are branched on; everything else is forced
    by closing the partial map under the operations.
    """
    if not source.signature.compatible(target.signature):
        raise StructureError("hom_enumerate needs a shared signature")
    n = source.size
    fixed = dict(fixed or {})
    allow = [None] * n if allowed is None else [None if a is None else frozenset(a) for a in allowed]
    s_tabs = [source.add] + list(source.ops)
    t_tabs = [target.add] + list(target.ops)
    s_neg, t_neg = source.neg, target.neg

    def admissible(x, y):
        if x in fixed and fixed[x] != y:
            return False
        return allow[x] is None or y in allow[x]

    def extend(m, known, x, y):
        """Add x -> y and close; return False on conflict."""
        stack = [(x, y)]
        while stack:
            a, b = stack.pop()
            if m[a] >= 0:
                if m[a] != b:
                    return False
                continue
            if not admissible(a, b):
                return False
            m[a] = b
            known.append(a)
            stack.append((s_neg[a], t_neg[b]))
            for k in list(known):
                mk = m[k]
                for st, tt in zip(s_tabs, t_tabs):
                    stack.append((st[a][k], tt[b][mk]))
                    stack.append((st[k][a], tt[mk][b]))
        return True

    results = []

    def search(m, known):
        free = next((x for x in range(n) if m[x] < 0), None)
        if free is None:
            results.append(tuple(m))
            return
        # pinned elements first: they cost no branching
        pinned = next((x for x in range(n) if m[x] < 0 and x in fixed), None)
        x = free if pinned is None else pinned
        cands = [fixed[x]] if x in fixed else (
            sorted(allow[x]) if allow[x] is not None else range(target.size))
        for y in cands:
            m2, known2 = list(m), list(known)
            if extend(m2, known2, x, y):
                search(m2, known2)

    m0 = [-1] * n
    known0: list[int] = []
    if extend(m0, known0, 0, 0):
        search(m0, known0)
    results.sort()
    return [Homomorphism(source, target, r) for r in results]


def automorphism_group(alg: FiniteAlgebra) -> list[Homomorphism]:
    return [h for h in hom_enumerate(alg, alg) if h.is_bijective()]


def group_reduct(alg: FiniteAlgebra) -> FiniteAlgebra:
    sig = ABELIAN if alg.signature.group_commutative else GROUP
    return FiniteAlgebra(alg.name, alg.add, alg.neg, (), sig, alg.labels, alg.coords)


def automorphism_algebra(alg: FiniteAlgebra) -> tuple[FiniteAlgebra, list[Homomorphism]]:
    """``Aut(alg)`` as a group whose addition is composition: ``i + j = auts[i] o auts[j]``.

    The identity is the lexicographically smallest bijection, hence index 0.
    """
    auts = automorphism_group(alg)
    pos = {a.map: i for i, a in enumerate(auts)}
    add = [[pos[compose(a, b).map] for b in auts] for a in auts]
    neg = [pos[inverse(a).map] for a in auts]
    labels = [f"aut{i}" for i in range(len(auts))]
    return FiniteAlgebra.build(f"Aut({alg.name})", add, neg, (), GROUP, labels), auts
