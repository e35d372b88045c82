"""Small finite groups and rings used as test corpora and fixture building blocks."""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Callable, Hashable, Sequence

from .algebra import (
    GROUP,
    RNG,
    FiniteAlgebra,
    Homomorphism,
    Signature,
    _tuple_algebra,
    direct_product,
    generated_subalgebra,
    subalgebra,
)


def from_elements(name: str, elements: Sequence[Hashable],
                  mul: Callable[[Hashable, Hashable], Hashable],
                  labels: Sequence[str] | None = None,
                  signature: Signature = GROUP) -> FiniteAlgebra:
    """Cayley table of ``mul`` on ``elements``; ``elements[0]`` must be the identity."""
    index = {e: i for i, e in enumerate(elements)}
    add = [[index[mul(x, y)] for y in elements] for x in elements]
    return FiniteAlgebra.build(name, add, signature=signature,
                               labels=labels or [str(e) for e in elements])


def cyclic(n: int, signature: Signature = GROUP) -> FiniteAlgebra:
    """``Z/n`` as a group; pass ``ABELIAN`` to declare commutativity as a law."""
    return FiniteAlgebra.build(f"C{n}", [[(i + j) % n for j in range(n)] for i in range(n)],
                               signature=signature, labels=[str(i) for i in range(n)])


def cyclic_ring(n: int, signature: Signature = RNG) -> FiniteAlgebra:
    """``Z/n`` with its usual multiplication."""
    return FiniteAlgebra.build(
        f"Z/{n}", [[(i + j) % n for j in range(n)] for i in range(n)],
        ops={"mul": [[(i * j) % n for j in range(n)] for i in range(n)]},
        signature=signature, labels=[str(i) for i in range(n)])


def product(*factors: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    if len(factors) == 2:
        alg = direct_product(*factors)
    else:
        tuples = list(itertools.product(*(range(f.size) for f in factors)))
        alg = _tuple_algebra("x".join(f.name for f in factors), tuples, factors,
                             factors[0].signature)
    return alg.renamed(name) if name else alg


def dihedral(n: int) -> FiniteAlgebra:
    """Symmetries of the ``n``-gon; ``(e, k)`` stands for ``s^e r^k``."""
    elements = [(e, k) for e in range(2) for k in range(n)]

    def mul(x, y):
        (e, k), (f, l) = x, y
        return ((e + f) % 2, ((-k if f else k) + l) % n)

    def label(e, k):
        r = "" if k == 0 else ("r" if k == 1 else f"r{k}")
        s = "s" if e else ""
        return (s + r) or "1"

    return from_elements("S3" if n == 3 else f"D{n}", elements, mul,
                         [label(*x) for x in elements])


def dicyclic(m: int) -> FiniteAlgebra:
    """``<a, x | a^{2m}, x^2 = a^m, x a x^-1 = a^-1>``; ``(k, e)`` stands for ``a^k x^e``."""
    order = 2 * m
    elements = [(k, e) for e in range(2) for k in range(order)]

    def mul(p, q):
        (k, e), (l, f) = p, q
        if e == 0:
            return ((k + l) % order, f)
        if f == 0:
            return ((k - l) % order, 1)
        return ((k - l + m) % order, 0)

    def label(k, e):
        a = "" if k == 0 else ("a" if k == 1 else f"a{k}")
        return (a + ("x" if e else "")) or "1"

    return from_elements("Q8" if m == 2 else f"Dic{m}", elements, mul,
                         [label(*x) for x in elements])


def alternating4() -> FiniteAlgebra:
    perms = sorted(p for p in itertools.permutations(range(4))
                   if sum(p[i] > p[j] for i in range(4) for j in range(i + 1, 4)) % 2 == 0)

    def mul(p, q):
        # p after q
        return tuple(p[q[i]] for i in range(4))

    return from_elements("A4", perms, mul, ["".join(map(str, p)) for p in perms])


@lru_cache(maxsize=None)
def small_groups(max_order: int = 12) -> tuple[FiniteAlgebra, ...]:
    """One representative of every isomorphism class of groups of order ``<= 12``."""
    C = cyclic
    table = [
        C(1), C(2), C(3), C(4), product(C(2), C(2), name="C2^2"), C(5), C(6), dihedral(3),
        C(7), C(8), product(C(2), C(4), name="C2xC4"), product(C(2), C(2), C(2), name="C2^3"),
        dihedral(4), dicyclic(2), C(9), product(C(3), C(3), name="C3^2"), C(10), dihedral(5),
        C(11), C(12), product(C(2), C(6), name="C2xC6"), dihedral(6), alternating4(),
        dicyclic(3),
    ]
    return tuple(g for g in table if g.size <= max_order)


def group(name: str) -> FiniteAlgebra:
    for g in small_groups():
        if g.name == name:
            return g
    raise KeyError(name)


def inclusion(alg: FiniteAlgebra, generators: Sequence[int], name: str | None = None
              ) -> Homomorphism:
    """Inclusion of the subalgebra generated by ``generators``."""
    _, inc = subalgebra(alg, generated_subalgebra(alg, generators), name)
    return inc
