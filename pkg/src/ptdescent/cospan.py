"""Cospans ``A -f-> B <-g- C`` with their pair and triple pullbacks."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .algebra import (
    FiniteAlgebra,
    Homomorphism,
    StructureError,
    Verdict,
    PASS,
    fibre_product,
    generated_subalgebra,
)


@dataclass(frozen=True, eq=False)
class PairPullback:
    total: FiniteAlgebra
    pi1: Homomorphism
    pi2: Homomorphism


@dataclass(frozen=True, eq=False)
class TriplePullback:
    total: FiniteAlgebra
    p12: Homomorphism
    p23: Homomorphism
    p13: Homomorphism


@dataclass(frozen=True, eq=False)
class Cospan:
    f: Homomorphism
    g: Homomorphism

    def __post_init__(self):
        if self.f.target != self.g.target:
            raise StructureError("cospan legs must share a codomain")

    @property
    def A(self) -> FiniteAlgebra:
        return self.f.source

    @property
    def B(self) -> FiniteAlgebra:
        return self.f.target

    @property
    def C(self) -> FiniteAlgebra:
        return self.g.source

    def _leg(self, side: str) -> Homomorphism:
        return self.f if side == "A" else self.g

    def _pair(self, s: str, t: str) -> PairPullback:
        alg, (p1, p2) = fibre_product([self._leg(s), self._leg(t)],
                                      name=f"{self._leg(s).source.name}x_B{self._leg(t).source.name}")
        return PairPullback(alg, p1, p2)

    @cached_property
    def AA(self) -> PairPullback:
        return self._pair("A", "A")

    @cached_property
    def AC(self) -> PairPullback:
        return self._pair("A", "C")

    @cached_property
    def CC(self) -> PairPullback:
        return self._pair("C", "C")

    def pair(self, sides: str) -> PairPullback:
        return {"AA": self.AA, "AC": self.AC, "CC": self.CC}[sides]

    def _triple(self, sides: str) -> TriplePullback:
        alg, _ = fibre_product([self._leg(s) for s in sides], name="x_B".join(
            self._leg(s).source.name for s in sides))

        def face(i, j):
            target = self.pair(sides[i] + sides[j]).total
            index = target.coord_index
            return Homomorphism(alg, target, tuple(index[(t[i], t[j])] for t in alg.coords))

        return TriplePullback(alg, face(0, 1), face(1, 2), face(0, 2))

    @cached_property
    def AAA(self) -> TriplePullback:
        return self._triple("AAA")

    @cached_property
    def AAC(self) -> TriplePullback:
        return self._triple("AAC")

    @cached_property
    def ACC(self) -> TriplePullback:
        return self._triple("ACC")

    @cached_property
    def CCC(self) -> TriplePullback:
        return self._triple("CCC")

    def _diagonal(self, sides: str) -> Homomorphism:
        pb = self.pair(sides)
        src = self._leg(sides[0]).source
        index = pb.total.coord_index
        return Homomorphism(src, pb.total, tuple(index[(x, x)] for x in range(src.size)))

    @cached_property
    def delta_A(self) -> Homomorphism:
        return self._diagonal("AA")

    @cached_property
    def delta_C(self) -> Homomorphism:
        return self._diagonal("CC")


def is_extremal_epi(cs: Cospan) -> Verdict:
    """Joint extremal epimorphism, decided as joint generation of the codomain."""
    closure = generated_subalgebra(cs.B, cs.f.image() | cs.g.image())
    if len(closure) == cs.B.size:
        return PASS
    missing = min(set(range(cs.B.size)) - closure)
    return Verdict(False, "joint generation", (missing,),
                   f"images generate only {len(closure)} of {cs.B.size} elements")
