"""Exhaustive instance generators over the small-group corpus."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .actions import ActionDatum, action_from_hom, restrict_action
from .algebra import FiniteAlgebra, automorphism_algebra, hom_enumerate, subalgebra, subalgebras
from .congruence import SHVerdict, check_sh_instance, congruence_from_normal, normal_subalgebras
from .cospan import Cospan, is_extremal_epi
from .extension import Bounds, extend_action


def subgroup_cospans(B: FiniteAlgebra, extremal_only: bool = True) -> Iterator[Cospan]:
    """Cospans of subgroup inclusions ``S -> B <- T`` with ``S`` listed no later than ``T``."""
    subs = subalgebras(B)
    incs = [subalgebra(B, S)[1] for S in subs]
    for i, j in itertools.combinations_with_replacement(range(len(subs)), 2):
        cs = Cospan(incs[i], incs[j])
        if not extremal_only or is_extremal_epi(cs):
            yield cs


def group_actions(B: FiniteAlgebra, X: FiniteAlgebra) -> list[ActionDatum]:
    """Every action of ``B`` on ``X`` in the group signature, one per hom ``B -> Aut(X)``."""
    aut_alg, auts = automorphism_algebra(X)
    return [action_from_hom(B, X, phi, auts) for phi in hom_enumerate(B, aut_alg)]


def restricted_pairs(cs: Cospan, actions) -> list[tuple[ActionDatum, ActionDatum]]:
    """Distinct pairs of restrictions of the given ``B``-actions along both legs."""
    seen, out = set(), []
    for xi in actions:
        pair = (restrict_action(cs.f, xi), restrict_action(cs.g, xi))
        key = (pair[0].key, pair[1].key)
        if key not in seen:
            seen.add(key)
            out.append(pair)
    return out


@dataclass(frozen=True)
class UARecord:
    group: str
    left: tuple[int, ...]     # elements of the first subgroup
    right: tuple[int, ...]
    acted: str
    extensions: int
    inconclusive: bool

    @property
    def ok(self) -> bool:
        return not self.inconclusive and self.extensions <= 1


def ua_sweep(groups, acted, method: str = "propagate",
             bounds: Bounds | None = None) -> Iterator[UARecord]:
    """Extension counts for every restricted pair on every extremal subgroup cospan."""
    for B in groups:
        cospans = list(subgroup_cospans(B))
        for X in acted:
            actions = group_actions(B, X)
            for cs in cospans:
                for xiA, xiC in restricted_pairs(cs, actions):
                    ext = extend_action(cs, xiA, xiC, method, bounds)
                    yield UARecord(B.name, cs.f.map, cs.g.map, X.name, len(ext), ext.inconclusive)


@dataclass(frozen=True)
class SHRecord:
    group: str
    left: tuple[int, ...]
    right: tuple[int, ...]
    verdict: SHVerdict


def sh_sweep(groups) -> Iterator[SHRecord]:
    """``check_sh_instance`` on every ordered pair of normal subgroups."""
    for A in groups:
        normals = normal_subalgebras(A)
        congs = [congruence_from_normal(A, N) for N in normals]
        for (N, R), (M, S) in itertools.product(zip(normals, congs), repeat=2):
            yield SHRecord(A.name, tuple(sorted(N)), tuple(sorted(M)), check_sh_instance(R, S))
