"""The three worked counterexamples, reduced modulo ``n`` so that carriers are finite."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .actions import ActionDatum, restrict_action, trivial_action, validate_action
from .algebra import NARNG, RNG, FiniteAlgebra, Signature, validate_algebra
from .corpus import cyclic, cyclic_ring, dihedral, inclusion, product
from .cospan import Cospan, is_extremal_epi


class FixtureError(ValueError):
    pass


def _check_modulus(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise FixtureError(f"modulus must be an integer >= 2, got {n!r}")


def _require(verdict, what: str) -> None:
    if not verdict:
        raise FixtureError(f"fixture self-check failed: {what}: {verdict.law} {verdict.witness}")


# --------------------------------------------------------------------------
# Cyclic shift on (Z/n)^3 against a trivial action

@dataclass(frozen=True, eq=False)
class S3Fixture:
    n: int
    S3: FiniteAlgebra
    X: FiniteAlgebra
    cospan: Cospan
    rho: ActionDatum       # C3 = <r> acting by the cyclic shift
    trivial: ActionDatum   # C2 = <s> acting trivially

    def element(self, label: str) -> int:
        return self.S3.labels.index(label)

    def vector(self, *coords: int) -> int:
        return self.X.coord_index[tuple(c % self.n for c in coords)]

    def candidate(self, word: str, x: int) -> int:
        """Value at ``x`` forced on any extension for the S3 element written as ``word``.

        ``word`` is a string of ``r`` and ``s``; each letter acts through the
        restriction it belongs to, rightmost letter first.
        """
        for letter in reversed(word):
            if letter == "r":
                x = self.rho.dot[1][x]
            elif letter == "s":
                x = self.trivial.dot[1][x]
            else:
                raise ValueError(f"unexpected letter {letter!r}")
        return x

    def report_values(self) -> dict:
        e = self.vector(1, 0, 0)
        sr2 = self.candidate("srr", e)
        rs = self.candidate("rs", e)
        word_sr2 = self.S3.add[self.element("s")][self.element("r2")]
        word_rs = self.S3.add[self.element("r")][self.element("s")]
        return {
            "phi(sr2)(1,0,0)": self.X.coords[sr2],
            "phi(rs)(1,0,0)": self.X.coords[rs],
            "sr2 == rs in S3": word_sr2 == word_rs,
            "rho(r2)(1,0,0)": self.X.coords[self.rho.dot[2][e]],
        }


def fixture_s3(n: int = 2) -> S3Fixture:
    _check_modulus(n)
    S3 = dihedral(3)
    f = inclusion(S3, [S3.labels.index("r")], "C3")
    g = inclusion(S3, [S3.labels.index("s")], "C2")
    cs = Cospan(f, g)
    Zn = cyclic(n)
    X = product(Zn, Zn, Zn, name=f"(Z/{n})^3")
    index = X.coord_index

    def shift(k):
        return [index[tuple(c[(i + k) % 3] for i in range(3))] for c in X.coords]

    rho = ActionDatum(cs.A, X, [shift(k) for k in range(3)])
    triv = trivial_action(cs.C, X)
    for xi, what in ((rho, "rho"), (triv, "trivial action")):
        _require(validate_action(xi), what)
    _require(is_extremal_epi(cs), "joint generation of S3")
    return S3Fixture(n, S3, X, cs, rho, triv)


# --------------------------------------------------------------------------
# Lower triangular matrices

SELF_CHECK_LIMIT = 4096
RING_IDENTITY = "forall x:A y:X c:C . (mul (mul x y) c) = (mul x (mul y c))"
GROUP_PART_IDENTITIES = (
    "forall b:A x:X y:X . (act b (+ x y)) = (+ (act b x) (act b y))",
    "forall c:C x:X y:X . (act c (+ x y)) = (+ (act c x) (act c y))",
)


@dataclass(frozen=True, eq=False)
class RingFixture:
    n: int
    R: FiniteAlgebra
    Z: FiniteAlgebra
    on_itself: ActionDatum   # R on R by multiplication on both sides
    scalars: ActionDatum     # Z/n on R by the diagonal formula
    identities: tuple[str, ...]

    def matrix(self, x: int, y: int, z: int) -> int:
        """Index of the matrix (x 0; y z)."""
        n = self.n
        return (x % n) * n * n + (y % n) * n + (z % n)

    def entries(self, i: int) -> tuple[int, int, int, int]:
        x, y, z = self.R.coords[i]
        return (x, 0, y, z)


def _matrix_label(x, y, z) -> str:
    return f"({x},0;{y},{z})"


def fixture_ring(n: int = 3) -> RingFixture:
    _check_modulus(n)
    elems = list(itertools.product(range(n), repeat=3))
    index = {e: i for i, e in enumerate(elems)}

    def add(p, q):
        return tuple((a + b) % n for a, b in zip(p, q))

    def mul(p, q):
        (x, y, z), (x2, y2, z2) = p, q
        return ((x * x2) % n, (y * x2 + z * y2) % n, (z * z2) % n)

    R = FiniteAlgebra.build(
        f"T2(Z/{n})", [[index[add(p, q)] for q in elems] for p in elems],
        ops={"mul": [[index[mul(p, q)] for q in elems] for p in elems]},
        signature=RNG, labels=[_matrix_label(*e) for e in elems], coords=elems)
    Z = cyclic_ring(n)
    ident = list(range(R.size))
    self_mul = R.table("mul")
    on_itself = ActionDatum(R, R, [ident] * R.size, {"mul": self_mul}, {"mul": self_mul})

    def scale(k, e):
        x, y, z = elems[e]
        return index[((k * x) % n, 0, (k * z) % n)]

    left = [[scale(k, e) for e in range(R.size)] for k in range(n)]
    right = [[scale(k, e) for k in range(n)] for e in range(R.size)]
    scalars = ActionDatum(Z, R, [ident] * n, {"mul": left}, {"mul": right})
    _require(validate_algebra(R), "matrix ring laws")
    if R.size * R.size <= SELF_CHECK_LIMIT:
        # the split extension has |R|^2 elements; beyond the limit only R itself is checked
        _require(validate_action(on_itself), "multiplication action")
    return RingFixture(n, R, Z, on_itself, scalars, (RING_IDENTITY,))


# --------------------------------------------------------------------------
# Non-associative ring on three generators

@dataclass(frozen=True, eq=False)
class NonassocFixture:
    n: int
    A: FiniteAlgebra
    X: FiniteAlgebra
    xi: ActionDatum
    tau: ActionDatum
    cospan: Cospan

    def element(self, a: int, b: int, c: int) -> int:
        """Index of ``ax + by + cz``."""
        return self.A.coord_index[(a % self.n, b % self.n, c % self.n)]

    def restrictions(self, action: ActionDatum | None = None) -> tuple[ActionDatum, ActionDatum]:
        action = action or self.xi
        return (restrict_action(self.cospan.f, action), restrict_action(self.cospan.g, action))


def _span_label(a, b, c) -> str:
    parts = [f"{k if k != 1 else ''}{g}" for k, g in ((a, "x"), (b, "y"), (c, "z")) if k]
    return "+".join(parts) or "0"


def fixture_nonassoc(n: int = 2, signature: Signature = NARNG) -> NonassocFixture:
    _check_modulus(n)
    # coordinates (a, b, c) of ax + by + cz in lexicographic order, so z has index 1
    elems = list(itertools.product(range(n), repeat=3))
    index = {e: i for i, e in enumerate(elems)}

    def mul(p, q):
        (a, b, _), (a2, b2, _) = p, q
        return (0, 0, (a * b2 + b * a2) % n)

    A = FiniteAlgebra.build(
        f"A(Z/{n})",
        [[index[tuple((u + v) % n for u, v in zip(p, q))] for q in elems] for p in elems],
        ops={"mul": [[index[mul(p, q)] for q in elems] for p in elems]},
        signature=signature, labels=[_span_label(*e) for e in elems], coords=elems)
    X = cyclic_ring(n, signature)
    ident = list(range(n))
    star = [[(c * k) % n for k in range(n)] for (_, _, c) in elems]
    xi = ActionDatum(A, X, [ident] * A.size, {"mul": star},
                     {"mul": [[star[e][k] for e in range(A.size)] for k in range(n)]})
    tau = trivial_action(A, X)
    f = inclusion(A, [index[(1, 0, 0)]], "<x>")
    g = inclusion(A, [index[(0, 1, 0)]], "<y>")
    cs = Cospan(f, g)
    _require(validate_algebra(A), "ring laws on A")
    for d, what in ((xi, "xi"), (tau, "tau")):
        _require(validate_action(d), what)
    _require(is_extremal_epi(cs), "joint generation of A")
    return NonassocFixture(n, A, X, xi, tau, cs)
