"""Checking identities that mix two actions on a common object.

An identity reads ``forall x:A y:X c:C . lhs = rhs`` where terms are
prefix S-expressions.  Sorts are ``A`` and ``C`` (the two actors) and ``X``
(the acted object).  Symbols:

* ``(+ s t)`` and ``(- t)``: the group operation of the common sort;
* ``(act b x)``: the group-action part, ``b`` of sort ``A`` or ``C``;
* ``(op s t)`` for an extra operation ``op``: inside one sort it is that
  algebra's operation, ``(op b x)`` and ``(op x b)`` are the star parts of
  the action of ``b``'s sort.

Mixing the two actor sorts in one operation is ill-sorted.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .actions import ActionDatum
from .algebra import StructureError

SORTS = ("A", "C", "X")
_TOKEN = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")


class IdentityParseError(StructureError):
    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.column = column


@dataclass(frozen=True)
class Term:
    head: str
    args: tuple["Term", ...] = ()

    def __str__(self):
        if not self.args:
            return self.head
        return "(" + " ".join([self.head, *map(str, self.args)]) + ")"


@dataclass(frozen=True)
class Identity:
    variables: tuple[tuple[str, str], ...]
    lhs: Term
    rhs: Term
    text: str = ""

    def __str__(self):
        if self.text:
            return self.text
        binders = " ".join(f"{v}:{s}" for v, s in self.variables)
        return f"forall {binders} . {self.lhs} = {self.rhs}"


def _tokens(text: str):
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip() == "":
                return
            raise IdentityParseError("unexpected character", pos + 1)
        col = m.start(m.lastindex) + 1
        yield m.group(m.lastindex), col
        pos = m.end()


def parse_identity(text: str) -> Identity:
    toks = list(_tokens(text))
    i = 0

    def expect(word):
        nonlocal i
        if i >= len(toks) or toks[i][0] != word:
            col = toks[i][1] if i < len(toks) else len(text) + 1
            raise IdentityParseError(f"expected {word!r}", col)
        i += 1

    def term() -> Term:
        nonlocal i
        if i >= len(toks):
            raise IdentityParseError("unexpected end of identity", len(text) + 1)
        tok, col = toks[i]
        if tok == ")":
            raise IdentityParseError("unexpected ')'", col)
        if tok != "(":
            i += 1
            return Term(tok)
        i += 1
        if i >= len(toks) or toks[i][0] in "()":
            raise IdentityParseError("expected an operation symbol", col + 1)
        head = toks[i][0]
        i += 1
        args = []
        while i < len(toks) and toks[i][0] != ")":
            args.append(term())
        expect(")")
        return Term(head, tuple(args))

    expect("forall")
    variables = []
    while i < len(toks) and toks[i][0] != ".":
        tok, col = toks[i]
        name, _, sort = tok.partition(":")
        if not name or sort not in SORTS:
            raise IdentityParseError(f"binder {tok!r} should look like name:A, name:C or name:X", col)
        if any(v == name for v, _ in variables):
            raise IdentityParseError(f"variable {name!r} bound twice", col)
        variables.append((name, sort))
        i += 1
    expect(".")
    lhs = term()
    expect("=")
    rhs = term()
    if i != len(toks):
        raise IdentityParseError("trailing input", toks[i][1])
    return Identity(tuple(variables), lhs, rhs, " ".join(text.split()))


@dataclass(frozen=True)
class Violation:
    identity: Identity
    sort: str
    tuples: tuple[tuple[int, ...], ...]   # every violating assignment, lexicographic
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]

    @property
    def witness(self) -> tuple[int, ...]:
        return self.tuples[0]


class _Evaluator:
    def __init__(self, xiA: ActionDatum, xiC: ActionDatum):
        if xiA.acted != xiC.acted:
            raise StructureError("both actions must act on the same object")
        if not xiA.actor.signature.compatible(xiC.actor.signature):
            raise StructureError("actors must share a signature")
        self.alg = {"A": xiA.actor, "C": xiC.actor, "X": xiA.acted}
        self.action = {"A": xiA, "C": xiC}
        self.ops = xiA.actor.signature.extra_ops

    def eval(self, t: Term, env: dict) -> tuple[str, np.ndarray]:
        if not t.args:
            if t.head not in env:
                raise StructureError(f"unbound variable {t.head!r}")
            return env[t.head]
        vals = [self.eval(a, env) for a in t.args]
        sorts = [s for s, _ in vals]
        arrays = [v for _, v in vals]
        h = t.head
        if h == "-":
            if len(vals) != 1:
                raise StructureError("'-' takes one argument")
            return sorts[0], self.alg[sorts[0]].np_neg[arrays[0]]
        if len(vals) != 2:
            raise StructureError(f"{h!r} takes two arguments, got {len(vals)}")
        (s1, u), (s2, v) = vals
        if h == "+":
            if s1 != s2:
                raise StructureError(f"'+' applied to sorts {s1} and {s2}")
            return s1, self.alg[s1].np_add[u, v]
        if h == "act":
            if s1 not in ("A", "C") or s2 != "X":
                raise StructureError(f"'act' needs an actor and an X element, got {s1}, {s2}")
            return "X", np.asarray(self.action[s1].dot, dtype=np.intp)[u, v]
        if h not in self.ops:
            raise StructureError(f"unknown symbol {h!r}")
        if s1 == s2:
            return s1, self.alg[s1].np_ops[self.ops.index(h)][u, v]
        if s2 == "X" and s1 in ("A", "C"):
            return "X", np.asarray(self.action[s1].star_left[h], dtype=np.intp)[u, v]
        if s1 == "X" and s2 in ("A", "C"):
            return "X", np.asarray(self.action[s2].star_right[h], dtype=np.intp)[u, v]
        raise StructureError(f"{h!r} mixes the actor sorts {s1} and {s2}")

    def environment(self, identity: Identity) -> dict:
        k = len(identity.variables)
        env = {}
        for axis, (name, sort) in enumerate(identity.variables):
            shape = [1] * k
            shape[axis] = self.alg[sort].size
            env[name] = (sort, np.arange(self.alg[sort].size).reshape(shape))
        return env

    def sides(self, identity: Identity, env: dict):
        ls, lv = self.eval(identity.lhs, env)
        rs, rv = self.eval(identity.rhs, env)
        if ls != rs:
            raise StructureError(f"sides of {identity} have sorts {ls} and {rs}")
        return ls, lv, rv


def _as_identity(x) -> Identity:
    return x if isinstance(x, Identity) else parse_identity(x)


def cross_identity_check(xiA: ActionDatum, xiC: ActionDatum, identities) -> list[Violation]:
    """Every violated identity with all violating assignments and the side values."""
    ev = _Evaluator(xiA, xiC)
    out = []
    for ident in map(_as_identity, identities):
        env = ev.environment(ident)
        sort, lv, rv = ev.sides(ident, env)
        shape = tuple(ev.alg[s].size for _, s in ident.variables)
        lv, rv = np.broadcast_to(lv, shape), np.broadcast_to(rv, shape)
        bad = np.argwhere(lv != rv)
        if len(bad):
            tuples = tuple(tuple(int(i) for i in row) for row in bad)
            out.append(Violation(ident, sort, tuples,
                                 tuple(int(lv[t]) for t in tuples),
                                 tuple(int(rv[t]) for t in tuples)))
    return out


def evaluate_identity(xiA: ActionDatum, xiC: ActionDatum, identity,
                      assignment: dict[str, int]) -> tuple[int, int]:
    """Both sides of ``identity`` at one assignment of its variables."""
    ident = _as_identity(identity)
    ev = _Evaluator(xiA, xiC)
    env = {}
    for name, sort in ident.variables:
        if name not in assignment:
            raise StructureError(f"no value for {name!r}")
        env[name] = (sort, np.asarray(assignment[name], dtype=np.intp))
    _, lv, rv = ev.sides(ident, env)
    return int(lv), int(rv)
