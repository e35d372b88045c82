"""Line-oriented text documents for algebras, maps, actions, points, cospans and congruences.

A file holds one or more documents.  Each starts with a header line
``kind name size`` and continues with field lines (``key value ...``) and
table blocks (a line ending in ``:`` followed by rows of integers).
``#`` starts a comment.  Documents refer to earlier ones by name::

    algebra C2 2
    signature group
    labels 0 1
    add:
      0 1
      1 0
    neg:
      0 1

    hom inc 2
    source C2
    target S3
    map:
      0 3

Kinds and their entries:

``algebra``     signature (group | abelian), ops, laws <op> <flags...>,
                labels, blocks ``add:``, ``neg:``, ``op <name>:``
``hom``         source, target, block ``map:``
``action``      actor, acted, blocks ``dot:``, ``star-left <op>:``,
                ``star-right <op>:``
``point``       total, base, blocks ``p:``, ``s:``
``cospan``      f, g (names of hom documents)
``congruence``  base, block ``pairs:`` (one pair per row)
``manifest``    groups, acted (names of built-in corpus groups)

The header size is the carrier size for algebras, the source size for
homs, the actor size for actions, the total size for points, the codomain
size for cospans, the base size for congruences and the number of groups
for manifests.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .actions import ActionDatum
from .algebra import LAW_FLAGS, FiniteAlgebra, Homomorphism, Signature, StructureError
from .congruence import Congruence
from .cospan import Cospan
from .points import Point

KINDS = ("algebra", "hom", "action", "point", "cospan", "congruence", "manifest")
_SAFE_LABEL = re.compile(r"^[^\s#:]+$")


@dataclass(frozen=True)
class Manifest:
    """Names of corpus groups: actors ``groups`` and acted objects ``acted``."""

    groups: tuple[str, ...]
    acted: tuple[str, ...]


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1, source: str = "<input>"):
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.line, self.column, self.source = line, column, source


@dataclass
class _Raw:
    kind: str
    name: str
    size: int
    line: int
    fields: dict[str, tuple[list[str], int]] = field(default_factory=dict)
    lists: dict[str, list[tuple[list[str], int]]] = field(default_factory=dict)
    blocks: dict[str, tuple[list[list[int]], int]] = field(default_factory=dict)
    row_lines: dict[str, list[int]] = field(default_factory=dict)


@dataclass
class Workspace:
    """Named objects parsed so far, in document order."""

    objects: dict[str, Any] = field(default_factory=dict)
    kinds: dict[str, str] = field(default_factory=dict)

    def add(self, kind: str, name: str, obj: Any) -> None:
        self.objects[name] = obj
        self.kinds[name] = kind

    def of_kind(self, kind: str) -> list[tuple[str, Any]]:
        return [(n, o) for n, o in self.objects.items() if self.kinds[n] == kind]

    def get(self, name: str, kind: str | None = None) -> Any:
        if name not in self.objects:
            raise KeyError(f"no document named {name!r}")
        if kind is not None and self.kinds[name] != kind:
            raise KeyError(f"{name!r} is a {self.kinds[name]}, not a {kind}")
        return self.objects[name]

    def name_of(self, obj: Any) -> str | None:
        return next((n for n, o in self.objects.items() if o is obj), None)


def _strip(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def _split(text: str, source: str) -> list[_Raw]:
    docs: list[_Raw] = []
    block: tuple[str, list[list[int]], int, list[int]] | None = None

    def close_block():
        nonlocal block
        if block is not None:
            key, rows, line, row_lines = block
            docs[-1].blocks[key] = (rows, line)
            docs[-1].row_lines[key] = row_lines
            block = None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        words = line.split()
        if block is not None and all(re.fullmatch(r"-?\d+", w) for w in words):
            block[1].append([int(w) for w in words])
            block[3].append(lineno)
            continue
        if block is not None and re.fullmatch(r"-?\d+", words[0]):
            bad = next(w for w in words if not re.fullmatch(r"-?\d+", w))
            pos = len(line) - len(line.lstrip())
            for w in words:
                pos = line.index(w, pos)
                if w == bad:
                    break
                pos += len(w)
            raise ParseError(f"non-integer table entry {bad!r}", lineno, pos + 1, source)
        close_block()
        if words[0] in KINDS:
            if len(words) != 3:
                raise ParseError("header must read 'kind name size'", lineno, col, source)
            if not re.fullmatch(r"\d+", words[2]):
                raise ParseError(f"size {words[2]!r} is not a non-negative integer", lineno,
                                 line.index(words[2], col - 1 + len(words[0])) + 1, source)
            docs.append(_Raw(words[0], words[1], int(words[2]), lineno))
            continue
        if not docs:
            if len(words) == 3 and re.fullmatch(r"\d+", words[2]):
                raise ParseError(f"unknown kind {words[0]!r}; expected one of {', '.join(KINDS)}",
                                 lineno, col, source)
            raise ParseError(f"expected a header line, got {words[0]!r}", lineno, col, source)
        if line.endswith(":"):
            key = " ".join(line[:-1].split())
            if key in docs[-1].blocks:
                raise ParseError(f"block {key!r} given twice", lineno, col, source)
            block = (key, [], lineno, [])
            continue
        if any(re.fullmatch(r"-?\d+", w) for w in words[:1]):
            raise ParseError("integers outside of a table block", lineno, col, source)
        key = words[0]
        if key == "laws":
            docs[-1].lists.setdefault(key, []).append((words[1:], lineno))
        elif key in docs[-1].fields:
            raise ParseError(f"field {key!r} given twice", lineno, col, source)
        else:
            docs[-1].fields[key] = (words[1:], lineno)
    if docs:
        close_block()
    return docs


def _column(line: str, index: int) -> int:
    """1-based column of the ``index``-th whitespace-separated word of ``line``."""
    words = list(re.finditer(r"\S+", _strip(line)))
    return words[index].start() + 1 if index < len(words) else 1


class _Reader:
    def __init__(self, raw: _Raw, ws: Workspace, source: str, lines: list[str]):
        self.raw, self.ws, self.source, self.lines = raw, ws, source, lines

    def column(self, line: int, index: int) -> int:
        return _column(self.lines[line - 1], index) if 0 < line <= len(self.lines) else 1

    def fail(self, message: str, line: int | None = None, column: int = 1):
        raise ParseError(message, line or self.raw.line, column, self.source)

    def field(self, key: str, default=None, single=True):
        if key not in self.raw.fields:
            if default is not None:
                return default
            self.fail(f"{self.raw.kind} {self.raw.name}: missing field {key!r}")
        words, line = self.raw.fields[key]
        if single:
            if len(words) != 1:
                self.fail(f"field {key!r} takes exactly one value", line)
            return words[0]
        return words

    def ref(self, key: str, kind: str):
        name = self.field(key)
        try:
            return self.ws.get(name, kind)
        except KeyError as exc:
            line = self.raw.fields[key][1]
            self.fail(f"{key}: {exc.args[0]}", line, self.column(line, 1))

    def table(self, key: str, rows: int, cols: int, bound: int, required: bool = True):
        if key not in self.raw.blocks:
            if not required:
                return None
            self.fail(f"{self.raw.kind} {self.raw.name}: missing block '{key}:'")
        data, line = self.raw.blocks[key]
        if len(data) != rows:
            self.fail(f"block '{key}:' has {len(data)} rows, expected {rows}", line)
        for i, (row, at) in enumerate(zip(data, self.raw.row_lines[key])):
            if len(row) != cols:
                self.fail(f"block '{key}:' row {i + 1} has {len(row)} entries, expected {cols}", at)
            j = next((j for j, v in enumerate(row) if not 0 <= v < bound), None)
            if j is not None:
                self.fail(f"block '{key}:' entry {row[j]} outside the range 0..{bound - 1}",
                          at, self.column(at, j))
        return data

    def check_unknown(self, fields: set[str], blocks: set[str]):
        for key, (_, line) in self.raw.fields.items():
            if key not in fields:
                self.fail(f"unexpected field {key!r} in {self.raw.kind}", line)
        for key, (_, line) in self.raw.blocks.items():
            if key not in blocks:
                self.fail(f"unexpected block '{key}:' in {self.raw.kind}", line)


def _signature(r: _Reader) -> Signature:
    kind = r.field("signature", "group")
    if kind not in ("group", "abelian"):
        r.fail(f"signature must be 'group' or 'abelian', got {kind!r}", r.raw.fields["signature"][1])
    ops = r.field("ops", [], single=False)
    laws = {op: [] for op in ops}
    for words, line in r.raw.lists.get("laws", []):
        if not words or words[0] not in laws:
            r.fail("laws line names an undeclared operation", line)
        bad = [w for w in words[1:] if w not in LAW_FLAGS]
        if bad:
            r.fail(f"unknown law flag {bad[0]!r}", line)
        laws[words[0]] = words[1:]
    try:
        return Signature.make(laws, kind == "abelian")
    except StructureError as exc:
        r.fail(str(exc))


def _build(raw: _Raw, ws: Workspace, source: str, lines: list[str]):
    r = _Reader(raw, ws, source, lines)
    n = raw.size
    if raw.kind == "algebra":
        sig = _signature(r)
        ops = {op: r.table(f"op {op}", n, n, n) for op in sig.extra_ops}
        r.check_unknown({"signature", "ops", "labels"},
                        {"add", "neg"} | {f"op {o}" for o in sig.extra_ops})
        labels = r.field("labels", [], single=False) or None
        if labels is not None and len(labels) != n:
            r.fail(f"{len(labels)} labels for {n} elements", raw.fields["labels"][1])
        neg = r.table("neg", 1, n, n, required=False)
        if n < 1:
            r.fail("an algebra needs at least one element")
        return FiniteAlgebra.build(raw.name, r.table("add", n, n, n), None if neg is None else neg[0],
                                   ops, sig, labels)
    if raw.kind == "hom":
        src, tgt = r.ref("source", "algebra"), r.ref("target", "algebra")
        if src.size != n:
            r.fail(f"header size {n} differs from the source size {src.size}")
        r.check_unknown({"source", "target"}, {"map"})
        return Homomorphism(src, tgt, tuple(r.table("map", 1, n, tgt.size)[0]))
    if raw.kind == "action":
        B, X = r.ref("actor", "algebra"), r.ref("acted", "algebra")
        if B.size != n:
            r.fail(f"header size {n} differs from the actor size {B.size}")
        ops = B.signature.extra_ops
        r.check_unknown({"actor", "acted"}, {"dot"} | {f"star-left {o}" for o in ops}
                        | {f"star-right {o}" for o in ops})
        dot = r.table("dot", n, X.size, X.size)
        sl = {o: r.table(f"star-left {o}", n, X.size, X.size) for o in ops}
        sr = {o: r.table(f"star-right {o}", X.size, n, X.size) for o in ops}
        try:
            return ActionDatum(B, X, dot, sl, sr)
        except StructureError as exc:
            r.fail(str(exc))
    if raw.kind == "point":
        E, B = r.ref("total", "algebra"), r.ref("base", "algebra")
        if E.size != n:
            r.fail(f"header size {n} differs from the total size {E.size}")
        r.check_unknown({"total", "base"}, {"p", "s"})
        p = Homomorphism(E, B, tuple(r.table("p", 1, E.size, B.size)[0]))
        s = Homomorphism(B, E, tuple(r.table("s", 1, B.size, E.size)[0]))
        return Point(E, B, p, s)
    if raw.kind == "cospan":
        f, g = r.ref("f", "hom"), r.ref("g", "hom")
        r.check_unknown({"f", "g"}, set())
        try:
            cs = Cospan(f, g)
        except StructureError as exc:
            r.fail(str(exc))
        if cs.B.size != n:
            r.fail(f"header size {n} differs from the codomain size {cs.B.size}")
        return cs
    if raw.kind == "congruence":
        A = r.ref("base", "algebra")
        if A.size != n:
            r.fail(f"header size {n} differs from the base size {A.size}")
        r.check_unknown({"base"}, {"pairs"})
        data, _ = raw.blocks.get("pairs", ([], raw.line))
        rows = r.table("pairs", len(data), 2, n)
        return Congruence(A, frozenset(tuple(p) for p in rows))
    if raw.kind == "manifest":
        from .corpus import small_groups

        known = {g.name for g in small_groups()}
        r.check_unknown({"groups", "acted"}, set())
        names = {}
        for key in ("groups", "acted"):
            names[key] = tuple(r.field(key, single=False))
            bad = [g for g in names[key] if g not in known]
            if bad:
                line = raw.fields[key][1]
                r.fail(f"{key}: {bad[0]!r} is not a corpus group", line,
                       r.column(line, names[key].index(bad[0]) + 1))
        if len(names["groups"]) != n:
            r.fail(f"header size {n} differs from the {len(names['groups'])} groups listed")
        return Manifest(names["groups"], names["acted"])
    r.fail(f"unknown kind {raw.kind!r}")


def parse(text: str, workspace: Workspace | None = None, source: str = "<input>") -> Workspace:
    ws = workspace or Workspace()
    lines = text.splitlines()
    for raw in _split(text, source):
        if raw.name in ws.objects:
            raise ParseError(f"duplicate document name {raw.name!r}", raw.line, 1, source)
        ws.add(raw.kind, raw.name, _build(raw, ws, source, lines))
    return ws


def load(paths, workspace: Workspace | None = None) -> Workspace:
    ws = workspace or Workspace()
    for path in paths:
        parse(Path(path).read_text(), ws, str(path))
    return ws


# --------------------------------------------------------------------------
# Emission

def _rows(rows) -> list[str]:
    return ["  " + " ".join(str(v) for v in row) for row in rows]


def emit_algebra(alg: FiniteAlgebra, name: str | None = None) -> str:
    sig = alg.signature
    out = [f"algebra {name or alg.name} {alg.size}",
           f"signature {'abelian' if sig.group_commutative else 'group'}"]
    if sig.extra_ops:
        out.append("ops " + " ".join(sig.extra_ops))
        for op, laws in zip(sig.extra_ops, sig.op_laws):
            out.append(" ".join(["laws", op] + [f for f in LAW_FLAGS if f in laws]))
    if alg.labels is not None and all(_SAFE_LABEL.match(l) for l in alg.labels) \
            and len(set(alg.labels)) == alg.size:
        out.append("labels " + " ".join(alg.labels))
    out += ["add:"] + _rows(alg.add) + ["neg:"] + _rows([alg.neg])
    for op, table in zip(sig.extra_ops, alg.ops):
        out += [f"op {op}:"] + _rows(table)
    return "\n".join(out) + "\n"


def emit_hom(h: Homomorphism, name: str, source: str, target: str) -> str:
    return "\n".join([f"hom {name} {h.source.size}", f"source {source}", f"target {target}",
                      "map:"] + _rows([h.map])) + "\n"


def emit_action(xi: ActionDatum, name: str, actor: str, acted: str) -> str:
    out = [f"action {name} {xi.actor.size}", f"actor {actor}", f"acted {acted}", "dot:"]
    out += _rows(xi.dot)
    for op in xi.actor.signature.extra_ops:
        out += [f"star-left {op}:"] + _rows(xi.star_left[op])
        out += [f"star-right {op}:"] + _rows(xi.star_right[op])
    return "\n".join(out) + "\n"


def emit_point(P: Point, name: str, total: str, base: str) -> str:
    return "\n".join([f"point {name} {P.total.size}", f"total {total}", f"base {base}", "p:"]
                     + _rows([P.p.map]) + ["s:"] + _rows([P.s.map])) + "\n"


def emit_cospan(cs: Cospan, name: str, f: str, g: str) -> str:
    return f"cospan {name} {cs.B.size}\nf {f}\ng {g}\n"


def emit_congruence(R: Congruence, name: str, base: str) -> str:
    return "\n".join([f"congruence {name} {R.base.size}", f"base {base}", "pairs:"]
                     + _rows(sorted(R.pairs))) + "\n"


def emit_manifest(m: Manifest, name: str) -> str:
    return (f"manifest {name} {len(m.groups)}\ngroups {' '.join(m.groups)}\n"
            f"acted {' '.join(m.acted)}\n")


def emit_workspace(ws: Workspace) -> str:
    """Canonical text for every object, in order, resolving references by identity."""
    parts = []

    def ref(obj, kind):
        for n, o in ws.objects.items():
            if ws.kinds[n] == kind and (o is obj or o == obj):
                return n
        raise StructureError(f"no {kind} document for {obj!r}")

    for name, obj in ws.objects.items():
        kind = ws.kinds[name]
        if kind == "algebra":
            parts.append(emit_algebra(obj, name))
        elif kind == "hom":
            parts.append(emit_hom(obj, name, ref(obj.source, "algebra"), ref(obj.target, "algebra")))
        elif kind == "action":
            parts.append(emit_action(obj, name, ref(obj.actor, "algebra"), ref(obj.acted, "algebra")))
        elif kind == "point":
            parts.append(emit_point(obj, name, ref(obj.total, "algebra"), ref(obj.base, "algebra")))
        elif kind == "cospan":
            parts.append(emit_cospan(obj, name, ref(obj.f, "hom"), ref(obj.g, "hom")))
        elif kind == "congruence":
            parts.append(emit_congruence(obj, name, ref(obj.base, "algebra")))
        elif kind == "manifest":
            parts.append(emit_manifest(obj, name))
    return "\n".join(parts)
