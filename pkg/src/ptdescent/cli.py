"""Command-line front end: parse structure documents, run checks, print a report.

Exit status: 0 when every verdict passes, 1 when one fails, 2 when none
fails but one is inconclusive, 3 on input errors.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import io
from .actions import ActionDatum, render_pair, validate_action
from .algebra import (
    NARNG,
    RNG,
    FiniteAlgebra,
    StructureError,
    Verdict,
    additive_generators,
    check_homomorphism,
    validate_algebra,
)
from .congruence import (
    check_congruence,
    check_sh_instance,
    congruence_from_normal,
    normal_subalgebras,
)
from .corpus import group
from .cospan import Cospan, is_extremal_epi
from .descent import check_fully_faithful, datum_from_actions, phi, validate_descent_datum
from .extension import (
    METHODS,
    Bounds,
    Extensions,
    check_ua_instance,
    essential_surjectivity_witness,
    extend_action,
)
from .fixtures import (
    GROUP_PART_IDENTITIES,
    FixtureError,
    fixture_nonassoc,
    fixture_ring,
    fixture_s3,
)
from .identities import cross_identity_check
from .points import check_point
from .sweeps import ua_sweep

PASS_, FAIL, INCONCLUSIVE, INFO = "pass", "fail", "inconclusive", "info"
EXPECTATIONS = ("none", "unique", "multiple", "extension")


class InputError(Exception):
    pass


# --------------------------------------------------------------------------
# Reports

@dataclass
class Report:
    command: str
    verdicts: list[dict] = field(default_factory=list)
    witnesses: list[dict] = field(default_factory=list)
    started: float = field(default_factory=time.perf_counter)
    elapsed_ms: int | None = None
    format: str = "text"

    def add(self, name: str, status, detail: str = "") -> str:
        if isinstance(status, bool):
            status = PASS_ if status else FAIL
        elif status is None:
            status = INCONCLUSIVE
        self.verdicts.append({"name": name, "status": status, "detail": detail})
        return status

    def info(self, name: str, detail: str) -> None:
        self.add(name, INFO, detail)

    def witness(self, verdict: str, indices, labels) -> None:
        self.witnesses.append({"verdict": verdict, "indices": _plain(indices),
                               "labels": _plain(labels)})

    @property
    def inconclusive(self) -> bool:
        return any(v["status"] == INCONCLUSIVE for v in self.verdicts)

    @property
    def exit_code(self) -> int:
        statuses = {v["status"] for v in self.verdicts}
        if FAIL in statuses:
            return 1
        return 2 if INCONCLUSIVE in statuses else 0

    def finish(self) -> "Report":
        self.elapsed_ms = int(round((time.perf_counter() - self.started) * 1000))
        return self

    def as_dict(self) -> dict:
        return {"command": self.command, "verdicts": self.verdicts, "witnesses": self.witnesses,
                "inconclusive": self.inconclusive, "elapsed_ms": self.elapsed_ms}

    def render(self, fmt: str = "text") -> str:
        if fmt == "machine":
            return json.dumps(self.as_dict(), sort_keys=True)
        out = [f"command: {self.command}"]
        for v in self.verdicts:
            line = f"{v['status'].upper():<12} {v['name']}"
            out.append(f"{line}: {v['detail']}" if v["detail"] else line)
        for w in self.witnesses:
            out.append(f"witness [{w['verdict']}]: indices {_compact(w['indices'])} "
                       f"labels {_compact(w['labels'])}")
        out.append(f"inconclusive: {'yes' if self.inconclusive else 'no'}")
        out.append(f"elapsed_ms: {self.elapsed_ms}")
        return "\n".join(out)


def _plain(x):
    if isinstance(x, (tuple, list)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, str)) or x is None:
        return x
    return int(x)


def _compact(x) -> str:
    return json.dumps(x, separators=(",", ":"))


def _labels(alg: FiniteAlgebra, indices):
    if isinstance(indices, (tuple, list)):
        return [_labels(alg, v) for v in indices]
    return alg.label(indices) if isinstance(indices, int) else str(indices)


def _pair_labels(xi: ActionDatum, pairs):
    return [render_pair(xi, q) for q in pairs]


def _verdict(report: Report, name: str, v: Verdict, render=None, alg=None) -> None:
    detail = v.detail if v else " ".join(filter(None, [v.law, v.detail]))
    report.add(name, bool(v), "" if v else detail)
    if not v and v.witness:
        labels = render(v.witness) if render else (_labels(alg, v.witness) if alg else
                                                   [str(w) for w in v.witness])
        report.witness(name, v.witness, labels)


# --------------------------------------------------------------------------
# Argument helpers

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def _bounds(args) -> Bounds:
    if args.bound is None:
        return Bounds()
    if args.bound < 1:
        raise InputError("--bound must be positive")
    return Bounds(max_candidates=args.bound, max_nodes=args.bound)


def _expectation(args) -> str | None:
    return next((e for e in EXPECTATIONS if getattr(args, f"expect_{e}", False)), None)


def _count_verdict(report: Report, args, name: str, ext: Extensions, default_ok) -> None:
    """Report an extension count; with an --expect flag the flag decides."""
    count = len(ext)
    detail = f"{count} extension{'s' if count != 1 else ''} ({ext.method})"
    if ext.inconclusive:
        report.add(name, None, f"{ext.reason}")
        return
    expected = _expectation(args)
    if expected is None:
        report.add(name, default_ok(count), detail)
        return
    report.info(name, detail)
    ok = {"none": count == 0, "unique": count == 1, "multiple": count >= 2,
          "extension": count >= 1}[expected]
    report.add(f"expect-{expected}", ok, f"observed {count}")


def _describe_extension(xi: ActionDatum) -> str:
    B = xi.actor
    parts = []
    for b in additive_generators(B):
        parts.append(f"{B.label(b)}: dot {list(xi.dot[b])}")
        for op in B.signature.extra_ops:
            parts.append(f"{B.label(b)}: {op}-left {list(xi.star_left[op][b])}")
            parts.append(f"{B.label(b)}: {op}-right {[row[b] for row in xi.star_right[op]]}")
    return "; ".join(parts)


def _list_extensions(report: Report, ext: Extensions, names: dict | None = None) -> None:
    for i, xi in enumerate(ext, 1):
        known = [n for n, a in (names or {}).items() if a.key == xi.key]
        report.info(f"extension {i}", (f"= {', '.join(known)}; " if known else "")
                    + _describe_extension(xi))


def _load(files) -> io.Workspace:
    if not files:
        raise InputError("no input files given")
    ws = io.Workspace()
    for path in files:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise InputError(f"{path}: {exc.strerror}") from exc
        io.parse(text, ws, str(path))
    return ws


def _pick(ws: io.Workspace, kind: str, name: str | None, what: str, where=None):
    if name is not None:
        try:
            return ws.get(name, kind)
        except KeyError as exc:
            raise InputError(exc.args[0]) from exc
    found = [o for _, o in ws.of_kind(kind) if where is None or where(o)]
    if len(found) != 1:
        raise InputError(f"expected exactly one {what}, found {len(found)}; name it explicitly")
    return found[0]


def _cospan_and_actions(ws, args) -> tuple[Cospan, ActionDatum, ActionDatum]:
    cs = _pick(ws, "cospan", args.cospan, "cospan")
    xiA = _pick(ws, "action", args.left, f"action of {cs.A.name}", lambda a: a.actor == cs.A)
    xiC = _pick(ws, "action", args.right, f"action of {cs.C.name}",
                lambda a: a.actor == cs.C and a is not xiA)
    if xiA.actor != cs.A or xiC.actor != cs.C:
        raise InputError("the actions must be over the two feet of the cospan")
    return cs, xiA, xiC


# --------------------------------------------------------------------------
# Subcommands

def cmd_validate(args, report: Report) -> None:
    ws = _load(args.files)
    for name, obj in ws.objects.items():
        kind = ws.kinds[name]
        label = f"{kind} {name}"
        if kind == "algebra":
            _verdict(report, label, validate_algebra(obj), alg=obj)
        elif kind == "hom":
            _verdict(report, label, check_homomorphism(obj), alg=obj.source)
        elif kind == "action":
            _verdict(report, label, validate_action(obj), render=lambda w, xi=obj: _pair_labels(xi, w))
        elif kind == "point":
            _verdict(report, label, check_point(obj))
        elif kind == "cospan":
            report.add(label, True, "legs share a codomain")
            v = is_extremal_epi(obj)
            report.info(f"{label} extremal-epi", "yes" if v else f"no; {obj.B.label(v.witness[0])} "
                        "is not generated by the two images")
        elif kind == "congruence":
            failure = check_congruence(obj)
            report.add(label, failure is None, "" if failure is None else failure[0])
            if failure and failure[1]:
                report.witness(label, failure[1], _labels(obj.base, failure[1]))
        elif kind == "manifest":
            report.add(label, True, f"{len(obj.groups)} groups, {len(obj.acted)} acted objects")


def cmd_ua_check(args, report: Report) -> None:
    ws = _load(args.files)
    manifests = ws.of_kind("manifest")
    if manifests:
        for name, m in manifests:
            acted = [group(g) for g in m.acted]
            for gname in m.groups:
                records = list(ua_sweep([group(gname)], acted, args.method or "propagate",
                                        _bounds(args)))
                bad = [r for r in records if not r.ok]
                undecided = [r for r in bad if r.inconclusive]
                worst = max((r.extensions for r in records), default=0)
                detail = f"{len(records)} instances, at most {worst} extension(s)"
                status = False if len(bad) > len(undecided) else (None if undecided else True)
                report.add(f"UA in {gname}", status, detail)
                for r in bad:
                    report.witness(f"UA in {gname}", [list(r.left), list(r.right)],
                                   [r.acted, f"{r.extensions} extensions"])
        return
    cs, xiA, xiC = _cospan_and_actions(ws, args)
    res = check_ua_instance(cs, xiA, xiC, args.method or "propagate", _bounds(args))
    report.info("extremal-epi", "yes" if res.extensions.extremal_epi else "no")
    _count_verdict(report, args, "UA", res.extensions, lambda c: c <= 1)
    _list_extensions(report, res.extensions)


def cmd_extend(args, report: Report) -> None:
    cs, xiA, xiC = _cospan_and_actions(_load(args.files), args)
    ext = extend_action(cs, xiA, xiC, args.method or "propagate", _bounds(args))
    _count_verdict(report, args, "extend_action", ext, lambda c: True)
    _list_extensions(report, ext)


def cmd_descent_check(args, report: Report) -> None:
    ws = _load(args.files)
    cs = _pick(ws, "cospan", args.cospan, "cospan")
    points = [(n, P) for n, P in ws.of_kind("point") if P.base == cs.B]
    for name, P in points:
        v = check_point(P)
        if not v:
            raise InputError(f"point {name} is not a point: {v.law}")
        _verdict(report, f"phi({name}) coherent", validate_descent_datum(phi(cs, P)))
    for (n1, P), (n2, Q) in itertools.product(points, repeat=2):
        ff = check_fully_faithful(cs, P, Q)
        report.add(f"phi bijective on hom({n1}, {n2})", ff.bijective,
                   f"{ff.point_morphisms} point morphisms, {ff.descent_morphisms} descent morphisms")
    for (n1, xiA), (n2, xiC) in itertools.product(ws.of_kind("action"), repeat=2):
        if xiA.actor == cs.A and xiC.actor == cs.C and xiA.acted == xiC.acted and xiA is not xiC:
            _verdict(report, f"datum({n1}, {n2}) coherent",
                     validate_descent_datum(datum_from_actions(cs, xiA, xiC)))
    if len(report.verdicts) == 0:
        raise InputError("nothing to check: give points over the cospan codomain or actions over its feet")


def cmd_surj_check(args, report: Report) -> None:
    ws = _load(args.files)
    cs = _pick(ws, "cospan", args.cospan, "cospan")
    if ws.of_kind("point"):
        P = _pick(ws, "point", None, "point over the codomain", lambda P: P.base == cs.B)
        d = phi(cs, P)
    else:
        cs, xiA, xiC = _cospan_and_actions(ws, args)
        d = datum_from_actions(cs, xiA, xiC)
    v = validate_descent_datum(d)
    _verdict(report, "descent datum coherent", v)
    if not v:
        return
    res = essential_surjectivity_witness(cs, d, _bounds(args), args.method or "propagate")
    if res.status == "inconclusive":
        report.add("preimage under phi", None, res.reason)
        return
    found = res.status == "found"
    detail = (f"split extension of order {res.point.total.size}" if found else res.reason)
    expected = _expectation(args)
    if expected is None:
        report.add("preimage under phi", found, detail)
    else:
        report.info("preimage under phi", detail)
        ok = {"none": not found, "unique": found, "multiple": False, "extension": found}[expected]
        report.add(f"expect-{expected}", ok, "found" if found else "none")


def cmd_sh_check(args, report: Report) -> None:
    pairs = []
    if args.group:
        try:
            A = group(args.group)
        except KeyError as exc:
            raise InputError(f"unknown corpus group {args.group!r}") from exc
        normals = normal_subalgebras(A)
        congs = [(f"<{','.join(A.label(x) for x in sorted(N))}>", congruence_from_normal(A, N))
                 for N in normals]
        pairs = list(itertools.product(congs, repeat=2))
    else:
        congs = _load(args.files).of_kind("congruence")
        if not congs:
            raise InputError("no congruence documents given")
        for name, R in congs:
            failure = check_congruence(R)
            if failure:
                raise InputError(f"congruence {name} fails: {failure[0]}")
        pairs = [(a, b) for a, b in itertools.product(congs, repeat=2) if a[1].base == b[1].base]
    for (n1, R), (n2, S) in pairs:
        v = check_sh_instance(R, S)
        report.add(f"SH ({n1}, {n2})", v.sh_respected,
                   f"cooperate: {'yes' if v.cooperates else 'no'}, "
                   f"connector: {'yes' if v.connects else 'no'}")


def cmd_identities(args, report: Report) -> None:
    ws = _load(args.files)
    xiA = _pick(ws, "action", args.left, "first action")
    xiC = _pick(ws, "action", args.right, "second action", lambda a: a is not xiA)
    if not args.identity:
        raise InputError("give at least one --identity")
    _check_identities(report, xiA, xiC, args.identity)


def _check_identities(report: Report, xiA, xiC, identities, expect_violation=False) -> list:
    algs = {"A": xiA.actor, "C": xiC.actor, "X": xiA.acted}
    violations = {str(v.identity): v for v in cross_identity_check(xiA, xiC, identities)}
    for text in identities:
        key = " ".join(text.split())
        v = violations.get(key)
        name = f"identity {key}" + (" is violated" if expect_violation else "")
        if v is None:
            report.add(name, not expect_violation, "no violating assignment")
            continue
        report.add(name, expect_violation, f"{len(v.tuples)} violating assignments")
        sorts = [s for _, s in v.identity.variables]
        out = algs[v.sort]
        t = v.witness
        report.witness(name, [list(t), [v.lhs[0], v.rhs[0]]],
                       [[algs[s].label(i) for s, i in zip(sorts, t)],
                        [out.label(v.lhs[0]), out.label(v.rhs[0])]])
    return list(violations.values())


def _emit(path: str | None, entries) -> None:
    if not path:
        return
    ws = io.Workspace()
    for kind, name, obj in entries:
        ws.add(kind, name, obj)
    Path(path).write_text(io.emit_workspace(ws))


def cmd_counterexample(args, report: Report) -> None:
    n = args.modulus
    if args.which == "s3":
        fx = fixture_s3(n)
        cs = fx.cospan
        _emit(args.emit, [("algebra", "S3", fx.S3), ("algebra", "C3", cs.A), ("algebra", "C2", cs.C),
                          ("algebra", "X", fx.X), ("hom", "f", cs.f), ("hom", "g", cs.g),
                          ("cospan", "cs", cs), ("action", "rho", fx.rho),
                          ("action", "trivial", fx.trivial)])
        report.info("fixture", f"C3 <- S3 -> C2 acting on (Z/{n})^3; rho and trivial action valid, "
                    "cospan extremal-epi")
        counted = None
        for method in ([args.method] if args.method else list(METHODS)):
            ext = extend_action(cs, fx.rho, fx.trivial, method, _bounds(args))
            report.add(f"extend_action ({method}) is empty", None if ext.inconclusive
                       else len(ext) == 0, ext.reason if ext.inconclusive else f"{len(ext)} extensions")
            if not ext.inconclusive:
                counted = ext
        if counted is not None and _expectation(args):
            _count_verdict(report, args, "extension count", counted, lambda c: True)
        values = fx.report_values()
        for key in ("phi(sr2)(1,0,0)", "phi(rs)(1,0,0)", "rho(r2)(1,0,0)"):
            report.info(key, "(" + ",".join(map(str, values[key])) + ")")
        report.add("sr2 = rs in S3", values["sr2 == rs in S3"],
                   "one element, two different forced values")
        e = fx.vector(1, 0, 0)
        forced = [fx.candidate("srr", e), fx.candidate("rs", e)]
        report.witness("sr2 = rs in S3", [fx.element("sr2"), fx.element("s"), fx.element("r")] + forced,
                       ["sr2", "s", "r"] + [fx.X.label(x) for x in forced])
    elif args.which == "ring":
        if _expectation(args):
            raise InputError("expectation flags apply to extension counts; the ring example "
                             "is an identity cross-check")
        fx = fixture_ring(n)
        _emit(args.emit, [("algebra", "R", fx.R), ("algebra", "Z", fx.Z),
                          ("action", "on_itself", fx.on_itself), ("action", "scalars", fx.scalars)])
        report.info("note", "the scalar action is a cross-check only; it is not submitted to "
                    "validate_action, and cross_identity_check runs instead of extend_action")
        violations = _check_identities(report, fx.on_itself, fx.scalars, fx.identities, True)
        r = fx.matrix(1, 1, 1)
        want = (r, r, 1 % n)
        hit = next((v for v in violations if want in v.tuples), None)
        ok = hit is not None
        detail = "no violation at r = s = (1,0;1,1), c = 1"
        if ok:
            i = hit.tuples.index(want)
            lhs, rhs = fx.R.label(hit.lhs[i]), fx.R.label(hit.rhs[i])
            ok = (hit.lhs[i], hit.rhs[i]) == (fx.matrix(1, 0, 1), fx.matrix(1, 1, 1))
            detail = f"at r = s = (1,0;1,1), c = 1: {lhs} vs {rhs}"
            report.witness("violation at the worked witness", [list(want), [hit.lhs[i], hit.rhs[i]]],
                           [[fx.R.label(r), fx.R.label(r), fx.Z.label(1 % n)], [lhs, rhs]])
        report.add("violation at the worked witness", ok, detail)
        group_part = cross_identity_check(fx.on_itself, fx.scalars, GROUP_PART_IDENTITIES)
        report.add("group-part identities hold", not group_part,
                   f"{len(group_part)} violated")
    else:
        fx = fixture_nonassoc(n)
        cs = fx.cospan
        _emit(args.emit, [("algebra", "A", fx.A), ("algebra", "X", fx.X), ("algebra", "Ax", cs.A),
                          ("algebra", "Ay", cs.C), ("hom", "f", cs.f), ("hom", "g", cs.g),
                          ("cospan", "cs", cs), ("action", "xi", fx.xi), ("action", "tau", fx.tau),
                          ("action", "xi_x", fx.restrictions()[0]),
                          ("action", "xi_y", fx.restrictions()[1])])
        xiA, xiC = fx.restrictions()
        same = fx.restrictions(fx.tau)
        report.add("xi and tau restrict equally", xiA == same[0] and xiC == same[1])
        res = check_ua_instance(cs, xiA, xiC, args.method or "propagate", _bounds(args))
        if res.inconclusive:
            report.add("UA fails", None, res.extensions.reason)
        else:
            report.add("UA fails", res.holds is False, f"{res.count} extensions")
            report.add("xi among the extensions", fx.xi in res.extensions)
            report.add("tau among the extensions", fx.tau in res.extensions)
            if _expectation(args):
                _count_verdict(report, args, "extension count", res.extensions, lambda c: True)
            _list_extensions(report, res.extensions, {"xi": fx.xi, "tau": fx.tau})
        v = validate_action(fx.xi, RNG)
        z, one = fx.element(0, 0, 1), 1
        expected = ((0, z), (0, z), (one, 0))
        report.add("xi invalid with associative laws", not v and v.witness == expected,
                   v.detail if not v else "unexpectedly valid")
        if not v:
            report.witness("xi invalid with associative laws", v.witness, _pair_labels(fx.xi, v.witness))
        report.add("xi valid with non-associative laws", bool(validate_action(fx.xi, NARNG)))


# --------------------------------------------------------------------------
# Entry points

def _parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--method", choices=METHODS)
    common.add_argument("--bound", type=int, metavar="K",
                        help="search budget: candidate tables and propagation nodes")
    expect = common.add_mutually_exclusive_group()
    for e in EXPECTATIONS:
        expect.add_argument(f"--expect-{e}", action="store_true")
    named = _Parser(add_help=False)
    named.add_argument("files", nargs="*")
    named.add_argument("--cospan", help="name of the cospan document")
    named.add_argument("--left", help="name of the action over the first foot")
    named.add_argument("--right", help="name of the action over the second foot")

    p = _Parser(prog="ptdescent", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, func, helptext in (
        ("validate", cmd_validate, "check every document against its axioms"),
        ("ua-check", cmd_ua_check, "uniqueness of action extensions (files or a manifest)"),
        ("extend", cmd_extend, "list every extension of two actions along a cospan"),
        ("descent-check", cmd_descent_check, "coherence and full faithfulness of phi"),
        ("surj-check", cmd_surj_check, "search for a point whose image is a given datum"),
        ("identities", cmd_identities, "cross-check identities between two actions"),
    ):
        s = sub.add_parser(name, parents=[common, named], help=helptext)
        s.set_defaults(func=func)
        if name == "identities":
            s.add_argument("--identity", action="append", default=[],
                           help="forall x:A y:X c:C . lhs = rhs, prefix terms")
    s = sub.add_parser("sh-check", parents=[common], help="condition SH on pairs of congruences")
    s.add_argument("files", nargs="*")
    s.add_argument("--group", help="sweep all normal subgroup pairs of a corpus group")
    s.set_defaults(func=cmd_sh_check)
    s = sub.add_parser("counterexample", parents=[common], help="reproduce a worked counterexample")
    s.add_argument("which", choices=("s3", "ring", "nonassoc"))
    s.add_argument("--modulus", type=int, default=None)
    s.add_argument("--emit", metavar="FILE", help="also write the fixture as documents")
    s.set_defaults(func=cmd_counterexample)
    return p


_DEFAULT_MODULUS = {"s3": 2, "ring": 3, "nonassoc": 2}


def run(argv: list[str]) -> Report:
    """Parse ``argv`` (without the program name) and run the subcommand.

    Raises :class:`InputError` for anything wrong with the input.
    """
    args = _parser().parse_args(argv)
    if args.command == "counterexample" and args.modulus is None:
        args.modulus = _DEFAULT_MODULUS[args.which]
    report = Report("ptdescent " + " ".join(argv))
    try:
        args.func(args, report)
    except (io.ParseError, FixtureError) as exc:
        raise InputError(str(exc)) from exc
    except StructureError as exc:
        raise InputError(f"invalid input: {exc}") from exc
    report.format = args.format
    return report.finish()


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        report = run(argv)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    print(report.render(report.format))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
