"""Command-line front end.

Exit codes: 0 verified, 1 an expectation or verdict failed, 2 invalid
input, 3 an enumeration budget was exceeded.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .core import (
    CategoryError,
    FunctorData,
    SetFunctor,
    is_dwyer,
    is_fully_faithful,
    is_sieve,
    opposite,
)
from .io import (
    ParseError,
    canonical_category_text,
    category_to_dict,
    dumps,
    functor_to_dict,
    load_document,
    object_list,
    parse_category,
    parse_presheaf,
    parse_span,
)
from .kan import ExplosionGuard
from .necklace import OracleBudgetExceeded, PushoutOracle
from .pushout import (
    NotCertifiable,
    OracleDisagreement,
    dwyer_pushout,
    mapspace_report,
    pushout_objects,
    pushout_product_check,
    sieve_union_check,
    verify_beck_chevalley,
    verify_fold_square,
    verify_fourth_square,
)
from .reedy import check_reedy_structure, is_reedy_extension, verify_reedy_square
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3
PREDICATES = ("fully-faithful", "sieve", "dwyer", "reedy-extension", "reedy-structure")
VERIFIERS = ("fourth", "fold", "sieve-union", "pushout-product", "beck-chevalley", "reedy")


@dataclass(frozen=True)
class JobConfig:
    command: str
    paths: tuple
    dim: int = 4
    word_bound: int = 8
    set_bound: int = 2
    fmt: str = "table"
    seed: int = 0

    def __post_init__(self):
        for name in ("dim", "word_bound", "set_bound"):
            if getattr(self, name) < 1:
                raise ParseError(f"--{name.replace('_', '-')} must be positive")
        for p in self.paths:
            if not Path(p).is_file():
                raise ParseError(f"no such file: {p}")


class Report:
    """Collects output sections and renders them as a table or as JSON."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.doc: dict = {}
        self.lines: list[str] = []

    def field(self, key: str, value):
        self.doc[key] = value
        self.lines.append(f"{key}: {_plain(value)}")

    def table(self, key: str, rows: list[dict], columns: list[str]):
        self.doc[key] = rows
        if not rows:
            self.lines.append(f"{key}: (none)")
            return
        cells = [[_plain(r.get(c)) for c in columns] for r in rows]
        widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(columns)]
        self.lines.append(f"{key}:")
        self.lines.append("  " + " | ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip())
        self.lines.append("  " + "-+-".join("-" * w for w in widths))
        for row in cells:
            self.lines.append("  " + " | ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())

    def block(self, key: str, text: str, value):
        self.doc[key] = value
        self.lines.append(f"{key}:")
        self.lines.extend("  " + ln for ln in text.rstrip("\n").split("\n"))

    def render(self) -> str:
        if self.fmt == "structured":
            return dumps(self.doc)
        return "\n".join(self.lines) + "\n"


def _plain(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_plain(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_plain(x)}" for k, x in v.items()) + "}"
    return str(v)


def _show(x) -> str:
    return f"{x[0]}:{x[1]}"


# ---------------------------------------------------------------- check


def _predicate(name: str, doc: dict, kind: str, span=None, cat=None, cfg: JobConfig = None):
    """(holds, detail) for a named predicate, or None when not applicable."""
    if name in ("fully-faithful", "sieve", "dwyer") and span is not None:
        f = span.left
        ff = is_fully_faithful(f)
        if name == "fully-faithful":
            return bool(ff), "" if ff else f"{ff.reason} at {ff.witness!r}"
        if not ff:
            return False, f"NotFullyFaithful: {ff.reason} at {ff.witness!r}"
        if name == "sieve":
            sv = is_sieve(f)
            return bool(sv), "" if sv else f"NotSieve: witness {sv.witness!r}"
        try:
            W = is_dwyer(f)
        except CategoryError as exc:
            return False, f"{type(exc).__name__}: {exc}"
        return True, {b: (None if W.terminal[b] is None else list(W.terminal[b])) for b in f.target.objects}
    if name == "reedy-extension" and kind == "inclusion":
        v = is_reedy_extension(doc["_inc"], cfg.dim)
        return bool(v), v.reason
    if name == "reedy-structure" and cat is not None and "degree" in doc:
        if doc.get("orientation", "L_then_R") not in ("L_then_R", "R_then_L"):
            raise ParseError("orientation must be L_then_R or R_then_L", "orientation")
        try:
            v = check_reedy_structure(
                cat,
                {str(k): int(x) for k, x in doc["degree"].items()},
                [str(m) for m in doc.get("left_class", [])],
                [str(m) for m in doc.get("right_class", [])],
                doc.get("orientation", "L_then_R"),
                cfg.dim,
            )
        except CategoryError as exc:
            return False, f"{type(exc).__name__}: {exc}"
        return True, {"levels": list(v.levels), "truncations": [list(t) for t in v.truncation_checks]}
    return None


def _classify(doc: dict):
    """Parse a document into (kind, span, category, named categories)."""
    from .core import full_subcategory

    if "left" in doc and "right" in doc:
        span = parse_span(doc)
        return "span", span, None, {"A": span.A, "B": span.B, "C": span.C}
    if "B" in doc and "sub" in doc:
        B = parse_category(doc["B"], "B")
        _, inc = full_subcategory(B, object_list(doc["sub"], B, "sub"))
        doc["_inc"] = inc
        return "inclusion", None, B, {"B": B}
    if all(k in doc for k in ("C", "C0", "D", "D0")):
        C, D = parse_category(doc["C"], "C"), parse_category(doc["D"], "D")
        object_list(doc["C0"], C, "C0")
        object_list(doc["D0"], D, "D0")
        return "product", None, None, {"C": C, "D": D}
    if "category" in doc:
        cat = parse_category(doc["category"], "category")
        if "C0" in doc and "C1" in doc:
            object_list(doc["C0"], cat, "C0")
            object_list(doc["C1"], cat, "C1")
            return "subcategory-pair", None, cat, {"category": cat}
        return "category", None, cat, {"category": cat}
    cat = parse_category(doc, "category")
    return "category", None, cat, {"category": cat}


def cmd_check(cfg: JobConfig, expect: list) -> tuple[int, str]:
    rep = Report(cfg.fmt)
    status = EXIT_OK
    for path in cfg.paths:
        doc = load_document(path)
        kind, span, cat, cats = _classify(doc)
        rep.field("file", str(path))
        rep.field("kind", kind)
        for name, C in cats.items():
            n, m = len(C.objects), len(C.morphisms)
            rep.field(name, f"{n} object{'s' * (n != 1)}, {m} morphism{'s' * (m != 1)}")
        rows = []
        for name in PREDICATES:
            res = _predicate(name, doc, kind, span, cat, cfg)
            if res is None:
                continue
            rows.append({"predicate": name, "holds": res[0], "detail": res[1] if res[1] else ""})
        rep.table("predicates", rows, ["predicate", "holds", "detail"])
        for want in expect:
            hit = next((r for r in rows if r["predicate"] == want), None)
            if hit is None:
                rep.field(f"expect {want}", "not applicable to this input")
                status = EXIT_FAILED
            elif not hit["holds"]:
                rep.field(f"expect {want}", f"FAILED ({_plain(hit['detail'])})")
                status = EXIT_FAILED
            else:
                rep.field(f"expect {want}", "ok")
    return status, rep.render()


# -------------------------------------------------------------- pushout


def _mapspace_rows(span, cfg: JobConfig, pairs=None) -> list:
    oracle = PushoutOracle(span, cfg.word_bound)
    objs = pushout_objects(span)
    pairs = pairs or [(x, y) for x in objs for y in objs]
    rows = []
    for x, y in sorted(pairs, key=lambda p: (_show(p[0]), _show(p[1]))):
        rows.append(mapspace_report(span, (x, y), cfg.dim, cfg.word_bound, oracle).row())
    return rows


MAP_COLUMNS = ["x", "y", "kind", "formula_pi0", "formula_homology", "oracle_classes", "oracle_stable", "agreement"]


def cmd_pushout(cfg: JobConfig, out: str | None) -> tuple[int, str]:
    span = parse_span(load_document(cfg.paths[0]))
    dp = dwyer_pushout(span, cfg.word_bound)
    D, onames, mnames = dp.named()
    text = canonical_category_text(D)
    if out:
        Path(out).write_text(text)
    rep = Report(cfg.fmt)
    rep.block("pushout", text, category_to_dict(D))
    fbar = FunctorData(span.C, D, {c: onames[v] for c, v in dp.fbar.obj_map.items()},
                       {m: mnames[v] for m, v in dp.fbar.mor_map.items()})
    gbar = FunctorData(span.B, D, {b: onames[v] for b, v in dp.gbar.obj_map.items()},
                       {m: mnames[v] for m, v in dp.gbar.mor_map.items()})
    rep.field("leg_from_C", functor_to_dict(fbar)["objects"])
    rep.field("leg_from_B", functor_to_dict(gbar)["objects"])
    rep.field("strict_square", dp.strict_square)
    rep.field("leg_from_C_fully_faithful", bool(is_fully_faithful(dp.fbar)))
    rep.field("oracle_unchecked_pairs", [f"{_show(x)}->{_show(y)}" for x, y in dp.unchecked_pairs])
    rows = _mapspace_rows(span, cfg)
    rep.table("mapspaces", rows, MAP_COLUMNS)
    bad = [r for r in rows if r["agreement"] == "DISAGREE"]
    return (EXIT_FAILED if bad else EXIT_OK), rep.render()


def _parse_end(text: str):
    side, _, name = text.partition(":")
    if side not in ("B", "C") or not name:
        raise ParseError(f"pushout object must look like B:<id> or C:<id>, got {text!r}")
    return (side, name)


def cmd_mapspace(cfg: JobConfig, pair) -> tuple[int, str]:
    span = parse_span(load_document(cfg.paths[0]))
    pairs = None
    if pair:
        x, y = _parse_end(pair[0]), _parse_end(pair[1])
        for end in (x, y):
            if end[1] not in (span.B if end[0] == "B" else span.C).object_set:
                raise ParseError(f"unknown object {end[1]!r} on side {end[0]}")
        pairs = [(x, y)]
    rows = _mapspace_rows(span, cfg, pairs)
    rep = Report(cfg.fmt)
    rep.field("truncation", cfg.dim)
    rep.field("word_bound", cfg.word_bound)
    rep.table("mapspaces", rows, MAP_COLUMNS + ["detail"])
    bad = [r for r in rows if r["agreement"] == "DISAGREE"]
    return (EXIT_FAILED if bad else EXIT_OK), rep.render()


# --------------------------------------------------------------- verify


def _square_rows(fn, span, cfg, b0, b1):
    pairs = [(b0, b1)] if b0 is not None else [(x, y) for x in span.B.objects for y in span.B.objects]
    rows, ok = [], True
    dp = None
    try:
        dp = dwyer_pushout(span, word_bound=None)
    except CategoryError:
        pass
    for x, y in pairs:
        try:
            v = fn(span, x, y, cfg.dim, dp)
            row = {"b0": x, "b1": y, **v.as_dict()}
            ok &= bool(v)
        except NotCertifiable as exc:
            row = {"b0": x, "b1": y, "status": "NOT-CERTIFIABLE", "detail": str(exc), "truncation": cfg.dim}
            ok = False
        rows.append(row)
    return rows, ok


def cmd_verify(cfg: JobConfig, which: str, b0=None, b1=None) -> tuple[int, str]:
    doc = load_document(cfg.paths[0])
    rep = Report(cfg.fmt)
    rep.field("verify", which)
    rep.field("truncation", cfg.dim)
    if which in ("fourth", "fold"):
        span = parse_span(doc)
        fn = verify_fourth_square if which == "fourth" else verify_fold_square
        rows, ok = _square_rows(fn, span, cfg, b0, b1)
        rep.table("squares", rows, ["b0", "b1", "status", "corners", "cylinder_homology",
                                    "expected_homology", "pi0_bijection", "compared_degrees"])
        rep.field("verdict", "CONSISTENT" if ok else "INCONSISTENT")
    elif which == "sieve-union":
        C = parse_category(doc["category"], "category")
        v = sieve_union_check(C, object_list(doc["C0"], C, "C0"), object_list(doc["C1"], C, "C1"), cfg.word_bound)
        ok = bool(v)
        rep.field("verdict", "HOLDS" if ok else "FAILS")
        if not ok:
            rep.field("witness", repr(v.witness))
            rep.field("reason", v.reason)
    elif which == "pushout-product":
        C = parse_category(doc["C"], "C")
        D = parse_category(doc["D"], "D")
        v = pushout_product_check(C, object_list(doc["C0"], C, "C0"), D, object_list(doc["D0"], D, "D0"),
                                  cfg.word_bound)
        ok = bool(v)
        rep.field("verdict", "HOLDS" if ok else "FAILS")
        if not ok:
            rep.field("witness", repr(v.witness))
            rep.field("reason", v.reason)
    elif which == "beck-chevalley":
        span = parse_span(doc)
        if "presheaf" in doc:
            sheaves = [("given", parse_presheaf(doc["presheaf"], span.C))]
        else:
            sheaves = [(f"representable {c}", _representable(span.C, c)) for c in span.C.objects]
        rows, ok = [], True
        for name, F in sheaves:
            v = verify_beck_chevalley(span, F)
            ok &= bool(v)
            rows.append({"presheaf": name, "bijective": bool(v), "witness": None if v else repr(v.witness),
                         "reason": v.reason})
        rep.table("comparisons", rows, ["presheaf", "bijective", "witness", "reason"])
        rep.field("verdict", "HOLDS" if ok else "FAILS")
    elif which == "reedy":
        B = parse_category(doc["B"], "B")
        from .core import full_subcategory

        _, inc = full_subcategory(B, object_list(doc["sub"], B, "sub"))
        ext = is_reedy_extension(inc, cfg.dim)
        rep.field("reedy_extension", ext.outcome)
        if not ext:
            rep.field("reason", ext.reason)
            ok = False
        else:
            rep.field("complement_objects", list(ext.witness.complement.objects))
            v = verify_reedy_square(inc, cfg.set_bound, cfg.dim)
            ok = bool(v)
            rep.field("set_bound", cfg.set_bound)
            rep.field("functor_classes", v.functor_classes)
            rep.field("data_classes", v.data_classes)
            rep.field("functor_cardinality", str(v.functor_cardinality))
            rep.field("data_cardinality", str(v.data_cardinality))
            rep.field("verdict", v.outcome)
            if not ok:
                rep.field("reason", v.reason)
    else:
        raise ParseError(f"unknown verifier {which!r}")
    return (EXIT_OK if ok else EXIT_FAILED), rep.render()


def _representable(C, c) -> SetFunctor:
    """Hom(-, c) as a presheaf on C."""
    Cop = opposite(C)
    sets = {x: C.hom(x, c) for x in C.objects}
    maps = {m: {h: C.compose[h, m] for h in sets[t]} for m, s, t in C.morphisms}
    return SetFunctor(Cop, sets, maps)


# ----------------------------------------------------------------- fuzz


def cmd_fuzz(cfg: JobConfig, which: str, count: int, fail_dir: str | None) -> tuple[int, str]:
    if which not in SUITES:
        raise ParseError(f"unknown suite {which!r}; choose from {', '.join(SUITES)}")
    res = run_suite(which, count, cfg.seed, dim=cfg.dim, word_bound=cfg.word_bound, set_bound=cfg.set_bound)
    rep = Report(cfg.fmt)
    rep.field("suite", which)
    rep.field("seed", cfg.seed)
    rep.field("passed", f"{res.passed}/{res.count}")
    for k in sorted(res.notes):
        rep.field(k, res.notes[k])
    rows = [{"instance": i, "detail": o.detail} for i, o in res.failures]
    rep.table("failures", rows, ["instance", "detail"])
    if res.failures and fail_dir:
        d = Path(fail_dir)
        d.mkdir(parents=True, exist_ok=True)
        for i, o in res.failures:
            if o.fixture is not None:
                (d / f"{which}-seed{cfg.seed}-{i}.json").write_text(dumps(o.fixture))
        rep.field("fixtures_written_to", str(d))
    return (EXIT_OK if res.ok else EXIT_FAILED), rep.render()


# ----------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int, default=4, help="homology truncation level")
    common.add_argument("--word-bound", type=int, default=8, help="longest word the oracle enumerates")
    common.add_argument("--set-bound", type=int, default=2, help="largest set size in functor enumeration")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("table", "structured"), default="table")

    p = argparse.ArgumentParser(prog="catpush", description="Pushouts of finite categories along fully faithful functors.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="validate inputs and report predicates")
    c.add_argument("paths", nargs="+")
    c.add_argument("--expect", action="append", default=[], choices=PREDICATES)

    q = sub.add_parser("pushout", parents=[common], help="build the pushout along a Dwyer left leg")
    q.add_argument("path")
    q.add_argument("-o", "--output", help="write the pushout category file here")

    m = sub.add_parser("mapspace", parents=[common], help="mapping-space formulas against the oracle")
    m.add_argument("path")
    m.add_argument("--pair", nargs=2, metavar=("X", "Y"), help="e.g. C:0 B:2")

    v = sub.add_parser("verify", parents=[common], help="check one of the pushout-square statements")
    v.add_argument("which", choices=VERIFIERS)
    v.add_argument("path")
    v.add_argument("--b0")
    v.add_argument("--b1")

    f = sub.add_parser("fuzz", parents=[common], help="run a randomized suite")
    f.add_argument("which", choices=sorted(SUITES))
    f.add_argument("count", type=int)
    f.add_argument("--fail-dir", default=None, help="directory for failing fixtures")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    paths = tuple(getattr(args, "paths", None) or ([args.path] if hasattr(args, "path") else []))
    try:
        cfg = JobConfig(args.command, paths, args.dim, args.word_bound, args.set_bound, args.format, args.seed)
        if args.command == "check":
            code, text = cmd_check(cfg, args.expect)
        elif args.command == "pushout":
            code, text = cmd_pushout(cfg, args.output)
        elif args.command == "mapspace":
            code, text = cmd_mapspace(cfg, args.pair)
        elif args.command == "verify":
            if (args.b0 is None) != (args.b1 is None):
                raise ParseError("--b0 and --b1 go together")
            code, text = cmd_verify(cfg, args.which, args.b0, args.b1)
        else:
            if args.count < 1:
                raise ParseError("count must be positive")
            code, text = cmd_fuzz(cfg, args.which, args.count, args.fail_dir)
    except (ExplosionGuard, OracleBudgetExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OracleDisagreement as exc:
        print(f"oracle disagreement at {exc.pair!r}: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (ParseError, CategoryError, KeyError, OSError) as exc:
        print(f"invalid input: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
