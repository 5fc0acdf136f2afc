"""Command-line front end.

Verbs: check, solve, rclass, geodesic, emit, audit, cone-types.

Exit codes, stable across versions: 0 — the command ran and decided
(sparse, verdict printed, machines emitted, audit passed); 1 — a
refusal or a failed audit (non-sparse relator where one is required,
face cap exhausted, structural violations found); 2 — unusable input
(parse errors, unknown verbs or flags, malformed combinations).

Identical inputs with identical seeds produce byte-identical outputs:
every rendering below iterates in canonical order and the fold order
is first-in first-out for seed 0 and Random(seed)-shuffled otherwise,
which changes intermediate ids but never any emitted content.
"""

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass

from .automata import build_geodesic_fsa, build_pda, minimize
from .complexes import AuditReport, import_complex, init_complex
from .errors import NotSparse, ResourceLimit, WordParseError
from .facetypes import enumerate_classes
from .solver import IDENTITY, NOT_IN_RCLASS, solve_on, trace
from .validation import check_positive_int, check_relator
from .words import is_sparse, word_to_str

DEFAULT_FACE_CAP = 10**6
DEFAULT_MAX_WORD_LEN = 5
ENV_FACE_CAP = "SPARSE_FACE_CAP"


@dataclass
class Config:
    """Run-wide options shared by every verb."""

    face_cap: int = DEFAULT_FACE_CAP
    max_word_len: int = DEFAULT_MAX_WORD_LEN
    format: str = "text"  # text | json | dot
    seed: int = 0  # 0 keeps first-in first-out fold order

    def __post_init__(self):
        check_positive_int(self.face_cap, "face_cap")
        check_positive_int(self.max_word_len, "max_word_len")
        if self.format not in ("text", "json", "dot"):
            raise ValueError(f"unknown format {self.format!r}")

    def fold_rng(self):
        return random.Random(self.seed) if self.seed else None


def _env_face_cap():
    raw = os.environ.get(ENV_FACE_CAP)
    if raw is None:
        return DEFAULT_FACE_CAP
    try:
        return check_positive_int(int(raw), ENV_FACE_CAP)
    except ValueError:
        raise UsageError(f"{ENV_FACE_CAP} must be a positive integer, got {raw!r}")


class UsageError(Exception):
    """Bad arguments beyond what argparse catches; exits with code 2."""


def _write(text, out_path):
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json_text(data):
    return json.dumps(data, indent=2) + "\n"


# -- verbs -----------------------------------------------------------------


def cmd_check(args, cfg):
    report = is_sparse(check_relator(args.relator))
    if report:
        print("SPARSE")
        return 0
    detail = report.describe()
    print("NOT SPARSE" + detail[len("not sparse") :])
    return 1


def cmd_solve(args, cfg):
    cx = init_complex(
        check_relator(args.relator), face_cap=cfg.face_cap, fold_rng=cfg.fold_rng()
    )
    verdict = solve_on(cx, args.word)
    print(verdict.describe())
    return 0


def cmd_rclass(args, cfg):
    cx = init_complex(
        check_relator(args.relator), face_cap=cfg.face_cap, fold_rng=cfg.fold_rng()
    )
    verdict = solve_on(cx, args.word)
    if verdict.outcome == NOT_IN_RCLASS:
        print(f"NOT_IN_RCLASS (no edge at position {verdict.fail_position})")
    else:
        print(f"IN_RCLASS (endpoint at distance {verdict.endpoint_distance})")
    return 0


def cmd_geodesic(args, cfg):
    relator = check_relator(args.relator)
    word = check_relator(args.word) if args.word else ()
    cx = init_complex(relator, face_cap=cfg.face_cap, fold_rng=cfg.fold_rng())
    cx.build_to_radius(len(word) + cx.n // 2)
    t = trace(cx, word)
    if not t.ok:
        print(
            "NOT_GEODESIC (not in the R-class: no edge at position "
            f"{t.fail_position})"
        )
    elif cx.distance(t.endpoint) == len(word):
        print(f"GEODESIC (length {len(word)})")
    else:
        print(
            f"NOT_GEODESIC (endpoint at distance {cx.distance(t.endpoint)} "
            f"< length {len(word)})"
        )
    return 0


def cmd_cone_types(args, cfg):
    table = enumerate_classes(
        check_relator(args.relator), face_cap=cfg.face_cap, fold_rng=cfg.fold_rng()
    )
    dfa = minimize(build_geodesic_fsa(table))
    if dfa.dead is None:
        detail = f"minimal automaton has {dfa.n_states} states, all live"
    else:
        detail = (
            f"minimal automaton has {dfa.n_states} states "
            "including the dead state"
        )
    plural = "" if dfa.n_cone_types == 1 else "s"
    print(f"{dfa.n_cone_types} cone type{plural} ({detail})")
    return 0


def _emit_machine(args, cfg, which):
    table = enumerate_classes(
        check_relator(args.relator), face_cap=cfg.face_cap, fold_rng=cfg.fold_rng()
    )
    if which in ("pda", "rpda"):
        pda = build_pda(table, "identity" if which == "pda" else "rclass")
        if cfg.format == "text":
            return pda.to_text()
        if cfg.format == "json":
            return _json_text(pda.to_json_dict())
        raise UsageError(f"target {which} renders as text or json, not dot")
    machine = build_geodesic_fsa(table)
    if which == "dfa":
        machine = minimize(machine)
    if cfg.format == "dot" or (cfg.format == "text" and args.format is None):
        return machine.to_dot()
    if cfg.format == "json":
        return _json_text(machine.to_json_dict())
    raise UsageError(f"target {which} renders as dot or json, not text")


def _emit_complex(args, cfg, radius):
    cx = init_complex(
        check_relator(args.relator), face_cap=cfg.face_cap, fold_rng=cfg.fold_rng()
    )
    cx.build_to_radius(radius)
    if cfg.format == "dot" or (cfg.format == "text" and args.format is None):
        return cx.to_dot()
    if cfg.format == "json":
        return cx.to_json(indent=2) + "\n"
    raise UsageError("target complex@R renders as dot or json, not text")


def cmd_emit(args, cfg):
    which = args.which
    if which.startswith("complex@"):
        tail = which[len("complex@") :]
        try:
            radius = int(tail)
        except ValueError:
            raise UsageError(f"bad radius {tail!r} in {which!r}")
        if radius < 0:
            raise UsageError(f"bad radius {tail!r} in {which!r}")
        text = _emit_complex(args, cfg, radius)
    elif which in ("pda", "rpda", "fsa", "dfa"):
        text = _emit_machine(args, cfg, which)
    else:
        raise UsageError(
            f"unknown emit target {which!r}; "
            "expected pda, rpda, fsa, dfa or complex@R"
        )
    _write(text, args.out)
    return 0


def _audit_lines_for(name, report):
    if report.ok:
        counts = ", ".join(f"{k}={v}" for k, v in sorted(report.checked.items()))
        return [f"[ok] {name} ({counts})"], True
    return [f"[fail] {name}:"] + [f"  {f}" for f in report.failures], False


def _cross_check(relator, cfg):
    """Compare the PDAs and the geodesic automaton against the solver.

    Exhausts every word up to max_word_len over the relator's letters
    plus a seeded batch one letter longer. Returns (lines, ok).
    """
    try:
        table = enumerate_classes(relator, face_cap=cfg.face_cap, fold_rng=cfg.fold_rng())
        cx = table.complex
        cx.build_to_radius(
            max(cx.saturated_radius, cfg.max_word_len + 1 + cx.n // 2)
        )
    except ResourceLimit:
        return [
            "[skip] pda-cross-check "
            f"(face cap {cfg.face_cap} reached before table closure)"
        ], True
    pda_id = build_pda(table, "identity")
    pda_r = build_pda(table, "rclass")
    fsa = build_geodesic_fsa(table)
    letters = sorted(set(relator) | {x ^ 1 for x in relator})
    failures = []
    checked = 0

    def check_one(w):
        nonlocal checked
        checked += 1
        verdict = solve_on(cx, w, grow=False)
        t = verdict.trace
        geodesic = t.ok and cx.distance(t.endpoint) == len(w)
        if pda_id.accepts(w) != (verdict.outcome == IDENTITY):
            failures.append(f"identity PDA disagrees on {word_to_str(w)!r}")
        if pda_r.accepts(w) != (verdict.outcome != NOT_IN_RCLASS):
            failures.append(f"rclass PDA disagrees on {word_to_str(w)!r}")
        if fsa.accepts(w) != geodesic:
            failures.append(f"geodesic FSA disagrees on {word_to_str(w)!r}")

    layer = [()]
    check_one(())
    for _ in range(cfg.max_word_len):
        layer = [w + (x,) for w in layer for x in letters]
        for w in layer:
            check_one(w)
    rng = random.Random(cfg.seed or 1)
    for _ in range(500):
        w = tuple(rng.choice(letters) for _ in range(cfg.max_word_len + 1))
        check_one(w)
    if failures:
        return ["[fail] pda-cross-check:"] + [f"  {f}" for f in failures[:10]], False
    return [f"[ok] pda-cross-check (words={checked}, mismatches=0)"], True


def _named_audits(cx):
    # run each audit even if an earlier one blows up on corrupt imports
    out = []
    for name, method in (
        ("structure", cx.verify_structure),
        ("gamma-arcs", cx.audit_gamma),
        ("distances", cx.audit_distances),
        ("geodesics", cx.audit_geodesics),
        ("dual-tree", cx.audit_dual_tree),
    ):
        try:
            out.append((name, method()))
        except Exception as exc:
            report = AuditReport()
            report.fail(f"{type(exc).__name__}: {exc}")
            out.append((name, report))
    return out


def cmd_audit(args, cfg):
    lines = []
    all_ok = True
    if args.complex is not None:
        if args.relator is not None or args.radius is not None:
            raise UsageError("audit takes a relator and radius OR --complex FILE")
        with open(args.complex, "r", encoding="utf-8") as fh:
            cx = import_complex(fh.read(), face_cap=cfg.face_cap)
    else:
        if args.relator is None or args.radius is None:
            raise UsageError("audit needs a relator and a radius, or --complex FILE")
        radius = check_positive_int(args.radius, "radius")
        cx = init_complex(
            check_relator(args.relator),
            face_cap=cfg.face_cap,
            fold_rng=cfg.fold_rng(),
        )
        cx.build_to_radius(radius)
    for name, report in _named_audits(cx):
        got, ok = _audit_lines_for(name, report)
        lines.extend(got)
        all_ok = all_ok and ok
    if args.complex is None:
        got, ok = _cross_check(cx.word, cfg)
        lines.extend(got)
        all_ok = all_ok and ok
    lines.append("AUDIT PASS" if all_ok else "AUDIT FAIL")
    _write("\n".join(lines) + "\n", args.out)
    return 0 if all_ok else 1


# -- wiring ----------------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="polyfold",
        description=(
            "Word problem, Schützenberger approximation complexes and "
            "geodesic automata for sparse one-relator inverse monoids "
            "Inv<X | w=1>."
        ),
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, formats=False):
        p.add_argument("--face-cap", type=int, default=None, metavar="N",
                       help=f"face budget (default {ENV_FACE_CAP} or 10^6)")
        p.add_argument("--seed", type=int, default=0, metavar="N",
                       help="fold-order seed; 0 keeps first-in first-out")
        p.add_argument("--max-word-len", type=int, default=DEFAULT_MAX_WORD_LEN,
                       metavar="N", help="exhaustive cross-check depth")
        if formats:
            p.add_argument("--format", choices=("text", "json", "dot"),
                           default=None, help="output format (default per target)")
            p.add_argument("--out", default=None, metavar="FILE",
                           help="write output to FILE instead of stdout")

    p = sub.add_parser("check", help="sparseness verdict for a relator")
    p.add_argument("relator")
    common(p)

    for verb, help_text in (
        ("solve", "decide whether a word equals 1"),
        ("rclass", "decide whether a word is R-related to 1"),
        ("geodesic", "decide whether a word labels a geodesic"),
    ):
        p = sub.add_parser(verb, help=help_text)
        p.add_argument("relator")
        p.add_argument("word")
        common(p)

    p = sub.add_parser("emit", help="emit pda | rpda | fsa | dfa | complex@R")
    p.add_argument("relator")
    p.add_argument("which")
    common(p, formats=True)

    p = sub.add_parser("audit", help="structural audits plus solver cross-check")
    p.add_argument("relator", nargs="?")
    p.add_argument("radius", nargs="?", type=int)
    p.add_argument("--complex", default=None, metavar="FILE",
                   help="audit an exported complex JSON instead")
    p.add_argument("--out", default=None, metavar="FILE")
    common(p)

    p = sub.add_parser("cone-types", help="count the cone types of a relator")
    p.add_argument("relator")
    common(p)
    return parser


_HANDLERS = {
    "check": cmd_check,
    "solve": cmd_solve,
    "rclass": cmd_rclass,
    "geodesic": cmd_geodesic,
    "emit": cmd_emit,
    "audit": cmd_audit,
    "cone-types": cmd_cone_types,
}


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = Config(
            face_cap=args.face_cap if args.face_cap is not None else _env_face_cap(),
            max_word_len=args.max_word_len,
            format=getattr(args, "format", None) or "text",
            seed=args.seed,
        )
        return _HANDLERS[args.verb](args, cfg)
    except (NotSparse, ResourceLimit) as exc:
        # NotSparse subclasses ValueError, so refusals must be caught first
        print(f"refused: {exc}", file=sys.stderr)
        return 1
    except (WordParseError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
