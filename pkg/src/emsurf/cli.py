"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 external source unavailable (crosscheck --source lmfdb only).
"""
from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .curve import curve_invariants
from .dimensions import dim_m3m_formula, verify_group
from .errors import EmsurfError, InvalidInput, MinusOneInGroup
from .lmfdb import LmfdbClient, SourceUnavailable
from .oracle import crosscheck
from .report import RENDERERS, render_batch, report_document, render_json
from .specs import PermRef, PermutationCache, default_cache_dir, parse_group_spec, resolve
from .subgroup import dumps_permutation
from .surface import fiber_configuration, surface_invariants

log = logging.getLogger("emsurf")

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_UNAVAILABLE = 0, 1, 2, 3


def parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        a, b = (int(lo), int(hi)) if sep else (0, int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if a < 0 or b < a:
        raise argparse.ArgumentTypeError(f"invalid range {text!r}")
    return a, b


def _cache(args) -> PermutationCache:
    if args.no_cache:
        return PermutationCache(None)
    return PermutationCache(Path(args.cache_dir) if args.cache_dir else default_cache_dir())


def build_report(spec_text: str, weights: tuple[int, int], cache: PermutationCache | None,
                 timestamp: str | None = None) -> dict:
    G = resolve(spec_text, cache)
    lo, hi = weights
    if G.minus_one:
        return report_document(spec_text, G, None, timestamp)
    rep = verify_group(G, hi)
    rep.entries = [e for e in rep.entries if e.m >= lo]
    rep.canonical_entries = [e for e in rep.canonical_entries if e.m >= lo]
    return report_document(spec_text, G, rep, timestamp)


def cmd_report(args) -> int:
    doc = build_report(args.spec, args.weights, _cache(args), args.timestamp)
    sys.stdout.write(RENDERERS[args.format](doc))
    if doc["contains_minus_one"]:
        log.warning("%s contains -1; theorem tables refused", args.spec)
        return EXIT_INVALID if args.strict else EXIT_OK
    return EXIT_OK if doc["verdict"] else EXIT_FAIL


def _batch_row(lineno: int, spec: str, weights, cache) -> dict:
    row: dict = {"line": lineno, "spec": spec}
    try:
        G = resolve(spec, cache)
        row.update(label=G.label, index=G.rep.n)
        if G.minus_one:
            raise MinusOneInGroup(G.label)
        rep = verify_group(G, weights[1])
        ci, si = rep.curve, rep.surface
        row.update(mu=ci.mu, genus=ci.g, eps3=ci.eps3, eps_reg=ci.eps_reg, eps_irr=ci.eps_irr,
                   e=si.e, chi=si.chi, p_g=si.p_g, status="pass" if rep.verdict else "fail")
    except EmsurfError as exc:
        row.update(status="error", error=str(exc))
    return row


def batch_lines(path: Path) -> list[tuple[int, str]]:
    try:
        text = path.read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if body:
            out.append((lineno, body))
    return out


def run_batch(path: Path, weights, cache, jobs: int = 1) -> list[dict]:
    lines = batch_lines(path)
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        return list(pool.map(lambda item: _batch_row(item[0], item[1], weights, cache), lines))


def cmd_batch(args) -> int:
    rows = run_batch(Path(args.file), args.weights, _cache(args), args.jobs)
    sys.stdout.write(render_batch(rows, args.format))
    return EXIT_OK if all(r["status"] == "pass" for r in rows) else EXIT_FAIL


def cmd_export(args) -> int:
    G = resolve(args.spec, _cache(args))
    text = dumps_permutation(G)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text)
    return EXIT_OK


def lmfdb_comparison(spec_text: str, client: LmfdbClient, cache=None) -> list[dict]:
    parsed = parse_group_spec(spec_text)
    if isinstance(parsed, PermRef) or not parsed.label.startswith("gamma1:"):
        raise InvalidInput("the LMFDB cross-check only covers gamma1:N specs")
    G = resolve(spec_text, cache)
    if G.minus_one:
        raise MinusOneInGroup(G.label)
    ci = curve_invariants(G)
    si = surface_invariants(ci, fiber_configuration(ci))
    published = client.weight3_dimensions(parsed.level)
    return [
        {"quantity": "dim M_3", "computed": dim_m3m_formula(ci, 1), "published": published["mf_dim"]},
        {"quantity": "dim S_3 = p_g", "computed": si.p_g, "published": published["cusp_dim"]},
    ]


def cmd_crosscheck(args) -> int:
    cache = _cache(args)
    if args.source == "oracle":
        parsed = parse_group_spec(args.spec)
        if isinstance(parsed, PermRef):
            raise InvalidInput("the oracle cross-check needs a congruence spec, not perm:")
        issues = crosscheck(resolve(args.spec, cache))
        if args.format == "json":
            sys.stdout.write(render_json({"spec": args.spec, "source": "oracle", "discrepancies": issues}))
        else:
            sys.stdout.write("no discrepancies\n" if not issues else "".join(f"- {i}\n" for i in issues))
        return EXIT_FAIL if issues else EXIT_OK
    client = LmfdbClient(cache.root, offline=args.offline)
    rows = lmfdb_comparison(args.spec, client, cache)
    ok = all(r["computed"] == r["published"] for r in rows)
    if args.format == "json":
        sys.stdout.write(render_json({"spec": args.spec, "source": "lmfdb", "rows": rows, "agree": ok}))
    else:
        for r in rows:
            mark = "ok" if r["computed"] == r["published"] else "MISMATCH"
            sys.stdout.write(f"{r['quantity']}: computed {r['computed']}, published {r['published']} [{mark}]\n")
    return EXIT_OK if ok else EXIT_FAIL


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", help="cache directory (default: $EMSURF_CACHE or ~/.cache/emsurf)")
    common.add_argument("--no-cache", action="store_true", help="disable the on-disk cache")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="emsurf", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"emsurf {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("report", parents=[common], help="invariants and dimension tables of one group")
    r.add_argument("spec")
    r.add_argument("--weights", type=parse_range, default=(0, 12), metavar="A..B",
                   help="range of the grading index m (weight 3m); default 0..12")
    r.add_argument("--format", choices=sorted(RENDERERS), default="md")
    r.add_argument("--strict", action="store_true", help="exit 2 for groups containing -1")
    r.add_argument("--timestamp", help="fixed timestamp for reproducible output")
    r.set_defaults(func=cmd_report)

    b = sub.add_parser("batch", parents=[common], help="verify every spec listed in a file")
    b.add_argument("file")
    b.add_argument("--weights", type=parse_range, default=(0, 12), metavar="A..B")
    b.add_argument("--format", choices=sorted(RENDERERS), default="md")
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_batch)

    e = sub.add_parser("export-perm", parents=[common], help="write the permutation document of a group")
    e.add_argument("spec")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_export)

    c = sub.add_parser("crosscheck", parents=[common], help="compare against the oracle or LMFDB")
    c.add_argument("spec")
    c.add_argument("--source", choices=["oracle", "lmfdb"], required=True)
    c.add_argument("--offline", action="store_true", help="use cached LMFDB responses only")
    c.add_argument("--format", choices=["text", "json"], default="text")
    c.set_defaults(func=cmd_crosscheck)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="emsurf: %(message)s")
    try:
        return args.func(args)
    except SourceUnavailable as exc:
        print(f"emsurf: source unavailable: {exc}", file=sys.stderr)
        return EXIT_UNAVAILABLE
    except (InvalidInput, MinusOneInGroup) as exc:
        print(f"emsurf: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except EmsurfError as exc:
        print(f"emsurf: verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
