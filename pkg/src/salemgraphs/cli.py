"""Command line front end.

Subcommands::

    salemgraphs classify [INPUT]                     graph6 lines -> JSON-lines records
    salemgraphs census [--max-vertices N] [--workers K] [--checkpoint PATH]
    salemgraphs families --select ID --max-vertices N
    salemgraphs verify-paper [--scope quick|full]

Common options are ``--tol p/q`` (width of the rational enclosures),
``--out PATH`` and ``--config PATH``, a JSON file whose keys are option
names; flags given on the command line win over the file.

Census checkpoints are text files::

    salemgraphs-census-checkpoint 1
    max_vertices N
    split_depth D
    isometries <digest of the isometry set>
    partitions P
    completed <hex bitmap over partitions 0..P>
    survivors K
    <K graph6 lines>
    sha256 <digest of everything above>
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, TextIO

from .classify import DEFAULT_TOL, Classification, salem_classify
from .exact_spectra import RationalInterval
from .glg import is_glg
from .graph_core import Graph, canonical_form, is_connected, parse_graph6, write_graph6


# records ------------------------------------------------------------------

def _interval(iv: RationalInterval | None) -> dict | None:
    if iv is None:
        return None
    mid = (iv.lo + iv.hi) / 2
    return {"lo": f"{iv.lo.numerator}/{iv.lo.denominator}",
            "hi": f"{iv.hi.numerator}/{iv.hi.denominator}",
            "approx": _decimal(mid, 12)}


def _decimal(x: Fraction, digits: int) -> str:
    sign = "-" if x < 0 else ""
    x = abs(x)
    whole = x.numerator // x.denominator
    frac = x - whole
    scaled = round(frac * 10 ** digits)
    if scaled == 10 ** digits:
        whole, scaled = whole + 1, 0
    return f"{sign}{whole}.{scaled:0{digits}d}"


@dataclass
class ResultRecord:
    graph6: str
    kind: str
    lambda1: dict | None
    tau: dict | None
    m_salem_index: int | None
    glg: bool
    provenance: str

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def classify_record(g: Graph, provenance: str, tol=DEFAULT_TOL) -> ResultRecord:
    c: Classification = salem_classify(g, tol, with_m_index=True)
    return ResultRecord(write_graph6(g), c.kind.value, _interval(c.lambda1), _interval(c.tau),
                        c.m_index, is_glg(g), provenance)


# config ---------------------------------------------------------------------

def parse_tol(text: str) -> Fraction:
    try:
        tol = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad tolerance {text!r}") from exc
    if tol <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return tol


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


@dataclass
class RunConfig:
    tol: Fraction = DEFAULT_TOL
    out: str | None = None
    max_vertices: int | None = None
    workers: int = 1
    checkpoint: str | None = None
    select: str = "all"
    scope: str = "quick"
    extras: dict = field(default_factory=dict)


def _open_out(path: str | None) -> TextIO:
    return open(path, "w") if path else sys.stdout


# commands -------------------------------------------------------------------

def read_graph6_lines(lines: Iterable[str]) -> Iterator[tuple[int, Graph | None, str]]:
    """Yield (line number, graph or None, error text) for non-blank lines."""
    for num, line in enumerate(lines, 1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            yield num, parse_graph6(text), ""
        except ValueError as exc:
            yield num, None, str(exc)


def cmd_classify(lines: Iterable[str], cfg: RunConfig, out: TextIO, err: TextIO) -> int:
    status = 0
    for num, g, msg in read_graph6_lines(lines):
        if g is None:
            err.write(f"line {num}: {msg}\n")
            status = 1
            continue
        out.write(classify_record(g, f"input line {num}", cfg.tol).to_json() + "\n")
    return status


def cmd_census(cfg: RunConfig, out: TextIO) -> int:
    from .e8_search import MAX_DEPTH, histogram, run_census

    maxn = cfg.max_vertices if cfg.max_vertices is not None else MAX_DEPTH
    state = run_census(maxn, cfg.workers, cfg.checkpoint)
    corpus = sorted(state.survivors)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.writelines(line + "\n" for line in corpus)
    hist = histogram(corpus)
    for n, k in hist.items():
        out.write(json.dumps({"vertices": n, "count": k}) + "\n")
    out.write(json.dumps({"total": sum(hist.values())}) + "\n")
    return 0


def family_stream(select: str, max_vertices: int) -> Iterator[tuple[str, Graph]]:
    """(provenance, graph) pairs for a family id, ``Bip`` or ``all``; duplicate free."""
    from .families import build_bipartite, enumerate_bipartite, enumerate_family_instances, family_ids

    ids = family_ids()
    if select not in ids and select not in ("Bip", "all"):
        raise ValueError(f"unknown family {select}")
    seen = set()
    if select != "Bip":
        chosen = ids if select == "all" else [select]
        for inst, g in enumerate_family_instances(max_vertices, chosen):
            code = canonical_form(g)
            if code not in seen:
                seen.add(code)
                yield str(inst), g
    if select in ("Bip", "all"):
        for comps in enumerate_bipartite(max_vertices - 1):
            g = build_bipartite(comps)
            code = canonical_form(g)
            if code not in seen:
                seen.add(code)
                desc = "+".join(f"{c.shape}{sorted(c.attach)}" for c in comps)
                yield f"Bip({desc})", g


def cmd_families(cfg: RunConfig, out: TextIO) -> int:
    maxn = cfg.max_vertices if cfg.max_vertices is not None else 10
    for prov, g in family_stream(cfg.select, maxn):
        out.write(f"{write_graph6(g)}\n")
    return 0


@dataclass
class Check:
    name: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


def verify_checks(scope: str) -> Iterator[Callable[[], Check]]:
    """Lazily evaluated checks; quick scope caps the expensive sweeps."""
    from .classify import is_cyclotomic, m_salem_index
    from .e8_search import LARGEST_SURVIVORS, e8_roots, one_salem_census, reflections
    from .families import (bipartite_exception_check, enumerate_bipartite, enumerate_family_instances,
                           family_corpus, grow_MA, grow_full, hat_variants, cyclotomic_exception_cases, build_bipartite)
    from .glg import recognize_glg
    from .graph_core import is_bipartite

    full = scope == "full"

    def e8_structure() -> Check:
        roots = e8_roots()
        ips = {a.ip(b) for a in roots for b in roots}
        return Check("E8 roots / inner products / reflections", (240, {-2, -1, 0, 1, 2}, 120),
                     (len(roots), ips, len(reflections())))

    census_cache: dict = {}

    def census() -> tuple:
        if "r" not in census_cache:
            census_cache["r"] = one_salem_census() if full else one_salem_census(8)
        return census_cache["r"]

    def census_hist() -> Check:
        expected = {6: 10, 7: 43, 8: 111, 9: 153, 10: 58, 11: 2} if full else {6: 10, 7: 43, 8: 111}
        return Check("E8 census histogram", expected, census()[0])

    def largest() -> Check:
        big = {canonical_form(g) for g in census()[1] if g.n == 11}
        return Check("11-vertex census survivors match the reference graphs", True,
                     big == {canonical_form(g) for g in LARGEST_SURVIVORS})

    def sporadic() -> Check:
        sporadic_glg = [f"G{i}" for i in range(26, 32)]
        return Check("sporadic total (GLG sporadics + E8 census)", 383,
                     len(sporadic_glg) + sum(census()[0].values()))

    def ma() -> Check:
        codes = grow_MA()
        return Check("M u A graphs (count, largest order)", (224, 11),
                     (len(codes), max(c.code[0] for c in codes)))

    def hats() -> Check:
        return Check("hat variants of the infinite families", 60,
                     sum(len(hat_variants(f"G{i}")) for i in range(1, 26)))

    def soundness() -> Check:
        limit = 16 if full else 11
        bad = 0
        for inst, g in enumerate_family_instances(limit):
            ok = (is_connected(g) and is_bipartite(g) is None and recognize_glg(g) is not None
                  and salem_classify(g).kind.is_salem and m_salem_index(g) == 1)
            bad += not ok
        return Check(f"family instances <= {limit} vertices that fail", 0, bad)

    def completeness() -> Check:
        limit = 10 if full else 8
        return Check(f"family corpus = grown GLG 1-Salem graphs (<= {limit} vertices)", True,
                     set(family_corpus(limit)) == grow_full(limit))

    def exceptions() -> Check:
        limit = 10 if full else 8
        realized, s5, bad = set(), 0, 0
        for comps in enumerate_bipartite(limit):
            g = build_bipartite(comps)
            if is_cyclotomic(g):
                s5 += len(comps) >= 5
                name = bipartite_exception_check(comps)
                if name != "cyclotomic":
                    realized.add((tuple(sorted(canonical_form(c.graph) for c in comps)), name))
            elif not (salem_classify(g).kind.is_salem and m_salem_index(g) == 1):
                bad += 1
        return Check(f"bipartite sweep (<= {limit} component vertices): table match, s>=5 cyclotomic, non-1-Salem",
                     (True, 0, 0), (realized == cyclotomic_exception_cases(limit), s5, bad))

    yield e8_structure
    yield census_hist
    if full:
        yield largest
    yield sporadic if full else hats
    if full:
        yield hats
    yield ma
    yield soundness
    yield completeness
    yield exceptions


def cmd_verify_paper(cfg: RunConfig, out: TextIO) -> int:
    failed = 0
    for make in verify_checks(cfg.scope):
        t = time.time()
        chk = make()
        failed += not chk.ok
        out.write(f"{'PASS' if chk.ok else 'FAIL'}  {chk.name}: expected {chk.expected!r}, "
                  f"actual {chk.actual!r}  ({time.time() - t:.1f}s)\n")
        out.flush()
    out.write(f"{'all checks passed' if not failed else f'{failed} check(s) failed'}\n")
    return 1 if failed else 0


# argument parsing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=parse_tol, default=None, help="enclosure width as p/q")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--config", default=None, help="JSON file of option defaults")

    p = argparse.ArgumentParser(prog="salemgraphs", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("classify", parents=[common], help="classify graph6 lines")
    c.add_argument("input", nargs="?", default="-", help="graph6 file, - for stdin")
    c = sub.add_parser("census", parents=[common], help="E8 census of 1-Salem non-GLG graphs")
    c.add_argument("--max-vertices", type=_positive_int, default=None)
    c.add_argument("--workers", type=_positive_int, default=None)
    c.add_argument("--checkpoint", default=None)
    c = sub.add_parser("families", parents=[common], help="emit family instances as graph6")
    c.add_argument("--select", default=None, help="G1..G31, Bip or all")
    c.add_argument("--max-vertices", type=_positive_int, default=None)
    c = sub.add_parser("verify-paper", parents=[common], help="run the verification checks")
    c.add_argument("--scope", choices=("quick", "full"), default=None)
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    values = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            values.update(json.load(fh))
    for key, value in vars(args).items():
        if value is not None and key not in ("config", "command", "input"):
            values[key] = value
    for key, value in values.items():
        key = key.replace("-", "_")
        if key == "tol":
            value = parse_tol(str(value))
        if key == "workers" and int(value) < 1:
            raise ValueError("workers must be >= 1")
        if hasattr(cfg, key):
            setattr(cfg, key, value)
        else:
            cfg.extras[key] = value
    return cfg


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    if args.command == "classify":
        src = sys.stdin if args.input == "-" else open(args.input)
        out = _open_out(cfg.out)
        try:
            return cmd_classify(src, cfg, out, sys.stderr)
        finally:
            if out is not sys.stdout:
                out.close()
    if args.command == "census":
        return cmd_census(cfg, sys.stdout)
    out = _open_out(cfg.out)
    try:
        if args.command == "families":
            try:
                return cmd_families(cfg, out)
            except ValueError as exc:
                sys.stderr.write(f"{exc}\n")
                return 2
        return cmd_verify_paper(cfg, out)
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
