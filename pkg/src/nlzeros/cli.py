"""Command line entry point: nlzeros <verb> ..."""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

from . import constructions as C
from . import enumeration as E
from .diskcount import count_exact
from .minima import M1_DEFAULT, M2_DEFAULT, certify_min, filter_large
from .poly import LITTLEWOOD, NEWMAN, DomainError, IntPoly, Pattern, from_string, pretty, to_string
from .prover import ProofCertificate, ProofError, prove_pattern, verify_certificate
from .search import SearchConfig, dfs_search

JOBS_ENV = "NLZEROS_JOBS"


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


@dataclass
class RunManifest:
    subcommand: str
    flags: Dict[str, object]
    inputs: Dict[str, str] = field(default_factory=dict)
    outputs: Dict[str, str] = field(default_factory=dict)
    wall_time: float = 0.0
    workers: int = 1

    def add_input(self, path: Path) -> None:
        self.inputs[str(path)] = _digest(Path(path).read_bytes())

    def add_output(self, name: str, data: bytes) -> None:
        self.outputs[name] = _digest(data)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, default=str)


class _Out:
    """Collects stdout text so its digest lands in the manifest."""

    def __init__(self):
        self.parts: List[str] = []

    def __call__(self, text: str = "") -> None:
        self.parts.append(text + "\n")
        sys.stdout.write(text + "\n")

    @property
    def data(self) -> bytes:
        return "".join(self.parts).encode()


def _write(path: Path, data: bytes, man: RunManifest) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data)
    man.add_output(str(path), data)


def _poly_text(f: IntPoly, args) -> str:
    return pretty(f) if getattr(args, "pretty", False) else to_string(f)


# verbs

def cmd_count(args, out, man) -> int:
    f = from_string(args.poly)
    out(str(count_exact(f)))
    return 0


def cmd_scan(args, out, man) -> int:
    outdir = Path(args.out)
    normalized = not args.all_signs
    tag = E.class_tag(args.cls, normalized)
    arc_path = outdir / E.archive_name(tag, args.degree)
    st = E.scan_degree(args.cls, args.degree, arc_path, jobs=args.jobs, normalized=normalized)
    man.add_output(str(arc_path), arc_path.read_bytes())
    for p in E.write_stats([st], outdir / f"stats_{args.degree:03d}"):
        man.add_output(str(p), p.read_bytes())
    out(f"{args.cls} degree {args.degree}: {st.total} polynomials, {st.total_u0} with U=0, "
        f"{st.flagged} recounted exactly")
    return 0


def cmd_grid(args, out, man) -> int:
    arcs = E.load_archives(args.archives, args.cls)
    for p in sorted(Path(args.archives).glob("*.nlzc")):
        man.add_input(p)
    grid = E.build_grid(args.cls, args.max_degree, arcs)
    csv = grid.to_csv().encode()
    if args.csv:
        _write(Path(args.csv), csv, man)
    else:
        out(csv.decode().rstrip("\n"))
    if args.image:
        _write(Path(args.image), grid.to_pgm(), man)
    bad = ", ".join(f"({k},{n})" for k, n in grid.inadmissible())
    sys.stderr.write(f"inadmissible: {bad or 'none'}\n")
    return 0 if grid.reflection_consistent() else 1


def cmd_stats(args, out, man) -> int:
    arcs = E.load_archives(args.archives, args.cls)
    for p in sorted(Path(args.archives).glob("*.nlzc")):
        man.add_input(p)
    stats = [E.stats_from_archive(arcs[n]) for n in sorted(arcs)]
    if not stats:
        sys.stderr.write("no archives found\n")
        return 1
    if args.out:
        for p in E.write_stats(stats, args.out):
            man.add_output(str(p), p.read_bytes())
    out(json.dumps(E.stats_summary(stats), indent=2, sort_keys=True))
    return 0


def cmd_minima(args, out, man) -> int:
    for s in filter_large(args.cls, args.degree, args.threshold, args.m1, args.m2):
        out(s.line() if not args.pretty else f"{s.degree} {s.index} {pretty(s.poly)} {s.sampled_min:.6f}")
    return 0


def cmd_certify(args, out, man) -> int:
    cert = certify_min(from_string(args.poly), args.above)
    out(cert.to_json())
    return 0 if cert.certified else 1


def cmd_search(args, out, man) -> int:
    words = [w for w in args.words.split(",") if w]
    cfg = SearchConfig(args.seed, tuple(words), args.k, args.cap, args.cls)
    res = dfs_search(cfg)
    for d in res.patterns:
        out(d.line())
    sys.stderr.write(f"{len(res.order)} words visited, {len(res.patterns)} patterns\n")
    return 0


def cmd_prove(args, out, man) -> int:
    try:
        cert = prove_pattern(Pattern.parse(args.pattern), args.k, args.m_min)
    except ProofError as exc:
        out(json.dumps({"pattern": args.pattern, "failed_stage": exc.stage, "detail": exc.detail}))
        return 1
    text = cert.to_json()
    if args.out:
        _write(Path(args.out), text.encode() + b"\n", man)
    else:
        out(text)
    return 0


def cmd_verify(args, out, man) -> int:
    path = Path(args.certificate)
    man.add_input(path)
    cert = ProofCertificate.from_json(path.read_text())
    ok, problems = verify_certificate(cert)
    out("PASS" if ok else "FAIL")
    for p in problems:
        out(f"  {p}")
    return 0 if ok else 1


def _report(res: C.Construction, args, out) -> int:
    out(f"{_poly_text(res.poly, args)} {res.count} {res.status}")
    return 0 if res.contract_holds else 1


def cmd_construct(args, out, man) -> int:
    kind = args.kind
    if kind == "spl":
        h, pred = C.spl_family(args.m, args.l)
        got = count_exact(h)
        out(f"{_poly_text(h, args)} {got} predicted {pred}")
        return 0 if got == pred else 1
    if kind == "product":
        res = C.spaced_product(from_string(args.f), from_string(args.g), args.l, args.m)
        return _report(res, args, out)
    if kind == "sandwich":
        return _report(C.sandwich(from_string(args.poly), args.r, args.n), args, out)
    if kind == "append":
        return _report(C.append_monomial(from_string(args.poly), args.n), args, out)
    if kind == "rotate":
        for e in C.rotation_profile(from_string(args.poly)):
            mark = " rouche" if e.rouche_next else ""
            out(f"{e.j} {_poly_text(e.poly, args)} {e.count} {e.sampled_min:.4f}{mark}")
        return 0
    if kind == "flat":
        f = C.iterate_flat(args.j)
        out(_poly_text(f, args))
        return 0
    raise DomainError(kind)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nlzeros", description=__doc__)
    ap.add_argument("--manifest", help="write the run manifest JSON here (default: stderr)")
    ap.add_argument("--pretty", action="store_true", help="render polynomials as 1 + z + z^4")
    sub = ap.add_subparsers(dest="verb", required=True)
    default_jobs = int(os.environ.get(JOBS_ENV, "1"))

    p = sub.add_parser("count", help="zeros inside / on / outside the unit circle")
    p.add_argument("poly")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("scan", help="exhaustive census of one degree")
    p.add_argument("--class", dest="cls", choices=[NEWMAN, LITTLEWOOD], required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--jobs", type=int, default=default_jobs)
    p.add_argument("--all-signs", action="store_true", help="Littlewood: scan all 2^(n+1) sign patterns")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("grid", help="admissibility grid from scan archives")
    p.add_argument("--class", dest="cls", choices=[NEWMAN, LITTLEWOOD], required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--archives", required=True)
    p.add_argument("--csv")
    p.add_argument("--image", help="PGM raster of the grid")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("stats", help="moments, fits and histograms from archives")
    p.add_argument("--class", dest="cls", choices=[NEWMAN, LITTLEWOOD], default=NEWMAN)
    p.add_argument("--archives", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("minima", help="class members with large minimum modulus")
    p.add_argument("--class", dest="cls", choices=[NEWMAN, LITTLEWOOD], required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--threshold", type=float, required=True)
    p.add_argument("--m1", type=int, default=M1_DEFAULT)
    p.add_argument("--m2", type=int, default=M2_DEFAULT)
    p.set_defaults(func=cmd_minima)

    p = sub.add_parser("certify", help="prove |f| > c on the unit circle")
    p.add_argument("poly")
    p.add_argument("--above", type=float, required=True)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("search", help="depth-first pattern search by word insertion")
    p.add_argument("--seed", required=True)
    p.add_argument("--words", required=True, help="comma separated insertion words")
    p.add_argument("--cap", type=int, default=60)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--class", dest="cls", choices=[NEWMAN, LITTLEWOOD], default=NEWMAN)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("prove", help="certify a pattern family")
    p.add_argument("--pattern", required=True, help='"prefix|period|suffix"')
    p.add_argument("--k", type=int)
    p.add_argument("--m-min", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("verify-certificate", help="replay a certificate JSON")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="build a polynomial with a verified count")
    cs = p.add_subparsers(dest="kind", required=True)
    q = cs.add_parser("spl")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--l", type=int, required=True)
    q = cs.add_parser("product")
    q.add_argument("--f", required=True)
    q.add_argument("--g", required=True)
    q.add_argument("--l", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q = cs.add_parser("rotate")
    q.add_argument("poly")
    q = cs.add_parser("sandwich")
    q.add_argument("poly")
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q = cs.add_parser("append")
    q.add_argument("poly")
    q.add_argument("--n", type=int, required=True)
    q = cs.add_parser("flat")
    q.add_argument("--j", type=int, required=True)
    p.set_defaults(func=cmd_construct)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    flags = {k: v for k, v in vars(args).items() if k != "func"}
    man = RunManifest(args.verb, flags, workers=getattr(args, "jobs", 1))
    out = _Out()
    t0 = time.perf_counter()
    try:
        rc = args.func(args, out, man)
    except (DomainError, ValueError, ArithmeticError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        rc = 2
    man.wall_time = time.perf_counter() - t0
    man.add_output("stdout", out.data)
    if args.manifest:
        Path(args.manifest).write_text(man.to_json() + "\n")
    else:
        sys.stderr.write(man.to_json() + "\n")
    return rc


if __name__ == "__main__":
    sys.exit(main())
