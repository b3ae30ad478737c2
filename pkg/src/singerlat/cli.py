"""Command-line surface.

Subcommands cover the whole pipeline: generate and verify difference
sets, export planes, certify difference matrices, run the equivalence
census, print the counting bounds, and build glued balls.  All output is
deterministic; identical invocations produce byte-identical bytes
regardless of thread count.

Exit codes: 0 success, 1 certified-exotic verdict where a Moufang
candidate was requested, 2 invalid input, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .ball import build_ball, complex_to_text, verify_ball
from .diffsets import canonical_difference_set, matrix_from_text, \
    set_from_text, set_to_text
from .errors import CapExceeded, InvalidInput
from .exotic import CERTIFIED_EXOTIC, NormalizedMatrix, census_summary, \
    census_to_text, certify_exotic, classify, ratio_table
from .permgrp import perm_to_str
from .plane import canonical_plane, plane_to_text


@dataclass(frozen=True)
class RunConfig:
    """One parsed invocation; every field the dispatch table may read."""

    subcommand: str
    q: int | None = None
    qs: tuple[int, ...] = ()
    input_path: str | None = None
    output_path: str | None = None
    outdir: str | None = None
    radius: int | None = None
    extra_moves: bool = False
    threads: int = 1
    moufang_candidate: bool = False


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InvalidInput(f"cannot read {path}: {e}") from None


def _emit(text, output_path, summary):
    # machine text goes to the file when one is named, else to stdout;
    # the human summary must never mix into machine output
    if output_path is None:
        sys.stdout.write(text)
    else:
        Path(output_path).write_text(text)
        print(f"{summary} -> {output_path}")


def cmd_gen_singer(cfg):
    D = canonical_difference_set(cfg.q)
    _emit(set_to_text(D), cfg.output_path,
          f"difference set q={D.q} modulus={D.modulus}")
    return 0


def cmd_verify_ds(cfg):
    D = set_from_text(_read(cfg.input_path))
    canonical = D == canonical_difference_set(D.q)
    els = " ".join(str(x) for x in D.elements)
    print(f"ok: q={D.q} modulus={D.modulus} elements=[{els}] "
          f"canonical={'yes' if canonical else 'no'}")
    return 0


def cmd_build_plane(cfg):
    plane = canonical_plane(cfg.q)
    _emit(plane_to_text(plane), cfg.output_path,
          f"plane of order {cfg.q} "
          f"({plane.modulus} points, {plane.modulus} lines)")
    return 0


def cmd_certify(cfg):
    M = matrix_from_text(_read(cfg.input_path))
    Mn = NormalizedMatrix.from_matrix(M)
    verdict = certify_exotic(M)
    print(f"q={M.q} modulus={M.modulus}")
    print(f"alpha1={perm_to_str(Mn.alpha1)} alpha2={perm_to_str(Mn.alpha2)}")
    print(f"verdict={verdict.outcome}")
    print(f"witness={verdict.witness.summary() if verdict.witness else '-'}")
    if cfg.moufang_candidate and verdict.outcome == CERTIFIED_EXOTIC:
        return 1
    return 0


def cmd_classify(cfg):
    if cfg.threads < 1:
        raise InvalidInput(f"thread count must be positive, got {cfg.threads}")
    classes = classify(cfg.q, extra_moves=cfg.extra_moves,
                       threads=cfg.threads)
    outdir = Path(cfg.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    suffix = "_extra" if cfg.extra_moves else ""
    census_path = outdir / f"census_q{cfg.q}{suffix}.txt"
    summary_path = outdir / f"summary_q{cfg.q}{suffix}.tsv"
    census_path.write_text(census_to_text(classes))
    summary_path.write_text(census_summary(cfg.q, classes))
    total = sum(c.orbit_size for c in classes)
    exotic = sum(1 for c in classes
                 if c.verdict.outcome == CERTIFIED_EXOTIC)
    print(f"processed {total} matrices into {len(classes)} classes "
          f"(certified_exotic={exotic}, "
          f"inconclusive={len(classes) - exotic})")
    print(f"wrote {census_path}")
    print(f"wrote {summary_path}")
    return 0


def cmd_bounds(cfg):
    rows = ratio_table(list(cfg.qs))
    print("q\tbound_B\tlower_A\tratio")
    for q, b, a, ratio in rows:
        print(f"{q}\t{b}\t{a}\t{ratio!r}")
    return 0


def cmd_ball(cfg):
    M = matrix_from_text(_read(cfg.input_path))
    ball = build_ball(M, cfg.radius)
    report = verify_ball(ball)
    status = sys.stdout if cfg.output_path else sys.stderr
    _emit(complex_to_text(ball), cfg.output_path,
          f"ball q={ball.q} radius={ball.radius} "
          f"({ball.vertex_count} vertices, {len(ball.chambers)} chambers)")
    if report.ok:
        print("verification ok", file=status)
    else:
        for failure in report.failures:
            print(f"verification failed: {failure}", file=status)
    return 0


_DISPATCH = {
    "gen-singer": cmd_gen_singer,
    "verify-ds": cmd_verify_ds,
    "build-plane": cmd_build_plane,
    "certify": cmd_certify,
    "classify": cmd_classify,
    "bounds": cmd_bounds,
    "ball": cmd_ball,
}


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="singerlat",
        description="Cyclic projective planes, difference matrices, "
                    "exoticity certificates, and glued balls.")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser(
        "gen-singer",
        help="print the canonical perfect difference set for a prime power")
    p.add_argument("q", type=int, help="plane order (prime power)")
    p.add_argument("-o", "--output", help="write the set file here")

    p = sub.add_parser(
        "verify-ds", help="check that a set file holds a difference set")
    p.add_argument("file", help="set file as written by gen-singer")

    p = sub.add_parser(
        "build-plane",
        help="export the plane of the canonical difference set")
    p.add_argument("q", type=int, help="plane order (prime power)")
    p.add_argument("-o", "--output", help="write the plane export here")

    p = sub.add_parser(
        "certify", help="run the local-group comparison on a matrix file")
    p.add_argument("file", help="difference matrix file")
    p.add_argument(
        "--moufang-candidate", action="store_true",
        help="exit 1 if the matrix is certified exotic")

    p = sub.add_parser(
        "classify",
        help="census of normalized matrices up to coarse equivalence")
    p.add_argument("q", type=int, help="plane order (prime power)")
    p.add_argument("--extra-moves", action="store_true",
                   help="also quotient by rotation and duality")
    p.add_argument("--threads", type=int, default=1,
                   help="worker threads; output bytes do not depend on this")
    p.add_argument("--outdir", default=".",
                   help="directory for census and summary files")

    p = sub.add_parser(
        "bounds", help="print the candidate bound and growth lower bound")
    p.add_argument("qs", metavar="q", type=int, nargs="+",
                   help="plane orders (prime powers)")

    p = sub.add_parser(
        "ball", help="build and verify the glued ball of a matrix file")
    p.add_argument("file", help="difference matrix file")
    p.add_argument("radius", type=int, help="1 or 2")
    p.add_argument("-o", "--output", help="write the complex export here")

    return ap


def main(argv=None):
    args = _build_parser().parse_args(argv)
    cfg = RunConfig(
        subcommand=args.subcommand,
        q=getattr(args, "q", None),
        qs=tuple(getattr(args, "qs", ())),
        input_path=getattr(args, "file", None),
        output_path=getattr(args, "output", None),
        outdir=getattr(args, "outdir", None),
        radius=getattr(args, "radius", None),
        extra_moves=getattr(args, "extra_moves", False),
        threads=getattr(args, "threads", 1),
        moufang_candidate=getattr(args, "moufang_candidate", False),
    )
    try:
        return _DISPATCH[cfg.subcommand](cfg)
    except InvalidInput as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
