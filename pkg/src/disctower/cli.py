"""Command-line front end: ``disctower <subcommand> FILE [flags]``."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import __version__
from .discriminants import (
    IndexOutOfRange,
    NotMonic,
    UniOverJets,
    count_distinct_roots,
    generalized_discriminants,
)
from .hensel import DerivativeNotUnit, SeedNotApproximate, hensel_lift_branches
from .kernel import NotAUnit, SingularMatrix
from .numeric import DEFAULT_REL_TOL, LeadingCoefficientZero, NoConvergence, SampleRegion, root_count_profile
from .parser import ParseError, SourceDocument, parse_document
from .serialize import FormatError, dumps, loads
from .tower import (
    InconclusivePrecision,
    InvolvesX1,
    NonzeroConstantTerm,
    NormalSystem,
    TowerConfig,
    ZeroGerm,
    build_tower_function,
    build_tower_set,
)
from .verify import verify_normal_system
from .weierstrass import AmbiguousZero, NotRegular, SearchExhausted, weierstrass_prepare

SUBCOMMANDS = ("gdisc", "distinct-roots", "prepare", "tower-set", "tower-fn", "verify", "lift",
               "profile")

DOMAIN_ERRORS = (
    NotMonic, IndexOutOfRange, NotRegular, AmbiguousZero, SearchExhausted, InconclusivePrecision,
    ZeroGerm, NonzeroConstantTerm, InvolvesX1, DerivativeNotUnit, SeedNotApproximate,
    LeadingCoefficientZero, NoConvergence, NotAUnit, SingularMatrix,
)


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    precision: int | None = None
    height_bound: int = 3
    tolerance: float = DEFAULT_REL_TOL
    grid: int = 5
    seed: int | None = None

    def as_dict(self, doc_precision=None) -> dict:
        return {
            "precision": doc_precision if doc_precision is not None else self.precision,
            "height_bound": self.height_bound,
            "tolerance": self.tolerance,
            "grid": self.grid,
            "seed": self.seed,
        }


def _single_germ(doc: SourceDocument):
    if len(doc.germs) != 1:
        raise UsageError(f"expected exactly one 'germ' line, found {len(doc.germs)}")
    return doc.germs[0]


def _as_poly(doc: SourceDocument, default_var: int) -> UniOverJets:
    return UniOverJets.from_jet(_single_germ(doc), doc.main_index(default_var))


def _tower_config(doc: SourceDocument, cfg: RunConfig) -> TowerConfig:
    return TowerConfig(doc.precision, cfg.height_bound, cfg.seed)


def _profile_region(doc: SourceDocument, f: UniOverJets, cfg: RunConfig) -> SampleRegion:
    radii = {k: float(v) for k, v in doc.radii.items()}
    main = f.ctx.names[f.var]
    escape = doc.escape if doc.escape is not None else doc.radii.get(main)
    radii.pop(main, None)
    return SampleRegion(radii, cfg.grid, escape_radius=float(escape) if escape is not None else None)


def run_document(name: str, doc: SourceDocument, cfg: RunConfig):
    """Value produced by a subcommand on a parsed document."""
    if name == "gdisc":
        return generalized_discriminants(_as_poly(doc, -1))
    if name == "distinct-roots":
        return count_distinct_roots(_as_poly(doc, -1))
    if name == "prepare":
        return weierstrass_prepare(_single_germ(doc), doc.main_index(-1))
    if name == "tower-set":
        if not doc.germs:
            raise UsageError("tower-set needs at least one 'germ' line")
        return build_tower_set(doc.germs, _tower_config(doc, cfg))
    if name == "tower-fn":
        if not doc.germs:
            raise UsageError("tower-fn needs at least one 'germ' line")
        return build_tower_function(doc.germs, _tower_config(doc, cfg))
    if name == "lift":
        if not doc.seeds:
            raise UsageError("lift needs at least one 'seed' line")
        return hensel_lift_branches(_as_poly(doc, 0), doc.seeds, doc.target or doc.precision)
    if name == "profile":
        f = _as_poly(doc, -1)
        return root_count_profile(f, _profile_region(doc, f, cfg), cfg.tolerance)
    raise UsageError(f"unknown subcommand {name!r}")


def _error_report(exc, config) -> str:
    doc = {"tool": "disctower", "version": __version__, "config": dict(sorted(config.items())),
           "kind": "error", "error": {"type": type(exc).__name__, "message": str(exc)}}
    return json.dumps(doc, indent=1) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="disctower", description=__doc__)
    p.add_argument("--version", action="version", version=f"disctower {__version__}")
    p.add_argument("subcommand", help=", ".join(SUBCOMMANDS))
    p.add_argument("input", help="source document (tower JSON for 'verify'); '-' reads stdin")
    p.add_argument("--precision", type=int, default=None, help="truncation degree N")
    p.add_argument("--height-bound", type=int, default=3, help="coordinate-change search bound")
    p.add_argument("--tolerance", type=float, default=DEFAULT_REL_TOL,
                   help="relative root-clustering tolerance")
    p.add_argument("--grid", type=int, default=5, help="samples per axis for 'profile'")
    p.add_argument("--seed", type=int, default=None,
                   help="shuffle the coordinate-change search (stress testing)")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    if args.subcommand not in SUBCOMMANDS:
        err.write(f"error: unknown subcommand {args.subcommand!r} (choose from {', '.join(SUBCOMMANDS)})\n")
        return 2
    if args.precision is not None and args.precision < 1:
        err.write("error: --precision must be >= 1\n")
        return 2
    if args.height_bound < 0 or args.grid < 1 or args.tolerance <= 0:
        err.write("error: --height-bound >= 0, --grid >= 1 and --tolerance > 0 are required\n")
        return 2
    cfg = RunConfig(args.precision, args.height_bound, args.tolerance, args.grid, args.seed)
    try:
        text = _read(args.input)
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return 2

    if args.subcommand == "verify":
        try:
            ns, ctx, stored = loads(text)
        except (FormatError, KeyError, TypeError, ValueError) as exc:
            err.write(f"error: cannot read tower file: {exc}\n")
            return 2
        if not isinstance(ns, NormalSystem):
            err.write("error: 'verify' expects a serialized tower\n")
            return 2
        out.write(dumps(verify_normal_system(ns), ctx, stored))
        return 0

    try:
        doc = parse_document(text, args.precision)
    except ParseError as exc:
        err.write(f"{args.input}:{exc}\n")
        return 2
    config = cfg.as_dict(doc.precision)
    try:
        value = run_document(args.subcommand, doc, cfg)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except DOMAIN_ERRORS as exc:
        out.write(_error_report(exc, config))
        return 1
    out.write(dumps(value, doc.ctx, config))
    return 0


if __name__ == "__main__":
    sys.exit(main())
