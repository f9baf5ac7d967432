"""CLI entrypoint: alcove-calculus operations and batch jobs."""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from src.blocks.groth import (
    HOM_DELTA,
    HOM_DELTABAR,
    OFF_WALL,
    ONTO_WALL,
    Basis,
    GVector,
    convert_basis,
    hom_dim,
    theta_s,
    translate,
    translate_standard,
)
from src.blocks.levi_block import (
    LeviDatum,
    N_I,
    choose_mu,
    make_levi,
    orbit_rep,
    parse_levi,
    regular_labels,
    stabilizer_order,
)
from src.blocks.sections import (
    SectionKind,
    deltabar_to_delta,
    off_wall_transform,
    onto_wall_transform,
    skeleton_from_char,
    theta_transform,
)
from src.common.config import CliConfig, OUTPUT_FORMATS, resolve_config
from src.common.errors import AlcalcError, ParseError, UsageError, exit_code_for
from src.common.output import render
from src.geometry.affine_weyl import parse_element, parse_reflection, simple_reflections_Sp
from src.geometry.alcoves import alcove_coords, uparrow_leq, walls_of_alcove
from src.geometry.rootdata import Weight, root_system
from src.tilting.characters import refl_transwall_decompose, theta_product_char, tilt_summand_check
from src.tilting.table import TiltingTable, greedy_peel
from src.tilting.words import certify_word, domexp_word, parse_word

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# Exit status of a verify run whose report contains failures
REPORT_FAILED = 2


class AlcalcArgumentParser(argparse.ArgumentParser):
    """argparse that raises UsageError (exit 64) instead of exiting with 2."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def parse_weight(text: str) -> Weight:
    """Comma-separated fundamental-weight coordinates, e.g. "8" or "1,-2"."""
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ParseError(f"cannot read weight {text!r}", text=text)


def build_parser() -> argparse.ArgumentParser:
    parser = AlcalcArgumentParser(
        prog="alcalc",
        description="Exact alcove geometry, Levi blocks and tilting characters",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  alcalc --type A1 --p 5 d --weight 8
  alcalc --type A1 --p 5 --I 1 ni --weight 0
  alcalc --type A1 --p 5 domexp --weight 10
  alcalc --type A1 --p 5 verify --box 20
  alcalc --preset a2 --format json tilt-product --word 5:3,0:1
        """
    )
    parser.add_argument("--type", dest="type_spec", help="Root system type, e.g. A2, B2xA1")
    parser.add_argument("--p", type=int, help="Characteristic (prime, at least the Coxeter number)")
    parser.add_argument("--I", dest="levi", help="Levi subset as 1-based indices, e.g. 1,3")
    parser.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS, help="Output format")
    parser.add_argument("--config", type=Path, help="key=value settings file")
    parser.add_argument("--preset", help="Named preset from config/presets.json")
    parser.add_argument("--rank-cap", type=int, help="Largest accepted rank (default 8)")
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
    parser.add_argument("--quiet", action="store_true", help="Log warnings and errors only")

    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    sub.add_parser("describe", help="Root system, walls of C and Levi data")

    p = sub.add_parser("dot", help="Dot action of an affine Weyl element")
    p.add_argument("--element", required=True, help='e.g. "s[1,1]*s[2,0]" or "t[1,0]"')
    p.add_argument("--weight", required=True, type=parse_weight)

    p = sub.add_parser("d", help="The d-function of a regular weight")
    p.add_argument("--weight", required=True, type=parse_weight)
    p.add_argument("--walls", action="store_true", help="Also list the walls of its alcove")

    p = sub.add_parser("uparrow", help="Decide mu up-arrow lambda")
    p.add_argument("--mu", required=True, type=parse_weight)
    p.add_argument("--lam", required=True, type=parse_weight)

    p = sub.add_parser("orbit-rep", help="Representative of the W_{I,p} dot orbit in C-bar_I")
    p.add_argument("--weight", required=True, type=parse_weight)

    p = sub.add_parser("ni", help="N_I(lambda) = |W_I . (lambda + pX)|")
    p.add_argument("--weight", required=True, type=parse_weight)

    p = sub.add_parser("mu", help="Wall weight for a reflection in S_p")
    p.add_argument("--s", required=True, help='Wall reflection, e.g. "s[1,0]"')

    for name, text in (("translate", "Translation onto or off a wall"), ("theta", "Wall crossing Theta_s")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--s", required=True, help='Wall reflection, e.g. "s[1,1]"')
        _add_char_args(p)
        if name == "translate":
            p.add_argument("--direction", required=True, choices=("onto", "off"))

    p = sub.add_parser("domexp", help="Certified reduced word for a dominant label")
    p.add_argument("--weight", required=True, type=parse_weight)

    p = sub.add_parser("tilt-product", help="Theta-product character of a word")
    _add_word_args(p)

    p = sub.add_parser("tilt-check", help="Triangularity of the Theta-product of DomExp(nu)")
    p.add_argument("--weight", required=True, type=parse_weight)
    p.add_argument("--s", help="Also decompose Theta_s T(nu) for this wall")

    p = sub.add_parser("peel", help="Decompose a Theta-product against a tilting table")
    _add_word_args(p)
    p.add_argument("--table", required=True, type=Path, help="Tilting table JSON")

    p = sub.add_parser("sections", help="Section sizes of a costandard-filtered character")
    _add_char_args(p)
    p.add_argument("--kind", choices=[k.value for k in SectionKind], default=SectionKind.DELTABAR.value)
    p.add_argument("--s", help="Wall reflection for --transform")
    p.add_argument("--transform", choices=("onto", "off", "theta"))
    p.add_argument("--hom", help="Report dim Hom(Delta-bar(xi), M) and dim Hom(Delta(xi), M) for this label")

    p = sub.add_parser("verify", help="Run the brute-force verify suite")
    p.add_argument("--box", type=int, help="Coordinate box radius (default 20)")
    p.add_argument("--max-d", dest="max_d", type=int, help="Largest |d| of labels checked (default 3)")
    p.add_argument("--seed", type=int, help="Seed for sampled checks")
    p.add_argument("--samples", type=int, help="Random characters per Levi subset")
    p.add_argument("--no-save", action="store_true", help="Do not record the run")
    p.add_argument("--history", action="store_true", help="List previous runs instead")
    p.add_argument("--history-file", dest="history_file", help="Run history JSON")

    p = sub.add_parser("table", help="Build and save the A1 tilting table")
    p.add_argument("--d-min", type=int, default=-1)
    p.add_argument("--d-max", type=int, default=4)
    p.add_argument("--out", type=Path)

    return parser


def _add_char_args(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--char", help="Character as JSON, or @PATH to read it from a file")
    group.add_argument("--label", action="append", type=parse_weight, help="Basis class (repeatable, summed)")
    p.add_argument("--basis", choices=[b.value for b in Basis], default=Basis.ZBAR.value, help="Basis of --label")


def _add_word_args(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--word", help='Letters "m:i,..." with m = n p and i a root index')
    group.add_argument("--weight", type=parse_weight, help="Use the DomExp word of this label")


# --- helpers -------------------------------------------------------------------------------

def _levi(cfg: CliConfig) -> LeviDatum:
    rs = root_system(cfg.type_spec, cfg.rank_cap)
    return make_levi(rs, parse_levi(cfg.levi), cfg.p)


def _read_char(args: argparse.Namespace, block: Sequence[int], L: LeviDatum) -> GVector:
    if args.char:
        text = args.char
        if text.startswith("@"):
            try:
                text = Path(text[1:]).read_text(encoding="utf-8")
            except OSError as e:
                raise UsageError(f"cannot read character file {text[1:]}: {e}")
        try:
            return GVector.from_dict(json.loads(text))
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid character JSON: {e}")
    return GVector.from_weights(Basis(args.basis), block, args.label, L)


def _word(args: argparse.Namespace, L: LeviDatum):
    if args.word is not None:
        return certify_word(parse_word(L.rs, L.p, args.word), L)
    return domexp_word(args.weight, L)


# --- commands ------------------------------------------------------------------------------

def cmd_describe(args, cfg, L):
    rs = L.rs
    return {
        "type": rs.name,
        "rank": rs.rank,
        "p": L.p,
        "cartan_matrix": [list(row) for row in rs.cartan_matrix],
        "positive_roots": [list(b) for b in rs.positive_roots],
        "coxeter_number": rs.coxeter_number,
        "fundamental_group_order": rs.fundamental_group_order,
        "walls": [s.label for s in simple_reflections_Sp(rs, L.p)],
        "levi": {
            "I": [i + 1 for i in L.I],
            "order_WI": L.order_WI,
            "levi_roots": [k + 1 for k in L.levi_roots],
        },
        "labels_in_box": len(regular_labels(L, min(cfg.box, L.p))),
    }


def cmd_dot(args, cfg, L):
    return parse_element(L.rs, L.p, args.element).dot(L.rs.check_weight(args.weight))


def cmd_d(args, cfg, L):
    coords = alcove_coords(L.rs, args.weight, L.p)
    if not args.walls:
        return coords.d
    return {"d": coords.d, "n": list(coords.n), "walls": [w.to_dict() for w in walls_of_alcove(L.rs, args.weight, L.p)]}


def cmd_uparrow(args, cfg, L):
    return uparrow_leq(L.rs, args.mu, args.lam, L.p)


def cmd_orbit_rep(args, cfg, L):
    return orbit_rep(args.weight, L)


def cmd_ni(args, cfg, L):
    return N_I(args.weight, L)


def cmd_mu(args, cfg, L):
    return choose_mu(parse_reflection(L.rs, L.p, args.s), L.rs, L.p)


def cmd_translate(args, cfg, L):
    setup = choose_mu(parse_reflection(L.rs, L.p, args.s), L.rs, L.p)
    direction = ONTO_WALL if args.direction == "onto" else OFF_WALL
    block = setup.lambda_star if direction == ONTO_WALL else setup.mu
    v = _read_char(args, block, L)
    if v.basis is Basis.NABLA:
        return translate_standard(v, direction, setup, L)
    return translate(v, direction, setup, L)


def cmd_theta(args, cfg, L):
    setup = choose_mu(parse_reflection(L.rs, L.p, args.s), L.rs, L.p)
    v = _read_char(args, setup.lambda_star, L)
    out = theta_s(convert_basis(v, Basis.ZBAR, L), setup, L)
    return convert_basis(out, v.basis, L)


def cmd_domexp(args, cfg, L):
    return domexp_word(args.weight, L)


def cmd_tilt_product(args, cfg, L):
    word = _word(args, L)
    char = theta_product_char(word, L)
    return {"word": word.to_dict(), "zbar": char, "nabla": convert_basis(char, Basis.NABLA, L)}


def cmd_tilt_check(args, cfg, L):
    report = tilt_summand_check(domexp_word(args.weight, L), L).to_dict()
    report["stabilizer_order"] = stabilizer_order(args.weight, L)
    report["order_WI"] = L.order_WI
    if args.s:
        s = parse_reflection(L.rs, L.p, args.s)
        report["transwall"] = refl_transwall_decompose(args.weight, s, L).to_dict()
    return report


def cmd_peel(args, cfg, L):
    table = TiltingTable.load(args.table)
    multiplicities = greedy_peel(theta_product_char(_word(args, L), L), table, L)
    return {"multiplicities": [{"label": list(k), "count": v} for k, v in sorted(multiplicities.items())]}


def cmd_sections(args, cfg, L):
    kind = SectionKind(args.kind)
    setup = choose_mu(parse_reflection(L.rs, L.p, args.s), L.rs, L.p) if args.s else None
    block = setup.mu if setup and args.transform == "off" else L.rs.zero
    M = _read_char(args, block, L)
    result = {}
    if args.hom:
        xi = parse_weight(args.hom)
        result["hom"] = {
            "label": list(xi),
            HOM_DELTABAR: hom_dim(HOM_DELTABAR, xi, M, L),
            HOM_DELTA: hom_dim(HOM_DELTA, xi, M, L),
        }
    if not args.transform:
        result["skeleton"] = skeleton_from_char(M, kind, L)
        return result
    if setup is None:
        raise UsageError("--transform needs --s")
    sk = skeleton_from_char(M, SectionKind.DELTABAR, L)
    moved = {"onto": onto_wall_transform, "off": off_wall_transform, "theta": theta_transform}[args.transform](sk, setup, L)
    result["skeleton"] = deltabar_to_delta(moved, L) if kind is SectionKind.DELTA else moved
    return result


def cmd_verify(args, cfg: CliConfig) -> int:
    from src.jobs.run_verify import recent_runs, run
    from src.oracle.verify import VerifyConfig

    history = Path(cfg.history_file) if cfg.history_file else None
    if args.history:
        print(render(recent_runs(history), cfg.output_format))
        return 0
    levi = parse_levi(cfg.levi) if cfg.levi else None
    vcfg = VerifyConfig(
        type_spec=cfg.type_spec,
        p=cfg.p,
        levis=(levi,) if levi is not None else None,
        box=cfg.box,
        max_d=cfg.max_d,
        seed=cfg.seed,
        samples=cfg.samples,
        rank_cap=cfg.rank_cap,
    )
    report = run(vcfg, save=not args.no_save, history_file=history)
    print(report.to_jsonl())
    return 0 if report.passed else REPORT_FAILED


def cmd_table(args, cfg: CliConfig) -> int:
    from src.jobs.build_table import default_path, run

    out = args.out or default_path(cfg.p, args.d_min, args.d_max)
    table = run(cfg.p, args.d_min, args.d_max, out)
    print(render({"entries": len(table), "path": str(out)}, cfg.output_format))
    return 0


COMMANDS = {
    "describe": cmd_describe,
    "dot": cmd_dot,
    "d": cmd_d,
    "uparrow": cmd_uparrow,
    "orbit-rep": cmd_orbit_rep,
    "ni": cmd_ni,
    "mu": cmd_mu,
    "translate": cmd_translate,
    "theta": cmd_theta,
    "domexp": cmd_domexp,
    "tilt-product": cmd_tilt_product,
    "tilt-check": cmd_tilt_check,
    "peel": cmd_peel,
    "sections": cmd_sections,
}

JOBS = {
    "verify": cmd_verify,
    "table": cmd_table,
}


def _configure_logging(args: Optional[argparse.Namespace]) -> None:
    level = logging.INFO
    if args is not None and args.verbose:
        level = logging.DEBUG
    elif args is not None and args.quiet:
        level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def run(argv: Optional[List[str]] = None) -> int:
    """Parse argv, dispatch, print the result; returns the process exit code."""
    args = None
    output_format = "text"
    try:
        args = build_parser().parse_args(argv)
        _configure_logging(args)
        cfg = resolve_config(
            preset=args.preset,
            config_path=args.config,
            overrides={
                "type_spec": args.type_spec,
                "p": args.p,
                "levi": args.levi,
                "output_format": args.output_format,
                "rank_cap": args.rank_cap,
                "box": getattr(args, "box", None),
                "max_d": getattr(args, "max_d", None),
                "seed": getattr(args, "seed", None),
                "samples": getattr(args, "samples", None),
                "history_file": getattr(args, "history_file", None),
            },
        )
        output_format = cfg.output_format
        if args.command == "verify" and args.history:
            return cmd_verify(args, cfg)
        cfg.require()
        if args.command in JOBS:
            return JOBS[args.command](args, cfg)
        result = COMMANDS[args.command](args, cfg, _levi(cfg))
    except AlcalcError as e:
        if args is None:
            _configure_logging(None)
        logger.debug(f"{args.command if args else 'alcalc'} failed: {e}")
        message = json.dumps(e.to_dict(), sort_keys=True, default=str) if output_format == "json" else str(e)
        print(message, file=sys.stderr)
        return exit_code_for(e)

    print(render(result, output_format))
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
