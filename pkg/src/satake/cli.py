"""Command-line front end.

Exit codes: 0 ok, 2 validation error, 3 verification failure, 4 envelope
exceeded.  Failures print a one-line JSON diagnostic on stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__
from .charalg import m_element
from .errors import SatakeError, ValidationError
from .hecke import (
    HeckeAlgebraHandle,
    double_coset_basis,
    ic_metadata,
    structure_constants,
    structure_table,
)
from .kostka import kostka_foulkes
from .oracle import convolve_count, satake_count, satake_vector
from .qpoly import QMode
from .rootdata import (
    RootDatum,
    ShiftCovector,
    antidominant_fixed_weights,
    catalog,
    get_datum,
    load_datum,
    shift_from_weight,
)
from .verify import run_all

FORMATS = ("text", "csv", "json")


@dataclass(frozen=True)
class JobConfig:
    datum: RootDatum
    shift: ShiftCovector
    mode: QMode
    height: int
    spread: int
    fmt: str
    seed: int

    @property
    def handle(self) -> HeckeAlgebraHandle:
        return HeckeAlgebraHandle(self.datum, self.shift, self.mode)


def parse_weight(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"weights are comma-separated integers, got {text!r}")


def parse_shift(datum: RootDatum, spec: str) -> ShiftCovector:
    """``rho`` or ``rho+w:v1,v2,...``."""
    if spec == "rho":
        return datum.rho_ad
    if spec.startswith("rho+w:"):
        return datum.rho_ad + shift_from_weight(datum, parse_weight(spec[len("rho+w:"):]))
    raise ValidationError(f"shift must be 'rho' or 'rho+w:v1,...', got {spec!r}")


def parse_q(text: str) -> Optional[int]:
    if text == "symbolic":
        return None
    try:
        q = int(text)
    except ValueError:
        raise ValidationError(f"q must be 'symbolic' or an integer, got {text!r}")
    if q < 2:
        raise ValidationError(f"numeric q must be at least 2, got {q}")
    return q


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("bounds must be positive")
    return v


def job_config(args: argparse.Namespace) -> JobConfig:
    if args.datum_file:
        datum = load_datum(args.datum_file)
    else:
        datum = get_datum(args.datum)
    return JobConfig(
        datum=datum,
        shift=parse_shift(datum, args.shift),
        mode=QMode(parse_q(args.q)),
        height=args.height,
        spread=args.spread,
        fmt=args.format,
        seed=args.seed,
    )


# ---------------------------------------------------------------------------
# rendering


def fmt_weight(w: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in w) + ")"


def render(fmt: str, header: Sequence[str], rows: List[Sequence], extra: Optional[Dict] = None) -> str:
    if fmt == "json":
        payload = dict(extra or {})
        payload["rows"] = [dict(zip(header, (str(c) for c in row))) for row in rows]
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([str(c) for c in row])
        return buf.getvalue()
    lines = []
    for key, value in (extra or {}).items():
        lines.append(f"# {key}: {value}")
    widths = [max(len(str(h)), *(len(str(r[i])) for r in rows)) if rows else len(str(h)) for i, h in enumerate(header)]
    lines.append("  ".join(str(h).ljust(w) for h, w in zip(header, widths)).rstrip())
    for row in rows:
        lines.append("  ".join(str(c).ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _meta(cfg: JobConfig) -> Dict[str, str]:
    return {
        "datum": cfg.datum.name,
        "shift": str(cfg.shift),
        "q": "symbolic" if cfg.mode.symbolic else str(cfg.mode.q),
    }


# ---------------------------------------------------------------------------
# commands


def cmd_catalog(cfg: Optional[JobConfig], args) -> Tuple[str, int]:
    fmt = args.format
    rows = []
    for name, d in catalog().items():
        rows.append((name, d.rank, d.r, len(d.positive_roots), d.sigma_order))
    return render(fmt, ("name", "rank", "simple_roots", "positive_roots", "sigma_order"), rows), 0


def cmd_mbasis(cfg: JobConfig, args) -> Tuple[str, int]:
    x = m_element(cfg.datum, cfg.shift, args.l, cfg.mode)
    rows = [(fmt_weight(w), cfg.mode.format(c)) for w, c in x.terms.items()]
    return render(cfg.fmt, ("weight", "coefficient"), rows, {**_meta(cfg), "lambda": fmt_weight(args.l)}), 0


def cmd_structconst(cfg: JobConfig, args) -> Tuple[str, int]:
    h = cfg.handle
    if args.l is not None and args.m is not None:
        table = structure_constants(h, args.l, args.m)
        rows = [(fmt_weight(args.l), fmt_weight(args.m), fmt_weight(k), cfg.mode.format(c)) for k, c in table.items()]
    elif args.l is None and args.m is None:
        weights = antidominant_fixed_weights(cfg.datum, cfg.height)
        rows = [(fmt_weight(a), fmt_weight(b), fmt_weight(k), cfg.mode.format(c)) for a, b, k, c in structure_table(h, weights)]
    else:
        raise ValidationError("give both --l and --m, or neither for the full table")
    return render(cfg.fmt, ("lambda", "mu", "kappa", "coefficient"), rows, _meta(cfg)), 0


def cmd_satake_dc(cfg: JobConfig, args) -> Tuple[str, int]:
    h = HeckeAlgebraHandle(cfg.datum, cfg.datum.rho_ad, QMode())
    x = double_coset_basis(h, args.mu)
    rows = [(fmt_weight(k), cfg.mode.format(cfg.mode.coerce(c))) for k, c in x.coords.items()]
    meta = {**_meta(cfg), "mu": fmt_weight(args.mu), "sign": ic_metadata(h, args.mu)["sign"]}
    return render(cfg.fmt, ("m_index", "coefficient"), rows, meta), 0


def cmd_kostka(cfg: JobConfig, args) -> Tuple[str, int]:
    k = kostka_foulkes(cfg.datum, args.mu, args.lam)
    value = cfg.mode.format(cfg.mode.coerce(k))
    rows = [(fmt_weight(args.mu), fmt_weight(args.lam), value)]
    return render(cfg.fmt, ("mu", "lambda", "K"), rows, {"datum": cfg.datum.name}), 0


def cmd_oracle(cfg: JobConfig, args) -> Tuple[str, int]:
    if cfg.mode.symbolic:
        raise ValidationError("the oracle needs a numeric --q")
    q = cfg.mode.q
    mu = args.mu
    if mu is None:
        raise ValidationError("--mu is required")
    n = len(mu)
    meta = {"n": n, "q": q, "mu": fmt_weight(mu)}
    if args.query == "count":
        if args.lam is None:
            raise ValidationError("count needs --lam")
        c = satake_count(n, q, mu, args.lam, spread=cfg.spread)
        rows = [(fmt_weight(args.lam), c)]
        return render(cfg.fmt, ("lambda", "count"), rows, meta), 0
    if args.query == "vector":
        x = satake_vector(n, q, mu, spread=cfg.spread)
        rows = [(fmt_weight(w), c) for w, c in x.terms.items()]
        return render(cfg.fmt, ("lambda", "count"), rows, meta), 0
    if args.nu is None or args.kappa is None:
        raise ValidationError("convolve needs --nu and --kappa")
    c = convolve_count(n, q, mu, args.nu, args.kappa, spread=cfg.spread)
    rows = [(fmt_weight(args.nu), fmt_weight(args.kappa), c)]
    return render(cfg.fmt, ("nu", "kappa", "count"), rows, meta), 0


def cmd_verify(cfg: Optional[JobConfig], args) -> Tuple[str, int]:
    q = None if cfg is None else cfg.mode.q
    name = None if args.all else args.datum
    results = run_all(name, q=q, seed=args.seed)
    ok = all(r.ok for r in results)
    if args.format == "text":
        body = "\n".join(r.report() for r in results)
        total = sum(r.checks for r in results)
        body += f"\n{'PASS' if ok else 'FAIL'}: {len(results)} criteria, {total} checks\n"
    else:
        rows = [(r.number, r.title, "PASS" if r.ok else "FAIL", r.checks, " | ".join(r.failures[:5])) for r in results]
        body = render(args.format, ("criterion", "title", "status", "checks", "counterexamples"), rows, {"datum": name or "all"})
    return body, 0 if ok else 3


COMMANDS = {
    "catalog": cmd_catalog,
    "mbasis": cmd_mbasis,
    "structconst": cmd_structconst,
    "satake-dc": cmd_satake_dc,
    "kostka": cmd_kostka,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--datum", default="GL2", help="catalog name (default GL2)")
    common.add_argument("--datum-file", help="JSON root-datum file; overrides --datum")
    common.add_argument("--shift", default="rho", help="'rho' or 'rho+w:v1,...'")
    common.add_argument("--q", default="symbolic", help="'symbolic' or a prime power")
    common.add_argument("--height", type=_positive, default=3, help="height bound for tables")
    common.add_argument("--spread", type=_positive, default=4, help="coweight spread bound for the oracle")
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--seed", type=int, default=20240601)
    common.add_argument("--out", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="satake", description="Integral spherical Hecke algebras via the invariant-ring model.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("catalog", parents=[common], help="list built-in root data")

    p = sub.add_parser("mbasis", parents=[common], help="print m_lambda in the lattice algebra")
    p.add_argument("--l", type=parse_weight, required=True)

    p = sub.add_parser("structconst", parents=[common], help="structure constants of the m-basis")
    p.add_argument("--l", type=parse_weight)
    p.add_argument("--m", type=parse_weight)

    p = sub.add_parser("satake-dc", parents=[common], help="m-coordinates of 1_{K mu K} (split data)")
    p.add_argument("--mu", type=parse_weight, required=True)

    p = sub.add_parser("kostka", parents=[common], help="Kostka-Foulkes polynomial K_{mu,lam}")
    p.add_argument("--mu", type=parse_weight, required=True)
    p.add_argument("--lam", type=parse_weight, required=True)

    p = sub.add_parser("oracle", parents=[common], help="brute-force GL_n counts over F_q((t))")
    p.add_argument("query", choices=("count", "vector", "convolve"))
    p.add_argument("--mu", type=parse_weight)
    p.add_argument("--lam", type=parse_weight)
    p.add_argument("--nu", type=parse_weight)
    p.add_argument("--kappa", type=parse_weight)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance checks tagged for --datum")
    p.add_argument("--all", action="store_true", help="ignore --datum and run every check")
    return parser


WEIGHT_FLAGS = ("--l", "--m", "--mu", "--lam", "--nu", "--kappa")
_WEIGHT = re.compile(r"^-?\d+(,-?\d+)*$")


def _glue_negative_weights(argv: Sequence[str]) -> List[str]:
    """Let ``--l -1,0,1`` through; argparse would read -1,0,1 as an option."""
    out: List[str] = []
    it = iter(argv)
    for tok in it:
        if tok in WEIGHT_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            elif _WEIGHT.match(nxt):
                out.append(f"{tok}={nxt}")
            else:
                out.extend([tok, nxt])
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_negative_weights(sys.argv[1:] if argv is None else argv))
    try:
        cfg = None if args.command == "catalog" else job_config(args)
        text, code = COMMANDS[args.command](cfg, args)
    except SatakeError as exc:
        diag = {"command": args.command, "error": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code}
        print(json.dumps(diag, sort_keys=True), file=sys.stderr)
        return exc.exit_code
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
