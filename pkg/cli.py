import argparse
import re
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from lightning.pytorch.loggers import CSVLogger
from sympy import isprime

import config
from curves.families import CurveFamily, Family
from curves.hasse_witt import frobenius_trace
from datamodules.split_filters import FieldTag, split_filter_for
from groups.endo_types import fixed_subalgebra, lattice_report
from groups.haar_moments import haar_moments, write_moments_csv
from groups.st_groups import builtin_group, component_group_profile
from models.trace_scanner import emit_csv, scan, show_results

FILTER_ALIASES = {
    "q": FieldTag.Q,
    "qi-sqrt2-c4": FieldTag.Q_i_sqrt2_c14,
    "qi-sqrt3-c3": FieldTag.Q_i_sqrt3_c13,
    "qi-m3-4": FieldTag.Q_i_minus3_14,
    "qi-m3-4-c6": FieldTag.Q_i_minus3_14_c16,
    "qi-c3-sqrt-cm3": FieldTag.Q_i_c13_sqrt_c_minus3,
}


@dataclass
class RunConfig:
    subcommand: str
    family: Optional[str] = None
    c: Optional[Fraction] = None
    p: Optional[int] = None
    limit: int = config.LIMIT
    filter: str = "q"
    bins: int = config.BINS
    threads: int = config.NUM_WORKERS
    chunk_size: int = config.CHUNK_SIZE
    quadrature: int = config.QUADRATURE_POINTS
    group: Optional[str] = None
    coeff: str = "a1"
    nmax: int = 8
    subgroup: Optional[str] = None
    output: Optional[str] = None
    strategy: str = config.SQRT_STRATEGY
    seed: int = config.SEED
    log: bool = True
    verbose: bool = True


def parse_limit(text: str) -> int:
    """'2^22', '2**22' or a plain integer."""
    m = re.fullmatch(r"\s*(\d+)\s*(?:\^|\*\*)\s*(\d+)\s*", text)
    if m:
        return int(m.group(1)) ** int(m.group(2))
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid limit {text!r}; use an integer or 2^k") from None


def parse_rational(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid rational {text!r}; use num/den or an integer") from None
    if value == 0:
        raise argparse.ArgumentTypeError("c must be nonzero")
    return value


def parse_filter(text: str) -> FieldTag:
    key = text.lower()
    if key in FILTER_ALIASES:
        return FILTER_ALIASES[key]
    try:
        return FieldTag(text)
    except ValueError:
        raise KeyError(f"unknown filter {text!r}; choose from {', '.join(FILTER_ALIASES)}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cli.py",
        description="Frobenius traces, moment scans and Sato-Tate groups of y^2=x^8+c and y^2=x^7-cx.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_curve(p):
        p.add_argument("--family", choices=[f.value for f in Family], required=True, help="c1: y^2=x^8+c, c2: y^2=x^7-cx")
        p.add_argument("--c", type=parse_rational, required=True, help="nonzero rational, num/den or integer")
        p.add_argument("--strategy", choices=["tonelli-shanks", "cipolla"], default=config.SQRT_STRATEGY, help="square-root algorithm")
        p.add_argument("--seed", type=int, default=config.SEED, help="seed for the randomized square root")

    p_trace = sub.add_parser("trace", help="print p,t_p,a1 for one prime")
    add_curve(p_trace)
    p_trace.add_argument("--p", type=int, required=True, help="good odd prime below 2^62")

    p_scan = sub.add_parser("scan", help="moment statistics of a1 over primes up to a limit")
    add_curve(p_scan)
    p_scan.add_argument("--limit", type=parse_limit, default=config.LIMIT, help="upper bound N, e.g. 2^22")
    p_scan.add_argument("--filter", default="q", help=f"prime filter: {', '.join(FILTER_ALIASES)}")
    p_scan.add_argument("--bins", type=int, default=config.BINS, help="histogram bins over [-6, 6]")
    p_scan.add_argument("--threads", type=int, default=config.NUM_WORKERS, help="worker processes (env SATOTATE_NUM_WORKERS)")
    p_scan.add_argument("--chunk-size", type=int, default=config.CHUNK_SIZE, help="width of each sieve chunk")
    p_scan.add_argument("--output", help="output stem for .moments.csv and .hist.csv")
    p_scan.add_argument("--no-log", dest="log", action="store_false", help="skip the CSVLogger run directory")

    p_st = sub.add_parser("st-moments", help="Haar moments of a Sato-Tate group")
    p_st.add_argument("--group", required=True, help="builtin group, e.g. st-c2-generic")
    p_st.add_argument("--coeff", choices=["a1", "a2", "a3"], default="a1", help="characteristic-polynomial coefficient")
    p_st.add_argument("--nmax", type=int, default=8, help="highest moment")
    p_st.add_argument("--quadrature", type=int, default=config.QUADRATURE_POINTS, help="points per torus angle")
    p_st.add_argument("--output", help="CSV path (n,Mn)")

    p_comp = sub.add_parser("components", help="component group profile of a Sato-Tate group")
    p_comp.add_argument("--group", required=True, help="builtin group, e.g. st-c1-generic")

    p_endo = sub.add_parser("endotype", help="fixed subalgebra of V_R under a subgroup of ST(C2)")
    p_endo.add_argument("--subgroup", required=True, help='generator words in r, s, t, e.g. "t" or "(rs)^2,s"')

    p_lat = sub.add_parser("lattice", help="fixed subalgebras for every subgroup class of ST(C2)")
    p_lat.add_argument("--output", help="CSV path")

    for p in (p_scan, p_st, p_lat):
        p.add_argument("--quiet", dest="verbose", action="store_false", help="no progress bars")
    return parser


def _family(cfg: RunConfig) -> CurveFamily:
    return CurveFamily(Family(cfg.family), cfg.c)


def cmd_trace(cfg: RunConfig) -> None:
    if cfg.p < 3 or not isprime(cfg.p):
        raise ValueError(f"p={cfg.p} is not an odd prime")
    record = frobenius_trace(_family(cfg), cfg.p, strategy=cfg.strategy, seed=cfg.seed)
    print(f"{record.p},{record.t},{record.a1:.10f}")


def cmd_scan(cfg: RunConfig) -> None:
    fam = _family(cfg)
    split_filter = split_filter_for(parse_filter(cfg.filter), fam)
    if cfg.bins <= 0 or cfg.threads <= 0:
        raise ValueError("bins and threads must be positive")
    stem = cfg.output or str(Path(config.OUTPUT_DIR) / f"{fam.family.value}_c{fam.c.numerator}_{fam.c.denominator}_{cfg.limit}")
    logger = CSVLogger(save_dir=config.LOG_DIR, name=Path(stem).name) if cfg.log else None

    start = time.perf_counter()
    report = scan(
        fam,
        cfg.limit,
        split_filter,
        bins=cfg.bins,
        threads=cfg.threads,
        strategy=cfg.strategy,
        seed=cfg.seed,
        chunk_size=cfg.chunk_size,
        logger=logger,
        verbose=cfg.verbose,
    )
    elapsed = time.perf_counter() - start
    moments_path, hist_path = emit_csv(report, stem)

    summary = {
        "count": report.count,
        "M2": report.moments[1],
        "M4": report.moments[3],
        "zero_fraction": report.zero_fraction,
        "elapsed_s": elapsed,
    }
    show_results(summary)
    print(f"wrote {moments_path} and {hist_path}")


def cmd_st_moments(cfg: RunConfig) -> None:
    G = builtin_group(cfg.group)
    seq = haar_moments(G, cfg.coeff, cfg.nmax, Q=cfg.quadrature, verbose=cfg.verbose)
    print("n,Mn")
    for n in range(1, len(seq)):
        print(f"{n},{seq.rounded()[n]}")
    if cfg.output:
        write_moments_csv(seq, cfg.output)


def cmd_components(cfg: RunConfig) -> None:
    profile = component_group_profile(builtin_group(cfg.group))
    orders = " ".join(f"{k}:{v}" for k, v in profile.element_orders)
    print("order,abelian,element_orders")
    print(f"{profile.order},{profile.is_abelian},{orders}")


def cmd_endotype(cfg: RunConfig) -> None:
    algebra = fixed_subalgebra(cfg.subgroup)
    print("subgroup,dim,commutative,center_dim,identified_algebra")
    print(f"\"{algebra.label}\",{algebra.dim},{algebra.commutative},{algebra.center_dim},{algebra.identified_algebra}")


def cmd_lattice(cfg: RunConfig) -> None:
    frame = lattice_report(path=cfg.output, verbose=cfg.verbose)
    print(frame.to_csv(index=False), end="")


COMMANDS = {
    "trace": cmd_trace,
    "scan": cmd_scan,
    "st-moments": cmd_st_moments,
    "components": cmd_components,
    "endotype": cmd_endotype,
    "lattice": cmd_lattice,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fields = RunConfig.__dataclass_fields__
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if k in fields})
    try:
        COMMANDS[cfg.subcommand](cfg)
    except (ValueError, KeyError) as err:
        print(f"error: {err.args[0] if isinstance(err, KeyError) and err.args else err}", file=sys.stderr)
        return 2
    except (OSError, RuntimeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
