"""
Command-line front end.

Usage examples:
  qws charpoly graph.json --delete 0,3
  qws smatrix p2.json --k -pi/4 --method all
  qws check-pt example1.json --k -pi/4
  qws search --library library/ --k -pi/4 --max-total 13
  qws hyperbola --k -pi/4 --samples 3 --format csv

Every JSON payload carries ``"schema": "qws/1"``. Logs go to stderr so
stdout stays machine readable.
"""

import argparse
import json
import logging
import sys
from functools import reduce
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from src.admittance.conditions import (
    PERFECT_TRANSMISSION,
    check_pt,
    effective_length,
    smatrix_from_admittance,
)
from src.admittance.triple import admittance, evaluate
from src.designer.library import load_library
from src.designer.search import CompositionQuery, hyperbola_samples, results_frame, search
from src.graphs.io import graph_to_json, load_graph, save_graph
from src.graphs.momentum import Momentum, parse_momentum
from src.graphs.operations import delete_vertices, parallel_compose, series_compose
from src.graphs.scalar import parse_rational
from src.polynomials.charpoly import charpoly, vertex_deleted_charpolys
from src.scattering.calibration import get_calibration
from src.scattering.closed_form import smatrix_closed
from src.scattering.oracle import smatrix_oracle
from src.scattering.smatrix import SMatrix
from src.utils.config import (
    DEFAULT_MAX_PER_BLOCK,
    DEFAULT_MAX_TOTAL_BLOCKS,
    DEFAULT_TOL,
    EXIT_CODES,
    SCHEMA,
    CliConfig,
)
from src.utils.errors import GraphParseError, QwsError

logger = logging.getLogger(__name__)

# options whose values may start with '-' (negative momenta and phases)
_SIGNED_OPTIONS = ('--k', '--y', '--phase')


class _Parser(argparse.ArgumentParser):
    """ArgumentParser exiting with the usage code instead of argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CODES['usage'], f"{self.prog}: error: {message}\n")


def _glue_signed_values(argv: Sequence[str]) -> List[str]:
    """Turn ``--k -pi/4`` into ``--k=-pi/4`` so argparse does not read it as a flag."""
    out: List[str] = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg in _SIGNED_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith('-'):
            out.append(f"{arg}={argv[i + 1]}")
            i += 2
            continue
        out.append(arg)
        i += 1
    return out


def _parse_y(text: str):
    try:
        return parse_rational(text)
    except GraphParseError:
        try:
            return float(text)
        except ValueError as e:
            raise GraphParseError(f"Bad y value: {text!r}") from e


def _parse_vertices(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(',') if v.strip()]
    except ValueError as e:
        raise GraphParseError(f"Bad vertex list: {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='qws', description="Quantum-walk scattering toolkit")
    parser.add_argument('--precision', choices=['float64', 'extended'], default='float64',
                        help="Oracle arithmetic (extended uses mpmath)")
    parser.add_argument('--tol', type=float, default=DEFAULT_TOL, help="Float-path tolerance")
    parser.add_argument('--output', choices=['json', 'csv', 'human'], default='json')
    parser.add_argument('--sign-convention', choices=['path-sum', 'printed'], default='path-sum',
                        dest='sign_convention', help="Display sign of nu")
    parser.add_argument('-v', '--verbose', action='store_true', help="Debug logging on stderr")
    sub = parser.add_subparsers(dest='command', required=True, parser_class=_Parser)

    p = sub.add_parser('charpoly', help="Characteristic polynomial of a graph")
    p.add_argument('file')
    p.add_argument('--delete', type=_parse_vertices, default=None, metavar='V,...')

    p = sub.add_parser('smatrix', help="Scattering matrix at one momentum")
    p.add_argument('file')
    p.add_argument('--k', required=True)
    p.add_argument('--method', choices=['oracle', 'closed', 'munu', 'all'], default='oracle')

    p = sub.add_parser('munu', help="Admittance triple evaluated at k or y")
    p.add_argument('file')
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument('--k')
    group.add_argument('--y')

    p = sub.add_parser('check-pt', help="Perfect transmission test")
    p.add_argument('file')
    p.add_argument('--k', required=True)
    p.add_argument('--tol', type=float, default=None, dest='check_tol')

    p = sub.add_parser('compose', help="Parallel or series composition")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument('--parallel', action='store_true')
    group.add_argument('--series', action='store_true')
    p.add_argument('files', nargs='+')
    p.add_argument('-o', '--out', required=True)

    p = sub.add_parser('search', help="Composition search over a block library")
    p.add_argument('--library', required=True, nargs='+')
    p.add_argument('--k', required=True)
    p.add_argument('--phase', type=float, default=None)
    p.add_argument('--phase-convention', choices=['physical', 'printed'], default='physical')
    p.add_argument('--max-total', type=int, default=DEFAULT_MAX_TOTAL_BLOCKS)
    p.add_argument('--max-per', type=int, default=DEFAULT_MAX_PER_BLOCK)
    p.add_argument('--allow-asymmetric', action='store_true')
    p.add_argument('--workers', type=int, default=1)
    p.add_argument('--no-certify', action='store_true')

    p = sub.add_parser('efflength', help="Effective length at a perfect-transmission momentum")
    p.add_argument('file')
    p.add_argument('--k', required=True)

    p = sub.add_parser('hyperbola', help="Samples of the perfect-transmission hyperbola")
    p.add_argument('--k', required=True)
    p.add_argument('--samples', type=int, default=50)
    p.add_argument('--format', choices=['csv', 'json'], default=None)

    sub.add_parser('calibrate', help="Off-diagonal sign calibration report")
    return parser


def _cmd_charpoly(args, cfg: CliConfig) -> dict:
    g = load_graph(args.file)
    target = delete_vertices(g, args.delete) if args.delete else g
    poly = charpoly(target)
    doc = {
        "schema": SCHEMA,
        "graph_hash": g.graph_hash,
        "deleted": args.delete or [],
        "coefficients": poly.to_json(),
        "polynomial": str(poly),
    }
    if not args.delete:
        doc["vertex_deleted"] = vertex_deleted_charpolys(g).to_json()
    return doc


def _difference(a: SMatrix, b: SMatrix) -> Optional[float]:
    diff = np.abs(a.entries - b.entries)
    if np.isnan(diff).all():
        return None
    return float(np.nanmax(diff))


def _cmd_smatrix(args, cfg: CliConfig) -> dict:
    g = load_graph(args.file)
    k = parse_momentum(args.k)
    methods: Dict[str, Callable[[], SMatrix]] = {
        'oracle': lambda: smatrix_oracle(g, k, cfg.precision),
        'closed': lambda: smatrix_closed(g, k, get_calibration()),
        'munu': lambda: smatrix_from_admittance(evaluate(admittance(g), k.y), k),
    }
    if args.method != 'all':
        return methods[args.method]().to_json()
    computed = {}
    for name, compute in methods.items():
        try:
            computed[name] = compute()
        except QwsError as e:
            if name == 'oracle':
                raise
            logger.warning("Method %s unavailable: %s", name, e)
    names = list(computed)
    differences = {f"{a}-{b}": _difference(computed[a], computed[b])
                   for i, a in enumerate(names) for b in names[i + 1:]}
    return {
        "schema": SCHEMA,
        "method": "all",
        "smatrices": {name: s.to_json() for name, s in computed.items()},
        "differences": differences,
    }


def _cmd_munu(args, cfg: CliConfig) -> dict:
    g = load_graph(args.file)
    y = parse_momentum(args.k).y if args.k is not None else _parse_y(args.y)
    point = evaluate(admittance(g), y, cfg.tol)
    return point.to_json(cfg.nu_display_sign)


def _cmd_check_pt(args, cfg: CliConfig) -> dict:
    g = load_graph(args.file)
    k = parse_momentum(args.k)
    tol = args.check_tol if args.check_tol is not None else cfg.tol
    t = admittance(g)
    pt = check_pt(evaluate(t, k.y, tol), k, tol)
    doc = pt.to_json()
    doc["graph_hash"] = g.graph_hash
    return doc


def _cmd_compose(args, cfg: CliConfig) -> dict:
    graphs = [load_graph(f) for f in args.files]
    if args.parallel:
        composed = parallel_compose(graphs)
    else:
        composed = reduce(series_compose, graphs)
    save_graph(composed, args.out)
    logger.info("Wrote %s (%d vertices)", args.out, composed.n)
    return graph_to_json(composed)


def _cmd_search(args, cfg: CliConfig):
    k = parse_momentum(args.k)
    lib = load_library(args.library, k)
    query = CompositionQuery(
        k=k,
        target_theta=args.phase,
        max_total_blocks=args.max_total,
        max_per_block=args.max_per,
        tol=cfg.tol,
        require_symmetric=not args.allow_asymmetric,
        phase_convention=args.phase_convention,
        certify=not args.no_certify,
    )
    return search(lib, query, workers=args.workers), lib


def _cmd_efflength(args, cfg: CliConfig):
    g = load_graph(args.file)
    k = parse_momentum(args.k)
    t = admittance(g)
    pt = check_pt(evaluate(t, k.y, cfg.tol), k, cfg.tol)
    ok = pt.status == PERFECT_TRANSMISSION and pt.branch == 'regular'
    value = effective_length(t, k, pt) if ok else None
    doc = {
        "schema": SCHEMA,
        "graph_hash": g.graph_hash,
        "effective_length": None if value is None else float(value),
        "exact": None if value is None else str(value),
        "prerequisite": {"status": pt.status, "branch": pt.branch, "satisfied": ok},
    }
    return doc


def _cmd_hyperbola(args, cfg: CliConfig) -> pd.DataFrame:
    return hyperbola_samples(parse_momentum(args.k), args.samples)


def _print_human(title: str, doc: dict):
    print("=" * 70)
    print(title)
    print("=" * 70)
    for key, value in doc.items():
        if key == 'schema':
            continue
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        print(f"  {key}: {value}")


def _emit(doc: dict, cfg: CliConfig, title: str):
    if cfg.output == 'human':
        _print_human(title, doc)
    elif cfg.output == 'csv':
        pd.json_normalize(doc).to_csv(sys.stdout, index=False, float_format='%.17g')
    else:
        print(json.dumps(doc))


def _dispatch(args, cfg: CliConfig) -> int:
    command = args.command
    if command == 'search':
        outcome, lib = _cmd_search(args, cfg)
        if cfg.output == 'csv':
            results_frame(outcome.results, cfg.nu_display_sign).to_csv(
                sys.stdout, index=False, float_format='%.17g')
        elif cfg.output == 'human':
            print("=" * 70)
            print(f"COMPOSITION SEARCH at k={args.k} ({len(lib)} blocks)")
            print("=" * 70)
            for r in outcome.results:
                print(f"✓ {r.label()}  theta={r.pt.theta:.6f}  length={r.effective_length}")
            if not outcome.results:
                print("No solution within the bounds")
        else:
            for r in outcome.results:
                print(json.dumps(r.to_json(cfg.nu_display_sign)))
            if not outcome.results:
                print(json.dumps({"schema": SCHEMA, "status": "no_solution",
                                  "truncated": outcome.truncated}))
        if outcome.truncated or lib.partial:
            logger.warning("Search coverage incomplete (truncated=%s, partial library=%s)",
                           outcome.truncated, lib.partial)
        return EXIT_CODES['ok']
    if command == 'hyperbola':
        frame = _cmd_hyperbola(args, cfg)
        fmt = args.format or ('csv' if cfg.output == 'csv' else 'json')
        if fmt == 'csv':
            frame.to_csv(sys.stdout, index=False, float_format='%.17g')
        elif cfg.output == 'human' and args.format is None:
            print("=" * 70)
            print(f"PERFECT TRANSMISSION HYPERBOLA at k={args.k}")
            print("=" * 70)
            print(frame.to_string(index=False))
        else:
            print(json.dumps({"schema": SCHEMA, "k": parse_momentum(args.k).k,
                              "convention": "printed",
                              "points": frame.to_dict(orient='records')}))
        return EXIT_CODES['ok']
    handlers = {
        'charpoly': (_cmd_charpoly, "CHARACTERISTIC POLYNOMIAL"),
        'smatrix': (_cmd_smatrix, "S-MATRIX"),
        'munu': (_cmd_munu, "ADMITTANCE POINT"),
        'check-pt': (_cmd_check_pt, "PERFECT TRANSMISSION CHECK"),
        'compose': (_cmd_compose, "COMPOSED GRAPH"),
        'efflength': (_cmd_efflength, "EFFECTIVE LENGTH"),
        'calibrate': (lambda a, c: get_calibration().to_json(), "SIGN CALIBRATION"),
    }
    handler, title = handlers[command]
    _emit(handler(args, cfg), cfg, title)
    return EXIT_CODES['ok']


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse ``argv`` and run one subcommand.

    Returns:
        Exit code: 0 ok, 1 usage, 2 parse/validation, 3 numeric
        singularity, 4 resource cap
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_signed_values(argv))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_CODES['usage']
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
        force=True,
    )
    try:
        cfg = CliConfig(args.precision, args.tol, args.output, args.sign_convention)
        return _dispatch(args, cfg)
    except QwsError as e:
        logger.error("%s", e)
        return e.exit_code
    except ZeroDivisionError as e:
        logger.error("Numeric singularity: %s", e)
        return EXIT_CODES['singular']
    except (OSError, ValueError) as e:
        logger.error("%s", e)
        return EXIT_CODES['parse']
