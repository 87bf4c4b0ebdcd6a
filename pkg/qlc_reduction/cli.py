"""
Command-line entry point. Each subcommand loads its inputs, calls one
operation of the library and turns the outcome into a :class:`Report`
that is printed for humans or as stable JSON.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple
import argparse
import csv
import io
import json
import logging
import sys
import time

from . import countermodel, grid, reduction
from .exceptions import QLCError, UsageError
from .semantics import Evaluator, dump_model, load_model, validate_model
from .settings import Settings
from .syntax import parse_formula, print_formula, to_positive
from .tiles import TileGrid, check_boundary, load_tiles, solve_window
from .turing import (build_window, halting_step, load_machine, machine_tiles,
                     rows_equal_configs, run_blank, tm_to_tiles, validate_tm,
                     window_width)
from .utils import parse_cell, stable_json

logger = logging.getLogger(__name__)

PASS, PARTIAL, FAIL, ERROR = 'pass', 'partial', 'fail', 'error'
EXIT_CODES = {PASS: 0, PARTIAL: 0, FAIL: 1, ERROR: 2}


@dataclass
class Report(object):
    command: str
    status: str
    findings: List[dict] = field(default_factory=list)
    body: Optional[str] = None
    timing: float = 0.0

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_dict(self) -> dict:
        out = {'command': self.command, 'status': self.status,
               'findings': self.findings}
        if self.body is not None:
            out['body'] = self.body
        return out


def _render_finding(finding: dict) -> str:
    return '  ' + ' '.join(
        f'{k}={json.dumps(v, sort_keys=True, ensure_ascii=False)}'
        for k, v in sorted(finding.items()) if v is not None)


def emit_report(r: Report, as_json: bool = False) -> str:
    """
    Renders ``r``. JSON output is sorted and leaves out the timing so
    that identical inputs give identical text. Human output is the body
    when the command produces one, and otherwise a status line followed
    by one line per finding.
    """
    if as_json:
        return stable_json(r.to_dict())
    if r.body is not None:
        return r.body
    lines = [f'{r.status.upper()} ({len(r.findings)} findings)']
    lines.extend(_render_finding(f) for f in r.findings)
    return '\n'.join(lines)


def _csv(rows: List[dict], fields: Sequence[str]) -> str:
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=list(fields),
                            lineterminator='\n', extrasaction='ignore')
    writer.writeheader()
    writer.writerows(rows)
    return out.getvalue().rstrip('\n')


def _machine_or_fail(path: str, command: str):
    machine = load_machine(path)
    report = validate_tm(machine)
    if not report.is_valid:
        return machine, Report(command, FAIL,
                               [v.to_dict() for v in report.violations])
    return machine, None


def cmd_grid(args, settings: Settings) -> Report:
    rows = grid.grid_table(args.upto)
    return Report('grid', PASS, rows, _csv(rows, grid.CSV_FIELDS))


def cmd_reduce(args, settings: Settings) -> Report:
    ts = load_tiles(args.tiles)
    mode = reduction.PSI if args.psi else reduction.PHI
    if args.conjunct is not None:
        named = reduction.conjuncts(ts, mode)
        if args.conjunct not in named:
            raise UsageError(f'unknown conjunct "{args.conjunct}"; choose '
                               f'from {", ".join(named)}')
        f = named[args.conjunct]
        if args.positive:
            f = to_positive(f)
    elif mode == reduction.PSI:
        f = (reduction.build_psi_positive(ts) if args.positive
             else reduction.build_psi(ts))
    else:
        f = (reduction.build_phi_positive(ts) if args.positive
             else reduction.build_phi(ts))
    text = print_formula(f)
    return Report('reduce', PASS, [{'formula': text}], text)


def cmd_tile_solve(args, settings: Settings) -> Report:
    ts = load_tiles(args.tiles)
    fixed = {}
    for cell in args.fix or []:
        i, j, t = parse_cell(cell)
        fixed[(i, j)] = t
    g = solve_window(ts, args.width, args.height, fixed,
                     settings.solver_node_limit)
    if g is None:
        return Report('tile-solve', FAIL, [], 'no tiling')
    return Report('tile-solve', PASS, [g.to_dict()], g.render())


def cmd_tm_run(args, settings: Settings) -> Report:
    machine, invalid = _machine_or_fail(args.machine, 'tm-run')
    if invalid:
        return invalid
    configs = run_blank(machine, args.steps)
    findings = [{'k': k, 'state': c.state, 'head': c.head,
                 'tape': list(c.tape)} for k, c in enumerate(configs)]
    body = '\n'.join(f'{k}: {c}' for k, c in enumerate(configs))
    return Report('tm-run', PASS, findings, body)


def cmd_tm_tiles(args, settings: Settings) -> Report:
    machine, invalid = _machine_or_fail(args.machine, 'tm-tiles')
    if invalid:
        return invalid
    findings = [dict(tile.to_dict(), name=name)
                for name, tile in machine_tiles(machine)]
    return Report('tm-tiles', PASS, findings,
                  stable_json({'tiles': findings}))


def cmd_verify_tm(args, settings: Settings) -> Report:
    machine, invalid = _machine_or_fail(args.machine, 'verify-tm')
    if invalid:
        return invalid
    rows_ok = rows_equal_configs(machine, args.rows)
    window = build_window(machine, args.rows)
    h = halting_step(machine, args.rows - 1)
    finding = {'rows': args.rows, 'rows_equal_configs': rows_ok,
               'halting_step': h,
               'column0_has_t1': 1 in window.column(0)}
    ok = rows_ok
    if h is not None and h + 1 < args.rows:
        boundary = check_boundary(window, tm_to_tiles(machine), h + 1)
        finding['boundary_jstar'] = h + 1
        finding['boundary_holds'] = boundary
        ok = ok and boundary
    return Report('verify-tm', PASS if ok else FAIL, [finding])


def _tiles_and_grid(args, settings: Settings, size: int):
    """
    The tile set and a tiling covering every index up to ``size``. A
    tiling read with ``--grid`` is checked when the model is built.
    """
    width, height = countermodel.window_for_size(size)
    if args.machine is not None:
        machine, invalid = _machine_or_fail(args.machine, args.command)
        if invalid:
            raise UsageError('the machine violates the program conditions')
        ts = tm_to_tiles(machine)
        width = max(width, window_width(machine, height))
        return ts, build_window(machine, height, width)
    if args.tiles is None:
        raise UsageError('either --tiles or --machine is required')
    ts = load_tiles(args.tiles)
    if args.grid is not None:
        return ts, TileGrid.from_json(args.grid)
    g = countermodel.solve_for_size(ts, size, settings.solver_node_limit)
    return ts, g


def cmd_model_build(args, settings: Settings) -> Report:
    ts, g = _tiles_and_grid(args, settings, args.size)
    if g is None:
        return Report('model-build', FAIL, [], 'no tiling')
    m = countermodel.build_countermodel(ts, g, args.size)
    text = stable_json(dump_model(m.model))
    if args.output:
        with open(args.output, 'w', encoding='utf-8') as f:
            f.write(text + '\n')
        return Report('model-build', PASS, [{'output': args.output}])
    return Report('model-build', PASS, [], text)


def cmd_model_check(args, settings: Settings) -> Report:
    m = load_model(args.model)
    report = validate_model(m)
    if not report.is_valid:
        return Report('model-check', FAIL,
                      [v.to_dict() for v in report.violations])
    f = parse_formula(args.formula, arities=m.arities)
    ev = Evaluator(m, memoize=settings.memoize)
    forced = ev.forces(args.world, {}, f)
    finding = {'formula': print_formula(f), 'world': args.world,
               'forced': forced}
    if not forced:
        witness = ev.find_counterexample(args.world, {}, f)
        finding['witness'] = witness.to_dict()
    return Report('model-check', PASS if forced else FAIL, [finding])


def cmd_verify_lemma1(args, settings: Settings) -> Report:
    margin = settings.margin if args.margin is None else args.margin
    mode = reduction.PSI if args.psi else reduction.PHI
    ts, g = _tiles_and_grid(args, settings, args.size)
    if g is None:
        return Report('verify-lemma1', FAIL, [{'tiling': None}])
    m = countermodel.build_countermodel(ts, g, args.size)
    ev = Evaluator(m.model, memoize=settings.memoize)
    report = countermodel.conjunct_report(m, margin, mode, settings.workers,
                                          ev, progress=args.progress)
    findings = [f.to_dict() for f in report.findings]
    if report.preceq_agrees is not None:
        findings.append({'name': 'preceq_is_order',
                         'value': report.preceq_agrees})
    return Report('verify-lemma1', report.status, findings)


def cmd_verify_sublemma(args, settings: Settings) -> Report:
    size = countermodel.required_size(args.kmax, settings.sublemma_padding)
    args.size = size
    ts, g = _tiles_and_grid(args, settings, size)
    if g is None:
        return Report('verify-sublemma', FAIL, [{'tiling': None}])
    m = countermodel.build_countermodel(ts, g, size)
    ev = Evaluator(m.model, memoize=settings.memoize)
    rows = countermodel.sublemma_table(m, args.kmax, ev)
    ok = all(r['right'] == r['right_prime'] and r['above'] == r['above_prime']
             and r['wall'] == r['wall_prime'] for r in rows)
    fields = ['k', 'right', 'right_prime', 'above', 'above_prime']
    return Report('verify-sublemma', PASS if ok else FAIL, rows,
                  _csv(rows, fields))


COMMANDS: Dict[str, Callable] = {
    'grid': cmd_grid,
    'reduce': cmd_reduce,
    'tile-solve': cmd_tile_solve,
    'tm-run': cmd_tm_run,
    'tm-tiles': cmd_tm_tiles,
    'verify-tm': cmd_verify_tm,
    'model-build': cmd_model_build,
    'model-check': cmd_model_check,
    'verify-lemma1': cmd_verify_lemma1,
    'verify-sublemma': cmd_verify_sublemma
}


class _Parser(argparse.ArgumentParser):

    def error(self, message):
        raise UsageError(f'{self.prog}: {message}')


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='qlc-reduction',
                     description='Tiling reductions for the logic of linear '
                                 'Kripke frames and their finite checks.')
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)
    sub.required = True

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument('--json', action='store_true',
                       help='print the report as JSON')
        return p

    p = add('grid', 'tabulate the grid enumeration')
    p.add_argument('--upto', type=int, required=True)

    p = add('reduce', 'print the formula built from a tile set')
    p.add_argument('--tiles', required=True)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument('--phi', action='store_true')
    which.add_argument('--psi', action='store_true')
    p.add_argument('--positive', action='store_true',
                   help='replace bottom by forall x. Q\'(x)')
    p.add_argument('--conjunct', help='print only the named conjunct')

    p = add('tile-solve', 'search a tiling of a finite window')
    p.add_argument('--tiles', required=True)
    p.add_argument('--width', type=int, required=True)
    p.add_argument('--height', type=int, required=True)
    p.add_argument('--fix', nargs='*', metavar='I,J,T',
                   help='cells with a fixed tile index')

    for name, help_text in (('tm-run', 'run a machine on the blank tape'),
                            ('tm-tiles', 'print the tile set of a machine'),
                            ('verify-tm', 'check the machine tiling')):
        p = add(name, help_text)
        p.add_argument('machine')
        if name == 'tm-run':
            p.add_argument('--steps', type=int, required=True)
        if name == 'verify-tm':
            p.add_argument('--rows', type=int, required=True)

    p = add('model-build', 'write the truncated countermodel')
    p.add_argument('--tiles')
    p.add_argument('--machine')
    p.add_argument('--grid', help='tiling to use instead of searching one')
    p.add_argument('--size', type=int, required=True)
    p.add_argument('--output', help='write the model to this file')

    p = add('model-check', 'evaluate a closed formula on a model file')
    p.add_argument('model')
    p.add_argument('--formula', required=True)
    p.add_argument('--world', type=int, default=0)

    p = add('verify-lemma1', 'evaluate every conjunct on the countermodel')
    p.add_argument('--tiles')
    p.add_argument('--machine')
    p.add_argument('--grid', help='tiling to use instead of searching one')
    p.add_argument('--size', type=int, required=True)
    p.add_argument('--margin', type=int)
    p.add_argument('--psi', action='store_true')
    p.add_argument('--progress', action='store_true',
                   help='show a progress bar when tqdm is installed')

    p = add('verify-sublemma', 'compare right/above with their '
                               'evaluator-defined counterparts')
    p.add_argument('--tiles')
    p.add_argument('--machine')
    p.add_argument('--grid', help='tiling to use instead of searching one')
    p.add_argument('--kmax', type=int, required=True)
    return parser


def run(argv: Optional[Sequence[str]] = None,
        settings: Settings = None) -> Tuple[int, Report]:
    """Parses ``argv``, runs the subcommand and returns its exit code and report."""
    argv = list(sys.argv[1:] if argv is None else argv)
    settings = settings or Settings.from_environment()
    echo = ' '.join(argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        logger.error(str(e))
        return 2, Report(echo, ERROR, [{'error': str(e)}])

    started = time.perf_counter()
    try:
        report = COMMANDS[args.command](args, settings)
    except (QLCError, OSError, ValueError) as e:
        logger.debug('Command failed.', exc_info=True)
        logger.error(f'{args.command}: {e}')
        report = Report(args.command, ERROR, [{'error': str(e)}])
    report.command = echo
    report.timing = time.perf_counter() - started
    logger.info(f'{args.command} finished with status {report.status} in '
                f'{report.timing:.3f}s.')
    return report.exit_code, report


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    code, report = run(argv)
    print(emit_report(report, '--json' in argv))
    return code
