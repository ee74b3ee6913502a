# cli.py
"""
Command-line entry point.

    hypoindex [--report PATH] [--quiet] COMMAND [OPTIONS]

--report and --quiet are accepted before or after the command name.

Commands print plain ``key=value`` lines or CSV on stdout; log echo goes to
stderr. Exit codes: 0 ok, 2 usage, 3 missing input file, 4 invalid instance
or expression, 5 numeric failure or disagreement between the index routes.
"""

import dataclasses
import functools
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import click
import numpy as np

from . import __version__
from .chern_pairing import chern_index
from .config import settings
from .contact_data import instance_digest, parse_instance, validate_instance
from .errors import HypoIndexError, InstanceFormatError, InstanceValidationError
from .field_parser import parse_field
from .fock_rep import ModelOperatorSpec, model_rep_matrix, rockland_margin
from .frame_calculus import (ComplexField, LocalPresentation, RotationField, VectorFieldExpr, bracket_span_check,
                             gamma_residuals, grid_points, rotate_presentation, span_determinants)
from .logs import clear_logs, configure, log_message, warnings
from .nilmanifold_oracle import NotFredholm, Truncation, analytic_index, sweep
from .winding_index import fredholm_index

EXIT_MISSING_FILE = 3
EXIT_NUMERIC = 5

HEISENBERG_X = "1,0,-y/2"
HEISENBERG_Y = "0,1,x/2"


@dataclass
class RunReport:
    command: str
    inputs_digest: str
    results: Dict[str, Any]
    warnings: List[str]
    exit_code: int
    settings: Dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), indent=2, sort_keys=True) + "\n"


@dataclass
class RunState:
    report_path: Optional[str] = None
    quiet: bool = False
    report: Optional[RunReport] = None


class ComplexParam(click.ParamType):
    """RE,IM (or a bare real number)"""
    name = "RE,IM"

    def convert(self, value, param, ctx):
        if isinstance(value, complex):
            return value
        parts = str(value).split(',')
        try:
            numbers = [float(part) for part in parts]
        except ValueError:
            numbers = []
        if len(numbers) not in (1, 2):
            self.fail(f"expected RE,IM, got {value!r}", param, ctx)
        if not all(math.isfinite(x) for x in numbers):
            self.fail(f"gamma must be finite, got {value!r}", param, ctx)
        return complex(numbers[0], numbers[1] if len(numbers) == 2 else 0.0)


COMPLEX = ComplexParam()


def _pair(z) -> List[float]:
    z = complex(z)
    return [z.real, z.imag]


def _bool(flag) -> str:
    return "true" if flag else "false"


def _read_input(path) -> bytes:
    with open(path, 'rb') as fh:
        return fh.read()


def _load(scratch, path, clearance=None):
    """Read, digest and parse an instance file"""
    data = _read_input(path)
    scratch['digest'] = instance_digest(data)
    inst = parse_instance(data)
    if clearance is not None:
        inst = dataclasses.replace(inst, clearance=clearance)
    return inst


def _require_valid(inst):
    report = validate_instance(inst)
    if not report.ok:
        for v in report.violations:
            click.echo(f"violation loop={v.loop} index={v.index} rule={v.rule}: {v.message}", err=True)
        raise InstanceValidationError(report)


def command_body(func):
    """
    Run a command body, turning exceptions into exit codes and always emitting
    a RunReport. The body receives a scratch dict (for the input digest) and
    returns (results, settings, exit_code).
    """
    @click.pass_context
    @functools.wraps(func)
    def wrapper(ctx, **kwargs):
        state = ctx.ensure_object(RunState)
        configure(state.quiet)
        scratch = {'digest': "", 'settings': settings()}
        try:
            results, used, code = func(scratch, **kwargs)
        except OSError as e:
            results, used, code = {"error": str(e)}, scratch['settings'], EXIT_MISSING_FILE
        except HypoIndexError as e:
            results, used, code = {"error": str(e)}, scratch['settings'], e.exit_code
        except (ValueError, ArithmeticError, np.linalg.LinAlgError) as e:
            results, used, code = {"error": str(e)}, scratch['settings'], EXIT_NUMERIC

        if code:
            log_message("ERROR", "CLI", f"{ctx.command.name}: {results.get('error', 'failed')}")
            if 'error' in results:
                click.echo(f"error: {results['error']}", err=True)

        state.report = RunReport(ctx.command_path.split(' ', 1)[-1], scratch['digest'], results,
                                 warnings(), code, used)
        if state.report_path:
            with open(state.report_path, 'w', encoding='utf-8') as fh:
                fh.write(state.report.to_json())
        if code:
            ctx.exit(code)
    return wrapper


@click.group()
@click.option('--report', 'report_path', type=click.Path(dir_okay=False), default=None,
              help='Write a JSON run report to PATH.')
@click.option('--quiet', is_flag=True, help='Mute the log echo on stderr.')
@click.version_option(__version__, prog_name='hypoindex')
@click.pass_context
def cli(ctx, report_path, quiet):
    """Fredholm index of hypoelliptic operators on contact 3-manifolds."""
    state = ctx.ensure_object(RunState)
    state.report_path = report_path
    state.quiet = quiet
    clear_logs()


instance_option = click.option('--instance', 'instance_path', required=True, type=click.Path(dir_okay=False),
                               help='Instance JSON file.')


def _set_report(ctx, param, value):
    if value is not None:
        ctx.ensure_object(RunState).report_path = value


def _set_quiet(ctx, param, value):
    if value:
        ctx.ensure_object(RunState).quiet = True


def run_options(func):
    """Per-command copies of the group's --report and --quiet"""
    func = click.option('--quiet', is_flag=True, expose_value=False, callback=_set_quiet,
                        help='Mute the log echo on stderr.')(func)
    return click.option('--report', type=click.Path(dir_okay=False), expose_value=False, callback=_set_report,
                        help='Write a JSON run report to PATH.')(func)


# ==========================================
# INSTANCE COMMANDS
# ==========================================

@cli.command('validate')
@run_options
@instance_option
@click.option('--clearance', type=float, default=None, help='Override the instance clearance.')
@command_body
def validate_cmd(scratch, instance_path, clearance):
    """Check clearance and sampling adequacy of an instance."""
    inst = _load(scratch, instance_path, clearance)
    used = settings(clearance=inst.clearance)
    report = validate_instance(inst)

    click.echo(f"ok={_bool(report.ok)}")
    for v in report.violations:
        click.echo(f"violation loop={v.loop} index={v.index} rule={v.rule}: {v.message}")
    return report.to_dict(), used, 0 if report.ok else InstanceValidationError.exit_code


@cli.command('index')
@run_options
@instance_option
@click.option('--workers', type=click.IntRange(min=1), default=None, help='Threads for the winding table.')
@command_body
def index_cmd(scratch, instance_path, workers):
    """Index by the winding-number formula."""
    inst = _load(scratch, instance_path)
    _require_valid(inst)
    table = fredholm_index(inst, workers=workers)

    click.echo(f"index={table.index}")
    return table.to_dict(), settings(clearance=inst.clearance, workers=workers), 0


@cli.command('chern')
@run_options
@instance_option
@command_body
def chern_cmd(scratch, instance_path):
    """Index by pairing the Chern character of the symbol class with Td(M)."""
    inst = _load(scratch, instance_path)
    _require_valid(inst)
    report = chern_index(inst)

    click.echo(f"index={report.total_rounded} agreement={_bool(report.agreement)}")
    return report.to_dict(), settings(clearance=inst.clearance), 0 if report.agreement else EXIT_NUMERIC


@cli.command('crosscheck')
@run_options
@instance_option
@click.option('--workers', type=click.IntRange(min=1), default=None)
@command_body
def crosscheck_cmd(scratch, instance_path, workers):
    """Run both index routes and compare."""
    inst = _load(scratch, instance_path)
    _require_valid(inst)
    table = fredholm_index(inst, workers=workers)
    chern = chern_index(inst)
    agreement = chern.total_rounded == table.index

    click.echo(f"winding_index={table.index}")
    click.echo(f"chern_index={chern.total_rounded}")
    click.echo(f"agreement={_bool(agreement)}")
    results = {"winding": table.to_dict(), "chern": chern.to_dict(), "agreement": agreement}
    return results, settings(clearance=inst.clearance, workers=workers), 0 if agreement else EXIT_NUMERIC


# ==========================================
# MODEL OPERATOR COMMANDS
# ==========================================

@cli.command('rockland')
@run_options
@click.option('--gamma', type=COMPLEX, required=True)
@command_body
def rockland_cmd(scratch, gamma):
    """Invertibility of pi_{+1} for P and its opposite."""
    margin = rockland_margin(gamma)
    click.echo(f"rockland={_bool(margin > 0)}")
    click.echo(f"margin={margin!r}")
    return {"gamma": _pair(gamma), "rockland": margin > 0, "margin": margin}, settings(), 0


@cli.command('fock-spectrum')
@run_options
@click.option('--gamma', type=COMPLEX, required=True)
@click.option('--t', 't', type=float, default=None, help='Representation parameter (> 0).')
@click.option('--n', 'n', type=int, default=None, help='Truncation size N.')
@click.option('--opposite', is_flag=True, help='Use the opposite operator.')
@command_body
def fock_spectrum_cmd(scratch, gamma, t, n, opposite):
    """Interior diagonal of the assembled Bargmann-Fock matrix as CSV."""
    used = settings(fock_t=t, fock_n=n)
    truncation = model_rep_matrix(ModelOperatorSpec(gamma, opposite), used['fock_t'], used['fock_n'])
    diagonal = truncation.interior_diagonal()

    click.echo("q,re,im")
    for q, value in enumerate(diagonal):
        re, im = _pair(value)
        click.echo(f"{q},{re!r},{im!r}")
    results = {"gamma": _pair(gamma), "opposite": opposite, "diagonal": [_pair(v) for v in diagonal]}
    return results, used, 0


# ==========================================
# NILMANIFOLD ORACLE
# ==========================================

def _read_sweep(data: bytes) -> List[complex]:
    try:
        text = data.decode('utf-8')
    except UnicodeDecodeError as e:
        raise InstanceFormatError(f"sweep file: invalid UTF-8 at byte {e.start}")
    gammas = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        parts = line.split(',')
        try:
            if len(parts) != 2:
                raise ValueError(line)
            gamma = complex(float(parts[0]), float(parts[1]))
            if not (math.isfinite(gamma.real) and math.isfinite(gamma.imag)):
                raise ValueError(line)
            gammas.append(gamma)
        except ValueError:
            raise InstanceFormatError(f"sweep file: expected RE,IM, got {line!r}", line=lineno, column=1)
    return gammas


@cli.command('oracle')
@run_options
@click.option('--gamma', type=COMPLEX, default=None)
@click.option('--n-max', type=click.IntRange(min=1), default=None)
@click.option('--q-max', type=click.IntRange(min=1), default=None)
@click.option('--lattice-max', type=click.IntRange(min=1), default=None)
@click.option('--sweep', 'sweep_path', type=click.Path(dir_okay=False), default=None,
              help='File with one RE,IM value of gamma per line.')
@command_body
def oracle_cmd(scratch, gamma, n_max, q_max, lattice_max, sweep_path):
    """Analytic index on the Heisenberg nilmanifold for constant gamma."""
    used = settings(n_max=n_max, q_max=q_max, lattice_max=lattice_max)
    truncation = Truncation(used['n_max'], used['q_max'], used['lattice_max'])

    if sweep_path is not None:
        data = _read_input(sweep_path)
        scratch['digest'] = instance_digest(data)
        rows = sweep(_read_sweep(data), truncation)
        click.echo("gamma_re,gamma_im,verdict,dim_ker,dim_coker")
        for row in rows:
            click.echo(row.csv())
        results = {"rows": [
            {"gamma": _pair(r.gamma), "verdict": r.verdict, "dim_ker": r.dim_ker, "dim_coker": r.dim_coker}
            for r in rows
        ]}
        return results, used, 0

    if gamma is None:
        raise click.UsageError("give --gamma or --sweep")

    verdict = analytic_index(gamma, truncation)
    if isinstance(verdict, NotFredholm):
        click.echo("not-fredholm")
        click.echo("n,zero_modes")
        for n, count in sorted(verdict.zero_modes.items()):
            click.echo(f"{n},{count}")
        return verdict.to_dict(), used, 0

    click.echo(f"index={verdict}")
    return {"verdict": "fredholm", "gamma": _pair(gamma), "index": verdict}, used, 0


# ==========================================
# FRAMES
# ==========================================

def _vector_field(text: str) -> VectorFieldExpr:
    parts = text.split(',')
    if len(parts) != 3:
        raise click.BadParameter(f"expected three comma-separated components, got {text!r}")
    return VectorFieldExpr.from_strings(*parts)


@cli.group('frames')
def frames():
    """Local frame calculus."""


@frames.command('check')
@run_options
@click.option('--x-field', default=HEISENBERG_X, show_default=True, help='Components of X along d/dx,d/dy,d/dz.')
@click.option('--y-field', default=HEISENBERG_Y, show_default=True, help='Components of Y.')
@click.option('--gamma', 'gamma_text', default="2", show_default=True, help='Real part of gamma.')
@click.option('--gamma-im', default="0", show_default=True, help='Imaginary part of gamma.')
@click.option('--theta', default="0", show_default=True, help='Rotation angle field.')
@click.option('--h', 'h', type=float, default=None, help='Finite-difference step.')
@click.option('--grid', type=click.IntRange(min=1), default=3, show_default=True, help='Points per axis.')
@command_body
def frames_check_cmd(scratch, x_field, y_field, gamma_text, gamma_im, theta, h, grid):
    """Bracket condition and gamma invariance under frame rotation."""
    used = settings(fd_step=h)
    X, Y = _vector_field(x_field), _vector_field(y_field)
    points = grid_points(grid)

    dets = np.abs(span_determinants(X, Y, points, used['fd_step']))
    spans = bracket_span_check(X, Y, points, h=used['fd_step'])
    click.echo(f"span={_bool(spans)} min_det={float(dets.min())!r}")
    results = {"span": spans, "min_det": float(dets.min()), "points": len(points)}

    if spans:
        zero = ComplexField.from_strings("0")
        pres = LocalPresentation(X, Y, zero, zero, ComplexField.from_strings(gamma_text, gamma_im), zero)
        rot = RotationField(parse_field(theta))
        residuals = gamma_residuals(pres, rot, points, used['fd_step'])
        second_order = max(rotate_presentation(pres, rot, p, used['fd_step']).second_order_residual
                           for p in points)
        click.echo(f"gamma_residual={float(residuals.max())!r} second_order_residual={second_order!r}")
        results.update(gamma_residual=float(residuals.max()), second_order_residual=second_order)
    return results, used, 0


# ==========================================
# ENTRY POINTS
# ==========================================

def dispatch(argv):
    """Run one command line; returns (RunReport, exit code) without exiting the process"""
    state = RunState()
    try:
        code = cli.main(args=list(argv), prog_name='hypoindex', standalone_mode=False, obj=state)
        code = code if isinstance(code, int) else 0
    except click.ClickException as e:
        e.show()
        code = e.exit_code
    except click.exceptions.Abort:
        code = 1

    report = state.report
    if report is None:
        command = argv[0] if argv else ""
        report = RunReport(command, "", {}, warnings(), code, settings())
    return report, code


def main(argv=None):
    _, code = dispatch(sys.argv[1:] if argv is None else argv)
    sys.exit(code)
