"""photon-slh: validate SLH models, shape single-photon pulses, compose networks and sweep transfer functions.

Exit codes:
    0  success
    1  unreadable or malformed input, bad options
    2  the model fails the single-photon linearity conditions
    3  the time grid is too short or too coarse for the filter
    4  the feedback loop is singular
"""
import argparse
import json
import logging
import sys
from contextlib import contextmanager, redirect_stdout
from pathlib import Path

import numpy as np

from . import (ConfigError, GridTooShort, ModelError, PhotonSlhException, SingularLoop, StepSizeUnstable,
               ValidationFailed)
from . import io, oracles
from .config import SolverConfig
from .entities.pulse_entities import TimeGrid
from .entities.transfer_entities import PhotonTransfer
from .network import feedback_detuning, feedback_reduce, series_product, two_level_model, validate_theorem3
from .pulse_shapes import PulseShape
from .pulses import fourier, make_pulse, normalize
from .shapers import OdeShaper, Shaper
from .transfer import frequency_response, from_model
from .version import __version__

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CONDITIONS = 2
EXIT_GRID = 3
EXIT_SINGULAR = 4

MIN_LOG2_N = 8
MAX_LOG2_N = 22

FEEDBACK_PRESETS = {
    'swap': [[0, 1], [1, 0]],
    'beamsplitter': (np.array([[1, 1j], [1j, 1]]) / np.sqrt(2)).tolist(),
}


class RunConfig:
    """Validated command-line settings for one run."""

    def __init__(self, command, t_start=-40.0, dt=None, log2_n=14, omega_range=None, output=None):
        self.command = command
        if not MIN_LOG2_N <= log2_n <= MAX_LOG2_N:
            raise ConfigError(f"--log2-n must lie in [{MIN_LOG2_N}, {MAX_LOG2_N}], got {log2_n}")
        self.log2_n = int(log2_n)
        self.t_start = float(t_start)
        if not np.isfinite(self.t_start):
            raise ConfigError(f"--t-start must be finite, got {t_start}")
        self.dt = -2 * self.t_start / 2 ** self.log2_n if dt is None else float(dt)
        if not self.dt > 0 or not np.isfinite(self.dt):
            raise ConfigError(f"The time step must be positive; got dt={self.dt}")
        if omega_range is not None:
            start, stop, points = omega_range
            if not (np.isfinite(start) and np.isfinite(stop)):
                raise ConfigError(f"Frequency range must be finite, got {start}:{stop}")
            if points < 1:
                raise ConfigError(f"Frequency range needs at least one point, got {points}")
        self.omega_range = omega_range
        self.output = output

    @property
    def grid(self):
        return TimeGrid(self.t_start, self.dt, 2 ** self.log2_n)

    @property
    def omegas(self):
        start, stop, points = self.omega_range
        return np.linspace(start, stop, points)


def parse_range(text):
    """'a:b:n' -> (a, b, n)"""
    try:
        start, stop, points = text.split(':')
        return float(start), float(stop), int(points)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected start:stop:points, got {text!r}")


def parse_pulse_descriptor(text):
    """'gaussian:sigma=2,t0=-5' -> ('gaussian', {'sigma': 2.0, 't0': -5.0})"""
    kind, _, arguments = text.partition(':')
    params = {}
    for item in filter(None, arguments.split(',')):
        key, sep, value = item.partition('=')
        if not sep:
            raise ConfigError(f"Pulse parameter {item!r} is not of the form name=value")
        try:
            params[key.strip()] = float(value)
        except ValueError:
            raise ConfigError(f"Pulse parameter {key} must be a number, got {value!r}")
    return kind.strip(), params


@contextmanager
def ignore_logging_msg(quiet, highest_level=logging.CRITICAL):
    """Suppress every logging message raised in the body when `quiet` is set."""
    if not quiet:
        yield
        return
    previous_level = logging.root.manager.disable
    logging.disable(highest_level)
    try:
        yield
    finally:
        logging.disable(previous_level)


class PhotonSlhCli:

    def __init__(self, args):
        self.args = args
        self.config = SolverConfig(tolerance=args.tol)
        self.show = args.show.split(',') if args.show else None

    def run(self):
        return getattr(self, f"cmd_{self.args.command}")()

    def display(self, entity, verbose=False):
        if self.args.verbose or self.show:
            with redirect_stdout(sys.stderr):
                entity.print(verbose=verbose or self.args.verbose > 1, associated_entities_to_show=self.show)

    def emit(self, text, output=None):
        if output:
            with open(output, 'w') as f:
                f.write(text)
        else:
            sys.stdout.write(text)

    def emit_csv(self, writer, entity, output=None):
        if output:
            with open(output, 'w', newline='') as f:
                writer(entity, f)
        else:
            writer(entity, sys.stdout)

    @staticmethod
    def write_sidecar(output, document):
        path = Path(output).with_suffix('.sidecar.json')
        path.write_text(json.dumps(document, indent=2) + "\n")
        return path

    def cmd_validate(self):
        model = io.read_model(self.args.model)
        self.display(model)
        if not model.is_factorized:
            return _fail(ModelError("The linearity conditions need a coupling of the form theta^T L0"),
                         EXIT_CONDITIONS)
        report = validate_theorem3(model, config=self.config)
        self.display(report)
        print(json.dumps(report.to_dict(), indent=2))
        return EXIT_OK if report.passed else EXIT_CONDITIONS

    def _transfer(self):
        if self.args.cascade < 1:
            raise ConfigError(f"--cascade needs at least one stage, got {self.args.cascade}")
        if self.args.model:
            model = io.read_model(self.args.model)
        else:
            model = two_level_model(self.args.kappa, self.args.omega_c)
        self.display(model)
        single = from_model(model, config=self.config)
        transfer = PhotonTransfer(single.stages * self.args.cascade)
        self.display(transfer)
        return transfer

    def _pulse(self, grid, channels):
        descriptor = self.args.pulse
        if Path(descriptor).is_file():
            with open(descriptor, newline='') as f:
                pulse = io.read_pulse(f)
            if pulse.channels != channels:
                raise ConfigError(f"Pulse file has {pulse.channels} channel(s), the filter {channels}")
        else:
            kind, params = parse_pulse_descriptor(descriptor)
            if kind not in PulseShape.kinds():
                raise ConfigError(f"Unknown pulse kind {kind!r}; choose one of {', '.join(PulseShape.kinds())}")
            if not 1 <= self.args.channel <= channels:
                raise ConfigError(f"--channel must lie in 1..{channels}, got {self.args.channel}")
            pulse = make_pulse(kind, grid, channels=channels, channel=self.args.channel - 1, **params)
        return normalize(pulse)

    def cmd_shape(self):
        run = RunConfig('shape', t_start=self.args.t_start, dt=self.args.dt, log2_n=self.args.log2_n,
                        output=self.args.output)
        transfer = self._transfer()
        pulse = self._pulse(run.grid, transfer.channels)
        self.display(pulse)

        methods = ['fft', 'ode'] if self.args.method == 'both' else [self.args.method]
        outputs = {}
        sidecar = {'method': self.args.method, 'input_norm': pulse.norm()}
        for method in methods:
            shaper = Shaper.factory(method, config=self.config)
            if isinstance(shaper, OdeShaper):
                outputs[method], amplitudes = shaper.run(pulse, transfer)
                excitation = np.abs(amplitudes[0]) ** 2
                peak = int(np.argmax(excitation))
                sidecar['peak_excitation'] = float(excitation[peak])
                sidecar['peak_excitation_time'] = float(run.grid.times[peak])
            else:
                outputs[method] = shaper.shape(pulse, transfer)
        shaped = outputs[methods[0]]
        sidecar['output_norm'] = shaped.norm()
        sidecar['pre_t0_energy'] = shaped.energy_before(self.args.t0)
        if len(outputs) == 2:
            difference = outputs['fft'].samples - outputs['ode'].samples
            sidecar['discrepancy'] = float(np.sqrt(np.sum(np.abs(difference) ** 2) * run.grid.dt))
        self.display(shaped)

        self.emit_csv(io.write_pulse, shaped, run.output)
        if self.args.spectrum:
            self.emit_csv(io.write_spectrum, fourier(shaped), self.args.spectrum)
        if run.output:
            self.write_sidecar(run.output, sidecar)
            print(json.dumps(sidecar, indent=2))
        else:
            sys.stderr.write(json.dumps(sidecar) + "\n")
        return EXIT_OK

    def cmd_compose(self):
        sidecar = None
        if self.args.series:
            models = [io.read_model(path) for path in self.args.series]
            composed = models[0]
            for downstream in models[1:]:
                composed = series_product(downstream, composed, config=self.config)
        else:
            model = io.read_model(self.args.feedback)
            self.display(model)
            composed = feedback_reduce(model)
            delta = feedback_detuning(model)
            theta = complex(composed.theta[0])
            sidecar = {'delta': delta, 'theta': [theta.real, theta.imag]}
        self.display(composed)

        self.emit(io.dumps_model(composed) + "\n", self.args.output)
        if sidecar is not None:
            if self.args.output:
                self.write_sidecar(self.args.output, sidecar)
            else:
                sys.stderr.write(json.dumps(sidecar) + "\n")
        return EXIT_OK

    def cmd_sweep(self):
        run = RunConfig('sweep', omega_range=self.args.omega, output=self.args.output)
        model = io.read_model(self.args.model)
        transfer = from_model(model, config=self.config)
        response = frequency_response(transfer, run.omegas)
        self.display(response)
        self.emit_csv(io.write_sweep, response, run.output)
        return EXIT_OK

    def cmd_oracle(self):
        args = self.args
        kind = args.kind
        if kind == 'kernel':
            if args.t is None:
                raise ConfigError("The kernel oracle needs --t start:stop:points")
            start, stop, points = args.t
            run = RunConfig('oracle', omega_range=args.t, output=args.output)
            xs = np.linspace(start, stop, points)
            columns = [oracles.memory_kernel_1f1(args.atoms, oracles.TwoLevelParams(args.kappa, args.omega_c), xs)]
            axis = 't'
        else:
            if args.omega is None:
                raise ConfigError(f"The {kind} oracle needs --omega start:stop:points")
            run = RunConfig('oracle', omega_range=args.omega, output=args.output)
            xs = run.omegas
            axis = 'omega'
            params = oracles.TwoLevelParams(args.kappa, args.omega_c)
            if kind == 'two-level':
                columns = [oracles.two_level_G(params, xs)]
            elif kind == 'two-channel':
                columns = list(oracles.two_channel_G(args.kappa, args.kappa2, args.omega_c, xs))
            elif kind == 'memory':
                columns = [oracles.memory_GN(args.atoms, params, xs)]
            else:
                columns = [oracles.feedback_G(self._feedback_S(args.S), args.kappa, args.kappa2, args.omega_c, xs)]

        rows = [f"{axis},ch,re,im,abs2\n"]
        for n, x in enumerate(xs):
            for channel, column in enumerate(columns, start=1):
                value = complex(np.atleast_1d(column)[n])
                rows.append(",".join([io.fmt_float(x), str(channel), io.fmt_float(value.real),
                                      io.fmt_float(value.imag), io.fmt_float(abs(value) ** 2)]) + "\n")
        self.emit("".join(rows), run.output)
        return EXIT_OK

    @staticmethod
    def _feedback_S(text):
        if text in FEEDBACK_PRESETS:
            return np.asarray(FEEDBACK_PRESETS[text], dtype=complex)
        try:
            pairs = np.asarray(json.loads(text), dtype=float)
        except (ValueError, TypeError):
            raise ConfigError(f"--S must be one of {', '.join(FEEDBACK_PRESETS)} or a JSON 2x2 matrix of "
                              f"[re, im] pairs")
        if pairs.shape != (2, 2, 2):
            raise ConfigError(f"--S must be a 2x2 matrix of [re, im] pairs, got shape {pairs.shape}")
        return pairs[..., 0] + 1j * pairs[..., 1]


class ArgumentParser(argparse.ArgumentParser):

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = ArgumentParser(prog='photon-slh', description=__doc__.splitlines()[0])
    parser.add_argument('--version', action='version', version=__version__)
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help="print coloured summaries to stderr; repeat for more detail and debug logging")
    parser.add_argument('-q', '--quiet', action='store_true', help="suppress log messages")
    parser.add_argument('--show', help="comma-separated associated entities to print: "
                                       "operators, conditions, params, stages or all")
    parser.add_argument('--tol', type=float, default=None,
                        help="condition tolerance (default: $PHOTON_SLH_TOL or 1e-10)")
    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True

    validate = subparsers.add_parser('validate', help="check a model against the linearity conditions")
    validate.add_argument('model')

    shape = subparsers.add_parser('shape', help="send a single-photon pulse through a model")
    shape.add_argument('model', nargs='?', help="model file; a two-level atom built from --kappa and "
                                                "--omega-c when omitted")
    shape.add_argument('--cascade', type=int, default=1, help="number of copies of the model in series")
    shape.add_argument('--kappa', type=float, default=1.0)
    shape.add_argument('--omega-c', type=float, default=0.0)
    shape.add_argument('--pulse', required=True, help="kind:name=value,... or a pulse CSV file")
    shape.add_argument('--channel', type=int, default=1, help="input channel of an analytic pulse")
    shape.add_argument('--method', choices=['fft', 'ode', 'both'], default='fft')
    shape.add_argument('--t-start', type=float, default=-40.0)
    shape.add_argument('--dt', type=float, default=None, help="time step (default: fills [t_start, -t_start))")
    shape.add_argument('--log2-n', type=int, default=14)
    shape.add_argument('--t0', type=float, default=0.0, help="report the output energy before this time")
    shape.add_argument('-o', '--output')
    shape.add_argument('--spectrum', metavar='PATH', help="also write the spectrum of the output pulse")

    compose = subparsers.add_parser('compose', help="build a series or feedback network")
    group = compose.add_mutually_exclusive_group(required=True)
    group.add_argument('--series', nargs='+', metavar='MODEL', help="models in signal order, first upstream")
    group.add_argument('--feedback', metavar='MODEL', help="two-channel model; output 2 is fed into input 2")
    compose.add_argument('-o', '--output')

    sweep = subparsers.add_parser('sweep', help="tabulate G(i omega)")
    sweep.add_argument('model')
    sweep.add_argument('--omega', type=parse_range, required=True, metavar='START:STOP:POINTS',
                       help="frequency grid; write --omega=-5:5:101 when START is negative")
    sweep.add_argument('-o', '--output')

    oracle = subparsers.add_parser('oracle', help="tabulate a closed-form transfer function or kernel")
    oracle.add_argument('kind', choices=['two-level', 'two-channel', 'memory', 'kernel', 'feedback'])
    oracle.add_argument('--kappa', type=float, default=1.0)
    oracle.add_argument('--kappa2', type=float, default=1.0)
    oracle.add_argument('--omega-c', type=float, default=0.0)
    oracle.add_argument('--atoms', type=int, default=1)
    oracle.add_argument('--S', default='swap', help="swap, beamsplitter or a JSON 2x2 matrix of [re, im] pairs")
    oracle.add_argument('--omega', type=parse_range, metavar='START:STOP:POINTS')
    oracle.add_argument('--t', type=parse_range, metavar='START:STOP:POINTS')
    oracle.add_argument('-o', '--output')
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.DEBUG if args.verbose > 1 else logging.INFO)

    with ignore_logging_msg(args.quiet):
        try:
            return PhotonSlhCli(args).run()
        except ValidationFailed as e:
            print(json.dumps(e.report.to_dict(), indent=2))
            return _fail(e, EXIT_CONDITIONS)
        except (GridTooShort, StepSizeUnstable) as e:
            return _fail(e, EXIT_GRID)
        except SingularLoop as e:
            return _fail(e, EXIT_SINGULAR)
        except (OSError, PhotonSlhException) as e:
            return _fail(e, EXIT_INPUT)


def _fail(error, code):
    sys.stderr.write(f"photon-slh: {error}\n")
    return code


if __name__ == '__main__':
    sys.exit(main())
