"""
The four commands of the sgsf script. Each is instantiated by hydra from
config/command/*.yaml and returns a process exit code from run(): 0 on
success, 1 when verification checks fail, 2 when the input is rejected.
"""
import sys
from pathlib import Path
from typing import Optional

import numpy as np
from hydra.utils import to_absolute_path
from omegaconf.errors import OmegaConfBaseException

from basis.indices import FamilyId, MultiIndex, parse_window
from transforms.plan import SAMPLE_BOXES, build_plan
from transforms.spectral import analyze, span_member, synthesize
from utils.common import format_significant, parse_half_integer
from verify.config import load_suite_config
from verify.io import read_coeffs, read_samples, write_coeffs, write_samples
from verify.report import emit_report, render_json
from verify.suites import run_suite

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BAD_INPUT = 2


def _path(path: Optional[str]) -> Optional[str]:
    return None if path is None else to_absolute_path(str(path))


def _pairs(text: str, what: str) -> dict:
    """
    "n=2,m=1/2" -> {"n": "2", "m": "1/2"}.
    """
    pairs = {}
    for item in str(text).split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise ValueError(f"cannot parse {what} {item!r}, expected name=value")
        name, value = item.split("=", 1)
        pairs[name.strip()] = value.strip()
    return pairs


def parse_index(family: FamilyId, text: str) -> MultiIndex:
    """
    Multi-index from "name=value" pairs; doubled components accept "3/2"
    and "1.5".
    """
    basis = family.basis
    values = _pairs(text, "index component")
    unknown = sorted(set(values) - set(basis.names))
    if unknown:
        raise ValueError(
            f"{', '.join(unknown)} not a quantum number of {family} ({', '.join(basis.names)})"
        )
    comp = []
    for name in basis.names:
        if name not in values:
            raise ValueError(f"index of {family} needs {name}")
        if name in basis.doubled:
            comp.append(parse_half_integer(values[name]))
        else:
            try:
                comp.append(int(values[name]))
            except ValueError:
                raise ValueError(f"{name} must be an integer, got {values[name]}") from None
    return MultiIndex(family, tuple(comp))


def parse_point(family: FamilyId, text: str):
    domain = family.basis.domain
    values = _pairs(text, "coordinate")
    missing = [name for name in domain if name not in values]
    if missing or len(values) != len(domain):
        raise ValueError(f"{family} is evaluated at {', '.join(domain)}, got {text!r}")
    try:
        return tuple(np.array([float(values[name])]) for name in domain)
    except ValueError as e:
        raise ValueError(f"coordinates must be real numbers: {e}") from None


class Command:
    def __init__(
        self,
        logger=None,
        seed: int = 0,
        device: str = "cpu",
        float_precision: int = 64,
        **kwargs,
    ):
        self.logger = logger
        self.seed = seed
        self.device = device
        self.float_precision = float_precision

    def log(self, message: str):
        if self.logger is not None:
            self.logger.log(message)

    def execute(self) -> int:
        raise NotImplementedError

    def run(self) -> int:
        try:
            return self.execute()
        except (ValueError, KeyError, OSError, OmegaConfBaseException) as e:
            message = e.args[0] if isinstance(e, KeyError) and e.args else e
            print(f"error: {message}", file=sys.stderr)
            return EXIT_BAD_INPUT


class VerifyCommand(Command):
    def __init__(self, logger=None, seed: int = 42, **kwargs):
        super().__init__(logger=logger, seed=seed, **kwargs)
        self.options = {
            k: v for k, v in kwargs.items() if k not in ("device", "float_precision")
        }

    def execute(self) -> int:
        config = load_suite_config(self.options, seed=self.seed)
        if self.float_precision != 64:
            raise ValueError(
                f"verification needs float_precision 64, got {self.float_precision}"
            )
        out = _path(config.out)
        self.log(f"Running suite {config.suite} (seed {config.seed}, jobs {config.jobs})")
        report = run_suite(config, self.logger)
        emit_report(report, config.format, out, config.timings)
        if self.logger is not None:
            (self.logger.data_dir / "report.json").write_text(
                render_json(report, config.timings)
            )
            self.logger.log_table("report", report.to_frame())
            self.logger.log_metric("passed", int(report.passed))
        failures = report.failures
        self.log(
            f"{len(report.checks) - len(failures)}/{len(report.checks)} checks passed"
        )
        for check in failures:
            self.log(f"FAIL {check.name}: residual {check.residual:.3e} > {check.tolerance:.1e}")
        return EXIT_OK if report.passed else EXIT_FAILED


class EvalCommand(Command):
    """
    Evaluates one basis kernel at a point (at="r=1.0") or at every row of a
    sample CSV (points=path) and prints one value per line.
    """

    def __init__(
        self,
        family: str = None,
        alpha: Optional[float] = None,
        index: str = None,
        at: Optional[str] = None,
        points: Optional[str] = None,
        out: Optional[str] = None,
        **kwargs,
    ):
        super().__init__(**kwargs)
        self.family = family
        self.alpha = alpha
        self.index = index
        self.at = at
        self.points = points
        self.out = out

    def execute(self) -> int:
        if self.family is None or self.index is None:
            raise ValueError("eval needs command.family and command.index")
        family = FamilyId.parse(self.family, self.alpha)
        index = parse_index(family, self.index)
        if (self.at is None) == (self.points is None):
            raise ValueError("eval needs exactly one of command.at and command.points")
        if self.at is not None:
            coords = parse_point(family, self.at)
        else:
            coords, _ = read_samples(_path(self.points), family)
        values = np.atleast_1d(family.basis.evaluate(index.components, *coords))
        if self.float_precision < 64:
            values = values.astype(np.complex64 if np.iscomplexobj(values) else np.float32)
        text = "".join(format_significant(value) + "\n" for value in values)
        if self.out is None:
            sys.stdout.write(text)
        else:
            path = Path(_path(self.out))
            try:
                path.parent.mkdir(parents=True, exist_ok=True)
                path.write_text(text)
            except OSError as e:
                raise OSError(f"cannot write {path}: {e.strerror or e}") from e
        return EXIT_OK


class AnalyzeCommand(Command):
    """
    Writes the coefficients of sampled data on a window. Samples must sit on
    the plan nodes, which emit_nodes=true writes out with zero values.
    """

    def __init__(
        self,
        family: str = None,
        alpha: Optional[float] = None,
        window: str = None,
        quad_order: Optional[int] = None,
        input: Optional[str] = None,
        emit_nodes: bool = False,
        out: Optional[str] = None,
        **kwargs,
    ):
        super().__init__(**kwargs)
        self.family = family
        self.alpha = alpha
        self.window = window
        self.quad_order = quad_order
        self.input = input
        self.emit_nodes = emit_nodes
        self.out = out

    def execute(self) -> int:
        if self.family is None or self.window is None:
            raise ValueError("analyze needs command.family and command.window")
        family = FamilyId.parse(self.family, self.alpha)
        window = parse_window(family, self.window)
        plan = build_plan(family, window, self.quad_order)
        if self.emit_nodes:
            write_samples(_path(self.out), family, plan.coords, np.zeros(plan.size))
            self.log(f"Wrote {plan.size} nodes of orders {plan.orders}")
            return EXIT_OK
        if self.input is None:
            raise ValueError("analyze needs command.input (sample CSV or coefficient JSON)")
        path = _path(self.input)
        if path.endswith(".json"):
            source = read_coeffs(path, self.device, self.float_precision)
            if source.family != family:
                raise ValueError(f"coefficients of {source.family} cannot be analyzed as {family}")
            f = span_member(source)
        else:
            coords, values = read_samples(path, family)
            if len(values) != plan.size or not all(
                np.allclose(c, node, rtol=0.0, atol=1e-12) for c, node in zip(coords, plan.coords)
            ):
                raise ValueError(
                    f"samples in {path} are not the {plan.size} plan nodes of {window}; "
                    "write them with command.emit_nodes=true"
                )

            def f(*_):
                return values

        v = analyze(f, family, window, plan, self.device, self.float_precision)
        write_coeffs(_path(self.out), v)
        return EXIT_OK


class SynthesizeCommand(Command):
    """
    Evaluates a coefficient file at the points of a CSV or on a uniform grid
    over the family's sampling box.
    """

    def __init__(
        self,
        input: str = None,
        points: Optional[str] = None,
        grid: int = 32,
        out: Optional[str] = None,
        **kwargs,
    ):
        super().__init__(**kwargs)
        self.input = input
        self.points = points
        self.grid = grid
        self.out = out

    def execute(self) -> int:
        if self.input is None:
            raise ValueError("synthesize needs command.input (coefficient JSON)")
        v = read_coeffs(_path(self.input), self.device, self.float_precision)
        if self.points is not None:
            coords, _ = read_samples(_path(self.points), v.family)
        else:
            if self.grid < 1:
                raise ValueError(f"grid must be positive, got {self.grid}")
            axes = [np.linspace(low, high, self.grid) for low, high in SAMPLE_BOXES[v.family.tag]]
            coords = tuple(c.ravel() for c in np.meshgrid(*axes, indexing="ij"))
        write_samples(_path(self.out), v.family, coords, synthesize(v, coords))
        return EXIT_OK
