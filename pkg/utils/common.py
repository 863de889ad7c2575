import math
import random
from fractions import Fraction
from typing import Iterable, Union

import numpy as np
import torch


def set_seeds(seed):
    torch.backends.cudnn.deterministic = True
    torch.backends.cudnn.benchmark = False
    random.seed(seed)
    np.random.seed(seed)
    torch.manual_seed(seed)


def set_device(device: Union[str, torch.device]):
    if isinstance(device, torch.device):
        return device
    if device == "cuda" and torch.cuda.is_available():
        return torch.device("cuda")
    return torch.device("cpu")


def set_float_precision(precision: Union[int, torch.dtype]):
    if isinstance(precision, torch.dtype):
        return precision
    if precision == 16:
        return torch.float16
    elif precision == 32:
        return torch.float32
    elif precision == 64:
        return torch.float64
    else:
        raise ValueError("Precision must be one of [16, 32, 64]")


def complex_dtype(float_dtype: torch.dtype) -> torch.dtype:
    if float_dtype == torch.float64:
        return torch.complex128
    return torch.complex64


def parse_half_integer(value) -> int:
    """
    Returns twice a half-integer given as int, float, "3/2" or "1.5".
    """
    if isinstance(value, bool):
        raise ValueError(f"{value!r} is not a half-integer")
    if isinstance(value, str):
        text = value.strip()
        try:
            number = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"{value!r} is not a half-integer") from None
    elif isinstance(value, (int, np.integer)):
        number = Fraction(int(value))
    elif isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            raise ValueError(f"{value!r} is not a half-integer")
        number = Fraction(float(value))
    elif isinstance(value, Fraction):
        number = value
    else:
        raise ValueError(f"{value!r} is not a half-integer")
    doubled = 2 * number
    if doubled.denominator != 1:
        raise ValueError(f"{value!r} is not a half-integer")
    return int(doubled)


def format_half(doubled: int) -> str:
    if doubled % 2 == 0:
        return str(doubled // 2)
    return f"{doubled}/2"


def format_float(value: float) -> str:
    return "%.15e" % value


def format_significant(value) -> str:
    value = complex(value)
    if value.imag == 0.0:
        return "%.15g" % value.real
    sign = "+" if value.imag >= 0 else "-"
    return "%.15g%s%.15gj" % (value.real, sign, abs(value.imag))


def compensated_sum(values: Iterable) -> complex:
    """
    Exact-rounding sum of real or complex values.
    """
    if not isinstance(values, np.ndarray):
        values = np.asarray(list(values))
    if np.iscomplexobj(values):
        return complex(math.fsum(values.real.ravel()), math.fsum(values.imag.ravel()))
    return math.fsum(values.ravel())


class NeumaierAccumulator:
    """
    Vectorised compensated summation: adds arrays term by term, keeping a
    running correction per entry.
    """

    def __init__(self, shape, complex_values: bool = True):
        self.complex_values = complex_values
        self.parts = [np.zeros(shape), np.zeros(shape)] if complex_values else [
            np.zeros(shape)
        ]
        self.corrections = [np.zeros(shape) for _ in self.parts]

    def add(self, term):
        term = np.asarray(term)
        pieces = [term.real, term.imag] if self.complex_values else [term.real]
        for idx, piece in enumerate(pieces):
            total = self.parts[idx]
            new_total = total + piece
            big = np.abs(total) >= np.abs(piece)
            self.corrections[idx] += np.where(
                big, (total - new_total) + piece, (piece - new_total) + total
            )
            self.parts[idx] = new_total

    def result(self):
        real = self.parts[0] + self.corrections[0]
        if not self.complex_values:
            return real
        return real + 1j * (self.parts[1] + self.corrections[1])


def _two_sum(a, b):
    s = a + b
    z = s - a
    return s, (a - (s - z)) + (b - z)


def _split(a):
    c = 134217729.0 * a  # 2^27 + 1
    high = c - (c - a)
    return high, a - high


def _two_product(a, b):
    p = a * b
    a_high, a_low = _split(a)
    b_high, b_low = _split(b)
    return p, ((a_high * b_high - p) + a_high * b_low + a_low * b_high) + a_low * b_low


def compensated_horner(coefficients, t):
    """
    Polynomial sum_k c_k t^k (lowest power first) by compensated Horner:
    as accurate as Horner run in twice the working precision.
    """
    t = np.asarray(t, dtype=float)
    coefficients = [float(c) for c in coefficients]
    total = np.full(t.shape, coefficients[-1])
    correction = np.zeros_like(t)
    for c in reversed(coefficients[:-1]):
        product, product_error = _two_product(total, t)
        total, sum_error = _two_sum(product, np.full(t.shape, c))
        correction = correction * t + (product_error + sum_error)
    return total + correction


def richardson_derivative(f, x, order: int = 1, h: float = 1e-3):
    """
    5-point central difference at h and h/2, combined by Richardson
    extrapolation. Returns (derivative, error estimate).
    """
    x = np.asarray(x, dtype=float)

    def stencil(step):
        fm2, fm1 = f(x - 2 * step), f(x - step)
        fp1, fp2 = f(x + step), f(x + 2 * step)
        if order == 1:
            return (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * step)
        elif order == 2:
            f0 = f(x)
            return (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * step**2)
        else:
            raise NotImplementedError(f"Derivative of order {order} not implemented")

    coarse = stencil(h)
    fine = stencil(h / 2)
    extrapolated = (16 * fine - coarse) / 15
    return extrapolated, np.abs(fine - coarse)
