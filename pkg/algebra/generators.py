"""
Generators as index-shift rules, their dense matrices on a window and
linear combinations of products of them.

A generator matrix is paired with an overflow mask over source columns: a
column overflows when some nonzero image lands outside the window. Products
propagate the mask, so the columns left unmasked are exactly the interior
subwindow on which an expression is computed without truncation.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Tuple, Union

import torch
from torchtyping import TensorType

from algebra.coeffs import CoeffVec
from basis.indices import FamilyId, Window
from utils.common import complex_dtype, set_device, set_float_precision


class WindowOverflowError(ValueError):
    pass


class EmptyInteriorError(WindowOverflowError):
    pass


def root(numerator, denominator=1) -> float:
    """
    sqrt(numerator/denominator) of exact integer arithmetic; negative input
    means an amplitude formula was evaluated outside its range.
    """
    value = Fraction(numerator) / Fraction(denominator)
    if value < 0:
        raise ValueError(f"negative amplitude square {value}")
    return math.sqrt(value)


@dataclass(frozen=True)
class ShiftTerm:
    shift: Tuple[int, ...]
    amplitude: Callable[[Tuple[int, ...]], float]


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    family: FamilyId
    terms: Tuple[ShiftTerm, ...]
    note: str = ""

    @property
    def is_diagonal(self) -> bool:
        return all(not any(term.shift) for term in self.terms)

    def image(self, comp: Tuple[int, ...]):
        """
        (target, amplitude) pairs of the generator on one basis index;
        annihilated terms are skipped.
        """
        basis = self.family.basis
        images = []
        for term in self.terms:
            amplitude = term.amplitude(comp)
            if amplitude == 0:
                continue
            target = tuple(c + s for c, s in zip(comp, term.shift))
            if not basis.is_valid(target):
                raise ValueError(
                    f"{self.name} maps {basis.label(comp)} to invalid index {target} "
                    f"with amplitude {amplitude}"
                )
            images.append((target, amplitude))
        return images

    def eigenvalue(self, comp: Tuple[int, ...]) -> float:
        if not self.is_diagonal:
            raise ValueError(f"{self.name} is not diagonal")
        return sum(term.amplitude(comp) for term in self.terms)

    def __str__(self):
        return self.name


def diagonal(name: str, family: FamilyId, value: Callable, note: str = ""):
    width = len(family.basis.names)
    return GeneratorSpec(name, family, (ShiftTerm((0,) * width, value),), note)


def ladder(name: str, family: FamilyId, shift, amplitude: Callable, note: str = ""):
    return GeneratorSpec(name, family, (ShiftTerm(tuple(shift), amplitude),), note)


def generator_matrix(
    g: GeneratorSpec,
    window: Window,
    device="cpu",
    float_precision=64,
) -> Tuple[TensorType["target", "source"], TensorType["source"]]:
    if g.family != window.family:
        raise ValueError(f"{g.name} acts on {g.family}, window is {window.family}")
    dtype = complex_dtype(set_float_precision(float_precision))
    device = set_device(device)
    size = len(window)
    matrix = torch.zeros((size, size), dtype=dtype, device=device)
    overflow = torch.zeros(size, dtype=torch.bool, device=device)
    for col, comp in enumerate(window.indices):
        for target, amplitude in g.image(comp):
            row = window.position.get(target)
            if row is None:
                overflow[col] = True
            else:
                matrix[row, col] += amplitude
    return matrix, overflow


def apply_generator(g: GeneratorSpec, v: CoeffVec, grow_window: bool = False) -> CoeffVec:
    if g.family != v.family:
        raise ValueError(f"{g.name} acts on {g.family}, vector is {v.family}")
    return OperatorExpr.of(g).apply(v, grow_window=grow_window)


class OperatorExpr:
    """
    Linear combination of products of generators. A product (g1, g2, g3)
    means g1 g2 g3, so g3 acts first.
    """

    def __init__(self, family: FamilyId, terms=()):
        self.family = family
        self.terms = tuple((complex(c), tuple(p)) for c, p in terms)

    @classmethod
    def of(cls, g: Union[GeneratorSpec, "OperatorExpr"]) -> "OperatorExpr":
        if isinstance(g, OperatorExpr):
            return g
        return cls(g.family, [(1.0, (g,))])

    @classmethod
    def identity(cls, family: FamilyId) -> "OperatorExpr":
        return cls(family, [(1.0, ())])

    @classmethod
    def zero(cls, family: FamilyId) -> "OperatorExpr":
        return cls(family, [])

    def _coerce(self, other) -> "OperatorExpr":
        if isinstance(other, (GeneratorSpec, OperatorExpr)):
            other = OperatorExpr.of(other)
            if other.family != self.family:
                raise ValueError(f"cannot combine {self.family} and {other.family}")
            return other
        return OperatorExpr(self.family, [(complex(other), ())])

    def __add__(self, other):
        other = self._coerce(other)
        return OperatorExpr(self.family, self.terms + other.terms)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-1) * self._coerce(other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return (-1) * self

    def __mul__(self, other):
        if isinstance(other, (GeneratorSpec, OperatorExpr)):
            other = self._coerce(other)
            return OperatorExpr(
                self.family,
                [
                    (c1 * c2, p1 + p2)
                    for c1, p1 in self.terms
                    for c2, p2 in other.terms
                ],
            )
        scalar = complex(other)
        return OperatorExpr(self.family, [(scalar * c, p) for c, p in self.terms])

    def __rmul__(self, other):
        if isinstance(other, (GeneratorSpec, OperatorExpr)):
            return OperatorExpr.of(other) * self
        return self * other

    def __truediv__(self, scalar):
        return self * (1.0 / scalar)

    def __pow__(self, power: int):
        result = OperatorExpr.identity(self.family)
        for _ in range(power):
            result = result * self
        return result

    def max_shift(self) -> Fraction:
        """
        Largest degree change over all products, used to size windows.
        """
        basis = self.family.basis
        worst = Fraction(0)
        for _, product in self.terms:
            total = Fraction(0)
            for g in product:
                total += max(
                    (_shift_degree(basis, term.shift) for term in g.terms),
                    default=Fraction(0),
                )
            worst = max(worst, total)
        return worst

    def matrix(
        self, window: Window, device="cpu", float_precision=64
    ) -> Tuple[TensorType["target", "source"], TensorType["source"]]:
        dtype = complex_dtype(set_float_precision(float_precision))
        device = set_device(device)
        size = len(window)
        total = torch.zeros((size, size), dtype=dtype, device=device)
        overflow = torch.zeros(size, dtype=torch.bool, device=device)
        cache = {}
        for coeff, product in self.terms:
            current = torch.eye(size, dtype=dtype, device=device)
            masked = torch.zeros(size, dtype=torch.bool, device=device)
            for g in reversed(product):
                if g not in cache:
                    cache[g] = generator_matrix(g, window, device, float_precision)
                g_matrix, g_overflow = cache[g]
                # A column overflows if it reaches any overflowing intermediate index
                reach = (current.abs() > 0).to(dtype=torch.float64).T @ g_overflow.to(
                    torch.float64
                )
                masked = masked | (reach > 0)
                current = g_matrix @ current
            total = total + coeff * current
            overflow = overflow | masked
        return total, overflow

    def apply(self, v: CoeffVec, grow_window: bool = False) -> CoeffVec:
        if v.family != self.family:
            raise ValueError(f"operator acts on {self.family}, vector is {v.family}")
        if grow_window and self.max_shift() > 0:
            # the output window depends on the operator only, never on v
            grown = v.window.with_max_degree(v.window.max_degree + self.max_shift())
            return self.apply(v.embed(grown), grow_window=False)
        matrix, overflow = self.matrix(v.window, v.device, v.float)
        touched = overflow & (v.amplitudes != 0)
        if torch.any(touched):
            first = v.window.indices[int(torch.nonzero(touched)[0])]
            raise WindowOverflowError(
                f"image of {v.family.basis.label(first)} leaves window {v.window}; "
                "enlarge the window or use an interior subwindow"
            )
        return CoeffVec(
            v.window,
            matrix @ v.amplitudes,
            device=v.device,
            float_precision=v.float,
        )

    def __repr__(self):
        parts = []
        for c, product in self.terms:
            name = " ".join(g.name for g in product) or "I"
            parts.append(f"({c:g}) {name}")
        return " + ".join(parts) or "0"


def _shift_degree(basis, shift) -> Fraction:
    names = basis.names
    if basis.degree_name in names:
        pos = names.index(basis.degree_name)
        value = Fraction(shift[pos], 2 if basis.degree_name in basis.doubled else 1)
        return abs(value)
    if basis.degree_name == "u+v":
        return Fraction(abs(shift[0]) + abs(shift[1]))
    if basis.degree_name == "|m|":
        return Fraction(abs(shift[0]))
    raise NotImplementedError(f"degree shift for {basis.tag}")


def interior(overflow: TensorType["source"]) -> TensorType["source"]:
    keep = ~overflow
    if not torch.any(keep):
        raise EmptyInteriorError("empty interior subwindow: enlarge the window")
    return keep
