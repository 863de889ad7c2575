"""
Family tags, multi-indices and finite index windows.

Half-integer quantum numbers (j, m, q) are stored doubled so that every
validity check is integer arithmetic.
"""
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property
from typing import Dict, Optional, Tuple

from utils.common import format_half, parse_half_integer

TAGS = (
    "FourierCircle",
    "Hermite",
    "LaguerreM",
    "AssocLaguerre",
    "PlaneZ",
    "SphericalY",
    "JacobiJ",
    "HypersphereN",
    "ZernikeR",
    "ZernikeW",
)

ALIASES = {
    "fourier": "FourierCircle",
    "hermite": "Hermite",
    "laguerre-m": "LaguerreM",
    "assoc-laguerre": "AssocLaguerre",
    "plane-z": "PlaneZ",
    "sph-y": "SphericalY",
    "jacobi-j": "JacobiJ",
    "hypersphere-n": "HypersphereN",
    "zernike-r": "ZernikeR",
    "zernike-w": "ZernikeW",
}


class IndexConstraintError(ValueError):
    pass


@dataclass(frozen=True)
class FamilyId:
    tag: str
    alpha: Optional[float] = None

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown family {self.tag}")
        if self.tag == "LaguerreM":
            if self.alpha is None or not float(self.alpha) > -1:
                raise IndexConstraintError(
                    f"alpha > -1 violated for LaguerreM (alpha={self.alpha})"
                )
            object.__setattr__(self, "alpha", float(self.alpha))
        elif self.alpha is not None:
            raise ValueError(f"family {self.tag} takes no alpha")

    @classmethod
    def parse(cls, name: str, alpha: Optional[float] = None) -> "FamilyId":
        key = name.strip().replace("_", "-")
        if name in TAGS:
            tag = name
        elif key.lower() in ALIASES:
            tag = ALIASES[key.lower()]
        else:
            raise ValueError(f"unknown family {name}")
        if tag == "LaguerreM" and alpha is None:
            alpha = 0.0
        return cls(tag, alpha if tag == "LaguerreM" else None)

    @property
    def basis(self):
        from basis.registry import get_basis

        return get_basis(self)

    def __str__(self):
        if self.alpha is not None:
            return f"{self.tag}(alpha={self.alpha:g})"
        return self.tag


@dataclass(frozen=True)
class MultiIndex:
    family: FamilyId
    components: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(int(c) for c in self.components))
        self.family.basis.validate(self.components)

    def value(self, name: str) -> Fraction:
        """
        Quantum number by name, halved where stored doubled.
        """
        return self.family.basis.value(self.components, name)

    @property
    def degree(self) -> Fraction:
        return self.family.basis.degree(self.components)

    def __str__(self):
        return self.family.basis.label(self.components)


@dataclass(frozen=True)
class Window:
    """
    All valid indices of one family with degree <= max_degree, optionally
    with some components pinned and a j-parity restriction.
    """

    family: FamilyId
    max_degree: Fraction
    fixed: Tuple[Tuple[str, int], ...] = ()
    parity: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "max_degree", Fraction(self.max_degree))
        object.__setattr__(self, "fixed", tuple(sorted(self.fixed)))
        if self.parity not in (None, "integer", "half"):
            raise ValueError(f"parity must be 'integer' or 'half', got {self.parity}")
        names = self.family.basis.names
        for name, _ in self.fixed:
            if name not in names:
                raise ValueError(
                    f"{name} is not a quantum number of {self.family} ({', '.join(names)})"
                )

    @cached_property
    def indices(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(
            self.family.basis.enumerate(self.max_degree, dict(self.fixed), self.parity)
        )

    @cached_property
    def position(self) -> Dict[Tuple[int, ...], int]:
        return {comp: pos for pos, comp in enumerate(self.indices)}

    def __len__(self):
        return len(self.indices)

    def __contains__(self, components) -> bool:
        return tuple(components) in self.position

    def multi_indices(self):
        return [MultiIndex(self.family, comp) for comp in self.indices]

    def degrees(self):
        basis = self.family.basis
        return [basis.degree(comp) for comp in self.indices]

    def with_max_degree(self, max_degree) -> "Window":
        return replace(self, max_degree=Fraction(max_degree))

    def to_text(self) -> str:
        basis = self.family.basis
        parts = [f"{basis.degree_name}<={_format_fraction(self.max_degree)}"]
        for name, value in self.fixed:
            if name in basis.doubled:
                parts.append(f"{name}={format_half(value)}")
            else:
                parts.append(f"{name}={value}")
        if self.parity is not None:
            parts.append(f"parity={self.parity}")
        return ",".join(parts)

    def __str__(self):
        return f"{self.family}[{self.to_text()}]"


def _format_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_window(family: FamilyId, text: str) -> Window:
    """
    Parses window bounds such as "j<=8,m=1/2,parity=half", "u+v<=12",
    "|m|<=16" or "l<=10,m=2".
    """
    basis = family.basis
    max_degree = None
    fixed = []
    parity = None
    for raw in str(text).split(","):
        item = raw.strip().replace(" ", "")
        if not item:
            continue
        if "<=" in item:
            name, bound = item.split("<=", 1)
            if name not in (basis.degree_name,) + basis.degree_aliases:
                raise ValueError(
                    f"window bound on {name} not supported for {family}, "
                    f"use {basis.degree_name}<=N"
                )
            max_degree = Fraction(parse_half_integer(bound), 2)
        elif "=" in item:
            name, value = item.split("=", 1)
            if name == "parity":
                parity = value
            elif name in basis.doubled:
                fixed.append((name, parse_half_integer(value)))
            elif name in basis.names:
                try:
                    fixed.append((name, int(value)))
                except ValueError:
                    raise ValueError(f"{name} must be an integer, got {value}") from None
            else:
                raise ValueError(
                    f"{name} is not a quantum number of {family} ({', '.join(basis.names)})"
                )
        else:
            raise ValueError(f"cannot parse window constraint {item!r}")
    if max_degree is None:
        raise ValueError(f"window {text!r} needs a {basis.degree_name}<=N bound")
    if max_degree < 0:
        raise ValueError(f"window bound must be non-negative, got {max_degree}")
    return Window(family, max_degree, tuple(fixed), parity)
