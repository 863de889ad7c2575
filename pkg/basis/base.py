from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from basis.indices import FamilyId, IndexConstraintError
from utils.common import format_half


class Basis:
    """
    Base class of the special-function families. Subclasses declare the
    quantum-number layout and implement validation, enumeration and kernel
    evaluation; components arrive as integer tuples with the names listed in
    `doubled` stored as twice their value.
    """

    tag: str = None
    names: Tuple[str, ...] = ()
    doubled: Tuple[str, ...] = ()
    degree_name: str = None
    degree_aliases: Tuple[str, ...] = ()
    # Natural coordinates of the family domain, in evaluation order
    domain: Tuple[str, ...] = ()
    measure: str = None

    def __init__(self, family: FamilyId):
        if family.tag != self.tag:
            raise ValueError(f"{type(self).__name__} cannot serve family {family}")
        self.family = family
        self.alpha = family.alpha

    def validate(self, comp: Tuple[int, ...]):
        if len(comp) != len(self.names):
            raise IndexConstraintError(
                f"{self.tag} index needs {len(self.names)} components "
                f"({', '.join(self.names)}), got {len(comp)}"
            )
        self.check(comp)

    def check(self, comp: Tuple[int, ...]):
        raise NotImplementedError

    def is_valid(self, comp: Tuple[int, ...]) -> bool:
        try:
            self.validate(comp)
        except IndexConstraintError:
            return False
        return True

    def degree(self, comp: Tuple[int, ...]) -> Fraction:
        raise NotImplementedError

    def candidates(self, max_degree: Fraction) -> Iterable[Tuple[int, ...]]:
        raise NotImplementedError

    def enumerate(
        self,
        max_degree: Fraction,
        fixed: Optional[Dict[str, int]] = None,
        parity: Optional[str] = None,
    ) -> List[Tuple[int, ...]]:
        fixed = fixed or {}
        if parity is not None and not self.doubled:
            raise ValueError(f"parity restriction not defined for {self.tag}")
        selected = []
        for comp in self.candidates(Fraction(max_degree)):
            if not self.is_valid(comp) or self.degree(comp) > max_degree:
                continue
            if any(comp[self.names.index(k)] != v for k, v in fixed.items()):
                continue
            if parity == "integer" and comp[0] % 2:
                continue
            if parity == "half" and comp[0] % 2 == 0:
                continue
            selected.append(comp)
        return sorted(selected, key=lambda comp: (self.degree(comp), comp))

    def value(self, comp: Tuple[int, ...], name: str) -> Fraction:
        pos = self.names.index(name)
        if name in self.doubled:
            return Fraction(comp[pos], 2)
        return Fraction(comp[pos])

    def label(self, comp: Tuple[int, ...]) -> str:
        parts = []
        for name, c in zip(self.names, comp):
            parts.append(f"{name}={format_half(c) if name in self.doubled else c}")
        return f"{self.tag}({', '.join(parts)})"

    def scale(self, comp: Tuple[int, ...]) -> float:
        return 1.0

    def evaluate(self, comp: Tuple[int, ...], *coords, weighted: bool = True):
        """
        Unscaled kernel at natural coordinates. With weighted=False the
        factor absorbed by the family's Gauss rule is left out.
        """
        raise NotImplementedError

    def evaluate_scaled(self, comp, *coords, weighted: bool = True):
        return self.scale(comp) * np.asarray(
            self.evaluate(comp, *coords, weighted=weighted)
        )


def orthonormal_scale(family: FamilyId, index) -> Tuple[float, str]:
    """
    Factor that makes the family orthonormal, with the measure it refers to.
    """
    basis = family.basis
    comp = tuple(index.components) if hasattr(index, "components") else tuple(index)
    basis.validate(comp)
    return basis.scale(comp), basis.measure
