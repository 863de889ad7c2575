from typing import Dict, Optional, Tuple, Union

import numpy as np
import torch
from torchtyping import TensorType

from basis.indices import IndexConstraintError, MultiIndex, Window
from utils.common import complex_dtype, set_device, set_float_precision


class CoeffVec:
    """
    Complex coefficient vector over a finite index window, stored densely in
    the window's canonical index order.
    """

    def __init__(
        self,
        window: Window,
        amplitudes: Optional[Union[TensorType["window"], np.ndarray, Dict]] = None,
        device: str = "cpu",
        float_precision: int = 64,
    ):
        self.window = window
        self.family = window.family
        self.device = set_device(device)
        self.float = set_float_precision(float_precision)
        self.complex = complex_dtype(self.float)
        if amplitudes is None:
            self.amplitudes = torch.zeros(
                len(window), dtype=self.complex, device=self.device
            )
        elif isinstance(amplitudes, dict):
            self.amplitudes = torch.zeros(
                len(window), dtype=self.complex, device=self.device
            )
            for key, value in amplitudes.items():
                comp = tuple(key.components) if isinstance(key, MultiIndex) else tuple(key)
                self.family.basis.validate(comp)
                if comp not in window:
                    raise IndexConstraintError(
                        f"{self.family.basis.label(comp)} lies outside window {window}"
                    )
                self.amplitudes[window.position[comp]] = complex(value)
        else:
            amplitudes = torch.as_tensor(amplitudes, device=self.device).to(self.complex)
            if amplitudes.shape != (len(window),):
                raise ValueError(
                    f"amplitudes of shape {tuple(amplitudes.shape)} do not match "
                    f"window of size {len(window)}"
                )
            self.amplitudes = amplitudes

    @classmethod
    def basis_vector(cls, window: Window, comp, **kwargs) -> "CoeffVec":
        return cls(window, {tuple(comp): 1.0}, **kwargs)

    def _like(self, amplitudes, window=None) -> "CoeffVec":
        return CoeffVec(
            window or self.window,
            amplitudes,
            device=self.device,
            float_precision=self.float,
        )

    def __getitem__(self, comp) -> complex:
        comp = tuple(comp)
        if comp not in self.window:
            return 0j
        return complex(self.amplitudes[self.window.position[comp]])

    def entries(self) -> Dict[Tuple[int, ...], complex]:
        nonzero = torch.nonzero(self.amplitudes).flatten().tolist()
        return {self.window.indices[i]: complex(self.amplitudes[i]) for i in nonzero}

    def norm0(self) -> float:
        return float(torch.linalg.vector_norm(self.amplitudes))

    def is_finite(self) -> bool:
        return bool(torch.all(torch.isfinite(self.amplitudes)))

    def embed(self, window: Window) -> "CoeffVec":
        """
        Same vector on another window of the family; dropping a nonzero
        amplitude is an error.
        """
        if window.family != self.family:
            raise ValueError(f"cannot embed {self.family} vector into {window}")
        target = torch.zeros(len(window), dtype=self.complex, device=self.device)
        for comp, value in self.entries().items():
            if comp not in window:
                raise IndexConstraintError(
                    f"{self.family.basis.label(comp)} lies outside window {window}"
                )
            target[window.position[comp]] = value
        return self._like(target, window)

    def _check_compatible(self, other: "CoeffVec"):
        if other.window != self.window:
            raise ValueError(f"windows differ: {self.window} vs {other.window}")

    def __add__(self, other: "CoeffVec") -> "CoeffVec":
        self._check_compatible(other)
        return self._like(self.amplitudes + other.amplitudes)

    def __sub__(self, other: "CoeffVec") -> "CoeffVec":
        self._check_compatible(other)
        return self._like(self.amplitudes - other.amplitudes)

    def __mul__(self, scalar) -> "CoeffVec":
        return self._like(self.amplitudes * complex(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "CoeffVec":
        return self._like(-self.amplitudes)

    def __repr__(self):
        return f"CoeffVec({self.window}, nnz={len(self.entries())})"
