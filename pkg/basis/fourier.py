import math
from fractions import Fraction

import numpy as np

from basis.base import Basis


def eval_fourier(m: int, phi):
    phi = np.asarray(phi, dtype=float)
    return np.exp(-1j * m * phi) / math.sqrt(2 * math.pi)


class FourierBasis(Basis):
    tag = "FourierCircle"
    names = ("m",)
    degree_name = "|m|"
    domain = ("phi",)
    measure = "dphi"

    def check(self, comp):
        pass

    def degree(self, comp):
        return Fraction(abs(comp[0]))

    def candidates(self, max_degree):
        top = int(max_degree)
        for m in range(-top, top + 1):
            yield (m,)

    def evaluate(self, comp, phi, weighted=True):
        return eval_fourier(comp[0], phi)
