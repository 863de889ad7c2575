"""
Generator tables of the algebras acting on the special-function families.

Components reach the amplitude functions as stored, so half-integer
quantum numbers appear doubled (tj = 2j, tm = 2m, tq = 2q) and amplitudes
are written as exact fractions of products of doubled values.
"""
from typing import Callable, Dict, List, NamedTuple, Optional, Tuple, Union

from algebra.generators import GeneratorSpec, OperatorExpr, ShiftTerm, diagonal, ladder, root
from basis.indices import FamilyId

Operator = Union[GeneratorSpec, OperatorExpr]
E = OperatorExpr.of


class Commutator(NamedTuple):
    label: str
    left: Operator
    right: Operator
    expected: Operator


class Casimir(NamedTuple):
    label: str
    expression: OperatorExpr
    # predicted eigenvalue, as a function of the index components
    predicted: Callable[[Tuple[int, ...]], float]


class Algebra:
    """
    Base algebra: a family, a generator table, derived expressions and the
    relations that are asserted on them.
    """

    tag: str = None
    family_tag: str = None
    default_window: str = None

    def __init__(self, alpha: Optional[float] = None, **kwargs):
        self.family = FamilyId(self.family_tag, alpha if self.family_tag == "LaguerreM" else None)
        self.alpha = self.family.alpha
        self.generators: Dict[str, GeneratorSpec] = self.build()
        self.expressions: Dict[str, OperatorExpr] = self.build_expressions()

    def build(self) -> Dict[str, GeneratorSpec]:
        raise NotImplementedError

    def build_expressions(self) -> Dict[str, OperatorExpr]:
        return {}

    def __getitem__(self, name: str) -> Operator:
        if name in self.generators:
            return self.generators[name]
        if name in self.expressions:
            return self.expressions[name]
        raise KeyError(f"{self.tag} has no generator {name}")

    def identity(self) -> OperatorExpr:
        return OperatorExpr.identity(self.family)

    def generator_list(self) -> List[GeneratorSpec]:
        unique = []
        for g in self.generators.values():
            if g not in unique:
                unique.append(g)
        return unique

    def commutators(self) -> List[Commutator]:
        return []

    def casimirs(self) -> List[Casimir]:
        return []

    def identities(self) -> List[Tuple[str, OperatorExpr]]:
        """
        Expressions that must vanish identically.
        """
        return []

    def adjoint_pairs(self) -> List[Tuple[str, str]]:
        return []

    def weight_pairs(self) -> List[Tuple[str, str]]:
        """
        (ladder, cartan) pairs for the weight relation.
        """
        return []

    def window_options(self) -> List[str]:
        """
        Windows on which the relations are asserted.
        """
        return [self.default_window]


def commutator(a: Operator, b: Operator) -> OperatorExpr:
    return E(a) * E(b) - E(b) * E(a)


def anticommutator(a: Operator, b: Operator) -> OperatorExpr:
    return E(a) * E(b) + E(b) * E(a)


class SU2AssocLaguerre(Algebra):
    tag = "su2_assoc_laguerre"
    family_tag = "PlaneZ"
    default_window = "j<=6"

    def build(self):
        f = self.family
        k_plus = ladder(
            "K+", f, (0, 2), lambda c: root((c[0] - c[1]) * (c[0] + c[1] + 2), 4)
        )
        k_minus = ladder(
            "K-", f, (0, -2), lambda c: root((c[0] + c[1]) * (c[0] - c[1] + 2), 4)
        )
        k_three = diagonal("K3", f, lambda c: c[1] / 2)
        return {
            "K+": k_plus,
            "K-": k_minus,
            "K3": k_three,
            "J+": k_plus,
            "J-": k_minus,
            "J3": k_three,
            "M": diagonal("M", f, lambda c: c[1] / 2),
            "J": diagonal("J", f, lambda c: c[0] / 2),
        }

    def commutators(self):
        g = self.generators
        return [
            Commutator("Eq48-su2-commutator[K+,K-]", g["K+"], g["K-"], 2 * E(g["K3"])),
            Commutator("Eq48-su2-commutator[K3,K+]", g["K3"], g["K+"], E(g["K+"])),
            Commutator("Eq48-su2-commutator[K3,K-]", g["K3"], g["K-"], -E(g["K-"])),
        ]

    def casimirs(self):
        g = self.generators
        expression = E(g["K3"]) ** 2 + 0.5 * anticommutator(g["K+"], g["K-"])
        return [
            Casimir(
                "su2-casimir",
                expression,
                lambda c: (c[0] / 2) * (c[0] / 2 + 1),
            )
        ]

    def adjoint_pairs(self):
        return [("K+", "K-")]

    def weight_pairs(self):
        return [("K+", "M"), ("K-", "M"), ("K+", "J"), ("K-", "J"), ("M", "J")]


class HeisenbergHermite(Algebra):
    tag = "heisenberg_hermite"
    family_tag = "Hermite"
    default_window = "n<=40"

    def build(self):
        f = self.family
        return {
            "a": ladder("a", f, (-1,), lambda c: root(c[0])),
            "a+": ladder("a+", f, (1,), lambda c: root(c[0] + 1)),
            "N": diagonal("N", f, lambda c: float(c[0])),
            "I": diagonal("I", f, lambda c: 1.0),
        }

    def build_expressions(self):
        g = self.generators
        scale = 2**-0.5
        return {
            "Q": scale * (E(g["a"]) + g["a+"]),
            "P": 1j * scale * (E(g["a"]) - g["a+"]),
        }

    def commutators(self):
        g, x = self.generators, self.expressions
        return [
            Commutator("Eq104a-heisenberg-commutator[a,a+]", g["a"], g["a+"], E(g["I"])),
            Commutator("Eq102-heisenberg-commutator[N,a]", g["N"], g["a"], -E(g["a"])),
            Commutator("Eq102-heisenberg-commutator[N,a+]", g["N"], g["a+"], E(g["a+"])),
            Commutator("Eq100-heisenberg-commutator[Q,P]", x["Q"], x["P"], -1j * E(g["I"])),
        ]

    def casimirs(self):
        g, x = self.generators, self.expressions
        expression = 0.5 * (x["Q"] ** 2 + x["P"] ** 2) - g["N"] - 0.5 * E(g["I"])
        return [Casimir("Eq104-heisenberg-casimir", expression, lambda c: 0.0)]

    def identities(self):
        g = self.generators
        number = E(g["N"]) - 0.5 * (anticommutator(g["a"], g["a+"]) - g["I"])
        return [("Eq103-number-operator", number)]

    def adjoint_pairs(self):
        return [("a+", "a")]

    def weight_pairs(self):
        return [("a", "N"), ("a+", "N")]


class SO32Spherical(Algebra):
    tag = "so32_spherical"
    family_tag = "SphericalY"
    default_window = "l<=12"

    def build(self):
        f = self.family
        lowering = "printed lowering target raises the index; adopted the transpose of {}"
        return {
            "J+": ladder("J+", f, (0, 1), lambda c: root((c[0] - c[1]) * (c[0] + c[1] + 1))),
            "J-": ladder(
                "J-",
                f,
                (0, -1),
                lambda c: root((c[0] + c[1]) * (c[0] - c[1] + 1)),
                lowering.format("J+"),
            ),
            "K+": ladder("K+", f, (1, 0), lambda c: root((c[0] + 1) ** 2 - c[1] ** 2)),
            "K-": ladder(
                "K-",
                f,
                (-1, 0),
                lambda c: root(c[0] ** 2 - c[1] ** 2),
                lowering.format("K+"),
            ),
            "R+": ladder(
                "R+", f, (1, 1), lambda c: root((c[0] + c[1] + 2) * (c[0] + c[1] + 1))
            ),
            "R-": ladder(
                "R-",
                f,
                (-1, -1),
                lambda c: root((c[0] + c[1]) * (c[0] + c[1] - 1)),
                lowering.format("R+"),
            ),
            "S+": ladder(
                "S+", f, (1, -1), lambda c: root((c[0] - c[1] + 2) * (c[0] - c[1] + 1))
            ),
            "S-": ladder(
                "S-",
                f,
                (-1, 1),
                lambda c: root((c[0] - c[1]) * (c[0] - c[1] - 1)),
                lowering.format("S+"),
            ),
            "L": diagonal("L", f, lambda c: float(c[0])),
            "M": diagonal("M", f, lambda c: float(c[1])),
        }

    def adjoint_pairs(self):
        return [("J+", "J-"), ("K+", "K-"), ("R+", "R-"), ("S+", "S-")]

    def weight_pairs(self):
        ladders = ["J+", "J-", "K+", "K-", "R+", "R-", "S+", "S-"]
        pairs = [(x, cartan) for x in ladders for cartan in ("L", "M")]
        return pairs + [("M", "L")]


class SU11Laguerre(Algebra):
    tag = "su11_laguerre"
    family_tag = "LaguerreM"
    default_window = "n<=30"

    def __init__(self, alpha: Optional[float] = 0.0, **kwargs):
        super().__init__(alpha=0.0 if alpha is None else alpha, **kwargs)

    def build(self):
        f, alpha = self.family, self.alpha
        return {
            "K+": ladder("K+", f, (1,), lambda c: root((c[0] + 1) * (c[0] + alpha + 1))),
            "K-": ladder(
                "K-",
                f,
                (-1,),
                lambda c: root(c[0] * (c[0] + alpha)),
                "printed target is n+1; adopted n-1 as the transpose of K+",
            ),
            "K3": diagonal("K3", f, lambda c: c[0] + (alpha + 1) / 2),
            "N": diagonal("N", f, lambda c: float(c[0])),
            "I": diagonal("I", f, lambda c: 1.0),
        }

    def build_expressions(self):
        g = self.generators
        return {
            "Y": -(E(g["K+"]) + g["K-"]) + 2 * E(g["N"]) + (self.alpha + 1) * E(g["I"])
        }

    def commutators(self):
        g = self.generators
        return [
            Commutator("Eq145-su11-commutator[K3,K+]", g["K3"], g["K+"], E(g["K+"])),
            Commutator("Eq145-su11-commutator[K3,K-]", g["K3"], g["K-"], -E(g["K-"])),
            Commutator("Eq145-su11-commutator[K+,K-]", g["K+"], g["K-"], -2 * E(g["K3"])),
        ]

    def casimirs(self):
        g = self.generators
        expression = E(g["K3"]) ** 2 - 0.5 * anticommutator(g["K+"], g["K-"])
        value = (self.alpha**2 - 1) / 4
        return [Casimir("Eq146-su11-casimir", expression, lambda c: value)]

    def adjoint_pairs(self):
        return [("K+", "K-")]

    def weight_pairs(self):
        return [("K+", "K3"), ("K-", "K3"), ("K+", "N"), ("K-", "N")]


def _su22_ladder(name, family, sign, shift, first, second):
    """
    su(2,2) ladder with amplitude sqrt(first(c) * second(c)) / 2 built from
    doubled components.
    """
    return ladder(name, family, tuple(sign * s for s in shift), lambda c: root(first(c) * second(c), 4))


class SU22Jacobi(Algebra):
    tag = "su22_jacobi"
    family_tag = "JacobiJ"
    default_window = "j<=4"

    def build(self):
        f = self.family
        table = {
            # name: (shift of the raising member, raising factors, lowering factors)
            "A": ((0, 2, 0), (lambda c: c[0] - c[1], lambda c: c[0] + c[1] + 2),
                  (lambda c: c[0] + c[1], lambda c: c[0] - c[1] + 2)),
            "B": ((0, 0, 2), (lambda c: c[0] - c[2], lambda c: c[0] + c[2] + 2),
                  (lambda c: c[0] + c[2], lambda c: c[0] - c[2] + 2)),
            "C": ((1, 1, 1), (lambda c: c[0] + c[1] + 2, lambda c: c[0] + c[2] + 2),
                  (lambda c: c[0] + c[1], lambda c: c[0] + c[2])),
            "D": ((1, 1, -1), (lambda c: c[0] + c[1] + 2, lambda c: c[0] - c[2] + 2),
                  (lambda c: c[0] + c[1], lambda c: c[0] - c[2])),
            "E": ((1, -1, 1), (lambda c: c[0] - c[1] + 2, lambda c: c[0] + c[2] + 2),
                  (lambda c: c[0] - c[1], lambda c: c[0] + c[2])),
            "F": ((1, -1, -1), (lambda c: c[0] - c[1] + 2, lambda c: c[0] - c[2] + 2),
                  (lambda c: c[0] - c[1], lambda c: c[0] - c[2])),
        }
        generators = {}
        for name, (shift, raising, lowering) in table.items():
            generators[name + "+"] = _su22_ladder(name + "+", f, 1, shift, *raising)
            generators[name + "-"] = _su22_ladder(name + "-", f, -1, shift, *lowering)
        sector = "acts on the |m| >= |q| sector; zero elsewhere"
        generators["K+"] = ladder(
            "K+",
            f,
            (2, 0, 0),
            lambda c: root((c[0] + 2) ** 2 - c[1] ** 2, 4) if abs(c[1]) >= abs(c[2]) else 0.0,
            sector,
        )
        generators["K-"] = ladder(
            "K-",
            f,
            (-2, 0, 0),
            lambda c: root(c[0] ** 2 - c[1] ** 2, 4) if abs(c[1]) >= abs(c[2]) else 0.0,
            sector,
        )
        # Inverse square roots completing K from F C
        generators["Dinv+"] = diagonal(
            "Dinv+", f, lambda c: 1.0 / root((c[0] + 2) ** 2 - c[2] ** 2, 4)
        )
        generators["Dinv-"] = diagonal(
            "Dinv-",
            f,
            lambda c: 1.0 / root(c[0] ** 2 - c[2] ** 2, 4) if abs(c[2]) < c[0] else 0.0,
        )
        generators["J"] = diagonal("J", f, lambda c: c[0] / 2)
        generators["M"] = diagonal("M", f, lambda c: c[1] / 2)
        generators["Q"] = diagonal("Q", f, lambda c: c[2] / 2)
        generators["I"] = diagonal("I", f, lambda c: 1.0)
        return generators

    def build_expressions(self):
        g = self.generators
        return {
            "K3": E(g["J"]) + 0.5 * E(g["I"]),
            "FC+": E(g["F+"]) * g["C+"] * g["Dinv+"],
            "FC-": E(g["F-"]) * g["C-"] * g["Dinv-"],
        }

    def window_options(self):
        # fixed (m, q) with |m| > |q|, both j parities
        return [
            "j<=10,m=2,q=1",
            "j<=19/2,m=3/2,q=1/2",
            "j<=10,m=-2,q=0",
            "j<=10,m=3,q=-2",
        ]

    def commutators(self):
        g, x = self.generators, self.expressions
        return [
            Commutator("Eq169-su22-commutator[K3,K+]", x["K3"], g["K+"], E(g["K+"])),
            Commutator("Eq169-su22-commutator[K3,K-]", x["K3"], g["K-"], -E(g["K-"])),
            Commutator("Eq169-su22-commutator[K+,K-]", g["K+"], g["K-"], -2 * x["K3"]),
        ]

    def casimirs(self):
        g, x = self.generators, self.expressions
        expression = x["K3"] ** 2 - 0.5 * anticommutator(g["K+"], g["K-"])
        return [Casimir("Eq169-su22-casimir", expression, lambda c: (c[1] / 2) ** 2 - 0.25)]

    def adjoint_pairs(self):
        return [(name + "+", name + "-") for name in "ABCDEF"] + [("K+", "K-")]

    def weight_pairs(self):
        ladders = [name + sign for name in "ABCDEF" for sign in "+-"]
        pairs = [(x, cartan) for x in ladders for cartan in ("J", "M", "Q")]
        return pairs + [("K+", "J"), ("K-", "J"), ("M", "Q"), ("J", "M")]


class ZernikeSU11xSU11(Algebra):
    tag = "su11xsu11_zernike"
    family_tag = "ZernikeW"
    default_window = "u+v<=20"

    def build(self):
        f = self.family

        def alpha_amplitude(c):
            u, v = c
            return (u + 1) / root((u + v + 1) * (u + v + 2))

        def beta_amplitude(c):
            u, v = c
            if v == 0:
                return 0.0
            return v / root((u + v) * (u + v + 1))

        disk = GeneratorSpec(
            "P",
            f,
            (
                ShiftTerm((1, 0), alpha_amplitude),
                ShiftTerm((0, -1), beta_amplitude),
            ),
            "multiplication by r exp(i phi)",
        )
        return {
            "U": diagonal("U", f, lambda c: float(c[0])),
            "V": diagonal("V", f, lambda c: float(c[1])),
            "A+": ladder("A+", f, (1, 0), lambda c: float(c[0] + 1)),
            "A-": ladder("A-", f, (-1, 0), lambda c: float(c[0])),
            "B+": ladder("B+", f, (0, 1), lambda c: float(c[1] + 1)),
            "B-": ladder("B-", f, (0, -1), lambda c: float(c[1])),
            "I": diagonal("I", f, lambda c: 1.0),
            "P": disk,
        }

    def build_expressions(self):
        g = self.generators
        return {
            "A3": E(g["U"]) + 0.5 * E(g["I"]),
            "B3": E(g["V"]) + 0.5 * E(g["I"]),
        }

    def commutators(self):
        g, x = self.generators, self.expressions
        relations = []
        for side, three, count in (("A", x["A3"], g["U"]), ("B", x["B3"], g["V"])):
            plus, minus = g[side + "+"], g[side + "-"]
            relations += [
                Commutator(f"Eq232-zernike-commutator[{side}3,{side}+]", three, plus, E(plus)),
                Commutator(f"Eq232-zernike-commutator[{side}3,{side}-]", three, minus, -E(minus)),
                Commutator(f"Eq232-zernike-commutator[{side}+,{side}-]", plus, minus, -2 * three),
                Commutator(
                    f"Eq232-zernike-commutator[{count.name},{side}+]", count, plus, E(plus)
                ),
                Commutator(
                    f"Eq232-zernike-commutator[{count.name},{side}-]", count, minus, -E(minus)
                ),
            ]
        a_side = {"A+": g["A+"], "A-": g["A-"], "A3": x["A3"], "U": g["U"]}
        b_side = {"B+": g["B+"], "B-": g["B-"], "B3": x["B3"], "V": g["V"]}
        zero = OperatorExpr.zero(self.family)
        for a_name, a in a_side.items():
            for b_name, b in b_side.items():
                relations.append(
                    Commutator(f"Eq232-zernike-commutator[{a_name},{b_name}]", a, b, zero)
                )
        return relations

    def casimirs(self):
        g, x = self.generators, self.expressions
        return [
            Casimir(
                f"Eq233-zernike-casimir-C{side}",
                x[side + "3"] ** 2 - 0.5 * anticommutator(g[side + "+"], g[side + "-"]),
                lambda c: -0.25,
            )
            for side in "AB"
        ]

    def adjoint_pairs(self):
        return [("A+", "A-"), ("B+", "B-")]

    def weight_pairs(self):
        return [
            ("A+", "U"),
            ("A-", "U"),
            ("B+", "V"),
            ("B-", "V"),
            ("A+", "V"),
            ("B+", "U"),
            ("U", "V"),
        ]


class SO2Fourier(Algebra):
    tag = "so2_fourier"
    family_tag = "FourierCircle"
    default_window = "|m|<=16"

    def build(self):
        return {"J": diagonal("J", self.family, lambda c: float(c[0]))}


ALGEBRAS = {
    cls.tag: cls
    for cls in (
        SU2AssocLaguerre,
        HeisenbergHermite,
        SO32Spherical,
        SU11Laguerre,
        SU22Jacobi,
        ZernikeSU11xSU11,
        SO2Fourier,
    )
}


def get_algebra(tag: str, alpha: Optional[float] = None) -> Algebra:
    if tag not in ALGEBRAS:
        raise ValueError(f"unknown algebra {tag}, expected one of {sorted(ALGEBRAS)}")
    return ALGEBRAS[tag](alpha=alpha)


def algebra_generators(tag: str, alpha: Optional[float] = None) -> List[GeneratorSpec]:
    return get_algebra(tag, alpha).generator_list()
