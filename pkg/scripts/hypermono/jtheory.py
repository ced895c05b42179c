"""
-------------------------------------------------------------------------------

    hypermono - exact algebra for the monodromy of hypersurfaces in CP^4

    This script is licensed under the MIT License.

-------------------------------------------------------------------------------
K-theory of CP^4 and the 2-local J-kernel.

    K^0(CP^4)  = Z[x]/(x^5),  x = O(1) - 1
    KO^0(CP^4) = Z[y]/(y^3),  y = r(x)

Complexification c, realification r and the Adams operations on both sides
are implemented on coefficient vectors. The images r(x^3), r(x^4) are not
hard-coded: they are solved from c(r(z)) = z + psi^-1(z) using that c is
injective.

james_periodicity_check(d) tests whether r(O(d) - 5 O(1) + 4) and
(2^m - 5) y agree modulo the 2-local J-kernel lattice spanned by the
classes (psi^3 - 1) y, (psi^3 - 1) y^2.

-------
Requirements:
exactalg.py in the same folder
"""

#####################################################################
#### IMPORTS ####
import logging
from dataclasses import dataclass
from functools import lru_cache

from exactalg import (
    DegreeError,
    HypermonoError,
    IntegralityError,
    IntMatrix,
    TruncatedSeries,
    integer_left_kernel,
    lattice_membership,
    lattice_membership_2local,
)

#####################################################################
#### PARAMETERS #####
TRUNCATION = 4
DEFAULT_KS = (3,)
STABILITY_KS = (3, 5, 7, 9, 11)

#####################################################################
#### LOGS ####
LOGGER = logging.getLogger(__name__)


#####################################################################
#### TYPES ####
@dataclass(frozen=True)
class KClass:
    """a1 x + a2 x^2 + a3 x^3 + a4 x^4 in K^0(CP^4)."""

    coefficients: tuple = (0, 0, 0, 0)

    def __post_init__(self):
        if len(self.coefficients) != TRUNCATION:
            raise HypermonoError(
                f"a K-class has {TRUNCATION} coefficients, got {len(self.coefficients)}",
                module="jtheory",
            )
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))

    @classmethod
    def basis(cls, j: int) -> "KClass":
        return cls(tuple(int(i == j) for i in range(1, TRUNCATION + 1)))

    @classmethod
    def from_series(cls, series: TruncatedSeries) -> "KClass":
        if series[0]:
            raise HypermonoError("K-class series must have zero constant term", module="jtheory")
        return cls(tuple(series[j] for j in range(1, TRUNCATION + 1)))

    def to_series(self) -> TruncatedSeries:
        return TruncatedSeries(0, (0,) + self.coefficients)

    def __add__(self, other: "KClass") -> "KClass":
        return KClass(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: "KClass") -> "KClass":
        return KClass(tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def scale(self, factor: int) -> "KClass":
        return KClass(tuple(factor * a for a in self.coefficients))


@dataclass(frozen=True)
class KOClass:
    """a y + b y^2 in KO^0(CP^4)."""

    a: int = 0
    b: int = 0

    @property
    def vector(self) -> tuple:
        return (self.a, self.b)

    def __add__(self, other: "KOClass") -> "KOClass":
        return KOClass(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "KOClass") -> "KOClass":
        return KOClass(self.a - other.a, self.b - other.b)

    def scale(self, factor: int) -> "KOClass":
        return KOClass(factor * self.a, factor * self.b)


Y = KOClass(1, 0)
Y2 = KOClass(0, 1)


@dataclass(frozen=True)
class JamesVerdict:
    d: int
    two_adic_valuation: int
    target_shift: int
    class_vector: tuple
    holds: bool
    reduction_holds: bool

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "two_adic_valuation": self.two_adic_valuation,
            "target_shift": self.target_shift,
            "class_vector": list(self.class_vector),
            "holds": self.holds,
            "reduction_holds": self.reduction_holds,
        }


#####################################################################
#### COMPLEXIFICATION / REALIFICATION ####
_C_OF_Y = KClass((0, 1, -1, 1))
_C_OF_Y2 = KClass((0, 0, 0, 1))


def complexify(cls: KOClass) -> KClass:
    """c(y) = x^2 - x^3 + x^4, c(y^2) = x^4."""
    return _C_OF_Y.scale(cls.a) + _C_OF_Y2.scale(cls.b)


def complexification_matrix() -> IntMatrix:
    return IntMatrix.from_rows([_C_OF_Y.coefficients, _C_OF_Y2.coefficients])


def complexification_is_injective() -> bool:
    return not integer_left_kernel(complexification_matrix())


def _solve_c(target: KClass) -> KOClass:
    # c(a y + b y^2) = a x^2 - a x^3 + (a + b) x^4
    x1, x2, x3, x4 = target.coefficients
    a = x2
    if x1 != 0 or x3 != -a:
        raise IntegralityError(
            f"{target.coefficients} is not in the image of complexification",
            module="jtheory",
        )
    return KOClass(a, x4 - a)


@lru_cache(maxsize=None)
def _realify_basis(j: int) -> KOClass:
    z = KClass.basis(j)
    return _solve_c(z + adams_psi_C(-1, z))


def realify(cls: KClass) -> KOClass:
    """
    Realification r, linear on the basis x^j with r(x^j) solved from
    c(r(x^j)) = x^j + psi^-1(x^j).

    PARAMS
    -------
    cls : KClass
        class in the augmentation ideal of K^0(CP^4)

    RETURNS
    -------
    KOClass
        its realification
    """
    out = KOClass()
    for j, coef in enumerate(cls.coefficients, start=1):
        if coef:
            out = out + _realify_basis(j).scale(coef)
    return out


#####################################################################
#### ADAMS OPERATIONS ####
def adams_psi_C(k: int, cls: KClass) -> KClass:
    """psi^k(x^j) = ((1+x)^k - 1)^j, extended linearly."""
    one = TruncatedSeries.one(0, TRUNCATION)
    line = TruncatedSeries.from_polynomial([1, 1], 0, TRUNCATION)
    psi_x = line.power(k) - one
    out = TruncatedSeries.from_polynomial([], 0, TRUNCATION)
    for j, coef in enumerate(cls.coefficients, start=1):
        if coef:
            out = out + psi_x.power(j).scale(coef)
    return KClass.from_series(out)


def adams_psi_R(k: int, cls: KOClass) -> KOClass:
    """
    psi^k(y) = k^2 y + k^2 (k^2 - 1) / 12 y^2 and psi^k(y^2) = k^4 y^2.
    """
    square = k * k
    numerator = square * (square - 1)
    if numerator % 12:
        raise IntegralityError(f"k^2(k^2-1)/12 is not integral at k={k}", module="jtheory")
    psi_y = KOClass(square, numerator // 12)
    psi_y2 = KOClass(0, square * square)
    return psi_y.scale(cls.a) + psi_y2.scale(cls.b)


#####################################################################
#### J-KERNEL ####
def j2_kernel_lattice(ks) -> list:
    """
    Generators (psi^k - 1) y and (psi^k - 1) y^2 for k in ks, as vectors in
    the (y, y^2) basis.
    """
    ks = list(ks)
    if not ks:
        raise HypermonoError("j2_kernel_lattice needs at least one k", module="jtheory")
    generators = []
    for k in ks:
        for basis in (Y, Y2):
            generators.append((adams_psi_R(k, basis) - basis).vector)
    LOGGER.debug(f"jtheory:j2_kernel_lattice:ks:{ks}:generators:{generators}")
    return generators


def lattice_stability(ks_small=DEFAULT_KS, ks_large=STABILITY_KS) -> dict:
    """
    Compare the lattices for ks_small and ks_large: the larger set never
    loses generators, and 2-locally both span the same lattice.
    """
    small = j2_kernel_lattice(ks_small)
    large = j2_kernel_lattice(ks_large)
    contains = all(lattice_membership(large, v) for v in small)
    equal_2local = all(lattice_membership_2local(small, v) for v in large) and all(
        lattice_membership_2local(large, v) for v in small
    )
    return {
        "ks_small": list(ks_small),
        "ks_large": list(ks_large),
        "large_contains_small": contains,
        "equal_2local": equal_2local,
    }


def two_adic_valuation(n: int) -> int:
    if n == 0:
        raise HypermonoError("2-adic valuation of 0", module="jtheory")
    s = 0
    while n % 2 == 0:
        n //= 2
        s += 1
    return s


def james_class(d: int) -> KOClass:
    """r(O(d) - 5 O(1) + 4) = psi^d(y) - 5y."""
    return adams_psi_R(d, Y) - Y.scale(5)


def james_periodicity_check(d: int, m: int = None, ks=DEFAULT_KS) -> JamesVerdict:
    """
    Verdict of the 2-local James periodicity test at degree d.

    PARAMS
    -------
    d : int
        degree, divisible by 4
    m : int
        exponent of the shift 2^m - 5; 6 when 8 | d and 5 otherwise unless given
    ks : list of int
        Adams operations spanning the J-kernel lattice

    RETURNS
    -------
    JamesVerdict
        the verdict, with the reduction psi^d ~ psi^(2^s) recorded separately
    """
    LOGGER.debug(f"jtheory:james_periodicity_check:parameter:d:{d}")
    if d <= 0 or d % 4:
        raise DegreeError(f"james_periodicity_check needs 4 | d, got {d}", module="jtheory")
    if m is None:
        m = 6 if d % 8 == 0 else 5
    lattice = j2_kernel_lattice(ks)
    s = two_adic_valuation(d)
    shift = 2**m - 5
    cls = james_class(d)
    difference = cls - Y.scale(shift)
    holds = lattice_membership_2local(lattice, difference.vector)
    reduction = adams_psi_R(d, Y) - adams_psi_R(2**s, Y)
    reduction_holds = lattice_membership_2local(lattice, reduction.vector)
    LOGGER.debug(
        f"jtheory:james_periodicity_check:d:{d}:shift:{shift}:difference:{difference.vector}"
        f":holds:{holds}"
    )
    return JamesVerdict(
        d=d,
        two_adic_valuation=s,
        target_shift=shift,
        class_vector=cls.vector,
        holds=holds,
        reduction_holds=reduction_holds,
    )
