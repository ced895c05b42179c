"""
-------------------------------------------------------------------------------

    hypermono - exact algebra for the monodromy of hypersurfaces in CP^4

    This script is licensed under the MIT License.

-------------------------------------------------------------------------------
Closed-form invariants of a smooth degree-d hypersurface X_d in CP^4.

Cohomology is generated by x in degree 2 and y in degree 4, with x^2 = d*y.
Chern data is kept in the x-basis; x_to_y() converts a coefficient of x^2 to
one of y.

    c(TX) = (1+x)^5 / (1+dx)
    w(theta_hyp) = (1+x)^5 / (1+dx) mod 2
    c(-theta_hyp) = (1+dx) / (1+x)^5

-------
Requirements:
exactalg.py in the same folder
"""

#####################################################################
#### IMPORTS ####
import logging
from dataclasses import asdict, dataclass

from exactalg import DegreeError, TruncatedSeries

#####################################################################
#### LOGS ####
LOGGER = logging.getLogger(__name__)


#####################################################################
#### TYPES ####
@dataclass(frozen=True)
class HypersurfaceInvariants:
    d: int
    chern: tuple
    euler_char: int
    b3: int
    g: int
    p1_coeff: int
    spin: bool
    v4_coeff_mod2: int

    def to_dict(self) -> dict:
        out = asdict(self)
        out["chern"] = list(self.chern)
        return out


@dataclass(frozen=True)
class EtaRestriction:
    """The homomorphism mu|Z/d : Z/d{eta} -> Z/2, given by the image of 1."""

    d: int
    image_of_generator: int

    @property
    def is_zero(self) -> bool:
        return self.image_of_generator == 0

    @property
    def is_surjective(self) -> bool:
        return self.image_of_generator == 1

    def __call__(self, t: int) -> int:
        return (t * self.image_of_generator) % 2

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "image_of_generator": self.image_of_generator,
            "is_zero": self.is_zero,
        }


#####################################################################
#### FUNCTIONS ####
def _check_degree(d: int) -> None:
    if d < 1:
        raise DegreeError(f"degree must be at least 1, got {d}", module="hypersurface")


def x_to_y(coeff: int, d: int) -> int:
    """Coefficient of y for a class written as coeff * x^2 (x^2 = d*y)."""
    return coeff * d


def chern_series(d: int, truncation: int = 3) -> TruncatedSeries:
    """c(TX) = (1+x)^5 / (1+dx) over Z."""
    five = TruncatedSeries.from_polynomial([1, 5, 10, 10, 5, 1], 0, truncation)
    linear = TruncatedSeries.from_polynomial([1, d], 0, truncation)
    return five * linear.inverse()


def compute_invariants(d: int) -> HypersurfaceInvariants:
    """
    Chern classes, Euler characteristic, rank of H^3, genus, p1, spin and the
    Wu class coefficient of X_d.

    PARAMS
    -------
    d : int
        degree, at least 1

    RETURNS
    -------
    HypersurfaceInvariants
        invariants, Chern classes in the x-basis
    """
    LOGGER.debug(f"hypersurface:compute_invariants:parameter:d:{d}")
    _check_degree(d)
    series = chern_series(d)
    c1, c2, c3 = series[1], series[2], series[3]
    euler_char = c3 * d
    b3 = 4 - euler_char
    # p1 = c1^2 - 2 c2 in the x-basis
    p1_coeff = x_to_y(c1 * c1 - 2 * c2, d)
    invariants = HypersurfaceInvariants(
        d=d,
        chern=(c1, c2, c3),
        euler_char=euler_char,
        b3=b3,
        g=b3 // 2,
        p1_coeff=p1_coeff,
        spin=c1 % 2 == 0,
        v4_coeff_mod2=wu_class_v4(stiefel_whitney_series(d, 4)),
    )
    LOGGER.debug(f"hypersurface:compute_invariants:result:{invariants}")
    return invariants


def stiefel_whitney_series(d: int, T: int) -> TruncatedSeries:
    """
    w(theta_hyp) = (1+x)^5 / (1+dx) mod 2, truncated at x^T. The coefficient
    of x^k is w_{2k}; odd Stiefel-Whitney classes vanish.
    """
    _check_degree(d)
    five = TruncatedSeries.from_polynomial([1, 5, 10, 10, 5, 1], 2, T)
    linear = TruncatedSeries.from_polynomial([1, d], 2, T)
    return five * linear.inverse()


def wu_class_v4(w: TruncatedSeries) -> int:
    """
    Coefficient of x^2 in v4 = w4 + w3 w1 + w2^2 + w1^4, for a mod-2 series
    in the degree-2 class x.
    """
    w1 = w3 = 0
    w2, w4 = w[1], w[2]
    return (w4 + w3 * w1 + w2 * w2 + w1**4) % 2


def virtual_chern_series(d: int, modulus: int, T: int) -> TruncatedSeries:
    """c(-theta_hyp) = (1+dx) / (1+x)^5."""
    _check_degree(d)
    five = TruncatedSeries.from_polynomial([1, 5, 10, 10, 5, 1], modulus, T)
    linear = TruncatedSeries.from_polynomial([1, d], modulus, T)
    return linear * five.inverse()


def mu_restriction_on_eta(d: int) -> EtaRestriction:
    """
    The restriction of the quadratic refinement to Z/d{eta}: the surjection
    onto Z/2 for even d, zero for odd d.
    """
    _check_degree(d)
    return EtaRestriction(d=d, image_of_generator=1 if d % 2 == 0 else 0)


def cohomology_ranks(d: int) -> tuple:
    """Ranks of H^0 .. H^6 of X_d."""
    b3 = compute_invariants(d).b3
    return (1, 0, 1, b3, 1, 0, 1)


def degenerate_note(d: int):
    """Note for the degrees with no S^3 x S^3 summands, None otherwise."""
    _check_degree(d)
    if d == 1:
        return "d=1: X_1 = CP^3, MCG_1 ≅ Z/4 and Mon_1 = 0, so Im(alpha) is trivial"
    if d == 2:
        return "d=2: no S^3 x S^3 summands, MCG_2 = 0, so Im(alpha) is trivial"
    return None


def invariants_table(d_from: int, d_to: int) -> list:
    """One HypersurfaceInvariants per degree in d_from..d_to."""
    return [compute_invariants(d) for d in range(d_from, d_to + 1)]
