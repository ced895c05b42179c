"""
-------------------------------------------------------------------------------

    hypermono - exact algebra for the monodromy of hypersurfaces in CP^4

    This script is licensed under the MIT License.

-------------------------------------------------------------------------------
Residue formulas for the map Phi : Theta_7 -> K_d into the finite part of the
mapping class group of X_d: its kernel, its cokernel and the quotient
Theta_7 / Ker(Theta_7 -> MCG_d), with the orders derived from them.

The residue lists are kept as data (RESIDUE_TABLE) and checked to partition
Z/16 when the module is loaded.

-------
Requirements:
exactalg.py in the same folder
"""

#####################################################################
#### IMPORTS ####
import logging
from dataclasses import dataclass
from typing import Optional

from exactalg import DegreeError, FiniteAbelianGroup, HypermonoError

#####################################################################
#### PARAMETERS #####
THETA7_ORDER = 28

# d mod 16 -> (first summand of Ker(Phi), first summand of Theta_7/Ker)
RESIDUE_TABLE = {
    "ker_z4": {"residues": (2, 4, 6, 10, 12, 14), "ker": 4, "quotient": 1},
    "ker_z2": {"residues": (3, 5, 8, 11, 13), "ker": 2, "quotient": 2},
    "ker_0": {"residues": (0, 1, 7, 9, 15), "ker": 1, "quotient": 4},
}

#####################################################################
#### LOGS ####
LOGGER = logging.getLogger(__name__)


#####################################################################
#### STARTUP CHECK ####
def _check_residue_table() -> dict:
    lookup = {}
    for name, entry in RESIDUE_TABLE.items():
        for r in entry["residues"]:
            if r in lookup:
                raise HypermonoError(
                    f"residue {r} listed in both {lookup[r]} and {name}", module="kreck_su"
                )
            lookup[r] = name
        if entry["ker"] * entry["quotient"] != 4:
            raise HypermonoError(f"row {name} is not a splitting of Z/4", module="kreck_su")
    if sorted(lookup) != list(range(16)):
        raise HypermonoError("residue lists do not cover Z/16", module="kreck_su")
    return lookup


_RESIDUE_LOOKUP = _check_residue_table()


#####################################################################
#### TYPES ####
@dataclass(frozen=True)
class MCGTableRow:
    d: int
    ker_phi: FiniteAbelianGroup
    coker_phi: FiniteAbelianGroup
    theta7_mod_ker: FiniteAbelianGroup
    im_phi_order: int
    k_d_order: int
    k_constant: Optional[int]

    def to_dict(self) -> dict:
        out = {
            "d": self.d,
            "ker_phi": self.ker_phi.to_dict(),
            "coker_phi": self.coker_phi.to_dict(),
            "theta7_mod_ker": self.theta7_mod_ker.to_dict(),
            "im_phi_order": self.im_phi_order,
            "k_d_order": self.k_d_order,
        }
        if self.k_constant is not None:
            out["k_constant"] = self.k_constant
        return out


#####################################################################
#### FUNCTIONS ####
def _check_degree(d: int) -> None:
    if d < 1:
        raise DegreeError(f"degree must be at least 1, got {d}", module="kreck_su")


def _row(d: int) -> dict:
    return RESIDUE_TABLE[_RESIDUE_LOOKUP[d % 16]]


def ker_phi(d: int) -> FiniteAbelianGroup:
    _check_degree(d)
    orders = [_row(d)["ker"], 7 if d % 7 else 1]
    return FiniteAbelianGroup.from_cyclic_orders(orders)


def coker_phi(d: int) -> FiniteAbelianGroup:
    _check_degree(d)
    orders = [2 if d % 4 == 0 else 1, 3 if d % 3 == 0 else 1]
    return FiniteAbelianGroup.from_cyclic_orders(orders)


def theta7_mod_ker(d: int) -> FiniteAbelianGroup:
    _check_degree(d)
    orders = [_row(d)["quotient"], 7 if d % 7 == 0 else 1]
    return FiniteAbelianGroup.from_cyclic_orders(orders)


def k_constant(d: int) -> Optional[int]:
    """(5 - d^2) d / 4 for odd d, None for even d."""
    if d % 2 == 0:
        return None
    numerator = (5 - d * d) * d
    if numerator % 4:
        raise HypermonoError(f"(5-d^2)d/4 is not integral at d={d}", module="kreck_su")
    return numerator // 4


def table_row(d: int) -> MCGTableRow:
    """
    One row of the mapping class group table.

    PARAMS
    -------
    d : int
        degree, at least 1

    RETURNS
    -------
    MCGTableRow
        kernel, cokernel, quotient and derived orders at degree d
    """
    LOGGER.debug(f"kreck_su:table_row:parameter:d:{d}")
    ker = ker_phi(d)
    coker = coker_phi(d)
    im_order = THETA7_ORDER // ker.order
    return MCGTableRow(
        d=d,
        ker_phi=ker,
        coker_phi=coker,
        theta7_mod_ker=theta7_mod_ker(d),
        im_phi_order=im_order,
        k_d_order=im_order * coker.order,
        k_constant=k_constant(d),
    )


def mcg_table(d_from: int, d_to: int) -> list:
    if d_from > d_to:
        raise DegreeError(f"empty degree range {d_from}..{d_to}", module="kreck_su")
    return [table_row(d) for d in range(d_from, d_to + 1)]


def theta7_order_check(d: int) -> bool:
    """|Ker(Phi)| * |Theta_7 / Ker| = |Theta_7|."""
    return ker_phi(d).order * theta7_mod_ker(d).order == THETA7_ORDER


def finite_residual(d: int) -> dict:
    """
    The finite residual of Im(alpha) is Theta_7 / Ker(Theta_7 -> MCG_d), so
    Im(alpha) fails to be residually finite exactly when that group is
    nontrivial.
    """
    group = theta7_mod_ker(d)
    return {
        "finite_residual": group.to_dict(),
        "residually_finite": group.is_trivial,
    }
