"""
-------------------------------------------------------------------------------

    hypermono - exact algebra for the monodromy of hypersurfaces in CP^4

    This script is licensed under the MIT License.

-------------------------------------------------------------------------------
The Pham module P = Z[mu_d^4] / (N_1, N_2, N_3, N_4), N_i = sum_k t_i^k, the
Looijenga quotient P / I with I generated by nu = sum_k (t_1 t_2 t_3 t_4)^k,
and the coinvariant diagram

    H_0(mu_d^4; I) --> H_0(mu_d^4; P) --> H_0(mu_d^4; P/I)

Everything is written on the full d^4 monomial basis, monomial t^a at index
a1 + d a2 + d^2 a3 + d^3 a4, with the relations appended; the Smith normal
form absorbs the redundancy.

Degrees above PHAM_MAX_D are refused unless allow_large is set (up to
PHAM_HARD_MAX_D). The environment variable HYPERMONO_MAX_D moves the bound;
results beyond the default bound carry no runtime guarantee.

-------
Requirements:
exactalg.py and hypersurface.py in the same folder

-------
Sparse dump format:
    %pham-sparse 1
    <rows> <cols>
    <row> <col> <value>      (one line per nonzero entry, 0-based)
"""

#####################################################################
#### IMPORTS ####
import itertools
import logging
import os
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import TextIO

import hypersurface
from exactalg import (
    AbelianGroupPresentation,
    BoundExceededError,
    DegreeError,
    DimensionMismatchError,
    HypermonoError,
    IntMatrix,
    sparse_cokernel,
)

#####################################################################
#### PARAMETERS #####
PHAM_MAX_D = 5
PHAM_HARD_MAX_D = 6
MAX_D_ENV = "HYPERMONO_MAX_D"
SPARSE_HEADER = "%pham-sparse 1"
VARIABLES = 4

#####################################################################
#### LOGS ####
LOGGER = logging.getLogger(__name__)


#####################################################################
#### BOUNDS ####
def max_degree() -> int:
    value = os.environ.get(MAX_D_ENV)
    if not value:
        return PHAM_MAX_D
    try:
        bound = int(value)
    except ValueError:
        raise HypermonoError(f"{MAX_D_ENV}={value!r} is not an integer", module="pham")
    LOGGER.warning(f"pham:max_degree:{MAX_D_ENV} overrides the degree bound to {bound}, unguaranteed")
    return bound


def check_degree(d: int, allow_large: bool = False) -> None:
    if d < 2:
        raise DegreeError(f"the Pham module needs d >= 2, got {d}", module="pham")
    bound = max_degree()
    if d <= bound:
        return
    if allow_large and d <= max(bound, PHAM_HARD_MAX_D):
        LOGGER.warning(f"pham:check_degree:d:{d} above the supported bound {bound}")
        return
    raise BoundExceededError(
        f"d={d} exceeds the Pham degree bound {bound} (d^4 = {d ** 4} columns)", module="pham"
    )


#####################################################################
#### GROUP RING ####
def monomial_index(a: tuple, d: int) -> int:
    return sum((x % d) * d**i for i, x in enumerate(a))


def monomials(d: int) -> list:
    """Exponent tuples (a1, .., a4) in index order."""
    return [tuple(reversed(t)) for t in itertools.product(range(d), repeat=VARIABLES)]


@dataclass(frozen=True)
class GroupAlgebraElement:
    """Element of Z[mu_d^4]: {exponent tuple: coefficient}, zero entries dropped."""

    d: int
    coefficients: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for a, c in self.coefficients.items():
            if len(a) != VARIABLES:
                raise DimensionMismatchError(f"exponent {a} is not a 4-tuple", module="pham")
            key = tuple(x % self.d for x in a)
            clean[key] = clean.get(key, 0) + c
        object.__setattr__(self, "coefficients", {a: c for a, c in clean.items() if c})

    @classmethod
    def monomial(cls, d: int, a: tuple) -> "GroupAlgebraElement":
        return cls(d, {tuple(a): 1})

    @classmethod
    def norm(cls, d: int, i: int) -> "GroupAlgebraElement":
        """N_i = sum_k t_i^k."""
        return cls(d, {tuple(k if j == i else 0 for j in range(VARIABLES)): 1 for k in range(d)})

    @classmethod
    def nu(cls, d: int) -> "GroupAlgebraElement":
        """sum_k (t_1 t_2 t_3 t_4)^k."""
        return cls(d, {(k,) * VARIABLES: 1 for k in range(d)})

    def _check(self, other: "GroupAlgebraElement") -> None:
        if self.d != other.d:
            raise DimensionMismatchError(
                f"group rings of mu_{self.d}^4 and mu_{other.d}^4", module="pham"
            )

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._check(other)
        out = dict(self.coefficients)
        for a, c in other.coefficients.items():
            out[a] = out.get(a, 0) + c
        return GroupAlgebraElement(self.d, out)

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._check(other)
        out = {}
        for a, c in self.coefficients.items():
            for b, e in other.coefficients.items():
                key = tuple((x + y) % self.d for x, y in zip(a, b))
                out[key] = out.get(key, 0) + c * e
        return GroupAlgebraElement(self.d, out)

    def augmentation(self) -> int:
        return sum(self.coefficients.values())

    def to_sparse(self) -> dict:
        return {monomial_index(a, self.d): c for a, c in self.coefficients.items()}

    def to_vector(self) -> list:
        vector = [0] * self.d**VARIABLES
        for col, c in self.to_sparse().items():
            vector[col] = c
        return vector


def pham_relations(d: int) -> list:
    """t^a N_i for every i and every a with a_i = 0, as sparse rows."""
    rows = []
    for i in range(VARIABLES):
        norm = GroupAlgebraElement.norm(d, i)
        for a in monomials(d):
            if a[i] == 0:
                rows.append((GroupAlgebraElement.monomial(d, a) * norm).to_sparse())
    return rows


def ideal_generators(d: int) -> list:
    """The mu_d^4-orbit of nu: t^a nu for a with a4 = 0, as sparse rows."""
    nu = GroupAlgebraElement.nu(d)
    return [
        (GroupAlgebraElement.monomial(d, a) * nu).to_sparse()
        for a in monomials(d)
        if a[VARIABLES - 1] == 0
    ]


def action_matrices(d: int) -> list:
    """
    Matrices of t_1 .. t_4 on the monomial basis; row j is the image of the
    j-th monomial.
    """
    size = d**VARIABLES
    matrices = []
    for i in range(VARIABLES):
        step = tuple(int(j == i) for j in range(VARIABLES))
        rows = [{monomial_index(tuple(x + y for x, y in zip(a, step)), d): 1} for a in monomials(d)]
        matrices.append(IntMatrix.from_sparse(rows, size))
    return matrices


#####################################################################
#### MODULES ####
@dataclass(frozen=True)
class PhamModule:
    d: int
    relations: tuple
    presentation: AbelianGroupPresentation
    reduced_basis: tuple

    @property
    def rank(self) -> int:
        return self.presentation.free_rank

    @property
    def torsion_free(self) -> bool:
        return not self.presentation.torsion


@dataclass(frozen=True)
class LooijengaQuotient:
    d: int
    ideal_generators: tuple
    quotient_presentation: AbelianGroupPresentation
    ideal_rank: int

    @property
    def rank(self) -> int:
        return self.quotient_presentation.free_rank


@lru_cache(maxsize=None)
def _pham_module(d: int) -> PhamModule:
    relations = tuple(pham_relations(d))
    presentation = sparse_cokernel(d**VARIABLES, relations)
    reduced = tuple(a for a in monomials(d) if max(a) <= d - 2)
    module = PhamModule(d=d, relations=relations, presentation=presentation, reduced_basis=reduced)
    LOGGER.debug(
        f"pham:build_pham_module:d:{d}:rank:{module.rank}:torsion:{presentation.torsion}"
    )
    return module


def build_pham_module(d: int, allow_large: bool = False) -> PhamModule:
    """
    The Pham module on the d^4 monomial basis.

    PARAMS
    -------
    d : int
        degree, 2 <= d <= PHAM_MAX_D
    allow_large : bool
        accept d up to PHAM_HARD_MAX_D

    RETURNS
    -------
    PhamModule
        relations and their cokernel; free of rank (d-1)^4
    """
    LOGGER.debug(f"pham:build_pham_module:parameter:d:{d}")
    check_degree(d, allow_large)
    return _pham_module(d)


@lru_cache(maxsize=None)
def _looijenga_quotient(d: int) -> LooijengaQuotient:
    module = _pham_module(d)
    generators = tuple(ideal_generators(d))
    presentation = sparse_cokernel(d**VARIABLES, module.relations + generators)
    quotient = LooijengaQuotient(
        d=d,
        ideal_generators=generators,
        quotient_presentation=presentation,
        ideal_rank=module.rank - presentation.free_rank,
    )
    LOGGER.debug(f"pham:build_looijenga_quotient:d:{d}:rank:{quotient.rank}")
    return quotient


def build_looijenga_quotient(d: int, allow_large: bool = False) -> LooijengaQuotient:
    LOGGER.debug(f"pham:build_looijenga_quotient:parameter:d:{d}")
    check_degree(d, allow_large)
    return _looijenga_quotient(d)


def relation_matrix(d: int, allow_large: bool = False) -> IntMatrix:
    """Pham relations followed by the nu-orbit, the presentation of P / I."""
    quotient = build_looijenga_quotient(d, allow_large)
    return quotient.quotient_presentation.relations


#####################################################################
#### COINVARIANTS ####
def coinvariants(module: AbelianGroupPresentation, actions: list) -> AbelianGroupPresentation:
    """
    H_0 of a module under commuting automorphisms: the module relations
    stacked with (t - 1) e_j for every generator t and basis vector e_j.
    """
    n = module.generator_count
    rows = list(module.relations.sparse_rows())
    for matrix in actions:
        if (matrix.rows, matrix.cols) != (n, n):
            raise DimensionMismatchError(
                f"{matrix.rows}x{matrix.cols} action on a module with {n} generators",
                module="pham",
            )
        for j, image in enumerate(matrix.sparse_rows()):
            row = dict(image)
            row[j] = row.get(j, 0) - 1
            rows.append(row)
    return sparse_cokernel(n, rows)


@lru_cache(maxsize=None)
def _h0_pham(d: int) -> AbelianGroupPresentation:
    return coinvariants(_pham_module(d).presentation, action_matrices(d))


@lru_cache(maxsize=None)
def _h0_quotient(d: int) -> AbelianGroupPresentation:
    return coinvariants(_looijenga_quotient(d).quotient_presentation, action_matrices(d))


def h0_pham(d: int, allow_large: bool = False) -> AbelianGroupPresentation:
    check_degree(d, allow_large)
    return _h0_pham(d)


def h0_looijenga(d: int, allow_large: bool = False) -> AbelianGroupPresentation:
    check_degree(d, allow_large)
    return _h0_quotient(d)


def _element_order(group: AbelianGroupPresentation, coords: tuple):
    """Order of a class given in canonical coordinates, None if infinite."""
    order = 1
    for c, f in zip(coords, group.invariant_factors):
        if f == 0:
            if c:
                return None
            continue
        k = f // gcd(f, c)
        order = order * k // gcd(order, k)
    return order


@dataclass(frozen=True)
class CoinvariantMap:
    """
    A homomorphism out of a cyclic group, given by the image of the
    generator in the canonical coordinates of the target.
    """

    d: int
    source: str
    target: AbelianGroupPresentation
    image_of_generator: tuple

    @property
    def is_zero(self) -> bool:
        return not any(self.image_of_generator)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "source": self.source,
            "target": self.target.label(),
            "image_of_generator": list(self.image_of_generator),
            "is_zero": self.is_zero,
        }


def ideal_coinvariant_map(d: int, allow_large: bool = False) -> CoinvariantMap:
    """
    H_0(I) -> H_0(P). I is cyclic on nu, so H_0(I) is cyclic on [nu] and the
    map is given by the class of nu in H_0(P).
    """
    LOGGER.debug(f"pham:ideal_coinvariant_map:parameter:d:{d}")
    check_degree(d, allow_large)
    target = _h0_pham(d)
    image = target.project(GroupAlgebraElement.nu(d).to_vector())
    return CoinvariantMap(d=d, source="H_0(I) = <[nu]>", target=target, image_of_generator=image)


def coinvariant_quotient_map(d: int, allow_large: bool = False) -> dict:
    """
    H_0(P) -> H_0(P/I), induced by the identity on monomials. Both sides are
    generated by the class of the unit monomial.
    """
    check_degree(d, allow_large)
    source = _h0_pham(d)
    target = _h0_quotient(d)
    unit = [0] * d**VARIABLES
    unit[0] = 1
    source_generates = _element_order(source, source.project(unit)) == source.order
    surjective = _element_order(target, target.project(unit)) == target.order
    is_isomorphism = (
        source_generates
        and surjective
        and source.order is not None
        and source.order == target.order
    )
    return {
        "d": d,
        "source": source.label(),
        "target": target.label(),
        "source_order": source.order,
        "target_order": target.order,
        "surjective": surjective,
        "is_isomorphism": is_isomorphism,
    }


def eta_vanishing_certificate(d: int, allow_large: bool = False) -> bool:
    """
    Z/d{eta} -> H_0(pi_3) vanishes when H_0(I) -> H_0(P) is zero and both
    H_0(P) and H_0(P/I) have order d; surjectivity of H_0(I) onto Z/d{eta}
    is quoted, not constructed.
    """
    zero = ideal_coinvariant_map(d, allow_large).is_zero
    holds = zero and _h0_pham(d).order == d and _h0_quotient(d).order == d
    LOGGER.debug(f"pham:eta_vanishing_certificate:d:{d}:holds:{holds}")
    return holds


def pham_summary(d: int, allow_large: bool = False) -> dict:
    """Every Pham/Looijenga figure at degree d, for reports and the CLI."""
    module = build_pham_module(d, allow_large)
    quotient = build_looijenga_quotient(d, allow_large)
    b3 = hypersurface.compute_invariants(d).b3
    ideal_map = ideal_coinvariant_map(d, allow_large)
    return {
        "d": d,
        "pham_rank": module.rank,
        "pham_rank_expected": (d - 1) ** VARIABLES,
        "pham_torsion_free": module.torsion_free,
        "quotient_rank": quotient.rank,
        "b3": b3,
        "ideal_rank": quotient.ideal_rank,
        "h0_pham": _h0_pham(d).label(),
        "h0_looijenga": _h0_quotient(d).label(),
        "ideal_map": ideal_map.to_dict(),
        "quotient_map": coinvariant_quotient_map(d, allow_large),
        "eta_vanishing": eta_vanishing_certificate(d, allow_large),
    }


#####################################################################
#### SPARSE DUMP ####
def dump_sparse(matrix: IntMatrix, stream: TextIO) -> None:
    stream.write(f"{SPARSE_HEADER}\n")
    stream.write(f"{matrix.rows} {matrix.cols}\n")
    for i, row in enumerate(matrix.sparse_rows()):
        for j in sorted(row):
            stream.write(f"{i} {j} {row[j]}\n")


def load_sparse(stream: TextIO) -> IntMatrix:
    lines = [line.strip() for line in stream if line.strip()]
    if not lines or lines[0] != SPARSE_HEADER:
        raise HypermonoError(f"missing header {SPARSE_HEADER!r}", module="pham")
    try:
        rows, cols = (int(x) for x in lines[1].split())
        entries = [tuple(int(x) for x in line.split()) for line in lines[2:]]
    except (IndexError, ValueError):
        raise HypermonoError("malformed sparse matrix dump", module="pham")
    sparse = [{} for _ in range(rows)]
    for entry in entries:
        if len(entry) != 3:
            raise HypermonoError(f"bad triplet {entry}", module="pham")
        i, j, value = entry
        if not (0 <= i < rows and 0 <= j < cols):
            raise DimensionMismatchError(f"entry ({i}, {j}) outside {rows}x{cols}", module="pham")
        sparse[i][j] = value
    return IntMatrix.from_sparse(sparse, cols)
