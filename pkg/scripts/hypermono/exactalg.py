"""
-------------------------------------------------------------------------------

    hypermono - exact algebra for the monodromy of hypersurfaces in CP^4

    This script is licensed under the MIT License.

-------------------------------------------------------------------------------
Exact linear algebra shared by every other hypermono module:

- integer matrices and their Smith normal form (with unimodular transforms)
- cokernel presentations Z^n / rowspan(R), reported by invariant factors
- integer (and 2-local) lattice membership
- truncated power series over Z or Z/p
- canonical finite abelian groups

No floating point is used anywhere. Every value is immutable once built, so
the functions here can be called from several threads at once.

-------
Requirements:
sympy: https://pypi.org/project/sympy/ (1.14 or later, for smith_normal_decomp)

-------
Usage:
This module is imported by the other hypermono scripts, which must be in the
same folder:
    import exactalg
    exactalg.cokernel(exactalg.IntMatrix.from_rows([[2, 0], [0, 2]]))
"""

#####################################################################
#### IMPORTS ####
import heapq
import logging
import sys
from collections import defaultdict
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Iterable, Sequence

try:
    from sympy.polys.domains import ZZ
    from sympy.polys.matrices import DomainMatrix
    from sympy.polys.matrices.normalforms import smith_normal_decomp
except:
    print("""
        Critical:
        \"sympy\" package is missing. Please use the pip command to install it.

        # Linux/macOS
        python3 -m pip install sympy

        # Windows
        py -m pip install sympy
        """)
    sys.exit(2)

#####################################################################
#### LOGS ####
LOGGER = logging.getLogger(__name__)


#####################################################################
#### ERRORS ####
class HypermonoError(Exception):
    """
    Root of every error raised by hypermono. `module` names the hypermono
    module that raised it, so a report can attribute the failure.
    """

    def __init__(self, message: str, module: str = "exactalg"):
        super().__init__(message)
        self.module = module


class DimensionMismatchError(HypermonoError):
    pass


class NonUnitError(HypermonoError):
    pass


class DegreeError(HypermonoError):
    pass


class BoundExceededError(HypermonoError):
    pass


class PatternError(HypermonoError):
    pass


class IntegralityError(HypermonoError):
    pass


#####################################################################
#### INTEGER MATRICES ####
@dataclass(frozen=True)
class IntMatrix:
    """
    Dense integer matrix, entries stored row-major in a flat tuple.
    """

    rows: int
    cols: int
    entries: tuple = ()

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatchError(
                f"negative matrix shape {self.rows}x{self.cols}"
            )
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int = None) -> "IntMatrix":
        rows = [tuple(int(v) for v in row) for row in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != cols:
                raise DimensionMismatchError(
                    f"row of length {len(row)} in a matrix with {cols} columns"
                )
        return cls(len(rows), cols, tuple(v for row in rows for v in row))

    @classmethod
    def from_sparse(cls, rows: Sequence[dict], cols: int) -> "IntMatrix":
        """Build from one {column: value} dict per row."""
        entries = []
        for row in rows:
            dense = [0] * cols
            for col, value in row.items():
                if not 0 <= col < cols:
                    raise DimensionMismatchError(f"column {col} outside 0..{cols - 1}")
                dense[col] += value
            entries.extend(dense)
        return cls(len(rows), cols, tuple(entries))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    def __getitem__(self, index: tuple) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def sparse_rows(self) -> list:
        return [
            {j: v for j, v in enumerate(self.row(i)) if v} for i in range(self.rows)
        ]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        out = []
        other_cols = [
            [other[k, j] for k in range(other.rows)] for j in range(other.cols)
        ]
        for i in range(self.rows):
            row = self.row(i)
            for col in other_cols:
                out.append(sum(a * b for a, b in zip(row, col) if a and b))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("cannot subtract matrices of different shapes")
        return IntMatrix(
            self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries))
        )

    def vector_times(self, vector: Sequence[int]) -> tuple:
        """Row vector times this matrix."""
        if len(vector) != self.rows:
            raise DimensionMismatchError(
                f"vector of length {len(vector)} against {self.rows} rows"
            )
        out = [0] * self.cols
        for i, coef in enumerate(vector):
            if coef:
                for j, v in enumerate(self.row(i)):
                    if v:
                        out[j] += coef * v
        return tuple(out)

    def is_diagonal(self) -> bool:
        return all(
            self[i, j] == 0
            for i in range(self.rows)
            for j in range(self.cols)
            if i != j
        )


def _to_domain(m: IntMatrix) -> DomainMatrix:
    return DomainMatrix([[ZZ(v) for v in m.row(i)] for i in range(m.rows)], (m.rows, m.cols), ZZ)


def _from_domain(dm: DomainMatrix) -> IntMatrix:
    _, cols = dm.shape
    return IntMatrix.from_rows([[int(v) for v in row] for row in dm.to_list()], cols)


def determinant(m: IntMatrix) -> int:
    if m.rows != m.cols:
        raise DimensionMismatchError(f"determinant of a {m.rows}x{m.cols} matrix")
    if m.rows == 0:
        return 1
    return int(_to_domain(m).det())


#####################################################################
#### SMITH NORMAL FORM ####
def smith_normal_form(m: IntMatrix) -> tuple:
    """
    Smith normal form over ZZ with its unimodular transforms.

    PARAMS
    -------
    m : IntMatrix
        matrix to diagonalize

    RETURNS
    -------
    tuple
        (diag, left, right) where diag is the list of the min(rows, cols)
        diagonal entries (a nonnegative divisibility chain) and
        left @ m @ right is diagonal with left, right unimodular
    """
    LOGGER.debug(f"exactalg:smith_normal_form:parameter:shape:{m.rows}x{m.cols}")
    if m.rows == 0 or m.cols == 0:
        return [], IntMatrix.identity(m.rows), IntMatrix.identity(m.cols)
    form, left, right = smith_normal_decomp(_to_domain(m))
    form = _from_domain(form)
    left = _from_domain(left).to_rows()
    diag = []
    for k in range(min(m.rows, m.cols)):
        value = form[k, k]
        if value < 0:
            left[k] = [-x for x in left[k]]
            value = -value
        diag.append(value)
    return diag, IntMatrix.from_rows(left, m.rows), _from_domain(right)


def matrix_rank(m: IntMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return _to_domain(m).to_field().rank()


def integer_left_kernel(m: IntMatrix) -> list:
    """
    Z-basis of {v : v @ m = 0}, read off the rows of the left SNF transform.
    """
    diag, left, _ = smith_normal_form(m)
    rank = sum(1 for v in diag if v)
    return [list(left.row(i)) for i in range(rank, m.rows)]


#####################################################################
#### COKERNELS ####
def _eliminate_units(ncols: int, rows: Iterable[dict]) -> tuple:
    """
    Pivot on every +-1 entry, over a sparse row store.

    RETURNS
    -------
    tuple
        (remaining rows, surviving columns, substitutions) where each
        substitution (c, expr) records e_c = sum(expr[j] * e_j) in the quotient
    """
    store = {}
    col_index = defaultdict(set)
    for rid, row in enumerate(rows):
        clean = {c: v for c, v in row.items() if v}
        if clean:
            store[rid] = clean
            for c in clean:
                col_index[c].add(rid)
    alive = set(range(ncols))
    substitutions = []
    heap = sorted(store)
    queued = set(heap)
    while heap:
        rid = heapq.heappop(heap)
        queued.discard(rid)
        row = store.get(rid)
        if row is None:
            continue
        pivot = min((c for c, v in row.items() if v in (1, -1)), default=None)
        if pivot is None:
            continue
        unit = row[pivot]
        expression = {j: -unit * v for j, v in row.items() if j != pivot}
        substitutions.append((pivot, expression))
        del store[rid]
        for c in row:
            col_index[c].discard(rid)
        for other in sorted(col_index.pop(pivot, ())):
            target = store[other]
            coef = target.pop(pivot)
            for j, v in expression.items():
                value = target.get(j, 0) + coef * v
                if value:
                    if j not in target:
                        col_index[j].add(other)
                    target[j] = value
                elif j in target:
                    del target[j]
                    col_index[j].discard(other)
            if not target:
                del store[other]
            elif other not in queued:
                heapq.heappush(heap, other)
                queued.add(other)
        alive.discard(pivot)
    return [store[rid] for rid in sorted(store)], sorted(alive), substitutions


@dataclass(frozen=True)
class AbelianGroupPresentation:
    """
    Z^generator_count / rowspan(relations), with its invariant factors.

    Factors equal to 1 are dropped, 0 stands for a free summand, and the
    list is a divisibility chain (zeros last).
    """

    generator_count: int
    relations: IntMatrix
    invariant_factors: tuple
    _substitutions: tuple = field(default=(), repr=False, compare=False)
    _core_columns: tuple = field(default=(), repr=False, compare=False)
    _core_right: IntMatrix = field(default=None, repr=False, compare=False)
    _core_factors: tuple = field(default=(), repr=False, compare=False)

    @property
    def free_rank(self) -> int:
        return sum(1 for f in self.invariant_factors if f == 0)

    @property
    def torsion(self) -> tuple:
        return tuple(f for f in self.invariant_factors if f != 0)

    @property
    def order(self):
        """Group order, or None when the group is infinite."""
        if self.free_rank:
            return None
        return prod(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def project(self, vector: Sequence[int]) -> tuple:
        """
        Class of `vector` in canonical coordinates: one entry per invariant
        factor, reduced modulo that factor (free coordinates are left as is).
        """
        if len(vector) != self.generator_count:
            raise DimensionMismatchError(
                f"vector of length {len(vector)} in a group on "
                f"{self.generator_count} generators"
            )
        x = {j: v for j, v in enumerate(vector) if v}
        for col, expression in self._substitutions:
            coef = x.pop(col, 0)
            if coef:
                for j, v in expression.items():
                    x[j] = x.get(j, 0) + coef * v
        core = [x.get(col, 0) for col in self._core_columns]
        coords = self._core_right.vector_times(core) if core else ()
        out = []
        for value, factor in zip(coords, self._core_factors):
            if factor == 1:
                continue
            out.append(value % factor if factor else value)
        return tuple(out)

    def is_zero_class(self, vector: Sequence[int]) -> bool:
        return not any(self.project(vector))

    def label(self) -> str:
        return group_label(self.invariant_factors)


def sparse_cokernel(generator_count: int, relations: Sequence[dict]) -> AbelianGroupPresentation:
    """
    Cokernel of relations given as {column: value} rows; same result as
    cokernel(IntMatrix.from_sparse(relations, generator_count)).
    """
    return cokernel(IntMatrix.from_sparse(relations, generator_count))


def cokernel(m: IntMatrix) -> AbelianGroupPresentation:
    """
    Invariant factors of Z^cols / rowspan(m).

    Unit entries are the smallest possible pivots, so they are eliminated
    first on a sparse copy; the dense Smith normal form then only sees the
    remaining core.

    PARAMS
    -------
    m : IntMatrix
        relation matrix, one relation per row

    RETURNS
    -------
    AbelianGroupPresentation
        the presentation with its invariant factors
    """
    LOGGER.debug(f"exactalg:cokernel:parameter:shape:{m.rows}x{m.cols}")
    remaining, alive, substitutions = _eliminate_units(m.cols, m.sparse_rows())
    LOGGER.debug(
        f"exactalg:cokernel:units_eliminated:{len(substitutions)}"
        f":core:{len(remaining)}x{len(alive)}"
    )
    position = {col: k for k, col in enumerate(alive)}
    core = IntMatrix.from_sparse(
        [{position[c]: v for c, v in row.items()} for row in remaining], len(alive)
    )
    diag, _, right = smith_normal_form(core)
    factors = list(diag) + [0] * (len(alive) - len(diag))
    return AbelianGroupPresentation(
        generator_count=m.cols,
        relations=m,
        invariant_factors=tuple(f for f in factors if f != 1),
        _substitutions=tuple(substitutions),
        _core_columns=tuple(alive),
        _core_right=right,
        _core_factors=tuple(factors),
    )


def group_label(factors: Iterable[int]) -> str:
    parts = ["Z" if f == 0 else f"Z/{f}" for f in factors]
    return " ⊕ ".join(parts) if parts else "0"


#####################################################################
#### LATTICE MEMBERSHIP ####
def _odd_part(n: int) -> int:
    n = abs(n)
    while n and n % 2 == 0:
        n //= 2
    return n


def lattice_membership(generators: Sequence[Sequence[int]], target: Sequence[int]) -> bool:
    """True iff target lies in the integer span of the generators."""
    return _lattice(generators, target).is_zero_class(target)


def _lattice(generators: Sequence[Sequence[int]], target: Sequence[int]) -> AbelianGroupPresentation:
    dim = len(target)
    for vector in generators:
        if len(vector) != dim:
            raise DimensionMismatchError(
                f"generator of length {len(vector)} against target of length {dim}"
            )
    return cokernel(IntMatrix.from_rows(generators, dim))


def lattice_membership_2local(generators: Sequence[Sequence[int]], target: Sequence[int]) -> bool:
    """
    True iff target lies in the span of the generators once every odd prime
    is inverted, i.e. iff m * target is in the integer span for some odd m.
    Only the odd divisors of the lattice index have to be tried.

    PARAMS
    -------
    generators : list of integer vectors
        spanning set of the lattice
    target : integer vector
        vector to test, of the same length as every generator

    RETURNS
    -------
    bool
        2-local membership verdict
    """
    LOGGER.debug(
        f"exactalg:lattice_membership_2local:parameter:generators:{list(generators)}"
    )
    LOGGER.debug(f"exactalg:lattice_membership_2local:parameter:target:{list(target)}")
    quotient = _lattice(generators, target)
    index = prod(quotient.torsion)
    odd = _odd_part(index)
    for m in range(1, odd + 1, 2):
        if odd % m:
            continue
        if quotient.is_zero_class([m * v for v in target]):
            LOGGER.debug(f"exactalg:lattice_membership_2local:witness:{m}")
            return True
    return False


#####################################################################
#### TRUNCATED SERIES ####
@dataclass(frozen=True)
class TruncatedSeries:
    """
    c_0 + c_1 x + ... + c_T x^T with coefficients in Z (modulus 0) or Z/p.
    """

    modulus: int
    coefficients: tuple

    def __post_init__(self):
        if self.modulus < 0:
            raise HypermonoError(f"invalid modulus {self.modulus}")
        if not self.coefficients:
            raise HypermonoError("a truncated series needs at least c_0")
        coefficients = tuple(int(c) for c in self.coefficients)
        if self.modulus:
            coefficients = tuple(c % self.modulus for c in coefficients)
        object.__setattr__(self, "coefficients", coefficients)

    @classmethod
    def from_polynomial(cls, coeffs: Sequence[int], modulus: int, truncation: int) -> "TruncatedSeries":
        padded = list(coeffs[: truncation + 1])
        padded += [0] * (truncation + 1 - len(padded))
        return cls(modulus, tuple(padded))

    @classmethod
    def one(cls, modulus: int, truncation: int) -> "TruncatedSeries":
        return cls.from_polynomial([1], modulus, truncation)

    @property
    def truncation_degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> int:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    def _check(self, other: "TruncatedSeries") -> None:
        if self.modulus != other.modulus or self.truncation_degree != other.truncation_degree:
            raise DimensionMismatchError(
                f"series over Z/{self.modulus} to x^{self.truncation_degree} and over "
                f"Z/{other.modulus} to x^{other.truncation_degree} do not match"
            )

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(
            self.modulus, tuple(a + b for a, b in zip(self.coefficients, other.coefficients))
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(
            self.modulus, tuple(a - b for a, b in zip(self.coefficients, other.coefficients))
        )

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_mul(self, other)

    def scale(self, factor: int) -> "TruncatedSeries":
        return TruncatedSeries(self.modulus, tuple(factor * c for c in self.coefficients))

    def inverse(self) -> "TruncatedSeries":
        return series_inv(self)

    def power(self, n: int) -> "TruncatedSeries":
        base = self if n >= 0 else self.inverse()
        result = TruncatedSeries.one(self.modulus, self.truncation_degree)
        for _ in range(abs(n)):
            result = result * base
        return result

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        return series_compose(self, inner)

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coefficients):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}x^{k}")
        body = " + ".join(terms) if terms else "0"
        ring = "Z" if self.modulus == 0 else f"Z/{self.modulus}"
        return f"{body} + O(x^{self.truncation_degree + 1}) over {ring}"


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    a._check(b)
    size = len(a.coefficients)
    out = [0] * size
    for i, x in enumerate(a.coefficients):
        if x:
            for j in range(size - i):
                out[i + j] += x * b.coefficients[j]
    return TruncatedSeries(a.modulus, tuple(out))


def series_inv(a: TruncatedSeries) -> TruncatedSeries:
    """
    Multiplicative inverse; the constant term must be a unit (+-1 over Z,
    nonzero over Z/p).
    """
    c0 = a.coefficients[0]
    if a.modulus:
        if c0 % a.modulus == 0:
            raise NonUnitError(f"constant term {c0} is not a unit modulo {a.modulus}")
        unit_inverse = pow(c0, -1, a.modulus)
    else:
        if c0 not in (1, -1):
            raise NonUnitError(f"constant term {c0} is not a unit in Z")
        unit_inverse = c0
    out = [unit_inverse]
    for n in range(1, len(a.coefficients)):
        acc = sum(a.coefficients[k] * out[n - k] for k in range(1, n + 1))
        value = -unit_inverse * acc
        out.append(value % a.modulus if a.modulus else value)
    return TruncatedSeries(a.modulus, tuple(out))


def series_compose(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """a(b(x)); b must have zero constant term."""
    a._check(b)
    if b.coefficients[0]:
        raise HypermonoError("inner series of a composition needs zero constant term")
    result = TruncatedSeries.from_polynomial([a.coefficients[-1]], a.modulus, a.truncation_degree)
    for c in reversed(a.coefficients[:-1]):
        result = result * b + TruncatedSeries.from_polynomial([c], a.modulus, a.truncation_degree)
    return result


#####################################################################
#### FINITE ABELIAN GROUPS ####
@dataclass(frozen=True)
class FiniteAbelianGroup:
    """
    Finite abelian group in canonical form: invariant factors > 1 forming a
    divisibility chain. The trivial group has no factors.
    """

    invariant_factors: tuple = ()

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int]) -> "FiniteAbelianGroup":
        orders = [int(n) for n in orders]
        if any(n < 1 for n in orders):
            raise HypermonoError(f"cyclic orders must be positive, got {orders}")
        size = len(orders)
        relations = IntMatrix.from_rows(
            [[orders[i] if i == j else 0 for j in range(size)] for i in range(size)], size
        )
        return cls(cokernel(relations).invariant_factors)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def label(self) -> str:
        return group_label(self.invariant_factors)

    def to_dict(self) -> dict:
        return {
            "invariant_factors": list(self.invariant_factors),
            "order": self.order,
            "label": self.label(),
        }


def gcd_all(values: Iterable[int]) -> int:
    out = 0
    for v in values:
        out = gcd(out, v)
    return out
