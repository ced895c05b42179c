"""
-------------------------------------------------------------------------------

    hypermono - exact algebra for the monodromy of hypersurfaces in CP^4

    This script is licensed under the MIT License.

-------------------------------------------------------------------------------
Quadratic refinements of the intersection form on H^3(X_d) and the pi_3
extension model.

Vectors are tuples over Z/n in the symplectic basis e1, f1, ..., eg, fg.
A linear map is stored as the tuple of the images of the basis vectors, so
that group elements are hashable and can be collected in sets.

    lambda(a, b) = sum_k a_ek b_fk - a_fk b_ek
    q(v)         = sum_i v_i q(b_i) + sum_k v_ek v_fk        (mod 2)
    T_v(x)       = x + lambda(x, v) v

Over F_2 the q-preserving transvections (q(v) = 1) generate O(q) except in
the hyperbolic case g = 2, Arf 0, where they only reach an index 2 subgroup
of order 36. orbit_check() and invariant_subgroup_scan() therefore act by
the full O(q), enumerated by orthogonal_group().

-------
Requirements:
exactalg.py and hypersurface.py in the same folder
"""

#####################################################################
#### IMPORTS ####
import itertools
import logging
from collections import deque
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Optional

import hypersurface
from exactalg import (
    BoundExceededError,
    DegreeError,
    DimensionMismatchError,
    FiniteAbelianGroup,
    HypermonoError,
    IntMatrix,
    determinant,
    integer_left_kernel,
    matrix_rank,
)

#####################################################################
#### PARAMETERS #####
GROUP_ELEMENT_BOUND = 60000
MAX_GENUS_F2 = 3
MAX_GENUS_SCAN = 2
SCAN_MODULI = (2, 3, 4)
WITNESS_LIMIT = 10

#####################################################################
#### LOGS ####
LOGGER = logging.getLogger(__name__)


#####################################################################
#### VECTORS AND MAPS ####
def symplectic_pairing(a: tuple, b: tuple, n: int = 2) -> int:
    if len(a) != len(b) or len(a) % 2:
        raise DimensionMismatchError(
            f"cannot pair vectors of length {len(a)} and {len(b)}", module="quadform"
        )
    return _pairing_z(a, b) % n


def _basis(size: int) -> list:
    return [tuple(int(i == j) for j in range(size)) for i in range(size)]


def _apply(matrix: tuple, vector: tuple, n: int) -> tuple:
    out = [0] * len(vector)
    for coef, column in zip(vector, matrix):
        if coef:
            for j, v in enumerate(column):
                out[j] += coef * v
    return tuple(v % n for v in out)


def _compose(outer: tuple, inner: tuple, n: int) -> tuple:
    return tuple(_apply(outer, column, n) for column in inner)


def _identity(size: int) -> tuple:
    return tuple(_basis(size))


def transvection(v: tuple, n: int = 2) -> tuple:
    """T_v(x) = x + lambda(x, v) v over Z/n, as a tuple of columns."""
    columns = []
    for b in _basis(len(v)):
        c = symplectic_pairing(b, v, n)
        columns.append(tuple((x + c * y) % n for x, y in zip(b, v)))
    return tuple(columns)


def _nonzero_vectors(size: int, n: int) -> list:
    return [v for v in itertools.product(range(n), repeat=size) if any(v)]


def _closure(generators: list, size: int, n: int, bound: int = None) -> list:
    """Group generated by `generators`, by a breadth-first work queue."""
    bound = GROUP_ELEMENT_BOUND if bound is None else bound
    identity = _identity(size)
    elements = {identity}
    queue = deque([identity])
    while queue:
        element = queue.popleft()
        for generator in generators:
            product = _compose(generator, element, n)
            if product not in elements:
                elements.add(product)
                if len(elements) > bound:
                    raise BoundExceededError(
                        f"group closure exceeds {bound} elements", module="quadform"
                    )
                queue.append(product)
    return sorted(elements)


#####################################################################
#### QUADRATIC SPACES ####
@dataclass(frozen=True)
class QuadraticSpace:
    """
    A quadratic refinement q of the standard symplectic form on F_2^(2g),
    given by its values on e1, f1, ..., eg, fg.
    """

    g: int
    q_values: tuple

    def __post_init__(self):
        if self.g < 0:
            raise HypermonoError(f"negative genus {self.g}", module="quadform")
        if len(self.q_values) != 2 * self.g:
            raise DimensionMismatchError(
                f"{len(self.q_values)} q-values for genus {self.g}", module="quadform"
            )
        object.__setattr__(self, "q_values", tuple(int(v) % 2 for v in self.q_values))

    @classmethod
    def standard(cls, g: int, arf_value: int) -> "QuadraticSpace":
        """q(e1) = q(f1) = arf_value, zero on the other basis vectors."""
        values = [0] * (2 * g)
        if g and arf_value % 2:
            values[0] = values[1] = 1
        elif arf_value % 2:
            raise HypermonoError("genus 0 only carries Arf invariant 0", module="quadform")
        return cls(g, tuple(values))

    @property
    def dimension(self) -> int:
        return 2 * self.g

    def vectors(self) -> list:
        return list(itertools.product((0, 1), repeat=self.dimension))

    def q(self, v: tuple) -> int:
        if len(v) != self.dimension:
            raise DimensionMismatchError(
                f"vector of length {len(v)} in dimension {self.dimension}", module="quadform"
            )
        linear = sum(a * b for a, b in zip(v, self.q_values))
        cross = sum(v[k] * v[k + 1] for k in range(0, self.dimension, 2))
        return (linear + cross) % 2

    def lam(self, a: tuple, b: tuple) -> int:
        return symplectic_pairing(a, b, 2)

    def zero_count(self) -> int:
        return sum(1 for v in self.vectors() if self.q(v) == 0)

    def refinement_identity_holds(self) -> bool:
        vectors = self.vectors()
        for a in vectors:
            for b in vectors:
                total = tuple((x + y) % 2 for x, y in zip(a, b))
                if self.q(total) != (self.q(a) + self.q(b) + self.lam(a, b)) % 2:
                    return False
        return True

    def preserves(self, matrix: tuple) -> bool:
        return all(self.q(_apply(matrix, v, 2)) == self.q(v) for v in self.vectors())


def arf(space: QuadraticSpace) -> int:
    """Arf invariant sum_i q(e_i) q(f_i) mod 2."""
    values = space.q_values
    return sum(values[k] * values[k + 1] for k in range(0, len(values), 2)) % 2


def arf_by_zero_count(space: QuadraticSpace) -> int:
    """Arf invariant read off |q^-1(0)| = 2^(2g-1) + (-1)^Arf 2^(g-1)."""
    g = space.g
    if g == 0:
        return 0
    zeros = space.zero_count()
    if zeros == 2 ** (2 * g - 1) + 2 ** (g - 1):
        return 0
    if zeros == 2 ** (2 * g - 1) - 2 ** (g - 1):
        return 1
    raise HypermonoError(f"zero count {zeros} fits no Arf invariant", module="quadform")


def arf_of_hypersurface(d: int) -> int:
    """Arf invariant of the refinement on H^3(X_d; F_2) for odd d."""
    if d < 1 or d % 2 == 0:
        raise DegreeError(
            f"the refinement only descends to H^3(X_d; F_2) for odd d, got {d}",
            module="quadform",
        )
    return 0 if d % 8 in (1, 7) else 1


#####################################################################
#### GROUPS ####
def _check_genus(g: int, limit: int) -> None:
    if not 0 < g <= limit:
        raise BoundExceededError(f"genus {g} outside 1..{limit}", module="quadform")


def q_transvections(space: QuadraticSpace) -> list:
    return [transvection(v, 2) for v in space.vectors() if space.q(v) == 1]


def transvection_group(space_or_modulus, g: int = None) -> list:
    """
    Closure of the transvections, as a sorted list of matrices (tuples of
    columns).

    PARAMS
    -------
    space_or_modulus : QuadraticSpace or int
        a quadratic space over F_2 (q-preserving transvections, q(v) = 1), or
        a modulus n (symplectic transvections T_v, v a nonzero 0/1 vector,
        reduced mod n)
    g : int
        genus, required with a modulus

    RETURNS
    -------
    list
        every element of the generated group
    """
    if isinstance(space_or_modulus, QuadraticSpace):
        space = space_or_modulus
        _check_genus(space.g, MAX_GENUS_F2)
        LOGGER.debug(f"quadform:transvection_group:parameter:space:{space}")
        return _closure(q_transvections(space), space.dimension, 2)
    n = int(space_or_modulus)
    if g is None:
        raise HypermonoError("transvection_group over Z/n needs a genus", module="quadform")
    _check_genus(g, MAX_GENUS_SCAN)
    LOGGER.debug(f"quadform:transvection_group:parameter:n:{n}:g:{g}")
    generators = [transvection(v, n) for v in _nonzero_vectors(2 * g, 2)]
    return _closure(generators, 2 * g, n)


def orthogonal_group(space: QuadraticSpace) -> list:
    """
    O(q), enumerated by choosing the images of e1, f1, ... one at a time:
    each image keeps q on its basis vector and lambda against the images
    already chosen.
    """
    _check_genus(space.g, MAX_GENUS_F2)
    size = space.dimension
    basis = _basis(size)
    candidates = {
        value: [v for v in space.vectors() if any(v) and space.q(v) == value] for value in (0, 1)
    }
    elements = []

    def extend(images: list) -> None:
        i = len(images)
        if i == size:
            elements.append(tuple(images))
            if len(elements) > GROUP_ELEMENT_BOUND:
                raise BoundExceededError(
                    f"O(q) exceeds {GROUP_ELEMENT_BOUND} elements", module="quadform"
                )
            return
        for w in candidates[space.q_values[i]]:
            if all(
                space.lam(w, images[j]) == space.lam(basis[i], basis[j]) for j in range(i)
            ):
                extend(images + [w])

    extend([])
    LOGGER.debug(f"quadform:orthogonal_group:space:{space}:order:{len(elements)}")
    return sorted(elements)


#####################################################################
#### ORBITS ####
@dataclass(frozen=True)
class OrbitPartition:
    space: QuadraticSpace
    orbits: tuple

    @property
    def sizes(self) -> tuple:
        return tuple(len(orbit) for orbit in self.orbits)

    def level_sets(self) -> dict:
        levels = {}
        for v in self.space.vectors():
            if any(v):
                levels.setdefault(self.space.q(v), set()).add(v)
        return levels

    @property
    def transitive_on_levels(self) -> bool:
        """Each nonempty level set of q on nonzero vectors is a single orbit."""
        levels = self.level_sets()
        return len(self.orbits) == len(levels) and all(
            set(orbit) == levels[self.space.q(orbit[0])] for orbit in self.orbits
        )

    def to_dict(self) -> dict:
        return {
            "g": self.space.g,
            "arf": arf(self.space),
            "orbit_sizes": list(self.sizes),
            "transitive_on_levels": self.transitive_on_levels,
        }


def _orbits_by_elements(vectors: list, group: list, n: int) -> list:
    remaining = set(vectors)
    orbits = []
    for v in vectors:
        if v not in remaining:
            continue
        orbit = {_apply(h, v, n) for h in group}
        remaining -= orbit
        orbits.append(tuple(sorted(orbit)))
    return orbits


def orbit_check(space: QuadraticSpace) -> OrbitPartition:
    """Partition of the nonzero vectors into O(q)-orbits."""
    group = orthogonal_group(space)
    vectors = [v for v in space.vectors() if any(v)]
    orbits = _orbits_by_elements(vectors, group, 2)
    orbits.sort(key=lambda orbit: (space.q(orbit[0]), orbit[0]))
    partition = OrbitPartition(space=space, orbits=tuple(orbits))
    LOGGER.debug(f"quadform:orbit_check:space:{space}:sizes:{partition.sizes}")
    return partition


#####################################################################
#### INVARIANT SUBGROUPS ####
@dataclass(frozen=True)
class InvariantSubgroupReport:
    n: int
    g: int
    arf: int
    acting_group: str
    subgroups_checked: int
    all_of_form_k_times_lattice: bool
    witnesses: tuple
    k_values: tuple

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "g": self.g,
            "arf": self.arf,
            "acting_group": self.acting_group,
            "subgroups_checked": self.subgroups_checked,
            "all_of_form_k_times_lattice": self.all_of_form_k_times_lattice,
            "witnesses": [list(w) for w in self.witnesses],
            "k_values": list(self.k_values),
        }


def _symplectic_lifts(g: int, n: int) -> dict:
    """
    Every element of Sp_2g(F_2), keyed by its matrix, with a lift to
    Sp_2g(Z/n) obtained by lifting a word in transvections letter by letter.
    """
    size = 2 * g
    identity = _identity(size)
    lifts = {identity: identity}
    queue = deque([identity])
    letters = [(transvection(v, 2), transvection(v, n)) for v in _nonzero_vectors(size, 2)]
    while queue:
        element = queue.popleft()
        for letter, letter_lift in letters:
            product = _compose(letter, element, 2)
            if product not in lifts:
                lifts[product] = _compose(letter_lift, lifts[element], n)
                queue.append(product)
    return lifts


def _squared_transvection(v: tuple, n: int) -> tuple:
    """x -> x + 2 lambda(x, v) v, generating the kernel of reduction mod 2."""
    t = transvection(v, n)
    return _compose(t, t, n)


def acting_generators(n: int, g: int, arf_value: int) -> tuple:
    """
    Generators of the acting group, the image of Aut(H, lambda, q) in
    GL_2g(Z/n). This is O(q) for n = 2 and its preimage in Sp_2g(Z/4) for
    n = 4, not the transvection group. For n = 3 the image is all of
    Sp_2g(Z/3), generated by transvections.

    RETURNS
    -------
    tuple
        (description of the acting group, list of matrices over Z/n)
    """
    space = QuadraticSpace.standard(g, arf_value)
    if n == 2:
        return "image of Aut(H, lambda, q): O(q) over F_2", orthogonal_group(space)
    if n == 4:
        lifts = _symplectic_lifts(g, 4)
        generators = [lifts[h] for h in orthogonal_group(space)]
        generators += [_squared_transvection(v, 4) for v in _nonzero_vectors(2 * g, 2)]
        return "image of Aut(H, lambda, q): preimage of O(q) in Sp(Z/4)", generators
    if n == 3:
        return "image of Aut(H, lambda, q): Sp(Z/3)", [transvection(v, 3) for v in _nonzero_vectors(2 * g, 3)]
    raise HypermonoError(f"modulus {n} not in {SCAN_MODULI}", module="quadform")


def _span(vectors, size: int, n: int) -> frozenset:
    span = {tuple([0] * size)}
    for v in vectors:
        if v in span:
            continue
        span = {tuple((a + k * b) % n for a, b in zip(s, v)) for s in span for k in range(n)}
    return frozenset(span)


def _scaled_lattice(k: int, size: int, n: int) -> frozenset:
    return frozenset(
        v for v in itertools.product(range(n), repeat=size) if all(x % k == 0 for x in v)
    )


def content_gcd(v: tuple, n: int) -> int:
    out = n
    for x in v:
        out = gcd(out, x)
    return out


def invariant_subgroup_scan(n: int, g: int = 2, arf_value: int = 0) -> InvariantSubgroupReport:
    """
    Check that the smallest invariant subgroup of (Z/n)^2g containing v is
    gcd(content(v), n) (Z/n)^2g, for every nonzero v.

    The invariant subgroup generated by v is the span of its orbit, so the
    orbits are computed once and spanned once.

    PARAMS
    -------
    n : int
        modulus, one of 2, 3, 4
    g : int
        genus, at most 2
    arf_value : int
        Arf invariant of the refinement the acting group preserves

    RETURNS
    -------
    InvariantSubgroupReport
        aggregate verdict with counterexamples, if any
    """
    LOGGER.debug(f"quadform:invariant_subgroup_scan:parameter:n:{n}:g:{g}:arf:{arf_value}")
    if n not in SCAN_MODULI:
        raise HypermonoError(f"modulus {n} not in {SCAN_MODULI}", module="quadform")
    _check_genus(g, MAX_GENUS_SCAN)
    size = 2 * g
    description, generators = acting_generators(n, g, arf_value)
    vectors = _nonzero_vectors(size, n)
    orbit_of = {}
    for start in vectors:
        if start in orbit_of:
            continue
        orbit = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for h in generators:
                w = _apply(h, v, n)
                if w not in orbit:
                    orbit.add(w)
                    queue.append(w)
        span = _span(sorted(orbit), size, n)
        for v in orbit:
            orbit_of[v] = span
    lattices = {}
    witnesses = []
    k_values = set()
    for v in vectors:
        k = content_gcd(v, n)
        k_values.add(k)
        if k not in lattices:
            lattices[k] = _scaled_lattice(k, size, n)
        if orbit_of[v] != lattices[k]:
            witnesses.append(v)
    report = InvariantSubgroupReport(
        n=n,
        g=g,
        arf=arf_value,
        acting_group=description,
        subgroups_checked=len(vectors),
        all_of_form_k_times_lattice=not witnesses,
        witnesses=tuple(witnesses[:WITNESS_LIMIT]),
        k_values=tuple(sorted(k_values)),
    )
    if witnesses:
        LOGGER.warning(f"quadform:invariant_subgroup_scan:witnesses:{witnesses[:WITNESS_LIMIT]}")
    return report


#####################################################################
#### KER(RHO) AND THE PI_3 MODEL ####
def ker_rho_description(d: int) -> FiniteAbelianGroup:
    """Ker(rho) = Hom(H_3(X_d), 2 Z/d) = (Z/(d/(2,d)))^b3."""
    b3 = hypersurface.compute_invariants(d).b3
    m = d // gcd(2, d)
    if m == 1 or b3 == 0:
        return FiniteAbelianGroup()
    return FiniteAbelianGroup((m,) * b3)


def coinvariant_order(k: int, d: int) -> int:
    """|H_0(G; pi_3)| = gcd(k, d) when Ker(rho|G) = k H^3(X_d; 2 Z/d)."""
    return gcd(k, d)


@dataclass(frozen=True)
class Pi3Model:
    """
    pi_3(X_d) = H (+) Z/d{eta} as a set, with the zero cocycle. Elements are
    pairs (h, t) with h in Z^2g and t mod d.
    """

    d: int
    g: int
    eta: hypersurface.EtaRestriction
    arf_value: Optional[int]

    @classmethod
    def build(cls, d: int, genus: int = None) -> "Pi3Model":
        g = hypersurface.compute_invariants(d).g
        if genus is not None:
            g = min(g, genus)
        arf_value = arf_of_hypersurface(d) if d % 2 else None
        return cls(d=d, g=g, eta=hypersurface.mu_restriction_on_eta(d), arf_value=arf_value)

    @property
    def space(self) -> QuadraticSpace:
        # even d: the refinement on H is not fixed by d; zero on the basis
        return QuadraticSpace.standard(self.g, self.arf_value or 0)

    def _check(self, a: tuple) -> None:
        h, _ = a
        if len(h) != 2 * self.g:
            raise DimensionMismatchError(
                f"element of length {len(h)} in a model of genus {self.g}", module="quadform"
            )

    def lambda_pi3(self, a: tuple, b: tuple) -> int:
        """Intersection form, pulled back from H."""
        self._check(a)
        self._check(b)
        return _pairing_z(a[0], b[0])

    def mu(self, a: tuple) -> int:
        self._check(a)
        h, t = a
        return (self.space.q(tuple(x % 2 for x in h)) + self.eta(t % self.d)) % 2

    def gram_matrix(self) -> IntMatrix:
        size = 2 * self.g
        basis = _basis(size)
        return IntMatrix.from_rows([[_pairing_z(a, b) for b in basis] for a in basis], size)

    def relation_matrix(self) -> IntMatrix:
        """Presentation of pi_3 on e1, f1, ..., eg, fg, eta: the single relation d eta = 0."""
        size = 2 * self.g + 1
        return IntMatrix.from_rows([[0] * (size - 1) + [self.d]], size)

    def pairing_matrix(self) -> IntMatrix:
        """lambda on the generators of relation_matrix(); eta pairs to zero with everything."""
        gram = self.gram_matrix()
        size = 2 * self.g + 1
        rows = [list(gram.row(i)) + [0] for i in range(size - 1)]
        rows.append([0] * size)
        return IntMatrix.from_rows(rows, size)

    def radical_order(self) -> Optional[int]:
        """
        Order of the radical {a : lambda(a, -) = 0} of pi_3, or None when it
        is infinite.

        The radical is K / R with K the integer kernel of the pairing matrix
        and R the relation lattice, so its order is the index
        sqrt(det(R R^t) / det(K K^t)).
        """
        relations = self.relation_matrix()
        kernel = integer_left_kernel(self.pairing_matrix())
        LOGGER.debug(f"quadform:Pi3Model:radical_order:d:{self.d}:g:{self.g}:kernel:{kernel}")
        if len(kernel) != matrix_rank(relations):
            return None
        if not kernel:
            return 1
        basis = IntMatrix.from_rows(kernel, relations.cols)
        index_squared, remainder = divmod(
            determinant(relations @ relations.transpose()),
            determinant(basis @ basis.transpose()),
        )
        index = isqrt(index_squared)
        if remainder or index * index != index_squared:
            raise HypermonoError("relation lattice is not a sublattice of the radical", module="quadform")
        return index

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "g": self.g,
            "arf": self.arf_value,
            "eta": self.eta.to_dict(),
            "radical_order": self.radical_order(),
        }


def _pairing_z(a: tuple, b: tuple) -> int:
    total = 0
    for k in range(0, len(a), 2):
        total += a[k] * b[k + 1] - a[k + 1] * b[k]
    return total
