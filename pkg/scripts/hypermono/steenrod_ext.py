"""
-------------------------------------------------------------------------------

    hypermono - exact algebra for the monodromy of hypersurfaces in CP^4

    This script is licensed under the MIT License.

-------------------------------------------------------------------------------
Bounded-degree mod-p Steenrod algebra (p = 2, 3), the Thom module of
-theta_hyp over it, minimal free resolutions and the resulting Adams E_2
charts, with the differential pattern and the E_infinity column orders.

Words are tuples of ints. For p = 2 the letter i is Sq^i. For odd p the
letter 0 is the Bockstein and s > 0 is P^s. A word acts from the right:
the last letter is applied first.

The Thom module has the basis u x^k in degree 2k, with

    Sq(u x^k) = u x^k W(x) (1 + x)^k,          W = (1 + dx) / (1 + x)^5
    P(u x^k)  = u x^k F(x) (1 + x^(p-1))^k,     F = f(dx) / f(x)^5,
                                                  f(y) = 1 + y^(p-1)

Odd squares and the Bockstein act by zero.

-------
Requirements:
numpy: https://numpy.org/
galois: https://github.com/mhostetter/galois
tabulate: https://github.com/astanin/python-tabulate
exactalg.py in the same folder
"""

#####################################################################
#### IMPORTS ####
import logging
import sys
from dataclasses import dataclass, replace
from functools import lru_cache
from math import comb
from typing import Optional

from exactalg import (
    BoundExceededError,
    DegreeError,
    HypermonoError,
    PatternError,
    TruncatedSeries,
)

try:
    import numpy as np
    import galois
    import tabulate
except:
    print("""
        Critical:
        \"numpy\", \"galois\" or \"tabulate\" package is missing. Please use the pip command to install it.

        # Linux/macOS
        python3 -m pip install numpy galois tabulate

        # Windows
        py -m pip install numpy galois tabulate
        """)
    sys.exit(2)

#####################################################################
#### PARAMETERS #####
STEENROD_T = {2: 16, 3: 20}
GUARD_BAND = 2
DEFAULT_S_MAX = 6
DEFAULT_N_MAX = 9
SUPPORTED_PRIMES = (2, 3)
BETA = 0
STRATEGIES = ("leftmost", "rightmost")
SVG_CELL = 40
SVG_MARGIN = 30

#####################################################################
#### LOGS ####
LOGGER = logging.getLogger(__name__)


#####################################################################
#### ALGEBRA ####
def _binom(n: int, k: int, p: int) -> int:
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k) % p


def _letter(s: int) -> tuple:
    """Sq^s or P^s as a one-letter word, empty for s = 0."""
    return (s,) if s else ()


@dataclass(frozen=True)
class SteenrodElement:
    """Sum of admissible monomials with coefficients in F_p (nonzero)."""

    p: int
    terms: tuple = ()

    @classmethod
    def from_dict(cls, p: int, terms: dict) -> "SteenrodElement":
        clean = {tuple(w): c % p for w, c in terms.items() if c % p}
        return cls(p, tuple(sorted(clean.items())))

    def to_dict(self) -> dict:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SteenrodElement") -> "SteenrodElement":
        out = self.to_dict()
        for w, c in other.terms:
            out[w] = out.get(w, 0) + c
        return SteenrodElement.from_dict(self.p, out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for word, c in self.terms:
            letters = [format_letter(self.p, x) for x in word] or ["1"]
            prefix = [str(c)] if c != 1 else []
            parts.append(" ".join(prefix + letters))
        return " + ".join(parts)


def format_letter(p: int, letter: int) -> str:
    if p == 2:
        return f"Sq{letter}"
    return "b" if letter == BETA else f"P{letter}"


def parse_word(p: int, text: str) -> tuple:
    """'Sq2 Sq1' or 'P1 b P1' to a word."""
    word = []
    for token in text.split():
        if p == 2 and token.startswith("Sq"):
            word.extend(_letter(int(token[2:])))
        elif p != 2 and token == "b":
            word.append(BETA)
        elif p != 2 and token.startswith("P"):
            word.extend(_letter(int(token[1:])))
        else:
            raise HypermonoError(f"cannot read {token!r} at p={p}", module="steenrod_ext")
    return tuple(word)


def parse_element(p: int, text: str) -> SteenrodElement:
    """'Sq5 + Sq4 Sq1', '2 P2' or '0'."""
    text = text.strip()
    if text == "0":
        return SteenrodElement(p)
    terms = {}
    for part in text.split("+"):
        tokens = part.split()
        coef = 1
        if tokens and tokens[0].isdigit():
            coef = int(tokens.pop(0))
        word = parse_word(p, " ".join(tokens))
        terms[word] = terms.get(word, 0) + coef
    return SteenrodElement.from_dict(p, terms)


class SteenrodAlgebra():
    """
    The mod-p Steenrod algebra through degree T, with memoized Adem
    reduction to the admissible basis.
    """

    def __init__(self, p: int, T: int = None):
        if p not in SUPPORTED_PRIMES:
            raise HypermonoError(f"unsupported prime {p}", module="steenrod_ext")
        self.p = p
        self.T = STEENROD_T[p] if T is None else T
        self._reduced = {}
        self._basis = {}

    def letter_degree(self, letter: int) -> int:
        if self.p == 2:
            return letter
        return 1 if letter == BETA else 2 * letter * (self.p - 1)

    def degree(self, word: tuple) -> int:
        return sum(self.letter_degree(x) for x in word)

    def letters(self, max_degree: int) -> list:
        if self.p == 2:
            return list(range(1, max_degree + 1))
        out = [BETA] if max_degree >= 1 else []
        s = 1
        while self.letter_degree(s) <= max_degree:
            out.append(s)
            s += 1
        return out

    def _is_violation(self, word: tuple, i: int) -> bool:
        a, b = word[i], word[i + 1]
        if self.p == 2:
            return a < 2 * b
        if a == BETA:
            return b == BETA
        if b != BETA:
            return a < self.p * b
        if i + 2 < len(word) and word[i + 2] != BETA:
            return a <= self.p * word[i + 2]
        return False

    def _violation(self, word: tuple, strategy: str):
        positions = range(len(word) - 1)
        if strategy == "rightmost":
            positions = reversed(positions)
        for i in positions:
            if self._is_violation(word, i):
                return i
        return None

    def _adem(self, word: tuple, i: int) -> tuple:
        """(length of the rewritten segment, [(coefficient, replacement)])."""
        p = self.p
        a = word[i]
        if p == 2:
            b = word[i + 1]
            terms = []
            for j in range(a // 2 + 1):
                c = _binom(b - 1 - j, a - 2 * j, 2)
                if c:
                    terms.append((c, _letter(a + b - j) + _letter(j)))
            return 2, terms
        if a == BETA:
            return 2, []
        b = word[i + 1]
        if b != BETA:
            terms = []
            for j in range(a // p + 1):
                c = (-1) ** (a + j) * _binom((p - 1) * (b - j) - 1, a - p * j, p)
                if c % p:
                    terms.append((c, _letter(a + b - j) + _letter(j)))
            return 2, terms
        b = word[i + 2]
        terms = []
        for j in range(a // p + 1):
            c = (-1) ** (a + j) * _binom((p - 1) * (b - j), a - p * j, p)
            if c % p:
                terms.append((c, (BETA,) + _letter(a + b - j) + _letter(j)))
        for j in range((a - 1) // p + 1):
            c = (-1) ** (a + j - 1) * _binom((p - 1) * (b - j) - 1, a - p * j - 1, p)
            if c % p:
                terms.append((c, _letter(a + b - j) + (BETA,) + _letter(j)))
        return 3, terms

    def _check_word(self, word: tuple) -> tuple:
        word = tuple(int(x) for x in word)
        if any(x < 0 for x in word):
            raise HypermonoError(f"negative letter in {word}", module="steenrod_ext")
        if self.p == 2:
            word = tuple(x for x in word if x)
        if self.degree(word) > self.T:
            raise BoundExceededError(
                f"word {word} of degree {self.degree(word)} above T={self.T}",
                module="steenrod_ext",
            )
        return word

    def reduce_dict(self, word: tuple, strategy: str = "leftmost") -> dict:
        key = (word, strategy)
        cached = self._reduced.get(key)
        if cached is not None:
            return cached
        i = self._violation(word, strategy)
        if i is None:
            result = {word: 1}
        else:
            length, terms = self._adem(word, i)
            acc = {}
            for coef, middle in terms:
                rewritten = word[:i] + middle + word[i + length :]
                for w, c in self.reduce_dict(rewritten, strategy).items():
                    acc[w] = (acc.get(w, 0) + coef * c) % self.p
            result = {w: c for w, c in acc.items() if c}
        self._reduced[key] = result
        return result

    def reduce(self, word: tuple, strategy: str = "leftmost") -> SteenrodElement:
        """
        Admissible normal form of a word by Adem relations.

        PARAMS
        -------
        word : tuple of int
            letters, Sq^i for p = 2, 0 = Bockstein and s = P^s for odd p
        strategy : str
            rewrite the leftmost or the rightmost inadmissible spot first

        RETURNS
        -------
        SteenrodElement
            the reduced sum
        """
        if strategy not in STRATEGIES:
            raise HypermonoError(f"unknown strategy {strategy}", module="steenrod_ext")
        word = self._check_word(word)
        return SteenrodElement.from_dict(self.p, self.reduce_dict(word, strategy))

    def multiply(self, a: SteenrodElement, b: SteenrodElement) -> SteenrodElement:
        out = {}
        for w1, c1 in a.terms:
            for w2, c2 in b.terms:
                for w, c in self.reduce_dict(self._check_word(w1 + w2)).items():
                    out[w] = out.get(w, 0) + c1 * c2 * c
        return SteenrodElement.from_dict(self.p, out)

    def is_admissible(self, word: tuple) -> bool:
        return self._violation(tuple(word), "leftmost") is None

    def _admissible_p2(self, remaining: int, cap: int):
        if remaining == 0:
            yield ()
            return
        for i in range(1, min(cap, remaining) + 1):
            for tail in self._admissible_p2(remaining - i, i // 2):
                yield (i,) + tail

    def _admissible_odd(self, remaining: int, last_p, beta_since: bool, after_beta: bool):
        if remaining == 0:
            yield ()
            return
        if not after_beta:
            for tail in self._admissible_odd(remaining - 1, last_p, True, True):
                yield (BETA,) + tail
        s = 1
        while self.letter_degree(s) <= remaining:
            if last_p is None or last_p >= self.p * s + int(beta_since):
                for tail in self._admissible_odd(remaining - self.letter_degree(s), s, False, False):
                    yield (s,) + tail
            s += 1

    def basis(self, n: int) -> list:
        """Admissible monomials of degree n."""
        if n < 0:
            return []
        if n > self.T:
            raise BoundExceededError(f"degree {n} above T={self.T}", module="steenrod_ext")
        if n not in self._basis:
            if self.p == 2:
                words = self._admissible_p2(n, n)
            else:
                words = self._admissible_odd(n, None, False, False)
            self._basis[n] = sorted(words)
        return self._basis[n]


@lru_cache(maxsize=None)
def get_algebra(p: int) -> SteenrodAlgebra:
    return SteenrodAlgebra(p)


def adem_reduce(word: tuple, p: int = 2, strategy: str = "leftmost") -> SteenrodElement:
    return get_algebra(p).reduce(word, strategy)


#####################################################################
#### MODULES ####
@dataclass(frozen=True)
class SteenrodModule:
    """
    Graded F_p vector space with the action of every letter: actions maps
    (letter, basis index) to {basis index: coefficient}; missing means 0.
    top_degree is None for a module given in full.
    """

    p: int
    labels: tuple
    degrees: tuple
    actions: dict
    top_degree: Optional[int]
    d: Optional[int]
    residue: str
    free_ranks: dict

    def basis_in_degree(self, t: int) -> list:
        return [i for i, deg in enumerate(self.degrees) if deg == t]

    def act_letter(self, letter: int, index: int) -> dict:
        return self.actions.get((letter, index), {})

    def act(self, word: tuple, vector: dict) -> dict:
        for letter in reversed(word):
            out = {}
            for i, c in vector.items():
                for j, e in self.act_letter(letter, i).items():
                    out[j] = (out.get(j, 0) + c * e) % self.p
            vector = {j: c for j, c in out.items() if c}
        return vector

    def action_matrix(self, letter: int, t: int) -> list:
        """Rows indexed by the basis in degree t, columns by the target degree."""
        algebra = get_algebra(self.p)
        source = self.basis_in_degree(t)
        target = self.basis_in_degree(t + algebra.letter_degree(letter))
        rows = []
        for i in source:
            image = self.act_letter(letter, i)
            rows.append([image.get(j, 0) for j in target])
        return rows


def residue_tag(p: int, d: int) -> str:
    if p == 2:
        return "d even" if d % 2 == 0 else "d odd"
    return f"d = {d % p} mod {p}"


def thom_class_series(d: int, p: int, truncation: int) -> TruncatedSeries:
    """F(x) = f(dx) / f(x)^5 over F_p, f(y) = 1 + y^(p-1)."""
    e = p - 1
    numerator = [0] * (e + 1)
    numerator[0], numerator[e] = 1, d**e
    f_d = TruncatedSeries.from_polynomial(numerator, p, truncation)
    f_1 = TruncatedSeries.from_polynomial([1] + [0] * (e - 1) + [1], p, truncation)
    return f_d * f_1.power(-5)


def thom_module(d: int, p: int, top_degree: int = None) -> SteenrodModule:
    """
    H^*(MT theta_hyp; F_p) = u H^*(CP^infinity; F_p), through top_degree.

    PARAMS
    -------
    d : int
        degree of the hypersurface; must be even for p = 2
    p : int
        2 or 3
    top_degree : int
        highest internal degree carried, defaults to the algebra bound

    RETURNS
    -------
    SteenrodModule
        the module with the action of every letter of degree <= top_degree
    """
    LOGGER.debug(f"steenrod_ext:thom_module:parameter:d:{d}:p:{p}")
    if p not in SUPPORTED_PRIMES:
        raise HypermonoError(f"unsupported prime {p}", module="steenrod_ext")
    if d < 1:
        raise DegreeError(f"degree must be at least 1, got {d}", module="steenrod_ext")
    if p == 2 and d % 2:
        raise DegreeError(f"the mod 2 Thom module needs d even, got {d}", module="steenrod_ext")
    algebra = get_algebra(p)
    top = algebra.T if top_degree is None else top_degree
    K = top // 2
    e = p - 1
    total = thom_class_series(d, p, K)
    actions = {}
    for k in range(K + 1):
        twisted = total * TruncatedSeries.from_polynomial([1] + [0] * (e - 1) + [1], p, K).power(k)
        for letter in algebra.letters(top - 2 * k):
            if p == 2:
                if letter % 2:
                    continue
                step = letter // 2
            else:
                if letter == BETA:
                    continue
                step = e * letter
            if k + step > K:
                continue
            c = twisted[step]
            if c:
                actions[(letter, k)] = {k + step: c}
    return SteenrodModule(
        p=p,
        labels=tuple(f"u*x^{k}" for k in range(K + 1)),
        degrees=tuple(2 * k for k in range(K + 1)),
        actions=actions,
        top_degree=top,
        d=d,
        residue=residue_tag(p, d),
        free_ranks={2 * k: 1 for k in range(K + 1)},
    )


def trivial_module(p: int) -> SteenrodModule:
    """F_p in degree 0, the cohomology of the sphere spectrum."""
    if p not in SUPPORTED_PRIMES:
        raise HypermonoError(f"unsupported prime {p}", module="steenrod_ext")
    return SteenrodModule(
        p=p,
        labels=("1",),
        degrees=(0,),
        actions={},
        top_degree=None,
        d=None,
        residue="sphere",
        free_ranks={0: 1},
    )


#####################################################################
#### EXT CHARTS ####
@dataclass(frozen=True)
class Differential:
    r: int
    source: tuple
    target: tuple
    is_iso: bool = True
    dashed: bool = False
    decided: bool = True

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "source": list(self.source),
            "target": list(self.target),
            "is_iso": self.is_iso,
            "dashed": self.dashed,
            "decided": self.decided,
        }


@dataclass(frozen=True)
class ExtChart:
    """
    dims and einf_dims hold ((s, stem), dim) pairs with dim > 0; stems are
    t - s.
    """

    p: int
    d: Optional[int]
    residue: str
    s_max: int
    n_max: int
    dims: tuple
    free_ranks: tuple = ()
    differentials: tuple = ()
    einf_dims: tuple = ()
    einf_column_orders: tuple = ()
    einf_alternatives: tuple = ()

    def dim(self, s: int, stem: int) -> int:
        return dict(self.dims).get((s, stem), 0)

    def column(self, stem: int) -> dict:
        return {s: self.dim(s, stem) for s in range(self.s_max + 1)}

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "d": self.d,
            "residue": self.residue,
            "s_max": self.s_max,
            "n_max": self.n_max,
            "dims": [[s, stem, dim] for (s, stem), dim in self.dims],
            "differentials": [x.to_dict() for x in self.differentials],
            "einf_dims": [[s, stem, dim] for (s, stem), dim in self.einf_dims],
            "einf_column_orders": {str(stem): order for stem, order in self.einf_column_orders},
            "einf_alternatives": {
                str(stem): list(orders) for stem, orders in self.einf_alternatives
            },
        }


@lru_cache(maxsize=None)
def _field(p: int):
    return galois.GF(p)


def _left_null_space(rows: list, ncols: int, p: int) -> list:
    if not rows:
        return []
    if ncols == 0:
        return [[int(i == j) for j in range(len(rows))] for i in range(len(rows))]
    GF = _field(p)
    kernel = GF(np.array(rows, dtype=int) % p).left_null_space()
    return [[int(x) for x in row] for row in kernel]


def _complement(image: list, kernel: list, p: int) -> list:
    """
    Kernel vectors completing the span of image to the span of kernel,
    taken greedily in order: the pivot columns of the transpose.
    """
    if not kernel:
        return []
    GF = _field(p)
    stacked = GF(np.array(image + kernel, dtype=int) % p)
    reduced = stacked.T.row_reduce()
    pivots = []
    for row in reduced:
        nonzero = np.nonzero(row)[0]
        if len(nonzero):
            pivots.append(int(nonzero[0]))
    return [kernel[i - len(image)] for i in pivots if i >= len(image)]


def minimal_resolution(module: SteenrodModule, s_max: int, t_max: int) -> ExtChart:
    """
    dim Ext_A^{s,t}(M, F_p) for s <= s_max, t <= t_max, by minimal free
    covers computed degree by degree.

    For each internal degree t (ascending) and homological degree s
    (ascending), the kernel of d_{s-1} in degree t is compared with the
    image of the generators of F_s found so far; every kernel vector that
    raises the rank becomes a new generator of F_s in degree t.

    PARAMS
    -------
    module : SteenrodModule
        module supplied through internal degree t_max at least
    s_max : int
        top homological degree
    t_max : int
        top internal degree, below the algebra bound

    RETURNS
    -------
    ExtChart
        the chart on s <= s_max, 0 <= t - s <= t_max - s_max
    """
    LOGGER.debug(
        f"steenrod_ext:minimal_resolution:parameter:residue:{module.residue}"
        f":s_max:{s_max}:t_max:{t_max}"
    )
    p = module.p
    algebra = get_algebra(p)
    if t_max > algebra.T - 1:
        raise BoundExceededError(
            f"t_max={t_max} needs an algebra bound above {algebra.T}", module="steenrod_ext"
        )
    if module.top_degree is not None and module.top_degree < t_max:
        raise BoundExceededError(
            f"module truncated at {module.top_degree} below t_max={t_max}",
            module="steenrod_ext",
        )
    generators = [[] for _ in range(s_max + 1)]
    counts = {}
    for t in range(t_max + 1):
        previous_basis, previous_rows = None, None
        for s in range(s_max + 1):
            basis = [
                (g, word)
                for g, (t_g, _) in enumerate(generators[s])
                for word in algebra.basis(t - t_g)
            ]
            if s == 0:
                target = module.basis_in_degree(t)
                kernel = [[int(i == j) for j in range(len(target))] for i in range(len(target))]
            else:
                target = previous_basis
                kernel = _left_null_space(previous_rows, len(target), p)
            column = {label: j for j, label in enumerate(target)}
            rows = []
            for g, word in basis:
                image = _apply_free(algebra, module, s, word, generators[s][g][1])
                row = [0] * len(target)
                for label, c in image.items():
                    row[column[label]] = c
                rows.append(row)
            new = _complement(rows, kernel, p)
            for vector in new:
                image = {target[j]: c for j, c in enumerate(vector) if c}
                generators[s].append((t, image))
                basis.append((len(generators[s]) - 1, ()))
                rows.append(vector)
            if new:
                counts[(s, t - s)] = len(new)
                LOGGER.debug(f"steenrod_ext:minimal_resolution:s:{s}:t:{t}:new:{len(new)}")
            previous_basis, previous_rows = basis, rows
    n_max = t_max - s_max
    dims = tuple(
        sorted(((s, stem), n) for (s, stem), n in counts.items() if 0 <= stem <= n_max)
    )
    return ExtChart(
        p=p,
        d=module.d,
        residue=module.residue,
        s_max=s_max,
        n_max=n_max,
        dims=dims,
        free_ranks=tuple(sorted(module.free_ranks.items())),
    )


def _apply_free(algebra: SteenrodAlgebra, module: SteenrodModule, s: int, word: tuple, image: dict) -> dict:
    """word * d_s(g), in the basis of F_{s-1} (or of M when s = 0)."""
    if s == 0:
        return module.act(word, image)
    out = {}
    for (g, phi), c in image.items():
        for w, e in algebra.reduce_dict(word + phi).items():
            key = (g, w)
            out[key] = (out.get(key, 0) + c * e) % algebra.p
    return {key: c for key, c in out.items() if c}


def compute_chart(p: int, d: int, s_max: int = DEFAULT_S_MAX, n_max: int = DEFAULT_N_MAX, extra: int = 0) -> ExtChart:
    """Thom module through t_max + GUARD_BAND (+ extra), then its chart."""
    t_max = n_max + s_max
    module = thom_module(d, p, top_degree=t_max + GUARD_BAND + extra)
    return minimal_resolution(module, s_max, t_max)


def verify_truncation(p: int, d: int, s_max: int = DEFAULT_S_MAX, n_max: int = DEFAULT_N_MAX) -> bool:
    """The chart does not change when the module carries one more degree."""
    first = compute_chart(p, d, s_max, n_max)
    second = compute_chart(p, d, s_max, n_max, extra=1)
    return first.dims == second.dims


#####################################################################
#### DIFFERENTIALS ####
def _apply(dims: dict, differentials: list) -> dict:
    out = dict(dims)
    for x in differentials:
        stem, s = x.source
        if x.target != (stem - 1, s + x.r):
            raise PatternError(f"d_{x.r} from {x.source} cannot hit {x.target}", module="steenrod_ext")
        for stem_, s_ in (x.source, x.target):
            if out.get((s_, stem_), 0) < 1:
                raise PatternError(
                    f"d_{x.r} references the absent class at stem {stem_}, s={s_}",
                    module="steenrod_ext",
                )
            out[(s_, stem_)] -= 1
    return {key: n for key, n in out.items() if n}


def _torsion_orders(chart: ExtChart, dims: dict) -> dict:
    """p^(surviving classes), after one tower class per rational summand and filtration."""
    free = dict(chart.free_ranks)
    orders = {}
    for stem in range(chart.n_max + 1):
        column = {s: dims.get((s, stem), 0) for s in range(chart.s_max + 1)}
        rank = free.get(stem, 0)
        if rank:
            lowest = next((s for s in range(chart.s_max + 1) if column[s]), None)
            if lowest is not None:
                for s in range(lowest, chart.s_max + 1):
                    column[s] -= min(column[s], rank)
        orders[stem] = chart.p ** sum(column.values())
    return orders


def differential_pattern(p: int, d: int) -> list:
    if p == 2:
        if d % 4:
            raise PatternError(f"the mod 2 pattern needs 4 | d, got {d}", module="steenrod_ext")
        pattern = [Differential(2, (6, 1), (5, 3))]
        if d % 8 == 4:
            pattern.append(Differential(4, (8, 0), (7, 4), dashed=True))
        return pattern
    if p == 3:
        if d % 3:
            raise PatternError(f"the mod 3 pattern needs 3 | d, got {d}", module="steenrod_ext")
        return [Differential(2, (8, 0), (7, 2), dashed=True, decided=False)]
    raise HypermonoError(f"unsupported prime {p}", module="steenrod_ext")


def apply_differential_pattern(chart: ExtChart, d: int) -> ExtChart:
    """
    E_infinity page and column orders. Undecided differentials are run both
    ways; stems where the two outcomes differ go to einf_alternatives
    (without, with) instead of einf_column_orders.
    """
    LOGGER.debug(f"steenrod_ext:apply_differential_pattern:parameter:d:{d}:p:{chart.p}")
    if chart.residue != residue_tag(chart.p, d):
        raise PatternError(
            f"chart computed for '{chart.residue}' used with d={d}", module="steenrod_ext"
        )
    pattern = differential_pattern(chart.p, d)
    decided = [x for x in pattern if x.decided]
    undecided = [x for x in pattern if not x.decided]
    dims = _apply(dict(chart.dims), decided)
    orders = _torsion_orders(chart, dims)
    alternatives = {}
    if undecided:
        other = _torsion_orders(chart, _apply(dims, undecided))
        for stem in list(orders):
            if orders[stem] != other[stem]:
                alternatives[stem] = (orders.pop(stem), other[stem])
    return replace(
        chart,
        differentials=tuple(pattern),
        einf_dims=tuple(sorted(dims.items())),
        einf_column_orders=tuple(sorted(orders.items())),
        einf_alternatives=tuple(sorted(alternatives.items())),
    )


def filtration_quotient_rank(chart: ExtChart, stem: int, min_filtration: int) -> int:
    """E_2 classes in the stem with s < min_filtration."""
    if not 0 <= stem <= chart.n_max:
        raise HypermonoError(f"stem {stem} outside the chart", module="steenrod_ext")
    return sum(chart.dim(s, stem) for s in range(min(min_filtration, chart.s_max + 1)))


#####################################################################
#### RENDERING ####
class _SVG():
    def __init__(self):
        self.svg = ""

    def header(self, width: int, height: int):
        self.svg += (
            f'<svg version="1.1" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}" xmlns="http://www.w3.org/2000/svg">\n'
        )

    def line(self, x1, y1, x2, y2, extra=""):
        self.svg += f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" stroke="black" {extra}/>\n'

    def circle(self, x, y, r=3.5):
        self.svg += f'<circle cx="{x:.1f}" cy="{y:.1f}" r="{r}" fill="black"/>\n'

    def text(self, x, y, string, extra=""):
        self.svg += f'<text x="{x:.1f}" y="{y:.1f}" font-size="11" {extra}>{string}</text>\n'

    def get_svg(self) -> str:
        return f"{self.svg}</svg>\n"


def _class_position(stem: int, s: int, k: int, n: int, s_max: int) -> tuple:
    x = SVG_MARGIN + stem * SVG_CELL + (k - (n - 1) / 2) * 8
    y = SVG_MARGIN + (s_max - s) * SVG_CELL
    return x, y


def _render_svg(chart: ExtChart) -> str:
    svg = _SVG()
    width = 2 * SVG_MARGIN + chart.n_max * SVG_CELL
    height = 2 * SVG_MARGIN + chart.s_max * SVG_CELL
    svg.header(width, height)
    for stem in range(chart.n_max + 1):
        x = SVG_MARGIN + stem * SVG_CELL
        svg.line(x, SVG_MARGIN, x, height - SVG_MARGIN, 'stroke-opacity="0.15"')
        svg.text(x - 3, height - SVG_MARGIN / 3, str(stem))
    for s in range(chart.s_max + 1):
        y = SVG_MARGIN + (chart.s_max - s) * SVG_CELL
        svg.line(SVG_MARGIN, y, width - SVG_MARGIN, y, 'stroke-opacity="0.15"')
        svg.text(SVG_MARGIN / 4, y + 4, str(s))
    for (s, stem), n in chart.dims:
        for k in range(n):
            svg.circle(*_class_position(stem, s, k, n, chart.s_max))
    for x in chart.differentials:
        (stem0, s0), (stem1, s1) = x.source, x.target
        a = _class_position(stem0, s0, 0, 1, chart.s_max)
        b = _class_position(stem1, s1, 0, 1, chart.s_max)
        extra = 'stroke-dasharray="4 3"' if x.dashed else ""
        svg.line(a[0], a[1], b[0], b[1], extra)
    return svg.get_svg()


def _render_text(chart: ExtChart) -> str:
    stems = list(range(chart.n_max + 1))
    rows = []
    for s in range(chart.s_max, -1, -1):
        rows.append([s] + ["o" * chart.dim(s, stem) for stem in stems])
    lines = [
        f"Adams E2, p={chart.p}, {chart.residue}",
        tabulate.tabulate(rows, headers=["s \\ t-s"] + stems, tablefmt="grid"),
    ]
    for x in chart.differentials:
        style = "dashed" if x.dashed else "solid"
        lines.append(f"d{x.r}: {x.source} -> {x.target} ({style})")
    for stem, order in chart.einf_column_orders:
        lines.append(f"E_inf stem {stem}: order {order}")
    for stem, orders in chart.einf_alternatives:
        lines.append(f"E_inf stem {stem}: order {' or '.join(str(o) for o in orders)}")
    return "\n".join(lines) + "\n"


def emit_chart(chart: ExtChart, fmt: str = "text") -> str:
    """Deterministic text dot-grid or SVG (one circle per class)."""
    if fmt == "text":
        return _render_text(chart)
    if fmt == "svg":
        return _render_svg(chart)
    raise HypermonoError(f"unknown chart format {fmt}", module="steenrod_ext")
