"""Weighted power-commutator presentations and the collection engine.

A presentation on generators g_1, ..., g_m over an odd-or-even prime p
consists of power relations g_i**p = w_i (w_i a normal word over
generators of index strictly greater than i) and commutator relations
[g_j, g_i] = w_ji for j > i (w_ji over indices strictly greater than j).
Missing relations default to the trivial word.  Conventions:

    [x, y] = x^-1 y^-1 x y        x^y = y^-1 x y        xy = yx[x,y]

Elements are kept in normal form as exponent tuples (e_1, ..., e_m) with
0 <= e_k < p, representing g_1**e_1 * ... * g_m**e_m.  The index of an
element is its mixed-radix value with the first coordinate most
significant, so lexicographic order on tuples equals numeric order on
indices.

A presentation with these shape constraints always yields a terminating
collection procedure; it defines a group of order p**m exactly when the
four families of overlap tests pass (`consistency_witness` returns None).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Sequence

import numpy as np

from .errors import InconsistentPresentationError, OrderBoundError, PresentationError

Element = tuple[int, ...]
Word = tuple[tuple[int, int], ...]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _normalize_word(word: Iterable[Sequence[int]]) -> Word:
    out = []
    for letter in word:
        k, e = letter
        out.append((int(k), int(e)))
    return tuple(out)


class PcPresentation:
    """Validated power-commutator data for a finite p-group.

    Parameters
    ----------
    p:
        The prime.  Every generator has relative order p.
    ngens:
        Number of generators m; the presented group has order p**m
        when consistent.
    powers:
        Mapping i -> word for the relation g_i**p = word.  Words are
        sequences of (index, exponent) letters with strictly ascending
        indices, exponents in [1, p-1], and every index > i.
    commutators:
        Mapping (j, i) with j > i -> word for [g_j, g_i] = word, with
        every index in the word > j.
    """

    __slots__ = ("p", "ngens", "powers", "commutators")

    def __init__(
        self,
        p: int,
        ngens: int,
        powers: Optional[Mapping[int, Iterable[Sequence[int]]]] = None,
        commutators: Optional[Mapping[tuple[int, int], Iterable[Sequence[int]]]] = None,
    ) -> None:
        if not _is_prime(p):
            raise PresentationError(f"p must be prime, got {p}")
        if ngens < 1:
            raise PresentationError(f"ngens must be >= 1, got {ngens}")
        self.p = p
        self.ngens = ngens
        pw: dict[int, Word] = {}
        for i, word in (powers or {}).items():
            i = int(i)
            if not 1 <= i <= ngens:
                raise PresentationError(f"power relation index {i} out of range")
            w = _normalize_word(word)
            self._check_word(w, floor=i, context=f"power relation for generator {i}")
            if w:
                pw[i] = w
        cm: dict[tuple[int, int], Word] = {}
        for key, word in (commutators or {}).items():
            j, i = int(key[0]), int(key[1])
            if not (1 <= i < j <= ngens):
                raise PresentationError(
                    f"commutator relation key ({j}, {i}) must satisfy ngens >= j > i >= 1"
                )
            w = _normalize_word(word)
            self._check_word(w, floor=j, context=f"commutator relation [{j}, {i}]")
            if w:
                cm[(j, i)] = w
        self.powers = pw
        self.commutators = cm

    def _check_word(self, word: Word, floor: int, context: str) -> None:
        prev = floor
        for k, e in word:
            if not floor < k <= self.ngens:
                raise PresentationError(
                    f"{context}: generator index {k} must lie in ({floor}, {self.ngens}]"
                )
            if k <= prev:
                raise PresentationError(f"{context}: indices must be strictly ascending")
            if not 1 <= e <= self.p - 1:
                raise PresentationError(
                    f"{context}: exponent {e} must lie in [1, {self.p - 1}]"
                )
            prev = k

    def power(self, i: int) -> Word:
        """Relation word for g_i**p (empty tuple if trivial)."""
        return self.powers.get(i, ())

    def commutator(self, j: int, i: int) -> Word:
        """Relation word for [g_j, g_i], j > i (empty tuple if trivial)."""
        return self.commutators.get((j, i), ())

    @property
    def order(self) -> int:
        return self.p**self.ngens

    def canonical_key(self) -> tuple:
        return (
            self.p,
            self.ngens,
            tuple(sorted(self.powers.items())),
            tuple(sorted(self.commutators.items())),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PcPresentation):
            return NotImplemented
        return self.canonical_key() == other.canonical_key()

    def __hash__(self) -> int:
        return hash(self.canonical_key())

    def __repr__(self) -> str:
        return (
            f"PcPresentation(p={self.p}, ngens={self.ngens}, "
            f"{len(self.powers)} power and {len(self.commutators)} commutator relations)"
        )


@dataclass(frozen=True)
class ConsistencyWitness:
    """A failed overlap test: `kind` names the family, `gens` the
    generator indices involved, and lhs/rhs the two distinct normal
    forms obtained for the same product."""

    kind: str
    gens: tuple[int, ...]
    lhs: Element
    rhs: Element

    def describe(self) -> str:
        names = ", ".join(f"g{k}" for k in self.gens)
        return f"overlap test '{self.kind}' on ({names}) gives {self.lhs} != {self.rhs}"


class PcGroup:
    """Collection engine over a power-commutator presentation.

    Construction checks consistency by default and raises
    InconsistentPresentationError (with a witness) when the presented
    group is smaller than p**ngens.
    """

    def __init__(
        self,
        pres: PcPresentation,
        validate: bool = True,
        element_bound: int = 100_000,
    ) -> None:
        self.pres = pres
        self.p = pres.p
        self.ngens = pres.ngens
        self.element_bound = element_bound
        self.identity: Element = (0,) * pres.ngens
        self._conj_cache: dict[tuple[int, int], Element] = {}
        self._power_values: dict[int, Element] = {}
        self._rtables: dict[int, np.ndarray] = {}
        self._inv_table: Optional[np.ndarray] = None
        self._cache: dict = {}
        if validate:
            witness = self.consistency_witness()
            if witness is not None:
                raise InconsistentPresentationError(
                    f"presentation does not define a group of order "
                    f"{pres.p}**{pres.ngens}: {witness.describe()}",
                    witness,
                )

    # ------------------------------------------------------------------
    # collection core

    def generator(self, i: int) -> Element:
        if not 1 <= i <= self.ngens:
            raise ValueError(f"generator index {i} out of range")
        return tuple(1 if k == i else 0 for k in range(1, self.ngens + 1))

    @property
    def gens(self) -> list[Element]:
        return [self.generator(i) for i in range(1, self.ngens + 1)]

    def _power_value(self, g: int) -> Element:
        """Normal form of g_g**p, collected from its relation word."""
        val = self._power_values.get(g)
        if val is None:
            val = self._mul_word(self.identity, self.pres.power(g))
            self._power_values[g] = val
        return val

    def _conj_gen_gen(self, h: int, g: int) -> Element:
        """Normal form of g_h conjugated by g_g, for h > g."""
        val = self._conj_cache.get((h, g))
        if val is None:
            # g_h^(g_g) = g_h * [g_h, g_g]
            val = self._mul_word(self.generator(h), self.pres.commutator(h, g))
            self._conj_cache[(h, g)] = val
        return val

    def _conj_elem_by_gen(self, x: Element, g: int) -> Element:
        """Conjugate x by g_g where every letter of x has index > g."""
        out = self.identity
        for k in range(g + 1, self.ngens + 1):
            a = x[k - 1]
            if a:
                z = self._conj_gen_gen(k, g)
                for _ in range(a):
                    out = self.mul(out, z)
        return out

    def _conj_genpow(self, j: int, g: int, e: int) -> Element:
        """Normal form of g_j conjugated by g_g**e, for j > g, 0 <= e < p."""
        z = self.generator(j)
        for _ in range(e):
            z = self._conj_elem_by_gen(z, g)
        return z

    def _mul_gen(self, x: Element, g: int, e: int) -> Element:
        """Normal form of x * g_g**e for 0 <= e < p.

        Terminates by descent on (ngens - g, number of nonzero
        coordinates of x at indices beyond g): the blocker branch keeps
        g and strictly shrinks the second component, and every other
        spawned multiplication uses a strictly larger generator index.
        """
        if e == 0:
            return x
        j = 0
        for k in range(self.ngens, g, -1):
            if x[k - 1]:
                j = k
                break
        if j == 0:
            total = x[g - 1] + e
            q, r = divmod(total, self.p)
            y = list(x)
            y[g - 1] = r
            out: Element = tuple(y)
            for _ in range(q):
                out = self.mul(out, self._power_value(g))
            return out
        # x = x' * g_j**a with a the deepest letter beyond g, so
        # x * g_g**e = (x' * g_g**e) * (g_j**(g_g**e))**a
        a = x[j - 1]
        stripped = list(x)
        stripped[j - 1] = 0
        y = self._mul_gen(tuple(stripped), g, e)
        z = self._conj_genpow(j, g, e)
        for _ in range(a):
            y = self.mul(y, z)
        return y

    def _mul_gen_any(self, x: Element, g: int, e: int) -> Element:
        """Normal form of x * g_g**e for any integer e."""
        q, r = divmod(e, self.p)
        y = self._mul_gen(x, g, r)
        if q:
            y = self.mul(y, self.pow(self._power_value(g), q))
        return y

    def _mul_word(self, x: Element, word: Word) -> Element:
        for k, e in word:
            x = self._mul_gen_any(x, k, e)
        return x

    # ------------------------------------------------------------------
    # public arithmetic

    def collect(self, word: Iterable[Sequence[int]]) -> Element:
        """Normal form of a word given as (index, exponent) letters."""
        x = self.identity
        for k, e in word:
            k = int(k)
            if not 1 <= k <= self.ngens:
                raise ValueError(f"generator index {k} out of range")
            x = self._mul_gen_any(x, k, int(e))
        return x

    def mul(self, x: Element, y: Element) -> Element:
        for k in range(1, self.ngens + 1):
            e = y[k - 1]
            if e:
                x = self._mul_gen(x, k, e)
        return x

    def inv(self, x: Element) -> Element:
        """Inverse, found by cancelling coordinates left to right.

        Right-multiplying by g_k**(p - a) clears coordinate k without
        disturbing earlier ones, and the cancelling letters accumulate
        in ascending order, so they are themselves a normal form.
        """
        cur = x
        out = [0] * self.ngens
        for k in range(1, self.ngens + 1):
            a = cur[k - 1]
            if a:
                t = self.p - a
                cur = self._mul_gen(cur, k, t)
                out[k - 1] = t
        return tuple(out)

    def pow(self, x: Element, e: int) -> Element:
        if e < 0:
            x = self.inv(x)
            e = -e
        out = self.identity
        base = x
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def conj(self, x: Element, y: Element) -> Element:
        """x conjugated by y, i.e. y^-1 x y."""
        return self.mul(self.inv(y), self.mul(x, y))

    def comm(self, x: Element, y: Element) -> Element:
        """Commutator x^-1 y^-1 x y."""
        return self.mul(self.inv(self.mul(y, x)), self.mul(x, y))

    def order_of(self, x: Element) -> int:
        n = 1
        while x != self.identity:
            x = self.pow(x, self.p)
            n *= self.p
        return n

    # ------------------------------------------------------------------
    # consistency

    def consistency_witness(self) -> Optional[ConsistencyWitness]:
        """Run all overlap tests; return the first failure, else None.

        The tests compare two collection orders for each critical word:
        g_k(g_j g_i) vs (g_k g_j)g_i for k > j > i, the two power
        overlaps g_j**p with g_i and g_j with g_i**p for j > i, and
        g_i * g_i**p vs g_i**p * g_i.  All pass exactly when normal
        forms are unique, i.e. the group has order p**ngens.
        """
        m = self.ngens
        p = self.p
        for k in range(3, m + 1):
            for j in range(2, k):
                for i in range(1, j):
                    u = self._mul_gen(self.generator(j), i, 1)
                    lhs = self.mul(self.generator(k), u)
                    v = self._mul_gen(self.generator(k), j, 1)
                    rhs = self._mul_gen(v, i, 1)
                    if lhs != rhs:
                        return ConsistencyWitness("assoc", (k, j, i), lhs, rhs)
        for j in range(2, m + 1):
            for i in range(1, j):
                pj = self._power_value(j)
                lhs = self._mul_gen(pj, i, 1)
                u = self._mul_gen(self.generator(j), i, 1)
                gj_pm1 = tuple(p - 1 if t == j else 0 for t in range(1, m + 1))
                rhs = self.mul(gj_pm1, u)
                if lhs != rhs:
                    return ConsistencyWitness("power_left", (j, i), lhs, rhs)
                pi = self._power_value(i)
                lhs = self.mul(self.generator(j), pi)
                rhs = self._mul_gen(u, i, p - 1)
                if lhs != rhs:
                    return ConsistencyWitness("power_right", (j, i), lhs, rhs)
        for i in range(1, m + 1):
            pi = self._power_value(i)
            lhs = self.mul(self.generator(i), pi)
            rhs = self._mul_gen(pi, i, 1)
            if lhs != rhs:
                return ConsistencyWitness("power_self", (i,), lhs, rhs)
        return None

    # ------------------------------------------------------------------
    # indexed view

    @property
    def element_count(self) -> int:
        return self.p**self.ngens

    def _check_bound(self) -> None:
        if self.element_count > self.element_bound:
            raise OrderBoundError(
                f"group order {self.element_count} exceeds the element bound "
                f"{self.element_bound}"
            )

    def elements(self) -> Iterator[Element]:
        """All elements in index order."""
        self._check_bound()
        return (tuple(v) for v in itertools.product(range(self.p), repeat=self.ngens))

    def idx(self, x: Element) -> int:
        n = 0
        for e in x:
            n = n * self.p + e
        return n

    def vec(self, n: int) -> Element:
        out = [0] * self.ngens
        for k in range(self.ngens - 1, -1, -1):
            n, out[k] = divmod(n, self.p)
        return tuple(out)

    def _rtable(self, g: int) -> np.ndarray:
        """Index table for right multiplication by g_g."""
        tab = self._rtables.get(g)
        if tab is None:
            self._check_bound()
            n = self.element_count
            arr = np.empty(n, dtype=np.int64)
            for i, x in enumerate(self.elements()):
                arr[i] = self.idx(self._mul_gen(x, g, 1))
            tab = arr
            self._rtables[g] = tab
        return tab

    def right_mult_perm(self, y: Element) -> np.ndarray:
        """Permutation array P with P[i] = idx(vec(i) * y)."""
        self._check_bound()
        perm = np.arange(self.element_count, dtype=np.int64)
        for k in range(1, self.ngens + 1):
            e = y[k - 1]
            if e:
                tab = self._rtable(k)
                for _ in range(e):
                    perm = tab[perm]
        return perm

    def mul_idx(self, i: int, j: int) -> int:
        cur = i
        y = self.vec(j)
        for k in range(1, self.ngens + 1):
            e = y[k - 1]
            if e:
                tab = self._rtable(k)
                for _ in range(e):
                    cur = int(tab[cur])
        return cur

    def inv_idx(self, i: int) -> int:
        return int(self.inv_table()[i])

    def inv_table(self) -> np.ndarray:
        """Array T with T[i] = idx(vec(i)**-1)."""
        if self._inv_table is None:
            self._check_bound()
            arr = np.empty(self.element_count, dtype=np.int64)
            for n, x in enumerate(self.elements()):
                arr[n] = self.idx(self.inv(x))
            self._inv_table = arr
        return self._inv_table

    def left_mult_perm(self, y: Element) -> np.ndarray:
        """Permutation array P with P[i] = idx(y * vec(i)).

        Uses (y x)**-1 = x**-1 y**-1 to express left multiplication
        through the right-multiplication tables.
        """
        it = self.inv_table()
        return it[self.right_mult_perm(self.inv(y))[it]]

    def conj_perm(self, y: Element) -> np.ndarray:
        """Permutation array P with P[i] = idx(y**-1 vec(i) y)."""
        return self.right_mult_perm(y)[self.left_mult_perm(self.inv(y))]
