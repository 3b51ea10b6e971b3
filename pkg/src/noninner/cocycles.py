"""Derivations G/N -> Z(N) and their lifts to automorphisms.

For a normal subgroup N, a derivation (one-cocycle for the conjugation
action) is a map d on the cosets Ng satisfying

    d(N g1 g2) = d(N g1)^g2 * d(N g2),

with values in Z(N).  Every verified derivation lifts to an automorphism
g -> g * d(Ng) that fixes N elementwise and acts trivially on G/N.

Two specific derivations are built from a selection frame (a, b, w):
every element factors uniquely as x * [a,b]^t * a^j * b^i with
x in Z_{m-4} and i, j, t in [0, p); the `b_exponent` derivation has
value w^i * [w,b]^(i(i-1)/2) and the `a_exponent` derivation has value
w^j * [w,b]^(ij + t).  Both are constant on N-cosets because N lies in
both Phi and Z_{m-4}, so multiplying by an element of N changes none of
the exponents.
"""

from __future__ import annotations

import itertools
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from .errors import OrderBoundError
from .eligibility import SelectionContext
from .maps import GroupMap
from .pcgroup import Element, PcGroup
from .structure import Subgroup, center_of, coset_min_table, is_normal


class CosetTable:
    """Canonical representatives for the cosets of a normal subgroup:
    each element maps to the index-least member of its coset."""

    __slots__ = ("group", "sub", "min_table", "rep_indices", "rep_pos")

    def __init__(self, group: PcGroup, sub: Subgroup):
        if not is_normal(group, sub):
            raise ValueError("coset tables require a normal subgroup")
        self.group = group
        self.sub = sub
        self.min_table = coset_min_table(group, sub)
        reps = np.unique(self.min_table)
        self.rep_indices = [int(r) for r in reps]
        pos = np.full(group.element_count, -1, dtype=np.int64)
        pos[reps] = np.arange(len(reps))
        self.rep_pos = pos

    @property
    def count(self) -> int:
        return len(self.rep_indices)

    def rep_idx(self, i: int) -> int:
        return int(self.min_table[i])

    def rep(self, x: Element) -> Element:
        return self.group.vec(int(self.min_table[self.group.idx(x)]))


def canonical_rep(group: PcGroup, sub: Subgroup, x: Element) -> Element:
    """Index-least element of the coset (sub)*x."""
    return CosetTable(group, sub).rep(x)


class Derivation:
    """A map on N-cosets with values in Z(N), stored at canonical reps."""

    __slots__ = ("group", "n_sub", "coset_table", "values", "zn", "_verified")

    def __init__(
        self,
        group: PcGroup,
        n_sub: Subgroup,
        coset_table: CosetTable,
        values: Dict[int, Element],
        zn: Subgroup,
    ):
        self.group = group
        self.n_sub = n_sub
        self.coset_table = coset_table
        self.zn = zn
        if set(values) != set(coset_table.rep_indices):
            raise ValueError("values must be given at exactly the canonical reps")
        for v in values.values():
            if v not in zn.elements:
                raise ValueError("derivation value outside Z(N)")
        self.values = dict(values)
        self._verified: Optional[bool] = None

    def value_at_idx(self, i: int) -> Element:
        return self.values[int(self.coset_table.min_table[i])]

    def value_at(self, x: Element) -> Element:
        return self.value_at_idx(self.group.idx(x))

    def items(self) -> List[Tuple[int, Element]]:
        return sorted(self.values.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        return (
            self.group is other.group
            and self.n_sub == other.n_sub
            and self.values == other.values
        )

    def __hash__(self) -> int:
        return hash(tuple(self.items()))

    def __repr__(self) -> str:
        return f"Derivation(on {self.coset_table.count} cosets)"


class _Decomposer:
    """Extracts the exponents (i, j, t) of the unique factorization
    g = x * [a,b]^t * a^j * b^i with x in Z_{m-4}."""

    __slots__ = ("group", "p", "b_inv", "a_inv", "c_inv", "cent", "phi", "deep")

    def __init__(self, ctx: SelectionContext):
        G = ctx.group
        self.group = G
        self.p = G.p
        self.b_inv = G.inv(ctx.b)
        self.a_inv = G.inv(ctx.a)
        self.c_inv = G.inv(ctx.comm_a_b)
        self.cent = ctx.centralizer_n.elements
        self.phi = ctx.phi.elements
        self.deep = ctx.z_deep.elements

    def _strip(self, x: Element, inv: Element, target: frozenset, what: str):
        G = self.group
        e = 0
        while x not in target:
            x = G.mul(x, inv)
            e += 1
            if e >= self.p:
                raise RuntimeError(
                    f"factorization failed: no power of {what} reaches the target"
                )
        return x, e

    def exponents(self, g: Element) -> Tuple[int, int, int]:
        u, i = self._strip(g, self.b_inv, self.cent, "b")
        v, j = self._strip(u, self.a_inv, self.phi, "a")
        _, t = self._strip(v, self.c_inv, self.deep, "[a, b]")
        return i, j, t


def _decomposer(ctx: SelectionContext) -> _Decomposer:
    d = getattr(ctx, "_decomp", None)
    if d is None:
        d = _Decomposer(ctx)
        ctx._decomp = d
    return d


def coset_exponents(ctx: SelectionContext, g: Element) -> Tuple[int, int, int]:
    """(i, j, t) with g = x * [a,b]^t * a^j * b^i, x in Z_{m-4},
    exponents in [0, p)."""
    return _decomposer(ctx).exponents(g)


def b_exponent_value(ctx: SelectionContext, g: Element) -> Element:
    """w^i * [w,b]^(i(i-1)/2) where i is the b-exponent of g.  The
    half-integer exponent is taken as an exact integer (i(i-1) is even)
    before any reduction."""
    G = ctx.group
    i, _, _ = coset_exponents(ctx, g)
    return G.mul(G.pow(ctx.w, i), G.pow(ctx.comm_w_b, (i * (i - 1)) // 2))


def a_exponent_value(ctx: SelectionContext, g: Element) -> Element:
    """w^j * [w,b]^(ij + t) where i, j, t are the exponents of g."""
    G = ctx.group
    i, j, t = coset_exponents(ctx, g)
    return G.mul(G.pow(ctx.w, j), G.pow(ctx.comm_w_b, i * j + t))


def _build(ctx: SelectionContext, formula) -> Derivation:
    G = ctx.group
    ct = CosetTable(G, ctx.n_sub)
    zn = center_of(G, ctx.n_sub)
    values = {r: formula(ctx, G.vec(r)) for r in ct.rep_indices}
    return Derivation(G, ctx.n_sub, ct, values, zn)


def derivation_from_b_exponent(ctx: SelectionContext) -> Derivation:
    return _build(ctx, b_exponent_value)


def derivation_from_a_exponent(ctx: SelectionContext) -> Derivation:
    return _build(ctx, a_exponent_value)


def verify_cocycle(d: Derivation):
    """None if the cocycle identity holds for every pair of cosets, else
    a counterexample (g1, g2, lhs, rhs)."""
    G = d.group
    ct = d.coset_table
    reps = np.array(ct.rep_indices, dtype=np.int64)
    zn_elems = [G.vec(int(i)) for i in d.zn.indices]
    code_of = {x: c for c, x in enumerate(zn_elems)}
    nz = len(zn_elems)
    mul_code = np.empty((nz, nz), dtype=np.int64)
    for c1, x1 in enumerate(zn_elems):
        for c2, x2 in enumerate(zn_elems):
            mul_code[c1, c2] = code_of[G.mul(x1, x2)]
    val_code = np.array([code_of[d.values[int(r)]] for r in reps])
    for t2, r2 in enumerate(reps):
        g2 = G.vec(int(r2))
        conj2 = np.array([code_of[G.conj(x, g2)] for x in zn_elems])
        perm = G.right_mult_perm(g2)
        prods = ct.min_table[perm[reps]]
        lhs = val_code[ct.rep_pos[prods]]
        rhs = mul_code[conj2[val_code], val_code[t2]]
        bad = np.nonzero(lhs != rhs)[0]
        if bad.size:
            t1 = int(bad[0])
            g1 = G.vec(int(reps[t1]))
            d._verified = False
            return (
                g1,
                g2,
                zn_elems[int(lhs[t1])],
                zn_elems[int(rhs[t1])],
            )
    d._verified = True
    return None


def lift_to_automorphism(d: Derivation) -> GroupMap:
    """The map g -> g * d(Ng) as a GroupMap, verified to be a
    well-formed lift: it must agree with that formula on every element,
    fix N elementwise, and act trivially on G/N."""
    if d._verified is None:
        verify_cocycle(d)
    if not d._verified:
        raise ValueError("derivation failed cocycle verification; not lifting")
    G = d.group
    images = [G.mul(g, d.value_at(g)) for g in G.gens]
    f = GroupMap(G, images)
    table = f.apply_table()
    mt = d.coset_table.min_table
    for r in d.coset_table.rep_indices:
        members = np.nonzero(mt == r)[0]
        perm = G.right_mult_perm(d.values[r])
        if not (table[members] == perm[members]).all():
            raise RuntimeError("lift does not equal g * d(Ng) on some element")
    n_idx = d.n_sub.indices
    if not (table[n_idx] == n_idx).all():
        raise RuntimeError("lift does not fix N elementwise")
    if not (mt[table] == mt).all():
        raise RuntimeError("lift does not preserve every N-coset")
    return f


def combine(d1: Derivation, d2: Derivation) -> Derivation:
    """Pointwise product of two derivations on the same cosets (the
    group operation of the derivation group, since values commute)."""
    if d1.group is not d2.group or d1.n_sub != d2.n_sub:
        raise ValueError("derivations live on different coset spaces")
    G = d1.group
    values = {r: G.mul(v, d2.values[r]) for r, v in d1.values.items()}
    return Derivation(G, d1.n_sub, d1.coset_table, values, d1.zn)


def all_derivations(
    group: PcGroup, n_sub: Subgroup, bound: int = 3**5
) -> List[Derivation]:
    """Every derivation on the cosets of `n_sub` with values in Z(N).

    Enumerates assignments of values to the generator cosets, propagates
    each by breadth-first search along the cocycle identity, and keeps
    the assignments that extend consistently and pass full verification.
    Raises OrderBoundError when the coset count or the assignment count
    exceeds `bound`.
    """
    G = group
    ct = CosetTable(G, n_sub)
    zn = center_of(G, n_sub)
    if ct.count > bound:
        raise OrderBoundError(
            f"coset count {ct.count} exceeds enumeration bound {bound}"
        )
    if zn.order**G.ngens > bound:
        raise OrderBoundError(
            f"{zn.order}^{G.ngens} candidate assignments exceed bound {bound}"
        )
    zn_elems = [G.vec(int(i)) for i in zn.indices]
    gen_perms = [G.right_mult_perm(g) for g in G.gens]
    identity_rep = int(ct.min_table[0])
    results: List[Derivation] = []
    seen: set = set()
    for combo in itertools.product(zn_elems, repeat=G.ngens):
        values: Dict[int, Element] = {identity_rep: G.identity}
        ok = True
        queue = [identity_rep]
        while queue and ok:
            r = queue.pop()
            gr = values[r]
            for k in range(G.ngens):
                r2 = int(ct.min_table[gen_perms[k][r]])
                val = G.mul(G.conj(gr, G.gens[k]), combo[k])
                known = values.get(r2)
                if known is None:
                    values[r2] = val
                    queue.append(r2)
                elif known != val:
                    ok = False
                    break
        if not ok or len(values) != ct.count:
            continue
        key = tuple(sorted((r, v) for r, v in values.items()))
        if key in seen:
            continue
        seen.add(key)
        d = Derivation(G, n_sub, ct, values, zn)
        if verify_cocycle(d) is None:
            results.append(d)
    return results
