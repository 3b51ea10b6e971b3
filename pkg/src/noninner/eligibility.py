"""Structural gate: which groups the certificate construction applies to.

The construction targets finite p-groups with p odd, coclass 2 and order
at least p^7 whose center has order p, whose second center Z_2 satisfies
Z_2/Z noncyclic and Z_2 <= Z(Phi(G)), and which need exactly two
generators.  Groups failing a check are routed to the first failing
condition; for each rejection route the report cites the literature that
settles (or scopes out) that case, since those groups need no
certificate from this tool.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .errors import SelectionError
from .maps import GroupMap, verify_automorphism
from .pcgroup import Element, PcGroup
from .structure import (
    Subgroup,
    center,
    center_of,
    centralizer,
    closure,
    coclass,
    frattini,
    intersection,
    is_normal,
    lower_central_series,
    minimal_generator_count,
    nilpotency_class,
    omega1,
    quotient_exponent_is_p,
    quotient_is_cyclic,
    upper_central_series,
)


class Route(str, Enum):
    """Outcome of the structural gate, checked in this order."""

    NOT_ODD_P = "NOT_ODD_P"
    NOT_COCLASS_2 = "NOT_COCLASS_2"
    ORDER_BELOW_P7 = "ORDER_BELOW_P7"
    Z2_OVER_Z_CYCLIC = "Z2_OVER_Z_CYCLIC"
    Z2_NOT_IN_ZPHI_OR_D_NOT_2 = "Z2_NOT_IN_ZPHI_OR_D_NOT_2"
    ELIGIBLE = "ELIGIBLE"


CITATIONS: dict[Route, tuple[str, ...]] = {
    Route.NOT_ODD_P: (
        "p = 2 is outside the scope of this construction; the derivation "
        "formulas used here require p odd.",
        "For 2-groups the existence of noninner automorphisms of order 2 "
        "is known in several classes but open in general; see e.g. "
        "H. Liebeck, Outer automorphisms in nilpotent p-groups of class 2, "
        "J. London Math. Soc. 40 (1965) 268-275.",
    ),
    Route.NOT_COCLASS_2: (
        "Nilpotency class 2: A. Abdollahi, Finite p-groups of class 2 have "
        "noninner automorphisms of order p, J. Algebra 312 (2007) 876-879.",
        "Nilpotency class 3: A. Abdollahi, M. Ghoraishi, B. Wilkens, Finite "
        "p-groups of class 3 have noninner automorphisms of order p, "
        "Beitr. Algebra Geom. 54 (2013) 363-381.",
        "Maximal class (coclass 1): M. Shabani Attar, On a conjecture about "
        "automorphisms of finite p-groups, Arch. Math. 93 (2009) 399-403.",
    ),
    Route.ORDER_BELOW_P7: (
        "Coclass-2 groups of order below p^7 are settled by prior "
        "verification work on small p-groups, including exhaustive computer "
        "checks (GAP small-groups library) for p = 3.",
    ),
    Route.Z2_OVER_Z_CYCLIC: (
        "M. Shabani Attar, Existence of noninner automorphisms of order p "
        "in some finite p-groups: a p-group of coclass 2 with p odd and "
        "Z_2(G)/Z(G) cyclic has a noninner automorphism of order p.",
    ),
    Route.Z2_NOT_IN_ZPHI_OR_D_NOT_2: (
        "M. Shabani Attar, Existence of noninner automorphisms of order p "
        "in some finite p-groups: a p-group of coclass 2 with p odd, "
        "Z_2(G)/Z(G) noncyclic, and Z_2(G) not contained in Z(Phi(G)) or "
        "d(G) != 2 has a noninner automorphism of order p.",
        "When C_G(Z(Phi(G))) != Phi(G): M. Deaconescu, G. Silberberg, "
        "Noninner automorphisms of order p of finite p-groups, J. Algebra "
        "250 (2002) 283-287.",
    ),
    Route.ELIGIBLE: (),
}


@dataclass(frozen=True)
class RouteDecision:
    route: Route
    citations: tuple[str, ...]

    def describe(self) -> str:
        lines = [f"route: {self.route.value}"]
        for c in self.citations:
            lines.append(f"  - {c}")
        return "\n".join(lines)


def decide_route(group: PcGroup) -> RouteDecision:
    """First failing structural condition, in the fixed check order:
    odd p, coclass 2, order >= p^7, Z_2/Z noncyclic, then
    (Z_2 <= Z(Phi) and d = 2)."""

    def decided(route: Route) -> RouteDecision:
        return RouteDecision(route, CITATIONS[route])

    if group.p == 2:
        return decided(Route.NOT_ODD_P)
    if coclass(group) != 2:
        return decided(Route.NOT_COCLASS_2)
    if group.ngens < 7:
        return decided(Route.ORDER_BELOW_P7)
    series = upper_central_series(group)
    z1, z2 = series[1], series[2]
    if quotient_is_cyclic(group, z2, z1):
        return decided(Route.Z2_OVER_Z_CYCLIC)
    phi = frattini(group)
    z_phi = center_of(group, phi)
    if not (z2 <= z_phi and minimal_generator_count(group) == 2):
        return decided(Route.Z2_NOT_IN_ZPHI_OR_D_NOT_2)
    return decided(Route.ELIGIBLE)


def _is_elementary_abelian(group: PcGroup, sub: Subgroup) -> bool:
    els = sub.elements
    for x in els:
        if group.pow(x, group.p) != group.identity:
            return False
        for y in els:
            if group.mul(x, y) != group.mul(y, x):
                return False
    return True


def select_n(group: PcGroup) -> Subgroup:
    """Deterministic choice of the normal subgroup N with
    Z < N < Z_2, N of rank 2 and exponent p, and C_G(N) maximal.

    If Z_2 is elementary abelian (rank 3) the candidates are the p+1
    subgroups generated by Z and one element of Z_2 outside Z; ties break
    to the candidate with the least sorted element-index tuple.  If Z_2
    has an element of order p^2 the choice is forced: N = Omega_1(Z_2).
    """
    p = group.p
    series = upper_central_series(group)
    z1, z2 = series[1], series[2]
    if z1.order != p:
        raise SelectionError(f"center has order {z1.order}, expected {p}")
    if z2.order != p**3:
        raise SelectionError(
            f"second center has order {z2.order}, expected {p**3}"
        )
    z2_elementary = all(
        group.pow(x, p) == group.identity for x in z2.elements
    )
    if z2_elementary:
        candidates: list[Subgroup] = []
        seen: set[frozenset] = set()
        for idx in z2.indices:
            x = group.vec(int(idx))
            if x in z1.elements:
                continue
            cand = closure(group, list(z1.basis) + [x])
            if frozenset(cand.elements) in seen:
                continue
            seen.add(frozenset(cand.elements))
            if cand.order == p * p and _is_elementary_abelian(group, cand):
                candidates.append(cand)
        if not candidates:
            raise SelectionError("no rank-2 exponent-p subgroup between Z and Z_2")
        n_sub = min(candidates, key=lambda s: tuple(int(i) for i in s.indices))
    else:
        n_sub = omega1(group, z2)
    # Verification of everything the construction relies on.
    if n_sub.order != p * p or not _is_elementary_abelian(group, n_sub):
        raise SelectionError("selected subgroup is not elementary abelian of rank 2")
    if not (z1 < n_sub and n_sub < z2):
        raise SelectionError("selected subgroup does not sit strictly between Z and Z_2")
    if not is_normal(group, n_sub):
        raise SelectionError("selected subgroup is not normal")
    cent = centralizer(group, n_sub.basis)
    if cent.order * p != group.element_count:
        raise SelectionError(
            "centralizer of the selected subgroup is not maximal "
            f"(index {group.element_count // cent.order})"
        )
    return n_sub


@dataclass
class SelectionContext:
    """Everything the derivation builders need, with invariants verified."""

    group: PcGroup
    n_sub: Subgroup
    centralizer_n: Subgroup
    a: Element
    b: Element
    w: Element
    comm_a_b: Element
    comm_w_b: Element
    phi: Subgroup
    series: list[Subgroup] = field(repr=False)

    @property
    def z1(self) -> Subgroup:
        return self.series[1]

    @property
    def z_deep(self) -> Subgroup:
        """Z_{m-4}, the fixed subgroup of the a-shift automorphism."""
        return self.series[self.group.ngens - 4]

    def summary(self) -> dict:
        return {
            "N_basis": [list(x) for x in self.n_sub.basis],
            "a": list(self.a),
            "b": list(self.b),
            "w": list(self.w),
            "comm_a_b": list(self.comm_a_b),
            "comm_w_b": list(self.comm_w_b),
        }


def select_generators(group: PcGroup, n_sub: Subgroup) -> SelectionContext:
    """Deterministic choice of the frame (a, b, w).

    b: index-least element outside C_G(N); a: index-least element of
    C_G(N) outside Phi; w: index-least element of N outside Z with
    [w, b] != 1.  All structural facts the construction uses are checked
    here; any failure raises SelectionError.
    """
    p = group.p
    m = group.ngens
    series = upper_central_series(group)
    z1 = series[1]
    phi = frattini(group)
    cent = centralizer(group, n_sub.basis)

    # Structural layout around the frame (checked, not assumed):
    # series steps |Z_i| = p^(i+1) for 2 <= i <= m-3, Z_{m-3} = Phi,
    # and G/Z_{m-4} has exponent p.
    if len(series) - 1 != m - 2:
        raise SelectionError(
            f"upper central series has length {len(series) - 1}, expected {m - 2}"
        )
    for i in range(2, m - 2):
        if series[i].order != p ** (i + 1):
            raise SelectionError(
                f"|Z_{i}| = {series[i].order}, expected p^{i + 1}"
            )
    if series[m - 3] != phi:
        raise SelectionError("Z_{m-3} is not the Frattini subgroup")
    if not quotient_exponent_is_p(group, series[m - 4]):
        raise SelectionError("G/Z_{m-4} does not have exponent p")
    if not phi <= cent:
        raise SelectionError("Frattini subgroup does not centralize N")

    b = None
    for i in range(group.element_count):
        x = group.vec(i)
        if x not in cent.elements:
            b = x
            break
    if b is None:
        raise SelectionError("no element outside C_G(N); N is central")
    a = None
    for i in cent.indices:
        x = group.vec(int(i))
        if x not in phi.elements:
            a = x
            break
    if a is None:
        raise SelectionError("C_G(N) has no element outside Phi")
    w = None
    for i in n_sub.indices:
        x = group.vec(int(i))
        if x in z1.elements:
            continue
        if group.comm(x, b) != group.identity:
            w = x
            break
    if w is None:
        raise SelectionError("no element of N outside Z moved by b")

    comm_a_b = group.comm(a, b)
    comm_w_b = group.comm(w, b)

    if closure(group, [a, b]).order != group.element_count:
        raise SelectionError("a and b do not generate the group")
    z_deep = series[m - 4]
    if comm_a_b not in phi.elements or comm_a_b in z_deep.elements:
        raise SelectionError("[a, b] does not lie in Phi minus Z_{m-4}")
    if comm_w_b == group.identity or comm_w_b not in z1.elements:
        raise SelectionError("[w, b] does not lie in Z minus 1")
    if group.order_of(w) != p or group.order_of(comm_w_b) != p:
        raise SelectionError("w or [w, b] does not have order p")
    if not n_sub <= series[m - 4]:
        raise SelectionError("N is not contained in Z_{m-4}")
    if not n_sub <= phi:
        raise SelectionError("N is not contained in Phi")

    return SelectionContext(
        group=group,
        n_sub=n_sub,
        centralizer_n=cent,
        a=a,
        b=b,
        w=w,
        comm_a_b=comm_a_b,
        comm_w_b=comm_w_b,
        phi=phi,
        series=series,
    )


def central_automorphisms(group: PcGroup) -> list[GroupMap]:
    """All automorphisms sending each generator g to g*z with z central,
    found by honest enumeration of |Z|^m candidate maps."""
    G = group
    z = center(G)
    z_elems = [G.vec(int(i)) for i in z.indices]
    out: list[GroupMap] = []
    for combo in itertools.product(z_elems, repeat=G.ngens):
        images = [G.mul(gen, combo[k]) for k, gen in enumerate(G.gens)]
        f = GroupMap(G, images)
        if verify_automorphism(f) is None:
            out.append(f)
    return out


def diagnostics(group: PcGroup) -> dict:
    """Secondary structural facts reported alongside the route:

    - purely_nonabelian_sufficient: Z(G) <= G' (so G has no nontrivial
      abelian direct factor and central-automorphism counting applies);
    - central_aut_count: number of central automorphisms, by enumeration;
    - ds_condition: C_G(Z(Phi(G))) != Phi(G), the hypothesis under which
      Deaconescu-Silberberg already provide a noninner automorphism of
      order p fixing Phi(G) elementwise.
    """
    derived = lower_central_series(group)[1]
    z1 = center(group)
    phi = frattini(group)
    z_phi = center_of(group, phi)
    cent_z_phi = centralizer(group, z_phi.basis)
    return {
        "purely_nonabelian_sufficient": z1 <= derived,
        "central_aut_count": len(central_automorphisms(group)),
        "ds_condition": cent_z_phi != phi,
    }
