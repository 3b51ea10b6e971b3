"""Route decisions, subgroup/generator selection, central automorphisms."""

import pytest

from noninner.eligibility import (
    Route,
    central_automorphisms,
    decide_route,
    diagnostics,
    select_generators,
    select_n,
)
from noninner.errors import SelectionError
from noninner.maps import map_order, verify_automorphism
from noninner.structure import (
    center,
    centralizer,
    closure,
    frattini,
    is_normal,
    upper_central_series,
    whole_group,
)

# Frozen expected route per corpus group.  dihedral_8 also has coclass 1,
# so it doubles as a precedence check: the parity gate must fire first.
EXPECTED_ROUTES = {
    "dihedral_8": Route.NOT_ODD_P,
    "heisenberg_3": Route.NOT_COCLASS_2,
    "heisenberg_5": Route.NOT_COCLASS_2,
    "wreath_81": Route.NOT_COCLASS_2,
    "heis_x_c3": Route.ORDER_BELOW_P7,
    "g2187_zcyc": Route.Z2_OVER_Z_CYCLIC,
    "g2187_zphi": Route.Z2_NOT_IN_ZPHI_OR_D_NOT_2,
    "g2187_a": Route.ELIGIBLE,
    "g2187_b": Route.ELIGIBLE,
    "g2187_c": Route.ELIGIBLE,
    "g2187_d": Route.ELIGIBLE,
}

# Each rejection route cites specific prior literature.
CITATION_FRAGMENTS = {
    Route.NOT_ODD_P: "Liebeck",
    Route.NOT_COCLASS_2: "Abdollahi",
    Route.ORDER_BELOW_P7: "GAP",
    Route.Z2_OVER_Z_CYCLIC: "Shabani Attar",
    Route.Z2_NOT_IN_ZPHI_OR_D_NOT_2: "Deaconescu",
}


@pytest.mark.parametrize("gid", sorted(EXPECTED_ROUTES))
def test_route_decision_per_corpus_group(gid, corpus_dir):
    from noninner.pcgroup import PcGroup
    from noninner.pcpfile import parse_pcp_file

    group = PcGroup(parse_pcp_file(corpus_dir / f"{gid}.pcp").presentation)
    decision = decide_route(group)
    assert decision.route is EXPECTED_ROUTES[gid]
    text = decision.describe()
    assert f"route: {decision.route.value}" in text
    if decision.route is Route.ELIGIBLE:
        assert decision.citations == ()
    else:
        assert decision.citations
        assert CITATION_FRAGMENTS[decision.route] in " ".join(decision.citations)


def test_route_enum_values_are_stable():
    assert [r.value for r in Route] == [
        "NOT_ODD_P",
        "NOT_COCLASS_2",
        "ORDER_BELOW_P7",
        "Z2_OVER_Z_CYCLIC",
        "Z2_NOT_IN_ZPHI_OR_D_NOT_2",
        "ELIGIBLE",
    ]


# ---------------------------------------------------------------------------
# select_n


def test_select_n_postconditions_and_determinism(eligible_groups):
    for gid, G in eligible_groups.items():
        n_sub = select_n(G)
        p = G.p
        series = upper_central_series(G)
        z1, z2 = series[1], series[2]
        assert n_sub.order == p * p
        assert z1 < n_sub < z2
        assert is_normal(G, n_sub)
        assert all(G.pow(x, p) == G.identity for x in n_sub)
        cent = centralizer(G, n_sub.basis)
        assert cent.order * p == G.element_count
        assert select_n(G) == n_sub  # deterministic


def test_select_n_independent_of_route_gate(heis3):
    # Heisenberg of order 27 has |Z| = 3 and |Z_2| = 27, so the selection
    # works even though the group is on a rejection route.
    n_sub = select_n(heis3)
    assert n_sub.order == 9
    assert center(heis3) < n_sub


def test_select_n_rejects_wrong_layer_sizes(corpus_wreath, corpus_dihedral):
    with pytest.raises(SelectionError, match="second center"):
        select_n(corpus_wreath)
    with pytest.raises(SelectionError):
        select_n(corpus_dihedral)


# ---------------------------------------------------------------------------
# select_generators


def test_select_generators_frame(eligible_groups):
    for gid, G in eligible_groups.items():
        ctx = select_generators(G, select_n(G))
        p, m = G.p, G.ngens
        assert closure(G, [ctx.a, ctx.b]).order == G.element_count
        assert ctx.a in ctx.centralizer_n.elements
        assert ctx.b not in ctx.centralizer_n.elements
        assert ctx.a not in ctx.phi.elements
        assert ctx.w in ctx.n_sub.elements and ctx.w not in ctx.z1.elements
        assert ctx.comm_w_b == G.comm(ctx.w, ctx.b) != G.identity
        assert ctx.comm_w_b in ctx.z1.elements
        assert G.order_of(ctx.w) == p
        assert ctx.comm_a_b == G.comm(ctx.a, ctx.b)
        assert ctx.comm_a_b in ctx.phi.elements
        assert ctx.comm_a_b not in ctx.z_deep.elements
        assert ctx.z_deep == upper_central_series(G)[m - 4]
        summary = ctx.summary()
        assert set(summary) == {"N_basis", "a", "b", "w", "comm_a_b", "comm_w_b"}
        assert summary["a"] == list(ctx.a)


def test_select_generators_rejects_wrong_shape(heis3):
    with pytest.raises(SelectionError, match="upper central series"):
        select_generators(heis3, select_n(heis3))


# ---------------------------------------------------------------------------
# central automorphisms and diagnostics


def test_central_automorphisms_of_heisenberg(heis3):
    auts = central_automorphisms(heis3)
    # maps g1 -> g1 z^a, g2 -> g2 z^b lift to automorphisms; the image of
    # g3 = [g2, g1] is forced, so exactly 3^2 maps survive
    assert len(auts) == 9
    assert len(set(auts)) == 9
    identity_count = 0
    for f in auts:
        assert verify_automorphism(f) is None
        assert f.images[2] == heis3.generator(3)  # g3 image forced
        if f.is_identity():
            identity_count += 1
        else:
            assert map_order(f) == 3
    assert identity_count == 1


def test_diagnostics_heisenberg(heis3):
    d = diagnostics(heis3)
    assert d == {
        "purely_nonabelian_sufficient": True,
        "central_aut_count": 9,
        "ds_condition": True,
    }


def test_diagnostics_detects_abelian_direct_factor(corpus_heis_x_c3):
    d = diagnostics(corpus_heis_x_c3)
    # Heisenberg x C3 has an abelian direct factor: Z(G) is not inside G'
    assert d["purely_nonabelian_sufficient"] is False


def test_frattini_contains_n(eligible_groups):
    for gid, G in eligible_groups.items():
        assert select_n(G) <= frattini(G)
        assert whole_group(G).order == 3**7
