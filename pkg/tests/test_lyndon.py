from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import multilinear_cochain, random_qz_cochain, seeded
from superobs.cochain import (
    QZ_COEFF,
    Cochain,
    CochainError,
    LazyCochain,
    coboundary,
    cyclic_generator_3,
    is_cocycle,
    triviality_qz,
)
from superobs.grp import GroupError, cyclic_group, direct_product, group_from_invariants
from superobs.lyndon import (
    ProductSplit,
    alt_alt,
    alt_alt_certificate,
    alt_map,
    component_class,
    lyndon_normalize,
    normalization_pairs,
    normalization_violations,
)
from superobs.obstruct import o4_twisted_identity
from superobs.qzlin import QZ
from superobs.scenarios import scenario_inputs, target_from_json, twist_from_json


def drinfeld_o4():
    data = scenario_inputs("drinfeld")
    G = group_from_invariants([2, 2])
    ac = target_from_json(data["target"])
    mu = twist_from_json(G, ac.A, data["twist"])
    return G, o4_twisted_identity(ac, G, mu, strategy="dense")


def check_form(nf):
    """Exhaustive checks of the three normalized-form invariants."""
    G, n = nf.f.G, nf.degree
    assert normalization_violations(nf) == []
    assert nf.f_norm.materialize() - nf.f == coboundary(nf.trail.materialize())
    for gs in product(range(1, G.order), repeat=n):
        assert nf.f_norm.value(gs) == nf.reconstruct(gs)


# -- splits ----------------------------------------------------------------------------

def test_normalization_pairs():
    assert normalization_pairs(3) == [(0, 1), (0, 2), (1, 2)]
    assert normalization_pairs(1) == []


def test_coordinate_split_of_klein():
    G = group_from_invariants([2, 2])
    s = ProductSplit.coordinates(G, [0])
    assert s.A.order == s.B.order == 2
    for g in range(4):
        assert G.mul(s.a_part[g], s.b_part[g]) == g


def test_direct_split():
    s = ProductSplit.direct(cyclic_group(2), cyclic_group(3))
    assert s.G.order == 6


def test_split_rejects_overlap():
    G = group_from_invariants([4])
    with pytest.raises(GroupError):
        ProductSplit.from_generators(G, [G.generator(0)], [G.power(G.generator(0), 2)])


def test_split_json_round_trip():
    G = group_from_invariants([2, 2])
    s = ProductSplit.coordinates(G, [1])
    t = ProductSplit.from_json(G, s.to_json())
    assert t.a_embed == s.a_embed and t.b_embed == s.b_embed


# -- normalization ---------------------------------------------------------------------

def test_zero_cochain_stays_zero():
    G = group_from_invariants([2, 2])
    nf = lyndon_normalize(Cochain.zero(G, QZ_COEFF, 3), ProductSplit.coordinates(G, [0]))
    assert nf.f_norm.is_zero() and nf.trail.is_zero()


def test_pullback_from_a_is_unchanged():
    G = group_from_invariants([2, 2])
    E = G.elements
    g3 = cyclic_generator_3(2)
    f = Cochain.from_function(G, QZ_COEFF, 3, lambda x, y, z: g3(E[x][0], E[y][0], E[z][0]))
    nf = lyndon_normalize(f, ProductSplit.coordinates(G, [0]))
    assert nf.f_norm == f
    assert nf.trail.is_zero()


def test_drinfeld_o4_normal_form():
    G, o4 = drinfeld_o4()
    nf = lyndon_normalize(o4, ProductSplit.coordinates(G, [0]))
    check_form(nf)
    assert is_cocycle(nf.f_norm)


def test_random_cocycles_normalize_on_z2_z4():
    rnd = seeded(7)
    G = group_from_invariants([2, 4])
    split = ProductSplit.coordinates(G, [0])
    for n in (2, 3):
        f = coboundary(random_qz_cochain(G, n - 1, rnd)) + multilinear_cochain(G, n, [0] * n, 2)
        check_form(lyndon_normalize(f, split))


def test_lazy_matches_dense():
    G, o4 = drinfeld_o4()
    split = ProductSplit.coordinates(G, [0])
    dense = lyndon_normalize(o4, split, strategy="dense")
    lazy = lyndon_normalize(o4, split, strategy="lazy")
    for gs in product(range(4), repeat=4):
        assert dense.f_norm.value(gs) == lazy.f_norm.value(gs)
    for gs in product(range(4), repeat=3):
        assert dense.trail.value(gs) == lazy.trail.value(gs)


def test_normalize_rejects_non_cocycle():
    G = group_from_invariants([2, 2])
    f = Cochain(G, QZ_COEFF, 2, [QZ(1, 3)] + [QZ(0)] * 8)
    with pytest.raises(CochainError):
        lyndon_normalize(f, ProductSplit.coordinates(G, [0]))


# -- component classes ----------------------------------------------------------------

def test_drinfeld_p1_component_nonzero():
    G, o4 = drinfeld_o4()
    nf = lyndon_normalize(o4, ProductSplit.coordinates(G, [0]))
    cc = component_class(nf, 1)
    assert cc.inner_invariants == [2]
    assert not cc.is_trivial


def test_zero_component_class():
    G = group_from_invariants([2, 2])
    nf = lyndon_normalize(Cochain.zero(G, QZ_COEFF, 3), ProductSplit.coordinates(G, [0]))
    for k in range(4):
        assert component_class(nf, k).is_trivial


def test_pullback_generator_component():
    G = group_from_invariants([2, 2])
    E = G.elements
    g3 = cyclic_generator_3(2)
    f = Cochain.from_function(G, QZ_COEFF, 3, lambda x, y, z: g3(E[x][0], E[y][0], E[z][0]))
    nf = lyndon_normalize(f, ProductSplit.coordinates(G, [0]))
    cc = component_class(nf, 3)
    assert not cc.is_trivial
    assert cc.cochain == g3
    assert cc.verdict.status == triviality_qz(g3).status


def test_filtration_precondition_enforced():
    G = group_from_invariants([2, 2])
    E = G.elements
    g3 = cyclic_generator_3(2)
    # pulled back from B: the (0, 3) component is nonzero
    f = Cochain.from_function(G, QZ_COEFF, 3, lambda x, y, z: g3(E[x][1], E[y][1], E[z][1]))
    nf = lyndon_normalize(f, ProductSplit.coordinates(G, [0]))
    assert not component_class(nf, 0).is_trivial
    with pytest.raises(CochainError):
        component_class(nf, 1)


# -- alternation ---------------------------------------------------------------------

def test_alt_of_symmetric_cocycle_is_zero():
    G = group_from_invariants([2, 2])
    E = G.elements
    f = Cochain.from_function(G, QZ_COEFF, 2,
                              lambda x, y: QZ(E[x][0] * E[y][1] + E[x][1] * E[y][0], 2))
    assert alt_map(f).is_zero()


def test_alt_of_bilinear_form():
    G = group_from_invariants([3, 3])
    E = G.elements
    f = Cochain.from_function(G, QZ_COEFF, 2, lambda x, y: QZ(E[x][0] * E[y][1], 3))
    a = alt_map(f)
    for x, y in product(range(1, 9), repeat=2):
        assert a(x, y) == f(x, y) - f(y, x)


def test_alt_is_alternating_and_biadditive():
    G = group_from_invariants([2, 4])
    E = G.elements
    f = Cochain.from_function(G, QZ_COEFF, 2, lambda x, y: QZ(E[x][1] * E[y][0], 2))
    a = alt_map(f)
    for x in range(G.order):
        assert a(x, x) == QZ(0)
    for x, y, z in product(range(G.order), repeat=3):
        assert a(G.mul(x, y), z) == a(x, z) + a(y, z)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_alt_is_invariant_under_coboundaries(seed):
    rnd = seeded(seed)
    G = group_from_invariants([2, 4])
    E = G.elements
    f = Cochain.from_function(G, QZ_COEFF, 2, lambda x, y: QZ(E[x][0] * E[y][1], 2))
    h = random_qz_cochain(G, 1, rnd)
    assert alt_map(f + coboundary(h)) == alt_map(f)


def test_alt_rejects_non_cocycle():
    G = group_from_invariants([3])
    with pytest.raises(CochainError):
        alt_map(Cochain(G, QZ_COEFF, 2, [QZ(1, 3), 0, 0, 0]))


def test_double_alternation_of_bilinear_component():
    # psi = -(a1.b1)(a2.b2)/m on (Z/m)^2 x (Z/m)^2; by hand the double
    # alternation at (e1, e2)(e1, e2) is -2/m
    m = 3
    G = group_from_invariants([m] * 4)
    E = G.elements

    def dot(x, y):
        return E[x][0] * E[y][2] + E[x][1] * E[y][3]

    f = LazyCochain(G, QZ_COEFF, 4,
                    lambda g1, g2, g3, g4: QZ(-dot(g1, g3) * dot(g2, g4), m))
    split = ProductSplit.coordinates(G, [0, 1])
    nf = lyndon_normalize(f, split, strategy="lazy", check_samples=50)
    e1, e2 = split.A.generator(0), split.A.generator(1)
    b1, b2 = split.B.generator(0), split.B.generator(1)
    # read the (2, 2) component straight off the input
    psi = lambda a, b: f.value((split.a_embed[a[0]], split.a_embed[a[1]],
                                split.b_embed[b[0]], split.b_embed[b[1]]))
    by_hand = (psi((e1, e2), (b1, b2)) - psi((e1, e2), (b2, b1))
               - psi((e2, e1), (b1, b2)) + psi((e2, e1), (b2, b1)))
    assert by_hand == QZ(-2, m)
    assert alt_alt(nf, e1, e2, b1, b2) == by_hand
    cert = alt_alt_certificate(nf)
    assert cert["nontrivial"] and cert["nonzero"][(0, 1, 0, 1)] == QZ(-2, m)


def test_double_alternation_needs_degree_four():
    G = group_from_invariants([2, 2])
    nf = lyndon_normalize(Cochain.zero(G, QZ_COEFF, 3),
                          ProductSplit.coordinates(G, [0]))
    with pytest.raises(CochainError):
        alt_alt(nf, 1, 1, 1, 1)


def test_direct_product_split_normalizes():
    A, B = cyclic_group(2), cyclic_group(3)
    split = ProductSplit.direct(A, B)
    G = split.G
    assert G == direct_product(A, B)
    f = Cochain.from_function(G, QZ_COEFF, 2,
                              lambda x, y: QZ(split.a_of[x] * split.a_of[y], 2)
                              + QZ(split.b_of[x] * split.b_of[y], 3))
    check_form(lyndon_normalize(f, split))
