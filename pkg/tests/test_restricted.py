from fractions import Fraction as F
from functools import lru_cache

import numpy as np
import pytest
import sympy

from pseudosym.catalogue import named
from pseudosym.decoration import COMPATIBLE, GSAT, enumerate_decorations, sigma_matrix, tau_matrix
from pseudosym.errors import BeyondBruteForce, NotFiniteType, NotGeneralizedSatake
from pseudosym.notation import parse_decoration
from pseudosym.restricted import (INF, bar, gram_with, gsat_battery, matrix_order, restricted_coxeter_matrix,
                                  restricted_system, restricted_type, three_groups, tilde_coxeter_matrix,
                                  tilde_I, tilde_s)
from pseudosym.weyl import longest_element, positive_roots, roots

FINITE = ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "C3", "D4", "G2", "F4"]


@lru_cache(maxsize=None)
def decs(name, filt=COMPATIBLE):
    return tuple(enumerate_decorations(named(name), filt))


def nullspace(M):
    return sympy.Matrix(M.tolist()).nullspace()


def span_eq(U, V):
    if not U and not V:
        return True
    a = sympy.Matrix.hstack(*U) if U else sympy.zeros(0, 0)
    b = sympy.Matrix.hstack(*V) if V else sympy.zeros(0, 0)
    return len(U) == len(V) and sympy.Matrix.hstack(a, b).rank() == a.rank() == b.rank()


# -------------------------------------------------------------------- bar


def test_bar_g2():
    d = parse_decoration("G2[X=1]")
    assert bar(d, (0, 1)) == (F(1, 2), F(1))
    assert bar(d, (1, 0)) == (0, 0)


def test_bar_aiii():
    d = parse_decoration("A3[X=2; tau=1:3]")
    assert bar(d, (1, 0, 0)) == (F(1, 2), F(1, 2), F(1, 2))
    assert bar(d, (0, 0, 1)) == bar(d, (1, 0, 0))


def test_bar_is_idempotent_over_sweep():
    for name in FINITE + ["Ahat2", "Gvhat2"]:
        for d in decs(name):
            for i in range(d.n):
                e = [int(k == i) for k in range(d.n)]
                b = bar(d, e)
                assert bar(d, b) == b


# ------------------------------------------------------ restricted systems


def test_g2_restricted_roots():
    rs = restricted_system(parse_decoration("G2[X=1]"))
    assert rs.roots == frozenset({(1,), (2,), (3,), (-1,), (-2,), (-3,)})
    assert rs.gram == ((F(1, 2),),)
    assert rs.complete


def test_a2_plain():
    rs = restricted_system(parse_decoration("A2"))
    assert rs.gram == ((2, -1), (-1, 2))
    assert len(rs.roots) == 6


def test_affine_truncated():
    rs = restricted_system(parse_decoration("Ahat1"), 3)
    assert not rs.complete and rs.height == 3
    assert (1, 1) in rs.roots and (2, 1) in rs.roots
    assert (2, 2) not in rs.roots


def test_gvhat2_gram_and_labelling():
    d = parse_decoration("Gvhat2[X=1]")
    rs = restricted_system(d)
    assert d.cartan.epsilon == (1, 3, 1)
    assert rs.tilde_I == (0, 2)
    assert rs.gram == ((2, -1), (-1, F(1, 2)))
    # with the symmetrizer placed on the other end node the values move
    assert gram_with(d, (1, 1, 3)) == ((2, -1), (-3, F(3, 2)))
    assert gram_with(d, d.cartan.epsilon) == rs.gram


def test_patterns():
    rs = restricted_system(parse_decoration("A3[X=2; tau=1:3]"))
    assert rs.patterns == {0: (1, 2)}
    assert restricted_system(parse_decoration("Gvhat2[X=1]")).patterns[2] == (1, 2, 3)


# ------------------------------------------------------------------ types


@pytest.mark.parametrize("spec,name", [
    ("A2", "A2"),
    ("G2[X=1]", "BC1+"),
    ("Gvhat2[X=1]", "CpChat1+"),
    ("A3[tau=1:3]", "C2"),
    ("A3[X=2; tau=1:3]", "BC1"),
    ("A3[X=1,3]", "A1"),
    ("A1xA1[tau=1:2]", "A1"),
    ("A1[X=1]", "Z0"),
    ("Ahat1", "Ahat1"),
])
def test_restricted_type(spec, name):
    assert restricted_type(parse_decoration(spec)).name == name


def test_type_needs_gsat():
    with pytest.raises(NotGeneralizedSatake):
        restricted_type(parse_decoration("A2[X=1]"))


def test_pretty_names():
    assert restricted_type(parse_decoration("A1[X=1]")).pretty == "Z₀"
    assert "₁" in restricted_type(parse_decoration("G2[X=1]")).pretty


# ---------------------------------------------------------- tilde s_i


def test_tilde_s_a2_single_node_has_order_three():
    d = parse_decoration("A2[X=1]")
    assert tilde_I(d) == (1,)
    assert matrix_order(tilde_s(d, 1).matrix) == 3


def test_tilde_s_plain_is_simple_reflection():
    d = parse_decoration("A2")
    M = tilde_s(d, 0).matrix
    assert tuple(M[:, 0]) == (-1, 0) and tuple(M[:, 1]) == (1, 1)


def test_tilde_s_needs_finite_block():
    d = parse_decoration("Ahat1[X=0]")
    with pytest.raises(NotFiniteType):
        tilde_s(d, 1)


def test_tilde_s_negates_alpha_bar_for_gsat():
    for name in FINITE:
        for d in decs(name, GSAT):
            for i in tilde_I(d):
                M = tilde_s(d, i).matrix
                e = [int(k == i) for k in range(d.n)]
                b = np.array([x * 2 for x in bar(d, e)], dtype=np.int64)
                assert (M @ b == -b).all()


# ---------------------------------------------------------------- battery


def test_battery_a2_single_node_all_false():
    b = gsat_battery(parse_decoration("A2[X=1]"))
    assert b.values() == (False,) * 8


def test_battery_consistent_over_sweep():
    for name in FINITE + ["Ahat1", "Ahat2", "Chat2", "Gvhat2"]:
        for d in decs(name):
            b = gsat_battery(d)
            assert b.consistent(), (name, d)


# ---------------------------------------------------------------- Coxeter


def test_coxeter_a2():
    assert restricted_coxeter_matrix(parse_decoration("A2")) == [[1, 3], [3, 1]]


def test_coxeter_c2():
    assert restricted_coxeter_matrix(parse_decoration("A3[tau=1:3]")) == [[1, 4], [4, 1]]


def test_coxeter_affine_is_infinite():
    m = restricted_coxeter_matrix(parse_decoration("Gvhat2[X=1]"))
    assert m[0][1] == INF


def test_coxeter_agrees_with_matrices():
    for name in FINITE + ["Ahat2", "Chat2"]:
        for d in decs(name, GSAT):
            assert restricted_coxeter_matrix(d) == tilde_coxeter_matrix(d)


# ----------------------------------------------------------- three groups


def test_three_groups_a2_single_node():
    g = three_groups(parse_decoration("A2[X=1]"))
    assert g.orders == (1, 2, 3)


@pytest.mark.parametrize("spec,order", [("A2", 6), ("A3[X=2; tau=1:3]", 2), ("A3[tau=1:3]", 8),
                                        ("G2[X=1]", 2)])
def test_three_groups_agree(spec, order):
    g = three_groups(parse_decoration(spec))
    assert g.orders == (order,) * 3
    assert g.W_tilde_restricted == order and g.kernel_is_W_X


def test_three_groups_affine_guard():
    with pytest.raises(BeyondBruteForce):
        three_groups(parse_decoration("Ahat1"))


# ------------------------------------------------------- V^sigma geometry


def test_v_sigma_is_intersection():
    for name in FINITE + ["Ahat2", "Gvhat2"]:
        for d in decs(name):
            n = d.n
            I = np.eye(n, dtype=np.int64)
            S = sigma_matrix(d)
            T = tau_matrix(d)
            W = longest_element(d.cartan, sorted(d.X)).matrix if d.X else I
            lhs = nullspace(S - I)
            rhs = sympy.Matrix.vstack(sympy.Matrix((W - I).tolist()), sympy.Matrix((T - I).tolist())).nullspace()
            assert span_eq(lhs, rhs)


def test_minus_sigma_roots_are_phi_X():
    for name in FINITE:
        for d in decs(name):
            S = sigma_matrix(d)
            phi = roots(d.cartan)
            neg = {r for r in phi if tuple(int(x) for x in S @ np.array(r)) == tuple(-x for x in r)}
            phiX = set(positive_roots(d.cartan, sorted(d.X))) if d.X else set()
            phiX |= {tuple(-x for x in r) for r in phiX}
            assert neg == phiX


def test_inner_product_of_bars():
    # (lam_bar, mu) = (lam_bar, mu_bar) since sigma is an isometry fixing lam_bar
    for name in FINITE + ["Ahat2"]:
        A = named(name)
        for d in decs(name):
            for i in range(d.n):
                for j in range(d.n):
                    ei = [int(k == i) for k in range(d.n)]
                    ej = [int(k == j) for k in range(d.n)]
                    bi = bar(d, ei)
                    assert A.form(bi, ej) == A.form(bi, bar(d, ej))
