from itertools import product

import pytest

from pseudosym import scalars
from pseudosym.cartan import diagram_automorphisms, validate_gcm
from pseudosym.catalogue import named
from pseudosym.errors import TruncationOverflow
from pseudosym.lie import Elem, build, dimension_table, full
from pseudosym.weyl import positive_roots

from oracles import Peterson, positive_root_count

G2 = validate_gcm([[2, -1], [-3, 2]])


# --------------------------------------------------------------- dimensions


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4", "A4"])
def test_finite_dimensions(name):
    A = named(name)
    alg = full(A)
    table = dimension_table(alg)
    assert set(table) == set(positive_roots(A))
    assert all(v == 1 for v in table.values())
    fam, n = name[0], int(name[1:])
    assert alg.total_dim() == 2 * positive_root_count(fam, n) + n


def test_g2_dimension_is_14():
    assert full(G2).total_dim() == 14


def test_ahat1_imaginary_degree():
    alg = build(named("Ahat1"), 4)
    assert alg.dim((1, 1)) == 1
    assert alg.dim((2, 2)) == 1
    assert alg.dim((1, 2)) == 1
    assert alg.dim((1, 3)) == 0


@pytest.mark.parametrize("name,H", [("Ahat1", 6), ("Ahat2", 6), ("Chat2", 5), ("Gvhat2", 5),
                                    ("Ahat3", 4)])
def test_affine_against_peterson(name, H):
    A = named(name)
    alg = build(A, H)
    oracle = Peterson(A.entries).table(H)
    assert dimension_table(alg) == oracle


def test_hyperbolic_against_peterson():
    A = validate_gcm([[2, -3], [-3, 2]])
    alg = build(A, 6)
    assert dimension_table(alg) == Peterson(A.entries).table(6)


def test_negative_heights_mirror_positive():
    alg = build(named("Ahat2"), 4)
    for b in alg.degrees(+1):
        assert alg.dim_degree(b) == alg.dim_degree(tuple(-x for x in b))


# ----------------------------------------------------------------- brackets


def test_sl3_brackets():
    alg = full(named("A2"))
    assert alg.bracket(alg.e(0), alg.f(0)) == alg.h(0)
    assert alg.bracket(alg.h(0), alg.f(1)) == alg.f(1)
    assert alg.bracket(alg.h(0), alg.f(0)) == (-2) * alg.f(0)
    assert alg.bracket(alg.f(0), alg.bracket(alg.f(0), alg.f(1))).is_zero()
    assert alg.bracket(alg.e(0), alg.f(1)).is_zero()


def test_g2_serre():
    alg = full(G2)
    x = alg.f(0)
    for _ in range(4):
        x = alg.ad_f(1, x)
    assert x.is_zero()
    y = alg.f(0)
    for _ in range(3):
        y = alg.ad_f(1, y)
    assert not y.is_zero()


def test_antisymmetry_and_jacobi_sl3():
    alg = full(named("A2"))
    B = alg.basis()
    for x, y in product(B, B):
        assert alg.bracket(x, y) == -alg.bracket(y, x)
    for x, y, z in product(B, B, B):
        j = (alg.bracket(x, alg.bracket(y, z)) + alg.bracket(y, alg.bracket(z, x))
             + alg.bracket(z, alg.bracket(x, y)))
        assert j.is_zero()


def test_jacobi_affine_low_degrees():
    alg = build(named("Ahat1"), 6)
    low = [b for b in alg.basis() if abs(sum(next(iter(b.parts)))) <= 2]
    for x, y, z in product(low, low, low):
        j = (alg.bracket(x, alg.bracket(y, z)) + alg.bracket(y, alg.bracket(z, x))
             + alg.bracket(z, alg.bracket(x, y)))
        assert j.is_zero()


def test_omega_is_an_automorphism():
    alg = full(named("B2"))
    B = alg.basis()
    for x, y in product(B, B):
        assert alg.omega(alg.bracket(x, y)) == alg.bracket(alg.omega(x), alg.omega(y))
    for x in B:
        assert alg.omega(alg.omega(x)) == x


def test_words_reproduce_basis():
    alg = build(named("Ahat2"), 4)
    for b in alg.degrees(+1):
        for k, w in enumerate(alg.words[b]):
            assert alg.from_word(w) == alg.basis_element(tuple(-x for x in b), k)


# -------------------------------------------------------------------- Gram


@pytest.mark.parametrize("name,H", [("A3", 4), ("G2", 6), ("Ahat1", 6), ("Ahat2", 5), ("Chat2", 5)])
def test_gram_symmetric_full_rank(name, H):
    A = G2 if name == "G2" else named(name)
    alg = build(A, H)
    for b in alg.degrees(+1):
        G = alg.gram_matrix(b)
        d = len(G)
        assert all(G[p][q] == G[q][p] for p in range(d) for q in range(d))
        assert alg.gram_rank(b) == d


@pytest.mark.parametrize("name", ["Ahat2", "Ahat3", "D4"])
def test_dimensions_aut_invariant(name):
    A = named(name)
    alg = build(A, 4)
    table = dimension_table(alg)
    for psi in diagram_automorphisms(A):
        for b, m in table.items():
            img = [0] * A.n
            for i, c in enumerate(b):
                img[psi[i]] += c
            assert table.get(tuple(img), 0) == m


# -------------------------------------------------------------- truncation


def test_overflow_is_flagged():
    alg = build(named("Ahat1"), 2)
    x = alg.ad_f(0, alg.ad_f(1, alg.f(0)))
    assert x.flag
    with pytest.raises(TruncationOverflow):
        x.is_zero()


def test_finite_never_flags():
    alg = build(named("A2"), 50)
    assert alg.complete
    x = alg.ad_f(0, alg.ad_f(1, alg.f(0)))
    assert not x.flag and x.is_zero()


def test_height_must_be_positive():
    from pseudosym.lie import TruncatedAlgebra
    with pytest.raises(ValueError):
        TruncatedAlgebra(named("A2"), 0)


def test_gaussian_scalars():
    alg = full(named("A1"))
    x = alg.f(0).scale(scalars.I)
    assert x.scale(scalars.I) == -alg.f(0)
    assert Elem({}).is_zero()
