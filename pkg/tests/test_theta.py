from itertools import product

import pytest

from pseudosym import scalars
from pseudosym.catalogue import named
from pseudosym.decoration import EnrichedDecoration, decoration
from pseudosym.errors import InvalidCharacter
from pseudosym.lie import build, full
from pseudosym.notation import parse
from pseudosym.theta import ThetaMap, b_generator, b_word, theta, theta_matrix

HALF = scalars.parse_scalar("1/2")


def th_of(spec, H=6):
    e = parse(spec)
    return ThetaMap(e, build(e.cartan, H))


def test_empty_decoration_is_omega():
    th = th_of("A3")
    g = th.work
    for x in g.basis():
        assert th(x) == g.omega(x)


def test_sl3_swap_with_character():
    th = th_of("A2[tau=1:2; chi=1:2,2:1/2]")
    g = th.work
    assert th(g.f(0)) == g.e(1).scale(-HALF)
    assert th(g.f(1)) == g.e(0).scale(-2)
    assert th(g.h(0)) == -g.h(1)


def test_a2_single_node():
    th = th_of("A2[X=1]")
    g = th.work
    # n_X moves f_1 to e_1 and f_2 to the top of the alpha_1 string
    assert th(g.f(0)) == g.f(0)
    assert th(g.f(1)).degrees() == [(1, 1)]


def test_image_degree_is_minus_sigma():
    for spec in ["A3[X=2; tau=1:3]", "G2[X=1]", "B3[X=2,3]", "Ahat2[X=0]"]:
        th = th_of(spec, 5)
        g = th.work
        for lam in g.all_degrees():
            if abs(sum(lam)) > 2:
                continue
            for x in g.basis(lam):
                img = th(x)
                assert img.degrees() == [th.image_degree(lam)]


def test_theta_is_a_homomorphism():
    for spec in ["A2[X=1]", "A2[tau=1:2; chi=1:0|1,2:0|-1]", "B2[X=1]", "G2[X=1]"]:
        e = parse(spec)
        th = ThetaMap(e, full(e.cartan))
        g = th.work
        B = g.basis()
        for x, y in product(B, B):
            assert th(g.bracket(x, y)) == g.bracket(th(x), th(y))


def test_theta_squared_scales_each_degree():
    for spec in ["A2[X=1]", "G2[X=1]", "A3[X=2; tau=1:3]", "A2[tau=1:2; chi=1:2,2:1/2]"]:
        e = parse(spec)
        th = ThetaMap(e, full(e.cartan))
        g = th.work
        for lam in g.all_degrees():
            for x in g.basis(lam):
                assert th(th(x)) == x.scale(th.square_scalar(lam))


def test_involutive_flags():
    assert th_of("A2").is_involutive()
    assert th_of("A2[tau=1:2]").is_involutive()
    assert not th_of("A2[X=1]").is_involutive()
    assert not th_of("G2[X=1]").is_involutive()


def test_character_must_be_sigma_compatible():
    with pytest.raises(InvalidCharacter):
        th_of("A2[tau=1:2; chi=1:2,2:2]")


def test_cartan_mismatch():
    e = parse("A2")
    with pytest.raises(ValueError):
        ThetaMap(e, build(named("A3"), 3))


def test_b_generators():
    th = th_of("A2[X=1]")
    g = th.work
    assert b_generator(th, 0) == g.f(0)
    assert b_generator(th, 1) == g.f(1) + th(g.f(1))
    plain = th_of("A2")
    assert b_generator(plain, 0) == plain.work.f(0) - plain.work.e(0)
    assert b_word(plain, (0, 1)) == plain.work.bracket(b_generator(plain, 0), b_generator(plain, 1))


def test_theta_matrix_is_square_and_invertible():
    e = parse("B2[X=1]")
    th = theta(e, full(e.cartan))
    M, slots = theta_matrix(th)
    assert len(M) == len(slots) == 10
    from sympy.polys.domains import QQ_I
    from sympy.polys.matrices import DomainMatrix
    assert DomainMatrix(M, (10, 10), QQ_I).rank() == 10


def test_theta_matrix_needs_finite_type():
    with pytest.raises(ValueError):
        theta_matrix(th_of("Ahat1", 3))


def test_enriched_rejects_wrong_length():
    with pytest.raises((InvalidCharacter, ValueError)):
        EnrichedDecoration(decoration(named("A2")), (scalars.ONE,))
