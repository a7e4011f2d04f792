import pytest
from hypothesis import given, strategies as st

from localk3.lattice import (CurveClass, HodgeIsometry, MukaiVector, FIBER,
                             POLARIZATION, SECTION, ZERO_CLASS, apply_isometry,
                             enumerate_effective, mukai_pairing)


def test_gram_matrix_values():
    assert SECTION.self_intersection() == -2
    assert FIBER.self_intersection() == 0
    assert SECTION.dot(FIBER) == 1
    assert POLARIZATION.self_intersection() == 2


def test_section_plus_fibers_square():
    for h in range(8):
        assert CurveClass(1, h).self_intersection() == 2 * h - 2


def test_effectivity():
    assert FIBER.is_effective() and SECTION.is_effective()
    assert not ZERO_CLASS.is_effective()
    assert not CurveClass(-1, 3).is_effective()
    assert not CurveClass(2, -1).is_effective()


def test_class_divisibility():
    assert CurveClass(2, 4).divisibility() == 2
    assert CurveClass(3, 5).divisibility() == 1
    with pytest.raises(ValueError):
        ZERO_CLASS.divisibility()


def test_class_parse_str_roundtrip():
    c = CurveClass(3, -7)
    assert CurveClass.parse(str(c)) == c
    with pytest.raises(ValueError):
        CurveClass.parse("1;2")


def test_enumerate_effective_small():
    assert enumerate_effective(1) == [CurveClass(0, 1), CurveClass(1, 0)]
    assert enumerate_effective(2) == [
        CurveClass(0, 1), CurveClass(1, 0),
        CurveClass(0, 2), CurveClass(1, 1), CurveClass(2, 0)]
    assert enumerate_effective(0) == []


def test_enumerate_effective_order_and_count():
    for y in range(1, 7):
        classes = enumerate_effective(y)
        assert len(classes) == y * (y + 3) // 2
        keys = [(c.weight, c.a) for c in classes]
        assert keys == sorted(keys)
        assert all(c.is_effective() for c in classes)


def test_mukai_pairing_values():
    e0 = MukaiVector(1, ZERO_CLASS, 0)
    e1 = MukaiVector(0, ZERO_CLASS, 1)
    assert mukai_pairing(e0, e1) == -1
    assert mukai_pairing(e0, e0) == 0
    v = MukaiVector(0, CurveClass(2, 4), -2)
    assert v.mukai_square() == 8
    assert MukaiVector(0, SECTION, 0).mukai_square() == -2


def test_mukai_square_even():
    for r in range(-3, 4):
        for a in range(-2, 3):
            for b in range(-2, 3):
                for n in range(-3, 4):
                    assert MukaiVector(r, CurveClass(a, b), n).mukai_square() % 2 == 0


def test_vector_divisibility():
    assert MukaiVector(2, CurveClass(4, 6), -2).divisibility() == 2
    assert MukaiVector(0, CurveClass(0, 3), 0).divisibility() == 3
    with pytest.raises(ValueError):
        MukaiVector(0, ZERO_CLASS, 0).divisibility()
    v = MukaiVector(2, CurveClass(4, 6), -2)
    assert v.divide(2) == MukaiVector(1, CurveClass(2, 3), -1)
    with pytest.raises(ValueError):
        v.divide(4)


def test_vector_parse_str_roundtrip():
    v = MukaiVector(-2, CurveClass(1, 5), 9)
    assert MukaiVector.parse(str(v)) == v
    assert MukaiVector.parse("0;2,4;-2") == MukaiVector(0, CurveClass(2, 4), -2)
    with pytest.raises(ValueError):
        MukaiVector.parse("1;2;3;4")


def test_generator_images():
    v = MukaiVector(2, CurveClass(1, 3), -5)
    assert apply_isometry(HodgeIsometry.swap(), v) == MukaiVector(-5, CurveClass(1, 3), 2)
    assert apply_isometry(HodgeIsometry.sign_h2(), v) == MukaiVector(2, CurveClass(-1, -3), -5)
    assert apply_isometry(HodgeIsometry.negate_rn(), v) == MukaiVector(-2, CurveClass(1, 3), 5)


def test_reflection_worked_example():
    x = MukaiVector(2, ZERO_CLASS, -2)
    w = MukaiVector(1, POLARIZATION, 2)
    g = HodgeIsometry.reflect(w)
    assert apply_isometry(g, x) == MukaiVector(0, CurveClass(-2, -4), -6)


def test_reflection_kernel_must_square_to_minus_two():
    with pytest.raises(ValueError):
        HodgeIsometry.reflect(MukaiVector(1, ZERO_CLASS, 0))


GENERATORS = [
    HodgeIsometry.swap(),
    HodgeIsometry.sign_h2(),
    HodgeIsometry.negate_rn(),
    HodgeIsometry.reflect(MukaiVector(1, ZERO_CLASS, 1)),
    HodgeIsometry.reflect(MukaiVector(1, POLARIZATION, 2)),
    HodgeIsometry.reflect(MukaiVector(0, SECTION, 0)),
]


def test_generators_are_involutions():
    v = MukaiVector(3, CurveClass(-2, 5), 7)
    for g in GENERATORS:
        assert apply_isometry(g, apply_isometry(g, v)) == v


def test_composition_applies_right_to_left():
    v = MukaiVector(1, CurveClass(0, 2), 4)
    g = HodgeIsometry.compose(HodgeIsometry.sign_h2(), HodgeIsometry.swap())
    # swap first, then sign_h2
    assert apply_isometry(g, v) == MukaiVector(4, CurveClass(0, -2), 1)


vectors = st.tuples(st.integers(-9, 9), st.integers(-9, 9),
                    st.integers(-9, 9), st.integers(-9, 9)).map(
    lambda t: MukaiVector(t[0], CurveClass(t[1], t[2]), t[3]))


@given(vectors, vectors, st.lists(st.sampled_from(GENERATORS), max_size=4))
def test_isometries_preserve_pairing(v, w, gens):
    g = HodgeIsometry.compose(*gens)
    assert mukai_pairing(apply_isometry(g, v), apply_isometry(g, w)) == mukai_pairing(v, w)


@given(vectors.filter(lambda v: not v.is_zero()),
       st.lists(st.sampled_from(GENERATORS), max_size=4))
def test_isometries_preserve_divisibility(v, gens):
    g = HodgeIsometry.compose(*gens)
    assert apply_isometry(g, v).divisibility() == v.divisibility()
