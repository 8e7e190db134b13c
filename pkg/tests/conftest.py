import random
from fractions import Fraction

import pytest

from divring.galg import AlgebraElement
from divring.ogroup import GroupDescriptor
from divring.scalars import QQ, Fp, QuadImaginary, ZETA3, parse_scaling_constant


@pytest.fixture
def kb():
    """Klein-bottle fixture: c = -1, y = t, x = s."""
    return GroupDescriptor(-1)


@pytest.fixture
def z3():
    """Cube-root fixture: c a primitive cube root of unity."""
    return GroupDescriptor(ZETA3)


@pytest.fixture
def gauss_group():
    """Unit-modulus non-root-of-unity scaling."""
    return GroupDescriptor(parse_scaling_constant("gauss(3/5,4/5)"))


@pytest.fixture
def abelian():
    return GroupDescriptor(1)


def random_element(rng: random.Random, group: GroupDescriptor, spread: int = 2):
    h = QuadImaginary(Fraction(rng.randint(-spread, spread), rng.choice([1, 2])),
                      Fraction(rng.randint(-1, 1)), group.c.d)
    return group.element(h, rng.randint(-spread, spread))


def random_algebra(rng: random.Random, group: GroupDescriptor, field=QQ,
                   max_terms: int = 3, nonzero: bool = False) -> AlgebraElement:
    terms = {}
    for _ in range(rng.randint(1 if nonzero else 0, max_terms)):
        if field is QQ:
            coeff = Fraction(rng.randint(-3, 3) or 1, rng.choice([1, 2, 3]))
        else:
            coeff = field.coerce(rng.randint(1, field.m - 1))
        terms[random_element(rng, group)] = coeff
    u = AlgebraElement(field, group, terms)
    if nonzero and u.is_zero:
        return random_algebra(rng, group, field, max_terms, nonzero)
    return u
