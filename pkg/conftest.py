"""Shared fixtures: a small corpus of groups, extensions and abelian groups."""

import pytest
from hypothesis import settings

from gradalg.abelian import AbelianGroup, IntMatrixHom
from gradalg.groups import (
    Extension,
    abelian_cayley,
    cyclic_group,
    dihedral_extension,
    dihedral_group,
    quaternion_extension,
    quaternion_group,
    symmetric_group_3,
)

settings.register_profile("ci", max_examples=50, deadline=None)
settings.register_profile("dev", max_examples=15, deadline=None)
settings.load_profile("dev")


def invariant_factor_chains(max_order, smallest=2, prefix=()):
    """Every tuple m_1 | m_2 | ... with product at most max_order"""
    chains = [prefix]
    product = 1
    for m in prefix:
        product *= m
    start = prefix[-1] if prefix else smallest
    m = start
    while product * m <= max_order:
        if not prefix or m % prefix[-1] == 0:
            chains.extend(invariant_factor_chains(max_order, smallest, prefix + (m,)))
        m += 1
    return chains


def abelian_corpus(max_order):
    return [AbelianGroup(chain) for chain in invariant_factor_chains(max_order)]


def _d4_center_beta(u, v):
    # lift (a, b) -> s^a t^b; s^a t^b s^c t^d = s^(a +- c) t^(b+d) and s^2 spans the kernel
    a, b = u.coords
    c, _ = v.coords
    k = a + (c if b == 0 else -c)
    return ((k - (a + c) % 2) // 2) % 2


def d4_center_extension():
    """D4 as a central extension of Z2 x Z2 by the center {e, s2}"""
    H = AbelianGroup((2,))
    Q_type = AbelianGroup((2, 2))
    Q = abelian_cayley(Q_type)
    units = Q_type.elements()
    beta = tuple(tuple(H.element([_d4_center_beta(u, v)]) for v in units) for u in units)
    return Extension(H, Q, (IntMatrixHom.identity(H),) * 4, beta)


def z4_by_z2_extension(beta_value):
    """Z4 extended by Z2 acting by inversion: D4 for beta 0, Q8 for beta 2"""
    H = AbelianGroup((4,))
    Q = cyclic_group(2)
    inversion = IntMatrixHom(H, H, ((3,),))
    zero = H.zero()
    beta = ((zero, zero), (zero, H.element([beta_value])))
    return Extension(H, Q, (IntMatrixHom.identity(H), inversion), beta)


def z3_squared_extension(matrix):
    """(Z3 x Z3) x| Z2 with the given action of the generator"""
    H = AbelianGroup((3, 3))
    return Extension.split(H, cyclic_group(2), (IntMatrixHom.identity(H), IntMatrixHom(H, H, matrix)))


@pytest.fixture
def d4():
    return dihedral_group()


@pytest.fixture
def q8():
    return quaternion_group()


@pytest.fixture
def s3():
    return symmetric_group_3()


@pytest.fixture
def d4_ext():
    return dihedral_extension()


@pytest.fixture
def q8_ext():
    return quaternion_extension()


@pytest.fixture
def inversion_ext():
    return z3_squared_extension(((2, 0), (0, 2)))


@pytest.fixture
def swap_ext():
    return z3_squared_extension(((0, 1), (1, 0)))
