import pytest

from gradalg.abelian import AbelianGroup, IntMatrixHom
from gradalg.cohomology import (
    Bicharacter,
    Cocycle2H,
    all_bicharacters,
    cocycle_from_bicharacter,
    commutator_form,
    enumerate_invariant_bicharacters,
    invariant_bicharacters,
    is_coboundary,
    is_invariant,
    is_nondegenerate,
    q_invariant,
    radical,
    schur_multiplier,
    solve_mod,
)
from gradalg.errors import CocycleError, ValidationError

from conftest import abelian_corpus


@pytest.mark.parametrize("factors, multiplier", [
    ((), ()),
    ((4,), ()),
    ((2, 2), (2,)),
    ((2, 4), (2,)),
    ((3, 3), (3,)),
    ((2, 2, 2), (2, 2, 2)),
    ((2, 4, 8), (2, 2, 4)),
])
def test_schur_multiplier(factors, multiplier):
    assert schur_multiplier(AbelianGroup(factors)).invariant_factors == multiplier


@pytest.mark.parametrize("H", abelian_corpus(64), ids=str)
def test_multiplier_exponent_divides_group_exponent(H):
    assert H.exponent % schur_multiplier(H).exponent == 0


@pytest.mark.parametrize("H", abelian_corpus(16), ids=str)
def test_every_bicharacter_is_the_commutator_form_of_its_section(H):
    for phi in all_bicharacters(H):
        alpha = cocycle_from_bicharacter(phi)
        assert commutator_form(alpha) == phi
        # rescaling the roots changes nothing
        assert commutator_form(alpha.rescale(2 * alpha.n)) == phi


@pytest.mark.parametrize("H", abelian_corpus(16), ids=str)
def test_number_of_bicharacters_is_the_multiplier_order(H):
    assert len(all_bicharacters(H)) == schur_multiplier(H).order


def test_bicharacter_must_be_alternating():
    V = AbelianGroup((2, 2))
    with pytest.raises(ValidationError):
        Bicharacter(V, ((1, 0), (0, 0)))
    Z3 = AbelianGroup((3, 3))
    with pytest.raises(ValidationError):
        Bicharacter(Z3, ((0, 1), (1, 0)))
    H = AbelianGroup((2, 4))
    # phi(e1, e2) must be a square root of unity on Z2 x Z4
    with pytest.raises(ValidationError):
        Bicharacter(H, ((0, 1), (3, 0)))
    assert Bicharacter(H, ((0, 2), (2, 0))).E == ((0, 2), (2, 0))


def test_cocycle_table_is_checked():
    H = AbelianGroup((2,))
    with pytest.raises(CocycleError):
        Cocycle2H(H, 2, ((1, 0), (0, 0)))
    with pytest.raises(ValidationError):
        Cocycle2H(H, 2, ((0, 0),))


def test_coboundaries():
    H = AbelianGroup((4,))
    assert is_coboundary(Cocycle2H.trivial(H, 4))[0]
    # alpha = d(gamma) for gamma(x) = x^2 mod 4
    gamma = [(x * x) % 4 for x in range(4)]
    table = tuple(tuple((gamma[x] + gamma[y] - gamma[(x + y) % 4]) % 4 for y in range(4)) for x in range(4))
    alpha = Cocycle2H(H, 4, table)
    found, witness = is_coboundary(alpha)
    assert found
    for x in range(4):
        for y in range(4):
            assert (witness[x] + witness[y] - witness[(x + y) % 4] - table[x][y]) % 4 == 0


def test_nontrivial_class_is_not_a_coboundary():
    V = AbelianGroup((2, 2))
    phi = Bicharacter(V, ((0, 1), (1, 0)))
    found, witness = is_coboundary(cocycle_from_bicharacter(phi))
    assert not found
    assert witness is None


def test_symmetric_cocycle_on_a_cyclic_group_is_a_coboundary_over_larger_roots():
    # the carry cocycle of Z2 inside Z4 is a coboundary once gamma may take 4th roots
    H = AbelianGroup((2,))
    carry = Cocycle2H(H, 4, ((0, 0), (0, 2)))
    assert is_coboundary(carry)[0]


def test_radicals():
    V = AbelianGroup((2, 2))
    assert radical(Bicharacter(V, ((0, 1), (1, 0)))).order == 1
    assert radical(Bicharacter.trivial(V)).order == 4
    H = AbelianGroup((2, 4))
    rad = radical(Bicharacter(H, ((0, 2), (2, 0))))
    assert rad.order == 2
    assert H.element([0, 2]) in rad
    assert rad.group.invariant_factors == (2,)
    assert radical(Bicharacter.trivial(AbelianGroup(()))).order == 1


@pytest.mark.parametrize("H", abelian_corpus(16), ids=str)
def test_radical_index_is_a_square(H):
    for phi in all_bicharacters(H):
        order = radical(phi).order
        index = H.order // order
        assert round(index ** 0.5) ** 2 == index
        assert is_nondegenerate(phi) == (order == 1)


def test_invariance_under_the_dihedral_action(d4_ext):
    phis = enumerate_invariant_bicharacters(d4_ext)
    assert len(phis) == 2
    assert all(q_invariant(phi, d4_ext) for phi in phis)


def test_determinant_decides_invariance_on_rank_two(swap_ext, inversion_ext):
    H = AbelianGroup((3, 3))
    phi = Bicharacter(H, ((0, 1), (2, 0)))
    assert not q_invariant(phi, swap_ext)
    assert q_invariant(phi, inversion_ext)
    assert [p.E for p in enumerate_invariant_bicharacters(swap_ext)] == [((0, 0), (0, 0))]
    assert len(enumerate_invariant_bicharacters(inversion_ext)) == 3


def test_q_invariant_rejects_mismatched_kernel(q8_ext):
    with pytest.raises(ValidationError):
        q_invariant(Bicharacter.trivial(AbelianGroup((2, 2))), q8_ext)


def test_parallel_enumeration_agrees():
    H = AbelianGroup((2, 2, 2))
    shift = IntMatrixHom(H, H, ((0, 0, 1), (1, 0, 0), (0, 1, 0)))
    serial = invariant_bicharacters(H, [shift], workers=1)
    parallel = invariant_bicharacters(H, [shift], workers=4)
    assert serial == parallel
    assert all(is_invariant(phi, [shift]) for phi in serial)


def test_solve_mod():
    assert solve_mod([[2]], [1], 4) is None
    assert solve_mod([[3]], [1], 4) == [3]
    x = solve_mod([[1, 1], [1, 3]], [2, 0], 4)
    assert x is not None
    assert (x[0] + x[1]) % 4 == 2
    assert (x[0] + 3 * x[1]) % 4 == 0
