import pytest

from gradalg.abelian import AbelianGroup, is_square_type
from gradalg.cohomology import (
    Bicharacter,
    Cocycle2H,
    all_bicharacters,
    cocycle_from_bicharacter,
    is_nondegenerate,
    radical,
)
from gradalg.cyclotomic import CyclotomicNumber, zeta_power
from gradalg.errors import CocycleError, ValidationError
from gradalg.graded_algebra import (
    BSZPresentation,
    GradedAlgebra,
    bsz_algebra,
    center_basis,
    commutator_in_twisted,
    direct_sum,
    e_center_is_field,
    e_central_dimension,
    homogeneous_dims,
    homogeneous_inverse,
    is_central_simple,
    is_faithful,
    is_graded_simple,
    matrix_algebra,
    minimal_polynomial,
    radical_is_zero,
    twisted_group_algebra,
)
from gradalg.groups import FiniteGroup, Subgroup, abelian_cayley, cyclic_group

from conftest import abelian_corpus


def twisted(H, E):
    return twisted_group_algebra(H, cocycle_from_bicharacter(Bicharacter(H, E)))


def test_commutative_group_algebra_is_not_central():
    A = twisted_group_algebra(AbelianGroup((2,)), Cocycle2H.trivial(AbelianGroup((2,))))
    assert A.dim == 2
    assert len(center_basis(A)) == 2
    assert radical_is_zero(A)
    assert not is_central_simple(A)


def test_quaternion_type_algebra_is_central_simple():
    V = AbelianGroup((2, 2))
    A = twisted(V, ((0, 1), (1, 0)))
    assert len(center_basis(A)) == 1
    assert is_central_simple(A)
    assert commutator_in_twisted(A, 1, 2) == -1


@pytest.mark.parametrize("H", abelian_corpus(16), ids=str)
def test_center_of_twisted_group_algebra_is_spanned_by_the_radical(H):
    for phi in all_bicharacters(H):
        A = twisted_group_algebra(H, cocycle_from_bicharacter(phi))
        rad = radical(phi)
        support = {H.index(s) for s in rad.elements}
        basis = center_basis(A)
        assert len(basis) == rad.order
        for vector in basis:
            assert {i for i, c in enumerate(vector) if not c.is_zero()} <= support
        assert radical_is_zero(A)
        assert is_central_simple(A) == is_nondegenerate(phi)
        if is_nondegenerate(phi):
            assert is_square_type(H)


def test_commutators_recover_the_bicharacter():
    H = AbelianGroup((4, 4))
    phi = Bicharacter(H, ((0, 1), (3, 0)))
    A = twisted_group_algebra(H, cocycle_from_bicharacter(phi))
    e1, e2 = H.index(H.element([1, 0])), H.index(H.element([0, 1]))
    assert commutator_in_twisted(A, e1, e2) == zeta_power(4, 1)
    assert commutator_in_twisted(A, e2, e1) == zeta_power(4, 3)
    assert commutator_in_twisted(A, e1, e1) == 1


def test_homogeneous_inverse():
    A = twisted(AbelianGroup((2, 2)), ((0, 1), (1, 0)))
    for i in range(A.dim):
        j, c = homogeneous_inverse(A, i)
        product = A.multiply({i: CyclotomicNumber.one(A.n)}, {j: c})
        assert product == A.identity_vector()


def test_homogeneous_inverse_is_closed_form():
    H = AbelianGroup((4,))
    # carry cocycle: u_1^4 = -1
    carries = tuple(tuple(int(x.coords[0] + y.coords[0] >= 4) for y in H.elements()) for x in H.elements())
    alpha = Cocycle2H(H, 2, carries)
    A = twisted_group_algebra(H, alpha)
    for i in range(A.dim):
        j, c = homogeneous_inverse(A, i)
        assert j == A.G.inverse(i)
        assert c * zeta_power(alpha.n, alpha.table[i][j]) == 1
    with pytest.raises(ValidationError):
        homogeneous_inverse(matrix_algebra(2), 0)


def quadratic_extension(square):
    """Q(zeta_4)[b] / (b^2 - square), graded by the trivial group"""
    one = CyclotomicNumber.one(4)
    products = {(0, 0): {0: one}, (0, 1): {1: one}, (1, 0): {1: one}, (1, 1): {0: square}}
    return GradedAlgebra(FiniteGroup(((0,),)), 4, (0, 0), products, {0: one}, ("1", "b"))


def test_field_extension_is_graded_simple():
    # b^2 = zeta_4 makes the algebra Q(zeta_8)
    A = quadratic_extension(zeta_power(4, 1))
    assert e_central_dimension(A) == 2
    assert e_center_is_field(A)
    assert is_graded_simple(A)
    assert minimal_polynomial(A, {1: CyclotomicNumber.one(4)}) == [-zeta_power(4, 1), 0, 1]


def test_split_extension_is_not_graded_simple():
    # b^2 = 1 gives K x K with the idempotent (1 + b) / 2
    A = quadratic_extension(CyclotomicNumber.one(4))
    assert radical_is_zero(A)
    assert not e_center_is_field(A)
    assert not is_graded_simple(A)



def test_structure_constants_are_validated():
    G = cyclic_group(2)
    one = CyclotomicNumber.one(1)
    # degree-1 basis element squaring into itself leaves its component
    with pytest.raises(ValidationError):
        GradedAlgebra(G, 1, (0, 1), {(0, 0): {0: one}, (0, 1): {1: one}, (1, 0): {1: one}, (1, 1): {1: one}},
                      {0: one})
    with pytest.raises(ValidationError):
        GradedAlgebra(G, 1, (0, 1), {(0, 0): {0: one}, (0, 1): {1: one}, (1, 0): {1: one}}, {1: one})


def test_matrix_algebras():
    M = matrix_algebra(3)
    assert M.dim == 9
    assert is_central_simple(M)
    G = cyclic_group(3)
    graded = matrix_algebra(3, G, [0, 1, 2])
    assert homogeneous_dims(graded) == {0: 3, 1: 3, 2: 3}
    assert is_graded_simple(graded)


def test_direct_sum_is_not_graded_simple():
    A = twisted(AbelianGroup((2, 2)), ((0, 1), (1, 0)))
    B = direct_sum(A, A)
    assert B.dim == 8
    assert is_graded_simple(A)
    assert not is_graded_simple(B)
    assert e_central_dimension(B) == 2


def test_commutative_twisted_algebra_is_graded_simple_but_not_simple():
    H = AbelianGroup((3,))
    A = twisted_group_algebra(H, Cocycle2H.trivial(H))
    assert is_graded_simple(A)
    assert not is_central_simple(A)
    assert is_faithful(A)


def test_bsz_algebra_for_the_dihedral_case(d4):
    H = Subgroup(d4, (0, 1, 2, 3))
    phi = Bicharacter(H.abelian_type, ((0, 1), (1, 0)))
    P = BSZPresentation.from_bicharacter(d4, H, phi, (0, d4.names.index("s")))
    A = bsz_algebra(P)
    assert A.dim == 16
    assert set(homogeneous_dims(A).values()) == {2}
    assert is_graded_simple(A)


def test_bsz_presentation_rejects_bad_data(d4):
    H = Subgroup(d4, (0, 1))
    with pytest.raises(ValidationError):
        BSZPresentation(d4, H, 2, ((0, 0), (0, 0)), (1, 2))
    with pytest.raises(CocycleError):
        BSZPresentation(d4, H, 2, ((0, 1), (0, 0)), (0,))
    with pytest.raises(ValidationError):
        BSZPresentation(d4, H, 2, ((0, 0),), (0,))


def test_unfaithful_grading():
    G = abelian_cayley(AbelianGroup((2,)))
    M = matrix_algebra(2, G, [0, 0])
    assert homogeneous_dims(M) == {0: 4, 1: 0}
    assert not is_faithful(M)
