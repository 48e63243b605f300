import pytest

from gradalg.abelian import AbelianGroup, IntMatrixHom
from gradalg.errors import CocycleError, ValidationError
from gradalg.groups import (
    Extension,
    FiniteGroup,
    Subgroup,
    center,
    closure,
    commutator_subgroup,
    conjugation_action_on_H,
    cyclic_group,
    extension_splits,
    find_isomorphic_relabeling,
    named_group,
    normal_abelian_subgroups,
    order_profile,
    quotient_group,
    right_cosets,
    validate_cocycle_beta,
)

from conftest import d4_center_extension, z4_by_z2_extension


def by_name(G, name):
    return G.names.index(name)


def test_cayley_table_must_be_a_group():
    with pytest.raises(ValidationError):
        FiniteGroup(((0, 1), (1, 1)))
    # Latin square that is not associative
    loop = ((0, 1, 2, 3, 4), (1, 0, 3, 4, 2), (2, 4, 0, 1, 3), (3, 2, 4, 0, 1), (4, 3, 1, 2, 0))
    with pytest.raises(ValidationError):
        FiniteGroup(loop)


def test_quaternion_multiplication(q8):
    i, j, k = by_name(q8, "i"), by_name(q8, "j"), by_name(q8, "k")
    assert q8.mul(i, j) == k
    assert q8.mul(j, i) == by_name(q8, "-k")
    assert q8.mul(i, i) == by_name(q8, "-1")
    assert q8.mul(k, k) == by_name(q8, "-1")
    assert order_profile(q8) == {1: 1, 2: 1, 4: 6}
    assert center(q8).names() == ["1", "-1"]
    assert commutator_subgroup(q8).names() == ["1", "-1"]


def test_dihedral_relations(d4):
    s, t = by_name(d4, "s"), by_name(d4, "t")
    assert d4.element_order(s) == 4
    assert d4.element_order(t) == 2
    assert d4.element_order(by_name(d4, "st")) == 2
    # t s t^-1 = s^-1
    assert d4.conj(t, s) == by_name(d4, "s3")
    assert d4.power(s, 2) == by_name(d4, "s2")
    assert order_profile(d4) == {1: 1, 2: 5, 4: 2}
    assert center(d4).names() == ["e", "s2"]


def test_normal_abelian_subgroups(d4, q8, s3):
    assert [S.order for S in normal_abelian_subgroups(d4)] == [1, 2, 4, 4, 4]
    assert [S.order for S in normal_abelian_subgroups(q8)] == [1, 2, 4, 4, 4]
    assert [S.order for S in normal_abelian_subgroups(s3)] == [1, 3]


def test_subgroup_closure_and_cosets(d4, s3):
    rotations = closure(d4, [by_name(d4, "s")])
    assert rotations.order == 4
    assert rotations.is_normal()
    assert rotations.abelian_type.invariant_factors == (4,)
    reflection = Subgroup(s3, (0, by_name(s3, "(12)")))
    assert not reflection.is_normal()
    cosets = right_cosets(s3, reflection)
    assert len(cosets) == 3
    assert sorted(x for coset in cosets for x in coset) == list(range(6))


def test_subgroup_must_be_closed(d4):
    with pytest.raises(ValidationError):
        Subgroup(d4, (0, by_name(d4, "s")))
    with pytest.raises(ValidationError):
        Subgroup(d4, (by_name(d4, "t"),))


def test_extension_splitting(d4, q8):
    assert not extension_splits(d4, center(d4))
    assert extension_splits(d4, closure(d4, [by_name(d4, "s")]))
    for S in normal_abelian_subgroups(q8)[1:]:
        assert not extension_splits(q8, S)


def test_quotient_by_center(q8):
    V = quotient_group(q8, center(q8))
    assert V.order == 4
    assert V.is_abelian()
    assert order_profile(V) == {1: 1, 2: 3}
    assert find_isomorphic_relabeling(named_group("Z2 x Z2"), V)
    assert not find_isomorphic_relabeling(named_group("Z4"), V)


def test_builtin_extensions_are_valid(q8_ext, d4_ext):
    for ext in (q8_ext, d4_ext, d4_center_extension(), z4_by_z2_extension(0), z4_by_z2_extension(2)):
        assert validate_cocycle_beta(ext.H, ext.Q, ext.action, ext.beta)
        assert ext.G.order == 8
        assert ext.kernel.is_normal()


def test_extensions_recover_the_named_groups(d4, q8):
    assert order_profile(z4_by_z2_extension(0).G) == order_profile(d4)
    assert order_profile(z4_by_z2_extension(2).G) == order_profile(q8)
    assert order_profile(d4_center_extension().G) == order_profile(d4)
    assert not extension_splits(d4_center_extension().G, d4_center_extension().kernel)


def test_invalid_beta_is_rejected():
    H = AbelianGroup((2,))
    Q = cyclic_group(2)
    one = H.element([1])
    zero = H.zero()
    ext = Extension(H, Q, (IntMatrixHom.identity(H),) * 2, ((zero, one), (zero, zero)))
    assert not validate_cocycle_beta(ext.H, ext.Q, ext.action, ext.beta)
    with pytest.raises(CocycleError):
        ext.G


def test_extension_with_cyclic_cocycle_is_z4():
    H = AbelianGroup((2,))
    Q = cyclic_group(2)
    zero, one = H.zero(), H.element([1])
    ext = Extension(H, Q, (IntMatrixHom.identity(H),) * 2, ((zero, zero), (zero, one)))
    assert order_profile(ext.G) == {1: 1, 2: 1, 4: 2}


def test_conjugation_action_matches_the_given_action(d4_ext):
    action = conjugation_action_on_H(d4_ext)
    assert len(action) == 8
    # the lift of the generator of Q swaps t and s2 t
    assert action[4].matrix == ((1, 1), (0, 1))
    assert action[1].matrix == ((1, 0), (0, 1))


def test_named_groups():
    assert named_group("Z2 x Z4").order == 8
    assert named_group("Z2 x Z4").is_abelian()
    assert named_group("Z_6").order == 6
    assert not named_group("s3").is_abelian()
    with pytest.raises(ValidationError):
        named_group("A5")


def test_abelian_identification_round_trips(q8):
    H = closure(q8, [by_name(q8, "i")])
    ident = H.identification
    assert ident.group.invariant_factors == (4,)
    for x in H.elements:
        assert ident.to_element(ident.to_coords(x)) == x
    with pytest.raises(ValidationError):
        Subgroup(q8, tuple(range(8))).identification
