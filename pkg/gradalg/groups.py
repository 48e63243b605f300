"""
Finite groups as Cayley tables, extensions 1 -> H -> G -> Q -> 1 with
abelian kernel, and subgroup computations.

An extension element (h, q) has index q_index * |H| + h_index, so the
identity (0, e) sits at index 0 and H occupies indices 0 .. |H|-1.
"""

import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

from .abelian import (
    AbelianElement,
    AbelianGroup,
    IntMatrixHom,
    _smith,
    diagonal,
    is_automorphism,
)
from .errors import CocycleError, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiniteGroup:
    """Group given by its Cayley table; index 0 is the identity"""

    cayley: Tuple[Tuple[int, ...], ...]
    names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        table = tuple(tuple(int(x) for x in row) for row in self.cayley)
        object.__setattr__(self, 'cayley', table)
        if self.names is not None:
            object.__setattr__(self, 'names', tuple(str(n) for n in self.names))
        self._validate()

    def _validate(self):
        n = len(self.cayley)
        if n == 0:
            raise ValidationError("a group needs at least one element")
        full = set(range(n))
        for i, row in enumerate(self.cayley):
            if len(row) != n or set(row) != full:
                raise ValidationError(f"row {i} of the Cayley table is not a permutation", witness=i)
        for j in range(n):
            if {self.cayley[i][j] for i in range(n)} != full:
                raise ValidationError(f"column {j} of the Cayley table is not a permutation", witness=j)
        if self.cayley[0] != tuple(range(n)) or any(self.cayley[i][0] != i for i in range(n)):
            raise ValidationError("element 0 must be the identity")
        for a in range(n):
            row_a = self.cayley[a]
            for b in range(n):
                ab = row_a[b]
                row_ab = self.cayley[ab]
                row_b = self.cayley[b]
                for c in range(n):
                    if row_ab[c] != row_a[row_b[c]]:
                        raise ValidationError("Cayley table is not associative", witness=(a, b, c))
        if self.names is not None and len(self.names) != n:
            raise ValidationError("names must label every element")

    @property
    def order(self) -> int:
        return len(self.cayley)

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    @cached_property
    def _inverses(self) -> Tuple[int, ...]:
        return tuple(row.index(0) for row in self.cayley)

    def inverse(self, a: int) -> int:
        return self._inverses[a]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.mul(self.mul(g, x), self.inverse(g))

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse(a), -k
        result = 0
        for _ in range(k):
            result = self.mul(result, a)
        return result

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    def name(self, a: int) -> str:
        return self.names[a] if self.names else str(a)

    def is_abelian(self) -> bool:
        return all(self.cayley[a][b] == self.cayley[b][a] for a in range(self.order) for b in range(a))


def order_profile(G: FiniteGroup) -> Dict[int, int]:
    """Number of elements of each order"""
    return dict(sorted(Counter(G.element_order(a) for a in range(G.order)).items()))


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: Tuple[int, ...]

    def __post_init__(self):
        elements = tuple(sorted(set(int(x) for x in self.elements)))
        object.__setattr__(self, 'elements', elements)
        members = set(elements)
        if 0 not in members:
            raise ValidationError("subgroup must contain the identity")
        for a in elements:
            if self.parent.inverse(a) not in members:
                raise ValidationError(f"subgroup is not closed under inverses at {a}", witness=a)
            for b in elements:
                if self.parent.mul(a, b) not in members:
                    raise ValidationError(f"subgroup is not closed under products at ({a},{b})", witness=(a, b))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self._members

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.elements)

    def index(self) -> int:
        return self.parent.order // self.order

    def is_normal(self) -> bool:
        G = self.parent
        return all(G.conj(g, x) in self._members for g in range(G.order) for x in self.elements)

    def is_abelian(self) -> bool:
        G = self.parent
        return all(G.mul(a, b) == G.mul(b, a) for a in self.elements for b in self.elements)

    def is_central(self) -> bool:
        G = self.parent
        return all(G.mul(z, g) == G.mul(g, z) for z in self.elements for g in range(G.order))

    def is_subset_of(self, other: 'Subgroup') -> bool:
        return self._members <= other._members

    @cached_property
    def identification(self) -> 'AbelianIdentification':
        return abelian_identification(self.parent, self.elements)

    @property
    def abelian_type(self) -> AbelianGroup:
        return self.identification.group

    def names(self) -> List[str]:
        return [self.parent.name(x) for x in self.elements]


def closure(G: FiniteGroup, generators: Sequence[int]) -> Subgroup:
    """Subgroup generated by the given elements"""
    members = {0}
    frontier = [0]
    gens = [int(g) for g in generators]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = G.mul(x, g)
            if y not in members:
                members.add(y)
                frontier.append(y)
    return Subgroup(G, tuple(members))


def center(G: FiniteGroup) -> Subgroup:
    """Z(G) = {z : zg = gz for all g}"""
    return Subgroup(G, tuple(
        z for z in range(G.order) if all(G.mul(z, g) == G.mul(g, z) for g in range(G.order))
    ))


def commutator_subgroup(G: FiniteGroup) -> Subgroup:
    commutators = {
        G.mul(G.mul(a, b), G.inverse(G.mul(b, a))) for a in range(G.order) for b in range(G.order)
    }
    return closure(G, sorted(commutators))


def all_subgroups(G: FiniteGroup) -> List[Subgroup]:
    """Every subgroup, sorted by order then element set"""
    cyclic = {}
    for g in range(G.order):
        S = closure(G, [g])
        cyclic[S.elements] = S
    found = dict(cyclic)
    frontier = list(cyclic.values())
    while frontier:
        next_frontier = []
        for S in frontier:
            for C in cyclic.values():
                if C.is_subset_of(S):
                    continue
                joined = closure(G, S.elements + C.elements)
                if joined.elements not in found:
                    found[joined.elements] = joined
                    next_frontier.append(joined)
        frontier = next_frontier
    return sorted(found.values(), key=lambda S: (S.order, S.elements))


def normal_abelian_subgroups(G: FiniteGroup) -> List[Subgroup]:
    """All subgroups that are normal and abelian"""
    result = [S for S in all_subgroups(G) if S.is_normal() and S.is_abelian()]
    logger.debug(f"Found {len(result)} normal abelian subgroups in a group of order {G.order}")
    return result


def right_cosets(G: FiniteGroup, S: Subgroup) -> List[Tuple[int, ...]]:
    """Right cosets S*g, each sorted, listed by smallest member"""
    seen = set()
    cosets = []
    for g in range(G.order):
        if g in seen:
            continue
        coset = tuple(sorted(G.mul(s, g) for s in S.elements))
        seen.update(coset)
        cosets.append(coset)
    return cosets


def coset_index_map(G: FiniteGroup, S: Subgroup) -> Dict[int, int]:
    """Element -> position of its right coset in right_cosets(G, S)"""
    mapping = {}
    for pos, coset in enumerate(right_cosets(G, S)):
        for x in coset:
            mapping[x] = pos
    return mapping


def quotient_group(G: FiniteGroup, N: Subgroup) -> FiniteGroup:
    """Cayley table of G/N on cosets ordered by smallest representative"""
    if not N.is_normal():
        raise ValidationError("quotient needs a normal subgroup")
    cosets = right_cosets(G, N)
    position = coset_index_map(G, N)
    table = tuple(
        tuple(position[G.mul(a[0], b[0])] for b in cosets) for a in cosets
    )
    return FiniteGroup(table)


def extension_splits(G: FiniteGroup, N: Subgroup) -> bool:
    """True iff N has a complement in G"""
    index = N.index()
    return any(
        C.order == index and set(C.elements) & set(N.elements) == {0}
        for C in all_subgroups(G)
    )


@dataclass(frozen=True)
class AbelianIdentification:
    """Explicit isomorphism between an abelian subgroup of G and its invariant-factor group"""

    group: AbelianGroup
    basis: Tuple[int, ...]
    coords: Dict[int, AbelianElement] = field(compare=False)
    elements: Dict[AbelianElement, int] = field(compare=False)

    def to_coords(self, x: int) -> AbelianElement:
        return self.coords[x]

    def to_element(self, c: AbelianElement) -> int:
        return self.elements[c]


def abelian_identification(G: FiniteGroup, elements: Sequence[int]) -> AbelianIdentification:
    members = set(elements)
    if any(G.mul(a, b) != G.mul(b, a) for a in members for b in members):
        raise ValidationError("subgroup is not abelian")
    gens: List[int] = []
    span = {0}
    for x in sorted(members, key=lambda a: (-G.element_order(a), a)):
        if x not in span:
            gens.append(x)
            span = set(closure(G, gens).elements)
    r = len(gens)
    if r == 0:
        trivial = AbelianGroup(())
        return AbelianIdentification(trivial, (), {0: trivial.zero()}, {trivial.zero(): 0})

    # spanning tree over exponent vectors; non-tree edges give the relation lattice
    vectors = {0: (0,) * r}
    frontier = [0]
    relations = [[G.element_order(g) if i == j else 0 for i in range(r)] for j, g in enumerate(gens)]
    while frontier:
        x = frontier.pop(0)
        for j, g in enumerate(gens):
            y = G.mul(x, g)
            v = tuple(c + (1 if i == j else 0) for i, c in enumerate(vectors[x]))
            if y in vectors:
                diff = [a - b for a, b in zip(v, vectors[y])]
                if any(diff):
                    relations.append(diff)
            else:
                vectors[y] = v
                frontier.append(y)

    D, _, V, Vinv = _smith(relations)
    factors = diagonal(D)
    keep = [i for i, d in enumerate(factors) if d != 1]
    group = AbelianGroup(tuple(factors[i] for i in keep))

    basis = []
    for i in keep:
        x = 0
        for j, g in enumerate(gens):
            x = G.mul(x, G.power(g, Vinv[i][j]))
        basis.append(x)

    coords = {}
    for x, v in vectors.items():
        y = [sum(v[j] * V[j][i] for j in range(r)) for i in range(r)]
        coords[x] = group.reduce([y[i] for i in keep])
    inverse = {c: x for x, c in coords.items()}
    return AbelianIdentification(group, tuple(basis), coords, inverse)


def conjugation_matrices(G: FiniteGroup, N: Subgroup) -> List[IntMatrixHom]:
    """For each g in G, the automorphism h -> g h g^-1 of the abelian normal subgroup N"""
    ident = N.identification
    A = ident.group
    result = []
    for g in range(G.order):
        columns = [ident.to_coords(G.conj(g, b)).coords for b in ident.basis]
        matrix = tuple(tuple(columns[j][i] for j in range(A.rank)) for i in range(A.rank))
        result.append(IntMatrixHom(A, A, matrix))
    return result


# Extensions


@dataclass(frozen=True)
class Extension:
    """Extension 1 -> H -> G -> Q -> 1 from an action Q -> Aut(H) and a 2-cocycle beta"""

    H: AbelianGroup
    Q: FiniteGroup
    action: Tuple[IntMatrixHom, ...]
    beta: Tuple[Tuple[AbelianElement, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, 'action', tuple(self.action))
        object.__setattr__(self, 'beta', tuple(tuple(row) for row in self.beta))
        if len(self.action) != self.Q.order:
            raise ValidationError(f"action lists {len(self.action)} matrices for a group of order {self.Q.order}")
        if len(self.beta) != self.Q.order or any(len(row) != self.Q.order for row in self.beta):
            raise ValidationError("beta must be a |Q| x |Q| table")

    @classmethod
    def split(cls, H: AbelianGroup, Q: FiniteGroup, action: Optional[Sequence[IntMatrixHom]] = None) -> 'Extension':
        if action is None:
            action = [IntMatrixHom.identity(H)] * Q.order
        zero = H.zero()
        return cls(H, Q, tuple(action), tuple((zero,) * Q.order for _ in range(Q.order)))

    def index(self, h: AbelianElement, q: int) -> int:
        return q * self.H.order + self.H.index(h)

    def pair(self, g: int) -> Tuple[AbelianElement, int]:
        q, h = divmod(g, self.H.order)
        return self.H.from_index(h), q

    def project(self, g: int) -> int:
        return g // self.H.order

    def multiply_pairs(self, x: Tuple[AbelianElement, int], y: Tuple[AbelianElement, int]) -> Tuple[AbelianElement, int]:
        (h1, q1), (h2, q2) = x, y
        H = self.H
        h = H.add(H.add(h1, self.action[q1].apply(h2)), self.beta[q1][q2])
        return h, self.Q.mul(q1, q2)

    @cached_property
    def G(self) -> FiniteGroup:
        return build_extension_group(self)

    @cached_property
    def kernel(self) -> Subgroup:
        return Subgroup(self.G, tuple(range(self.H.order)))


def beta_violation(H: AbelianGroup, Q: FiniteGroup, action: Sequence[IntMatrixHom],
                   beta: Sequence[Sequence[AbelianElement]]) -> Optional[Tuple[str, Tuple[int, ...]]]:
    """First failing condition and its witness, or None when the data defines an extension"""
    n = Q.order
    for q, f in enumerate(action):
        if f.source != H or f.target != H:
            return 'action-domain', (q,)
        if not is_automorphism(f):
            return 'action-automorphism', (q,)
    if action[0] != IntMatrixHom.identity(H):
        return 'action-identity', (0,)
    for q1 in range(n):
        for q2 in range(n):
            if action[q1].compose(action[q2]) != action[Q.mul(q1, q2)]:
                return 'action-homomorphism', (q1, q2)
    zero = H.zero()
    for q in range(n):
        if beta[0][q] != zero or beta[q][0] != zero:
            return 'normalization', (0, q)
    for q1 in range(n):
        for q2 in range(n):
            q12 = Q.mul(q1, q2)
            for q3 in range(n):
                lhs = H.add(action[q1].apply(beta[q2][q3]), beta[q1][Q.mul(q2, q3)])
                rhs = H.add(beta[q12][q3], beta[q1][q2])
                if lhs != rhs:
                    return 'cocycle', (q1, q2, q3)
    return None


def validate_cocycle_beta(H: AbelianGroup, Q: FiniteGroup, action: Sequence[IntMatrixHom],
                          beta: Sequence[Sequence[AbelianElement]]) -> bool:
    """True iff normalization and the cocycle identity hold for every triple"""
    violation = beta_violation(H, Q, action, beta)
    if violation is not None:
        logger.warning(f"Extension data rejected: {violation[0]} fails at {violation[1]}")
        return False
    return True


def build_extension_group(ext: Extension) -> FiniteGroup:
    """Cayley table of G on pairs (h, q), index q*|H| + h"""
    violation = beta_violation(ext.H, ext.Q, ext.action, ext.beta)
    if violation is not None:
        raise CocycleError(f"extension data invalid: {violation[0]} fails", witness=violation[1])
    size = ext.H.order * ext.Q.order
    pairs = [ext.pair(g) for g in range(size)]
    table = tuple(
        tuple(ext.index(*ext.multiply_pairs(x, y)) for y in pairs) for x in pairs
    )
    names = None
    if ext.Q.names is not None:
        names = tuple(f"{h}{ext.Q.name(q)}" for h, q in pairs)
    logger.debug(f"Built extension group of order {size}")
    return FiniteGroup(table, names)


def conjugation_action_on_H(ext: Extension) -> List[IntMatrixHom]:
    """For each g in G, the automorphism h -> g h g^-1 in H-coordinates"""
    G = ext.G
    H = ext.H
    result = []
    for g in range(G.order):
        columns = []
        for e in H.basis():
            image, q = ext.pair(G.conj(g, ext.index(e, 0)))
            assert q == 0, "H is normal in G"
            columns.append(image.coords)
        matrix = tuple(tuple(columns[j][i] for j in range(H.rank)) for i in range(H.rank))
        result.append(IntMatrixHom(H, H, matrix))
    return result


# Built-in groups


def abelian_cayley(A: AbelianGroup) -> FiniteGroup:
    elements = A.elements()
    table = tuple(tuple(A.index(A.add(x, y)) for y in elements) for x in elements)
    return FiniteGroup(table, tuple(str(x) for x in elements))


def cyclic_group(n: int) -> FiniteGroup:
    return abelian_cayley(AbelianGroup.from_cyclic_factors([n]))


def symmetric_group_3() -> FiniteGroup:
    perms = [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]
    names = ("e", "(01)", "(02)", "(12)", "(012)", "(021)")
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = p(q(x))
    table = tuple(
        tuple(index[tuple(p[q[x]] for x in range(3))] for q in perms) for p in perms
    )
    return FiniteGroup(table, names)


def quaternion_extension() -> Extension:
    """Q8 as the central extension of Z2 x Z2 by Z2 = {+1, -1}"""
    H = AbelianGroup((2,))
    Q = abelian_cayley(AbelianGroup((2, 2)))
    # unit (a, b) stands for i^a j^b; i^a j^b i^c j^d = (-1)^(bc) i^(a+c) j^(b+d), i^2 = j^2 = -1
    units = AbelianGroup((2, 2)).elements()
    beta = tuple(
        tuple(
            H.element([(u.coords[1] * v.coords[0]
                        + (u.coords[0] + v.coords[0]) // 2
                        + (u.coords[1] + v.coords[1]) // 2) % 2])
            for v in units
        )
        for u in units
    )
    return Extension(H, Q, (IntMatrixHom.identity(H),) * 4, beta)


def dihedral_extension() -> Extension:
    """D4 as (Z2 x Z2) x| Z2 with H = {e, s^2, t, s^2 t} and the lift st swapping t and s^2 t"""
    H = AbelianGroup((2, 2))
    Q = cyclic_group(2)
    swap = IntMatrixHom(H, H, ((1, 1), (0, 1)))
    return Extension.split(H, Q, (IntMatrixHom.identity(H), swap))


Q8_NAMES = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")
D4_NAMES = ("e", "s2", "t", "s2t", "st", "s3t", "s3", "s")


def quaternion_group() -> FiniteGroup:
    return FiniteGroup(quaternion_extension().G.cayley, Q8_NAMES)


def dihedral_group() -> FiniteGroup:
    return FiniteGroup(dihedral_extension().G.cayley, D4_NAMES)


_PRODUCT_PATTERN = re.compile(r'^Z_?(\d+)(\s*x\s*Z_?(\d+))*$')


def named_group(name: str) -> FiniteGroup:
    """Built-in groups: Z_n, Z_a x Z_b (any number of factors), D4, Q8, S3"""
    key = name.strip()
    if key.upper() == 'D4':
        return dihedral_group()
    if key.upper() == 'Q8':
        return quaternion_group()
    if key.upper() == 'S3':
        return symmetric_group_3()
    if _PRODUCT_PATTERN.match(key):
        orders = [int(m) for m in re.findall(r'\d+', key)]
        return abelian_cayley(AbelianGroup.from_cyclic_factors(orders))
    raise ValidationError(f"unknown built-in group '{name}'")


def find_isomorphic_relabeling(G: FiniteGroup, K: FiniteGroup) -> bool:
    """Brute-force isomorphism check for very small groups (order <= 8); tests only"""
    if G.order != K.order or G.order > 8:
        return False
    for perm in permutations(range(1, G.order)):
        f = (0,) + perm
        if all(f[G.mul(a, b)] == K.mul(f[a], f[b]) for a in range(G.order) for b in range(G.order)):
            return True
    return False
