"""
Finite abelian groups via invariant factors, homomorphisms as integer
matrices, and Smith normal form over the integers.

Elements are linearized in mixed radix with coordinate 0 least significant:
index(c) = c_0 + m_0*(c_1 + m_1*(c_2 + ...)). Cayley tables and serialized
tables depend on this order.
"""

import logging
from dataclasses import dataclass
from itertools import product
from math import gcd, lcm, prod
from typing import Iterable, List, Sequence, Tuple

from .errors import ValidationError

logger = logging.getLogger(__name__)

IntMatrix = List[List[int]]


def _identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _smith(M: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix, IntMatrix, IntMatrix]:
    """Returns (D, U, V, V^-1) with U*M*V = D in Smith normal form"""
    A = [list(row) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m)
    V = _identity(n)
    Vinv = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def add_row(target, source, q):
        # row_target += q * row_source
        A[target] = [a + q * b for a, b in zip(A[target], A[source])]
        U[target] = [a + q * b for a, b in zip(U[target], U[source])]

    def add_col(target, source, q):
        # col_target += q * col_source
        for row in A:
            row[target] += q * row[source]
        for row in V:
            row[target] += q * row[source]
        Vinv[source] = [a - q * b for a, b in zip(Vinv[source], Vinv[target])]

    for t in range(min(m, n)):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] != 0 and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])

        while True:
            clean = True
            for i in range(t + 1, m):
                if A[i][t] != 0:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t] != 0:
                        swap_rows(i, t)
                        clean = False
            for j in range(t + 1, n):
                if A[t][j] != 0:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j] != 0:
                        swap_cols(j, t)
                        clean = False
            if not clean:
                continue
            # divisibility chain
            offender = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t] != 0),
                None,
            )
            if offender is None:
                break
            add_row(t, offender, 1)

        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]

    return A, U, V, Vinv


def smith_normal_form(M: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: returns (D, U, V) with U*M*V = D, d_i | d_{i+1}, U and V unimodular"""
    D, U, V, _ = _smith(M)
    return D, U, V


def diagonal(D: Sequence[Sequence[int]]) -> List[int]:
    """Diagonal entries of a (possibly rectangular) matrix"""
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def left_kernel(B: Sequence[Sequence[int]]) -> IntMatrix:
    """Rows generating the integer left nullspace {x : x*B = 0}"""
    if not B:
        return []
    if not B[0]:
        return _identity(len(B))
    D, U, _, _ = _smith(B)
    return [U[i] for i in range(len(B)) if all(x == 0 for x in D[i])]


@dataclass(frozen=True)
class AbelianElement:
    coords: Tuple[int, ...]

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class AbelianGroup:
    """Finite abelian group Z_{m_1} x ... x Z_{m_k} with m_1 | m_2 | ... | m_k, each m_i >= 2"""

    invariant_factors: Tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(m) for m in self.invariant_factors)
        object.__setattr__(self, 'invariant_factors', factors)
        for i, m in enumerate(factors):
            if m < 2:
                raise ValidationError(f"invariant factor {m} must be at least 2")
            if i + 1 < len(factors) and factors[i + 1] % m != 0:
                raise ValidationError(f"invariant factors {list(factors)} break the divisibility chain")

    @classmethod
    def from_cyclic_factors(cls, orders: Iterable[int]) -> 'AbelianGroup':
        """Normalize an arbitrary product of cyclic groups Z_{n_1} x ... through SNF"""
        orders = [int(n) for n in orders]
        if any(n < 1 for n in orders):
            raise ValidationError(f"cyclic orders must be positive, got {orders}")
        if not orders:
            return cls(())
        relation = [[orders[i] if i == j else 0 for j in range(len(orders))] for i in range(len(orders))]
        D, _, _ = smith_normal_form(relation)
        return cls(tuple(d for d in diagonal(D) if d != 1))

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def is_trivial(self) -> bool:
        return self.rank == 0

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "1"
        return " x ".join(f"Z{m}" for m in self.invariant_factors)

    # Elements

    def zero(self) -> AbelianElement:
        return AbelianElement((0,) * self.rank)

    def element(self, coords: Sequence[int]) -> AbelianElement:
        """Validated element; coordinates must already be reduced"""
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise ValidationError(f"element {list(coords)} has length {len(coords)}, expected {self.rank}")
        for c, m in zip(coords, self.invariant_factors):
            if not 0 <= c < m:
                raise ValidationError(f"element {list(coords)} lies outside {self}")
        return AbelianElement(coords)

    def reduce(self, vector: Sequence[int]) -> AbelianElement:
        return AbelianElement(tuple(int(c) % m for c, m in zip(vector, self.invariant_factors)))

    def add(self, x: AbelianElement, y: AbelianElement) -> AbelianElement:
        return AbelianElement(tuple((a + b) % m for a, b, m in zip(x.coords, y.coords, self.invariant_factors)))

    def neg(self, x: AbelianElement) -> AbelianElement:
        return AbelianElement(tuple((-a) % m for a, m in zip(x.coords, self.invariant_factors)))

    def scale(self, x: AbelianElement, k: int) -> AbelianElement:
        return AbelianElement(tuple((k * a) % m for a, m in zip(x.coords, self.invariant_factors)))

    def basis(self) -> List[AbelianElement]:
        return [AbelianElement(tuple(1 if i == j else 0 for j in range(self.rank))) for i in range(self.rank)]

    def elements(self) -> List[AbelianElement]:
        """All elements in index order"""
        combos = product(*[range(m) for m in reversed(self.invariant_factors)])
        return [AbelianElement(tuple(reversed(combo))) for combo in combos]

    def index(self, x: AbelianElement) -> int:
        idx = 0
        for c, m in zip(reversed(x.coords), reversed(self.invariant_factors)):
            idx = idx * m + c
        return idx

    def from_index(self, idx: int) -> AbelianElement:
        coords = []
        for m in self.invariant_factors:
            coords.append(idx % m)
            idx //= m
        return AbelianElement(tuple(coords))

    def element_order(self, x: AbelianElement) -> int:
        order = 1
        for c, m in zip(x.coords, self.invariant_factors):
            order = lcm(order, m // gcd(c, m))
        return order


def direct_product(A: AbelianGroup, B: AbelianGroup) -> AbelianGroup:
    return AbelianGroup.from_cyclic_factors(A.invariant_factors + B.invariant_factors)


@dataclass(frozen=True)
class IntMatrixHom:
    """Homomorphism source -> target; column j is the image of the j-th source generator"""

    source: AbelianGroup
    target: AbelianGroup
    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if len(rows) != self.target.rank or any(len(row) != self.source.rank for row in rows):
            raise ValidationError(
                f"matrix shape does not match {self.target.rank}x{self.source.rank} for {self.source} -> {self.target}"
            )
        for i, row in enumerate(rows):
            for j, entry in enumerate(row):
                if (entry * self.source.invariant_factors[j]) % self.target.invariant_factors[i] != 0:
                    raise ValidationError(
                        f"matrix entry ({i},{j})={entry} is not well defined on Z{self.source.invariant_factors[j]}",
                        witness=(i, j),
                    )
        reduced = tuple(
            tuple(entry % self.target.invariant_factors[i] for entry in row) for i, row in enumerate(rows)
        )
        object.__setattr__(self, 'matrix', reduced)

    @classmethod
    def identity(cls, H: AbelianGroup) -> 'IntMatrixHom':
        return cls(H, H, tuple(tuple(_identity(H.rank)[i]) for i in range(H.rank)))

    def apply(self, x: AbelianElement) -> AbelianElement:
        return self.target.reduce([sum(a * c for a, c in zip(row, x.coords)) for row in self.matrix])

    def compose(self, other: 'IntMatrixHom') -> 'IntMatrixHom':
        """self o other"""
        if other.target != self.source:
            raise ValidationError("cannot compose homomorphisms with mismatched groups")
        columns = [self.apply(other.apply(e)).coords for e in other.source.basis()]
        matrix = tuple(tuple(columns[j][i] for j in range(other.source.rank)) for i in range(self.target.rank))
        return IntMatrixHom(other.source, self.target, matrix)

    def is_endomorphism(self) -> bool:
        return self.source == self.target


def is_automorphism(f: IntMatrixHom) -> bool:
    """True iff f is a bijective endomorphism of H"""
    if not f.is_endomorphism():
        raise ValidationError("is_automorphism expects an endomorphism")
    H = f.source
    image = [f.apply(e) for e in H.basis()]
    return subgroup_type(H, image).order == H.order


def _relation_rows(H: AbelianGroup) -> IntMatrix:
    return [[m if i == j else 0 for j in range(H.rank)] for i, m in enumerate(H.invariant_factors)]


def _check_generators(H: AbelianGroup, gens: Sequence[AbelianElement]) -> List[AbelianElement]:
    return [H.element(g.coords if isinstance(g, AbelianElement) else g) for g in gens]


def quotient(H: AbelianGroup, gens: Sequence[AbelianElement]) -> AbelianGroup:
    """Invariant factors of H / <gens>, via SNF of the relation matrix"""
    gens = _check_generators(H, gens)
    if H.is_trivial():
        return AbelianGroup(())
    relations = _relation_rows(H) + [list(g.coords) for g in gens]
    D, _, _ = smith_normal_form(relations)
    return AbelianGroup(tuple(d for d in diagonal(D) if d != 1))


def subgroup_basis(H: AbelianGroup, gens: Sequence[AbelianElement]) -> Tuple[AbelianGroup, List[AbelianElement]]:
    """Abstract type of <gens> together with elements f_i realizing its invariant factors"""
    gens = _check_generators(H, gens)
    if not gens or H.is_trivial():
        return AbelianGroup(()), []
    r = len(gens)
    stacked = [list(g.coords) for g in gens] + _relation_rows(H)
    kernel = [row[:r] for row in left_kernel(stacked)]
    D, _, _, Vinv = _smith(kernel)
    factors = diagonal(D)
    factors += [0] * (r - len(factors))
    group_factors = []
    basis = []
    for i, d in enumerate(factors):
        if d == 1:
            continue
        if d == 0:
            raise ValidationError("generators span an infinite group; relation lattice is degenerate")
        group_factors.append(d)
        basis.append(H.reduce([sum(Vinv[i][j] * gens[j].coords[c] for j in range(r)) for c in range(H.rank)]))
    return AbelianGroup(tuple(group_factors)), basis


def subgroup_type(H: AbelianGroup, gens: Sequence[AbelianElement]) -> AbelianGroup:
    return subgroup_basis(H, gens)[0]


def subgroup_elements(H: AbelianGroup, gens: Sequence[AbelianElement]) -> List[AbelianElement]:
    """All elements of <gens>, sorted by index"""
    S, basis = subgroup_basis(H, gens)
    found = set()
    for coeffs in S.elements():
        x = H.zero()
        for c, f in zip(coeffs.coords, basis):
            x = H.add(x, H.scale(f, c))
        found.add(x)
    return sorted(found, key=H.index)


def is_square_type(H: AbelianGroup) -> bool:
    """True iff H is isomorphic to A x A for some abelian A"""
    factors = H.invariant_factors
    if len(factors) % 2:
        return False
    return all(factors[2 * i] == factors[2 * i + 1] for i in range(len(factors) // 2))
