"""
Schur multipliers, root-of-unity 2-cocycles on abelian groups, alternating
bicharacters and their invariance under automorphisms.

Bicharacter values are exponents of zeta_{n_H}; cocycle values are exponents
of zeta_n for the cocycle's own root order n.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .abelian import (
    AbelianElement,
    AbelianGroup,
    IntMatrixHom,
    _smith,
    left_kernel,
    subgroup_basis,
    subgroup_elements,
)
from .errors import CocycleError, ValidationError

logger = logging.getLogger(__name__)


def schur_multiplier(H: AbelianGroup) -> AbelianGroup:
    """H wedge H: one cyclic factor of order gcd(m_i, m_j) per pair i < j"""
    m = H.invariant_factors
    factors = [gcd(m[i], m[j]) for i in range(len(m)) for j in range(i + 1, len(m))]
    return AbelianGroup.from_cyclic_factors(factors)


@dataclass(frozen=True)
class Bicharacter:
    """Alternating pairing phi(e_i, e_j) = zeta_{n_H}^E[i][j]"""

    H: AbelianGroup
    E: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        n = self.H.exponent
        k = self.H.rank
        rows = tuple(tuple(int(x) % n for x in row) for row in self.E)
        if len(rows) != k or any(len(row) != k for row in rows):
            raise ValidationError(f"bicharacter matrix must be {k}x{k} for H = {self.H}")
        m = self.H.invariant_factors
        for i in range(k):
            if rows[i][i] != 0:
                raise ValidationError(f"bicharacter is not alternating: E[{i}][{i}] = {rows[i][i]}", witness=(i, i))
            for j in range(k):
                if (rows[i][j] + rows[j][i]) % n:
                    raise ValidationError(f"bicharacter is not alternating at ({i},{j})", witness=(i, j))
                if rows[i][j] % (n // gcd(m[i], m[j])):
                    raise ValidationError(
                        f"E[{i}][{j}] = {rows[i][j]} is not well defined on Z{m[i]} x Z{m[j]}", witness=(i, j)
                    )
        object.__setattr__(self, 'E', rows)

    @classmethod
    def trivial(cls, H: AbelianGroup) -> 'Bicharacter':
        return cls(H, tuple((0,) * H.rank for _ in range(H.rank)))

    @property
    def n(self) -> int:
        return self.H.exponent

    def is_trivial(self) -> bool:
        return not any(any(row) for row in self.E)

    def value(self, x: AbelianElement, y: AbelianElement) -> int:
        """Exponent of phi(x, y) as a power of zeta_{n_H}"""
        total = 0
        for i, a in enumerate(x.coords):
            if a:
                row = self.E[i]
                for j, b in enumerate(y.coords):
                    total += a * b * row[j]
        return total % self.n

    def inverse(self) -> 'Bicharacter':
        return Bicharacter(self.H, tuple(tuple(-x for x in row) for row in self.E))

    def transform(self, f: IntMatrixHom) -> 'Bicharacter':
        """The pulled-back pairing (x, y) -> phi(f x, f y)"""
        images = [f.apply(e) for e in self.H.basis()]
        return Bicharacter(self.H, tuple(tuple(self.value(a, b) for b in images) for a in images))


@dataclass(frozen=True)
class Cocycle2H:
    """Normalized 2-cocycle alpha(h1, h2) = zeta_n^table[h1][h2] with trivial action"""

    H: AbelianGroup
    n: int
    table: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"root order must be positive, got {self.n}")
        size = self.H.order
        rows = tuple(tuple(int(x) % self.n for x in row) for row in self.table)
        if len(rows) != size or any(len(row) != size for row in rows):
            raise ValidationError(f"cocycle table must be {size}x{size}")
        object.__setattr__(self, 'table', rows)
        violation = self.violation()
        if violation is not None:
            raise CocycleError(f"cocycle {violation[0]} fails", witness=violation[1])

    def violation(self) -> Optional[Tuple[str, Tuple[int, ...]]]:
        """First failing normalization or cocycle triple, by element index"""
        t = self.table
        size = self.H.order
        for h in range(size):
            if t[0][h] or t[h][0]:
                return 'normalization', (0, h)
        add = self._add_table()
        for a in range(size):
            for b in range(size):
                ab = add[a][b]
                for c in range(size):
                    if (t[a][b] + t[ab][c] - t[b][c] - t[a][add[b][c]]) % self.n:
                        return 'identity', (a, b, c)
        return None

    def _add_table(self) -> List[List[int]]:
        H = self.H
        elements = H.elements()
        return [[H.index(H.add(x, y)) for y in elements] for x in elements]

    @classmethod
    def trivial(cls, H: AbelianGroup, n: int = 1) -> 'Cocycle2H':
        return cls(H, n, tuple((0,) * H.order for _ in range(H.order)))

    def value(self, x: AbelianElement, y: AbelianElement) -> int:
        return self.table[self.H.index(x)][self.H.index(y)]

    def rescale(self, m: int) -> 'Cocycle2H':
        """Same cocycle with values read in mu_m, for a multiple m of n"""
        if m % self.n:
            raise ValidationError(f"cannot rescale roots of order {self.n} to {m}")
        step = m // self.n
        return Cocycle2H(self.H, m, tuple(tuple(x * step for x in row) for row in self.table))


def commutator_form(alpha: Cocycle2H) -> Bicharacter:
    """phi(e_i, e_j) = alpha(e_i, e_j) / alpha(e_j, e_i), read in mu_{n_H}"""
    H = alpha.H
    n_H = H.exponent
    basis = [H.index(e) for e in H.basis()]
    E = []
    for a in basis:
        row = []
        for b in basis:
            k = (alpha.table[a][b] - alpha.table[b][a]) % alpha.n
            if (k * n_H) % alpha.n:
                raise ValidationError(f"commutator value zeta_{alpha.n}^{k} is not an n_H-th root of unity")
            row.append(k * n_H // alpha.n)
        E.append(tuple(row))
    return Bicharacter(H, tuple(E))


def cocycle_from_bicharacter(phi: Bicharacter, n: Optional[int] = None) -> Cocycle2H:
    """Upper-triangular section alpha(a, b) = prod_{i<j} phi(e_i, e_j)^(a_i b_j)"""
    H = phi.H
    n_H = phi.n
    n = n or n_H
    if n % n_H:
        raise ValidationError(f"root order {n} is not a multiple of exp(H) = {n_H}")
    step = n // n_H
    elements = H.elements()
    k = H.rank
    table = []
    for x in elements:
        row = []
        for y in elements:
            total = sum(
                phi.E[i][j] * x.coords[i] * y.coords[j] for i in range(k) for j in range(i + 1, k)
            )
            row.append((total % n_H) * step)
        table.append(tuple(row))
    return Cocycle2H(H, n, tuple(table))


def solve_mod(A: Sequence[Sequence[int]], b: Sequence[int], N: int) -> Optional[List[int]]:
    """A solution of A x = b (mod N), or None; decided through the Smith form of A"""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if cols == 0:
        return [] if all(x % N == 0 for x in b) else None
    D, U, V, _ = _smith(A)
    c = [sum(U[i][j] * b[j] for j in range(rows)) % N for i in range(rows)]
    y = [0] * cols
    for i in range(rows):
        d = D[i][i] if i < cols else 0
        g = gcd(d, N)
        if c[i] % g:
            return None
        if d % N == 0:
            continue
        modulus = N // g
        y[i] = (c[i] // g) * pow((d // g) % modulus, -1, modulus) % modulus if modulus > 1 else 0
    return [sum(V[i][j] * y[j] for j in range(cols)) % N for i in range(cols)]


def is_coboundary(alpha: Cocycle2H) -> Tuple[bool, Optional[List[int]]]:
    """Whether alpha = d(gamma) for some gamma: H -> mu_n; gamma exponents by element index when it is"""
    H = alpha.H
    size = H.order
    if size == 1:
        return True, [0]
    add = alpha._add_table()
    # unknowns gamma(h) for h != 0; gamma(0) = 0 is forced
    A = []
    b = []
    for x in range(1, size):
        for y in range(1, size):
            row = [0] * (size - 1)
            row[x - 1] += 1
            row[y - 1] += 1
            if add[x][y]:
                row[add[x][y] - 1] -= 1
            A.append(row)
            b.append(alpha.table[x][y])
    solution = solve_mod(A, b, alpha.n)
    if solution is None:
        return False, None
    return True, [0] + solution


def is_invariant(phi: Bicharacter, automorphisms: Sequence[IntMatrixHom]) -> bool:
    """phi(f h1, f h2) = phi(h1, h2) for every f and every pair of basis elements"""
    return all(phi.transform(f) == phi for f in automorphisms)


def q_invariant(phi: Bicharacter, ext) -> bool:
    if ext.H != phi.H:
        raise ValidationError(f"bicharacter lives on {phi.H} but the extension kernel is {ext.H}")
    return is_invariant(phi, ext.action)


def _candidate_ranges(H: AbelianGroup) -> List[Tuple[Tuple[int, int], List[int]]]:
    n = H.exponent
    m = H.invariant_factors
    pairs = []
    for i in range(H.rank):
        for j in range(i + 1, H.rank):
            step = n // gcd(m[i], m[j])
            pairs.append(((i, j), list(range(0, n, step))))
    return pairs


def _matrix_from_upper(H: AbelianGroup, pairs, values) -> Tuple[Tuple[int, ...], ...]:
    n = H.exponent
    E = [[0] * H.rank for _ in range(H.rank)]
    for ((i, j), _), v in zip(pairs, values):
        E[i][j] = v
        E[j][i] = (-v) % n
    return tuple(tuple(row) for row in E)


def all_bicharacters(H: AbelianGroup) -> List[Bicharacter]:
    """Every alternating bicharacter on H, lexicographic in E"""
    pairs = _candidate_ranges(H)
    return [
        Bicharacter(H, _matrix_from_upper(H, pairs, values))
        for values in product(*[choices for _, choices in pairs])
    ]


def invariant_bicharacters(H: AbelianGroup, automorphisms: Sequence[IntMatrixHom],
                           workers: int = 1) -> List[Bicharacter]:
    """Bicharacters fixed by every given automorphism, lexicographic in E"""
    candidates = all_bicharacters(H)
    logger.info(f"Enumerating invariant bicharacters for H={H} ({len(candidates)} candidates)")
    automorphisms = list(automorphisms)
    if workers > 1 and len(candidates) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            flags = list(executor.map(lambda phi: is_invariant(phi, automorphisms), candidates))
    else:
        flags = [is_invariant(phi, automorphisms) for phi in candidates]
    result = [phi for phi, ok in zip(candidates, flags) if ok]
    logger.debug(f"{len(result)} of {len(candidates)} bicharacters are invariant")
    return result


def enumerate_invariant_bicharacters(ext, workers: int = 1) -> List[Bicharacter]:
    return invariant_bicharacters(ext.H, ext.action, workers)


@dataclass(frozen=True)
class Radical:
    """S = {s : phi(s, h) = 1 for all h} with generators and abstract type"""

    H: AbelianGroup
    group: AbelianGroup
    generators: Tuple[AbelianElement, ...]
    elements: Tuple[AbelianElement, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: AbelianElement) -> bool:
        return x in self.elements


def radical(phi: Bicharacter) -> Radical:
    H = phi.H
    k = H.rank
    if k == 0:
        return Radical(H, AbelianGroup(()), (), (H.zero(),))
    n = phi.n
    # s . E = 0 (mod n) columnwise: left kernel of [E; n*I] restricted to the s part
    stacked = [list(row) for row in phi.E] + [[n if i == j else 0 for j in range(k)] for i in range(k)]
    lattice = [row[:k] for row in left_kernel(stacked)]
    generators = [H.reduce(row) for row in lattice]
    generators = [g for g in generators if g != H.zero()]
    group, basis = subgroup_basis(H, generators)
    elements = subgroup_elements(H, generators) if generators else [H.zero()]
    return Radical(H, group, tuple(basis), tuple(elements))


def is_nondegenerate(phi: Bicharacter) -> bool:
    return radical(phi).order == 1
