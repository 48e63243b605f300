"""
Finite-dimensional G-graded algebras over Q(zeta_n) given by sparse
structure constants, with twisted group algebras and BSZ algebras as the
main constructors.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .abelian import AbelianGroup
from .cohomology import Bicharacter, Cocycle2H, cocycle_from_bicharacter
from .cyclotomic import (
    CyclotomicNumber,
    invert,
    is_irreducible,
    nullspace_sparse,
    rank_sparse,
    solve_linear_system,
    zeta_power,
)
from .errors import CocycleError, ValidationError
from .groups import FiniteGroup, Subgroup, abelian_cayley

logger = logging.getLogger(__name__)

Vector = Dict[int, CyclotomicNumber]
Coefficient = Union[int, Fraction, CyclotomicNumber]


def _clean(vector: Dict[int, Coefficient], n: int) -> Vector:
    out = {}
    for k, v in vector.items():
        if not isinstance(v, CyclotomicNumber):
            v = CyclotomicNumber.from_rational(n, v)
        v = v.promote(n)
        if not v.is_zero():
            out[k] = v
    return out


def _add_into(target: Vector, source: Vector, scale: CyclotomicNumber):
    for k, v in source.items():
        updated = target[k] + scale * v if k in target else scale * v
        if updated.is_zero():
            target.pop(k, None)
        else:
            target[k] = updated


@dataclass
class GradedAlgebra:
    """Structure-constant algebra: products[(i, j)] is b_i * b_j as a sparse vector"""

    G: FiniteGroup
    n: int
    grading: Tuple[int, ...]
    products: Dict[Tuple[int, int], Vector]
    identity: Vector
    labels: Optional[Tuple[str, ...]] = None
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        self.grading = tuple(int(g) for g in self.grading)
        self.products = {key: vec for key, vec in ((k, _clean(v, self.n)) for k, v in self.products.items()) if vec}
        self.identity = _clean(self.identity, self.n)
        if self.check:
            self._validate()

    @property
    def dim(self) -> int:
        return len(self.grading)

    def _validate(self):
        for (i, j), vec in self.products.items():
            target = self.G.mul(self.grading[i], self.grading[j])
            for k in vec:
                if self.grading[k] != target:
                    raise ValidationError(
                        f"product b_{i} b_{j} leaves the component of degree {self.G.name(target)}",
                        witness=(i, j, k),
                    )
        if any(self.grading[k] != 0 for k in self.identity):
            raise ValidationError("identity element must be homogeneous of degree e")
        for i in range(self.dim):
            unit = {i: CyclotomicNumber.one(self.n)}
            if self.multiply(self.identity, unit) != unit or self.multiply(unit, self.identity) != unit:
                raise ValidationError(f"identity does not act as a unit on b_{i}", witness=i)
        witness = self.associativity_violation()
        if witness is not None:
            raise ValidationError(f"structure constants are not associative at {witness}", witness=witness)

    # Arithmetic

    def basis_product(self, i: int, j: int) -> Vector:
        return self.products.get((i, j), {})

    def multiply(self, x: Vector, y: Vector) -> Vector:
        out: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                vec = self.products.get((i, j))
                if vec:
                    _add_into(out, vec, a * b)
        return out

    def identity_vector(self) -> Vector:
        return dict(self.identity)

    def associativity_violation(self) -> Optional[Tuple[int, int, int]]:
        """First basis triple with (b_i b_j) b_k != b_i (b_j b_k)"""
        size = self.dim
        right_products = [[self.products.get((j, k), {}) for k in range(size)] for j in range(size)]
        for i in range(size):
            for j in range(size):
                left_ij = self.products.get((i, j), {})
                for k in range(size):
                    left: Vector = {}
                    for m, c in left_ij.items():
                        vec = self.products.get((m, k))
                        if vec:
                            _add_into(left, vec, c)
                    right: Vector = {}
                    for m, c in right_products[j][k].items():
                        vec = self.products.get((i, m))
                        if vec:
                            _add_into(right, vec, c)
                    if left != right:
                        return i, j, k
        return None

    def is_associative(self) -> bool:
        return self.associativity_violation() is None

    def is_grading_compatible(self) -> bool:
        return all(
            self.grading[k] == self.G.mul(self.grading[i], self.grading[j])
            for (i, j), vec in self.products.items() for k in vec
        )

    @cached_property
    def is_monomial(self) -> bool:
        """Every product of basis elements is a multiple of a single basis element"""
        return all(len(vec) == 1 for vec in self.products.values())

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"b{i}"

    def to_dense(self, vector: Vector) -> List[CyclotomicNumber]:
        return [vector.get(i, CyclotomicNumber.zero(self.n)) for i in range(self.dim)]


def direct_sum(A: GradedAlgebra, B: GradedAlgebra) -> GradedAlgebra:
    """Block sum with the gradings of both summands"""
    if A.G.cayley != B.G.cayley:
        raise ValidationError("direct sum needs both algebras graded by the same group")
    n = lcm(A.n, B.n)
    shift = A.dim
    products = {key: dict(vec) for key, vec in A.products.items()}
    for (i, j), vec in B.products.items():
        products[(i + shift, j + shift)] = {k + shift: v for k, v in vec.items()}
    identity = dict(A.identity)
    identity.update({k + shift: v for k, v in B.identity.items()})
    labels = None
    if A.labels and B.labels:
        labels = tuple(f"{x}|0" for x in A.labels) + tuple(f"{x}|1" for x in B.labels)
    return GradedAlgebra(A.G, n, A.grading + B.grading, products, identity, labels)


def matrix_algebra(s: int, G: Optional[FiniteGroup] = None, degrees: Optional[Sequence[int]] = None,
                   n: int = 1) -> GradedAlgebra:
    """M_s(F) with the elementary grading deg(e_ij) = g_i^-1 g_j (trivial when no degrees are given)"""
    G = G or FiniteGroup(((0,),))
    degrees = list(degrees) if degrees is not None else [0] * s
    one = CyclotomicNumber.one(n)
    products = {}
    grading = []
    for i in range(s):
        for j in range(s):
            grading.append(G.mul(G.inverse(degrees[i]), degrees[j]))
            for l in range(s):
                products[(i * s + j, j * s + l)] = {i * s + l: one}
    identity = {i * s + i: one for i in range(s)}
    labels = tuple(f"e{i}{j}" for i in range(s) for j in range(s))
    return GradedAlgebra(G, n, tuple(grading), products, identity, labels)


def twisted_group_algebra(H: AbelianGroup, alpha: Cocycle2H) -> GradedAlgebra:
    """F^alpha H: u_a u_b = alpha(a, b) u_{a+b}, graded by H itself"""
    if alpha.H != H:
        raise CocycleError(f"cocycle lives on {alpha.H}, not on {H}")
    G = abelian_cayley(H)
    roots = [zeta_power(alpha.n, k) for k in range(alpha.n)]
    size = H.order
    products = {
        (a, b): {G.mul(a, b): roots[alpha.table[a][b]]} for a in range(size) for b in range(size)
    }
    labels = tuple(f"u{x}" for x in H.elements())
    logger.debug(f"Built twisted group algebra of {H} over Q(zeta_{alpha.n})")
    return GradedAlgebra(G, alpha.n, tuple(range(size)), products, {0: roots[0]}, labels)


# Linear-algebra analyses


def center_basis(A: GradedAlgebra) -> List[List[CyclotomicNumber]]:
    """Basis of {z : z b_i = b_i z for all i} as dense coordinate vectors"""
    rows: Dict[Tuple[int, int], Vector] = {}
    for (i, j), vec in A.products.items():
        # b_i b_j feeds the equation of (z b_j - b_j z) via z_i, with sign + for z b_j and - for b_j z
        for k, c in vec.items():
            left = rows.setdefault((j, k), {})
            _add_into(left, {i: c}, CyclotomicNumber.one(A.n))
            right = rows.setdefault((i, k), {})
            _add_into(right, {j: c}, CyclotomicNumber.from_rational(A.n, -1))
    equations = [row for row in rows.values() if row]
    return nullspace_sparse(equations, A.dim, A.n)


def _left_traces(A: GradedAlgebra) -> List[CyclotomicNumber]:
    traces = [CyclotomicNumber.zero(A.n) for _ in range(A.dim)]
    for (k, m), vec in A.products.items():
        if m in vec:
            traces[k] = traces[k] + vec[m]
    return traces


def trace_form(A: GradedAlgebra) -> Dict[Tuple[int, int], CyclotomicNumber]:
    """T(b_i, b_j) = trace of left multiplication by b_i b_j, sparse"""
    traces = _left_traces(A)
    form: Dict[Tuple[int, int], CyclotomicNumber] = {}
    for (i, j), vec in A.products.items():
        total = CyclotomicNumber.zero(A.n)
        for k, c in vec.items():
            if not traces[k].is_zero():
                total = total + c * traces[k]
        if not total.is_zero():
            form[(i, j)] = total
    return form


def radical_is_zero(A: GradedAlgebra) -> bool:
    """Nondegeneracy of the trace form, which characterizes semisimplicity in characteristic zero"""
    rows: Dict[int, Vector] = {}
    for (i, j), value in trace_form(A).items():
        rows.setdefault(i, {})[j] = value
    return rank_sparse(list(rows.values()), A.dim) == A.dim


def is_central_simple(A: GradedAlgebra) -> bool:
    return radical_is_zero(A) and len(center_basis(A)) == 1


def homogeneous_dims(A: GradedAlgebra) -> Dict[int, int]:
    dims = {g: 0 for g in range(A.G.order)}
    for g in A.grading:
        dims[g] += 1
    return dims


def is_faithful(A: GradedAlgebra) -> bool:
    return all(homogeneous_dims(A).values())


def _ideal_closure(A: GradedAlgebra, seed: int) -> int:
    """Dimension of the two-sided ideal generated by the basis element b_seed"""
    if A.is_monomial:
        reached = {seed}
        frontier = [seed]
        while frontier:
            x = frontier.pop()
            for b in range(A.dim):
                for key in ((b, x), (x, b)):
                    for k in A.products.get(key, {}):
                        if k not in reached:
                            reached.add(k)
                            frontier.append(k)
        return len(reached)
    spanning: List[Vector] = [{seed: CyclotomicNumber.one(A.n)}]
    rank = 1
    frontier = list(spanning)
    while frontier:
        x = frontier.pop()
        for b in range(A.dim):
            unit = {b: CyclotomicNumber.one(A.n)}
            for y in (A.multiply(unit, x), A.multiply(x, unit)):
                if not y:
                    continue
                new_rank = rank_sparse(spanning + [y], A.dim)
                if new_rank > rank:
                    spanning.append(y)
                    frontier.append(y)
                    rank = new_rank
    return rank


def e_center_basis(A: GradedAlgebra) -> List[Vector]:
    """Basis of Z(A) intersected with the degree-e component, as sparse vectors"""
    center = center_basis(A)
    if not center:
        return []
    # combinations of center vectors whose coordinates outside degree e vanish
    rows = []
    for i in range(A.dim):
        if A.grading[i] == 0:
            continue
        row = {c: vec[i] for c, vec in enumerate(center) if not vec[i].is_zero()}
        if row:
            rows.append(row)
    basis = []
    for weights in nullspace_sparse(rows, len(center), A.n):
        vector: Vector = {}
        for w, vec in zip(weights, center):
            if not w.is_zero():
                _add_into(vector, dict(enumerate(vec)), w)
        basis.append(vector)
    return basis


def e_central_dimension(A: GradedAlgebra) -> int:
    """Dimension of Z(A) intersected with the degree-e component"""
    return len(e_center_basis(A))


def minimal_polynomial(A: GradedAlgebra, z: Vector) -> List[CyclotomicNumber]:
    """Monic minimal polynomial of z over Q(zeta_n), coefficients lowest degree first"""
    zero = CyclotomicNumber.zero(A.n)
    powers = [A.identity_vector()]
    while True:
        following = A.multiply(powers[-1], z)
        M = [[p.get(r, zero) for p in powers] for r in range(A.dim)]
        solution = solve_linear_system(M, [following.get(r, zero) for r in range(A.dim)], A.n)
        if solution.consistent:
            return [-c for c in solution.particular] + [CyclotomicNumber.one(A.n)]
        powers.append(following)


def e_center_is_field(A: GradedAlgebra) -> bool:
    """Z(A)_e has no zero divisors.

    A reducible minimal polynomial of any element exhibits zero divisors; an
    irreducible one of full degree makes Z(A)_e = Q(zeta_n)[z] a field. Candidates
    run along the moment curve sum t^k v_k, which leaves every proper subfield
    after finitely many steps.
    """
    basis = e_center_basis(A)
    m = len(basis)
    if m <= 1:
        return m == 1
    for t in range(1, m * 2 ** m + 2):
        z: Vector = {}
        for k, vec in enumerate(basis):
            _add_into(z, vec, CyclotomicNumber.from_rational(A.n, t ** k))
        poly = minimal_polynomial(A, z)
        if not is_irreducible(poly, A.n):
            logger.debug(f"Z(A)_e has zero divisors: minimal polynomial of degree {len(poly) - 1} splits")
            return False
        if len(poly) - 1 == m:
            return True
    logger.debug(f"No primitive element found for Z(A)_e of dimension {m}")
    return False


def is_graded_simple(A: GradedAlgebra) -> bool:
    """Every nonzero homogeneous element generates A as a two-sided ideal.

    Basis seeds are closed under multiplication by basis elements; combinations are
    covered by requiring semisimplicity and a field as the e-component of the center,
    whose idempotents would split off a proper graded ideal.
    """
    for seed in range(A.dim):
        if _ideal_closure(A, seed) < A.dim:
            logger.debug(f"Basis element {A.label(seed)} generates a proper ideal")
            return False
    return radical_is_zero(A) and e_center_is_field(A)


def homogeneous_inverse(A: GradedAlgebra, i: int) -> Tuple[int, CyclotomicNumber]:
    """(j, c) with b_i * (c b_j) = 1 in a twisted group algebra: j = h^-1 and c = alpha(h, h^-1)^-1"""
    if len(A.identity) != 1:
        raise ValidationError("closed-form inverses need a one-term identity")
    if A.grading != tuple(range(A.G.order)):
        raise ValidationError("closed-form inverses need one basis element per degree")
    (unit, unit_coeff), = A.identity.items()
    j = A.G.inverse(i)
    vec = A.products.get((i, j), {})
    if set(vec) != {unit}:
        raise ValidationError(f"basis element {A.label(i)} is not invertible", witness=i)
    return j, unit_coeff * invert(vec[unit])



def commutator_in_twisted(A: GradedAlgebra, i: int, j: int) -> CyclotomicNumber:
    """The scalar c with b_i b_j b_i^-1 b_j^-1 = c * 1"""
    inv_i, ci = homogeneous_inverse(A, i)
    inv_j, cj = homogeneous_inverse(A, j)
    one = CyclotomicNumber.one(A.n)
    x = A.multiply({i: one}, {j: one})
    x = A.multiply(x, {inv_i: ci})
    x = A.multiply(x, {inv_j: cj})
    (unit, unit_coeff), = A.identity.items()
    if set(x) != {unit}:
        raise ValidationError("group commutator of homogeneous units is not a scalar", witness=(i, j))
    return x[unit] / unit_coeff


# BSZ algebras


@dataclass(frozen=True)
class BSZPresentation:
    """G-graded simple algebra data (H, alpha, (g_1, ..., g_s)); alpha is indexed by positions in H.elements"""

    G: FiniteGroup
    H: Subgroup
    n: int
    alpha: Tuple[Tuple[int, ...], ...]
    g_tuple: Tuple[int, ...]

    def __post_init__(self):
        if self.H.parent != self.G:
            raise ValidationError("H must be a subgroup of G")
        object.__setattr__(self, 'g_tuple', tuple(int(g) for g in self.g_tuple))
        if not self.g_tuple or self.g_tuple[0] != 0:
            raise ValidationError("the tuple must start with the identity")
        if any(not 0 <= g < self.G.order for g in self.g_tuple):
            raise ValidationError("tuple entries must be elements of G")
        size = self.H.order
        rows = tuple(tuple(int(x) % self.n for x in row) for row in self.alpha)
        if len(rows) != size or any(len(row) != size for row in rows):
            raise ValidationError(f"alpha must be a {size}x{size} table over H")
        object.__setattr__(self, 'alpha', rows)
        violation = self.cocycle_violation()
        if violation is not None:
            raise CocycleError(f"alpha fails {violation[0]}", witness=violation[1])

    @cached_property
    def positions(self) -> Dict[int, int]:
        return {x: p for p, x in enumerate(self.H.elements)}

    def cocycle_violation(self) -> Optional[Tuple[str, Tuple[int, ...]]]:
        a = self.alpha
        pos = self.positions
        elems = self.H.elements
        G = self.G
        for p in range(len(elems)):
            if a[0][p] or a[p][0]:
                return 'normalization', (0, p)
        for p, x in enumerate(elems):
            for q, y in enumerate(elems):
                xy = pos[G.mul(x, y)]
                for r, z in enumerate(elems):
                    yz = pos[G.mul(y, z)]
                    if (a[p][q] + a[xy][r] - a[q][r] - a[p][yz]) % self.n:
                        return 'cocycle identity', (p, q, r)
        return None

    @property
    def s(self) -> int:
        return len(self.g_tuple)

    @classmethod
    def from_cocycle(cls, G: FiniteGroup, H: Subgroup, alpha: Cocycle2H, g_tuple: Sequence[int]) -> 'BSZPresentation':
        """Transport a cocycle on the abstract type of an abelian H into position indexing"""
        ident = H.identification
        if alpha.H != ident.group:
            raise ValidationError(f"cocycle lives on {alpha.H}, H has type {ident.group}")
        coords = [ident.to_coords(x) for x in H.elements]
        table = tuple(tuple(alpha.value(cx, cy) for cy in coords) for cx in coords)
        return cls(G, H, alpha.n, table, tuple(g_tuple))

    @classmethod
    def from_bicharacter(cls, G: FiniteGroup, H: Subgroup, phi: Bicharacter, g_tuple: Sequence[int],
                         n: Optional[int] = None) -> 'BSZPresentation':
        return cls.from_cocycle(G, H, cocycle_from_bicharacter(phi, n), g_tuple)

    def abstract_cocycle(self) -> Cocycle2H:
        """alpha in the coordinates of H's invariant-factor type; H must be abelian"""
        ident = self.H.identification
        A = ident.group
        pos = self.positions
        table = tuple(
            tuple(self.alpha[pos[ident.to_element(x)]][pos[ident.to_element(y)]] for y in A.elements())
            for x in A.elements()
        )
        return Cocycle2H(A, self.n, table)


def bsz_algebra(P: BSZPresentation) -> GradedAlgebra:
    """Basis u_h (x) e_ij of degree g_i^-1 h g_j with (u_h e_ij)(u_h' e_kl) = delta_jk alpha(h, h') u_hh' e_il"""
    G = P.G
    s = P.s
    elems = P.H.elements
    pos = P.positions
    roots = [zeta_power(P.n, k) for k in range(P.n)]

    def index(p: int, i: int, j: int) -> int:
        return (p * s + i) * s + j

    grading = []
    labels = []
    for p, h in enumerate(elems):
        for i in range(s):
            for j in range(s):
                g_i, g_j = P.g_tuple[i], P.g_tuple[j]
                grading.append(G.mul(G.mul(G.inverse(g_i), h), g_j))
                labels.append(f"u[{G.name(h)}]e[{i},{j}]")
    products = {}
    for p, h in enumerate(elems):
        for q, h2 in enumerate(elems):
            target = pos[G.mul(h, h2)]
            coeff = roots[P.alpha[p][q]]
            for i in range(s):
                for j in range(s):
                    for l in range(s):
                        products[(index(p, i, j), index(q, j, l))] = {index(target, i, l): coeff}
    identity = {index(0, i, i): roots[0] for i in range(s)}
    logger.debug(f"Built BSZ algebra of dimension {len(grading)}")
    return GradedAlgebra(G, P.n, tuple(grading), products, identity, tuple(labels))
