"""
Finite presentation data of generic crossed products realizing a triple
([beta], phi, d).

The coefficient field is represented by its monoid of monomial units:
a root of unity times a Laurent monomial in the variables
  y[q]     (q in Q), permuted by left translation, so the action kernel is H
  z[q,q']  (q, q' in Q minus e), the generic Q-cocycle values
  a, b     (only after a Hilbert twist of degree d > 1)
A symbol x_g for g = (h, q) is x_h s_q, and x_g x_g' = gamma(g, g') x_gg'.

Q acts on the z-variables through the cocycle identity itself,
  q.z[q2,q3] = z[q q2,q3] z[q,q2] / z[q,q2 q3],
which is a Q-action on the free lattice of normalized pairs. The z-part of
gamma is then the universal cocycle z[q,q'] and is not a coboundary.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import lcm
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .cohomology import Bicharacter, cocycle_from_bicharacter, q_invariant, solve_mod
from .cyclotomic import zeta_power
from .errors import ObstructionError, PresentationError, ValidationError
from .graded_algebra import GradedAlgebra
from .groups import Extension, FiniteGroup
from .structure import RealizableTriple

logger = logging.getLogger(__name__)


# image of one variable under a substitution: sparse (variable, exponent) pairs
Image = Tuple[Tuple[int, int], ...]
Substitution = Tuple[Image, ...]


def identity_substitution(size: int) -> Substitution:
    return tuple(((v, 1),) for v in range(size))


def fixes_variable(sub: Substitution, v: int) -> bool:
    return sub[v] == ((v, 1),)


@dataclass(frozen=True)
class MonomialCoefficient:
    """zeta^root * prod v_i^laurent[i]; root is a fraction of a full turn in [0, 1)"""

    root: Fraction
    laurent: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'root', Fraction(self.root) % 1)
        object.__setattr__(self, 'laurent', tuple(int(x) for x in self.laurent))

    @classmethod
    def one(cls, size: int) -> 'MonomialCoefficient':
        return cls(Fraction(0), (0,) * size)

    @classmethod
    def root_of_unity(cls, k: int, N: int, size: int) -> 'MonomialCoefficient':
        return cls(Fraction(k, N), (0,) * size)

    def __mul__(self, other: 'MonomialCoefficient') -> 'MonomialCoefficient':
        return MonomialCoefficient(self.root + other.root, tuple(a + b for a, b in zip(self.laurent, other.laurent)))

    def inverse(self) -> 'MonomialCoefficient':
        return MonomialCoefficient(-self.root, tuple(-a for a in self.laurent))

    def act(self, sub: Substitution) -> 'MonomialCoefficient':
        """Substitute variable i by the monomial sub[i]; roots are fixed"""
        out = [0] * len(self.laurent)
        for i, e in enumerate(self.laurent):
            if e:
                for j, k in sub[i]:
                    out[j] += e * k
        return MonomialCoefficient(self.root, tuple(out))

    def is_one(self) -> bool:
        return self.root == 0 and not any(self.laurent)

    def root_exponent(self, N: int) -> int:
        value = self.root * N
        if value.denominator != 1:
            raise ValidationError(f"root {self.root} is not an {N}-th root of unity")
        return int(value)

    def format(self, variables: Sequence[str], N: int) -> str:
        parts = []
        k = self.root_exponent(N)
        if k:
            parts.append("-1" if 2 * k == N else f"zeta{N}^{k}")
        for name, e in zip(variables, self.laurent):
            if e:
                parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class CrossedPresentation:
    """Symbols x_g over the monomial coefficient monoid with x_g x_g' = gamma(g, g') x_gg'"""

    G: FiniteGroup
    grading_group: FiniteGroup
    degree: Tuple[int, ...]
    d: int
    N: int
    variables: Tuple[str, ...]
    y_variables: Tuple[int, ...]
    gamma: Tuple[Tuple[MonomialCoefficient, ...], ...]
    action: Tuple[Substitution, ...]
    h_elements: Tuple[int, ...]
    h_commutators: Tuple[Tuple[Fraction, ...], ...]

    @property
    def size(self) -> int:
        return len(self.variables)

    @property
    def kernel(self) -> Tuple[int, ...]:
        """Symbols whose degree lies in the grading subgroup generated by the degrees of H"""
        S = self.grading_group
        closure = {0}
        frontier = [self.degree[h] for h in self.h_elements]
        while frontier:
            g = frontier.pop()
            if g in closure:
                continue
            closure.add(g)
            frontier.extend(S.mul(g, k) for k in list(closure))
        return tuple(g for g in range(self.G.order) if self.degree[g] in closure)

    def symbol_name(self, g: int) -> str:
        return self.G.name(g)

    # Symbol arithmetic on pairs (coefficient, g) meaning c * x_g

    def one(self) -> Tuple[MonomialCoefficient, int]:
        return MonomialCoefficient.one(self.size), 0

    def multiply(self, x: Tuple[MonomialCoefficient, int], y: Tuple[MonomialCoefficient, int]
                 ) -> Tuple[MonomialCoefficient, int]:
        (c1, g1), (c2, g2) = x, y
        return c1 * c2.act(self.action[g1]) * self.gamma[g1][g2], self.G.mul(g1, g2)

    def inverse(self, g: int) -> Tuple[MonomialCoefficient, int]:
        """x_g^-1 = g^-1(gamma(g, g^-1))^-1 x_{g^-1}"""
        g_inv = self.G.inverse(g)
        return self.gamma[g][g_inv].act(self.action[g_inv]).inverse(), g_inv

    def symbol(self, g: int) -> Tuple[MonomialCoefficient, int]:
        return MonomialCoefficient.one(self.size), g

    def e_component_rank(self) -> int:
        return sum(1 for g in self.degree if g == 0)


# Construction


def _variables(Q: FiniteGroup) -> Tuple[List[str], Dict[int, int], Dict[Tuple[int, int], int]]:
    names = [f"y[{Q.name(q)}]" for q in range(Q.order)]
    y_index = {q: q for q in range(Q.order)}
    z_index = {}
    for q in range(1, Q.order):
        for q2 in range(1, Q.order):
            z_index[(q, q2)] = len(names)
            names.append(f"z[{Q.name(q)},{Q.name(q2)}]")
    return names, y_index, z_index


def _generic_cocycle(Q: FiniteGroup, z_index: Dict[Tuple[int, int], int], size: int
                     ) -> List[List[Tuple[int, ...]]]:
    """Z(q, q') = z[q,q'], normalized so that Z(e, q) = Z(q, e) = 1"""
    table = []
    for q in range(Q.order):
        row = []
        for q2 in range(Q.order):
            vec = [0] * size
            if q and q2:
                vec[z_index[(q, q2)]] = 1
            row.append(tuple(vec))
        table.append(row)
    return table


def _cocycle_action(Q: FiniteGroup, q: int, z_index: Dict[Tuple[int, int], int]) -> Dict[int, Image]:
    """q.z[a,b] = z[qa,b] z[q,a] / z[q,ab] on the normalized pairs"""
    images = {}
    for (a, b), v in z_index.items():
        terms: Dict[int, int] = {}
        for pair, sign in (((Q.mul(q, a), b), 1), ((q, a), 1), ((q, Q.mul(a, b)), -1)):
            w = z_index.get(pair)
            if w is not None:
                terms[w] = terms.get(w, 0) + sign
        images[v] = tuple(sorted((w, e) for w, e in terms.items() if e))
    return images


class _CorrectionSystem:
    """Linear congruences for the outer-action corrections eps_q(h) and the root adjustment lambda(q, q')"""

    def __init__(self, ext: Extension, phi: Bicharacter, N: int):
        self.ext = ext
        self.N = N
        H, Q = ext.H, ext.Q
        self.elements = H.elements()
        self.add = [[H.index(H.add(x, y)) for y in self.elements] for x in self.elements]
        self.act = [[H.index(f.apply(x)) for x in self.elements] for f in ext.action]
        self.beta = [[H.index(ext.beta[q1][q2]) for q2 in range(Q.order)] for q1 in range(Q.order)]
        self.alpha = cocycle_from_bicharacter(phi, N).table
        scale = N // phi.n
        self.pairing = [[phi.value(x, y) * scale for y in self.elements] for x in self.elements]
        self.unknowns: Dict[Tuple, int] = {}
        for q in range(1, Q.order):
            for h in range(1, H.order):
                self.unknowns[('eps', q, h)] = len(self.unknowns)
        for q1 in range(1, Q.order):
            for q2 in range(1, Q.order):
                self.unknowns[('lam', q1, q2)] = len(self.unknowns)

    def _eps(self, q: int, h: int) -> Optional[int]:
        return self.unknowns.get(('eps', q, h))

    def _lam(self, q1: int, q2: int) -> Optional[int]:
        return self.unknowns.get(('lam', q1, q2))

    def equations(self) -> List[Tuple[Dict[int, int], int]]:
        Q = self.ext.Q
        nH = len(self.elements)
        a, add, act, beta, f = self.alpha, self.add, self.act, self.beta, self.pairing
        rows = []

        def emit(terms, rhs):
            row: Dict[int, int] = {}
            for var, coeff in terms:
                if var is not None:
                    row[var] = row.get(var, 0) + coeff
            rows.append(({k: v for k, v in row.items() if v}, rhs % self.N))

        # conjugation by s_q respects the H-multiplication
        for q in range(1, Q.order):
            for h1 in range(1, nH):
                for h2 in range(1, nH):
                    emit([(self._eps(q, h1), 1), (self._eps(q, h2), 1), (self._eps(q, add[h1][h2]), -1)],
                         a[h1][h2] - a[act[q][h1]][act[q][h2]])
        # conjugation by s_q s_q' agrees with conjugation by x_beta s_qq'
        for q1 in range(1, Q.order):
            for q2 in range(1, Q.order):
                q12 = Q.mul(q1, q2)
                for h in range(1, nH):
                    emit([(self._eps(q2, h), 1), (self._eps(q1, act[q2][h]), 1), (self._eps(q12, h), -1)],
                         f[beta[q1][q2]][act[q12][h]])
        # associativity of the section symbols
        for q1 in range(1, Q.order):
            for q2 in range(1, Q.order):
                q12 = Q.mul(q1, q2)
                for q3 in range(1, Q.order):
                    q23 = Q.mul(q2, q3)
                    b23 = beta[q2][q3]
                    b1_23 = beta[q1][q23]
                    b12 = beta[q1][q2]
                    b12_3 = beta[q12][q3]
                    emit([(self._lam(q2, q3), 1), (self._lam(q1, q23), 1), (self._lam(q12, q3), -1),
                          (self._lam(q1, q2), -1), (self._eps(q1, b23), 1)],
                         a[b12][b12_3] - a[act[q1][b23]][b1_23])
        return rows

    def solve(self) -> Optional[Dict[Tuple, int]]:
        rows = self.equations()
        if all(rhs == 0 for _, rhs in rows):
            return {key: 0 for key in self.unknowns}
        distinct = sorted({(tuple(sorted(row.items())), rhs) for row, rhs in rows})
        width = len(self.unknowns)
        if width == 0:
            return None
        A = []
        b = []
        for items, rhs in distinct:
            dense = [0] * width
            for var, coeff in items:
                dense[var] = coeff
            A.append(dense)
            b.append(rhs)
        solution = solve_mod(A, b, self.N)
        if solution is None:
            return None
        return {key: solution[i] for key, i in self.unknowns.items()}


def _root_orders(n_H: int) -> List[int]:
    candidates = []
    for N in (n_H, n_H ** 2, 2 * n_H ** 2, n_H ** 3):
        if N not in candidates:
            candidates.append(N)
    return candidates


def _assemble(ext: Extension, phi: Bicharacter, N: int, corrections: Dict[Tuple, int]) -> CrossedPresentation:
    H, Q = ext.H, ext.Q
    G = ext.G
    names, y_index, z_index = _variables(Q)
    size = len(names)
    Z = _generic_cocycle(Q, z_index, size)
    system = _CorrectionSystem(ext, phi, N)
    a, add, act, beta = system.alpha, system.add, system.act, system.beta

    def eps(q, h):
        return corrections.get(('eps', q, h), 0)

    def lam(q1, q2):
        return corrections.get(('lam', q1, q2), 0)

    nH = H.order
    gamma = []
    for g1 in range(G.order):
        q1, h1 = divmod(g1, nH)
        row = []
        for g2 in range(G.order):
            q2, h2 = divmod(g2, nH)
            moved = act[q1][h2]
            k = eps(q1, h2) + lam(q1, q2) + a[h1][moved] + a[add[h1][moved]][beta[q1][q2]]
            row.append(MonomialCoefficient(Fraction(k, N), Z[q1][q2]))
        gamma.append(tuple(row))

    by_q = []
    for q in range(Q.order):
        images: List[Image] = [()] * size
        for p, v in y_index.items():
            images[v] = ((y_index[Q.mul(q, p)], 1),)
        for v, image in _cocycle_action(Q, q, z_index).items():
            images[v] = image
        by_q.append(tuple(images))
    action = [by_q[g // nH] for g in range(G.order)]

    h_elements = tuple(range(nH))
    elements = H.elements()
    commutators = tuple(
        tuple(Fraction(phi.value(x, y), phi.n) for y in elements) for x in elements
    )
    return CrossedPresentation(
        G=G,
        grading_group=G,
        degree=tuple(range(G.order)),
        d=1,
        N=N,
        variables=tuple(names),
        y_variables=tuple(sorted(y_index.values())),
        gamma=tuple(gamma),
        action=tuple(action),
        h_elements=h_elements,
        h_commutators=commutators,
    )


def build_presentation(t: RealizableTriple, workers: int = 1) -> CrossedPresentation:
    """Presentation of a generic crossed product realizing the triple; Hilbert-twisted when d > 1"""
    ext, phi = t.ext, t.phi
    if phi.H != ext.H:
        raise ValidationError(f"bicharacter lives on {phi.H}, the extension kernel is {ext.H}")
    if not q_invariant(phi, ext):
        # the invariance failure shows up as a failed cocycle identity
        presentation = _assemble(ext, phi, phi.n, {})
        report = verify_presentation(presentation, workers)
        raise PresentationError('cocycle', "phi is not invariant under Q", report.witnesses.get('cocycle'))

    logger.info(f"Building crossed presentation for |G|={ext.G.order}, H={ext.H}, d={t.d}")
    presentation = None
    for N in _root_orders(phi.n):
        corrections = _CorrectionSystem(ext, phi, N).solve()
        if corrections is not None:
            logger.debug(f"Root corrections found with N={N}")
            presentation = _assemble(ext, phi, N, corrections)
            break
        logger.debug(f"No root corrections with N={N}")
    if presentation is None:
        raise ObstructionError(
            f"no monomial root corrections up to N={_root_orders(phi.n)[-1]}; "
            "the obstruction lies in the third cohomology of Q"
        )
    if t.d > 1:
        # roots are fractions of a turn, so raising the conductor changes no value
        presentation = replace(presentation, N=lcm(presentation.N, t.d))
        presentation = hilbert_twist(presentation, t.d)
    return presentation


def hilbert_twist(P: CrossedPresentation, d: int) -> CrossedPresentation:
    """Tensor with the symbol algebra (a, b)_d: symbols X^i Y^j x_g of degree deg(g).

    YX = zeta_d XY needs zeta_d among the roots, so the conductor N must be divisible by d.
    """
    if d < 1:
        raise ValidationError(f"symbol degree must be positive, got {d}")
    if P.d != 1:
        raise ValidationError("Hilbert twist expects a presentation built with d = 1")
    if d == 1:
        return P
    if P.N % d:
        raise ValidationError(f"conductor {P.N} is not divisible by the symbol degree {d}")
    base = P.G.order
    size = P.size + 2
    a_var, b_var = P.size, P.size + 1

    def split(g: int) -> Tuple[int, int, int]:
        rest, g0 = divmod(g, base)
        j, i = divmod(rest, d)
        return g0, i, j

    def join(g0: int, i: int, j: int) -> int:
        return g0 + base * (i + d * j)

    order = base * d * d
    table = []
    names = []
    for g in range(order):
        g0, i, j = split(g)
        names.append(f"X^{i}Y^{j}{P.G.name(g0)}" if (i or j) else P.G.name(g0))
        row = []
        for h in range(order):
            h0, i2, j2 = split(h)
            row.append(join(P.G.mul(g0, h0), (i + i2) % d, (j + j2) % d))
        table.append(tuple(row))
    G_hat = FiniteGroup(tuple(table), tuple(names))

    gamma = []
    for g in range(order):
        g0, i, j = split(g)
        row = []
        for h in range(order):
            h0, i2, j2 = split(h)
            laurent = list(P.gamma[g0][h0].laurent) + [0, 0]
            laurent[a_var] += (i + i2) // d
            laurent[b_var] += (j + j2) // d
            root = P.gamma[g0][h0].root + Fraction(j * i2, d)
            row.append(MonomialCoefficient(root, tuple(laurent)))
        gamma.append(tuple(row))

    action = []
    for g in range(order):
        g0, _, _ = split(g)
        action.append(P.action[g0] + (((a_var, 1),), ((b_var, 1),)))

    logger.info(f"Hilbert twist of degree {d}: {order} symbols")
    return CrossedPresentation(
        G=G_hat,
        grading_group=P.grading_group,
        degree=tuple(P.degree[split(g)[0]] for g in range(order)),
        d=d,
        N=P.N,
        variables=P.variables + ("a", "b"),
        y_variables=P.y_variables,
        gamma=tuple(gamma),
        action=tuple(action),
        h_elements=tuple(join(h, 0, 0) for h in P.h_elements),
        h_commutators=P.h_commutators,
    )


def trivial_presentation(N: int = 1) -> CrossedPresentation:
    """The field of coefficients itself with roots of order N, graded by the trivial group"""
    G = FiniteGroup(((0,),), ("e",))
    one = MonomialCoefficient.one(0)
    return CrossedPresentation(
        G=G, grading_group=G, degree=(0,), d=1, N=N, variables=(), y_variables=(),
        gamma=((one,),), action=(identity_substitution(0),), h_elements=(0,), h_commutators=((Fraction(0),),),
    )


def symbol_algebra(d: int) -> CrossedPresentation:
    """(a, b)_d: X^d = a, Y^d = b, YX = zeta_d XY"""
    return hilbert_twist(trivial_presentation(d), d)


# Verification


@dataclass
class VerificationReport:
    checks: Dict[str, bool]
    witnesses: Dict[str, Any] = field(default_factory=dict)
    kernel: Tuple[int, ...] = ()
    e_rank: int = 0

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def raise_for_failure(self):
        for name, passed in self.checks.items():
            if not passed:
                raise PresentationError(name, f"witness {self.witnesses.get(name)}", self.witnesses.get(name))


def _cocycle_row_violation(P: CrossedPresentation, g1: int) -> Optional[Tuple[int, int, int]]:
    G = P.G
    for g2 in range(G.order):
        g12 = G.mul(g1, g2)
        left_base = P.gamma[g1]
        for g3 in range(G.order):
            left = P.gamma[g2][g3].act(P.action[g1]) * left_base[G.mul(g2, g3)]
            right = P.gamma[g12][g3] * P.gamma[g1][g2]
            if left != right:
                return g1, g2, g3
    return None


def cocycle_violation(P: CrossedPresentation, workers: int = 1) -> Optional[Tuple[int, int, int]]:
    """Lowest triple breaking normalization or the twisted cocycle identity"""
    for g in range(P.G.order):
        if not P.gamma[0][g].is_one() or not P.gamma[g][0].is_one():
            return (0, g, 0) if not P.gamma[0][g].is_one() else (g, 0, 0)
    rows = range(P.G.order)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(lambda g: _cocycle_row_violation(P, g), rows))
    else:
        results = []
        for g in rows:
            results.append(_cocycle_row_violation(P, g))
            if results[-1] is not None:
                break
    return next((r for r in results if r is not None), None)


def action_kernel(P: CrossedPresentation) -> Tuple[int, ...]:
    """Symbols fixing every y-variable"""
    return tuple(
        g for g in range(P.G.order) if all(fixes_variable(P.action[g], v) for v in P.y_variables)
    )


def group_commutator(P: CrossedPresentation, g1: int, g2: int) -> Tuple[MonomialCoefficient, int]:
    x = P.multiply(P.symbol(g1), P.symbol(g2))
    x = P.multiply(x, P.inverse(g1))
    return P.multiply(x, P.inverse(g2))


def verify_presentation(P: CrossedPresentation, workers: int = 1) -> VerificationReport:
    """Cocycle identity, H-commutators, action kernel and closed-form inverses"""
    report = VerificationReport(checks={})

    witness = cocycle_violation(P, workers)
    report.checks['cocycle'] = witness is None
    if witness is not None:
        report.witnesses['cocycle'] = [P.G.name(g) for g in witness]

    report.checks['commutators'] = True
    for p, h1 in enumerate(P.h_elements):
        for q, h2 in enumerate(P.h_elements):
            coeff, g = group_commutator(P, h1, h2)
            expected = MonomialCoefficient(P.h_commutators[p][q], (0,) * P.size)
            if g != 0 or coeff != expected:
                report.checks['commutators'] = False
                report.witnesses['commutators'] = [P.G.name(h1), P.G.name(h2)]
                break
        if not report.checks['commutators']:
            break

    report.kernel = action_kernel(P)
    report.checks['kernel'] = set(report.kernel) == set(P.kernel)
    if not report.checks['kernel']:
        stray = sorted(set(report.kernel) ^ set(P.kernel))
        report.witnesses['kernel'] = P.G.name(stray[0])

    report.checks['inverses'] = True
    identity = P.one()
    for g in range(P.G.order):
        inv = P.inverse(g)
        if P.multiply(P.symbol(g), inv) != identity or P.multiply(inv, P.symbol(g)) != identity:
            report.checks['inverses'] = False
            report.witnesses['inverses'] = P.G.name(g)
            break

    report.e_rank = P.e_component_rank()
    if report.ok:
        logger.info(f"Presentation verified: {P.G.order} symbols, e-rank {report.e_rank}")
    else:
        failed = [name for name, ok in report.checks.items() if not ok]
        logger.warning(f"Presentation failed checks {failed}: {report.witnesses}")
    return report


def center_symbols(P: CrossedPresentation) -> List[int]:
    """Symbols commuting with every symbol and acting trivially on coefficients"""
    G = P.G
    central = []
    for g in range(G.order):
        if not all(fixes_variable(P.action[g], v) for v in range(P.size)):
            continue
        if all(
            G.mul(g, h) == G.mul(h, g) and P.gamma[g][h] == P.gamma[h][g].act(P.action[h])
            for h in range(G.order)
        ):
            central.append(g)
    return central


def h_sub_presentation(P: CrossedPresentation) -> GradedAlgebra:
    """The H-graded block of the presentation as an algebra over Q(zeta_N)"""
    pos = {h: p for p, h in enumerate(P.h_elements)}
    table = tuple(tuple(pos[P.G.mul(x, y)] for y in P.h_elements) for x in P.h_elements)
    H = FiniteGroup(table, tuple(P.G.name(h) for h in P.h_elements))
    products = {}
    for p, x in enumerate(P.h_elements):
        for q, y in enumerate(P.h_elements):
            coeff = P.gamma[x][y]
            if any(coeff.laurent):
                raise ValidationError("the H-block of gamma must consist of roots of unity", witness=(x, y))
            products[(p, q)] = {table[p][q]: zeta_power(P.N, coeff.root_exponent(P.N))}
    labels = tuple(f"x[{P.G.name(h)}]" for h in P.h_elements)
    return GradedAlgebra(H, P.N, tuple(range(len(P.h_elements))), products, {0: zeta_power(P.N, 0)}, labels)


def relations_text(P: CrossedPresentation) -> str:
    """Human-readable relations: H-commutation rules, then the nontrivial gamma values"""
    G = P.G
    lines = []
    for p, h1 in enumerate(P.h_elements):
        for q, h2 in enumerate(P.h_elements):
            if p < q and P.h_commutators[p][q]:
                root = MonomialCoefficient(P.h_commutators[p][q], (0,) * P.size).format(P.variables, P.N)
                lines.append(f"x[{G.name(h1)}]*x[{G.name(h2)}] = {root} * x[{G.name(h2)}]*x[{G.name(h1)}]")
    for g1 in range(G.order):
        for g2 in range(G.order):
            coeff = P.gamma[g1][g2]
            if not coeff.is_one():
                lines.append(
                    f"x[{G.name(g1)}]*x[{G.name(g2)}] = {coeff.format(P.variables, P.N)} * x[{G.name(G.mul(g1, g2))}]"
                )
    return "\n".join(lines) + ("\n" if lines else "")


def corrupt_gamma(P: CrossedPresentation, g1: int, g2: int, k: int = 1) -> CrossedPresentation:
    """Copy of P with gamma(g1, g2) multiplied by zeta_N^k; fault injection for verification"""
    gamma = [list(row) for row in P.gamma]
    gamma[g1][g2] = gamma[g1][g2] * MonomialCoefficient.root_of_unity(k, P.N, P.size)
    return CrossedPresentation(
        G=P.G, grading_group=P.grading_group, degree=P.degree, d=P.d, N=P.N, variables=P.variables,
        y_variables=P.y_variables, gamma=tuple(tuple(row) for row in gamma), action=P.action,
        h_elements=P.h_elements, h_commutators=P.h_commutators,
    )
