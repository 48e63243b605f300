"""
Exact arithmetic in Q(zeta_n) and linear algebra over it.

An element is a rational polynomial in zeta_n of degree < totient(n),
reduced modulo the n-th cyclotomic polynomial. Coefficients are Fractions,
so nothing is ever approximated. Reduction and inversion go through sympy
polynomials over QQ; matrices live in sympy's DomainMatrix over the
algebraic field QQ(zeta_n).
"""

import cmath
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import I, Poly, QQ, Symbol, cyclotomic_poly, exp, pi, totient
from sympy.polys.domains import Domain
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)

_x = Symbol('x')


@lru_cache(maxsize=None)
def _phi(n: int) -> Poly:
    if n < 1:
        raise ValueError(f"conductor must be positive, got {n}")
    return Poly(cyclotomic_poly(n, _x), _x, domain=QQ)


def cyclotomic_polynomial(n: int) -> Tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first"""
    return tuple(int(c) for c in reversed(_phi(n).all_coeffs()))


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return int(totient(n))


@lru_cache(maxsize=None)
def coefficient_field(n: int) -> Domain:
    """Q(zeta_n) as a sympy domain; QQ itself when zeta_n is rational"""
    if euler_phi(n) == 1:
        return QQ
    return QQ.algebraic_field(exp(2 * pi * I / n))


def _rational(c: Fraction):
    return QQ(c.numerator, c.denominator)


def _fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def _poly(coeffs: Sequence) -> Poly:
    return Poly([_rational(Fraction(c)) for c in reversed(coeffs)] or [QQ.zero], _x, domain=QQ)


def _power_basis(n: int, p: Poly) -> Tuple[Fraction, ...]:
    """Coefficients of a polynomial already reduced modulo Phi_n, padded to totient(n)"""
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())]
    return tuple(coeffs) + (Fraction(0),) * (euler_phi(n) - len(coeffs))


def _reduce(n: int, poly: Sequence) -> Tuple[Fraction, ...]:
    return _power_basis(n, _poly(poly).rem(_phi(n)))


Scalar = Union[int, Fraction, 'CyclotomicNumber']


@dataclass(frozen=True)
class CyclotomicNumber:
    """Element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^(phi(n)-1)"""

    n: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        degree = euler_phi(self.n)
        if len(coeffs) != degree:
            raise ValueError(f"element of Q(zeta_{self.n}) needs {degree} coefficients, got {len(coeffs)}")
        object.__setattr__(self, 'coeffs', coeffs)

    @classmethod
    def from_rational(cls, n: int, value) -> 'CyclotomicNumber':
        degree = euler_phi(n)
        return cls(n, (Fraction(value),) + (Fraction(0),) * (degree - 1))

    @classmethod
    def zero(cls, n: int) -> 'CyclotomicNumber':
        return cls.from_rational(n, 0)

    @classmethod
    def one(cls, n: int) -> 'CyclotomicNumber':
        return cls.from_rational(n, 1)

    @classmethod
    def from_field(cls, n: int, element) -> 'CyclotomicNumber':
        """From an element of coefficient_field(n)"""
        if coefficient_field(n).is_QQ:
            return cls.from_rational(n, _fraction(element))
        coeffs = [_fraction(c) for c in reversed(element.to_list())]
        return cls(n, tuple(coeffs) + (Fraction(0),) * (euler_phi(n) - len(coeffs)))

    def to_field(self):
        """The same number as an element of coefficient_field(n)"""
        K = coefficient_field(self.n)
        if K.is_QQ:
            return _rational(self.coeffs[0])
        return K([_rational(c) for c in reversed(self.coeffs)])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __bool__(self) -> bool:
        return not self.is_zero()

    def promote(self, m: int) -> 'CyclotomicNumber':
        """Same number viewed in Q(zeta_m) for a multiple m of n"""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"cannot embed Q(zeta_{self.n}) into Q(zeta_{m})")
        step = m // self.n
        poly = [Fraction(0)] * (step * len(self.coeffs))
        for i, c in enumerate(self.coeffs):
            poly[i * step] = c
        return CyclotomicNumber(m, _reduce(m, poly))

    def _coerce(self, other: Scalar) -> Tuple['CyclotomicNumber', 'CyclotomicNumber']:
        if isinstance(other, CyclotomicNumber):
            if other.n == self.n:
                return self, other
            m = lcm(self.n, other.n)
            return self.promote(m), other.promote(m)
        if isinstance(other, (int, Fraction)):
            return self, CyclotomicNumber.from_rational(self.n, other)
        return NotImplemented

    def __add__(self, other: Scalar) -> 'CyclotomicNumber':
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return CyclotomicNumber(a.n, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> 'CyclotomicNumber':
        return CyclotomicNumber(self.n, tuple(-c for c in self.coeffs))

    def __sub__(self, other: Scalar) -> 'CyclotomicNumber':
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return CyclotomicNumber(a.n, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other: Scalar) -> 'CyclotomicNumber':
        return (-self) + other

    def __mul__(self, other: Scalar) -> 'CyclotomicNumber':
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.n, tuple(c * other for c in self.coeffs))
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        if a.is_rational():
            return b * a.coeffs[0]
        if b.is_rational():
            return a * b.coeffs[0]
        return CyclotomicNumber(a.n, _power_basis(a.n, (_poly(a.coeffs) * _poly(b.coeffs)).rem(_phi(a.n))))

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> 'CyclotomicNumber':
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in a cyclotomic field")
            return CyclotomicNumber(self.n, tuple(c / other for c in self.coeffs))
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return a * invert(b)

    def __rtruediv__(self, other: Scalar) -> 'CyclotomicNumber':
        return invert(self) * other

    def __pow__(self, k: int) -> 'CyclotomicNumber':
        base = self if k >= 0 else invert(self)
        result = CyclotomicNumber.one(self.n)
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.from_rational(self.n, other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        if other.n != self.n:
            pair = self._coerce(other)
            return pair[0].coeffs == pair[1].coeffs
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.n, self.coeffs))

    def conj(self) -> 'CyclotomicNumber':
        """Image under zeta -> zeta^-1"""
        poly = [Fraction(0)] * self.n
        for i, c in enumerate(self.coeffs):
            poly[(-i) % self.n] += c
        return CyclotomicNumber(self.n, _reduce(self.n, poly))

    def to_complex(self) -> complex:
        """Floating-point value at zeta = exp(2*pi*i/n); for display only"""
        zeta = cmath.exp(2j * cmath.pi / self.n)
        return sum(float(c) * zeta ** i for i, c in enumerate(self.coeffs))

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                power = "z" if i == 1 else f"z^{i}"
                terms.append(power if c == 1 else f"-{power}" if c == -1 else f"{c}*{power}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def __repr__(self) -> str:
        return f"CyclotomicNumber({self.n}, {self})"


@lru_cache(maxsize=None)
def _zeta(n: int, k: int) -> CyclotomicNumber:
    return CyclotomicNumber(n, _reduce(n, [0] * k + [1]))


def zeta_power(n: int, j: int) -> CyclotomicNumber:
    """zeta_n^j reduced modulo Phi_n"""
    return _zeta(n, j % n)


def invert(x: CyclotomicNumber) -> CyclotomicNumber:
    """Inverse of x modulo Phi_n"""
    if x.is_zero():
        raise ZeroDivisionError("zero has no inverse in a cyclotomic field")
    if x.is_rational():
        return CyclotomicNumber.from_rational(x.n, 1 / x.coeffs[0])
    return CyclotomicNumber(x.n, _power_basis(x.n, _poly(x.coeffs).invert(_phi(x.n))))


def is_irreducible(coeffs: Sequence[CyclotomicNumber], n: int) -> bool:
    """Whether sum coeffs[i] x^i is irreducible over Q(zeta_n)"""
    K = coefficient_field(n)
    rep = [c.promote(n).to_field() for c in reversed(coeffs)]
    return Poly(rep, _x, domain=K).is_irreducible


# Linear algebra

Row = Dict[int, CyclotomicNumber]


@dataclass
class LinearSolution:
    """Solution set of A x = b: particular + span(nullspace), or inconsistent"""

    consistent: bool
    particular: Optional[List[CyclotomicNumber]]
    nullspace: List[List[CyclotomicNumber]]


def _domain_matrix(rows: List[Row], ncols: int, n: int) -> DomainMatrix:
    entries = {}
    for i, row in enumerate(rows):
        sparse = {j: v.promote(n).to_field() for j, v in row.items() if not v.is_zero()}
        if sparse:
            entries[i] = sparse
    return DomainMatrix(entries, (len(rows), ncols), coefficient_field(n))


def _to_sparse(A: Sequence[Sequence[Scalar]], n: int) -> List[Row]:
    rows = []
    for row in A:
        sparse = {}
        for j, v in enumerate(row):
            if not isinstance(v, CyclotomicNumber):
                v = CyclotomicNumber.from_rational(n, v)
            if not v.is_zero():
                sparse[j] = v.promote(n)
        rows.append(sparse)
    return rows


def _conductor(A: Sequence[Sequence[Scalar]], default: int = 1) -> int:
    n = default
    for row in A:
        for v in row:
            if isinstance(v, CyclotomicNumber):
                n = lcm(n, v.n)
    return n


def nullspace_sparse(rows: List[Row], ncols: int, n: int) -> List[List[CyclotomicNumber]]:
    """Basis of {x : row . x = 0 for every row}"""
    if not any(rows):
        return [[CyclotomicNumber.from_rational(n, int(i == j)) for j in range(ncols)] for i in range(ncols)]
    basis = _domain_matrix(rows, ncols, n).nullspace().to_dense().to_list()
    return [[CyclotomicNumber.from_field(n, v) for v in vector] for vector in basis]


def rank_sparse(rows: List[Row], ncols: int, n: Optional[int] = None) -> int:
    if not any(rows):
        return 0
    n = n or _conductor([list(row.values()) for row in rows])
    return _domain_matrix(rows, ncols, n).rank()


def nullspace(A: Sequence[Sequence[Scalar]], n: Optional[int] = None) -> List[List[CyclotomicNumber]]:
    ncols = len(A[0]) if A else 0
    n = n or _conductor(A)
    return nullspace_sparse(_to_sparse(A, n), ncols, n)


def matrix_rank(A: Sequence[Sequence[Scalar]], n: Optional[int] = None) -> int:
    ncols = len(A[0]) if A else 0
    n = n or _conductor(A)
    return rank_sparse(_to_sparse(A, n), ncols, n)


def solve_linear_system(A: Sequence[Sequence[Scalar]], b: Sequence[Scalar],
                        n: Optional[int] = None) -> LinearSolution:
    """Exact solution set of A x = b over Q(zeta_n)"""
    ncols = len(A[0]) if A else 0
    n = n or _conductor(list(A) + [list(b)])
    augmented = [list(row) + [rhs] for row, rhs in zip(A, b)]
    reduced, pivots = _domain_matrix(_to_sparse(augmented, n), ncols + 1, n).rref()
    if ncols in pivots:
        logger.debug("Linear system is inconsistent")
        return LinearSolution(False, None, [])
    particular = [CyclotomicNumber.zero(n) for _ in range(ncols)]
    entries = reduced.to_dod()
    for i, col in enumerate(pivots):
        value = entries.get(i, {}).get(ncols)
        if value is not None:
            particular[col] = CyclotomicNumber.from_field(n, value)
    return LinearSolution(True, particular, nullspace(A, n) if A else [])
