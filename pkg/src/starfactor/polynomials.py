"""Exact integer polynomials and the closed forms used by the identity and bound checks.

Everything here is evaluated in exact integer / ``Fraction`` arithmetic.
Floating point appears only in the returned root approximations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from .errors import GraphError, NoSignChangeError
from .graph import ceil_div, g2_independent_size

ROOT_REL_TOL = 1e-10


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with exact integer coefficients, lowest degree first."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        cs = list(self.coeffs)
        for c in cs:
            if isinstance(c, bool) or not isinstance(c, int):
                if isinstance(c, Rational) and c.denominator == 1:
                    continue
                raise TypeError(f"coefficient {c!r} is not an integer")
        cs = [int(c) for c in cs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def x(cls) -> IntPolynomial:
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _lift(self, other) -> IntPolynomial:
        return other if isinstance(other, IntPolynomial) else IntPolynomial((other,))

    def __add__(self, other):
        other = self._lift(other)
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (size - len(self.coeffs))
        b = other.coeffs + (0,) * (size - len(other.coeffs))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def to_json(self) -> str:
        # Integers beyond double precision go out as decimal strings.
        return json.dumps([c if abs(c) < 2**53 else str(c) for c in self.coeffs])

    @classmethod
    def from_json(cls, text: str) -> IntPolynomial:
        return cls(tuple(int(c) for c in json.loads(text)))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            body = {0: f"{mag}", 1: "x" if mag == 1 else f"{mag}x"}.get(k, f"x^{k}" if mag == 1 else f"{mag}x^{k}")
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        text = ("-" if sign == "-" else "") + body
        return text + "".join(f" {s} {t}" for s, t in terms[1:])


def charpoly(matrix: Sequence[Sequence]) -> IntPolynomial:
    """``det(xI - M)`` by the Faddeev-LeVerrier recurrence in exact arithmetic.

    Raises ``TypeError`` if a coefficient turns out non-integral.
    """
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prod = [[sum(a[r][t] * mk[t][c] for t in range(n)) for c in range(n)] for r in range(n)]
        for r in range(n):
            prod[r][r] += coeffs[n - k + 1]
        mk = prod
        trace = sum(sum(a[r][t] * mk[t][r] for t in range(n)) for r in range(n))
        coeffs[n - k] = -trace / k
    return IntPolynomial(tuple(coeffs))


# --- characteristic polynomials of the extremal quotient matrices ---


def _check_three_block(n: int, m: int, t: int) -> None:
    if m * t - 1 < 1 or n - (m + 1) * t + 1 < 1 or t < 1:
        raise GraphError(f"invalid three-block parameters (n={n}, m={m}, t={t})")


def _three_block_cubic(n: int, m: int, t: int) -> IntPolynomial:
    return IntPolynomial(
        (
            -m * (m + 1) * t**3 + (m * n + 5 * m + 3) * t**2 - (3 * n + 4) * t - 2 * n + 2,
            (3 * m + 2) * t**2 - (2 * n + 4) * t - 3 * n + 5,
            -(t + n - 4),
            1,
        )
    )


def phi_b_star(n: int, m: int, b: int) -> IntPolynomial:
    """Characteristic polynomial of the distance quotient matrix of the extremal graph."""
    _check_three_block(n, m, b)
    return _three_block_cubic(n, m, b)


def phi_b1(n: int, m: int, i: int) -> IntPolynomial:
    _check_three_block(n, m, i)
    return _three_block_cubic(n, m, i)


def phi_b2(n: int, m: int) -> IntPolynomial:
    if n < m + 2:
        raise GraphError(f"G2 needs n >= m + 2, got n={n}, m={m}")
    c = g2_independent_size(n, m)
    return IntPolynomial((n * c - c * c - 2 * n + 2, -(n + c - 3), 1))


def three_block_distance_quotient(n: int, m: int, t: int) -> list[list[int]]:
    """Closed-form distance quotient matrix of ``K_{mt-1} v (K_{n-(m+1)t+1} u tK_1)``."""
    _check_three_block(n, m, t)
    return [
        [m * t - 2, n - (m + 1) * t + 1, t],
        [m * t - 1, n - (m + 1) * t, 2 * t],
        [m * t - 1, 2 * n - (2 * m + 2) * t + 2, 2 * t - 2],
    ]


def g2_distance_quotient(n: int, m: int) -> list[list[int]]:
    c = g2_independent_size(n, m)
    return [[n - c - 1, c], [n - c, 2 * c - 2]]


# --- auxiliary functions of the bound chains ---


def aux_f(n: int, m: int, i):
    """``2e(G_1) - n + 1`` as a function of the isolated count ``i``."""
    return (2 * m + 1) * i * i - (2 * n + 1) * i + n * n - 2 * n + 1


def aux_g(n: int, m: int, i):
    """``(n - 1) * (2e(G_1)/(n - 1) + n - 2)`` as a function of ``i``."""
    return (2 * m + 1) * i * i - (2 * n + 1) * i + 2 * n * n - 4 * n + 2


def aux_h(n: int, m: int) -> Fraction:
    r = Fraction(n + 1, m + 1)
    return (n - r) * (n + r) - n + 1


def f_drop_closed_form(n: int, m: int, b: int) -> Fraction:
    """Closed form of ``f(b+1) - f(n/(m+1))``; the same expression holds for ``g``."""
    return Fraction((n - m * b - m - b - 1) * (n - (2 * b + 2) * m * m - (3 * b + 2) * m - b), (m + 1) ** 2)


def beta_poly(n: int, m: int, b: int, i: int) -> IntPolynomial:
    """Quotient ``(phi_B1 - phi_B*) / (i - b)`` as a quadratic in x."""
    return IntPolynomial(
        (
            -m * (m + 1) * i * i
            + (m * n - b * m * m - b * m + 5 * m + 3) * i
            - m * (m + 1) * b * b
            + (m * n + 5 * m + 3) * b
            - 3 * n
            - 4,
            (3 * m + 2) * i + (3 * m + 2) * b - 2 * n - 4,
            -1,
        )
    )


def gamma_eval(n: int, m: int, b: int, i):
    """``beta(n + 2b - 2)`` rewritten as a quadratic in ``i``; exact for int or Fraction ``i``."""
    return (
        -m * (m + 1) * i * i
        + (4 * m * n + 2 * n - b * m * m + 5 * b * m - m + 4 * b - 1) * i
        - 3 * n * n
        + (4 * m * b - 6 * b + 1) * n
        - m * m * b * b
        + 5 * m * b * b
        - m * b
        - b
    )


def gamma_at_isolated_max(n: int, m: int, b: int) -> Fraction:
    """Closed form of ``gamma(n/(m+1))``."""
    return Fraction(
        -n * n
        + (3 * m * m * b + 3 * m * b - 2 * b) * n
        - m**3 * b * b
        + 4 * m * m * b * b
        - m * m * b
        + 5 * m * b * b
        - 2 * m * b
        - b,
        m + 1,
    )


def phi_b_star_at_upper(n: int, m: int, b: int) -> int:
    """Closed form of ``phi_B*(n + 3b - 1)``."""
    return (4 * m + 8) * b * b * n + (-m * m + 8 * m + 24) * b**3 + (2 * m + 4) * b * b - b


def phi_b2_at_upper(n: int, m: int, b: int) -> int:
    """Closed form of ``phi_B2(n + 3b - 1)``."""
    c = ceil_div(n + 1, m + 1)
    return 3 * b * n - (3 * b - 1) * c - c * c + 9 * b * b + 3 * b


# --- certified largest-root extraction ---


def _frac_poly(p: IntPolynomial) -> list[Fraction]:
    return [Fraction(c) for c in p.coeffs]


def _trim(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) >= len(b) and a:
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        for k, c in enumerate(b):
            a[shift + k] -= factor * c
        a.pop()
        _trim(a)
    return a


def sturm_chain(p: IntPolynomial) -> list[list[Fraction]]:
    p0 = _frac_poly(p)
    p1 = _frac_poly(p.derivative())
    chain = [p0]
    while p1:
        chain.append(p1)
        p0, p1 = p1, [-c for c in _rem(p0, p1)]
    return chain


def _eval(a: list[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _changes_at(chain, x) -> int:
    return _sign_changes([_eval(q, x) for q in chain])


def _changes_at_infinity(chain, positive: bool) -> int:
    vals = []
    for q in chain:
        deg = len(q) - 1
        lead = q[-1]
        vals.append(lead if positive or deg % 2 == 0 else -lead)
    return _sign_changes(vals)


def count_roots_above(p: IntPolynomial, x, chain=None) -> int:
    """Number of distinct real roots of ``p`` in ``(x, inf)`` (Sturm's theorem)."""
    chain = chain or sturm_chain(p)
    return _changes_at(chain, Fraction(x)) - _changes_at_infinity(chain, True)


def count_real_roots(p: IntPolynomial, chain=None) -> int:
    chain = chain or sturm_chain(p)
    return _changes_at_infinity(chain, False) - _changes_at_infinity(chain, True)


def cauchy_bound(p: IntPolynomial) -> Fraction:
    lead = abs(p.leading)
    return 1 + max((Fraction(abs(c), lead) for c in p.coeffs[:-1]), default=Fraction(0))


@dataclass(frozen=True)
class RootBracket:
    lo: float
    hi: float
    root: float


def largest_real_root(
    p: IntPolynomial, bracket_hint: tuple | None = None, rel_tol: float = ROOT_REL_TOL
) -> RootBracket:
    """Bisection-refined largest real root of ``p``.

    Sturm counts certify that the bracket holds the largest root; the hint
    is widened (upward, then downward) when it does not.
    """
    if p.degree < 1:
        raise NoSignChangeError("constant polynomial has no roots")
    chain = sturm_chain(p)
    if count_real_roots(p, chain) == 0:
        raise NoSignChangeError(f"{p} has no real roots")
    bound = cauchy_bound(p)
    if bracket_hint is None:
        lo, hi = -bound, bound
    else:
        lo, hi = Fraction(bracket_hint[0]), Fraction(bracket_hint[1])
        if lo >= hi:
            raise ValueError("bracket hint must satisfy lo < hi")

    def above(x):
        return count_roots_above(p, x, chain)

    if above(hi) > 0:
        lo = hi
        step = max(Fraction(1), abs(hi))
        while above(hi) > 0:
            lo, hi = hi, min(hi + step, bound)
            step *= 2
    if above(lo) == 0:
        step = max(Fraction(1), abs(lo))
        while above(lo) == 0:
            if lo <= -bound:
                raise NoSignChangeError("no real root found below the hint")
            hi, lo = lo, max(lo - step, -bound)
            step *= 2

    while hi - lo > rel_tol * max(1.0, abs(float(lo))):
        mid = (lo + hi) / 2
        if above(mid) > 0:
            lo = mid
        else:
            hi = mid
    if p(hi) == 0:
        return RootBracket(float(hi), float(hi), float(hi))
    return RootBracket(float(lo), float(hi), float((lo + hi) / 2))


def phi_b_star_bracket(n: int, b: int) -> tuple[int, int]:
    """Default bracket ``[n - b - 2, n + 3b - 1]`` for the extremal cubic's largest root."""
    return n - b - 2, n + 3 * b - 1
