"""Exact spectral arithmetic for graphs.

Characteristic polynomials are computed with the division-free Berkowitz
recurrence.  Since it uses only ring operations, running it in wrapping
int64 arithmetic returns every coefficient modulo 2**64, which is the true
value whenever the eigenvalue bound guarantees |c_k| < 2**62.  Larger
cases fall back to Python integers.

Root counting in rational intervals uses Sturm chains on the square-free
factors of Yun's decomposition.  For integer thresholds on adjacency
spectra there is a faster exact route: det(xI - (A - kI)) is real-rooted,
so Descartes' rule of signs counts its positive roots exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Sequence

import numba as nb
import numpy as np

from .graph_core import Graph, is_bipartite

Rational = Fraction | int


# polynomials --------------------------------------------------------------

@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, constant term first; the zero polynomial is ()."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPoly":
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> int:
        return self.coeffs[-1]

    def __call__(self, x: Rational) -> Rational:
        acc: Rational = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Rational) -> int:
        """Exact sign of p(x), with integer arithmetic only."""
        x = Fraction(x)
        a, b = x.numerator, x.denominator
        # b**d * p(a/b) = sum c_i a^i b^(d-i), a homogenised Horner scheme
        acc = 0
        bp = 1
        for c in reversed(self.coeffs):
            acc = acc * a + c * bp
            bp *= b
        return (acc > 0) - (acc < 0)

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPoly(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly | int") -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        out = IntPoly((1,))
        for _ in range(k):
            out = out * self
        return out

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> "IntPoly":
        """Divide by the content, keeping the leading coefficient positive."""
        if self.is_zero():
            return self
        g = self.content()
        if self.lead() < 0:
            g = -g
        return IntPoly(tuple(c // g for c in self.coeffs))

    def divmod(self, other: "IntPoly") -> tuple[list[Fraction], list[Fraction]]:
        """Quotient and remainder over Q, as Fraction lists (constant first)."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        return _divmod_q([Fraction(c) for c in self.coeffs], [Fraction(c) for c in other.coeffs])

    def exact_div(self, other: "IntPoly") -> "IntPoly":
        q, r = self.divmod(other)
        if any(r) or any(x.denominator != 1 for x in q):
            raise ValueError("polynomial division is not exact over Z")
        return IntPoly(tuple(int(x) for x in q))

    def substitute_neg(self) -> "IntPoly":
        """p(-x)."""
        return IntPoly(tuple(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)))

    def shift(self, q: int) -> "IntPoly":
        """p(x + q) for integer q (Taylor shift)."""
        out = IntPoly(())
        base = IntPoly((q, 1))
        for c in reversed(self.coeffs):
            out = out * base + IntPoly((c,))
        return out

    def __str__(self) -> str:
        return " ".join(str(c) for c in self.coeffs)


def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _divmod_q(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a, b = _trim(list(a)), _trim(list(b))
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lb = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] / lb
        q[k] = f
        for i, y in enumerate(b):
            a[i + k] -= f * y
        a.pop()
        _trim(a)
    return q, a


def _to_primitive(c: Sequence[Fraction]) -> IntPoly:
    c = _trim(list(c))
    if not c:
        return IntPoly(())
    den = 1
    for x in c:
        den = den * x.denominator // gcd(den, x.denominator)
    return IntPoly(tuple(int(x * den) for x in c)).primitive()


def poly_gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """Primitive gcd over Q[x] (positive leading coefficient)."""
    a = [Fraction(c) for c in p.coeffs]
    b = [Fraction(c) for c in q.coeffs]
    while _trim(b):
        _, r = _divmod_q(a, b)
        a, b = b, _to_primitive(r).coeffs
        b = [Fraction(c) for c in b]
    return _to_primitive(a)


def squarefree_decomposition(p: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun's algorithm: p = c * prod f_i^i with each f_i square-free, coprime."""
    if p.degree < 1:
        return []
    out = []
    a0 = p.primitive()
    b = poly_gcd(a0, a0.derivative())
    c = a0.exact_div(b) if b.degree > 0 else a0
    d = a0.derivative().exact_div(b) - c.derivative() if b.degree > 0 else a0.derivative() - c.derivative()
    i = 1
    while c.degree > 0:
        a = poly_gcd(c, d)
        if a.degree > 0:
            out.append((a, i))
        c_new = c.exact_div(a)
        d = d.exact_div(a) - c_new.derivative() if a.degree > 0 else d - c_new.derivative()
        c = c_new
        i += 1
    return out


def squarefree_part(p: IntPoly) -> IntPoly:
    g = poly_gcd(p, p.derivative())
    return p.primitive().exact_div(g) if g.degree > 0 else p.primitive()


# Sturm sequences ----------------------------------------------------------

def sturm_chain(p: IntPoly) -> list[IntPoly]:
    """Sturm chain p, p', -rem, ... rescaled by positive constants only."""
    chain = [p, p.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        _, r = chain[-2].divmod(chain[-1])
        r = _trim(r)
        if not r:
            break
        den = 1
        for x in r:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [-int(x * den) for x in r]
        g = 0
        for x in ints:
            g = gcd(g, x)
        chain.append(IntPoly(tuple(x // g for x in ints)))
    return [c for c in chain if not c.is_zero()]


def _variations(values: Iterable[int]) -> int:
    """Sign variations of a sequence, zeros skipped."""
    v, prev = 0, 0
    for x in values:
        s = (x > 0) - (x < 0)
        if s:
            if prev and s != prev:
                v += 1
            prev = s
    return v


def _var_at(chain: list[IntPoly], x: Rational) -> int:
    return _variations(c.sign_at(x) for c in chain)


def _var_at_inf(chain: list[IntPoly], sign: int) -> int:
    out = []
    for c in chain:
        s = (c.lead() > 0) - (c.lead() < 0)
        out.append(s if sign > 0 or c.degree % 2 == 0 else -s)
    return _variations(out)


def _distinct_above(f: IntPoly, q: Rational) -> int:
    if f.degree < 1:
        return 0
    ch = sturm_chain(f)
    return _var_at(ch, q) - _var_at_inf(ch, 1)


def _distinct_below(f: IntPoly, q: Rational) -> int:
    if f.degree < 1:
        return 0
    ch = sturm_chain(f)
    root = 1 if f.sign_at(q) == 0 else 0
    return _var_at_inf(ch, -1) - _var_at(ch, q) - root


def count_roots_above(p: IntPoly, q: Rational) -> int:
    """Real roots of p strictly greater than q, counted with multiplicity."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    return sum(m * _distinct_above(f, q) for f, m in squarefree_decomposition(p))


def count_roots_below(p: IntPoly, q: Rational) -> int:
    """Real roots of p strictly less than q, counted with multiplicity."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    return sum(m * _distinct_below(f, q) for f, m in squarefree_decomposition(p))


def root_multiplicity(p: IntPoly, q: Rational) -> int:
    if p.is_zero():
        raise ValueError("zero polynomial")
    return sum(m for f, m in squarefree_decomposition(p) if f.sign_at(q) == 0)


def count_real_roots(p: IntPoly) -> int:
    return sum(m * (_var_at_inf(sturm_chain(f), -1) - _var_at_inf(sturm_chain(f), 1))
               for f, m in squarefree_decomposition(p))


# enclosures ---------------------------------------------------------------

@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __str__(self) -> str:
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"


def _cauchy_bound(p: IntPoly) -> int:
    lc = abs(p.lead())
    m = max((abs(c) for c in p.coeffs[:-1]), default=0)
    return 1 + -(-m // lc)


def _bisect_single(p: IntPoly, lo: Fraction, hi: Fraction, tol: Fraction) -> RationalInterval:
    """Shrink (lo, hi] around the only root of p there, a sign-changing one.

    p(hi) must be nonzero; p(lo) is never evaluated.
    """
    s_hi = p.sign_at(hi)
    if s_hi == 0:
        raise ValueError("upper bracket is a root")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        s = p.sign_at(mid)
        if s == 0:
            return RationalInterval(mid, mid)
        if s == s_hi:
            hi = mid
        else:
            lo = mid
    return RationalInterval(lo, hi)


def largest_root_enclosure(p: IntPoly, tol: Rational) -> RationalInterval:
    """Interval of width <= tol holding the largest real root of p."""
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    f = squarefree_part(p)
    if f.degree < 1 or count_real_roots(f) == 0:
        raise ValueError("polynomial has no real root")
    chain = sturm_chain(f)
    top = _var_at_inf(chain, 1)
    b = _cauchy_bound(f)
    lo, hi = Fraction(-b - 1), Fraction(b)
    # isolate: keep exactly the largest root in (lo, hi]
    while _var_at(chain, lo) - top > 1:
        mid = (lo + hi) / 2
        if _var_at(chain, mid) - top >= 1:
            lo = mid
        else:
            hi = mid
    if f.sign_at(hi) == 0:
        return RationalInterval(hi, hi)
    return _bisect_single(f, lo, hi, tol)


def integer_largest_root(p: IntPoly, upper_bound: int) -> int | None:
    """k if the largest real root of p is the integer k (k <= upper_bound)."""
    if p.is_zero():
        return None
    for k in range(upper_bound, -upper_bound - 2, -1):
        if p.sign_at(k) == 0:
            return k if count_roots_above(p, k) == 0 else None
    return None


# graph polynomials --------------------------------------------------------

@nb.njit(cache=True)
def _berkowitz_i64(b):
    """Coefficients of det(xI - b), highest degree first, in wrapping int64."""
    n = b.shape[0]
    c = np.zeros(n + 1, np.int64)
    c[0] = 1
    if n == 0:
        return c
    c[1] = -b[0, 0]
    for k in range(1, n):
        t = np.zeros(k + 2, np.int64)
        t[0] = 1
        t[1] = -b[k, k]
        v = np.empty(k, np.int64)
        for i in range(k):
            v[i] = b[i, k]
        for j in range(k):
            s = 0
            for i in range(k):
                s += b[k, i] * v[i]
            t[j + 2] = -s
            w = np.zeros(k, np.int64)
            for i in range(k):
                acc = 0
                for l in range(k):
                    acc += b[i, l] * v[l]
                w[i] = acc
            v = w
        newc = np.zeros(n + 1, np.int64)
        for i in range(k + 2):
            acc = 0
            for j in range(min(i, k) + 1):
                acc += t[i - j] * c[j]
            newc[i] = acc
        c = newc
    return c


@nb.njit(cache=True)
def sign_changes_i64(c):
    ch = 0
    prev = 0
    for i in range(c.shape[0]):
        if c[i] != 0:
            s = 1 if c[i] > 0 else -1
            if prev != 0 and s != prev:
                ch += 1
            prev = s
    return ch


@nb.njit(cache=True)
def positive_eigs_i64(b):
    """Positive eigenvalues of the symmetric integer matrix b (Descartes)."""
    return sign_changes_i64(_berkowitz_i64(b))


def _berkowitz_py(b: Sequence[Sequence[int]]) -> list[int]:
    """Same recurrence over Python integers; highest degree first."""
    n = len(b)
    c = [1]
    if n == 0:
        return c
    c = [1, -b[0][0]]
    for k in range(1, n):
        t = [1, -b[k][k]]
        v = [b[i][k] for i in range(k)]
        for _ in range(k):
            t.append(-sum(b[k][i] * v[i] for i in range(k)))
            v = [sum(b[i][l] * v[l] for l in range(k)) for i in range(k)]
        c = [sum(t[i - j] * c[j] for j in range(max(0, i - k - 1), min(i, k) + 1)) for i in range(k + 2)]
    return c


def _fits_i64(n: int, radius: int) -> bool:
    """|e_k| <= C(n,k) radius^k < 2^62 for every k."""
    return all(comb(n, k) * radius ** k < 2 ** 62 for k in range(n + 1))


def shifted_charpoly_coeffs(g: Graph, shift: int = 0, negate: bool = False) -> list[int]:
    """Coefficients (highest first) of det(xI - B), B = (+-A) - shift*I."""
    a = g.adjacency_matrix()
    if negate:
        a = -a
    b = a - shift * np.eye(g.n, dtype=np.int64)
    radius = max(g.degrees(), default=0) + abs(shift)
    if _fits_i64(g.n, radius):
        return [int(x) for x in _berkowitz_i64(b)]
    return _berkowitz_py(b.tolist())


def char_poly(g: Graph) -> IntPoly:
    """det(xI - A) as an exact monic integer polynomial."""
    return IntPoly(tuple(reversed(shifted_charpoly_coeffs(g))))


def eig_count_above(g: Graph, k: int) -> int:
    """Eigenvalues of g strictly greater than the integer k (exact)."""
    return _variations(x for x in shifted_charpoly_coeffs(g, k))


def eig_count_below(g: Graph, k: int) -> int:
    """Eigenvalues of g strictly less than the integer k (exact)."""
    return _variations(x for x in shifted_charpoly_coeffs(g, -k, negate=True))


def reciprocal_poly(g: Graph, force_nonbipartite: bool = False) -> IntPoly:
    """R_G: z^n chi(z + 1/z), or z^(n/2) chi(sqrt z + 1/sqrt z) if bipartite."""
    chi = char_poly(g)
    n = g.n
    c = chi.coeffs
    z1 = IntPoly((1, 0, 1))  # z^2 + 1
    out = IntPoly(())
    if force_nonbipartite or is_bipartite(g) is None:
        for k, ck in enumerate(c):
            if ck:
                out = out + IntPoly((0,) * (n - k) + (ck,)) * z1 ** k
        return out
    zp1 = IntPoly((1, 1))
    for k, ck in enumerate(c):
        if ck:
            if (n - k) % 2:
                raise AssertionError("odd term in the characteristic polynomial of a bipartite graph")
            j = (n - k) // 2
            out = out + IntPoly((0,) * j + (ck,)) * zp1 ** k
    return out


def even_part(chi: IntPoly) -> tuple[int, IntPoly]:
    """Split chi(x) = x^a p(x^2); returns (a, p)."""
    c = chi.coeffs
    a = 0
    while a < len(c) and c[a] == 0:
        a += 1
    if any(c[i] for i in range(a, len(c)) if (i - a) % 2):
        raise ValueError("polynomial is not x^a times an even polynomial")
    return a, IntPoly(tuple(c[a::2]))


def _salem_spectrum(g: Graph) -> bool:
    if eig_count_above(g, 2) != 1:
        return False
    return is_bipartite(g) is not None or eig_count_below(g, -2) == 0


def lambda1_enclosure(g: Graph, tol: Rational) -> RationalInterval:
    """Enclosure of the largest eigenvalue.

    Uses the single sign change on (2, n] when exactly one eigenvalue
    exceeds 2, otherwise the general Sturm isolation.
    """
    tol = Fraction(tol)
    chi = char_poly(g)
    if g.n >= 3 and eig_count_above(g, 2) == 1:
        return _bisect_single(chi, Fraction(2), Fraction(g.n), tol)
    return largest_root_enclosure(chi, tol)


def compute_tau(g: Graph, tol: Rational) -> RationalInterval:
    """Enclosure of tau(G), the largest root of R_G, for a Salem graph."""
    tol = Fraction(tol)
    if not _salem_spectrum(g):
        raise ValueError("graph is not Salem")
    lam = lambda1_enclosure(g, Fraction(1, 2))
    r = reciprocal_poly(g)
    hi = lam.hi ** 2 if is_bipartite(g) is not None else lam.hi
    # tau is the only root of R_G above 1, and it is simple
    return _bisect_single(r, Fraction(1), Fraction(hi), tol)


def cyclotomic_poly(m: int) -> IntPoly:
    """The m-th cyclotomic polynomial."""
    p = IntPoly((-1,) + (0,) * (m - 1) + (1,))
    for d in range(1, m):
        if m % d == 0:
            p = p.exact_div(cyclotomic_poly(d))
    return p


def det_bareiss(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free Gaussian elimination determinant."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
