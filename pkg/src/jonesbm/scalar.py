"""Scalars: exact elements of cyclotomic fields and tolerance-tagged complex floats.

Exact elements of Q(zeta_m) are stored in the power basis modulo the m-th
cyclotomic polynomial, so two elements of the same conductor are equal iff
their coefficient vectors are equal.  Operands of different conductors are
lifted to the lcm of the conductors first.  Rational elements are always
stored with conductor 1.

Both scalar classes share one small protocol: the arithmetic operators,
``is_zero()``, ``inv()``, ``to_complex()`` and ``backend``.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq

__all__ = [
    "Backend",
    "EXACT",
    "Cyc",
    "FloatScalar",
    "ParseError",
    "parse_scalar",
    "zeta",
    "sqrt_int",
    "sqrt_exact",
    "float_backend",
]

DEFAULT_EPS = 1e-9


@dataclass(frozen=True)
class Backend:
    """Arithmetic backend tag: ``exact`` (cyclotomic) or ``float`` (complex with tolerance)."""

    name: str
    eps: float = DEFAULT_EPS

    @property
    def exact(self) -> bool:
        return self.name == "exact"

    def scalar(self, x):
        """Coerce an int, Fraction, mpq, complex or scalar into this backend."""
        if self.exact:
            if isinstance(x, Cyc):
                return x
            if isinstance(x, FloatScalar):
                raise TypeError("cannot coerce a float scalar into the exact backend")
            return Cyc.rational(x)
        if isinstance(x, FloatScalar):
            return x if x.eps == self.eps else FloatScalar(x.z, self.eps)
        if isinstance(x, Cyc):
            return FloatScalar(x.to_complex(), self.eps)
        return FloatScalar(complex(x), self.eps)

    def zero(self):
        return self.scalar(0)

    def one(self):
        return self.scalar(1)


EXACT = Backend("exact", 0.0)


def float_backend(eps: float = DEFAULT_EPS) -> Backend:
    if not eps > 0:
        raise ValueError("float tolerance must be positive")
    return Backend("float", eps)


# ---------------------------------------------------------------------------
# cyclotomic tables


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den monic
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for k in range(len(out) - 1, -1, -1):
        q = num[k + dn]
        out[k] = q
        if q:
            for t, v in enumerate(den):
                num[k + t] -= q * v
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, lowest degree first."""
    if m < 1:
        raise ValueError("conductor must be positive")
    p = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            p = _poly_divexact(p, list(cyclotomic_poly(d)))
    return tuple(p)


@lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Sparse reductions of x^e modulo Phi_m for e = 0..m-1."""
    phi_poly = cyclotomic_poly(m)
    phi = len(phi_poly) - 1
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(m):
        rows.append(tuple((t, v) for t, v in enumerate(cur) if v))
        # multiply by x and reduce
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for t in range(phi):
                cur[t] -= top * phi_poly[t]
    return tuple(rows)


@lru_cache(maxsize=None)
def _trace_weights(m: int) -> tuple[mpq, ...]:
    # Tr(zeta_m^k) / phi(m); invariant under conductor lifting, used for hashing
    phi = euler_phi(m)
    out = []
    for k in range(phi):
        z = sum(cmath.exp(2j * math.pi * k * a / m) for a in range(1, m + 1) if math.gcd(a, m) == 1)
        out.append(mpq(round(z.real), phi))
    return tuple(out)


def _lift_coeffs(c: tuple, m: int, big: int) -> tuple:
    if m == big:
        return c
    step = big // m
    table = _power_table(big)
    out = [mpq(0)] * euler_phi(big)
    for k, v in enumerate(c):
        if v:
            for t, w in table[(k * step) % big]:
                out[t] += v * w
    return tuple(out)


def _to_mpq(x) -> mpq:
    if isinstance(x, mpq):
        return x
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    raise TypeError(f"not a rational: {x!r}")


_ZERO = mpq(0)


class Cyc:
    """Element of Q(zeta_m), immutable."""

    __slots__ = ("m", "c")
    backend = EXACT

    def __init__(self, m: int, coeffs):
        c = tuple(_to_mpq(v) for v in coeffs)
        if len(c) != euler_phi(m):
            raise ValueError(f"expected {euler_phi(m)} coefficients for conductor {m}")
        if m != 1 and not any(c[1:]):
            m, c = 1, (c[0],)
        self.m = m
        self.c = c

    @classmethod
    def _raw(cls, m: int, c: tuple) -> Cyc:
        obj = object.__new__(cls)
        if m != 1 and not any(c[1:]):
            m, c = 1, (c[0],)
        obj.m = m
        obj.c = c
        return obj

    @classmethod
    def rational(cls, x) -> Cyc:
        return cls._raw(1, (_to_mpq(x),))

    # -- structure ---------------------------------------------------------
    def lift(self, m: int) -> tuple:
        """Coefficient vector of this element in Q(zeta_m); m must be a multiple of the conductor."""
        if m % self.m:
            raise ValueError(f"conductor {self.m} does not divide {m}")
        return _lift_coeffs(self.c, self.m, m)

    def is_zero(self) -> bool:
        return self.m == 1 and not self.c[0]

    def is_rational(self) -> bool:
        return self.m == 1

    def as_fraction(self) -> Fraction:
        if self.m != 1:
            raise ValueError(f"{self} is not rational")
        q = self.c[0]
        return Fraction(int(q.numerator), int(q.denominator))

    def to_complex(self) -> complex:
        w = cmath.exp(2j * math.pi / self.m)
        return sum(complex(float(v)) * w**k for k, v in enumerate(self.c) if v) + 0j

    # -- arithmetic --------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, Cyc):
            return other
        if isinstance(other, (int, Fraction, mpq)):
            return Cyc.rational(other)
        return NotImplemented

    def __add__(self, other):
        o = other if type(other) is Cyc else self._coerce(other)
        if o is NotImplemented:
            return o
        if self.m == o.m:
            return Cyc._raw(self.m, tuple(x + y for x, y in zip(self.c, o.c)))
        if o.m == 1:
            return Cyc._raw(self.m, (self.c[0] + o.c[0],) + self.c[1:])
        if self.m == 1:
            return Cyc._raw(o.m, (self.c[0] + o.c[0],) + o.c[1:])
        big = math.lcm(self.m, o.m)
        return Cyc._raw(big, tuple(x + y for x, y in zip(self.lift(big), o.lift(big))))

    __radd__ = __add__

    def __neg__(self):
        return Cyc._raw(self.m, tuple(-x for x in self.c))

    def __sub__(self, other):
        o = other if type(other) is Cyc else self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = other if type(other) is Cyc else self._coerce(other)
        if o is NotImplemented:
            return o
        if o.m == 1:
            s = o.c[0]
            if not s:
                return ZERO
            return Cyc._raw(self.m, tuple(x * s for x in self.c))
        if self.m == 1:
            s = self.c[0]
            if not s:
                return ZERO
            return Cyc._raw(o.m, tuple(s * x for x in o.c))
        if self.m == o.m:
            m, a, b = self.m, self.c, o.c
        else:
            m = math.lcm(self.m, o.m)
            a, b = self.lift(m), o.lift(m)
        phi = len(a)
        acc = [_ZERO] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        acc[i + j] += x * y
        out = acc[:phi]
        table = _power_table(m)
        for k in range(phi, 2 * phi - 1):
            v = acc[k]
            if v:
                for t, w in table[k % m]:
                    out[t] += v * w
        return Cyc._raw(m, tuple(out))

    __rmul__ = __mul__

    def inv(self) -> Cyc:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.m == 1:
            return Cyc._raw(1, (1 / self.c[0],))
        # solve (multiplication-by-self) x = 1 over Q
        m, phi = self.m, len(self.c)
        table = _power_table(m)
        # column k of the multiplication matrix is self * x^k
        cols = []
        for k in range(phi):
            col = [_ZERO] * phi
            for i, v in enumerate(self.c):
                if v:
                    for t, w in table[(i + k) % m]:
                        col[t] += v * w
            cols.append(col)
        rows = [[cols[k][r] for k in range(phi)] + [mpq(1 if r == 0 else 0)] for r in range(phi)]
        x = _solve_square_q(rows, phi)
        return Cyc._raw(m, tuple(x))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inv() ** (-e)
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- comparison --------------------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.m == o.m:
            return self.c == o.c
        if self.m == 1 or o.m == 1:
            return False
        big = math.lcm(self.m, o.m)
        return self.lift(big) == o.lift(big)

    def __hash__(self):
        if self.m == 1:
            return hash(self.as_fraction())
        w = _trace_weights(self.m)
        tr = sum((v * t for v, t in zip(self.c, w) if v), _ZERO)
        return hash(("cyc", Fraction(int(tr.numerator), int(tr.denominator))))

    def __bool__(self):
        return not self.is_zero()

    # -- rendering ---------------------------------------------------------
    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Cyc({render(self)!r})"


def _solve_square_q(rows: list[list], n: int) -> list:
    # Gauss-Jordan on an augmented n x (n+1) system over Q; system must be nonsingular
    for col in range(n):
        piv = next(r for r in range(col, n) if rows[r][col])
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        prow = [v / p for v in rows[col]]
        rows[col] = prow
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], prow)]
    return [rows[r][n] for r in range(n)]


ZERO = Cyc.rational(0)
ONE = Cyc.rational(1)


def zeta(m: int) -> Cyc:
    """A primitive m-th root of unity, exp(2 pi i / m) under the standard embedding."""
    if m < 1:
        raise ValueError("zeta(m) needs a positive integer m")
    if m <= 2:
        return Cyc.rational(1 if m == 1 else -1)
    phi = euler_phi(m)
    c = [0] * phi
    if phi > 1:
        c[1] = 1
        return Cyc(m, c)
    return Cyc.rational(-1)


def _legendre(a: int, p: int) -> int:
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=None)
def _sqrt_prime(p: int) -> Cyc:
    if p == 2:
        z = zeta(8)
        return z + z**7
    zp = zeta(p)
    g = sum((_legendre(a, p) * zp**a for a in range(1, p)), ZERO)
    # quadratic Gauss sum: g = sqrt(p) if p = 1 mod 4, i*sqrt(p) if p = 3 mod 4
    return g if p % 4 == 1 else -zeta(4) * g


def sqrt_int(n: int) -> Cyc:
    """Positive square root of a positive integer as an exact cyclotomic element."""
    if not isinstance(n, int) or n <= 0:
        raise ValueError(f"sqrt needs a positive integer, got {n!r}")
    out = ONE
    for p, e in sorted(_factor(n).items()):
        out = out * p ** (e // 2)
        if e % 2:
            out = out * _sqrt_prime(p)
    return out


def _rational_sqrt(q) -> Cyc | None:
    q = _to_mpq(q)
    if q == 0:
        return ZERO
    num, den = int(q.numerator), int(q.denominator)
    root = sqrt_int(abs(num) * den) / den
    return root * zeta(4) if num < 0 else root


def _root_of_unity_index(u: Cyc) -> tuple[int, int] | None:
    # (M, k) with u == zeta(M)^k, or None
    M = math.lcm(u.m, 2)
    z = zeta(M)
    p = ONE
    for k in range(M):
        if p == u:
            return M, k
        p = p * z
    return None


def _conjugate(x: Cyc, k: int) -> Cyc:
    # Galois automorphism zeta_m -> zeta_m^k, gcd(k, m) = 1
    table = _power_table(x.m)
    out = [_ZERO] * len(x.c)
    for e, v in enumerate(x.c):
        if v:
            for t, w in table[(e * k) % x.m]:
                out[t] += v * w
    return Cyc._raw(x.m, tuple(out))


def sqrt_exact(x, max_denominator: int = 10**6) -> Cyc | None:
    """A square root of x in a cyclotomic field, or None if none was found.

    Handles rationals times roots of unity in closed form.  Otherwise it looks
    for a root inside Q(zeta_m) itself by enumerating sign choices over the
    complex embeddings and checking each candidate exactly.
    """
    if isinstance(x, FloatScalar):
        return FloatScalar(cmath.sqrt(x.z), x.eps)
    x = Cyc._coerce(x)
    if x.is_rational():
        return _rational_sqrt(x.c[0])
    m = x.m
    xm = x**m
    if xm.is_rational():
        qm = xm.c[0]
        # x = q * (root of unity) with q rational: q^m = x^m up to sign
        q = _rational_root(abs(qm), m)
        if q is not None:
            idx = _root_of_unity_index(x / q)
            if idx is not None:
                M, k = idx
                if k % 2 == 0:
                    return _rational_sqrt(q) * zeta(M) ** (k // 2)
                return _rational_sqrt(q) * zeta(2 * M) ** k
    phi = euler_phi(m)
    if phi > 12:
        return None
    units = [k for k in range(1, m) if math.gcd(k, m) == 1]
    w = cmath.exp(2j * math.pi / m)
    roots = [cmath.sqrt(_conjugate(x, k).to_complex()) for k in units]
    # coefficient recovery: y_k = sum_e c_e w^(k e); solve the Vandermonde system
    import numpy as np

    V = np.array([[w ** (k * e) for e in range(phi)] for k in units])
    Vinv = np.linalg.inv(V)
    for signs in range(1 << (phi - 1)):
        vals = np.array([roots[0]] + [roots[t] * (-1 if signs >> (t - 1) & 1 else 1) for t in range(1, phi)])
        coeffs = Vinv @ vals
        if np.max(np.abs(coeffs.imag)) > 1e-6:
            continue
        c = [Fraction(float(v)).limit_denominator(max_denominator) for v in coeffs.real]
        y = Cyc(m, c)
        if y * y == x:
            return y
    return None


def _rational_root(q: mpq, k: int) -> mpq | None:
    num, den = int(q.numerator), int(q.denominator)
    a, b = _int_root(num, k), _int_root(den, k)
    if a is None or b is None:
        return None
    return mpq(a, b)


def _int_root(n: int, k: int) -> int | None:
    if n < 0:
        return None
    r = round(n ** (1.0 / k)) if n else 0
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**k == n:
            return cand
    lo, hi = 0, 1
    while hi**k < n:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**k == n else None


# ---------------------------------------------------------------------------
# float backend


class FloatScalar:
    """Complex double with a zero-test tolerance ``eps``."""

    __slots__ = ("z", "eps")

    def __init__(self, z, eps: float = DEFAULT_EPS):
        self.z = complex(z)
        self.eps = eps

    @property
    def backend(self) -> Backend:
        return Backend("float", self.eps)

    def _v(self, other):
        if isinstance(other, FloatScalar):
            return other.z
        if isinstance(other, (int, float, complex, Fraction)):
            return complex(other)
        if isinstance(other, mpq):
            return complex(float(other))
        if isinstance(other, Cyc):
            return other.to_complex()
        return None

    def __add__(self, other):
        v = self._v(other)
        return NotImplemented if v is None else FloatScalar(self.z + v, self.eps)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._v(other)
        return NotImplemented if v is None else FloatScalar(self.z - v, self.eps)

    def __rsub__(self, other):
        v = self._v(other)
        return NotImplemented if v is None else FloatScalar(v - self.z, self.eps)

    def __mul__(self, other):
        v = self._v(other)
        return NotImplemented if v is None else FloatScalar(self.z * v, self.eps)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._v(other)
        if v is None:
            return NotImplemented
        if abs(v) <= self.eps:
            raise ZeroDivisionError("division by a float scalar within tolerance of zero")
        return FloatScalar(self.z / v, self.eps)

    def __rtruediv__(self, other):
        v = self._v(other)
        if v is None:
            return NotImplemented
        return FloatScalar(v, self.eps) / self

    def __neg__(self):
        return FloatScalar(-self.z, self.eps)

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inv() ** (-e)
        return FloatScalar(self.z**e, self.eps)

    def inv(self):
        return FloatScalar(1, self.eps) / self

    def is_zero(self) -> bool:
        return abs(self.z) <= self.eps

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        v = self._v(other)
        if v is None:
            return NotImplemented
        return abs(self.z - v) <= self.eps

    __hash__ = None  # tolerance equality is not transitive

    def to_complex(self) -> complex:
        return self.z

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"FloatScalar({self.z!r}, eps={self.eps})"


# ---------------------------------------------------------------------------
# rendering and parsing


def _render_q(q: mpq) -> str:
    return str(int(q.numerator)) if q.denominator == 1 else f"{int(q.numerator)}/{int(q.denominator)}"


def _render_float(x: float) -> str:
    return repr(float(x))


def render(s) -> str:
    """Render a scalar in the parseable expression grammar."""
    if isinstance(s, FloatScalar):
        re_, im = s.z.real, s.z.imag
        if im == 0:
            return _render_float(re_)
        if re_ == 0:
            return f"{_render_float(im)}*i"
        sign = "+" if im >= 0 else "-"
        return f"{_render_float(re_)} {sign} {_render_float(abs(im))}*i"
    if s.m == 1:
        return _render_q(s.c[0])
    terms = []
    for k, v in enumerate(s.c):
        if not v:
            continue
        mag = abs(v)
        if k == 0:
            body = _render_q(mag)
        else:
            power = f"zeta({s.m})" if k == 1 else f"zeta({s.m})^{k}"
            body = power if mag == 1 else f"{_render_q(mag)}*{power}"
        terms.append(("-" if v < 0 else "+", body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


class ParseError(ValueError):
    """Malformed scalar expression; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}" + (f" in {text!r}" if text else ""))


_TOKEN = re.compile(r"\s*(?:(\d+\.\d*(?:[eE][-+]?\d+)?|\d+[eE][-+]?\d+)|(\d+)|([A-Za-z_]+)|(.))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None or mt.end() == pos:
            break
        if mt.group(0).strip() == "":
            pos = mt.end()
            continue
        start = mt.start(mt.lastindex)
        if mt.group(1):
            toks.append(("float", mt.group(1), start))
        elif mt.group(2):
            toks.append(("int", mt.group(2), start))
        elif mt.group(3):
            toks.append(("name", mt.group(3), start))
        else:
            ch = mt.group(4)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", text, start)
            toks.append(("op", ch, start))
        pos = mt.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    # expr := term (('+'|'-') term)* ; term := unary (('*'|'/') unary)*
    # unary := '-' unary | '+' unary | power ; power := atom ('^' unary)?
    def __init__(self, text: str, backend: Backend):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.backend = backend

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, got {got!r}", self.text, tok[2])
        self.i += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", self.text, 0)
        v = self.expr()
        if self.peek()[0] != "end":
            tok = self.peek()
            raise ParseError(f"unexpected token {tok[1]!r}", self.text, tok[2])
        return v

    def expr(self):
        v = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            tok = self.take()
            w = self.unary()
            if tok[1] == "*":
                v = v * w
            else:
                if w.is_zero():
                    raise ParseError("division by zero", self.text, tok[2])
                v = v / w
        return v

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            tok = self.take()
            e = self.unary()
            k = self._as_int(e, tok[2], "exponent")
            if k < 0 and base.is_zero():
                raise ParseError("division by zero", self.text, tok[2])
            return base**k
        return base

    def _as_int(self, v, pos, what):
        if isinstance(v, Cyc) and v.is_rational():
            q = v.as_fraction()
            if q.denominator == 1:
                return int(q)
        if isinstance(v, FloatScalar) and abs(v.z.imag) <= v.eps and abs(v.z.real - round(v.z.real)) <= v.eps:
            return int(round(v.z.real))
        raise ParseError(f"{what} must be an integer", self.text, pos)

    def atom(self):
        kind, val, pos = self.peek()
        bk = self.backend
        if kind == "int":
            self.take()
            return bk.scalar(int(val))
        if kind == "float":
            if bk.exact:
                raise ParseError("decimal literal not allowed in the exact backend", self.text, pos)
            self.take()
            return bk.scalar(float(val))
        if kind == "op" and val == "(":
            self.take()
            v = self.expr()
            self.take("op", ")")
            return v
        if kind == "name":
            self.take()
            if val == "i":
                return bk.scalar(zeta(4))
            if val in ("zeta", "sqrt"):
                self.take("op", "(")
                arg_pos = self.peek()[2]
                arg = self.expr()
                self.take("op", ")")
                k = self._as_int(arg, arg_pos, f"argument of {val}")
                if k <= 0:
                    raise ParseError(f"argument of {val} must be a positive integer", self.text, arg_pos)
                if val == "zeta":
                    if bk.exact:
                        return zeta(k)
                    return bk.scalar(cmath.exp(2j * math.pi / k))
                if bk.exact:
                    return sqrt_int(k)
                return bk.scalar(math.sqrt(k))
            raise ParseError(f"unknown name {val!r}", self.text, pos)
        raise ParseError(f"unexpected token {val or 'end of input'!r}", self.text, pos)


def parse_scalar(text: str, backend: Backend | str = EXACT):
    """Parse a scalar expression such as ``1/2 + zeta(8)^3 - sqrt(5)``."""
    if isinstance(backend, str):
        backend = EXACT if backend == "exact" else float_backend()
    try:
        return _Parser(text, backend).parse()
    except ZeroDivisionError as exc:
        raise ParseError("division by zero", text, 0) from exc
