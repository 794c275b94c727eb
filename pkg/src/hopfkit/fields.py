"""Exact base-field arithmetic: rationals, prime fields and cyclotomic fields.

A cyclotomic field Q(zeta_n) is represented as the quotient ring
Q[z] / (Phi_n(z)) with elements stored reduced mod the n-th cyclotomic
polynomial, so equality of scalars is equality of representations.
No floating point is used anywhere; every downstream classification in
this package is an exact equality test.

Scalars are immutable and hashable; field handles are read-only after
construction and cache pairwise products (the same small coefficients
recur millions of times in structure-constant computations).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - gmpy2 is an optional speedup
    from fractions import Fraction as _Q

_Q0 = _Q(0)
_Q1 = _Q(1)

_MUL_CACHE_CAP = 1 << 20


def is_prime(p: int) -> bool:
    """Deterministic Miller-Rabin, valid for all 64-bit integers."""
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    d = p - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def _int_poly_divexact(num: list, den: list) -> list:
    """Exact division of integer polynomials (lists, low degree first)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[len(den) - 1 + k]
        assert c % den[-1] == 0
        c //= den[-1]
        out[k] = c
        for i, d in enumerate(den):
            num[i + k] -= c * d
    assert all(c == 0 for c in num)
    return out


def cyclotomic_polynomial(n: int) -> list:
    """Integer coefficients of Phi_n, low degree first."""
    if n < 1:
        raise ValueError("cyclotomic index must be >= 1")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _int_poly_divexact(poly, cyclotomic_polynomial(d))
    return poly


@dataclass(frozen=True)
class FieldSpec:
    """Description of an exact base field.

    kind is one of "rational", "prime" (with p) or "cyclotomic" (with n).
    Two FieldSpecs are interoperable only if identical.
    """

    kind: str
    param: Optional[int] = None

    def validate(self):
        if self.kind == "rational":
            if self.param is not None:
                raise ValueError("rational field takes no parameter")
        elif self.kind == "prime":
            if not isinstance(self.param, int) or not is_prime(self.param):
                raise ValueError("non-prime modulus: %r" % (self.param,))
        elif self.kind == "cyclotomic":
            if not isinstance(self.param, int) or self.param < 1:
                raise ValueError("cyclotomic index must be >= 1")
        else:
            raise ValueError("unknown field kind %r" % (self.kind,))

    @staticmethod
    def rational() -> "FieldSpec":
        return FieldSpec("rational")

    @staticmethod
    def prime(p: int) -> "FieldSpec":
        return FieldSpec("prime", p)

    @staticmethod
    def cyclotomic(n: int) -> "FieldSpec":
        return FieldSpec("cyclotomic", n)

    def to_data(self) -> dict:
        if self.kind == "rational":
            return {"kind": "rational"}
        if self.kind == "prime":
            return {"kind": "prime", "p": self.param}
        return {"kind": "cyclotomic", "n": self.param}

    @staticmethod
    def from_data(data: dict) -> "FieldSpec":
        kind = data.get("kind")
        if kind == "rational":
            return FieldSpec.rational()
        if kind == "prime":
            return FieldSpec.prime(data["p"])
        if kind == "cyclotomic":
            return FieldSpec.cyclotomic(data["n"])
        raise ValueError("bad field spec: %r" % (data,))

    def __str__(self):
        if self.kind == "rational":
            return "QQ"
        if self.kind == "prime":
            return "GF(%d)" % self.param
        return "QQ(zeta_%d)" % self.param


class Scalar:
    """Immutable field element in canonical form."""

    __slots__ = ("field", "rep", "_hash", "_nonzero")

    def __init__(self, field: "Field", rep):
        self.field = field
        self.rep = rep
        self._hash = hash(rep) ^ field._salt
        self._nonzero = rep != field._zero_rep

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.field.spec == other.field.spec and self.rep == other.rep

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __bool__(self):
        return self._nonzero

    def is_zero(self) -> bool:
        return not self._nonzero

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field.spec != self.field.spec:
                raise ValueError(
                    "field mismatch: %s vs %s" % (self.field.spec, other.field.spec)
                )
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        raise TypeError("cannot combine Scalar with %r" % (other,))

    def __add__(self, other):
        if type(other) is Scalar and other.field is self.field:
            return self.field._add(self, other)
        return self.field._add(self, self._coerce(other))

    __radd__ = __add__

    def __neg__(self):
        return self.field._neg(self)

    def __sub__(self, other):
        if type(other) is Scalar and other.field is self.field:
            return self.field._add(self, self.field._neg(other))
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if type(other) is Scalar and other.field is self.field:
            return self.field._mul(self, other)
        return self.field._mul(self, self._coerce(other))

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inversion of zero")
        return self.field._inv(self)

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __str__(self):
        return self.field.format(self)

    def __repr__(self):
        return "Scalar(%s, %s)" % (self.field.spec, self)


class Field:
    """Handle for one exact field; see make_field."""

    def __init__(self, spec: FieldSpec):
        spec.validate()
        self.spec = spec
        self._salt = hash(spec)
        self._zero_rep = self._make_zero_rep()
        self.zero = Scalar(self, self._zero_rep)
        self.one = Scalar(self, self._make_one_rep())
        self._mul_cache = {}
        self._add_cache = {}
        self._neg_cache = {}

    # -- representation layer, overridden per field kind ----------------
    def _make_zero_rep(self):
        raise NotImplementedError

    def _make_one_rep(self):
        raise NotImplementedError

    def _add_rep(self, a, b):
        raise NotImplementedError

    def _neg_rep(self, a):
        raise NotImplementedError

    def _mul_rep(self, a, b):
        raise NotImplementedError

    def _inv_rep(self, a):
        raise NotImplementedError

    def from_int(self, k: int) -> Scalar:
        raise NotImplementedError

    # -- scalar layer ----------------------------------------------------
    # pairwise results are cached: structure-constant computations hit the
    # same small coefficient universe millions of times
    def _add(self, a: Scalar, b: Scalar) -> Scalar:
        key = (a.rep, b.rep)
        cache = self._add_cache
        out = cache.get(key)
        if out is None:
            out = Scalar(self, self._add_rep(a.rep, b.rep))
            if len(cache) >= _MUL_CACHE_CAP:
                cache.clear()
            cache[key] = out
        return out

    def _neg(self, a: Scalar) -> Scalar:
        cache = self._neg_cache
        out = cache.get(a.rep)
        if out is None:
            out = Scalar(self, self._neg_rep(a.rep))
            if len(cache) >= _MUL_CACHE_CAP:
                cache.clear()
            cache[a.rep] = out
        return out

    def _mul(self, a: Scalar, b: Scalar) -> Scalar:
        key = (a.rep, b.rep)
        cache = self._mul_cache
        out = cache.get(key)
        if out is None:
            out = Scalar(self, self._mul_rep(a.rep, b.rep))
            if len(cache) >= _MUL_CACHE_CAP:
                cache.clear()
            cache[key] = out
        return out

    def _inv(self, a: Scalar) -> Scalar:
        return Scalar(self, self._inv_rep(a.rep))

    def from_fraction(self, num: int, den: int = 1) -> Scalar:
        raise NotImplementedError

    def random_scalar(self, rng, bound: int = 9) -> Scalar:
        raise NotImplementedError

    # -- literals ----------------------------------------------------------
    def format(self, a: Scalar) -> str:
        raise NotImplementedError

    def parse(self, text: str) -> Scalar:
        terms = _parse_literal(text)
        out = self.zero
        for num, den, power in terms:
            c = self.from_fraction(num, den)
            if power:
                z = self.zeta if power > 0 else self.zeta.inv()
                c = c * (z ** abs(power))
            out = out + c
        return out

    @property
    def zeta(self) -> Scalar:
        raise ValueError("field %s has no designated primitive root" % self.spec)

    def __repr__(self):
        return "Field(%s)" % self.spec


def _fmt_q(q) -> str:
    n, d = int(q.numerator), int(q.denominator)
    return "%d" % n if d == 1 else "%d/%d" % (n, d)


class RationalField(Field):
    def _make_zero_rep(self):
        return _Q0

    def _make_one_rep(self):
        return _Q1

    def _add_rep(self, a, b):
        return a + b

    def _neg_rep(self, a):
        return -a

    def _mul_rep(self, a, b):
        return a * b

    def _inv_rep(self, a):
        return 1 / a

    def from_int(self, k: int) -> Scalar:
        return Scalar(self, _Q(k))

    def from_fraction(self, num: int, den: int = 1) -> Scalar:
        return Scalar(self, _Q(num, den))

    def random_scalar(self, rng, bound: int = 9) -> Scalar:
        return Scalar(self, _Q(rng.randint(-bound, bound), rng.randint(1, bound)))

    def format(self, a: Scalar) -> str:
        return _fmt_q(a.rep)


class PrimeField(Field):
    def __init__(self, spec: FieldSpec):
        self.p = spec.param
        super().__init__(spec)

    def _make_zero_rep(self):
        return 0

    def _make_one_rep(self):
        return 1 % self.p

    def _add_rep(self, a, b):
        return (a + b) % self.p

    def _neg_rep(self, a):
        return -a % self.p

    def _mul_rep(self, a, b):
        return a * b % self.p

    def _inv_rep(self, a):
        return pow(a, self.p - 2, self.p)

    def from_int(self, k: int) -> Scalar:
        return Scalar(self, k % self.p)

    def from_fraction(self, num: int, den: int = 1) -> Scalar:
        if den % self.p == 0:
            raise ZeroDivisionError("denominator divisible by %d" % self.p)
        return Scalar(self, num * pow(den, self.p - 2, self.p) % self.p)

    def random_scalar(self, rng, bound: int = 9) -> Scalar:
        return Scalar(self, rng.randrange(self.p))

    def format(self, a: Scalar) -> str:
        return "%d" % a.rep


class CyclotomicField(Field):
    """Q(zeta_n) as Q[z]/(Phi_n); reps are tuples of rationals, low degree first."""

    def __init__(self, spec: FieldSpec):
        self.n = spec.param
        phi = cyclotomic_polynomial(self.n)
        self.degree = len(phi) - 1
        self._phi = phi
        # x^(degree+k) reduced mod Phi_n, for k in [0, degree-2]
        self._red = []
        d = self.degree
        lead = [_Q(-phi[i]) for i in range(d)]  # x^d = lead(x), Phi monic
        self._red.append(tuple(lead))
        for _ in range(d - 2):
            prev = self._red[-1]
            nxt = [_Q0] + [c for c in prev[: d - 1]]
            top = prev[d - 1]
            if top:
                nxt = [nxt[i] + top * lead[i] for i in range(d)]
            self._red.append(tuple(nxt))
        super().__init__(spec)

    def _make_zero_rep(self):
        return (_Q0,) * self.degree

    def _make_one_rep(self):
        return (_Q1,) + (_Q0,) * (self.degree - 1)

    @property
    def zeta(self) -> Scalar:
        d = self.degree
        if d == 1:
            return Scalar(self, (_Q(-self._phi[0]),))
        return Scalar(self, ((_Q0, _Q1) + (_Q0,) * (d - 2)))

    def _add_rep(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _neg_rep(self, a):
        return tuple(-x for x in a)

    def _mul_rep(self, a, b):
        d = self.degree
        prod = [_Q0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:d]
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                row = self._red[k - d]
                for i, r in enumerate(row):
                    if r:
                        out[i] += c * r
        return tuple(out)

    def _inv_rep(self, a):
        # extended Euclid in Q[x] against Phi_n (irreducible over Q)
        def strip(p):
            p = list(p)
            while p and not p[-1]:
                p.pop()
            return p

        r0 = strip(_Q(c) for c in self._phi)
        r1 = strip(a)
        if not r1:
            raise ZeroDivisionError("inversion of zero")
        t0, t1 = [], [_Q1]
        while len(r1) > 1:
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, strip(rem)
            t0, t1 = t1, strip(_poly_sub(t0, _poly_mul(q, t1)))
        c = r1[0]
        inv = [t / c for t in t1]
        inv += [_Q0] * (self.degree - len(inv))
        return tuple(inv[: self.degree])

    def from_int(self, k: int) -> Scalar:
        return self.from_fraction(k)

    def from_fraction(self, num: int, den: int = 1) -> Scalar:
        c = _Q(num, den)
        if self.degree == 1:
            return Scalar(self, (c,))
        return Scalar(self, (c,) + (_Q0,) * (self.degree - 1))

    def random_scalar(self, rng, bound: int = 9) -> Scalar:
        return Scalar(
            self,
            tuple(
                _Q(rng.randint(-bound, bound), rng.randint(1, 3))
                for _ in range(self.degree)
            ),
        )

    def format(self, a: Scalar) -> str:
        if self.degree == 1:
            # constants live on the basis {1}; zeta itself is rational here
            return _fmt_q(a.rep[0])
        parts = []
        for power in range(self.degree - 1, -1, -1):
            c = a.rep[power]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            c = abs(c)
            if power == 0:
                body = _fmt_q(c)
            else:
                zpow = "z" if power == 1 else "z^%d" % power
                body = zpow if c == 1 else "%s*%s" % (_fmt_q(c), zpow)
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += " %s %s" % (sign, body)
        return out


def _poly_divmod(num, den):
    num = list(num)
    dn = len(den) - 1
    if len(num) - 1 < dn:
        return [_Q0], num
    q = [_Q0] * (len(num) - dn)
    for k in range(len(q) - 1, -1, -1):
        c = num[dn + k] / den[-1]
        q[k] = c
        if c:
            for i, d in enumerate(den):
                num[i + k] -= c * d
    return q, num[:dn]


def _poly_sub(a, b):
    out = list(a) + [_Q0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return out


def _poly_mul(a, b):
    out = [_Q0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
            (?P<coeff>\d+(?:/\d+)?)\s*(?:\*\s*(?P<zc>z(?:\^(?P<expc>-?\d+))?))?
          | (?P<z>z(?:\^(?P<exp>-?\d+))?)
        )\s*""",
    re.VERBOSE,
)


def _parse_literal(text: str):
    """Parse the scalar literal grammar: integer, a/b, or polynomial in z.

    Returns a list of (numerator, denominator, z-power) terms.
    """
    text = text.strip()
    if not text:
        raise ValueError("empty scalar literal")
    pos = 0
    terms = []
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError("bad scalar literal %r at offset %d" % (text, pos))
        if not first and m.group("sign") is None:
            raise ValueError("missing +/- between terms in %r" % text)
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coeff") is not None:
            c = m.group("coeff")
            num, den = (int(x) for x in c.split("/")) if "/" in c else (int(c), 1)
            if m.group("zc") is not None:
                power = int(m.group("expc") or 1)
            else:
                power = 0
        else:
            num, den = 1, 1
            power = int(m.group("exp") or 1)
        terms.append((sign * num, den, power))
        pos = m.end()
        first = False
    return terms


_FIELD_CACHE = {}


def make_field(spec: Union[FieldSpec, dict]) -> Field:
    """Create (or fetch the cached) field handle for a FieldSpec."""
    if isinstance(spec, dict):
        spec = FieldSpec.from_data(spec)
    spec.validate()
    field = _FIELD_CACHE.get(spec)
    if field is None:
        if spec.kind == "rational":
            field = RationalField(spec)
        elif spec.kind == "prime":
            field = PrimeField(spec)
        else:
            field = CyclotomicField(spec)
        _FIELD_CACHE[spec] = field
    return field
