"""Exact arithmetic in GF(p^f) for odd p, in a polynomial basis.

A field element c_0 + c_1 z + ... + c_{f-1} z^{f-1} is stored as the
integer code sum(c_j * p**j) in [0, p^f).  Scalar work goes through
FieldElem; bulk work uses the vectorized code-array helpers on FieldCtx
(vadd/vsub/vmul/vneg), which the linear-algebra layer builds on.
Inversion is by extended Euclid on polynomials, never by table lookup.
"""

from __future__ import annotations

import numpy as np
import sympy

from .errors import (CtxMismatch, MathDomainError, NotPrime, QDoesNotDivide,
                     ReducibleModulus, ZeroInverse)


# ---------------------------------------------------------------------------
# polynomial helpers over Z_p (coefficient lists, index = degree)

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _padd(a, b, p):
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                   for i in range(n)])


def _pscale(a, c, p):
    return _ptrim([(x * c) % p for x in a])


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pdivmod(a, b, p):
    a = list(a)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and _ptrim(a):
        d = len(a) - len(b)
        c = (a[-1] * inv_lead) % p
        q[d] = c
        for i, y in enumerate(b):
            a[i + d] = (a[i + d] - c * y) % p
        _ptrim(a)
    return _ptrim(q), _ptrim(a)


def _pmod(a, b, p):
    return _pdivmod(a, b, p)[1]


def _ppowmod(a, e, mod, p):
    result = [1]
    base = _pmod(a, mod, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), mod, p)
        base = _pmod(_pmul(base, base, p), mod, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        a = _pscale(a, pow(a[-1], -1, p), p)  # monic
    return a


def _pinvmod(a, mod, p):
    """Inverse of a modulo mod via the extended Euclidean algorithm."""
    r0, r1 = list(mod), _pmod(a, mod, p)
    s0, s1 = [], [1]
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _padd(s0, _pscale(_pmul(q, s1, p), p - 1, p), p)
    if len(r0) != 1:
        raise ZeroInverse("element is not invertible")
    c = pow(r0[0], -1, p)
    return _pscale(s0, c, p)


def _is_irreducible(poly, p):
    """Irreducibility over Z_p: root search for degree <= 3, Rabin's test above."""
    poly = _ptrim(list(poly))
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    if deg <= 3:
        # a polynomial of degree 2 or 3 is reducible iff it has a root
        return all(_peval(poly, x, p) != 0 for x in range(p))
    x = [0, 1]
    if _ptrim(_padd(_ppowmod(x, p ** deg, poly, p), _pscale(x, p - 1, p), p)):
        return False
    for r in sympy.primefactors(deg):
        h = _padd(_ppowmod(x, p ** (deg // r), poly, p), _pscale(x, p - 1, p), p)
        if len(_pgcd(h, poly, p)) != 1:
            return False
    return True


def _peval(poly, x, p):
    acc = 0
    for c in reversed(poly):
        acc = (acc * x + c) % p
    return acc


# ---------------------------------------------------------------------------


class FieldElem:
    """A single element of GF(p^f), identified by its integer code."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx: "FieldCtx", code: int):
        self.ctx = ctx
        self.code = code

    def _check(self, other):
        if not isinstance(other, FieldElem):
            if isinstance(other, int):
                return self.ctx.elem(other)
            raise TypeError(f"cannot combine FieldElem with {type(other).__name__}")
        if other.ctx is not self.ctx and other.ctx.signature != self.ctx.signature:
            raise CtxMismatch("operands live in different fields")
        return other

    @property
    def coeffs(self) -> tuple[int, ...]:
        c, code = [], self.code
        for _ in range(self.ctx.f):
            code, r = divmod(code, self.ctx.p)
            c.append(r)
        return tuple(c)

    def __add__(self, other):
        other = self._check(other)
        return FieldElem(self.ctx, self.ctx.add(self.code, other.code))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return FieldElem(self.ctx, self.ctx.sub(self.code, other.code))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        return FieldElem(self.ctx, self.ctx.mul(self.code, other.code))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.code))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.pow(self.code, e))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.inv(self.code))

    def order(self) -> int:
        return self.ctx.order_of(self.code)

    def is_zero(self) -> bool:
        return self.code == 0

    def __eq__(self, other):
        if isinstance(other, int):
            return self.code == self.ctx.elem(other).code
        return (isinstance(other, FieldElem)
                and self.ctx.signature == other.ctx.signature
                and self.code == other.code)

    def __hash__(self):
        return hash((self.ctx.signature, self.code))

    def __repr__(self):
        if self.ctx.f == 1:
            return f"GF({self.ctx.p})({self.code})"
        return f"GF({self.ctx.p}^{self.ctx.f})({list(self.coeffs)})"


class FieldCtx:
    """GF(p^f) with a fixed irreducible modulus and primitive element.

    Immutable after construction; every operation is a pure function of
    integer codes, so contexts are safe to share across threads.
    """

    def __init__(self, p: int, f: int, modulus: tuple[int, ...], zeta_code: int | None = None):
        self.p = p
        self.f = f
        self.modulus = tuple(int(c) % p for c in modulus)
        self.size = p ** f
        self.order = self.size - 1
        self.signature = (p, f, self.modulus)
        self._order_factors = tuple(sorted(sympy.factorint(self.order)))
        # structure tensor: z^i * z^j = sum_k T[i,j,k] z^k  (mod modulus)
        red = []
        for d in range(2 * f - 1):
            r = _pmod([0] * d + [1], list(self.modulus), p)
            red.append([r[k] if k < len(r) else 0 for k in range(f)])
        T = np.zeros((f, f, f), dtype=np.int64)
        for i in range(f):
            for j in range(f):
                T[i, j] = red[i + j]
        self._tensor = T
        self._powers_of_p = p ** np.arange(f, dtype=np.int64)
        self.zeta = FieldElem(self, zeta_code if zeta_code is not None else self._find_zeta())

    # --- scalar ops on codes -----------------------------------------------

    def elem(self, value) -> FieldElem:
        """Coerce: FieldElem passes through, ints embed via Z -> GF(p) -> GF(p^f),
        lists/tuples are coefficient vectors."""
        if isinstance(value, FieldElem):
            if value.ctx.signature != self.signature:
                raise CtxMismatch("operands live in different fields")
            return value
        if isinstance(value, (list, tuple)):
            return self.from_coeffs(value)
        return FieldElem(self, int(value) % self.p)

    def from_code(self, code: int) -> FieldElem:
        return FieldElem(self, int(code) % self.size)

    def from_coeffs(self, coeffs) -> FieldElem:
        code = 0
        for c in reversed(list(coeffs)):
            code = code * self.p + (int(c) % self.p)
        return FieldElem(self, code)

    def zero(self) -> FieldElem:
        return FieldElem(self, 0)

    def one(self) -> FieldElem:
        return FieldElem(self, 1)

    def decode(self, codes):
        """int64 array of codes -> digit array with trailing axis of length f."""
        codes = np.asarray(codes, dtype=np.int64)
        return (codes[..., None] // self._powers_of_p) % self.p

    def encode(self, digits):
        return (np.asarray(digits, dtype=np.int64) % self.p) @ self._powers_of_p

    def add(self, a: int, b: int) -> int:
        a, b = int(a), int(b)
        if self.f == 1:
            return (a + b) % self.p
        return int(self.encode(self.decode(a) + self.decode(b)))

    def sub(self, a: int, b: int) -> int:
        a, b = int(a), int(b)
        if self.f == 1:
            return (a - b) % self.p
        return int(self.encode(self.decode(a) - self.decode(b)))

    def neg(self, a: int) -> int:
        a = int(a)
        if self.f == 1:
            return (-a) % self.p
        return int(self.encode(-self.decode(a)))

    def mul(self, a: int, b: int) -> int:
        a, b = int(a), int(b)
        if self.f == 1:
            return (a * b) % self.p
        da, db = self.decode(a), self.decode(b)
        return int(self.encode(np.einsum("i,j,ijk->k", da, db, self._tensor)))

    def inv(self, a: int) -> int:
        a = int(a)
        if a == 0:
            raise ZeroInverse("0 has no multiplicative inverse")
        if self.f == 1:
            return pow(a, -1, self.p)
        inv = _pinvmod(list(FieldElem(self, a).coeffs), list(self.modulus), self.p)
        return self.from_coeffs(inv + [0] * (self.f - len(inv))).code

    def pow(self, a: int, e: int) -> int:
        a, e = int(a), int(e)
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.f == 1:
            return pow(a, e, self.p)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def order_of(self, a: int) -> int:
        a = int(a)
        if a == 0:
            raise ZeroInverse("0 has no multiplicative order")
        order = self.order
        for r in self._order_factors:
            while order % r == 0 and self.pow(a, order // r) == 1:
                order //= r
        return order

    # --- vectorized ops on int64 code arrays --------------------------------

    def vadd(self, a, b):
        if self.f == 1:
            return (a + b) % self.p
        return self.encode(self.decode(a) + self.decode(b))

    def vsub(self, a, b):
        if self.f == 1:
            return (a - b) % self.p
        return self.encode(self.decode(a) - self.decode(b))

    def vneg(self, a):
        if self.f == 1:
            return (-np.asarray(a)) % self.p
        return self.encode(-self.decode(a))

    def vmul(self, a, b):
        if self.f == 1:
            return (np.asarray(a, dtype=np.int64) * np.asarray(b, dtype=np.int64)) % self.p
        da, db = np.broadcast_arrays(self.decode(a), self.decode(b))
        return self.encode(np.einsum("...i,...j,ijk->...k", da, db, self._tensor))

    def vsum(self, a, axis):
        if self.f == 1:
            return np.asarray(a).sum(axis=axis) % self.p
        return self.encode(self.decode(a).sum(axis=axis))

    # --- construction helpers ------------------------------------------------

    def _find_zeta(self) -> int:
        for code in range(2, self.size):
            if self.order_of(code) == self.order:
                return code
        return 1  # GF(2) never happens: p is odd and size >= 3

    def __repr__(self):
        return f"FieldCtx(GF({self.p}^{self.f}))" if self.f > 1 else f"FieldCtx(GF({self.p}))"


def make_field(p: int, f: int = 1, modulus=None) -> FieldCtx:
    """Build GF(p^f) with a verified irreducible modulus and primitive zeta.

    Without an explicit modulus the smallest irreducible one (coefficient
    lists enumerated as base-p integers) is chosen, so results are
    reproducible.  For f = 1 the placeholder modulus is x - 0.
    """
    if not sympy.isprime(p):
        raise NotPrime(f"p = {p} is not prime")
    if p == 2:
        raise NotPrime("p = 2 is rejected: odd characteristic is assumed throughout")
    if f < 1:
        raise MathDomainError(f"degree f must be >= 1, got {f}")
    if modulus is not None:
        modulus = [int(c) % p for c in modulus]
        if len(modulus) != f + 1 or modulus[-1] != 1:
            raise ReducibleModulus(f"modulus must be monic of degree {f}")
        if f > 1 and not _is_irreducible(modulus, p):
            raise ReducibleModulus("modulus is reducible over Z_p")
    else:
        if f == 1:
            modulus = [0, 1]
        else:
            modulus = None
            for code in range(p ** f):
                cand = [(code // p ** j) % p for j in range(f)] + [1]
                if _is_irreducible(cand, p):
                    modulus = cand
                    break
            assert modulus is not None
    return FieldCtx(p, f, tuple(modulus))


class QDecomp:
    """The split p^f - 1 = s * q^m together with omega and eta.

    omega = zeta^((p^f-1)/q) has order q; eta = zeta^(q^m) has order s.
    """

    def __init__(self, field: FieldCtx, q: int):
        if not sympy.isprime(q) or q == 2:
            raise QDoesNotDivide(f"q = {q} must be an odd prime")
        if field.order % q != 0:
            raise QDoesNotDivide(f"q = {q} does not divide p^f - 1 = {field.order}")
        self.field = field
        self.q = q
        m, rest = 0, field.order
        while rest % q == 0:
            rest //= q
            m += 1
        self.m = m
        self.s = rest
        self.omega = field.zeta ** (field.order // q)
        self.eta = field.zeta ** (q ** m)

    def __repr__(self):
        return (f"QDecomp(q={self.q}, s={self.s}, m={self.m}, "
                f"omega={self.omega.code}, eta={self.eta.code})")


def q_decompose(field: FieldCtx, q: int) -> QDecomp:
    return QDecomp(field, q)
