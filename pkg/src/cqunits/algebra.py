"""The group algebra FG as an exact dense coefficient ring.

AlgElem holds one length-|G| array of field codes indexed by the group
element index.  Products run through exact integer scatter-adds: small
groups use the full multiplication table, larger ones convolve the q
A-slices through the A-addition table so no |G| x |G| table is needed.

The ideal generated by {a - 1 : a in A} is called gamma throughout; it
is the kernel of the projection rho onto FB and is nilpotent, which is
what makes geometric-series inversion and the Cayley transform work.
"""

from __future__ import annotations

import numpy as np

from . import _linalg
from .errors import CtxMismatch, MathDomainError, NotAUnit
from .field import FieldCtx
from .group import GroupElem, GroupSpec


class Subspace:
    """A row space over GF(p^f), stored as a canonical reduced echelon basis."""

    def __init__(self, field: FieldCtx, rows, reduced: bool = False, pivots=None):
        self.field = field
        rows = np.ascontiguousarray(rows, dtype=np.int64)
        if reduced:
            self.basis, self.pivots = rows, list(pivots)
        else:
            self.basis, self.pivots = _linalg.rref(field, rows)
        self.ambient = self.basis.shape[1]

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def contains(self, vec) -> bool:
        return self.contains_rows(np.asarray(vec, dtype=np.int64)[None, :])

    def contains_rows(self, rows) -> bool:
        return _linalg.in_rowspace(self.field, rows, self.basis, self.pivots)

    def reduce_rows(self, rows) -> np.ndarray:
        return _linalg.reduce_against(self.field, rows, self.basis, self.pivots)

    def __eq__(self, other):
        return (isinstance(other, Subspace)
                and self.pivots == other.pivots
                and np.array_equal(self.basis, other.basis))

    def __hash__(self):
        return hash((tuple(self.pivots), self.basis.tobytes()))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: rref [[A A], [B 0]]; zero-left rows give the meet."""
        n = self.ambient
        top = np.hstack([self.basis, self.basis])
        bot = np.hstack([other.basis, np.zeros_like(other.basis)])
        R, piv = _linalg.rref(self.field, np.vstack([top, bot]))
        keep = [i for i, pc in enumerate(piv) if pc >= n]
        return Subspace(self.field, R[keep][:, n:])

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def kernel_of(subspace: Subspace, op) -> Subspace:
    """Kernel of a linear operator on a subspace, given by its action on basis rows.

    `op` maps an ambient row vector to an ambient row vector and must send
    the subspace into itself.
    """
    B = subspace.basis
    images = np.stack([np.asarray(op(B[i]), dtype=np.int64) for i in range(B.shape[0])]) \
        if B.shape[0] else np.zeros((0, subspace.ambient), dtype=np.int64)
    if images.shape[0] and not subspace.contains_rows(images):
        raise MathDomainError("operator does not map the subspace into itself")
    coords = images[:, subspace.pivots] if B.shape[0] else images
    C = _linalg.right_kernel(subspace.field, coords.T)
    return Subspace(subspace.field, _linalg.matmul_mod(subspace.field, C, B))


class AlgElem:
    """One element of FG; coefficient array is treated as immutable."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: "GroupAlgebra", coeffs):
        self.ctx = ctx
        c = np.ascontiguousarray(coeffs, dtype=np.int64)
        if c.shape != (ctx.order,):
            raise MathDomainError(f"coefficient array must have length {ctx.order}")
        c.setflags(write=False)
        self.coeffs = c

    def _check(self, other):
        if isinstance(other, AlgElem):
            if other.ctx is not self.ctx:
                raise CtxMismatch("elements of different group algebras")
            return other
        if isinstance(other, int):
            return self.ctx.scalar(other)
        raise TypeError(f"cannot combine AlgElem with {type(other).__name__}")

    def __add__(self, other):
        other = self._check(other)
        return AlgElem(self.ctx, self.ctx.field.vadd(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return AlgElem(self.ctx, self.ctx.field.vsub(self.coeffs, other.coeffs))

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return AlgElem(self.ctx, self.ctx.field.vneg(self.coeffs))

    def __mul__(self, other):
        if isinstance(other, AlgElem):
            if other.ctx is not self.ctx:
                raise CtxMismatch("elements of different group algebras")
            return AlgElem(self.ctx, self.ctx.mul_coeffs(self.coeffs, other.coeffs))
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "AlgElem":
        code = self.ctx.field.elem(c).code
        return AlgElem(self.ctx, self.ctx.field.vmul(self.coeffs, np.int64(code)))

    def __pow__(self, e: int) -> "AlgElem":
        if e < 0:
            return self.ctx.invert(self) ** (-e)
        result = self.ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, AlgElem) and other.ctx is self.ctx
                and np.array_equal(other.coeffs, self.coeffs))

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def star(self) -> "AlgElem":
        """The involution extending g -> g^-1."""
        return AlgElem(self.ctx, self.coeffs[self.ctx.group.inv_perm])

    def augmentation(self):
        return self.ctx.field.from_code(int(self.ctx.field.vsum(self.coeffs, axis=0)))

    def rho_coeffs(self) -> np.ndarray:
        """Length-q code array of the image under rho: FG -> FB."""
        sliced = self.coeffs.reshape(self.ctx.group.abelian.order, self.ctx.group.q)
        return np.asarray(self.ctx.field.vsum(sliced, axis=0), dtype=np.int64)

    def in_gamma(self) -> bool:
        return not self.rho_coeffs().any()

    def is_unit(self) -> bool:
        return self.ctx.fb_inverse_coeffs(self.rho_coeffs()) is not None

    def sym_skew_split(self) -> tuple["AlgElem", "AlgElem"]:
        """(x + x*)/2 and (x - x*)/2; requires odd p."""
        st = self.star()
        half = self.ctx.inv2
        return (self + st).scale(half), (self - st).scale(half)

    def support(self):
        for g in np.nonzero(self.coeffs)[0]:
            yield GroupElem(self.ctx.group, int(g)), self.ctx.field.from_code(int(self.coeffs[g]))

    def __repr__(self):
        return f"AlgElem({self.format()})"

    def format(self) -> str:
        """Grammar-compatible rendering, e.g. '5 + 5*b + 3*a1^2*b^2'."""
        field = self.ctx.field
        parts = []
        for g, c in self.support():
            if field.f == 1:
                cs = str(c.code)
            else:
                cs = "[" + ",".join(str(d) for d in c.coeffs) + "]"
            gs = repr(g)
            if gs == "1":
                parts.append(cs)
            elif c.code == 1:
                parts.append(gs)
            else:
                parts.append(f"{cs}*{gs}")
        return " + ".join(parts) if parts else "0"


class GroupAlgebra:
    """Pairing of a FieldCtx with a GroupSpec, with cached mult machinery."""

    _TABLE_MUL_LIMIT = 1500

    def __init__(self, field: FieldCtx, group: GroupSpec):
        self.field = field
        self.group = group
        self.order = group.order
        self.q = group.q
        self.inv2 = field.from_code(field.inv(2))
        self._mul_flat = (group.mul_table.ravel()
                          if group.mul_table is not None and group.order <= self._TABLE_MUL_LIMIT
                          else None)
        self._a_add_flat = group.a_add.ravel()
        self._gamma = None
        self._sym_skew = None
        self._nilpotency = None

    # --- element constructors ------------------------------------------------

    def elem(self, coeffs) -> AlgElem:
        return AlgElem(self, coeffs)

    def zero(self) -> AlgElem:
        return AlgElem(self, np.zeros(self.order, dtype=np.int64))

    def one(self) -> AlgElem:
        return self.basis(0)

    def scalar(self, c) -> AlgElem:
        coeffs = np.zeros(self.order, dtype=np.int64)
        coeffs[0] = self.field.elem(c).code
        return AlgElem(self, coeffs)

    def basis(self, g) -> AlgElem:
        idx = g.idx if isinstance(g, GroupElem) else int(g)
        coeffs = np.zeros(self.order, dtype=np.int64)
        coeffs[idx] = 1
        return AlgElem(self, coeffs)

    def from_b_coeffs(self, bcoeffs) -> AlgElem:
        """Lift sum c_j b^j of FB into FG (the natural inclusion)."""
        bcoeffs = np.asarray(bcoeffs, dtype=np.int64)
        if bcoeffs.shape != (self.q,):
            raise MathDomainError(f"expected {self.q} coefficients")
        coeffs = np.zeros(self.order, dtype=np.int64)
        coeffs[: self.q] = bcoeffs
        return AlgElem(self, coeffs)

    # --- multiplication -------------------------------------------------------

    def mul_coeffs(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self._mul_flat is not None:
            return self._mul_table_path(x, y)
        return self._mul_slice_path(x, y)

    def _mul_table_path(self, x, y):
        n, f = self.order, self.field.f
        if f == 1:
            w = np.outer(x, y).ravel().astype(np.float64)
            z = np.bincount(self._mul_flat, weights=w, minlength=n)
            return np.rint(z).astype(np.int64) % self.field.p
        Xd, Yd = self.field.decode(x), self.field.decode(y)
        O = np.einsum("gi,hj,ijk->ghk", Xd, Yd, self.field._tensor)
        digits = np.empty((n, f), dtype=np.int64)
        for k in range(f):
            z = np.bincount(self._mul_flat, weights=O[:, :, k].ravel().astype(np.float64),
                            minlength=n)
            digits[:, k] = np.rint(z).astype(np.int64) % self.field.p
        return self.field.encode(digits)

    def _mul_slice_path(self, x, y):
        q, na, f = self.q, self.group.abelian.order, self.field.f
        xs = x.reshape(na, q)
        ys = y.reshape(na, q)
        sig = self.group.sigma_pows
        acc = np.zeros((q, na, f), dtype=np.float64)
        Yd = self.field.decode(ys.T) if f > 1 else None  # (q, na, f)
        for i in range(q):
            xi = xs[:, i]
            if not xi.any():
                continue
            perm = sig[(q - i) % q]
            if f == 1:
                Yp = np.empty_like(ys)
                Yp[perm] = ys
                for j in range(q):
                    yj = Yp[:, j]
                    if not yj.any():
                        continue
                    w = np.outer(xi, yj).ravel().astype(np.float64)
                    acc[(i + j) % q, :, 0] += np.bincount(
                        self._a_add_flat, weights=w, minlength=na)
            else:
                Xd = self.field.decode(xi)  # (na, f)
                for j in range(q):
                    yj = np.empty_like(Yd[j])
                    yj[perm] = Yd[j]
                    if not yj.any():
                        continue
                    O = np.einsum("gi,hj,ijk->ghk", Xd, yj, self.field._tensor)
                    for k in range(f):
                        acc[(i + j) % q, :, k] += np.bincount(
                            self._a_add_flat, weights=O[:, :, k].ravel().astype(np.float64),
                            minlength=na)
        digits = np.rint(acc).astype(np.int64) % self.field.p  # (q, na, f)
        if f == 1:
            return digits[:, :, 0].T.reshape(self.order).copy()
        return self.field.encode(digits).T.reshape(self.order).copy()

    # --- inversion --------------------------------------------------------------

    def fb_inverse_coeffs(self, w: np.ndarray):
        """Inverse of sum w_j b^j inside FB, or None if it is not a unit."""
        q = self.q
        M = np.empty((q, q), dtype=np.int64)
        for k in range(q):
            M[:, k] = np.roll(w, k)  # column k = coefficients of b^k * w
        e0 = np.zeros(q, dtype=np.int64)
        e0[0] = 1
        return _linalg.solve_right(self.field, M, e0)

    def invert(self, x: AlgElem) -> AlgElem:
        """Exact inverse: FB-inverse of rho(x), then a geometric series in gamma.

        x is a unit of FG iff rho(x) is a unit of FB, because 1 + gamma
        consists of units (gamma is nilpotent).
        """
        winv = self.fb_inverse_coeffs(x.rho_coeffs())
        if winv is None:
            raise NotAUnit("rho(x) is not invertible in FB")
        W = self.from_b_coeffs(winv)
        u = x * W  # in 1 + gamma
        neg_g = self.one() - u
        inv_u = self.one()
        term = self.one()
        for _ in range(self.gamma_dim() + 2):
            term = term * neg_g
            if term.is_zero():
                break
            inv_u = inv_u + term
        else:
            raise NotAUnit("geometric series did not terminate")
        result = W * inv_u
        assert (x * result) == self.one()
        return result

    # --- gamma machinery -----------------------------------------------------------

    def gamma_dim(self) -> int:
        return self.order - self.q

    @property
    def gamma_cols(self) -> np.ndarray:
        """FG indices of a*b^j with a != e, in ascending index order."""
        return np.arange(self.q, self.order, dtype=np.int64)

    def gamma_expand(self, K: np.ndarray) -> np.ndarray:
        """Rows of gamma-coordinates -> ambient FG rows (rho of each row is 0)."""
        K = np.atleast_2d(np.asarray(K, dtype=np.int64))
        rows = K.shape[0]
        amb = np.zeros((rows, self.order), dtype=np.int64)
        amb[:, self.q:] = K
        sums = self.field.vsum(K.reshape(rows, self.group.abelian.order - 1, self.q), axis=1)
        amb[:, : self.q] = self.field.vneg(sums)
        return amb

    def gamma_restrict(self, rows: np.ndarray) -> np.ndarray:
        return np.atleast_2d(np.asarray(rows, dtype=np.int64))[:, self.q:]

    def gamma_star_perm(self) -> np.ndarray:
        """The involution as a permutation of the gamma basis (a-1)b^j."""
        g = self.group
        cols = self.gamma_cols
        a, j = cols // self.q, cols % self.q
        tgt = g.sigma_pows[j, g.a_inv[a]] * self.q + (self.q - j) % self.q
        return tgt - self.q  # back to gamma-coordinate indexing

    def gamma_basis(self) -> Subspace:
        """gamma as a canonical Subspace.

        The canonical reduced basis of ker(rho) pivots on every column but
        the last q: row for column c = (a, j) is e_(a,j) - e_(a_last,j),
        so it can be written down directly instead of being row reduced.
        """
        if self._gamma is None:
            dim = self.gamma_dim()
            basis = np.zeros((dim, self.order), dtype=np.int64)
            idx = np.arange(dim)
            basis[idx, idx] = 1
            basis[idx, self.order - self.q + idx % self.q] = self.field.neg(1)
            self._gamma = Subspace(self.field, basis, reduced=True,
                                   pivots=list(range(dim)))
        return self._gamma

    def sym_skew_subspaces(self) -> tuple[Subspace, Subspace]:
        """Row-reduced symmetric and skew-symmetric slices of gamma."""
        if self._sym_skew is None:
            dim = self.gamma_dim()
            pi = self.gamma_star_perm()
            eye = np.eye(dim, dtype=np.int64)
            starred = eye[pi]  # row k is e_{pi[k]}, the star of basis vector k
            sym = self.field.vmul(self.field.vadd(eye, starred), np.int64(self.inv2.code))
            skew = self.field.vmul(self.field.vsub(eye, starred), np.int64(self.inv2.code))
            s1 = Subspace(self.field, self.gamma_expand(sym))
            s2 = Subspace(self.field, self.gamma_expand(skew))
            self._sym_skew = (s1, s2)
        return self._sym_skew

    def nilpotency_index(self) -> int:
        """Smallest N with gamma^N = 0, via radical powers inside FA."""
        if self._nilpotency is None:
            na = self.group.abelian.order
            gens = []
            for k in range(len(self.group.abelian.factors)):
                v = np.zeros(na, dtype=np.int64)
                v[self.group.elem([1 if i == k else 0
                                   for i in range(len(self.group.abelian.factors))]).a_index] = 1
                v[0] = self.field.neg(1)
                gens.append(v)
            basis = np.zeros((na - 1, na), dtype=np.int64)
            basis[:, 1:] = np.eye(na - 1, dtype=np.int64)
            basis[:, 0] = self.field.neg(1)
            N = 1
            R, piv = _linalg.rref(self.field, basis)
            while R.shape[0]:
                prods = [self._conv_a(R[i], g) for i in range(R.shape[0]) for g in gens]
                R, piv = _linalg.rref(self.field, np.stack(prods))
                N += 1
            self._nilpotency = N
        return self._nilpotency

    def _conv_a(self, u, v):
        na, f = self.group.abelian.order, self.field.f
        if f == 1:
            w = np.outer(u, v).ravel().astype(np.float64)
            z = np.bincount(self._a_add_flat, weights=w, minlength=na)
            return np.rint(z).astype(np.int64) % self.field.p
        O = np.einsum("gi,hj,ijk->ghk", self.field.decode(u), self.field.decode(v),
                      self.field._tensor)
        digits = np.empty((na, f), dtype=np.int64)
        for k in range(f):
            z = np.bincount(self._a_add_flat, weights=O[:, :, k].ravel().astype(np.float64),
                            minlength=na)
            digits[:, k] = np.rint(z).astype(np.int64) % self.field.p
        return self.field.encode(digits)

    def one_plus_gamma_exponent(self) -> int:
        """Smallest power p^k that annihilates 1 + gamma elementwise.

        (1 + g)^(p^k) = 1 + g^(p^k) for a single element g, so the group
        exponent is the least p^k at or above the nilpotency index of gamma.
        """
        N = self.nilpotency_index()
        k, power = 0, 1
        while power < N:
            power *= self.field.p
            k += 1
        return self.field.p ** k

    def __repr__(self):
        return f"GroupAlgebra(GF({self.field.p}^{self.field.f})[{self.group!r}])"
