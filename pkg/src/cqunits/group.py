"""The semidirect product G = A x| C_q for an abelian p-group A.

The conjugation convention is sigma(a) = b^-1 a b, so a*b = b*sigma(a)
and (a b^i)(c b^j) = (a sigma^-i(c)) b^(i+j).  Elements are indexed by
g = a_index * q + j for g = a b^j, with A enumerated in mixed-radix
order of exponent tuples (last invariant factor fastest).
"""

from __future__ import annotations

from functools import cached_property

import numpy as np
import sympy

from .errors import (ActionOrderWrong, CtxMismatch, NotAutomorphism,
                     NotFixedPointFree, NotPrime)
from .field import FieldCtx


class AbelianSpec:
    """A = C_{f_1} x ... x C_{f_r} with every factor a power of p."""

    def __init__(self, p: int, factors):
        self.p = p
        self.factors = tuple(int(m) for m in factors)
        if not self.factors:
            raise NotAutomorphism("A must have at least one invariant factor")
        n = 0
        for m in self.factors:
            k = 0
            mm = m
            while mm % p == 0:
                mm //= p
                k += 1
            if mm != 1 or k < 1:
                raise NotPrime(f"invariant factor {m} is not a positive power of p = {p}")
            n += k
        self.n = n
        self.order = int(np.prod(self.factors))

    def __repr__(self):
        return f"AbelianSpec({' x '.join(f'C{m}' for m in self.factors)})"


class ActionSpec:
    """Matrix of the action sigma on A: sigma(a_j) = prod_i a_i^{M[i][j]}."""

    def __init__(self, matrix, abelian: AbelianSpec):
        M = np.asarray(matrix, dtype=np.int64)
        r = len(abelian.factors)
        if M.shape != (r, r):
            raise NotAutomorphism(f"action matrix must be {r}x{r}, got {M.shape}")
        facs = np.asarray(abelian.factors, dtype=np.int64)
        M = M % facs[:, None]  # entry M[i][j] only matters mod the order of a_i
        for i in range(r):
            for j in range(r):
                if (M[i, j] * abelian.factors[j]) % abelian.factors[i] != 0:
                    raise NotAutomorphism(
                        f"sigma(a{j + 1}) has a component of order exceeding |a{j + 1}|")
        self.matrix = M

    def __repr__(self):
        return f"ActionSpec({self.matrix.tolist()})"


class OrbitTable:
    """Orbits of <sigma> on A; the trivial orbit {e} comes first."""

    def __init__(self, orbits, q):
        self.orbits = orbits  # list of (representative, members tuple)
        self.q = q

    @property
    def nontrivial(self):
        return self.orbits[1:]

    @property
    def l(self) -> int:
        return len(self.orbits) - 1

    def __repr__(self):
        return f"OrbitTable({self.l} nontrivial orbits of size {self.q})"


class GroupElem:
    __slots__ = ("spec", "idx")

    def __init__(self, spec: "GroupSpec", idx: int):
        self.spec = spec
        self.idx = int(idx)

    @property
    def a_index(self) -> int:
        return self.idx // self.spec.q

    @property
    def b_exp(self) -> int:
        return self.idx % self.spec.q

    @property
    def a_exps(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.spec.a_exps[self.a_index])

    def __mul__(self, other: "GroupElem") -> "GroupElem":
        if other.spec is not self.spec:
            raise CtxMismatch("elements of different groups cannot be multiplied")
        return GroupElem(self.spec, self.spec.mul_idx(self.idx, other.idx))

    def inverse(self) -> "GroupElem":
        return GroupElem(self.spec, int(self.spec.inv_perm[self.idx]))

    def __pow__(self, e: int) -> "GroupElem":
        if e < 0:
            return self.inverse() ** (-e)
        result = GroupElem(self.spec, 0)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, GroupElem) and other.spec is self.spec
                and other.idx == self.idx)

    def __hash__(self):
        return hash((id(self.spec), self.idx))

    def __repr__(self):
        parts = []
        for k, e in enumerate(self.a_exps):
            if e == 1:
                parts.append(f"a{k + 1}")
            elif e:
                parts.append(f"a{k + 1}^{e}")
        j = self.b_exp
        if j == 1:
            parts.append("b")
        elif j:
            parts.append(f"b^{j}")
        return "*".join(parts) if parts else "1"


class GroupSpec:
    """Validated G = A x| <b> with all index machinery precomputed.

    Immutable after construction; `a_exps`, the sigma permutations and the
    multiplication tables are plain arrays shared by every element.
    """

    _FULL_TABLE_LIMIT = 3000

    def __init__(self, abelian: AbelianSpec, q: int, action: ActionSpec):
        self.abelian = abelian
        self.q = q
        self.action = action
        self.p = abelian.p
        self.n = abelian.n
        self.order = q * abelian.order

        facs = np.asarray(abelian.factors, dtype=np.int64)
        num_a = abelian.order
        a_idx = np.arange(num_a, dtype=np.int64)
        self.a_exps = np.stack(np.unravel_index(a_idx, abelian.factors), axis=1)

        def encode(exps):
            return np.ravel_multi_index(tuple((exps % facs).T), abelian.factors)

        self._encode_a = encode

        sigma = encode(self.a_exps @ action.matrix.T)
        if np.unique(sigma).size != num_a:
            raise NotAutomorphism("the action matrix is not invertible on A")
        fixed = int(np.count_nonzero(sigma == a_idx))
        pows = [a_idx]
        cur = sigma
        for _ in range(q - 1):
            pows.append(cur)
            cur = sigma[cur]
        if np.count_nonzero(cur != a_idx):
            raise ActionOrderWrong(f"sigma^{q} is not the identity")
        if np.count_nonzero(sigma == a_idx) == num_a:
            raise ActionOrderWrong("sigma is the identity, so its order is not q")
        if fixed != 1:
            raise NotFixedPointFree(f"sigma fixes {fixed} elements of A, expected only e")
        self.sigma_pows = np.stack(pows)  # sigma_pows[t] = permutation of sigma^t
        self.a_inv = encode(-self.a_exps)

        # (a b^j)^-1 = sigma^j(a^-1) b^-j
        g = np.arange(self.order, dtype=np.int64)
        ga, gj = g // q, g % q
        self.inv_perm = self.sigma_pows[gj, self.a_inv[ga]] * q + (q - gj) % q

    @cached_property
    def a_add(self) -> np.ndarray:
        """|A| x |A| index table of the A-addition; built on first algebra use."""
        return self._encode_a(self.a_exps[:, None, :] + self.a_exps[None, :, :])

    @cached_property
    def mul_table(self):
        """Full |G| x |G| index table for small groups, None above the cutoff."""
        if self.order > self._FULL_TABLE_LIMIT:
            return None
        g = np.arange(self.order, dtype=np.int64)
        x, y = np.meshgrid(g, g, indexing="ij")
        return self._mul_idx_arrays(x, y)

    def _mul_idx_arrays(self, g1, g2):
        q = self.q
        a1, i = g1 // q, g1 % q
        a2, j = g2 // q, g2 % q
        c = self.sigma_pows[(q - i) % q, a2]  # sigma^-i applied to the A part
        return self.a_add[a1, c] * q + (i + j) % q

    def mul_idx(self, g1, g2):
        if self.mul_table is not None and np.isscalar(g1) and np.isscalar(g2):
            return int(self.mul_table[g1, g2])
        return self._mul_idx_arrays(np.asarray(g1), np.asarray(g2))

    def elem(self, a_exps=None, b_exp: int = 0) -> GroupElem:
        if a_exps is None:
            a = 0
        else:
            a = int(self._encode_a(np.asarray(a_exps, dtype=np.int64)[None, :])[0])
        return GroupElem(self, a * self.q + b_exp % self.q)

    def identity(self) -> GroupElem:
        return GroupElem(self, 0)

    def b(self, j: int = 1) -> GroupElem:
        return GroupElem(self, j % self.q)

    def generator(self, k: int) -> GroupElem:
        """The k-th (1-based) invariant-factor generator of A."""
        exps = [0] * len(self.abelian.factors)
        exps[k - 1] = 1
        return self.elem(exps)

    def elements(self):
        return (GroupElem(self, i) for i in range(self.order))

    def __repr__(self):
        return f"GroupSpec({self.abelian!r} x| C{self.q})"


def make_group(field: FieldCtx, q: int, factors, action) -> GroupSpec:
    """Validated A x| C_q; rejects actions of order != q or with fixed points."""
    if not sympy.isprime(q) or q == 2:
        raise NotPrime(f"q = {q} must be an odd prime")
    if q == field.p:
        raise NotPrime(f"q = {q} must differ from the characteristic p = {field.p}")
    abelian = AbelianSpec(field.p, factors)
    return GroupSpec(abelian, q, ActionSpec(action, abelian))


def orbits(spec: GroupSpec) -> OrbitTable:
    """Partition of A under <sigma>: trivial orbit first, the rest of size q."""
    sigma = spec.sigma_pows[1]
    seen = np.zeros(spec.abelian.order, dtype=bool)
    table = []
    for start in range(spec.abelian.order):
        if seen[start]:
            continue
        members = [start]
        seen[start] = True
        cur = int(sigma[start])
        while cur != start:
            members.append(cur)
            seen[cur] = True
            cur = int(sigma[cur])
        table.append((start, tuple(members)))
    for rep, members in table[1:]:
        assert len(members) == spec.q, "non-trivial orbit of unexpected size"
    assert table[0] == (0, (0,))
    return OrbitTable(table, spec.q)
