"""Symmetric matrices over exact fields.

Index sets are 1-based throughout the public API, matching the usual
notation ``B[alpha, beta]``.  General (non-symmetric) matrices only appear as
derived values and are plain tuples of rows.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb, lcm
from typing import Iterator, NamedTuple, Sequence

from .exactfield import QQ, FieldError, FieldSpec, Residue, Scalar

__all__ = [
    "MatrixError",
    "SingularError",
    "SymMatrix",
    "IndexPair",
    "submatrix",
    "det",
    "rank",
    "quasi_principal_pairs",
    "count_quasi_principal_pairs",
    "complement",
    "schur_complement",
    "border",
    "direct_sum",
    "identity",
    "zeros",
    "random_symmetric",
    "matvec",
    "dot",
]

Rows = Sequence[Sequence[Scalar]]


class MatrixError(ValueError):
    pass


class SingularError(MatrixError):
    """A principal submatrix that had to be inverted is singular."""


@dataclass(frozen=True, eq=True)
class SymMatrix:
    """An ``n x n`` symmetric matrix with entries in ``field``.

    Construct through :meth:`from_rows`, which converts the entries and
    rejects asymmetric input.
    """

    field: FieldSpec
    entries: tuple[tuple[Scalar, ...], ...]

    @classmethod
    def from_rows(cls, rows, field: FieldSpec = QQ) -> "SymMatrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        for i, r in enumerate(rows):
            if len(r) != n:
                raise MatrixError(f"row {i + 1} has {len(r)} entries, expected {n}")
        conv = tuple(tuple(field(x) for x in r) for r in rows)
        for i in range(n):
            for j in range(i + 1, n):
                if conv[i][j] != conv[j][i]:
                    raise MatrixError(
                        f"not symmetric: entry ({i + 1},{j + 1}) = {conv[i][j]} "
                        f"but ({j + 1},{i + 1}) = {conv[j][i]}"
                    )
        return cls(field, conv)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        """0-based entry access."""
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> list[list[Scalar]]:
        return [list(r) for r in self.entries]

    @cached_property
    def kernel(self) -> tuple[tuple[tuple[int, ...], ...], int | None]:
        """Integer image used by the zero-test kernels.

        Over Q the whole matrix is scaled by the lcm of its denominators,
        which multiplies every order-k minor by the same nonzero factor, so
        zero patterns of minors are unchanged.  Over GF(p) the residues are
        returned along with ``p``.
        """
        if self.field.is_rational:
            L = 1
            for r in self.entries:
                for x in r:
                    L = lcm(L, x.denominator)
            return tuple(tuple(int(x * L) for x in r) for r in self.entries), None
        return tuple(tuple(x.value for x in r) for r in self.entries), self.field.p

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in r) for r in self.entries)


class IndexPair(NamedTuple):
    """Row set and column set of a quasi-principal submatrix (1-based)."""

    alpha: tuple[int, ...]
    beta: tuple[int, ...]

    @property
    def is_principal(self) -> bool:
        return self.alpha == self.beta


def _check_indices(idx: Sequence[int], n: int) -> None:
    if len(set(idx)) != len(idx):
        raise MatrixError(f"repeated index in {list(idx)}")
    for i in idx:
        if not 1 <= i <= n:
            raise MatrixError(f"index {i} out of range 1..{n}")


def submatrix(B: SymMatrix | Rows, alpha: Sequence[int], beta: Sequence[int]) -> tuple:
    """Rows ``alpha`` and columns ``beta`` of ``B``, in the order given."""
    entries = B.entries if isinstance(B, SymMatrix) else B
    n = len(entries)
    ncols = len(entries[0]) if n else 0
    _check_indices(alpha, n)
    _check_indices(beta, ncols)
    return tuple(tuple(entries[i - 1][j - 1] for j in beta) for i in alpha)


# --- integer / modular kernels -------------------------------------------
# These operate destructively on lists of lists of Python ints.


def det_int(a: list[list[int]]) -> int:
    """Fraction-free (Bareiss) determinant of an integer matrix."""
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        rowk = a[k]
        if rowk[k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    rowk = a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = rowk[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            if aik:
                for j in range(k + 1, n):
                    rowi[j] = (akk * rowi[j] - aik * rowk[j]) // prev
            else:
                for j in range(k + 1, n):
                    rowi[j] = akk * rowi[j] // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def det_mod(a: list[list[int]], p: int) -> int:
    """Determinant modulo a prime ``p`` by Gaussian elimination."""
    n = len(a)
    d = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] % p), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            d = -d
        rowk = a[k]
        akk = rowk[k] % p
        d = d * akk % p
        inv = pow(akk, -1, p)
        for i in range(k + 1, n):
            rowi = a[i]
            f = rowi[k] * inv % p
            if f:
                for j in range(k + 1, n):
                    rowi[j] = (rowi[j] - f * rowk[j]) % p
    return d % p


def rank_int(a: list[list[int]], p: int | None = None) -> int:
    """Rank of an integer matrix over Q (``p is None``) or over GF(p)."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        if p is None:
            piv = next((i for i in range(r, nrows) if a[i][c]), None)
        else:
            piv = next((i for i in range(r, nrows) if a[i][c] % p), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        rowr = a[r]
        arc = rowr[c]
        for i in range(r + 1, nrows):
            rowi = a[i]
            f = rowi[c]
            if p is None:
                # fraction-free step; exact division by the previous pivot
                for j in range(c + 1, ncols):
                    rowi[j] = (arc * rowi[j] - f * rowr[j]) // prev
            elif f % p:
                f = f * pow(arc, -1, p) % p
                for j in range(c + 1, ncols):
                    rowi[j] = (rowi[j] - f * rowr[j]) % p
            rowi[c] = 0
        if p is None:
            prev = arc
        r += 1
    return r


def _infer_field(M: Rows, field: FieldSpec | None) -> FieldSpec:
    if field is not None:
        return field
    if isinstance(M, SymMatrix):
        return M.field
    for r in M:
        for x in r:
            return FieldSpec(x.p) if isinstance(x, Residue) else QQ
    return QQ


def _as_int_rows(M: Rows, field: FieldSpec) -> tuple[list[list[int]], Fraction]:
    """Integer rows plus the factor to multiply the integer determinant by."""
    if not field.is_rational:
        return [[field(x).value for x in r] for r in M], Fraction(1)
    out = []
    scale = Fraction(1)
    for r in M:
        r = [Fraction(x) for x in r]
        L = 1
        for x in r:
            L = lcm(L, x.denominator)
        out.append([int(x * L) for x in r])
        scale /= L
    return out, scale


def det(M: SymMatrix | Rows, field: FieldSpec | None = None) -> Scalar:
    """Exact determinant.  The 0x0 determinant is 1.

    Over Q each row's denominators are cleared, the integer determinant is
    taken fraction-free, and the scale is divided out once at the end.
    """
    field = _infer_field(M, field)
    rows = M.entries if isinstance(M, SymMatrix) else M
    n = len(rows)
    for r in rows:
        if len(r) != n:
            raise MatrixError("determinant of a non-square matrix")
    a, scale = _as_int_rows(rows, field)
    if field.is_rational:
        return det_int(a) * scale
    return field(det_mod(a, field.p))


def rank(M: SymMatrix | Rows, field: FieldSpec | None = None) -> int:
    field = _infer_field(M, field)
    rows = M.entries if isinstance(M, SymMatrix) else M
    a, _ = _as_int_rows(rows, field)
    return rank_int(a, field.p)


def count_quasi_principal_pairs(n: int, k: int) -> int:
    return comb(n, k) * (1 + k * (n - k))


def quasi_principal_pairs(n: int, k: int) -> Iterator[IndexPair]:
    """Every quasi-principal position of order ``k`` in an ``n x n`` matrix.

    Principal pairs come first in lexicographic order of alpha, then the
    almost-principal pairs ordered by (shared part, extra row, extra column).
    """
    if not 1 <= k <= n:
        raise MatrixError(f"order {k} out of range 1..{n}")
    universe = range(1, n + 1)
    for alpha in combinations(universe, k):
        yield IndexPair(alpha, alpha)
    for gamma in combinations(universe, k - 1):
        rest = [i for i in universe if i not in gamma]
        for i in rest:
            for j in rest:
                if i != j:
                    yield IndexPair(tuple(sorted(gamma + (i,))), tuple(sorted(gamma + (j,))))


def complement(n: int, gamma: Sequence[int]) -> tuple[int, ...]:
    g = set(gamma)
    return tuple(i for i in range(1, n + 1) if i not in g)


def _solve(A: list[list[Scalar]], Bcols: list[list[Scalar]], field: FieldSpec) -> list[list[Scalar]]:
    """Solve ``A X = B`` by Gauss-Jordan elimination; raises on singular A."""
    m = len(A)
    w = len(Bcols[0]) if Bcols else 0
    aug = [list(A[i]) + list(Bcols[i]) for i in range(m)]
    for c in range(m):
        piv = next((i for i in range(c, m) if aug[i][c] != 0), None)
        if piv is None:
            raise SingularError("principal submatrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(m):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[m:m + w] for row in aug]


def schur_complement(B: SymMatrix, gamma: Sequence[int]) -> SymMatrix:
    """``B[d,d] - B[d,g] B[g,g]^-1 B[g,d]`` with ``d`` the complement of ``g``.

    Row/column ``t`` of the result corresponds to index ``complement(n, gamma)[t]``
    of ``B``.
    """
    gamma = tuple(sorted(gamma))
    _check_indices(gamma, B.n)
    delta = complement(B.n, gamma)
    Bgg = [list(r) for r in submatrix(B, gamma, gamma)]
    if det(Bgg, B.field) == 0:
        raise SingularError(f"B[{list(gamma)}] is singular")
    if len(gamma) > rank(B):
        raise SingularError(f"|gamma| = {len(gamma)} exceeds rank {rank(B)}")
    Bgd = [list(r) for r in submatrix(B, gamma, delta)]
    Bdd = submatrix(B, delta, delta)
    if gamma:
        X = _solve(Bgg, Bgd, B.field)
    else:
        X = []
    zero = B.field.zero()
    out = []
    for a in range(len(delta)):
        row = []
        for b in range(len(delta)):
            s = zero
            for t in range(len(gamma)):
                s = s + Bgd[t][a] * X[t][b]
            row.append(Bdd[a][b] - s)
        out.append(row)
    # force exact symmetry of the representation
    for a in range(len(delta)):
        for b in range(a + 1, len(delta)):
            assert out[a][b] == out[b][a]
            out[b][a] = out[a][b]
    return SymMatrix(B.field, tuple(tuple(r) for r in out))


def matvec(B: SymMatrix, x: Sequence[Scalar]) -> list[Scalar]:
    if len(x) != B.n:
        raise MatrixError(f"vector length {len(x)} != order {B.n}")
    xs = [B.field(v) for v in x]
    zero = B.field.zero()
    out = []
    for r in B.entries:
        s = zero
        for a, b in zip(r, xs):
            s = s + a * b
        out.append(s)
    return out


def dot(u: Sequence[Scalar], v: Sequence[Scalar], field: FieldSpec) -> Scalar:
    s = field.zero()
    for a, b in zip(u, v):
        s = s + field(a) * field(b)
    return s


def border(B: SymMatrix, v: Sequence[Scalar], d: Scalar) -> SymMatrix:
    """Append column ``v`` (and row ``v^T``) with corner ``d``."""
    if len(v) != B.n:
        raise MatrixError(f"border vector has length {len(v)}, expected {B.n}")
    F = B.field
    v = [F(x) for x in v]
    rows = [list(r) + [v[i]] for i, r in enumerate(B.entries)]
    rows.append(v + [F(d)])
    return SymMatrix(F, tuple(tuple(r) for r in rows))


def direct_sum(B1: SymMatrix, B2: SymMatrix) -> SymMatrix:
    if B1.field != B2.field:
        raise MatrixError(f"field mismatch: {B1.field} vs {B2.field}")
    z = B1.field.zero()
    n1, n2 = B1.n, B2.n
    rows = [tuple(r) + (z,) * n2 for r in B1.entries]
    rows += [(z,) * n1 + tuple(r) for r in B2.entries]
    return SymMatrix(B1.field, tuple(rows))


def identity(n: int, field: FieldSpec = QQ) -> SymMatrix:
    return SymMatrix.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], field)


def zeros(n: int, field: FieldSpec = QQ) -> SymMatrix:
    return SymMatrix.from_rows([[0] * n for _ in range(n)], field)


def random_symmetric(n: int, field: FieldSpec = QQ, seed: int = 0, bound: int = 9) -> SymMatrix:
    """Entries uniform on integers in [-bound, bound], mapped into ``field``."""
    if n < 0 or bound < 1:
        raise MatrixError("need n >= 0 and bound >= 1")
    rng = random.Random(seed)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = rng.randint(-bound, bound)
    return SymMatrix.from_rows(rows, field)
