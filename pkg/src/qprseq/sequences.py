"""pr-, epr- and qpr-sequences of symmetric matrices.

Each order ``k`` gets a symbol: ``A`` if every minor of the family is
nonzero, ``N`` if every one is zero, ``S`` otherwise.  The principal family
gives the epr-sequence; principal plus almost-principal minors give the
qpr-sequence.

:func:`compute_qpr` does not take a determinant per almost-principal minor.
For a shared index set ``g`` with ``B[g]`` nonsingular, eliminating on
``B[g]`` leaves a trailing block whose ``(i, j)`` entry is, up to sign and a
common nonzero factor, ``det B[g + i, g + j]``.  One elimination therefore
settles all ``(n - k + 1)**2`` minors that share ``g``; singular ``B[g]``
falls back to individual determinants.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Iterable, Literal

from .matrix import (
    MatrixError,
    SymMatrix,
    det_int,
    det_mod,
    quasi_principal_pairs,
    rank,
    rank_int,
    schur_complement,
)

__all__ = [
    "SYMBOLS",
    "classify_order",
    "classify_flags",
    "compute_qpr",
    "compute_epr",
    "compute_pr",
    "last_nonzero_index",
    "ValidationReport",
    "validate_matrix_report",
]

SYMBOLS = "ASN"

Family = Literal["principal", "quasi_principal"]


def classify_flags(seen_zero: bool, seen_nonzero: bool) -> str:
    if seen_zero and seen_nonzero:
        return "S"
    return "A" if seen_nonzero else "N"


def _minor_is_zero(a: tuple, p: int | None, rows: Iterable[int], cols: Iterable[int]) -> bool:
    sub = [[a[i][j] for j in cols] for i in rows]
    if p is None:
        return det_int(sub) == 0
    return det_mod(sub, p) == 0


def classify_order(B: SymMatrix, k: int, family: Family = "quasi_principal",
                   early_exit: bool = True) -> str:
    """Symbol of order ``k`` by direct enumeration of minors.

    This is the straightforward reference path: one determinant per
    position, visited in :func:`~qprseq.matrix.quasi_principal_pairs` order.
    """
    n = B.n
    if not 1 <= k <= n:
        raise MatrixError(f"order {k} out of range 1..{n}")
    if family not in ("principal", "quasi_principal"):
        raise ValueError(f"unknown family {family!r}")
    a, p = B.kernel
    seen_zero = seen_nonzero = False
    for alpha, beta in quasi_principal_pairs(n, k):
        if family == "principal" and alpha != beta:
            break
        if _minor_is_zero(a, p, [i - 1 for i in alpha], [j - 1 for j in beta]):
            seen_zero = True
        else:
            seen_nonzero = True
        if early_exit and seen_zero and seen_nonzero:
            break
    return classify_flags(seen_zero, seen_nonzero)


def _principal_flags(a, p, n: int, k: int, seen_zero: bool, seen_nonzero: bool):
    for alpha in combinations(range(n), k):
        if _minor_is_zero(a, p, alpha, alpha):
            seen_zero = True
        else:
            seen_nonzero = True
        if seen_zero and seen_nonzero:
            break
    return seen_zero, seen_nonzero


def _eliminate_on(a, p: int | None, gamma: tuple[int, ...], delta: list[int]):
    """Eliminate on the block ``gamma``; return the trailing block or None.

    The returned ``T[s][t]`` is zero exactly when
    ``det B[gamma + delta[s], gamma + delta[t]]`` is zero.  ``None`` means
    ``B[gamma]`` is singular.  Row swaps stay inside ``gamma`` so the row set
    of every bordered minor is unchanged.
    """
    m = len(gamma)
    order = list(gamma) + delta
    M = [[a[i][j] for j in order] for i in order]
    size = len(order)
    prev = 1
    for c in range(m):
        piv = None
        for r in range(c, m):
            v = M[r][c]
            if (v % p) if p else v:
                piv = r
                break
        if piv is None:
            return None
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
        rowc = M[c]
        pc = rowc[c]
        if p is None:
            for r in range(c + 1, size):
                rowr = M[r]
                f = rowr[c]
                for j in range(c + 1, size):
                    rowr[j] = (pc * rowr[j] - f * rowc[j]) // prev
            prev = pc
        else:
            inv = pow(pc, -1, p)
            for r in range(c + 1, size):
                rowr = M[r]
                f = rowr[c] * inv % p
                if f:
                    for j in range(c + 1, size):
                        rowr[j] = (rowr[j] - f * rowc[j]) % p
    if p is not None:
        return [[v % p for v in row[m:]] for row in M[m:]]
    return [row[m:] for row in M[m:]]


def _almost_principal_flags(a, p, n: int, k: int, seen_zero: bool, seen_nonzero: bool):
    for gamma in combinations(range(n), k - 1):
        delta = [i for i in range(n) if i not in gamma]
        T = _eliminate_on(a, p, gamma, delta)
        if T is None and rank_int([[a[i][j] for j in gamma] for i in gamma], p) <= k - 3:
            # bordering B[gamma] by one row and one column adds at most 2 to
            # its rank, so every minor sharing gamma is zero
            seen_zero = True
            if seen_nonzero:
                return seen_zero, seen_nonzero
            continue
        if T is None:
            for s, i in enumerate(delta):
                for t, j in enumerate(delta):
                    if s == t:
                        continue
                    if _minor_is_zero(a, p, gamma + (i,), gamma + (j,)):
                        seen_zero = True
                    else:
                        seen_nonzero = True
                    if seen_zero and seen_nonzero:
                        return seen_zero, seen_nonzero
            continue
        for s, row in enumerate(T):
            for t, v in enumerate(row):
                if s == t:
                    continue
                if v:
                    seen_nonzero = True
                else:
                    seen_zero = True
            if seen_zero and seen_nonzero:
                return seen_zero, seen_nonzero
    return seen_zero, seen_nonzero


def compute_qpr(B: SymMatrix) -> str:
    """The qpr-sequence of ``B`` as a string over ``A``, ``S``, ``N``.

    >>> from qprseq.matrix import SymMatrix
    >>> compute_qpr(SymMatrix.from_rows([[1, 1], [1, 0]]))
    'SA'
    """
    n = B.n
    if n < 1:
        raise MatrixError("qpr-sequence needs n >= 1")
    a, p = B.kernel
    # every minor of order above the rank vanishes
    r = rank_int([list(row) for row in a], p)
    out = []
    for k in range(1, r + 1):
        z, nz = _principal_flags(a, p, n, k, False, False)
        # at k == n there is no almost-principal position
        if not (z and nz) and k < n:
            z, nz = _almost_principal_flags(a, p, n, k, z, nz)
        out.append(classify_flags(z, nz))
    return "".join(out) + "N" * (n - r)


def compute_epr(B: SymMatrix) -> str:
    n = B.n
    if n < 1:
        raise MatrixError("epr-sequence needs n >= 1")
    a, p = B.kernel
    return "".join(
        classify_flags(*_principal_flags(a, p, n, k, False, False)) for k in range(1, n + 1)
    )


def compute_pr(B: SymMatrix) -> str:
    """The pr-sequence rendered as ``r0]r1...rn``.

    ``r0`` is 1 exactly when ``B`` has a zero diagonal entry.  That is the
    convention this package follows; some sources use the opposite one.
    """
    r0 = int(any(B[i, i] == 0 for i in range(B.n)))
    bits = "".join("0" if s == "N" else "1" for s in compute_epr(B))
    return f"{r0}]{bits}"


def last_nonzero_index(seq: str) -> int:
    """1-based index of the last non-``N`` symbol, 0 if there is none."""
    for i in range(len(seq), 0, -1):
        if seq[i - 1] != "N":
            return i
    return 0


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ValidationReport:
    n: int
    pr: str
    epr: str
    qpr: str
    rank: int
    checks: list[Check] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def lines(self) -> list[str]:
        return [f"[{'pass' if c.passed else 'FAIL'}] {c.name}" + (f": {c.detail}" if c.detail else "")
                for c in self.checks]


def _has_nn_then_nonN(epr: str) -> bool:
    i = epr.find("NN")
    return i >= 0 and any(c != "N" for c in epr[i:])


def validate_matrix_report(B: SymMatrix, schur_gamma=None) -> ValidationReport:
    """Compute pr/epr/qpr and check every structural fact they must satisfy.

    A failing check is an implementation bug, never a property of ``B``.
    If ``schur_gamma`` is given (a nonsingular principal index set), the
    Schur complement correspondence is checked as well.
    """
    qpr = compute_qpr(B)
    epr = compute_epr(B)
    pr = compute_pr(B)
    r = rank(B)
    rep = ValidationReport(B.n, pr, epr, qpr, r)
    add = rep.checks.append

    add(Check("qpr does not end in S", not qpr.endswith("S"), qpr))
    bad = [f for f in ("NA", "NS") if f in qpr]
    add(Check("no NA/NS in qpr", not bad, ",".join(bad)))
    n_idx = qpr.find("N")
    add(Check("N is followed only by N", n_idx < 0 or set(qpr[n_idx:]) == {"N"}, qpr))
    add(Check("rank equals index of last A or S", r == last_nonzero_index(qpr),
              f"rank={r}, qpr={qpr}"))
    mism = [k + 1 for k in range(B.n) if qpr[k] in "AN" and epr[k] != qpr[k]]
    add(Check("qpr A/N forces epr symbol", not mism, f"orders {mism}" if mism else ""))
    add(Check("epr NN is followed only by N", not _has_nn_then_nonN(epr), epr))
    add(Check("qpr full order is A or N", qpr[-1] in "AN", qpr))
    add(Check("pr bits match epr", all((b == "1") == (s != "N") for b, s in zip(pr.split("]")[1], epr)),
              f"pr={pr}, epr={epr}"))
    if qpr[0] == "N":
        zero = all(x == 0 for row in B.entries for x in row)
        add(Check("qpr starting with N means zero matrix", zero and set(qpr) == {"N"}))

    if schur_gamma is not None:
        k = len(schur_gamma)
        C = schur_complement(B, schur_gamma)
        add(Check("Schur complement rank", rank(C) == r - k, f"rank C={rank(C)}, rank B={r}, k={k}"))
        if C.n:
            q2 = compute_qpr(C)
            bad = [j for j in range(1, C.n + 1) if qpr[j + k - 1] in "AN" and q2[j - 1] != qpr[j + k - 1]]
            add(Check("Schur complement keeps A/N symbols", not bad, f"qpr={qpr}, qpr(C)={q2}"))
    return rep
