"""Brute-force oracles and exhaustive surveys over small prime fields."""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Optional

from .exactfield import QQ, FieldSpec
from .matrix import SymMatrix, random_symmetric
from .sequences import compute_qpr

__all__ = [
    "SearchError",
    "laplace_det",
    "oracle_qpr",
    "SurveyResult",
    "survey_size",
    "matrix_from_counter",
    "exhaustive_survey",
    "random_search",
]

ORACLE_MAX_N = 7
SURVEY_BUDGET = 10**7


class SearchError(ValueError):
    pass


def laplace_det(M, zero, one):
    """Cofactor expansion along the first row.  Factorial time; oracle use only."""
    n = len(M)
    if n == 0:
        return one
    if n == 1:
        return M[0][0]
    total = zero
    for j in range(n):
        if M[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * laplace_det(minor, zero, one)
        total = total + term if j % 2 == 0 else total - term
    return total


def oracle_qpr(B: SymMatrix) -> str:
    """qpr-sequence from every (alpha, beta) pair, filtered by the definition.

    Deliberately naive: all pairs of k-subsets are generated and the
    quasi-principal ones kept, every minor is expanded by cofactors, and
    nothing exits early.
    """
    n = B.n
    if n > ORACLE_MAX_N:
        raise SearchError(f"oracle limited to n <= {ORACLE_MAX_N}")
    rows = [list(r) for r in B.entries]
    zero, one = B.field.zero(), B.field.one()
    out = []
    for k in range(1, n + 1):
        values = []
        for alpha in combinations(range(n), k):
            for beta in combinations(range(n), k):
                if len(set(alpha) & set(beta)) < k - 1:
                    continue
                sub = [[rows[i][j] for j in beta] for i in alpha]
                values.append(laplace_det(sub, zero, one) != 0)
        if all(values):
            out.append("A")
        elif any(values):
            out.append("S")
        else:
            out.append("N")
    return "".join(out)


@dataclass
class SurveyResult:
    p: int
    n: int
    counts: dict[str, int] = dc_field(default_factory=dict)
    witnesses: dict[str, int] = dc_field(default_factory=dict)  # sequence -> odometer counter

    @property
    def field(self) -> FieldSpec:
        return FieldSpec(self.p)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def realized(self) -> list[str]:
        return sorted(self.counts)

    def witness(self, seq: str) -> SymMatrix:
        return matrix_from_counter(self.p, self.n, self.witnesses[seq])

    def merge(self, other: "SurveyResult") -> "SurveyResult":
        if (self.p, self.n) != (other.p, other.n):
            raise SearchError("cannot merge surveys of different shape")
        out = SurveyResult(self.p, self.n, dict(self.counts), dict(self.witnesses))
        for s, c in other.counts.items():
            out.counts[s] = out.counts.get(s, 0) + c
            w = other.witnesses[s]
            out.witnesses[s] = min(w, out.witnesses.get(s, w))
        return out

    def to_dict(self, with_witnesses: bool = False) -> dict:
        d = {"field": f"F{self.p}", "n": self.n, "total": self.total,
             "counts": {s: self.counts[s] for s in self.realized()}}
        if with_witnesses:
            d["witnesses"] = {s: [[str(x) for x in r] for r in self.witness(s).entries]
                              for s in self.realized()}
        return d

    def to_json(self, with_witnesses: bool = False) -> str:
        return json.dumps(self.to_dict(with_witnesses), indent=2)

    def to_table(self, with_witnesses: bool = False) -> str:
        lines = [f"# GF({self.p}), n={self.n}, {self.total} symmetric matrices"]
        width = max(self.n, 8)
        for s in self.realized():
            line = f"{s:<{width}} {self.counts[s]}"
            if with_witnesses:
                w = self.witness(s)
                line += "  " + " | ".join(" ".join(str(x) for x in r) for r in w.entries)
            lines.append(line)
        return "\n".join(lines)


def survey_size(p: int, n: int) -> int:
    return p ** (n * (n + 1) // 2)


def matrix_from_counter(p: int, n: int, counter: int) -> SymMatrix:
    """Decode an odometer value into a symmetric matrix.

    Upper-triangle entries are read row by row; the first one, ``B[1,1]``,
    is the most significant base-``p`` digit.
    """
    m = n * (n + 1) // 2
    digits = [0] * m
    for pos in range(m - 1, -1, -1):
        counter, digits[pos] = divmod(counter, p)
    rows = [[0] * n for _ in range(n)]
    it = iter(digits)
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = next(it)
    return SymMatrix.from_rows(rows, FieldSpec(p))


def _survey_range(p: int, n: int, start: int, stop: int) -> SurveyResult:
    res = SurveyResult(p, n)
    counts, witnesses = res.counts, res.witnesses
    for c in range(start, stop):
        s = compute_qpr(matrix_from_counter(p, n, c))
        if s in counts:
            counts[s] += 1
        else:
            counts[s] = 1
            witnesses[s] = c
    return res


def exhaustive_survey(p: int, n: int, workers: int = 1, start: int = 0,
                      stop: Optional[int] = None) -> SurveyResult:
    """qpr-sequences of every symmetric ``n x n`` matrix over GF(p).

    ``start``/``stop`` restrict the odometer range, which allows a long
    survey to be checkpointed and resumed.  With ``workers > 1`` the range is
    split by the value of ``B[1,1]`` (one contiguous block per value).
    """
    FieldSpec(p)  # validates primality
    if n < 1:
        raise SearchError("n must be >= 1")
    total = survey_size(p, n)
    if total > SURVEY_BUDGET:
        raise SearchError(f"{total} matrices exceeds the survey budget of {SURVEY_BUDGET}")
    stop = total if stop is None else min(stop, total)
    if workers <= 1:
        return _survey_range(p, n, start, stop)
    block = total // p
    ranges = [(max(start, d * block), min(stop, (d + 1) * block)) for d in range(p)]
    ranges = [r for r in ranges if r[0] < r[1]]
    res = SurveyResult(p, n)
    with ProcessPoolExecutor(max_workers=workers) as ex:
        for part in ex.map(_survey_range, *zip(*[(p, n, a, b) for a, b in ranges])):
            res = res.merge(part)
    return res


def random_search(seq: str, field: FieldSpec = QQ, trials: int = 1000, seed: int = 0,
                  bound: int = 2) -> Optional[SymMatrix]:
    """First random symmetric matrix with qpr-sequence ``seq``, if any is hit.

    Entries are drawn from [-bound, bound] so zero minors are
    common enough to realize ``S`` and ``N`` symbols.
    """
    if trials < 1:
        raise SearchError("trials must be >= 1")
    seq = seq.strip().upper()
    rng = random.Random(seed)
    n = len(seq)
    for _ in range(trials):
        B = random_symmetric(n, field, rng.getrandbits(64), bound)
        if compute_qpr(B) == seq:
            return B
    return None
