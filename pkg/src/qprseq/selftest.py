"""Quick invariant suite behind ``qprseq selftest``."""

from __future__ import annotations

import random
from itertools import combinations

from .attainability import check, enumerate_attainable
from .exactfield import GF, QQ
from .matrix import complement, det, random_symmetric, schur_complement, submatrix
from .search import oracle_qpr
from .sequences import compute_qpr, validate_matrix_report
from .synthesis import synthesize

FIELDS = (QQ, GF(2), GF(3), GF(5))


def _nonsingular_gamma(B, rng):
    sets = [g for k in range(1, B.n) for g in combinations(range(1, B.n + 1), k)]
    rng.shuffle(sets)
    for g in sets:
        if det(submatrix(B, g, g), B.field) != 0:
            return g
    return None


def run_selftest(count: int = 200, seed: int = 0) -> list[tuple[str, bool, str]]:
    rng = random.Random(seed)
    results = []

    bad = 0
    for i in range(count):
        F = FIELDS[i % len(FIELDS)]
        B = random_symmetric(rng.randint(1, 6), F, rng.getrandbits(32), rng.choice((1, 2, 5)))
        g = _nonsingular_gamma(B, rng) if F is QQ else None
        rep = validate_matrix_report(B, schur_gamma=g)
        if not rep.ok or not check(rep.qpr).attainable:
            bad += 1
    results.append(("structural checks on random matrices", bad == 0, f"{count} matrices, {bad} bad"))

    bad = 0
    for i in range(count):
        F = FIELDS[i % len(FIELDS)]
        B = random_symmetric(rng.randint(1, 4), F, rng.getrandbits(32), 1)
        bad += compute_qpr(B) != oracle_qpr(B)
    results.append(("fast qpr agrees with cofactor oracle", bad == 0, f"{count} matrices, {bad} bad"))

    bad = 0
    for _ in range(count // 4 or 1):
        B = random_symmetric(rng.randint(2, 5), QQ, rng.getrandbits(32), 3)
        g = _nonsingular_gamma(B, rng)
        if g is None:
            continue
        C = schur_complement(B, g)
        d = complement(B.n, g)
        dg = det(submatrix(B, g, g))
        for a in range(len(d)):
            for b in range(len(d)):
                lhs = C[a, b] * dg
                rhs = det(submatrix(B, (d[a],) + g, (d[b],) + g))
                bad += lhs != rhs
    results.append(("Schur complement entry identity", bad == 0, f"{bad} mismatches"))

    bad = 0
    total = 0
    for n in range(1, 5):
        for s in enumerate_attainable(n):
            B, _ = synthesize(s, seed=seed)
            total += 1
            bad += compute_qpr(B) != s
    results.append(("synthesis realizes every attainable sequence, n <= 4", bad == 0,
                    f"{total} sequences, {bad} bad"))
    return results
