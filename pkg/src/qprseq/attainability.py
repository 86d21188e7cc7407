"""Which qpr-sequences are attainable by symmetric matrices.

Over a field of characteristic 0 a sequence is attainable exactly when it
does not end in ``S`` and never has ``N`` directly followed by ``A`` or
``S``.  Over other fields the same two conditions are only necessary.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product

__all__ = [
    "Violation",
    "Verdict",
    "normalize",
    "check",
    "enumerate_attainable",
    "count_attainable",
    "CHAR_P_CAVEAT",
]

MAX_ENUMERATE = 20

CHAR_P_CAVEAT = (
    "note: over a field of nonzero characteristic these conditions are "
    "necessary but not sufficient (e.g. AAN is not attainable over GF(2))"
)


class Violation(enum.Enum):
    EndsInS = "ends in S"
    ContainsNA = "contains NA"
    ContainsNS = "contains NS"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Verdict:
    attainable: bool
    violations: tuple[Violation, ...] = ()

    def __str__(self):
        if self.attainable:
            return "attainable"
        return "not attainable: " + ", ".join(str(v) for v in self.violations)


def normalize(seq: str) -> str:
    """Uppercase ``seq`` and reject anything outside ``{A, S, N}``."""
    s = seq.strip().upper()
    if not s:
        raise ValueError("empty sequence")
    bad = sorted(set(s) - set("ASN"))
    if bad:
        raise ValueError(f"invalid symbol(s) {''.join(bad)!r} in {seq!r}")
    return s


def check(seq: str) -> Verdict:
    s = normalize(seq)
    v = []
    if s[-1] == "S":
        v.append(Violation.EndsInS)
    if "NA" in s:
        v.append(Violation.ContainsNA)
    if "NS" in s:
        v.append(Violation.ContainsNS)
    return Verdict(not v, tuple(v))


def enumerate_attainable(n: int) -> list[str]:
    """All attainable sequences of length ``n`` in lexicographic order."""
    if not 1 <= n <= MAX_ENUMERATE:
        raise ValueError(f"n must be in 1..{MAX_ENUMERATE}, got {n}")
    out = []
    for k in range(n + 1):
        tail = "N" * (n - k)
        for head in product("AS", repeat=k):
            if k == n and k and head[-1] == "S":
                continue
            out.append("".join(head) + tail)
    return sorted(out)


def count_attainable(n: int) -> int:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return 2**n + 2 ** (n - 1) - 1
