"""Constructing a rational symmetric matrix with a prescribed qpr-sequence.

Every witness is grown from a small base matrix by repeated bordering,

    B' = [[B, Bx], [x^T B, x^T B x + t]],

with four flavours:

``copyN``  t = 0, any x            q_1..q_n        -> q_1..q_n N
``copyA``  t != 0, any x           q_1..q_{n-1} A  -> q_1..q_{n-1} A A
``AtoSN``  t = 0, x_1 = 0          q_1..q_{n-1} A  -> q_1..q_{n-1} S N
``AtoSA``  t != 0, x_1 = 0         q_1..q_{n-1} A  -> q_1..q_{n-1} S A

Forcing ``x_1 = 0`` puts the new column in the span of columns 2..n, which
makes the almost-principal minor on rows 1..n and columns 2..n+1 vanish.

A random ``x`` (and ``t``) works for all but a proper algebraic subset of
choices, so each step draws integers from a seeded generator, recomputes the
whole qpr-sequence of the result and redraws on mismatch.  Callers therefore
always get an exact witness; randomness only affects which one.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Optional

from .attainability import Verdict, check, normalize
from .matrix import SymMatrix, border, det, direct_sum, dot, identity, matvec, rank, zeros
from .sequences import compute_qpr

__all__ = [
    "SynthesisError",
    "UnattainableError",
    "RetryExhausted",
    "RetryPolicy",
    "Step",
    "SynthesisTrace",
    "base_witness",
    "append_copyN",
    "append_copyA",
    "append_AtoSN",
    "append_AtoSA",
    "synthesize",
    "replay",
]

STEP_KINDS = ("base", "copyN", "copyA", "AtoSN", "AtoSA")
SMALL_T = (1, 2, 3)


class SynthesisError(ValueError):
    pass


class UnattainableError(SynthesisError):
    def __init__(self, seq: str, verdict: Verdict):
        super().__init__(f"{seq}: {verdict}")
        self.verdict = verdict


class RetryExhausted(SynthesisError):
    pass


@dataclass(frozen=True)
class RetryPolicy:
    seed: int = 0
    initial_bound: int = 4
    max_retries: int = 64

    def bound(self, failures: int) -> int:
        """Entry bound after ``failures`` rejected draws (doubles periodically)."""
        period = math.ceil(self.max_retries / 8)
        return self.initial_bound * 2 ** (failures // period)

    def rng(self) -> random.Random:
        return random.Random(self.seed)


@dataclass(frozen=True)
class Step:
    kind: str
    name: str = ""
    x: tuple[int, ...] = ()
    t: int = 0
    retries: int = 0
    qpr: str = ""

    def to_text(self) -> str:
        if self.kind == "base":
            return f"base {self.name} qpr={self.qpr}"
        xs = ",".join(str(v) for v in self.x) or "-"
        return f"{self.kind} x={xs} t={self.t} retries={self.retries} qpr={self.qpr}"

    @classmethod
    def from_text(cls, line: str) -> "Step":
        parts = line.split()
        if not parts or parts[0] not in STEP_KINDS:
            raise ValueError(f"bad trace line {line!r}")
        kind = parts[0]
        if kind == "base":
            if len(parts) != 3 or not parts[2].startswith("qpr="):
                raise ValueError(f"bad trace line {line!r}")
            return cls("base", name=parts[1], qpr=parts[2][4:])
        kv = dict(p.split("=", 1) for p in parts[1:])
        x = () if kv["x"] == "-" else tuple(int(v) for v in kv["x"].split(","))
        return cls(kind, x=x, t=int(kv["t"]), retries=int(kv["retries"]), qpr=kv["qpr"])


@dataclass
class SynthesisTrace:
    target: str = ""
    seed: int = 0
    steps: list[Step] = field(default_factory=list)

    def to_text(self) -> str:
        lines = [f"target={self.target} seed={self.seed}"]
        lines += [s.to_text() for s in self.steps]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SynthesisTrace":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("target="):
            raise ValueError("trace must start with a target= line")
        head = dict(p.split("=", 1) for p in lines[0].split())
        return cls(head["target"], int(head["seed"]), [Step.from_text(ln) for ln in lines[1:]])


def _parse_base_name(name: str) -> tuple[str, int]:
    if name.startswith("SSbarSA(") and name.endswith(")"):
        return "SSbarSA", int(name[8:-1])
    if name.startswith("zero(") and name.endswith(")"):
        return "zero", int(name[5:-1])
    return name, 0


def base_witness(kind: str, n: int = 0) -> SymMatrix:
    """Small hand-made witnesses the constructions start from.

    ``A`` -> [1], ``AA`` -> [[1,1],[1,2]], ``SA`` -> I_2,
    ``SSbarSA`` -> I_{n-2} (+) [[1,1],[1,0]] with qpr ``S...SA`` of length n,
    ``zero`` -> the n x n zero matrix.  Names like ``SSbarSA(4)`` are accepted.
    """
    if "(" in kind:
        kind, n = _parse_base_name(kind)
    if kind == "A":
        B, want = SymMatrix.from_rows([[1]]), "A"
    elif kind == "AA":
        B, want = SymMatrix.from_rows([[1, 1], [1, 2]]), "AA"
    elif kind == "SA":
        B, want = identity(2), "SA"
    elif kind == "SSbarSA":
        if n < 2:
            raise SynthesisError("SSbarSA needs n >= 2")
        B = direct_sum(identity(n - 2), SymMatrix.from_rows([[1, 1], [1, 0]]))
        want = "S" * (n - 1) + "A"
    elif kind == "zero":
        if n < 1:
            raise SynthesisError("zero witness needs n >= 1")
        B, want = zeros(n), "N" * n
    else:
        raise SynthesisError(f"unknown base witness {kind!r}")
    got = compute_qpr(B)
    if got != want:
        raise AssertionError(f"base witness {kind} has qpr {got}, expected {want}")
    return B


def _base_name(kind: str, n: int) -> str:
    return f"{kind}({n})" if kind in ("SSbarSA", "zero") else kind


def _bordered(B: SymMatrix, x, t) -> SymMatrix:
    z = matvec(B, x)
    return border(B, z, dot(x, z, B.field) + t)


def _require_nonsingular_head(q: str, op: str) -> None:
    if not q.endswith("A") or "N" in q:
        raise SynthesisError(f"{op} needs qpr of the form (A|S)*A, got {q}")


def _append(B: SymMatrix, kind: str, policy: RetryPolicy, rng: Optional[random.Random],
            trace: Optional[SynthesisTrace]) -> SymMatrix:
    if not B.field.is_rational:
        raise SynthesisError("synthesis works over Q only")
    if rng is None:
        rng = policy.rng()
    q = compute_qpr(B)
    if kind == "copyN":
        target = q + "N"
    else:
        _require_nonsingular_head(q, kind)
        target = q[:-1] + {"copyA": "AA", "AtoSN": "SN", "AtoSA": "SA"}[kind]
    perturb = kind in ("copyA", "AtoSA")
    n = B.n

    for attempt in range(policy.max_retries):
        bound = policy.bound(attempt)
        x = [rng.randint(-bound, bound) for _ in range(n)]
        if kind in ("AtoSN", "AtoSA"):
            x[0] = 0
        if perturb:
            ts = list(SMALL_T) + [rng.choice([v for v in range(-bound, bound + 1) if v])]
        else:
            ts = [0]
        for t in ts:
            B2 = _bordered(B, x, t)
            got = compute_qpr(B2)
            if got != target:
                continue
            # deterministic consequences of the construction
            assert all(got[i] == "S" for i in range(n) if q[i] == "S")
            if kind == "copyN":
                assert rank(B2) == rank(B)
            if perturb:
                assert det(B2) == t * det(B)
            if trace is not None:
                trace.steps.append(Step(kind, x=tuple(x), t=t, retries=attempt, qpr=got))
            return B2
    raise RetryExhausted(f"{kind}: no draw realized {target} in {policy.max_retries} attempts")


def append_copyN(B: SymMatrix, policy: RetryPolicy = RetryPolicy(), rng=None, trace=None) -> SymMatrix:
    """Border ``B`` without raising its rank: appends an ``N``."""
    return _append(B, "copyN", policy, rng, trace)


def append_copyA(B: SymMatrix, policy: RetryPolicy = RetryPolicy(), rng=None, trace=None) -> SymMatrix:
    """Nonsingular ``B`` with trailing ``A``: appends another ``A``."""
    return _append(B, "copyA", policy, rng, trace)


def append_AtoSN(B: SymMatrix, policy: RetryPolicy = RetryPolicy(), rng=None, trace=None) -> SymMatrix:
    """Trailing ``A`` becomes ``S``, then ``N`` is appended."""
    return _append(B, "AtoSN", policy, rng, trace)


def append_AtoSA(B: SymMatrix, policy: RetryPolicy = RetryPolicy(), rng=None, trace=None) -> SymMatrix:
    """Trailing ``A`` becomes ``S``, then ``A`` is appended."""
    return _append(B, "AtoSA", policy, rng, trace)




def _base(trace: SynthesisTrace, kind: str, n: int = 0) -> SymMatrix:
    B = base_witness(kind, n)
    trace.steps.append(Step("base", name=_base_name(kind, n), qpr=compute_qpr(B)))
    return B


def _nonsingular(head: str, policy, rng, trace) -> SymMatrix:
    """Witness for a sequence over {A, S} ending in A."""
    if head in ("A", "AA", "SA"):
        return _base(trace, head)
    prefix = head[:-1]
    if "A" not in prefix:
        return _base(trace, "SSbarSA", len(head))
    k = prefix.rfind("A") + 1
    B = _nonsingular(prefix[:k], policy, rng, trace)
    B = append_copyA(B, policy, rng, trace)
    for _ in range(len(prefix) - k):
        B = append_AtoSA(B, policy, rng, trace)
    return B


def synthesize(seq: str, seed: int = 0, policy: RetryPolicy | None = None) -> tuple[SymMatrix, SynthesisTrace]:
    """A rational symmetric matrix whose qpr-sequence is exactly ``seq``.

    Raises :class:`UnattainableError` for sequences that no matrix over a
    characteristic-0 field realizes.
    """
    s = normalize(seq)
    verdict = check(s)
    if not verdict.attainable:
        raise UnattainableError(s, verdict)
    if policy is None:
        policy = RetryPolicy(seed=seed)
    rng = policy.rng()
    trace = SynthesisTrace(s, policy.seed)

    head = s.rstrip("N")
    tail = len(s) - len(head)
    if not head:
        B = _base(trace, "zero", len(s))
    elif head.endswith("A"):
        B = _nonsingular(head, policy, rng, trace)
        for _ in range(tail):
            B = append_copyN(B, policy, rng, trace)
    else:
        # head ends in S, so tail >= 1 because the sequence passed check()
        B = _nonsingular(head[:-1] + "A", policy, rng, trace)
        B = append_AtoSN(B, policy, rng, trace)
        for _ in range(tail - 1):
            B = append_copyN(B, policy, rng, trace)

    got = compute_qpr(B)
    if got != s:
        raise AssertionError(f"synthesized qpr {got} != {s}")
    return B, trace


def replay(trace: SynthesisTrace | str) -> SymMatrix:
    """Rebuild the matrix recorded by a trace, without any random draws."""
    if isinstance(trace, str):
        trace = SynthesisTrace.from_text(trace)
    B = None
    for step in trace.steps:
        if step.kind == "base":
            B = base_witness(step.name)
        else:
            if B is None:
                raise ValueError("trace does not start with a base step")
            B = _bordered(B, list(step.x), step.t)
    if B is None:
        raise ValueError("empty trace")
    return B
