"""Quasi-principal rank sequences of symmetric matrices over exact fields."""

from .attainability import check, count_attainable, enumerate_attainable
from .exactfield import GF, QQ, FieldSpec, Residue, scalar_inv, scalar_parse
from .matrix import (
    SymMatrix,
    border,
    det,
    direct_sum,
    identity,
    quasi_principal_pairs,
    random_symmetric,
    rank,
    schur_complement,
    submatrix,
    zeros,
)
from .search import exhaustive_survey, oracle_qpr, random_search
from .sequences import classify_order, compute_epr, compute_pr, compute_qpr, validate_matrix_report
from .synthesis import RetryPolicy, SynthesisTrace, replay, synthesize

__version__ = "0.1.0"
