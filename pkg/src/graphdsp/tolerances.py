"""Central tolerance configuration.

Every numeric contract in the library references one of these named
thresholds; functions accept an optional ``tol`` argument and fall back to
``DEFAULT_TOLERANCES``. The CLI exposes them via ``--tol name=value``.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    #: absolute threshold below which trailing polynomial coefficients are dropped
    trim: float = 1e-12
    #: minimum relative separation between interpolation points / substitute eigenvalues
    lambda_sep: float = 1e-9
    #: relative residual allowed when solving interpolation systems
    solve: float = 1e-9
    #: relative eigenvalue clustering distance in the Jordan decomposition
    cluster: float = 1e-8
    #: chain-relation residual, relative to the matrix norm
    chain: float = 1e-8
    #: relative threshold under which a filter value at an eigenvalue counts as zero
    inv: float = 1e-10
    #: relative singular-value threshold for numeric rank decisions
    rank: float = 1e-10
    #: condition-number ceiling beyond which interpolation refuses to proceed
    cond_limit: float = 1e14
    #: commutator tolerance used by shift-invariance checks when none is given
    shift_invariance: float = 1e-10

    def replace(self, **overrides: float) -> "Tolerances":
        unknown = set(overrides) - {f.name for f in dataclasses.fields(self)}
        if unknown:
            raise ValueError(f"unknown tolerance name(s): {sorted(unknown)}")
        return dataclasses.replace(self, **overrides)


DEFAULT_TOLERANCES = Tolerances()


def resolve(tol: Tolerances | None) -> Tolerances:
    return DEFAULT_TOLERANCES if tol is None else tol
