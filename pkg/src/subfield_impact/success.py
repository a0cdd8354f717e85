"""Citation success index between a target and a reference group.

The success index of t over r is the probability that a random paper of t has
more citations than a random paper of r, ties counting one half. It is
computed exactly from the two citation histograms, or approximated from the
groups' impact factors and the uncited fraction of r.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .errors import DomainError, EmptyDistribution
from .metrics import CitationDistribution

#: exponent of the impact-factor ratio in the approximate formula
K_EXPONENT = 1.23


class Method(str, Enum):
    EXACT = "exact"
    IF_APPROX = "if_approx"
    IF_SIMPLIFIED = "if_simplified"


class Orientation(str, Enum):
    A_OVER_B = "A>B"
    B_OVER_A = "B>A"
    NONE = "none"


@dataclass(frozen=True)
class SuccessResult:
    s_tr: float
    method: Method
    n_t: int | None = None
    n_r: int | None = None
    rho: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.s_tr <= 1.0:
            raise DomainError(f"success index {self.s_tr} outside [0, 1]")
        if self.rho is not None and not self.rho > 0:
            raise DomainError(f"rho must be positive, got {self.rho}")


def _hist(d) -> np.ndarray:
    if isinstance(d, CitationDistribution):
        return d.counts
    return np.asarray(d, dtype=np.int64)


def success_exact(t: CitationDistribution, r: CitationDistribution) -> SuccessResult:
    """Exact success index of ``t`` over ``r`` from their histograms.

    The sum over citation counts is carried in integers (wins doubled plus
    ties), so the result is the exact pair fraction rounded once.
    """
    ht, hr = _hist(t), _hist(r)
    n_t, n_r = int(ht.sum()), int(hr.sum())
    if n_t == 0 or n_r == 0:
        raise EmptyDistribution("success index needs two nonempty distributions")
    num = kernels.success_numerator(ht, hr)
    return SuccessResult(num / (2 * n_t * n_r), Method.EXACT, n_t, n_r)


def success_from_if(i_t: float, i_r: float, f0_r: float) -> SuccessResult:
    """Success index estimated from impact factors ``i_t``, ``i_r`` and the
    uncited fraction ``f0_r`` of the reference group."""
    if not (i_t > 0 and i_r > 0):
        raise DomainError(f"impact factors must be positive, got {i_t}, {i_r}")
    if not 0.0 <= f0_r < 1.0:
        raise DomainError(f"uncited fraction must lie in [0, 1), got {f0_r}")
    rho = i_t / i_r
    q = 1.0 / (1.0 - f0_r)
    s = f0_r / 2 + (1 - f0_r / 2) / (1 + q * rho ** -K_EXPONENT)
    return SuccessResult(s, Method.IF_APPROX, rho=rho)


def success_simplified(rho: float) -> SuccessResult:
    """Low-uncited-fraction form ``1 / (1 + rho**-k)``."""
    if not rho > 0:
        raise DomainError(f"rho must be positive, got {rho}")
    return SuccessResult(1 / (1 + rho ** -K_EXPONENT), Method.IF_SIMPLIFIED, rho=rho)


def oriented_max(s_ab: SuccessResult, s_ba: SuccessResult) -> tuple[SuccessResult, Orientation]:
    """Keep the larger of the two orientations of one comparison."""
    if s_ab.s_tr > s_ba.s_tr:
        return s_ab, Orientation.A_OVER_B
    if s_ba.s_tr > s_ab.s_tr:
        return s_ba, Orientation.B_OVER_A
    return s_ab, Orientation.NONE


def compare(a: CitationDistribution, b: CitationDistribution) -> tuple[SuccessResult, Orientation]:
    """Exact comparison of two groups in both orientations, larger one kept."""
    return oriented_max(success_exact(a, b), success_exact(b, a))
