"""Ground-truth solvers for rows of the renewal-matrix transform.

For a tridiagonal kernel, row i of Rbar(s) = (I - Qbar(s))^-1 satisfies

    -tau_bar(j-1) x[j-1] + x[j] - sigma_bar(j+1) x[j+1] = delta_ij,  j >= 0,

with tau_bar(-1) = 0.  `solve_row_truncated` cuts the system at j = n with
the Dirichlet condition x[n+1] = 0 and eliminates without pivoting: for
s > 0 each column k of the truncated operator has off-diagonal mass
tau_bar(k) + sigma_bar(k) < 1 against a unit diagonal, so pivots cannot
degenerate.  `solve_row_adaptive` doubles n until the normalization sum

    sum_k [1 - sigma_bar(k) - tau_bar(k)] * x[k]  ->  1

is met and the leading entries have stopped moving.  `neumann_series_sum`
accumulates row i of sum_m Qbar(s)^m over the same truncated operator and
is the independent second route used by the cross-check suites.

Real s must be > 0.  Complex s with positive real part is accepted
throughout (the elimination extends verbatim); results are then complex.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import NonConvergenceError, PivotError
from .model import KernelTransform

_MIN_PIVOT = 1e-14


@dataclass
class TransformRowResult:
    """One solved row of Rbar(s).

    values[j] holds rbar_ij(s) for j = 0..truncation_n.
    normalization_residual is |sum_k (1 - sigma_bar - tau_bar) values[k] - 1|.
    converged is set only by `solve_row_adaptive`; a bare truncated solve
    makes no convergence claim.
    """

    i: int
    s: float | complex
    truncation_n: int
    values: np.ndarray
    normalization_residual: float
    converged: bool


@dataclass(frozen=True)
class TruncationConfig:
    """Controls for the adaptive doubling of the truncation level.

    n0 is a floor: solves for start state i always begin at
    max(n0, i + 2).
    """

    n0: int = 64
    n_max: int = 2**16
    tol: float = 1e-10
    growth: int = 2

    def __post_init__(self):
        if self.n0 < 2:
            raise ValueError(f"n0 must be >= 2, got {self.n0}")
        if self.n_max < self.n0:
            raise ValueError(f"n_max must be >= n0, got {self.n_max} < {self.n0}")
        if self.tol <= 0:
            raise ValueError(f"tol must be > 0, got {self.tol}")
        if self.growth < 2:
            raise ValueError(f"growth must be >= 2, got {self.growth}")


def _check_s(s):
    if isinstance(s, complex):
        if s.real <= 0:
            raise ValueError(f"complex transform variable needs Re(s) > 0, got {s}")
    elif s <= 0:
        raise ValueError(f"transform variable must be > 0, got {s}")


def _kernel_arrays(kernel: KernelTransform, n: int, s):
    dtype = complex if isinstance(s, complex) else float
    sigma = np.empty(n + 1, dtype=dtype)
    tau = np.empty(n + 1, dtype=dtype)
    for j in range(n + 1):
        sigma[j], tau[j] = kernel.transforms(j, s)
    return sigma, tau


def _thomas(sub, sup, rhs):
    """Solve the unit-diagonal tridiagonal system by elimination, no pivoting."""
    n = len(rhs)
    w = np.ones(n, dtype=rhs.dtype)
    y = rhs.copy()
    for j in range(1, n):
        if abs(w[j - 1]) < _MIN_PIVOT:
            raise PivotError(f"pivot {w[j - 1]!r} below {_MIN_PIVOT} at row {j - 1}")
        m = sub[j - 1] / w[j - 1]
        w[j] = 1.0 - m * sup[j - 1]
        y[j] -= m * y[j - 1]
    if abs(w[-1]) < _MIN_PIVOT:
        raise PivotError(f"pivot {w[-1]!r} below {_MIN_PIVOT} at last row")
    x = np.empty_like(y)
    x[-1] = y[-1] / w[-1]
    for j in range(n - 2, -1, -1):
        x[j] = (y[j] - sup[j] * x[j + 1]) / w[j]
    return x


def solve_row_truncated(i: int, s, kernel: KernelTransform, n: int) -> TransformRowResult:
    """Solve the truncated system for row i with x[n+1] forced to zero."""
    _check_s(s)
    if not 0 <= i < n:
        raise ValueError(f"start state must satisfy 0 <= i < n, got i={i}, n={n}")
    sigma, tau = _kernel_arrays(kernel, n, s)
    sub = -tau[:-1]     # equation j couples to x[j-1] via -tau_bar(j-1)
    sup = -sigma[1:]    # equation j couples to x[j+1] via -sigma_bar(j+1)
    rhs = np.zeros(n + 1, dtype=sigma.dtype)
    rhs[i] = 1.0
    values = _thomas(sub, sup, rhs)
    residual = float(abs(np.sum((1.0 - sigma - tau) * values) - 1.0))
    return TransformRowResult(
        i=i,
        s=s,
        truncation_n=n,
        values=values,
        normalization_residual=residual,
        converged=False,
    )


def solve_row_adaptive(
    i: int,
    s,
    kernel: KernelTransform,
    cfg: TruncationConfig = TruncationConfig(),
) -> TransformRowResult:
    """Grow the truncation until the row has converged.

    Convergence requires both the normalization residual and the maximum
    change of values[0 .. i+10] between consecutive truncations to fall
    below cfg.tol.  Raises NonConvergenceError (carrying the last residual)
    if cfg.n_max is reached first.
    """
    _check_s(s)
    if i < 0:
        raise ValueError(f"start state must be >= 0, got {i}")
    n = max(cfg.n0, i + 2)
    prev = solve_row_truncated(i, s, kernel, n)
    while n < cfg.n_max:
        n = min(n * cfg.growth, cfg.n_max)
        cur = solve_row_truncated(i, s, kernel, n)
        head = min(i + 11, len(prev.values))
        change = float(np.max(np.abs(cur.values[:head] - prev.values[:head])))
        if cur.normalization_residual <= cfg.tol and change <= cfg.tol:
            return replace(cur, converged=True)
        prev = cur
    raise NonConvergenceError(
        f"row (i={i}, s={s}) did not converge by n_max={cfg.n_max}; "
        f"last normalization residual {prev.normalization_residual:.3e}",
        residual=prev.normalization_residual,
    )


def neumann_series_sum(
    i: int,
    s,
    kernel: KernelTransform,
    n: int,
    m_terms: int,
    stop_below: float | None = None,
) -> np.ndarray:
    """Row i of sum_{m=0}^{m_terms} Qbar(s)^m over states 0..n.

    Powers are accumulated by repeated row-times-tridiagonal products on
    the same truncated operator `solve_row_truncated` uses, so the two
    agree in the limit of many terms.  With `stop_below` set, summation
    ends early once the newly added term has max-abs below the threshold
    and raises NonConvergenceError if the cap is hit first.
    """
    _check_s(s)
    if not 0 <= i <= n:
        raise ValueError(f"start state must satisfy 0 <= i <= n, got i={i}, n={n}")
    if m_terms < 0:
        raise ValueError(f"m_terms must be >= 0, got {m_terms}")
    sigma, tau = _kernel_arrays(kernel, n, s)
    power = np.zeros(n + 1, dtype=sigma.dtype)
    power[i] = 1.0
    total = power.copy()
    for _ in range(m_terms):
        nxt = np.zeros_like(power)
        nxt[1:] = power[:-1] * tau[:-1]
        nxt[:-1] += power[1:] * sigma[1:]
        power = nxt
        total += power
        if stop_below is not None and np.max(np.abs(power)) < stop_below:
            return total
    if stop_below is not None:
        raise NonConvergenceError(
            f"Neumann term still {np.max(np.abs(power)):.3e} after {m_terms} terms "
            f"(requested stop_below={stop_below})",
            residual=float(np.max(np.abs(power))),
        )
    return total
