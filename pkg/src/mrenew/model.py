"""Queue parameters and tridiagonal semi-Markov kernel transforms.

An immigration-and-death kernel is tridiagonal: from state j the process
jumps up with transformed weight tau_bar(j, s) and down with
sigma_bar(j, s); state 0 has no down-move.  The M|M|infinity occupancy
process is the instance with a constant arrival rate and per-customer
service rate 1/alpha:

    tau_bar(j, s)   = rho / (j + rho + alpha*s)
    sigma_bar(j, s) = j   / (j + rho + alpha*s)       rho = lam * alpha

Everything here works in the transform domain; time-domain values are
recovered by the `invert` and `mcsim` modules.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass


@dataclass(frozen=True)
class QueueParams:
    """Arrival rate and mean service time.

    The traffic intensity ``rho`` is always recomputed from ``lam * alpha``
    so an inconsistent (lam, alpha, rho) triple cannot exist.
    """

    lam: float
    alpha: float

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError(f"arrival rate must be >= 0, got {self.lam}")
        if self.alpha <= 0:
            raise ValueError(f"mean service time must be > 0, got {self.alpha}")

    @property
    def rho(self) -> float:
        return self.lam * self.alpha


def _check_state_and_s(j, s):
    if j < 0:
        raise ValueError(f"state index must be >= 0, got {j}")
    if s < 0:
        raise ValueError(f"transform variable must be >= 0, got {s}")


def mm_inf_tau_bar(j: int, s: float, p: QueueParams) -> float:
    """Up-move transform of the M|M|infinity kernel: rho / (j + rho + alpha*s).

    Identically zero when there are no arrivals, including at the absorbing
    corner j = 0, s = 0 where the ratio is formally 0/0.
    """
    _check_state_and_s(j, s)
    rho = p.rho
    if rho == 0.0:
        return 0.0
    return rho / (j + rho + p.alpha * s)


def mm_inf_sigma_bar(j: int, s: float, p: QueueParams) -> float:
    """Down-move transform of the M|M|infinity kernel: j / (j + rho + alpha*s).

    Identically zero at j = 0 for every s: there is no death from the empty
    state.
    """
    _check_state_and_s(j, s)
    if j == 0:
        return 0.0
    return j / (j + p.rho + p.alpha * s)


class KernelTransform(ABC):
    """Transform-domain evaluator for a tridiagonal semi-Markov kernel.

    Implementations return the pair ``(sigma_bar, tau_bar)`` for integer
    state j >= 0 and transform variable s.  A valid kernel satisfies, for
    every j and every s >= 0:

    * sigma_bar(0, s) == 0,
    * 0 <= sigma_bar, 0 <= tau_bar, sigma_bar + tau_bar <= 1,
    * both nonincreasing in s for fixed j.

    These are exactly what `validate_kernel` checks.
    """

    @abstractmethod
    def transforms(self, j: int, s) -> tuple:
        """Return (sigma_bar(j, s), tau_bar(j, s))."""

    def sigma_bar(self, j: int, s):
        return self.transforms(j, s)[0]

    def tau_bar(self, j: int, s):
        return self.transforms(j, s)[1]


@dataclass(frozen=True)
class MMInfinityKernel(KernelTransform):
    """The M|M|infinity kernel for given queue parameters.

    ``transforms`` additionally accepts complex s with nonnegative real
    part, so the same evaluator can feed complex-abscissa Laplace
    inversion; the rational formulas extend verbatim.
    """

    params: QueueParams

    def transforms(self, j: int, s) -> tuple:
        if j < 0:
            raise ValueError(f"state index must be >= 0, got {j}")
        if isinstance(s, complex):
            if s.real < 0:
                raise ValueError("complex transform variable needs Re(s) >= 0")
        elif s < 0:
            raise ValueError(f"transform variable must be >= 0, got {s}")
        p = self.params
        if j == 0 and p.rho == 0.0:
            return 0.0, 0.0
        denom = j + p.rho + p.alpha * s
        tau = p.rho / denom
        sigma = (j / denom) if j > 0 else 0.0
        return sigma, tau


def validate_kernel(kernel: KernelTransform, j_max: int, s_grid, tol: float = 1e-12) -> list:
    """Check the kernel invariants over j = 0..j_max and the given s grid.

    Returns one ``(j, s, message)`` tuple per violated invariant; an empty
    list means the kernel passed.  Violations are data, not errors: nothing
    raises on a bad kernel.  Monotonicity in s is checked between
    consecutive points of the (ascending-sorted) grid.
    """
    if j_max < 0:
        raise ValueError(f"j_max must be >= 0, got {j_max}")
    s_values = sorted(s_grid)
    if not s_values:
        raise ValueError("s_grid must be nonempty")
    if s_values[0] < 0:
        raise ValueError("s_grid values must be >= 0")

    report = []
    for j in range(j_max + 1):
        prev = None
        for s in s_values:
            sigma, tau = kernel.transforms(j, s)
            if j == 0 and abs(sigma) > tol:
                report.append((j, s, f"sigma_bar(0, {s}) = {sigma!r}, expected 0"))
            if sigma < -tol:
                report.append((j, s, f"sigma_bar({j}, {s}) = {sigma!r} < 0"))
            if tau < -tol:
                report.append((j, s, f"tau_bar({j}, {s}) = {tau!r} < 0"))
            if sigma + tau > 1 + tol:
                report.append((j, s, f"sigma_bar + tau_bar = {sigma + tau!r} > 1"))
            if prev is not None:
                p_s, p_sigma, p_tau = prev
                if sigma > p_sigma + tol:
                    report.append((j, s, f"sigma_bar({j}, s) increased from s={p_s} to s={s}"))
                if tau > p_tau + tol:
                    report.append((j, s, f"tau_bar({j}, s) increased from s={p_s} to s={s}"))
            prev = (s, sigma, tau)
    return report
