"""Value types shared by every other module.

Truncation convention
---------------------
Every series over the Fock index ``n`` is kept for ``n = 0 .. N`` where ``N``
is the *cutoff*.  Since the excited Minkowski mode populates ``|n+1>`` the
truncated single-mode space holds the levels ``|0> .. |N+1>``, so a
:class:`FockOperator` built at cutoff ``N`` has dimension ``N + 2`` and a
:class:`JointState` has dimension ``2 (N + 2)``.  With this choice the
truncated state is exactly the first ``N + 1`` rank-one blocks of the infinite
state: its trace is ``1 - tail_mass(t, N)`` and its non-zero spectrum is the
first ``N + 1`` analytic eigenvalues, with no clipped block at the edge.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np

#: Eigenvalues in ``[-NUMERICAL_FLOOR, 0)`` are treated as zero.
NUMERICAL_FLOOR = 1e-10

#: Default tail-mass tolerance of the adaptive truncation policy.
DEFAULT_EPSILON = 1e-12

HERMITIAN_ATOL = 1e-12


class UnruhDiscordError(Exception):
    """Base class for errors raised by this package."""


class OutOfRangeError(UnruhDiscordError, ValueError):
    pass


class DimensionError(UnruhDiscordError, ValueError):
    pass


class NotHermitianError(UnruhDiscordError, ValueError):
    pass


class NumericalError(UnruhDiscordError, ArithmeticError):
    """A computation produced a result outside its documented tolerance."""


class NegativeEigenvalueError(NumericalError):
    pass


class ConvergenceError(NumericalError):
    pass


def _frozen(a, dtype=None) -> np.ndarray:
    a = np.array(a, dtype=dtype, copy=True)
    a.setflags(write=False)
    return a


# ---------------------------------------------------------------------------
# acceleration parameter


@dataclass(frozen=True)
class AccelParam:
    """Acceleration parameter ``t = tanh r = exp(-pi |k| c / a)`` in ``[0, 1)``.

    ``t`` is canonical; the rapidity ``r`` and the ratio ``a / (|k| c)`` are
    derived views.
    """

    t: float

    def __post_init__(self):
        t = self.t
        if not isinstance(t, (int, float, np.floating, np.integer)) or not math.isfinite(t):
            raise OutOfRangeError(f"t must be a finite real number, got {t!r}")
        if t < 0:
            raise OutOfRangeError(f"t must be >= 0, got {t!r}")
        if t >= 1:
            raise OutOfRangeError(f"t must be < 1 (t = 1 is infinite acceleration), got {t!r}")
        object.__setattr__(self, "t", float(t))

    @property
    def r(self) -> float:
        return math.atanh(self.t)

    @property
    def q(self) -> float:
        """``t**2``, the ratio of successive Fock weights."""
        return self.t * self.t

    @property
    def accel_ratio(self) -> float:
        """``a / (|k| c)``; 0 for the inertial case ``t = 0``."""
        if self.t == 0.0:
            return 0.0
        return -math.pi / math.log(self.t)

    @property
    def regime(self) -> str:
        return "inertial" if self.t == 0.0 else "accelerated"


def accel_from_t(t: float) -> AccelParam:
    return AccelParam(t)


def accel_from_r(r: float) -> AccelParam:
    if not math.isfinite(r) or r < 0:
        raise OutOfRangeError(f"r must be a finite nonnegative real, got {r!r}")
    return AccelParam(math.tanh(r))


def accel_from_ratio(ratio: float) -> AccelParam:
    """Build from the physical ratio ``a / (|k| c)`` (0 means inertial)."""
    if math.isnan(ratio) or ratio < 0:
        raise OutOfRangeError(f"a/(|k|c) must be nonnegative, got {ratio!r}")
    if ratio == 0:
        return AccelParam(0.0)
    return AccelParam(math.exp(-math.pi / ratio))


# ---------------------------------------------------------------------------
# closed-form series tails


def geometric_moment_tails(q: float, start: int) -> tuple[float, float, float]:
    """Return ``(sum q^n, sum n q^n, sum n^2 q^n)`` over ``n >= start``."""
    if q == 0.0:
        return (1.0, 0.0, 0.0) if start == 0 else (0.0, 0.0, 0.0)
    w = 1.0 - q
    lead = q**start
    g0 = lead / w
    g1 = lead * (start / w + q / w**2)
    g2 = lead * (start**2 / w + 2 * start * q / w**2 + q * (1 + q) / w**3)
    return g0, g1, g2


def tail_mass(p: AccelParam, cutoff: int) -> float:
    """Probability carried by the analytic spectrum beyond index ``cutoff``.

    ``sum_{n > N} lambda_n = q^{N+1} (N + 3 - (N + 1) q) / 2`` with ``q = t^2``.
    ``cutoff = -1`` gives the full mass, 1.
    """
    q = p.q
    n1 = cutoff + 1
    if q == 0.0:
        return 1.0 if n1 == 0 else 0.0
    return q**n1 * (cutoff + 3 - n1 * q) / 2.0


def required_cutoff(p: AccelParam, epsilon: float = DEFAULT_EPSILON) -> int:
    """Smallest cutoff ``N >= 0`` whose analytic tail mass is below ``epsilon``."""
    if not 0 < epsilon < 1:
        raise OutOfRangeError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    if tail_mass(p, 0) < epsilon:
        return 0
    # tail_mass is strictly decreasing in N: bracket by doubling, then bisect
    lo, hi = 0, 1
    while tail_mass(p, hi) >= epsilon:
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if tail_mass(p, mid) < epsilon:
            hi = mid
        else:
            lo = mid
    return hi


# ---------------------------------------------------------------------------
# truncation policy


@dataclass(frozen=True)
class TruncationPolicy:
    """Rule mapping an acceleration parameter to a Fock cutoff.

    Use :meth:`adaptive` (tail mass below ``epsilon``) or :meth:`fixed`.
    """

    mode: Literal["fixed", "adaptive"] = "adaptive"
    epsilon: float = DEFAULT_EPSILON
    cutoff: Optional[int] = None

    def __post_init__(self):
        if self.mode == "fixed":
            if self.cutoff is None or int(self.cutoff) != self.cutoff or self.cutoff < 0:
                raise OutOfRangeError(f"fixed policy needs a nonnegative integer cutoff, got {self.cutoff!r}")
        elif self.mode == "adaptive":
            if not 0 < self.epsilon < 1:
                raise OutOfRangeError(f"epsilon must lie in (0, 1), got {self.epsilon!r}")
        else:
            raise OutOfRangeError(f"unknown truncation mode {self.mode!r}")

    @classmethod
    def fixed(cls, cutoff: int) -> "TruncationPolicy":
        return cls(mode="fixed", cutoff=cutoff)

    @classmethod
    def adaptive(cls, epsilon: float = DEFAULT_EPSILON) -> "TruncationPolicy":
        return cls(mode="adaptive", epsilon=epsilon)

    def resolve(self, p: AccelParam) -> int:
        if self.mode == "adaptive":
            return required_cutoff(p, self.epsilon)
        if self.cutoff == 0 and p.t > 0:
            raise DimensionError("a fixed cutoff of 0 is only exact at t = 0")
        return int(self.cutoff)

    def tolerance(self, p: AccelParam) -> float:
        """Upper bound on the discarded mass for ``p`` under this policy."""
        if self.mode == "adaptive":
            return self.epsilon
        return tail_mass(p, self.resolve(p))


# ---------------------------------------------------------------------------
# operators and states


def _check_hermitian(a: np.ndarray, atol: float) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    if atol == 0.0:
        ok = np.array_equal(a, a.conj().T)
    else:
        ok = np.allclose(a, a.conj().T, rtol=0.0, atol=atol)
    if not ok:
        raise NotHermitianError("matrix is not Hermitian")


@dataclass(frozen=True)
class FockOperator:
    """Operator on a truncated single-mode Fock space.

    Hermitian unless built with ``hermitian=False`` (the coherence blocks
    ``M01``/``M10`` are adjoints of each other, not self-adjoint).  Both
    Hermiticity and a claimed tridiagonal band are checked exactly.
    """

    matrix: np.ndarray
    tridiagonal: bool = False
    hermitian: bool = True

    def __post_init__(self):
        m = _frozen(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"expected a square matrix, got shape {m.shape}")
        if self.hermitian:
            _check_hermitian(m, atol=0.0)
        if self.tridiagonal and m.size:
            i, j = np.indices(m.shape)
            if np.any(m[np.abs(i - j) > 1] != 0):
                raise DimensionError("operator flagged tridiagonal has entries off the three central bands")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def diagonal(self) -> np.ndarray:
        return np.diagonal(self.matrix).real

    @property
    def superdiagonal(self) -> np.ndarray:
        return np.diagonal(self.matrix, offset=1)

    def is_diagonal(self) -> bool:
        return bool(np.count_nonzero(self.matrix - np.diag(np.diagonal(self.matrix))) == 0)


@dataclass(frozen=True)
class JointState:
    """Density operator on qubit (Alice) x truncated Fock mode (Rob).

    Basis ordering is qubit-major: ``(s, n) -> s * fock_dim + n``.  The
    truncation deficit ``1 - trace`` is recorded and never renormalized away.
    Positivity is checked whenever a spectrum is taken, not at construction.
    """

    matrix: np.ndarray
    cutoff: int
    epsilon: Optional[float] = None
    truncation_deficit: float = field(init=False)

    qubit_dim = 2

    def __post_init__(self):
        m = _frozen(self.matrix)
        _check_hermitian(m, atol=HERMITIAN_ATOL)
        if m.shape[0] % 2:
            raise DimensionError(f"joint dimension must be even, got {m.shape[0]}")
        tr = float(np.trace(m).real)
        if tr > 1 + 1e-12:
            raise NumericalError(f"trace {tr!r} exceeds 1")
        if self.epsilon is not None and tr < 1 - self.epsilon - 1e-15:
            raise NumericalError(f"truncation deficit {1 - tr:.3e} exceeds tolerance {self.epsilon:.1e}")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "truncation_deficit", 1.0 - tr)

    @property
    def fock_dim(self) -> int:
        return self.matrix.shape[0] // 2

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def block(self, s: int, s2: int) -> np.ndarray:
        """The Fock-space block ``<s| rho |s2>``."""
        d = self.fock_dim
        return self.matrix[s * d:(s + 1) * d, s2 * d:(s2 + 1) * d]

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)


@dataclass(frozen=True)
class Spectrum:
    """Real eigenvalues sorted in descending order.

    Values in ``[-NUMERICAL_FLOOR, 0)`` are clamped to zero on construction;
    anything more negative raises :class:`NegativeEigenvalueError`.
    """

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).ravel()
        if v.size and v.min() < -NUMERICAL_FLOOR:
            raise NegativeEigenvalueError(f"eigenvalue {v.min():.3e} below the numerical floor -{NUMERICAL_FLOOR:g}")
        v = np.where(v < 0, 0.0, v)
        object.__setattr__(self, "values", _frozen(np.sort(v)[::-1]))

    def __len__(self) -> int:
        return self.values.size

    def total(self) -> float:
        return float(math.fsum(self.values))
