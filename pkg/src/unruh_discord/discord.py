"""Quantum discord of the Alice-Rob state for projective measurements on Alice.

Alice's qubit is measured with ``Pi_pm = (I +- x.sigma) / 2``.  Because the
joint state's Fock blocks are diagonal (``M00``, ``M11``) or a single
off-diagonal (``M01``), each conditional state of Rob's mode is Hermitian
tridiagonal and its spectrum depends on the azimuth ``phi`` only through a
phase, so the minimization runs over ``theta`` alone.  The ``phi``
independence is re-checked at every optimum with a complex banded solver.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvals_banded

from .entropy import (
    entropy_of_operator,
    entropy_of_spectrum,
    joint_entropy_analytic,
    shannon_bits,
    tridiagonal_eigenvalues,
)
from .fock_core import (
    AccelParam,
    ConvergenceError,
    FockOperator,
    JointState,
    NumericalError,
    OutOfRangeError,
    Spectrum,
    TruncationPolicy,
    tail_mass,
)
from .states import MBlockKind, m_block, marginals, reduce_to_alice, reduce_to_rob

log = logging.getLogger(__name__)

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

_MIN_PROBABILITY = 1e-14


@dataclass(frozen=True)
class MeasurementDirection:
    """Bloch direction ``(sin th cos ph, sin th sin ph, cos th)`` of a qubit measurement."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise OutOfRangeError(f"theta must lie in [0, pi], got {self.theta!r}")
        if not 0.0 <= self.phi < 2 * math.pi:
            raise OutOfRangeError(f"phi must lie in [0, 2 pi), got {self.phi!r}")

    @property
    def bloch(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])

    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        xs = sum(x * s for x, s in zip(self.bloch, PAULI))
        eye = np.eye(2)
        return (eye + xs) / 2, (eye - xs) / 2


@dataclass(frozen=True)
class ConditionalEnsemble:
    """Outcome probabilities and Rob's normalized post-measurement states (``+``, ``-``)."""

    probabilities: tuple[float, float]
    states: tuple[FockOperator, FockOperator]


@dataclass(frozen=True)
class MinimizerConfig:
    grid: int = 64
    tol: float = 1e-10
    max_iter: int = 200
    verify_phi: bool = True

    def __post_init__(self):
        if self.grid < 3:
            raise OutOfRangeError(f"minimizer grid needs at least 3 points, got {self.grid}")
        if not self.tol > 0:
            raise OutOfRangeError(f"minimizer tolerance must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise OutOfRangeError(f"iteration cap must be positive, got {self.max_iter}")


@dataclass(frozen=True)
class DiscordResult:
    """Discord ``D = H(A) - H(A,R) + min H(R|A)`` and its ingredients, all in bits.

    ``theta_star`` is NaN when the landscape is flat (``degenerate``).
    ``half_pi_excess`` is ``H(R|A)`` at ``theta = pi/2`` minus the minimum
    found; a value above roundoff flags a direction that beats ``pi/2``.
    """

    t: float
    discord: float
    theta_star: float
    classical_correlation: float
    mutual_information: float
    conditional_entropy: float
    h_a: float
    h_r: float
    h_ar: float
    h_ar_tail_bound: float
    cutoff: int
    tail_mass: float
    degenerate: bool
    iterations: int
    phi_deviation: float
    half_pi_excess: float


# ---------------------------------------------------------------------------
# state-level operations


def mutual_information(rho: JointState) -> float:
    """``H(A) + H(R) - H(A,R)`` by dense diagonalization."""
    h_a = entropy_of_operator(reduce_to_alice(rho))
    h_r = entropy_of_operator(reduce_to_rob(rho).matrix)
    return h_a + h_r - entropy_of_operator(rho.matrix)


def _sandwich_partial_trace(rho: JointState, proj: np.ndarray) -> np.ndarray:
    d = rho.fock_dim
    r4 = rho.matrix.reshape(2, d, 2, d)
    # (Pi x 1) rho (Pi x 1), then trace over the qubit
    out = np.einsum("ab,bncm,cd->andm", proj, r4, proj)
    return np.einsum("anam->nm", out)


def conditional_ensemble(rho: JointState, d: MeasurementDirection) -> ConditionalEnsemble:
    """Rob's states after Alice measures along ``d``: ``Tr_A(Pi rho Pi) / p``."""
    probs, states = [], []
    for proj in d.projectors():
        unnorm = _sandwich_partial_trace(rho, proj)
        p = float(np.trace(unnorm).real)
        if p < _MIN_PROBABILITY:
            raise NumericalError(f"measurement outcome has vanishing probability {p:.3e}")
        m = unnorm / p
        m = (m + m.conj().T) / 2
        if not np.iscomplexobj(rho.matrix) and np.allclose(m.imag, 0.0, atol=0.0):
            m = m.real
        probs.append(p)
        states.append(FockOperator(m))
    return ConditionalEnsemble(tuple(probs), tuple(states))


def _is_tridiagonal_family(rho: JointState) -> bool:
    def offband(b, lo, hi):
        return np.count_nonzero(np.triu(b, hi + 1)) + np.count_nonzero(np.tril(b, lo - 1))

    return (offband(rho.block(0, 0), 0, 0) == 0 and offband(rho.block(1, 1), 0, 0) == 0
            and offband(rho.block(0, 1), 1, 1) == 0)


def _tridiagonal_pieces(d00, d11, e01, d: MeasurementDirection):
    """Probabilities and (diag, superdiag) of both conditional states.

    ``d00``, ``d11`` are the diagonals of the joint-state blocks ``<0|rho|0>``
    and ``<1|rho|1>``; ``e01`` the superdiagonal of ``<0|rho|1>``.
    """
    x1, x2, x3 = d.bloch
    out = []
    for sign in (1.0, -1.0):
        diag = ((1 + sign * x3) * d00 + (1 - sign * x3) * d11) / 2
        p = math.fsum(diag)
        if p < _MIN_PROBABILITY:
            raise NumericalError(f"measurement outcome has vanishing probability {p:.3e}")
        # <n| Tr_A(Pi rho) |n+1> picks up Pi[1,0] <0|rho|1>
        sup = sign * complex(x1, x2) / 2 * e01
        if x2 == 0.0:
            sup = sup.real
        out.append((p, diag / p, sup / p))
    return out


def _conditional_entropy_from_pieces(pieces) -> float:
    return sum(p * entropy_of_spectrum(tridiagonal_eigenvalues(dg, sup)) for p, dg, sup in pieces)


def conditional_entropy(rho: JointState, d: MeasurementDirection) -> float:
    """``sum_i p_i H(rho_{R|i})``.

    States of the Alice-Rob family go through the tridiagonal solver; any
    other joint state falls back to dense diagonalization.
    """
    if _is_tridiagonal_family(rho):
        pieces = _tridiagonal_pieces(np.diagonal(rho.block(0, 0)).real, np.diagonal(rho.block(1, 1)).real,
                                     np.diagonal(rho.block(0, 1), offset=1), d)
        return _conditional_entropy_from_pieces(pieces)
    ens = conditional_ensemble(rho, d)
    return sum(p * entropy_of_operator(s.matrix) for p, s in zip(ens.probabilities, ens.states))


# ---------------------------------------------------------------------------
# parameter-level operations (no joint matrix is built)


class _Landscape:
    """Conditional entropy as a function of the measurement direction for fixed ``t``."""

    def __init__(self, p: AccelParam, cutoff: int):
        c = (1.0 - p.q) / 2.0
        self.d00 = c * np.diagonal(m_block(MBlockKind.M00, p, cutoff).matrix)
        self.d11 = c * np.diagonal(m_block(MBlockKind.M11, p, cutoff).matrix)
        self.e01 = c * np.diagonal(m_block(MBlockKind.M01, p, cutoff).matrix, offset=1)
        self.evaluations = 0

    def __call__(self, theta: float, phi: float = 0.0) -> float:
        self.evaluations += 1
        d = MeasurementDirection(theta, phi)
        return _conditional_entropy_from_pieces(_tridiagonal_pieces(self.d00, self.d11, self.e01, d))

    def banded_check(self, theta: float, phi: float) -> float:
        """Same quantity via LAPACK's complex Hermitian band solver."""
        d = MeasurementDirection(theta, phi)
        total = 0.0
        for p, dg, sup in _tridiagonal_pieces(self.d00, self.d11, self.e01, d):
            band = np.zeros((2, dg.size), dtype=complex)
            band[0, 1:] = sup
            band[1] = dg
            total += p * entropy_of_spectrum(eigvals_banded(band, lower=False))
        return total


def _resolve(p: AccelParam, policy: TruncationPolicy | None) -> int:
    return (policy or TruncationPolicy.adaptive()).resolve(p)


def discord_at_theta(p: AccelParam, theta: float, policy: TruncationPolicy | None = None) -> float:
    """Discord for the fixed measurement direction ``(theta, phi = 0)``."""
    cutoff = _resolve(p, policy)
    rho_a, _ = marginals(p, cutoff)
    h_a = shannon_bits(np.diagonal(rho_a))
    return h_a - joint_entropy_analytic(p, cutoff).bits + _Landscape(p, cutoff)(theta)


def discord_theta_profile(p: AccelParam, thetas, policy: TruncationPolicy | None = None) -> np.ndarray:
    """:func:`discord_at_theta` over many angles, sharing the theta-independent terms."""
    cutoff = _resolve(p, policy)
    rho_a, _ = marginals(p, cutoff)
    base = shannon_bits(np.diagonal(rho_a)) - joint_entropy_analytic(p, cutoff).bits
    f = _Landscape(p, cutoff)
    return np.array([base + f(float(th)) for th in thetas])


def golden_section(f, a: float, b: float, tol: float, max_iter: int) -> tuple[float, float, int]:
    """Minimize ``f`` on ``[a, b]``; returns ``(x, f(x), iterations)``."""
    invphi = (math.sqrt(5) - 1) / 2
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = f(c), f(d)
    it = 0
    while b - a > tol:
        if it >= max_iter:
            raise ConvergenceError(f"golden-section width {b - a:.3e} above {tol:.1e} after {max_iter} iterations")
        it += 1
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return (c, fc, it) if fc <= fd else (d, fd, it)


def quantum_discord(p: AccelParam, policy: TruncationPolicy | None = None,
                    strategy: MinimizerConfig | None = None) -> DiscordResult:
    """Minimize the conditional entropy over ``theta`` and assemble the discord.

    A uniform ``theta`` grid on ``[0, pi]`` locates the trough, golden-section
    search refines it inside the neighbouring grid cells.
    """
    strategy = strategy or MinimizerConfig()
    cutoff = _resolve(p, policy)
    f = _Landscape(p, cutoff)

    rho_a, rho_r_diag = marginals(p, cutoff)
    h_a = shannon_bits(np.diagonal(rho_a))
    h_r = shannon_bits(rho_r_diag)
    h_ar = joint_entropy_analytic(p, cutoff)

    grid = np.linspace(0.0, math.pi, strategy.grid)
    values = np.array([f(x) for x in grid])
    k = int(np.argmin(values))
    degenerate = bool(values.max() - values.min() < 1e-12)

    if degenerate:
        theta_star, h_min, iterations = math.nan, float(values.min()), 0
        probe = math.pi / 3
    else:
        lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, grid.size - 1)]
        theta_star, h_min, iterations = golden_section(f, lo, hi, strategy.tol, strategy.max_iter)
        if values[k] < h_min:
            theta_star, h_min = float(grid[k]), float(values[k])
        probe = theta_star

    phi_dev = 0.0
    if strategy.verify_phi:
        ref = f(probe)
        phi_dev = max(abs(f.banded_check(probe, ph) - ref) for ph in (0.0, 2 * math.pi / 3, 4 * math.pi / 3))
        if phi_dev > 1e-10:
            raise NumericalError(f"conditional entropy varies with phi by {phi_dev:.3e} at t={p.t}")

    half_pi_excess = f(math.pi / 2) - h_min
    if half_pi_excess > 1e-9:
        log.warning("t=%g: theta=%.12g beats pi/2 by %.3e bits", p.t, theta_star, half_pi_excess)

    mi = h_a + h_r - h_ar.bits
    classical = h_r - h_min
    return DiscordResult(
        t=p.t,
        discord=mi - classical,
        theta_star=theta_star,
        classical_correlation=classical,
        mutual_information=mi,
        conditional_entropy=h_min,
        h_a=h_a,
        h_r=h_r,
        h_ar=h_ar.bits,
        h_ar_tail_bound=h_ar.tail_bound,
        cutoff=cutoff,
        tail_mass=tail_mass(p, cutoff),
        degenerate=degenerate,
        iterations=iterations,
        phi_deviation=phi_dev,
        half_pi_excess=half_pi_excess,
    )


def conditional_spectra(p: AccelParam, d: MeasurementDirection, cutoff: int) -> tuple[Spectrum, Spectrum]:
    """Spectra of both conditional states via the tridiagonal route."""
    f = _Landscape(p, cutoff)
    return tuple(Spectrum(tridiagonal_eigenvalues(dg, sup))
                 for _, dg, sup in _tridiagonal_pieces(f.d00, f.d11, f.e01, d))
