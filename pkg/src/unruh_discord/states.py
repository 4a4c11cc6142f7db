"""Construction of the Alice-Rob state.

Two independent routes produce the same density matrix:

* :func:`build_rho_ar` assembles it from the four Fock-space blocks
  ``M00, M11, M01, M10`` weighted by ``(1 - t^2) / 2``;
* :func:`oracle_rho_ar_via_purification` writes down the pure state of
  Alice's qubit and both Rindler wedges and traces out the unobserved wedge.
"""
from __future__ import annotations

import enum
import math

import numpy as np

from .fock_core import (
    AccelParam,
    FockOperator,
    JointState,
    OutOfRangeError,
    Spectrum,
    TruncationPolicy,
)


class MBlockKind(enum.Enum):
    M00 = "M00"
    M11 = "M11"
    M01 = "M01"
    M10 = "M10"


def _weights(p: AccelParam, cutoff: int):
    n = np.arange(cutoff + 1, dtype=float)
    return n, p.q ** n


def m_block(kind: MBlockKind, p: AccelParam, cutoff: int) -> FockOperator:
    """Fock-space block of the joint state, series kept for ``n <= cutoff``.

    The returned operator lives on levels ``|0> .. |cutoff + 1>``.
    """
    if cutoff < 0:
        raise OutOfRangeError(f"cutoff must be >= 0, got {cutoff}")
    kind = MBlockKind(kind)
    n, qn = _weights(p, cutoff)
    w = 1.0 - p.q
    m = np.zeros((cutoff + 2, cutoff + 2))
    idx = np.arange(cutoff + 1)
    if kind is MBlockKind.M00:
        m[idx, idx] = qn
    elif kind is MBlockKind.M11:
        m[idx + 1, idx + 1] = w * (n + 1) * qn
    else:
        m[idx, idx + 1] = math.sqrt(w) * np.sqrt(n + 1) * qn
        if kind is MBlockKind.M10:
            m = m.T.copy()
    hermitian = kind in (MBlockKind.M00, MBlockKind.M11)
    return FockOperator(m, tridiagonal=True, hermitian=hermitian)


def build_rho_ar(p: AccelParam, policy: TruncationPolicy | None = None) -> JointState:
    """Joint state assembled blockwise, qubit-major ordering."""
    policy = policy or TruncationPolicy.adaptive()
    cutoff = policy.resolve(p)
    c = (1.0 - p.q) / 2.0
    blocks = [[m_block(MBlockKind.M00, p, cutoff).matrix, m_block(MBlockKind.M01, p, cutoff).matrix],
              [m_block(MBlockKind.M10, p, cutoff).matrix, m_block(MBlockKind.M11, p, cutoff).matrix]]
    return JointState(c * np.block(blocks), cutoff=cutoff, epsilon=policy.tolerance(p))


def oracle_rho_ar_via_purification(p: AccelParam, policy: TruncationPolicy | None = None) -> JointState:
    """Joint state from the pure qubit x wedge-1 x wedge-2 state.

    The Minkowski vacuum is ``(1/cosh r) sum tanh^n r |n>_1 |n>_2`` and the
    one-particle state ``(1/cosh^2 r) sum tanh^n r sqrt(n+1) |n+1>_1 |n>_2``;
    both series are kept for ``n <= cutoff`` and wedge 2 is traced out.
    """
    policy = policy or TruncationPolicy.adaptive()
    cutoff = policy.resolve(p)
    r = p.r
    ch, th = math.cosh(r), math.tanh(r)
    d1, d2 = cutoff + 2, cutoff + 1

    psi = np.zeros((2, d1, d2))
    for n in range(cutoff + 1):
        amp = th**n / ch
        psi[0, n, n] = amp
        psi[1, n + 1, n] = amp * math.sqrt(n + 1) / ch
    psi /= math.sqrt(2.0)

    # rho_{(s,m),(s',m')} = sum_k psi[s,m,k] psi[s',m',k]
    flat = psi.reshape(2 * d1, d2)
    rho = flat @ flat.T
    return JointState(rho, cutoff=cutoff, epsilon=policy.tolerance(p))


def analytic_spectrum(p: AccelParam, cutoff: int) -> Spectrum:
    """The non-zero eigenvalues ``(1-t^2)/2 t^{2n} (1 + (n+1)(1-t^2))``, ``n <= cutoff``."""
    if cutoff < 0:
        raise OutOfRangeError(f"cutoff must be >= 0, got {cutoff}")
    return Spectrum(spectrum_terms(p, cutoff))


def spectrum_terms(p: AccelParam, cutoff: int) -> np.ndarray:
    """Analytic eigenvalues in series order (unsorted)."""
    n, qn = _weights(p, cutoff)
    w = 1.0 - p.q
    return w / 2.0 * qn * (1.0 + (n + 1) * w)


def reduce_to_alice(rho: JointState) -> np.ndarray:
    """Partial trace over the Fock mode; returns Alice's 2x2 state."""
    out = np.empty((2, 2), dtype=rho.matrix.dtype)
    for s in range(2):
        for s2 in range(2):
            out[s, s2] = np.trace(rho.block(s, s2))
    return out


def reduce_to_rob(rho: JointState) -> FockOperator:
    """Partial trace over Alice's qubit."""
    return FockOperator(rho.block(0, 0) + rho.block(1, 1))


def marginals(p: AccelParam, cutoff: int) -> tuple[np.ndarray, np.ndarray]:
    """``(rho_A, diag rho_R)`` of the truncated state, without building it.

    Equal to :func:`reduce_to_alice` and the diagonal of
    :func:`reduce_to_rob` applied to :func:`build_rho_ar`; used where the
    full ``2 (N + 2)`` matrix would be wasteful.
    """
    c = (1.0 - p.q) / 2.0
    d00 = np.diagonal(m_block(MBlockKind.M00, p, cutoff).matrix)
    d11 = np.diagonal(m_block(MBlockKind.M11, p, cutoff).matrix)
    # Tr M01 = 0: the coherence block is strictly upper triangular
    rho_a = np.diag([c * math.fsum(d00), c * math.fsum(d11)])
    return rho_a, c * (d00 + d11)
