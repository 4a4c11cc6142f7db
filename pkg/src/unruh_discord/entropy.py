"""Von Neumann entropies in bits.

The convention ``0 log 0 = 0`` is applied by dropping zero eigenvalues; tiny
negative eigenvalues are clamped by :class:`~unruh_discord.fock_core.Spectrum`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .fock_core import (
    HERMITIAN_ATOL,
    AccelParam,
    DimensionError,
    NotHermitianError,
    NumericalError,
    Spectrum,
    geometric_moment_tails,
    tail_mass,
)
from .states import spectrum_terms


@dataclass(frozen=True)
class EntropyValue:
    """Entropy in bits with a bound on the error from truncating the series."""

    bits: float
    tail_bound: float = 0.0

    def __float__(self) -> float:
        return self.bits


def shannon_bits(p: np.ndarray) -> float:
    p = np.asarray(p, dtype=float)
    p = p[p > 0]
    if p.size == 0:
        return 0.0
    return max(0.0, -math.fsum(p * np.log2(p)))


def entropy_of_spectrum(s) -> float:
    """``-sum lambda log2 lambda`` of a :class:`Spectrum` (or array of eigenvalues)."""
    if not isinstance(s, Spectrum):
        s = Spectrum(s)
    if s.total() > 1 + 1e-9:
        raise NumericalError(f"spectrum sums to {s.total():.12g} > 1")
    return shannon_bits(s.values)


def entropy_of_operator(m) -> float:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    if not np.allclose(m, m.conj().T, rtol=0.0, atol=HERMITIAN_ATOL):
        raise NotHermitianError("entropy requires a Hermitian operator")
    return entropy_of_spectrum(np.linalg.eigvalsh(m))


def joint_entropy_analytic(p: AccelParam, cutoff: int) -> EntropyValue:
    """Entropy of the joint state from its closed-form spectrum.

    The tail bound uses ``lambda_n >= (1-q)/2 q^n`` so that
    ``-log2 lambda_n <= log2(2/(1-q)) + n log2(1/q)`` for every dropped term.
    """
    bits = shannon_bits(spectrum_terms(p, cutoff))
    q = p.q
    if q == 0.0:
        return EntropyValue(bits, 0.0)
    w = 1.0 - q
    g0, g1, g2 = geometric_moment_tails(q, cutoff + 1)
    # sum_{n>N} n lambda_n, with lambda_n = w/2 q^n + w^2/2 (n+1) q^n
    first_moment = w / 2 * g1 + w * w / 2 * (g2 + g1)
    bound = math.log2(2 / w) * tail_mass(p, cutoff) + math.log2(1 / q) * first_moment
    return EntropyValue(bits, bound)


def tridiagonal_eigenvalues(diag, offdiag) -> np.ndarray:
    """Eigenvalues (descending) of a Hermitian tridiagonal matrix.

    A complex off-diagonal is replaced by its modulus, which is a diagonal
    unitary similarity and leaves the spectrum unchanged.
    """
    d = np.asarray(diag, dtype=float)
    e = np.asarray(offdiag)
    if d.ndim != 1 or e.ndim != 1 or e.size != max(d.size - 1, 0):
        raise DimensionError(f"offdiag must have length len(diag) - 1, got {e.size} for {d.size}")
    if d.size == 0:
        return d.copy()
    e = np.abs(e) if np.iscomplexobj(e) else e.astype(float)
    if d.size == 1:
        return d.copy()
    return eigvalsh_tridiagonal(d, e, lapack_driver="sterf")[::-1]
