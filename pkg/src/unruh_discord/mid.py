"""Measurement-induced disturbance (MID).

``M(rho) = I(rho) - I(P(rho))`` where ``P`` dephases both parties in the
eigenbases of their reduced states.  Both marginals of the Alice-Rob state are
diagonal in the computational x Fock basis, so ``P(rho) = diag(rho)``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .entropy import EntropyValue, entropy_of_operator, entropy_of_spectrum, joint_entropy_analytic, shannon_bits
from .fock_core import AccelParam, JointState, NumericalError, TruncationPolicy, geometric_moment_tails
from .states import build_rho_ar, reduce_to_alice, reduce_to_rob


class DegenerateMarginalWarning(UserWarning):
    pass


def _marginal_basis(m: np.ndarray, name: str) -> np.ndarray | None:
    """Unitary whose columns diagonalize ``m``; ``None`` for the computational basis.

    An already-diagonal marginal keeps the computational basis even when its
    spectrum is degenerate.
    """
    if np.count_nonzero(m - np.diag(np.diagonal(m))) == 0:
        return None
    vals, vecs = np.linalg.eigh(m)
    if np.any(np.diff(vals) < 1e-12):
        warnings.warn(f"{name} has a degenerate spectrum; its eigenbasis is not unique",
                      DegenerateMarginalWarning, stacklevel=3)
    return vecs


def dephase(rho: JointState) -> JointState:
    """Apply ``sum_ij (Pi_i x Pi_j) rho (Pi_i x Pi_j)`` in the marginal eigenbases."""
    u_a = _marginal_basis(reduce_to_alice(rho), "rho_A")
    u_r = _marginal_basis(reduce_to_rob(rho).matrix, "rho_R")
    if u_a is None and u_r is None:
        out = np.diag(np.diagonal(rho.matrix))
    else:
        u = np.kron(np.eye(2) if u_a is None else u_a, np.eye(rho.fock_dim) if u_r is None else u_r)
        rotated = u.conj().T @ rho.matrix @ u
        out = u @ np.diag(np.diagonal(rotated)) @ u.conj().T
    return JointState(out, cutoff=rho.cutoff, epsilon=rho.epsilon)


@dataclass(frozen=True)
class MIDResult:
    value: float
    mutual_information_form: float
    h_dephased: float
    h_joint: float
    cutoff: int


def _mi_from_diag_parts(rho: JointState, h_joint: float) -> float:
    h_a = shannon_bits(np.diagonal(reduce_to_alice(rho)).real)
    h_r = shannon_bits(np.diagonal(reduce_to_rob(rho).matrix).real)
    return h_a + h_r - h_joint


def mid_measure(p: AccelParam, policy: TruncationPolicy | None = None) -> MIDResult:
    """MID as ``H(P(rho)) - H(rho)``, cross-checked against ``I(rho) - I(P(rho))``.

    Both marginals are diagonal for this family (checked by :func:`dephase`),
    so their entropies are Shannon entropies of the diagonals.
    """
    rho = build_rho_ar(p, policy)
    dephased = dephase(rho)
    dm = dephased.matrix
    if np.count_nonzero(dm - np.diag(np.diagonal(dm))) == 0:
        h_p = entropy_of_spectrum(np.diagonal(dm).real)
    else:
        h_p = entropy_of_operator(dm)
    h_rho = joint_entropy_analytic(p, rho.cutoff).bits
    value = h_p - h_rho
    i_form = _mi_from_diag_parts(rho, h_rho) - _mi_from_diag_parts(dephased, h_p)
    if abs(i_form - value) > 1e-9:
        raise NumericalError(f"MID forms disagree at t={p.t}: {value!r} vs {i_form!r}")
    return MIDResult(value, i_form, h_p, h_rho, rho.cutoff)


def log_weighted_series(p: AccelParam, cutoff: int) -> tuple[float, float]:
    """``S = sum t^{2n} (n+1) log2(n+1)`` to ``cutoff`` and a bound on the rest.

    The bound uses ``(n+1) log2(n+1) <= (n+1)^2``.
    """
    q = p.q
    n = np.arange(cutoff + 1, dtype=float)
    partial = math.fsum(q**n * (n + 1) * np.log2(n + 1))
    g0, g1, g2 = geometric_moment_tails(q, cutoff + 1)
    return partial, g2 + 2 * g1 + g0


def h_dephased_closed_form(p: AccelParam, policy: TruncationPolicy | None = None) -> EntropyValue:
    """Closed-form entropy of ``diag(rho_AR)``.

    ``1 - 3 t^2/(1-t^2) log2 t - 3/2 log2(1-t^2) - (1-t^2)^2/2 S``; the sum
    ``S`` runs to the policy cutoff and the returned ``tail_bound`` covers
    its remainder.
    """
    cutoff = (policy or TruncationPolicy.adaptive()).resolve(p)
    t, q = p.t, p.q
    w = 1.0 - q
    s, s_tail = log_weighted_series(p, cutoff)
    # t^2 log t -> 0 as t -> 0
    log_term = 0.0 if t == 0.0 else 3 * q / w * math.log2(t)
    bits = 1.0 - log_term - 1.5 * math.log2(w) - w * w / 2 * s
    return EntropyValue(bits, w * w / 2 * s_tail)
