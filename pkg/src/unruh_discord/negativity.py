"""Logarithmic negativity ``log2 || rho^{T_A} ||_1``."""
from __future__ import annotations

import math

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .fock_core import AccelParam, JointState, TruncationPolicy
from .states import build_rho_ar


def partial_transpose(rho: JointState) -> np.ndarray:
    """Transpose on Alice's qubit: block ``(s, s')`` moves to ``(s', s)``."""
    d = rho.fock_dim
    r4 = np.asarray(rho.matrix).reshape(2, d, 2, d)
    return r4.transpose(2, 1, 0, 3).reshape(2 * d, 2 * d)


def block_eigvalsh(m: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, diagonalizing each decoupled block separately.

    Blocks are the connected components of the sparsity graph, so the result
    equals ``eigvalsh(m)`` up to ordering.
    """
    n_comp, labels = connected_components(csr_matrix(m != 0), directed=False)
    if n_comp == 1:
        return np.linalg.eigvalsh(m)
    out = []
    for k in range(n_comp):
        idx = np.flatnonzero(labels == k)
        out.append(np.linalg.eigvalsh(m[np.ix_(idx, idx)]))
    return np.concatenate(out)


def trace_norm(m: np.ndarray) -> float:
    return math.fsum(np.abs(block_eigvalsh(m)))


def log_negativity(p: AccelParam, policy: TruncationPolicy | None = None) -> float:
    return math.log2(trace_norm(partial_transpose(build_rho_ar(p, policy))))
