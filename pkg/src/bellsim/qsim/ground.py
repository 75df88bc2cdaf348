"""Ground-state energies of Pauli-sum Hamiltonians.

Primary path: implicitly restarted Lanczos (ARPACK via scipy.sparse.linalg.eigsh)
on the streaming matrix-vector product, so nothing dense is ever built.  The
dense diagonalization is kept as a small-system cross-check oracle.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg
import scipy.sparse.linalg

from ..errors import CapacityError, ConvergenceError
from .pauli import PauliSum

ITERATIVE_LIMIT = 24
DENSE_LIMIT = 12
_TOL = 1e-8
_MAXITER = 10_000


def ground_energy(h: PauliSum, n: int) -> float:
    """Minimum eigenvalue of h on n qubits (relative tolerance 1e-8)."""
    if n != h.num_qubits:
        raise ValueError(f"operator is on {h.num_qubits} qubits, asked for {n}")
    if n > ITERATIVE_LIMIT:
        raise CapacityError(f"iterative eigensolver supports n <= {ITERATIVE_LIMIT}, got {n}")
    if n <= 3:
        # ARPACK needs k < dim - 1 headroom; these are trivial densely
        return ground_energy_dense(h, n)

    dim = 1 << n
    op = scipy.sparse.linalg.LinearOperator(
        (dim, dim), matvec=h.apply, dtype=np.complex128
    )
    # deterministic, almost-surely non-orthogonal start vector
    v0 = np.random.default_rng(0x5EED).standard_normal(dim)
    try:
        vals = scipy.sparse.linalg.eigsh(
            op, k=1, which="SA", tol=_TOL, maxiter=_MAXITER, v0=v0,
            return_eigenvectors=False,
        )
    except scipy.sparse.linalg.ArpackNoConvergence as exc:
        raise ConvergenceError(
            f"Lanczos did not converge within {_MAXITER} iterations: {exc}"
        ) from exc
    return float(vals[0])


def ground_energy_dense(h: PauliSum, n: int) -> float:
    """Dense cross-check; refuses sizes where the 2^N x 2^N matrix is unreasonable."""
    if n != h.num_qubits:
        raise ValueError(f"operator is on {h.num_qubits} qubits, asked for {n}")
    if n > DENSE_LIMIT:
        raise CapacityError(f"dense path supports n <= {DENSE_LIMIT}, got {n}")
    vals = scipy.linalg.eigvalsh(h.to_dense())
    return float(vals[0])
