"""Dense complex matrices: validation, Hermitian eigendecomposition, trace norm.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``. The
``as_*`` constructors validate their input, absorb tiny floating-point drift,
and return read-only copies so validated values can be shared freely.

The eigensolver is a cyclic complex Jacobi method. It is slower than LAPACK
but deterministic across platforms, which keeps golden outputs stable.
"""

from __future__ import annotations

import numpy as np

from .exceptions import ConvergenceError, DimensionError, ValidationError

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
NORM_TOL = 1e-12
UNITARY_TOL = 1e-10

JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100
# eigenvalues closer than this are treated as tied when ordering
_TIE_TOL = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.flags.writeable = False
    return a


def as_matrix(a) -> np.ndarray:
    """Return `a` as a read-only square complex matrix."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError("matrix has non-finite entries")
    return _frozen(m)


def as_hermitian(a, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Validate and symmetrize a Hermitian matrix.

    Entries may deviate from Hermiticity by at most `tol` (absolute, per
    entry); the returned matrix is ``(A + A^dagger) / 2``.
    """
    m = as_matrix(a)
    defect = np.max(np.abs(m - m.conj().T))
    if defect > tol:
        raise ValidationError(f"matrix is not Hermitian (max asymmetry {defect:.3g})")
    return _frozen((m + m.conj().T) / 2)


def as_density_matrix(a) -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, positive semidefinite."""
    m = as_hermitian(a)
    tr = np.trace(m).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise ValidationError(f"density matrix has trace {tr!r}, expected 1")
    lam_min = hermitian_eigvals(m)[-1]
    if lam_min < -PSD_TOL:
        raise ValidationError(f"density matrix has negative eigenvalue {lam_min:.3g}")
    return m


def as_pure_state(v) -> np.ndarray:
    """Validate a normalized state vector."""
    psi = np.asarray(v, dtype=complex)
    if psi.ndim != 1 or psi.size < 1:
        raise DimensionError(f"expected a non-empty vector, got shape {psi.shape}")
    nrm2 = np.vdot(psi, psi).real
    if abs(nrm2 - 1.0) > NORM_TOL:
        raise ValidationError(f"state vector has squared norm {nrm2!r}, expected 1")
    return _frozen(psi)


def is_unitary(u, tol: float = UNITARY_TOL) -> bool:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol)


def as_unitary(u, tol: float = UNITARY_TOL) -> np.ndarray:
    m = as_matrix(u)
    if not is_unitary(m, tol):
        raise ValidationError("matrix is not unitary")
    return m


def _offdiag_norm(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def _jacobi(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a = np.array(h, dtype=complex, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    if n == 1:
        return a.diagonal().real.copy(), v
    threshold = JACOBI_TOL * max(1.0, float(np.linalg.norm(a)))
    for _ in range(JACOBI_MAX_SWEEPS):
        if _offdiag_norm(a) < threshold:
            return a.diagonal().real.copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = a[p, q]
                mod = abs(b)
                if mod < 1e-300:
                    a[p, q] = a[q, p] = 0.0
                    continue
                # phase rotation turns the pair into a real symmetric 2x2 block
                ph = b / mod
                app, aqq = a[p, p].real, a[q, q].real
                tau = (aqq - app) / (2.0 * mod)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                g = np.array([[c, s], [-s * ph.conjugate(), c * ph.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ g
    if _offdiag_norm(a) < threshold:
        return a.diagonal().real.copy(), v
    raise ConvergenceError(f"Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps")


def _fix_phase(vecs: np.ndarray) -> np.ndarray:
    # make the first non-negligible component of each column real and positive
    out = vecs.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        j = int(np.argmax(np.abs(col) > 1e-8))
        out[:, k] = col * (abs(col[j]) / col[j])
    return out


def _vec_key(col: np.ndarray) -> tuple:
    return tuple(x for z in np.round(col, 12) for x in (z.real, z.imag))


def hermitian_eig(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    h : array_like
        Hermitian matrix (validated with :func:`as_hermitian`).

    Returns
    -------
    eigenvalues : ndarray
        Real eigenvalues in descending order.
    eigenvectors : ndarray
        Unitary matrix whose columns are the matching eigenvectors. The
        phase of each column is fixed so its first non-negligible entry is
        real positive; columns with tied eigenvalues are ordered
        lexicographically by their entries.
    """
    m = as_hermitian(h)
    lam, vecs = _jacobi(m)
    vecs = _fix_phase(vecs)
    order = sorted(range(lam.size), key=lambda k: -lam[k])
    # stable tie-break inside groups of (numerically) equal eigenvalues
    result: list[int] = []
    i = 0
    while i < len(order):
        j = i + 1
        while j < len(order) and lam[order[i]] - lam[order[j]] <= _TIE_TOL:
            j += 1
        result.extend(sorted(order[i:j], key=lambda k: _vec_key(vecs[:, k])))
        i = j
    return lam[result], vecs[:, result]


def hermitian_eigvals(h) -> np.ndarray:
    return hermitian_eig(h)[0]


def trace_norm(h) -> float:
    """Trace norm of a Hermitian matrix, the sum of absolute eigenvalues."""
    return float(np.sum(np.abs(hermitian_eigvals(h))))


def positive_projector(h, tol: float = 1e-12) -> np.ndarray:
    """Projector onto the eigenspace of `h` with eigenvalues above `tol`."""
    lam, vecs = hermitian_eig(h)
    pos = vecs[:, lam > tol]
    return as_hermitian(pos @ pos.conj().T)


def tensor(a, b) -> np.ndarray:
    """Kronecker product ``a (x) b``."""
    return _frozen(np.kron(as_matrix(a), as_matrix(b)))


def outer(v) -> np.ndarray:
    """Rank-one projector ``|v><v|`` of a normalized state."""
    psi = as_pure_state(v)
    return as_hermitian(np.outer(psi, psi.conj()))


def identity(dim: int) -> np.ndarray:
    return _frozen(np.eye(dim, dtype=complex))


def basis_state(dim: int, k: int) -> np.ndarray:
    e = np.zeros(dim, dtype=complex)
    e[k] = 1.0
    return _frozen(e)
