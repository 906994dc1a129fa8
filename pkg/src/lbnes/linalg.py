"""Small dense linear algebra kernels.

Everything here targets desk-scale problems (N up to a few dozen), so the
routines favour determinism and transparent failure modes over speed.
"""

import numpy as np

from .errors import SingularMatrixError, ValidationError

PIVOT_RTOL = 1e-12


def solve(a, b, pivot_rtol=PIVOT_RTOL):
    """Solve ``a @ x = b`` by Gaussian elimination with partial pivoting.

    Parameters
    ----------
    a : (n, n) array_like
    b : (n,) or (n, k) array_like
    pivot_rtol : float
        A pivot whose magnitude falls below ``pivot_rtol * max|a|`` is
        treated as zero.

    Raises
    ------
    SingularMatrixError
        If elimination meets a negligible pivot. The exception carries the
        0-based elimination stage in ``pivot_stage``.
    """
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"coefficient matrix must be square, got shape {a.shape}")
    n = a.shape[0]
    if b.shape[0] != n:
        raise ValidationError(f"right-hand side has {b.shape[0]} rows, expected {n}")
    vector_rhs = b.ndim == 1
    if vector_rhs:
        b = b[:, None]

    scale = np.max(np.abs(a)) if a.size else 0.0
    if scale == 0.0:
        raise SingularMatrixError("matrix is identically zero (pivot stage 0)", pivot_stage=0)
    tol = pivot_rtol * scale

    for col in range(n):
        piv = col + int(np.argmax(np.abs(a[col:, col])))
        if abs(a[piv, col]) < tol:
            raise SingularMatrixError(
                f"pivot {abs(a[piv, col]):.3e} below tolerance {tol:.3e} "
                f"at elimination stage {col}",
                pivot_stage=col,
            )
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            b[[col, piv]] = b[[piv, col]]
        factors = a[col + 1:, col] / a[col, col]
        a[col + 1:, col:] -= np.outer(factors, a[col, col:])
        b[col + 1:] -= np.outer(factors, b[col])

    x = np.empty_like(b)
    for row in range(n - 1, -1, -1):
        x[row] = (b[row] - a[row, row + 1:] @ x[row + 1:]) / a[row, row]
    return x[:, 0] if vector_rhs else x


def jacobi_eigenvalues(s, rtol=1e-12, max_sweeps=100):
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending."""
    s = np.array(s, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise ValidationError(f"matrix must be square, got shape {s.shape}")
    n = s.shape[0]
    s = 0.5 * (s + s.T)
    total = np.sqrt(np.sum(s * s))
    if total == 0.0:
        return np.zeros(n)
    offdiag = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        if np.sqrt(np.sum(s[offdiag] ** 2)) <= rtol * total * 1e-3:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = s[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (s[q, q] - s[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                sn = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = sn
                rot[q, p] = -sn
                s = rot.T @ s @ rot
                s[p, q] = s[q, p] = 0.0
    return np.sort(np.diag(s))


def expm(a, terms=13):
    """Matrix exponential by scaling and squaring a truncated Taylor series.

    The matrix is scaled by ``2**-s`` until its 1-norm is below 0.5, the
    series is summed to ``terms`` terms, and the result squared ``s`` times.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    norm = np.max(np.sum(np.abs(a), axis=0)) if a.size else 0.0
    squarings = 0
    while norm / 2.0 ** squarings >= 0.5:
        squarings += 1
    scaled = a / 2.0 ** squarings
    result = np.eye(n)
    term = np.eye(n)
    for k in range(1, terms + 1):
        term = term @ scaled / k
        result = result + term
    for _ in range(squarings):
        result = result @ result
    return result
