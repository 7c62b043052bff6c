"""Dense symmetric kernels: Cholesky, generalized eigenproblems, nullspaces.

Everything here is written for desk-scale dense problems (order up to a few
thousand).  The generalized symmetric eigensolver reduces the pencil to
standard form with a Cholesky factor of the right-hand matrix and then runs
cyclic Jacobi sweeps, which is slow in the asymptotic sense but simple and
very accurate at these sizes.
"""

import numpy as np

from .errors import NotSPDError

SYMMETRY_RTOL = 1e-12
JACOBI_RTOL = 1e-12
JACOBI_MAX_SWEEPS = 30
NULLSPACE_PIVOT_RTOL = 1e-12


def check_symmetric(a, rtol=SYMMETRY_RTOL, name="matrix"):
    """Raise if ``a`` is not symmetric to relative tolerance ``rtol``."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    scale = np.abs(a).max()
    if scale == 0.0:
        return a
    if np.abs(a - a.T).max() > rtol * scale * 10:
        raise ValueError(f"{name} is not symmetric (rtol {rtol})")
    return a


def cholesky(a):
    """Lower-triangular factor L with ``a = L @ L.T``.

    Raises :class:`NotSPDError` with the failing pivot index when ``a`` is
    not positive definite.
    """
    a = check_symmetric(a)
    n = a.shape[0]
    work = a.astype(float, copy=True)
    for k in range(n):
        d = work[k, k]
        if not np.isfinite(d) or d <= 0.0:
            raise NotSPDError(k, d)
        d = np.sqrt(d)
        work[k, k] = d
        col = work[k + 1:, k] / d
        work[k + 1:, k] = col
        work[k + 1:, k + 1:] -= np.outer(col, col)
    return np.tril(work)


def solve_lower(l, b):
    """Solve ``l @ x = b`` for lower-triangular ``l`` (vector or matrix rhs)."""
    l = np.asarray(l, dtype=float)
    x = np.array(b, dtype=float, copy=True)
    vec = x.ndim == 1
    if vec:
        x = x[:, None]
    n = l.shape[0]
    for i in range(n):
        if i:
            x[i] -= l[i, :i] @ x[:i]
        x[i] /= l[i, i]
    return x[:, 0] if vec else x


def solve_upper(u, b):
    """Solve ``u @ x = b`` for upper-triangular ``u``."""
    u = np.asarray(u, dtype=float)
    x = np.array(b, dtype=float, copy=True)
    vec = x.ndim == 1
    if vec:
        x = x[:, None]
    n = u.shape[0]
    for i in range(n - 1, -1, -1):
        if i < n - 1:
            x[i] -= u[i, i + 1:] @ x[i + 1:]
        x[i] /= u[i, i]
    return x[:, 0] if vec else x


def cholesky_solve(l, b):
    """Solve ``(L L^T) x = b`` given the Cholesky factor ``l``."""
    return solve_upper(l.T, solve_lower(l, b))


def spd_solve(a, b):
    """Solve ``a x = b`` for symmetric positive definite ``a``."""
    return cholesky_solve(cholesky(a), b)


def offdiagonal_norm(a):
    """Frobenius norm of the off-diagonal part."""
    return np.sqrt(max(np.sum(a * a) - np.sum(np.diag(a) ** 2), 0.0))


def jacobi_eigh(a, rtol=JACOBI_RTOL, max_sweeps=JACOBI_MAX_SWEEPS):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns ``(w, v, history)`` with eigenvalues ``w`` ascending, orthonormal
    eigenvector columns ``v`` and the per-sweep off-diagonal Frobenius norms
    (monotonically decreasing).
    """
    a = check_symmetric(a).astype(float, copy=True)
    n = a.shape[0]
    v = np.eye(n)
    fro = np.linalg.norm(a)
    history = [offdiagonal_norm(a)]
    if n < 2 or fro == 0.0:
        w = np.diag(a).copy()
        order = np.argsort(w, kind="stable")
        return w[order], v[:, order], history

    # entries below this cannot prevent the off norm from reaching rtol*fro
    skip = rtol * fro / (10.0 * n)
    for _ in range(max_sweeps):
        if history[-1] <= rtol * fro:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                tau = (aqq - app) / (2.0 * apq)
                t = np.sign(tau) if tau != 0 else 1.0
                t = t / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                # two-sided rotation on rows/columns p and q
                ap = a[p].copy()
                aq = a[q].copy()
                a[p] = c * ap - s * aq
                a[q] = s * ap + c * aq
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        history.append(offdiagonal_norm(a))
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order], history


def generalized_sym_eig(a, b):
    """Solve ``a x = lam b x`` for symmetric ``a`` and SPD ``b``.

    Returns eigenvalues ascending and B-orthonormal eigenvector columns.
    ``a`` may be singular (semidefinite pencils produce zero eigenvalues);
    ``b`` must be positive definite or :class:`NotSPDError` is raised.
    """
    a = check_symmetric(a, name="left matrix")
    b = check_symmetric(b, name="right matrix")
    l = cholesky(b)
    # standard form C = L^-1 A L^-T, symmetrized against rounding
    y = solve_lower(l, a)
    c = solve_lower(l, y.T)
    c = 0.5 * (c + c.T)
    w, vstd, _ = jacobi_eigh(c)
    x = solve_upper(l.T, vstd)
    return w, x


def eig_residual(a, b, w, x):
    """Max scaled residual ``|A x - w B x|`` over the eigenpairs."""
    r = a @ x - (b @ x) * w[None, :]
    scale = np.linalg.norm(a) + np.abs(w).max() * np.linalg.norm(b)
    return np.abs(r).max() / max(scale, 1e-300)


def householder_qr(a, pivot_rtol=NULLSPACE_PIVOT_RTOL):
    """Householder QR with greedy column pivoting.

    Returns ``(q, r, perm, rank)`` with ``a[:, perm] = q @ r``.  The rank is
    the number of diagonal entries of ``r`` above ``pivot_rtol`` times the
    Frobenius norm of ``a``.
    """
    a = np.asarray(a, dtype=float)
    m, k = a.shape
    r = a.copy()
    perm = np.arange(k)
    q = np.eye(m)
    norm_a = np.linalg.norm(a)
    rank = 0
    for j in range(min(m, k)):
        col_norms = np.sqrt(np.sum(r[j:, j:] ** 2, axis=0))
        jmax = int(np.argmax(col_norms))
        if col_norms[jmax] <= pivot_rtol * max(norm_a, 1e-300):
            break
        if jmax != 0:
            r[:, [j, j + jmax]] = r[:, [j + jmax, j]]
            perm[[j, j + jmax]] = perm[[j + jmax, j]]
        x = r[j:, j]
        alpha = -np.sign(x[0]) * np.linalg.norm(x) if x[0] != 0 else -np.linalg.norm(x)
        vref = x.copy()
        vref[0] -= alpha
        vn = np.linalg.norm(vref)
        if vn > 0:
            vref /= vn
            r[j:, j:] -= 2.0 * np.outer(vref, vref @ r[j:, j:])
            q[:, j:] -= 2.0 * np.outer(q[:, j:] @ vref, vref)
        r[j + 1:, j] = 0.0
        rank += 1
    return q, r, perm, rank


def nullspace(c, ambient_dim=None, pivot_rtol=NULLSPACE_PIVOT_RTOL):
    """Orthonormal basis of ``{x : c @ x = 0}``.

    ``c`` has one row per constraint; dependent or duplicated rows are
    tolerated (the rank is determined by pivoted QR of ``c.T``).  Returns an
    array of shape ``(ambient_dim, ambient_dim - rank)``.
    """
    c = np.atleast_2d(np.asarray(c, dtype=float))
    if ambient_dim is None:
        ambient_dim = c.shape[1]
    if c.shape[1] != ambient_dim:
        raise ValueError("constraint row length does not match ambient dim")
    if c.size == 0 or np.abs(c).max() == 0.0:
        return np.eye(ambient_dim)
    q, _, _, rank = householder_qr(c.T, pivot_rtol=pivot_rtol)
    return q[:, rank:]
