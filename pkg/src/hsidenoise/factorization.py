"""Low-rank spectral factor model of the clean cube.

The clean signal is modeled as the spectral-mode product of an abundance
stack ``g`` of shape (R, I, J) with a matrix ``c`` of shape (K, R) whose
columns are orthonormal spectral signatures: entry (k, i, j) of the model
is sum_r c[k, r] * g[r, i, j].  Each abundance slice g[r] is additionally
pushed toward low matrix rank by singular value shrinkage, which is where
the spatial low-rank prior enters.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError
from .prox import svt
from .tensor import mode3_product


@dataclass
class MvtfFactors:
    """Abundance stack ``g`` (R, I, J) and orthonormal signatures ``c`` (K, R)."""

    g: np.ndarray
    c: np.ndarray


def _fix_column_signs(u):
    # make the largest-magnitude entry of each column nonnegative so the
    # initialization does not depend on LAPACK's sign conventions
    cols = np.arange(u.shape[1])
    flip = np.sign(u[np.argmax(np.abs(u), axis=0), cols])
    flip[flip == 0] = 1.0
    return u * flip


def init_factors(y, r):
    """Spectral-subspace initialization from the observation.

    ``c`` takes the ``r`` leading left singular vectors of the band-by-pixel
    unfolding of ``y`` (signs fixed per column); ``g`` is the projection of
    ``y`` onto that subspace, so compose(init_factors(y, r)) is the best
    rank-r spectral approximation of ``y``.
    """
    k = y.shape[0]
    if not 1 <= r <= k:
        raise ShapeError(f"rank {r} outside [1, {k}] for a cube with {k} bands")
    mat = y.reshape(k, -1)
    u = np.linalg.svd(mat, full_matrices=False)[0]
    c = _fix_column_signs(u[:, :r])
    g = (c.T @ mat).reshape(r, y.shape[1], y.shape[2])
    return MvtfFactors(g=g, c=c)


def update_g(x, c, lambda4, lambda_g, beta4):
    """Shrink each abundance slice of the back-projected target.

    The target is (x + lambda4/beta4) contracted against the current
    signatures; every slice then passes through singular value thresholding
    at lambda_g/beta4.  Slices are independent, so the loop order is
    immaterial.
    """
    target = mode3_product(x + lambda4 / beta4, c.T)
    tau = lambda_g / beta4
    return np.stack([svt(target[r], tau) for r in range(target.shape[0])])


def procrustes_target(g, x, lambda4, beta4):
    """R x K matrix whose trace product the signature update maximizes."""
    r, k = g.shape[0], x.shape[0]
    return g.reshape(r, -1) @ (lambda4.reshape(k, -1).T + beta4 * x.reshape(k, -1).T)


def orthonormal_from_target(m):
    """Maximizer of trace(m @ c) over matrices with orthonormal columns.

    Returns (c, s) where c = V U' from the SVD m = U S V' and s are the
    singular values; trace(m @ c) then equals their sum, which no feasible
    c can exceed.  A rank-deficient m still yields a valid orthonormal c,
    just not a unique one.
    """
    u, s, vt = np.linalg.svd(m, full_matrices=False)
    return vt.T @ u.T, s


def update_c(g, x, lambda4, beta4):
    """Orthonormal signatures best aligned with the current abundances."""
    return orthonormal_from_target(procrustes_target(g, x, lambda4, beta4))[0]


def compose(factors):
    """Assemble the modeled cube of shape (K, I, J) from the factors."""
    if factors.c.ndim != 2 or factors.c.shape[1] != factors.g.shape[0]:
        raise ShapeError(
            f"signatures {factors.c.shape} do not match {factors.g.shape[0]} abundance slices"
        )
    return mode3_product(factors.g, factors.c)
