"""Dense third-order tensor primitives.

A hyperspectral cube with I rows, J columns and K spectral bands is kept as
a float64 numpy array of shape (K, I, J): band-sequential layout, each band
one contiguous I x J plane.  Entry (i, j, k) of the cube lives at
``a[k, i, j]``.  The spectral (mode-3) unfolding places entry (i, j, k) at
row k, column i*J + j, which for this layout is a plain reshape.  The same
convention extends to factor stacks: anything indexed "per band" or "per
slice" puts that index on axis 0.
"""

import math

import numpy as np

from .errors import ShapeError


def cube_dims(a):
    """Spatial and spectral sizes (I, J, K) of a (K, I, J) cube array."""
    if a.ndim != 3:
        raise ShapeError(f"expected a third-order array, got {a.ndim} dimensions")
    k, i, j = a.shape
    return i, j, k


def inner_product(a, b):
    """Sum of entrywise products of two same-shaped arrays."""
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.dot(a.ravel(), b.ravel()))


def frob_norm_sq(a):
    """Squared Frobenius norm, accumulated directly (no sqrt round trip)."""
    flat = a.ravel()
    return float(np.dot(flat, flat))


def frob_norm(a):
    """Frobenius norm of an array of any shape."""
    return math.sqrt(frob_norm_sq(a))


def l1_norm(a):
    """Sum of absolute values over all entries."""
    return float(np.sum(np.abs(a)))


def unfold_mode3(a):
    """Unfold a (K, I, J) cube into a K x (I*J) matrix.

    Row k holds band k scanned row-major, so column index i*J + j carries
    pixel (i, j).  Returns a fresh array; the input is never aliased.
    """
    if a.ndim != 3:
        raise ShapeError(f"expected a third-order array, got {a.ndim} dimensions")
    return a.reshape(a.shape[0], -1).copy()


def fold_mode3(m, dims):
    """Inverse of :func:`unfold_mode3` for spatial/spectral dims (I, J, K)."""
    i, j, k = dims
    if m.shape != (k, i * j):
        raise ShapeError(
            f"cannot fold {m.shape} into dims (I={i}, J={j}, K={k}); need ({k}, {i * j})"
        )
    return m.reshape(k, i, j).copy()


def mode3_product(a, u):
    """Contract the spectral mode of ``a`` with the rows of ``u``.

    ``a`` has shape (n3, I, J) and ``u`` shape (p, n3); the result's entry
    [q, i, j] is sum_r u[q, r] * a[r, i, j], i.e. fold(u @ unfold(a)).
    """
    if a.ndim != 3:
        raise ShapeError(f"expected a third-order array, got {a.ndim} dimensions")
    if u.ndim != 2 or u.shape[1] != a.shape[0]:
        raise ShapeError(
            f"matrix of shape {u.shape} cannot contract mode of length {a.shape[0]}"
        )
    return (u @ a.reshape(a.shape[0], -1)).reshape(u.shape[0], a.shape[1], a.shape[2])
