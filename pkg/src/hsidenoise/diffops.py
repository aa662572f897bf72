"""Periodic 3-D forward differences, their adjoint, and the Fourier-domain
solve for the screened TV normal equations.

A difference field stacks the three directional difference cubes of a
(K, I, J) cube into one array of shape (3, K, I, J); planes 0, 1 and 2 hold
differences along rows, columns and bands.  The solver keeps both the TV
auxiliary variable and its multiplier in this form, so soft thresholding
and linear arithmetic apply to the whole stack at once.

Differences are circular (the last sample wraps to the first).  That makes
the composite operator D'D diagonal in the 3-D DFT basis, so
(beta2*I + beta3*D'D) z = m is solved exactly by one FFT round trip.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NumericError, ShapeError
from .tensor import frob_norm

# axes of a (K, I, J) array along which the three field planes differentiate
_FIELD_AXES = (1, 2, 0)  # rows, columns, bands


def diff_forward(x):
    """Circular forward differences of a cube along rows, columns and bands.

    Plane c of the result is x shifted one step along its axis minus x, so a
    constant cube maps to zero exactly.
    """
    if x.ndim != 3:
        raise ShapeError(f"expected a third-order array, got {x.ndim} dimensions")
    out = np.empty((3,) + x.shape)
    for c, ax in enumerate(_FIELD_AXES):
        out[c] = np.roll(x, -1, axis=ax) - x
    return out


def diff_adjoint(d):
    """Adjoint of :func:`diff_forward` on a difference field.

    Satisfies <diff_forward(x), d> == <x, diff_adjoint(d)> exactly (circular
    boundary), which the tests verify against a loop-built dense operator.
    """
    if d.ndim != 4 or d.shape[0] != 3:
        raise ShapeError(f"expected a difference field of shape (3, K, I, J), got {d.shape}")
    out = np.zeros(d.shape[1:])
    for c, ax in enumerate(_FIELD_AXES):
        out += np.roll(d[c], 1, axis=ax) - d[c]
    return out


@dataclass(frozen=True)
class TvKernelSpectrum:
    """Eigenvalues of beta2*I + beta3*D'D on the 3-D DFT grid.

    ``denom`` is real with shape (K, I, J), bounded below by beta2, and is
    the pointwise denominator of the Fourier-domain solve.  Cache one
    instance per (shape, beta2, beta3) triple; it only changes if the
    penalty weights are rescaled between sweeps.
    """

    denom: np.ndarray
    beta2: float
    beta3: float


def tv_kernel_spectrum(shape, beta2, beta3):
    """Spectrum of the screened difference operator for cubes of ``shape``.

    Each circular forward difference along an axis of length n contributes
    4*sin(pi*f/n)^2 at frequency index f, and the three axes add.
    """
    if len(shape) != 3 or any(s < 1 for s in shape):
        raise ShapeError(f"need a (K, I, J) shape of positive sizes, got {shape}")
    if beta2 <= 0:
        raise ValueError(f"beta2 must be positive, got {beta2}")
    if beta3 < 0:
        raise ValueError(f"beta3 must be nonnegative, got {beta3}")
    total = np.zeros(shape)
    for ax, n in enumerate(shape):
        eig = 4.0 * np.sin(np.pi * np.arange(n) / n) ** 2
        profile = [1, 1, 1]
        profile[ax] = n
        total += eig.reshape(profile)
    return TvKernelSpectrum(denom=beta2 + beta3 * total, beta2=beta2, beta3=beta3)


def solve_z_system(m, spectrum):
    """Solve (beta2*I + beta3*D'D) z = m by pointwise division in the DFT basis.

    The solution of a real right-hand side is real; the imaginary residue of
    the inverse transform is dropped after checking it stays below 1e-9 of
    the input norm.
    """
    if m.shape != spectrum.denom.shape:
        raise ShapeError(
            f"right-hand side shape {m.shape} does not match spectrum shape {spectrum.denom.shape}"
        )
    z = np.fft.ifftn(np.fft.fftn(m) / spectrum.denom)
    if frob_norm(z.imag) > 1e-9 * frob_norm(m) + 1e-30:
        raise NumericError("Fourier solve produced a non-negligible imaginary residue")
    return np.ascontiguousarray(z.real)
