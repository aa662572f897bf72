"""Seeded mixed-noise simulation for benchmark cubes.

Four canonical corruption recipes are provided, mirroring the usual
simulated-degradation protocol on reflectance cubes normalized to [0, 1]:

1. dense Gaussian noise (sigma 0.2) plus 20% impulse noise;
2. Gaussian noise (sigma 0.15) plus deadlines in bands 41-100;
3. Gaussian noise (sigma 0.05), 10% impulse noise and the same deadlines;
4. recipe 3 plus additive stripes in bands 101-190.

Band numbers in specs are 1-based and inclusive.  Corruptions compose in
the fixed order Gaussian -> impulse -> deadlines -> stripes, and nothing is
clipped afterwards.  All randomness is drawn from one numpy Philox
(counter-based) generator seeded from the spec, so a (cube, spec) pair
always reproduces the same noisy output bit for bit.
"""

import json
from dataclasses import asdict, dataclass

import numpy as np

from .errors import ShapeError


@dataclass(frozen=True)
class DeadlineSpec:
    """Dead column runs: per band in [band_lo, band_hi], ``count`` runs of
    ``width`` consecutive columns are zeroed over the full height, with
    count and width drawn uniformly from the given inclusive ranges."""

    band_lo: int
    band_hi: int
    count_lo: int
    count_hi: int
    width_lo: int
    width_hi: int

    def __post_init__(self):
        _check_window(self.band_lo, self.band_hi, "band")
        _check_window(self.count_lo, self.count_hi, "count")
        _check_window(self.width_lo, self.width_hi, "width")


@dataclass(frozen=True)
class StripeSpec:
    """Striped columns: per band in [band_lo, band_hi], ``count`` single
    columns each receive one constant offset drawn from [-0.25, 0.25]."""

    band_lo: int
    band_hi: int
    count_lo: int
    count_hi: int

    def __post_init__(self):
        _check_window(self.band_lo, self.band_hi, "band")
        _check_window(self.count_lo, self.count_hi, "count")


@dataclass(frozen=True)
class NoiseSpec:
    """Complete description of one simulated degradation."""

    gaussian_sigma: float = 0.0
    impulse_fraction: float = 0.0
    deadline: DeadlineSpec | None = None
    stripes: StripeSpec | None = None
    seed: int = 0

    def __post_init__(self):
        if self.gaussian_sigma < 0:
            raise ValueError(f"gaussian_sigma must be nonnegative, got {self.gaussian_sigma}")
        if not 0.0 <= self.impulse_fraction <= 1.0:
            raise ValueError(
                f"impulse_fraction must lie in [0, 1], got {self.impulse_fraction}"
            )

    def to_json(self):
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text):
        raw = json.loads(text)
        if raw.get("deadline") is not None:
            raw["deadline"] = DeadlineSpec(**raw["deadline"])
        if raw.get("stripes") is not None:
            raw["stripes"] = StripeSpec(**raw["stripes"])
        return cls(**raw)


def _check_window(lo, hi, name):
    if lo < 1 or hi < lo:
        raise ValueError(f"{name} range [{lo}, {hi}] is not an ordered range of positives")


def _band_indices(lo, hi, k):
    # 1-based inclusive window -> 0-based band indices, erroring past the cube
    if hi > k:
        raise ShapeError(f"band window [{lo}, {hi}] exceeds the cube's {k} bands")
    return range(lo - 1, hi)


def add_gaussian(x, sigma, rng):
    """Add iid zero-mean Gaussian noise of standard deviation ``sigma``."""
    if sigma < 0:
        raise ValueError(f"sigma must be nonnegative, got {sigma}")
    if sigma == 0.0:
        return x.copy()
    return x + sigma * rng.standard_normal(x.shape)


def add_impulse(x, fraction, rng):
    """Replace each entry independently with probability ``fraction``.

    Replacements are 0 or 1 with equal chance (salt and pepper on a [0, 1]
    scale).  The value stream is drawn for every entry regardless of the
    hit mask, so the consumed randomness does not depend on the outcome.
    """
    if not 0.0 <= fraction <= 1.0:
        raise ValueError(f"fraction must lie in [0, 1], got {fraction}")
    if fraction == 0.0:
        return x.copy()
    hit = rng.random(x.shape) < fraction
    salt = rng.random(x.shape) < 0.5
    out = x.copy()
    out[hit] = salt[hit].astype(float)
    return out


def add_deadlines(x, spec, rng):
    """Zero out runs of whole columns per band, as described by ``spec``."""
    out = x.copy()
    j = x.shape[2]
    for k in _band_indices(spec.band_lo, spec.band_hi, x.shape[0]):
        count = int(rng.integers(spec.count_lo, spec.count_hi, endpoint=True))
        for _ in range(count):
            width = min(int(rng.integers(spec.width_lo, spec.width_hi, endpoint=True)), j)
            start = int(rng.integers(0, j - width, endpoint=True))
            out[k, :, start : start + width] = 0.0
    return out


def add_stripes(x, spec, rng):
    """Add a constant offset from [-0.25, 0.25] to random columns per band."""
    out = x.copy()
    j = x.shape[2]
    for k in _band_indices(spec.band_lo, spec.band_hi, x.shape[0]):
        count = int(rng.integers(spec.count_lo, spec.count_hi, endpoint=True))
        cols = rng.integers(0, j, size=count)
        offsets = rng.uniform(-0.25, 0.25, size=count)
        for col, off in zip(cols, offsets):
            out[k, :, col] += off
    return out


def apply_noise(x, spec):
    """Apply one full degradation recipe to a cube.

    The input is untouched; the return is a fresh cube.  Band windows must
    fit the cube; use :func:`case_spec` to build pre-clamped recipes.
    """
    if x.ndim != 3:
        raise ShapeError(f"expected a (K, I, J) cube, got {x.ndim} dimensions")
    rng = np.random.Generator(np.random.Philox(spec.seed))
    out = add_gaussian(x, spec.gaussian_sigma, rng)
    out = add_impulse(out, spec.impulse_fraction, rng)
    if spec.deadline is not None:
        out = add_deadlines(out, spec.deadline, rng)
    if spec.stripes is not None:
        out = add_stripes(out, spec.stripes, rng)
    return out


def case_spec(case_id, k, seed=0):
    """Noise recipe of one canonical case, windows clamped to ``k`` bands."""

    def clamp(b):
        return min(max(b, 1), k)

    deadlines = DeadlineSpec(
        band_lo=clamp(41), band_hi=clamp(100), count_lo=3, count_hi=10, width_lo=1, width_hi=3
    )
    if case_id == 1:
        return NoiseSpec(gaussian_sigma=0.2, impulse_fraction=0.2, seed=seed)
    if case_id == 2:
        return NoiseSpec(gaussian_sigma=0.15, deadline=deadlines, seed=seed)
    if case_id == 3:
        return NoiseSpec(gaussian_sigma=0.05, impulse_fraction=0.1, deadline=deadlines, seed=seed)
    if case_id == 4:
        stripes = StripeSpec(band_lo=clamp(101), band_hi=clamp(190), count_lo=20, count_hi=40)
        return NoiseSpec(
            gaussian_sigma=0.05,
            impulse_fraction=0.1,
            deadline=deadlines,
            stripes=stripes,
            seed=seed,
        )
    raise ValueError(f"case must be 1, 2, 3 or 4, got {case_id}")


def apply_case(x, case_id, seed=0):
    """Degrade a cube with a canonical case; returns (noisy, spec used)."""
    spec = case_spec(case_id, x.shape[0], seed=seed)
    return apply_noise(x, spec), spec
