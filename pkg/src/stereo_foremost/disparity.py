"""Disparity map container: 1/16-px fixed point with an invalid sentinel."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Fixed-point scale: stored value q = 16 * disparity_px.
FP_SCALE = 16
# Sentinel decodes to -1.0 px, matching the PFM invalid convention.
INVALID_Q = -FP_SCALE


@dataclass
class DisparityMap:
    """Per-pixel horizontal displacement, quantized to 1/16 px.

    q holds int32 fixed-point values; invalid pixels carry exactly
    INVALID_Q.  Valid values lie within [d_min, d_max] px.
    """

    q: np.ndarray
    d_min: int
    d_max: int

    def __post_init__(self):
        self.q = np.asarray(self.q, dtype=np.int32)
        if self.q.ndim != 2:
            raise ValueError("disparity data must be 2-D")
        valid = self.q != INVALID_Q
        bad = valid & ((self.q < self.d_min * FP_SCALE) | (self.q > self.d_max * FP_SCALE))
        if bad.any():
            raise ValueError("disparity values outside [d_min, d_max]")

    @property
    def height(self) -> int:
        return self.q.shape[0]

    @property
    def width(self) -> int:
        return self.q.shape[1]

    @property
    def valid_mask(self) -> np.ndarray:
        return self.q != INVALID_Q

    def to_pixels(self) -> np.ndarray:
        """float32 disparities in px; invalid pixels become -1.0."""
        px = self.q.astype(np.float32) / FP_SCALE
        px[~self.valid_mask] = -1.0
        return px

    def to_gray(self) -> np.ndarray:
        """8-bit visualization scaled by 255/d_max; invalid pixels are 0."""
        g = np.floor(self.q.astype(np.float64) * (255.0 / (FP_SCALE * self.d_max)) + 0.5)
        g = np.clip(g, 0, 255).astype(np.uint8)
        g[~self.valid_mask] = 0
        return g

    @classmethod
    def from_pixels(cls, px: np.ndarray, d_min: int, d_max: int) -> "DisparityMap":
        """Quantize float disparities; negative entries become invalid."""
        px = np.asarray(px, dtype=np.float64)
        q = np.floor(px * FP_SCALE + 0.5).astype(np.int32)
        q = np.clip(q, d_min * FP_SCALE, d_max * FP_SCALE)
        q[px < 0] = INVALID_Q
        return cls(q, d_min, d_max)

    @classmethod
    def full_invalid(cls, shape, d_min: int, d_max: int) -> "DisparityMap":
        return cls(np.full(shape, INVALID_Q, dtype=np.int32), d_min, d_max)

    def copy(self) -> "DisparityMap":
        return DisparityMap(self.q.copy(), self.d_min, self.d_max)


def quantize(px, lo_q: int, hi_q: int):
    """floor(px*16 + 0.5) clamped to the map's fixed-point range."""
    q = np.floor(np.asarray(px, dtype=np.float64) * FP_SCALE + 0.5).astype(np.int32)
    return np.clip(q, lo_q, hi_q)
