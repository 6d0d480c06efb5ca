"""Pinhole camera model, stereo rectification and triangulation.

Conventions: image u grows right, v grows down; camera z looks forward.
A 3D point X in left-camera coordinates maps to right-camera coordinates
as ``X_r = R @ X + t`` (the rig's relative pose).  Disparity is
``d = u_left - u_right`` on the rectified pair, so ``z = f * b / d``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRig, PointAtInfinity, ZeroDisparity
from .kvfile import read_kv, write_kv


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class CameraIntrinsics:
    fx: float
    fy: float
    cx: float
    cy: float
    skew: float = 0.0

    def __post_init__(self):
        if not (self.fx > 0 and self.fy > 0):
            raise ValueError("focal lengths must be positive")

    @property
    def matrix(self) -> np.ndarray:
        """Upper-triangular 3x3 intrinsic matrix."""
        return np.array(
            [
                [self.fx, self.skew, self.cx],
                [0.0, self.fy, self.cy],
                [0.0, 0.0, 1.0],
            ]
        )


@dataclass(frozen=True)
class CameraExtrinsics:
    R: np.ndarray  # 3x3 rotation
    t: np.ndarray  # 3-vector, meters

    def __post_init__(self):
        R = np.asarray(self.R, dtype=np.float64).reshape(3, 3)
        t = np.asarray(self.t, dtype=np.float64).reshape(3)
        if np.abs(R.T @ R - np.eye(3)).max() > 1e-9:
            raise ValueError("R is not orthonormal")
        if abs(np.linalg.det(R) - 1.0) > 1e-9:
            raise ValueError("R is not a proper rotation")
        object.__setattr__(self, "R", _freeze(R))
        object.__setattr__(self, "t", _freeze(t))


@dataclass(frozen=True)
class ProjectionMatrix:
    """3x4 projection; projected pixels are homogeneous-normalized."""

    P: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "P", _freeze(np.asarray(self.P, dtype=np.float64).reshape(3, 4))
        )

    @classmethod
    def from_krt(cls, k: CameraIntrinsics, pose: CameraExtrinsics) -> "ProjectionMatrix":
        rt = np.hstack([pose.R, pose.t.reshape(3, 1)])
        return cls(k.matrix @ rt)


@dataclass(frozen=True)
class StereoRig:
    left: CameraIntrinsics
    right: CameraIntrinsics
    relative_pose: CameraExtrinsics  # right camera w.r.t. left
    image_size: tuple  # (width, height)

    def __post_init__(self):
        w, h = self.image_size
        if not (w > 0 and h > 0):
            raise ValueError("image_size components must be positive")
        object.__setattr__(self, "image_size", (int(w), int(h)))
        if self.baseline <= 0:
            raise ValueError("baseline must be positive")

    @property
    def baseline(self) -> float:
        return float(np.linalg.norm(self.relative_pose.t))


@dataclass(frozen=True)
class RectificationMaps:
    """Per-destination-pixel source coordinates plus rectified camera params.

    map_left / map_right have shape (H, W, 2) holding (u_src, v_src) for
    bilinear sampling.  Destination pixels whose ray leaves the source
    image are marked by negative source coordinates and sample to 0.
    """

    map_left: np.ndarray
    map_right: np.ndarray
    f: float  # rectified focal, px
    baseline: float  # m
    cx: float
    cy: float
    image_size: tuple
    r_rect: np.ndarray  # left-frame -> rectified-frame rotation

    def __post_init__(self):
        object.__setattr__(self, "map_left", _freeze(self.map_left))
        object.__setattr__(self, "map_right", _freeze(self.map_right))
        object.__setattr__(self, "r_rect", _freeze(self.r_rect))

    def rectified_projections(self) -> tuple[ProjectionMatrix, ProjectionMatrix]:
        """Projection matrices of the rectified pair (left frame = world)."""
        kn = CameraIntrinsics(self.f, self.f, self.cx, self.cy)
        p1 = ProjectionMatrix(kn.matrix @ np.hstack([self.r_rect, np.zeros((3, 1))]))
        tr = np.array([[-self.baseline], [0.0], [0.0]])
        p2 = ProjectionMatrix(kn.matrix @ np.hstack([self.r_rect, tr]))
        return p1, p2


def project(p: ProjectionMatrix, point) -> tuple[float, float]:
    """Project a 3D point (meters) to a pixel via the 3x4 matrix.

    Raises PointAtInfinity when the homogeneous depth is below 1e-12.
    """
    x = np.asarray(point, dtype=np.float64).reshape(3)
    h = p.P @ np.array([x[0], x[1], x[2], 1.0])
    if abs(h[2]) < 1e-12:
        raise PointAtInfinity(f"point {tuple(x)} projects to infinity")
    return (h[0] / h[2], h[1] / h[2])


def compute_rectification(rig: StereoRig) -> RectificationMaps:
    """Bouguet-style rectification from known calibration.

    Both cameras are rotated to a common orientation whose x-axis runs
    along the baseline, sharing a focal length and principal point.
    Raises DegenerateRig for a near-zero or horizontal-free baseline.
    """
    r = rig.relative_pose.R
    t = rig.relative_pose.t
    baseline = rig.baseline
    if baseline < 1e-6:
        raise DegenerateRig("baseline shorter than 1e-6 m")

    center_r = -r.T @ t  # right camera center in the left frame
    e1 = center_r / np.linalg.norm(center_r)
    if abs(e1[0]) < 1e-6:
        raise DegenerateRig("baseline has no horizontal component")

    # common forward axis: average of the two optical axes, made orthogonal
    fwd = np.array([0.0, 0.0, 1.0]) + r.T @ np.array([0.0, 0.0, 1.0])
    fwd = fwd - (fwd @ e1) * e1
    n = np.linalg.norm(fwd)
    if n < 1e-9:
        raise DegenerateRig("cameras look along the baseline")
    e3 = fwd / n
    e2 = np.cross(e3, e1)
    r_rect = np.stack([e1, e2, e3])

    f = 0.25 * (rig.left.fx + rig.left.fy + rig.right.fx + rig.right.fy)
    cx = 0.5 * (rig.left.cx + rig.right.cx)
    cy = 0.5 * (rig.left.cy + rig.right.cy)

    w, h = rig.image_size
    us, vs = np.meshgrid(np.arange(w, dtype=np.float64), np.arange(h, dtype=np.float64))
    rays = np.stack([(us - cx) / f, (vs - cy) / f, np.ones_like(us)], axis=-1)

    maps = []
    for r_cam, k in ((r_rect, rig.left), (r_rect @ r.T, rig.right)):
        d = rays @ r_cam  # == (r_cam.T @ ray) per pixel
        z = d[..., 2]
        ok = z > 1e-9
        with np.errstate(divide="ignore", invalid="ignore"):
            xn = np.where(ok, d[..., 0] / z, 0.0)
            yn = np.where(ok, d[..., 1] / z, 0.0)
        u_src = k.fx * xn + k.skew * yn + k.cx
        v_src = k.fy * yn + k.cy
        m = np.stack([np.where(ok, u_src, -1e6), np.where(ok, v_src, -1e6)], axis=-1)
        maps.append(m)

    return RectificationMaps(
        map_left=maps[0],
        map_right=maps[1],
        f=float(f),
        baseline=float(baseline),
        cx=float(cx),
        cy=float(cy),
        image_size=rig.image_size,
        r_rect=r_rect,
    )


def apply_map(image: np.ndarray, warp: np.ndarray) -> np.ndarray:
    """Warp an image through a (H, W, 2) destination->source map.

    Bilinear sampling; destinations outside the source image become 0.
    uint8 inputs round half-up back to uint8, float inputs stay float.
    """
    h_src, w_src = image.shape[:2]
    x = warp[..., 0]
    y = warp[..., 1]
    inside = (x >= 0) & (x <= w_src - 1) & (y >= 0) & (y <= h_src - 1)
    xc = np.clip(x, 0, w_src - 1)
    yc = np.clip(y, 0, h_src - 1)
    x0 = np.floor(xc).astype(np.intp)
    y0 = np.floor(yc).astype(np.intp)
    x1 = np.minimum(x0 + 1, w_src - 1)
    y1 = np.minimum(y0 + 1, h_src - 1)
    ax = xc - x0
    ay = yc - y0
    img = image.astype(np.float64)
    top = img[y0, x0] * (1.0 - ax) + img[y0, x1] * ax
    bot = img[y1, x0] * (1.0 - ax) + img[y1, x1] * ax
    out = top * (1.0 - ay) + bot * ay
    out[~inside] = 0.0
    if image.dtype == np.uint8:
        return np.floor(out + 0.5).astype(np.uint8)
    return out


def triangulate(pixel, disparity: float, maps: RectificationMaps):
    """Re-project a rectified pixel with disparity d into 3D (meters).

    z = f*b/d, x = (u-cx)*z/f, y = (v-cy)*z/f in the left rectified frame.
    Raises ZeroDisparity for d <= 1e-6.
    """
    if disparity <= 1e-6:
        raise ZeroDisparity(f"disparity {disparity} too small to triangulate")
    u, v = pixel
    z = maps.f * maps.baseline / disparity
    x = (u - maps.cx) * z / maps.f
    y = (v - maps.cy) * z / maps.f
    return np.array([x, y, z])


def rectified_rig(f: float, baseline: float, cx: float, cy: float, image_size) -> StereoRig:
    """An already-rectified rig (identity rotation, horizontal baseline)."""
    k = CameraIntrinsics(f, f, cx, cy)
    pose = CameraExtrinsics(np.eye(3), np.array([-baseline, 0.0, 0.0]))
    return StereoRig(left=k, right=k, relative_pose=pose, image_size=tuple(image_size))


_CAL_SIDES = ("left", "right")
_CAL_FIELDS = ("fx", "fy", "cx", "cy")


def load_calibration(path) -> StereoRig:
    """Read a key=value calibration file into a StereoRig."""
    kv = read_kv(path)

    def need(key: str) -> float:
        if key not in kv:
            raise KeyError(f"calibration file missing key {key!r}")
        return float(kv[key])

    cams = {}
    for side in _CAL_SIDES:
        vals = {f: need(f"{side}.{f}") for f in _CAL_FIELDS}
        vals["skew"] = float(kv.get(f"{side}.skew", "0"))
        cams[side] = CameraIntrinsics(**vals)
    rot = np.array([[need(f"pose.r{i}{j}") for j in range(3)] for i in range(3)])
    t = np.array([need("pose.tx"), need("pose.ty"), need("pose.tz")])
    size = (int(need("width")), int(need("height")))
    return StereoRig(cams["left"], cams["right"], CameraExtrinsics(rot, t), size)


def save_calibration(rig: StereoRig, path) -> None:
    kv: dict[str, object] = {}
    for side in _CAL_SIDES:
        k: CameraIntrinsics = getattr(rig, side)
        for f in _CAL_FIELDS:
            kv[f"{side}.{f}"] = repr(getattr(k, f))
        if k.skew:
            kv[f"{side}.skew"] = repr(k.skew)
    for i in range(3):
        for j in range(3):
            kv[f"pose.r{i}{j}"] = repr(rig.relative_pose.R[i, j])
    for name, val in zip("xyz", rig.relative_pose.t):
        kv[f"pose.t{name}"] = repr(float(val))
    kv["width"], kv["height"] = rig.image_size
    write_kv(path, kv)


def suggested_disparity_range(image_size) -> tuple[int, int]:
    """Default disparity range by resolution: [0,127] at VGA, [0,95] below."""
    w = image_size[0]
    return (0, 127) if w >= 640 else (0, 95)
