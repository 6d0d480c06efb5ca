"""Exception types shared across the toolkit."""


class StereoError(Exception):
    """Base class for all toolkit errors."""


class PointAtInfinity(StereoError):
    """Projection of a point whose homogeneous depth is (numerically) zero."""


class DegenerateRig(StereoError):
    """Stereo rig that cannot be rectified to horizontal scanlines."""


class ZeroDisparity(StereoError):
    """Triangulation requested for a (near) zero disparity."""


class ImageTooSmall(StereoError):
    """Input image smaller than the operator's footprint."""


class NoSupports(StereoError):
    """Dense disparity inference called with an empty support set."""


class MultipleComponents(StereoError):
    """Blob mask that is not a single connected component."""


class NonPositiveDepth(StereoError):
    """Gaze target with non-positive or non-finite depth."""


class EmptyFrustum(StereoError):
    """Scene frame in which nothing is visible to the cameras."""


class LengthMismatch(StereoError):
    """Frame-aligned series of different lengths."""


class EmptyInput(StereoError):
    """Metric requested over an empty record list."""


class SizeMismatch(StereoError):
    """Images or maps of different dimensions."""


class FileFormatError(StereoError):
    """Base class for image / data file format errors."""


class MalformedHeader(FileFormatError):
    """File header that does not parse."""


class TruncatedData(FileFormatError):
    """File shorter than its header promises."""


class UnsupportedFormat(FileFormatError):
    """Recognized but unsupported file variant."""


class ConfigError(StereoError):
    """Invalid configuration key or value."""
