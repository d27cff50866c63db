"""uvmark: segmentation-mask annotation from interleaved regular/UV-light streams."""

from .core import (
    ClassPalette,
    Frame,
    FramePair,
    Homography,
    Image,
    LabelMask,
    LightKind,
    PaletteClass,
    absdiff,
    resize_bilinear,
)
from .controller import ControllerConfig, ControllerMode, ControlSignals, expected_light, schedule
from .ingest import StreamManifest, load_stream, pair_stream
from .metrics import agreement_stats, iou, reference_agreement
from .registration import (
    FeatureConfig,
    RansacConfig,
    align_pair,
    estimate_homography_ransac,
    solve_homography_dlt,
    warp,
)
from .segmentation import (
    ambient_mode_mask,
    annotate_pairs,
    classify_pixel,
    dark_mode_mask,
    postprocess,
)
from .synth import BlobSpec, CameraMotionSpec, SceneSpec, generate_stream, write_stream

__version__ = "0.1.0"
