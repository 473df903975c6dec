"""Image augmentation: elastic distortion and randomized morphology."""

from tabimage.augmentation.augmenter import (
    AugmentConfig,
    MorphologyBranch,
    augment_image,
    select_branch,
)
from tabimage.augmentation.elastic import (
    DisplacementField,
    elastic_distort,
    make_displacement_field,
    warp,
)
from tabimage.augmentation.morphology import dilate, erode, make_structuring_element
from tabimage.augmentation.rng import RngStream, Stage

__all__ = [
    "AugmentConfig",
    "DisplacementField",
    "MorphologyBranch",
    "RngStream",
    "Stage",
    "augment_image",
    "dilate",
    "elastic_distort",
    "erode",
    "make_displacement_field",
    "make_structuring_element",
    "select_branch",
    "warp",
]
