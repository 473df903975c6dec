"""Two-stage image augmentation.

Every augmented image is an elastic warp followed by a randomly chosen
morphological step: with u, v ~ U[0, 1], both operations fire when
u < P_d and v < P_e (closing when a < 0.5, opening otherwise), dilation
alone when only u < P_d, erosion alone when only v < P_e, and nothing
otherwise. Structuring elements are drawn fresh for every image.
"""

import logging
from enum import Enum
from typing import Tuple

from pydantic import BaseModel, Field, model_validator

from tabimage.augmentation.elastic import elastic_distort
from tabimage.augmentation.morphology import dilate, erode, make_structuring_element
from tabimage.augmentation.rng import RngStream, Stage
from tabimage.common.constants import AugmentConstants, PipelineConstants
from tabimage.encoding.raster import ImageCanvas

logger = logging.getLogger(__name__)


class MorphologyBranch(str, Enum):
    CLOSING = "closing"
    OPENING = "opening"
    DILATE = "dilate"
    ERODE = "erode"
    NONE = "none"


class AugmentConfig(BaseModel):
    """Augmentation parameters, fixed for a whole run."""
    alpha: float = Field(
        default=AugmentConstants.ALPHA, ge=0.0, description="Displacement intensity (px)"
    )
    sigma: float = Field(
        default=AugmentConstants.SIGMA, gt=0.0, description="Smoothing std-dev (px)"
    )
    p_dilate: float = Field(default=AugmentConstants.P_DILATE, ge=0.0, le=1.0)
    p_erode: float = Field(default=AugmentConstants.P_ERODE, ge=0.0, le=1.0)
    se_dilate_max: Tuple[int, int] = Field(default=AugmentConstants.SE_MAX, description="(h, w)")
    se_erode_max: Tuple[int, int] = Field(default=AugmentConstants.SE_MAX, description="(h, w)")
    k: int = Field(default=AugmentConstants.SCALE_K, ge=0, description="Augmented copies per image")
    seed: int = Field(default=PipelineConstants.SEED, ge=0, description="Root augmentation seed")

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def _check_structuring_elements(self) -> "AugmentConfig":
        for name in ("se_dilate_max", "se_erode_max"):
            dims = getattr(self, name)
            if min(dims) < 1:
                raise ValueError(f"{name} dimensions must be >= 1, got {dims}")
        return self

    @classmethod
    def identity(cls, k: int = 0, seed: int = PipelineConstants.SEED) -> "AugmentConfig":
        """Configuration under which augment_image is an exact no-op."""
        return cls(alpha=0.0, p_dilate=0.0, p_erode=0.0, k=k, seed=seed)

    @property
    def is_identity(self) -> bool:
        return self.alpha == 0 and self.p_dilate == 0 and self.p_erode == 0


def select_branch(
    u: float, v: float, a: float, p_dilate: float, p_erode: float
) -> MorphologyBranch:
    """Morphology branch for the draws (u, v, a)."""
    if u < p_dilate and v < p_erode:
        return MorphologyBranch.CLOSING if a < 0.5 else MorphologyBranch.OPENING
    if u < p_dilate:
        return MorphologyBranch.DILATE
    if v < p_erode:
        return MorphologyBranch.ERODE
    return MorphologyBranch.NONE


def augment_image(img: ImageCanvas, cfg: AugmentConfig, rng: RngStream) -> ImageCanvas:
    """Elastic distortion then the selected morphology branch.

    A pure function of (img, cfg, rng): every draw comes from a stage stream
    derived from `rng`.
    """
    out = elastic_distort(img, cfg.alpha, cfg.sigma, rng)

    u, v, a = rng.generator(Stage.BRANCH).random(3)
    branch = select_branch(u, v, a, cfg.p_dilate, cfg.p_erode)
    se_d = make_structuring_element(cfg.se_dilate_max, rng, Stage.SE_DILATE)
    se_e = make_structuring_element(cfg.se_erode_max, rng, Stage.SE_ERODE)
    logger.debug(f"augment {rng.path}: branch={branch.value} se_d={se_d.shape} se_e={se_e.shape}")

    if branch == MorphologyBranch.CLOSING:
        return erode(dilate(out, se_d), se_e)
    if branch == MorphologyBranch.OPENING:
        return dilate(erode(out, se_e), se_d)
    if branch == MorphologyBranch.DILATE:
        return dilate(out, se_d)
    if branch == MorphologyBranch.ERODE:
        return erode(out, se_e)
    return out
