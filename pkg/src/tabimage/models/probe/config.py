"""Linear probe configuration."""

from pydantic import BaseModel, Field

from tabimage.common.constants import PipelineConstants, ProbeConstants
from tabimage.core.types import Representation


class ProbeConfig(BaseModel):
    representation: Representation = Field(
        default=Representation.DECODED_FEATURES,
        description="decoded_features | pixels_downsampled",
    )
    downsample_side: int = Field(
        default=ProbeConstants.DOWNSAMPLE_SIDE, ge=1, description="Side of the box-averaged grid"
    )
    learning_rate: float = Field(default=ProbeConstants.LEARNING_RATE, gt=0.0)
    epochs: int = Field(default=ProbeConstants.EPOCHS, ge=1)
    batch_size: int = Field(default=ProbeConstants.BATCH_SIZE, ge=1)
    l2: float = Field(default=ProbeConstants.L2, ge=0.0)
    seed: int = Field(default=PipelineConstants.SEED, ge=0)
    include_augmented: bool = Field(
        default=True, description="Train on augmented training images as well as originals"
    )

    model_config = {"frozen": True}
