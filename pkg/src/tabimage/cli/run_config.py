"""Run configuration: YAML file values overridden by command-line flags.

File keys are the long flag names with dashes or underscores, e.g.

    input: data/hrt.csv
    schema: config/schema.example.yaml
    rows: 1
    k: 4
    p-dilate: 0.7
    se-max: [2, 5]
"""

from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import yaml
from pydantic import BaseModel, Field, ValidationError as PydanticValidationError

from tabimage.augmentation.augmenter import AugmentConfig
from tabimage.common.constants import (
    AugmentConstants,
    EncodingConstants,
    PipelineConstants,
    ProbeConstants,
)
from tabimage.common.exceptions import ConfigurationError, DatasetIOError
from tabimage.core.types import NormalizationScope, Representation
from tabimage.models.probe.config import ProbeConfig


class RunConfig(BaseModel):
    input: Optional[Path] = None
    schema_path: Optional[Path] = Field(default=None, alias="schema")
    out: Optional[Path] = None
    dataset: Optional[Path] = None

    width: int = Field(default=EncodingConstants.WIDTH, ge=1)
    height: int = Field(default=EncodingConstants.HEIGHT, ge=1)
    rows: int = Field(default=EncodingConstants.ROWS, ge=1)
    palette_seed: int = Field(default=EncodingConstants.PALETTE_SEED, ge=0)

    k: int = Field(default=AugmentConstants.SCALE_K, ge=0)
    alpha: float = Field(default=AugmentConstants.ALPHA, ge=0.0)
    sigma: float = Field(default=AugmentConstants.SIGMA, gt=0.0)
    p_dilate: float = Field(default=AugmentConstants.P_DILATE, ge=0.0, le=1.0)
    p_erode: float = Field(default=AugmentConstants.P_ERODE, ge=0.0, le=1.0)
    se_max: Tuple[int, int] = AugmentConstants.SE_MAX
    augment_max_rows: Optional[int] = Field(default=AugmentConstants.AUGMENT_MAX_ROWS, ge=1)

    seed: int = Field(default=PipelineConstants.SEED, ge=0)
    folds: int = Field(default=PipelineConstants.FOLDS, ge=2)
    stratified: bool = True
    paper_normalization: bool = False
    workers: int = Field(default=1, ge=1)

    representation: Representation = Representation.DECODED_FEATURES
    epochs: int = Field(default=ProbeConstants.EPOCHS, ge=1)
    learning_rate: float = Field(default=ProbeConstants.LEARNING_RATE, gt=0.0)

    model_config = {"populate_by_name": True, "frozen": True}

    @property
    def scope(self) -> NormalizationScope:
        """--paper-normalization fits min/max on the whole table."""
        if self.paper_normalization:
            return NormalizationScope.WHOLE_DATASET
        return NormalizationScope.TRAIN_ONLY

    def augment_config(self) -> AugmentConfig:
        return AugmentConfig(
            alpha=self.alpha,
            sigma=self.sigma,
            p_dilate=self.p_dilate,
            p_erode=self.p_erode,
            se_dilate_max=self.se_max,
            se_erode_max=self.se_max,
            k=self.k,
            seed=self.seed,
        )

    def probe_config(self) -> ProbeConfig:
        return ProbeConfig(
            representation=self.representation,
            epochs=self.epochs,
            learning_rate=self.learning_rate,
            seed=self.seed,
        )

    def require(self, *names: str) -> None:
        """Raise ConfigurationError unless every named path option is set."""
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            flags = ", ".join("--" + n.replace("_path", "").replace("_", "-") for n in missing)
            raise ConfigurationError(f"missing required option(s): {flags}")


def load_run_config(
    path: Optional[Union[str, Path]] = None, overrides: Optional[Dict[str, Any]] = None
) -> RunConfig:
    """File values (if any) with non-None overrides applied on top.

    Raises:
        DatasetIOError: the config file does not exist.
        ConfigurationError: invalid YAML, unknown keys or out-of-range values.
    """
    values: Dict[str, Any] = {}
    if path is not None:
        path = Path(path)
        if not path.exists():
            raise DatasetIOError(f"config file not found: {path}", path=path, missing_input=True)
        try:
            loaded = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        except yaml.YAMLError as e:
            raise ConfigurationError(f"config file is not valid YAML: {path}") from e
        if not isinstance(loaded, dict):
            raise ConfigurationError(f"config file must hold a mapping: {path}")
        values = {str(key).replace("-", "_"): value for key, value in loaded.items()}

    values.update({key: value for key, value in (overrides or {}).items() if value is not None})
    if "schema_path" in values:
        values["schema"] = values.pop("schema_path")

    known = set(RunConfig.model_fields) | {"schema"}
    unknown = sorted(set(values) - known)
    if unknown:
        raise ConfigurationError(f"unknown configuration key(s): {', '.join(unknown)}")
    try:
        return RunConfig.model_validate(values)
    except PydanticValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"])
        raise ConfigurationError(f"invalid value for {field}: {first['msg']}") from e
