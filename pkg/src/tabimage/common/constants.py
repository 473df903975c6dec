"""Centralized constants for tabimage defaults."""


# ===== FORMAT VERSIONS =====
class FormatVersions:
    SCHEMA_VERSION = 1
    MANIFEST_VERSION = 1
    REPORT_VERSION = 1


# ===== IMAGE GEOMETRY =====
class EncodingConstants:
    WIDTH = 224
    HEIGHT = 224
    ROWS = 1
    PALETTE_SEED = 0
    BACKGROUND = (255, 255, 255)

    # Fixed PNG encoder settings, kept constant for byte-stable output
    PNG_BITDEPTH = 8
    PNG_COMPRESSION = 9


# ===== AUGMENTATION =====
class AugmentConstants:
    ALPHA = 50.0
    SIGMA = 4.0
    P_DILATE = 0.7
    P_ERODE = 0.7
    SE_MAX = (2, 5)  # (height, width)
    SCALE_K = 4

    # Gaussian kernel radius in units of sigma
    KERNEL_TRUNCATE_SIGMAS = 3.0

    # Tables this large are not augmented unless the gate is lifted
    AUGMENT_MAX_ROWS = 1000


# ===== DECODER =====
class DecoderConstants:
    FOREGROUND_THRESHOLD = 8  # per channel, out of 255
    ROW_AGREEMENT_PX = 0.5
    RUN_START_TOLERANCE_PX = 4  # how far past the cell edge a bar may begin
    CALIBRATION_MIN_RUN_PX = 2.0
    SATURATION_PX = 0.5
    ROUNDTRIP_GATE_MEAN = 0.05
    ROUNDTRIP_GATE_MAX = 0.15


# ===== PIPELINE =====
class PipelineConstants:
    FOLDS = 5
    SEED = 42
    MANIFEST_FILENAME = "manifest.jsonl"
    HASH_ALGORITHM = "sha256"


# ===== PROBE =====
class ProbeConstants:
    LEARNING_RATE = 0.5
    EPOCHS = 200
    BATCH_SIZE = 32
    L2 = 1e-4
    DOWNSAMPLE_SIDE = 28
