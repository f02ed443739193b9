from .generator import (RNG_ALGORITHM, Dataset, GenConfig, GenerationError, GroundTruth,
                        GroupConfig, demo_config, generate)
from .oracle import OracleProfile, compare_with_pipeline, oracle_recount
from .skew import SkewReport, skew_report, top_share

__all__ = [
    "RNG_ALGORITHM", "Dataset", "GenConfig", "GenerationError", "GroundTruth", "GroupConfig",
    "demo_config", "generate", "OracleProfile", "compare_with_pipeline", "oracle_recount",
    "SkewReport", "skew_report", "top_share",
]
