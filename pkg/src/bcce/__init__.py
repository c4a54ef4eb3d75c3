"""Secrecy-rate toolkit for the broadcast channel with confidential messages
and randomly located external eavesdroppers: a seeded Monte Carlo engine and
its closed-form large-system counterpart, cross-validated against each other.
"""

from .model import (
    ChannelRealization,
    ClosedFormUnavailable,
    CollusionMode,
    EavesdropperField,
    LargeSystemPoint,
    SinrReport,
    SystemConfig,
    load_config_file,
    serialize_config,
    validate_config,
)
from .precoder import PrecodeResult, build_rci
from .sampling import SeedPlan, StreamLabel, sample_channel, sample_eavesdropper_field

__version__ = "0.1.0"

__all__ = [
    "ChannelRealization",
    "ClosedFormUnavailable",
    "CollusionMode",
    "EavesdropperField",
    "LargeSystemPoint",
    "PrecodeResult",
    "SeedPlan",
    "SinrReport",
    "StreamLabel",
    "SystemConfig",
    "build_rci",
    "load_config_file",
    "sample_channel",
    "sample_eavesdropper_field",
    "serialize_config",
    "validate_config",
    "__version__",
]
