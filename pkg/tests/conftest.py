import pytest

from bcce.model import validate_config


def make_cfg(**kwargs):
    """Validated config with shorthand keys and sensible defaults."""
    record = {"n": 10, "beta": 1.0, "snr_db": 10.0, "xi": 0.0273, "lambda_e": 0.0, "seed": 0}
    record.update(kwargs)
    return validate_config(record)


@pytest.fixture
def cfg_paper():
    """The recurring scenario: beta=1, SNR 10 dB, xi = 0.0273, lambda_e = 0.1."""
    return make_cfg(lambda_e=0.1)
