import math

import numpy as np
import pytest
import torch
from omegaconf import OmegaConf

from utils.common import (
    NeumaierAccumulator,
    compensated_horner,
    compensated_sum,
    complex_dtype,
    format_half,
    format_significant,
    richardson_derivative,
    set_float_precision,
)
from utils.logger import Logger


def test_float_precision():
    assert set_float_precision(64) == torch.float64
    assert set_float_precision(torch.float32) == torch.float32
    assert complex_dtype(torch.float64) == torch.complex128
    assert complex_dtype(torch.float32) == torch.complex64
    with pytest.raises(ValueError, match="Precision"):
        set_float_precision(8)


@pytest.mark.parametrize("doubled,text", [(0, "0"), (4, "2"), (3, "3/2"), (-1, "-1/2")])
def test_format_half(doubled, text):
    assert format_half(doubled) == text


def test_format_significant():
    assert format_significant(1.0) == "1"
    assert format_significant(0.1 + 0.2) == "0.3"
    assert format_significant(1 - 2j) == "1-2j"


def test_compensated_summation():
    values = [1e16, 1.0, -1e16] * 1000
    assert compensated_sum(values) == 1000.0
    accumulator = NeumaierAccumulator((2,))
    for value in values:
        accumulator.add(np.array([value, 1j * value]))
    np.testing.assert_array_equal(accumulator.result(), [1000.0, 1000.0j])


def test_compensated_horner():
    # (t - 1)^7 expanded cancels catastrophically near t = 1
    coefficients = [(-1) ** (7 - k) * math.comb(7, k) for k in range(8)]
    t = np.array([1.01, 0.99, 1.05])
    np.testing.assert_allclose(compensated_horner(coefficients, t), (t - 1) ** 7, rtol=1e-8)


def test_richardson_derivative():
    x = np.linspace(-1.0, 1.0, 5)
    first, error = richardson_derivative(np.sin, x)
    np.testing.assert_allclose(first, np.cos(x), atol=1e-10)
    assert np.all(error < 1e-9)
    second, _ = richardson_derivative(np.sin, x, order=2)
    np.testing.assert_allclose(second, -np.sin(x), atol=1e-7)
    with pytest.raises(NotImplementedError):
        richardson_derivative(np.sin, x, order=3)


def test_logger_offline(logdir, offline):
    logger = Logger(OmegaConf.create({"seed": 1}), offline, logdir, progress=False)
    assert logger.data_dir.is_dir()
    assert logger.run is None
    logger.log_metric("passed", 1)
    logger.start_timer("suite")
    assert logger.stop_timer("suite") >= 0.0
    assert logger.stop_timer("suite") is None
    logger.end()


def test_logger_refuses_non_empty_directory(logdir, offline):
    Logger(OmegaConf.create({}), offline, logdir)
    logdir.overwrite = False
    with pytest.raises(FileExistsError, match="not empty"):
        Logger(OmegaConf.create({}), offline, logdir)


def test_logger_without_timers(logdir):
    do = OmegaConf.create({"online": False, "times": False})
    logger = Logger(OmegaConf.create({}), do, logdir)
    logger.start_timer("suite")
    assert logger.stop_timer("suite") is None
