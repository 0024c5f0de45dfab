import logging

import numpy as np

from . import DimensionMismatch, MultiStageFilter, ValidationFailed
from .entities.transfer_entities import PhotonTransfer, TransferStage, FrequencyResponse
from .network import validate_theorem3

logger = logging.getLogger(__name__)


def from_model(model, tol=None, config=None):
    """Build the single-stage filter of a model that passes the linearity conditions.

    Raises:
        ValidationFailed: carrying the ValidationReport when any condition fails.
    """
    report = validate_theorem3(model, tol=tol, config=config)
    if not report.passed:
        raise ValidationFailed(report)
    params = report.params
    return PhotonTransfer([TransferStage(model.S, model.theta, params.h, params.a)])


def frequency_response(transfer, omegas):
    """Evaluate G(i omega) on a uniform grid as the ordered product of the stage responses, last stage leftmost."""
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    return FrequencyResponse(omegas, response_values(transfer, omegas))


def response_values(transfer, omegas):
    """G(i omega) at arbitrary frequencies, shape (len(omegas), K, K)."""
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    values = np.broadcast_to(np.eye(transfer.channels, dtype=complex), (omegas.size, transfer.channels,
                                                                        transfer.channels))
    for stage in transfer.stages:
        values = np.matmul(stage.response(omegas), values)
    return values


def cascade(first, second):
    """Send the output of `first` through `second`."""
    if first.channels != second.channels:
        raise DimensionMismatch(f"Cannot cascade a {first.channels}-channel filter into a "
                                f"{second.channels}-channel filter")
    return PhotonTransfer(first.stages + second.stages)


def impulse_response(transfer, ts):
    """Sample the smooth part of a single-stage kernel and return it with the delta(t) coefficient S.

    Returns:
        (np.ndarray, np.ndarray): the kernel h theta theta^dag S e^{at} at `ts` (zero for t < 0), shape
            (len(ts), K, K), and the K x K feedthrough S.

    Raises:
        MultiStageFilter: for cascades, whose kernels are obtained in the frequency domain instead.
    """
    if transfer.n_stages != 1:
        raise MultiStageFilter(f"The impulse response is sampled for single-stage filters only; this filter has "
                               f"{transfer.n_stages} stages, shape pulses through it in the frequency domain")
    stage = transfer.stages[0]
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    causal = ts >= 0
    envelope = np.zeros(ts.shape, dtype=complex)
    envelope[causal] = np.exp(stage.a * ts[causal])
    return stage.coefficient[None, :, :] * envelope[:, None, None], np.array(stage.S)
