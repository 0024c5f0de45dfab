"""File formats.

Models are JSON documents with complex numbers written as [re, im] pairs and matrices row-major:

    {"levels": 2, "channels": 1,
     "S": [[[1, 0]]], "theta": [[1, 0]],
     "L0": [[[0, 0], [1, 0]], [[0, 0], [0, 0]]],
     "H0": [[[-0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]}

A model whose coupling does not factor as theta^T L0 carries "L" (a list of K matrices) instead of
"theta" and "L0".

Pulses, spectra and sweeps are CSV files with one row per sample and channel (channels numbered from 1),
every number in 17-significant-digit scientific notation.
"""
import csv
import json
import logging

import numpy as np

from . import ModelFormatError, PhotonSlhException
from .entities.model_entities import SLHModel
from .entities.pulse_entities import Pulse, TimeGrid

logger = logging.getLogger(__name__)

PULSE_HEADER = ['t', 'ch', 're', 'im']
SPECTRUM_HEADER = ['omega', 'ch', 're', 'im']
SWEEP_HEADER = ['omega', 'i', 'j', 're', 'im', 'abs2']


def fmt_float(value):
    return f"{value:.16e}"


def _complex_pair(value):
    value = complex(value)
    return [value.real, value.imag]


def _matrix_to_json(matrix):
    return [[_complex_pair(x) for x in row] for row in np.asarray(matrix)]


def model_to_dict(model):
    document = {
        'levels': model.levels,
        'channels': model.channels,
        'S': _matrix_to_json(model.S),
    }
    if model.is_factorized:
        document['theta'] = [_complex_pair(c) for c in model.theta]
        document['L0'] = _matrix_to_json(model.L0.entries)
    else:
        document['L'] = [_matrix_to_json(c.entries) for c in model.couplings]
    document['H0'] = _matrix_to_json(model.H0.entries)
    return document


def dumps_model(model):
    return json.dumps(model_to_dict(model), indent=2)


def write_model(model, path):
    with open(path, 'w') as f:
        f.write(dumps_model(model) + "\n")
    logger.debug("wrote model to %s", path)


def read_model(path):
    """Load a model file.

    Raises:
        OSError: When the file cannot be read.
        ModelFormatError: When the file is not valid JSON or does not describe a model.
    """
    with open(path) as f:
        text = f.read()
    return loads_model(text)


def loads_model(text):
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelFormatError(f"Model file is not valid JSON: {e.msg}", e.lineno, e.colno)
    if not isinstance(document, dict):
        raise ModelFormatError("A model file must hold a JSON object")
    return model_from_dict(document)


def model_from_dict(document):
    for key in ('levels', 'channels', 'S', 'H0'):
        if key not in document:
            raise ModelFormatError(f"Model is missing the \"{key}\" field")
    levels = _positive_int(document, 'levels')
    channels = _positive_int(document, 'channels')

    S = _complex_array(document['S'], 'S', (channels, channels))
    H0 = _complex_array(document['H0'], 'H0', (levels, levels))
    if 'L' in document:
        if not isinstance(document['L'], list) or len(document['L']) != channels:
            raise ModelFormatError(f"\"L\" must list {channels} coupling matrices")
        couplings = [_complex_array(c, f'L[{k + 1}]', (levels, levels)) for k, c in enumerate(document['L'])]
        return SLHModel(S=S, H0=H0, couplings=couplings)
    for key in ('theta', 'L0'):
        if key not in document:
            raise ModelFormatError(f"Model needs either \"L\" or both \"theta\" and \"L0\"; \"{key}\" is missing")
    theta = _complex_array(document['theta'], 'theta', (channels,))
    L0 = _complex_array(document['L0'], 'L0', (levels, levels))
    return SLHModel(S=S, theta=theta, L0=L0, H0=H0)


def _positive_int(document, key):
    value = document[key]
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ModelFormatError(f"\"{key}\" must be a positive integer, got {value!r}")
    return value


def _complex_array(value, name, shape):
    try:
        pairs = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        raise ModelFormatError(f"\"{name}\" must be made of [re, im] number pairs")
    if pairs.shape != shape + (2,):
        raise ModelFormatError(f"\"{name}\" has shape {pairs.shape[:-1]}, expected {shape} of [re, im] pairs")
    return pairs[..., 0] + 1j * pairs[..., 1]


def write_pulse(pulse, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(PULSE_HEADER)
    for t, row in zip(pulse.grid.times, pulse.samples):
        for channel, value in enumerate(row, start=1):
            writer.writerow([fmt_float(t), channel, fmt_float(value.real), fmt_float(value.imag)])


def write_spectrum(spectrum, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(SPECTRUM_HEADER)
    for omega, row in zip(spectrum.omegas, spectrum.values):
        for channel, value in enumerate(row, start=1):
            writer.writerow([fmt_float(omega), channel, fmt_float(value.real), fmt_float(value.imag)])


def write_sweep(response, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for omega, matrix in zip(response.omegas, response.values):
        for i, row in enumerate(matrix, start=1):
            for j, value in enumerate(row, start=1):
                writer.writerow([fmt_float(omega), i, j, fmt_float(value.real), fmt_float(value.imag),
                                 fmt_float(abs(value) ** 2)])


def read_pulse(stream):
    """Read a pulse CSV written by `write_pulse`; the time column must form a uniform power-of-two grid.

    Raises:
        ModelFormatError: On a bad header, a malformed row or an irregular grid.
    """
    reader = csv.reader(stream)
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != PULSE_HEADER:
        raise ModelFormatError(f"Pulse file must start with the header {','.join(PULSE_HEADER)}", 1, 1)

    values = {}
    for line, row in enumerate(reader, start=2):
        if not row:
            continue
        try:
            t, channel, re, im = float(row[0]), int(row[1]), float(row[2]), float(row[3])
        except (IndexError, ValueError):
            raise ModelFormatError(f"Malformed pulse row {row!r}", line, 1)
        if channel < 1:
            raise ModelFormatError(f"Channel numbers start at 1, got {channel}", line, 2)
        values[(t, channel)] = complex(re, im)
    if not values:
        raise ModelFormatError("Pulse file has no samples")

    times = np.array(sorted({t for t, _ in values}))
    channels = max(channel for _, channel in values)
    samples = np.zeros((len(times), channels), dtype=complex)
    index = {t: n for n, t in enumerate(times)}
    for (t, channel), value in values.items():
        samples[index[t], channel - 1] = value

    dt = (times[-1] - times[0]) / (len(times) - 1) if len(times) > 1 else 1.0
    if len(times) > 1 and not np.allclose(np.diff(times), dt, rtol=1e-9, atol=0):
        raise ModelFormatError("Pulse times are not uniformly spaced")
    try:
        grid = TimeGrid(times[0], dt, len(times))
    except PhotonSlhException as e:
        raise ModelFormatError(f"Pulse times do not form a usable grid: {e}")
    return Pulse.from_samples(grid, samples)
