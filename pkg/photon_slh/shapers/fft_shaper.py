import logging

import numpy as np

from .shaper import Shaper
from .. import GridTooShort
from ..entities.pulse_entities import Pulse
from ..transfer import response_values

logger = logging.getLogger(__name__)


class FftShaper(Shaper):
    """Shape a pulse in the frequency domain: xi'(omega) = G(i omega) xi(omega).

    The delta(t) part of the kernel is applied exactly as the feedthrough matrix times the samples; only the
    smooth remainder G - S goes through the FFT. The samples are zero padded to twice the grid length so the
    product is a linear convolution, and output past the end of the grid is dropped. The kernel itself still
    has to die out within one grid span.
    """

    name = 'fft'

    def shape(self, pulse, transfer):
        self.check_channels(pulse, transfer)
        grid = pulse.grid
        tail = transfer.tail_fraction(grid.span)
        if tail > self.config.tail_threshold:
            raise GridTooShort(f"The filter kernel keeps a fraction {tail:.3e} of its energy beyond the "
                               f"{grid.span:.6g} time window",
                               suggested_span=transfer.suggested_span(self.config.tail_threshold))

        n_samples = grid.n_samples
        n_fft = 2 * n_samples
        omegas = 2 * np.pi * np.fft.fftfreq(n_fft, grid.dt)
        feedthrough = transfer.feedthrough
        smooth = response_values(transfer, omegas) - feedthrough[None, :, :]

        samples = pulse.samples
        spectrum = np.fft.fft(samples, n=n_fft, axis=0)
        shaped = np.fft.ifft(np.einsum('nij,nj->ni', smooth, spectrum), axis=0)[:n_samples]
        output = samples @ feedthrough.T + shaped
        logger.debug("fft shaping on %d samples (padded to %d): kernel tail %.3e", n_samples, n_fft, tail)
        return Pulse.from_samples(grid, output)


Shaper.register(FftShaper)
