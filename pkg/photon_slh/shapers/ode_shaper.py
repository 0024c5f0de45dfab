import logging

import numpy as np

from .shaper import Shaper
from .. import StepSizeUnstable
from ..entities.pulse_entities import Pulse

logger = logging.getLogger(__name__)


class OdeShaper(Shaper):
    """Shape a pulse in the time domain, one stage after the other.

    Each stage drives an internal amplitude zeta' = a zeta + theta^dag S xi_in from zeta(t_start) = 0 and emits
    xi_out = S xi_in + h theta zeta. For the two-level atom zeta is, up to sign, the amplitude of the excited
    state. Integration is classical fourth-order Runge-Kutta with the input linearly interpolated between samples.
    """

    name = 'ode'

    def shape(self, pulse, transfer):
        output, _ = self.run(pulse, transfer)
        return output

    def amplitudes(self, pulse, transfer):
        """The internal amplitude zeta(t_n) of every stage, in stage order."""
        _, amplitudes = self.run(pulse, transfer)
        return amplitudes

    def run(self, pulse, transfer):
        self.check_channels(pulse, transfer)
        grid = pulse.grid
        samples = np.array(pulse.samples)
        amplitudes = []
        for index, stage in enumerate(transfer.stages):
            step = abs(stage.a) * grid.dt
            if step > self.config.max_step:
                raise StepSizeUnstable(f"Stage {index + 1} has |a| dt = {step:.3g} > {self.config.max_step}; "
                                       f"use a step below {self.config.max_step / abs(stage.a):.6g}")
            drive = samples @ (stage.theta.conj() @ stage.S)
            zeta = rk4_exponential(stage.a, drive, grid.dt)
            samples = samples @ stage.S.T + stage.h * np.outer(zeta, stage.theta)
            amplitudes.append(zeta)
            logger.debug("ode stage %d integrated over %d samples", index + 1, grid.n_samples)
        return Pulse.from_samples(grid, samples), amplitudes


def rk4_exponential(a, drive, dt):
    """Integrate z' = a z + d(t), z(0) = 0, with d linear between the samples `drive`."""
    n = len(drive)
    z = np.zeros(n, dtype=complex)
    half = 0.5 * dt
    for i in range(n - 1):
        d0 = drive[i]
        d1 = drive[i + 1]
        dm = 0.5 * (d0 + d1)
        zi = z[i]
        k1 = a * zi + d0
        k2 = a * (zi + half * k1) + dm
        k3 = a * (zi + half * k2) + dm
        k4 = a * (zi + dt * k3) + d1
        z[i + 1] = zi + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return z


Shaper.register(OdeShaper)
