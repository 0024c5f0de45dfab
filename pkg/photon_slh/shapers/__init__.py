from .shaper import Shaper
from .fft_shaper import FftShaper
from .ode_shaper import OdeShaper


def shape_fft(pulse, transfer, config=None):
    return FftShaper(config=config).shape(pulse, transfer)


def shape_ode(pulse, transfer, config=None):
    return OdeShaper(config=config).shape(pulse, transfer)
