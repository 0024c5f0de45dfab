from .. import DimensionMismatch, PhotonSlhException
from ..config import SolverConfig


class Shaper:
    """Registry of pulse-shaping back ends, looked up by name:

        Shaper.factory('fft').shape(pulse, transfer)
    """

    _shapers = {}

    @classmethod
    def register(cls, shaper_class):
        cls._shapers[shaper_class.name] = shaper_class

    @classmethod
    def factory(cls, shaper_name, **args):
        for name, shaper in cls._shapers.items():
            if name == shaper_name:
                return shaper(**args)
        raise PhotonSlhException(f"Unknown shaping method: {shaper_name}")

    @classmethod
    def methods(cls):
        return sorted(cls._shapers)

    def __init__(self, config=None):
        self.config = config or SolverConfig()

    def shape(self, pulse, transfer):
        raise NotImplementedError()

    @staticmethod
    def check_channels(pulse, transfer):
        if pulse.channels != transfer.channels:
            raise DimensionMismatch(f"A {pulse.channels}-channel pulse cannot drive a "
                                    f"{transfer.channels}-channel filter")
