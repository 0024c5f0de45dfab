from abc import abstractmethod

import numpy as np


class EntityBase:
    """ Models, stages, pulses and reports that the command line can summarize on stderr. """

    @abstractmethod
    def __str__(self, prefix=""):
        """Summarize the entity, one indented line per field; the first line names it in colour.

        :param prefix: indentation put in front of every line, so nested entities line up under their parent
        """

    @abstractmethod
    def print(self, prefix="", verbose=False, associated_entities_to_show=None):
        """Print the summary, then the parts the caller asked for; the command line sends it all to stderr.

        :param verbose: include matrices and per-stage detail
        :param associated_entities_to_show: names given to --show, e.g. "stages" or "conditions"; "all" shows
               every part
        """

    @staticmethod
    def wants(associated_entities_to_show, *names):
        if not associated_entities_to_show:
            return False
        return any(name in associated_entities_to_show for name in names + ('all',))


def fmt_complex(value):
    if value is None:
        return "unset"
    value = complex(value)
    return f"{value.real:.10g}{value.imag:+.10g}j"


def frozen_array(values, dtype=complex):
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array
