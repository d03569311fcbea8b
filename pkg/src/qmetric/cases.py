"""Fixed state pairs with hand-checkable values."""

import numpy as np

from .channels import example2_channel, example2_states
from .states import pure_from_vector

__all__ = ["example1_states", "example2_channel", "example2_states"]


def example1_states():
    """Two-qubit pure states sqrt(3)/2|00> + 1/2|11> and 1/2|00> + sqrt(3)/2|11>.

    Basis order is |00>, |01>, |10>, |11>. Their overlap is sqrt(3)/2, so
    F = 3/4 and rho - sigma has spectrum (1/2, 0, 0, -1/2).
    """
    psi = np.array([np.sqrt(3) / 2, 0, 0, 0.5])
    phi = np.array([0.5, 0, 0, np.sqrt(3) / 2])
    return pure_from_vector(psi), pure_from_vector(phi)
