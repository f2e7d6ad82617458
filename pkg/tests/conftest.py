import numpy as np
import pytest

from cycosc.params import validate_alpha


def random_valid_alpha(rng, lam):
    """Draw an alpha vector satisfying the sum and partial-sum constraints.

    Entries in (-0.2, 0.2) keep every partial sum well above -1 for lam <= 5.
    """
    head = rng.uniform(-0.2, 0.2, lam - 1)
    return np.append(head, -head.sum())


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


@pytest.fixture
def params_l2():
    return validate_alpha(2, (0.5, -0.5))


@pytest.fixture
def params_l3():
    return validate_alpha(3, (0.3, 0.2, -0.5))


@pytest.fixture
def params_plain():
    return validate_alpha(2, (0.0, 0.0))
