"""Reference functions shared by the unit and integration tests."""

import numpy as np


def bump(x):
    """(1 - x²)⁴ on [-1, 1], zero outside."""
    x = np.asarray(x, dtype=float)
    return np.where(np.abs(x) <= 1.0, (1.0 - x**2) ** 4, 0.0)


def linear_rhs(rate):
    """G(W) = rate·W for both components."""

    def evaluate(state):
        return rate * state.u, rate * state.v

    return evaluate
