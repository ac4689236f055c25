"""Small shared numeric helpers."""

import math
from collections.abc import Sequence


def exact_mean(values: Sequence[float]) -> float:
    """Mean via exact summation.

    A constant list returns its value unchanged, so identities like "system
    accuracy with every contribution equal to the machine's equals the
    machine's accuracy" hold bitwise, not just approximately.
    """
    if not values:
        raise ValueError("mean of empty sequence")
    first = values[0]
    if all(v == first for v in values):
        return first
    return math.fsum(values) / len(values)


def fmt_shortest(value: float) -> str:
    """Shortest decimal string that round-trips to the same double."""
    return repr(float(value))
