"""Percentage comparisons used in the result tables."""


def metric_dev(val1: float, val2: float) -> float:
    """Relative deviation of ``val1`` from ``val2`` in percent."""
    if val2 == 0:
        raise ZeroDivisionError("deviation undefined for a zero reference value")
    return 100.0 * (val1 - val2) / val2


def metric_diff(new: float, base: float) -> float:
    """Percent change of ``new`` over ``base`` (diff_m on means, diff_x on maxima).

    Pass unrounded values; recomputing from rounded table entries can differ
    in the last printed digit.
    """
    if base == 0:
        raise ZeroDivisionError("diff undefined for a zero base value")
    return 100.0 * (new - base) / base
