from fractions import Fraction
from typing import Union


def rational_to_str(value: Union[Fraction, int]) -> str:
    """Canonical rendering of an exact rational: ``"p/q"``, or ``"p"`` for integers."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def gv_quote(text) -> str:
    """Quote a string for use as a graphviz identifier or label."""
    escaped = str(text).replace("\\", "\\\\").replace('"', r"\"")
    return f'"{escaped}"'
