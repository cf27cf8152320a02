"""Published reference values for the counted quantities, n = 2..6.

The fixture keeps the digit strings exactly as published: integers plain or
as mantissa-eNN (nonnegative decimal exponent), probabilities as decimal
strings produced by a shortest-round-trip binary64 printer. Comparisons
normalize rather than reformat, so the file stays a faithful record.
"""

from __future__ import annotations

import json
import os
import re

_DEFAULT_PATH = os.path.join(os.path.dirname(__file__), "golden.json")

_EXACT_INT = re.compile(r"^([0-9]+)(?:[eE]([0-9]+))?$")


def load_golden(path=None) -> dict:
    """Fixture table {version, xi: {n: str}, eta: {...}, p: {...}}."""
    with open(_DEFAULT_PATH if path is None else path, "r", encoding="utf-8") as fh:
        table = json.load(fh)
    if not isinstance(table, dict) or table.get("version") != 1:
        raise ValueError("unsupported reference table version")
    for quantity in ("xi", "eta", "p"):
        if quantity not in table:
            raise ValueError(f"reference table lacks the {quantity} block")
    return table


def parse_exact_int(text: str) -> int:
    """Exact integer of a digit string, allowing a mantissa-eNN power of ten."""
    match = _EXACT_INT.match(text.strip())
    if match is None:
        raise ValueError(f"not an exact integer string: {text!r}")
    mantissa, exponent = match.groups()
    return int(mantissa) * (10 ** int(exponent) if exponent else 1)


def golden_text(table: dict, quantity: str, n: int) -> str:
    """Raw published string for one quantity and size."""
    try:
        return table[quantity][str(n)]
    except KeyError:
        raise KeyError(f"no reference value for {quantity} at n={n}") from None


def golden_int(table: dict, quantity: str, n: int) -> int:
    """Published integer value, normalized from its printed form."""
    return parse_exact_int(golden_text(table, quantity, n))
