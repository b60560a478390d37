"""Named arrays used as reference data across tests, CLI and docs."""

from __future__ import annotations

from .arrays import ExponentArray

# Binary array on Z_2^3 whose type-1 expansion is a GPBF; first coordinate selects the layer.
BINARY_CUBE = ExponentArray.from_layers(
    [
        [[0, 1], [1, 1]],
        [[0, 1], [0, 0]],
    ],
    h=2,
)

# Binary array on Z_4^2; the display's columns index the first coordinate.
BINARY_SQUARE_4 = ExponentArray.from_columns(
    [
        [0, 1, 1, 1],
        [1, 1, 0, 1],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
    ],
    h=2,
)

# Ternary array on Z_3^2.
TERNARY_SQUARE_3 = ExponentArray.from_rows(
    [
        [0, 0, 0],
        [0, 1, 0],
        [2, 2, 1],
    ],
    h=3,
)

# Z_2^2 -> Z_2 with a single 1 at (0, 1): its type-1 expansion is a GPBF but it is not a GPhA.
GPBF_NOT_GPHA = ExponentArray.from_rows([[0, 1], [0, 0]], h=2)

EXAMPLES = {
    "binary-cube": BINARY_CUBE,
    "binary-square-4": BINARY_SQUARE_4,
    "ternary-square-3": TERNARY_SQUARE_3,
    "gpbf-not-gpha": GPBF_NOT_GPHA,
}
