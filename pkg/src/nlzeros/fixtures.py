"""Reference polynomials and pattern tables used by tests and the CLI."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .poly import IntPoly

SUPER_NEWMAN_EXPONENTS = (0, 4, 6, 7, 8, 10, 11, 12, 15, 16, 17, 22, 24, 25, 26, 29, 32, 35, 38)
SUPER_NEWMAN = IntPoly.from_exponents(SUPER_NEWMAN_EXPONENTS)

BARKER_13 = "+++++--++-+-+"
BARKER = IntPoly([1 if ch == "+" else -1 for ch in BARKER_13])

# rotations j = -6..6: N and sampled minimum
ROT_BARKER_N = (6, 5, 6, 7, 6, 5, 6, 7, 8, 6, 5, 8, 7)
ROT_BARKER_MIN = (0.25, 1.23, 1.80, 1.04, 0.52, 1.28, 3.01, 1.88, 0.10, 0.92, 0.31, 0.06, 0.08)

# k -> (coefficient string, min |f| on the circle)
LARGE_NEWMAN = {
    6: ("1111100110101", 1.362),
    7: ("1100111100000101", 1.183),
    8: ("110011001011111", 1.025),
    9: ("100101000100011111", 1.248),
    10: ("100000101000110111", 1.254),
    11: ("1100011000010111011", 1.018),
    12: ("1000101001100101111", 1.029),
    13: ("1001001101010111001111", 1.235),
    14: ("1000100010001010010111", 1.218),
    15: ("100001010100111001011011", 1.365),
    16: ("100000101001101000110111", 1.167),
    17: ("10000100111001010111010011", 1.161),
    18: ("10101010101011010110011111", 1.143),
}

BOUNDARY_K5 = IntPoly.from_exponents((0, 3, 7, 8, 9))


@dataclass(frozen=True)
class TableRow:
    """A tabled family: pattern text, k, degree a + b m, m >= m_min, excluded m mod q."""

    pattern: str
    k: int
    degree: Tuple[int, int]
    m_min: int
    excluded: Tuple[Tuple[int, int], ...] = ()  # (modulus, residue)

    def is_excluded(self, m: int) -> bool:
        return any(m % q == r for q, r in self.excluded)


NEWMAN2 = (
    TableRow("110|01|0001", 2, (6, 2), 0),
    TableRow("111|011|", 2, (2, 3), 1),
    TableRow("101|0001|", 2, (2, 4), 1),
    TableRow("101|1001|", 2, (2, 4), 1),
    TableRow("11011|0101|", 2, (4, 4), 1, ((3, 0),)),
    TableRow("11001|01001|", 2, (4, 5), 0),
    TableRow("1011|00011|", 2, (3, 5), 0),
    TableRow("10111|000111|", 2, (4, 6), 0),
    TableRow("111|001001|", 2, (2, 6), 1),
    TableRow("11101|00101101|", 2, (4, 8), 0),
)

LITTLEWOOD2 = (
    TableRow("++|--|-", 2, (2, 2), 1),
    TableRow("++-|-+|", 2, (2, 2), 1),
    TableRow("+|++-|", 2, (0, 3), 1),
    TableRow("+++|-++|", 2, (2, 3), 1),
)

NEWMAN345 = (
    TableRow("110010|01|0001001", 3, (12, 2), 2),
    TableRow("110011|01|0001", 3, (9, 2), 0, ((4, 1),)),
    TableRow("1011|0001|", 3, (3, 4), 2),
    TableRow("111001011|01|000101", 4, (14, 2), 0),
    TableRow("1011|1100|111011", 4, (9, 4), 0),
    TableRow("11101|0110|011", 4, (7, 4), 1),
    TableRow("11001001001011|01|001001001", 5, (22, 2), 3, ((4, 0),)),
    TableRow("110011011011|01|0001", 5, (15, 2), 0),
    TableRow("1001011|10001011|", 5, (6, 8), 1),
)

LITTLEWOOD3TO11 = (
    TableRow("+-++|-|", 3, (3, 1), 3),
    TableRow("+---+-|+|", 4, (5, 1), 3),
    TableRow("+-+-++|-|", 5, (5, 1), 3),
    TableRow("+-+-+---|+|", 6, (7, 1), 3),
    TableRow("+-+-+-++|-|", 7, (7, 1), 3),
    TableRow("++---+++-+|-|", 8, (9, 1), 3),
    TableRow("+-+-+-+-++|-|", 9, (9, 1), 3),
    TableRow("+---+++---+-|+|", 10, (11, 1), 3),
    TableRow("+-+-+-+-+-++|-|", 11, (11, 1), 3),
)

ALL_TABLES = {
    "newman2": NEWMAN2,
    "littlewood2": LITTLEWOOD2,
    "newman345": NEWMAN345,
    "littlewood3to11": LITTLEWOOD3TO11,
}

# spaced product example: f, g with determinant 1 and the four k/n intervals
PRODUCT_F = IntPoly.from_exponents((0, 2, 3))
PRODUCT_G = IntPoly.from_exponents((0, 3, 5))
