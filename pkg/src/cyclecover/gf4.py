"""Arithmetic in Z2 x Z2, written multiplicatively as the four symbols 0, R, G, B.

Addition is XOR on the two bits, so every element is its own inverse and
R + G = B, R + B = G, G + B = R.  Any permutation of {R, G, B} extends to a
group automorphism fixing 0; there are six of them.
"""
from __future__ import annotations

from itertools import permutations

ZERO, R, G, B = 0, 1, 2, 3
NONZERO = (R, G, B)
ELEMENTS = (ZERO, R, G, B)
NAMES = "0RGB"

_BY_NAME = {"0": ZERO, "R": R, "G": G, "B": B}


def add(x: int, y: int) -> int:
    return x ^ y


def parse_values(text: str) -> tuple[int, ...]:
    """Parse a string like "RGRRB" into a tuple of elements."""
    try:
        return tuple(_BY_NAME[c] for c in text)
    except KeyError as exc:
        raise ValueError(f"bad GF4 symbol in {text!r}") from exc


def format_values(values) -> str:
    return "".join(NAMES[v] for v in values)


def _make_automorphisms() -> tuple[tuple[int, ...], ...]:
    autos = []
    for perm in permutations(NONZERO):
        table = [ZERO, perm[0], perm[1], perm[2]]
        autos.append(tuple(table))
    return tuple(autos)


# Maps x -> table[x]; table[0] == 0 always.  AUTOMORPHISMS[0] is the identity.
AUTOMORPHISMS = _make_automorphisms()


def apply_auto(table: tuple[int, ...], values) -> tuple[int, ...]:
    return tuple(table[v] for v in values)
