"""Published tables for Euler characteristic -2, transcribed as printed.

``CENSUS_CHI_M2`` is the list of (vertex count, type) pairs surviving the
arithmetic and local conditions.  ``EXISTENCE_LIST_AS_PRINTED`` is the
final list of types claimed to occur, verbatim, including its misprint
[4,6,8] (the Euler relation forces [4,6,18]).
"""
from __future__ import annotations

from .typearith import VertexType, parse_type

_CENSUS = """
12 [3^7]; 24 [3^5,4]; 12 [3^4,4^2]; 12 [3^3,4,3,4]; 15 [3^5,5];
84 [3^4,7]; 48 [3^4,8]; 36 [3^4,9]; 30 [3^4,10]; 20 [3^2,5,3,5];
40 [3^2,4,3,5]; 24 [3^3,4,6]; 24 [3^2,4,3,6]; 24 [3,4,3,4^2];
12 [3,4^4]; 42 [3,7,3,7]; 24 [3,8,3,8]; 18 [3,9,3,9];
84 [3,4,7,4]; 48 [3,4,8,4]; 36 [3,4,9,4]; 30 [3,5^3];
30 [3,4,10,4]; 24 [3,6,4,6]; 15 [3,6,5,6]; 40 [4^3,5];
24 [4^3,6]; 20 [5,4,5,4]; 168 [4,6,14]; 96 [4,6,16];
72 [4,6,18]; 60 [4,6,20]; 80 [4,8,10]; 48 [4,8,12];
84 [6^2,7]; 48 [6^2,8]; 36 [6^2,9]; 30 [6^2,10]; 40 [5,8^2];
24 [6,8^2]; 40 [4,10^2]; 24 [4,12^2]; 84 [3,14^2];
48 [3,16^2]; 36 [3,18^2]; 28 [7^3]
"""

_EXISTENCE = """
[3^7]; [3^5,4]; [3^4,4^2]; [3^3,4,3,4]; [3^5,5]; [3^4,7]; [3^4,8]; [3^4,9];
[3^4,10]; [3^2,5,3,5]; [3^3,4,6]; [3^2,4,3,6]; [3,4,3,4^2]; [3,4^4];
[3,7,3,7]; [3,4,7,4]; [3,4,8,4]; [4^3,5]; [3,4,9,4]; [3,4,10,4]; [3,5^3];
[3,6,4,6]; [4,6,8]; [4^3,6]; [5,4,5,4]; [4,6,14]; [4,6,16]; [4,6,20];
[4,8,10]; [4,8,12]; [6^2,7]; [8,6^2]; [9,6^2]; [10,6^2]; [5,8^2]; [6,8^2];
[4,10^2]; [3,14^2]; [7^3]
"""


def _items(text: str) -> list[str]:
    return [x.strip() for x in text.replace("\n", " ").split(";") if x.strip()]


CENSUS_CHI_M2: tuple[tuple[int, VertexType], ...] = tuple(
    (int(n), parse_type(t)) for n, t in (x.split(None, 1) for x in _items(_CENSUS))
)

EXISTENCE_LIST_AS_PRINTED: tuple[VertexType, ...] = tuple(parse_type(t) for t in _items(_EXISTENCE))

# types whose existence is argued away by hand (no construction possible)
HAND_EXCLUDED_CHI_M2: tuple[VertexType, ...] = tuple(
    parse_type(t) for t in ("[3,8,3,8]", "[3,9,3,9]", "[3,6,5,6]", "[4,12^2]", "[3,16^2]", "[3,18^2]")
)
