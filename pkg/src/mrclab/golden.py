"""Reference data: two rational quintics in P^3 and their Betti tables.

X = (u^5 : u^4 v : u v^4 : v^5) lies on the quadric X_0 X_3 = X_1 X_2;
Y = (u^5 + u^3 v^2 : u^4 v - u^2 v^3 : u v^4 : v^5) lies on no quadric.
Tables list rows j = 0.. with columns i = 0..3 (0 printed as --).
"""

QUINTIC_FORMS = {
    "quintic_X": [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]],
    "quintic_Y": [[1, 0, 1, 0, 0, 0], [0, 1, 0, -1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]],
}

QUINTIC_GAMMA = 28

CURVE_TABLES = {
    "quintic_X": [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 0],
        [0, 4, 6, 2],
    ],
    "quintic_Y": [
        [1, 0, 0, 0],
        [0, 0, 0, 0],
        [0, 4, 3, 0],
        [0, 1, 2, 1],
    ],
}

POINT_TABLES = {
    "quintic_X": CURVE_TABLES["quintic_X"] + [
        [0, 0, 0, 0],
        [0, 3, 4, 1],
        [0, 0, 2, 2],
    ],
    "quintic_Y": CURVE_TABLES["quintic_Y"] + [
        [0, 0, 0, 0],
        [0, 3, 4, 0],
        [0, 0, 1, 2],
    ],
}

# expected verdicts at γ = 28
QUINTIC_VERDICTS = {
    "quintic_X": {"mrc": False, "igc": True},
    "quintic_Y": {"mrc": True, "igc": True},
}

QUINTIC_REGULARITY = 4


def matches(diagram, table) -> bool:
    """Rows of ``diagram`` equal ``table``, with every column beyond it zero."""
    rows = diagram.rows()
    if len(rows) != len(table):
        return False
    w = len(table[0])
    return all(r[:w] == list(t) and not any(r[w:]) for r, t in zip(rows, table))
