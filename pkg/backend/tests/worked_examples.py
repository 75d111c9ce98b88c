"""
Shared data sets and input sets for the test suites.

Each fixture is a small worked example with hand-checked generators,
decompositions and min-sets.
"""
import os
import sys

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.datamodel import DataSet, FieldSpec, InputSet


def dataset(q, n, rows):
    return DataSet.from_rows(FieldSpec(q=q, n=n), rows)


def inputs(q, n, points):
    return InputSet.from_points(FieldSpec(q=q, n=n), points)


# q=4, n=3; unsigned {x1}, signed {x1, x̄3}, {x1, x2}
NON_BOOLEAN = [((0, 2, 1), 0), ((1, 0, 3), 0), ((3, 0, 3), 2), ((2, 3, 0), 3)]

# q=5, n=5
F5 = [
    ((0, 1, 2, 1, 0), 0),
    ((0, 1, 2, 1, 1), 0),
    ((0, 1, 2, 1, 4), 1),
    ((3, 0, 0, 0, 0), 3),
    ((1, 1, 1, 1, 3), 4),
]

# Boolean, n=3; |Mod| = 32, |Mod^sgn| = 4
EX1 = [((1, 1, 1), 0), ((0, 0, 0), 0), ((1, 1, 0), 1)]

# Boolean: two unsigned min-sets, one signed
TWO_UNSIGNED_ONE_SIGNED = [((0, 0, 0), 0), ((1, 0, 1), 0), ((1, 1, 0), 1), ((0, 1, 1), 1)]

# q=3: one unsigned min-set, two signed
ONE_UNSIGNED_TWO_SIGNED = [((1, 0, 1), 0), ((0, 0, 0), 0), ((0, 2, 0), 1), ((2, 1, 1), 2)]

# q=3: no unate function fits
NO_SIGNED = [((1, 1, 0), 0), ((1, 2, 0), 1), ((1, 2, 2), 1), ((1, 0, 0), 2)]

# Boolean diagonal of length 2 giving three min-sets
THREE_MINSETS = [((0, 0, 0), 0), ((1, 1, 0), 0), ((0, 1, 1), 0), ((1, 0, 1), 1)]

# q=3, n=3: Type 3a
TYPE_3A_POINTS = [(1, 0, 0), (1, 1, 0), (1, 2, 0), (1, 2, 2)]

# q=3, n=2: disconnected, yet never two signed min-sets
ONE_NOT_TWO_POINTS = [(0, 0), (2, 0), (0, 2), (2, 2), (1, 1)]

# q=3, n=3: cylindrically connected, yet two signed min-sets for one assignment
TWO_NOT_ONE_POINTS = [(0, 0, 0), (0, 2, 0), (2, 2, 0), (2, 2, 1), (2, 1, 1)]
TWO_NOT_ONE = [(p, 0 if p == (2, 1, 1) else 1) for p in TWO_NOT_ONE_POINTS]

# Boolean cube design example, data generated by f = x1 or not x3
CUBE_POINTS = [(0, 0, 0), (1, 0, 0), (1, 0, 1), (0, 1, 1)]


def cube_function(x):
    return int(x[0] == 1 or x[2] == 0)


# q=3 plane design example, data generated by f = x1^2 + x1 mod 3
PLANE_POINTS = [(0, 0), (2, 0), (1, 2)]


def plane_function(x):
    return (x[0] ** 2 + x[0]) % 3
