"""Frozen 256-pair BRIEF sampling pattern.

Coordinate pairs drawn once from an isotropic Gaussian (sigma = 31/5),
rejection-sampled to radius <= 15 so the rotated pattern stays inside a
31x31 patch. Regenerating with a different seed changes descriptors; the
table is checked in so they stay stable across releases.
"""

import numpy as np

# (x1, y1, x2, y2) per comparison; bit set when I(p + a) < I(p + b).
PATTERN = np.array([
    (-8, -11, 5, 0), (-1, -11, 12, -3), (-13, -3, 2, 6), (3, -6, -3, -3),
    (-1, -1, -3, 4), (1, 10, -9, 1), (9, 0, -10, 11), (9, -3, -1, 6),
    (-1, 4, 3, 5), (-9, 3, -2, -2), (1, -1, 2, -8), (3, -8, 1, 0),
    (-10, -1, -6, 9), (-9, -7, -8, 4), (5, 10, 10, 3), (-10, 10, 3, -4),
    (-6, -6, -5, -7), (7, 3, 3, -12), (2, -2, 6, -2), (3, -3, 0, 3),
    (2, 5, 1, 7), (11, -6, -9, 7), (-5, -5, -5, -2), (1, 4, 2, 1),
    (-5, -1, -3, -13), (-7, 0, 3, 1), (-2, 5, -12, -7), (12, -3, 7, -9),
    (5, -1, -4, -12), (-3, 4, -10, 10), (6, 1, 6, 10), (3, 1, 2, 2),
    (-2, -3, 7, 5), (0, 4, 4, -12), (-4, 2, 0, -3), (-6, 9, 5, 8),
    (6, -5, -7, 0), (3, 8, -8, -1), (3, -1, -3, 0), (7, -7, 0, 0),
    (1, 1, -2, -2), (8, -4, 0, 4), (0, 4, -14, 3), (-2, -2, -8, -5),
    (-10, 6, -8, -1), (-1, 11, -10, 0), (11, 4, 6, -3), (-3, -13, 3, 2),
    (-13, 2, -7, -4), (-1, -1, 5, -1), (4, -5, 3, 2), (5, 12, -8, -9),
    (7, 2, 0, 6), (6, -11, -7, -3), (-1, -3, 5, 0), (0, 3, -11, -7),
    (-6, 5, 4, -3), (-8, -6, -8, -3), (-5, 1, 0, -1), (-9, -6, -3, 2),
    (7, 9, 0, 11), (0, 1, -3, -2), (-5, -1, 2, 10), (-5, 13, -10, 3),
    (-1, -3, -5, 0), (1, 2, -11, -4), (-7, -2, -3, -5), (2, 3, -1, 1),
    (-4, 5, 9, -1), (1, 7, 3, -8), (4, 2, -10, 1), (8, 3, 3, 0),
    (2, 1, 6, -4), (3, 6, -9, -2), (9, 8, -5, -1), (-6, 5, -6, 2),
    (-1, 0, 2, -3), (-10, 7, 4, -5), (6, 0, 4, 1), (-3, -3, -4, -1),
    (-9, -5, 1, 9), (4, -2, 3, 1), (-3, 1, 0, 3), (-4, 1, 3, -3),
    (10, 11, -6, -1), (-3, 5, 1, 6), (2, 2, 8, -3), (0, -1, -2, -8),
    (3, -10, 1, -9), (9, 3, 2, -9), (-11, -6, -7, -4), (-8, -5, 5, -2),
    (-2, 1, -2, 3), (3, 3, 2, 0), (2, 9, -3, -4), (-5, -1, -6, -6),
    (2, 5, 5, -4), (-6, -5, 6, 5), (11, 0, 9, 0), (7, -4, 2, 11),
    (6, -10, 0, -2), (-3, 3, 2, 0), (-6, -8, 7, 8), (13, -2, -9, -2),
    (7, -7, 4, -1), (0, 1, 1, 3), (-2, 4, -1, 0), (10, -4, 0, 3),
    (6, 0, 10, 3), (-5, 5, -2, 2), (2, 1, 2, 8), (-1, -4, -7, 3),
    (4, 5, 2, 0), (2, -4, -7, 10), (-6, 9, 1, 0), (0, -3, 6, 2),
    (-2, -3, 2, 14), (-12, 8, -11, 0), (-13, -2, 13, 6), (-6, 7, -2, 4),
    (-6, 6, -5, -2), (2, -9, 0, 2), (6, 1, -4, -5), (-2, 6, 4, -2),
    (-3, -6, 1, 3), (4, -9, 14, 5), (0, -7, 6, 8), (6, 3, 0, -14),
    (1, -9, -11, 1), (4, -4, 5, 5), (3, -3, 3, -7), (-10, 8, 2, 5),
    (3, 1, 1, -9), (13, -5, -8, 4), (7, 8, 3, 5), (3, 5, 6, 7),
    (3, -4, 0, -7), (12, -5, 9, -3), (7, 0, 1, -13), (-9, 0, -1, 7),
    (9, 12, 0, 3), (-2, 12, 0, -8), (-2, 12, -3, -1), (4, -6, -11, 6),
    (-8, 2, -1, -6), (8, 1, -12, -4), (-7, 0, 5, 0), (5, -1, -6, 10),
    (8, -3, 1, -6), (-9, -2, -7, -1), (1, 3, 0, -9), (0, 2, 7, 9),
    (3, -10, 3, -1), (1, 5, 10, -3), (9, -4, -4, -11), (4, -7, 7, -3),
    (8, -2, -2, 3), (-2, -3, 4, 3), (-5, -2, -13, 7), (3, 1, 14, 2),
    (-2, 12, 2, -11), (11, -1, 4, 7), (-9, -3, -13, -7), (3, -14, 2, -2),
    (-7, 2, -4, -1), (-9, 2, -9, 1), (6, 4, 4, -4), (3, -9, 2, 6),
    (1, -1, 5, -6), (3, -6, 8, 7), (4, -2, -1, 6), (0, 2, -7, 6),
    (4, -4, 2, -7), (1, 0, 2, -7), (8, 6, 9, -4), (-6, -4, -10, 8),
    (-4, -4, 9, 2), (2, -6, 1, -5), (4, 4, -1, -9), (5, 3, -2, 7),
    (4, -2, 3, -8), (-7, 2, -1, 6), (-5, 11, -8, 1), (4, 1, 3, -1),
    (0, -4, 1, 1), (2, 5, 5, 0), (-1, 1, 3, 2), (6, 1, 1, 4),
    (6, 2, 4, 6), (-6, -3, -6, -6), (6, -2, 1, 6), (4, 5, 13, -3),
    (-6, -10, -11, -3), (0, 6, -1, -2), (-13, 1, 0, 1), (-3, 1, 10, -5),
    (-1, -5, 7, 1), (-3, 2, -4, 0), (0, 5, -4, -4), (-3, 2, -2, 1),
    (-5, 0, 11, 3), (6, 5, -8, -3), (5, 3, -4, 3), (8, 9, 2, -2),
    (-5, 5, 11, 8), (0, -2, -1, 5), (-1, 1, 8, 3), (4, 3, -5, 0),
    (-8, 5, 8, 7), (-4, 5, 4, -6), (-1, 0, -6, -6), (-3, -6, 3, -2),
    (4, 2, -1, -8), (-4, 2, 8, 3), (-10, -2, 0, -5), (-1, -5, -1, 5),
    (-5, -6, -3, 2), (1, -12, -5, -5), (8, 2, 5, -12), (5, 7, -4, -6),
    (-8, -6, -8, -2), (10, -4, -9, 4), (11, -2, 6, -10), (-3, 3, 6, 6),
    (-1, -5, -1, -13), (4, 0, 0, -9), (4, 8, 5, 9), (1, 9, 5, 3),
    (0, -4, -2, 6), (3, -3, -6, 8), (-4, 6, 7, 4), (-11, -4, -4, -2),
    (-5, -3, 2, 1), (-1, 0, 2, -4), (-6, 3, -6, -5), (7, -7, 4, -1),
    (-2, 7, 5, 8), (2, -8, 6, 1), (9, -5, 5, 0), (2, -3, -2, -5),
    (-6, -5, 14, 3), (-10, -11, -3, 7), (-5, -3, 9, 2), (-2, -1, -3, 8),
    (-5, -2, -5, -14), (6, 2, 2, -13), (-9, 2, -1, -3), (3, -3, -1, 10),
    (14, -3, -3, -4), (13, 1, 1, -10), (6, 3, -1, -3), (-8, -1, 4, 4),
    (5, 2, 13, -2), (0, -1, 0, 1), (1, 0, -8, -6), (-7, -2, -3, -6),
], dtype=np.int32)

