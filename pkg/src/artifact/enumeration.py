"""Bounded enumeration of lattice vectors by norm.

The search follows Fincke and Pohst: the quadratic form is diagonalised by a
floating Cholesky factor, which only decides the coordinate ranges.  Every
candidate is then certified by an exact integer norm, so float error can add
candidates but never change a reported norm.
"""

from fractions import Fraction
from math import lcm

import numpy as np

from .errors import NotPositiveDefinite


def as_gram(gram):
    rows = [[int(v) for v in row] for row in gram]
    r = len(rows)
    for row in rows:
        if len(row) != r:
            raise ValueError("Gram matrix must be square")
    for i in range(r):
        for j in range(r):
            if rows[i][j] != rows[j][i]:
                raise ValueError("Gram matrix must be symmetric")
    return rows


def _form_coefficients(gram):
    a = np.array(gram, dtype=float)
    try:
        upper = np.linalg.cholesky(a).T
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite("Gram matrix is not positive definite") from exc
    r = len(gram)
    q = np.zeros((r, r))
    for i in range(r):
        q[i, i] = upper[i, i] ** 2
        for j in range(i + 1, r):
            q[i, j] = upper[i, j] / upper[i, i]
    return q


def short_vectors(gram, bound, shift=None):
    """All integer x with (x+s).A.(x+s) <= bound.

    Returns (points, norms2, scale): points is an (N, r) int array, norms2 the
    exact integers scale**2 * (x+s).A.(x+s), so the true norm is
    norms2 / scale**2.
    """
    gram = as_gram(gram)
    r = len(gram)
    if r == 0:
        return np.zeros((1, 0), dtype=np.int64), np.zeros(1, dtype=np.int64), 1
    shift = [Fraction(0)] * r if shift is None else [Fraction(v) for v in shift]
    scale = lcm(*(v.denominator for v in shift))
    offs = np.array([int(v * scale) for v in shift], dtype=np.int64)
    q = _form_coefficients(gram)
    exact_bound = Fraction(bound) * scale * scale
    sf = np.array([float(v) for v in shift])
    slack = 1e-9 * (1.0 + abs(float(bound)))

    # breadth first: every row is a partial assignment of coordinates i..r-1
    points = np.zeros((1, r), dtype=np.int64)
    budget = np.array([float(bound) + slack])
    for i in range(r - 1, -1, -1):
        centre = -(points[:, i + 1:] + sf[i + 1:]) @ q[i, i + 1:]
        width = np.sqrt(np.maximum(budget, 0.0) / q[i, i])
        lo = np.ceil(centre - width - sf[i] - 1e-9).astype(np.int64)
        hi = np.floor(centre + width - sf[i] + 1e-9).astype(np.int64)
        counts = np.where(budget > -slack, np.maximum(hi - lo + 1, 0), 0)
        rows = np.repeat(np.arange(len(points)), counts)
        starts = np.repeat(np.cumsum(counts) - counts, counts)
        xi = lo[rows] + (np.arange(len(rows)) - starts)
        points = points[rows]
        points[:, i] = xi
        t = xi + sf[i] - centre[rows]
        budget = budget[rows] - q[i, i] * t * t

    z = scale * points + offs
    norms = np.einsum("ni,ij,nj->n", z, np.array(gram, dtype=np.int64), z)
    keep = norms <= exact_bound.numerator // exact_bound.denominator
    return points[keep], norms[keep], scale
