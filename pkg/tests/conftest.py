"""Shared oracles that do not go through the package's own linear algebra."""

from __future__ import annotations

import itertools

import sympy


def sympy_reduced_homology(facets: list[frozenset]) -> list[int]:
    """Reduced Betti numbers over Q with sympy ranks, degrees -1..dim."""
    faces = set()
    for f in facets:
        for k in range(len(f) + 1):
            faces.update(frozenset(s) for s in itertools.combinations(sorted(f), k))
    if not faces:
        return []
    top = max(len(f) for f in faces)
    levels = [sorted((tuple(sorted(f)) for f in faces if len(f) == s)) for s in range(top + 1)]
    ranks = [0] * (top + 2)
    for s in range(1, top + 1):
        index = {f: k for k, f in enumerate(levels[s - 1])}
        mat = sympy.zeros(len(levels[s]), len(levels[s - 1]))
        for r, f in enumerate(levels[s]):
            for t in range(len(f)):
                mat[r, index[f[:t] + f[t + 1:]]] = (-1) ** t
        ranks[s] = mat.rank()
    return [len(levels[s]) - ranks[s] - ranks[s + 1] for s in range(top + 1)]


# the ten facets of the 3x4 path complex, as listed in the worked example
FACETS_3x4 = [
    {(1, 2), (1, 3), (1, 4)},
    {(1, 3), (1, 4), (2, 4)},
    {(1, 3), (2, 3), (2, 4)},
    {(2, 1), (2, 3), (2, 4)},
    {(1, 2), (1, 4), (3, 4)},
    {(1, 4), (2, 4), (3, 4)},
    {(2, 1), (2, 4), (3, 4)},
    {(2, 1), (3, 1), (3, 4)},
    {(1, 2), (3, 2), (3, 4)},
    {(3, 1), (3, 2), (3, 4)},
]
