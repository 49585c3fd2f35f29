"""Pure numpy force-displacement kernel.

Semantics shared with the compiled extension: classic spring-electrical
iteration with repulsion k^2/d along each near pair, attraction d^2/k along
each edge, and per-node displacement capped by a linearly cooled temperature.
A positive cell size switches repulsion from all pairs to pairs whose grid
cells are within Chebyshev distance one, which is what keeps large layouts
near-linear per iteration.
"""

from __future__ import annotations

import numpy as np

EPS = 1e-9


def _full_repulsion(pos: np.ndarray, k2: float) -> np.ndarray:
    delta = pos[:, None, :] - pos[None, :, :]
    d2 = np.maximum((delta**2).sum(axis=2), EPS * EPS)
    coef = k2 / d2
    np.fill_diagonal(coef, 0.0)
    return (delta * coef[:, :, None]).sum(axis=1)


def _grid_pairs(pos: np.ndarray, cell: float) -> tuple[np.ndarray, np.ndarray]:
    """Ordered pairs (i, j), i != j, whose cells are within one step."""
    cx = np.floor(pos[:, 0] / cell).astype(np.int64) + 1
    cy = np.floor(pos[:, 1] / cell).astype(np.int64) + 1
    cx -= cx.min() - 1
    cy -= cy.min() - 1
    width = cy.max() + 3
    key = cx * width + cy
    order = np.argsort(key, kind="stable")
    skey = key[order]
    n = len(pos)
    all_i = []
    all_j = []
    for dx in (-1, 0, 1):
        for dy in (-1, 0, 1):
            target = (cx + dx) * width + (cy + dy)
            lo = np.searchsorted(skey, target, side="left")
            hi = np.searchsorted(skey, target, side="right")
            counts = hi - lo
            total = int(counts.sum())
            if total == 0:
                continue
            i_idx = np.repeat(np.arange(n), counts)
            prefix = np.concatenate(([0], np.cumsum(counts)[:-1]))
            within = np.arange(total) - np.repeat(prefix, counts)
            j_idx = order[np.repeat(lo, counts) + within]
            keep = i_idx != j_idx
            all_i.append(i_idx[keep])
            all_j.append(j_idx[keep])
    if not all_i:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty
    return np.concatenate(all_i), np.concatenate(all_j)


def _grid_repulsion(pos: np.ndarray, k2: float, cell: float) -> np.ndarray:
    disp = np.zeros_like(pos)
    i_idx, j_idx = _grid_pairs(pos, cell)
    if len(i_idx):
        delta = pos[i_idx] - pos[j_idx]
        d2 = np.maximum((delta**2).sum(axis=1), EPS * EPS)
        np.add.at(disp, i_idx, delta * (k2 / d2)[:, None])
    return disp


def fr_steps(
    pos: np.ndarray,
    edges: np.ndarray,
    k: float,
    t0: float,
    iters: int,
    cell: float = 0.0,
) -> np.ndarray:
    """Run iters force-directed steps and return the new positions.

    pos is (n, 2) float64 and is not modified; edges is (e, 2) integer.
    Temperature cools linearly from t0 to 0 across the iterations.
    """
    pos = np.array(pos, dtype=np.float64, copy=True)
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    n = len(pos)
    if n <= 1 or iters <= 0:
        return pos
    k2 = k * k
    for it in range(iters):
        t = t0 * (1.0 - it / iters)
        if cell > 0.0:
            disp = _grid_repulsion(pos, k2, cell)
        else:
            disp = _full_repulsion(pos, k2)
        if len(edges):
            delta = pos[edges[:, 0]] - pos[edges[:, 1]]
            dist = np.maximum(np.sqrt((delta**2).sum(axis=1)), EPS)
            pull = delta * (dist / k)[:, None]
            np.add.at(disp, edges[:, 0], -pull)
            np.add.at(disp, edges[:, 1], pull)
        length = np.maximum(np.sqrt((disp**2).sum(axis=1)), EPS)
        factor = np.minimum(length, t) / length
        pos += disp * factor[:, None]
    return pos
