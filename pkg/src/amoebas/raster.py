"""Betti, membership, and classification rasters over a log window.

Every cell value is one exact fiber computation at the cell center, so
the resolution is the only accuracy knob.  Cells are independent; when
the AMOEBA_THREADS environment variable asks for more than one worker
the grid is chunked across processes, and the assembly order is fixed
either way, so identical inputs give identical rasters.
"""

from __future__ import annotations

import os

import numpy as np

from .fiber import classify

# value stored in Betti cells whose fiber intersection is not finite
SENTINEL = -1


class Raster:
    """A rectangular grid of per-cell values over a log window.

    ``window`` is ((w1_min, w2_min), (w1_max, w2_max)), ``resolution``
    is (nx, ny), and ``cells[i, j]`` holds the value computed at the
    center of cell (i, j), with i indexing w1 upward from the minimum
    and j indexing w2.
    """

    __slots__ = ("window", "resolution", "cells")

    def __init__(self, window, resolution, cells):
        (x0, y0), (x1, y1) = window
        nx, ny = int(resolution[0]), int(resolution[1])
        if nx < 2 or ny < 2:
            raise ValueError("resolution must be at least 2 x 2")
        if not (x1 > x0 and y1 > y0):
            raise ValueError("window must have positive extent")
        cells = np.asarray(cells)
        if cells.shape != (nx, ny):
            raise ValueError(f"cells must have shape {(nx, ny)}, got {cells.shape}")
        self.window = ((float(x0), float(y0)), (float(x1), float(y1)))
        self.resolution = (nx, ny)
        self.cells = cells

    def centers(self):
        """Arrays (xs, ys) of the cell-center coordinates along each axis."""
        (x0, y0), (x1, y1) = self.window
        nx, ny = self.resolution
        xs = x0 + (np.arange(nx) + 0.5) * (x1 - x0) / nx
        ys = y0 + (np.arange(ny) + 0.5) * (y1 - y0) / ny
        return xs, ys

    def cell_size(self):
        (x0, y0), (x1, y1) = self.window
        nx, ny = self.resolution
        return ((x1 - x0) / nx, (y1 - y0) / ny)

    def __repr__(self):
        nx, ny = self.resolution
        return f"Raster({nx}x{ny}, window={self.window}, dtype={self.cells.dtype})"


def _thread_count():
    """Worker count from AMOEBA_THREADS; anything unusable means serial."""
    raw = os.environ.get("AMOEBA_THREADS", "")
    try:
        k = int(raw)
    except ValueError:
        return 1
    return max(1, k)


def _grid_chunk(args):
    """Classify a chunk of cell centers (top level so pools can pickle it)."""
    f, chunk, critical_tol, unit_tol = args
    out = []
    for wx, wy in chunk:
        pc = classify(f, (wx, wy), critical_tol=critical_tol, unit_tol=unit_tol)
        if pc.tag == "Degenerate":
            out.append((SENTINEL, "Degenerate"))
        else:
            out.append((len(pc.solutions), pc.tag))
    return out


def amoeba_grids(f, window, resolution, critical_tol=1e-6, unit_tol=1e-6):
    """One classification pass, two rasters.

    Returns (betti, tags): the Betti raster counts distinct fiber
    solutions per cell (0 exactly on the complement, -1 on degenerate
    cells) and the tag raster stores the four-way classification of the
    same fiber computations, so the two are cell-wise consistent.
    """
    if f.nvars != 2:
        raise ValueError("rasters are implemented for two variables")
    probe = Raster(window, resolution, np.zeros(
        (int(resolution[0]), int(resolution[1])), dtype=int))
    xs, ys = probe.centers()
    nx, ny = probe.resolution
    points = [(float(xs[i]), float(ys[j])) for i in range(nx) for j in range(ny)]

    threads = _thread_count()
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor

        step = max(1, len(points) // (4 * threads))
        chunks = [points[k:k + step] for k in range(0, len(points), step)]
        jobs = [(f, chunk, critical_tol, unit_tol) for chunk in chunks]
        values = []
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_grid_chunk, jobs):
                values.extend(part)
    else:
        values = _grid_chunk((f, points, critical_tol, unit_tol))

    betti = np.empty((nx, ny), dtype=int)
    tags = np.empty((nx, ny), dtype="<U15")
    for idx, (count, tag) in enumerate(values):
        i, j = divmod(idx, ny)
        betti[i, j] = count
        tags[i, j] = tag
    return (
        Raster(window, resolution, betti),
        Raster(window, resolution, tags),
    )


def betti_grid(f, window, resolution, critical_tol=1e-6, unit_tol=1e-6):
    """Raster of fiber solution counts; see amoeba_grids."""
    return amoeba_grids(f, window, resolution, critical_tol, unit_tol)[0]


def classification_grid(f, window, resolution, critical_tol=1e-6, unit_tol=1e-6):
    """Raster of PointClass tags; see amoeba_grids."""
    return amoeba_grids(f, window, resolution, critical_tol, unit_tol)[1]


def lopsided_grid(f, window, resolution):
    """Raster of dominant-term certificates (True where some term dominates).

    Cheap complement detector: every True cell is certified outside the
    amoeba without any root finding.
    """
    from .fiber import lopsided

    if f.nvars != 2:
        raise ValueError("rasters are implemented for two variables")
    probe = Raster(window, resolution, np.zeros(
        (int(resolution[0]), int(resolution[1])), dtype=bool))
    xs, ys = probe.centers()
    nx, ny = probe.resolution
    cells = np.zeros((nx, ny), dtype=bool)
    for i in range(nx):
        for j in range(ny):
            cells[i, j] = lopsided(f, (float(xs[i]), float(ys[j]))) is not None
    return Raster(window, resolution, cells)


def cell_walls(r):
    """Interface cells of a Betti raster.

    Returns
    -------
    (walls, zero_walls)
        ``walls`` lists the cells whose value differs from that of some
        4-neighbor, both values finite; sentinel cells never contribute.
        This is the raster picture of the contour.  ``zero_walls`` keeps
        only the cells with positive count adjacent to a zero cell, the
        raster picture of the amoeba boundary.  Both lists are sorted.
    """
    cells = np.asarray(r.cells)
    if not np.issubdtype(cells.dtype, np.integer):
        raise ValueError("cell walls are defined for Betti rasters")
    nx, ny = r.resolution
    walls = set()
    zero_walls = set()
    for i in range(nx):
        for j in range(ny):
            a = cells[i, j]
            if a < 0:
                continue
            for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                ii, jj = i + di, j + dj
                if not (0 <= ii < nx and 0 <= jj < ny):
                    continue
                b = cells[ii, jj]
                if b < 0 or b == a:
                    continue
                walls.add((i, j))
                if a > 0 and b == 0:
                    zero_walls.add((i, j))
    return sorted(walls), sorted(zero_walls)
