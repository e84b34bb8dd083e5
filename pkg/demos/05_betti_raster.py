"""Rasterize fiber solution counts and print the picture as ASCII.

Each cell runs one exact fiber computation at its center.  The count is
constant on the complement (zero) and jumps across the contour, so the
cell walls draw the contour without any tracing.  A PPM of the same
raster lands next to this script.
"""

import os

from amoebas import amoeba_grids, cell_walls, parse_poly
from amoebas.cli import _betti_rgb, _write_ppm

F = parse_poly("z1^2*z2 + z1*z2^2 - 4*z1*z2 + 1", 2)
WINDOW = ((-2.0, -2.0), (2.0, 2.0))
RES = (33, 33)

betti, tags = amoeba_grids(F, WINDOW, RES)
walls, zero_walls = cell_walls(betti)

GLYPH = {0: ".", -1: "!"}
wall_set = set(walls)
nx, ny = betti.resolution
print("counts (rows are w2 top-down, # marks wall cells):")
for j in range(ny - 1, -1, -1):
    row = []
    for i in range(nx):
        if (i, j) in wall_set:
            row.append("#")
        else:
            v = int(betti.cells[i, j])
            row.append(GLYPH.get(v, str(v)))
    print("  " + "".join(row))

print(f"\ncell values seen: {sorted(set(int(v) for v in betti.cells.ravel()))}")
print(f"wall cells: {len(walls)}, of which {len(zero_walls)} touch the complement")

out = os.path.join(os.path.dirname(os.path.abspath(__file__)), "betti_33x33.ppm")
_write_ppm(out, betti, _betti_rgb)
print(f"wrote {out}")
