"""Export a spacelike graph in Minkowski space whose grid crosses the light cone.

For z = x^2 / 2 the metric factor is W = 1 - x^2, so only the strip |x| < 1
is spacelike.  The mesh keeps just the cells whose four corners lie inside it.

Run: python3 demos/lorentz_mesh.py [out.obj]
"""

from __future__ import annotations

import sys

from transweingarten.cli import mesh_obj
from transweingarten.surface import Ambient, GridSpec, TranslationSurface, sample_grid

surface = TranslationSurface.from_expressions("t^2/2", "0", Ambient.LORENTZ_SPACELIKE)
grid = GridSpec.parse("-1.5:1.5:13,-1:1:5")
samples = sample_grid(surface, grid)
text, vertices, faces = mesh_obj(surface, grid, samples)
print(f"{sum(s.valid for s in samples)} of {len(samples)} samples are spacelike: {vertices} vertices, {faces} quads")
for s in samples[:13]:
    print(f"  x={s.x:+.2f}  W={s.W:+.4f}  {'kept' if s.valid else 'dropped'}")
if len(sys.argv) > 1:
    with open(sys.argv[1], "w", encoding="utf-8") as fh:
        fh.write(text)
