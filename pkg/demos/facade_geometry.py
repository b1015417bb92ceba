"""
Folding facade geometry
=======================

Each shading element is a unit panel hinged along its top edge. At R = 0 it
lies flat against the glass, at R = pi/2 it sticks straight out.
"""

import math

import numpy as np

from kinfacade import FacadeLayout, ModuleType, decode, genotype_dims
from kinfacade.facade import element_direct_block, facade_shading
from kinfacade.solar import SHIRAZ, sun_state

# three module sizes: 1, 2x2 and 4x4 elements
for t in ModuleType:
    print(t.name, t.side, "x", t.side, "=", t.elements, "angles")

# the default facade is a 4x4 grid of the finest modules
layout = FacadeLayout()
print("genotype length", genotype_dims(layout))

# direct-beam blocking of one element, for a sun 40 degrees above the horizon
gamma = math.radians(40)
for r in np.linspace(0, math.pi / 2, 5):
    print(f"R = {r:.2f} rad: blocks {element_direct_block(r, gamma):.3f}")

# a 2x2 module: the flat vector fills R1..R4, the matrix runs down columns
small = FacadeLayout.uniform(1, 1, 2)
g = decode([0.5, 0.8, 1.1, 1.4], small)
print(g.matrix(0))

# whole-facade blocking at August noon in Shiraz
rng = np.random.default_rng(0)
g = decode(rng.uniform(0.50, 1.57, 256), layout)
sun = sun_state(SHIRAZ, 222, 12.0)
direct, diffuse = facade_shading(g, sun)
print(f"profile angle {math.degrees(sun.profile_angle):.1f} deg")
print(f"direct blocked {direct:.3f}, diffuse blocked {diffuse:.3f}")

# mixed layouts weight every module by its share of the facade area
mixed = FacadeLayout(2, 2, (1, 2, 3, 3))
print("mixed layout dims", genotype_dims(mixed), "weights sum", mixed.element_weights().sum())
