"""The constant datum and the disk: both directions of the correspondence.

The only domains whose Green's-function boundary derivative is constant are
disks centered at the pole.  This script pushes a disk map forward to its
datum, then rebuilds the map from a constant datum, and prints both.
"""

import pathlib
import sys

import numpy as np

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from greenrecon import (BoundaryFunction, ConformalMap, forward_operator,
                        reconstruct_fprime)

TWO_PI = 2 * np.pi

# forward: a disk of radius 0.8 about 0.3 + 0.1j
rho, center = 0.8, 0.3 + 0.1j
f = ConformalMap([center, rho])
phi = forward_operator(f, 256)
print(f"disk radius {rho}, center {center}")
print(f"  perimeter L = {phi.L:.12f}  (2*pi*rho = {TWO_PI * rho:.12f})")
print(f"  datum range [{phi.values.min():.12f}, {phi.values.max():.12f}]")
print(f"  expected constant 1/(2*pi*rho) = {1 / (TWO_PI * rho):.12f}")

# inverse: the constant datum C recovers the disk of radius 1/(2*pi*C)
C = 0.25
datum = BoundaryFunction(np.full(128, C), 1.0 / C)
result = reconstruct_fprime(datum, zeta_o=0j, zeta_b=1.0 / (TWO_PI * C), n=128)
coeffs = result.map.coefficients
print(f"\nconstant datum C = {C}")
print(f"  reconstructed a_0 = {coeffs[0]:.3e}, a_1 = {coeffs[1]:.12f}")
print(f"  largest higher coefficient: {np.max(np.abs(coeffs[2:])):.3e}")
print(f"  rotation constant gamma = {result.gamma:.3e}")
print(f"  expected radius 1/(2*pi*C) = {1 / (TWO_PI * C):.12f}")
