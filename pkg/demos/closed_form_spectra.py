"""Closed-form dimension spectra for the solved families.

The value at theta = 0 is the Hausdorff dimension, the value at theta = 1
the box dimension; in between the covering restriction interpolates.
"""

import dimspect as ds

grid = ds.default_theta_grid(21)

# sequences {0, 1, 1/2**p, 1/3**p, ...}: spectrum theta/(p+theta)
print("sequence families   theta/(p+theta)")
print("theta   p=0.5     p=1       p=2")
for t in grid[::4]:
    row = [ds.sequence_dim(p, t) for p in (0.5, 1.0, 2.0)]
    print(f"{t:5.2f} {row[0]:9.4f} {row[1]:9.4f} {row[2]:9.4f}")

# the four standard examples: jumps at 0, plateaus, products
print("\nexample sets (lower = upper everywhere)")
print("theta     ex1       ex2       ex3       ex4")
for t in grid[::4]:
    vals = [ds.example_spectrum(k, t)[0] for k in (1, 2, 3, 4)]
    print(f"{t:5.2f} " + " ".join(f"{v:9.4f}" for v in vals))

# a union realized by merging: max{theta/(1+theta), 1/3}
union = ds.spectrum_merge(
    ds.sequence_spectrum(1.0, grid),
    ds.constant_spectrum(1.0 / 3.0, grid, 1),
    "max",
)
print("\nunion of F_1 with a 1/3-dimensional set: constant then increasing")
for s in union.samples[::4]:
    print(f"  theta={s.theta:4.2f}  value={s.lower:.4f}")

# a product: F_1 x F_log adds one full dimension for theta > 0
product = ds.product_bounds(
    ds.sequence_spectrum(1.0, grid), ds.example_spectrum_curve(1, grid), 1.0
)
print("\nproduct F_1 x F_log: theta/(1+theta) + 1 for theta > 0")
for s in product.samples[::4]:
    print(f"  theta={s.theta:4.2f}  lower={s.lower:.4f}  upper={s.upper:.4f}")

from dimspect.cli import spectrum_to_csv

with open("sequence_p1_spectrum.csv", "w", newline="") as fh:
    fh.write(spectrum_to_csv(ds.sequence_spectrum(1.0, ds.default_theta_grid(101))))
print("\nwrote sequence_p1_spectrum.csv")
