"""Catalog every level crossing at a few representative field settings.

Real crossings survive only when a symmetry protects them: parallel
fields keep every one, a perpendicular tilt keeps two, and a generic
angle with E > 0 turns them all into avoided crossings.
"""

import math

from ohcross import FieldConfiguration, MoleculeParameters, crossing_catalog, scale_parameters

mol = MoleculeParameters()

settings = [
    ("zero electric field, theta 60 deg", 0.0, math.radians(60.0)),
    ("1 kV/cm, theta 60 deg", 1.0e5, math.radians(60.0)),
    ("2 kV/cm, parallel fields", 2.0e5, 0.0),
    ("2 kV/cm, perpendicular fields", 2.0e5, math.pi / 2.0),
]

for name, e_field, theta in settings:
    p = scale_parameters(mol, FieldConfiguration(e_field=e_field,
                                                 theta=theta))
    print(f"\n{name}")
    print(f"  {'B (T)':>10}  {'pair':>4}  {'kind':>7}  "
          f"{'gap (GHz)':>12}  source")
    for rec in crossing_catalog(p):
        print(f"  {rec.b_location:>10.6f}  {rec.pair[0]}-{rec.pair[1]:<2}  "
              f"{rec.kind:>7}  {rec.gap:>12.6g}  {rec.source}")
