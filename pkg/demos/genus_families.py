"""Build the quadrangulated, pentagonal and hexagonal CS maps by repeated
connected sum and print what each one is."""
from csmanifolds.construct import (hexagon_genus_surface, pentagon_genus_surface,
                                   quad_genus_surface)
from csmanifolds.symmetry import is_centrally_symmetric


def show(label, s):
    cs = is_centrally_symmetric(s.map, s.involution)
    print(f"{label:<14} f={s.f_vector}  chi={s.euler_characteristic:>3}  "
          f"genus={s.genus}  orientable={s.is_orientable()}  CS={cs}  "
          f"polyhedral={s.is_polyhedral()}")


for g in range(5):
    show(f"quad g={g}", quad_genus_surface(g))
for g in range(5):
    show(f"pentagon g={g}", pentagon_genus_surface(g))
for k in range(1, 4):
    show(f"hexagon k={k}", hexagon_genus_surface(k))
