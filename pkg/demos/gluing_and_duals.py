"""Glue two copies of the 12-vertex CS torus along an orbit of triangles,
then take duals of the seed maps."""
from csmanifolds.canon import are_isomorphic
from csmanifolds.construct import (GluingSpec, cs_connected_sum, cube, dodecahedron,
                                   dual_map, example_torus, hexagonal_torus,
                                   subdivided_cube, tightness_check)
from csmanifolds.notation import format_object

t = example_torus()
g = GluingSpec.from_text("123 > 123")
s = cs_connected_sum(t, t, g)
print(f"glued along {g.to_text()}: f={s.f_vector} chi={s.euler_characteristic}")
print(format_object(s.map, s.involution))
for line in tightness_check(s).lines():
    print("  ", line)

for make in (cube, subdivided_cube, dodecahedron, hexagonal_torus):
    m = make()
    d = dual_map(m)
    back = are_isomorphic(dual_map(d).map, m.as_map(), max_vertices=64)
    print(f"{make.__name__:<16} {m.f_vector} -> dual {d.f_vector}, "
          f"involution {d.involution.cycles()}, double dual isomorphic: {back}")
