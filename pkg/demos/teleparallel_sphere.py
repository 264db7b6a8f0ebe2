"""
The teleparallel sphere
=======================

The punctured sphere carries a flat, metric-compatible connection whose
connection forms vanish in the coframe θ¹ = dt, θ² = sin t dp.  All of the
geometry sits in the torsion.
"""

from geocalc import build_geometry
from geocalc.calculus import dual_torsion_D, evans_check
from geocalc.scenarios import nunes_connection

G = build_geometry(["t", "p"], {"t": (0.2, 2.9), "p": (0.2, 6.0)}, (2, 0), [[1, 0], [0, "sin(t)"]])
C = nunes_connection(G)

print("curvature vanishes:", C.curvature.is_zero())
print("metric compatible:", C.is_metric_compatible())
print("𝒯² =", G.render_frame(C.torsion[1]))
print("T²₁₂ =", C.torsion_components[1, 0, 1])

rep = dual_torsion_D(C)
print("D⋆𝒯² =", G.render_frame(rep.direct[1]))
print("two routes differ by", rep.residual)

# D⋆𝒯^a against ⋆𝓡^a_b∧θ^b.  The right side is zero here, the left is not.
ev = evans_check(C)
for a in range(2):
    print(f"a={a + 1}: lhs", G.render_frame(ev.lhs[a]), " rhs", G.render_frame(ev.rhs[a]), " holds", ev.holds[a])
