"""
Maxwell's equations with torsion
================================

A plane wave on Minkowski space, first with the Levi-Civita connection and
then with a connection carrying constant torsion T⁰₁₂ = k.  The physics does
not change, only the bookkeeping: extra F·T terms appear in the component
and Clifford forms and cancel exactly.
"""

from geocalc import symexpr as se
from geocalc.connection import from_contorsion, zeros
from geocalc.scenarios import maxwell_fixtures, maxwell_lorentzian, maxwell_rc, minkowski_geometry

G = minkowski_geometry({"k": (0.5, 2.0)})
F, J = maxwell_fixtures(G)["plane-wave"]
print("F =", G.render_frame(F))

rep = maxwell_lorentzian(F, J, G)
print("dF, δF+J, ∂|F−J, divergence:", rep.dF, rep.delta_plus_J, rep.dirac_minus_J, rep.divergence)

T = zeros(4, 3)
T[0, 1, 2], T[0, 2, 1] = se.sym("k"), -se.sym("k")
C = from_contorsion(G, T)
rc = maxwell_rc(F, J, C)
print("with torsion: cyclic", rc.cyclic, " divergence", rc.divergence, " Clifford", rc.clifford)

# flipping the sign of a single torsion term breaks each form
print("sign variants:", round(rc.cyclic_variant, 3), round(rc.divergence_variant, 3), round(rc.clifford_variant, 3))
