"""
Curvature of the unit sphere
============================

Connection forms, curvature and Ricci forms of S² from its coframe
θ¹ = dt, θ² = sin t dp.
"""

from geocalc import build_geometry, levi_civita
from geocalc import symexpr as se
from geocalc.calculus import star
from geocalc.connection import ricci_data

G = build_geometry(["t", "p"], {"t": (0.2, 2.9), "p": (0.2, 6.0)}, (2, 0), [[1, 0], [0, "sin(t)"]], name="S2")
C = levi_civita(G)

for a in range(2):
    print("dθ" + "¹²"[a], "=", G.render_frame(G.d(G.theta(a))))

print("ω²₁ =", G.render_frame(C.one_forms[1, 0]))
print("ω²₁ in coordinates:", G.render_coordinate(C.one_forms[1, 0]))
print("𝓡¹₂ =", G.render_frame(G.settled(C.curvature[0, 1])))
print("⋆𝓡¹₂ =", G.render_frame(G.settled(star(G, C.curvature[0, 1]))))

# Gaussian curvature 1, so the Ricci forms are ±θ^a depending on the slot
for slot in ("last", "first"):
    data = ricci_data(C, slot)
    print(f"Ricci forms ({slot} slot):", [G.render_frame(G.settled(f)) for f in data.ricci_forms], " R =", se.render(se.settle(data.scalar, G.domain)))
