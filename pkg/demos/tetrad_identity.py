"""
The tetrad identity on S²
=========================

∂_μq^a_ν + ω^a_{μb}q^b_ν − Γ^ρ_{μν}q^a_ρ vanishes identically.  It is an
identity, not a postulate, and neither half of it vanishes on its own.
"""

import math

from geocalc import build_geometry, levi_civita
from geocalc import symexpr as se
from geocalc.connection import tetrad_identity_check

G = build_geometry(["t", "p"], {"t": (0.2, 2.9), "p": (0.2, 6.0)}, (2, 0), [[1, 0], [0, "sin(t)"]])
rep = tetrad_identity_check(levi_civita(G))

print("identity residual:", {se.render(se.settle(v, G.domain)) for v in rep.residual.flat})

at = {"t": math.pi / 4, "p": 1.0}
for a in range(2):
    for m in range(2):
        for n in range(2):
            dm, dp = se.eval_at(rep.d_minus[a, m, n], at), se.eval_at(rep.d_plus[a, m, n], at)
            if abs(dm) > 1e-12 or abs(dp) > 1e-12:
                print(f"a={a + 1} μ={m + 1} ν={n + 1}:  D⁻ = {dm:+.4f}   D⁺ = {dp:+.4f}")
