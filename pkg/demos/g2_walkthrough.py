"""G2 with X = {1}: a generalized Satake diagram that is not Satake.

Run: python3 demos/g2_walkthrough.py
"""
from pseudosym.checks import serre_deviation
from pseudosym.decoration import (EnrichedDecoration, is_generalized_satake, is_satake,
                                  special_orbits)
from pseudosym.lie import build
from pseudosym.notation import parse_decoration, render
from pseudosym.restricted import restricted_system, restricted_type, three_groups
from pseudosym import scalars
from pseudosym.theta import ThetaMap

d = parse_decoration("G2[X=1]")
print("decoration      ", render(d))
print("gsat / Satake   ", is_generalized_satake(d), "/", is_satake(d))
print("odd nodes       ", sorted(i + 1 for i in special_orbits(d).odd_nodes))

# node 2 survives; its restricted root is half of alpha_1 plus alpha_2
rs = restricted_system(d)
print("simple restricted root (coords in alpha_1, alpha_2):", ", ".join(map(str, rs.simple[1])))
print("restricted roots (multiples of alpha_bar_2):", sorted(r[0] for r in rs.roots))
print("type            ", restricted_type(d).pretty)
print("group orders    ", three_groups(d).orders)

# the Serre-type relation between b_2 and e_1 picks up a constant -18
th = ThetaMap(EnrichedDecoration(d, (scalars.ONE,) * 2), build(d.cartan, 8))
rep = serre_deviation(th, 1, 0)
print("Serre case      ", rep.case, "matches closed form:", bool(rep.match))
print("deviation is -18 e_1:", rep.computed == th.work.e(0).scale(-18))
