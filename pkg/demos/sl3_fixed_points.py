"""Fixed points of theta on sl3 for the diagram swap, as chi varies.

For chi = 1 theta is an involution with a 4-dimensional fixed algebra.
Once chi(alpha_1)^2 != 1 it shrinks to span{h1 - h2, [f1, f2] - [e1, e2]}.

Run: python3 demos/sl3_fixed_points.py
"""
from pseudosym.checks import fixed_points, same_span
from pseudosym.lie import full
from pseudosym.notation import parse
from pseudosym.theta import ThetaMap

for chi in ["1:1,2:1", "1:-1,2:-1", "1:2,2:1/2", "1:3,2:1/3", "1:0|1,2:0|-1"]:
    e = parse(f"A2[tau=1:2; chi={chi}]")
    th = ThetaMap(e, full(e.cartan))
    g = th.work
    fp = fixed_points(th)
    target = [g.h(0) - g.h(1), g.bracket(g.f(0), g.f(1)) - g.bracket(g.e(0), g.e(1))]
    print(f"chi={chi:<14} involutive={th.is_involutive()!s:<5} dim={len(fp)}"
          f"  equals span: {same_span(g, fp, target)}")
