"""A2 with one black node: compatible, not gsat, and the three Weyl-type groups split.

Run: python3 demos/a2_counterexample.py
"""
from pseudosym.checks import iwasawa_check
from pseudosym.decoration import is_compatible, is_generalized_satake
from pseudosym.lie import full
from pseudosym.notation import parse, parse_decoration
from pseudosym.restricted import gsat_battery, three_groups
from pseudosym.theta import ThetaMap

d = parse_decoration("A2[X=1]")
print("compatible:", bool(is_compatible(d)), " gsat:", is_generalized_satake(d))

g = three_groups(d)
print("|W_bar|, |W(Phi_bar)|, |<s~>| =", g.orders)

# every equivalent formulation of gsat agrees that this one fails
for name, ok in gsat_battery(d).as_dict().items():
    print(f"  {name:<28} {ok}")

e = parse("A2[X=1]")
print("Iwasawa holds:", iwasawa_check(ThetaMap(e, full(e.cartan)), 8)["holds"])
