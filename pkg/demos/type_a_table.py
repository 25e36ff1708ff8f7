"""The type A table of gsat diagrams, checked against brute-force enumeration.

Run: python3 demos/type_a_table.py [n_max]
"""
import sys

from pseudosym.notation import render
from pseudosym.restricted import restricted_type
from pseudosym.table import diff_typeA, table_typeA

n_max = int(sys.argv[1]) if len(sys.argv) > 1 else 5
for n in range(1, n_max + 1):
    print(f"A{n}  (matches enumeration: {diff_typeA(n).ok})")
    for row in table_typeA(n):
        computed = restricted_type(row.decoration).pretty
        print(f"    {row.label:<6} {render(row.decoration):<28} {row.restricted:<5} computed {computed}")
