"""Built-in classification table for type A_n, and a diff against enumeration.

Rows (N = n + 1, nodes labelled 1..n):

    pl      X = {},              tau = id     A_n             n > 1
    alt     X = {1, 3, ..., n},  tau = id     A_{(n-1)/2}     n > 1 odd
    rfl_p   X centred A_{p-1},   tau = flip   (B,C)_{(N-p)/2}  0 <= p <= N, N - p even

with the low cases rfl_0 -> C_{N/2}, rfl_N -> Z0, and for n = 1 only
p in {0, 2} giving A1 and Z0.
"""
from __future__ import annotations

from dataclasses import dataclass

from .catalogue import named
from .decoration import GSAT, Decoration, canonical, enumerate_decorations, orbit_classes
from .restricted import restricted_type


@dataclass(frozen=True)
class TableRow:
    label: str
    n: int
    p: int | None
    decoration: Decoration
    restricted: str

    def key(self) -> tuple:
        return canonical(self.decoration).key()


def _flip(n: int) -> tuple[int, ...]:
    return tuple(n - 1 - i for i in range(n))


def table_typeA(n: int) -> list[TableRow]:
    """The table rows for A_n, one per Aut(A)-orbit."""
    if n < 1:
        raise ValueError("n must be at least 1")
    A = named(f"A{n}")
    N = n + 1
    ident = tuple(range(n))
    if n == 1:
        return [TableRow("rfl_0", 1, 0, Decoration(A, frozenset(), ident), "A1"),
                TableRow("rfl_2", 1, 2, Decoration(A, frozenset({0}), ident), "Z0")]
    rows = [TableRow("pl", n, None, Decoration(A, frozenset(), ident), f"A{n}")]
    if n % 2:
        rows.append(TableRow("alt", n, None, Decoration(A, frozenset(range(0, n, 2)), ident),
                             f"A{(n - 1) // 2}"))
    for p in range(N % 2, N + 1, 2):
        lo = (N - p) // 2  # first node of the centred block, 0-based
        X = frozenset(range(lo, lo + p - 1))
        if p == N:
            kind = "Z0"
        elif p == 0:
            kind = f"C{N // 2}"
        else:
            kind = f"BC{(N - p) // 2}"
        rows.append(TableRow(f"rfl_{p}", n, p, Decoration(A, X, _flip(n)), kind))
    return rows


@dataclass
class TableDiff:
    n: int
    missing: list      # table rows with no enumerated orbit
    extra: list        # enumerated orbits the table lacks
    mismatched: list   # (row, computed type)

    @property
    def ok(self) -> bool:
        return not (self.missing or self.extra or self.mismatched)

    def as_dict(self) -> dict:
        from .notation import render
        return {
            "n": self.n,
            "ok": self.ok,
            "missing": [r.label for r in self.missing],
            "extra": [render(d) for d in self.extra],
            "mismatched": [{"row": r.label, "table": r.restricted, "computed": c}
                           for r, c in self.mismatched],
        }


def diff_typeA(n: int) -> TableDiff:
    """Compare the table with the enumerated generalized Satake orbits of A_n."""
    reps = {d.key(): d for d in orbit_classes(enumerate_decorations(named(f"A{n}"), GSAT))}
    rows = table_typeA(n)
    seen = set()
    missing, mism = [], []
    for r in rows:
        k = r.key()
        seen.add(k)
        if k not in reps:
            missing.append(r)
            continue
        got = restricted_type(reps[k]).name
        if got != r.restricted:
            mism.append((r, got))
    extra = [d for k, d in reps.items() if k not in seen]
    return TableDiff(n, missing, extra, mism)
