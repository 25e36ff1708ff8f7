"""Named finite and affine Cartan matrices, type labels and type recognition.

Affine families use the hat notation (Â, B̂, B̂∨, Ĉ, Ĉ∨, Ĉ′, D̂, Ê, F̂, F̂∨,
Ĝ, Ĝ∨) and carry the corresponding Kac alias (A_n^(1), A_{2n-1}^(2), ...).
Finite families follow Bourbaki numbering except that G2 has node 1 long.
The affine node always gets label 0 and index 0.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .cartan import CartanMatrix, Matrix, components, isomorphisms, kind_of, validate_gcm
from .errors import ParseError

FINITE = "finite"
AFFINE = "affine"
INDEFINITE = "indefinite"

_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


@dataclass(frozen=True, order=True)
class ComponentType:
    """One connected piece of a type label, e.g. ('C', 2, affine, 'dual') = Ĉ∨2."""

    family: str
    rank: int
    affine: bool = False
    variant: str = ""  # "", "dual" or "prime"

    @property
    def name(self) -> str:
        if not self.affine:
            return f"{self.family}{self.rank}"
        mod = {"": "", "dual": "v", "prime": "p"}[self.variant]
        return f"{self.family}{mod}hat{self.rank}"

    @property
    def pretty(self) -> str:
        if not self.affine:
            return f"{self.family}{str(self.rank).translate(_SUB)}"
        mod = {"": "", "dual": "∨", "prime": "′"}[self.variant]
        return f"{self.family}̂{mod}{str(self.rank).translate(_SUB)}"

    @property
    def kac(self) -> str:
        n, f = self.rank, self.family
        if not self.affine:
            return f"{f}_{n}"
        if self.variant == "":
            return f"{f}_{n}^(1)"
        if self.variant == "prime":
            return f"A_{2 * n}^(2)"
        return {"B": f"A_{2 * n - 1}^(2)", "C": f"D_{n + 1}^(2)", "F": "E_6^(2)", "G": "D_4^(3)"}[f]

    @property
    def size(self) -> int:
        return self.rank + 1 if self.affine else self.rank


@dataclass(frozen=True)
class LieTypeLabel:
    """Type of a node subset: kind plus the sorted product of its components."""

    kind: str
    components: tuple = ()
    raw: tuple = ()  # for indefinite components: their principal submatrices

    @property
    def name(self) -> str:
        parts = [c.name for c in self.components] + [f"indef{len(r)}" for r in self.raw]
        return "x".join(parts) if parts else "Z0"

    @property
    def pretty(self) -> str:
        parts = [c.pretty for c in self.components] + [f"indef{len(r)}" for r in self.raw]
        return "×".join(parts) if parts else "Z₀"

    @property
    def kac(self) -> str:
        parts = [c.kac for c in self.components] + ["?"] * len(self.raw)
        return " x ".join(parts) if parts else "Z_0"

    def __str__(self) -> str:
        return self.name

    def is_a(self, name: str) -> bool:
        """Compare with a written type name, modulo low-rank coincidences."""
        return self.name == canonical_name(name)


# ---------------------------------------------------------------- builders


def _chain(n: int) -> list[list[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def _bond(a, i, j, long_row: int, short_row: int) -> None:
    """Set a_ij, a_ji for a bond with node i longer than node j."""
    a[i][j] = long_row
    a[j][i] = short_row


def finite_entries(family: str, n: int) -> list[list[int]]:
    f = family.upper()
    if f == "A" and n >= 1:
        return _chain(n)
    if f == "B" and n >= 2:
        a = _chain(n)
        _bond(a, n - 2, n - 1, -1, -2)  # alpha_n short
        return a
    if f == "C" and n >= 2:
        a = _chain(n)
        _bond(a, n - 1, n - 2, -1, -2)  # alpha_n long
        return a
    if f == "D" and n >= 3:
        a = _chain(n)
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
        return a
    if f == "E" and n in (6, 7, 8):
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            a[i][i] = 2
        edges = [(1, 3), (2, 4), (3, 4)] + [(k, k + 1) for k in range(4, n)]
        for i, j in edges:
            a[i - 1][j - 1] = a[j - 1][i - 1] = -1
        return a
    if f == "F" and n == 4:
        a = _chain(4)
        _bond(a, 1, 2, -1, -2)  # alpha_1, alpha_2 long
        return a
    if f == "G" and n == 2:
        return [[2, -1], [-3, 2]]  # alpha_1 long
    raise ValueError(f"no finite type {family}{n}")


def _extend(fin: list[list[int]], attach: dict[int, tuple[int, int]]) -> list[list[int]]:
    """Prepend node 0 with a_{0j}, a_{j0} given by attach[j] = (a_0j, a_j0)."""
    n = len(fin)
    a = [[0] * (n + 1) for _ in range(n + 1)]
    a[0][0] = 2
    for i in range(n):
        for j in range(n):
            a[i + 1][j + 1] = fin[i][j]
    for j, (x, y) in attach.items():
        a[0][j] = x
        a[j][0] = y
    return a


def affine_entries(family: str, n: int, variant: str = "") -> list[list[int]]:
    """Affine matrix of index n (n+1 nodes), node 0 the affinizing node."""
    f = family.upper()
    if variant == "":
        if f == "A" and n == 1:
            return [[2, -2], [-2, 2]]
        if f == "A" and n >= 2:
            return _extend(finite_entries("A", n), {1: (-1, -1), n: (-1, -1)})
        if f == "B" and n >= 3:
            return _extend(finite_entries("B", n), {2: (-1, -1)})
        if f == "C" and n >= 2:
            return _extend(finite_entries("C", n), {1: (-1, -2)})  # node 0 long
        if f == "D" and n >= 4:
            return _extend(finite_entries("D", n), {2: (-1, -1)})
        if f == "E" and n in (6, 7, 8):
            return _extend(finite_entries("E", n), {{6: 2, 7: 1, 8: 8}[n]: (-1, -1)})
        if f == "F" and n == 4:
            return _extend(finite_entries("F", 4), {1: (-1, -1)})
        if f == "G" and n == 2:
            return _extend(finite_entries("G", 2), {1: (-1, -1)})
    elif variant == "dual":
        if f == "B" and n >= 3:
            return _extend(finite_entries("C", n), {2: (-1, -1)})
        if f == "C" and n >= 2:
            return _extend(finite_entries("B", n), {1: (-2, -1)})  # node 0 short
        if f == "F" and n == 4:
            return _extend(finite_entries("F", 4), {4: (-1, -1)})
        if f == "G" and n == 2:
            return _extend(finite_entries("G", 2), {2: (-1, -1)})
    elif variant == "prime":
        if f == "C" and n == 1:
            return [[2, -1], [-4, 2]]
        if f == "C" and n >= 2:
            a = _chain(n + 1)
            _bond(a, 0, 1, -1, -2)
            _bond(a, n - 1, n, -1, -2)
            return a
    raise ValueError(f"no affine type {family}{variant}hat{n}")


def build(ct: ComponentType) -> CartanMatrix:
    if ct.affine:
        ent = affine_entries(ct.family, ct.rank, ct.variant)
        labels = tuple(range(ct.rank + 1))
    else:
        ent = finite_entries(ct.family, ct.rank)
        labels = tuple(range(1, ct.rank + 1))
    return validate_gcm(ent, labels=labels, name=ct.name)


# ------------------------------------------------------- canonical catalogue


def _canonical_finite(m: int) -> list[ComponentType]:
    out = [ComponentType("A", m)]
    if m >= 3:
        out.append(ComponentType("B", m))
    if m >= 2:
        out.append(ComponentType("C", m))
    if m >= 4:
        out.append(ComponentType("D", m))
    if m in (6, 7, 8):
        out.append(ComponentType("E", m))
    if m == 4:
        out.append(ComponentType("F", 4))
    if m == 2:
        out.append(ComponentType("G", 2))
    return out


def _canonical_affine(m: int) -> list[ComponentType]:
    n = m - 1
    if n < 1:
        return []
    out = [ComponentType("A", n, True), ComponentType("C", n, True, "prime")]
    if n >= 3:
        out += [ComponentType("B", n, True), ComponentType("B", n, True, "dual")]
    if n >= 2:
        out += [ComponentType("C", n, True), ComponentType("C", n, True, "dual")]
    if n >= 4:
        out.append(ComponentType("D", n, True))
    if n in (6, 7, 8):
        out.append(ComponentType("E", n, True))
    if n == 4:
        out += [ComponentType("F", 4, True), ComponentType("F", 4, True, "dual")]
    if n == 2:
        out += [ComponentType("G", 2, True), ComponentType("G", 2, True, "dual")]
    return out


@lru_cache(maxsize=None)
def _catalogue_matrix(ct: ComponentType) -> Matrix:
    return build(ct).entries


@lru_cache(maxsize=None)
def recognize_connected(entries: Matrix, kind: str) -> ComponentType | None:
    m = len(entries)
    cands = _canonical_finite(m) if kind == FINITE else _canonical_affine(m) if kind == AFFINE else []
    for ct in cands:
        if isomorphisms(entries, _catalogue_matrix(ct), first_only=True):
            return ct
    return None


def classify_type(A: CartanMatrix, J: Iterable[int] | None = None) -> LieTypeLabel:
    """Classify the node subset J (default: all nodes).

    Components are classified independently; the overall kind is the worst
    kind among components (finite < affine < indefinite).
    """
    J = list(A.nodes) if J is None else sorted(set(J))
    comps, raw, kinds = [], [], []
    for c in components(A, J):
        k = kind_of(A, c)
        kinds.append(k)
        sub = A.principal(c)
        ct = recognize_connected(sub, k) if k != INDEFINITE else None
        if ct is None:
            raw.append(sub)
        else:
            comps.append(ct)
    order = [FINITE, AFFINE, INDEFINITE]
    kind = max(kinds, key=order.index) if kinds else FINITE
    return LieTypeLabel(kind, tuple(sorted(comps)), tuple(raw))


def component_type(A: CartanMatrix, J: Iterable[int]) -> ComponentType | None:
    """The recognized type of a connected subset (None if indefinite)."""
    lab = classify_type(A, J)
    if len(lab.components) == 1 and not lab.raw:
        return lab.components[0]
    return None


# ------------------------------------------------------------------ names

_ALIASES_FIN = {
    ("B", 1): ("A", 1), ("C", 1): ("A", 1), ("B", 2): ("C", 2), ("D", 3): ("A", 3),
}
_ALIASES_AFF = {
    ("B", 1, ""): ("A", 1, ""), ("B", 1, "dual"): ("A", 1, ""), ("C", 1, ""): ("A", 1, ""),
    ("C", 1, "dual"): ("A", 1, ""), ("B", 2, ""): ("C", 2, ""), ("B", 2, "dual"): ("C", 2, "dual"),
    ("D", 3, ""): ("A", 3, ""),
}

_NAME_RE = re.compile(r"^([A-Ga-g])(v?)(p?)(hat)?(\d+)$")
_KAC_RE = re.compile(r"^([A-Ga-g])_?(\d+)\^?\((\d)\)$")


def parse_component(name: str) -> ComponentType:
    """Parse 'G2', 'Ahat2', 'Gvhat2', 'Cphat1' or Kac 'D4^(3)' (not canonicalized)."""
    s = name.strip()
    m = _NAME_RE.match(s)
    if m:
        fam, v, p, hat, n = m.groups()
        fam, n = fam.upper(), int(n)
        if v and p:
            raise ParseError(f"bad type name {name!r}")
        if not hat:
            if v or p:
                raise ParseError(f"bad type name {name!r}")
            return ComponentType(fam, n)
        return ComponentType(fam, n, True, "dual" if v else "prime" if p else "")
    m = _KAC_RE.match(s)
    if m:
        fam, n, k = m.group(1).upper(), int(m.group(2)), int(m.group(3))
        if k == 1:
            return ComponentType(fam, n, True)
        if k == 2 and fam == "A":
            if n % 2 == 0:
                return ComponentType("C", n // 2, True, "prime")
            return ComponentType("B", (n + 1) // 2, True, "dual")
        if k == 2 and fam == "D":
            return ComponentType("C", n - 1, True, "dual")
        if k == 2 and fam == "E" and n == 6:
            return ComponentType("F", 4, True, "dual")
        if k == 3 and fam == "D" and n == 4:
            return ComponentType("G", 2, True, "dual")
    raise ParseError(f"unknown type name {name!r}")


def canonical_component(ct: ComponentType) -> ComponentType:
    if ct.affine:
        key = _ALIASES_AFF.get((ct.family, ct.rank, ct.variant))
        return ComponentType(key[0], key[1], True, key[2]) if key else ct
    key = _ALIASES_FIN.get((ct.family, ct.rank))
    return ComponentType(*key) if key else ct


def canonical_name(name: str) -> str:
    parts = [p for p in name.replace("×", "x").split("x") if p]
    if name in ("Z0", "") or not parts:
        return "Z0"
    out = []
    for p in parts:
        if p in ("Z0", "A0", "A-1", "B0", "C0", "D0", "D1"):
            continue
        if p == "D2":
            out += [ComponentType("A", 1), ComponentType("A", 1)]
            continue
        out.append(canonical_component(parse_component(p)))
    return "x".join(c.name for c in sorted(out)) or "Z0"


def named(name: str) -> CartanMatrix:
    """Cartan matrix for a catalogue name such as 'G2', 'Gvhat2' or 'D4^(3)'."""
    return build(parse_component(name))
