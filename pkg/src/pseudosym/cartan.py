"""Generalized Cartan matrices, symmetrizers, Dynkin structure, automorphisms.

Nodes are addressed internally by 0-based indices ``0..n-1``.  The user-facing
``labels`` are kept alongside (1-based for finite families, 0-based for affine
ones) and only matter for parsing and printing.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from .errors import Decomposable, NotGCM, NotSymmetrizable

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class CartanMatrix:
    """An indecomposable symmetrizable generalized Cartan matrix.

    ``entries[i][j]`` is a_ij = alpha_j(h_i).  ``epsilon`` is the coprime
    positive symmetrizer with eps_i a_ij = eps_j a_ji.
    """

    entries: Matrix
    epsilon: tuple[int, ...]
    labels: tuple[int, ...]
    name: str | None = None
    _array: np.ndarray = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.int64).reshape(len(self.entries), len(self.entries))
        arr.setflags(write=False)
        object.__setattr__(self, "_array", arr)

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def nodes(self) -> range:
        return range(self.n)

    @property
    def array(self) -> np.ndarray:
        return self._array

    def a(self, i: int, j: int) -> int:
        return self.entries[i][j]

    @property
    def bilinear(self) -> Matrix:
        """Symmetric matrix B with B_ij = (alpha_i, alpha_j) = eps_i a_ij."""
        return bilinear_form(self)

    @property
    def B(self) -> np.ndarray:
        return np.array(self.bilinear, dtype=np.int64)

    def form(self, u: Sequence, v: Sequence):
        """(u, v) for vectors given in simple-root coordinates (exact)."""
        B = self.bilinear
        total = 0
        for i, ui in enumerate(u):
            if ui:
                row = B[i]
                total += ui * sum(row[j] * vj for j, vj in enumerate(v) if vj)
        return total

    def coroot_pairing(self, lam: Sequence, alpha: Sequence) -> Fraction:
        """lam(alpha^vee) = 2 (lam, alpha) / (alpha, alpha)."""
        return Fraction(2 * self.form(lam, alpha)) / Fraction(self.form(alpha, alpha))

    def pairing_h(self, lam: Sequence, i: int):
        """lam(h_i) = sum_j lam_j a_ij."""
        row = self.entries[i]
        return sum(row[j] * c for j, c in enumerate(lam) if c)

    def label(self, i: int) -> int:
        return self.labels[i]

    def index(self, label: int) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no node labelled {label}") from None

    def principal(self, J: Iterable[int]) -> Matrix:
        J = sorted(J)
        return tuple(tuple(self.entries[i][j] for j in J) for i in J)

    def relabel(self, perm: Sequence[int]) -> "CartanMatrix":
        """The matrix with node k of the result equal to node perm[k] of self."""
        ent = tuple(tuple(self.entries[perm[i]][perm[j]] for j in range(self.n)) for i in range(self.n))
        return validate_gcm(ent, labels=self.labels, allow_decomposable=True)


def _as_matrix(entries) -> Matrix:
    try:
        rows = [list(r) for r in entries]
    except TypeError:
        raise NotGCM("entries must be a square integer matrix") from None
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise NotGCM("entries must be a non-empty square matrix")
    out = []
    for r in rows:
        new = []
        for x in r:
            if isinstance(x, bool) or int(x) != x:
                raise NotGCM(f"non-integer entry {x!r}")
            new.append(int(x))
        out.append(tuple(new))
    return tuple(out)


def check_gcm(entries: Matrix) -> None:
    n = len(entries)
    for i in range(n):
        if entries[i][i] != 2:
            raise NotGCM(f"diagonal entry a[{i}][{i}] = {entries[i][i]} != 2")
        for j in range(n):
            if i == j:
                continue
            if entries[i][j] > 0:
                raise NotGCM(f"positive off-diagonal entry a[{i}][{j}] = {entries[i][j]}")
            if (entries[i][j] == 0) != (entries[j][i] == 0):
                raise NotGCM(f"zero pattern asymmetric at ({i},{j})")


def adjacency(entries: Matrix) -> list[list[int]]:
    n = len(entries)
    return [[j for j in range(n) if j != i and entries[i][j] != 0] for i in range(n)]


def symmetrizer(entries: Matrix) -> tuple[int, ...]:
    """Coprime positive eps with eps_i a_ij = eps_j a_ji (per connected component).

    Ratios are propagated along a BFS spanning forest and every remaining edge
    is checked for consistency.
    """
    n = len(entries)
    adj = adjacency(entries)
    eps: list[Fraction | None] = [None] * n
    for root in range(n):
        if eps[root] is not None:
            continue
        eps[root] = Fraction(1)
        comp = [root]
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in adj[i]:
                if eps[j] is None:
                    eps[j] = eps[i] * entries[i][j] / entries[j][i]
                    comp.append(j)
                    queue.append(j)
        # normalise the component to coprime integers
        den = lcm(*(eps[i].denominator for i in comp))
        ints = [int(eps[i] * den) for i in comp]
        g = gcd(*ints)
        for i, v in zip(comp, ints):
            eps[i] = Fraction(v // g)
    for i in range(n):
        for j in adj[i]:
            if eps[i] * entries[i][j] != eps[j] * entries[j][i]:
                raise NotSymmetrizable(f"inconsistent symmetrizer around edge ({i},{j})")
    return tuple(int(e) for e in eps)


def components_of(entries: Matrix, J: Iterable[int]) -> list[list[int]]:
    J = sorted(set(J))
    Jset = set(J)
    seen: set[int] = set()
    parts = []
    for s in J:
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            i = stack.pop()
            for j in Jset:
                if j not in seen and entries[i][j] != 0:
                    seen.add(j)
                    comp.append(j)
                    stack.append(j)
        parts.append(sorted(comp))
    return parts


def validate_gcm(entries, labels: Sequence[int] | None = None, *, name: str | None = None,
                 allow_decomposable: bool = False) -> CartanMatrix:
    """Validate ``entries`` and attach the unique coprime symmetrizer.

    Decomposable input is rejected unless ``allow_decomposable`` is set (the
    relaxed entry point used for products such as A1xA1).
    """
    ent = _as_matrix(entries)
    check_gcm(ent)
    n = len(ent)
    if not allow_decomposable and len(components_of(ent, range(n))) > 1:
        raise Decomposable("the index set is not connected")
    eps = symmetrizer(ent)
    if labels is None:
        labels = tuple(range(1, n + 1))
    labels = tuple(int(x) for x in labels)
    if len(labels) != n or len(set(labels)) != n:
        raise ValueError("labels must be n distinct integers")
    return CartanMatrix(ent, eps, labels, name)


@lru_cache(maxsize=None)
def _bilinear(entries: Matrix, eps: tuple[int, ...]) -> Matrix:
    n = len(entries)
    return tuple(tuple(eps[i] * entries[i][j] for j in range(n)) for i in range(n))


def bilinear_form(A: CartanMatrix) -> Matrix:
    return _bilinear(A.entries, A.epsilon)


def components(A: CartanMatrix, J: Iterable[int]) -> list[list[int]]:
    """Connected components of J under the nonzero-entry adjacency."""
    return components_of(A.entries, J)


def perp(A: CartanMatrix, J: Iterable[int]) -> frozenset[int]:
    """J^perp = {i : a_ij = 0 for all j in J}."""
    J = list(J)
    return frozenset(i for i in A.nodes if all(A.entries[i][j] == 0 for j in J))


def dynkin_edges(A: CartanMatrix) -> list[tuple[int, int, int]]:
    """Edges (i, j, m): m = max(|a_ij|, |a_ji|) lines, oriented i -> j.

    Multiple edges point to the node with the smaller symmetrizer value; for
    equal values (simple or Â1-type bonds) the pair is listed with i < j.
    """
    out = []
    eps = A.epsilon
    for i in A.nodes:
        for j in A.nodes:
            if i < j and A.entries[i][j] != 0:
                m = max(-A.entries[i][j], -A.entries[j][i])
                if eps[i] < eps[j]:
                    out.append((j, i, m))
                else:
                    out.append((i, j, m))
    return out


def coxeter_matrix(A: CartanMatrix) -> list[list[float]]:
    """Coxeter matrix of W: m_ij from a_ij a_ji (inf when the product is >= 4)."""
    table = {0: 2, 1: 3, 2: 4, 3: 6}
    out = []
    for i in A.nodes:
        row = []
        for j in A.nodes:
            if i == j:
                row.append(1)
            else:
                row.append(table.get(A.entries[i][j] * A.entries[j][i], float("inf")))
        out.append(row)
    return out


def _signature(entries: Matrix, i: int) -> tuple:
    n = len(entries)
    return tuple(sorted((entries[i][j], entries[j][i]) for j in range(n) if j != i))


def isomorphisms(src: Matrix, dst: Matrix, first_only: bool = False) -> list[tuple[int, ...]]:
    """Permutations p with dst[p[i]][p[j]] == src[i][j] for all i, j.

    Backtracking over nodes of ``src`` in BFS order; candidates are pruned by
    the multiset of incident (a_ij, a_ji) pairs.
    """
    n = len(src)
    if len(dst) != n:
        return []
    sig_s = [_signature(src, i) for i in range(n)]
    sig_d = [_signature(dst, i) for i in range(n)]
    if sorted(sig_s) != sorted(sig_d):
        return []
    order: list[int] = []
    for comp in components_of(src, range(n)):
        seen = {comp[0]}
        queue = deque([comp[0]])
        while queue:
            i = queue.popleft()
            order.append(i)
            for j in range(n):
                if j not in seen and src[i][j] != 0:
                    seen.add(j)
                    queue.append(j)
    found: list[tuple[int, ...]] = []
    img = [-1] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            found.append(tuple(img))
            return first_only
        i = order[k]
        for c in range(n):
            if used[c] or sig_d[c] != sig_s[i]:
                continue
            ok = True
            for kk in range(k):
                j = order[kk]
                if dst[c][img[j]] != src[i][j] or dst[img[j]][c] != src[j][i]:
                    ok = False
                    break
            if not ok:
                continue
            img[i] = c
            used[c] = True
            if extend(k + 1):
                return True
            used[c] = False
            img[i] = -1
        return False

    extend(0)
    return found


@lru_cache(maxsize=None)
def _automorphisms(entries: Matrix) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(isomorphisms(entries, entries)))


def diagram_automorphisms(A: CartanMatrix) -> list[tuple[int, ...]]:
    """Aut(A): all node permutations tau with a_{tau(i) tau(j)} = a_ij."""
    return list(_automorphisms(A.entries))


@lru_cache(maxsize=None)
def det(rows: Matrix) -> int:
    if not rows:
        return 1
    return int(DomainMatrix([[ZZ(x) for x in r] for r in rows], (len(rows), len(rows)), ZZ).det())


def is_positive_definite(sym: Matrix) -> bool:
    """Sylvester's criterion on a symmetric integer matrix."""
    return all(det(tuple(r[:k] for r in sym[:k])) > 0 for k in range(1, len(sym) + 1))


def submatrix(M: Matrix, J: Sequence[int]) -> Matrix:
    return tuple(tuple(M[i][j] for j in J) for i in J)


def kind_of(A: CartanMatrix, J: Iterable[int]) -> str:
    """'finite', 'affine' or 'indefinite' for a connected subset J."""
    J = sorted(J)
    if not J:
        return "finite"
    return _kind(submatrix(bilinear_form(A), J))


@lru_cache(maxsize=None)
def _kind(sym: Matrix) -> str:
    if is_positive_definite(sym):
        return "finite"
    m = len(sym)
    if det(sym) == 0 and all(
        is_positive_definite(submatrix(sym, [j for j in range(m) if j != k])) for k in range(m)
    ):
        return "affine"
    return "indefinite"


def is_finite_type(A: CartanMatrix, J: Iterable[int]) -> bool:
    return all(kind_of(A, c) == "finite" for c in components(A, J))


def height(v: Sequence) -> int:
    return sum(v)
