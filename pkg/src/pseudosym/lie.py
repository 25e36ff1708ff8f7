"""A height-bounded exact model of the derived Kac-Moody algebra g'.

Degrees are signed integer tuples: ``-beta`` for n^-, ``0`` for h', ``+beta``
for n^+.  The basis of g_{-beta} consists of left-normed words
[f_j1, [f_j2, [..., f_jk]]] picked greedily (lex-least first) among brackets
[f_j, b] with b a basis vector one level down.  Two elements of degree -beta
agree in g iff all their e-derivatives agree, so each candidate is encoded by
its "signature" ([e_i, x])_i and the basis is a maximal independent set of
signatures.  This is the contravariant-form quotient without ever writing the
form down; the Gram matrices are still computed, for checking.

g_{+beta} uses the mirrored words e~_w = [e_j1, [e_j2, ...]], so that the
Chevalley involution reads omega(f_w) = (-1)^ht(w) e~_w.  With that choice
ad(f_j) on n^+ and ad(e_i) on n^- share the same matrices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from . import scalars
from .cartan import CartanMatrix, is_finite_type
from .errors import TruncationOverflow
from .scalars import ONE, ZERO
from .weyl import is_root, positive_roots, unit

Degree = tuple


def _neg(v) -> tuple:
    return tuple(-x for x in v)


def _add(u, v) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def _ht(v) -> int:
    return sum(v)


def _sign(v) -> int:
    """+1 for a positive degree, -1 for a negative one, 0 for zero."""
    s = sum(v)
    return (s > 0) - (s < 0)


@dataclass(frozen=True)
class Elem:
    """Degree -> coordinate tuple over Q(i).  ``flag`` marks lost terms."""

    parts: dict = field(default_factory=dict)
    flag: bool = False

    def __post_init__(self):
        clean = {d: tuple(c) for d, c in self.parts.items() if any(c)}
        object.__setattr__(self, "parts", clean)

    def is_zero(self) -> bool:
        self._require_exact()
        return not self.parts

    def _require_exact(self):
        if self.flag:
            raise TruncationOverflow("element lost terms beyond the truncation window")

    def __add__(self, other: "Elem") -> "Elem":
        out = dict(self.parts)
        for d, c in other.parts.items():
            if d in out:
                out[d] = tuple(a + b for a, b in zip(out[d], c))
            else:
                out[d] = c
        return Elem(out, self.flag or other.flag)

    def scale(self, s) -> "Elem":
        s = scalars.scalar(s)
        if not s:
            return Elem({}, self.flag)
        return Elem({d: tuple(x * s for x in c) for d, c in self.parts.items()}, self.flag)

    def __rmul__(self, s) -> "Elem":
        return self.scale(s)

    def __neg__(self) -> "Elem":
        return self.scale(-ONE)

    def __sub__(self, other: "Elem") -> "Elem":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Elem):
            return NotImplemented
        self._require_exact()
        other._require_exact()
        return self.parts == other.parts

    __hash__ = None

    def degrees(self) -> list:
        return sorted(self.parts, key=lambda d: (_ht(d), d))

    def component(self, d) -> Elem:
        d = tuple(d)
        return Elem({d: self.parts[d]} if d in self.parts else {}, self.flag)

    def items(self):
        """(degree, index, coefficient) for every nonzero coordinate."""
        for d in self.degrees():
            for k, c in enumerate(self.parts[d]):
                if c:
                    yield d, k, c

    def to_json(self) -> list:
        return [{"degree": list(d), "coords": [scalars.to_json(c) for c in self.parts[d]]}
                for d in self.degrees()]


def _matvec(M, v) -> tuple:
    """Exact rational matrix (list of rows) times a Q(i) coordinate tuple."""
    return tuple(sum((v[c] * row[c] for c in range(len(v)) if v[c] and row[c]), ZERO) for row in M)


def _rref(rows: list[list], ncols: int):
    if not rows:
        return [], ()
    dm = DomainMatrix([list(r) for r in rows], (len(rows), ncols), QQ)
    R, piv = dm.rref()
    return R.to_list(), piv


class TruncatedAlgebra:
    """g' realized on all degrees of height at most H (both signs).

    Attributes:
      words[beta]  - basis words of g_{-beta} (tuples of node indices)
      F[(j, beta)] - matrix of ad(f_j): g_{-beta} -> g_{-beta-alpha_j} (beta may be 0)
      E[(i, beta)] - matrix of ad(e_i): g_{-beta} -> g_{-beta+alpha_i} (into h' at height 1)
      gram[beta]   - contravariant Gram matrix on words[beta]
    """

    def __init__(self, A: CartanMatrix, H: int):
        if H < 1:
            raise ValueError("height bound must be at least 1")
        self.cartan = A
        self.n = A.n
        self.zero_degree = (0,) * A.n
        self.words: dict = {}
        self.pivots: dict = {}
        self.F: dict = {}
        self.E: dict = {}
        self.gram: dict = {}
        self.levels: list[list] = [[self.zero_degree]]
        self.H = 0
        self.complete = False
        self._memo: dict = {}
        self._grow(H)

    # ------------------------------------------------------------ building

    def _grow(self, H: int) -> None:
        A, n = self.cartan, self.n
        if self.H == 0:
            for j in range(n):
                b = unit(n, j)
                self.words[b] = [(j,)]
                self.pivots[b] = [(j, None)]
                self.E[(j, b)] = [[QQ(1) if r == j else QQ(0)] for r in range(n)]
                self.F[(j, self.zero_degree)] = [[QQ(A.entries[i][j]) for i in range(n)]]
                self.gram[b] = [[QQ(1, A.epsilon[j])]]
            self.levels.append([unit(n, j) for j in range(n)])
            self.H = 1
        while self.H < H and not self.complete:
            self._next_level()

    def _next_level(self) -> None:
        n = self.n
        ell = self.H + 1
        cands: dict = {}
        for gamma in self.levels[-1]:
            for j in range(n):
                beta = _add(gamma, unit(n, j))
                for k, w in enumerate(self.words[gamma]):
                    cands.setdefault(beta, []).append(((j,) + w, j, gamma, k))
        new_level = []
        for beta in sorted(cands, key=lambda b: _neg(b)):
            cl = sorted(cands[beta])
            blocks = [i for i in range(n) if beta[i] > 0 and self.dim(_add(beta, _neg(unit(n, i))))]
            sizes = [self.dim(_add(beta, _neg(unit(n, i)))) for i in blocks]
            sigs = [self._signature(j, gamma, k, blocks) for _, j, gamma, k in cl]
            nrows = sum(sizes)
            if nrows == 0:
                continue
            rows = [[sigs[c][r] for c in range(len(cl))] for r in range(nrows)]
            R, piv = _rref(rows, len(cl))
            if not piv:
                continue
            rank = len(piv)
            self.words[beta] = [cl[p][0] for p in piv]
            self.pivots[beta] = [(cl[p][1], cl[p][3]) for p in piv]
            for c, (_, j, gamma, k) in enumerate(cl):
                M = self.F.setdefault((j, gamma), [[QQ(0)] * self.dim(gamma) for _ in range(rank)])
                for r in range(rank):
                    M[r][k] = R[r][c]
            off = 0
            for i, sz in zip(blocks, sizes):
                self.E[(i, beta)] = [[sigs[p][off + r] for p in piv] for r in range(sz)]
                off += sz
            new_level.append(beta)
        for beta in new_level:
            self.gram[beta] = self._gram(beta)
        self.H = ell
        if not new_level:
            self.complete = True
        else:
            self.levels.append(new_level)

    def _signature(self, j, gamma, k, blocks) -> list:
        """Coordinates of ([e_i, [f_j, b_k]])_{i in blocks}, b_k in g_{-gamma}."""
        A, n = self.cartan, self.n
        out = []
        for i in blocks:
            delta = _add(_add(gamma, unit(n, j)), _neg(unit(n, i)))
            vec = [QQ(0)] * self.dim(delta)
            if i == j:
                vec[k] -= QQ(A.pairing_h(gamma, i))
            lower = _add(gamma, _neg(unit(n, i)))
            if min(lower) >= 0 and (i, gamma) in self.E:
                col = [row[k] for row in self.E[(i, gamma)]]
                Fm = self.F.get((j, lower))
                if Fm is not None:
                    for r, row in enumerate(Fm):
                        vec[r] += sum((row[c] * col[c] for c in range(len(col))), QQ(0))
            out.extend(vec)
        return out

    def _gram(self, beta) -> list:
        """<[f_j, x], y> = <x, [e_j, y]>, starting from <f_i, f_i> = 1/eps_i."""
        n = self.n
        d = self.dim(beta)
        G = [[QQ(0)] * d for _ in range(d)]
        for p, (j, k) in enumerate(self.pivots[beta]):
            gamma = _add(beta, _neg(unit(n, j)))
            Gg = self.gram[gamma]
            Ej = self.E[(j, beta)]
            for q in range(d):
                G[p][q] = sum((Gg[k][r] * Ej[r][q] for r in range(len(Ej))), QQ(0))
        return G

    # ------------------------------------------------------------- queries

    def dim(self, beta) -> int:
        """dim g_{-beta} for beta in Q^+ (h' when beta = 0)."""
        beta = tuple(beta)
        if beta == self.zero_degree:
            return self.n
        if min(beta) < 0:
            return 0
        return len(self.words.get(beta, ()))

    def dim_degree(self, lam) -> int:
        lam = tuple(lam)
        return self.dim(_neg(lam) if _sign(lam) < 0 else lam)

    def degrees(self, sign: int = -1) -> list:
        """Nonzero degrees in the window, most negative first for sign=-1."""
        pos = [b for b in self.words if self.dim(b)]
        pos.sort(key=lambda b: (_ht(b), b))
        if sign < 0:
            return [_neg(b) for b in reversed(pos)]
        return pos

    def all_degrees(self) -> list:
        return self.degrees(-1) + [self.zero_degree] + self.degrees(+1)

    def total_dim(self) -> int:
        return sum(self.dim_degree(d) for d in self.all_degrees())

    def word(self, lam, k) -> tuple:
        lam = tuple(lam)
        return self.words[lam if _sign(lam) > 0 else _neg(lam)][k]

    def in_window(self, lam) -> bool:
        return abs(_ht(lam)) <= self.H or self.complete

    def gram_matrix(self, beta) -> list:
        return self.gram[tuple(beta)]

    def gram_rank(self, beta) -> int:
        G = self.gram[tuple(beta)]
        _, piv = _rref(G, len(G))
        return len(piv)

    def basis(self, lam=None) -> list[Elem]:
        """Basis elements of one degree, or of the whole window."""
        if lam is None:
            return [b for d in self.all_degrees() for b in self.basis(d)]
        lam = tuple(lam)
        d = self.dim_degree(lam)
        return [self.basis_element(lam, k) for k in range(d)]

    def basis_element(self, lam, k) -> Elem:
        lam = tuple(lam)
        d = self.dim_degree(lam)
        return Elem({lam: tuple(ONE if r == k else ZERO for r in range(d))})

    def f(self, i) -> Elem:
        return self.basis_element(_neg(unit(self.n, i)), 0)

    def e(self, i) -> Elem:
        return self.basis_element(unit(self.n, i), 0)

    def h(self, i) -> Elem:
        return self.basis_element(self.zero_degree, i)

    def from_word(self, word: Sequence[int], sign: int = -1) -> Elem:
        """[f_j1, [f_j2, ...]] (sign -1) or its mirror in e's (sign +1)."""
        word = tuple(word)
        x = self.f(word[-1])
        for j in reversed(word[:-1]):
            x = self.ad_f(j, x)
        if sign > 0:
            x = self.mirror(x)
        return x

    def mirror(self, x: Elem) -> Elem:
        """The linear map f_w <-> e~_w, h -> h (no signs)."""
        return Elem({(_neg(d) if _sign(d) else d): c for d, c in x.parts.items()}, x.flag)

    def omega(self, x: Elem) -> Elem:
        """Chevalley involution: e~_w <-> (-1)^ht f_w, h -> -h."""
        out = {}
        for d, c in x.parts.items():
            s = -1 if _ht(d) % 2 or not _sign(d) else 1
            out[_neg(d) if _sign(d) else d] = tuple(s * v for v in c)
        return Elem(out, x.flag)

    # --------------------------------------------------- adjoint actions

    def _beyond(self, lam, coords) -> bool:
        """Nonzero coordinates would land on a root degree outside the window."""
        return any(coords) and is_root(self.cartan, lam)

    def _overflow(self, x: Elem, target, coords) -> bool:
        return x.flag or (not self.complete and self._beyond(target, coords))

    def ad_f(self, j: int, x: Elem) -> Elem:
        A, n = self.cartan, self.n
        out, flag = Elem({}, x.flag), x.flag
        aj = unit(n, j)
        for lam, v in x.parts.items():
            s = _sign(lam)
            tgt = _add(lam, _neg(aj))
            if s == 0:
                res = {tgt: (sum((v[i] * A.entries[i][j] for i in range(n) if v[i]), ZERO),)}
            elif s < 0:
                beta = _neg(lam)
                M = self.F.get((j, beta))
                if M is None:
                    if _ht(beta) + 1 > self.H and not self.complete and is_root(A, tgt) and any(v):
                        flag = True
                    continue
                res = {tgt: _matvec(M, v)}
            else:
                M = self.E.get((j, lam))
                if M is None:
                    continue
                w = _matvec(M, v)
                res = {tgt: tuple(-c for c in w) if tgt == self.zero_degree else w}
            out = out + Elem(res)
        return Elem(out.parts, flag)

    def ad_e(self, i: int, x: Elem) -> Elem:
        A, n = self.cartan, self.n
        out, flag = Elem({}, x.flag), x.flag
        ai = unit(n, i)
        for lam, v in x.parts.items():
            s = _sign(lam)
            tgt = _add(lam, ai)
            if s == 0:
                res = {tgt: (-sum((v[k] * A.entries[k][i] for k in range(n) if v[k]), ZERO),)}
            elif s < 0:
                M = self.E.get((i, _neg(lam)))
                if M is None:
                    continue
                res = {tgt: _matvec(M, v)}
            else:
                M = self.F.get((i, lam))
                if M is None:
                    if _ht(lam) + 1 > self.H and not self.complete and is_root(A, tgt) and any(v):
                        flag = True
                    continue
                res = {tgt: _matvec(M, v)}
            out = out + Elem(res)
        return Elem(out.parts, flag)

    def ad_h(self, k: int, x: Elem) -> Elem:
        A = self.cartan
        out = {}
        for lam, v in x.parts.items():
            c = A.pairing_h(lam, k)
            if c:
                out[lam] = tuple(a * c for a in v)
        return Elem(out, x.flag)

    # ------------------------------------------------------------ bracket

    def _basis_bracket(self, lam, k, mu, m) -> Elem:
        key = (lam, k, mu, m)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        A, n = self.cartan, self.n
        tgt = _add(lam, mu)
        if not self.complete and abs(_ht(tgt)) > self.H:
            res = Elem({}, is_root(A, tgt))
        elif min(tgt) < 0 < max(tgt):
            res = Elem({})
        else:
            z = self.basis_element(mu, m)
            s = _sign(lam)
            if s == 0:
                res = self.ad_h(k, z)
            else:
                beta = lam if s > 0 else _neg(lam)
                j, k2 = self.pivots[beta][k]
                ad1 = self.ad_e if s > 0 else self.ad_f
                if k2 is None:
                    res = ad1(j, z)
                else:
                    sub = _add(lam, _neg(unit(n, j))) if s > 0 else _add(lam, unit(n, j))
                    left = ad1(j, self._ad_basis(sub, k2, z))
                    right = self._ad_basis(sub, k2, ad1(j, z))
                    res = left - right
        self._memo[key] = res
        return res

    def _ad_basis(self, lam, k, y: Elem) -> Elem:
        out = Elem({}, y.flag)
        for mu, m, c in y.items():
            out = out + self._basis_bracket(lam, k, mu, m).scale(c)
        return out

    def bracket(self, x: Elem, y: Elem) -> Elem:
        out = Elem({}, x.flag or y.flag)
        for lam, k, c in x.items():
            out = out + self._ad_basis(lam, k, y).scale(c)
        return out

    # ------------------------------------------------------------- vectors

    def slot_key(self, slot) -> tuple:
        lam, k = slot
        return (_ht(lam), lam, k)


@lru_cache(maxsize=None)
def _cached(A: CartanMatrix, H: int) -> TruncatedAlgebra:
    return TruncatedAlgebra(A, H)


def build(A: CartanMatrix, H: int) -> TruncatedAlgebra:
    """Truncated g' of height H (cached; finite types stop at the highest root)."""
    if is_finite_type(A, A.nodes):
        H = min(H, max(_ht(r) for r in positive_roots(A)) + 1)
    return _cached(A, H)


def full(A: CartanMatrix) -> TruncatedAlgebra:
    """The whole algebra for a finite-type matrix."""
    if not is_finite_type(A, A.nodes):
        raise ValueError("full() needs a finite-type matrix")
    return build(A, max(_ht(r) for r in positive_roots(A)) + 1)


def bracket(alg: TruncatedAlgebra, x: Elem, y: Elem) -> Elem:
    return alg.bracket(x, y)


def dimension_table(alg: TruncatedAlgebra) -> dict:
    """beta -> dim g_{-beta} over the window."""
    return {b: alg.dim(b) for b in alg.degrees(+1)}


# ----------------------------------------------------- exact subspaces


class Subspace:
    """Incremental row echelon form over Q(i) for sparse vectors {slot: coef}.

    The pivot of each stored vector is its least slot under ``key``, so the
    number of pivots inside one degree counts leading terms there.
    """

    def __init__(self, key=None):
        self.key = key or (lambda s: s)
        self.rows: dict = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        v = {s: c for s, c in v.items() if c}
        while True:
            hits = [s for s in v if s in self.rows]
            if not hits:
                return v
            s = min(hits, key=self.key)
            c = v[s]
            for t, a in self.rows[s].items():
                nv = v.get(t, ZERO) - c * a
                if nv:
                    v[t] = nv
                else:
                    v.pop(t, None)

    def add(self, v: dict) -> dict | None:
        """Insert v; returns the reduced new row, or None if v was dependent."""
        r = self.reduce(v)
        if not r:
            return None
        p = min(r, key=self.key)
        inv = ONE / r[p]
        r = {t: a * inv for t, a in r.items()}
        self.rows[p] = r
        return r

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def pivots(self) -> list:
        return sorted(self.rows, key=self.key)


def to_vec(x: Elem) -> dict:
    x._require_exact()
    return {(d, k): c for d, k, c in x.items()}


def from_vec(alg: TruncatedAlgebra, v: dict) -> Elem:
    parts: dict = {}
    for (d, k), c in v.items():
        if d not in parts:
            parts[d] = [ZERO] * alg.dim_degree(d)
        parts[d][k] += c
    return Elem({d: tuple(c) for d, c in parts.items()})
