"""The Weyl group as exact integer matrices on the root lattice Q.

Column j of an element's matrix holds the coordinates of w(alpha_j) in the
basis of simple roots.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .cartan import CartanMatrix, is_finite_type
from .errors import BeyondBruteForce, NotFiniteType, NotInWeylGroup

BRUTE_FORCE_LIMIT = 2_000_000
DESCENT_CAP = 100_000


@dataclass(frozen=True, eq=False)
class WeylElement:
    matrix: np.ndarray
    word: tuple[int, ...] | None = None
    _key: bytes = field(default=b"", repr=False)

    def __post_init__(self):
        m = np.ascontiguousarray(self.matrix, dtype=np.int64)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "_key", m.tobytes())

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElement) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return WeylElement(self.matrix @ other.matrix, word)

    def __call__(self, lam):
        return apply(self, lam)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def is_identity(self) -> bool:
        return bool((self.matrix == np.eye(self.n, dtype=np.int64)).all())


def identity(A: CartanMatrix) -> WeylElement:
    return WeylElement(np.eye(A.n, dtype=np.int64), ())


@lru_cache(maxsize=None)
def _reflection_matrix(entries, i: int) -> np.ndarray:
    n = len(entries)
    m = np.eye(n, dtype=np.int64)
    m[i, :] -= np.array(entries[i], dtype=np.int64)
    m.setflags(write=False)
    return m


def reflect(A: CartanMatrix, i: int) -> WeylElement:
    """s_i, with s_i(alpha_j) = alpha_j - a_ij alpha_i."""
    return WeylElement(_reflection_matrix(A.entries, i), (i,))


def from_word(A: CartanMatrix, word: Sequence[int]) -> WeylElement:
    m = np.eye(A.n, dtype=np.int64)
    for i in word:
        m = m @ _reflection_matrix(A.entries, i)
    return WeylElement(m, tuple(word))


def apply(w: WeylElement, lam):
    """Matrix-vector product; exact for int, Fraction and mpq coordinates."""
    lam = list(lam)
    if all(isinstance(x, (int, np.integer)) for x in lam):
        return tuple(int(x) for x in w.matrix @ np.array(lam, dtype=np.int64))
    M = w.matrix
    n = len(lam)
    return tuple(sum(int(M[r, c]) * lam[c] for c in range(n) if lam[c]) for r in range(n))


def is_negative(col) -> bool:
    return any(x < 0 for x in col)


def is_positive(col) -> bool:
    return any(x > 0 for x in col) and not any(x < 0 for x in col)


def reduced_word(A: CartanMatrix, w: WeylElement, cap: int = DESCENT_CAP) -> tuple[int, ...]:
    """Reduced word by right descent with smallest-index tie-breaking.

    Repeatedly pick the smallest i with w(alpha_i) < 0 and replace w by w s_i.
    A genuine element reaches the identity; anything else raises
    NotInWeylGroup.
    """
    M = np.array(w.matrix, dtype=np.int64)
    eye = np.eye(A.n, dtype=np.int64)
    rev: list[int] = []
    while True:
        has_neg = (M < 0).any(axis=0)
        if (has_neg & (M > 0).any(axis=0)).any():
            raise NotInWeylGroup("a column is neither positive nor negative")
        neg = np.flatnonzero(has_neg)
        if neg.size == 0:
            break
        i = int(neg[0])
        M = M @ _reflection_matrix(A.entries, i)
        rev.append(i)
        if len(rev) > cap:
            raise NotInWeylGroup("descent did not terminate")
    if not (M == eye).all():
        raise NotInWeylGroup("descent stopped at a non-identity matrix")
    return tuple(reversed(rev))


def length(A: CartanMatrix, w: WeylElement) -> int:
    return len(reduced_word(A, w))


def inverse(A: CartanMatrix, w: WeylElement) -> WeylElement:
    word = reduced_word(A, w)
    return from_word(A, tuple(reversed(word)))


def longest_element(A: CartanMatrix, X: Iterable[int]) -> WeylElement:
    """w_X for a finite-type subset X, built by extending to the left-free side.

    Starting from the identity, multiply on the right by s_j (smallest j in X
    with w(alpha_j) > 0) until every alpha_j, j in X, is sent negative.
    """
    X = sorted(set(X))
    if not is_finite_type(A, X):
        raise NotFiniteType(f"subset {X} is not of finite type")
    return _longest(A.entries, tuple(X))


@lru_cache(maxsize=None)
def _longest(entries, X: tuple[int, ...]) -> WeylElement:
    n = len(entries)
    M = np.eye(n, dtype=np.int64)
    word: list[int] = []
    while True:
        pos = [j for j in X if not (M[:, j] < 0).any()]
        if not pos:
            break
        j = pos[0]
        M = M @ _reflection_matrix(entries, j)
        word.append(j)
    return WeylElement(M, tuple(word))


def opposition_involution(A: CartanMatrix, X: Iterable[int]) -> dict[int, int]:
    """oi_X with w_X(alpha_i) = -alpha_{oi(i)} for i in X."""
    X = sorted(set(X))
    wX = longest_element(A, X)
    out = {}
    for i in X:
        col = -wX.matrix[:, i]
        (k,) = np.flatnonzero(col)
        out[i] = int(k)
    return out


def unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(1 if k == i else 0 for k in range(n))


def positive_roots(A: CartanMatrix, X: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    """Complete Phi^+_X for a finite-type subset (default: all of I)."""
    X = list(A.nodes) if X is None else sorted(set(X))
    if not is_finite_type(A, X):
        raise NotFiniteType(f"subset {X} is not of finite type")
    return list(_positive_roots(A.entries, tuple(X)))


@lru_cache(maxsize=None)
def _positive_roots(entries, X: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    n = len(entries)
    start = [unit(n, i) for i in X]
    seen = set(start)
    frontier = list(start)
    while frontier:
        new = []
        for beta in frontier:
            for i in X:
                c = sum(entries[i][j] * beta[j] for j in range(n))
                if c < 0:
                    gamma = tuple(beta[k] - (c if k == i else 0) for k in range(n))
                    if gamma not in seen:
                        seen.add(gamma)
                        new.append(gamma)
        frontier = new
    return tuple(sorted(seen, key=lambda v: (sum(v), v)))


def real_roots(A: CartanMatrix, H: int | None = None) -> list[tuple[int, ...]]:
    """Real roots of height |ht| <= H (all of Phi when H is None, finite type).

    Every positive real root is reached from a simple root by a chain of
    simple reflections that raise the height, so the bounded search is exact.
    """
    if H is None:
        pos = positive_roots(A)
    else:
        pos = list(_bounded_real(A.entries, H))
    return pos + [tuple(-x for x in v) for v in pos]


@lru_cache(maxsize=None)
def _bounded_real(entries, H: int) -> tuple[tuple[int, ...], ...]:
    n = len(entries)
    start = [unit(n, i) for i in range(n)]
    seen = set(start)
    frontier = list(start)
    while frontier:
        new = []
        for beta in frontier:
            for i in range(n):
                c = sum(entries[i][j] * beta[j] for j in range(n))
                if c < 0 and sum(beta) - c <= H:
                    gamma = tuple(beta[k] - (c if k == i else 0) for k in range(n))
                    if gamma not in seen:
                        seen.add(gamma)
                        new.append(gamma)
        frontier = new
    return tuple(sorted(seen, key=lambda v: (sum(v), v)))


def _connected_support(entries, v) -> bool:
    supp = [i for i, x in enumerate(v) if x]
    if not supp:
        return False
    seen = {supp[0]}
    stack = [supp[0]]
    while stack:
        i = stack.pop()
        for j in supp:
            if j not in seen and entries[i][j] != 0:
                seen.add(j)
                stack.append(j)
    return len(seen) == len(supp)


def _compositions(n: int, H: int):
    """All nonzero nonnegative integer vectors of length n and height <= H."""
    def rec(k, left):
        if k == n:
            yield ()
            return
        for x in range(left + 1):
            for rest in rec(k + 1, left - x):
                yield (x,) + rest
    for v in rec(0, H):
        if any(v):
            yield v


@lru_cache(maxsize=None)
def _imaginary(entries, H: int) -> tuple[tuple[int, ...], ...]:
    n = len(entries)
    cone = [
        v for v in _compositions(n, H)
        if _connected_support(entries, v)
        and all(sum(entries[i][j] * v[j] for j in range(n)) <= 0 for i in range(n))
    ]
    seen = set(cone)
    frontier = list(cone)
    while frontier:
        new = []
        for beta in frontier:
            for i in range(n):
                c = sum(entries[i][j] * beta[j] for j in range(n))
                if c < 0 and sum(beta) - c <= H:
                    gamma = tuple(beta[k] - (c if k == i else 0) for k in range(n))
                    if gamma not in seen:
                        seen.add(gamma)
                        new.append(gamma)
        frontier = new
    return tuple(sorted(seen, key=lambda v: (sum(v), v)))


def imaginary_roots(A: CartanMatrix, H: int) -> list[tuple[int, ...]]:
    """Positive imaginary roots of height <= H: W-orbit of the fundamental set K."""
    return list(_imaginary(A.entries, H))


def roots(A: CartanMatrix, H: int | None = None) -> list[tuple[int, ...]]:
    """Phi (both signs); complete for finite type, height-bounded otherwise."""
    if is_finite_type(A, A.nodes):
        return real_roots(A, None)
    if H is None:
        raise NotFiniteType("a height bound is required for infinite root systems")
    im = imaginary_roots(A, H)
    return real_roots(A, H) + im + [tuple(-x for x in v) for v in im]


def coroot_pairing(A: CartanMatrix, lam, alpha) -> Fraction:
    return A.coroot_pairing(lam, alpha)


def inversion_set(A: CartanMatrix, w: WeylElement) -> list[tuple[int, ...]]:
    """Phi^+ ∩ w(-Phi^+), read off a reduced word s_{i1}...s_{ik}."""
    word = reduced_word(A, w)
    out = []
    M = np.eye(A.n, dtype=np.int64)
    for i in word:
        out.append(tuple(int(x) for x in M[:, i]))
        M = M @ _reflection_matrix(A.entries, i)
    return out


def _sign(exponent) -> int:
    if Fraction(exponent).denominator != 1:
        raise ValueError("non-integral coroot pairing")
    return -1 if int(exponent) % 2 else 1


def zeta_w(A: CartanMatrix, w: WeylElement, lam) -> int:
    """prod over Phi^+ ∩ w(-Phi^+) of (-1)^{lam(alpha^vee)}."""
    total = sum((A.coroot_pairing(lam, a) for a in inversion_set(A, w)), Fraction(0))
    return _sign(total)


def two_rho_check(A: CartanMatrix, X: Iterable[int]):
    """lam -> lam(2 rho^vee_X) as a function, via the positive coroots of X."""
    pos = positive_roots(A, X)
    def pair(lam):
        return sum((A.coroot_pairing(lam, a) for a in pos), Fraction(0))
    return pair


def zeta_X(A: CartanMatrix, X: Iterable[int], lam) -> int:
    """(-1)^{lam(2 rho^vee_X)}."""
    return _sign(two_rho_check(A, X)(lam))


def in_parabolic(A: CartanMatrix, w: WeylElement, X: Iterable[int]) -> bool:
    """w in W_X: strip left X-descents (w^{-1}(alpha_j) < 0) and test for 1."""
    X = sorted(set(X))
    M = np.array(w.matrix, dtype=np.int64)
    # work with the inverse: left descents of w are right descents of w^{-1}
    Minv = inverse(A, WeylElement(M)).matrix.copy()
    steps = 0
    while True:
        d = [j for j in X if (Minv[:, j] < 0).any()]
        if not d:
            break
        Minv = Minv @ _reflection_matrix(A.entries, d[0])
        steps += 1
        if steps > DESCENT_CAP:
            raise NotInWeylGroup("descent did not terminate")
    return bool((Minv == np.eye(A.n, dtype=np.int64)).all())


def is_minimal_coset_rep(A: CartanMatrix, w: WeylElement, X: Iterable[int]) -> bool:
    """w in W^X: w^{-1}(alpha_j) > 0 for every j in X."""
    X = sorted(set(X))
    if not is_finite_type(A, X):
        raise NotFiniteType(f"subset {X} is not of finite type")
    winv = inverse(A, w)
    return all(is_positive(winv.matrix[:, j]) for j in X)


def normalizes_parabolic(A: CartanMatrix, w: WeylElement, X: Iterable[int]) -> bool:
    """w W_X w^{-1} = W_X, decided by w(alpha_j) in Phi_X for all j in X."""
    X = sorted(set(X))
    roots_X = set(positive_roots(A, X))
    roots_X |= {tuple(-x for x in r) for r in roots_X}
    return all(tuple(int(x) for x in w.matrix[:, j]) in roots_X for j in X)


def enumerate_group(A: CartanMatrix, budget: int | None = None,
                    generators: Sequence[np.ndarray] | None = None) -> np.ndarray:
    """All elements of W (or of the group generated by ``generators``).

    Returns an array of shape (|G|, n, n).  Layered breadth-first search with
    vectorized products; raises BeyondBruteForce past the budget.  The full
    Weyl group is cached per Cartan matrix and returned read-only.
    """
    limit = BRUTE_FORCE_LIMIT if budget is None else min(budget, BRUTE_FORCE_LIMIT)
    if generators is None and budget is None:
        W = _full_group(A)
        if W is None:
            raise BeyondBruteForce(f"group exceeds the brute-force budget of {limit}")
        return W
    if generators is None:
        generators = [_reflection_matrix(A.entries, i) for i in range(A.n)]
    return _bfs([np.asarray(g, dtype=np.int64) for g in generators], A.n, limit)


@lru_cache(maxsize=32)
def _full_group(A: CartanMatrix) -> np.ndarray | None:
    try:
        W = _bfs([_reflection_matrix(A.entries, i) for i in range(A.n)], A.n, BRUTE_FORCE_LIMIT)
    except BeyondBruteForce:
        return None
    W.setflags(write=False)
    return W


def _bfs(gens: list[np.ndarray], n: int, limit: int) -> np.ndarray:
    if not gens:
        return np.eye(n, dtype=np.int64)[None]
    G = np.stack(gens)
    eye = np.eye(n, dtype=np.int64)[None]
    seen = {eye[0].tobytes()}
    layers = [eye]
    frontier = eye
    total = 1
    while frontier.shape[0]:
        prod = np.ascontiguousarray(np.einsum("kab,mbc->mkac", frontier, G).reshape(-1, n, n))
        keep = []
        for k in range(prod.shape[0]):
            key = prod[k].tobytes()
            if key not in seen:
                seen.add(key)
                keep.append(k)
        frontier = prod[keep]
        total += len(keep)
        if total > limit:
            raise BeyondBruteForce(f"group exceeds the brute-force budget of {limit}")
        layers.append(frontier)
    return np.concatenate(layers, axis=0)


def is_root(A: CartanMatrix, v: Sequence[int]) -> bool:
    """Membership in Phi for an integer vector, by height reduction.

    Reflect a positive vector down while some v(h_i) > 0.  A simple root is
    real; a vector in the fundamental cone with connected support is
    imaginary; leaving Q^+ means v was not a root.
    """
    v = [int(x) for x in v]
    if all(x <= 0 for x in v):
        v = [-x for x in v]
    if not any(v) or any(x < 0 for x in v):
        return False
    return _is_pos_root(A.entries, tuple(v))


@lru_cache(maxsize=None)
def _is_pos_root(entries, v: tuple[int, ...]) -> bool:
    n = len(entries)
    v = list(v)
    while True:
        if sum(v) == 1:
            return True
        for i in range(n):
            c = sum(entries[i][j] * v[j] for j in range(n))
            if c > 0:
                v[i] -= c
                if v[i] < 0:
                    return False
                break
        else:
            return _connected_support(entries, v)
