"""sigma = w_X ∘ tau, the bar projection and restricted root data.

Restricted roots are stored in the coordinates of the base
Pi_bar = (alpha_bar_i)_{i in I*}.  Since alpha_bar_j = 0 for j in X and
alpha_bar_tau(i) = alpha_bar_i, the coordinates of lam_bar are the tau-orbit
sums of the coordinates of lam with X dropped, so they stay integral.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from sympy.combinatorics import Permutation, PermutationGroup

from .cartan import (CartanMatrix, components_of, isomorphisms, kind_of, validate_gcm)
from .catalogue import affine_entries, finite_entries, recognize_connected
from .decoration import Decoration, is_generalized_satake, require_compatible, sigma_matrix
from .errors import (BeyondBruteForce, NotFiniteType, NotGeneralizedSatake, NotCompatible,
                     UnrecognizedRestrictedType)
from .weyl import (WeylElement, enumerate_group, longest_element,
                   positive_roots, roots, is_finite_type)

DEFAULT_HEIGHT = 8
_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


# -------------------------------------------------------------- sigma, bar


@dataclass(frozen=True, eq=False)
class Sigma:
    dec: Decoration
    matrix: np.ndarray


def sigma(dec: Decoration) -> Sigma:
    require_compatible(dec)
    return Sigma(dec, sigma_matrix(dec))


def bar(dec: Decoration, lam: Sequence) -> tuple[Fraction, ...]:
    """lam_bar = (lam + sigma(lam)) / 2 in simple-root coordinates."""
    S = sigma_matrix(dec)
    lam = [Fraction(x) for x in lam]
    n = len(lam)
    return tuple((lam[r] + sum(int(S[r, c]) * lam[c] for c in range(n) if lam[c])) / 2 for r in range(n))


def orbit_projection(dec: Decoration) -> np.ndarray:
    """P with P[k, j] = 1 iff node j lies in the tau-orbit of I*[k] (X dropped)."""
    star = dec.I_star()
    P = np.zeros((len(star), dec.n), dtype=np.int64)
    for k, i in enumerate(star):
        P[k, i] = 1
        P[k, dec.tau[i]] = 1
    return P


def restricted_coords(dec: Decoration, lam: Sequence) -> tuple:
    """Coordinates of lam_bar in the basis Pi_bar (orbit sums)."""
    return tuple(sum(lam[j] for j in set(o)) for o in dec.tau_orbits())


def X_of(dec: Decoration, i: int) -> list[int]:
    """X[i] = X ∪ {i, tau(i)}."""
    return sorted(set(dec.X) | {i, dec.tau[i]})


def tilde_I(dec: Decoration) -> tuple[int, ...]:
    return tuple(i for i in dec.I_star() if is_finite_type(dec.cartan, X_of(dec, i)))


# ------------------------------------------------------------- type labels


@dataclass(frozen=True, order=True)
class RestrictedComponent:
    name: str
    pretty: str


@dataclass(frozen=True)
class RestrictedTypeLabel:
    components: tuple = ()
    special: str = ""  # "Z0" or "Zhat0" for empty / purely imaginary systems

    @property
    def name(self) -> str:
        if self.special:
            return self.special
        return "x".join(c.name for c in self.components) or "Z0"

    @property
    def pretty(self) -> str:
        if self.special:
            return {"Z0": "Z₀", "Zhat0": "Ẑ₀"}[self.special]
        return "×".join(c.pretty for c in self.components) or "Z₀"

    def __str__(self) -> str:
        return self.name


def _sub(n: int) -> str:
    return str(n).translate(_SUB)


def _templates(m: int) -> list[tuple[str, str, tuple, frozenset, frozenset]]:
    """(name, pretty, cartan, marked, plus3) for non-reduced types on m nodes."""
    T = []

    def add(name, pretty, ent, marks, plus3=()):
        T.append((name, pretty, tuple(map(tuple, ent)), frozenset(marks), frozenset(plus3)))

    if m == 1:
        add("BC1", "(B,C)₁", [[2]], {0})
        add("BC1+", "(B,C)₁⁺", [[2]], {0}, {0})
    else:
        add(f"BC{m}", f"(B,C){_sub(m)}", finite_entries("B", m), {m - 1})
    n = m - 1
    if n >= 1:
        add(f"CpChat{n}", f"(Ĉ′,Ĉ){_sub(n)}", affine_entries("C", n, "prime"), {n})
        if n == 1:
            add("CpChat1+", "(Ĉ′,Ĉ)₁⁺", affine_entries("C", 1, "prime"), {1}, {1})
            add("CvChat1", "(Ĉ∨,Ĉ)₁", affine_entries("A", 1), {0, 1})
            add("CvCphat1", "(Ĉ∨,Ĉ′)₁", affine_entries("A", 1), {0})
        else:
            add(f"CvChat{n}", f"(Ĉ∨,Ĉ){_sub(n)}", affine_entries("C", n, "dual"), {0, n})
            add(f"CvCphat{n}", f"(Ĉ∨,Ĉ′){_sub(n)}", affine_entries("C", n, "dual"), {0})
        if n == 2:
            add("BBvhat2", "(B̂,B̂∨)₂", affine_entries("C", 2), {1})
        elif n >= 3:
            add(f"BBvhat{n}", f"(B̂,B̂∨){_sub(n)}", affine_entries("B", n), {n})
    return T


def _match_component(ent: tuple, pats: Sequence[frozenset]) -> RestrictedComponent | None:
    m = len(ent)
    marks = frozenset(k for k in range(m) if 2 in pats[k])
    plus3 = frozenset(k for k in range(m) if 3 in pats[k])
    if any(not p <= {1, 2, 3} or 1 not in p or (3 in p and 2 not in p) for p in pats):
        return None
    if not marks:
        A = validate_gcm(ent)
        kind = kind_of(A, A.nodes)
        ct = recognize_connected(ent, kind) if kind != "indefinite" else None
        return RestrictedComponent(ct.name, ct.pretty) if ct else None
    for name, pretty, tent, tmarks, tplus in _templates(m):
        for p in isomorphisms(ent, tent):
            if {p[k] for k in marks} == tmarks and {p[k] for k in plus3} == tplus:
                return RestrictedComponent(name, pretty)
    return None


# ------------------------------------------------------ restricted system


@dataclass(frozen=True, eq=False)
class RestrictedRootSystem:
    dec: Decoration
    I_star: tuple
    tilde_I: tuple
    simple: dict            # i in I* -> alpha_bar_i in simple-root coordinates (Fractions)
    gram: tuple             # (alpha_bar_i, alpha_bar_j) over I* (Fractions)
    roots: frozenset        # Pi_bar coordinates, both signs
    complete: bool
    height: int | None
    patterns: dict = field(default_factory=dict)  # i in tilde_I -> sorted tuple of k

    @property
    def rank(self) -> int:
        return len(self.I_star)

    def positive(self) -> list[tuple]:
        return sorted((r for r in self.roots if any(x > 0 for x in r)), key=lambda v: (sum(v), v))

    def form(self, u, v) -> Fraction:
        r = self.rank
        return sum((u[a] * self.gram[a][b] * v[b] for a in range(r) for b in range(r) if u[a] and v[b]),
                   Fraction(0))

    def in_V(self, coords) -> tuple[Fraction, ...]:
        """Restricted coordinates -> simple-root coordinates in V."""
        n = self.dec.n
        out = [Fraction(0)] * n
        for c, i in zip(coords, self.I_star):
            for k in range(n):
                out[k] += c * self.simple[i][k]
        return tuple(out)

    def cartan_entries(self) -> tuple | None:
        """a_bar_ij = 2 G_ij / G_ii over tilde_I, or None if not integral."""
        idx = [self.I_star.index(i) for i in self.tilde_I]
        rows = []
        for a in idx:
            row = []
            for b in idx:
                v = 2 * self.gram[a][b] / self.gram[a][a]
                if v.denominator != 1:
                    return None
                row.append(int(v))
            rows.append(tuple(row))
        return tuple(rows)


def _phi(A: CartanMatrix, H: int | None) -> tuple[list, bool]:
    if is_finite_type(A, A.nodes):
        return roots(A), True
    return roots(A, H or DEFAULT_HEIGHT), False


def restricted_system(dec: Decoration, H: int | None = None) -> RestrictedRootSystem:
    require_compatible(dec)
    A = dec.cartan
    star = dec.I_star()
    simple = {i: bar(dec, [1 if k == i else 0 for k in range(A.n)]) for i in star}
    gram = tuple(tuple(A.form(simple[i], simple[j]) for j in star) for i in star)
    phi, complete = _phi(A, H)
    orbits = dec.tau_orbits()
    rs = set()
    for beta in phi:
        c = tuple(sum(beta[j] for j in o) for o in orbits)
        if any(c):
            rs.add(c)
    tI = tilde_I(dec)
    patterns = {}
    for k, i in enumerate(star):
        if i not in tI:
            continue
        sub = positive_roots(A, X_of(dec, i))
        ks = set()
        for beta in sub:
            c = tuple(sum(beta[j] for j in o) for o in orbits)
            if any(c) and all(x == 0 for kk, x in enumerate(c) if kk != k):
                ks.add(c[k])
        patterns[i] = tuple(sorted(ks))
    return RestrictedRootSystem(dec, star, tI, simple, gram, frozenset(rs), complete,
                                None if complete else (H or DEFAULT_HEIGHT), patterns)


def gram_with(dec: Decoration, eps: Sequence[int]) -> tuple:
    """Gram matrix of the simple restricted roots under (alpha_i, alpha_j) = eps_i a_ij.

    Only ``dec.cartan.epsilon`` symmetrizes A; other choices are useful for
    comparing against Gram values quoted under a different node labelling.
    """
    A = dec.cartan
    star = dec.I_star()
    simple = {i: bar(dec, [1 if k == i else 0 for k in range(A.n)]) for i in star}

    def form(u, v):
        return sum((u[a] * eps[a] * A.entries[a][b] * v[b]
                    for a in range(A.n) for b in range(A.n) if u[a] and v[b]), Fraction(0))

    return tuple(tuple(form(simple[i], simple[j]) for j in star) for i in star)


def restricted_type(dec: Decoration, H: int | None = None,
                    system: RestrictedRootSystem | None = None) -> RestrictedTypeLabel:
    """Name of the restricted root system (reduced, non-reduced or exceptional)."""
    if not is_generalized_satake(dec):
        raise NotGeneralizedSatake("restricted types are only catalogued for generalized Satake diagrams")
    rs = system or restricted_system(dec, H)
    if not rs.I_star:
        return RestrictedTypeLabel(special="Z0")
    if not rs.tilde_I:
        # every restricted root should be a multiple of one null vector
        if all(rs.form(b, b) == 0 for b in rs.roots) and _collinear(rs.roots):
            return RestrictedTypeLabel(special="Zhat0")
        raise UnrecognizedRestrictedType("restricted system with no real simple roots", rs.gram, rs.patterns)
    if rs.tilde_I != rs.I_star:
        raise UnrecognizedRestrictedType("mixed real and imaginary simple restricted roots",
                                         rs.gram, rs.patterns)
    ent = rs.cartan_entries()
    if ent is None:
        raise UnrecognizedRestrictedType("non-integral restricted Cartan matrix", rs.gram, rs.patterns)
    pats = [frozenset(rs.patterns[i]) for i in rs.tilde_I]
    comps = []
    for comp in components_of(ent, range(len(ent))):
        sub = tuple(tuple(ent[a][b] for b in comp) for a in comp)
        got = _match_component(sub, [pats[a] for a in comp])
        if got is None:
            raise UnrecognizedRestrictedType(f"no catalogued type for component {comp}",
                                             rs.gram, rs.patterns)
        comps.append(got)
    return RestrictedTypeLabel(tuple(sorted(comps)))


def _collinear(vectors) -> bool:
    vs = [v for v in vectors if any(v)]
    if not vs:
        return True
    u = vs[0]
    return all(u[a] * v[b] == u[b] * v[a] for v in vs for a in range(len(u)) for b in range(len(u)))


# -------------------------------------------------------- tilde reflections


def tilde_s(dec: Decoration, i: int) -> WeylElement:
    """w_X · w_{X[i]} (requires X[i] of finite type)."""
    require_compatible(dec)
    A = dec.cartan
    Xi = X_of(dec, i)
    if not is_finite_type(A, Xi):
        raise NotFiniteType(f"X[{A.label(i)}] is not of finite type; no restricted reflection")
    return longest_element(A, dec.X) * longest_element(A, Xi)


def _sigma_fixed_basis(dec: Decoration) -> np.ndarray:
    """Columns 2 alpha_bar_i = alpha_i + sigma(alpha_i), i in I*: an integral basis of V^sigma."""
    S = sigma_matrix(dec)
    n = dec.n
    M = np.eye(n, dtype=np.int64) + S
    return M[:, list(dec.I_star())]


def _phi_X(A, X) -> set:
    pos = positive_roots(A, X) if X else []
    return set(pos)


@dataclass(frozen=True)
class Battery:
    commutes_with_sigma: bool
    involutive: bool
    permutes_X_reflections: bool
    stabilizes_PhiX_plus: bool
    generalized_satake: bool
    stabilizes_V_sigma: bool
    negates_alpha_bar: bool
    normalizes_W_X: bool

    def values(self) -> tuple[bool, ...]:
        return (self.commutes_with_sigma, self.involutive, self.permutes_X_reflections,
                self.stabilizes_PhiX_plus, self.generalized_satake, self.stabilizes_V_sigma,
                self.negates_alpha_bar, self.normalizes_W_X)

    def consistent(self) -> bool:
        return len(set(self.values())) == 1

    def as_dict(self) -> dict[str, bool]:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def gsat_battery(dec: Decoration) -> Battery:
    """The eight conditions, each quantified over i in tilde_I."""
    require_compatible(dec)
    A = dec.cartan
    n = A.n
    X = sorted(dec.X)
    S = np.asarray(sigma_matrix(dec))
    eye = np.eye(n, dtype=np.int64)
    phiX = _phi_X(A, X)
    phiX_all = phiX | {tuple(-x for x in r) for r in phiX}
    refl_X = {WeylElement(_refl(A, j)) for j in X}
    Vs = _sigma_fixed_basis(dec)
    flags = [True] * 8
    for i in tilde_I(dec):
        M = tilde_s(dec, i).matrix
        if not (M @ S == S @ M).all():
            flags[0] = False
        if not (M @ M == eye).all():
            flags[1] = False
        Minv = _int_inverse(M)
        for j in X:
            conj = WeylElement(M @ _refl(A, j) @ Minv)
            if conj not in refl_X:
                flags[2] = False
                break
        if {tuple(int(x) for x in M @ np.array(r)) for r in phiX} != phiX:
            flags[3] = False
        img = M @ Vs
        if not ((S - eye) @ img == 0).all():
            flags[5] = False
        a2 = Vs[:, dec.I_star().index(i)]
        if not (M @ a2 == -a2).all():
            flags[6] = False
        if not all(tuple(int(x) for x in M[:, j]) in phiX_all for j in X):
            flags[7] = False
    flags[4] = is_generalized_satake(dec)
    return Battery(*flags)


def _refl(A: CartanMatrix, j: int) -> np.ndarray:
    m = np.eye(A.n, dtype=np.int64)
    m[j, :] -= np.array(A.entries[j], dtype=np.int64)
    return m


def _int_inverse(M: np.ndarray) -> np.ndarray:
    inv = np.rint(np.linalg.inv(M.astype(float))).astype(np.int64)
    if not (inv @ M == np.eye(M.shape[0], dtype=np.int64)).all():
        raise ValueError("matrix is not unimodular")
    return inv


# ------------------------------------------------------------ Coxeter data

INF = float("inf")
_ORDER_FROM_COS2 = {Fraction(0): 2, Fraction(1, 4): 3, Fraction(1, 2): 4, Fraction(3, 4): 6}


def coxeter_entry(gii: Fraction, gij: Fraction, gjj: Fraction) -> float:
    """Order of s_a s_b from the Gram block; infinite unless the block is positive definite."""
    c = Fraction(gij) ** 2 / (Fraction(gii) * Fraction(gjj))
    if c >= 1:
        return INF
    m = _ORDER_FROM_COS2.get(c)
    if m is None:
        # non-crystallographic angle: cos^2(pi/m) = c has no rational solution for other m
        raise UnrecognizedRestrictedType(f"angle with cos^2 = {c} is not of the form cos^2(pi/m)")
    return m


def restricted_coxeter_matrix(dec: Decoration) -> list[list[float]]:
    """m_ij over tilde_I from the Gram matrix of Pi_bar (m_ii = 1)."""
    if not is_generalized_satake(dec):
        raise NotGeneralizedSatake("Coxeter data requires a generalized Satake diagram")
    rs = restricted_system(dec, 1)
    idx = [rs.I_star.index(i) for i in rs.tilde_I]
    G = rs.gram
    return [[1 if a == b else coxeter_entry(G[a][a], G[a][b], G[b][b]) for b in idx] for a in idx]


def matrix_order(M: np.ndarray, cap: int = 64) -> float:
    """Multiplicative order of an integer matrix, INF past ``cap``."""
    n = M.shape[0]
    eye = np.eye(n, dtype=M.dtype)
    P = M.copy()
    for k in range(1, cap + 1):
        if (P == eye).all():
            return k
        P = P @ M
    return INF


def tilde_coxeter_matrix(dec: Decoration, cap: int = 64) -> list[list[float]]:
    """Orders of s~_i s~_j computed from the integer matrices on V."""
    tI = tilde_I(dec)
    mats = {i: tilde_s(dec, i).matrix for i in tI}
    return [[1 if i == j else matrix_order(mats[i] @ mats[j], cap) for j in tI] for i in tI]


# ------------------------------------------------------------ three groups


@dataclass(frozen=True)
class ThreeGroups:
    W_bar: int | None
    W_Phi_bar: int | None
    W_tilde: int | None               # order of <s~_i> acting on V
    W_tilde_restricted: int | None    # order of its restriction to V^sigma (None if not stable)
    kernel_is_W_X: bool | None
    method: str                       # "by-enumeration" or "by-theorem"

    @property
    def orders(self) -> tuple:
        return (self.W_bar, self.W_Phi_bar, self.W_tilde)

    def coincide(self) -> bool:
        return (self.W_bar == self.W_Phi_bar == self.W_tilde_restricted
                and self.W_tilde_restricted is not None)


def _perm_group_order(perms: list[list[int]], degree: int) -> int:
    if not perms:
        return 1
    return int(PermutationGroup([Permutation(p, size=degree) for p in perms]).order())


def _action_on(points: list[tuple], mats: list[np.ndarray]) -> list[list[int]] | None:
    index = {p: k for k, p in enumerate(points)}
    out = []
    for M in mats:
        img = []
        for p in points:
            q = tuple(int(x) for x in M @ np.array(p, dtype=np.int64))
            if q not in index:
                return None
            img.append(index[q])
        out.append(img)
    return out


def _restrict(dec: Decoration, M: np.ndarray) -> np.ndarray | None:
    """Matrix of M on V^sigma in the basis 2 alpha_bar (None if V^sigma is not stable).

    Columns are Pi_bar coordinates of M(2 alpha_bar_k) divided by 2; we keep the
    doubled integer version, which is enough for comparing and for orders.
    """
    S = np.asarray(sigma_matrix(dec))
    Vs = _sigma_fixed_basis(dec)
    img = M @ Vs
    if not ((S - np.eye(dec.n, dtype=np.int64)) @ img == 0).all():
        return None
    return orbit_projection(dec) @ img


def w_phi_bar_order(rs: RestrictedRootSystem) -> int:
    """|W(Phi_bar)| via the permutation action of the reflections s_beta on Phi_bar."""
    pts = sorted(rs.roots)
    if not pts:
        return 1
    P = np.array(pts, dtype=np.int64)
    L = math.lcm(*(Fraction(x).denominator for row in rs.gram for x in row))
    G = np.array([[int(Fraction(x) * L) for x in row] for row in rs.gram], dtype=np.int64)
    PG = P @ G
    index = {p: k for k, p in enumerate(pts)}
    gens = []
    for beta in P:
        bb = int(beta @ G @ beta)
        if bb <= 0 or not (beta > 0).any():
            continue
        shift = (2 * (PG @ beta))[:, None] * beta[None, :]
        if (shift % bb).any():
            raise NotCompatible("Phi_bar is not stable under its reflections")
        Q = P - shift // bb
        img = [index.get(tuple(int(x) for x in q)) for q in Q]
        if None in img:
            raise NotCompatible("Phi_bar is not stable under its reflections")
        gens.append(img)
    return _perm_group_order(gens, len(pts))


def three_groups(dec: Decoration, budget: int | None = None) -> ThreeGroups:
    """Orders of W_bar, W(Phi_bar) and W~ = <s~_i>, for finite-type ambient A."""
    require_compatible(dec)
    A = dec.cartan
    if not is_finite_type(A, A.nodes):
        raise BeyondBruteForce("the ambient Weyl group is infinite")
    rs = restricted_system(dec)
    wphi = w_phi_bar_order(rs)
    tI = tilde_I(dec)
    mats = [tilde_s(dec, i).matrix for i in tI]
    phi = sorted(roots(A))
    acts = _action_on(phi, mats)
    w_tilde = _perm_group_order(acts, len(phi))
    restricted_perm = None
    if all(_restrict(dec, M) is not None for M in mats):
        pts = sorted(rs.roots)
        doubled = [np.array([int(2 * x) for x in rs.in_V(p)], dtype=np.int64) for p in pts]
        P = orbit_projection(dec)
        index = {p: k for k, p in enumerate(pts)}
        gens = []
        for M in mats:
            img = [index.get(tuple(int(x) // 2 for x in P @ (M @ v))) for v in doubled]
            if None in img:
                raise NotCompatible("W~ does not stabilize Phi_bar")
            gens.append(img)
        restricted_perm = _perm_group_order(gens, len(pts))
    try:
        W = enumerate_group(A, budget)
    except BeyondBruteForce:
        return ThreeGroups(None, wphi, w_tilde, restricted_perm, None, "by-theorem")
    S = np.asarray(sigma_matrix(dec))
    comm = (np.einsum("kab,bc->kac", W, S) == np.einsum("ab,kbc->kac", S, W)).all(axis=(1, 2))
    Wsig = W[comm]
    Vs = _sigma_fixed_basis(dec)
    P = orbit_projection(dec)
    R = np.einsum("ra,kab,bc->krc", P, Wsig, Vs)
    flat = R.reshape(R.shape[0], -1)
    uniq = np.unique(flat, axis=0)
    w_bar = int(uniq.shape[0])
    ident = (P @ Vs).reshape(-1)
    kernel = Wsig[(flat == ident).all(axis=1)]
    # w lies in W_X iff it fixes every fundamental coweight off X, i.e. the
    # rows of w - 1 outside X vanish
    off = [j for j in range(A.n) if j not in dec.X]
    eye = np.eye(A.n, dtype=np.int64)
    kernel_ok = (len(kernel) == _parabolic_order(A, dec.X)
                 and bool((kernel[:, off, :] == eye[off][None]).all()))
    return ThreeGroups(w_bar, wphi, w_tilde, restricted_perm, kernel_ok, "by-enumeration")


def _parabolic_order(A: CartanMatrix, X) -> int:
    X = sorted(X)
    if not X:
        return 1
    gens = [_refl(A, j) for j in X]
    return int(enumerate_group(A, None, generators=gens).shape[0])
