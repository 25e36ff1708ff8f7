"""Compatible decorations (X, tau), generalized Satake diagrams and friends."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import scalars
from .cartan import CartanMatrix, components, diagram_automorphisms, is_finite_type, perp
from .catalogue import classify_type
from .errors import InvalidCharacter, NotCompatible, RankGuardExceeded
from .weyl import longest_element, opposition_involution, zeta_X

RANK_GUARD = 8


@dataclass(frozen=True)
class Decoration:
    """A pair (X, tau): X a node subset, tau a node permutation (tau[i] = image of i)."""

    cartan: CartanMatrix
    X: frozenset
    tau: tuple

    def __post_init__(self):
        object.__setattr__(self, "X", frozenset(int(x) for x in self.X))
        object.__setattr__(self, "tau", tuple(int(t) for t in self.tau))
        n = self.cartan.n
        if len(self.tau) != n or sorted(self.tau) != list(range(n)):
            raise ValueError("tau must be a permutation of the nodes")
        if not self.X <= set(range(n)):
            raise ValueError("X must be a subset of the nodes")

    @property
    def n(self) -> int:
        return self.cartan.n

    def tau_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, t) for i, t in enumerate(self.tau) if i < t)

    def tau_orbits(self) -> list[tuple[int, ...]]:
        """tau-orbits of I \\ X, each sorted, in order of their smallest node."""
        out = []
        for i in range(self.n):
            if i in self.X:
                continue
            t = self.tau[i]
            if t >= i:
                out.append((i,) if t == i else (i, t))
        return out

    def I_star(self) -> tuple[int, ...]:
        """One representative per tau-orbit outside X: the smallest node."""
        return tuple(o[0] for o in self.tau_orbits())

    def key(self) -> tuple:
        return (tuple(sorted(self.X)), self.tau_pairs())

    def __repr__(self) -> str:
        from .notation import render
        return f"Decoration({render(self)})"


@dataclass(frozen=True)
class EnrichedDecoration:
    """A decoration plus chi(alpha_i) in Q(i), one nonzero value per node."""

    base: Decoration
    chi: tuple = field(default=())

    def __post_init__(self):
        chi = tuple(scalars.scalar(c) for c in self.chi) if self.chi else (scalars.ONE,) * self.base.n
        if len(chi) != self.base.n:
            raise ValueError("chi needs one value per node")
        if any(not c for c in chi):
            raise InvalidCharacter("chi(alpha_i) must be nonzero")
        object.__setattr__(self, "chi", chi)

    @property
    def cartan(self) -> CartanMatrix:
        return self.base.cartan

    def character(self, lam) -> object:
        """chi(lam) = prod chi(alpha_i)^{lam_i} for integral lam."""
        out = scalars.ONE
        for c, k in zip(self.chi, lam):
            if k:
                out = out * scalars.power(c, int(k))
        return out


def decoration(A: CartanMatrix, X: Iterable[int] = (), tau: Mapping[int, int] | Sequence[int] | None = None) -> Decoration:
    """Build (X, tau) from 0-based indices; tau may be a full image tuple or a dict of swaps."""
    if tau is None:
        img = list(range(A.n))
    elif isinstance(tau, Mapping):
        img = list(range(A.n))
        for a, b in tau.items():
            img[a], img[b] = b, a
    else:
        img = list(tau)
    return Decoration(A, frozenset(X), tuple(img))


# ------------------------------------------------------------------ checks


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def is_compatible(dec: Decoration) -> Verdict:
    """tau in Aut(A), tau^2 = id, X finite type, tau(X) = X and tau|_X = oi_X."""
    A, X, tau = dec.cartan, dec.X, dec.tau
    n = A.n
    if any(A.entries[tau[i]][tau[j]] != A.entries[i][j] for i in range(n) for j in range(n)):
        return Verdict(False, "tau is not a diagram automorphism")
    if any(tau[tau[i]] != i for i in range(n)):
        return Verdict(False, "tau is not an involution")
    if not is_finite_type(A, X):
        return Verdict(False, "X is not of finite type")
    if {tau[i] for i in X} != set(X):
        return Verdict(False, "tau does not stabilize X")
    oi = opposition_involution(A, X)
    for i in sorted(X):
        if tau[i] != oi[i]:
            return Verdict(False, f"tau differs from oi_X at node {A.label(i)}")
    return Verdict(True)


def require_compatible(dec: Decoration) -> None:
    v = is_compatible(dec)
    if not v:
        raise NotCompatible(v.reason)


def is_generalized_satake(dec: Decoration) -> bool:
    """No tau-fixed i outside X whose component in X ∪ {i} is of type A2."""
    require_compatible(dec)
    A = dec.cartan
    for i in range(A.n):
        if i in dec.X or dec.tau[i] != i:
            continue
        comp = next(c for c in components(A, set(dec.X) | {i}) if i in c)
        if len(comp) == 2 and classify_type(A, comp).name == "A2":
            return False
    return True


def odd_nodes(dec: Decoration) -> frozenset[int]:
    """i outside X with tau(i) = i and zeta_X(alpha_i) = -1."""
    require_compatible(dec)
    A = dec.cartan
    out = set()
    for i in range(A.n):
        if i not in dec.X and dec.tau[i] == i:
            if zeta_X(A, dec.X, _unit(A.n, i)) == -1:
                out.add(i)
    return frozenset(out)


def is_satake(dec: Decoration) -> bool:
    return not odd_nodes(dec)


def _unit(n, i):
    return tuple(1 if k == i else 0 for k in range(n))


# ------------------------------------------------------------ matrices on V


def tau_matrix(dec: Decoration) -> np.ndarray:
    n = dec.n
    T = np.zeros((n, n), dtype=np.int64)
    for j in range(n):
        T[dec.tau[j], j] = 1
    return T


def sigma_matrix(dec: Decoration) -> np.ndarray:
    """sigma = w_X ∘ tau as an integer matrix on the root lattice."""
    return _sigma(dec.cartan, tuple(sorted(dec.X)), dec.tau)


@lru_cache(maxsize=None)
def _sigma(A: CartanMatrix, X: tuple, tau: tuple) -> np.ndarray:
    wX = longest_element(A, X).matrix
    T = np.zeros((A.n, A.n), dtype=np.int64)
    for j in range(A.n):
        T[tau[j], j] = 1
    S = wX @ T
    S.setflags(write=False)
    return S


def theta_star_matrix(dec: Decoration) -> np.ndarray:
    """The dual action of theta(X, tau) on V: -sigma."""
    return -sigma_matrix(dec)


def wX_coefficients(dec: Decoration, i: int) -> dict[int, object]:
    """v_ij = -(alpha_i + alpha_tau(i))(kappa_j^vee) for j in X.

    kappa_j^vee is the fundamental coweight of X, so lam(kappa_j^vee) is the
    j-th entry of A_X^{-1} applied to (lam(h_k))_{k in X}.
    """
    from sympy import Matrix

    A = dec.cartan
    X = sorted(dec.X)
    if not X:
        return {}
    AX = Matrix([[A.entries[a][b] for b in X] for a in X])
    lam = [0] * A.n
    lam[i] += 1
    lam[dec.tau[i]] += 1
    pair = Matrix([A.pairing_h(lam, k) for k in X])
    coeffs = AX.inv() * pair
    return {j: -c for j, c in zip(X, coeffs)}


# --------------------------------------------------------------- characters


def check_character(edec: EnrichedDecoration) -> Verdict:
    """chi lies in H~^theta: chi(sigma(alpha_i)) = chi(alpha_i)^{-1} for all i."""
    S = sigma_matrix(edec.base)
    for i in range(edec.base.n):
        lhs = edec.character(S[:, i])
        if lhs * edec.chi[i] != scalars.ONE:
            return Verdict(False, f"chi(sigma(alpha_{edec.cartan.label(i)})) != chi(alpha_{edec.cartan.label(i)})^-1")
    return Verdict(True)


def is_enriched_gsat(edec: EnrichedDecoration) -> bool:
    """Generalized Satake and chi(alpha_tau(i)) = chi(alpha_i) on X^perp where a_{i tau(i)} = 0."""
    v = check_character(edec)
    if not v:
        raise InvalidCharacter(v.reason)
    dec = edec.base
    if not is_generalized_satake(dec):
        return False
    A = dec.cartan
    for i in perp(A, dec.X):
        t = dec.tau[i]
        if A.entries[i][t] == 0 and edec.chi[t] != edec.chi[i]:
            return False
    return True


# ---------------------------------------------------------- special orbits


@dataclass(frozen=True)
class OrbitReport:
    I_star: tuple
    I_diff: frozenset
    I_ns: frozenset
    I_nsf: frozenset
    odd_nodes: frozenset

    @property
    def special(self) -> frozenset:
        """Orbits drawn with an 's' mark: I_diff ∪ I_nsf."""
        return self.I_diff | self.I_nsf


def special_orbits(dec: Decoration, I_star: Sequence[int] | None = None) -> OrbitReport:
    require_compatible(dec)
    A, X, tau = dec.cartan, dec.X, dec.tau
    star = tuple(dec.I_star() if I_star is None else I_star)
    if sorted(min(i, tau[i]) for i in star) != list(dec.I_star()) or set(star) & X:
        raise ValueError("I_star must contain one node per tau-orbit outside X")
    Xp = perp(A, X)
    diff = frozenset(
        i for i in star
        if tau[i] != i and i not in perp(A, set(X) | {tau[i]})
    )
    ns = frozenset(i for i in star if i in Xp and tau[i] == i)
    nsf = frozenset(j for j in ns if all(A.entries[i][j] % 2 == 0 for i in ns))
    return OrbitReport(star, diff, ns, nsf, odd_nodes(dec))


# ------------------------------------------------------------- enumeration

COMPATIBLE, GSAT, SATAKE = "compatible", "gsat", "satake"


def _involutions(A: CartanMatrix) -> list[tuple[int, ...]]:
    return [p for p in diagram_automorphisms(A) if all(p[p[i]] == i for i in range(A.n))]


def enumerate_decorations(A: CartanMatrix, filter: str = COMPATIBLE,
                          rank_guard: int = RANK_GUARD) -> list[Decoration]:
    """All (X, tau) passing ``filter``; X by size then lex, tau in Aut(A) order."""
    if A.n > rank_guard:
        raise RankGuardExceeded(f"rank {A.n} exceeds the guard {rank_guard}")
    if filter not in (COMPATIBLE, GSAT, SATAKE):
        raise ValueError(f"unknown filter {filter!r}")
    invs = _involutions(A)
    out = []
    for size in range(A.n + 1):
        for X in combinations(range(A.n), size):
            if not is_finite_type(A, X):
                continue
            oi = opposition_involution(A, X) if X else {}
            for t in invs:
                if any(t[i] != oi[i] for i in X):
                    continue
                dec = Decoration(A, frozenset(X), t)
                if filter == GSAT and not is_generalized_satake(dec):
                    continue
                if filter == SATAKE and not is_satake(dec):
                    continue
                out.append(dec)
    return out


def act(psi: Sequence[int], dec: Decoration) -> Decoration:
    """psi·(X, tau) = (psi(X), psi tau psi^{-1})."""
    n = dec.n
    new_tau = [0] * n
    for i in range(n):
        new_tau[psi[i]] = psi[dec.tau[i]]
    return Decoration(dec.cartan, frozenset(psi[x] for x in dec.X), tuple(new_tau))


def act_enriched(psi: Sequence[int], edec: EnrichedDecoration) -> EnrichedDecoration:
    chi = [None] * edec.base.n
    for i in range(edec.base.n):
        chi[psi[i]] = edec.chi[i]
    return EnrichedDecoration(act(psi, edec.base), tuple(chi))


def canonical(dec: Decoration) -> Decoration:
    """Lexicographically minimal image under Aut(A)."""
    images = [act(p, dec) for p in diagram_automorphisms(dec.cartan)]
    return min(images, key=lambda d: d.key())


def orbit_classes(decs: Iterable[Decoration]) -> list[Decoration]:
    """Canonical representatives of the Aut(A)-orbits, sorted by key."""
    reps = {}
    for d in decs:
        c = canonical(d)
        reps.setdefault(c.key(), c)
    return [reps[k] for k in sorted(reps)]
