"""The pseudo-involution theta(X, tau, chi) = Ad(chi) Ad(n_X) omega tau.

Ad(n_X) is the composite of the triple exponentials
Ad(n_j) = exp(ad e_j) exp(-ad f_j) exp(ad e_j) along a reduced word of w_X.
All work happens in a private "working" algebra whose height grows on
demand, because intermediate terms of the exponentials can leave the
caller's window even though the final image does not.
"""
from __future__ import annotations

from typing import Sequence

from . import scalars
from .decoration import EnrichedDecoration, check_character, sigma_matrix
from .errors import InvalidCharacter, TruncationOverflow
from .lie import Elem, TruncatedAlgebra, _sign, build
from .scalars import ONE
from .weyl import longest_element, reduced_word, zeta_X

MAX_WORKING_HEIGHT = 96
_EXP_CAP = 256


def _exp(ad, x: Elem, sign: int = 1) -> Elem:
    total, term, k = x, x, 1
    while term.parts:
        if k > _EXP_CAP:
            raise TruncationOverflow("exponential series did not terminate")
        term = ad(term).scale(scalars.scalar(sign) / k)
        total = total + term
        k += 1
    return Elem(total.parts, total.flag or term.flag)


class ThetaMap:
    """theta for one enriched decoration, acting on elements of ``alg``."""

    def __init__(self, edec: EnrichedDecoration, alg: TruncatedAlgebra, working_height: int | None = None):
        v = check_character(edec)
        if not v:
            raise InvalidCharacter(v.reason)
        A = edec.cartan
        if A != alg.cartan:
            raise ValueError("decoration and algebra use different Cartan matrices")
        self.edec = edec
        self.alg = alg
        self.dec = edec.base
        self.sigma = sigma_matrix(self.dec)
        self.reduced_word = reduced_word(A, longest_element(A, self.dec.X))
        stretch = max(1, max(abs(int(self.sigma[:, i].sum())) for i in range(A.n)))
        guess = alg.H * stretch + 2 * len(self.reduced_word) + 1
        self.working_height = working_height or guess
        self.work = alg if alg.complete else build(A, max(alg.H, self.working_height))
        self._memo: dict = {}

    # -------------------------------------------------------------- pieces

    def image_degree(self, lam) -> tuple:
        """theta(g_lam) = g_{-sigma(lam)}."""
        return tuple(int(-x) for x in self.sigma @ list(lam))

    def _tau(self, lam, k) -> Elem:
        tau, g = self.dec.tau, self.work
        s = _sign(lam)
        if s == 0:
            return g.h(tau[k])
        word = tuple(tau[j] for j in g.word(lam, k))
        return g.from_word(word, s)

    def _ad_n(self, i: int, x: Elem) -> Elem:
        g = self.work
        x = _exp(lambda y: g.ad_e(i, y), x)
        x = _exp(lambda y: g.ad_f(i, y), x, -1)
        return _exp(lambda y: g.ad_e(i, y), x)

    def _chi(self, x: Elem) -> Elem:
        out = {}
        for d, c in x.parts.items():
            s = self.edec.character(d)
            out[d] = tuple(v * s for v in c)
        return Elem(out, x.flag)

    def _basis_image(self, lam, k) -> Elem:
        key = (lam, k)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        x = self.work.omega(self._tau(lam, k))
        for i in reversed(self.reduced_word):
            x = self._ad_n(i, x)
        x = self._chi(x)
        self._memo[key] = x
        return x

    # ---------------------------------------------------------------- API

    def _grow(self) -> None:
        H = 2 * self.work.H
        if H > MAX_WORKING_HEIGHT:
            raise TruncationOverflow(
                f"theta needs more than height {MAX_WORKING_HEIGHT}", suggested_height=H)
        self.working_height = H
        self.work = build(self.edec.cartan, H)
        self._memo.clear()

    def __call__(self, x: Elem) -> Elem:
        x._require_exact()
        while True:
            out = Elem({}, False)
            for lam, k, c in x.items():
                out = out + self._basis_image(lam, k).scale(c)
            if not out.flag:
                return out
            if self.work.complete:
                raise TruncationOverflow("theta left a complete algebra")
            self._grow()

    def ensure_height(self, H: int) -> TruncatedAlgebra:
        """Make the working algebra at least H high; returns it."""
        if not self.work.complete and self.work.H < H:
            if H > MAX_WORKING_HEIGHT:
                raise TruncationOverflow(f"height {H} exceeds the working cap", suggested_height=H)
            self.work = build(self.edec.cartan, H)
            self.working_height = H
            self._memo.clear()
        return self.work

    def is_involutive(self) -> bool:
        """theta^2 = 1, i.e. chi(alpha_i)^2 zeta_X(alpha_i) = 1 for every i."""
        n = self.edec.cartan.n
        return all(self.square_scalar(tuple(int(k == i) for k in range(n))) == ONE for i in range(n))

    def square_scalar(self, lam) -> object:
        """chi(lam)^2 zeta_X(lam): the scalar by which theta^2 acts on g_lam."""
        A = self.edec.cartan
        z = zeta_X(A, self.dec.X, lam)
        c = self.edec.character(lam)
        return c * c * z


def theta(edec: EnrichedDecoration, alg: TruncatedAlgebra) -> ThetaMap:
    return ThetaMap(edec, alg)


def apply_theta(th: ThetaMap, x: Elem) -> Elem:
    return th(x)


def b_generator(th: ThetaMap, i: int) -> Elem:
    """b_i = f_i for i in X, else f_i + theta(f_i)."""
    f = th.work.f(i)
    if i in th.dec.X:
        return f
    return f + th(f)


def b_word(th: ThetaMap, word: Sequence[int]) -> Elem:
    """b_w = [b_j1, [b_j2, ... b_jk]] (left-normed like the f-words)."""
    g = th.work
    x = b_generator(th, word[-1])
    for j in reversed(tuple(word[:-1])):
        x = g.bracket(b_generator(th, j), x)
    return x


def theta_matrix(th: ThetaMap) -> tuple[list[list], list]:
    """Matrix of theta on the whole (finite) algebra, columns = images."""
    g = th.work
    if not g.complete:
        raise ValueError("theta_matrix needs a finite-type algebra")
    slots = [(d, k) for d in g.all_degrees() for k in range(g.dim_degree(d))]
    index = {s: r for r, s in enumerate(slots)}
    M = [[scalars.ZERO] * len(slots) for _ in slots]
    for col, (d, k) in enumerate(slots):
        for d2, k2, c in th(g.basis_element(d, k)).items():
            M[index[(d2, k2)]][col] = c
    return M, slots
