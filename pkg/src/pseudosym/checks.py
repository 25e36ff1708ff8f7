"""Verification layer on top of the truncated algebra and theta.

  serre_deviation   ad(b_i)^{1-a_ij}(b_j) against its closed form
  onsager_coeffs    the coefficients p^{(r,m)} of the modified Serre relation
  generate_k        the subalgebra generated by n^+_X, h'^theta and the b_i
  k_check           spanning identity and the two pseudo-fixed-point axioms
  iwasawa_check     g' = k + h'^{-theta} + n^+_theta, direct, per degree
  kprime_split      codimension of [k, k] in k
"""
from __future__ import annotations

from dataclasses import dataclass, field

from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from . import scalars
from .cartan import is_finite_type
from .decoration import is_enriched_gsat, special_orbits
from .errors import CaseMismatch, TruncationOverflow
from .lie import Elem, Subspace, _add, _ht, _neg, _sign, from_vec, to_vec
from .scalars import ONE, ZERO
from .theta import ThetaMap, b_generator, b_word
from .weyl import is_root, positive_roots, unit, zeta_X


# ---------------------------------------------------------------- Onsager


def onsager_coeffs(M: int) -> dict[tuple[int, int], int]:
    """p^{(r,m)} for 0 <= m <= M and 0 <= 2r <= m.

    p^{(0,m)} = -1 and p^{(r,m)} = p^{(r,m-1)} + (m-1)(M+1-m) p^{(r-1,m-2)},
    where entries with 2r > m vanish.
    """
    if M < 1:
        raise ValueError("M must be at least 1")
    p: dict[tuple[int, int], int] = {}

    def get(r, m):
        if r < 0 or m < 0 or 2 * r > m:
            return 0
        return p[(r, m)]

    for m in range(M + 1):
        p[(0, m)] = -1
        for r in range(1, m // 2 + 1):
            p[(r, m)] = get(r, m - 1) + (m - 1) * (M + 1 - m) * get(r - 1, m - 2)
    return p


# ------------------------------------------------------------------ Serre


@dataclass
class SerreReport:
    i: int
    j: int
    a_ij: int
    M: int
    case: str
    computed: Elem
    expected: Elem
    match: bool

    def as_dict(self) -> dict:
        return {"i": self.i, "j": self.j, "a_ij": self.a_ij, "M": self.M, "case": self.case,
                "match": self.match, "computed": self.computed.to_json()}


def _theta_star(th: ThetaMap, lam) -> tuple:
    return th.image_degree(lam)


def _in_neg_or_zero(A, v) -> str | None:
    if not any(v):
        return "zero"
    if all(x <= 0 for x in v) and is_root(A, v):
        return "neg"
    return None


def classify_serre(th: ThetaMap, i: int, j: int) -> str:
    """Which of the four cases governs ad(b_i)^{M_ij}(b_j).

    Labels: 'i', 'ii', 'iii', 'iv' (the last meaning the deviation vanishes).
    """
    A, X = th.edec.cartan, th.dec.X
    n = A.n
    ts = _theta_star(th, unit(n, i))
    v1 = _add(_add(ts, unit(n, i)), unit(n, j))
    if _in_neg_or_zero(A, v1):
        return "i"
    v2 = _add(ts, unit(n, j))
    if j not in X and _in_neg_or_zero(A, v2):
        return "ii"
    if ts == _neg(unit(n, i)) and j not in X:
        return "iii"
    return "iv"


def _ad_power(g, x: Elem, y: Elem, m: int) -> Elem:
    for _ in range(m):
        y = g.bracket(x, y)
    return y


def serre_closed_form(th: ThetaMap, i: int, j: int) -> tuple[str, Elem]:
    """(case label with sub-case, predicted value of ad(b_i)^{M_ij}(b_j))."""
    A, X = th.edec.cartan, th.dec.X
    n, g = A.n, th.work
    a = A.entries[i][j]
    M = 1 - a
    ts = _theta_star(th, unit(n, i))
    chi = th.edec.character
    inv = scalars.inv
    zi = zeta_X(A, X, unit(n, i))
    case = classify_serre(th, i, j)
    zero = Elem({})
    if case == "i":
        kind = _in_neg_or_zero(A, _add(_add(ts, unit(n, i)), unit(n, j)))
        if kind == "neg" and a == -1:
            val = g.bracket(th(g.f(i)), g.bracket(g.f(i), g.f(j))).scale(1 + zi)
            return "i:neg", val
        if kind == "zero" and a == -3:
            return "i:zero:-3", g.e(j).scale(-18 * inv(chi(unit(n, i))) ** 2)
        if kind == "zero" and a == -1:
            return "i:zero:-1", (g.h(i).scale(2) + g.h(j)).scale(-inv(chi(unit(n, i))))
        return "i:other", zero
    if case == "ii":
        kind = _in_neg_or_zero(A, _add(ts, unit(n, j)))
        if kind == "neg" and a == 0:
            diff = tuple(x - y for x, y in zip(unit(n, i), unit(n, j)))
            c = ONE + zi * chi(diff)
            return "ii:neg", g.bracket(th(g.f(i)), g.f(j)).scale(c)
        if kind == "zero" and a == 0:
            val = g.h(i).scale(inv(chi(unit(n, j)))) - g.h(j).scale(inv(chi(unit(n, i))))
            return "ii:zero:0", val
        if kind == "zero" and a == -1:
            c = 2 * (inv(chi(unit(n, i))) + inv(chi(unit(n, j))))
            return "ii:zero:-1", b_generator(th, i).scale(c)
        return "ii:other", zero
    if case == "iii":
        p = onsager_coeffs(M)
        bi, bj = b_generator(th, i), b_generator(th, j)
        val = zero
        for r in range(1, M // 2 + 1):
            c = scalars.scalar(p[(r, M)]) * scalars.power(chi(unit(n, i)), -r)
            val = val + _ad_power(g, bi, bj, M - 2 * r).scale(c)
        return "iii", val
    return "iv", zero


def _required_height(th: ThetaMap, nodes, factors: int) -> int:
    s = max([1] + [abs(int(th.sigma[:, k].sum())) for k in nodes])
    return factors * s + 1


def serre_deviation(th: ThetaMap, i: int, j: int, check: bool = True) -> SerreReport:
    """Compute ad(b_i)^{M_ij}(b_j) exactly and compare with the closed form."""
    if i == j:
        raise ValueError("i and j must differ")
    A = th.edec.cartan
    a = A.entries[i][j]
    M = 1 - a
    g = th.ensure_height(_required_height(th, (i, j), M + 1))
    bi, bj = b_generator(th, i), b_generator(th, j)
    dev = _ad_power(g, bi, bj, M)
    if dev.flag:
        raise TruncationOverflow("Serre deviation left the window", suggested_height=2 * g.H)
    case, expected = serre_closed_form(th, i, j)
    match = dev == expected
    rep = SerreReport(i, j, a, M, case, dev, expected, match)
    if check and not match:
        raise CaseMismatch(f"deviation for (i, j) = ({i}, {j}) disagrees with case {case}")
    return rep


def onsager_brute_force(th: ThetaMap, i: int, j: int) -> dict[int, object]:
    """Solve ad(b_i)^M(b_j) = sum_{m<M} c_m ad(b_i)^m(b_j) in the algebra.

    Returns {m: c_m}; raises ValueError if no solution exists.
    """
    A = th.edec.cartan
    M = 1 - A.entries[i][j]
    g = th.ensure_height(_required_height(th, (i, j), M + 1))
    bi, bj = b_generator(th, i), b_generator(th, j)
    powers = [bj]
    for _ in range(M):
        powers.append(g.bracket(bi, powers[-1]))
    vecs = [to_vec(x) for x in powers]
    slots = sorted({s for v in vecs for s in v}, key=g.slot_key)
    cols = [[v.get(s, ZERO) for s in slots] for v in vecs[:M]]
    rhs = [vecs[M].get(s, ZERO) for s in slots]
    aug = DomainMatrix([[cols[c][r] for c in range(M)] + [rhs[r]] for r in range(len(slots))],
                       (len(slots), M + 1), QQ_I)
    R, piv = aug.rref()
    if M in piv:
        raise ValueError("ad(b_i)^M(b_j) is not in the span of lower powers")
    if len(piv) != M:
        raise ValueError("lower powers are dependent; coefficients not unique")
    R = R.to_list()
    return {m: R[r][M] for r, m in enumerate(piv)}


# --------------------------------------------------------- the subalgebra k


def _kernel(rows, n) -> list[list]:
    if not rows:
        return []
    dm = DomainMatrix([[scalars.scalar(x) for x in r] for r in rows], (len(rows), n), QQ_I)
    return dm.nullspace().to_list()


def theta_on_h(th: ThetaMap) -> list[list]:
    """n x n matrix of theta on h' (column k = theta(h_k))."""
    n = th.edec.cartan.n
    cols = []
    zero = th.work.zero_degree
    for k in range(n):
        img = th(th.work.h(k))
        cols.append(list(img.parts.get(zero, (ZERO,) * n)))
    return [[cols[c][r] for c in range(n)] for r in range(n)]


def h_eigenspace(th: ThetaMap, sign: int) -> list[Elem]:
    """Basis of h'^{theta} (sign=+1) or h'^{-theta} (sign=-1)."""
    T = theta_on_h(th)
    n = len(T)
    rows = [[T[r][c] - (sign if r == c else 0) for c in range(n)] for r in range(n)]
    zero = th.work.zero_degree
    return [Elem({zero: tuple(v)}) for v in _kernel(rows, n)]


def n_plus_X(th: ThetaMap) -> list[Elem]:
    X = th.dec.X
    g = th.work
    A = th.edec.cartan
    out = []
    for beta in positive_roots(A, X) if X else []:
        out.extend(g.basis(beta))
    return out


def _in_QX(lam, X) -> bool:
    return all(c == 0 or i in X for i, c in enumerate(lam))


@dataclass
class KData:
    """Level-tagged spanning set of K_L and its echelon form."""

    th: ThetaMap
    space: Subspace
    elems: list = field(default_factory=list)   # (Elem, level)
    dims: list = field(default_factory=list)    # dim K_L for L = 0, 1, ...
    stable: bool = False

    def at_level(self, L: int) -> list[Elem]:
        return [x for x, lv in self.elems if lv <= L]


def generate_k(th: ThetaMap, L: int | None = None) -> KData:
    """K_L: generated by n^+_X and h'^theta, plus at most L factors b_i.

    For finite types L may be None: the loop runs until K_L stabilizes.
    Every bracket is exact or a TruncationOverflow is raised.
    """
    A, X = th.edec.cartan, th.dec.X
    finite = is_finite_type(A, A.nodes)
    if L is None and not finite:
        raise ValueError("a level bound is required for infinite types")
    if not finite:
        hx = max([0] + [_ht(r) for r in positive_roots(A, X)]) if X else 0
        th.ensure_height(_required_height(th, A.nodes, L) + hx + 1)
    g = th.work
    sp = Subspace(key=g.slot_key)
    kd = KData(th, sp)
    ad_gens = [g.e(j) for j in sorted(X)] + h_eigenspace(th, +1)
    bs = [b_generator(th, i) for i in range(A.n)]

    def insert(x: Elem, level: int, queue: list):
        if x.flag:
            raise TruncationOverflow("k generation left the window", suggested_height=2 * g.H)
        if sp.add(to_vec(x)) is not None:
            kd.elems.append((x, level))
            queue.append(x)

    def close(queue: list, level: int):
        while queue:
            x = queue.pop()
            for y in ad_gens:
                insert(g.bracket(y, x), level, queue)

    q: list = []
    for x in n_plus_X(th) + h_eigenspace(th, +1):
        insert(x, 0, q)
    close(q, 0)
    kd.dims.append(len(sp))
    level = 0
    while L is None or level < L:
        level += 1
        prev = [x for x, lv in kd.elems if lv == level - 1]
        q = []
        if level == 1:
            for b in bs:
                insert(b, 1, q)
        for b in bs:
            for x in prev:
                insert(g.bracket(b, x), level, q)
        close(q, level)
        kd.dims.append(len(sp))
        if kd.dims[-1] == kd.dims[-2] and level > 1:
            kd.stable = True
            if L is None:
                break
    return kd


def _dim_sum(space: Subspace, vecs) -> int:
    s = Subspace(space.key)
    s.rows = dict(space.rows)
    for v in vecs:
        s.add(v)
    return len(s)


def _b_words(th: ThetaMap, L: int) -> list[tuple]:
    """(word, b_word) for every basis word of n^- with length at most L."""
    g = th.work
    out = []
    memo = {}
    for beta in sorted((b for b in g.words if _ht(b) <= L), key=lambda b: (_ht(b), b)):
        for k, w in enumerate(g.words[beta]):
            if len(w) == 1:
                x = b_generator(th, w[0])
            else:
                j, k2 = g.pivots[beta][k]
                x = g.bracket(b_generator(th, j), memo[(_add(beta, _neg(unit(g.n, j))), k2)])
            memo[(beta, k)] = x
            out.append((w, x))
    return out


def k_check(th: ThetaMap, H_safe: int) -> dict:
    """Spanning identity per level, the two axioms, and the deviation filtration."""
    A = th.edec.cartan
    finite = is_finite_type(A, A.nodes)
    L = H_safe
    kd = generate_k(th, None if finite else L)
    g = th.work
    gsat = is_enriched_gsat(th.edec)
    V0 = n_plus_X(th) + h_eigenspace(th, +1)
    bw = _b_words(th, L)
    levels = []
    for ell in range(1, L + 1):
        S = Subspace(g.slot_key)
        for x in V0:
            S.add(to_vec(x))
        for w, x in bw:
            if len(w) <= ell:
                S.add(to_vec(x))
        levels.append({"level": ell, "dim_K": kd.dims[ell] if ell < len(kd.dims) else kd.dims[-1],
                       "dim_S": len(S)})
    spanning = all(r["dim_K"] == r["dim_S"] for r in levels)

    # axiom (1): K ∩ h' = h'^theta
    n = A.n
    zero = g.zero_degree
    hvecs = [{(zero, k): ONE} for k in range(n)]
    meet_h = len(kd.space) + n - _dim_sum(kd.space, hvecs)
    axiom1 = meet_h == len(h_eigenspace(th, +1))

    # axiom (2): dim K ∩ (g_a + theta g_a) = dim g_a for roots of height <= L
    rows2 = []
    for lam in [d for d in g.all_degrees() if _sign(d) and abs(_ht(d)) <= L]:
        mu = th.image_degree(lam)
        vecs = [to_vec(x) for x in g.basis(lam)]
        if mu != lam:
            vecs += [to_vec(x) for x in g.basis(mu)]
        U = Subspace(g.slot_key)
        for v in vecs:
            U.add(v)
        meet = len(kd.space) + len(U) - _dim_sum(kd.space, vecs)
        rows2.append({"degree": list(lam), "dim": g.dim_degree(lam), "meet": meet})
    axiom2 = all(r["meet"] == r["dim"] for r in rows2)

    # filtration: deviations in n^+_X + h^theta + span{b_w : alpha_w < lambda_ij}
    filtration = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            M = 1 - A.entries[i][j]
            if not finite and M + 1 > L:
                continue
            lam = tuple(M * (k == i) + (k == j) for k in range(n))
            dev = serre_deviation(th, i, j, check=False).computed
            F = Subspace(g.slot_key)
            for x in V0:
                F.add(to_vec(x))
            for w, x in _all_b_words_below(th, lam):
                F.add(to_vec(x))
            filtration.append({"i": i, "j": j, "ok": F.contains(to_vec(dev))})
    filt_ok = all(r["ok"] for r in filtration)
    return {"gsat": gsat, "levels": levels, "spanning": spanning, "axiom1": axiom1,
            "axiom2": axiom2, "axiom2_rows": rows2, "filtration": filtration,
            "filtration_ok": filt_ok,
            "involutive": th.is_involutive(),
            "consistent": spanning == gsat and (not gsat or (axiom1 and filt_ok))}


def _all_b_words_below(th: ThetaMap, lam) -> list:
    """(word, b_word) for all words whose content is strictly below lam."""
    n = len(lam)
    out = []

    def rec(word, content):
        if word:
            out.append((tuple(word), b_word(th, tuple(word))))
        for k in range(n):
            c2 = list(content)
            c2[k] += 1
            if all(a <= b for a, b in zip(c2, lam)) and tuple(c2) != tuple(lam):
                rec([k] + word, c2)

    rec([], [0] * n)
    return out


# ------------------------------------------------------------------ Iwasawa


def iwasawa_check(th: ThetaMap, H_safe: int) -> dict:
    """g' = k ⊕ h'^{-theta} ⊕ n^+_theta checked exactly on degrees |ht| <= H_safe."""
    A, X = th.edec.cartan, th.dec.X
    finite = is_finite_type(A, A.nodes)
    kd = generate_k(th, None if finite else H_safe)
    g = th.work
    hminus = h_eigenspace(th, -1)
    ntheta = [x for d in g.degrees(+1) if not _in_QX(d, X) for x in g.basis(d)]
    comp = [to_vec(x) for x in hminus + ntheta]
    C = Subspace(g.slot_key)
    for v in comp:
        C.add(v)
    total = _dim_sum(kd.space, comp)
    direct = total == len(kd.space) + len(C)
    S = Subspace(g.slot_key)
    S.rows = dict(kd.space.rows)
    for v in comp:
        S.add(v)
    rows = []
    spanning = True
    pivots_k = {}
    for s in kd.space.pivots():
        pivots_k[s[0]] = pivots_k.get(s[0], 0) + 1
    for lam in g.all_degrees():
        if abs(_ht(lam)) > H_safe and not finite:
            continue
        d = g.dim_degree(lam)
        inside = all(S.contains(to_vec(x)) for x in g.basis(lam))
        if _sign(lam) <= 0:
            spanning &= inside
        rows.append({
            "degree": list(lam), "dim": d, "k_lead": pivots_k.get(lam, 0),
            "h_minus": len(hminus) if _sign(lam) == 0 else 0,
            "n_theta": d if _sign(lam) > 0 and not _in_QX(lam, X) else 0,
            "spanned": inside,
        })
    n_plus_ok = all(
        (r["n_theta"] == r["dim"]) != _in_QX(r["degree"], X)
        for r in rows if _sign(r["degree"]) > 0
    )
    holds = direct and spanning
    return {"holds": holds, "direct": direct, "spanning": spanning, "n_plus_split": n_plus_ok,
            "dim_k": len(kd.space), "dim_h_minus": len(hminus), "rows": rows,
            "gsat": is_enriched_gsat(th.edec)}


# -------------------------------------------------------------------- k'


def kprime_split(th: ThetaMap, H_safe: int) -> dict:
    """codim of D = span[K, K] in K, against |I_diff| + |I_nsf|."""
    A = th.edec.cartan
    finite = is_finite_type(A, A.nodes)
    L = None if finite else H_safe
    kd = generate_k(th, L)
    g = th.work
    top = len(kd.dims) - 1
    D = Subspace(g.slot_key)
    for a, (x, la) in enumerate(kd.elems):
        for y, lb in kd.elems[a + 1:]:
            if finite or la + lb <= top:
                z = g.bracket(x, y)
                if z.flag:
                    raise TruncationOverflow("k' bracket left the window", suggested_height=2 * g.H)
                D.add(to_vec(z))
    orb = special_orbits(th.dec)
    expected = len(orb.I_diff) + len(orb.I_nsf)
    comp = [g.h(i) - g.h(th.dec.tau[i]) for i in sorted(orb.I_diff)]
    comp += [b_generator(th, j) for j in sorted(orb.I_nsf)]
    complement_ok = (_dim_sum(D, [to_vec(x) for x in comp]) == len(D) + len(comp)
                     and all(kd.space.contains(to_vec(x)) for x in comp))
    return {"dim_k": len(kd.space), "dim_kprime": len(D),
            "codim": len(kd.space) - len(D), "expected": expected,
            "I_diff": sorted(orb.I_diff), "I_nsf": sorted(orb.I_nsf),
            "complement_ok": complement_ok,
            "holds": len(kd.space) - len(D) == expected and complement_ok}


# ------------------------------------------------------------ fixed points


def fixed_points(th: ThetaMap) -> list[Elem]:
    """Basis of g^theta for a finite-type algebra (kernel of theta - 1)."""
    from .theta import theta_matrix

    M, slots = theta_matrix(th)
    N = len(slots)
    rows = [[M[r][c] - (ONE if r == c else ZERO) for c in range(N)] for r in range(N)]
    out = []
    for v in _kernel(rows, N):
        out.append(from_vec(th.work, {slots[k]: c for k, c in enumerate(v) if c}))
    return out


def same_span(alg, xs, ys) -> bool:
    a = Subspace(alg.slot_key)
    for x in xs:
        a.add(to_vec(x))
    b = Subspace(alg.slot_key)
    for y in ys:
        b.add(to_vec(y))
    return len(a) == len(b) and all(a.contains(to_vec(y)) for y in ys)
