"""Text notation for decorated diagrams.

    A4[X=2,3; tau=1:4]
    G2[X=1]
    Gvhat2[X=1]
    A1xA1[tau=1:2; chi=1:2,2:1/2]
    A2[chi=1:0|1]            (chi value re|im, both rational)

Node labels follow the Cartan matrix (1-based for finite types, 0-based for a
single affine type).  Products like ``A1xA1`` number their nodes 1..n.
"""
from __future__ import annotations

import re

from . import scalars
from .cartan import CartanMatrix, validate_gcm
from .catalogue import build, parse_component
from .decoration import Decoration, EnrichedDecoration
from .errors import ParseError

_TYPE_RE = re.compile(r"[A-Za-z0-9^()_]+(?:[x×][A-Za-z0-9^()_]+)*")
_LABEL_RE = re.compile(r"\s*(-?\d+)\s*")


def cartan_from_name(name: str) -> CartanMatrix:
    """Named type or a product of named types (block diagonal)."""
    parts = [p for p in re.split(r"[x×]", name) if p]
    if len(parts) == 1:
        return build(parse_component(parts[0]))
    blocks = [build(parse_component(p)) for p in parts]
    n = sum(b.n for b in blocks)
    ent = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.n):
            for j in range(b.n):
                ent[off + i][off + j] = b.entries[i][j]
        off += b.n
    return validate_gcm(ent, labels=range(1, n + 1), name="x".join(b.name for b in blocks),
                        allow_decomposable=True)


def _label_index(A: CartanMatrix, text: str, pos: int) -> int:
    m = _LABEL_RE.fullmatch(text)
    if not m:
        raise ParseError(f"expected a node label, got {text!r}", pos)
    try:
        return A.index(int(m.group(1)))
    except KeyError:
        raise ParseError(f"no node labelled {m.group(1)}", pos) from None


def _split(text: str, sep: str, base: int):
    """Split keeping the absolute offset of each piece."""
    out, start = [], 0
    for k, ch in enumerate(text + sep):
        if ch == sep:
            out.append((text[start:k], base + start))
            start = k + 1
    return out


def parse(spec: str) -> EnrichedDecoration:
    """Parse a diagram spec into an enriched decoration (chi defaults to 1)."""
    s = spec.strip()
    lead = len(spec) - len(spec.lstrip())
    m = _TYPE_RE.match(s)
    if not m:
        raise ParseError("expected a type name", lead)
    try:
        A = cartan_from_name(m.group(0))
    except ParseError as e:
        raise ParseError(str(e).split(" (at position")[0], lead) from None
    except ValueError as e:
        raise ParseError(str(e), lead) from None
    rest = s[m.end():]
    off = lead + m.end()
    X, tau, chi = set(), list(range(A.n)), [scalars.ONE] * A.n
    if rest.strip():
        if not rest.startswith("[") or not rest.rstrip().endswith("]"):
            raise ParseError("expected '[...]' after the type name", off)
        body = rest.rstrip()[1:-1]
        seen = set()
        for clause, cpos in _split(body, ";", off + 1):
            if not clause.strip():
                continue
            if "=" not in clause:
                raise ParseError(f"expected key=value, got {clause.strip()!r}", cpos)
            key, val = clause.split("=", 1)
            key = key.strip()
            vpos = cpos + clause.index("=") + 1
            if key in seen:
                raise ParseError(f"duplicate clause {key!r}", cpos)
            seen.add(key)
            items = [(t, p) for t, p in _split(val, ",", vpos) if t.strip()]
            if key == "X":
                for t, p in items:
                    X.add(_label_index(A, t, p))
            elif key == "tau":
                for t, p in items:
                    if ":" not in t:
                        raise ParseError(f"expected a:b in tau, got {t.strip()!r}", p)
                    a, b = t.split(":", 1)
                    i, j = _label_index(A, a, p), _label_index(A, b, p + len(a) + 1)
                    if tau[i] != i or tau[j] != j:
                        raise ParseError("node swapped twice in tau", p)
                    tau[i], tau[j] = j, i
            elif key == "chi":
                for t, p in items:
                    if ":" not in t:
                        raise ParseError(f"expected i:value in chi, got {t.strip()!r}", p)
                    a, b = t.split(":", 1)
                    i = _label_index(A, a, p)
                    chi[i] = scalars.parse_scalar(b, p + len(a) + 1)
                    if not chi[i]:
                        raise ParseError("chi values must be nonzero", p + len(a) + 1)
            else:
                raise ParseError(f"unknown clause {key!r}", cpos)
    return EnrichedDecoration(Decoration(A, frozenset(X), tuple(tau)), tuple(chi))


def parse_decoration(spec: str) -> Decoration:
    return parse(spec).base


def render(obj) -> str:
    """Inverse of :func:`parse` for Decoration or EnrichedDecoration."""
    if isinstance(obj, EnrichedDecoration):
        dec, chi = obj.base, obj.chi
    else:
        dec, chi = obj, None
    A = dec.cartan
    lab = A.label
    clauses = []
    if dec.X:
        clauses.append("X=" + ",".join(str(lab(i)) for i in sorted(dec.X)))
    if dec.tau_pairs():
        clauses.append("tau=" + ",".join(f"{lab(i)}:{lab(j)}" for i, j in dec.tau_pairs()))
    if chi is not None:
        vals = [f"{lab(i)}:{scalars.format_scalar(c)}" for i, c in enumerate(chi) if c != scalars.ONE]
        if vals:
            clauses.append("chi=" + ",".join(vals))
    return f"{A.name or '?'}[{'; '.join(clauses)}]"


def parse_chi(text: str, A: CartanMatrix) -> tuple:
    """The --chi flag: '1:2,2:1/2,3:0|1' (unlisted nodes get 1)."""
    chi = [scalars.ONE] * A.n
    for t, p in _split(text, ",", 0):
        if not t.strip():
            continue
        if ":" not in t:
            raise ParseError(f"expected i:value, got {t.strip()!r}", p)
        a, b = t.split(":", 1)
        i = _label_index(A, a, p)
        chi[i] = scalars.parse_scalar(b, p + len(a) + 1)
        if not chi[i]:
            raise ParseError("chi values must be nonzero", p + len(a) + 1)
    return tuple(chi)
