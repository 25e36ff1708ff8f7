"""Command-line front end.

    pseudosym check    'A3[X=2; tau=1:3]'
    pseudosym classify A 1 6 --format tsv
    pseudosym verify   'G2[X=1]' --height 6 --format json
    pseudosym restricted 'Gvhat2[X=1]'
    pseudosym table    4
    pseudosym render   'A2[tau=2:1]' --format dot

Exit codes: 0 success, 2 bad input, 3 a verification disagreed,
4 a resource guard tripped (rank, brute force, or truncation height).
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable

from . import scalars
from .cartan import CartanMatrix, dynkin_edges, is_finite_type
from .catalogue import classify_type, named
from .checks import iwasawa_check, k_check, kprime_split, serre_deviation
from .decoration import (COMPATIBLE, GSAT, SATAKE, Decoration, EnrichedDecoration, canonical,
                         enumerate_decorations, is_compatible, is_enriched_gsat,
                         is_generalized_satake, is_satake, odd_nodes, orbit_classes,
                         special_orbits)
from .errors import (BeyondBruteForce, CaseMismatch, InvalidCharacter, NotCompatible,
                     NotGeneralizedSatake, OrderCapExceeded, ParseError, PseudosymError,
                     RankGuardExceeded, TruncationOverflow, UnrecognizedRestrictedType)
from .lie import build
from .notation import parse, parse_chi, render
from .restricted import gsat_battery, restricted_system, restricted_type, three_groups
from .table import diff_typeA, table_typeA
from .theta import ThetaMap

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_RESOURCE = 0, 2, 3, 4
DEFAULT_HEIGHT = 8
DEFAULT_BUDGET = 100_000


class VerificationFailed(PseudosymError):
    """A theorem-level check disagreed with its prediction."""


# ------------------------------------------------------------------ helpers


def _labels(A: CartanMatrix, nodes) -> list[int]:
    return [A.label(i) for i in sorted(nodes)]


def _frac(x) -> str:
    return str(Fraction(x))


def _load(spec: str, chi: str | None) -> EnrichedDecoration:
    edec = parse(spec)
    if chi:
        edec = EnrichedDecoration(edec.base, parse_chi(chi, edec.cartan))
    return edec


def _restricted_name(dec: Decoration, height: int) -> dict | None:
    if not is_generalized_satake(dec):
        return None
    try:
        t = restricted_type(dec, height)
    except UnrecognizedRestrictedType as e:
        return {"name": None, "pretty": None, "note": str(e)}
    return {"name": t.name, "pretty": t.pretty}


# ------------------------------------------------------------------ reports


def check_report(edec: EnrichedDecoration, height: int = DEFAULT_HEIGHT) -> dict:
    """Diagnostics for one decoration."""
    dec = edec.base
    A = dec.cartan
    v = is_compatible(dec)
    out = {
        "spec": render(edec),
        "type": A.name,
        "compatible": bool(v),
        "reason": v.reason or None,
        "X_type": classify_type(A, dec.X).name,
    }
    if not v:
        return out
    orb = special_orbits(dec)
    out.update({
        "gsat": is_generalized_satake(dec),
        "satake": is_satake(dec),
        "odd": _labels(A, odd_nodes(dec)),
        "I_diff": _labels(A, orb.I_diff),
        "I_nsf": _labels(A, orb.I_nsf),
        "special": _labels(A, orb.special),
        "canonical": render(canonical(dec)),
        "restricted": _restricted_name(dec, height),
    })
    if any(c != scalars.ONE for c in edec.chi):
        try:
            out["enriched_gsat"] = is_enriched_gsat(edec)
        except InvalidCharacter as e:
            out["enriched_gsat"] = None
            out["chi_error"] = str(e)
    return out


def _classify_row(dec: Decoration, height: int) -> dict:
    A = dec.cartan
    orb = special_orbits(dec)
    return {
        "spec": render(dec),
        "gsat": is_generalized_satake(dec),
        "satake": is_satake(dec),
        "restricted": _restricted_name(dec, height),
        "special": _labels(A, orb.special),
        "odd": _labels(A, odd_nodes(dec)),
    }


def classify_report(family: str, lo: int, hi: int, filt: str = GSAT,
                    height: int = DEFAULT_HEIGHT, jobs: int = 1) -> dict:
    """Orbit representatives for family ranks lo..hi, with a table diff for type A."""
    out = {"family": family, "filter": filt, "ranks": []}
    for n in range(lo, hi + 1):
        A = named(f"{family}{n}")
        reps = orbit_classes(enumerate_decorations(A, filt))
        if jobs > 1 and len(reps) > 1:
            with ProcessPoolExecutor(jobs) as ex:
                rows = list(ex.map(_classify_row, reps, [height] * len(reps)))
        else:
            rows = [_classify_row(d, height) for d in reps]
        entry = {"rank": n, "type": A.name, "count": len(rows), "rows": rows}
        if family.upper() == "A" and filt == GSAT:
            entry["table_diff"] = diff_typeA(n).as_dict()
            lab = {r.key(): r.label for r in table_typeA(n)}
            for r, d in zip(rows, reps):
                r["table_row"] = lab.get(d.key())
        out["ranks"].append(entry)
    out["ok"] = all(e.get("table_diff", {"ok": True})["ok"] for e in out["ranks"])
    return out


def restricted_report(edec: EnrichedDecoration, height: int = DEFAULT_HEIGHT) -> dict:
    dec = edec.base
    A = dec.cartan
    rs = restricted_system(dec, height)
    out = {
        "spec": render(dec),
        "I_star": _labels(A, rs.I_star),
        "tilde_I": _labels(A, rs.tilde_I),
        "epsilon": {str(A.label(i)): e for i, e in enumerate(A.epsilon)},
        "simple": {str(A.label(i)): [_frac(x) for x in rs.simple[i]] for i in rs.I_star},
        "gram": [[_frac(x) for x in row] for row in rs.gram],
        "positive": [[_frac(x) for x in r] for r in rs.positive()],
        "complete": rs.complete,
        "height": rs.height,
        "patterns": {str(A.label(i)): list(p) for i, p in rs.patterns.items()},
        "gsat": is_generalized_satake(dec),
        "restricted": _restricted_name(dec, height),
        "notes": _epsilon_notes(A),
    }
    return out


def _epsilon_notes(A) -> list[str]:
    """Gram values depend on which nodes carry which eps; say which we used."""
    if len(set(A.epsilon)) == 1:
        return []
    eps = ", ".join(f"eps_{A.label(i)} = {e}" for i, e in enumerate(A.epsilon))
    return [f"Gram entries use (alpha_i, alpha_j) = eps_i a_ij with {eps} (the coprime "
            f"symmetrizer of this matrix); attaching the same eps values to other nodes "
            f"changes the entries"]


def _status(ok: bool | None) -> str:
    return "n/a" if ok is None else ("pass" if ok else "fail")


def verify_report(edec: EnrichedDecoration, height: int = DEFAULT_HEIGHT,
                  budget: int = DEFAULT_BUDGET) -> dict:
    """Every theorem-level check for one enriched decoration.

    Each theorem gets "pass" when the computation agrees with its prediction
    (including the "only if" direction), "fail" otherwise, or "n/a".
    """
    dec = edec.base
    A = dec.cartan
    v = is_compatible(dec)
    if not v:
        raise NotCompatible(v.reason)
    finite = is_finite_type(A, A.nodes)
    gsat = is_generalized_satake(dec)
    egsat = is_enriched_gsat(edec)
    theorems: dict = {}

    bat = gsat_battery(dec)
    vals = bat.values()
    theorems["battery"] = {"status": _status(bat.consistent() and vals[0] == gsat),
                           "values": bat.as_dict()}

    if finite:
        tg = three_groups(dec, budget)
        ok = (tg.coincide() and tg.kernel_is_W_X is not False) if gsat and tg.W_bar is not None else None
        theorems["three_groups"] = {"status": _status(ok), "orders": list(tg.orders),
                                    "restricted_order": tg.W_tilde_restricted,
                                    "kernel_is_W_X": tg.kernel_is_W_X, "method": tg.method}
    else:
        theorems["three_groups"] = {"status": "n/a", "note": "infinite Weyl group"}

    alg = build(A, height)
    th = ThetaMap(edec, alg)
    kc = k_check(th, height)
    theorems["spanning"] = {"status": _status(kc["consistent"]), "holds": kc["spanning"],
                            "levels": kc["levels"], "axiom1": kc["axiom1"],
                            "filtration": kc["filtration_ok"]}
    iw = iwasawa_check(th, height)
    theorems["iwasawa"] = {"status": _status(iw["holds"] == egsat), "holds": iw["holds"],
                           "direct": iw["direct"], "n_plus_split": iw["n_plus_split"]}
    if egsat:
        kp = kprime_split(th, height)
        theorems["kprime"] = {"status": _status(kp["holds"]), **kp}
    else:
        theorems["kprime"] = {"status": "n/a"}

    serre = []
    all_match = True
    for i in A.nodes:
        for j in A.nodes:
            if i == j:
                continue
            rep = serre_deviation(th, i, j, check=False)
            all_match &= rep.match
            serre.append({"i": A.label(i), "j": A.label(j), "case": rep.case, "match": rep.match})
    theorems["serre"] = {"status": _status(all_match), "pairs": serre}

    degrees = []
    ax2 = {tuple(r["degree"]): r for r in kc["axiom2_rows"]}
    for r in iw["rows"]:
        d = tuple(r["degree"])
        checks = {"spanned": r["spanned"], "k_lead": r["k_lead"], "n_theta": r["n_theta"],
                  "h_minus": r["h_minus"]}
        if d in ax2:
            checks["axiom2_meet"] = ax2[d]["meet"]
        degrees.append({"degree": list(d), "dim": r["dim"], "checks": checks})

    return {
        "spec": render(edec),
        "height": height,
        "gsat": gsat,
        "enriched_gsat": egsat,
        "involutive": th.is_involutive(),
        "restricted": _restricted_name(dec, height),
        "axiom2": kc["axiom2"],
        "theorems": theorems,
        "degrees": degrees,
        "ok": all(t["status"] != "fail" for t in theorems.values()),
    }


def table_report(lo: int, hi: int) -> dict:
    out = {"ranks": []}
    for n in range(lo, hi + 1):
        rows = [{"label": r.label, "p": r.p, "spec": render(r.decoration),
                 "restricted": r.restricted} for r in table_typeA(n)]
        out["ranks"].append({"n": n, "rows": rows, "diff": diff_typeA(n).as_dict()})
    out["ok"] = all(e["diff"]["ok"] for e in out["ranks"])
    return out


def render_report(edec: EnrichedDecoration, canon: bool = False) -> dict:
    dec = canonical(edec.base) if canon else edec.base
    obj = dec if canon else edec
    return {"spec": render(obj)}


# -------------------------------------------------------------- formatting


def to_dot(dec: Decoration) -> str:
    """Graphviz drawing: X nodes filled, tau as double arrows, s/o marks."""
    A = dec.cartan
    marks: dict[int, str] = {}
    if is_compatible(dec):
        orb = special_orbits(dec)
        for i in orb.special:
            marks[i] = "s"
        for i in odd_nodes(dec):
            marks[i] = marks.get(i, "") + "o"
    lines = [f'graph "{A.name or "A"}" {{', "  node [shape=circle, width=0.3, fixedsize=true];"]
    for i in A.nodes:
        attrs = [f'label="{A.label(i)}"']
        if i in dec.X:
            attrs.append("style=filled, fillcolor=black, fontcolor=white")
        if i in marks:
            attrs.append(f'xlabel="{marks[i]}"')
        lines.append(f"  n{i} [{', '.join(attrs)}];")
    for i, j, m in dynkin_edges(A):
        if m == 1:
            lines.append(f"  n{i} -- n{j};")
        else:
            color = ":".join(["black"] * min(m, 4))
            lines.append(f'  n{i} -- n{j} [color="{color}", dir=forward, label="{m}"];')
    for i, j in dec.tau_pairs():
        lines.append(f"  n{i} -- n{j} [style=dashed, dir=both, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    out = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                out.append(f"{pad}{k}:")
                out.append(_text(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {_scalar_text(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat(v):
                out.append(f"{pad}-")
                out.append(_text(v, indent + 1))
            else:
                out.append(f"{pad}- {_scalar_text(v)}")
    else:
        out.append(pad + _scalar_text(obj))
    return "\n".join(x for x in out if x)


def _flat(v) -> bool:
    if isinstance(v, list):
        # prose lists read better one item per line
        return all(not isinstance(x, (dict, list, str)) for x in v)
    if isinstance(v, dict):
        return set(v) <= {"name", "pretty"}
    return True


def _scalar_text(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, list):
        return "{" + ", ".join(_scalar_text(x) for x in v) + "}"
    if isinstance(v, dict) and "pretty" in v:
        return v["pretty"] or "?"
    return str(v)


def _tsv_rows(command: str, result: dict) -> list[list]:
    if command == "classify":
        head = ["rank", "spec", "gsat", "satake", "restricted", "special", "odd", "table_row"]
        rows = [head]
        for e in result["ranks"]:
            for r in e["rows"]:
                rows.append([e["rank"], r["spec"], r["gsat"], r["satake"],
                             (r["restricted"] or {}).get("name"), r["special"], r["odd"],
                             r.get("table_row")])
        return rows
    if command == "table":
        rows = [["n", "label", "p", "spec", "restricted"]]
        for e in result["ranks"]:
            for r in e["rows"]:
                rows.append([e["n"], r["label"], r["p"], r["spec"], r["restricted"]])
        return rows
    if command == "verify":
        rows = [["theorem", "status"]]
        rows += [[k, v["status"]] for k, v in result["theorems"].items()]
        return rows
    return [[k, v] for k, v in result.items() if not isinstance(v, dict)]


def _tsv_cell(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return ""
    if isinstance(v, list):
        return ",".join(str(x) for x in v)
    return str(v)


def format_output(command: str, result: dict, fmt: str, dot_source: Decoration | None = None,
                  exit_code: int = 0) -> str:
    if fmt == "json":
        env = {"command": command, "ok": exit_code == 0, "exit_code": exit_code, "result": result}
        return json.dumps(env, indent=2, ensure_ascii=False) + "\n"
    if fmt == "dot":
        if dot_source is None:
            raise ValueError(f"--format dot is not available for {command}")
        return to_dot(dot_source)
    if fmt == "tsv":
        return "\n".join("\t".join(_tsv_cell(c) for c in r) for r in _tsv_rows(command, result)) + "\n"
    if command == "render":
        return result["spec"] + "\n"
    return _text(result) + "\n"


def _error_json(command: str, exc: Exception, code: int) -> str:
    err = {"type": type(exc).__name__, "message": str(exc)}
    pos = getattr(exc, "position", None)
    if pos is not None:
        err["position"] = pos
    h = getattr(exc, "suggested_height", None)
    if h is not None:
        err["suggested_height"] = h
    return json.dumps({"command": command, "ok": False, "exit_code": code, "error": err},
                      indent=2) + "\n"


# --------------------------------------------------------------------- main


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pseudosym", description="Decorated Dynkin diagram toolkit.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "tsv", "dot"], default="text")
    common.add_argument("--height", type=_positive, default=DEFAULT_HEIGHT,
                        help="height bound for infinite types (default 8)")
    common.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET,
                        help="brute-force budget for Weyl group enumeration")
    common.add_argument("--chi", default=None, help="character values, e.g. 1:2,2:1/2,3:0|1")
    sub = p.add_subparsers(dest="command", required=True)
    for name, hlp in [("check", "diagnose one decoration"),
                      ("verify", "run every theorem-level check"),
                      ("restricted", "restricted root system"),
                      ("render", "normalize a spec or draw it")]:
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("spec")
        if name == "render":
            s.add_argument("--canonical", action="store_true", help="apply the Aut(A) normal form")
    s = sub.add_parser("classify", parents=[common], help="enumerate orbit representatives")
    s.add_argument("family")
    s.add_argument("rank", type=_positive)
    s.add_argument("rank_max", type=_positive, nargs="?")
    s.add_argument("--filter", choices=[COMPATIBLE, GSAT, SATAKE], default=GSAT)
    s.add_argument("--jobs", type=_positive, default=1)
    s = sub.add_parser("table", parents=[common], help="built-in type A table and its diff")
    s.add_argument("n", type=_positive)
    s.add_argument("n_max", type=_positive, nargs="?")
    return p


def _run(args) -> tuple[dict, Decoration | None, int]:
    cmd = args.command
    if cmd == "classify":
        res = classify_report(args.family, args.rank, args.rank_max or args.rank, args.filter,
                              args.height, args.jobs)
        return res, None, EXIT_OK if res["ok"] else EXIT_VERIFY
    if cmd == "table":
        res = table_report(args.n, args.n_max or args.n)
        return res, None, EXIT_OK if res["ok"] else EXIT_VERIFY
    edec = _load(args.spec, args.chi)
    if cmd == "check":
        return check_report(edec, args.height), edec.base, EXIT_OK
    if cmd == "restricted":
        return restricted_report(edec, args.height), edec.base, EXIT_OK
    if cmd == "render":
        res = render_report(edec, args.canonical)
        return res, canonical(edec.base) if args.canonical else edec.base, EXIT_OK
    res = verify_report(edec, args.height, args.budget)
    return res, edec.base, EXIT_OK if res["ok"] else EXIT_VERIFY


_INPUT_ERRORS = (ParseError, NotCompatible, NotGeneralizedSatake, InvalidCharacter, ValueError)
_RESOURCE_ERRORS = (RankGuardExceeded, BeyondBruteForce, TruncationOverflow, OrderCapExceeded)
_VERIFY_ERRORS = (CaseMismatch, VerificationFailed, UnrecognizedRestrictedType)


def main(argv: list[str] | None = None, out: Callable[[str], object] | None = None) -> int:
    args = build_parser().parse_args(argv)
    write = out or sys.stdout.write
    fmt = args.format
    try:
        result, dec, code = _run(args)
        write(format_output(args.command, result, fmt, dec, code))
        return code
    except _RESOURCE_ERRORS as e:
        err, code = e, EXIT_RESOURCE
        hint = getattr(e, "suggested_height", None)
        msg = f"resource guard: {e}" + (f" (retry with --height {hint})" if hint else "")
    except _VERIFY_ERRORS as e:
        err, code, msg = e, EXIT_VERIFY, f"verification failed: {e}"
    except _INPUT_ERRORS as e:
        err, code, msg = e, EXIT_INPUT, f"error: {e}"
    if fmt == "json":
        write(_error_json(args.command, err, code))
    else:
        sys.stderr.write(msg + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
