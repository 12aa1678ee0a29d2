"""JSON and text renderings of command reports.

Every JSON document carries ``"schema": SCHEMA`` and ``"command"``; values are
plain lists, ints, strings, bools and nulls so documents round-trip through
``json.dumps`` / ``json.loads`` unchanged.
"""

from __future__ import annotations

from typing import Sequence

from .core import Element, VAPresentation, finite_quotient
from .errors import ORDER_CAP
from .induction import CaseReport, KernelHom, contraction_factor
from .qproj import RationalLine
from .reducibility import DetectionReport

SCHEMA = "vabelian.report/1"


def elem(g: Element | None):
    return None if g is None else {"a": list(g.vec), "q": g.q}


def _doc(command: str, **fields) -> dict:
    return {"schema": SCHEMA, "command": command, **fields}


# ---------------------------------------------------------------- show


def show_json(P: VAPresentation, m: int | None = None, cap: int = ORDER_CAP) -> dict:
    doc = _doc(
        "show",
        name=P.name,
        rank=P.rank,
        q_order=P.Q.order,
        faithful=P.is_faithful(),
        split=P.is_split(),
        action=[[list(row) for row in M] for M in P.action.mats],
        violations=P.violations(),
    )
    if m is not None:
        doc["m"] = m
        doc["quotient_order"] = finite_quotient(P, m, cap).order
    return doc


def show_text(doc: dict) -> str:
    lines = [
        f"group {doc['name']}",
        f"rank {doc['rank']}, |Q|={doc['q_order']}, {'faithful' if doc['faithful'] else 'not faithful'}, "
        f"{'split' if doc['split'] else 'non-split'}",
    ]
    for q, M in enumerate(doc["action"]):
        lines.append(f"  alpha({q}) = {M}")
    lines.append("invariants: ok" if not doc["violations"] else "invariants: " + "; ".join(doc["violations"]))
    if "m" in doc:
        lines.append(f"|G/A^{doc['m']}| = {doc['quotient_order']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- classify


def _case_row(rep: CaseReport) -> dict:
    f = rep.factorization
    return {
        "order": rep.H.order,
        "elements": list(rep.H.elems),
        "tag": rep.tag,
        "image_order": rep.image_order,
        "kernel_order": rep.kernel_order,
        "cert": {"p": rep.cert.p, "N": list(rep.cert.N.elems)},
        "factorization": None
        if f is None
        else {
            "expansion": f.expansion,
            "injective": f.injective,
            "torsion": f.torsion,
            "conjugator": elem(f.conjugator),
            "preimages": [elem(y) for y in f.preimages],
        },
        "kernel_cyclic": None if rep.kernel_cyclic is None else list(rep.kernel_cyclic.elems),
    }


def classify_json(P: VAPresentation, p: int, r: int, reports: Sequence[CaseReport], consistent: bool) -> dict:
    return _doc(
        "classify",
        group=P.name,
        p=p,
        r=r,
        quotient_order=P.Q.order * (p**r) ** P.rank,
        rows=[_case_row(rep) for rep in reports],
        counts={t: sum(rep.tag == t for rep in reports) for t in ("NotOnto", "OntoNotInjective", "Iso")},
        irreducibility_consistent=consistent,
    )


def classify_text(doc: dict) -> str:
    lines = [f"{doc['group']} at p={doc['p']}, r={doc['r']}: |G/A^{doc['p'] ** doc['r']}| = {doc['quotient_order']}"]
    lines.append(f"{'order':>6}  {'tag':<17} {'image':>5} {'kernel':>6}  cert  witness")
    for row in doc["rows"]:
        cert = "cyclic" if row["cert"]["p"] is None else f"p={row['cert']['p']}"
        f = row["factorization"]
        if f is not None:
            c = f["conjugator"]
            wit = f"expansion {f['expansion']}, conjugator ({c['a']};{c['q']})"
        elif row["kernel_cyclic"] is not None:
            wit = f"normal cyclic kernel of order {len(row['kernel_cyclic'])}"
        else:
            wit = "-"
        lines.append(f"{row['order']:>6}  {row['tag']:<17} {row['image_order']:>5} {row['kernel_order']:>6}  {cert:<5} {wit}")
    c = doc["counts"]
    lines.append(f"counts: NotOnto {c['NotOnto']}, OntoNotInjective {c['OntoNotInjective']}, Iso {c['Iso']}")
    lines.append("irreducibility consistency: " + ("ok" if doc["irreducibility_consistent"] else "VIOLATED"))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- qproj


def orbits_json(P: VAPresentation, B: int, orbits: Sequence[Sequence[RationalLine]]) -> dict:
    return _doc(
        "qproj",
        group=P.name,
        bound=B,
        lines=sum(len(o) for o in orbits),
        orbits=[[list(line.v) for line in o] for o in orbits],
    )


def orbits_text(doc: dict) -> str:
    lines = [f"{doc['group']}: {len(doc['orbits'])} orbits, {doc['lines']} lines (bound {doc['bound']})"]
    for i, o in enumerate(doc["orbits"]):
        lines.append(f"  orbit {i}: " + " ".join("(" + ",".join(map(str, v)) + ")" for v in o))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- kernelhom


def kernelhom_json(hs: Sequence[KernelHom]) -> dict:
    p = hs[0].p if hs else None
    rows = []
    for h in hs:
        cf = contraction_factor(h)
        rows.append(
            {
                "generator": list(h.generator),
                "h": [h.u, h.v],
                "norm2": h.norm2,
                "ratio": [cf.ratio.numerator, cf.ratio.denominator],
            }
        )
    return _doc("kernelhom", p=p, rows=rows, max_norm2=max((r["norm2"] for r in rows), default=None))


def kernelhom_text(doc: dict) -> str:
    lines = [f"p={doc['p']}: {len(doc['rows'])} subgroups, max |h|^2 = {doc['max_norm2']} < 2p = {2 * doc['p']}"]
    for row in doc["rows"]:
        g, h, (a, b) = row["generator"], row["h"], row["ratio"]
        lines.append(f"  <({g[0]},{g[1]})>  h=({h[0]},{h[1]})  |h|^2={row['norm2']}  |h|^2/p^2={a}/{b}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- reduce


def detection_json(P: VAPresentation, rep: DetectionReport) -> dict:
    return _doc(
        "reduce",
        group=P.name,
        p=rep.p,
        r=rep.r,
        found=rep.found,
        generator=None if rep.generator is None else list(rep.generator),
        eigen=None if rep.eigen is None else list(rep.eigen),
        rho=None if rep.rho is None else list(rep.rho.values),
        a_hat=None if rep.a_hat is None else list(rep.a_hat),
        a_hat_nonzero_mod=rep.a_hat_nonzero_mod,
        oracle=None if rep.oracle is None else {"v": list(rep.oracle.v), "rho": list(rep.oracle.rho.values)},
        general_found=rep.general_found,
    )


def detection_text(doc: dict) -> str:
    head = f"{doc['group']} at p={doc['p']}, r={doc['r']}: "
    if not doc["found"]:
        lines = [head + "no invariant cyclic subgroup of order p in A/p^r A"]
    else:
        lines = [
            head + f"invariant cyclic subgroup generated by {tuple(doc['generator'])}",
            f"  eigenvalues mod p: {doc['eigen']}",
            f"  sign character: {doc['rho']}",
            f"  averaged vector: {tuple(doc['a_hat'])}, nonzero mod p^r: {doc['a_hat_nonzero_mod']}",
        ]
    o = doc["oracle"]
    lines.append("  invariant line: " + ("none" if o is None else f"{tuple(o['v'])} with signs {o['rho']}"))
    if doc["general_found"] is not None:
        lines.append(f"  general search agrees: found={doc['general_found']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- espace


def espace_json(group: str, family: str, d: int, counts: Sequence[int], simplices: Sequence[str], extra: dict) -> dict:
    return _doc("espace", group=group, family=family, d=d, counts=list(counts), simplices=list(simplices), **extra)


def espace_text(doc: dict) -> str:
    lines = [f"{doc['group']}, family {doc['family']}, through dimension {doc['d']}"]
    lines.append("  nondegenerate simplices by dimension: " + " ".join(map(str, doc["counts"])))
    for key in ("union", "join"):
        if key in doc:
            lines.append(f"  {key} check: " + ", ".join(f"{k}={v}" for k, v in doc[key].items()))
    lines += doc["simplices"]
    return "\n".join(lines) + "\n"
