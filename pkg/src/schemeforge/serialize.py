"""JSON and markdown emitters for the pipeline's file formats.

Rationals travel as exact "p/q" strings, shortened to "p" when the
denominator is 1; nothing in this module rounds.  Loaders accept both
spellings plus plain JSON integers.
"""

import json
from fractions import Fraction

from .geometry import GQ, Hemisystem
from .reconstruct import ReconstructedGQ
from .relation_scheme import RelationScheme
from .scheme_params import SchemeParameters
from .triples import TripleSolution

import numpy as np


def rat_str(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f}"


def parse_rat(text) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(str(text))


def _rat_rows(mat) -> list:
    return [[rat_str(x) for x in row] for row in mat.to_rows()]


def _rat_tensor(tensor) -> list:
    return [[[rat_str(x) for x in row] for row in plane] for plane in tensor]


# ------------------------------------------------------------ params

def params_to_dict(sp: SchemeParameters) -> dict:
    return {
        "d": sp.d,
        "t": sp.t,
        "order": rat_str(sp.order),
        "valencies": [rat_str(x) for x in sp.valencies],
        "multiplicities": [rat_str(x) for x in sp.multiplicities],
        "P": _rat_rows(sp.P),
        "Q": _rat_rows(sp.Q),
        "p": _rat_tensor(sp.p),
        "q": _rat_tensor(sp.q),
    }


def _md_table(title: str, rows, row_labels, col_labels) -> list:
    out = [f"**{title}**", ""]
    out.append("| | " + " | ".join(str(c) for c in col_labels) + " |")
    out.append("|" + "---|" * (len(col_labels) + 1))
    for lbl, row in zip(row_labels, rows):
        out.append(f"| {lbl} | " + " | ".join(rat_str(x) for x in row) + " |")
    out.append("")
    return out


def params_markdown(sp: SchemeParameters) -> str:
    """Parameter tables in the layout the source tables use.

    The dual tables follow the source's mixed convention: for k in
    1..3 the displayed entries are t * q^k_ij, while the k = 4 table is
    printed unscaled.  Both are labeled accordingly.
    """
    d = sp.d
    idx = list(range(1, d + 1))
    head = f"# Scheme parameters (d = {d}"
    head += f", t = {sp.t})" if sp.t is not None else ")"
    lines = [head, "", f"Order: {rat_str(sp.order)}", ""]
    lines += _md_table("Valencies n_i", [sp.valencies], ["n"],
                       list(range(d + 1)))
    lines += _md_table("Multiplicities m_i", [sp.multiplicities], ["m"],
                       list(range(d + 1)))
    lines += _md_table("First eigenmatrix P", sp.P.to_rows(),
                       list(range(d + 1)), list(range(d + 1)))
    lines += _md_table("Second eigenmatrix Q", sp.Q.to_rows(),
                       list(range(d + 1)), list(range(d + 1)))
    for k in idx:
        rows = [[sp.p[k][i][j] for j in idx] for i in idx]
        lines += _md_table(f"p^{k}_ij", rows, idx, idx)
    scale = sp.t if sp.t is not None else None
    for k in idx:
        if k < d and scale is not None:
            rows = [[scale * sp.q[k][i][j] for j in idx] for i in idx]
            lines += _md_table(f"t q^{k}_ij (scaled by t = {scale})",
                               rows, idx, idx)
        else:
            rows = [[sp.q[k][i][j] for j in idx] for i in idx]
            lines += _md_table(f"q^{k}_ij (unscaled)", rows, idx, idx)
    lines.append("Note: the dual tables mix two conventions on purpose; "
                 "the first three are scaled by t, the last is not.")
    lines.append("")
    return "\n".join(lines)


# ------------------------------------------------------------ geometry

def gq_to_dict(gq: GQ) -> dict:
    return {"s": gq.s, "t": gq.t, "points": len(gq.points),
            "lines": [list(line) for line in gq.lines]}


def gq_from_dict(data: dict) -> GQ:
    return GQ(s=int(data["s"]), t=int(data["t"]),
              points=tuple(range(int(data["points"]))),
              lines=tuple(tuple(int(p) for p in line)
                          for line in data["lines"]))


def hemi_to_dict(hemi: Hemisystem) -> dict:
    return {"lines": list(hemi.lines)}


def hemi_from_dict(data: dict) -> Hemisystem:
    return Hemisystem(tuple(int(x) for x in data["lines"]))


# ------------------------------------------------------------ scheme

def scheme_to_dict(sch: RelationScheme) -> dict:
    return {"size": sch.size, "classes": sch.classes,
            "rel": [[int(x) for x in row] for row in sch.rel]}


def scheme_from_dict(data: dict) -> RelationScheme:
    rel = np.array(data["rel"], dtype=np.int8)
    return RelationScheme(size=int(data["size"]),
                          classes=int(data["classes"]), rel=rel)


# ------------------------------------------------------------ triples

def triple_to_dict(sol: TripleSolution | None) -> dict:
    """Forced values and leftover unknowns; None means a vacuous pattern."""
    if sol is None:
        return {"forced": {}, "free": [], "vacuous": True}
    forced = {f"[{l},{m},{n}]": rat_str(v)
              for (l, m, n), v in sorted(sol.forced.items())}
    free = [list(name) for name in sorted(sol.residual_free)]
    return {"forced": forced, "free": free, "vacuous": False}


# ------------------------------------------------------------ reconstruction

def reconstruction_to_dict(rec: ReconstructedGQ, part) -> dict:
    return {
        "cliques": [{"C": list(c.half_C), "Cprime": list(c.half_Cprime)}
                    for c in rec.lines],
        "U": list(part),
        "dual_order": list(rec.dual_order),
        "checks": {name: ok for name, ok, _ in rec.report.checks},
    }


# ------------------------------------------------------------ files

def dump_json(data: dict, path=None) -> str:
    text = json.dumps(data, indent=2)
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return text


def load_json(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
