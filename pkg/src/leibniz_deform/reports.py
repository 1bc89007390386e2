"""Text and JSON rendering of algebras, cochains, cohomology and deformations.

Rationals render as ``p/q`` with positive q, or ``p`` alone when q is 1.
Monomials render in ascending total degree, earlier generators first within a
degree.  JSON output is canonical (two-space indent, sorted keys) so that
parsing a report and re-serializing it is byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import LeibnizAlgebra
from .cochain import Cochain, CohomologySpace
from .deform import (
    AVector,
    Deformation,
    LocalBase,
    Monomial,
    TruncatedPolynomial,
    _render_key,
)


def dumps_canonical(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def render_monomial(base: LocalBase, mono: Monomial) -> str:
    factors = []
    for gen, e in zip(base.generators, mono):
        if e == 1:
            factors.append(gen)
        elif e > 1:
            factors.append(f"{gen}^{e}")
    return "*".join(factors) if factors else "1"


def _join_terms(terms: list[tuple[Fraction, str]]) -> str:
    """Assemble signed terms; ``body`` may be empty for a bare coefficient."""
    if not terms:
        return "0"
    parts = []
    for coeff, body in terms:
        mag = abs(coeff)
        if body:
            piece = body if mag == 1 else f"{mag}*{body}"
        else:
            piece = str(mag)
        if not parts:
            parts.append(piece if coeff > 0 else f"-{piece}")
        else:
            parts.append(f"+ {piece}" if coeff > 0 else f"- {piece}")
    return " ".join(parts)


def render_poly(poly: TruncatedPolynomial) -> str:
    base = poly.base
    terms = []
    for mono in sorted(poly.coeffs, key=_render_key):
        body = render_monomial(base, mono)
        terms.append((poly.coeffs[mono], "" if body == "1" else body))
    return _join_terms(terms)


def render_vector(v: Sequence[Fraction], alg: LeibnizAlgebra) -> str:
    return _join_terms([(v[k], alg.label(k)) for k in range(len(v)) if v[k]])


def render_avector(av: AVector, alg: LeibnizAlgebra) -> str:
    base = av[0].base
    terms = []
    monos = sorted({m for p in av for m in p.coeffs}, key=_render_key)
    for mono in monos:
        mono_str = render_monomial(base, mono)
        for k, p in enumerate(av):
            c = p.coeff(mono)
            if c:
                body = alg.label(k) if mono_str == "1" else f"{mono_str}*{alg.label(k)}"
                terms.append((c, body))
    return _join_terms(terms)


def render_cochain(c: Cochain, alg: LeibnizAlgebra) -> list[str]:
    """Sparse rendering: one ``(inputs) -> value`` line per nonzero entry."""
    lines = []
    for idx, val in c.nonzero_entries():
        args = ",".join(alg.label(i) for i in idx)
        lines.append(f"({args}) -> {render_vector(val, alg)}")
    return lines or ["0"]


def poly_to_json(poly: TruncatedPolynomial) -> list:
    base = poly.base
    out = []
    for mono in sorted(poly.coeffs, key=_render_key):
        expo = {gen: e for gen, e in zip(base.generators, mono) if e}
        out.append({"monomial": expo, "coeff": str(poly.coeffs[mono])})
    return out


def cochain_to_json(c: Cochain) -> dict:
    entries = []
    for idx, val in c.nonzero_entries():
        entries.append(
            {
                "args": [i + 1 for i in idx],
                "value": [
                    {"basis": k + 1, "coeff": str(val[k])}
                    for k in range(c.dim)
                    if val[k]
                ],
            }
        )
    return {"arity": c.arity, "dim": c.dim, "entries": entries}


def cochain_from_json(doc: dict) -> Cochain:
    from .errors import FormatError

    try:
        arity = int(doc["arity"])
        dim = int(doc["dim"])
        entries = {}
        for item in doc.get("entries", []):
            idx = tuple(int(a) - 1 for a in item["args"])
            entries[idx] = {
                int(term["basis"]) - 1: Fraction(str(term["coeff"]))
                for term in item.get("value", [])
            }
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise FormatError(f"bad cochain document: {e}") from e
    return Cochain.from_entries(arity, dim, entries)


def base_to_json(base: LocalBase) -> dict:
    rels = []
    for rel in base.relations:
        poly = TruncatedPolynomial(LocalBase(base.generators, base.truncation_order), dict(rel))
        rels.append(poly_to_json(poly))
    return {
        "generators": list(base.generators),
        "truncation_order": base.truncation_order,
        "relations": rels,
    }


def deformation_report(d: Deformation, alg: LeibnizAlgebra) -> tuple[str, dict]:
    """Text and JSON forms of the bracket table of a deformation."""
    base = d.base
    lines = [f"base: K[{','.join(base.generators)}] truncated at order {base.truncation_order}"]
    if base.relations:
        rel_strs = [
            render_poly(TruncatedPolynomial(LocalBase(base.generators, base.truncation_order), dict(r)))
            for r in base.relations
        ]
        lines.append("relations: " + "; ".join(rel_strs))
    else:
        lines.append("relations: none")
    lines.append("brackets:")
    brackets_json = []
    n = alg.dim
    for i in range(n):
        for j in range(n):
            av = d.basis_bracket(i, j)
            if all(p.is_zero() for p in av):
                continue
            lines.append(f"  [{alg.label(i)},{alg.label(j)}] = {render_avector(av, alg)}")
            value = []
            for k, p in enumerate(av):
                for mono in sorted(p.coeffs, key=_render_key):
                    expo = {gen: e for gen, e in zip(base.generators, mono) if e}
                    value.append(
                        {"basis": k + 1, "monomial": expo, "coeff": str(p.coeffs[mono])}
                    )
            brackets_json.append({"left": i + 1, "right": j + 1, "value": value})
    doc = {"base": base_to_json(base), "brackets": brackets_json}
    return "\n".join(lines), doc


def cohomology_report(
    alg: LeibnizAlgebra,
    space: CohomologySpace,
    relations: Optional[list[str]] = None,
) -> tuple[str, dict]:
    p = space.degree
    lines = [
        f"dim ZL^{p} = {space.dim_cocycles}, dim BL^{p} = {space.dim_coboundaries}, "
        f"dim HL^{p} = {space.dim}"
    ]
    lines.append("class representatives:")
    for r, rep in enumerate(space.class_representatives):
        for line in render_cochain(rep, alg):
            lines.append(f"  [{r + 1}] {line}")
    if relations is not None:
        lines.append("cocycle relations:")
        for rel in relations:
            lines.append(f"  {rel}")
    doc = {
        "degree": p,
        "dim_cocycles": space.dim_cocycles,
        "dim_coboundaries": space.dim_coboundaries,
        "dim_cohomology": space.dim,
        "representatives": [cochain_to_json(r) for r in space.class_representatives],
    }
    if relations is not None:
        doc["relations"] = relations
    return "\n".join(lines), doc
