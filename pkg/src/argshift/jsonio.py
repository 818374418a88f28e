"""JSON encodings for the exact types.

Rationals travel as strings "p" or "p/q" (a unicode minus sign is
tolerated on input), vectors and matrices as nested arrays of such
strings, polynomials as {"nvars", "terms"} with explicit exponent
lists.  Emitters order terms and keys canonically so equal values
always serialize to identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional, Sequence

from .exactlin import MatQ, SubspaceQ, rat, rat_str, vec
from .liealg import LieAlgebraData
from .mfshift import ShiftFamily, ShiftMember
from .mpoly import MPoly, grlex_key
from .poisson import CasimirSet


def vector_to_json(v: Sequence[Fraction]) -> list[str]:
    return [rat_str(rat(x)) for x in v]


def vector_from_json(data: Sequence[Any]) -> tuple[Fraction, ...]:
    if not isinstance(data, (list, tuple)):
        raise ValueError("vector must be an array of rational strings")
    return vec(data)


def matrix_to_json(M: MatQ) -> list[list[str]]:
    return [vector_to_json(row) for row in M.to_lists()]


def matrix_from_json(data: Sequence[Sequence[Any]]) -> MatQ:
    if not isinstance(data, (list, tuple)) or not data:
        raise ValueError("matrix must be a nonempty array of rows")
    return MatQ([vector_from_json(row) for row in data])


def poly_to_json(p: MPoly) -> dict:
    terms = sorted(p.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)
    return {"nvars": p.nvars,
            "terms": [{"coeff": rat_str(c), "exps": list(e)} for e, c in terms]}


def poly_from_json(data: dict) -> MPoly:
    if not isinstance(data, dict) or "nvars" not in data or "terms" not in data:
        raise ValueError("polynomial must be an object with nvars and terms")
    nvars = int(data["nvars"])
    terms: dict[tuple[int, ...], Fraction] = {}
    for item in data["terms"]:
        exps = tuple(int(e) for e in item["exps"])
        if len(exps) != nvars or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent tuple {exps} for nvars={nvars}")
        terms[exps] = terms.get(exps, Fraction(0)) + rat(item["coeff"])
    return MPoly(nvars, terms)


def algebra_to_json(L: LieAlgebraData) -> dict:
    brackets = []
    for i, j, coeffs in L.table_entries():
        brackets.append({"i": i, "j": j,
                         "coeffs": {str(k): rat_str(c)
                                    for k, c in sorted(coeffs.items())}})
    out: dict[str, Any] = {"dim": L.dim, "basis": list(L.basis_names),
                           "brackets": brackets}
    if L.meta:
        out["meta"] = dict(L.meta)
    return out


def algebra_from_json(data: dict) -> LieAlgebraData:
    if not isinstance(data, dict) or "dim" not in data:
        raise ValueError("algebra must be an object with dim, basis, brackets")
    dim = int(data["dim"])
    basis = [str(b) for b in data.get("basis", [f"e{i + 1}" for i in range(dim)])]
    entries = []
    for item in data.get("brackets", []):
        coeffs = {int(k): rat(v) for k, v in item["coeffs"].items()}
        entries.append((int(item["i"]), int(item["j"]), coeffs))
    return LieAlgebraData.from_table(dim, basis, entries, meta=data.get("meta"))


def casimirs_to_json(cs: CasimirSet) -> dict:
    out: dict[str, Any] = {"nvars": cs.nvars,
                           "generators": [poly_to_json(p) for p in cs.generators],
                           "degrees": list(cs.degrees)}
    if cs.independence_witness is not None:
        out["independence_witness"] = vector_to_json(cs.independence_witness)
    return out


def casimirs_from_json(data: dict) -> CasimirSet:
    """Parse without re-verifying; CasimirSet.verified re-checks on demand."""
    gens = tuple(poly_from_json(d) for d in data.get("generators", []))
    degrees = tuple(int(d) for d in data["degrees"]) if "degrees" in data \
        else tuple(p.degree() for p in gens)
    witness = None
    if data.get("independence_witness") is not None:
        witness = vector_from_json(data["independence_witness"])
    return CasimirSet(int(data["nvars"]), gens, degrees, witness)


def subspace_to_json(S: SubspaceQ) -> dict:
    return {"ambient": S.ambient_dim,
            "basis": [vector_to_json(row) for row in S.basis]}


def subspace_from_json(data: dict) -> SubspaceQ:
    return SubspaceQ.span([vector_from_json(row) for row in data.get("basis", [])],
                          int(data["ambient"]))


def family_to_json(fam: ShiftFamily) -> dict:
    return {"xi": vector_to_json(fam.xi),
            "generators": [poly_to_json(p) for p in fam.generators],
            "members": [{"generator": m.generator_index, "power": m.power,
                         "poly": poly_to_json(m.poly)}
                        for m in fam.members]}


def family_from_json(data: dict, algebra: LieAlgebraData) -> ShiftFamily:
    xi = vector_from_json(data["xi"])
    gens = tuple(poly_from_json(d) for d in data.get("generators", []))
    members = tuple(ShiftMember(int(m["generator"]), int(m["power"]),
                                poly_from_json(m["poly"]))
                    for m in data.get("members", []))
    return ShiftFamily(algebra, xi, gens, members)


def dumps(obj: Any) -> str:
    """Canonical rendering: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def read_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def write_json(path: str, obj: Any) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))
