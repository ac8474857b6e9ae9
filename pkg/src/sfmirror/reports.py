"""Report builders behind the command line: each returns a ``Report`` with a
JSON-ready body, aligned text, and an overall verdict."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .catalog import (LISTINGS, TABLE1, TABLE1_CORRECTED, TABLE1_PARAMS, TABLE2,
                      corrected_structure,
                      frame_matrix)
from .cohomology import (TABLE2_COLUMNS, ComplexComplex, SymplecticComplex, header_pairing,
                         mirror_numbers_check, table2_vector)
from .fourier import fm_verify
from .lie import LieAlgebra
from .mirror import (_ALIASES, AFFINE_NAMES, affine_data_check, affine_structure, build_mirror_pair,
                     holonomy_conjugates, holonomy_preserves_lattice, listing_mismatches,
                     twisted_generators, untwisted_generators, xi_lattice)
from .su3 import SU3Structure, integrability_check, is_type_IIA, is_type_IIB, su3_check

__all__ = [
    "SCHEMA",
    "Report",
    "check_report",
    "su3_report",
    "listing_report",
    "mirror_report",
    "holonomy_report",
    "cohomology_report",
    "fm_report",
    "table1_report",
    "table2_report",
    "catalog_report",
]

SCHEMA = "sfmirror.report/1"


@dataclass
class Report:
    kind: str
    ok: bool
    body: dict
    lines: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "kind": self.kind, "ok": self.ok, **self.body}

    @property
    def text(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        return "\n".join(self.lines + [f"{self.kind}: {verdict}"])


def _verdict(ok: bool) -> str:
    return "ok" if ok else "FAIL"


def _table_lines(title: str, table: Sequence[Sequence[int]]) -> list[str]:
    h = len(table)
    lines = [title, "  p\\q " + " ".join(f"{q:>3}" for q in range(h))]
    for p in range(h):
        lines.append(f"  {p:>3} " + " ".join(f"{table[p][q]:>3}" for q in range(h)))
    return lines


# algebras ------------------------------------------------------------------------

def check_report(spec: str, params: Mapping[str, object] | None = None) -> Report:
    g = LieAlgebra.from_salamon(spec, params)
    jac = g.is_jacobi()
    uni = g.is_unimodular()
    betti = g.betti_numbers() if jac else None
    body = {"spec": g.salamon(), "jacobi": jac, "unimodular": uni, "betti": betti,
            "brackets": g.bracket_table()}
    lines = [f"algebra     {g.salamon()}",
             f"d^2 = 0     {_verdict(jac)}",
             f"unimodular  {_verdict(uni)}"]
    if betti is not None:
        lines.append(f"betti       {betti}")
    lines += [f"  {b}" for b in g.bracket_table()]
    return Report("check", jac, body, lines)


def su3_report(s: SU3Structure, label: str = "") -> Report:
    rep = su3_check(s)
    iia = is_type_IIA(s) if rep.acs else False
    iib = is_type_IIB(s) if rep.acs else False
    body = {"label": label, "algebra": s.g.salamon(), "omega": s.omega.render(),
            "Omega": s.Omega.render(), "su3": rep.to_json(), "iiA": iia, "iiB": iib}
    lines = [f"{label or 'structure'}: {s.g.salamon()}",
             f"  omega = {s.omega.render()}",
             f"  Omega = {s.Omega.render()}",
             f"  J exists {_verdict(rep.acs)}, (1,1) {_verdict(rep.omega_11)}, "
             f"positive {_verdict(rep.positive)}, normalized {_verdict(rep.normalized)}",
             f"  Omega^conj(Omega) / omega^3 = {rep.normalization_ratio}",
             f"  type IIA {iia}, type IIB {iib}"]
    return Report("su3", rep.ok, body, lines)


# mirror construction ---------------------------------------------------------------

def _lam_value(name: str, lam):
    if _ALIASES.get(name.lower(), name) == "H3-twisted":
        return Fraction(1, 2) if lam is None else Fraction(lam)
    return None


def listing_report(name: str, lam=None) -> Report:
    """Compare the constructed pair with the printed structure equations."""
    a = affine_structure(name, _lam_value(name, lam))
    pair = build_mirror_pair(a)
    listing = LISTINGS[a.name]
    params = dict(a.params)
    exp_a, exp_b = listing.algebras(params)
    sides = {}
    ok = True
    for side, expected in (("iia", exp_a), ("iib", exp_b)):
        got = pair.algebra(side, listing.frame)
        mism = listing_mismatches(got, expected)
        entry = {"frame": listing.frame, "matches": not mism,
                 "mismatches": [{"k": k, "computed": c.render(), "printed": p.render()}
                                for k, c, p in mism]}
        if listing.to_distinguished:
            M = frame_matrix(listing.to_distinguished, params)
            dist = expected.change_coframe(M)
            entry["distinguished_matches"] = not listing_mismatches(pair.algebra(side), dist)
            ok = ok and entry["distinguished_matches"]
        ok = ok and not mism
        sides[side] = entry
    body = {"affine": a.name, "params": {k: str(v) for k, v in params.items()},
            "sides": sides, "note": listing.note}
    lines = [f"{a.name} {' '.join(f'{k}={v}' for k, v in params.items())}".rstrip()]
    for side in ("iia", "iib"):
        e = sides[side]
        lines.append(f"  {side.upper():<4} {pair.algebra(side, listing.frame).salamon()}  "
                     f"listing {_verdict(e['matches'])}")
        for mm in e["mismatches"]:
            lines.append(f"       de^{mm['k']}: computed {mm['computed']}, printed {mm['printed']}")
    if listing.note and not ok:
        lines.append(f"  note: {listing.note}")
    return Report("listing", ok, body, lines)


def mirror_report(name: str, lam=None) -> Report:
    a = affine_structure(name, _lam_value(name, lam))
    aff = affine_data_check(a)
    pair = build_mirror_pair(a)
    sA, sB = su3_check(pair.iia), su3_check(pair.iib)
    checks = {
        "affine": aff.to_json(),
        "iia_su3": sA.ok,
        "iib_su3": sB.ok,
        "iia_type_IIA": is_type_IIA(pair.iia),
        "iib_type_IIB": is_type_IIB(pair.iib),
        "iib_integrable": integrability_check(pair.iib),
        "unimodular": pair.iia.g.is_unimodular() and pair.iib.g.is_unimodular(),
        "jacobi": pair.iia.g.is_jacobi() and pair.iib.g.is_jacobi(),
    }
    listing = listing_report(a.name, lam)
    ok = aff.ok and listing.ok and all(v for k, v in checks.items() if k != "affine")
    body = {"pair": pair.to_json(), "checks": checks, "listing": listing.to_json()}
    lines = [f"{a.name}: {a.label}"]
    if a.params:
        lines.append("  parameters " + ", ".join(f"{k}={v}" for k, v in a.params.items()))
    lines += [
        f"  IIA  {pair.iia.g.salamon()}",
        f"       omega = {pair.iia.omega.render()}, Omega = {pair.iia.Omega.render()}",
        f"  IIB  {pair.iib.g.salamon()}",
        f"       omega = {pair.iib.omega.render()}, Omega = {pair.iib.Omega.render()}",
    ]
    if pair.iia_group != pair.iia.g or pair.iib_group != pair.iib.g:
        lines += [f"  group frame IIA {pair.iia_group.salamon()}",
                  f"  group frame IIB {pair.iib_group.salamon()}"]
    lines += [f"  {k}: {_verdict(v)}" for k, v in checks.items() if k != "affine"]
    lines += [f"  affine data: {_verdict(aff.ok)}"]
    lines += listing.lines[1:]
    return Report("mirror", ok, body, lines)


def holonomy_report(m: int, twisted: bool = False, strict: bool = False) -> Report:
    basis = xi_lattice(m)
    gens = twisted_generators(m) if twisted else untwisted_generators(m)
    ok = holonomy_preserves_lattice(gens, basis, strict=strict)
    conj = holonomy_conjugates(gens, basis)
    mats = [[[str(x) for x in row] for row in C] for C in conj]
    body = {"m": m, "twisted": twisted, "strict": strict, "field_D": basis.P[1][2].D,
            "conjugates": mats}
    lines = [f"E(1,1) {'twisted' if twisted else 'untwisted'} holonomy, m = {m}, "
             f"u = {basis.P[1][2]}"]
    for g, C in zip(gens, mats):
        lines.append(f"  {g.label}: P^-1 M P = [" + "; ".join(" ".join(r) for r in C) + "]")
    return Report("holonomy", ok, body, lines)


# cohomology ------------------------------------------------------------------------

def _resolve(algebra: str | None, affine: str | None, lam, params):
    if affine:
        return build_mirror_pair(affine_structure(affine, _lam_value(affine, lam)))
    return LieAlgebra.from_salamon(algebra, params)


def cohomology_report(kind: str, algebra: str | None = None, affine: str | None = None,
                      lam=None, params: Mapping[str, object] | None = None,
                      cells: Sequence[tuple[int, int]] | None = None) -> Report:
    target = _resolve(algebra, affine, lam, params)
    if kind == "ty":
        if isinstance(target, LieAlgebra):
            cx = SymplecticComplex(target)
        else:
            cx = SymplecticComplex(target.iia.g, target.iia.omega, target.fiber)
        fn = cx.ty_dim
        alg = cx.g
    elif kind == "bc":
        s = SU3Structure.standard(target) if isinstance(target, LieAlgebra) else target.iib
        cx = ComplexComplex(s)
        fn = cx.bc_dim
        alg = s.g
    else:
        raise ValueError(f"unknown cohomology {kind!r}")
    if cells:
        values = {f"{p},{q}": fn(p, q) for p, q in cells}
        lines = [f"h_{kind.upper()}^{{{k}}} = {v}" for k, v in values.items()]
        body = {"algebra": alg.salamon(), "cells": values}
    else:
        table = cx.table(fn)
        body = {"algebra": alg.salamon(), "table": table}
        lines = _table_lines(f"h_{kind.upper()}^{{p,q}} of {alg.salamon()}", table)
    body["level"] = "Lie algebra (invariant forms)"
    return Report(f"cohomology {kind}", True, body, lines)


def fm_report() -> Report:
    r = fm_verify()
    lines = [f"FT(exp(2 omegacheck)) = prod(dtheta_k + i eta_k): {_verdict(r.exponential)}",
             f"FT bijective A^(p,q) -> A^(3-p,q) on all 16 blocks: "
             f"{_verdict(all(r.bijective.values()))}",
             f"inverse after FT is the identity on all 64 monomials: {_verdict(r.round_trip)}",
             f"FT(1) = {r.ft_of_one.render()}"]
    return Report("fm", r.ok, r.to_json(), lines)


# tables ----------------------------------------------------------------------------

def table1_report(params: Mapping[str, object] | None = None, corrected: bool = False) -> Report:
    params = dict(params or TABLE1_PARAMS)
    rows = []
    ok = True
    lines = [f"{'row':>3}  {'c.s.':<4} {'J':<4} {'(1,1)':<5} {'pos':<4} {'norm':<4} "
             f"{'IIA':<4} verdict  algebra"]
    for row in TABLE1:
        s = row.structure(params)
        rep = su3_check(s)
        iia = is_type_IIA(s) if rep.acs else False
        row_ok = rep.ok and iia
        entry = {"row": row.index, "algebra": row.algebra, "completely_solvable": row.completely_solvable,
                 "constructible": row.constructible, "affine": list(row.affine),
                 "su3": rep.to_json(), "iiA": iia, "ok": row_ok, "provenance": row.provenance}
        if corrected and row.index in (3, 5):
            cs = corrected_structure(row.index, params)
            crep = su3_check(cs)
            entry["corrected"] = {"Omega": cs.Omega.render(), "su3": crep.to_json(),
                                  "iiA": is_type_IIA(cs), "ok": crep.ok and is_type_IIA(cs)}
        rows.append(entry)
        ok = ok and row_ok

        def yn(b):
            return "yes" if b else "no"
        lines.append(f"{row.index:>3}  {yn(row.completely_solvable):<4} {yn(rep.acs):<4} "
                     f"{yn(rep.omega_11):<5} {yn(rep.positive):<4} {yn(rep.normalized):<4} "
                     f"{yn(iia):<4} {'PASS' if row_ok else 'FAIL':<8} {row.algebra}  [{row.provenance}]")
        if not row_ok:
            lines.append(f"       {rep.reason or 'not of type IIA'}")
        if "corrected" in entry:
            c = entry["corrected"]
            fix = TABLE1_CORRECTED[row.index]
            lines.append(f"       corrected: ({fix['scale']}) {fix['Omega']}: "
                         f"{'PASS' if c['ok'] else 'FAIL'}")
    lines.append("parameters: " + ", ".join(f"{k}={v}" for k, v in sorted(params.items())))
    return Report("table1", ok, {"params": {k: str(v) for k, v in params.items()}, "rows": rows},
                  lines)


def _iso_ok(g: LieAlgebra, frame: str, target: str) -> bool:
    return g.change_coframe(frame_matrix(frame)) == LieAlgebra.from_salamon(target)


def table2_report() -> Report:
    header = ["TY10/BC20", "TY01/BC31", "TY20/BC10", "TY11/BC21", "TY02/BC32", "TY21/BC11",
              "TY12/BC22"]
    lines = [f"{'affine structure':<28} {'lambda':>6}  " + " ".join(f"{h:>9}" for h in header)
             + "  verdict"]
    rows = []
    ok = True
    for row in TABLE2:
        for lam in row.lambdas or (None,):
            a = affine_structure(row.affine, lam)
            pair = build_mirror_pair(a)
            nums = mirror_numbers_check(pair)
            ty_vec = table2_vector(nums, "ty")
            bc_partner = tuple(nums.bc[3 - p][q] for (p, q), _ in TABLE2_COLUMNS)
            bc_header = table2_vector(nums, "bc")
            iso_a = _iso_ok(pair.algebra("iia", row.frame), row.iia_frame, row.iia_class)
            iso_b = _iso_ok(pair.algebra("iib", row.frame), row.iib_frame, row.mirror_class)
            row_ok = (ty_vec == row.expected and bc_partner == row.expected and nums.ok
                      and iso_a and iso_b)
            ok = ok and row_ok
            rows.append({
                "label": row.label,
                "affine": row.affine,
                "lambda": None if lam is None else str(lam),
                "expected": list(row.expected),
                "ty": list(ty_vec),
                "bc": list(bc_partner),
                "bc_as_headed": list(bc_header),
                "header_pairing": header_pairing(nums, row.expected),
                "mirror_identity": nums.ok,
                "iia_isomorphic_to_listed": iso_a,
                "iib_isomorphic_to_listed": iso_b,
                "iia": pair.iia.g.salamon(),
                "iib": pair.iib.g.salamon(),
                "ty_table": nums.ty,
                "bc_table": nums.bc,
                "ok": row_ok,
                "provenance": row.provenance,
            })
            cells = " ".join(f"{f'{t}/{b}':>9}" for t, b in zip(ty_vec, bc_partner))
            lines.append(f"{row.affine:<28} {'' if lam is None else str(lam):>6}  {cells}  "
                         f"{'PASS' if row_ok else 'FAIL'}  [{row.provenance}]")
    last_header = [r["header_pairing"][-1] for r in rows]
    lines.append("last column: printed numbers match h_BC^{2,2} (the mirror partner of h_TY^{1,2}) "
                 f"in {sum(h['bc_partner_value'] == h['printed'] for h in last_header)}/{len(rows)} "
                 f"cases and h_BC^{{3,2}} in "
                 f"{sum(h['bc_header_value'] == h['printed'] for h in last_header)}/{len(rows)}")
    lines.append("numbers are Lie algebra invariants (left-invariant forms)")
    return Report("table2", ok, {"rows": rows}, lines)


def catalog_report() -> Report:
    body = {
        "table1": [{"row": r.index, "algebra": r.algebra, "omega": r.omega, "Omega": r.Omega,
                    "completely_solvable": r.completely_solvable,
                    "constructible": r.constructible, "affine": list(r.affine),
                    "note": r.note, "provenance": r.provenance} for r in TABLE1],
        "affine": [],
        "table2": [{"label": r.label, "affine": r.affine,
                    "lambdas": [str(x) for x in r.lambdas], "lie_algebra": r.iia_class,
                    "mirror": r.mirror_class, "expected": list(r.expected),
                    "provenance": r.provenance} for r in TABLE2],
    }
    lines = ["type IIA algebras:"]
    for r in TABLE1:
        flag = "constructible" if r.constructible else "not constructed"
        lines.append(f"  {r.index}  {r.algebra:<70} c.s.={'yes' if r.completely_solvable else 'no':<3} {flag}")
    lines.append("affine structures:")
    for name in AFFINE_NAMES:
        a = affine_structure(name, _lam_value(name, None))
        body["affine"].append({"name": a.name, "label": a.label, "base": a.base.salamon(),
                               "rho": [[[str(x) for x in row] for row in R] for R in a.rho],
                               "tau": "diag(1, lambda, lambda-1)" if a.params else
                               [[str(x) for x in row] for row in a.tau],
                               "note": a.note})
        lines.append(f"  {a.name:<14} base {a.base.salamon():<12} {a.note}")
    lines.append("mirror table rows:")
    for r in TABLE2:
        lam = ",".join(str(x) for x in r.lambdas)
        lines.append(f"  {r.label:<28} {lam:<8} {r.expected}")
    return Report("catalog", True, body, lines)
