"""Desk-scale reproduction table: computed values next to the known ones."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import constructions as C
from .bounds import binomial_upper, line_graph_alpha_ratio
from .core import matching, star, verify_family
from .covering import covering_to_perms, perms_to_covering, verify_cover
from .solver import extremal_scan, kappa, kappa_sweep, rho


@dataclass
class Row:
    name: str
    expected: str
    computed: str
    ok: bool


def _family_row(name: str, f, size: int) -> Row:
    valid = verify_family(f).valid
    return Row(name, f"{size} words, valid", f"{len(f)} words, {'valid' if valid else 'INVALID'}", valid and len(f) == size)


def run_all(full: bool = False) -> list[Row]:
    rows = []
    r = kappa(C.p4_plus_k1(), 5)
    rows.append(Row("kappa(P4,5)", "10", str(r.value), r.value == 10 and r.certified_optimal))
    for k in (1, 2, 3):
        r = kappa(star(k), 2 * k + 1)
        rows.append(Row(f"kappa(K_{{1,{k}}},{2 * k + 1})", str(2 * k + 1), str(r.value), r.value == 2 * k + 1))
    sweep = kappa_sweep(star(2), 7)
    vals = [x.value for x in sweep]
    rows.append(Row("sweep K_{1,2} n<=7", "max 5", str(vals), max(vals) == 5 and vals == sorted(vals)))
    rows.append(_family_row("matching(6)", C.construct_matching(6), 729))
    rows.append(_family_row("complete(4)", C.construct_complete(4), 60))
    for n in range(1, 7):
        rows.append(_family_row(f"catalan({n})", C.catalan_construction(n), C.catalan_number(n)))
    for n in range(1, 8 if full else 7):
        r = rho(n)
        cap = binomial_upper(n)
        ok = r.value <= cap and (n != 5 or r.value == 10)
        rows.append(Row(f"rho({n}) <= C({n},{n // 2})", f"<= {cap}", str(r.value), ok))
    rows.append(_family_row("rho-recursion(9)", C.rho_recursion_build(9), 100))
    cert = perms_to_covering(C.construct_matching(2))
    back = covering_to_perms(cert)
    ok = verify_cover(cert).valid and len(cert.parts) == 2 and len(back) == 9 and verify_family(back).valid
    rows.append(Row("cover round-trip 2K2", "2 parts, 9 words", f"{len(cert.parts)} parts, {len(back)} words", ok))
    for t in (3, 4, 5):
        ar = line_graph_alpha_ratio(t)
        rows.append(Row(f"alpha-ratio t={t} <= 4", f"<= 4, alpha >= {ar.bipartite_lower}", f"{ar.ratio}, alpha={ar.alpha}", ar.ok))
    scan = extremal_scan(4, 2, 6)
    top = scan.argmax()
    is_2k2 = [e.graph.edges for e in top] == [matching(2).edges]
    rows.append(Row("scan(4,2,6) argmax", "2K2, in [9,16]", f"{[[list(x) for x in e.graph.edges] for e in top]} = {scan.maximum.value}",
                    is_2k2 and 9 <= scan.maximum.value <= 16))
    rows.append(Row("binomial C(7,3)", "35", str(comb(7, 3)), binomial_upper(7) == 35))
    return rows
