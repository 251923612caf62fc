"""Acceptance criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` (lines are repeated in the
terminal summary) or directly with ``python3 tests/test_acceptance.py``.
All comparisons are exact; the only tolerances are the wall-clock budgets.
"""

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from legdga import fixtures  # noqa: E402
from legdga.algebra import DgaPresentation  # noqa: E402
from legdga.dga import build_dga, check_dga, unit_boundary_witness  # noqa: E402
from legdga.diagram import KnotDiagram, perturb_curve  # noqa: E402
from legdga.equivalence import (  # noqa: E402
    abelian_homotopy,
    load_certificate,
    stabilization_maps,
    verify_abelian_homotopy,
    verify_certificate,
    verify_chain_homotopy,
)

from tables import FIG8_REV_REFERENCE, TABLES, element, mismatches  # noqa: E402

# wall-clock budgets in seconds
BUDGET = {1: 1.0, 2: 1.0, 3: 5.0, 4: 60.0, 7: 10.0}
PERTURBATIONS = 20
SEED = 20240601
HOMOTOPY_LENGTH = 4

RESULTS: dict = {}

FIG8_DEGREES = {"a1": 0, "a2": 1, "a3": 0, "a4": 1, "a5": 1, "a6": -1, "a7": 1}


def record(n, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n} ({title}): {detail}"
    RESULTS[n] = line
    print(line)
    return ok


def build(name, reverse=False):
    return build_dga(KnotDiagram(fixtures.load(name, reverse=reverse)))


def invariants_ok(dga, tb, r, degrees):
    inv = dga.diagram.invariants
    got = {g: dga.sig.degree(g) for g in dga.generators}
    return inv.tb == tb and inv.r == r and got == degrees


def timed(fn):
    t0 = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - t0


# ---------------------------------------------------------------------------


def criterion_1():
    (fwd, rev), dt = timed(lambda: (build("unknot-fig4"), build("unknot-fig4", True)))
    ok_inv = invariants_ok(fwd, -2, 1, {"a": 1, "b": -1})
    ok_rev_inv = rev.diagram.invariants.r == -1 and {g: rev.sig.degree(g) for g in rev.generators} == {"a": 3, "b": 1}
    bad = mismatches(fwd, TABLES[("unknot-fig4", False)]) + mismatches(rev, TABLES[("unknot-fig4", True)])
    ok = ok_inv and ok_rev_inv and not bad and dt < BUDGET[1]
    return record(1, "unknot", ok, f"invariants {ok_inv and ok_rev_inv}, table mismatches {bad or 'none'}, {dt:.2f}s < {BUDGET[1]}s")


def criterion_2():
    (fwd, rev), dt = timed(lambda: (build("trefoil-fig5"), build("trefoil-fig5", True)))
    ok_inv = invariants_ok(fwd, -6, 1, {f"a{i}": -1 for i in range(1, 7)})
    bad = mismatches(fwd, TABLES[("trefoil-fig5", False)]) + mismatches(rev, TABLES[("trefoil-fig5", True)])
    ok = ok_inv and not bad and dt < BUDGET[2]
    return record(2, "trefoil", ok, f"invariants {ok_inv}, table mismatches {bad or 'none'}, {dt:.2f}s < {BUDGET[2]}s")


def criterion_3(reference=True):
    """Figure eight.  ``reference=False`` compares the reversed orientation
    against the table with its single d^2-inconsistent power of t repaired."""
    (fwd, rev), dt = timed(lambda: (build("fig8-fig5"), build("fig8-fig5", True)))
    ok_inv = invariants_ok(fwd, -3, 0, FIG8_DEGREES) and invariants_ok(rev, -3, 0, FIG8_DEGREES)
    bad_fwd = mismatches(fwd, TABLES[("fig8-fig5", False)])
    rev_table = FIG8_REV_REFERENCE if reference else TABLES[("fig8-fig5", True)]
    bad_rev = mismatches(rev, rev_table)
    ok = ok_inv and not bad_fwd and not bad_rev and dt < BUDGET[3]
    what = "reference" if reference else "d^2-consistent"
    detail = (
        f"invariants {ok_inv}, forward mismatches {bad_fwd or 'none'}, "
        f"reversed vs {what} table mismatches {bad_rev or 'none'}, {dt:.2f}s < {BUDGET[3]}s"
    )
    if reference:
        if bad_rev:
            pres = DgaPresentation(rev.sig, {g: element(rev.sig, t) for g, t in rev_table.items()})
            d2 = pres.d_squared()
            if d2:
                g = sorted(d2)[0]
                detail += f"; the reference table itself has d^2({g}) = {d2[g].to_text()}"
        return record(3, "figure eight", ok, detail)
    return ok, detail


def _structural_and_oracle():
    rng = random.Random(SEED)
    struct_bad, oracle_bad, same_bad, count = [], [], [], 0
    for name in fixtures.KNOTS:
        for rev in (False, True):
            curve = fixtures.load(name, reverse=rev)
            ref = KnotDiagram(curve)
            base = build_dga(ref, verify=False)
            curves = [curve] + [perturb_curve(curve, rng, same_as=ref) for _ in range(PERTURBATIONS)]
            for k, c in enumerate(curves):
                dga = build_dga(KnotDiagram(c), verify=False)
                count += 1
                report = check_dga(dga, oracle=True)
                tag = f"{name}{'-rev' if rev else ''}#{k}"
                struct_bad += [f"{tag}: {x.line()}" for x in report if not x.ok and x.name != "oracle agreement"]
                oracle_bad += [f"{tag}: {x.line()}" for x in report if not x.ok and x.name == "oracle agreement"]
                if dga.presentation != base.presentation:
                    same_bad.append(tag)
    return count, struct_bad, oracle_bad, same_bad


_STRUCT = {}


def structural_run():
    if not _STRUCT:
        value, dt = timed(_structural_and_oracle)
        _STRUCT["value"], _STRUCT["dt"] = value, dt
    return _STRUCT["value"], _STRUCT["dt"]


def criterion_4():
    (count, struct_bad, _o, same_bad), dt = structural_run()
    ok = not struct_bad and not same_bad and dt < BUDGET[4] and count == 6 * (PERTURBATIONS + 1)
    detail = (
        f"{count} diagrams (6 fixtures x {PERTURBATIONS} perturbations + originals), "
        f"failures {struct_bad[:3] or 'none'}, DGA changed under perturbation {same_bad or 'never'}, "
        f"{dt:.2f}s < {BUDGET[4]}s"
    )
    return record(4, "structural suite", ok, detail)


def criterion_5():
    (count, _s, oracle_bad, _same), _dt = structural_run()
    return record(5, "oracle equivalence", not oracle_bad, f"{count} diagrams, disagreements {oracle_bad[:3] or 'none'}")


def criterion_6():
    lines = []
    ok = True
    for name in fixtures.KNOTS:
        for rev in (False, True):
            dga = build(name, rev)
            for i in (-1, 0, 2):
                c = verify_chain_homotopy(stabilization_maps(dga, i), HOMOTOPY_LENGTH)
                ok &= c.ok
                lines.append(c.ok)
            for i in (-1, 0, 1, 2):
                c = verify_abelian_homotopy(abelian_homotopy(dga, i), HOMOTOPY_LENGTH)
                ok &= c.ok
                lines.append(c.ok)
    return record(6, "stabilization homotopy", ok,
                  f"{sum(lines)}/{len(lines)} identities hold on all words of length <= {HOMOTOPY_LENGTH} "
                  "(free i = -1, 0, 2; abelian i = -1, 0, 1, 2)")


def criterion_7():
    def run():
        out = {}
        for move in ("I", "II", "III"):
            cert = load_certificate(fixtures.path(f"move{move}-pair.cert"))
            out[move] = verify_certificate(cert)
        return out

    reports, dt = timed(run)
    names = {m: {c.name for c in r} for m, r in reports.items()}
    ok = all(c.ok for r in reports.values() for c in r) and dt < BUDGET[7]
    ok &= {"move I chain map", "move I elementary", "move I grading", "sgn a = sgn b sgn c"} <= names["I"]
    ok &= "move II d = d'" in names["II"]
    ok &= {"Phi_n chain map", "Phi_n tame"} <= names["III"]
    failed = [c.line() for r in reports.values() for c in r if not c.ok]
    counts = ", ".join(f"{m}: {len(r)} checks" for m, r in reports.items())
    return record(7, "moves", ok, f"{counts}, failures {failed or 'none'}, {dt:.2f}s < {BUDGET[7]}s")


def criterion_8():
    found = {}
    for name, rev in [("unknot-fig4", False), ("unknot-fig4", True), ("trefoil-fig5", False), ("fig8-fig5", False)]:
        x = unit_boundary_witness(build(name, rev))
        found[(name, rev)] = None if x is None else x.to_text()
    ok = (
        found[("unknot-fig4", False)] == "t b"
        and found[("unknot-fig4", True)] == "b"
        and found[("trefoil-fig5", False)] is None
        and found[("fig8-fig5", False)] is None
    )
    detail = ", ".join(f"{n}{'-rev' if r else ''}: {v or 'none'}" for (n, r), v in found.items())
    return record(8, "unit boundary witness", ok, detail + " (|k| <= 3, single generators)")


# ---------------------------------------------------------------------------
# pytest entry points


def test_criterion_1_unknot():
    assert criterion_1(), RESULTS[1]


def test_criterion_2_trefoil():
    assert criterion_2(), RESULTS[2]


@pytest.mark.xfail(strict=True, reason="reference reversed table has t where d^2 = 0 forces t^2 in d(a1)")
def test_criterion_3_fig8_reference_tables():
    assert criterion_3(reference=True), RESULTS[3]


def test_criterion_3_fig8_consistent_tables():
    ok, detail = criterion_3(reference=False)
    assert ok, detail


def test_criterion_4_structural():
    assert criterion_4(), RESULTS[4]


def test_criterion_5_oracle():
    assert criterion_5(), RESULTS[5]


def test_criterion_6_homotopy():
    assert criterion_6(), RESULTS[6]


def test_criterion_7_moves():
    assert criterion_7(), RESULTS[7]


def test_criterion_8_witness():
    assert criterion_8(), RESULTS[8]


if __name__ == "__main__":
    for fn in (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
               criterion_6, criterion_7, criterion_8):
        fn()
    sys.exit(0 if all(line.startswith("PASS") for line in RESULTS.values()) else 1)
