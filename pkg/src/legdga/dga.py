"""The differential graded algebra of a Legendrian knot diagram.

Generators are the crossings, graded by their capping paths, and

    d a = sum over rigid disks A with positive corner at a of  eps(A) t^(-n(A)) b1 ... bk

extended to products by the signed Leibniz rule.  Building a DGA also runs
a battery of independent checks (grading, d^2 = 0, areas, dimensions,
crossing-local sign lemmas, and optionally the oracle enumerator).
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    AlgebraError,
    DgaPresentation,
    Element,
    GradedSignature,
    dga_from_data,
    dga_to_data,
)
from .diagram import KnotDiagram, PlaneCurve, parse_curve
from .disks import (
    DiskError,
    dimension,
    enumerate_rigid_disks,
    oracle_enumerate,
    verify_area_identity,
)

__all__ = [
    "Check",
    "DgaError",
    "KnotDga",
    "build_dga",
    "check_dga",
    "verify_degree",
    "verify_d2",
    "unit_boundary_witness",
    "serialize",
    "deserialize",
]

FORMAT_VERSION = 1


class DgaError(ValueError):
    """Raised when a built DGA fails verification or a DGA file is malformed."""

    def __init__(self, message: str, report: list | None = None):
        super().__init__(message)
        self.report = report or []


@dataclass(frozen=True)
class Check:
    """One line of a verification report."""

    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class KnotDga:
    presentation: DgaPresentation
    disks: dict = field(default_factory=dict)  # label -> tuple of RigidDisk
    diagram: KnotDiagram | None = None
    name: str = ""

    @property
    def sig(self) -> GradedSignature:
        return self.presentation.sig

    @property
    def generators(self):
        return self.presentation.generators

    def d(self, x: Element) -> Element:
        return self.presentation.d(x)

    def differential(self, gen: str) -> Element:
        return self.presentation.differential[gen]

    def to_text(self, latex: bool = False) -> str:
        return self.presentation.to_text(latex)

    def __eq__(self, other):
        if not isinstance(other, KnotDga):
            return NotImplemented
        return self.presentation == other.presentation


# ---------------------------------------------------------------------------
# Assembly

_WORKER: dict = {}


def _worker_init(curve_doc, options):
    _WORKER["diagram"] = KnotDiagram(parse_curve(curve_doc), **options)


def _worker_disks(index: int):
    return enumerate_rigid_disks(_WORKER["diagram"], index)


def _diagram_options(diagram: KnotDiagram) -> dict:
    return {"even_side": diagram.even_side, "corrupt_signs": diagram.corrupt_signs}


def collect_disks(diagram: KnotDiagram, jobs: int = 1) -> list:
    """Rigid disks per crossing index; the result does not depend on ``jobs``."""
    n = len(diagram.crossings)
    if jobs <= 1 or n < 2:
        return [enumerate_rigid_disks(diagram, i) for i in range(n)]
    with ProcessPoolExecutor(
        max_workers=min(jobs, n),
        initializer=_worker_init,
        initargs=(diagram.curve.to_dict(), _diagram_options(diagram)),
    ) as pool:
        return list(pool.map(_worker_disks, range(n)))


def signature_of(diagram: KnotDiagram) -> GradedSignature:
    labels = diagram.labels
    return GradedSignature.from_pairs(
        [(lab, diagram.crossing(lab).grading) for lab in labels], 2 * diagram.rotation
    )


def build_dga(diagram: KnotDiagram, jobs: int = 1, verify: bool = True, oracle: bool = False) -> KnotDga:
    """Assemble the differential; with ``verify`` raise :class:`DgaError` on any failed check."""
    sig = signature_of(diagram)
    per_crossing = collect_disks(diagram, jobs)
    diff = {}
    disks = {}
    for lab in sig.generators:
        idx = diagram.crossing(lab).index
        found = tuple(per_crossing[idx])
        disks[lab] = found
        terms: dict = {}
        for disk in found:
            key = (disk.word, disk.t_exponent)
            terms[key] = terms.get(key, 0) + disk.sign
        diff[lab] = Element(sig, {k: c for k, c in terms.items() if c != 0})
    dga = KnotDga(DgaPresentation(sig, diff), disks, diagram, diagram.curve.name)
    if verify:
        report = check_dga(dga, oracle=oracle)
        failed = [c for c in report if not c.ok]
        if failed:
            raise DgaError(f"verification failed: {failed[0].line()}", report)
    return dga


# ---------------------------------------------------------------------------
# Verification


def verify_degree(dga: KnotDga) -> Check:
    bad = dga.presentation.degree_defects()
    if bad:
        g = next(iter(bad))
        return Check("degree -1", False, f"d({g}): {bad[g]}")
    return Check("degree -1", True, f"{len(dga.generators)} generators homogeneous")


def verify_d2(dga: KnotDga) -> Check:
    try:
        bad = dga.presentation.d_squared()
    except AlgebraError as exc:
        return Check("d^2 = 0", False, str(exc))
    if bad:
        g = next(iter(bad))
        return Check("d^2 = 0", False, f"d(d({g})) = {bad[g].to_text()}")
    return Check("d^2 = 0", True)


def _disk_checks(dga: KnotDga) -> list[Check]:
    diagram = dga.diagram
    area_bad, dim_bad, t_bad = [], [], []
    r = diagram.rotation
    for lab, found in dga.disks.items():
        a = diagram.crossing(lab)
        for disk in found:
            desc = f"{lab} -> {' '.join(disk.word) or '1'}"
            if not verify_area_identity(diagram, disk):
                area_bad.append(desc)
            if dimension(diagram, disk.crossing, disk.negatives, disk.winding) != 0:
                dim_bad.append(desc)
            if r:
                # degree bookkeeping predicts the power of t when r != 0
                gap = a.grading - 1 - sum(diagram.crossings[c].grading for c, _q in disk.negatives)
                if Fraction(gap, 2 * r) != disk.t_exponent:
                    t_bad.append(desc)
            if diagram.quadrant(disk.crossing, disk.quadrant).reeb_sign < 0 or any(
                diagram.quadrant(c, q).reeb_sign > 0 for c, q in disk.negatives
            ):
                dim_bad.append(desc + " (corner Reeb signs)")
    total = sum(len(v) for v in dga.disks.values())
    return [
        Check("area identity", not area_bad, ", ".join(area_bad) or f"{total} disks"),
        Check("dimension 0", not dim_bad, ", ".join(dim_bad) or f"{total} disks"),
        Check(
            "t-power bookkeeping",
            not t_bad,
            ", ".join(t_bad) or ("consistent" if r else "not applicable (r = 0)"),
        ),
    ]


def _oracle_check(dga: KnotDga) -> Check:
    diagram = dga.diagram
    for lab, found in dga.disks.items():
        idx = diagram.crossing(lab).index
        other = oracle_enumerate(diagram, idx)
        if [d.key for d in found] != [d.key for d in other]:
            return Check("oracle agreement", False, f"disk sets differ at {lab}")
    return Check("oracle agreement", True)


def check_dga(dga: KnotDga, oracle: bool = True) -> list[Check]:
    """Every structural check, one :class:`Check` per property."""
    report = []
    if dga.diagram is not None:
        local = dga.diagram.local_checks()
        report.append(Check("crossing lemmas", not local, "; ".join(local)))
        try:
            report.extend(_disk_checks(dga))
        except DiskError as exc:
            report.append(Check("winding constancy", False, str(exc)))
    report.append(verify_degree(dga))
    report.append(verify_d2(dga))
    if dga.diagram is not None:
        if oracle:
            try:
                report.append(_oracle_check(dga))
            except DiskError as exc:
                report.append(Check("oracle agreement", False, str(exc)))
        else:
            report.append(Check("oracle agreement", True, "skipped"))
    return report


def unit_boundary_witness(dga: KnotDga, k_max: int = 3):
    """First ``c t^k g`` (c = +-1, |k| <= k_max, g a generator) whose boundary is 1."""
    one = Element.one(dga.sig)
    exps = [0]
    for k in range(1, k_max + 1):
        exps += [k, -k]
    for g in dga.generators:
        dg = dga.differential(g)
        for k in exps:
            for c in (1, -1):
                if dg.scale(c, k) == one:
                    return Element.gen(dga.sig, g).scale(c, k)
    return None


# ---------------------------------------------------------------------------
# Files


def serialize(dga: KnotDga) -> str:
    doc = {"format": FORMAT_VERSION, "name": dga.name}
    doc.update(dga_to_data(dga.presentation))
    return json.dumps(doc, indent=1, ensure_ascii=False) + "\n"


def deserialize(text: str) -> KnotDga:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DgaError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DgaError("DGA file must hold a JSON object")
    if doc.get("format", FORMAT_VERSION) != FORMAT_VERSION:
        raise DgaError(f"unsupported format {doc.get('format')!r}")
    try:
        pres = dga_from_data(doc)
    except AlgebraError as exc:
        raise DgaError(str(exc)) from exc
    return KnotDga(pres, {}, None, str(doc.get("name", "")))


def dga_from_curve(curve: PlaneCurve, **kwargs) -> KnotDga:
    options = {k: kwargs.pop(k) for k in ("even_side", "corrupt_signs") if k in kwargs}
    return build_dga(KnotDiagram(curve, **options), **kwargs)
