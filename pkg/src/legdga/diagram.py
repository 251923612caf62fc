"""Exact polygonal xy projections of Legendrian knots.

A diagram is a closed polygon with rational vertices, traversed in the
knot's orientation.  Everything combinatorial (crossings, arcs, faces,
heights, signs) is derived here with rational arithmetic; only tangent
turning uses floats, and it is rounded to quarter turns with a hard
residual bound.
"""

from __future__ import annotations

import json
import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

Point = tuple  # (Fraction, Fraction)

# Ray order around a crossing, counterclockwise from the outgoing understrand.
UNDER, OVER = "under", "over"

__all__ = [
    "DiagramError",
    "PlaneCurve",
    "Crossing",
    "Quadrant",
    "Arc",
    "Face",
    "CappingPath",
    "DiagramInvariants",
    "KnotDiagram",
    "parse_rational",
    "parse_curve",
    "load_curve",
    "dump_curve",
    "validate",
    "validation_report",
    "build_diagram",
    "rotation_number",
    "reverse_orientation",
    "signed_area",
    "perturb_curve",
    "natural_key",
]


class DiagramError(ValueError):
    """Invalid or non-generic diagram input."""

    def __init__(self, message: str, violations: Sequence[str] = ()):
        super().__init__(message)
        self.violations = list(violations) or [message]


# ---------------------------------------------------------------------------
# Parsing


_RAT_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$")


def parse_rational(value) -> Fraction:
    """Parse an exact rational from ``"3/2"``, ``"-1"`` or an int."""
    if isinstance(value, bool):
        raise DiagramError(f"non-rational coordinate {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if not isinstance(value, str) or not _RAT_RE.match(value):
        raise DiagramError(f"non-rational coordinate {value!r}")
    try:
        return Fraction(value.replace(" ", ""))
    except ZeroDivisionError:
        raise DiagramError(f"non-rational coordinate {value!r} (zero denominator)") from None


def natural_key(label: str):
    """Sort key putting ``a2`` before ``a10``."""
    return tuple(int(p) if p.isdigit() else p for p in re.split(r"(\d+)", label))


@dataclass(frozen=True)
class PlaneCurve:
    """Closed polygon, vertices in orientation order."""

    name: str
    vertices: tuple
    labels: tuple | None = None

    def __post_init__(self):
        verts = tuple((Fraction(x), Fraction(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))

    def __len__(self):
        return len(self.vertices)

    def segments(self):
        n = len(self.vertices)
        for i in range(n):
            yield self.vertices[i], self.vertices[(i + 1) % n]

    def to_dict(self) -> dict:
        out = {"name": self.name, "vertices": [[_frac_str(x), _frac_str(y)] for x, y in self.vertices]}
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_curve(doc) -> PlaneCurve:
    """Build a curve from a JSON text or an already decoded mapping."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise DiagramError(f"malformed diagram document: {exc}") from None
    if not isinstance(doc, dict):
        raise DiagramError("diagram document must be an object")
    name = doc.get("name", "unnamed")
    if not isinstance(name, str):
        raise DiagramError("name must be a string")
    verts = doc.get("vertices")
    if not isinstance(verts, list):
        raise DiagramError("vertices must be a list")
    pts = []
    for v in verts:
        if not isinstance(v, (list, tuple)) or len(v) != 2:
            raise DiagramError(f"malformed vertex {v!r}")
        pts.append((parse_rational(v[0]), parse_rational(v[1])))
    if len(pts) < 3:
        raise DiagramError("a curve needs at least 3 vertices")
    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
            raise DiagramError("labels must be a list of strings")
        if len(set(labels)) != len(labels):
            raise DiagramError("labels must be distinct")
    extra = set(doc) - {"name", "vertices", "labels", "comment"}
    if extra:
        raise DiagramError(f"unknown keys in diagram document: {sorted(extra)}")
    return PlaneCurve(name, tuple(pts), tuple(labels) if labels is not None else None)


def load_curve(path) -> PlaneCurve:
    with open(path, encoding="utf-8") as fh:
        return parse_curve(fh.read())


def dump_curve(curve: PlaneCurve) -> str:
    return json.dumps(curve.to_dict(), indent=1) + "\n"


# ---------------------------------------------------------------------------
# Exact geometry


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def signed_area(vertices) -> Fraction:
    """Exact value of the line integral of x dy around the closed polygon."""
    n = len(vertices)
    total = Fraction(0)
    for i in range(n):
        (x1, y1), (x2, y2) = vertices[i], vertices[(i + 1) % n]
        total += Fraction(x1 + x2) * (y2 - y1) / 2
    return total


def _path_x_dy(points) -> Fraction:
    total = Fraction(0)
    for (x1, y1), (x2, y2) in zip(points, points[1:]):
        total += (x1 + x2) * (y2 - y1) / 2
    return total


@dataclass(frozen=True)
class _Hit:
    i: int
    j: int
    s: Fraction  # parameter on segment i
    u: Fraction  # parameter on segment j
    point: Point


def _intersections(vertices):
    """All transverse crossings plus a list of genericity violations."""
    n = len(vertices)
    segs = [(vertices[i], vertices[(i + 1) % n]) for i in range(n)]
    hits, problems = [], []
    for i in range(n):
        p, p2 = segs[i]
        r = _sub(p2, p)
        for j in range(i + 1, n):
            q, q2 = segs[j]
            sv = _sub(q2, q)
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            den = _cross(r, sv)
            qp = _sub(q, p)
            if den == 0:
                if _cross(qp, r) != 0:
                    continue
                # collinear: compare projections onto r
                rr = _dot(r, r)
                t0 = _dot(qp, r) / rr
                t1 = _dot(_sub(q2, p), r) / rr
                lo, hi = min(t0, t1), max(t0, t1)
                olo, ohi = max(lo, Fraction(0)), min(hi, Fraction(1))
                if adjacent:
                    if ohi > olo:
                        problems.append(f"segments {i} and {j} overlap (backtracking)")
                elif ohi >= olo:
                    problems.append(f"collinear segments {i} and {j} touch")
                continue
            s = _cross(qp, sv) / den
            u = _cross(qp, r) / den
            if not (0 <= s <= 1 and 0 <= u <= 1):
                continue
            if adjacent:
                shared = (s == 1 and u == 0) if j == i + 1 else (s == 0 and u == 1)
                if not shared:
                    problems.append(f"adjacent segments {i} and {j} meet away from their vertex")
                continue
            if s in (0, 1) or u in (0, 1):
                problems.append(f"vertex lies on segment ({i}, {j}) intersection")
                continue
            pt = (p[0] + s * r[0], p[1] + s * r[1])
            hits.append(_Hit(i, j, s, u, pt))
    seen: dict = {}
    for h in hits:
        if h.point in seen:
            problems.append(f"three or more strands meet at {_fmt_pt(h.point)}")
        seen[h.point] = h
    return hits, problems


def _fmt_pt(p):
    return f"({_frac_str(p[0])}, {_frac_str(p[1])})"


def validation_report(curve: PlaneCurve) -> list[str]:
    """Every violated curve invariant, as human readable strings."""
    out = []
    v = curve.vertices
    if len(v) < 3:
        return ["fewer than 3 vertices"]
    for i in range(len(v)):
        if v[i] == v[(i + 1) % len(v)]:
            out.append(f"consecutive vertices {i} and {(i + 1) % len(v)} coincide")
    if out:
        return out
    area = signed_area(v)
    if area != 0:
        out.append(f"signed area = {_frac_str(area)} != 0")
    hits, problems = _intersections(v)
    out.extend(problems)
    if not hits and not problems:
        out.append("curve has no crossings")
    if curve.labels is not None and not problems and len(curve.labels) != len(hits):
        out.append(f"{len(curve.labels)} labels given for {len(hits)} crossings")
    return out


def validate(curve: PlaneCurve) -> PlaneCurve:
    """Return the curve if it satisfies every invariant, else raise DiagramError."""
    problems = validation_report(curve)
    if problems:
        raise DiagramError("; ".join(problems), problems)
    return curve


def reverse_orientation(curve: PlaneCurve) -> PlaneCurve:
    name = curve.name[:-4] if curve.name.endswith("-rev") else curve.name + "-rev"
    return PlaneCurve(name, curve.vertices[::-1], curve.labels)


# ---------------------------------------------------------------------------
# Rotation


def _turn(d1, d2) -> float:
    return math.atan2(float(_cross(d1, d2)), float(_dot(d1, d2)))


def rotation_number(directions: Sequence[tuple], quantum: Fraction = Fraction(1, 4)) -> Fraction:
    """Counterclockwise revolutions of a tangent passing through ``directions``.

    The turning is summed in floating point and rounded to a multiple of
    ``quantum``; a rounding residual of half a quantum or more is an error.
    """
    total = sum(_turn(a, b) for a, b in zip(directions, directions[1:]))
    turns = total / (2 * math.pi)
    k = round(turns / float(quantum))
    if abs(turns - k * float(quantum)) >= float(quantum) / 2:
        raise DiagramError(f"rotation {turns:.6f} is too far from a multiple of {quantum}")
    return k * quantum


def capping_rotation(directions: Sequence[tuple]) -> Fraction:
    """Turning of a capping path, snapped to the nearest odd multiple of 1/4.

    At an orthogonal crossing the turning is exactly such a multiple; any
    other transverse crossing angle shifts it by less than 1/4, so the
    snap is exact and equals the value after making the crossing orthogonal.
    """
    total = sum(_turn(a, b) for a, b in zip(directions, directions[1:]))
    turns = total / (2 * math.pi)
    m = round((4 * turns - 1) / 2)
    if abs(turns - (2 * m + 1) / 4) >= 0.25 - 1e-9:
        raise DiagramError(f"capping rotation {turns:.6f} is ambiguous (tangent crossing?)")
    return Fraction(2 * m + 1, 4)


# ---------------------------------------------------------------------------
# Diagram records


@dataclass(frozen=True)
class Quadrant:
    crossing: int
    index: int
    reeb_sign: int
    orientation_sign: int
    face: int
    rays: tuple  # (ray index of A, ray index of B); sector runs ccw from A to B


@dataclass(frozen=True)
class CappingPath:
    crossing: int
    arcs: tuple  # 0/1 per arc
    rotation: Fraction


@dataclass(frozen=True)
class Crossing:
    index: int
    label: str
    point: Point
    under_pre: int  # preimage index of the understrand passage
    over_pre: int
    under_dir: tuple
    over_dir: tuple
    z_under: Fraction
    z_over: Fraction
    rays: tuple  # four (role, +1/-1) in ccw order, ray 0 = outgoing understrand
    quadrants: tuple
    capping: CappingPath
    grading: int
    writhe_sign: int

    @property
    def height(self) -> Fraction:
        return self.z_over - self.z_under

    @property
    def sign(self) -> int:
        return -1 if self.grading % 2 else 1

    @property
    def reeb_signs(self) -> tuple:
        return tuple(q.reeb_sign for q in self.quadrants)

    @property
    def orientation_signs(self) -> tuple:
        return tuple(q.orientation_sign for q in self.quadrants)

    @property
    def positive_quadrants(self) -> tuple:
        return tuple(q.index for q in self.quadrants if q.reeb_sign > 0)


@dataclass(frozen=True)
class Arc:
    index: int
    start: tuple  # (crossing index, role)
    end: tuple
    points: tuple  # polyline from start crossing to end crossing
    x_dy: Fraction  # line integral of x dy along the arc


@dataclass(frozen=True)
class Face:
    index: int
    sides: tuple  # cycle of (arc, dir), face on the left
    area: Fraction  # signed; positive for bounded faces
    bounded: bool
    corners: tuple  # (crossing, quadrant) at the start of each side


@dataclass(frozen=True)
class DiagramInvariants:
    tb: int
    r: int
    crossings: int


@dataclass(frozen=True)
class _Preimage:
    seg: int
    s: Fraction
    crossing: int
    role: str


class KnotDiagram:
    """All derived combinatorics of a validated curve.

    Sides are pairs ``(arc, dir)``; ``dir = +1`` follows the orientation.
    """

    def __init__(self, curve: PlaneCurve, even_side: str = "left", corrupt_signs: bool = False):
        if even_side not in ("left", "right"):
            raise ValueError("even_side must be 'left' or 'right'")
        validate(curve)
        self.curve = curve
        self.name = curve.name
        self.even_side = even_side
        self.corrupt_signs = corrupt_signs
        verts = curve.vertices
        nv = len(verts)
        hits, _ = _intersections(verts)
        hits.sort(key=lambda h: h.point)  # canonical order: lexicographic (x, y)
        ncross = len(hits)

        # z at each vertex, integrated with dz = -x dy
        zv = [Fraction(0)]
        for i in range(nv - 1):
            (x1, y1), (x2, y2) = verts[i], verts[i + 1]
            zv.append(zv[-1] - (x1 + x2) * (y2 - y1) / 2)

        def z_at(seg, pt):
            (x1, y1) = verts[seg]
            return zv[seg] - (x1 + pt[0]) * (pt[1] - y1) / 2

        def seg_dir(seg):
            return _sub(verts[(seg + 1) % nv], verts[seg])

        pre_raw = []
        info = []
        for c, h in enumerate(hits):
            zi, zj = z_at(h.i, h.point), z_at(h.j, h.point)
            if zi == zj:
                raise DiagramError(f"crossing at {_fmt_pt(h.point)} has zero height")
            if zi > zj:
                over, under = (h.i, h.s), (h.j, h.u)
                z_over, z_under = zi, zj
            else:
                over, under = (h.j, h.u), (h.i, h.s)
                z_over, z_under = zj, zi
            info.append((under, over, z_under, z_over))
            pre_raw.append((under[0], under[1], c, UNDER))
            pre_raw.append((over[0], over[1], c, OVER))
        pre_raw.sort(key=lambda t: (t[0], t[1]))
        self.preimages = tuple(_Preimage(*t) for t in pre_raw)
        npre = len(self.preimages)
        pre_of = {(p.crossing, p.role): k for k, p in enumerate(self.preimages)}

        heights = [zo - zu for (_, _, zu, zo) in info]
        if len(set(heights)) != len(heights):
            raise DiagramError("crossing heights are not pairwise distinct")

        # arcs
        arcs = []
        for k in range(npre):
            a, b = self.preimages[k], self.preimages[(k + 1) % npre]
            pts = [hits[a.crossing].point]
            seg = a.seg
            if k + 1 < npre and b.seg == a.seg:
                pass
            else:
                seg = (a.seg + 1) % nv
                while True:
                    pts.append(verts[seg])
                    if seg == b.seg:
                        break
                    seg = (seg + 1) % nv
            pts.append(hits[b.crossing].point)
            arcs.append(Arc(k, (a.crossing, a.role), (b.crossing, b.role), tuple(pts), _path_x_dy(pts)))
        self.arcs = tuple(arcs)

        # rays: ccw from outgoing understrand
        ray_tables = []
        for c in range(ncross):
            (useg, _), (oseg, _) = info[c][0], info[c][1]
            du, do = seg_dir(useg), seg_dir(oseg)
            if _cross(du, do) > 0:
                rays = ((UNDER, 1), (OVER, 1), (UNDER, -1), (OVER, -1))
            else:
                rays = ((UNDER, 1), (OVER, -1), (UNDER, -1), (OVER, 1))
            ray_tables.append(rays)
        self._rays = ray_tables

        # side leaving crossing c along ray j
        self._ray_side = []
        for c in range(ncross):
            row = []
            for role, sgn in ray_tables[c]:
                p = pre_of[(c, role)]
                row.append((p, 1) if sgn > 0 else ((p - 1) % npre, -1))
            self._ray_side.append(tuple(row))
        self._side_start = {}
        for c in range(ncross):
            for j, side in enumerate(self._ray_side[c]):
                self._side_start[side] = (c, j)

        # faces
        face_of_side = {}
        faces = []
        for side0 in sorted(self._side_start):
            if side0 in face_of_side:
                continue
            cyc = []
            side = side0
            while side not in face_of_side:
                face_of_side[side] = len(faces)
                cyc.append(side)
                c, j = self.side_end(side)
                side = self._ray_side[c][(j - 1) % 4]
            if side != side0:
                raise AssertionError("face traversal did not close")
            area = sum((self.arcs[k].x_dy * o for k, o in cyc), Fraction(0))
            corners = tuple((self._side_start[s][0], self._side_start[s][1]) for s in cyc)
            faces.append(Face(len(faces), tuple(cyc), area, area > 0, corners))
        unbounded = [f for f in faces if not f.bounded]
        if len(unbounded) != 1 or any(f.area == 0 for f in faces):
            raise DiagramError("planar subdivision is degenerate")
        self.faces = tuple(faces)
        self.face_of_side = face_of_side
        self.outer_face = unbounded[0].index

        # capping paths and gradings
        labels = self._labels(curve, heights)
        crossings = []
        for c in range(ncross):
            under, over, z_under, z_over = info[c]
            pu, po = pre_of[(c, UNDER)], pre_of[(c, OVER)]
            vec = [0] * npre
            k = pu
            while k != po:
                vec[k] = 1
                k = (k + 1) % npre
            dirs = [seg_dir(under[0])]
            seg = under[0]
            while seg != over[0]:
                seg = (seg + 1) % nv
                dirs.append(seg_dir(seg))
            rot = capping_rotation(dirs)
            grading = -2 * rot - Fraction(1, 2)
            if grading.denominator != 1:
                raise DiagramError(f"non-integral grading at crossing {labels[c]}")
            grading = int(grading)
            du, do = seg_dir(under[0]), seg_dir(over[0])
            rays = ray_tables[c]
            quads = []
            for q in range(4):
                a_role = rays[q][0]
                b_role = rays[(q + 1) % 4][0]
                reeb = 1 if (a_role == OVER and b_role == UNDER) else -1
                eps = 1
                if grading % 2 == 0:
                    neg = (0, 1) if even_side == "left" else (2, 3)
                    eps = -1 if q in neg else 1
                if corrupt_signs and q == 0:
                    eps = -eps
                face = face_of_side[self._ray_side[c][q]]
                quads.append(Quadrant(c, q, reeb, eps, face, (q, (q + 1) % 4)))
            crossings.append(
                Crossing(
                    index=c,
                    label=labels[c],
                    point=hits[c].point,
                    under_pre=pu,
                    over_pre=po,
                    under_dir=du,
                    over_dir=do,
                    z_under=z_under,
                    z_over=z_over,
                    rays=rays,
                    quadrants=tuple(quads),
                    capping=CappingPath(c, tuple(vec), rot),
                    grading=grading,
                    writhe_sign=1 if _cross(do, du) > 0 else -1,
                )
            )
        self.crossings = tuple(crossings)
        self._by_label = {x.label: x for x in crossings}
        loop_dirs = [seg_dir(i) for i in range(nv)] + [seg_dir(0)]
        self.rotation = int(rotation_number(loop_dirs, Fraction(1)))

    # ------------------------------------------------------------------
    @staticmethod
    def _labels(curve, heights):
        n = len(heights)
        if curve.labels is not None:
            return list(curve.labels)
        order = sorted(range(n), key=lambda c: heights[c])
        labels = [""] * n
        for rank, c in enumerate(order):
            labels[c] = f"a{rank + 1}"
        return labels

    def side_start(self, side) -> tuple:
        """``(crossing, ray)`` the side leaves from."""
        return self._side_start[side]

    def side_end(self, side) -> tuple:
        """``(crossing, ray)`` along which the side arrives."""
        return self._side_start[(side[0], -side[1])]

    def ray_side(self, crossing: int, ray: int) -> tuple:
        return self._ray_side[crossing][ray % 4]

    def left_face(self, side) -> Face:
        return self.faces[self.face_of_side[side]]

    def crossing(self, label: str) -> Crossing:
        return self._by_label[label]

    @property
    def labels(self) -> list[str]:
        return sorted(self._by_label, key=natural_key)

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)

    @cached_property
    def invariants(self) -> DiagramInvariants:
        return DiagramInvariants(
            tb=sum(c.writhe_sign for c in self.crossings),
            r=self.rotation,
            crossings=len(self.crossings),
        )

    def quadrant(self, crossing: int, q: int) -> Quadrant:
        return self.crossings[crossing].quadrants[q % 4]

    # checks --------------------------------------------------------------
    def local_checks(self) -> list[str]:
        """Per-crossing structural properties; returns violations."""
        bad = []
        for c in self.crossings:
            rs = c.reeb_signs
            if rs[0] == rs[1] or rs[0] != rs[2] or rs[1] != rs[3]:
                bad.append(f"{c.label}: Reeb signs do not alternate")
            if c.height <= 0:
                bad.append(f"{c.label}: nonpositive height")
            eps = c.orientation_signs
            sg = c.sign
            if eps[0] * eps[2] != -sg or eps[1] * eps[3] != -sg:
                bad.append(f"{c.label}: opposite-quadrant sign product is not -sgn")
            for q in range(4):
                prod = eps[q] * eps[(q + 1) % 4]
                # ccw pair (-, +) shares a side of the understrand
                want = 1 if (rs[q] < 0 and rs[(q + 1) % 4] > 0) else -sg
                if prod != want:
                    bad.append(f"{c.label}: adjacent sign product at Q{q} is {prod}, expected {want}")
            # parity: coherent about + (capping path arrives so that ... ) => odd
            if c.capping.rotation.denominator != 4:
                bad.append(f"{c.label}: r(capping path) is not an odd multiple of 1/4")
            coherent_plus = self._coherent_about_plus(c)
            if coherent_plus != (c.grading % 2 == 1):
                bad.append(f"{c.label}: parity lemma fails")
            comp = [1 - v for v in c.capping.arcs]
            if any(a + b != 1 for a, b in zip(c.capping.arcs, comp)):
                bad.append(f"{c.label}: capping complement mismatch")
        return bad

    def _coherent_about_plus(self, c: Crossing) -> bool:
        """Whether the quadrant enclosed by the capping path is positive.

        Near the crossing the capping path leaves along the outgoing
        understrand (ray 0) and returns along the incoming overstrand.
        """
        j = c.rays.index((OVER, -1))
        q = 0 if j == 1 else 3
        return c.quadrants[q].reeb_sign > 0


def build_diagram(curve: PlaneCurve, **kwargs) -> KnotDiagram:
    return KnotDiagram(curve, **kwargs)


# ---------------------------------------------------------------------------
# Random perturbation with exact area repair


def _repair_area(verts: list, k: int) -> bool:
    n = len(verts)
    y_next, y_prev = verts[(k + 1) % n][1], verts[k - 1][1]
    coef = (y_next - y_prev) / 2
    if coef == 0:
        return False
    area = signed_area(verts)
    x, y = verts[k]
    verts[k] = (x - area / coef, y)
    return True


def _min_gap(values) -> Fraction:
    vals = sorted(set(values))
    gaps = [b - a for a, b in zip(vals, vals[1:])]
    return min(gaps) if gaps else Fraction(1)


def perturb_curve(
    curve: PlaneCurve,
    rng: random.Random,
    scale: Fraction | None = None,
    denominator: int = 997,
    attempts: int = 50,
    same_as: KnotDiagram | None = None,
) -> PlaneCurve:
    """Jiggle every vertex, then restore zero area by moving one x coordinate.

    By default each axis moves by at most a tenth of the smallest gap between
    distinct coordinates on that axis, so thin features survive.  When
    ``same_as`` is given the result is required to have the same number of
    crossings, the same labels in canonical order and the same gradings.
    """
    base = list(curve.vertices)
    n = len(base)
    ref = same_as or KnotDiagram(curve)
    if scale is None:
        sx = _min_gap(x for x, _ in base) / 10
        sy = _min_gap(y for _, y in base) / 10
    else:
        sx = sy = scale
    # labels follow segment pairs, since canonical point order may change
    base_hits = sorted(_intersections(base)[0], key=lambda h: h.point)
    label_of = {(h.i, h.j): c.label for h, c in zip(base_hits, ref.crossings)}
    # repair at the vertex whose neighbours differ most in y
    order = sorted(range(n), key=lambda k: -abs(base[(k + 1) % n][1] - base[k - 1][1]))
    for _ in range(attempts):
        verts = []
        for x, y in base:
            dx = Fraction(rng.randint(-denominator, denominator), denominator) * sx
            dy = Fraction(rng.randint(-denominator, denominator), denominator) * sy
            verts.append((x + dx, y + dy))
        if not _repair_area(verts, order[0]):
            continue
        if abs(verts[order[0]][0] - base[order[0]][0]) > 4 * sx:
            continue
        hits = sorted(_intersections(verts)[0], key=lambda h: h.point)
        if {(h.i, h.j) for h in hits} != set(label_of):
            continue
        labels = tuple(label_of[(h.i, h.j)] for h in hits)
        cand = PlaneCurve(f"{curve.name}~", tuple(verts), labels)
        try:
            diag = KnotDiagram(cand, even_side=ref.even_side)
        except DiagramError:
            continue
        if _same_combinatorics(ref, diag):
            return cand
    raise DiagramError(f"could not perturb {curve.name} within {attempts} attempts")


def _same_combinatorics(a: KnotDiagram, b: KnotDiagram) -> bool:
    if a.invariants != b.invariants or a.labels != b.labels:
        return False
    return all(a.crossing(x).grading == b.crossing(x).grading for x in a.labels)
