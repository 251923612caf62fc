"""Rigid immersed disks with one positive convex corner.

Two independent searches are provided:

``enumerate_rigid_disks``
    grows an explicit tile complex face by face from the face at a
    positive quadrant, gluing, identifying and zipping sides until the
    complex closes up into a disk.

``oracle_enumerate``
    walks candidate boundary paths along the diagram, computes winding
    numbers, and accepts a walk only if an explicit tiling with exactly
    that boundary can be reconstructed.

Both return ``RigidDisk`` records keyed by their boundary, so the two
result sets can be compared directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import count as _counter

from .diagram import KnotDiagram

__all__ = [
    "DiskError",
    "RigidDisk",
    "enumerate_rigid_disks",
    "oracle_enumerate",
    "disk_key",
    "dimension",
    "winding_class",
    "disk_sign",
    "disk_word",
    "verify_area_identity",
]


class DiskError(RuntimeError):
    """An internal invariant of a disk failed (never expected on valid input)."""


@dataclass(frozen=True)
class RigidDisk:
    crossing: int  # positive corner
    quadrant: int
    negatives: tuple  # ((crossing, quadrant), ...) in ccw order after the positive corner
    boundary: tuple  # sides (arc, dir), starting with the side leaving the positive corner
    word: tuple  # labels of the negative corners
    winding: int  # n(A)
    sign: int
    area: Fraction
    tiles: tuple  # (face, multiplicity) pairs, sorted

    @property
    def key(self):
        return disk_key(self)

    @property
    def t_exponent(self) -> int:
        return -self.winding

    def to_dict(self, diagram: KnotDiagram) -> dict:
        lab = lambda c: diagram.crossings[c].label  # noqa: E731
        return {
            "positive": [lab(self.crossing), self.quadrant],
            "negatives": [[lab(c), q] for c, q in self.negatives],
            "word": list(self.word),
            "n": self.winding,
            "sign": self.sign,
            "area": str(self.area),
            "boundary": [list(s) for s in self.boundary],
        }


def disk_key(disk: RigidDisk):
    return (disk.crossing, disk.quadrant, disk.boundary)


# ---------------------------------------------------------------------------
# Derived quantities shared by both searches


def disk_word(diagram: KnotDiagram, negatives) -> tuple:
    return tuple(diagram.crossings[c].label for c, _q in negatives)


def disk_sign(diagram: KnotDiagram, crossing: int, quadrant: int, negatives) -> int:
    eps = diagram.quadrant(crossing, quadrant).orientation_sign
    for c, q in negatives:
        eps *= diagram.quadrant(c, q).orientation_sign
    return eps


def winding_class(diagram: KnotDiagram, crossing: int, boundary, negatives) -> int:
    """Constant value of boundary + capping(a) - sum capping(b_i) over the arcs."""
    vec = list(diagram.crossings[crossing].capping.arcs)
    for k, o in boundary:
        vec[k] += o
    for c, _q in negatives:
        cap = diagram.crossings[c].capping.arcs
        for k in range(len(vec)):
            vec[k] -= cap[k]
    if len(set(vec)) != 1:
        raise DiskError(f"winding vector is not constant: {vec}")
    return vec[0]


def dimension(diagram: KnotDiagram, crossing: int, negatives, winding: int) -> int:
    g = diagram.crossings[crossing].grading
    g -= sum(diagram.crossings[c].grading for c, _q in negatives)
    return g + 2 * winding * diagram.rotation - 1


def verify_area_identity(diagram: KnotDiagram, disk: RigidDisk) -> bool:
    h = diagram.crossings[disk.crossing].height
    h -= sum((diagram.crossings[c].height for c, _q in disk.negatives), Fraction(0))
    return h == disk.area and disk.area > 0


def _finish(diagram, crossing, quadrant, boundary, negatives, tiles) -> RigidDisk:
    area = sum((diagram.faces[f].area * m for f, m in tiles.items()), Fraction(0))
    n = winding_class(diagram, crossing, boundary, negatives)
    disk = RigidDisk(
        crossing=crossing,
        quadrant=quadrant,
        negatives=tuple(negatives),
        boundary=tuple(boundary),
        word=disk_word(diagram, negatives),
        winding=n,
        sign=disk_sign(diagram, crossing, quadrant, negatives),
        area=area,
        tiles=tuple(sorted(tiles.items())),
    )
    if not verify_area_identity(diagram, disk):
        raise DiskError(f"area identity fails for disk at {diagram.crossings[crossing].label}")
    return disk


def _rev(side):
    return (side[0], -side[1])


# ---------------------------------------------------------------------------
# Primary search: tile growth


class _Dead(Exception):
    pass


class _Grower:
    """Depth-first tile growth for one positive quadrant.

    A state is a list of boundary cycles.  Cycle 0 is the outer boundary
    and starts with the side leaving the positive corner; further cycles
    are holes that must be filled.  Each cycle is a list of entries
    ``[uid, side, final]`` with a parallel list of fans: ``fans[i]`` counts
    the quadrants covered at the vertex after entry ``i``.
    """

    def __init__(self, diagram: KnotDiagram, crossing: int, quadrant: int):
        self.d = diagram
        self.a = crossing
        self.q = quadrant
        self.h = diagram.crossings[crossing].height
        self.uid = _counter()
        self.found: list[RigidDisk] = []

    def run(self):
        d = self.d
        face = d.faces[d.quadrant(self.a, self.q).face]
        if not face.bounded:
            return []
        j = face.corners.index((self.a, self.q))
        sides = face.sides[j:] + face.sides[:j]
        cyc = [[next(self.uid), s, False] for s in sides]
        cyc[0][2] = True
        cyc[-1][2] = True
        self.seed_uid = cyc[0][0]
        fans = [1] * len(cyc)
        self._grow([(cyc, fans)], Fraction(face.area), {face.index: 1})
        return self.found

    # geometry helpers ---------------------------------------------------
    def _vertex(self, left, right):
        c_in, r_in = self.d.side_end(left)
        c_out, r_out = self.d.side_start(right)
        if c_in != c_out:
            raise DiskError("boundary sides do not meet at a crossing")
        return c_in, r_in, r_out

    # search -------------------------------------------------------------
    def _grow(self, cycles, area, tiles):
        try:
            cycles = self._normalize(cycles)
            budget = self._check(cycles)
        except _Dead:
            return
        if area > budget:
            return
        pos = self._first_open(cycles)
        if pos is None:
            if len(cycles) == 1:
                self._record(cycles[0], tiles)
            return
        ci, i = pos
        cyc, fans = cycles[ci]
        side = cyc[i][1]
        # (a) the side is part of the disk boundary
        if ci == 0:
            new = [e[:] for e in cyc]
            new[i][2] = True
            self._grow([(new, list(fans))] + cycles[1:], area, tiles)
        # (b) a new tile across the side
        face = self.d.left_face(_rev(side))
        if face.bounded and area + face.area <= budget:
            glued = self._glue(cyc, fans, i, face)
            if glued is not None:
                t2 = dict(tiles)
                t2[face.index] = t2.get(face.index, 0) + 1
                self._grow(cycles[:ci] + [glued] + cycles[ci + 1:], area + face.area, t2)
        # (c) the tile across is already present: identify with a reverse side
        for j, e in enumerate(cyc):
            if j != i and not e[2] and e[1] == _rev(side):
                try:
                    parts = self._identify(cyc, fans, i, j, outer=(ci == 0))
                except _Dead:
                    continue
                self._grow(cycles[:ci] + parts + cycles[ci + 1:], area, tiles)

    def _first_open(self, cycles):
        for ci, (cyc, _f) in enumerate(cycles):
            for i, e in enumerate(cyc):
                if not e[2]:
                    return ci, i
        return None

    def _glue(self, cyc, fans, i, face):
        n = len(cyc)
        m = face.sides.index(_rev(cyc[i][1]))
        rest = face.sides[m + 1:] + face.sides[:m]
        new_entries = [[next(self.uid), s, False] for s in rest]
        if n == 1:
            if not rest:
                if fans[0] + 1 != 4:
                    return None
                return [], []
            return new_entries, [1] * (len(rest) - 1) + [fans[0] + 2]
        f = list(fans)
        if rest:
            f[i - 1] += 1
            new_fans = f[:i] + [1] * (len(rest) - 1) + [f[i] + 1] + f[i + 1:]
            if i == 0:
                new_fans[-1] = fans[-1] + 1
            return [e[:] for e in cyc[:i]] + new_entries + [e[:] for e in cyc[i + 1:]], new_fans
        merged = f[i - 1] + f[i] + 1
        entries = [e[:] for e in cyc[:i]] + [e[:] for e in cyc[i + 1:]]
        if i == 0:
            new_fans = f[1:]
            new_fans[-1] = merged
        else:
            new_fans = f[: i - 1] + [merged] + f[i + 1:]
        return entries, new_fans

    def _identify(self, cyc, fans, i, j, outer):
        n = len(cyc)
        c = [e[:] for e in cyc[i:] + cyc[:i]]
        f = list(fans[i:] + fans[:i])
        j = (j - i) % n
        x_sides, y_sides = c[1:j], c[j + 1:]
        out = []
        if x_sides:
            out.append((x_sides, f[1:j - 1] + [f[j - 1] + f[0]]))
        elif f[0] != 4:
            raise _Dead
        if y_sides:
            out.append((y_sides, f[j + 1:n - 1] + [f[n - 1] + f[j]]))
        elif f[j] != 4:
            raise _Dead
        if not outer:
            return out
        has_final = [any(e[2] for e in part[0]) for part in out]
        if sum(has_final) != 1:
            raise _Dead
        k = has_final.index(True)
        outer_part = out.pop(k)
        return [self._rotate_outer(*outer_part)] + out

    def _rotate_outer(self, entries, fans):
        k = next(idx for idx, e in enumerate(entries) if e[0] == self.seed_uid)
        return entries[k:] + entries[:k], fans[k:] + fans[:k]

    def _normalize(self, cycles):
        """Zip every vertex whose fan reached 4; drop emptied cycles."""
        changed = True
        cycles = list(cycles)
        while changed:
            changed = False
            for ci, (cyc, fans) in enumerate(cycles):
                if not cyc:
                    if ci == 0:
                        raise _Dead
                    cycles.pop(ci)
                    changed = True
                    break
                n = len(cyc)
                for i in range(n):
                    if fans[i] > 4:
                        raise _Dead
                    if fans[i] == 4:
                        left, right = cyc[i], cyc[(i + 1) % n]
                        if left[2] or right[2] or n == 1 or right[1] != _rev(left[1]):
                            raise _Dead
                        parts = self._identify(cyc, fans, i, (i + 1) % n, outer=(ci == 0))
                        cycles[ci:ci + 1] = parts
                        changed = True
                        break
                if changed:
                    break
        return cycles

    def _check(self, cycles):
        """Prune impossible states; return the remaining area budget."""
        d = self.d
        budget = self.h
        for ci, (cyc, fans) in enumerate(cycles):
            n = len(cyc)
            for i in range(n):
                left, right = cyc[i], cyc[(i + 1) % n]
                fan = fans[i]
                c, r_in, r_out = self._vertex(left[1], right[1])
                if (r_in - r_out - fan) % 4:
                    raise DiskError("fan count disagrees with local geometry")
                if not (left[2] or right[2]):
                    continue
                if fan >= 3:
                    raise _Dead
                if left[2] and right[2] and fan == 1:
                    if ci == 0 and i == n - 1:
                        continue  # the positive corner
                    quad = d.quadrant(c, r_out)
                    if quad.reeb_sign > 0:
                        raise _Dead
                    budget -= d.crossings[c].height
        return budget

    def _record(self, outer, tiles):
        cyc, fans = outer
        n = len(cyc)
        negatives = []
        for i in range(n - 1):
            if fans[i] == 1:
                c, _r_in, r_out = self._vertex(cyc[i][1], cyc[i + 1][1])
                negatives.append((c, r_out))
        boundary = [e[1] for e in cyc]
        self.found.append(_finish(self.d, self.a, self.q, boundary, negatives, tiles))


def enumerate_rigid_disks(diagram: KnotDiagram, crossing: int) -> list[RigidDisk]:
    """All rigid disks with positive corner at ``crossing`` (both positive quadrants)."""
    out = []
    for q in diagram.crossings[crossing].positive_quadrants:
        out.extend(_Grower(diagram, crossing, q).run())
    keys = [disk_key(x) for x in out]
    if len(set(keys)) != len(keys):
        raise DiskError("distinct tile complexes share a boundary")
    return sorted(out, key=_sort_key)


def _sort_key(disk: RigidDisk):
    return (disk.crossing, disk.quadrant, len(disk.word), disk.word, disk.boundary)


# ---------------------------------------------------------------------------
# Oracle: boundary walks plus explicit tiling reconstruction


def oracle_enumerate(diagram: KnotDiagram, crossing: int, area_budget: Fraction | None = None):
    d = diagram
    a = d.crossings[crossing]
    budget0 = a.height if area_budget is None else area_budget
    out = []
    for q in a.positive_quadrants:
        first = d.ray_side(crossing, q)
        end_ray = (q + 1) % 4
        if not d.left_face(first).bounded:
            continue
        counts = {first: 1}
        walks = []

        def lower_bound():
            total = Fraction(0)
            for f in d.faces:
                if f.bounded:
                    m = max(counts.get(s, 0) for s in f.sides)
                    total += m * f.area
            return total

        def dfs(path, negs, neg_h):
            side = path[-1]
            c, r_in = d.side_end(side)
            if c == crossing and r_in == end_ray:
                walks.append((list(path), list(negs)))
            options = [((r_in + 2) % 4, None), ((r_in - 1) % 4, (r_in - 1) % 4)]
            for ray, corner in options:
                h_next = neg_h
                if corner is not None:
                    quad = d.quadrant(c, corner)
                    if quad.reeb_sign > 0:
                        continue
                    h_next = neg_h + d.crossings[c].height
                nxt = d.ray_side(c, ray)
                if not d.left_face(nxt).bounded:
                    continue
                counts[nxt] = counts.get(nxt, 0) + 1
                if lower_bound() <= budget0 - h_next:
                    path.append(nxt)
                    if corner is not None:
                        negs.append((c, corner))
                    dfs(path, negs, h_next)
                    path.pop()
                    if corner is not None:
                        negs.pop()
                counts[nxt] -= 1

        dfs([first], [], Fraction(0))
        for path, negs in walks:
            disk = _accept_walk(d, crossing, q, path, negs)
            if disk is not None:
                out.append(disk)
    return sorted(out, key=_sort_key)


def _winding_numbers(d: KnotDiagram, path):
    cnt: dict = {}
    for s in path:
        cnt[s] = cnt.get(s, 0) + 1
    w = {d.outer_face: 0}
    stack = [d.outer_face]
    while stack:
        f = stack.pop()
        for s in d.faces[f].sides:
            g = d.face_of_side[_rev(s)]
            # w(left of s) - w(left of -s) = cnt[s] - cnt[-s]
            val = w[f] - cnt.get(s, 0) + cnt.get(_rev(s), 0)
            if g in w:
                if w[g] != val:
                    return None
            else:
                w[g] = val
                stack.append(g)
    return w, cnt


def _accept_walk(d: KnotDiagram, crossing, quadrant, path, negs):
    res = _winding_numbers(d, path)
    if res is None:
        return None
    w, cnt = res
    if any(v < 0 for v in w.values()) or w[d.outer_face] != 0:
        return None
    for s, m in cnt.items():
        if w[d.face_of_side[s]] < m:
            return None
    tiles = {f: m for f, m in w.items() if m > 0}
    if not _reconstruct(d, path, negs, tiles):
        return None
    return _finish(d, crossing, quadrant, path, negs, tiles)


def _reconstruct(d: KnotDiagram, path, negs, tiles) -> bool:
    """Search for an explicit gluing of face copies bounded by ``path``."""
    L = len(path)
    # expected fan at the vertex after step t: 1 at corners, 2 when passing straight
    fan_after = []
    for t in range(L):
        _c, r_in = d.side_end(path[t])
        _c2, r_out = d.side_start(path[(t + 1) % L])
        fan_after.append((r_in - r_out) % 4)
    if any(f not in (1, 2) for f in fan_after):
        return False

    slots = []  # (kind, arc, payload)
    for k in range(d.n_arcs):
        plus = [t for t in range(L) if path[t] == (k, 1)]
        minus = [t for t in range(L) if path[t] == (k, -1)]
        lf, rf = d.face_of_side[(k, 1)], d.face_of_side[(k, -1)]
        wl, wr = tiles.get(lf, 0), tiles.get(rf, 0)
        if wl - len(plus) != wr - len(minus) or wl < len(plus) or wr < len(minus):
            return False
        slots.append((k, lf, rf, plus, minus, wl - len(plus)))

    touched = {f: 0 for f in tiles}  # copies 0..touched-1 have been used somewhere
    bnd: dict = {}  # (face, copy, side) -> walk step
    pair: dict = {}  # (face, copy, side) -> (face, copy, side)

    def choices(face, used):
        top = touched[face]
        opts = [i for i in range(top) if i not in used]
        if top < tiles[face]:
            opts.append(top)
        return opts

    def use(face, i):
        old = touched[face]
        if i >= old:
            touched[face] = i + 1
        return old

    def assign(si, stage, idx, used_l, used_r):
        if si == len(slots):
            return _check_tiling(d, path, fan_after, tiles, bnd, pair)
        k, lf, rf, plus, minus, npair = slots[si]
        sp, sm = (k, 1), (k, -1)
        if stage == 0:
            if idx == len(plus):
                return assign(si, 1, 0, used_l, used_r)
            for i in choices(lf, used_l):
                old = use(lf, i)
                bnd[(lf, i, sp)] = plus[idx]
                if assign(si, 0, idx + 1, used_l | {i}, used_r):
                    return True
                del bnd[(lf, i, sp)]
                touched[lf] = old
            return False
        if stage == 1:
            if idx == len(minus):
                return assign(si, 2, 0, used_l, used_r)
            for i in choices(rf, used_r):
                old = use(rf, i)
                bnd[(rf, i, sm)] = minus[idx]
                if assign(si, 1, idx + 1, used_l, used_r | {i}):
                    return True
                del bnd[(rf, i, sm)]
                touched[rf] = old
            return False
        if idx == npair:
            return assign(si + 1, 0, 0, frozenset(), frozenset())
        # pair the lowest free left copy with some right copy
        li = next(i for i in range(tiles[lf]) if i not in used_l)
        old_l = use(lf, li)
        for ri in choices(rf, used_r):
            old_r = use(rf, ri)
            pair[(lf, li, sp)] = (rf, ri, sm)
            pair[(rf, ri, sm)] = (lf, li, sp)
            if assign(si, 2, idx + 1, used_l | {li}, used_r | {ri}):
                return True
            del pair[(lf, li, sp)]
            del pair[(rf, ri, sm)]
            touched[rf] = old_r
        touched[lf] = old_l
        return False

    return assign(0, 0, 0, frozenset(), frozenset())


def _check_tiling(d, path, fan_after, tiles, bnd, pair) -> bool:
    L = len(path)
    index_of = {f: {s: j for j, s in enumerate(d.faces[f].sides)} for f in tiles}

    def ccw(corner):
        f, i, j = corner
        sides = d.faces[f].sides
        s = sides[j - 1]
        key = (f, i, s)
        if key in bnd:
            return None, bnd[key]
        g, gi, gs = pair[key]
        return (g, gi, index_of[g][gs]), None

    def cw(corner):
        f, i, j = corner
        sides = d.faces[f].sides
        s = sides[j]
        key = (f, i, s)
        if key in bnd:
            return None, bnd[key]
        g, gi, gs = pair[key]
        m = index_of[g][gs]
        return (g, gi, (m + 1) % len(d.faces[g].sides)), None

    seen = set()
    n_links = 0
    boundary_links = 0
    for f in tiles:
        for i in range(tiles[f]):
            for j in range(len(d.faces[f].sides)):
                start = (f, i, j)
                if start in seen:
                    continue
                n_links += 1
                link = [start]
                seen.add(start)
                cur, t_in = ccw(start)
                while cur is not None and cur != start:
                    if cur in seen:
                        return False
                    seen.add(cur)
                    link.append(cur)
                    cur, t_in = ccw(cur)
                if cur == start:
                    if len(link) != 4:
                        return False
                    continue
                cur, t_out = cw(start)
                while cur is not None:
                    if cur in seen:
                        return False
                    seen.add(cur)
                    link.append(cur)
                    cur, t_out = cw(cur)
                boundary_links += 1
                if t_out != (t_in + 1) % L or len(link) != fan_after[t_in]:
                    return False
    if boundary_links != L:
        return False
    n_edges = L + len(pair) // 2
    n_faces = sum(tiles.values())
    if n_links - n_edges + n_faces != 1:
        return False
    # connectivity through glued edges
    parent = {(f, i): (f, i) for f in tiles for i in range(tiles[f])}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (f, i, _s), (g, gi, _gs) in pair.items():
        parent[find((f, i))] = find((g, gi))
    return len({find(x) for x in parent}) == 1
