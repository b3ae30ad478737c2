"""Radius-1 and radius-2 balls of the labelled complex of a difference
matrix, and the level-1 and level-2 local geometries at the center.

The ball is a simplicial complex with typed vertices: every triangle
(chamber) has one vertex of each type 0, 1, 2, and the link of a type-t
vertex is the incidence graph of the labelled plane of column t.  The
radius-1 ball is the cone over the center's plane; the radius-2 ball
completes the residue of every sphere-1 vertex to a full plane and
glues overlapping chambers by matching labels.

The level-2 geometry at the center O has points (p1, p2) where p1 is a
point of the residue of O and p2 a point of the residue of p1 away from
the line O; lines are the dual pairs.  Incidence is decided inside the
ball by a short gallery of chambers.
"""

import itertools
import re
from dataclasses import dataclass
from typing import Optional

from .diffsets import DifferenceMatrix
from .errors import CapExceeded, GluingError, InvalidInput
from .plane import LabelledPlane, all_collineations

BALL_R1_Q_CAP = 9
BALL_R2_Q_CAP = 3
H2_GROUP_Q_CAP = 2


@dataclass(frozen=True)
class BallComplex:
    q: int
    radius: int
    matrix: DifferenceMatrix
    center: int
    center_type: int
    names: tuple[tuple, ...]
    types: tuple[int, ...]
    dists: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    chambers: tuple[tuple[int, int, int, int], ...]

    @property
    def vertex_count(self) -> int:
        return len(self.types)

    def chamber_triples(self) -> frozenset:
        return frozenset((a, b, c) for a, b, c, _ in self.chambers)


@dataclass(frozen=True)
class BallReport:
    ok: bool
    failures: tuple[str, ...]
    residue_status: tuple[tuple[int, bool], ...]
    panel_counts: tuple[tuple[tuple[int, int], int], ...]


@dataclass(frozen=True)
class HjelmslevPlane:
    level: int
    points: tuple[tuple, ...]
    lines: tuple[tuple, ...]
    incidence: frozenset

    def lines_through(self, point):
        return tuple(l for l in self.lines if (point, l) in self.incidence)

    def points_on(self, line):
        return tuple(p for p in self.points if (p, line) in self.incidence)

    def neighboring(self, a, b) -> bool:
        # 1-neighboring: equal after forgetting the deepest coordinate
        return a[:-1] == b[:-1] if self.level == 2 else a == b

    def pi1(self, obj):
        return obj[:1]


@dataclass(frozen=True)
class H2GroupSummary:
    order: int
    base_image_order: int
    fiber_kernel_order: int
    elation_count: int
    neighbor_fixing_ok: bool
    free_action_ok: bool


def _column_planes(M: DifferenceMatrix):
    return tuple(
        LabelledPlane(c.q, c.modulus, c.entries) for c in M.columns)


def build_ball(M: DifferenceMatrix, radius: int) -> BallComplex:
    """Assemble the radius-1 or radius-2 ball around a type-0 vertex.

    Sphere-1 vertices are the points and lines of the center's plane;
    at radius 2 each of them gets the full plane of its own column,
    anchored so that the chambers through the center keep their labels,
    and the two completions meeting over a sphere-1 panel are glued by
    a union-find keyed on equal (panel, label) chambers.
    """
    q, m = M.q, M.columns[0].modulus
    if radius not in (1, 2):
        raise InvalidInput(f"radius must be 1 or 2, got {radius}")
    cap = BALL_R1_Q_CAP if radius == 1 else BALL_R2_Q_CAP
    if q > cap:
        raise CapExceeded(f"radius {radius} ball capped at q <= {cap}, got {q}")
    planes = _column_planes(M)
    v0 = M.columns[0].entries
    v1 = M.columns[1].entries
    v2 = M.columns[2].entries

    center = ("O",)
    raw = []  # (type0 name, type1 name, type2 name, label)
    for x in range(m):
        for j, d in enumerate(v0):
            raw.append((center, ("pt", (x + d) % m), ("ln", x), j))

    parent = {}

    def find(a):
        root = a
        while root in parent:
            root = parent[root]
        while a != root:
            parent[a], a = root, parent[a]
        return root

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            lo, hi = min(ra, rb), max(ra, rb)
            parent[hi] = lo

    if radius == 2:
        # labels of the line-0 points of the second column's plane, and
        # of the lines through point 0 of the third column's plane
        line0_label = {d: j for j, d in enumerate(v1)}
        through0_label = {(-d) % m: j for j, d in enumerate(v2)}

        for p in range(m):
            # complete the residue of point-vertex p to the column-1
            # plane: its line 0 is the center, its point v1[j] is the
            # label-j line of the center's plane through p
            def pt_point_name(u):
                j = line0_label.get(u)
                if j is not None:
                    return ("ln", (p - v0[j]) % m)
                return ("ptres", p, "P", u)

            for w in range(m):
                wname = center if w == 0 else ("ptres", p, "L", w)
                for k, d in enumerate(v1):
                    raw.append((wname, ("pt", p), pt_point_name((w + d) % m), k))

        for l in range(m):
            # complete the residue of line-vertex l to the column-2
            # plane: its point 0 is the center, its label-j line through
            # that point is the label-j point of the center's plane on l
            def ln_line_name(w):
                j = through0_label.get(w)
                if j is not None:
                    return ("pt", (l + v0[j]) % m)
                return ("lnres", l, "L", w)

            for w in range(m):
                lname = ln_line_name(w)
                for k, d in enumerate(v2):
                    z = (w + d) % m
                    zname = center if z == 0 else ("lnres", l, "P", z)
                    raw.append((zname, lname, ("ln", l), k))

        # glue: on the panel of the label-j flag (l, p), the label-k
        # chamber appears once from each side with a fresh type-0 vertex
        for l in range(m):
            for j in range(q + 1):
                p = (l + v0[j]) % m
                for k in range(q + 1):
                    if k == j:
                        continue
                    union(("ptres", p, "L", (v1[j] - v1[k]) % m),
                          ("lnres", l, "P", (v2[k] - v2[j]) % m))

    resolved = {}
    for n0, n1, n2, label in raw:
        key = (find(n0), find(n1), find(n2))
        old = resolved.get(key)
        if old is not None and old != label:
            raise GluingError(
                f"panel {key[1]}|{key[2]} forces labels {old} and {label} "
                f"on one chamber")
        resolved[key] = label

    def name_dist(name):
        if name == center:
            return 0
        return 1 if name[0] in ("pt", "ln") else 2

    def name_type(name):
        if name == center:
            return 0
        if name[0] == "pt":
            return 1
        if name[0] == "ln":
            return 2
        # merged sphere-2 classes keep the type-0 role; unmerged names
        # are points of a point-residue (type 2) or lines of a
        # line-residue (type 1)
        if name[0] == "lnres":
            return 0 if name[2] == "P" else 1
        return 0 if name[2] == "L" else 2

    roots = sorted({v for key in resolved for v in key},
                   key=lambda n: (name_dist(n), name_type(n), n))
    vid = {n: i for i, n in enumerate(roots)}
    chambers = tuple(sorted(
        (vid[a], vid[b], vid[c], label)
        for (a, b, c), label in resolved.items()))
    edges = tuple(sorted({
        pair for a, b, c, _ in chambers
        for pair in ((a, b) if a < b else (b, a),
                     (a, c) if a < c else (c, a),
                     (b, c) if b < c else (c, b))}))
    return BallComplex(
        q=q, radius=radius, matrix=M, center=vid[center], center_type=0,
        names=tuple(roots),
        types=tuple(name_type(n) for n in roots),
        dists=tuple(name_dist(n) for n in roots),
        edges=edges, chambers=chambers)


def _chambers_by_vertex(ball: BallComplex):
    by_vertex = {}
    for ch in ball.chambers:
        for v in ch[:3]:
            by_vertex.setdefault(v, []).append(ch)
    return by_vertex


def _residue_flags(ball: BallComplex, x: int):
    """Flags (line vertex, point vertex, label) of the plane at x: the
    type t+1 neighbors are its points, the type t+2 neighbors its lines."""
    t = ball.types[x]
    pt_slot = (t + 1) % 3
    ln_slot = (t + 2) % 3
    flags = []
    for ch in ball.chambers:
        if ch[t] == x:
            flags.append((ch[ln_slot], ch[pt_slot], ch[3]))
    return flags


def _labelled_plane_isomorphic(flags, plane: LabelledPlane) -> bool:
    """Whether the flag list is a labelled plane isomorphic to plane,
    by anchoring one line and propagating the forced label-matching."""
    m = plane.modulus
    lines = sorted({f[0] for f in flags})
    points = sorted({f[1] for f in flags})
    if len(lines) != m or len(points) != m:
        return False
    if len(flags) != len(set((f[0], f[1]) for f in flags)):
        return False
    line_flags = {l: [] for l in lines}
    point_flags = {p: [] for p in points}
    for l, p, k in flags:
        line_flags[l].append((p, k))
        point_flags[p].append((l, k))
    if any(sorted(k for _, k in fl) != list(range(plane.q + 1))
           for fl in line_flags.values()):
        return False
    if any(sorted(k for _, k in fl) != list(range(plane.q + 1))
           for fl in point_flags.values()):
        return False

    anchor = lines[0]
    for y0 in range(m):
        line_img = {anchor: y0}
        point_img = {}
        pending_lines = [anchor]
        pending_points = []
        seen_lines = {anchor}
        seen_points = set()
        ok = True
        while ok and (pending_lines or pending_points):
            while ok and pending_lines:
                l = pending_lines.pop()
                y = line_img[l]
                for p, k in line_flags[l]:
                    target = (y + plane.entries[k]) % m
                    prev = point_img.setdefault(p, target)
                    if prev != target:
                        ok = False
                        break
                    if p not in seen_points:
                        seen_points.add(p)
                        pending_points.append(p)
            while ok and pending_points:
                p = pending_points.pop()
                pp = point_img[p]
                for l, k in point_flags[p]:
                    target = (pp - plane.entries[k]) % m
                    prev = line_img.setdefault(l, target)
                    if prev != target:
                        ok = False
                        break
                    if l not in seen_lines:
                        seen_lines.add(l)
                        pending_lines.append(l)
        if not ok:
            continue
        if len(set(line_img.values())) != m or len(set(point_img.values())) != m:
            continue
        if len(line_img) == m and len(point_img) == m:
            return True
    return False


def verify_ball(ball: BallComplex) -> BallReport:
    """Check every structural invariant and collect failures instead of
    raising: chamber typing, panel membership, interior panel thickness
    with per-panel label bijections, and labelled residue isomorphism
    at every interior vertex."""
    failures = []
    q = ball.q
    for ch in ball.chambers:
        a, b, c, label = ch
        if (ball.types[a], ball.types[b], ball.types[c]) != (0, 1, 2):
            failures.append(f"chamber {ch} lacks one vertex of each type")
        if not 0 <= label <= q:
            failures.append(f"chamber {ch} label out of range")

    panel_labels = {}
    for a, b, c, label in ball.chambers:
        for pair in ((a, b) if a < b else (b, a),
                     (a, c) if a < c else (c, a),
                     (b, c) if b < c else (c, b)):
            panel_labels.setdefault(pair, []).append(label)
    for e in ball.edges:
        if e not in panel_labels:
            failures.append(f"panel {e} lies in no chamber")
    panel_counts = tuple(sorted(
        (e, len(panel_labels.get(e, ())))
        for e in ball.edges))
    for e in ball.edges:
        if min(ball.dists[e[0]], ball.dists[e[1]]) >= ball.radius:
            continue
        labels = sorted(panel_labels.get(e, ()))
        if labels != list(range(q + 1)):
            failures.append(
                f"interior panel {e} carries labels {labels} "
                f"instead of one chamber per label")

    planes = _column_planes(ball.matrix)
    residue_status = []
    for x in range(ball.vertex_count):
        if ball.dists[x] >= ball.radius:
            continue
        flags = _residue_flags(ball, x)
        good = _labelled_plane_isomorphic(flags, planes[ball.types[x]])
        residue_status.append((x, good))
        if not good:
            failures.append(
                f"residue of vertex {x} is not the labelled plane of "
                f"column {ball.types[x]}")

    return BallReport(
        ok=not failures, failures=tuple(failures),
        residue_status=tuple(residue_status), panel_counts=panel_counts)


def extract_hjelmslev(ball: BallComplex, n: int) -> HjelmslevPlane:
    """Level-1 geometry: the residue of the center.  Level-2: points are
    (p1, p2) with p2 a residue-of-p1 point off the line of the center,
    lines dual, incidence by the existence of the connecting chambers."""
    if n not in (1, 2):
        raise InvalidInput(f"level must be 1 or 2, got {n}")
    if ball.radius < n:
        raise InvalidInput(f"radius {ball.radius} ball has no level {n}")
    O = ball.center
    triples = ball.chamber_triples()
    sphere1_pts = sorted(
        v for v in range(ball.vertex_count)
        if ball.dists[v] == 1 and ball.types[v] == 1)
    sphere1_lns = sorted(
        v for v in range(ball.vertex_count)
        if ball.dists[v] == 1 and ball.types[v] == 2)
    if n == 1:
        points = tuple((p,) for p in sphere1_pts)
        lines = tuple((l,) for l in sphere1_lns)
        incidence = frozenset(
            ((p,), (l,)) for p in sphere1_pts for l in sphere1_lns
            if (O, p, l) in triples)
        return HjelmslevPlane(1, points, lines, incidence)

    adj = {}
    for a, b, c in triples:
        for u, v in ((a, b), (a, c), (b, c)):
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)

    points = []
    for p1 in sphere1_pts:
        for p2 in sorted(adj[p1]):
            if ball.types[p2] == 2 and ball.dists[p2] == 2:
                points.append((p1, p2))
    lines = []
    for l1 in sphere1_lns:
        for l2 in sorted(adj[l1]):
            if ball.types[l2] == 1 and ball.dists[l2] == 2:
                lines.append((l1, l2))

    # in the residue of p1, type-0 neighbors are lines; any two points
    # of that plane span a unique such line
    join = {}
    for p1 in sphere1_pts:
        for z in adj[p1]:
            if ball.types[z] != 0 or z == O:
                continue
            res_pts = [u for u in adj[z] if (z, p1, u) in triples]
            for u, v in itertools.combinations(sorted(res_pts), 2):
                assert (p1, u, v) not in join
                join[(p1, u, v)] = z

    incidence = set()
    for p1, p2 in points:
        for l1, l2 in lines:
            if (O, p1, l1) not in triples:
                continue
            key = (p1, p2, l1) if p2 < l1 else (p1, l1, p2)
            z = join.get(key)
            if z is not None and (z, l2, l1) in triples:
                incidence.add(((p1, p2), (l1, l2)))
    return HjelmslevPlane(2, tuple(points), tuple(lines),
                          frozenset(incidence))


def _h2_tables(H: HjelmslevPlane):
    pt_index = {p: i for i, p in enumerate(H.points)}
    ln_index = {l: i for i, l in enumerate(H.lines)}
    pt_lines = [frozenset(ln_index[l] for l in H.lines_through(p))
                for p in H.points]
    ln_points = [frozenset(pt_index[p] for p in H.points_on(l))
                 for l in H.lines]
    pt_fibers = {}
    for i, p in enumerate(H.points):
        pt_fibers.setdefault(p[0], []).append(i)
    ln_fibers = {}
    for i, l in enumerate(H.lines):
        ln_fibers.setdefault(l[0], []).append(i)
    return pt_index, ln_index, pt_lines, ln_points, pt_fibers, ln_fibers


def _h2_singer_maps(ball: BallComplex, H: HjelmslevPlane):
    """Label-preserving collineations: the center's cyclic shift forces
    the whole map through the vertex names, one map per shift."""
    m = ball.matrix.columns[0].modulus
    name_id = {n: i for i, n in enumerate(ball.names)}
    pt_index, ln_index, pt_lines, ln_points, _, _ = _h2_tables(H)

    def shift_name(n, t):
        if n == ("O",):
            return n
        if n[0] in ("pt", "ln"):
            return (n[0], (n[1] + t) % m)
        return (n[0], (n[1] + t) % m, n[2], n[3])

    maps = []
    for t in range(m):
        vmap = {i: name_id[shift_name(n, t)]
                for i, n in enumerate(ball.names)}
        pmap = tuple(pt_index[(vmap[p[0]], vmap[p[1]])] for p in H.points)
        lmap = tuple(ln_index[(vmap[l[0]], vmap[l[1]])] for l in H.lines)
        for i in range(len(H.points)):
            assert pt_lines[pmap[i]] == frozenset(lmap[j] for j in pt_lines[i])
        maps.append((pmap, lmap))
    return maps


def _h2_lifts(H: HjelmslevPlane, base_pt, base_ln, tables):
    """All collineations of the level-2 plane inducing the given
    residue collineation on the fibers, by fiber-wise backtracking."""
    pt_index, ln_index, pt_lines, ln_points, pt_fibers, ln_fibers = tables
    npts, nlns = len(H.points), len(H.lines)

    # unique common line of two non-neighboring points
    common = {}
    for li, pts in enumerate(ln_points):
        for a, b in itertools.combinations(sorted(pts), 2):
            if H.points[a][0] != H.points[b][0]:
                assert (a, b) not in common
                common[(a, b)] = li

    fiber_keys = sorted(pt_fibers)
    pmap = [-1] * npts
    lmap = [-1] * nlns
    lines_of_fiber_pair = {}
    for li in range(nlns):
        fibs = frozenset(H.points[p][0] for p in ln_points[li])
        lines_of_fiber_pair.setdefault(fibs, []).append(li)

    out = []

    def lines_touching(fibers_done):
        done = set(fibers_done)
        return [li for li in range(nlns)
                if sum(1 for p in ln_points[li] if H.points[p][0] in done) >= 2]

    def extend(fi):
        if fi == len(fiber_keys):
            final_p = tuple(pmap)
            final_l = tuple(lmap)
            if -1 in final_l:
                return
            for i in range(npts):
                if pt_lines[final_p[i]] != frozenset(
                        final_l[j] for j in pt_lines[i]):
                    return
            out.append((final_p, final_l))
            return
        src = pt_fibers[fiber_keys[fi]]
        dst = pt_fibers[base_pt[fiber_keys[fi]]]
        done_fibers = fiber_keys[:fi + 1]
        affected = lines_touching(done_fibers)
        for images in itertools.permutations(dst):
            for s, d in zip(src, images):
                pmap[s] = d
            touched = []
            ok = True
            for li in affected:
                mapped = [pmap[p] for p in ln_points[li] if pmap[p] != -1]
                if len(mapped) < 2:
                    continue
                if lmap[li] == -1:
                    # forcing needs two images in distinct fibers; two
                    # neighboring points lie on several common lines
                    pair = next(
                        ((a, b) for a, b in itertools.combinations(
                            sorted(set(mapped)), 2)
                         if H.points[a][0] != H.points[b][0]), None)
                    if pair is None:
                        continue
                    target = common.get(pair)
                    if target is None:
                        ok = False
                        break
                    lmap[li] = target
                    touched.append(li)
                if any(mp not in ln_points[lmap[li]] for mp in mapped):
                    ok = False
                    break
            if ok:
                extend(fi + 1)
            for li in touched:
                lmap[li] = -1
        for s in src:
            pmap[s] = -1

    extend(0)
    return out


def h2_collineations(ball: BallComplex, labels_only=False):
    """Collineations of the level-2 plane at the center that respect the
    projection fibers, enumerated in deterministic order."""
    if ball.q > H2_GROUP_Q_CAP:
        raise CapExceeded(
            f"level-2 group search capped at q <= {H2_GROUP_Q_CAP}, "
            f"got {ball.q}")
    H = extract_hjelmslev(ball, 2)
    if labels_only:
        return sorted(_h2_singer_maps(ball, H))
    tables = _h2_tables(H)
    plane = _column_planes(ball.matrix)[ball.center_type]
    maps = []
    for c in all_collineations(plane):
        # residue points sit at vertex id 1 + plane point, residue lines
        # at 1 + modulus + plane line
        base_pt = {1 + p: 1 + c.point_map[p] for p in range(plane.modulus)}
        base_ln = {1 + plane.modulus + l: 1 + plane.modulus + c.line_map[l]
                   for l in range(plane.modulus)}
        maps.extend(_h2_lifts(H, base_pt, base_ln, tables))
    return sorted(maps)


def h2_collineations_fixing_center(ball: BallComplex,
                                   labels_only=False) -> H2GroupSummary:
    """Group summary of the level-2 collineations, with the two elation
    laws asserted for every elation found: it fixes the full fiber of
    its center and axis, and moves every point of an auxiliary line
    through the center that is not near the axis."""
    maps = h2_collineations(ball, labels_only)
    H = extract_hjelmslev(ball, 2)
    h1 = extract_hjelmslev(ball, 1)
    h1_flags = {(p[0], l[0]) for p, l in h1.incidence}
    _, _, pt_lines, ln_points, pt_fibers, ln_fibers = _h2_tables(H)
    npts, nlns = len(H.points), len(H.lines)
    identity = (tuple(range(npts)), tuple(range(nlns)))
    assert identity in maps

    map_set = set(maps)
    for pmap, lmap in maps:
        inv_p = tuple(sorted(range(npts), key=lambda i: pmap[i]))
        inv_l = tuple(sorted(range(nlns), key=lambda i: lmap[i]))
        assert (inv_p, inv_l) in map_set

    base_images = {tuple(H.points[pmap[pt_fibers[f][0]]][0]
                         for f in sorted(pt_fibers))
                   for pmap, _ in maps}
    kernel = sum(
        1 for pmap, _ in maps
        if all(H.points[pmap[i]][0] == H.points[i][0] for i in range(npts)))

    elations = 0
    neighbor_ok = True
    free_ok = True
    for pmap, lmap in maps:
        if (pmap, lmap) == identity:
            continue
        fixed_pts = {i for i in range(npts) if pmap[i] == i}
        fixed_lns = {j for j in range(nlns) if lmap[j] == j}
        axes = [j for j in range(nlns) if ln_points[j] <= fixed_pts]
        centers = [i for i in range(npts) if pt_lines[i] <= fixed_lns]
        flag = next(((i, j) for i in centers for j in axes
                     if j in pt_lines[i]), None)
        if flag is None:
            continue
        elations += 1
        ci, ax = flag
        cf = H.points[ci][0]
        if not all(pmap[i] == i for i in pt_fibers[cf]):
            neighbor_ok = False
        af = H.lines[ax][0]
        if not all(lmap[j] == j for j in ln_fibers[af]):
            neighbor_ok = False
        # free action off the axis: a point is near the axis when its
        # fiber meets the axis's level-1 line, and those may be fixed
        for m_line in pt_lines[ci]:
            for p in ln_points[m_line]:
                if (H.points[p][0], H.lines[ax][0]) in h1_flags:
                    continue
                if pmap[p] == p:
                    free_ok = False

    return H2GroupSummary(
        order=len(maps), base_image_order=len(base_images),
        fiber_kernel_order=kernel, elation_count=elations,
        neighbor_fixing_ok=neighbor_ok, free_action_ok=free_ok)


def complex_to_text(ball: BallComplex) -> str:
    lines = []
    for v in range(ball.vertex_count):
        lines.append(f"vertex {v} type={ball.types[v]} dist={ball.dists[v]}")
    for a, b in ball.edges:
        lines.append(f"edge {a} {b}")
    for a, b, c, label in ball.chambers:
        lines.append(f"chamber {a} {b} {c} label={label}")
    return "\n".join(lines) + "\n"


_VERTEX_RE = re.compile(r"vertex (\d+) type=(\d+) dist=(\d+)$")
_EDGE_RE = re.compile(r"edge (\d+) (\d+)$")
_CHAMBER_RE = re.compile(r"chamber (\d+) (\d+) (\d+) label=(\d+)$")


def complex_from_text(text: str) -> BallComplex:
    """Inverse of complex_to_text up to what the export carries: the
    source matrix and the vertex names are not exported and come back as
    None."""
    types, dists, edges, chambers = [], [], [], []
    for i, line in enumerate(text.splitlines(), start=1):
        if m := _VERTEX_RE.match(line):
            v, t, d = map(int, m.groups())
            if v != len(types):
                raise InvalidInput(f"line {i}: vertex id {v} out of order")
            types.append(t)
            dists.append(d)
        elif m := _EDGE_RE.match(line):
            edges.append((int(m.group(1)), int(m.group(2))))
        elif m := _CHAMBER_RE.match(line):
            chambers.append(tuple(map(int, m.groups())))
        else:
            raise InvalidInput(f"line {i}: unrecognized row {line!r}")
    if not chambers:
        raise InvalidInput("complex export has no chambers")
    n = len(types)
    for i, (a, b) in enumerate(edges, start=len(types) + 1):
        if not (0 <= a < n and 0 <= b < n):
            raise InvalidInput(f"line {i}: edge endpoint out of range")
    centers = [v for v in range(n) if dists[v] == 0]
    if len(centers) != 1:
        raise InvalidInput("complex export must have exactly one center")
    return BallComplex(
        q=max(c[3] for c in chambers), radius=max(dists),
        matrix=None, center=centers[0], center_type=types[centers[0]],
        names=None, types=tuple(types), dists=tuple(dists),
        edges=tuple(edges), chambers=tuple(chambers))
