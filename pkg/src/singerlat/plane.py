"""Labelled projective planes over Z/mZ and their collineations.

Points and lines are both residues mod m = q^2 + q + 1.  Line x carries
the points x + d_j for the entries (d_0, ..., d_q) of a difference
vector, and the flag (line x, point x + d_j) has label j.  Labels are
0-based positions into the entry tuple; dually, the lines through a
point p are p - d_j, again with label j.

The collineation search assigns point images by backtracking and forces
line images through incidence closure: once two points of a line have
images, the image line is the join of the image points, and two mapped
lines force the image of their meet.
"""

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .diffsets import DifferenceVector, canonical_difference_set, is_difference_set
from .errors import CapExceeded, InvalidInput
from .permgrp import PermGroup
from .permgrp import compose as perm_compose
from .permgrp import inverse as perm_inverse
from .permgrp import validate_perm

# backtracking searches stay exact but slow down fast with q; the full
# group without a fixed point is only enumerated for tiny orders
SEARCH_Q_CAP = 5
FULL_GROUP_Q_CAP = 3


@dataclass(frozen=True)
class LabelledPlane:
    """Incidence structure of a difference vector; not necessarily a
    projective plane unless the vector is perfect (see
    verify_plane_axioms)."""

    q: int
    modulus: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.q < 2:
            raise InvalidInput(f"order must be at least 2, got {self.q}")
        if self.modulus != self.q * self.q + self.q + 1:
            raise InvalidInput("modulus is not q^2+q+1")
        object.__setattr__(self, "entries", tuple(self.entries))
        if len(self.entries) != self.q + 1:
            raise InvalidInput(f"expected {self.q + 1} entries")
        for d in self.entries:
            if not isinstance(d, int) or not 0 <= d < self.modulus:
                raise InvalidInput(f"entry {d!r} is not a residue mod {self.modulus}")
        if len(set(self.entries)) != len(self.entries):
            raise InvalidInput("repeated entries")

    def line_points(self, x):
        """Points on line x, in label order."""
        return tuple((x + d) % self.modulus for d in self.entries)

    def point_lines(self, p):
        """Lines through point p, in label order."""
        return tuple((p - d) % self.modulus for d in self.entries)

    def incident(self, line, point):
        return (point - line) % self.modulus in self._entry_set

    def flag_label(self, line, point):
        d = (point - line) % self.modulus
        if d not in self._entry_set:
            raise InvalidInput(f"point {point} is not on line {line}")
        return self.entries.index(d)

    @cached_property
    def _entry_set(self):
        return frozenset(self.entries)

    def vector(self):
        return DifferenceVector(self.q, self.modulus, self.entries)


def plane_from_vector(v):
    return LabelledPlane(v.q, v.modulus, v.entries)


def incidence_plane(q, entries):
    """The labelled structure of an arbitrary entry tuple, difference
    property not required."""
    return LabelledPlane(q, q * q + q + 1, tuple(entries))


@lru_cache(maxsize=None)
def canonical_plane(q):
    D = canonical_difference_set(q)
    return LabelledPlane(q, D.modulus, D.elements)


def verify_plane_axioms(plane):
    """True iff two distinct points lie on exactly one common line, two
    distinct lines meet in exactly one point, and some four points have
    no three of them collinear."""
    m = plane.modulus
    point_lines = [frozenset(plane.point_lines(p)) for p in range(m)]
    line_points = [frozenset(plane.line_points(x)) for x in range(m)]
    for a in range(m):
        for b in range(a + 1, m):
            if len(point_lines[a] & point_lines[b]) != 1:
                return False
            if len(line_points[a] & line_points[b]) != 1:
                return False

    def collinear(a, b, c):
        return bool(point_lines[a] & point_lines[b] & point_lines[c])

    for a in range(m):
        for b in range(a + 1, m):
            for c in range(b + 1, m):
                if collinear(a, b, c):
                    continue
                for d in range(c + 1, m):
                    if not (collinear(a, b, d) or collinear(a, c, d)
                            or collinear(b, c, d)):
                        return True
    return False


# -- incidence-preserving maps --


@dataclass(frozen=True)
class Collineation:
    plane: LabelledPlane
    point_map: tuple[int, ...]
    line_map: tuple[int, ...]

    def __post_init__(self):
        m = self.plane.modulus
        validate_perm(self.point_map, m)
        validate_perm(self.line_map, m)
        pm = self.point_map
        for x in range(m):
            y = self.line_map[x]
            for p in self.plane.line_points(x):
                if not self.plane.incident(y, pm[p]):
                    raise InvalidInput(
                        f"image of flag ({x}, {p}) is not a flag")

    @cached_property
    def preserves_labels(self):
        m = self.plane.modulus
        return all(
            self.point_map[(x + d) % m] == (self.line_map[x] + d) % m
            for x in range(m) for d in self.plane.entries)

    @property
    def is_identity(self):
        m = self.plane.modulus
        return self.point_map == tuple(range(m)) and self.line_map == tuple(range(m))

    def compose(self, other):
        """self after other."""
        if self.plane != other.plane:
            raise InvalidInput("collineations of different planes")
        return Collineation(self.plane,
                            perm_compose(self.point_map, other.point_map),
                            perm_compose(self.line_map, other.line_map))

    def inverse(self):
        return Collineation(self.plane,
                            perm_inverse(self.point_map),
                            perm_inverse(self.line_map))


@dataclass(frozen=True)
class Duality:
    """Point-to-line and line-to-point bijections preserving incidence.

    Kept apart from Collineation: the two index sets coincide as
    residues but play different roles."""

    plane: LabelledPlane
    point_to_line: tuple[int, ...]
    line_to_point: tuple[int, ...]

    def __post_init__(self):
        m = self.plane.modulus
        validate_perm(self.point_to_line, m)
        validate_perm(self.line_to_point, m)
        for x in range(m):
            for p in self.plane.line_points(x):
                if not self.plane.incident(self.point_to_line[p],
                                           self.line_to_point[x]):
                    raise InvalidInput(
                        f"dual image of flag ({x}, {p}) is not a flag")

    @cached_property
    def preserves_labels(self):
        pl = self.plane
        return all(
            pl.flag_label(self.point_to_line[p], self.line_to_point[x])
            == pl.flag_label(x, p)
            for x in range(pl.modulus) for p in pl.line_points(x))


def identity_collineation(plane):
    ident = tuple(range(plane.modulus))
    return Collineation(plane, ident, ident)


def singer_shift(plane, t=1):
    """x -> x + t on points and lines; always label-preserving."""
    m = plane.modulus
    shift = tuple((x + t) % m for x in range(m))
    return Collineation(plane, shift, shift)


def dual_map(plane):
    """The duality p -> line -p, x -> point -x; label-preserving."""
    m = plane.modulus
    neg = tuple((-x) % m for x in range(m))
    return Duality(plane, neg, neg)


@dataclass(frozen=True)
class Elation:
    collineation: Collineation
    center: int
    axis: int

    def __post_init__(self):
        c = self.collineation
        plane = c.plane
        if not plane.incident(self.axis, self.center):
            raise InvalidInput("elation center must lie on its axis")
        for p in plane.line_points(self.axis):
            if c.point_map[p] != p:
                raise InvalidInput("axis is not fixed pointwise")
        for y in plane.point_lines(self.center):
            if c.line_map[y] != y:
                raise InvalidInput("center pencil is not fixed linewise")


# -- collineation search --


@lru_cache(maxsize=None)
def _plane_tables(plane):
    """Incidence tables for the backtracking engine.  Requires the
    difference property, which makes joins and meets unique."""
    if not is_difference_set(plane.entries, plane.q):
        raise InvalidInput("search requires a projective plane; "
                           "entries are not a perfect difference set")
    m = plane.modulus
    d = plane.entries
    rep = {}
    for i, di in enumerate(d):
        for j, dj in enumerate(d):
            if i != j:
                rep[(di - dj) % m] = (i, j)
    line_pts = [plane.line_points(x) for x in range(m)]
    pt_lines = [plane.point_lines(p) for p in range(m)]
    join = [[0] * m for _ in range(m)]
    meet = [[0] * m for _ in range(m)]
    for a in range(m):
        for b in range(m):
            if a == b:
                continue
            i, j = rep[(a - b) % m]
            join[a][b] = (a - d[i]) % m
            meet[a][b] = (a + d[j]) % m
    return line_pts, pt_lines, join, meet


class _Search:
    """Backtracking over point images with incidence-closure propagation.

    Line images are forced as soon as two of the line's points are
    mapped; meets of mapped lines force point images back.  With
    labels_only, a mapped point or line forces its whole labelled
    pencil, pinning the search almost immediately.
    """

    def __init__(self, plane, labels_only=False):
        if plane.q > SEARCH_Q_CAP:
            raise CapExceeded(
                f"collineation search capped at q <= {SEARCH_Q_CAP}, got {plane.q}")
        self.plane = plane
        self.labels_only = labels_only
        self.m = plane.modulus
        self.entries = plane.entries
        self.entry_set = set(plane.entries)
        self.line_pts, self.pt_lines, self.join, self.meet = _plane_tables(plane)
        m = self.m
        self.pimg = [-1] * m
        self.limg = [-1] * m
        self.psrc = [-1] * m
        self.lsrc = [-1] * m
        self.mapped_lines = []
        self.trail = []
        self.n_points = 0
        self.results = []

    # each trail record undoes one assignment
    def _undo_to(self, mark):
        while len(self.trail) > mark:
            kind, a, b = self.trail.pop()
            if kind == 0:
                self.pimg[a] = -1
                self.psrc[b] = -1
                self.n_points -= 1
            else:
                self.limg[a] = -1
                self.lsrc[b] = -1
                self.mapped_lines.pop()

    def _set_point(self, p, v, queue):
        cur = self.pimg[p]
        if cur != -1:
            return cur == v
        if self.psrc[v] != -1:
            return False
        self.pimg[p] = v
        self.psrc[v] = p
        self.n_points += 1
        self.trail.append((0, p, v))
        queue.append((0, p))
        return True

    def _set_line(self, y, w, queue):
        cur = self.limg[y]
        if cur != -1:
            return cur == w
        if self.lsrc[w] != -1:
            return False
        self.limg[y] = w
        self.lsrc[w] = y
        self.mapped_lines.append(y)
        self.trail.append((1, y, w))
        queue.append((1, y))
        return True

    def _propagate(self, queue):
        m = self.m
        while queue:
            kind, a = queue.pop()
            if kind == 0:
                p, v = a, self.pimg[a]
                for idx, y in enumerate(self.pt_lines[p]):
                    w = self.limg[y]
                    if w != -1:
                        if (v - w) % m not in self.entry_set:
                            return False
                    else:
                        other = -1
                        for p2 in self.line_pts[y]:
                            if p2 != p and self.pimg[p2] != -1:
                                other = p2
                                break
                        if other != -1:
                            forced = self.join[v][self.pimg[other]]
                            if not self._set_line(y, forced, queue):
                                return False
                    if self.labels_only:
                        forced = (v - self.entries[idx]) % m
                        if not self._set_line(y, forced, queue):
                            return False
            else:
                y, w = a, self.limg[a]
                for p in self.line_pts[y]:
                    v = self.pimg[p]
                    if v != -1 and (v - w) % m not in self.entry_set:
                        return False
                for y2 in self.mapped_lines:
                    if y2 == y:
                        continue
                    x = self.meet[y][y2]
                    xi = self.meet[w][self.limg[y2]]
                    if not self._set_point(x, xi, queue):
                        return False
                if self.labels_only:
                    for idx, p in enumerate(self.line_pts[y]):
                        forced = (w + self.entries[idx]) % m
                        if not self._set_point(p, forced, queue):
                            return False
        return True

    def seed(self, point_seed, line_seed):
        """Returns False when the seed is already contradictory."""
        queue = []
        for p, v in sorted(point_seed.items()):
            if not (0 <= p < self.m and 0 <= v < self.m):
                raise InvalidInput(f"seed point pair ({p}, {v}) out of range")
            if not self._set_point(p, v, queue):
                return False
        for y, w in sorted(line_seed.items()):
            if not (0 <= y < self.m and 0 <= w < self.m):
                raise InvalidInput(f"seed line pair ({y}, {w}) out of range")
            if not self._set_line(y, w, queue):
                return False
        return self._propagate(queue)

    def _choose(self):
        best_p, best_cands = -1, None
        for p in range(self.m):
            if self.pimg[p] != -1:
                continue
            cands = None
            for y in self.pt_lines[p]:
                w = self.limg[y]
                if w != -1:
                    cands = [v for v in self.line_pts[w] if self.psrc[v] == -1]
                    break
            if cands is None:
                if best_cands is None and best_p == -1:
                    best_p = p
                continue
            if best_cands is None or len(cands) < len(best_cands):
                best_p, best_cands = p, cands
                if len(cands) <= 1:
                    break
        if best_cands is None:
            best_cands = [v for v in range(self.m) if self.psrc[v] == -1]
        return best_p, sorted(best_cands)

    def run(self):
        if self.n_points == self.m:
            assert all(w != -1 for w in self.limg)
            self.results.append(Collineation(
                self.plane, tuple(self.pimg), tuple(self.limg)))
            return
        p, cands = self._choose()
        for v in cands:
            mark = len(self.trail)
            queue = []
            if self._set_point(p, v, queue) and self._propagate(queue):
                self.run()
            self._undo_to(mark)


def search_collineations(plane, point_seed=None, line_seed=None, labels_only=False):
    """All collineations extending the given partial point and line maps,
    sorted by point map."""
    s = _Search(plane, labels_only)
    if s.seed(dict(point_seed or {}), dict(line_seed or {})):
        s.run()
    return sorted(s.results, key=lambda c: (c.point_map, c.line_map))


def all_collineations(plane):
    """The full collineation group, by unseeded search; tiny orders only."""
    if plane.q > FULL_GROUP_Q_CAP:
        raise CapExceeded(
            f"full group enumeration capped at q <= {FULL_GROUP_Q_CAP}, got {plane.q}")
    return search_collineations(plane)


def collineations_fixing(plane, x0, labels_only=False):
    """All collineations fixing the point x0, label-preserving if asked."""
    return search_collineations(plane, point_seed={x0: x0}, labels_only=labels_only)


@lru_cache(maxsize=None)
def pencil_action(plane, x0):
    """Permutations of the q+1 flag labels at x0 induced by the stabilizer
    of x0, as a subgroup of Sym(q+1)."""
    m = plane.modulus
    entry_index = {d: j for j, d in enumerate(plane.entries)}
    perms = set()
    for c in collineations_fixing(plane, x0):
        lines = plane.point_lines(x0)
        perms.add(tuple(
            entry_index[(x0 - c.line_map[lines[j]]) % m]
            for j in range(plane.q + 1)))
    return PermGroup.from_elements(perms)


@lru_cache(maxsize=None)
def line_pencil_action(plane, y0):
    """Permutations of the q+1 flag labels on line y0 induced by its
    setwise stabilizer."""
    m = plane.modulus
    entry_index = {d: j for j, d in enumerate(plane.entries)}
    perms = set()
    for c in search_collineations(plane, line_seed={y0: y0}):
        pts = plane.line_points(y0)
        perms.add(tuple(
            entry_index[(c.point_map[pts[j]] - y0) % m]
            for j in range(plane.q + 1)))
    return PermGroup.from_elements(perms)


def elations_with(plane, center, axis):
    """The group of elations with the given center and axis, as a sorted
    list including the identity."""
    if not plane.incident(axis, center):
        raise InvalidInput(f"center {center} is not on axis {axis}")
    point_seed = {p: p for p in plane.line_points(axis)}
    line_seed = {y: y for y in plane.point_lines(center)}
    found = search_collineations(plane, point_seed, line_seed)
    return [Elation(c, center, axis) for c in found]


def elation_cycle_profile(e, line):
    """Cycle structure (k, c) of a nontrivial elation on the q points of a
    center line other than the axis: k disjoint cycles of equal length c,
    k * c = q."""
    coll = e.collineation
    plane = coll.plane
    if coll.is_identity:
        raise InvalidInput("cycle profile of the trivial elation is undefined")
    if line == e.axis:
        raise InvalidInput("profile line must differ from the axis")
    if not plane.incident(line, e.center):
        raise InvalidInput(f"line {line} does not pass through the center")
    lengths = []
    seen = set()
    for start in plane.line_points(line):
        if start == e.center or start in seen:
            continue
        n = 0
        x = start
        while x not in seen:
            seen.add(x)
            x = coll.point_map[x]
            n += 1
        lengths.append(n)
    assert sum(lengths) == plane.q
    k = len(lengths)
    c = lengths[0]
    assert all(length == c for length in lengths)
    return (k, c)


def is_desarguesian(plane):
    """True iff every incident (center, axis) pair carries a full group of
    q elations, which is the Moufang condition for a plane."""
    if plane.q > SEARCH_Q_CAP:
        raise CapExceeded(
            f"Desarguesian test capped at q <= {SEARCH_Q_CAP}, got {plane.q}")
    if not verify_plane_axioms(plane):
        raise InvalidInput("not a projective plane")
    for axis in range(plane.modulus):
        for center in plane.line_points(axis):
            if len(elations_with(plane, center, axis)) != plane.q:
                return False
    return True


def plane_to_text(plane):
    """One text line per geometric line: its (point, label) pairs sorted
    by point."""
    out = []
    for x in range(plane.modulus):
        pairs = sorted((p, j) for j, p in enumerate(plane.line_points(x)))
        out.append(f"line {x}: " + " ".join(f"({p},{j})" for p, j in pairs))
    return "\n".join(out) + "\n"


def plane_from_text(text):
    """Inverse of plane_to_text.  The whole export must be consistent
    with one cyclic plane; anything else is rejected."""
    rows = text.splitlines()
    if not rows:
        raise InvalidInput("empty plane export")
    pairs = re.findall(r"\((\d+),(\d+)\)", rows[0])
    if not rows[0].startswith("line 0: ") or not pairs:
        raise InvalidInput("line 1: expected 'line 0: (p,j) ...'")
    q = len(pairs) - 1
    entries = [None] * (q + 1)
    for p, j in pairs:
        j = int(j)
        if not 0 <= j <= q or entries[j] is not None:
            raise InvalidInput(f"line 1: bad label {j}")
        entries[j] = int(p)
    plane = LabelledPlane(q, len(rows), tuple(entries))
    if plane_to_text(plane) != text:
        raise InvalidInput("export rows do not match a single cyclic plane")
    return plane
