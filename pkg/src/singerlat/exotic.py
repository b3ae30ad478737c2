"""Exoticity certificates and the census of difference matrices.

A difference matrix M (three difference vectors of a common order q)
describes how three labelled planes glue around a vertex.  Each column
t carries a pencil group G_t on the q+1 flag labels; if two adjacent
pencil groups differ as subgroups of Sym(q+1), the glued structure
cannot be classical, and the mismatch is a checkable certificate.  The
converse does not hold, so the other outcome is only "inconclusive".

Normalized matrices have all columns equal to the canonical difference
set D, the first in ascending order, so columns 1 and 2 are encoded by
permutations alpha1, alpha2 of the labels with column t reading
D[alpha_t[i]].  In that shape G_0 is the pencil group of the canonical
plane and G_t = alpha_t^-1 G_0 alpha_t.

The census enumerates all (alpha1, alpha2) pairs, groups them into
orbits of the coarse moves (per-column set-stabilizer maps followed by
the row re-sort), and reports one canonical representative, orbit size
and verdict per class.
"""

import itertools
import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional

from .arith import make_field, prime_power
from .diffsets import (
    DifferenceMatrix, DifferenceSet, DifferenceVector,
    canonical_difference_set, find_agl_map, normalize_matrix,
    singer_difference_set, stabilizer_index_perms,
)
from .errors import CapExceeded, InvalidInput
from .permgrp import (
    PermGroup, closure, compose, conj_by, identity, inverse,
    normalizer_in_sym, perm_from_str, perm_to_str,
)
from .plane import LabelledPlane, canonical_plane, is_desarguesian, pencil_action

CLASSIFY_Q_CAP = 5
SEARCH_ROUTE_Q_CAP = 5
MODEL_ROUTE_Q_CAP = 9

CERTIFIED_EXOTIC = "CertifiedExotic"
INCONCLUSIVE = "Inconclusive"

# adjacency pairs of the three vertex types, in check order
EDGES = ((0, 1), (1, 2), (2, 0))


class NonDesarguesianColumn(Exception):
    """A column's plane fails the Moufang test; its index says which."""

    def __init__(self, column):
        super().__init__(f"column {column} is not Desarguesian")
        self.column = column


@dataclass(frozen=True)
class NormalizedMatrix:
    q: int
    D: DifferenceSet
    alpha1: tuple[int, ...]
    alpha2: tuple[int, ...]

    def __post_init__(self):
        if self.D != canonical_difference_set(self.q):
            raise InvalidInput("normalized matrices use the canonical set")
        for a in (self.alpha1, self.alpha2):
            if sorted(a) != list(range(self.q + 1)):
                raise InvalidInput(f"{a} is not a permutation of the labels")

    @classmethod
    def from_matrix(cls, M: DifferenceMatrix) -> "NormalizedMatrix":
        D = canonical_difference_set(M.q)
        norm = normalize_matrix(M, D)
        pos = {d: i for i, d in enumerate(D.elements)}
        a1 = tuple(pos[x] for x in norm.columns[1].entries)
        a2 = tuple(pos[x] for x in norm.columns[2].entries)
        return cls(M.q, D, a1, a2)

    def decode(self) -> DifferenceMatrix:
        d = self.D.elements
        return DifferenceMatrix(self.q, (
            DifferenceVector(self.q, self.D.modulus, d),
            DifferenceVector(self.q, self.D.modulus,
                             tuple(d[i] for i in self.alpha1)),
            DifferenceVector(self.q, self.D.modulus,
                             tuple(d[i] for i in self.alpha2)),
        ))


@dataclass(frozen=True)
class ExoticWitness:
    """Machine-checkable reason for a CertifiedExotic outcome.

    kind "pencil_mismatch": perm lies in the pencil group of edge[0]
    but not in that of edge[1]; groups carries the two groups when the
    verdict came from a single-matrix run (omitted in bulk census).
    kind "non_desarguesian_column": column is the failing index.
    """

    kind: str
    edge: Optional[tuple[int, int]] = None
    perm: Optional[tuple[int, ...]] = None
    groups: Optional[tuple[PermGroup, PermGroup]] = None
    column: Optional[int] = None

    def summary(self) -> str:
        if self.kind == "non_desarguesian_column":
            return f"column({self.column})"
        return f"edge{self.edge} perm={perm_to_str(self.perm)}"


@dataclass(frozen=True)
class ExoticityVerdict:
    outcome: str
    witness: Optional[ExoticWitness] = None

    def __post_init__(self):
        if self.outcome not in (CERTIFIED_EXOTIC, INCONCLUSIVE):
            raise InvalidInput(f"unknown outcome {self.outcome!r}")
        if self.outcome == CERTIFIED_EXOTIC and self.witness is None:
            raise InvalidInput("a certificate needs a witness")


@dataclass(frozen=True)
class EquivClass:
    representative: NormalizedMatrix
    orbit_size: int
    verdict: ExoticityVerdict


# -- pencil group of the canonical plane, two independent routes --


@lru_cache(maxsize=None)
def _canonical_plane_desarguesian(q) -> bool:
    return is_desarguesian(canonical_plane(q))


def _subfield_elements(field, q):
    return [x for x in field.iter_elements() if field.power(x, q) == x]


def _model_pencil_group(q) -> PermGroup:
    """Pencil group at a point of the canonical plane, built from the
    field model instead of a plane search.

    In GF(q^3) the plane's lines through the point 1*K are the
    K-subspaces w^-d * span{1, w} for d in the Singer set; modulo the
    fixed vector 1 they become the projective line over K, on which the
    point stabilizer induces the full fractional-semilinear group.  The
    result is carried back to the labels of the canonical set by the
    affine map between the two difference sets.
    """
    pk = prime_power(q)
    if pk is None:
        raise InvalidInput(f"{q} is not a prime power")
    p, _ = pk
    S = singer_difference_set(q)
    field = make_field(p, 3 * pk[1])
    K = _subfield_elements(field, q)
    w = field.omega_coeffs
    w2 = field.mul(w, w)

    # coordinates over K in the basis (1, w, w^2)
    coords = {}
    for a in K:
        for b in K:
            for c in K:
                z = field.add(field.add(a, field.mul(b, w)), field.mul(c, w2))
                coords[z] = (a, b, c)
    assert len(coords) == field.order

    def proj_point(u, v):
        # canonical representative of the K-span of (u, v), nonzero
        if u != field.zero:
            return (field.one, field.mul(v, field.inv(u)))
        return (field.zero, field.one)

    def subspace_point(z1, z2):
        # the quotient image of span{z1, z2} with 1 in the span
        _, b1, c1 = coords[z1]
        _, b2, c2 = coords[z2]
        if (b1, c1) != (field.zero, field.zero):
            return proj_point(b1, c1)
        return proj_point(b2, c2)

    labels = {}
    basis_vectors = []
    for j, d in enumerate(S.elements):
        z1 = field.power(w, -d)
        z2 = field.mul(z1, w)
        pt = subspace_point(z1, z2)
        assert pt not in labels
        labels[pt] = j
        basis_vectors.append((z1, z2))
    assert len(labels) == q + 1

    def matrix_perm(g00, g01, g10, g11):
        img = [0] * (q + 1)
        for pt, j in labels.items():
            u, v = pt
            iu = field.add(field.mul(g00, u), field.mul(g01, v))
            iv = field.add(field.mul(g10, u), field.mul(g11, v))
            img[j] = labels[proj_point(iu, iv)]
        return tuple(img)

    one, zero = field.one, field.zero
    gens = [
        matrix_perm(one, one, zero, one),
        matrix_perm(one, zero, one, one),
    ]
    lam = next((x for x in K if x != zero
                and field.multiplicative_order(x) == q - 1), None)
    if lam is not None:
        gens.append(matrix_perm(lam, zero, zero, one))
    frob = [0] * (q + 1)
    for j, (z1, z2) in enumerate(basis_vectors):
        pt = subspace_point(field.power(z1, p), field.power(z2, p))
        frob[j] = labels[pt]
    gens.append(tuple(frob))

    elements = closure(gens, q + 1)
    eta = pk[1]
    assert len(elements) == q * (q * q - 1) * eta
    group = PermGroup(q + 1, tuple(gens), elements)

    # relabel from the Singer set to the canonical one
    D = canonical_difference_set(q)
    g = find_agl_map(S.elements, D.elements, D.modulus)
    assert g is not None
    pos = {d: i for i, d in enumerate(D.elements)}
    rho = tuple(pos[g(d)] for d in S.elements)
    return group.conjugate_by(inverse(rho))


@lru_cache(maxsize=None)
def pencil_group(q, route="auto") -> PermGroup:
    """The pencil group G_0 of the canonical plane on its q+1 labels.

    route "search" enumerates the point stabilizer (q <= 5); route
    "model" uses the field construction (prime powers q <= 9); "auto"
    picks search when available.
    """
    if route == "auto":
        route = "search" if q <= SEARCH_ROUTE_Q_CAP else "model"
    if route == "search":
        if q > SEARCH_ROUTE_Q_CAP:
            raise CapExceeded(
                f"search route capped at q <= {SEARCH_ROUTE_Q_CAP}, got {q}")
        if not _canonical_plane_desarguesian(q):
            raise NonDesarguesianColumn(0)
        return pencil_action(canonical_plane(q), 0)
    if route == "model":
        if q > MODEL_ROUTE_Q_CAP:
            raise CapExceeded(
                f"model route capped at q <= {MODEL_ROUTE_Q_CAP}, got {q}")
        return _model_pencil_group(q)
    raise InvalidInput(f"unknown route {route!r}")


@lru_cache(maxsize=None)
def pencil_normalizer(q) -> PermGroup:
    """Normalizer of the pencil group in Sym(q+1); conjugating by beta
    fixes G_0 exactly when beta lies here."""
    return normalizer_in_sym(pencil_group(q))


def _column_label_twist(v: DifferenceVector) -> tuple[int, ...]:
    """Permutation s with G_column = s^-1 G_0 s on the column's labels.

    Sorting the entries is a relabelling r; the affine map onto the
    canonical set relabels once more through sorted positions.
    """
    D = canonical_difference_set(v.q)
    r = tuple(sorted(range(v.q + 1), key=lambda i: v.entries[i]))
    sorted_entries = tuple(v.entries[i] for i in r)
    g = find_agl_map(sorted_entries, D.elements, D.modulus)
    if g is None:
        raise InvalidInput("column is not AGL-equivalent to the canonical set")
    pos = {d: i for i, d in enumerate(D.elements)}
    pi = tuple(pos[g(e)] for e in sorted_entries)
    return compose(pi, inverse(r))


def local_pencil_groups(M: DifferenceMatrix, route="auto"):
    """The three pencil groups (G_0, G_1, G_2) of a difference matrix,
    each on the labels of its own column.

    route "search" runs a plane search per column; the other routes
    compute the canonical group once and move it by the label twist.
    Raises NonDesarguesianColumn when a column fails the Moufang test.
    """
    if route == "search":
        out = []
        for t, col in enumerate(M.columns):
            plane = LabelledPlane(col.q, col.modulus, col.entries)
            if not is_desarguesian(plane):
                raise NonDesarguesianColumn(t)
            out.append(pencil_action(plane, 0))
        return tuple(out)
    g0 = pencil_group(M.q, route)
    if M.q <= SEARCH_ROUTE_Q_CAP and not _canonical_plane_desarguesian(M.q):
        raise NonDesarguesianColumn(0)
    return tuple(
        g0.conjugate_by(_column_label_twist(col)) for col in M.columns)


def _mismatch_witness(groups, light=False) -> Optional[ExoticWitness]:
    for s, t in EDGES:
        gs, gt = groups[s], groups[t]
        if gs == gt:
            continue
        beta = min(gs.elements - gt.elements)
        return ExoticWitness(
            kind="pencil_mismatch", edge=(s, t), perm=beta,
            groups=None if light else (gs, gt))
    return None


def certify_exotic(M: DifferenceMatrix, route="auto") -> ExoticityVerdict:
    """CertifiedExotic when a column is non-Desarguesian or two adjacent
    pencil groups differ; otherwise Inconclusive.  Never claims the
    structure is classical."""
    try:
        groups = local_pencil_groups(M, route)
    except NonDesarguesianColumn as e:
        return ExoticityVerdict(CERTIFIED_EXOTIC, ExoticWitness(
            kind="non_desarguesian_column", column=e.column))
    witness = _mismatch_witness(groups)
    if witness is not None:
        return ExoticityVerdict(CERTIFIED_EXOTIC, witness)
    return ExoticityVerdict(INCONCLUSIVE)


def certify_normalized(Mn: NormalizedMatrix, route="auto") -> ExoticityVerdict:
    """certify_exotic specialized to the normalized encoding: G_t is the
    alpha_t conjugate of G_0, no re-normalization needed."""
    g0 = pencil_group(Mn.q, route)
    groups = (g0, g0.conjugate_by(Mn.alpha1), g0.conjugate_by(Mn.alpha2))
    witness = _mismatch_witness(groups)
    if witness is not None:
        return ExoticityVerdict(CERTIFIED_EXOTIC, witness)
    return ExoticityVerdict(INCONCLUSIVE)


def fast_necessary_condition(Mn: NormalizedMatrix, g0=None) -> bool:
    """alpha1 and alpha2 both lie in G_0; false certifies exoticity
    because G_0 is its own normalizer."""
    if g0 is None:
        g0 = pencil_group(Mn.q)
    return Mn.alpha1 in g0 and Mn.alpha2 in g0


def enumerate_normalized(q, D=None) -> Iterator[NormalizedMatrix]:
    """All normalized matrices of order q, alpha pairs in lexicographic
    order."""
    if q > CLASSIFY_Q_CAP:
        raise CapExceeded(
            f"enumeration capped at q <= {CLASSIFY_Q_CAP}, got {q}")
    if D is None:
        D = canonical_difference_set(q)
    for a1 in itertools.permutations(range(q + 1)):
        for a2 in itertools.permutations(range(q + 1)):
            yield NormalizedMatrix(q, D, a1, a2)


# -- the census --


def _coarse_tables(q):
    """Index machinery for the orbit walk.

    perms is the lexicographic list of all label permutations; a move
    (p0, p1, p2) of stabilizer index perms sends alpha_t to
    p_t . alpha_t . p0^-1, tabulated as one int array per (p0, p_t).
    """
    n = q + 1
    perms = list(itertools.permutations(range(n)))
    index = {a: i for i, a in enumerate(perms)}
    stab = stabilizer_index_perms(canonical_difference_set(q))
    tables = {}
    for p0 in stab:
        p0inv = inverse(p0)
        right = [index[compose(a, p0inv)] for a in perms]
        for pt in stab:
            left = [index[compose(pt, a)] for a in perms]
            tables[(p0, pt)] = [left[i] for i in right]
    moves = [
        (tables[(p0, p1)], tables[(p0, p2)])
        for p0 in stab for p1 in stab for p2 in stab
    ]
    return perms, index, stab, moves


def _extra_move_tables(q, perms, index):
    """Rotation shifts the three vertex types cyclically; duality
    reverses them through the negation map nu of the canonical set."""
    inv_t = [index[inverse(a)] for a in perms]
    rot = [[index[compose(b, inverse(a))] for a in perms] for b in perms]
    D = canonical_difference_set(q)
    neg = tuple(sorted((-d) % D.modulus for d in D.elements))
    g = find_agl_map(neg, D.elements, D.modulus)
    assert g is not None
    pos = {d: i for i, d in enumerate(D.elements)}
    nu = tuple(pos[g((-d) % D.modulus)] for d in D.elements)
    nu_inv = inverse(nu)
    conj_nu = [index[compose(nu, compose(a, nu_inv))] for a in perms]
    return inv_t, rot, conj_nu


def _class_witness(q, g0, a1, a2, conj_fix) -> ExoticWitness:
    """Lightweight witness for a certified class: the smallest element
    of the first mismatched edge's group missing from its neighbor."""
    g0_sorted = sorted(g0.elements)
    g0_set = g0.elements
    inv1, inv2 = inverse(a1), inverse(a2)
    checks = (
        ((0, 1), lambda: not conj_fix(a1)),
        ((1, 2), lambda: not conj_fix(compose(a1, inv2))),
        ((2, 0), lambda: not conj_fix(a2)),
    )
    for (s, t), differs in checks:
        if not differs():
            continue
        if (s, t) == (0, 1):
            beta = min(g for g in g0_sorted
                       if conj_by(g, inv1) not in g0_set)
        elif (s, t) == (1, 2):
            beta = min(x for x in (conj_by(h, a1) for h in g0_sorted)
                       if conj_by(x, inv2) not in g0_set)
        else:
            beta = min(x for x in (conj_by(h, a2) for h in g0_sorted)
                       if x not in g0_set)
        return ExoticWitness(kind="pencil_mismatch", edge=(s, t), perm=beta)
    raise AssertionError("witness requested for an inconclusive pair")


def classify(q, extra_moves=False, threads=1) -> list[EquivClass]:
    """Equivalence classes of normalized matrices under the coarse moves
    (plus rotation and duality when extra_moves is set), sorted by
    canonical representative.

    Every orbit is walked exactly once; each class records its
    lexicographically least (alpha1, alpha2), its size and a verdict,
    and the verdict is re-checked on a spread of orbit members.
    """
    if q > CLASSIFY_Q_CAP:
        raise CapExceeded(
            f"classification capped at q <= {CLASSIFY_Q_CAP}, got {q}")
    perms, index, stab, moves = _coarse_tables(q)
    nfact = len(perms)
    eta = prime_power(q)[1]
    assert len(stab) == 3 * eta
    if extra_moves:
        inv_t, rot, conj_nu = _extra_move_tables(q, perms, index)

    g0 = pencil_group(q)
    norm = pencil_normalizer(q)
    fix = [a in norm.elements for a in perms]

    def conj_fix(a):
        return a in norm.elements

    total = nfact * nfact
    visited = bytearray(total)

    def orbit_of(seed):
        stack = [seed]
        seen = {seed}
        while stack:
            code = stack.pop()
            i1, i2 = divmod(code, nfact)
            for t1, t2 in moves:
                nxt = t1[i1] * nfact + t2[i2]
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
            if extra_moves:
                j = inv_t[i1]
                nxt = rot[i2][j] * nfact + j
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
                nxt = conj_nu[i2] * nfact + conj_nu[i1]
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return seen

    def handle_range(lo, hi):
        found = {}
        for seed in range(lo, hi):
            if visited[seed]:
                continue
            orbit = orbit_of(seed)
            for code in orbit:
                visited[code] = 1
            canon = min(orbit)
            i1, i2 = divmod(canon, nfact)
            conclusive = not (fix[i1] and fix[i2])
            # verdicts must agree across the orbit; spot-check a spread
            members = sorted(orbit)
            step = max(1, len(members) // 10)
            for code in members[::step]:
                j1, j2 = divmod(code, nfact)
                assert (not (fix[j1] and fix[j2])) == conclusive
            found[canon] = len(orbit)
        return found

    if threads <= 1:
        merged = handle_range(0, total)
    else:
        chunk = -(-total // threads)
        ranges = [(i, min(i + chunk, total)) for i in range(0, total, chunk)]
        merged = {}
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(lambda r: handle_range(*r), ranges):
                for canon, size in part.items():
                    if canon in merged:
                        assert merged[canon] == size
                    else:
                        merged[canon] = size

    assert sum(merged.values()) == total
    group_order = len(stab) ** 3
    D = canonical_difference_set(q)
    out = []
    for canon in sorted(merged):
        i1, i2 = divmod(canon, nfact)
        a1, a2 = perms[i1], perms[i2]
        if not extra_moves:
            assert group_order % merged[canon] == 0
        if fix[i1] and fix[i2]:
            verdict = ExoticityVerdict(INCONCLUSIVE)
        else:
            verdict = ExoticityVerdict(
                CERTIFIED_EXOTIC, _class_witness(q, g0, a1, a2, conj_fix))
        out.append(EquivClass(NormalizedMatrix(q, D, a1, a2),
                              merged[canon], verdict))
    return out


def candidate_count(q) -> int:
    """Number of inconclusive classes; never exceeds the counting bound."""
    classes = classify(q)
    count = sum(1 for c in classes if c.verdict.outcome == INCONCLUSIVE)
    assert count <= bound_B(q)
    return count


# -- counting bounds --


def bound_B(q) -> int:
    """(q(q^2-1)/3)^2, an integer since q(q^2-1) is a product of three
    consecutive numbers."""
    if q < 2:
        raise InvalidInput(f"order must be at least 2, got {q}")
    n = q * (q * q - 1)
    assert n % 3 == 0
    return (n // 3) ** 2


def lower_A(q) -> Fraction:
    """((q+1)!)^2 / (162 eta^3), exact."""
    pk = prime_power(q)
    if pk is None:
        raise InvalidInput(f"{q} is not a prime power")
    eta = pk[1]
    return Fraction(math.factorial(q + 1) ** 2, 162 * eta ** 3)


def ratio_table(q_list) -> list[tuple[int, int, Fraction, float]]:
    """Rows (q, B, A, B/A as float), exact until the final conversion."""
    out = []
    for q in q_list:
        b = bound_B(q)
        a = lower_A(q)
        out.append((q, b, a, float(Fraction(b) / a)))
    return out


# -- census output --


def census_to_text(classes) -> str:
    lines = []
    for c in classes:
        w = c.verdict.witness
        lines.append(
            f"alpha1={perm_to_str(c.representative.alpha1)} "
            f"alpha2={perm_to_str(c.representative.alpha2)} "
            f"orbit={c.orbit_size} verdict={c.verdict.outcome} "
            f"witness={w.summary() if w is not None else '-'}")
    return "\n".join(lines) + "\n"


def census_summary(q, classes) -> str:
    total = sum(c.orbit_size for c in classes)
    exotic = sum(1 for c in classes if c.verdict.outcome == CERTIFIED_EXOTIC)
    inconclusive = len(classes) - exotic
    header = "q\ttotal\tclasses\tcertified_exotic\tinconclusive\tbound_B"
    row = f"{q}\t{total}\t{len(classes)}\t{exotic}\t{inconclusive}\t{bound_B(q)}"
    return header + "\n" + row + "\n"


_CENSUS_RE = re.compile(
    r"alpha1=(\[[0-9 ]*\]) alpha2=(\[[0-9 ]*\]) orbit=(\d+) "
    r"verdict=(\w+) witness=(.+)$")
_EDGE_WITNESS_RE = re.compile(r"edge\((\d+), (\d+)\) perm=(\[[0-9 ]*\])$")
_COLUMN_WITNESS_RE = re.compile(r"column\((\d+)\)$")


def _witness_from_summary(text):
    if text == "-":
        return None
    if m := _EDGE_WITNESS_RE.match(text):
        return ExoticWitness(
            kind="pencil_mismatch",
            edge=(int(m.group(1)), int(m.group(2))),
            perm=perm_from_str(m.group(3)))
    if m := _COLUMN_WITNESS_RE.match(text):
        return ExoticWitness(kind="non_desarguesian_column",
                             column=int(m.group(1)))
    raise InvalidInput(f"unrecognized witness {text!r}")


def census_from_text(text: str) -> tuple:
    """Inverse of census_to_text.  Group witnesses are not part of the
    record format, so parsed verdicts carry edge and permutation only."""
    classes = []
    for i, line in enumerate(text.splitlines(), start=1):
        m = _CENSUS_RE.match(line)
        if m is None:
            raise InvalidInput(f"census line {i}: unrecognized record")
        try:
            a1 = perm_from_str(m.group(1))
            a2 = perm_from_str(m.group(2), degree=len(a1))
            q = len(a1) - 1
            rep = NormalizedMatrix(q, canonical_difference_set(q), a1, a2)
            verdict = ExoticityVerdict(m.group(4),
                                       _witness_from_summary(m.group(5)))
        except InvalidInput as e:
            raise InvalidInput(f"census line {i}: {e}") from None
        classes.append(EquivClass(rep, int(m.group(3)), verdict))
    if not classes:
        raise InvalidInput("empty census")
    return tuple(classes)
