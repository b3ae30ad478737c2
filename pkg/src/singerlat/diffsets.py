"""Perfect difference sets mod q^2+q+1 and the affine moves between them.

A perfect difference set D of order q is a (q+1)-subset of Z/mZ,
m = q^2 + q + 1, such that every nonzero residue is d - d' for exactly
one ordered pair (d, d') in D x D.  A difference vector fixes an
ordering of such a set; a difference matrix is a triple of difference
vectors sharing q, one per vertex type of the complex they encode.

The affine group AGL(1, Z/mZ) of maps x -> a*x + b (a a unit) acts on
difference sets.  Singer's construction produces one difference set per
prime power q; normalize_matrix uses affine maps and a row sort to push
a matrix into the standard shape whose first column is a chosen set in
ascending order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Optional

from .arith import make_field, prime_power, zmod_units
from .errors import CapExceeded, InvalidInput

SINGER_Q_CAP = 9
ENUMERATION_Q_CAP = 4


def _check_residues(elements, m: int) -> tuple[int, ...]:
    elems = tuple(elements)
    for e in elems:
        if not isinstance(e, int) or not 0 <= e < m:
            raise InvalidInput(f"element {e!r} is not a residue mod {m}")
    if len(set(elems)) != len(elems):
        raise InvalidInput("repeated elements")
    return elems


def is_difference_set(elements, q: int) -> bool:
    """True iff every nonzero residue mod q^2+q+1 occurs exactly once as a
    difference of two elements.  Malformed input (repeats, out of range)
    is an error, not a False."""
    if q < 2:
        raise InvalidInput(f"order must be at least 2, got {q}")
    m = q * q + q + 1
    elems = _check_residues(elements, m)
    counts = [0] * m
    for d in elems:
        for d2 in elems:
            if d != d2:
                counts[(d - d2) % m] += 1
    return all(c == 1 for c in counts[1:])


@dataclass(frozen=True)
class DifferenceSet:
    q: int
    modulus: int
    elements: tuple[int, ...]

    def __post_init__(self):
        if self.modulus != self.q * self.q + self.q + 1:
            raise InvalidInput("modulus is not q^2+q+1")
        object.__setattr__(self, "elements", tuple(sorted(self.elements)))
        if not is_difference_set(self.elements, self.q):
            raise InvalidInput(
                f"{self.elements} is not a perfect difference set of order {self.q}")

    @classmethod
    def make(cls, q: int, elements) -> "DifferenceSet":
        return cls(q, q * q + q + 1, tuple(elements))


@dataclass(frozen=True)
class DifferenceVector:
    q: int
    modulus: int
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if not is_difference_set(self.entries, self.q):
            raise InvalidInput(
                f"entries {self.entries} do not form a difference set of order {self.q}")
        if self.modulus != self.q * self.q + self.q + 1:
            raise InvalidInput("modulus is not q^2+q+1")

    @classmethod
    def make(cls, q: int, entries) -> "DifferenceVector":
        return cls(q, q * q + q + 1, tuple(entries))

    def as_set(self) -> DifferenceSet:
        return DifferenceSet(self.q, self.modulus, self.entries)


@dataclass(frozen=True)
class DifferenceMatrix:
    q: int
    columns: tuple[DifferenceVector, DifferenceVector, DifferenceVector]

    def __post_init__(self):
        if len(self.columns) != 3:
            raise InvalidInput("a difference matrix has exactly three columns")
        for v in self.columns:
            if v.q != self.q:
                raise InvalidInput("columns have mismatched order")

    @property
    def modulus(self) -> int:
        return self.columns[0].modulus

    @classmethod
    def make(cls, q: int, cols) -> "DifferenceMatrix":
        return cls(q, tuple(DifferenceVector.make(q, c) for c in cols))


@dataclass(frozen=True)
class AffineMap:
    """x -> a*x + b on Z/mZ, with a a unit."""

    a: int
    b: int
    modulus: int

    def __post_init__(self):
        m = self.modulus
        if m < 2:
            raise InvalidInput("modulus must be at least 2")
        object.__setattr__(self, "a", self.a % m)
        object.__setattr__(self, "b", self.b % m)
        if math.gcd(self.a, m) != 1:
            raise InvalidInput(f"multiplier {self.a} is not a unit mod {m}")

    def __call__(self, x: int) -> int:
        return (self.a * x + self.b) % self.modulus

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self after other."""
        if self.modulus != other.modulus:
            raise InvalidInput("modulus mismatch")
        return AffineMap(self.a * other.a, self.a * other.b + self.b,
                         self.modulus)

    def inverse(self) -> "AffineMap":
        ainv = pow(self.a, -1, self.modulus)
        return AffineMap(ainv, -ainv * self.b, self.modulus)

    def apply_set(self, D: DifferenceSet) -> DifferenceSet:
        return DifferenceSet(D.q, D.modulus, tuple(self(x) for x in D.elements))

    def apply_vector(self, v: DifferenceVector) -> DifferenceVector:
        return DifferenceVector(v.q, v.modulus, tuple(self(x) for x in v.entries))


def agl_apply(g: AffineMap, v: DifferenceVector) -> DifferenceVector:
    return g.apply_vector(v)


def agl_maps(m: int) -> Iterator[AffineMap]:
    """All affine maps mod m, ascending in (a, b)."""
    for a in zmod_units(m):
        for b in range(m):
            yield AffineMap(a, b, m)


def singer_difference_set(q: int) -> DifferenceSet:
    """Difference set from the field model: exponents i of a primitive
    element w of GF(q^3) for which w^i lies in the plane spanned by 1 and
    w over GF(q), taken mod q^2+q+1."""
    pk = prime_power(q)
    if pk is None:
        raise InvalidInput(f"{q} is not a prime power")
    if q > SINGER_Q_CAP:
        raise CapExceeded(f"order {q} exceeds cap {SINGER_Q_CAP}")
    p, eta = pk
    field = make_field(p, 3 * eta)
    # subfield GF(q) = fixed points of x -> x^q
    subfield = [x for x in field.iter_elements() if field.power(x, q) == x]
    assert len(subfield) == q
    w = field.omega_coeffs
    span = {field.add(a, field.mul(b, w)) for a in subfield for b in subfield}
    span.discard(field.zero)
    assert len(span) == q * q - 1
    m = q * q + q + 1
    exponents = set()
    acc = field.one
    for i in range(field.order - 1):
        if acc in span:
            exponents.add(i % m)
        acc = field.mul(acc, w)
    assert len(exponents) == q + 1
    return DifferenceSet(q, m, tuple(sorted(exponents)))


def agl_orbit_of_set(D: DifferenceSet) -> set[tuple[int, ...]]:
    """All images of D under the affine group, as sorted tuples."""
    m = D.modulus
    return {
        tuple(sorted((a * d + b) % m for d in D.elements))
        for a in zmod_units(m) for b in range(m)
    }


@lru_cache(maxsize=None)
def canonical_difference_set(q: int) -> DifferenceSet:
    """Lexicographically smallest member of the affine orbit of the Singer
    difference set."""
    D = singer_difference_set(q)
    best = min(agl_orbit_of_set(D))
    return DifferenceSet(q, D.modulus, best)


def find_agl_map(src: tuple[int, ...], dst: tuple[int, ...], m: int) -> Optional[AffineMap]:
    """First affine map (ascending in (a, b)) carrying set src onto set dst."""
    src_sorted = tuple(sorted(x % m for x in src))
    dst_sorted = tuple(sorted(x % m for x in dst))
    if src_sorted == dst_sorted:
        return AffineMap(1, 0, m)
    for g in agl_maps(m):
        if tuple(sorted(g(x) for x in src_sorted)) == dst_sorted:
            return g
    return None


def set_stabilizer_in_agl(D: DifferenceSet) -> list[AffineMap]:
    """All affine maps fixing D as a set, ascending in (a, b)."""
    target = set(D.elements)
    return [g for g in agl_maps(D.modulus)
            if {g(x) for x in D.elements} == target]


def stabilizer_index_perms(D: DifferenceSet) -> list[tuple[int, ...]]:
    """Each stabilizer map permutes the sorted elements of D; return those
    permutations of {0..q} in the order of set_stabilizer_in_agl."""
    pos = {d: i for i, d in enumerate(D.elements)}
    return [tuple(pos[g(d)] for d in D.elements)
            for g in set_stabilizer_in_agl(D)]


def all_difference_sets(q: int) -> list[DifferenceSet]:
    """Every perfect difference set of order q, by exhaustive scan."""
    if q > ENUMERATION_Q_CAP:
        raise CapExceeded(f"exhaustive scan capped at q <= {ENUMERATION_Q_CAP}")
    if q < 2:
        raise InvalidInput(f"order must be at least 2, got {q}")
    m = q * q + q + 1
    out = []
    for combo in combinations(range(m), q + 1):
        if is_difference_set(combo, q):
            out.append(DifferenceSet(q, m, combo))
    return out


def normalize_matrix(M: DifferenceMatrix, D: DifferenceSet) -> DifferenceMatrix:
    """Equivalent matrix whose three columns all equal D as sets and whose
    first column is D in ascending order.

    Uses one affine map per column, then one simultaneous row sort.  If a
    column is not affine-equivalent to D it belongs to a different orbit
    and cannot be normalized; the error names the column.
    """
    if D.q != M.q:
        raise InvalidInput("matrix and target set have different orders")
    mapped = []
    for t, col in enumerate(M.columns):
        g = find_agl_map(col.entries, D.elements, D.modulus)
        if g is None:
            raise InvalidInput(
                f"column {t} is not AGL-equivalent to the target set")
        mapped.append(g.apply_vector(col))
    order = sorted(range(M.q + 1), key=lambda i: mapped[0].entries[i])
    cols = tuple(
        DifferenceVector(M.q, D.modulus, tuple(v.entries[i] for i in order))
        for v in mapped)
    assert cols[0].entries == D.elements
    return DifferenceMatrix(M.q, cols)


# -- matrix files: JSON with fields q, modulus, columns --

def matrix_to_text(M: DifferenceMatrix) -> str:
    doc = {
        "q": M.q,
        "modulus": M.modulus,
        "columns": [list(v.entries) for v in M.columns],
    }
    return json.dumps(doc, sort_keys=True, separators=(", ", ": ")) + "\n"


def matrix_from_text(text: str) -> DifferenceMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInput(f"not valid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise InvalidInput("matrix file must hold a JSON object")
    for key in ("q", "modulus", "columns"):
        if key not in doc:
            raise InvalidInput(f"missing field {key!r}")
    q, m, cols = doc["q"], doc["modulus"], doc["columns"]
    if not isinstance(q, int) or not isinstance(m, int):
        raise InvalidInput("q and modulus must be integers")
    if m != q * q + q + 1:
        raise InvalidInput(f"modulus {m} is not q^2+q+1 for q={q}")
    if not isinstance(cols, list) or len(cols) != 3:
        raise InvalidInput("columns must be a list of three integer arrays")
    for c in cols:
        if not isinstance(c, list) or len(c) != q + 1 \
                or not all(isinstance(x, int) for x in c):
            raise InvalidInput(
                f"each column must be a list of {q + 1} integers")
    return DifferenceMatrix.make(q, cols)


# -- set files: JSON with fields q, modulus, elements --

def set_to_text(D: DifferenceSet) -> str:
    doc = {"q": D.q, "modulus": D.modulus, "elements": list(D.elements)}
    return json.dumps(doc, sort_keys=True, separators=(", ", ": ")) + "\n"


def set_from_text(text: str) -> DifferenceSet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInput(f"not valid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise InvalidInput("set file must hold a JSON object")
    for key in ("q", "modulus", "elements"):
        if key not in doc:
            raise InvalidInput(f"missing field {key!r}")
    q, m, els = doc["q"], doc["modulus"], doc["elements"]
    if not isinstance(q, int) or not isinstance(m, int):
        raise InvalidInput("q and modulus must be integers")
    if not isinstance(els, list) or not all(isinstance(x, int) for x in els):
        raise InvalidInput("elements must be a list of integers")
    return DifferenceSet(q, m, tuple(els))
