"""Matrix-represented matroids over a finite field.

A :class:`RepMatroid` is a matrix with labelled columns; its matroid is the
column matroid. Labels are strings and their string order is the canonical
total order used wherever a deterministic choice is needed.
"""

from __future__ import annotations

import contextlib
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .field import FieldSpec, make_field, subfield_elements
from .linalg import Span, left_inverse, normalize


class MatroidError(ValueError):
    pass


class NotSimpleError(MatroidError):
    pass


class SizeCapError(MatroidError):
    pass


# Optional registry of every matroid constructed while auditing is active.
_AUDIT: list | None = None


@contextlib.contextmanager
def audit_constructions(sink=None) -> Iterator[list]:
    """Record every :class:`RepMatroid` created inside the block.

    ``sink`` may be any object with ``append`` and ``extend``; by default a
    fresh list is used and yielded.
    """
    global _AUDIT
    outer = _AUDIT
    log = [] if sink is None else sink
    _AUDIT = log
    try:
        yield log
    finally:
        _AUDIT = outer
        if outer is not None:
            outer.extend(log)


@dataclass(frozen=True, eq=False)
class RepMatroid:
    F: FieldSpec
    rows: int
    columns: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.columns) != len(self.labels):
            raise MatroidError("one label per column required")
        index = {lab: i for i, lab in enumerate(self.labels)}
        if len(index) != len(self.labels):
            raise MatroidError("labels must be distinct")
        q = self.F.order
        for col in self.columns:
            if len(col) != self.rows:
                raise MatroidError(f"column {col} does not have {self.rows} entries")
            if any(not 0 <= x < q for x in col):
                raise MatroidError(f"column {col} has entries outside {self.F!r}")
        object.__setattr__(self, "_index", index)
        if _AUDIT is not None:
            _AUDIT.append(self)

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"RepMatroid({self.F!r}, rows={self.rows}, m={len(self)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, RepMatroid):
            return NotImplemented
        return (
            self.F is other.F
            and self.rows == other.rows
            and self.columns == other.columns
            and self.labels == other.labels
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.columns, self.labels))

    @property
    def ground_set(self) -> frozenset[str]:
        return frozenset(self.labels)

    def col(self, label: str) -> tuple[int, ...]:
        try:
            return self.columns[self._index[label]]
        except KeyError:
            raise MatroidError(f"unknown label {label!r}") from None

    def cols(self, labels: Iterable[str]) -> list[tuple[int, ...]]:
        return [self.col(lab) for lab in labels]

    def span(self, labels: Iterable[str]) -> Span:
        return Span(self.F, self.cols(labels))

    @property
    def rank(self) -> int:
        return rank_of(self, self.labels)

    def with_columns(self, labels: Sequence[str]) -> "RepMatroid":
        return RepMatroid(self.F, self.rows, tuple(self.col(lab) for lab in labels), tuple(labels))


def from_columns(F: FieldSpec, columns: Sequence[Sequence[int]], labels: Sequence[str] | None = None,
                 rows: int | None = None) -> RepMatroid:
    columns = tuple(tuple(c) for c in columns)
    if rows is None:
        if not columns:
            raise MatroidError("rows must be given for an empty column list")
        rows = len(columns[0])
    if labels is None:
        labels = [vector_label(F, c) for c in columns]
    return RepMatroid(F, rows, columns, tuple(labels))


def vector_label(F: FieldSpec, v: Sequence[int]) -> str:
    if F.order <= 10:
        return "".join(str(x) for x in v)
    return ".".join(str(x) for x in v)


def sorted_labels(labels: Iterable[str]) -> list[str]:
    return sorted(labels)


# --- rank, closure, minors --------------------------------------------------


def rank_of(M: RepMatroid, S: Iterable[str] = None) -> int:
    if S is None:
        S = M.labels
    return M.span(S).dim


def is_independent(M: RepMatroid, S: Iterable[str]) -> bool:
    S = list(S)
    return len(set(S)) == len(S) and rank_of(M, S) == len(S)


def closure(M: RepMatroid, S: Iterable[str]) -> frozenset[str]:
    sp = M.span(S)
    return frozenset(lab for lab, c in zip(M.labels, M.columns) if sp.contains(c))


def loops(M: RepMatroid) -> frozenset[str]:
    return frozenset(lab for lab, c in zip(M.labels, M.columns) if not any(c))


def delete(M: RepMatroid, D: Iterable[str]) -> RepMatroid:
    D = set(D)
    for lab in D:
        M.col(lab)
    return M.with_columns([lab for lab in M.labels if lab not in D])


def restrict(M: RepMatroid, S: Iterable[str]) -> RepMatroid:
    S = set(S)
    for lab in S:
        M.col(lab)
    return M.with_columns([lab for lab in M.labels if lab in S])


def contract(M: RepMatroid, C: Iterable[str]) -> RepMatroid:
    """``M / C``: move span(C) onto leading coordinates and drop those rows."""
    C = set(C)
    if not C:
        return M
    cols_c = [lab for lab in M.labels if lab in C]
    for lab in cols_c:
        M.col(lab)
    basis: list[tuple[int, ...]] = []
    sp = Span(M.F)
    for lab in cols_c:
        if sp.add(M.col(lab)):
            basis.append(M.col(lab))
    keep = [lab for lab in M.labels if lab not in C]
    rc = len(basis)
    if rc == 0:
        return M.with_columns(keep)
    T = left_inverse(M.F, basis, M.rows)
    F = M.F
    tail = T[rc:]
    cols = []
    for lab in keep:
        v = M.col(lab)
        cols.append(tuple(_dot(F, row, v) for row in tail))
    return RepMatroid(F, M.rows - rc, tuple(cols), tuple(keep))


def _dot(F, u, v) -> int:
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = F.add(acc, F.mul(a, b))
    return acc


def full_row_rank(M: RepMatroid) -> RepMatroid:
    """Same matroid on ``r(M)`` rows (coordinates w.r.t. the least-label basis)."""
    basis = greedy_basis(M, M.labels)
    r = len(basis)
    if r == M.rows:
        return M
    T = left_inverse(M.F, M.cols(basis), M.rows)[:r]
    cols = tuple(tuple(_dot(M.F, row, c) for row in T) for c in M.columns)
    return RepMatroid(M.F, r, cols, M.labels)


def greedy_basis(M: RepMatroid, order: Iterable[str]) -> list[str]:
    """First-fit independent set along ``order`` (a basis of ``order``)."""
    sp = Span(M.F)
    return [lab for lab in order if sp.add(M.col(lab))]


# --- simplification ---------------------------------------------------------


@dataclass(frozen=True)
class SimplificationMap:
    representative: dict[str, str]
    loops: frozenset[str]

    @property
    def num_points(self) -> int:
        return len(set(self.representative.values()))

    def classes(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {}
        for lab, rep in self.representative.items():
            out.setdefault(rep, []).append(lab)
        return out


def parallel_key(M: RepMatroid, label: str) -> tuple[int, ...] | None:
    return normalize(M.F, M.col(label))


def simplify(M: RepMatroid) -> tuple[RepMatroid, SimplificationMap]:
    """Keep the least label of every parallel class; drop loops."""
    groups: dict[tuple, list[str]] = {}
    lps = []
    for lab, c in zip(M.labels, M.columns):
        key = normalize(M.F, c)
        if key is None:
            lps.append(lab)
        else:
            groups.setdefault(key, []).append(lab)
    rep = {}
    keep = set()
    for members in groups.values():
        r = min(members)
        keep.add(r)
        for lab in members:
            rep[lab] = r
    smap = SimplificationMap(rep, frozenset(lps))
    if not lps and len(keep) == len(M):
        return M, smap
    return M.with_columns([lab for lab in M.labels if lab in keep]), smap


def si(M: RepMatroid) -> RepMatroid:
    return simplify(M)[0]


def num_points(M: RepMatroid, S: Iterable[str] | None = None) -> int:
    """epsilon: the number of parallel classes of nonloops (of ``S``)."""
    labels = M.labels if S is None else S
    keys = {normalize(M.F, M.col(lab)) for lab in labels}
    keys.discard(None)
    return len(keys)


epsilon = num_points


def is_simple(M: RepMatroid) -> bool:
    return num_points(M) == len(M) and not loops(M)


def require_simple(M: RepMatroid, what: str = "operation") -> None:
    if not is_simple(M):
        raise NotSimpleError(f"{what} requires a simple matroid")


# --- lines, hyperplanes, flats ----------------------------------------------


def lines_of(M: RepMatroid) -> list[frozenset[str]]:
    """All rank-2 flats, each as its full point set, in discovery order."""
    require_simple(M, "lines_of")
    labels = M.labels
    idx = {lab: i for i, lab in enumerate(labels)}
    covered: set[tuple[int, int]] = set()
    out = []
    for i, j in itertools.combinations(range(len(labels)), 2):
        if (i, j) in covered:
            continue
        sp = Span(M.F, [M.columns[i], M.columns[j]])
        line = [lab for lab, c in zip(labels, M.columns) if sp.contains(c)]
        pos = sorted(idx[lab] for lab in line)
        covered.update(itertools.combinations(pos, 2))
        out.append(frozenset(line))
    return out


def projective_functionals(F: FieldSpec, r: int) -> Iterator[tuple[int, ...]]:
    """Nonzero vectors of F^r with first nonzero entry 1, in lexicographic order."""
    for lead in range(r):
        for tail in itertools.product(range(F.order), repeat=r - lead - 1):
            yield (0,) * lead + (1,) + tail


def hyperplanes(M: RepMatroid) -> list[frozenset[str]]:
    """Distinct hyperplanes of ``M`` as kernels of projective functionals."""
    N = full_row_rank(M)
    r = N.rows
    if r == 0:
        return []
    F = N.F
    seen: dict[frozenset, None] = {}
    for fnl in projective_functionals(F, r):
        ker = frozenset(lab for lab, c in zip(N.labels, N.columns) if _dot(F, fnl, c) == 0)
        if ker in seen:
            continue
        if rank_of(N, ker) == r - 1:
            seen[ker] = None
    return list(seen)


def flats_of_rank(M: RepMatroid, k: int) -> list[frozenset[str]]:
    """All flats of rank ``k``, built by one-element extension from smaller flats."""
    if k == 0:
        return [closure(M, ())]
    current = {closure(M, ())}
    for _ in range(k):
        nxt: dict[frozenset, None] = {}
        for Fl in current:
            rest = [lab for lab in M.labels if lab not in Fl]
            done: set[str] = set()
            for lab in rest:
                if lab in done:
                    continue
                G = closure(M, list(Fl) + [lab])
                done.update(G)
                nxt.setdefault(G, None)
        current = set(nxt)
    return sorted(current, key=lambda s: sorted(s))


# --- projective geometry recognition ----------------------------------------


def pg_size(n: int, q: int) -> int:
    """(q^n - 1)/(q - 1): points of the rank-n projective geometry over GF(q)."""
    return (q**n - 1) // (q - 1)


def is_projective_geometry(M: RepMatroid, q: int) -> tuple[bool, int]:
    """Whether simple ``M`` is a PG over GF(q); second item is the rank.

    Counts points, checks every line has exactly q+1 points and, from rank 4
    on, that every plane has q^2+q+1 points (equivalently, any two coplanar
    lines meet). The plane condition is implied by the counts in rank 3 and
    makes the test exact in every rank.
    """
    require_simple(M, "is_projective_geometry")
    r = M.rank
    if len(M) != pg_size(r, q):
        return False, r
    if r <= 1:
        return True, r
    lines = lines_of(M)
    if any(len(L) != q + 1 for L in lines):
        return False, r
    if r >= 4:
        line_of = {}
        for i, L in enumerate(lines):
            for a, b in itertools.combinations(sorted(L), 2):
                line_of[a, b] = i
        plane_size = q * q + q + 1
        covered: set[tuple[int, str]] = set()
        for i, L in enumerate(lines):
            for x in M.labels:
                if x in L or (i, x) in covered:
                    continue
                P = sorted(closure(M, list(L) + [x]))
                if len(P) != plane_size:
                    return False, r
                inside = {line_of[a, b] for a, b in itertools.combinations(P, 2)}
                for j in inside:
                    covered.update((j, y) for y in P if y not in lines[j])
    return True, r


@dataclass(frozen=True)
class PGHandle:
    """A restriction of ``host`` certified as a projective geometry over GF(q)."""

    host: RepMatroid
    members: frozenset[str]
    q: int
    rank: int
    certified: bool = True

    @property
    def matroid(self) -> RepMatroid:
        return restrict(self.host, self.members)

    @property
    def spanning(self) -> bool:
        return self.rank == self.host.rank


def certify_pg(host: RepMatroid, members: Iterable[str], q: int) -> PGHandle:
    """Check ``host|members`` is a PG over GF(q) with GF(q)-valued columns."""
    members = frozenset(members)
    R = restrict(host, members)
    require_simple(R, "certify_pg")
    ok, r = is_projective_geometry(R, q)
    if not ok:
        raise MatroidError(f"restriction is not a projective geometry over GF({q})")
    sub = subfield_elements(host.F, q)
    for lab in members:
        if any(x not in sub for x in host.col(lab)):
            raise MatroidError(f"column {lab} is not GF({q})-valued")
    return PGHandle(host, members, q, r, True)


# --- isomorphism ------------------------------------------------------------

ISO_MAX_ELEMENTS = 150


def find_isomorphism(M1: RepMatroid, M2: RepMatroid, max_elements: int = ISO_MAX_ELEMENTS) -> dict[str, str] | None:
    """A label bijection preserving the matroid, or ``None``.

    Individualize-and-refine search on the element/hyperplane incidence
    structure. Both sides are colour-refined together, so any isomorphism
    respects the colours and pruning by colour is sound. Branching is on
    the largest non-singleton cell, which splits fastest. A discrete
    colouring gives a candidate bijection, accepted only if it carries
    hyperplanes onto hyperplanes.
    """
    require_simple(M1, "matroid_isomorphic")
    require_simple(M2, "matroid_isomorphic")
    m = len(M1)
    if max(m, len(M2)) > max_elements:
        raise SizeCapError(f"isomorphism test capped at {max_elements} elements")
    if m != len(M2):
        return None
    r = M1.rank
    if r != M2.rank:
        return None
    if r <= 2:
        return dict(zip(sorted(M1.labels), sorted(M2.labels)))

    S1, S2 = _IsoSide(M1), _IsoSide(M2)
    if sorted(map(len, S1.hyps)) != sorted(map(len, S2.hyps)):
        return None
    target = set(S2.hyps)

    def search(c1: list, c2: list, depth: int) -> list[int] | None:
        refined = _joint_refine(S1, S2, c1, c2)
        if refined is None:
            return None
        c1, c2 = refined
        classes: dict = {}
        for x, c in enumerate(c1):
            classes.setdefault(c, []).append(x)
        if len(classes) == m:
            pos2 = {c: y for y, c in enumerate(c2)}
            image = [pos2[c] for c in c1]
            if {frozenset(image[x] for x in H) for H in S1.hyps} == target:
                return image
            return None
        cell = max((v for v in classes.values() if len(v) > 1), key=len)
        x = cell[0]
        mark = -1 - depth
        for y in (y for y, c in enumerate(c2) if c == c1[x]):
            d1, d2 = list(c1), list(c2)
            d1[x], d2[y] = mark, mark
            found = search(d1, d2, depth + 1)
            if found is not None:
                return found
        return None

    image = search(list(S1.signature), list(S2.signature), 0)
    if image is None:
        return None
    return {M1.labels[x]: M2.labels[image[x]] for x in range(m)}


def _joint_refine(S1: "_IsoSide", S2: "_IsoSide", c1: list, c2: list):
    """Refine element colours on both sides with shared colour names; ``None`` on mismatch."""
    while True:
        n_before = len(set(c1))
        hnames: dict = {}
        hc1 = [hnames.setdefault(tuple(sorted([c1[x] for x in H])), len(hnames)) for H in S1.hyps]
        hc2 = [hnames.setdefault(tuple(sorted([c2[x] for x in H])), len(hnames)) for H in S2.hyps]
        if sorted(hc1) != sorted(hc2):
            return None
        names: dict = {}
        new = []
        for side, c, hc in ((S1, c1, hc1), (S2, c2, hc2)):
            new.append([names.setdefault((c[x], tuple(sorted([hc[h] for h in side.hyps_through[x]]))), len(names))
                        for x in range(len(c))])
        c1, c2 = new
        if sorted(c1) != sorted(c2):
            return None
        if len(names) == n_before:
            return c1, c2


class _IsoSide:
    def __init__(self, M: RepMatroid):
        self.M = M
        labels = M.labels
        idx = {lab: i for i, lab in enumerate(labels)}
        self.hyps = [frozenset(idx[lab] for lab in H) for H in hyperplanes(M)]
        self.hyps_through: list[list[int]] = [[] for _ in labels]
        for h, H in enumerate(self.hyps):
            for x in H:
                self.hyps_through[x].append(h)
        line_sizes: list[list[int]] = [[] for _ in labels]
        for L in lines_of(M):
            for lab in L:
                line_sizes[idx[lab]].append(len(L))
        self.signature = [
            (tuple(sorted(len(self.hyps[h]) for h in self.hyps_through[x])), tuple(sorted(line_sizes[x])))
            for x in range(len(labels))
        ]


def matroid_isomorphic(M1: RepMatroid, M2: RepMatroid, max_elements: int = ISO_MAX_ELEMENTS) -> bool:
    return find_isomorphism(M1, M2, max_elements) is not None


def check_isomorphism(M1: RepMatroid, M2: RepMatroid, mapping: dict[str, str]) -> bool:
    """Independent check that ``mapping`` carries hyperplanes onto hyperplanes."""
    if sorted(mapping) != sorted(M1.labels) or sorted(mapping.values()) != sorted(M2.labels):
        return False
    if M1.rank != M2.rank:
        return False
    h1 = {frozenset(mapping[x] for x in H) for H in hyperplanes(M1)}
    h2 = set(hyperplanes(M2))
    return h1 == h2


# --- text format ------------------------------------------------------------


def dumps(M: RepMatroid, with_labels: bool = True) -> str:
    """Header ``p e r m``, then r rows of m encodings, then an optional label line."""
    lines = [f"{M.F.p} {M.F.e} {M.rows} {len(M)}"]
    for i in range(M.rows):
        lines.append(" ".join(str(c[i]) for c in M.columns))
    if with_labels:
        lines.append(" ".join(M.labels))
    return "\n".join(lines) + "\n"


def loads(text: str) -> RepMatroid:
    raw = text.split("\n")
    if raw and raw[-1] == "":
        raw.pop()
    if not raw:
        raise MatroidError("empty matroid file")
    try:
        p, e, r, m = (int(t) for t in raw[0].split())
    except ValueError:
        raise MatroidError(f"bad header line {raw[0]!r}") from None
    F = make_field(p, e)
    if len(raw) < 1 + r:
        raise MatroidError(f"expected {r} matrix rows")
    rows = []
    for line in raw[1 : 1 + r]:
        vals = [int(t) for t in line.split()]
        if len(vals) != m:
            raise MatroidError(f"expected {m} entries per row, got {len(vals)}")
        rows.append(vals)
    cols = tuple(tuple(row[j] for row in rows) for j in range(m))
    rest = raw[1 + r :]
    if rest:
        if len(rest) != 1:
            raise MatroidError("trailing content after label line")
        labels = tuple(rest[0].split()) if m else ()
        if len(labels) != m:
            raise MatroidError(f"expected {m} labels")
    else:
        labels = tuple(str(j) for j in range(m))
    return RepMatroid(F, r, cols, labels)


def read_matroid(path) -> RepMatroid:
    with open(path) as fh:
        return loads(fh.read())


def write_matroid(M: RepMatroid, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(M))
