"""Density tools: weak roundness, dense weakly round restrictions, skew dense subsets.

Golden-ratio thresholds are kept exact with :class:`QSqrt5`.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .construct import epg_size_formula, kung_bound
from .linalg import normalize
from .matroid import (
    MatroidError,
    RepMatroid,
    _dot,
    closure,
    contract,
    full_row_rank,
    greedy_basis,
    is_projective_geometry,
    loops,
    num_points,
    projective_functionals,
    rank_of,
    restrict,
    si,
)


class PreconditionError(MatroidError):
    pass


@functools.total_ordering
class QSqrt5:
    """Exact numbers a + b*sqrt(5) with rational a, b."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def coerce(x) -> "QSqrt5":
        if isinstance(x, QSqrt5):
            return x
        if isinstance(x, (int, Fraction)):
            return QSqrt5(x)
        raise TypeError(f"cannot use {type(x).__name__} exactly")

    def __repr__(self) -> str:
        return f"QSqrt5({self.a}, {self.b})"

    def __add__(self, other):
        o = QSqrt5.coerce(other)
        return QSqrt5(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt5(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-QSqrt5.coerce(other))

    def __rsub__(self, other):
        return QSqrt5.coerce(other) - self

    def __mul__(self, other):
        o = QSqrt5.coerce(other)
        return QSqrt5(self.a * o.a + 5 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conjugate(self) -> "QSqrt5":
        return QSqrt5(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 5 * self.b * self.b

    def inverse(self) -> "QSqrt5":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QSqrt5 division by zero")
        c = self.conjugate()
        return QSqrt5(c.a / n, c.b / n)

    def __truediv__(self, other):
        return self * QSqrt5.coerce(other).inverse()

    def __rtruediv__(self, other):
        return QSqrt5.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("integer exponents only")
        base = self if n >= 0 else self.inverse()
        out = QSqrt5(1)
        for _ in range(abs(n)):
            out = out * base
        return out

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with 5 b^2
        d = self.a * self.a - 5 * self.b * self.b
        return sa if d > 0 else (sb if d < 0 else 0)

    def __eq__(self, other):
        try:
            return (self - QSqrt5.coerce(other)).sign() == 0
        except TypeError:
            return NotImplemented

    def __lt__(self, other):
        return (self - QSqrt5.coerce(other)).sign() < 0

    def __hash__(self):
        return hash((self.a, self.b))

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * 5**0.5


PHI = QSqrt5(Fraction(1, 2), Fraction(1, 2))
SQRT5_MINUS_1 = QSqrt5(-1, 1)


def phi_power(n: int) -> QSqrt5:
    return PHI**n


FIBONACCI = "fibonacci"
DOUBLING = "doubling"


@dataclass(frozen=True)
class DensityFunction:
    """A rank-indexed threshold, exact, checked on ``lo..hi``."""

    kind: str
    evaluator: Callable[[int], object]
    lo: int = 1
    hi: int = 16
    alpha: Fraction | None = None
    params: dict = field(default_factory=dict)

    def __call__(self, n: int) -> QSqrt5:
        return QSqrt5.coerce(self.evaluator(n))

    def validate(self) -> None:
        f = self
        if self.kind == FIBONACCI:
            if not (0 < f(1) <= f(2)):
                raise PreconditionError("need 0 < f(1) <= f(2)")
            for n in range(3, self.hi + 1):
                if f(n) < f(n - 1) + f(n - 2):
                    raise PreconditionError(f"f({n}) < f({n - 1}) + f({n - 2})")
        elif self.kind == DOUBLING:
            if self.alpha is None or self.alpha <= 0:
                raise PreconditionError("doubling kind needs alpha > 0")
            if f(self.lo) < self.alpha:
                raise PreconditionError("need g(1) >= alpha")
            for n in range(self.lo + 1, self.hi + 1):
                if f(n) < 2 * f(n - 1):
                    raise PreconditionError(f"g({n}) < 2 g({n - 1})")
        else:
            raise PreconditionError(f"unknown kind {self.kind!r}")

    @classmethod
    def golden(cls, scale, offset: int, hi: int = 16) -> "DensityFunction":
        """f(n) = scale * phi^(n - offset); satisfies f(n) = f(n-1) + f(n-2)."""
        scale = QSqrt5.coerce(scale)
        return cls(FIBONACCI, lambda n: scale * phi_power(n - offset), 1, hi,
                   params={"scale": scale, "offset": offset})

    @classmethod
    def geometric(cls, alpha, base=2, hi: int = 16) -> "DensityFunction":
        """g(n) = alpha * base^(n-1)."""
        alpha, base = Fraction(alpha), Fraction(base)
        return cls(DOUBLING, lambda n: alpha * base ** (n - 1), 1, hi, alpha=alpha,
                   params={"base": base})

    @classmethod
    def epg_counts(cls, q: int, k: int, hi: int = 12) -> "DensityFunction":
        """g(i) = |PG^(k)(i-1, q)|, defined for i >= k."""
        return cls(DOUBLING, lambda n: epg_size_formula(n, q, k), max(k, 1), hi, alpha=Fraction(1),
                   params={"q": q, "k": k})


def exceeds(count: int, threshold) -> bool:
    return QSqrt5(count) > QSqrt5.coerce(threshold)


# --- weak roundness ---------------------------------------------------------


@dataclass(frozen=True)
class RoundnessWitness:
    A: frozenset[str]
    B: frozenset[str]


def is_weakly_round(M: RepMatroid) -> tuple[bool, RoundnessWitness | None]:
    """Weak roundness via hyperplanes; the witness is (E cap H, E - H).

    Every kernel of a nonzero functional is a proper subspace, so any kernel
    K with r(E - K) <= r - 2 is already a bad partition; conversely a bad
    partition (A, B) extends A to a hyperplane whose complement lies in B.
    """
    if len(M) == 0:
        raise PreconditionError("empty matroid")
    N = full_row_rank(M)
    r = N.rows
    if r <= 2:
        return True, None
    F = N.F
    for fnl in projective_functionals(F, r):
        outside = [lab for lab, c in zip(N.labels, N.columns) if _dot(F, fnl, c) != 0]
        if rank_of(N, outside) <= r - 2:
            B = frozenset(outside)
            return False, RoundnessWitness(frozenset(M.labels) - B, B)
    return True, None


def weakly_round_restriction(M: RepMatroid, f: DensityFunction) -> RepMatroid:
    """A weakly round restriction N with eps(N) > f(r(N)), given eps(M) > f(r(M))."""
    if f.kind != FIBONACCI:
        raise PreconditionError("weakly_round_restriction needs a fibonacci-kind function")
    f.validate()
    r = M.rank
    if r < 1 or not exceeds(num_points(M), f(r)):
        raise PreconditionError("need r(M) >= 1 and eps(M) > f(r(M))")
    N = M
    while True:
        ok, wit = is_weakly_round(N)
        if ok:
            return N
        rA, rB = rank_of(N, wit.A), rank_of(N, wit.B)
        if exceeds(num_points(N, wit.A), f(rA)):
            N = restrict(N, wit.A)
        elif exceeds(num_points(N, wit.B), f(rB)):
            N = restrict(N, wit.B)
        else:
            raise AssertionError("neither side keeps the density bound")


def weak_roundness_threshold(ell: int, alpha, r_target: int) -> int:
    """Least R with alpha * (sqrt5 - 1)^R >= 2 (ell^(r-1) - 1)/(ell - 1)."""
    alpha = Fraction(alpha)
    if alpha <= 0 or ell < 2 or r_target < 1:
        raise PreconditionError("need alpha > 0, ell >= 2, r >= 1")
    target = 2 * kung_bound(ell, r_target - 1)
    R, power = 0, QSqrt5(alpha)
    while power < target:
        R += 1
        power = power * SQRT5_MINUS_1
    return R


def weakly_round_with_rank_guarantee(M: RepMatroid, ell: int, alpha, g: DensityFunction,
                                     r_target: int) -> RepMatroid:
    """A weakly round N with eps(N) > g(r(N)) and r(N) >= r_target.

    The golden function is anchored at g(r(M)) so the hypothesis eps(M) > f(r(M))
    is strict; the rank is then certified by Kung's bound.
    """
    alpha = Fraction(alpha)
    if g.kind != DOUBLING:
        raise PreconditionError("g must be a doubling-kind function")
    if ell < M.F.order:
        raise PreconditionError(f"represented over GF({M.F.order}), so membership in U({ell}) is not certified")
    g.validate()
    if g.lo != 1 or g(1) < alpha:
        raise PreconditionError("need g(1) >= alpha")
    r = M.rank
    if not exceeds(num_points(M), g(r)):
        raise PreconditionError("need eps(M) > g(r(M))")
    need = weak_roundness_threshold(ell, alpha, r_target)
    if r < need:
        raise PreconditionError(f"rank {r} is below the threshold {need}")
    f = DensityFunction.golden(g(r), r, hi=max(r, 2))
    N = weakly_round_restriction(M, f)
    rN = N.rank
    eps = num_points(N)
    if not exceeds(eps, g(rN)):
        raise AssertionError("restriction lost the g-density")
    if not eps > kung_bound(ell, r_target - 1) or rN < r_target:
        raise AssertionError("rank certificate failed")
    return N


# --- skew dense subsets -----------------------------------------------------


def _skew(M: RepMatroid, X: Iterable[str], Y: Iterable[str]) -> bool:
    X, Y = list(X), list(Y)
    return rank_of(M, X + Y) == rank_of(M, X) + rank_of(M, Y)


def _skew_to_point(M: RepMatroid, A: frozenset[str], e: str, lam, mu, ell: int) -> frozenset[str]:
    """Base step: a subset of A skew to e with eps > lam*((mu-1)/ell)*mu^r."""
    while True:
        if e not in closure(M, A):
            return A
        r = rank_of(M, A)
        if r < 2:
            raise PreconditionError("degenerate rank-1 case")
        basis = greedy_basis(M, [e] + sorted(A))
        W = closure(restrict(M, A | {e}), basis[2:])
        H0 = closure(M, list(W) + [e]) & A
        if exceeds(num_points(M, H0), lam * mu ** (r - 1)):
            A = frozenset(H0)
            continue
        groups: dict[frozenset, set[str]] = {}
        for x in sorted(A - H0):
            H = closure(M, list(W) + [x])
            groups.setdefault(H, set())
        if len(groups) > ell:
            raise PreconditionError(f"{len(groups)} hyperplanes through W exceed ell={ell}")
        ordered = sorted(groups, key=lambda H: sorted(H & A))
        best = max(ordered, key=lambda H: num_points(M, H & A))
        return frozenset(best & A)


def find_skew_dense_subset(M: RepMatroid, A: Iterable[str], B: Iterable[str], lam, mu, ell: int,
                           k: int) -> frozenset[str]:
    """A' subset of A skew to B with eps(A') > lam * ((mu-1)/ell)^k * mu^r(A').

    One point of B at a time: find a dense subset skew to it, contract it and
    recurse on what is left of B.
    """
    A, B = frozenset(A), frozenset(B)
    lam, mu = Fraction(lam), Fraction(mu)
    if A & B:
        raise PreconditionError("A and B must be disjoint")
    if lam <= 0 or mu <= 1:
        raise PreconditionError("need lambda > 0 and mu > 1")
    if mu > ell + 1:
        raise PreconditionError("need mu <= ell + 1")
    if ell < M.F.order:
        raise PreconditionError(f"represented over GF({M.F.order}), so membership in U({ell}) is not certified")
    rB = rank_of(M, B)
    if rB > k:
        raise PreconditionError(f"r(B) = {rB} exceeds k = {k}")
    if not exceeds(num_points(M, A), lam * mu ** rank_of(M, A)):
        raise PreconditionError("need eps(A) > lambda * mu^r(A)")
    shrink = (mu - 1) / ell
    if rB and lam * shrink ** (rB - 1) * mu < 1:
        raise PreconditionError("need lambda * ((mu-1)/ell)^(r(B)-1) * mu >= 1")
    N, cur, lam_i, rest = M, A, lam, B
    while True:
        nonloops = sorted(rest - loops(N))
        if not nonloops:
            break
        e = nonloops[0]
        cur = _skew_to_point(N, cur, e, lam_i, mu, ell)
        lam_i = lam_i * shrink
        N = contract(N, [e])
        rest = rest - {e}
    bound = lam * shrink**k * mu ** rank_of(M, cur)
    if not _skew(M, cur, B) or not exceeds(num_points(M, cur), bound):
        raise AssertionError("skew dense subset failed re-verification")
    return cur


class KungAudit:
    """Audit sink checking eps(M) <= (l^r - 1)/(l - 1), l the host field order, per construction.

    Equality must only happen on projective geometries over the host field;
    that check is cached by point set because it is comparatively slow.
    """

    def __init__(self):
        self.checked = 0
        self.equalities = 0
        self.violations: list[str] = []
        self._pg_cache: dict = {}
        self._busy = False

    def append(self, M: RepMatroid) -> None:
        if self._busy:
            return
        self.checked += 1
        ell = M.F.order
        eps = num_points(M)
        bound = kung_bound(ell, M.rank)
        if eps > bound:
            self.violations.append(f"{M!r}: eps {eps} > {bound}")
        elif eps == bound and eps > 1:
            self.equalities += 1
            key = (ell, M.rows, frozenset(normalize(M.F, c) for c in M.columns if any(c)))
            if key not in self._pg_cache:
                self._busy = True
                try:
                    self._pg_cache[key] = is_projective_geometry(si(M), ell)[0]
                finally:
                    self._busy = False
            if not self._pg_cache[key]:
                self.violations.append(f"{M!r}: Kung equality without a projective geometry")

    def extend(self, items: Iterable[RepMatroid]) -> None:
        for M in items:
            self.append(M)


def density_vs_epg(M: RepMatroid, q: int, k: int) -> int:
    """eps(M) - |PG^(k)(r(M)-1, q)|."""
    return num_points(M) - epg_size_formula(M.rank, q, k)
