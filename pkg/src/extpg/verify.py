"""Registered verification suites and the report they produce."""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

from .construct import (
    build_epg,
    build_extension_rep,
    build_pg,
    epg_size_formula,
    kung_bound,
    square_field,
)
from .density import (
    DensityFunction,
    density_vs_epg,
    exceeds,
    find_skew_dense_subset,
    is_weakly_round,
    weakly_round_restriction,
)
from .field import decompose, field_of_order, pick_omega, subfield_elements
from .geometry import check_matching_outcome, contract_unstable, find_line_matching, line_through
from .instances import (
    UNSTABLE_POOL,
    hand_instance,
    random_line_subset,
    random_restriction,
    scrambled_pg,
    skew_instance,
    unstable_instance,
)
from .matroid import (
    ISO_MAX_ELEMENTS,
    check_isomorphism,
    find_isomorphism,
    from_columns,
    num_points,
    rank_of,
    restrict,
)
from .normalize import MINOR_MAX_ELEMENTS, has_pg_minor, normalize_spanning_pg
from . import oracles

FORMULA, ORACLE, TRIVIAL = "formula", "oracle", "trivial"


@dataclass
class CheckRecord:
    suite: str
    name: str
    params: dict
    expected: object
    actual: object
    passed: bool
    provenance: str
    elapsed: float = 0.0


@dataclass
class RunReport:
    command: list[str]
    seed: int
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def to_dict(self, timing: bool = True) -> dict:
        recs = []
        for r in self.records:
            d = asdict(r)
            if not timing:
                d.pop("elapsed")
            recs.append(d)
        return {"command": self.command, "seed": self.seed, "passed": self.passed, "records": recs}

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True, default=str)

    def to_table(self) -> str:
        lines = []
        for r in self.records:
            status = "PASS" if r.passed else "FAIL"
            params = ",".join(f"{k}={v}" for k, v in r.params.items())
            lines.append(f"{status}  {r.suite:<10} {r.name:<28} {params:<32} {r.elapsed:7.3f}s")
        total = sum(r.passed for r in self.records)
        lines.append(f"{total}/{len(self.records)} checks passed")
        return "\n".join(lines)


@dataclass(frozen=True)
class VerifyConfig:
    seed: int
    max_elements: int = ISO_MAX_ELEMENTS
    max_minor_elements: int = MINOR_MAX_ELEMENTS
    max_contract: int = 1
    trials: int = 10
    n_max: int = 4


class Recorder:
    def __init__(self, suite: str, report: RunReport):
        self.suite = suite
        self.report = report

    def check(self, name: str, params: dict, provenance: str, fn: Callable[[], tuple]) -> bool:
        t0 = time.perf_counter()
        try:
            expected, actual = fn()
            passed = expected == actual
        except Exception as exc:  # a crash is a failed check, reported not raised
            expected, actual, passed = "no error", f"{type(exc).__name__}: {exc}", False
        rec = CheckRecord(self.suite, name, params, _jsonable(expected), _jsonable(actual), passed,
                          provenance, round(time.perf_counter() - t0, 4))
        self.report.records.append(rec)
        return passed


def _jsonable(x):
    if isinstance(x, (frozenset, set)):
        return sorted(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, Fraction):
        return str(x)
    return x


# --- suites -----------------------------------------------------------------


def suite_fields(cfg: VerifyConfig, rec: Recorder) -> None:
    rng = random.Random(cfg.seed)
    for q in (2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64, 81):
        F = field_of_order(q)

        def products(F=F):
            pairs = [(rng.randrange(F.order), rng.randrange(F.order)) for _ in range(200)]
            ok = all(F.mul(a, b) == oracles.poly_mul(F, a, b) and F.add(a, b) == oracles.poly_add(F, a, b)
                     for a, b in pairs)
            return True, ok

        rec.check("table_vs_polynomial", {"q": q}, ORACLE, products)
    for q in (2, 3, 4, 5, 7, 8, 9):
        F2 = square_field(q)
        rec.check("subfield_size", {"q": q}, FORMULA, lambda F2=F2, q=q: (q, len(subfield_elements(F2, q))))

        def roundtrip(F2=F2, q=q):
            w = pick_omega(F2, q)
            sub = subfield_elements(F2, q)
            ok = True
            for x in F2.elements():
                a, b = decompose(F2, w, x, q)
                ok &= a in sub and b in sub and F2.add(a, F2.mul(w, b)) == x
            return True, ok

        rec.check("decompose_roundtrip", {"q": q}, TRIVIAL, roundtrip)


def suite_construct(cfg: VerifyConfig, rec: Recorder) -> None:
    for q in (2, 3):
        for k in range(0, 3):
            for n in range(max(k, 1), cfg.n_max + 1):
                p = {"q": q, "k": k, "n": n}
                rec.check("epg_count_formula", p, FORMULA,
                          lambda q=q, k=k, n=n: (epg_size_formula(n, q, k), len(build_epg(n - 1, q, k))))
                if q ** (2 * k + n - k) <= 5000:
                    F = square_field(q)
                    rec.check("epg_count_enumeration", p, ORACLE,
                              lambda q=q, k=k, n=n, F=F: (
                                  oracles.epg_points_by_enumeration(n, q, k, F, subfield_elements(F, q)),
                                  len(build_epg(n - 1, q, k))))
    for q, k in ((2, 1), (2, 2), (3, 1)):
        def iso(q=q, k=k):
            A, B = build_epg(k, q, k), build_pg(k, q * q)
            m = find_isomorphism(A, B, cfg.max_elements)
            return True, m is not None and check_isomorphism(A, B, m)

        rec.check("epg_k_k_is_pg_q2", {"q": q, "k": k}, ORACLE, iso)
    for Q in (4, 9):
        F = field_of_order(Q)
        q = int(round(Q**0.5))
        sub = subfield_elements(F, q)

        def omega_free(F=F, sub=sub):
            reps = [build_extension_rep(F, w, 3) for w in F.elements() if w not in sub]
            first = reps[0]
            ok = True
            for N in reps[1:]:
                m = find_isomorphism(first, N, cfg.max_elements)
                ok &= m is not None and check_isomorphism(first, N, m)
            return True, ok

        rec.check("extension_omega_free", {"Q": Q, "n": 3}, ORACLE, omega_free)
    for n, q in ((2, 2), (3, 2), (3, 3), (2, 4), (3, 4)):
        rec.check("kung_equality_pg", {"n": n, "q": q}, FORMULA,
                  lambda n=n, q=q: (kung_bound(q, n), len(build_pg(n - 1, q))))


def suite_normalize(cfg: VerifyConfig, rec: Recorder) -> None:
    rng = random.Random(cfg.seed)
    for t in range(cfg.trials):
        M = scrambled_pg(2, 2, 4, rng)

        def run(M=M):
            out, transform, handle = normalize_spanning_pg(M, M.labels, 2)
            sub = subfield_elements(out.F, 2)
            in_sub = all(x in sub for c in out.columns for x in c)
            same = transform.apply(M) == out
            agree = True
            for _ in range(50):
                S = rng.sample(out.labels, rng.randint(1, len(out)))
                agree &= rank_of(out, S) == oracles.brute_rank(M.F, M.cols(S), M.rows)
            return (True, True, True), (in_sub, same, agree)

        rec.check("scrambled_pg22_gf4", {"trial": t}, ORACLE, run)


def suite_minors(cfg: VerifyConfig, rec: Recorder) -> None:
    budget = cfg.max_contract
    rec.check("epg_3_2_1_no_pg24", {"max_contract": budget}, ORACLE,
              lambda: (False, has_pg_minor(build_epg(3, 2, 1), 3, 4, budget, cfg.max_minor_elements)[0]))
    rec.check("pg34_has_pg24", {"max_contract": budget}, TRIVIAL,
              lambda: (True, has_pg_minor(build_pg(3, 4), 3, 4, budget, cfg.max_minor_elements)[0]))
    rec.check("pg32_has_pg22", {"max_contract": budget}, TRIVIAL,
              lambda: (True, has_pg_minor(build_pg(3, 2), 3, 2, budget, cfg.max_minor_elements)[0]))


def suite_geometry(cfg: VerifyConfig, rec: Recorder) -> None:
    rng = random.Random(cfg.seed)
    inst = hand_instance()
    rec.check("line_through_hand", {}, ORACLE,
              lambda: (oracles.brute_lines_containing(inst.M, inst.R.members, "e0"),
                       [line_through(inst.M, inst.R, "e0")]))

    def hand_contract():
        out = contract_unstable(inst.M, inst.R, inst.X)
        return (5, 2), (len(out), out.rank)

    rec.check("contract_hand", {}, FORMULA, hand_contract)
    for t in range(cfg.trials):
        q, k, n_prime = UNSTABLE_POOL[t % len(UNSTABLE_POOL)]

        def unstable(q=q, k=k, n_prime=n_prime):
            I = unstable_instance(q, k, n_prime, rng)
            out = contract_unstable(I.M, I.R, I.X, check_isomorphism=False)
            target = build_epg(n_prime - k - 1, q, k)
            m = find_isomorphism(out, target, cfg.max_elements)
            return (epg_size_formula(n_prime - k, q, k), True), (len(out), m is not None and check_isomorphism(out, target, m))

        rec.check("unstable_contraction", {"q": q, "k": k, "n_prime": n_prime, "trial": t}, ORACLE, unstable)
    for t in range(cfg.trials):
        n_minus_1 = 3 if t % 2 == 0 else 4
        k = t % 3 % 2

        def matching(n_minus_1=n_minus_1, k=k):
            R, lines = random_line_subset(n_minus_1, 2, rng)
            out = find_line_matching(R, lines, k)
            return [], check_matching_outcome(R, lines, k, out)

        rec.check("matching_dichotomy", {"pg": n_minus_1, "k": k, "trial": t}, ORACLE, matching)


def _corpus_small():
    F2, F3, F4 = field_of_order(2), field_of_order(3), field_of_order(4)
    out = {
        "pg22": build_pg(2, 2),
        "two_triangles": from_columns(F2, [(1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 0, 0),
                                           (0, 0, 1, 0), (0, 0, 0, 1), (0, 0, 1, 1)]),
        "u24_gf3": from_columns(F3, [(1, 0), (0, 1), (1, 1), (1, 2)]),
        "pg13_gf3": build_pg(1, 3),
        "pg21_gf4_line": build_pg(1, 4),
        "epg_1_2_1": build_epg(1, 2, 1),
        "chain_gf2": from_columns(F2, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0)]),
        "free_gf4": from_columns(F4, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 2, 3), (1, 3, 2)]),
    }
    return out


def suite_density(cfg: VerifyConfig, rec: Recorder) -> None:
    rng = random.Random(cfg.seed)
    for name, M in _corpus_small().items():
        rec.check("weakly_round_vs_bipartitions", {"matroid": name}, ORACLE,
                  lambda M=M: (oracles.brute_weakly_round(M), is_weakly_round(M)[0]))
    P = build_pg(4, 2)
    for t in range(cfg.trials):
        M = random_restriction(P, rng)
        eps = num_points(M)
        scale = Fraction(eps) * Fraction(rng.randint(50, 99), 100)
        f = DensityFunction.golden(scale, M.rank)

        def wrr(M=M, f=f):
            N = weakly_round_restriction(M, f)
            return (True, True), (oracles.brute_weakly_round(N) if len(N) <= 12 else is_weakly_round(N)[0],
                                  exceeds(num_points(N), f(N.rank)))

        rec.check("weakly_round_restriction", {"trial": t, "size": len(M)}, ORACLE, wrr)
    for t in range(cfg.trials):
        S = skew_instance(P, 2, rng)

        def skew(S=S):
            A2 = find_skew_dense_subset(S.M, S.A, S.B, S.lam, S.mu, S.ell, S.k)
            bound = S.lam * ((S.mu - 1) / S.ell) ** S.k * S.mu ** rank_of(S.M, A2)
            return (True, True, True), (A2 <= S.A, oracles.brute_skew(S.M, A2, S.B),
                                        exceeds(oracles.brute_num_points(S.M.F, S.M.cols(A2)), bound))

        rec.check("skew_dense_subset", {"trial": t, "k": S.k}, ORACLE, skew)
    rec.check("density_vs_epg_pg24", {}, FORMULA, lambda: (8, density_vs_epg(build_pg(2, 4), 2, 1)))
    rec.check("density_vs_epg_pg22", {}, FORMULA, lambda: (-6, density_vs_epg(build_pg(2, 2), 2, 1)))


SUITES: dict[str, Callable[[VerifyConfig, Recorder], None]] = {
    "construct": suite_construct,
    "density": suite_density,
    "fields": suite_fields,
    "geometry": suite_geometry,
    "minors": suite_minors,
    "normalize": suite_normalize,
}


def run_suites(names, cfg: VerifyConfig, command: list[str] | None = None) -> RunReport:
    report = RunReport(list(command or []), cfg.seed)
    if "all" in names:
        names = sorted(SUITES)
    for name in sorted(set(names)):
        SUITES[name](cfg, Recorder(name, report))
    return report
