"""Desk-scale verification grids.

Each check function walks one family of parameter cells and returns one
result per cell, so reports stay machine-readable at full granularity.  The
command line's verify-all subcommand and the acceptance test suite both run
through these functions; grids default to the largest desk-scale bounds and
can be narrowed through the config.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import factorial

from .cyclo import Cyclotomic, cyc_make
from .groupalg import GroupAlgebraElement, j_c, perm_act, q_w_element
from .groups import FiniteMonomialGroup, enumerate_thick, make_gmpn, make_w
from .monomial import MonomialElement, central_scalar, perm_apply
from .mystic import (
    default_truncation_degree,
    faithfulness_saturation_degree,
    group_ring_iso_check,
    mu_group,
    mystic_equiv_check,
    unique_equivalent_thick,
)
from .classify import (
    singular_list,
    verify_classification_grid,
    verify_not_iso_grid,
)
from .qpoly import (
    QMatrix,
    act_c,
    commute_check,
    fundamental_invariants,
    hilbert_free,
    invariant_degrees,
    invariant_dimension,
    operator_matrix,
    phi_w_eval,
    qform_bracket,
    qmul,
)


@dataclass(frozen=True)
class CheckResult:
    check: str
    params: dict
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        out = {"check": self.check, "params": self.params, "pass": self.passed}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class VerifyConfig:
    """Grid bounds for the verification run."""

    max_m: int = 6
    max_n: int = 4
    degree: int | None = None  # overrides the per-cell truncation degree
    instances: int = 10_000
    iso_cap: int = 500
    seed: int = 20140404

    def clamp_m(self, bound: int) -> int:
        return min(self.max_m, bound)

    def clamp_n(self, bound: int) -> int:
        return min(self.max_n, bound)


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


# -- 1: orders ----------------------------------------------------------


def check_orders(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    for m in range(1, cfg.clamp_m(6) + 1):
        for n in range(2, cfg.clamp_n(4) + 1):
            for p in _divisors(m):
                got = make_gmpn(m, p, n).order
                want = m**n * factorial(n) // p
                out.append(
                    CheckResult(
                        "orders-grid",
                        {"m": m, "p": p, "n": n},
                        got == want,
                        f"order {got}, formula {want}",
                    )
                )
    return out


# -- 2: the counterpart construction and operator equivalence -----------


def _even_m_cells(cfg: VerifyConfig, max_m: int = 6, max_n: int = 3):
    for m in range(2, cfg.clamp_m(max_m) + 1, 2):
        for n in range(2, cfg.clamp_n(max_n) + 1):
            for p in _divisors(m):
                yield m, p, n


def check_counterpart_equivalence(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    scanned = {}
    for m, p, n in _even_m_cells(cfg):
        G = make_gmpn(m, p, n)
        mu = mu_group(G)  # raises if the det-filter set disagrees
        out.append(
            CheckResult(
                "counterpart-set",
                {"m": m, "p": p, "n": n},
                mu == make_w(m, m // p, n),
                f"|mu|={mu.order}",
            )
        )
        D = cfg.degree or default_truncation_degree(m, p, n)
        report = mystic_equiv_check(G, 0, mu, 1, D)
        out.append(
            CheckResult(
                "operator-equivalence",
                {"m": m, "p": p, "n": n, "D": D},
                report.verdict,
                "per-degree " + "".join("1" if f else "0" for f in report.per_degree),
            )
        )
        matches = unique_equivalent_thick(G, D)
        unique = len(matches) == 1 and matches[0] == mu
        out.append(
            CheckResult(
                "uniqueness-scan",
                {"m": m, "p": p, "n": n, "D": D},
                unique,
                f"matches: {[T.tag.label for T in matches]}",
            )
        )
    return out


# -- 3: invariants ---------------------------------------------------------


def check_invariant_dimensions(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    for m, p, n in _even_m_cells(cfg):
        G = make_gmpn(m, p, n)
        mu = mu_group(G)
        D = cfg.degree or default_truncation_degree(m, p, n)
        polys = fundamental_invariants(m, p, n)
        out.append(
            CheckResult(
                "generators-commute",
                {"m": m, "p": p, "n": n},
                commute_check(QMatrix.minus_one(n), polys),
            )
        )
        series = hilbert_free(invariant_degrees(m, p, n), D)
        plus_ok = all(invariant_dimension(G, 0, d) == series[d] for d in range(D + 1))
        minus_ok = all(invariant_dimension(mu, 1, d) == series[d] for d in range(D + 1))
        out.append(
            CheckResult(
                "dimension-series",
                {"m": m, "p": p, "n": n, "D": D},
                plus_ok and minus_ok,
                f"untwisted {plus_ok}, twisted {minus_ok}",
            )
        )
    return out


# -- 4: the group ring change of basis -----------------------------------


def check_group_ring(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    for m, p, n in _even_m_cells(cfg):
        report = group_ring_iso_check(make_gmpn(m, p, n))
        out.append(
            CheckResult(
                "group-ring-change-of-basis",
                {"m": m, "p": p, "n": n},
                report.passed,
                f"|G|={report.order}",
            )
        )
    return out


# -- 5: abstract isomorphism parity --------------------------------------


def check_isomorphism_parity(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    grid = verify_not_iso_grid(cfg.clamp_m(4), cfg.clamp_n(4), cfg.iso_cap)
    for e in grid.entries:
        out.append(CheckResult("isomorphism-parity", e.params, e.match, f"predicted {e.predicted}, computed {e.computed}"))
    return out


# -- 6: thick enumeration -------------------------------------------------


def predicted_thick_family(m: int, n: int) -> set[FiniteMonomialGroup]:
    family = {make_gmpn(m, p, n) for p in _divisors(m)}
    if m % 2 == 0:
        family |= {make_w(m, d, n) for d in _divisors(m)}
    return family


def check_thick_enumeration(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    for m in range(1, cfg.clamp_m(4) + 1):
        for n in range(2, cfg.clamp_n(3) + 1):
            found = set(enumerate_thick(m, n))
            predicted = predicted_thick_family(m, n)
            extra = sorted(g.tag.label for g in found - predicted)
            missing = sorted(g.tag.label for g in predicted - found)
            out.append(
                CheckResult(
                    "thick-enumeration",
                    {"m": m, "n": n},
                    found == predicted,
                    f"found {len(found)}, predicted {len(predicted)}"
                    + (f", extra {extra}" if extra else "")
                    + (f", missing {missing}" if missing else ""),
                )
            )
    return out


# -- 7: classification grid -------------------------------------------------


def check_classification(cfg: VerifyConfig) -> list[CheckResult]:
    grid = verify_classification_grid(cfg.clamp_m(4), cfg.clamp_n(4), 2, cfg.iso_cap)
    return [
        CheckResult(
            "classification-grid",
            e.params,
            e.match,
            f"predicted {e.predicted}, computed {e.computed}",
        )
        for e in grid.entries
    ]


# -- 8: the singular list ----------------------------------------------------


EXPECTED_SINGULAR = (
    "G(1,1,2)",
    "G(1,1,3)",
    "G(1,1,4)",
    "G(2,1,2)",
    "G(2,2,2)",
    "W(2,1,2)",
)


def _tag_in_bounds(label: str, max_m: int, max_n: int) -> bool:
    inner = label[label.index("(") + 1 : label.index(")")]
    m, _, n = (int(x) for x in inner.split(","))
    return m <= max_m and n <= max_n


def check_singular_list(cfg: VerifyConfig) -> list[CheckResult]:
    reports = singular_list(cfg.clamp_m(4), cfg.clamp_n(4))
    found = [r.group for r in reports]
    out = []
    for name in EXPECTED_SINGULAR:
        if not _tag_in_bounds(name, cfg.clamp_m(4), cfg.clamp_n(4)):
            continue
        out.append(CheckResult("singular-list", {"group": name}, name in found, "expected singular"))
    for r in reports:
        if r.group not in EXPECTED_SINGULAR:
            out.append(
                CheckResult(
                    "singular-list",
                    {"group": r.group},
                    False,
                    f"singular beyond the expected list (witness order {r.witness.order})",
                )
            )
    return out


# -- 9: linear independence of the operators ---------------------------------


def independence_groups(cfg: VerifyConfig) -> list[FiniteMonomialGroup]:
    out = []
    for m in range(1, cfg.clamp_m(4) + 1):
        for n in range(2, cfg.clamp_n(3) + 1):
            for p in _divisors(m):
                G = make_gmpn(m, p, n)
                if G.order <= cfg.iso_cap:
                    out.append(G)
            if m % 2 == 0:
                for d in _divisors(m):
                    W = make_w(m, d, n)
                    if W.order <= cfg.iso_cap:
                        out.append(W)
    if cfg.clamp_n(4) >= 4:
        out.append(make_gmpn(1, 1, 4))
    seen = set()
    unique = []
    for G in out:
        key = (G.n, G.N, G.element_set())
        if key not in seen:
            seen.add(key)
            unique.append(G)
    return unique


def check_operator_independence(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    for G in independence_groups(cfg):
        for c in (0, 1, cyc_make(4, 1)):
            bound = G.n * G.N
            d, _ = faithfulness_saturation_degree(G, c, bound + 12)
            tag = str(c) if isinstance(c, int) else "zeta4"
            if d is not None and d <= bound:
                detail = f"independent at degree {d}, bound {bound}"
            elif d is not None:
                detail = f"not independent by the bound {bound}, saturates at degree {d}"
            else:
                detail = f"no saturation found up to {bound + 12}"
            out.append(
                CheckResult(
                    "operator-independence",
                    {"group": G.tag.label, "c": tag},
                    d is not None and d <= bound,
                    detail,
                )
            )
    return out


# -- 10: randomized identity suites ------------------------------------------


def _random_perm(rng, n):
    perm = list(range(n))
    rng.shuffle(perm)
    return tuple(perm)


def suite_cocycle_composition(rng, instances: int) -> int:
    failures = 0
    cs = [0, 1, cyc_make(4, 1), cyc_make(3, 1)]
    for _ in range(instances):
        n = rng.choice((2, 3, 4))
        c = rng.choice(cs)
        w = _random_perm(rng, n)
        wp = _random_perm(rng, n)
        k = tuple(rng.randrange(6) for _ in range(n))
        ww = tuple(wp[w[i]] for i in range(n))
        lhs = phi_w_eval(c, ww, k)
        rhs = phi_w_eval(c, wp, perm_apply(w, k)) * phi_w_eval(c, w, k)
        if lhs != rhs:
            failures += 1
    return failures


def suite_twisted_multiplicativity(rng, instances: int) -> int:
    failures = 0
    for _ in range(instances):
        n = rng.choice((2, 3, 4))
        q = QMatrix.minus_one(n)
        w = _random_perm(rng, n)
        k = tuple(rng.randrange(5) for _ in range(n))
        kp = tuple(rng.randrange(5) for _ in range(n))
        ksum = tuple(a + b for a, b in zip(k, kp))
        lhs = qform_bracket(q, k, kp) * phi_w_eval(1, w, ksum)
        rhs = (
            qform_bracket(q, perm_apply(w, k), perm_apply(w, kp))
            * phi_w_eval(1, w, k)
            * phi_w_eval(1, w, kp)
        )
        if lhs != rhs:
            failures += 1
    return failures


def suite_q_element_identities(rng, instances: int) -> int:
    failures = 0
    N = 12
    cs = [Cyclotomic.rational(1), cyc_make(4, 1), cyc_make(3, 1)]
    perm_pool = {n: list(itertools.permutations(range(n))) for n in (2, 3)}
    for _ in range(instances):
        n = rng.choice((2, 3))
        c = rng.choice(cs)
        w = rng.choice(perm_pool[n])
        wp = rng.choice(perm_pool[n])
        qw = q_w_element(c, w, n, N)
        if qw * q_w_element(c.inverse(), w, n, N) != GroupAlgebraElement.one(n, N):
            failures += 1
        winv = tuple(sorted(range(n), key=lambda i: w[i]))
        ww = tuple(wp[w[i]] for i in range(n))
        if q_w_element(c, ww, n, N) != perm_act(winv, q_w_element(c, wp, n, N)) * qw:
            failures += 1
    return failures


def suite_twist_map(rng, instances: int) -> int:
    failures = 0
    n, N = 2, 4
    perms = list(itertools.permutations(range(n)))
    c = cyc_make(4, 1)
    for _ in range(instances):
        a = GroupAlgebraElement(
            n, N, {MonomialElement(n, N, rng.choice(perms), (rng.randrange(N), rng.randrange(N))): rng.randint(-2, 2) for _ in range(2)}
        )
        b = GroupAlgebraElement(
            n, N, {MonomialElement(n, N, rng.choice(perms), (rng.randrange(N), rng.randrange(N))): rng.randint(-2, 2) for _ in range(2)}
        )
        if j_c(c, a * b) != j_c(c, a) * j_c(c, b):
            failures += 1
            continue
        d = rng.randrange(4)
        if operator_matrix(j_c(c, a), 0, d) != operator_matrix(a, c, d):
            failures += 1
    return failures


def suite_long_cycle_law(rng, instances: int) -> int:
    failures = 0
    cells = [(2, 2), (3, 2), (4, 2), (3, 4)]
    for _ in range(instances):
        n, N = rng.choice(cells)
        order = list(range(1, n))
        rng.shuffle(order)
        perm = [0] * n
        cur = 0
        for nxt in order:
            perm[cur] = nxt
            cur = nxt
        perm[cur] = 0
        cyc = MonomialElement(n, N, tuple(perm), (0,) * n)
        exps = tuple(rng.randrange(N) for _ in range(n))
        t = MonomialElement(n, N, tuple(range(n)), exps)
        if (t * cyc) ** n != central_scalar(n, N, sum(exps)):
            failures += 1
    return failures


def suite_odd_level_nonclosure(rng, instances: int) -> int:
    failures = 0
    for _ in range(instances):
        m = rng.choice((1, 3, 5))
        p = rng.choice(_divisors(m))
        n = rng.choice((2, 3))
        N = 4 * m
        q = QMatrix.minus_one(n)
        polys = fundamental_invariants(m, p, n)
        f = polys[0]
        g = polys[-1]
        gens = [MonomialElement(n, N, _swap_perm(n, i), (0,) * n) for i in range(n - 1)]
        step = N // m
        twist = [0] * n
        twist[0] = step
        twist[1] = (-step) % N
        gens.append(MonomialElement(n, N, tuple(range(n)), tuple(twist)))
        det_gen = [0] * n
        det_gen[0] = (p * step) % N
        gens.append(MonomialElement(n, N, tuple(range(n)), tuple(det_gen)))
        if any(act_c(0, gen, f) != f or act_c(0, gen, g) != g for gen in gens):
            failures += 1
            continue
        h = qmul(q, f, g)
        if all(act_c(0, gen, h) == h for gen in gens):
            failures += 1
    return failures


def _swap_perm(n: int, i: int) -> tuple[int, ...]:
    perm = list(range(n))
    perm[i], perm[i + 1] = perm[i + 1], perm[i]
    return tuple(perm)


IDENTITY_SUITES = (
    ("cocycle-composition", suite_cocycle_composition),
    ("twisted-multiplicativity", suite_twisted_multiplicativity),
    ("q-element-identities", suite_q_element_identities),
    ("twist-map", suite_twist_map),
    ("long-cycle-law", suite_long_cycle_law),
    ("odd-level-nonclosure", suite_odd_level_nonclosure),
)


def check_identity_suites(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    for name, suite in IDENTITY_SUITES:
        rng = random.Random(cfg.seed)
        failures = suite(rng, cfg.instances)
        out.append(
            CheckResult(
                "identity-suites",
                {"suite": name, "instances": cfg.instances},
                failures == 0,
                f"{failures} failures",
            )
        )
    return out


ALL_CHECKS = (
    ("orders-grid", check_orders),
    ("counterpart-grid", check_counterpart_equivalence),
    ("invariant-dimensions", check_invariant_dimensions),
    ("group-ring-change-of-basis", check_group_ring),
    ("isomorphism-parity", check_isomorphism_parity),
    ("thick-enumeration", check_thick_enumeration),
    ("classification-grid", check_classification),
    ("singular-list", check_singular_list),
    ("operator-independence", check_operator_independence),
    ("identity-suites", check_identity_suites),
)


def run_all(cfg: VerifyConfig | None = None) -> list[CheckResult]:
    cfg = cfg or VerifyConfig()
    results = []
    for _, fn in ALL_CHECKS:
        results.extend(fn(cfg))
    return results
