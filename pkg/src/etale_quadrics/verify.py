"""Built-in verification sweeps: every closed-form table in the package is
recomputed along an independent route and compared exactly.

Checks are grouped into scopes s2..s9 (roughly: mod-2 ring, integral
classes, the Z/4 table, the Z/2^s tower, the 2-adic Rost table, quadric
assembly, ring presentations, the twisted flag variety).  Each check
returns an exact pass/fail verdict with a machine-readable diff; nothing
here is tolerance-based.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Optional

from . import mod2, presentations, quadrics, rost, tower


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    scope: str
    passed: bool
    detail: str
    diff: Any = None

    def as_dict(self):
        out = {
            "check": self.check_id,
            "scope": self.scope,
            "passed": self.passed,
            "detail": self.detail,
        }
        if not self.passed:
            out["diff"] = self.diff
        return out


@dataclass
class VerifyOptions:
    smax: int = 8
    dmax: int = 512
    nmax: int = 6
    window: int = 4
    parallel: bool = False

    def map(self, fn: Callable, items: Iterable):
        items = list(items)
        if self.parallel:
            with ThreadPoolExecutor() as pool:
                return list(pool.map(fn, items))
        return [fn(x) for x in items]


def _result(check_id, scope, failures, detail):
    return CheckResult(check_id, scope, not failures, detail, diff=failures or None)


# ---------------------------------------------------------------------------
# s2: the mod-2 ring and its cycle image


def check_mod2_rings(opts: VerifyOptions) -> CheckResult:
    failures = []
    for n in range(1, opts.nmax + 1):
        top = mod2.top_rho_exponent(n)
        ring = mod2.rost_etale_mod2(n)
        dims = [ring.dimension(c) for c in range(top + 2)]
        if dims != [1] * (top + 1) + [0]:
            failures.append({"n": n, "dims": dims})
        expected_image = {0} | {2 ** (n + 1) - 2 ** (i + 1) for i in range(n)}
        got = set(mod2.cycle_image_mod2(n).degrees)
        if got != expected_image:
            failures.append({"n": n, "cycle_image": sorted(got)})
        nonalg = mod2.nonalgebraic_mod2_degrees(n)
        if nonalg != frozenset(set(range(1, top + 1)) - expected_image):
            failures.append({"n": n, "nonalgebraic": sorted(nonalg)})
        if len(nonalg) != top - n:
            failures.append({"n": n, "nonalgebraic_count": len(nonalg)})
        for c in mod2.cycle_image_mod2(n).classes:
            if c.degree + c.tau_exponent != c.chow_weight:
                failures.append({"n": n, "weight_identity": c.label})
    return _result(
        "C1", "s2", failures,
        f"mod-2 ring has one class per degree and the stated cycle image for n=1..{opts.nmax}",
    )


# ---------------------------------------------------------------------------
# s3: integral classes from the Bockstein pairing


def check_pairing_fixtures(opts: VerifyOptions) -> CheckResult:
    failures = []
    fixtures = [
        (2, 3, ((0, 1), (2, 3)), ()),
        (2, 7, ((0, 1), (2, 3), (4, 5)), (6,)),
        (2, 0, (), (0,)),
    ]
    for n, q, pairs, free in fixtures:
        pr = tower.pair_weight(n, q)
        if pr.pairs != pairs or pr.free_degrees != free:
            failures.append({"n": n, "q": q, "pairs": pr.pairs, "free": pr.free_degrees})
    return _result("s3.pairs", "s3", failures, "Bockstein pairing matches the fixtures")


def check_torsion_ladder(opts: VerifyOptions) -> CheckResult:
    failures = []
    for n in range(2, min(opts.nmax, 4) + 1):
        top = mod2.top_rho_exponent(n)
        for c in range(1, top + 1):
            grp = tower.integral_cohomology(n, c, c)
            if grp.torsion_orders != (2,) or grp.labels != (f"rho_bar_{c}",):
                failures.append({"n": n, "c": c, "group": repr(grp)})
        one = tower.integral_cohomology(n, 0, 0)
        pi = tower.integral_cohomology(n, top, top + 1)
        if (one.free_rank, pi.free_rank) != (1, 1) or pi.labels != ("pi",):
            failures.append({"n": n, "free": (repr(one), repr(pi))})
    return _result(
        "s3.ladder", "s3", failures,
        "one 2-torsion class per degree 1..top on the diagonal, frees at 0 and top",
    )


def check_twist_remark(opts: VerifyOptions) -> CheckResult:
    """Degrees 2 mod 4 below the top: the twist-matched bidegree carries
    only a ghost class at every finite level and vanishes in the limit."""
    failures = []
    for n in range(2, min(opts.nmax, 4) + 1):
        ct = tower.CoefficientTower(n, s_max=opts.smax, window=opts.window)
        top = mod2.top_rho_exponent(n)
        for degree in range(2, top, 4):
            if degree == top:
                continue
            p, q = tower.twist_bidegree(degree)
            for s in range(1, opts.smax + 1):
                grp = tower.mod_2s_group(n, p, q, s)
                if [sm.order for sm in grp.summands] != [2] or not grp.labels[0].startswith("ghost("):
                    failures.append({"n": n, "degree": degree, "s": s, "group": repr(grp)})
                    break
            if not ct.limit(p, q).is_trivial:
                failures.append({"n": n, "degree": degree, "limit": "nonzero"})
    return _result(
        "s3.remark", "s3", failures,
        "2 mod 4 degrees below the top are ghost-only and vanish in the limit",
    )


# ---------------------------------------------------------------------------
# s4: the Z/4 table and the long-exact-sequence bookkeeping


_N2_SPOTS = ((0, 0), (2, 3), (4, 4), (6, 7))


def check_z4_table(opts: VerifyOptions) -> CheckResult:
    failures = []
    expected = (4, 2, 2, 4)
    for (p, q), want in zip(_N2_SPOTS, expected):
        grp = tower.mod_2s_group(2, p, q, 2)
        order = 1
        for o in grp.torsion_orders:
            order *= o
        if order != want or grp.free_rank:
            failures.append({"bidegree": (p, q), "orders": grp.torsion_orders})
    # graded pieces: log2 of the order, i.e. 2,1,1,2 one-dimensional layers
    layers = [
        sum(o.bit_length() - 1 for o in tower.mod_2s_group(2, p, q, 2).torsion_orders)
        for p, q in _N2_SPOTS
    ]
    if layers != [2, 1, 1, 2]:
        failures.append({"layers": layers})
    return _result("C2", "s4", failures, "Z/4 table orders are (4, 2, 2, 4) at the four even spots")


def check_les_identity(opts: VerifyOptions) -> CheckResult:
    failures = []
    for n in (2, 3):
        ct = tower.CoefficientTower(n, s_max=opts.smax, window=opts.window)
        for p, q in ct.bidegrees():
            if p > q:
                continue
            for s in range(2, opts.smax + 1):
                if not ct.les_order_identity(p, q, s):
                    failures.append({"n": n, "bidegree": (p, q), "s": s})
    return _result(
        "s4.les", "s4", failures,
        "long-exact-sequence order identity holds at every bidegree and level",
    )


# ---------------------------------------------------------------------------
# s5: the Z/2^s tower and its limit


def check_tower_pattern(opts: VerifyOptions) -> CheckResult:
    failures = []
    for s in range(1, opts.smax + 1):
        got = [tower.mod_2s_group(2, p, q, s).torsion_orders for p, q in _N2_SPOTS]
        want = [(2**s,), (2,), (2,), (2**s,)]
        if got != want:
            failures.append({"s": s, "orders": got})
    return _result(
        "C3", "s5", failures,
        f"tower pattern (Z/2^s, Z/2, Z/2, Z/2^s) holds for s=1..{opts.smax}",
    )


def check_limits(opts: VerifyOptions) -> CheckResult:
    failures = []
    ct = tower.CoefficientTower(2, s_max=opts.smax, window=opts.window)
    for s in range(2, opts.smax + 1):
        _, r, _ = ct.transitions(2, 3, s)
        if not r.is_zero:
            failures.append({"s": s, "r_on_ghost": r.matrix})
    lim_ghost = ct.limit(2, 3)
    lim_tors = ct.limit(4, 4)
    lim_free = ct.limit(6, 7)
    if not lim_ghost.is_trivial:
        failures.append({"limit(2,3)": repr(lim_ghost)})
    if lim_tors.structure() != (0, (2,)):
        failures.append({"limit(4,4)": repr(lim_tors)})
    if lim_free.structure() != (1, ()):
        failures.append({"limit(6,7)": repr(lim_free)})
    return _result(
        "C4", "s5", failures,
        "ghost transitions vanish and the three limits are 0, Z/2, Z2",
    )


def check_factorization_squares(opts: VerifyOptions) -> CheckResult:
    """t after r and r after t are multiplication by 2 at every level."""
    failures = []
    for n in (2, 3):
        ct = tower.CoefficientTower(n, s_max=opts.smax, window=opts.window)
        for p, q in ct.bidegrees():
            if p > q:
                continue
            for s in range(2, opts.smax + 1):
                t, r, _ = ct.transitions(p, q, s)
                hi = tower.mod_2s_group(n, p, q, s)
                lo = tower.mod_2s_group(n, p, q, s - 1)
                two_hi = tuple(
                    tuple((2 if i == j else 0) for j in range(hi.ngens))
                    for i in range(hi.ngens)
                )
                two_lo = tuple(
                    tuple((2 if i == j else 0) for j in range(lo.ngens))
                    for i in range(lo.ngens)
                )
                if t.compose(r).matrix != tower.GroupHom(hi, hi, two_hi).matrix:
                    failures.append({"n": n, "bidegree": (p, q), "s": s, "side": "t*r"})
                if r.compose(t).matrix != tower.GroupHom(lo, lo, two_lo).matrix:
                    failures.append({"n": n, "bidegree": (p, q), "s": s, "side": "r*t"})
    return _result(
        "s5.squares", "s5", failures,
        "coefficient inclusion after reduction is multiplication by 2",
    )


# ---------------------------------------------------------------------------
# s6: the 2-adic table against the independent tower route


def check_oracle_equivalence(opts: VerifyOptions) -> CheckResult:
    failures = []
    for n in range(1, min(opts.nmax, 5) + 1):
        computed = tower.etale_2adic(n, s_max=opts.smax, window=opts.window)
        table = rost.rost_etale_table(n).graded()
        a = [(e.degree, e.order, e.label, e.twist, e.algebraic) for e in computed.entries]
        b = [(e.degree, e.order, e.label, e.twist, e.algebraic) for e in table.entries]
        if a != b:
            failures.append({"n": n, "tower": a, "closed_form": b})
        expected_set = {(0, 0), (mod2.top_rho_exponent(n), 0)} | {
            (4 * m, 2) for m in range(1, 2 ** (n - 1))
        }
        got_set = {(e.degree, e.order) for e in computed.entries}
        if got_set != expected_set:
            failures.append({"n": n, "degree_order_set": sorted(got_set)})
    return _result(
        "C5", "s6", failures,
        "tower limit equals the closed-form table summand-by-summand (labels and flags included)",
    )


# ---------------------------------------------------------------------------
# s7: quadric decomposition, assembly, and the non-algebraic inventory


def check_decomposition_fixtures(opts: VerifyOptions) -> CheckResult:
    failures = []
    for n in range(2, opts.nmax + 1):
        minimal = quadrics.decompose_motive(2**n - 1)
        want = [(n, 0)] + [(n - 1, j) for j in range(1, 2 ** (n - 1))]
        if [(t.n, t.j) for t in minimal.terms] != want:
            failures.append({"d": 2**n - 1, "terms": minimal.render()})
        maximal = quadrics.decompose_motive(2 ** (n + 1) - 3)
        if [(t.n, t.j) for t in maximal.terms] != [(n, j) for j in range(2**n - 1)]:
            failures.append({"d": 2 ** (n + 1) - 3, "terms": maximal.render()})
        pfister = quadrics.decompose_motive(2 ** (n + 1) - 2)
        if [(t.n, t.j) for t in pfister.terms] != [(n, j) for j in range(2**n)]:
            failures.append({"d": 2 ** (n + 1) - 2, "terms": pfister.render()})

    def sweep(d):
        dec = quadrics.decompose_motive(d)
        ok = (
            dec.reconstructs()
            and all(a > b for a, b in zip(dec.expansion, dec.expansion[1:]))
            and dec.complex_rank() == (d + 1 if d % 2 else d + 2)
        )
        return None if ok else d

    bad = [d for d in opts.map(sweep, range(1, opts.dmax + 1)) if d is not None]
    if bad:
        failures.append({"sweep_failures": bad})
    return _result(
        "C6", "s7", failures,
        f"closed-form decompositions for n=2..{opts.nmax} and sweep invariants for d<=" f"{opts.dmax}",
    )


def check_boundary(opts: VerifyOptions) -> CheckResult:
    def probe(d):
        preds = quadrics.boundary_predicates(d)
        if len(set(preds)) != 1:
            return (d, "disagree", preds)
        if preds[0] != (d >= 7):
            return (d, "wrong side", preds)
        return None

    bad = [x for x in opts.map(probe, range(1, opts.dmax + 1)) if x is not None]
    return _result(
        "C7", "s7", bad,
        f"non-algebraic classes exist exactly for d>=7 (three agreeing predicates, d<={opts.dmax})",
    )


def check_norm_quadrics(opts: VerifyOptions) -> CheckResult:
    failures = []
    for n in range(3, opts.nmax + 1):
        verdict = quadrics.claim_norm_quadric(n)
        if not verdict.passed:
            failures.append(verdict.as_dict())
    return _result(
        "C8", "s7", failures,
        f"norm quadrics n=3..{opts.nmax}: 0 mod 4 degrees up to 2^(n+1)-12 are non-algebraic, free part algebraic",
    )


def check_neighbors(opts: VerifyOptions) -> CheckResult:
    failures = []
    for n in range(3, opts.nmax + 1):
        for kind in ("minimal", "maximal"):
            verdict = quadrics.claim_neighbor(kind, n)
            if not verdict.passed:
                failures.append(verdict.as_dict())
    return _result(
        "C9", "s7", failures,
        f"Pfister neighbors n=3..{opts.nmax}: 0 mod 4 degrees below 2d-8 are non-algebraic",
    )


_ASSEMBLY_FIXTURES = {
    3: {0: (1, ()), 2: (1, ()), 4: (1, (2,)), 6: (1, ())},
    6: {
        0: (1, ()), 2: (1, ()), 4: (1, (2,)), 6: (2, (2,)),
        8: (1, (2,)), 10: (1, (2,)), 12: (1, ()),
    },
    7: {
        0: (1, ()), 2: (1, ()), 4: (1, (2,)), 6: (1, (2,)),
        8: (1, (2, 2)), 10: (1, (2,)), 12: (1, (2,)), 14: (1, ()),
    },
}


def check_assembly_tables(opts: VerifyOptions) -> CheckResult:
    failures = []
    for d, want in _ASSEMBLY_FIXTURES.items():
        got = quadrics.assemble_cohomology(d).profiles()
        if got != want:
            failures.append({"d": d, "profiles": got})
    return _result("s7.tables", "s7", failures, "assembled tables match the frozen fixtures")


# ---------------------------------------------------------------------------
# s8: ring presentations against the assembly


def check_presentations(opts: VerifyOptions) -> CheckResult:
    failures = []
    for d in (3, 5, 6, 7, 15, 31):
        res = presentations.compare_with_assembly(d)
        if not res.passed:
            failures.append(res.as_dict())
    report = quadrics.nonalgebraic_report(7)
    if report.dims != ((4, 1),):
        failures.append({"d": 7, "quotient": report.dims})
    return _result(
        "C10", "s8", failures,
        "presentations match the assembly for d in {3,5,6,7,15,31}; the d=7 quotient is Z/2 in degree 4 only",
    )


# ---------------------------------------------------------------------------
# s9: the twisted flag variety of the rank-2 exceptional group


def check_flag_variety(opts: VerifyOptions) -> CheckResult:
    failures = []
    names = ("t1", "t2")
    weyl = presentations.RingPresentation(
        "F2",
        (("t1", 2), ("t2", 2)),
        (
            presentations.parse_poly("t1^2 + t1*t2 + t2^2", names),
            presentations.parse_poly("t2^3", names),
        ),
    )
    series = {d: len(presentations.graded_ranks(weyl, 6).at(d)) for d in (0, 2, 4, 6)}
    if series != {0: 1, 2: 2, 4: 2, 6: 1}:
        failures.append({"weyl_series": series})
    gt = presentations.graded_ranks(presentations.builtin_presentation("G2_GT_mod2"), 12)
    if gt.total_dim_mod2() != 12:
        failures.append({"gt_total": gt.total_dim_mod2()})
    chow = presentations.graded_ranks(
        presentations.builtin_presentation("G2_flag_chow_mod2"), 12
    )
    if chow.total_dim_mod2() != 18:
        failures.append({"chow_total": chow.total_dim_mod2()})
    etale = presentations.graded_ranks(presentations.builtin_presentation("G2_flag_etale"), 64)
    if etale.profile(4) != (2, (2,)):
        failures.append({"etale_deg4": etale.profile(4)})
    bad_orders = [
        (e.degree, e.order) for e in etale.torsion_entries if e.order != 2
    ]
    if bad_orders:
        failures.append({"etale_torsion": bad_orders})
    # torsion comes from the doubled degree-4 relation: per degree it has
    # the dimension of the Weyl quotient four degrees down
    weyl_table = presentations.graded_ranks(weyl, 8)
    for k in range(0, 16, 2):
        torsion_dim = len([e for e in etale.at(k) if e.order])
        shifted = len(weyl_table.at(k - 4)) if k >= 4 else 0
        if torsion_dim != shifted:
            failures.append({"torsion_bookkeeping": {"degree": k, "dim": torsion_dim}})
    return _result(
        "C11", "s9", failures,
        "flag-variety dimensions 6/12/18, degree 4 is Z2^2 + Z/2, and all torsion through degree 64 is Z/2",
    )


# ---------------------------------------------------------------------------
# the runner


_CHECKS: tuple[tuple[str, Callable[[VerifyOptions], CheckResult]], ...] = (
    ("s2", check_mod2_rings),
    ("s3", check_pairing_fixtures),
    ("s3", check_torsion_ladder),
    ("s3", check_twist_remark),
    ("s4", check_z4_table),
    ("s4", check_les_identity),
    ("s5", check_tower_pattern),
    ("s5", check_limits),
    ("s5", check_factorization_squares),
    ("s6", check_oracle_equivalence),
    ("s7", check_decomposition_fixtures),
    ("s7", check_boundary),
    ("s7", check_norm_quadrics),
    ("s7", check_neighbors),
    ("s7", check_assembly_tables),
    ("s8", check_presentations),
    ("s9", check_flag_variety),
)

SCOPES = ("all",) + tuple(sorted({scope for scope, _ in _CHECKS}))


def run_checks(scope: str = "all", opts: Optional[VerifyOptions] = None) -> list[CheckResult]:
    if opts is None:
        opts = VerifyOptions()
    if scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}; choose one of {', '.join(SCOPES)}")
    results = []
    for check_scope, fn in _CHECKS:
        if scope in ("all", check_scope):
            results.append(fn(opts))
    return results
