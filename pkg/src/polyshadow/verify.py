"""Verification suites: every closed form checked against an independent route.

Each suite returns a :class:`~polyshadow.report.VerificationReport`. Random
inputs for suite ``s`` and dimension ``n`` come from ``substream(seed, id(s), n)``
so suites can run alone or together and produce the same cases.
"""
import math
import time

import numpy as np

from . import closedform as cf
from . import extremal as ex
from . import lpbodies as lp
from . import oracle as orc
from . import sections as sec
from .linalg import Direction, OrthoPair, orthobasis_of_complement, sample_directions, sample_pairs, substream
from .report import VerificationReport

SUITE_IDS = {
    "simplex-hyperplane": 1,
    "cube-hyperplane": 2,
    "cube-planar": 3,
    "duality": 4,
    "mahler": 5,
    "nazarov": 6,
    "lp-reduction": 7,
    "width": 8,
    "extremal": 9,
    "fp": 10,
}


def _rng(suite, n, seed, extra=0):
    return substream(seed, SUITE_IDS[suite], n, extra)


def simplex_shadow_basis(a):
    """Orthonormal basis of a^perp inside the zero-sum hyperplane."""
    a = np.asarray(a, dtype=float)
    m = a.size
    return orthobasis_of_complement(np.vstack([a, np.full(m, 1 / math.sqrt(m))]))


def simplex_shadow_oracle(a, samples=200_000, seed=0):
    """Shadow (n-1)-volume of the simplex by brute force: exact for n = 3, MC above."""
    a = np.asarray(a, dtype=float)
    n = a.size - 1
    P = orc.standard_body("simplex", n)
    B = simplex_shadow_basis(a)
    if n == 3:
        return orc.hull_area_2d(orc.shadow_vertices(P, B))[0], 0.0
    est = orc.shadow_volume_mc(P, B, samples, seed)
    return est.value, est.stderr


def suite_simplex_hyperplane(n_range=(3, 5), trials=1000, samples=200_000, seed=0, mc_trials=20):
    rep = VerificationReport("simplex-hyperplane", seed)
    exact = VerificationReport("simplex-hyperplane/exact-2d", seed)
    mc = VerificationReport("simplex-hyperplane/monte-carlo", seed, min_pass_fraction=0.95)
    rep.children = [exact, mc]
    P3 = orc.standard_body("simplex", 3)
    for n in range(n_range[0], n_range[1] + 1):
        if n == 3:
            A = sample_directions(trials, 4, True, _rng(rep.suite, 3, seed))
            for t, a in enumerate(A):
                area = orc.hull_area_2d(orc.shadow_vertices(P3, simplex_shadow_basis(a)))[0]
                exact.add({"n": 3, "trial": t}, cf.simplex_hyperplane_shadow(Direction(a, True)), area, 1e-9)
        elif 4 <= n <= 7:
            A = sample_directions(mc_trials, n + 1, True, _rng(rep.suite, n, seed))
            for t, a in enumerate(A):
                est = orc.shadow_volume_mc(orc.standard_body("simplex", n), simplex_shadow_basis(a),
                                           samples, seed=seed * 1000 + 100 * n + t)
                mc.add({"n": n, "trial": t, "samples": samples, "stderr": est.stderr},
                       cf.simplex_hyperplane_shadow(Direction(a, True)), est.value, 4 * est.stderr)
    return rep


def suite_cube_hyperplane(n_range=(3, 50), trials=1000, samples=0, seed=0):
    rep = VerificationReport("cube-hyperplane", seed)
    cube3 = orc.standard_body("cube", 3)
    for n in range(n_range[0], n_range[1] + 1):
        A = sample_directions(trials, n, False, _rng(rep.suite, n, seed))
        vals = np.abs(A).sum(axis=1)
        if n == 3:
            for t, a in enumerate(A):
                B = orthobasis_of_complement(a[None, :])
                area = orc.hull_area_2d(orc.shadow_vertices(cube3, B))[0]
                rep.add({"n": 3, "trial": t}, cf.cube_hyperplane_shadow(Direction(a)), area, 1e-9)
        rep.add({"n": n, "bound": "lower", "trials": trials}, vals.min(), 1.0, 1e-12, "ge")
        rep.add({"n": n, "bound": "upper", "trials": trials}, vals.max(), math.sqrt(n), 1e-12, "le")
    return rep


def suite_cube_planar(n_range=(2, 8), trials=1000, samples=0, seed=0, trig_max=50):
    rep = VerificationReport("cube-planar", seed)
    for n in range(n_range[0], n_range[1] + 1):
        cube = orc.standard_body("cube", n)
        for t, (u, v) in enumerate(sample_pairs(trials, n, _rng(rep.suite, n, seed))):
            pair = OrthoPair(u, v)
            rep.add({"n": n, "trial": t}, cf.cube_planar_shadow(pair), orc.shadow_area_2d(cube, pair), 1e-9)
            M = np.outer(u, v) - np.outer(v, u)
            rep.add({"n": n, "trial": t, "check": "lagrange"}, (M[np.triu_indices(n, 1)] ** 2).sum(), 1.0, 1e-12)
        eye = np.eye(n)
        rep.add({"n": n, "pair": "e1,e2"}, cf.cube_planar_shadow(OrthoPair(eye[0], eye[1])), 1.0, 0.0)
        rep.add({"n": n, "pair": f"e{n},-e1"}, cf.cube_planar_shadow(OrthoPair(eye[-1], -eye[0])), 1.0, 0.0)
    for n in range(2, trig_max + 1):
        rep.add({"n": n, "pair": "trig"}, cf.cube_planar_shadow(ex.trig_pair(n)),
                1 / math.tan(math.pi / (2 * n)), 1e-9)
    return rep


def suite_duality(n_range=(2, 8), trials=100, samples=0, seed=0):
    rep = VerificationReport("duality", seed)
    for n in range(n_range[0], n_range[1] + 1):
        pairs = [ex.trig_pair(n)] + [OrthoPair(u, v) for u, v in sample_pairs(trials, n, _rng(rep.suite, n, seed))]
        for t, pair in enumerate(pairs):
            case = sec.shadow_section_duality_check(pair, seed).cases[0]
            rep.add({"n": n, "trial": t - 1 if t else "trig"}, case["formula_value"], 0.0, case["tolerance"])
    return rep


def suite_mahler(n_range=(3, 8), trials=100, samples=0, seed=0):
    rep = VerificationReport("mahler", seed)
    for n in range(n_range[0], n_range[1] + 1):
        pairs = [OrthoPair(u, v) for u, v in sample_pairs(trials, n, _rng(rep.suite, n, seed))]
        for t, pair in enumerate(pairs):
            poly = sec.cross_section_polygon(pair)
            k = poly.k
            rep.add({"n": n, "trial": t, "k": k}, sec.mahler_product(poly.polygon),
                    4 * k * k * math.sin(math.pi / (2 * k)) ** 2, 1e-9, "le")
            for case in sec.mahler_chain_check(pair, seed).cases:
                rep.add(dict(n=n, trial=t, step=case["inputs"]["step"]), case["formula_value"],
                        case["oracle_value"], case["tolerance"], case["check"])
        trig = ex.trig_pair(n)
        A = sec.polygon_area(sec.cross_section_polygon(trig).polygon)
        S = orc.shadow_area_2d(orc.standard_body("cube", n), trig)
        rep.add({"n": n, "pair": "trig", "step": "A*S equality"}, A * S,
                n * n * math.sin(math.pi / (2 * n)) ** 2, 1e-8)
    return rep


def suite_nazarov(n_range=(3, 12), trials=100, samples=0, seed=0):
    rep = VerificationReport("nazarov", seed)
    for n in range(max(3, n_range[0]), n_range[1] + 1):
        bound = sec.nazarov_bound(n)
        areas = [sec.polygon_area(sec.cross_section_polygon(OrthoPair(u, v)).polygon)
                 for u, v in sample_pairs(trials, n, _rng(rep.suite, n, seed))]
        rep.add({"n": n, "trials": trials, "stat": "min area"}, min(areas), bound, 1e-9, "ge")
        trig = sec.polygon_area(sec.cross_section_polygon(ex.trig_pair(n)).polygon)
        rep.add({"n": n, "pair": "trig"}, trig, bound, 1e-6)
    return rep


def suite_lp_reduction(n_range=(2, 8), trials=100, samples=100_000, seed=0,
                       mc_n=12, mc_trials=100, ps=(1.0, 1.5, 2.0, 3.0)):
    rep = VerificationReport("lp-reduction", seed)
    mc = VerificationReport("lp-reduction/cross-monte-carlo", seed, min_pass_fraction=0.95)
    rep.children = [mc]
    for n in range(max(2, n_range[0]), n_range[1] + 1):
        rng = _rng(rep.suite, n, seed)
        facets = {t: cf.facet_data(t, n) for t in cf.BODY_TAGS}
        hvals = {t: lp.support_values(facets[t], orc.standard_body(t, n).vertices) for t in cf.BODY_TAGS}
        for t in range(trials):
            a = Direction(sample_directions(1, n, False, rng)[0])
            z = Direction(sample_directions(1, n + 1, True, rng)[0], True)
            rep.add({"n": n, "trial": t, "body": "cube", "p": 1}, lp.lp_cube_support_p(a, 1),
                    cf.cube_hyperplane_shadow(a), 1e-12)
            rep.add({"n": n, "trial": t, "body": "cross", "p": 1}, lp.lp_cross_support_p(a, 1),
                    cf.cauchy_shadow(facets["cross"], a), 1e-12)
            rep.add({"n": n, "trial": t, "body": "simplex", "p": 1}, lp.lp_simplex_support_p(z, 1),
                    cf.simplex_hyperplane_shadow(z), 1e-12)
            rep.add({"n": n, "trial": t, "body": "cube", "p": 2}, lp.lp_cube_support_p(a, 2), 2.0, 1e-12)
            for p in ps:
                rep.add({"n": n, "trial": t, "body": "cube", "p": p, "route": "facets"},
                        lp.lp_support_via_facets(facets["cube"], hvals["cube"], a, p),
                        lp.lp_cube_support_p(a, p), 1e-10)
                rep.add({"n": n, "trial": t, "body": "cross", "p": p, "route": "facets"},
                        lp.lp_support_via_facets(facets["cross"], hvals["cross"], a, p),
                        lp.lp_cross_support_p(a, p), 1e-10)
                rep.add({"n": n, "trial": t, "body": "simplex", "p": p, "route": "facets"},
                        lp.lp_support_via_facets(facets["simplex_centered"], hvals["simplex_centered"], z, p),
                        lp.lp_simplex_support_p(z, p), 1e-10)
    if mc_trials:
        rng = _rng(rep.suite, mc_n, seed, 1)
        for t in range(mc_trials):
            a = Direction(sample_directions(1, mc_n, False, rng)[0])
            p = (1.0, 1.5, 3.0)[t % 3]
            exact = lp.rademacher_moment(a, p, "exact")
            est = lp.rademacher_moment(a, p, "mc", samples, seed=seed * 1000 + t)
            mc.add({"n": mc_n, "trial": t, "p": p, "stderr": est.stderr}, exact.value, est.value, 4 * est.stderr)
    return rep


def suite_width(n_range=(2, 10), trials=1000, samples=0, seed=0):
    rep = VerificationReport("width", seed)
    for n in range(max(2, n_range[0]), n_range[1] + 1):
        const = math.sqrt(n + 1) / cf.factorial(n - 1)
        ratios = []
        products = []
        for a in sample_directions(trials, n + 1, True, _rng(rep.suite, n, seed)):
            d = Direction(a, True)
            ratios.append(cf.width_projection_ratio(d))
            products.append(cf.simplex_width(d) * cf.simplex_gauge_diff_body(d))
        ratios = np.array(ratios)
        rep.add({"n": n, "stat": "max |ratio - const|"}, np.abs(ratios - const).max(), 0.0, 1e-12)
        rep.add({"n": n, "stat": "ratio spread"}, ratios.max() - ratios.min(), 0.0, 1e-12)
        rep.add({"n": n, "stat": "min width*gauge"}, min(products), 1.0, 1e-12, "ge")
        wmin, wmax = ex.simplex_extremal_widths(n)
        for res in (wmin, wmax):
            arg = res.argument
            rep.add({"n": n, "extremizer": res.kind, "stat": "width*gauge"},
                    cf.simplex_width(arg) * cf.simplex_gauge_diff_body(arg), 1.0, 1e-10)
            rep.add({"n": n, "extremizer": res.kind, "stat": "width"}, res.value, cf.simplex_width(arg), 1e-10)
            rep.add({"n": n, "extremizer": res.kind, "stat": "1/gauge"}, res.value,
                    1 / cf.simplex_gauge_diff_body(arg), 1e-10)
    return rep


def suite_extremal(n_range=(2, 10), trials=200, samples=0, seed=0):
    """Numeric search against the closed-form simplex extremal volumes; trials = restarts."""
    rep = VerificationReport("extremal", seed)
    for n in range(max(2, n_range[0]), n_range[1] + 1):
        scale = 0.5 * math.sqrt(n + 1) / cf.factorial(n - 1)
        for res in ex.simplex_extremal_volumes(n):
            rep.add({"n": n, "kind": res.kind, "stat": "closed form at argument"}, res.value,
                    cf.simplex_hyperplane_shadow(res.argument), 1e-12)
            found = ex.numeric_search("l1", n + 1, "zero_sum_unit_sphere", res.kind, trials,
                                      seed=seed * 100 + n)
            rep.add({"n": n, "kind": res.kind, "stat": "numeric value"}, res.value, scale * found.value, 1e-6)
            gap = np.abs(ex.canonicalize(found.argument) - ex.canonicalize(res.argument)).max()
            rep.add({"n": n, "kind": res.kind, "stat": "argument Linf"}, gap, 0.0, 1e-4)
    return rep


def robin_hood_pair(y, rng, steps=3):
    """(x, y) with x majorized by y, built by averaging transfers between coordinates."""
    x = np.array(y, dtype=float)
    for _ in range(steps):
        i, j = rng.choice(x.size, 2, replace=False)
        lam = rng.random()
        xi, xj = x[i], x[j]
        x[i], x[j] = lam * xi + (1 - lam) * xj, lam * xj + (1 - lam) * xi
    return x, np.asarray(y, dtype=float)


def suite_fp(n_range=(3, 8), trials=100_000, samples=0, seed=0, ps=(1.2, 1.5, 3.0, 4.0), pairs=1000):
    rep = VerificationReport("fp", seed)
    for m in range(max(2, n_range[0]), n_range[1] + 1):
        A = sample_directions(trials, m, False, _rng(rep.suite, m, seed))
        for p in ps:
            F = (np.abs(A) ** p).sum(axis=1)
            lo, hi = ex.fp_extrema_sphere(m, p)
            rep.add({"m": m, "p": p, "stat": "sample max"}, F.max(), hi.value, 1e-9, "le")
            rep.add({"m": m, "p": p, "stat": "sample min"}, F.min(), lo.value, 1e-9, "ge")
    rng = _rng(rep.suite, 0, seed, 1)
    funcs = {"t^2": np.square, "|t|^3": ex.abs_power(3), "exp": np.exp, "|t|^1.5": ex.abs_power(1.5)}
    names = list(funcs)
    gaps = []
    for t in range(pairs):
        m = int(rng.integers(2, 9))
        y = rng.standard_normal(m)
        x, y = robin_hood_pair(y, rng)
        gaps.append(ex.karamata_gap(x, y, funcs[names[t % len(names)]]))
    rep.add({"pairs": pairs, "stat": "min Karamata gap"}, min(gaps), 0.0, 1e-10, "ge")
    for m in range(3, 9):
        for p in (3.0, 4.0):
            a = sample_directions(1, m, False, rng)[0]
            sq = a * a
            g_hi = ex.karamata_gap(sq, np.eye(m)[0], ex.abs_power(p / 2))
            g_lo = ex.karamata_gap(np.full(m, 1 / m), sq, ex.abs_power(p / 2))
            rep.add({"m": m, "p": p, "stat": "gap to e1"}, g_hi, 0.0, 1e-10, "ge")
            rep.add({"m": m, "p": p, "stat": "gap from flat"}, g_lo, 0.0, 1e-10, "ge")
            rep.add({"m": m, "p": p, "stat": "endpoint gap"},
                    ex.karamata_gap(np.full(m, 1 / m), np.eye(m)[0], ex.abs_power(p / 2)),
                    1 - m ** (1 - p / 2), 1e-12)
    return rep


SUITES = {
    "simplex-hyperplane": suite_simplex_hyperplane,
    "cube-hyperplane": suite_cube_hyperplane,
    "cube-planar": suite_cube_planar,
    "duality": suite_duality,
    "mahler": suite_mahler,
    "nazarov": suite_nazarov,
    "lp-reduction": suite_lp_reduction,
    "width": suite_width,
    "extremal": suite_extremal,
    "fp": suite_fp,
}


def run_suite(name, n_range=None, trials=None, samples=None, seed=0, timing=False):
    """Run one suite (or ``all``); ``None`` arguments fall back to each suite's defaults."""
    t0 = time.perf_counter()
    if name == "all":
        rep = VerificationReport("all", seed)
        rep.children = [run_suite(s, n_range, trials, samples, seed, timing) for s in SUITES]
    else:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES) + ['all']}")
        kwargs = {"seed": seed}
        if n_range is not None:
            kwargs["n_range"] = tuple(n_range)
        if trials is not None:
            kwargs["trials"] = trials
        if samples is not None:
            kwargs["samples"] = samples
        rep = SUITES[name](**kwargs)
    if timing:
        rep.wall_time_s = time.perf_counter() - t0
    return rep
