"""Seeded randomized property sweeps.

Run ``i`` of a sweep draws everything from ``random.Random(f"{prop}:{seed}:{i}")``,
so the report depends only on the arguments, never on how runs are
distributed over worker processes.
"""

import random
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache

from .cochains import (
    CochainSpace,
    delta_d_operator,
    gimel_operator,
    tertiary_space,
)
from .deform import (
    DeformationSeries,
    ProductFamilySeries,
    check_sdgen,
    check_tertass,
    cocycle_check,
    derivations,
    exp_series,
    extend_step,
    extract_obstruction,
    formula_obstruction,
    gauge_class_check,
    gauge_transform,
    s3_obstruction,
    sdgen_residual,
    tert_cocycle_check,
    tert_extend_step,
    tert_gauge_check,
    tert_gauge_transform,
    tertass_residual,
)
from .fields import field_from_name
from .presets import preset_algebra, preset_quintuple

COMMUTATIVE_PRESETS = ("k", "dual_numbers", "truncated_poly_3", "k_x_k", "group_z2")
SWEEP_QUINTUPLES = ("trivial:k", "trivial", "dual_identity", "dual_embed")


@lru_cache(maxsize=None)
def _algebra(name, field_name):
    return preset_algebra(name, field_from_name(field_name))


@lru_cache(maxsize=None)
def _quintuple(name, field_name):
    return preset_quintuple(name, field_from_name(field_name))


def random_combination(vectors, space, rng):
    """A random linear combination of cochains in ``space`` (zero for an empty list)."""
    F = space.field
    acc = space.zero()
    for v in vectors:
        acc = acc + F.random(rng) * v
    return acc


def random_outside(op, rng, tries=50):
    """A random source cochain with nonzero image, or None if the operator looks like zero."""
    for _ in range(tries):
        f = op.source.random(rng)
        if not op(f).is_zero():
            return f
    return None


def _sphere_setup(rng, cfg):
    name = rng.choice(COMMUTATIVE_PRESETS)
    d = cfg["d"] or rng.randint(1, cfg["max_d"])
    return name, _algebra(name, cfg["field"]), d


def _random_cocycle(A, d, rng):
    op = delta_d_operator(A, d)
    return random_combination(op.kernel(), op.source, rng)


def _fmt_bool(b):
    return "yes" if b else "no"


# --------------------------------------------------------------------------
# properties: each takes (rng, cfg) and returns (ok, detail)


def prop_composition(rng, cfg):
    """Whenever u satisfies the d = 1 and d = 2 conditions it satisfies d = 3."""
    name = rng.choice(COMMUTATIVE_PRESETS)
    A = _algebra(name, cfg["field"])
    N = cfg["order"]
    sp = CochainSpace(A, 1)
    kind = rng.choice(("exp", "scaled_exp", "random"))
    if kind != "random" and A.field.characteristic and A.field.characteristic < N:
        kind = "random"
    if kind == "random":
        u = DeformationSeries(A, 1, N, [sp.random(rng) for _ in range(N - 1)])
    else:
        D = random_combination(derivations(A), sp, rng)
        u = exp_series(D, 1, N)
        if kind == "scaled_exp":
            # u(a) = c(t) exp(tD)(a) with c_0 = 1
            c = [A.field.one] + [A.field.random(rng) for _ in range(N - 1)]
            E = [None] + list(u.terms)
            terms = []
            for i in range(1, N):
                acc = c[i] * _identity(sp)
                for j in range(i):
                    acc = acc + c[j] * E[i - j]
                terms.append(acc)
            u = u.with_terms(terms)
    passes = [check_sdgen(u, d=d).ok for d in (1, 2, 3)]
    ok = not (passes[0] and passes[1]) or passes[2]
    detail = f"{name} {kind} d1={_fmt_bool(passes[0])} d2={_fmt_bool(passes[1])} d3={_fmt_bool(passes[2])}"
    return ok, detail


def _identity(sp):
    A = sp.A
    return sp.from_function(lambda tup: A.basis[tup[0]])


def prop_obstruction(rng, cfg):
    """Series extraction agrees with the product formula (and the 3-sphere products) for random u."""
    name, A, d = _sphere_setup(rng, cfg)
    N = cfg["order"]
    sp = CochainSpace(A, 1)
    u = DeformationSeries(A, d, N, [sp.random(rng) for _ in range(N - 1)])
    for n in range(1, N - 1):
        ex = extract_obstruction(u, n)
        if formula_obstruction(u, n) != ex:
            return False, f"{name} d={d} n={n} product formula differs"
        if d == 3 and s3_obstruction(u, n) != ex:
            return False, f"{name} d={d} n={n} 3-sphere products differ"
    return True, f"{name} d={d} orders 2..{N - 1} agree"


def prop_extension(rng, cfg):
    """Every reported extension satisfies the condition at the next order (independent re-check)."""
    name, A, d = _sphere_setup(rng, cfg)
    N = cfg["order"]
    u = DeformationSeries(A, d, N, [_random_cocycle(A, d, rng)])
    steps = []
    for n in range(1, N - 1):
        ext = extend_step(u, n)
        if ext is None:
            steps.append("obstructed")
            break
        # perturb by a random kernel element to explore the affine solution set
        term = ext.term + random_combination(ext.gauge_freedom, ext.term.space, rng)
        u = u.with_terms(list(ext.series.terms[:-1]) + [term])
        if not check_sdgen(u, n + 2).ok:
            return False, f"{name} d={d} n={n} residual nonzero after extension"
        steps.append("extended")
    return True, f"{name} d={d} " + ",".join(steps)


def prop_tert_extension(rng, cfg):
    qname = rng.choice(SWEEP_QUINTUPLES)
    Q = _quintuple(qname, cfg["field"])
    N = cfg["order"]
    op = gimel_operator(Q, 2)
    M = ProductFamilySeries(Q, N, [random_combination(op.kernel(), op.source, rng)])
    steps = []
    for n in range(1, N - 1):
        ext = tert_extend_step(M, n)
        if ext is None:
            steps.append("obstructed")
            break
        term = ext.term + random_combination(ext.gauge_freedom, ext.term.space, rng)
        M = M.with_terms(list(ext.series.terms[:-1]) + [term])
        if not check_tertass(M, n + 2).ok:
            return False, f"{qname} n={n} residual nonzero after extension"
        steps.append("extended")
    return True, f"{qname} " + ",".join(steps)


def prop_cocycle(rng, cfg):
    """Kernel samples pass the cocycle check; non-kernel samples fail with a verified witness."""
    name, A, d = _sphere_setup(rng, cfg)
    op = delta_d_operator(A, d)
    u1 = _random_cocycle(A, d, rng)
    if not cocycle_check(u1, d).ok:
        return False, f"{name} d={d} kernel sample rejected"
    if not check_sdgen(DeformationSeries(A, d, 2, [u1])).ok:
        return False, f"{name} d={d} kernel sample violates the condition mod t^2"
    bad = random_outside(op, rng)
    if bad is None:
        return True, f"{name} d={d} kernel accepted; operator is zero"
    res = cocycle_check(bad, d)
    if res.ok:
        return False, f"{name} d={d} non-kernel sample accepted"
    args = [A.basis[i] for i in res.witness]
    residual = sdgen_residual(DeformationSeries(A, d, 2, [bad]), args)
    if not any(residual.coeffs[1]) or not any(op(bad).value(res.witness)):
        return False, f"{name} d={d} witness {res.witness} does not verify"
    return True, f"{name} d={d} kernel accepted; witness {res.witness}"


def prop_tert_cocycle(rng, cfg):
    qname = rng.choice(SWEEP_QUINTUPLES)
    Q = _quintuple(qname, cfg["field"])
    op = gimel_operator(Q, 2)
    c1 = random_combination(op.kernel(), op.source, rng)
    if not tert_cocycle_check(c1, Q).ok:
        return False, f"{qname} kernel sample rejected"
    if not check_tertass(ProductFamilySeries(Q, 2, [c1])).ok:
        return False, f"{qname} kernel sample violates associativity mod t^2"
    bad = random_outside(op, rng)
    if bad is None:
        return True, f"{qname} kernel accepted; operator is zero"
    res = tert_cocycle_check(bad, Q)
    if res.ok:
        return False, f"{qname} non-kernel sample accepted"
    args = tertiary_space(Q, 3, 3, 4).basis_args(res.witness)
    residual = tertass_residual(ProductFamilySeries(Q, 2, [bad]), args)
    if not any(residual.coeffs[1]) or not any(op(bad).value(res.witness)):
        return False, f"{qname} witness {res.witness} does not verify"
    return True, f"{qname} kernel accepted; witness {res.witness}"


def prop_gauge(rng, cfg):
    """First-order coefficients of gauge-equivalent deformations lie in the same class."""
    name, A, d = _sphere_setup(rng, cfg)
    N = cfg["order"]
    sp = CochainSpace(A, 1)
    u = DeformationSeries(A, d, N, [_random_cocycle(A, d, rng)] + [sp.random(rng) for _ in range(N - 2)])
    f = [sp.random(rng) for _ in range(N - 1)]
    w = gauge_transform(u, f)
    ok = gauge_class_check(u.term(1), w.term(1), d)
    return ok, f"{name} d={d} same class={_fmt_bool(ok)}"


def prop_tert_gauge(rng, cfg):
    qname = rng.choice(SWEEP_QUINTUPLES)
    Q = _quintuple(qname, cfg["field"])
    N = cfg["order"]
    op = gimel_operator(Q, 2)
    sp2 = tertiary_space(Q, 2, 1, 1)
    M = ProductFamilySeries(Q, N, [random_combination(op.kernel(), op.source, rng)]
                            + [sp2.random(rng) for _ in range(N - 2)])
    sp1 = CochainSpace(Q.A, 1)
    f = [sp1.random(rng) for _ in range(N - 1)]
    P = tert_gauge_transform(M, f)
    ok = tert_gauge_check(M.term(1), P.term(1), Q)
    return ok, f"{qname} same class={_fmt_bool(ok)}"


PROPERTIES = {
    "composition": prop_composition,
    "obstruction": prop_obstruction,
    "extension": prop_extension,
    "tert-extension": prop_tert_extension,
    "cocycle": prop_cocycle,
    "tert-cocycle": prop_tert_cocycle,
    "gauge": prop_gauge,
    "tert-gauge": prop_tert_gauge,
}


def run_one(prop, seed, i, cfg):
    rng = random.Random(f"{prop}:{seed}:{i}")
    return PROPERTIES[prop](rng, cfg)


def _run_star(job):
    return run_one(*job)


def run_sweep(prop, runs, seed=0, field="Q", order=4, d=None, max_d=4, jobs=1):
    """Results ``[(ok, detail), ...]`` in run order."""
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property {prop!r}; known: {', '.join(PROPERTIES)}")
    if order < 2:
        raise ValueError("truncation order must be at least 2")
    if max_d < 1 or (d is not None and d < 1):
        raise ValueError("sphere dimension must be at least 1")
    cfg = {"field": field_from_name(field).name, "order": order, "d": d, "max_d": max_d}
    job_list = [(prop, seed, i, cfg) for i in range(runs)]
    if jobs <= 1:
        return [_run_star(j) for j in job_list]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_star, job_list, chunksize=max(1, runs // (4 * jobs))))


def sweep_report(prop, runs, seed=0, field="Q", order=4, d=None, max_d=4, jobs=1):
    """Report text and overall success.  ``jobs`` never changes the text."""
    results = run_sweep(prop, runs, seed, field, order, d, max_d, jobs)
    width = len(str(max(runs - 1, 0)))
    dtext = "random" if d is None else str(d)
    lines = [f"sweep {prop} runs={runs} seed={seed} field={field_from_name(field).name} order={order} d={dtext}"]
    for i, (ok, detail) in enumerate(results):
        lines.append(f"run {i:0{width}d} {'ok  ' if ok else 'FAIL'} {detail}")
    passed = sum(ok for ok, _ in results)
    lines.append(f"{passed}/{runs} runs passed")
    return "\n".join(lines) + "\n", passed == runs
