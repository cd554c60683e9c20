"""Acceptance criteria 1-10; each test records one PASS/FAIL line shown in the run summary."""

import subprocess
import sys
import time

import pytest
from conftest import PAIRS, SMALL, bm, context, nv, nw, record, v_matrix

from jonesbm.algebra import (
    Partition,
    check_bose_mesner,
    check_duality,
    induced,
    kasami_target,
    kasami_valencies,
    quotient,
    valency_subset_sum,
)
from jonesbm.corpus import jones_pairs, potts_raw, strict_spin_models, twisted_pairs, type2_examples
from jonesbm.linalg import Mat, is_type2, schur, schur_inverse, transpose
from jonesbm.nomura import check_jones_pair, check_spin_model, nomura_single
from jonesbm.scalar import Cyc
from jonesbm.yamada import (
    bm_subscheme,
    build_v,
    nwt_subscheme,
    pi_cells,
    pi_prime_cells,
    r_space,
    theta_v_on_bm,
    theta_v_readoff,
    v_as_bm,
)

NAMES = sorted(PAIRS)


def _type2_two_ways(W: Mat) -> tuple[bool, bool]:
    # matrix route: W Sinv(W)^T = nI; summation route: sum_k W_ik / W_jk = n delta_ij
    n = W.n
    if any(x.is_zero() for r in W.rows for x in r):
        return is_type2(W), False
    summed = all(
        sum((W[i, k] / W[j, k] for k in range(n)), Cyc.rational(0)) == (n if i == j else 0)
        for i in range(n)
        for j in range(n)
    )
    return is_type2(W), summed


def test_criterion_1_corpus_predicates():
    t0 = time.perf_counter()
    failures = []
    for p in jones_pairs() + twisted_pairs():
        v = check_jones_pair(p.A, p.B)
        if not (v.operator_route and v.summation_route and v.invertible):
            failures.append(p.name)
    for name, W in type2_examples().items():
        if _type2_two_ways(W) != (True, True):
            failures.append(name)
    for name, W in strict_spin_models().items():
        v = check_spin_model(W)
        if not (v.is_spin_model and v.routes_agree and all(s == o for s, o in v.strict.values())):
            failures.append(name)
    # [[1, i], [i, 1]]: eigenvector route (W in N_W) and summation route (constant star-triangle ratio)
    v = check_spin_model(potts_raw())
    if not (v.type2 and v.in_own_nomura and v.ratio_constant):
        failures.append("potts2")
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 5.0
    n_items = len(jones_pairs()) * 2 + len(type2_examples()) + len(strict_spin_models()) + 1
    record(1, ok, f"{n_items} corpus items, both routes, {elapsed:.2f}s" + (f"; failed: {failures}" if failures else ""))
    assert not failures
    assert elapsed < 5.0


def test_criterion_2_dimension_ladder():
    rows = []
    ok = True
    for name in NAMES:
        ctx = context(name)
        r = ctx.r
        rep = nw(name)
        dims = (bm(name).dim, rep.nw.dim, rep.nwt.dim, ctx.NAB.dim)
        good = dims == (3 * r, 2 * r, 2 * r, r)
        ok &= good
        rows.append(f"{name}: r={r} B={dims[0]} NW={dims[1]} NWT={dims[2]} NAB={dims[3]}")
    record(2, ok, "; ".join(rows))
    assert ok


PERTURBATION_FACTORS = (2, Cyc.rational(1) / 2, 3, Cyc.rational(1) / 3, -2)
MIN_PERTURBATIONS = 5


def _perturbations(B: Mat):
    # every single entry scaled by 2; small orders also use further factors to reach the minimum count
    n = B.n
    k = -(-MIN_PERTURBATIONS // (n * n))
    for f in PERTURBATION_FACTORS[:k]:
        for i in range(n):
            for j in range(n):
                yield schur(B, Mat([[f if (a, b) == (i, j) else 1 for b in range(n)] for a in range(n)]))


def test_criterion_3_v_spin_equivalence():
    spin_ok = True
    falsified = total = 0
    fewest = None
    for name in NAMES:
        ctx = context(name)
        D = 2 * ctx.d  # V has order 4n, so its loop variable is sqrt(4n) = 2d
        v = check_spin_model(v_matrix(name), D)
        spin_ok &= v.is_spin_model and v.routes_agree
        count = 0
        for B2 in _perturbations(ctx.B):
            total += 1
            count += 1
            jp = check_jones_pair(ctx.A, B2, ctx.d)
            sv = check_spin_model(build_v(ctx.A, B2, ctx.d), D)
            if not jp.is_jones_pair and not sv.is_spin_model:
                falsified += 1
        fewest = count if fewest is None else min(fewest, count)
    ok = spin_ok and falsified == total and fewest >= MIN_PERTURBATIONS
    record(
        3,
        ok,
        f"V {'is' if spin_ok else 'is NOT'} a spin model on every context; "
        f"{falsified}/{total} single-entry perturbations of B rejected by both checks, at least {fewest} per context",
    )
    assert ok


def test_criterion_4_theta_v_of_v():
    good = []
    for name in NAMES:
        ctx = context(name)
        V = v_matrix(name)
        want = schur_inverse(V).scale(2 * ctx.d)
        both = theta_v_on_bm(ctx, v_as_bm(ctx), "both", V)
        good.append(both.assembled == want and theta_v_readoff(ctx, V, V) == want)
    ok = all(good)
    record(4, ok, f"Theta_V(V) = 2d Sinv(V) by closed form and read-off on {sum(good)}/{len(good)} contexts")
    assert ok


def test_criterion_5_quotients_and_induced_schemes():
    details = []
    ok = True
    for name in NAMES:
        ctx = context(name)
        n, r = ctx.n, ctx.r
        rep = nw(name)
        B = bm(name)
        q1 = quotient(rep.nw, Partition.from_cells(pi_cells(n)))
        q2 = quotient(B, Partition.from_cells(pi_prime_cells(n)))
        i1, v1 = induced(rep.nwt, range(n))
        i2, v2 = induced(B, range(2 * n))
        s1, s2 = bm_subscheme(ctx), nwt_subscheme(ctx)
        checks = [
            q1 is not None and q1 == ctx.NA.space,
            q2 is not None and q2 == rep.nwt,
            i1 == ctx.NA.image() and v1.passed,
            i2 == rep.nw and v2.passed,
            check_bose_mesner(s1).passed and s1.dim == 2 * r + 1,
            check_bose_mesner(s2).passed and s2.dim == r + 1,
            rep.nw_matches and rep.nwt_matches,
        ]
        ok &= all(checks)
        details.append(f"{name}:{sum(checks)}/{len(checks)}")
    record(5, ok, "quotients, induced schemes, subschemes " + " ".join(details))
    assert ok


def test_criterion_6_duality_suite():
    ok = True
    parts = []
    for name in NAMES:
        ctx = context(name)
        NAt = nomura_single(transpose(ctx.A))
        d1 = check_duality(ctx.NA.space, ctx.NA.theta, NAt.theta)
        V = v_matrix(name)
        # V is symmetric, so Theta_{V^T} = Theta_V
        d2 = check_duality(bm(name), lambda M: theta_v_readoff(ctx, M, V))
        good = d1.passed and d2.passed
        ok &= good
        parts.append(f"{name}:{'ok' if good else 'fail'}")
    record(6, ok, "duality identities on N_A and B " + " ".join(parts))
    assert ok


def test_criterion_7_r_decomposition():
    ok = True
    parts = []
    for name in NAMES:
        ctx = context(name)
        rep = r_space(ctx, nv(name))
        good = rep.decomposition_holds and rep.dim_bm_cap_r == 0 and rep.bounds_hold
        ok &= good
        parts.append(f"{name}: NV={rep.dim_nv}=3*{rep.r}+{rep.dim}")
    record(7, ok, "; ".join(parts) + " (4x4 four-weight instance not transcribed, see notes)")
    assert ok


def test_criterion_8_kasami_exclusion():
    t0 = time.perf_counter()
    found = [valency_subset_sum(vals, kasami_target(t)) for t in (1, 2) for vals in kasami_valencies(t)]
    elapsed = time.perf_counter() - t0
    ok = all(w is None for w in found) and elapsed < 1.0
    record(8, ok, f"no subset sums to 2^(4t+1) for t = 1, 2 on either list, {elapsed * 1000:.1f} ms")
    assert ok


def test_criterion_9_property_suites():
    import test_nomura
    import test_operators
    import test_yamada

    suites = {
        "exchange": test_operators.test_exchange_lemma_sides_always_agree,
        "jones routes": test_nomura.test_jones_routes_agree,
        "spin routes": test_nomura.test_spin_routes_agree,
        "B closed forms": test_yamada.test_bm_closed_forms_match_raw_arithmetic,
        "Theta_V forms": test_yamada.test_theta_v_closed_form_matches_readoff,
    }
    failed = []
    for label, fn in suites.items():
        if fn._hypothesis_internal_use_settings.max_examples < 100:
            failed.append(label + " (<100 examples)")
            continue
        try:
            fn()
        except Exception as exc:  # noqa: BLE001 - any failure is reported in the criterion line
            failed.append(f"{label}: {type(exc).__name__}")
    ok = not failed
    record(9, ok, f"{len(suites)} property suites at >= 100 exact instances" + (f"; failed: {failed}" if failed else ""))
    assert ok


REPORT_COMMANDS = [
    ["check", "jones", "corpus:circ3_A", "corpus:circ3_B"],
    ["check", "jones", "corpus:potts4_twisted_A", "corpus:potts4_twisted_B"],
    ["check", "spin", "corpus:potts2"],
    ["nomura", "corpus:dft4", "--basis", "--theta"],
    ["build", "bm", "corpus:potts2_A", "corpus:potts2_B"],
    ["rspace", "corpus:circ3_A", "corpus:circ3_B"],
    ["thetav", "corpus:potts2_A", "corpus:potts2_B"],
    ["subsetsum", "1,31,31,31,465,465", "512"],
    ["demo", "--count", "100"],
]


def _reports(threads: int) -> list[bytes]:
    out = []
    for cmd in REPORT_COMMANDS:
        r = subprocess.run(
            [sys.executable, "-m", "jonesbm.cli", "--format", "machine", "--seed", "3", "--threads", str(threads), *cmd],
            capture_output=True,
        )
        out.append(r.stdout)
    return out


def test_criterion_10_determinism():
    runs = [_reports(1), _reports(1), _reports(4)]
    ok = runs[0] == runs[1] == runs[2] and all(runs[0])
    record(10, ok, f"{len(REPORT_COMMANDS)} machine reports byte-identical across repeated runs and --threads 1/4")
    assert ok


@pytest.fixture(scope="module", autouse=True)
def _small_contexts_warm():
    # build the small contexts first so per-criterion timings reflect the checks themselves
    for name in SMALL:
        context(name)
