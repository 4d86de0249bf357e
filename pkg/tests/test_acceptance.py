"""Acceptance suite: one test per contract criterion, each printing a
PASS/FAIL line to the terminal (capture suspended) in addition to asserting.

Criteria with a stated runtime budget also assert the elapsed time.
"""

import json
import math
import time

import numpy as np
import pytest

from hypdeloc import bounds, cli, fuchsian, multipliers, selberg, verify
from hypdeloc.geometry import Point


def _report(capsys, num, name, ok, detail=""):
    line = f"ACCEPTANCE {num:02d} {name}: {'PASS' if ok else 'FAIL'}"
    with capsys.disabled():
        print("\n" + line, flush=True)
    assert ok, f"{line}  {detail}"


def test_acceptance_01_fejer_identity(capsys):
    t0 = time.perf_counter()
    s = np.linspace(-4.0 * math.pi, 4.0 * math.pi, 10_000)
    half = 0.5 * s
    # quotient form is well conditioned away from its removable points
    mask = np.abs(np.sin(half)) > 1e-3
    max_dev = 0.0
    exact = True
    for N in range(1, 65):
        quotient = np.sin(N * half[mask]) ** 2 / (N * np.sin(half[mask]) ** 2)
        packaged = multipliers.fejer(N, s[mask])
        max_dev = max(max_dev, float(np.max(np.abs(quotient - packaged))))
        exact = exact and multipliers.fejer(N, 0.0) == float(N)
    elapsed = time.perf_counter() - t0
    ok = max_dev <= 1e-10 and exact and elapsed < 5.0
    _report(capsys, 1, "fejer-identity", ok,
            f"max_dev={max_dev:.3e} exact_at_zero={exact} elapsed={elapsed:.2f}s")


def _random_tuples(seed, n):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        lam = 0.25 + float(rng.uniform(0.0, 8.0)) ** 2
        mu = 0.25 + float(rng.uniform(0.0, 8.0)) ** 2
        r = float(rng.uniform(0.1, 4.0))
        N = int(rng.integers(1, 65))
        yield lam, mu, r, N


def test_acceptance_02_multiplier_form_equivalence(capsys):
    t0 = time.perf_counter()
    max_dev = 0.0
    for lam, mu, r, N in _random_tuples(0, 500):
        spec = multipliers.WaveMultiplierSpec(
            lam=multipliers.spectral_parameter(lam), r=r, N=N)
        m = multipliers.spectral_parameter(mu)
        dev = abs(multipliers.w_multiplier_direct(spec, m)
                  - multipliers.w_multiplier_fejer(spec, m))
        max_dev = max(max_dev, dev)
    elapsed = time.perf_counter() - t0
    ok = max_dev <= 1e-9 and elapsed < 5.0
    _report(capsys, 2, "multiplier-form-equivalence", ok,
            f"max_dev={max_dev:.3e} elapsed={elapsed:.2f}s")


def test_acceptance_03_spectral_action_bounds(capsys):
    min_slack = math.inf
    zero_exact = True
    mu0 = multipliers.spectral_parameter(0.0)
    for lam, mu, r, N in _random_tuples(0, 500):
        spec = multipliers.WaveMultiplierSpec(
            lam=multipliers.spectral_parameter(lam), r=r, N=N)
        m = multipliers.spectral_parameter(mu)
        min_slack = min(min_slack, multipliers.w_multiplier_direct(spec, m) + 1.0)
        min_slack = min(min_slack,
                        multipliers.w_multiplier_direct(spec, spec.lam)
                        - multipliers.w_self_lower_bound(spec))
        zero_exact = zero_exact and multipliers.w_multiplier_direct(spec, mu0) == 0.0
    rng = np.random.default_rng(1)
    for _ in range(200):
        lam = 0.25 + float(rng.uniform(0.0, 8.0)) ** 2
        spec = multipliers.WaveMultiplierSpec(
            lam=multipliers.spectral_parameter(lam),
            r=float(rng.uniform(0.1, 4.0)), N=int(rng.integers(1, 65)))
        mu_u = multipliers.spectral_parameter(float(rng.uniform(0.0, 0.25)))
        min_slack = min(min_slack, multipliers.w_multiplier_direct(spec, mu_u))
    ok = min_slack >= -1e-10 and zero_exact
    _report(capsys, 3, "spectral-action-bounds", ok,
            f"min_slack={min_slack:.3e} zero_exact={zero_exact}")


def test_acceptance_04_selberg_round_trip(capsys):
    t0 = time.perf_counter()
    worst_wave = 0.0
    for t in (2.0, 4.0):
        h0 = selberg.wave_spectral(t)
        k = selberg.inverse_selberg(h0, s_max=30.0)
        h1 = selberg.selberg_transform(k)
        dev = max(abs(h1(float(s)) - h0(float(s)))
                  for s in np.linspace(0.0, 8.0, 17))
        worst_wave = max(worst_wave, dev)
    worst_ball = 0.0
    for t in (1.0, 2.0, 3.0):
        h = selberg.selberg_transform(selberg.ball_kernel(t))
        k2 = selberg.inverse_selberg(h)
        dev = max(abs(k2(float(rho)) - 1.0)
                  for rho in np.linspace(0.0, t - 0.05, 25))
        worst_ball = max(worst_ball, dev)
    # closed form of the normalized ball eigenvalue vs the generic transform
    spec = multipliers.BallMultiplierSpec(t=3.0, sigma=0.04)
    kern = selberg.ball_kernel(3.0, normalization=1.0 / spec.normalization())
    hgen = selberg.selberg_transform(kern)
    pts = [0.0, 0.5, 1.0, 2.0, 3.7, 5.0] + [1j * a for a in (0.1, 0.25, 0.4, 0.5)]
    worst_closed = 0.0
    for s in pts:
        lam = 0.25 + s ** 2 if not isinstance(s, complex) else 0.25 - s.imag ** 2
        mu = multipliers.spectral_parameter(float(lam.real) if isinstance(lam, complex) else lam)
        worst_closed = max(worst_closed,
                           abs(hgen(s) - multipliers.b_multiplier(spec, mu)))
    elapsed = time.perf_counter() - t0
    ok = worst_wave <= 1e-4 and worst_ball <= 1e-4 and worst_closed <= 1e-8 \
        and elapsed < 60.0
    _report(capsys, 4, "selberg-round-trip", ok,
            f"wave={worst_wave:.3e} ball={worst_ball:.3e} "
            f"closed_form={worst_closed:.3e} elapsed={elapsed:.1f}s")


def test_acceptance_05_lattice_count_oracle(capsys):
    t0 = time.perf_counter()
    rng = np.random.default_rng(23)
    agree = True
    for group_name, box in (("cyclic", 0.5), ("pingpong", 0.3)):
        group = fuchsian.load_group(group_name)
        for _ in range(50):
            z = Point(float(rng.uniform(-box, box)), float(rng.uniform(0.8, 1.25)))
            w = Point(float(rng.uniform(-box, box)), float(rng.uniform(0.8, 1.25)))
            r = float(rng.uniform(0.0, 4.0))
            a = [el.word for el in fuchsian.enumerate_ball(group, z, w, r, mode="pruned")]
            b = [el.word for el in fuchsian.enumerate_ball(group, z, w, r,
                                                           mode="brute", max_word_len=8)]
            agree = agree and a == b
    cyclic = fuchsian.load_group("cyclic")
    ell = cyclic.generators[0].translation_length()
    I = Point(0.0, 1.0)
    oracle_exact = True
    for _ in range(50):
        r = float(rng.uniform(0.0, 4.0))
        got = fuchsian.count_ball(cyclic, I, I, r, mode="pruned")
        oracle_exact = oracle_exact and got == fuchsian.cyclic_count_oracle(ell, r)
    elapsed = time.perf_counter() - t0
    ok = agree and oracle_exact and elapsed < 120.0
    _report(capsys, 5, "lattice-count-oracle", ok,
            f"pruned==brute={agree} oracle_exact={oracle_exact} elapsed={elapsed:.1f}s")


def test_acceptance_06_counting_bound(capsys):
    results = {}
    for name in fuchsian.SHIPPED_GROUPS:
        rep = verify.check_counting_bound(name, deltas=(0.1, 0.25, 0.5, 1.0),
                                          n_radii=20)
        results[name] = rep.status
    ok = all(v == "pass" for v in results.values())
    _report(capsys, 6, "counting-bound", ok, str(results))


def test_acceptance_07_inequality_certification(capsys):
    t0 = time.perf_counter()
    reports = [verify.check_technical_lemma(s, grid_points=200)
               for s in (0.01, 0.04, 0.09)]
    reports.append(verify.check_tanh_claim(grid_points=200))
    reports.append(verify.check_c0_inequality(grid_points=200))
    reports.append(verify.check_geometric_series(grid_points=200))
    elapsed = time.perf_counter() - t0
    worst = min(r.min_slack for r in reports)
    ok = all(r.status == "pass" for r in reports) and worst >= -1e-10 \
        and elapsed < 120.0
    _report(capsys, 7, "inequality-certification", ok,
            f"min_slack={worst:.3e} statuses={[r.status for r in reports]} "
            f"elapsed={elapsed:.1f}s")


def _transcribe_tempered(eps, lam, R, Cx, delta):
    s = math.sqrt(lam - 0.25)
    ch = math.cosh(math.pi * s / 2.0)
    N = math.floor(8.0 * ch / eps)
    r = math.ceil(R / (8.0 * N))
    A = 2.0 * (3.0 * math.exp(1.0 / delta)) * (1.0 + math.exp(0.5 - delta))
    exact = (eps / (A * Cx)) * math.exp((0.5 - delta) * r)
    simplified = (eps / (A * Cx)) * math.exp(eps * R / (256.0 * ch))
    return N, r, exact, simplified


def test_acceptance_08_bound_calculator_exactness(capsys):
    params = fuchsian.GeometryParams.from_bounds(R=64.0, Cx=1.0)
    rep = bounds.tempered_volume_bound(
        bounds.DelocInput(eps=1.0, lam=0.25, params=params, delta=0.005))
    flagship = (rep.N == 8 and rep.r == 1 and rep.d_lam == 1.0 / 256.0 and rep.valid)

    below = fuchsian.GeometryParams.from_bounds(R=math.nextafter(64.0, 0.0), Cx=1.0)
    rep_below = bounds.tempered_volume_bound(
        bounds.DelocInput(eps=1.0, lam=0.25, params=below, delta=0.005))
    flip = rep.valid and not rep_below.valid

    rng = np.random.default_rng(31)
    max_rel = 0.0
    match = True
    for _ in range(20):
        lam = 0.25 + float(rng.uniform(0.0, 4.0)) ** 2
        eps = float(rng.uniform(0.05, 1.0))
        Cx = float(rng.uniform(1.0, 5.0))
        s = math.sqrt(lam - 0.25)
        R = 64.0 * math.cosh(math.pi * s / 2.0) / eps * float(rng.uniform(1.0, 3.0))
        delta = float(rng.uniform(0.002, 0.009))
        got = bounds.tempered_volume_bound(bounds.DelocInput(
            eps=eps, lam=lam, params=fuchsian.GeometryParams.from_bounds(R=R, Cx=Cx),
            delta=delta))
        N, r, exact, simplified = _transcribe_tempered(eps, lam, R, Cx, delta)
        match = match and got.N == N and got.r == r and got.valid
        max_rel = max(max_rel,
                      abs(got.exact_bound - exact) / exact,
                      abs(got.simplified_bound - simplified) / simplified)
    ok = flagship and flip and match and max_rel <= 1e-12
    _report(capsys, 8, "bound-calculator-exactness", ok,
            f"flagship={flagship} flip_at_64={flip} transcription_rel={max_rel:.2e}")


def test_acceptance_09_untempered_thresholds(capsys):
    sigma, eps = 0.04, 1.0
    params = fuchsian.GeometryParams.from_bounds(R=20.0, Cx=1.0)
    rep = bounds.untempered_volume_bound(
        bounds.DelocInput(eps=eps, lam=0.1, params=params, sigma=sigma))
    thr = {h.name: h.required for h in rep.hypotheses}
    mass_req = thr["R >= (2/sqrt(sigma)) log(2 + 2/eps)"]
    mass_matches = mass_req == (2.0 / math.sqrt(sigma)) * math.log(2.0 + 2.0 / eps) \
        and mass_req == pytest.approx(10.0 * math.log(4.0), rel=1e-14)

    binding = max(thr.values())  # the ball threshold ~58.76 dominates here
    at = bounds.untempered_volume_bound(bounds.DelocInput(
        eps=eps, lam=0.1, params=fuchsian.GeometryParams.from_bounds(R=binding, Cx=1.0),
        sigma=sigma))
    under = bounds.untempered_volume_bound(bounds.DelocInput(
        eps=eps, lam=0.1,
        params=fuchsian.GeometryParams.from_bounds(R=math.nextafter(binding, 0.0), Cx=1.0),
        sigma=sigma))
    flip = at.valid and not under.valid

    max_rel = 0.0
    for R, Cx in ((20.0, 1.0), (60.0, 2.0), (100.0, 1.5)):
        got = bounds.untempered_volume_bound(bounds.DelocInput(
            eps=eps, lam=0.1, params=fuchsian.GeometryParams.from_bounds(R=R, Cx=Cx),
            sigma=sigma))
        ref = (eps / (Cx * 3.0 * math.exp(4.0))) * math.exp((0.25 + 0.1) * R)
        max_rel = max(max_rel, abs(got.exact_bound - ref) / ref)
    ok = mass_matches and flip and max_rel <= 1e-12
    _report(capsys, 9, "untempered-thresholds", ok,
            f"mass_threshold={mass_matches} flip_at_max={flip} value_rel={max_rel:.2e}")


def test_acceptance_10_thread_determinism(capsys):
    def grab(threads):
        code = cli.main(["verify-lemmas", "--threads", str(threads), "--no-timestamps"])
        out = capsys.readouterr().out
        return code, json.loads(out)

    code1, doc1 = grab(1)
    code4, doc4 = grab(4)
    ok = code1 == code4 == 0 and doc1["checks"] == doc4["checks"] \
        and doc1["summary"] == doc4["summary"]
    _report(capsys, 10, "thread-determinism", ok,
            f"exit={code1}/{code4} checks_equal={doc1['checks'] == doc4['checks']}")
