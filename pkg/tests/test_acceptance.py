"""Acceptance battery: one test per primary requirement.

Each test prints exactly one ``[PASS]``/``[FAIL]`` line (collected and
echoed in the terminal summary) and enforces its wall-clock budget.
"""

import math
import time

import numpy as np
import pytest

from kghulthen import (JacobiParams, NUProblem, PhysicalSystem,
                       all_candidates, approximation_error, closure_functions,
                       coefficients_at, eigen_pair, energy_closed_form,
                       energy_constant_mass_s, energy_root_solve,
                       find_bound_states, jacobi_derivative, jacobi_eval,
                       k_candidates, level_midpoint, main, parse_config,
                       quantization_residual, satisfies_quantization,
                       select_candidate, wavefunction)
from kghulthen.checks import wavefunction_ode_residual
from kghulthen.errors import InvalidRegime, NoBoundState, NoRealK

from conftest import REFERENCE_TRUE

RESULTS = []

REFERENCE = PhysicalSystem(V0=0.1, beta=0.2, m0=1.0)
SETS = {"a": PhysicalSystem(V0=0.2, beta=0.05, m0=1.0, m1=0.2),
        "b": PhysicalSystem(V0=0.11, beta=0.1, m0=1.0, m1=0.1),
        "c": PhysicalSystem(V0=0.1, beta=0.08, m0=1.0, m1=0.1)}
# energy windows that bracket exactly the n = 0 and n = 1 levels of each set
WINDOWS = {("a", 0): (-0.72, -0.42), ("a", 1): (-0.47, -0.13),
           ("b", 0): (-0.26, 0.52), ("b", 1): (0.55, 0.80),
           ("c", 0): (-0.19, 0.49), ("c", 1): (0.43, 0.74)}


def _record(num, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def test_criterion_1_constant_mass_reduction():
    # the general closed form with m1 = 0, l = 0 must reproduce the
    # dedicated constant-mass s-wave formula branch by branch
    t0 = time.perf_counter()
    worst = 0.0
    sets = 0
    for beta in (0.05, 0.1, 0.2, 0.35, 0.5):
        for strength in (0.2, 0.4, 0.6, 0.8):
            system = PhysicalSystem(V0=0.45 * strength * beta, beta=beta,
                                    m0=1.0)
            sets += 1
            for n in (0, 1, 2):
                general = energy_closed_form(system, n, 0)
                reduced = energy_constant_mass_s(system, n)
                for g, r in zip(general, reduced):
                    assert g.branch == r.branch
                    worst = max(worst, abs(g.value - r.value)
                                / abs(r.value))
    elapsed = time.perf_counter() - t0
    ok = sets >= 20 and worst < 1e-12 and elapsed < 1.0
    assert _record(1, ok,
                   f"constant-mass reduction over {sets} parameter sets, "
                   f"n<=2: worst branchwise rel dev {worst:.3e} < 1e-12 "
                   f"({elapsed:.2f}s < 1s)")


def test_criterion_2_quantization_consistency():
    # Every real closed-form energy either satisfies the quantization
    # condition to 1e-8*max(1, |lam_n|) or misses it by exactly the
    # reflected-count signature F = -2*A*N.  The miss is systematic
    # (every lower-branch root and every root with n above the genuine
    # ladder), so the exported default method is the root solver.
    t0 = time.perf_counter()
    genuine, spurious, worst_sig = {}, 0, 0.0
    for n in range(3):
        for l in range(2):
            for level in energy_closed_form(REFERENCE, n, l):
                E = level.value
                if satisfies_quantization(REFERENCE, n, l, E):
                    genuine[(n, l)] = E
                    continue
                spurious += 1
                F = quantization_residual(REFERENCE, n, l, E)
                co = coefficients_at(REFERENCE, l, E)
                s = math.sqrt(0.25 + co.a3_sq)
                N = 2.0 * n + 1.0 + 2.0 * s
                sig = abs(F + 2.0 * co.A * N) / max(1.0, abs(2.0 * co.A * N))
                worst_sig = max(worst_sig, sig)
    default = parse_config('{"V0": 0.1, "beta": 0.2, "m0": 1.0}', {}).method
    elapsed = time.perf_counter() - t0
    ok = (set(genuine) == set(REFERENCE_TRUE) and spurious == 9
          and worst_sig < 1e-9 and default == "quantization_root"
          and elapsed < 1.0)
    assert _record(2, ok,
                   f"quantization consistency: {len(genuine)} genuine roots, "
                   f"{spurious} spurious roots all matching the reflection "
                   f"signature to {worst_sig:.3e}; default method "
                   f"'{default}' ({elapsed:.2f}s < 1s)")


def test_criterion_3_analytic_oracle_agreement():
    # root-solved energies vs the shooting oracle in screened mode on the
    # default grid, three position-dependent-mass sets, n,l in {0,1}
    t0 = time.perf_counter()
    worst = 0.0
    compared = 0
    for name, system in SETS.items():
        for l in (0, 1):
            window = WINDOWS[name, l]
            states = {s.node_count: s for s in
                      find_bound_states(system, l, window=window)}
            for n in (0, 1):
                levels = energy_root_solve(system, n, l, window=window)
                assert levels, (name, n, l)
                assert states[n].converged
                exact = states[n].energy
                level = min(levels, key=lambda lv: abs(lv.value - exact))
                worst = max(worst, abs(level.value - exact) / abs(exact))
                compared += 1
    elapsed = time.perf_counter() - t0
    ok = compared == 12 and worst < 1e-6 and elapsed < 30.0
    assert _record(3, ok,
                   f"analytic vs oracle on {len(SETS)} mass-profile sets, "
                   f"{compared} levels: worst rel gap {worst:.3e} < 1e-6 "
                   f"({elapsed:.2f}s < 30s)")


def test_criterion_4_centrifugal_approximation_quality():
    # As stated: at fixed well depth V0 = 0.2, the l = 1 screened-vs-exact
    # energy gap must strictly decrease across beta = 0.4, 0.2, 0.1, 0.05,
    # and the l = 0 gap must stay below 1e-9*m0.  The l = 1 chain cannot
    # be evaluated at all four members: with V0 fixed, beta = 0.1 and 0.05
    # put the origin exponent into the complex regime and beta = 0.4 binds
    # no matching state, leaving a single comparable gap.  The test states
    # that outcome honestly and fails; see the companion test below for
    # the same property with the well scaled alongside the screening.
    t0 = time.perf_counter()
    system = PhysicalSystem(V0=0.2, beta=0.4, m0=1.0)
    betas = (0.4, 0.2, 0.1, 0.05)
    rows1 = approximation_error(system, 0, 1, betas)
    rows0 = approximation_error(system, 0, 0, betas)
    gaps = [row.abs_err for row in rows1]
    chain_ok = (all(g is not None for g in gaps)
                and all(a > b for a, b in zip(gaps, gaps[1:])))
    swave = [row.abs_err for row in rows0 if row.status == "ok"]
    swave_ok = bool(swave) and all(g < 1e-9 * system.m0 for g in swave)
    elapsed = time.perf_counter() - t0
    ok = chain_ok and swave_ok and elapsed < 60.0
    assert _record(4, ok,
                   "centrifugal approximation at fixed V0=0.2: l=1 rows "
                   + str([(row.beta, row.status) for row in rows1])
                   + f" leave gaps {gaps} (need 4 strictly decreasing); "
                   f"l=0 ok-row gaps {swave} < 1e-9 "
                   f"({elapsed:.2f}s < 60s)"), \
        ("the stated beta chain is not comparable at fixed V0=0.2: two "
         "members are over-attractive for l=1 and one binds no matching "
         "state, so only one gap exists")


def test_criterion_4_companion_decreasing_gap_with_scaled_well():
    # the decreasing-gap property the previous criterion targets, with the
    # well depth scaled with the screening (V0 = beta) so that every chain
    # member stays regular and bound
    t0 = time.perf_counter()
    gaps = []
    for beta in (0.4, 0.2, 0.1, 0.05):
        system = PhysicalSystem(V0=beta, beta=beta, m0=1.0)
        closed = energy_closed_form(system, 0, 1)[1]
        assert not closed.unbound
        cap = system.asymptotic_mass - 1e-9 * system.m0
        window = (closed.value - 0.02, min(closed.value + 0.02, cap))
        states = find_bound_states(system, 1, window=window, mode="exact",
                                   scan_points=60)
        match = [s for s in states if s.node_count == 0]
        assert match, beta
        gaps.append(abs(closed.value - match[0].energy))
    elapsed = time.perf_counter() - t0
    decreasing = all(a > b for a, b in zip(gaps, gaps[1:]))
    ok = decreasing and gaps[0] < 1e-2 and gaps[-1] < 2e-4 and elapsed < 60.0
    assert _record("4-companion", ok,
                   f"screened-vs-exact l=1 gap with V0=beta: "
                   f"{[f'{g:.3e}' for g in gaps]} strictly decreasing "
                   f"({elapsed:.2f}s < 60s)")


def test_criterion_5_wavefunction_correctness():
    # node counts, unit norm, and the reduced ODE residual for the first
    # three levels of a shallow long-range well
    t0 = time.perf_counter()
    system = PhysicalSystem(V0=0.0098, beta=0.02, m0=1.0)
    worst_norm = 0.0
    worst_resid = 0.0
    nodes_ok = True
    for n in (0, 1, 2):
        E = energy_closed_form(system, n, 0)[1].value
        wf = wavefunction(system, n, 0, E)
        nodes_ok = nodes_ok and wf.node_count == n
        worst_norm = max(worst_norm, abs(wf.norm - 1.0))
        worst_resid = max(worst_resid,
                          wavefunction_ode_residual(system, n, 0, E,
                                                    points=50))
    elapsed = time.perf_counter() - t0
    ok = (nodes_ok and worst_norm < 1e-8 and worst_resid < 1e-6
          and elapsed < 5.0)
    assert _record(5, ok,
                   f"wavefunctions n<=2: node counts exact, worst "
                   f"|norm-1| {worst_norm:.3e} < 1e-8, worst ODE residual "
                   f"{worst_resid:.3e} < 1e-6 at 50 interior points "
                   f"({elapsed:.2f}s < 5s)")


def test_criterion_6_engine_integrity():
    t0 = time.perf_counter()
    # (i) each closure constant must make the shift radicand a perfect
    # square: plug it back and demand a vanishing discriminant
    solved = 0
    worst_disc = 0.0
    rng = np.random.default_rng(20260817)
    while solved < 100:
        u = tuple(rng.uniform(-4.0, 4.0, size=3))
        prob = NUProblem(sigma_tilde=u)
        try:
            ks = k_candidates(prob)
        except NoRealK:
            continue
        solved += 1
        d0, d1 = 0.5, -0.5
        for k in ks:
            c0 = d0 * d0 - u[0]
            c1 = 2.0 * d0 * d1 - u[1] + k
            c2 = d1 * d1 - u[2] - k
            scale = max(1.0, abs(c0), abs(c1), abs(c2))
            worst_disc = max(worst_disc,
                             abs(c1 * c1 - 4.0 * c0 * c2) / (scale * scale))

    # (ii) recurrence evaluation vs the Rodrigues derivative formula
    import sympy as sp
    x = sp.Symbol("x")
    a, b = sp.Rational(1, 2), sp.Rational(3, 2)
    points = [sp.Rational(-9, 10), sp.Rational(-2, 5), sp.Rational(1, 10),
              sp.Rational(3, 5), sp.Rational(9, 10)]
    spread = 0.0
    for n in range(6):
        dn = sp.diff((1 - x) ** (a + n) * (1 + x) ** (b + n), x, n)
        rodrigues = (sp.Rational(-1, 2) ** n / sp.factorial(n)
                     * (1 - x) ** (-a) * (1 + x) ** (-b) * dn)
        ratios = []
        for xv in points:
            ref = float(rodrigues.subs(x, xv).evalf(40))
            if abs(ref) < 1e-6:
                continue
            ours = jacobi_eval(JacobiParams(alpha=0.5, beta=1.5, n=n),
                               float(xv))
            ratios.append(ours / ref)
        spread = max(spread, max(ratios) - min(ratios))

    # (iii) the degree-n polynomial must solve the reduced equation
    prob = NUProblem(sigma_tilde=(0.0, -1.0, -1.0))
    cand = select_candidate(prob, all_candidates(prob))
    sol = closure_functions(prob, cand)
    z = np.linspace(0.05, 0.95, 19)
    xg = 1.0 - 2.0 * z
    worst_resid = 0.0
    for n in range(5):
        _, lam_n = eigen_pair(prob, cand, n)
        params = JacobiParams(alpha=sol.jacobi_alpha, beta=sol.jacobi_beta,
                              n=n)
        y = jacobi_eval(params, xg)
        dy = -2.0 * jacobi_derivative(params, xg)
        if n >= 2:
            raised = JacobiParams(alpha=params.alpha + 1.0,
                                  beta=params.beta + 1.0, n=n - 1)
            d2y = (2.0 * (n + params.alpha + params.beta + 1.0)
                   * jacobi_derivative(raised, xg))
        else:
            d2y = np.zeros_like(z)
        resid = z * (1.0 - z) * d2y + (cand.tau[0] + cand.tau[1] * z) * dy \
            + lam_n * y
        scale = np.max(np.abs(y)) * max(1.0, abs(lam_n))
        worst_resid = max(worst_resid, float(np.max(np.abs(resid)) / scale))

    elapsed = time.perf_counter() - t0
    ok = (worst_disc < 1e-10 and spread < 1e-8 and worst_resid < 1e-8
          and elapsed < 5.0)
    assert _record(6, ok,
                   f"engine integrity: closure discriminant residual "
                   f"{worst_disc:.3e} < 1e-10 over {solved} random sets; "
                   f"Rodrigues-vs-recurrence spread {spread:.3e} < 1e-8 "
                   f"(n<=5); reduced-equation residual {worst_resid:.3e} "
                   f"< 1e-8 (n<=4) ({elapsed:.2f}s < 5s)")


def test_criterion_7_branch_midpoint_identity():
    # the two branches of every solved level must straddle the
    # energy-independent midpoint exactly
    t0 = time.perf_counter()
    worst = 0.0
    solved = 0
    for system in (REFERENCE, *SETS.values()):
        for n in range(3):
            for l in range(2):
                try:
                    lower, upper = energy_closed_form(system, n, l)
                except (InvalidRegime, NoBoundState):
                    continue
                mid = level_midpoint(system, n, l)
                worst = max(worst, abs(lower.value + upper.value - 2.0 * mid)
                            / max(1.0, abs(2.0 * mid)))
                solved += 1
    elapsed = time.perf_counter() - t0
    ok = solved >= 20 and worst < 1e-12 and elapsed < 1.0
    assert _record(7, ok,
                   f"branch-midpoint identity on {solved} solved levels: "
                   f"worst rel dev {worst:.3e} < 1e-12 ({elapsed:.2f}s < 1s)")


def test_criterion_8_cli_determinism(tmp_path):
    t0 = time.perf_counter()
    first = tmp_path / "validate1.csv"
    second = tmp_path / "validate2.csv"
    rc1 = main(["validate", "--config", "configs/reference.json",
                "--output", str(first)])
    rc2 = main(["validate", "--config", "configs/reference.json",
                "--output", str(second)])
    payload = first.read_bytes()
    elapsed = time.perf_counter() - t0
    ok = (rc1 == 0 and rc2 == 0 and payload == second.read_bytes()
          and payload.count(b",pass,") == 16 and b",fail," not in payload
          and elapsed < 60.0)
    assert _record(8, ok,
                   f"validate exits {rc1} on the reference config and two "
                   f"runs produce byte-identical CSV ({len(payload)} bytes, "
                   f"16 pass rows) ({elapsed:.2f}s < 60s)")
