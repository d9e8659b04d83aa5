"""Exit criteria. Each test reports one PASS/FAIL line in the terminal summary.

The trend comparison is a long experiment (about half an hour in CPython);
it runs only with ``--run-slow``.
"""
import csv
import random
import time

import pytest

from mcsdal.cli import main
from mcsdal.environment import bound_sum, split
from mcsdal.experiments import er_pairs, trend_check
from mcsdal.graph import random_graph
from mcsdal.oracle import brute_force_mcs
from mcsdal.policy import POLICY_NAMES, ScoreTables, parse_policy, reward_dal, reward_rl
from mcsdal.solver import SolverConfig, check_solution, solve
from walks import walk
from worked_examples import SPLIT_ENV, SPLIT_PATTERN, SPLIT_TARGET, THREE_DOMAIN_ENV, b, e


def test_worked_example_exactness(report):
    def compute():
        out = []
        for v, w in ((1, e), (3, b)):
            child = split(SPLIT_ENV, v, w, SPLIT_PATTERN, SPLIT_TARGET)
            out.append((bound_sum(SPLIT_ENV), bound_sum(child), len(child),
                        reward_dal(SPLIT_ENV, child), reward_rl(SPLIT_ENV, child)))
        return out

    timings = []
    for _ in range(5):
        t0 = time.perf_counter()
        got = compute()
        timings.append(time.perf_counter() - t0)
    expected = [(5, 4, 4, 5, 1), (5, 4, 2, 3, 1)]
    ok = got == expected and min(timings) < 1e-3
    report("worked example (1,e)/(3,b)", ok, f"{got} in {min(timings) * 1e6:.0f} us")
    assert got == expected
    assert min(timings) < 1e-3


def test_three_domain_bound(report):
    got = bound_sum(THREE_DOMAIN_ENV)
    report("three-domain environment bound", got == 3, f"bound_sum = {got}")
    assert got == 3


@pytest.fixture(scope="module")
def equivalence_runs():
    """500 seeded pairs x 7 policy settings x LUM off/on, with oracle sizes."""
    rng = random.Random(20240501)
    t0 = time.perf_counter()
    runs = []
    for _ in range(500):
        p = rng.choice((0.2, 0.5, 0.8))
        gp = random_graph(rng.randint(1, 8), p, rng)
        gt = random_graph(rng.randint(1, 8), p, rng)
        expected = brute_force_mcs(gp, gt).size
        for name in POLICY_NAMES:
            for lum in (False, True):
                res = solve(gp, gt, SolverConfig(policy=parse_policy(name, seed=rng.randrange(1000)), lum=lum))
                runs.append((gp, gt, name, lum, expected, res))
    return runs, time.perf_counter() - t0


def test_oracle_equivalence(report, equivalence_runs):
    runs, elapsed = equivalence_runs
    mismatches = [(name, lum, exp, res.size) for _, _, name, lum, exp, res in runs if res.size != exp]
    ok = not mismatches and len(runs) >= 500 * 14 and elapsed < 300
    report("oracle equivalence", ok, f"{len(runs)} runs, {len(mismatches)} mismatches, {elapsed:.1f} s")
    assert not mismatches
    assert len(runs) >= 7000
    assert elapsed < 300


def test_solution_soundness(report, equivalence_runs):
    runs, _ = equivalence_runs
    bad = sum(1 for gp, gt, *_, res in runs if not check_solution(gp, gt, res.best))
    report("solution soundness", bad == 0, f"{bad} unsound witnesses of {len(runs)}")
    assert bad == 0


def test_invariant_suite(report):
    rng = random.Random(99)
    violations = {"bound contraction": 0, "reward identity": 0, "table caps": 0,
                  "disjointness": 0, "conservation": 0}
    sequences = splits = 0
    while sequences < 10_000:
        p = rng.choice((0.2, 0.5, 0.8))
        gp = random_graph(rng.randint(1, 9), p, rng)
        gt = random_graph(rng.randint(1, 9), p, rng)
        tables = ScoreTables(gp.n, gt.n, t_v=rng.randint(2, 12), t_vw=rng.randint(2, 12))
        sequences += 1
        for kind, env, child, v, w, matched, removed in walk(gp, gt, rng):
            if kind == "split":
                splits += 1
                if bound_sum(child) > bound_sum(env) - 1:
                    violations["bound contraction"] += 1
                r_rl, r_dal = reward_rl(env, child), reward_dal(env, child)
                if r_dal - r_rl != len(child) or r_dal < 1:
                    violations["reward identity"] += 1
                tables.update(v, w, r_rl, r_dal)
                vertex_ok = all(0 <= x < 2 * tables.t_v
                                for t in (tables.rl_vertex, tables.rl_target, tables.dal_vertex) for x in t)
                pair_ok = all(0 <= x < 2 * tables.t_vw
                              for t in (tables.dal_pair, tables.ll_pair) for x in t.values())
                if not (vertex_ok and pair_ok):
                    violations["table caps"] += 1
                # parent left minus v, minus vertices whose part lost its right side
                expected_left = set()
                for d in env:
                    left = set(d.left_vertices) - {v}
                    right = set(d.right_vertices) - {w}
                    for side_l, side_r in (
                        ({u for u in left if gp.adjacent(u, v)}, {x for x in right if gt.adjacent(x, w)}),
                        ({u for u in left if not gp.adjacent(u, v)}, {x for x in right if not gt.adjacent(x, w)}),
                    ):
                        if side_l and side_r:
                            expected_left |= side_l
                if sorted(u for d in child for u in d.left_vertices) != sorted(expected_left):
                    violations["conservation"] += 1
            lefts = [u for d in child for u in d.left_vertices]
            rights = [x for d in child for x in d.right_vertices]
            if (len(lefts) != len(set(lefts)) or len(rights) != len(set(rights))
                    or {u for u, _ in matched} & set(lefts) or {x for _, x in matched} & set(rights)):
                violations["disjointness"] += 1
    total = sum(violations.values())
    report("invariant suite", total == 0, f"{sequences} sequences, {splits} splits, violations {violations}")
    assert sequences >= 10_000
    assert total == 0


def test_bench_determinism(report, tmp_path):
    lines = []
    for seed in range(20):
        prefix = f"d{seed:02d}-"
        main(["gen", str(9 + seed % 5), str(10 + seed % 4), "0.5", "--seed", str(seed),
              "--out-dir", str(tmp_path), "--prefix", prefix])
        lines.append(f"{prefix}pattern.lad {prefix}target.lad")
    manifest = tmp_path / "manifest.txt"
    manifest.write_text("\n".join(lines) + "\n")

    outputs = []
    for run in range(2):
        out = tmp_path / f"run{run}.csv"
        main(["bench", str(manifest), "--policy", "hybrid", "--policy", "hybrid-rand", "--policy", "ll",
              "--seed", "13", "--node-budget", "20000", "--out", str(out)])
        with open(out, newline="") as f:
            rows = [r for r in csv.reader(f)]
        col = rows[0].index("elapsed_ms")
        outputs.append([r[:col] + r[col + 1:] for r in rows])
    ok = outputs[0] == outputs[1] and len(outputs[0]) == 1 + 20 * 3
    report("bench determinism", ok, f"{len(outputs[0]) - 1} rows compared")
    assert outputs[0] == outputs[1]
    assert len(outputs[0]) == 61


def test_default_parameters(report):
    gp, gt = random_graph(7, 0.5, random.Random(0)), random_graph(11, 0.5, random.Random(1))
    cfg = SolverConfig.for_graphs(gp, gt)
    got = (cfg.t_v, cfg.t_vw, cfg.max_nb_app)
    ok = got == (10**5, 10**9, 14) and SolverConfig().max_nb_app is None
    report("default parameters", ok, f"t_v={got[0]} t_vw={got[1]} max_nb_app={got[2]}")
    assert ok


@pytest.mark.slow
def test_trend_hybrid_vs_rl(report):
    pairs = er_pairs(100, 25, 35, 0.5, seed=0)
    summary = trend_check(pairs, ("rl", "hybrid"), node_budget=10**6)
    holds = summary.trend_holds()
    detail = "; ".join(summary.lines()) + ("" if holds else " (trend not observed; soft criterion)")
    # soft criterion: the measured medians are the deliverable, not a gate
    report("trend hybrid vs rl (soft)", True, detail)
    assert len(summary.calls["rl"]) == len(summary.calls["hybrid"]) == 100
