"""Command-line front end: ``mcsdal {solve,bench,gen,cactus}``.

Exit codes: 0 success, 1 usage error, 2 unreadable or unparseable input,
3 search interrupted by a budget (``solve`` only).
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .graph import ParseError, random_graph, read_graph, to_lad
from .policy import POLICY_NAMES, parse_policy, policy_name
from .solver import SolverConfig, Status, solve

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

CSV_HEADER = ["pattern", "target", "policy", "size", "status", "elapsed_ms", "recursive_calls", "policy_switches"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class InstanceRecord:
    pattern: str
    target: str
    policy: str
    fingerprint: str
    size: Optional[int]
    status: str
    elapsed_ms: Optional[float]
    recursive_calls: Optional[int]
    policy_switches: Optional[int]

    def row(self) -> List[str]:
        def fmt(x):
            return "" if x is None else str(x)

        return [self.pattern, self.target, self.policy, fmt(self.size), self.status,
                fmt(self.elapsed_ms), fmt(self.recursive_calls), fmt(self.policy_switches)]


def config_fingerprint(cfg: SolverConfig) -> str:
    d = asdict(cfg)
    d["policy"] = policy_name(cfg.policy)
    blob = json.dumps(d, sort_keys=True, default=str)
    return hashlib.sha1(blob.encode()).hexdigest()[:12]


def _add_solver_flags(p: argparse.ArgumentParser, multi_policy: bool = False) -> None:
    if multi_policy:
        p.add_argument("--policy", action="append", choices=POLICY_NAMES,
                       help="policy to run; repeat for several (default: hybrid)")
    else:
        p.add_argument("--policy", choices=POLICY_NAMES, default="hybrid")
    p.add_argument("--timeout", type=float, metavar="SECONDS", help="wall-clock budget per run")
    p.add_argument("--node-budget", type=int, metavar="N", help="maximum recursive calls per run")
    p.add_argument("--lum", action="store_true", help="match leaf neighbours together after each match")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tv", type=int, default=100_000, help="vertex score decay threshold")
    p.add_argument("--tvw", type=int, default=1_000_000_000, help="pair score decay threshold")
    p.add_argument("--max-nb-app", type=int, metavar="N",
                   help="selections between hybrid switches (default 2*min(|Vp|,|Vt|))")
    p.add_argument("--rl-reward", choices=("sum-delta", "ub-delta"), default="sum-delta")
    p.add_argument("--format", choices=("auto", "lad", "dimacs"), default="auto")
    p.add_argument("--symmetrize", action="store_true", help="accept directed LAD input as undirected")


def _config(args, policy: str) -> SolverConfig:
    return SolverConfig(
        policy=parse_policy(policy, args.seed),
        t_v=args.tv,
        t_vw=args.tvw,
        max_nb_app=args.max_nb_app,
        lum=args.lum,
        time_budget=args.timeout,
        node_budget=args.node_budget,
        seed=args.seed,
        rl_reward_variant=args.rl_reward,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mcsdal", description="Maximum common induced subgraph solver.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve one pattern/target pair")
    p.add_argument("pattern")
    p.add_argument("target")
    _add_solver_flags(p)

    p = sub.add_parser("bench", help="run a manifest of instances, emit CSV")
    p.add_argument("manifest")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="write CSV here instead of stdout")
    _add_solver_flags(p, multi_policy=True)

    p = sub.add_parser("gen", help="write a random Erdos-Renyi pattern/target pair as LAD")
    p.add_argument("n_p", type=int)
    p.add_argument("n_t", type=int)
    p.add_argument("edge_prob", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--prefix", help="file name prefix (default: er<n_p>-<n_t>-s<seed>-)")

    p = sub.add_parser("cactus", help="turn a bench CSV into per-policy cactus series")
    p.add_argument("csv_path")
    p.add_argument("--metric", choices=("time", "calls"), default="time")
    return parser


# --- solve -----------------------------------------------------------------

def cmd_solve(args) -> int:
    try:
        gp = read_graph(args.pattern, args.format, args.symmetrize)
        gt = read_graph(args.target, args.format, args.symmetrize)
    except OSError as e:
        print(f"mcsdal: cannot read {e.filename}: {e.strerror}", file=sys.stderr)
        return EXIT_INPUT
    except ParseError as e:
        print(f"mcsdal: parse error: {e}", file=sys.stderr)
        return EXIT_INPUT
    try:
        cfg = _config(args, args.policy)
    except ValueError as e:
        print(f"mcsdal: {e}", file=sys.stderr)
        return EXIT_USAGE
    res = solve(gp, gt, cfg)
    print(f"size: {res.size}")
    print(f"status: {res.status.value}")
    print(f"elapsed_ms: {res.elapsed * 1000:.3f}")
    print(f"recursive_calls: {res.recursive_calls}")
    print(f"policy_switches: {res.stats.policy_switches}")
    print("pairs: " + " ".join(f"{v}-{w}" for v, w in sorted(res.best)))
    return EXIT_OK if res.status is Status.OPTIMAL else EXIT_BUDGET


# --- bench -----------------------------------------------------------------

def read_manifest(path) -> List[Tuple[str, str]]:
    pairs = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError("manifest line must be 'pattern_path target_path'", lineno)
            pairs.append((parts[0], parts[1]))
    return pairs


def _resolve(path: str, base: Path) -> Path:
    p = Path(path)
    return p if p.is_absolute() else base / p


def run_instance(job) -> InstanceRecord:
    pattern, target, base, cfg, fmt, symmetrize = job
    fp = config_fingerprint(cfg)
    label = policy_name(cfg.policy)
    try:
        gp = read_graph(_resolve(pattern, base), fmt, symmetrize)
        gt = read_graph(_resolve(target, base), fmt, symmetrize)
        res = solve(gp, gt, cfg)
    except (OSError, ParseError, ValueError, RecursionError):
        return InstanceRecord(pattern, target, label, fp, None, "error", None, None, None)
    return InstanceRecord(pattern, target, label, fp, res.size, res.status.value,
                          round(res.elapsed * 1000, 3), res.recursive_calls, res.stats.policy_switches)


def run_bench(manifest: Sequence[Tuple[str, str]], configs: Sequence[SolverConfig], base: Path,
              jobs: int = 1, fmt: str = "auto", symmetrize: bool = False) -> List[InstanceRecord]:
    """One record per (instance, config), in manifest order then config order."""
    work = [(p, t, base, cfg, fmt, symmetrize) for p, t in manifest for cfg in configs]
    if jobs <= 1:
        return [run_instance(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_instance, work))


def write_csv(records: Sequence[InstanceRecord], stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.row())


def cmd_bench(args) -> int:
    try:
        manifest = read_manifest(args.manifest)
    except OSError as e:
        print(f"mcsdal: cannot read {e.filename}: {e.strerror}", file=sys.stderr)
        return EXIT_INPUT
    except ParseError as e:
        print(f"mcsdal: {args.manifest}: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.jobs < 1:
        print("mcsdal: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        configs = [_config(args, name) for name in (args.policy or ["hybrid"])]
    except ValueError as e:
        print(f"mcsdal: {e}", file=sys.stderr)
        return EXIT_USAGE
    base = Path(args.manifest).resolve().parent
    records = run_bench(manifest, configs, base, args.jobs, args.format, args.symmetrize)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as f:
            write_csv(records, f)
    else:
        write_csv(records, sys.stdout)
    return EXIT_OK


# --- gen -------------------------------------------------------------------

def generate_pair(n_p: int, n_t: int, edge_prob: float, seed: int):
    rng = random.Random(seed)
    return random_graph(n_p, edge_prob, rng), random_graph(n_t, edge_prob, rng)


def cmd_gen(args) -> int:
    if args.n_p < 1 or args.n_t < 1 or not 0.0 <= args.edge_prob <= 1.0:
        print("mcsdal: need n_p, n_t >= 1 and 0 <= edge_prob <= 1", file=sys.stderr)
        return EXIT_USAGE
    gp, gt = generate_pair(args.n_p, args.n_t, args.edge_prob, args.seed)
    prefix = args.prefix if args.prefix is not None else f"er{args.n_p}-{args.n_t}-s{args.seed}-"
    out = Path(args.out_dir)
    paths = (out / f"{prefix}pattern.lad", out / f"{prefix}target.lad")
    try:
        out.mkdir(parents=True, exist_ok=True)
        for path, g in zip(paths, (gp, gt)):
            path.write_text(to_lad(g), encoding="utf-8")
    except OSError as e:
        print(f"mcsdal: cannot write {e.filename or out}: {e.strerror}", file=sys.stderr)
        return EXIT_INPUT
    print(f"{paths[0]} {paths[1]}")
    return EXIT_OK


# --- cactus ----------------------------------------------------------------

def cactus_series(rows: Sequence[Dict[str, str]], metric: str = "time") -> Dict[str, List[float]]:
    """Per-policy costs of solved (Optimal) runs, ascending. Policies keep first-seen order."""
    column = {"time": "elapsed_ms", "calls": "recursive_calls"}[metric]
    series: Dict[str, List[float]] = {}
    for row in rows:
        label = row["policy"]
        series.setdefault(label, [])
        if row["status"] != Status.OPTIMAL.value:
            continue
        cost = float(row[column]) if metric == "time" else int(row[column])
        series[label].append(cost)
    for costs in series.values():
        costs.sort()
    return series


def cmd_cactus(args) -> int:
    try:
        with open(args.csv_path, encoding="utf-8", newline="") as f:
            reader = csv.DictReader(f)
            if reader.fieldnames is None or any(c not in reader.fieldnames for c in CSV_HEADER):
                raise ValueError(f"expected columns {','.join(CSV_HEADER)}")
            series = cactus_series(list(reader), args.metric)
    except OSError as e:
        print(f"mcsdal: cannot read {e.filename}: {e.strerror}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, KeyError, TypeError) as e:
        print(f"mcsdal: malformed CSV {args.csv_path}: {e}", file=sys.stderr)
        return EXIT_INPUT
    for label, costs in series.items():
        print(f"# {label}")
        for rank, cost in enumerate(costs, start=1):
            print(f"{rank},{cost:g}" if isinstance(cost, float) else f"{rank},{cost}")
    return EXIT_OK


COMMANDS = {"solve": cmd_solve, "bench": cmd_bench, "gen": cmd_gen, "cactus": cmd_cactus}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
