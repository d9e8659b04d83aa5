#!/usr/bin/env python3
"""Generate seeded G(n, p) pattern/target pairs and a bench manifest naming them."""
import argparse
from pathlib import Path

from mcsdal.cli import generate_pair
from mcsdal.graph import to_lad


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out_dir")
    ap.add_argument("--pairs", type=int, default=20)
    ap.add_argument("--n-min", type=int, default=10)
    ap.add_argument("--n-max", type=int, default=16)
    ap.add_argument("--p", type=float, default=0.5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    span = args.n_max - args.n_min + 1
    lines = []
    for i in range(args.pairs):
        seed = args.seed + i
        n_p = args.n_min + (seed * 7) % span
        n_t = args.n_min + (seed * 11 + 3) % span
        gp, gt = generate_pair(n_p, n_t, args.p, seed)
        names = (f"pair{i:03d}-pattern.lad", f"pair{i:03d}-target.lad")
        for name, g in zip(names, (gp, gt)):
            (out / name).write_text(to_lad(g))
        lines.append(" ".join(names))
    (out / "manifest.txt").write_text("\n".join(lines) + "\n")
    print(out / "manifest.txt")


if __name__ == "__main__":
    main()
