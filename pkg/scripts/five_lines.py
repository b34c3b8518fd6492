"""Build the five-line family tower at a range of precisions and check stability.

    python scripts/five_lines.py --precisions 12 14 17
"""
import argparse
import time
from dataclasses import dataclass

from disctower import TowerConfig, VarContext, build_tower_set
from disctower.kernel import Jet
from disctower.tower import InconclusivePrecision, towers_agree
from disctower.verify import verify_normal_system


@dataclass(frozen=True)
class FiveLinesConfig:
    precisions: tuple = (12, 17)
    gamma: tuple = (4, 1, 1)  # coefficients of gamma(t), constant first


def five_lines(cfg: FiveLinesConfig) -> Jet:
    ctx = VarContext(("t", "x", "y"), "t")
    t, x, y = (Jet.variable(ctx, k) for k in range(3))
    gamma = sum((c * t ** k for k, c in enumerate(cfg.gamma)), Jet.zero(ctx))
    return x * y * (y - x) * (y - (3 + t) * x) * (y - gamma * x)


def run(cfg: FiveLinesConfig):
    f = five_lines(cfg)
    towers = {}
    for n in cfg.precisions:
        t0 = time.perf_counter()
        try:
            ns = build_tower_set([f], TowerConfig(precision=n))
        except InconclusivePrecision as exc:
            print(f"N={n:3d}  inconclusive: {exc}")
            continue
        elapsed = time.perf_counter() - t0
        report = verify_normal_system(ns)
        degrees = [lv.f.degree for lv in ns.levels]
        js = [lv.disc_index for lv in ns.levels[1:]]
        print(f"N={n:3d}  degrees={degrees}  j={js}  base=(j={ns.base_index}, u0={ns.base_unit})"
              f"  verify={'pass' if report.all_pass else 'FAIL'}  {elapsed:.2f}s")
        towers[n] = ns
    done = sorted(towers)
    for a, b in zip(done, done[1:]):
        print(f"N={a} vs N={b}: {'stable' if towers_agree(towers[a], towers[b]) else 'UNSTABLE'}")
    return towers


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--precisions", type=int, nargs="+", default=[12, 17])
    p.add_argument("--gamma", type=int, nargs="+", default=[4, 1, 1],
                   help="gamma(t) coefficients, constant first")
    args = p.parse_args()
    run(FiveLinesConfig(tuple(args.precisions), tuple(args.gamma)))


if __name__ == "__main__":
    main()
