"""Smallest precision at which a source document's tower completes and stays put.

    python scripts/precision_scan.py scripts/inputs/cusp.txt --kind set --start 2 --stop 12
"""
import argparse
from dataclasses import dataclass
from pathlib import Path

from disctower import TowerConfig, build_tower_function, build_tower_set
from disctower.parser import parse_document
from disctower.tower import InconclusivePrecision, ZeroGerm, towers_agree
from disctower.weierstrass import SearchExhausted


@dataclass(frozen=True)
class ScanConfig:
    path: Path
    kind: str = "set"
    start: int = 2
    stop: int = 16
    height_bound: int = 3


def scan(cfg: ScanConfig):
    text = cfg.path.read_text()
    build = build_tower_set if cfg.kind == "set" else build_tower_function
    prev = None
    rows = []
    for n in range(cfg.start, cfg.stop + 1):
        doc = parse_document(text, precision=n)
        try:
            ns = build(doc.germs, TowerConfig(n, cfg.height_bound))
        except (InconclusivePrecision, SearchExhausted, ZeroGerm) as exc:
            rows.append((n, "inconclusive", type(exc).__name__))
            prev = None
            continue
        stable = prev is not None and towers_agree(prev, ns)
        s = ns.summary()
        j, u0, q0 = s["base"]
        info = f"p={s['p']} j={s['j']} q={s['q']} base=(j={j}, u0={u0}, q0={q0})"
        rows.append((n, "stable" if stable else "built", info))
        prev = ns
    return rows


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("path", type=Path)
    p.add_argument("--kind", choices=("set", "function"), default="set")
    p.add_argument("--start", type=int, default=2)
    p.add_argument("--stop", type=int, default=16)
    p.add_argument("--height-bound", type=int, default=3)
    a = p.parse_args()
    for n, status, info in scan(ScanConfig(a.path, a.kind, a.start, a.stop, a.height_bound)):
        print(f"N={n:3d}  {status:12s}  {info}")


if __name__ == "__main__":
    main()
