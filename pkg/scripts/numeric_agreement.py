"""Agreement rate of numeric cluster counts with exact distinct-root counts.

Roots are drawn from a lattice of spacing 1/denominator, with multiplicities, so
the exact answer is known and the minimum separation is controlled.

    python scripts/numeric_agreement.py --trials 2000 --denominator 1000
"""
import argparse
import random
from dataclasses import dataclass
from fractions import Fraction

from disctower import VarContext, count_distinct_roots
from disctower.discriminants import poly_from_roots
from disctower.numeric import DEFAULT_REL_TOL, cluster_roots, univariate_roots


@dataclass(frozen=True)
class AgreementConfig:
    trials: int = 1000
    max_degree: int = 6
    max_multiplicity: int = 3
    span: int = 3
    denominator: int = 100
    rel_tol: float = DEFAULT_REL_TOL
    seed: int = 0


def run(cfg: AgreementConfig):
    rng = random.Random(cfg.seed)
    ctx = VarContext(("T",))
    wrong = []
    for _ in range(cfg.trials):
        lim = cfg.span * cfg.denominator
        pool = list({Fraction(rng.randint(-lim, lim), cfg.denominator) for _ in range(cfg.max_degree)})
        roots = []
        for r in rng.sample(pool, rng.randint(1, len(pool))):
            roots += [r] * rng.randint(1, cfg.max_multiplicity)
        roots = roots[: cfg.max_degree]
        f = poly_from_roots(ctx, 0, roots)
        want = count_distinct_roots(f).count
        coeffs = [float(c.constant_term()) for c in f.coeffs]
        got = cluster_roots(univariate_roots(coeffs), cfg.rel_tol).count
        if got != want:
            wrong.append((roots, want, got))
    return wrong


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(AgreementConfig()).items():
        p.add_argument(f"--{name.replace('_', '-')}", type=type(default), default=default)
    cfg = AgreementConfig(**vars(p.parse_args()))
    wrong = run(cfg)
    print(f"{cfg.trials - len(wrong)}/{cfg.trials} agree ({cfg})")
    for roots, want, got in wrong[:10]:
        print(f"  roots={[str(r) for r in roots]} exact={want} numeric={got}")


if __name__ == "__main__":
    main()
