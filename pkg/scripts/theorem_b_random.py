"""Consistency of δφ = dθ_m, Qφ = dθ_h and condition (1) on random splits.

Each sample is a random direct sum of small algebras in a random basis, with
a generated subalgebra and a skewed complement. The condition-(1) kernel is
cross-checked against a brute-force count built straight from the brackets.
"""
import argparse
import random
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from lieverify.cohomology import apply_d
from lieverify.geometry import make_split
from lieverify.reconstruction import condition1_kernel, delta_map, make_context, q_map, split_cochains
from lieverify.samples import random_split

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from oracles import h1_and_condition1  # noqa: E402


@dataclass
class Config:
    seed: int = 0
    samples: int = 25
    max_dim: int = 6


def main():
    p = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        p.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = Config(**vars(p.parse_args()))
    rng = random.Random(cfg.seed)
    bad = 0
    print(f"{'algebra':<22}{'dim':>4}{'h':>3}{'H1':>4}{'ker':>5}{'oracle':>7}  δ  Q   sec")
    for _ in range(cfg.samples):
        t0 = time.perf_counter()
        smp = random_split(rng, cfg.max_dim)
        ctx = make_context(make_split(smp.g, smp.h_generators, smp.m_basis))
        phi, tm, th = split_cochains(ctx)
        d_ok = delta_map(ctx, phi).coeffs == apply_d(ctx.modB, tm).coeffs
        q_ok = q_map(ctx, phi).coeffs == apply_d(ctx.modC, th).coeffs
        c1 = condition1_kernel(ctx)
        oracle = h1_and_condition1(smp.g, ctx.split.h.generators, smp.m_basis)[3]
        ok = d_ok and q_ok and oracle == c1.kernel.dim
        bad += not ok
        print(f"{smp.g.name:<22}{smp.g.dim:>4}{ctx.split.dim_h:>3}{c1.h1.dim_H:>4}{c1.kernel.dim:>5}{oracle:>7}"
              f"  {'y' if d_ok else 'n'}  {'y' if q_ok else 'n'}  {time.perf_counter() - t0:.2f}")
    print(f"{cfg.samples - bad}/{cfg.samples} consistent")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
