"""Time local versus scattered edits on each backend.

    python benchmarks/bench_backends.py [--lines N] [--edits N]
"""
import argparse
import random
import timeit

from veredit.backends import BACKENDS
from veredit.dsl import DeleteLine, InsertLine


def workload(n_lines, n_edits, local, seed=0):
    rng = random.Random(seed)
    pos = n_lines // 2
    cmds = []
    for _ in range(n_edits):
        pos = pos + rng.randint(-2, 2) if local else rng.randrange(n_lines)
        pos = max(0, min(pos, n_lines - 1))
        cmds.append(InsertLine(pos, "x") if rng.random() < 0.5 else DeleteLine(pos))
    return cmds


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--lines", type=int, default=20000)
    ap.add_argument("--edits", type=int, default=2000)
    args = ap.parse_args()
    start = ["line %d" % i for i in range(args.lines)]
    for local in (True, False):
        cmds = workload(args.lines, args.edits, local)
        for name, cls in sorted(BACKENDS.items()):
            def run():
                b = cls.from_lines(start)
                for c in cmds:
                    b.apply(c)
            t = min(timeit.repeat(run, number=1, repeat=3))
            kind = "local" if local else "scattered"
            print(f"{name:10s} {kind:10s} {t * 1e3:8.1f} ms")


if __name__ == "__main__":
    main()
