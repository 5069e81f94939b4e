"""Benchmark the compiled kernel against the pure-Python fallback.

Runs the hot paths of both backends on identical workloads and prints
a table of timings with the speedup factor.  Usage:

    python bench/compare_backends.py [--max-size N] [--repeat R]
"""

import argparse
import time

from f1kgw import _corepy

try:
    from f1kgw import _core
except ImportError:
    _core = None


def clear_caches(mod):
    mod.clear_caches()


def bench_enumerate(mod, n):
    clear_caches(mod)
    t0 = time.perf_counter()
    total = 0
    for u in range(n + 1):
        for v in range(n + 1):
            total += len(mod.hom_maps(u, v))
    return time.perf_counter() - t0, total


def bench_compose(mod, n, repeat):
    maps = mod.hom_maps(n, n)
    t0 = time.perf_counter()
    acc = 0
    for _ in range(repeat):
        for f in maps:
            for g in maps:
                acc ^= mod.compose(g, f)[n]
    return time.perf_counter() - t0, acc


def bench_universal(mod, n, bound):
    # exercise the universal-property counting check on block squares
    from f1kgw.pointed import inc_left, proj_left
    t0 = time.perf_counter()
    count = 0
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            top = inc_left(u, v)
            right = proj_left(u, v)
            # square: identity left/bottom arrangement via the wedge
            ok = mod.universal_square_ok(
                tuple(range(u + 1)),
                top.map,
                top.map,
                tuple(range(u + v + 1)),
                u,
                u + v,
                u,
                u + v,
                bound,
            )
            count += 1 if ok else 0
    return time.perf_counter() - t0, count


def bench_axiom_suite(backend_name, n):
    import importlib
    import os
    import subprocess
    import sys

    env = dict(os.environ, F1KGW_KERNEL=backend_name)
    code = (
        "import time; from f1kgw.pointed import axiom_suite; "
        "t0=time.perf_counter(); r=axiom_suite(%d); "
        "print('%%.3f %%s' %% (time.perf_counter()-t0, r.ok))" % n
    )
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True
    )
    t, ok = out.stdout.split()
    return float(t), ok == "True"


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-size", type=int, default=4)
    parser.add_argument("--repeat", type=int, default=20)
    args = parser.parse_args()

    if _core is None:
        print("compiled kernel unavailable; timing the pure backend only")
    backends = [("pure", _corepy)] + ([("compiled", _core)] if _core else [])

    rows = []
    for label, task in (
        ("enumerate hom sets", lambda m: bench_enumerate(m, args.max_size)),
        ("compose table", lambda m: bench_compose(m, args.max_size, args.repeat)),
        ("universal property", lambda m: bench_universal(m, args.max_size, 2)),
    ):
        times = {}
        checks = set()
        for name, mod in backends:
            t, check = task(mod)
            times[name] = t
            checks.add(check)
        if len(checks) != 1:
            raise SystemExit("backends disagree on %s: %s" % (label, checks))
        rows.append((label, times))

    times = {}
    for name, _ in backends:
        t, ok = bench_axiom_suite({"pure": "py", "compiled": "c"}[name], args.max_size)
        if not ok:
            raise SystemExit("axiom suite failed under %s backend" % name)
        times[name] = t
    rows.append(("axiom suite (subprocess)", times))

    width = max(len(r[0]) for r in rows)
    print("workload".ljust(width), "  pure      compiled  speedup")
    for label, times in rows:
        pure = times.get("pure", float("nan"))
        comp = times.get("compiled")
        if comp:
            print(
                "%s  %8.3fs %8.3fs  %5.1fx"
                % (label.ljust(width), pure, comp, pure / comp if comp else 0)
            )
        else:
            print("%s  %8.3fs       n/a     n/a" % (label.ljust(width), pure))


if __name__ == "__main__":
    main()
