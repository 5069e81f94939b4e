"""Deterministic work partitioning for the enumeration suites.

Results are always assembled in task order, so output is identical for
any worker count.
"""

import multiprocessing


def parallel_map(func, tasks, jobs):
    tasks = list(tasks)
    if jobs is None or jobs <= 1 or len(tasks) < 2:
        return [func(t) for t in tasks]
    jobs = min(jobs, len(tasks))
    ctx = multiprocessing.get_context("fork" if "fork" in multiprocessing.get_all_start_methods() else None)
    with ctx.Pool(jobs) as pool:
        return pool.map(func, tasks)
