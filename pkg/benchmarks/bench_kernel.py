"""Compare the compiled and pure-Python reduction kernels.

Each instance is run with both backends (best of ``--repeat`` runs) and the
results are checked to be identical before timings are reported::

    python3 benchmarks/bench_kernel.py
    python3 benchmarks/bench_kernel.py --instances torus:7,8 cusp --repeat 1
"""

import argparse
import importlib
import time

from artifact import _kernel_py, kernel
from artifact.groebner import DEFAULT_PRIME, buchberger, local_length_at_origin, quotient_dimension
from artifact.modspace import StableMapProblem, build_torus_knot_system, stable_map_local_length
from artifact.polyalg import polynomial_ring

FUNCS = ("axpy", "spoly", "reduce", "lcm", "key_of", "normalize", "groebner_loop")
DEFAULT_INSTANCES = ["torus:5,7", "torus:6,7", "torus:5,9", "torus:7,8", "torus-mod:7,8", "local:4,7", "cusp"]


def set_backend(impl, name):
    for f in FUNCS:
        setattr(kernel, f, getattr(impl, f))
    kernel.BACKEND = name


def make_task(item):
    kind, _, arg = item.partition(":")
    if kind in ("torus", "torus-mod", "local"):
        p, q = (int(v) for v in arg.split(","))
        ideal = build_torus_knot_system(p, q).ideal()
        if kind == "torus":
            return lambda: quotient_dimension(buchberger(ideal))
        if kind == "torus-mod":
            return lambda: quotient_dimension(buchberger(ideal, modulus=DEFAULT_PRIME))
        return lambda: local_length_at_origin(ideal)
    if kind == "cusp":
        s, t = polynomial_ring("s t")
        x, y, z = polynomial_ring("x y z")
        prob = StableMapProblem.create(3, (t**2 * s, t**3, s**3), z * y**2 - x**3)
        return lambda: stable_map_local_length(prob)
    raise SystemExit(f"unknown instance {item!r}")


def best_of(task, repeat):
    best = float("inf")
    value = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = task()
        best = min(best, time.perf_counter() - t0)
    return value, best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--instances", nargs="+", default=DEFAULT_INSTANCES)
    ap.add_argument("--repeat", type=int, default=2)
    args = ap.parse_args(argv)
    try:
        compiled = importlib.import_module("artifact._kernel")
    except ImportError:
        raise SystemExit("compiled kernel not built; run `pip install -e . --no-build-isolation`")

    print(f"{'instance':<16}{'value':>8}{'python [s]':>13}{'cython [s]':>13}{'speedup':>10}")
    for item in args.instances:
        task = make_task(item)
        set_backend(_kernel_py, "python")
        v_py, t_py = best_of(task, args.repeat)
        set_backend(compiled, "cython")
        v_c, t_c = best_of(task, args.repeat)
        if v_py != v_c:
            raise SystemExit(f"{item}: backends disagree ({v_py} vs {v_c})")
        print(f"{item:<16}{v_c:>8}{t_py:>13.3f}{t_c:>13.3f}{t_py / t_c:>9.2f}x")


if __name__ == "__main__":
    main()
