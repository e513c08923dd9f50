"""Compare the compiled and pure-Python straightening kernels.

Both kernels get identical workloads built from the same presentations; each
run starts from a cold cache so the rewriting itself is what gets timed.
Results of the two kernels are compared term by term before timing is
reported.

    python3 benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import time

from infhecke import _kernel_py
from infhecke.families import FamilySpec, build_presentation
from infhecke.poly import T
from infhecke.sl2 import casimir, hz_presentation, tz

try:
    from infhecke import _kernel
except ImportError:
    _kernel = None


def _workloads():
    pres = hz_presentation(T ** 2)
    D = casimir(pres).terms
    x = pres.gen("x").terms
    t = tz(T ** 2).terms
    yield "H_z: Delta^5 * x", pres, [D] * 5 + [x]
    yield "H_z: t_z^2 * Delta^2", pres, [t, t, D, D]
    gl = build_presentation(FamilySpec("gln", 3, 1, 1))
    r = {}
    for i in (1, 2, 3):
        for m, c in (gl.gen(f"v_{i}") * gl.gen(f"vs_{i}")).terms.items():
            r[m] = r.get(m, 0) + c
    E = (gl.gen("E_12") + gl.gen("E_23") + gl.gen("E_31")).terms
    yield "gl_3: r^3 * (E_12+E_23+E_31)^3", gl, [r, r, r, E, E, E]
    sp = build_presentation(FamilySpec("sp2n", 3))
    w = {}
    for name in sp.names:
        w[sp.unit_monomial(name)] = 1
    yield "sp(6): (sum of generators)^4", sp, [w] * 4


def _run(kernel_cls, pres, factors):
    k = kernel_cls(pres.ngens, pres.corrections)
    start = time.perf_counter()
    acc = {k.unit: 1}
    for f in factors:
        acc = k.mul(acc, f)
    return time.perf_counter() - start, acc


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    kernels = [("python", _kernel_py.Straightener)]
    if _kernel is not None:
        kernels.append(("compiled", _kernel.Straightener))
    else:
        print("compiled kernel not available; timing the Python kernel only")
    header = f"{'workload':36s}" + "".join(f"{name:>12s}" for name, _ in kernels)
    if len(kernels) == 2:
        header += f"{'speedup':>10s}"
    print(header)
    for label, pres, factors in _workloads():
        best = {}
        results = {}
        for name, cls in kernels:
            times = []
            for _ in range(args.repeat):
                dt, res = _run(cls, pres, factors)
                times.append(dt)
            best[name] = min(times)
            results[name] = res
        if len(results) == 2 and results["python"] != results["compiled"]:
            raise SystemExit(f"kernels disagree on {label}")
        line = f"{label:36s}" + "".join(f"{best[name]:11.3f}s" for name, _ in kernels)
        if len(kernels) == 2:
            line += f"{best['python'] / best['compiled']:9.2f}x"
        print(line)


if __name__ == "__main__":
    main()
