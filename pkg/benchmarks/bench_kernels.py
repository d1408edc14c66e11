"""Compare the compiled and pure-Python kernels on realistic workloads.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

from fjl import kernels
from fjl.exact import QBox
from fjl.geometry import square_P, square_Q
from fjl.render import raster_ops, render_overview, render_q_zoom


def disjointness_boxes(lattice=16, q_max=32):
    fam = [square_P(j, k) for j in range(-lattice, lattice + 1)
           for k in range(-lattice, lattice + 1)]
    return fam + [square_Q(j, 3) for j in range(1, q_max + 1)]


def bench(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    boxes = disjointness_boxes()
    zoom = raster_ops(render_q_zoom(1, exaggerate=2, ppu=8192))
    overview = raster_ops(render_overview(QBox(-3, 9, -3, 5), ppu=200))

    workloads = {
        f"min_box_gap ({len(boxes)} squares, all pairs)":
            lambda b: kernels.min_box_gap(boxes, backend=b),
        f"paint zoom {zoom[0]}x{zoom[1]}":
            lambda b: kernels.paint(bytearray(3 * zoom[0] * zoom[1]), *zoom, backend=b),
        f"paint overview {overview[0]}x{overview[1]}":
            lambda b: kernels.paint(bytearray(3 * overview[0] * overview[1]), *overview, backend=b),
    }
    names = sorted(kernels.backends())
    print(f"{'workload':48s}" + "".join(f"{n:>12s}" for n in names) + "     speedup")
    for label, fn in workloads.items():
        times = {n: bench(lambda: fn(n), args.repeat) for n in names}
        row = f"{label:48s}" + "".join(f"{times[n]:11.4f}s" for n in names)
        if "cython" in times:
            row += f"  {times['python'] / times['cython']:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
