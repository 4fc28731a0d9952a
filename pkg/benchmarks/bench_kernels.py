"""Time the compiled and pure-Python thinning / crossing-number kernels.

    python benchmarks/bench_kernels.py [--repeat N] [--size PX]
"""
import argparse
import statistics
import time

import numpy as np

from ridgekit import _pykernels, kernels, synthetic
from ridgekit.pipeline import features_for_radius, prepare
from ridgekit.config import PipelineConfig


def ridge_binary(size: int) -> np.ndarray:
    img = synthetic.impression(synthetic.make_finger(11), 3)
    cfg = PipelineConfig(working_size=size)
    prep = prepare(img, cfg)
    return features_for_radius(prep, cfg, radius=size).binary


def timeit(fn, arg, repeat: int) -> float:
    fn(arg)
    samples = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn(arg)
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--size", type=int, default=400)
    args = parser.parse_args()

    binary = ridge_binary(args.size)
    skeleton = _pykernels.thin(binary).astype(bool)
    backends = {"python": _pykernels}
    if kernels.compiled_backend is not None:
        backends["cython"] = kernels.compiled_backend
    else:
        print("compiled extension not built; timing the Python fallback only")

    print(f"input {binary.shape[1]}x{binary.shape[0]}, {int(binary.sum())} ridge pixels")
    print(f"{'kernel':<18}{'backend':<10}{'median ms':>12}")
    results = {}
    for name, backend in backends.items():
        for kernel, arg in (("thin", binary), ("crossing_numbers", skeleton)):
            t = timeit(getattr(backend, kernel), arg, args.repeat)
            results[(kernel, name)] = t
            print(f"{kernel:<18}{name:<10}{1000 * t:>12.2f}")
    if "cython" in backends:
        for kernel in ("thin", "crossing_numbers"):
            print(f"{kernel} speed-up: {results[(kernel, 'python')] / results[(kernel, 'cython')]:.1f}x")


if __name__ == "__main__":
    main()
