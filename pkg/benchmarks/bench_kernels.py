"""Compare the compiled kernels with the numpy fallback, and the FFT matvec
with the direct double sum.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from hankelforms import _pykernels
from hankelforms.operators import hankel_matvec

try:
    from hankelforms import _ckernels
except ImportError:
    _ckernels = None


def best(func, repeat):
    return min(timeit.repeat(func, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(args.seed)

    def cplx(n):
        return rng.standard_normal(n) + 1j * rng.standard_normal(n)

    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels is not None else [])
    print(f"{'kernel':<28}{'size':>8}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'ratio':>9}")
    for n, m in ((64, 4096), (512, 4096), (4096, 1024)):
        c, z = cplx(n), 0.9 * np.exp(2j * np.pi * rng.uniform(size=m))
        z = np.ascontiguousarray(z * rng.uniform(size=m) ** 0.5)
        times = [best(lambda k=k: k.horner(c, z), args.repeat) for _, k in backends]
        _row(f"horner ({m} points)", n, times)
    for n in (256, 1024, 4096):
        mom, x = cplx(2 * n + 1), cplx(n + 1)
        times = [best(lambda k=k: k.hankel_direct(mom, x), args.repeat) for _, k in backends]
        _row("hankel_direct", n, times)
    print()
    print(f"{'matvec':<28}{'size':>8}{'direct':>12}{'fft':>12}{'speedup':>9}")
    for n in (256, 1024, 4096, 16384):
        mom, x = cplx(2 * n + 1), cplx(n + 1)
        k = _ckernels if _ckernels is not None else _pykernels
        direct = best(lambda: k.hankel_direct(mom, x), max(1, args.repeat // 2))
        fft = best(lambda: hankel_matvec(mom, x), args.repeat)
        print(f"{'hankel_matvec':<28}{n:>8}{direct * 1e3:>10.3f}ms{fft * 1e3:>10.3f}ms{direct / fft:>8.1f}x")


def _row(label, n, times):
    cells = "".join(f"{t * 1e3:>10.3f}ms" for t in times)
    ratio = f"{times[0] / times[-1]:>8.1f}x" if len(times) > 1 else ""
    print(f"{label:<28}{n:>8}{cells}{ratio}")


if __name__ == "__main__":
    main()
