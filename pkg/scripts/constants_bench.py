"""Time both routes of every constant and report the bits on which they agree."""

import argparse
import math
import time

from wzverify.bigreal import CONSTANT_NAMES, constant


def agreement_bits(x, y) -> float:
    d = abs(x - y)
    return float("inf") if d.is_zero() else -math.log2(float(d / abs(x)))


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--digits", type=int, nargs="+", default=[100, 1000, 5000])
    args = p.parse_args()
    for digits in args.digits:
        prec = int(digits * math.log2(10)) + 32
        for name in CONSTANT_NAMES:
            constant.cache_clear()
            times = []
            vals = []
            for route in (0, 1):
                t0 = time.perf_counter()
                vals.append(constant(name, prec, route))
                times.append(time.perf_counter() - t0)
            bits = agreement_bits(*vals)
            print(f"{digits:>6} digits  {name:8} route0 {times[0] * 1000:8.1f} ms  route1 {times[1] * 1000:8.1f} ms  "
                  f"agree {'all' if math.isinf(bits) else f'{bits:.0f}'} of {prec} bits")


if __name__ == "__main__":
    main()
