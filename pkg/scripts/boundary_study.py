"""How fast do the column sums of the first pair B approach S(a) = 4 / (pi cos^2 pi a)?

For each a, prints the raw column sum at the largest k, and the power-law
extrapolation using the first m column sums, against the closed form.
"""

import argparse
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Tuple

from wzverify import closedform as cf
from wzverify.certificates import BY_NAME
from wzverify.checks import boundary_columns
from wzverify.registry import BOUNDARY_FORMS
from wzverify.wzsums import extrapolate_columns, row_decay_exponent, row_sum


@dataclass
class BoundaryStudy:
    pair: str = "id1B"
    points: Tuple[str, ...] = ("0", "1/10", "1/4", "3/10", "2/5")
    ks: Tuple[int, ...] = (32, 64, 128, 256, 512, 1024)
    prec: int = 256
    min_columns: int = 3
    errors: dict = field(default_factory=dict)


def run(s: BoundaryStudy) -> BoundaryStudy:
    pair = BY_NAME[s.pair]
    for a in map(Fraction, s.points):
        ref = cf.evaluate(BOUNDARY_FORMS[s.pair], a, s.prec)
        cols = boundary_columns(pair, a, s.prec, s.ks)
        raw = abs(float((cols[-1] - ref) / ref))
        row = [raw]
        if row_sum(pair, a, s.prec).value.is_zero():
            # F(a, k) vanishes, so every column already equals S(a)
            s.errors[str(a)] = row
            continue
        exponent = Fraction(row_decay_exponent(pair, a)).limit_denominator(10 ** 6) + 1
        for m in range(s.min_columns, len(s.ks) + 1):
            value, _ = extrapolate_columns(s.ks[-m:], cols[-m:], exponent, s.prec)
            row.append(abs(float((value - ref) / ref)))
        s.errors[str(a)] = row
    return s


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--prec", type=int, default=256)
    s = run(BoundaryStudy(prec=p.parse_args().prec))
    head = "  ".join(f"m={m:<6}" for m in range(s.min_columns, len(s.ks) + 1))
    print(f"{'a':>6}  {'raw k=' + str(s.ks[-1]):<10}  {head}")
    for a, row in s.errors.items():
        print(f"{a:>6}  " + "  ".join(f"{e:<8.1e}" for e in row))


if __name__ == "__main__":
    main()
