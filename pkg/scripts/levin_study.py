"""Levin u-transform against plain partial sums on sum (1/2)_n^2 / (a+1)_n^2.

Terms decay like n^(-1-2a), so direct summation gains digits only
logarithmically while the transform gains them geometrically in the order.
"""

import argparse
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

import mpmath

from wzverify.bigreal import BigFloat
from wzverify.series import A, PochhammerSeries, iter_terms, levin_u

SERIES = PochhammerSeries((A(0, Fraction(1, 2)), A(0, Fraction(1, 2))), (A(1, 1), A(1, 1)), 1)


@dataclass
class LevinStudy:
    points: Tuple[str, ...] = ("1/10", "3/10", "1/2", "7/4")
    orders: Tuple[int, ...] = (10, 20, 40, 80, 120, 160)
    direct_terms: Tuple[int, ...] = (100, 1000, 10000)
    prec: int = 256


def reference(a: Fraction) -> mpmath.mpf:
    with mpmath.workprec(600):
        x = mpmath.mpf(a.numerator) / a.denominator
        return mpmath.hyp3f2(0.5, 0.5, 1, x + 1, x + 1, 1)


def run(s: LevinStudy):
    rows = []
    top = max(s.orders)
    wp = 2 * s.prec + 4 * top
    for a in map(Fraction, s.points):
        ref = reference(a)
        terms, partial, direct = [], BigFloat(0, 200), {}
        for n, _, t in iter_terms(SERIES, a, wp):
            if n <= top:
                terms.append(t)
            partial = partial + t.with_prec(200)
            if n + 1 in s.direct_terms:
                direct[n + 1] = partial
            if n + 1 >= max(s.direct_terms) and n >= top:
                break

        def err(v):
            with mpmath.workprec(600):
                return float(abs(mpmath.mpf(v.to_decimal(170)) - ref) / ref)

        rows.append((a, [err(levin_u(terms[: m + 1])) for m in s.orders], [err(direct[m]) for m in s.direct_terms]))
    return rows


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--prec", type=int, default=256)
    s = LevinStudy(prec=p.parse_args().prec)
    print("a      " + " ".join(f"L{m:<7}" for m in s.orders) + " " + " ".join(f"N={m:<6}" for m in s.direct_terms))
    for a, lev, direct in run(s):
        print(f"{str(a):6} " + " ".join(f"{e:<8.1e}" for e in lev) + " " + " ".join(f"{e:<8.1e}" for e in direct))


if __name__ == "__main__":
    main()
