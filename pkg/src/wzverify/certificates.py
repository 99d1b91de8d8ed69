"""The published WZ certificates, encoded exactly as printed.

Each entry is a kernel B(n, k) plus the rational multipliers RF, RG with
F = B*RF and G = B*RG.  Factorials x! are Gamma(x + 1); (-1)^n and (-1)^k are
folded into the geometric bases.  Nothing here is corrected: if a printed
certificate is wrong, ``check_wz`` reports the defect.
"""

from __future__ import annotations

from fractions import Fraction as Q
from typing import Dict, List

from .exact import K, N, RatFunc
from .hyperterm import HyperTerm, WZPair, fact

h = Q(1, 2)
n, k = N, K


def _B(const, base_n, base_k, up, down) -> HyperTerm:
    gammas = [f for f in up] + [fact(f.alpha, f.beta, f.gamma - 1, -f.exponent) for f in down]
    return HyperTerm(Q(const), Q(base_n), Q(base_k), tuple(gammas))


def _pairs() -> List[WZPair]:
    out: List[WZPair] = []

    def add(identity, tag, proves, B, RF, RG):
        out.append(WZPair(f"id{identity}{tag}", proves, B, RatFunc.coerce(RF), RatFunc.coerce(RG), identity))

    # Identity 1
    add(1, "A", "series",
        _B(1, Q(1, 2 ** 8), Q(1, 2 ** 4),
           [fact(0, 2, 0, 2), fact(2, 0, 0, 3)],
           [fact(1, 1, 0, 2), fact(0, 1, 0, 2), fact(1, 0, 0, 4)]),
        8 * n,
        6 * n + 4 * k + 1)
    add(1, "B", "closed",
        _B(1, Q(1, 2 ** 8), Q(-1, 2 ** 4),
           [fact(0, 2), fact(2, 2), fact(1, -1, -h), fact(2, 0, 0, 2)],
           [fact(0, 1), fact(1, 1, 0, 2), fact(1, 0, -h), fact(1, 0, 0, 4)]),
        RatFunc(16 * n ** 2, 2 * n - 2 * k - 1),
        6 * n + 2 * k + 1)

    # Identity 2
    add(2, "A", "series",
        _B(1, Q(1, 2 ** 12), Q(1, 2 ** 4),
           [fact(2, 2, 0, 2), fact(2, 0, 0, 3)],
           [fact(2, 1, 0, 2), fact(1, 1, 0, 2), fact(1, 0, 0, 4)]),
        32 * n,
        RatFunc((2 * n + 2 * k + 1) ** 2 * (42 * n + 4 * k + 5) - 32 * k * n * (4 * n + 3 * k + 2),
                (2 * n + k + 1) ** 2))
    add(2, "B", "closed",
        _B(1, Q(1, 2 ** 12), Q(-1, 2 ** 4),
           [fact(2, 2, 0, 2), fact(1, -1, -h), fact(2, 0, 0, 2)],
           [fact(1, 1, 0, 2), fact(2, 1), fact(1, 0, -h), fact(1, 0, 0, 4)]),
        RatFunc(128 * n ** 2, 2 * n - 2 * k - 1),
        RatFunc((2 * n + 2 * k + 1) * (42 * n + 2 * k + 5) - 32 * k * n, 2 * n + k + 1))

    # Identity 3
    add(3, "A", "series",
        _B(1, Q(-1, 2 ** 9), Q(1, 2 ** 6),
           [fact(2, 4), fact(2, 0, 0, 2)],
           [fact(1, 2), fact(1, 1, 0, 2), fact(1, 0, 0, 3)]),
        4 * n,
        6 * n + 4 * k + 1)
    add(3, "B", "closed",
        _B(1, Q(1, 2 ** 9), Q(-1, 2 ** 5),
           [fact(2, 2, 0, 2), fact(1, -1, -h), fact(2, 0)],
           [fact(1, 1, 0, 3), fact(1, 0, -h), fact(1, 0, 0, 3)]),
        RatFunc(16 * n ** 2, 2 * n - 2 * k - 1),
        6 * n + 2 * k + 1)

    # Identity 4
    add(4, "A", "series",
        _B(1, Q(-1, 2 ** 10), Q(1, 2 ** 4),
           [fact(0, 2), fact(2, 2), fact(4, 0)],
           [fact(2, 1), fact(1, 1, 0, 2), fact(0, 1), fact(1, 0, 0, 2)]),
        4 * n,
        RatFunc((2 * n + 2 * k + 1) * (20 * n + 4 * k + 3) - 16 * k * n, 2 * n + k + 1))
    add(4, "B", "closed",
        _B(1, Q(1, 2 ** 10), Q(-1, 2 ** 6),
           [fact(2, 2), fact(4, 2), fact(1, -1, -h)],
           [fact(2, 1), fact(1, 1, 0, 2), fact(1, 0, -h), fact(1, 0, 0, 2)]),
        RatFunc(48 * n ** 2, 2 * n - 2 * k - 1),
        RatFunc((2 * n + 2 * k + 1) * (20 * n + 2 * k + 3) - 24 * k * n, 2 * n + 1))

    # Identity 5
    add(5, "A", "series",
        _B(1, Q(-1, 2 ** 15), Q(1, 2 ** 6),
           [fact(2, 4), fact(6, 0)],
           [fact(2, 1), fact(1, 2), fact(1, 1), fact(1, 0), fact(3, 0)]),
        128 * n,
        RatFunc((2 * n + 4 * k + 1) * (154 * n + 16 * k + 15) - 384 * k * n, 2 * n + k + 1))
    add(5, "B", "closed",
        _B(1, Q(1, 2 ** 15), Q(-1, 2 ** 5),
           [fact(2, 2), fact(6, 2), fact(1, -1, -h)],
           [fact(2, 1), fact(3, 1), fact(1, 1), fact(1, 0, -h), fact(1, 0, 0, 2)]),
        RatFunc(512 * n ** 2, 2 * n - 2 * k - 1),
        RatFunc((2 * n + 2 * k + 1) * (6 * n + 2 * k + 3), (2 * n + 1) * (6 * n + 3 * k + 3)) * (154 * n + 6 * k + 15)
        - RatFunc(Q(32, 3) * k * n) * RatFunc(38 * n + 14 * k + 19, (2 * n + 1) * (2 * n + k + 1)))

    # Identity 6
    add(6, "", "closed",
        _B(1, Q(1, 2 ** 8 * 3 ** 2), Q(-3, 2 ** 6),
           [fact(0, 2), fact(2, 2), fact(2, -1, -h), fact(4, 0)],
           [fact(0, 1), fact(1, 1, 0, 2), fact(2, 0, -h), fact(2, 0), fact(1, 0, 0, 2)]),
        RatFunc(36 * n ** 2, 4 * n - 2 * k - 1),
        8 * n + 2 * k + 1)

    # Identity 7
    add(7, "", "closed",
        _B(1, Q(1, 2 ** 12 * 3), Q(-3, 2 ** 6),
           [fact(2, 2), fact(4, 2), fact(1, -1, -h), fact(2, 0)],
           [fact(2, 1, 0, 2), fact(1, 1), fact(1, 0, -h), fact(1, 0, 0, 3)]),
        RatFunc(96 * n ** 2, 2 * n - 2 * k - 1),
        RatFunc((2 * n + 2 * k + 1) * (28 * n + 2 * k + 3) - 24 * k * n, 2 * n + k + 1))

    # Identity 8
    add(8, "A", "series",
        _B(1, Q(-1, 2 ** 12), Q(1, 2 ** 8),
           [fact(0, 2, 0, 4), fact(2, 0, 0, 5)],
           [fact(1, 1, 0, 4), fact(0, 1, 0, 4), fact(1, 0, 0, 6)]),
        8 * n * (2 * n + 4 * k + 1),
        20 * n ** 2 + 8 * n + 1 + 24 * k * n + 8 * k ** 2 + 4 * k)
    add(8, "B", "via_g",
        _B(1, Q(-1, 2 ** 12), Q(-1, 2 ** 6),
           [fact(2, 0, 0, 4), fact(2, 2), fact(0, 2, 0, 2), fact(1, -1, -h)],
           [fact(1, 0, 0, 7), fact(1, 1, 0, 3), fact(0, 1, 0, 2), fact(1, 0, -h)]),
        RatFunc(32 * n ** 3, 2 * n - 2 * k - 1),
        20 * n ** 2 + 12 * k * n + 8 * n + 2 * k + 1)

    # Identity 9
    poly9 = (296 * n * k ** 3 + 1056 * n ** 2 * k ** 2 + 1280 * n ** 3 * k + 528 * n ** 4 + 800 * n ** 3
             + 1344 * n ** 2 * k + 608 * n * k ** 2 + 28 * k ** 3 + 408 * n ** 2 + 384 * n * k
             + 40 * k ** 2 + 72 * n + 16 * k + 1)
    add(9, "A", "series",
        _B(1, Q(-1, 2 ** 20), Q(1, 2 ** 8),
           [fact(2, 2, 0, 4), fact(2, 0, 0, 5)],
           [fact(2, 1, 0, 4), fact(1, 1, 0, 4), fact(1, 0, 0, 6)]),
        128 * n * (6 * n + 4 * k + 1),
        RatFunc((2 * n + 2 * k + 1) ** 4, (2 * n + k + 1) ** 4)
        * (820 * n ** 2 + 180 * n + 13 + 8 * k ** 2 + 20 * k + 72 * n * k)
        - RatFunc(poly9 * 32 * n * k, (2 * n + k + 1) ** 4))
    add(9, "B", "via_g",
        _B(1, Q(-1, 2 ** 20), Q(-1, 2 ** 6),
           [fact(2, 0, 0, 4), fact(2, 2, 0, 3), fact(1, -1, -h)],
           [fact(1, 0, 0, 7), fact(1, 1, 0, 3), fact(2, 1, 0, 2), fact(1, 0, -h)]),
        RatFunc(2048 * n ** 3, 2 * n - 2 * k - 1),
        820 * n ** 2 + 180 * n + 13
        + RatFunc(k, (2 * n + k + 1) ** 2)
        * (1312 * n ** 3 + 1340 * n ** 2 * k + 336 * n * k ** 2 + 1456 * n ** 2 + 828 * n * k
           + 40 * k ** 2 + 472 * n + 79 * k + 36))

    # Identity 10
    add(10, "A", "series",
        _B(1, Q(1, 2 ** 16), Q(1, 2 ** 8),
           [fact(0, 2, 0, 2), fact(2, 2, 0, 2), fact(4, 0), fact(2, 0, 0, 2)],
           [fact(2, 1, 0, 2), fact(1, 1, 0, 4), fact(0, 1, 0, 2), fact(1, 0, 0, 4)]),
        32 * n * (4 * n + 4 * k + 1),
        RatFunc(120 * n ** 2 + 34 * n + 3 + 32 * k ** 2 + 128 * k * n + 16 * k, 4 * n + 4 * k + 1)
        + RatFunc(k * (32 * n ** 3 + 8 * n ** 2 * k + 16 * n + 6 * k * n + 40 * n ** 2 + k + 2),
                  (4 * n + 4 * k + 1) * (2 * n + k + 1) ** 2))
    add(10, "B", "via_g",
        _B(1, Q(1, 2 ** 16), Q(-1, 2 ** 6),
           [fact(2, 0, 0, 2), fact(4, 0), fact(0, 2, 0, 3), fact(2, -1, -h)],
           [fact(1, 0, 0, 6), fact(1, 1, 0, 2), fact(0, 1, 0, 3), fact(2, 0, -h)]),
        RatFunc(512 * n ** 3, 4 * n - 2 * k - 1),
        120 * n ** 2 + 84 * k * n + 34 * n + 10 * k + 3)
    return out


CERTIFICATES: List[WZPair] = _pairs()
BY_NAME: Dict[str, WZPair] = {p.name: p for p in CERTIFICATES}


def for_identity(identity: int) -> List[WZPair]:
    return [p for p in CERTIFICATES if p.identity == identity]
