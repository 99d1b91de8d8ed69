"""Try minimal corrections on the certificates that fail the exact WZ check.

The package keeps the printed certificates untouched; this script only
reports which single edit makes each failing one valid.
"""

from dataclasses import replace

from wzverify.certificates import BY_NAME
from wzverify.exact import K, N, RatFunc
from wzverify.hyperterm import check_wz


def flip_sign_n(p):
    return replace(p, B=replace(p.B, base_n=-p.B.base_n))


def main() -> None:
    candidates = {
        "id3B": ("insert (-1)^n in B", flip_sign_n),
        "id4B": ("insert (-1)^n in B", flip_sign_n),
        "id5B": ("insert (-1)^n in B", flip_sign_n),
        "id7": ("insert (-1)^n in B", flip_sign_n),
        "id4A": ("F = 16 B n instead of 4 B n", lambda p: replace(p, RF=RatFunc(16 * N))),
        "id10A": ("drop the common (4n+4k+1) divisor of G", lambda p: replace(p, RG=p.RG * (4 * N + 4 * K + 1))),
    }
    for name, (label, fix) in candidates.items():
        p = BY_NAME[name]
        before = check_wz(p).valid
        after = check_wz(fix(p)).valid
        print(f"{name:6} printed: {'valid' if before else 'INVALID':8} {label:48} -> {'valid' if after else 'still invalid'}")


if __name__ == "__main__":
    main()
