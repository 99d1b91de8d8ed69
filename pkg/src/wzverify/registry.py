"""Declarative table of the ten extended Ramanujan-type identities.

Each identity has a left side f(a) (a linearly convergent series with weight
polynomial in n + a) and one or more right-hand-side variants.  Variant names:

``series``    a polynomial in a times one slowly convergent auxiliary series
``closed``    closed-form prefactor plus a correction series
``via_g``     a closed-form multiple of another identity's f, g(a), plus a series
``expanded``  ``via_g`` with g(a) replaced by that identity's ``closed`` form
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import closedform as cf
from .certificates import BY_NAME
from .closedform import CATALAN, LN2, LN3, PI, SQRT2, SQRT3, ZETA3, CosPi, Expr, PochA, Pow, a, affine
from .exact import K, N, BiPoly
from .hyperterm import WZPair
from .series import A, PochhammerSeries

h = Fraction(1, 2)


def shifted_weight(coeffs) -> BiPoly:
    """sum_i coeffs[i] * (n + a)**i as a polynomial in (n, a)."""
    m = N + K
    out = BiPoly.const(0)
    for i, c in enumerate(coeffs):
        out = out + m ** i * c
    return out


def _series(z, num, den, weight: Optional[BiPoly] = None, label: str = "") -> PochhammerSeries:
    return PochhammerSeries(tuple(num), tuple(den), Fraction(z), weight if weight is not None else BiPoly.const(1), label)


@dataclass(frozen=True)
class RhsTerm:
    coeff: Expr
    series: Optional[PochhammerSeries] = None

    def to_json(self) -> dict:
        return {"coeff": cf.to_json(self.coeff), "series": None if self.series is None else self.series.to_json()}

    @classmethod
    def from_json(cls, d) -> "RhsTerm":
        s = d.get("series")
        return cls(cf.from_json(d["coeff"]), None if s is None else PochhammerSeries.from_json(s))


@dataclass(frozen=True)
class RhsVariant:
    label: str
    terms: Tuple[RhsTerm, ...]

    def to_json(self) -> dict:
        return {"label": self.label, "terms": [t.to_json() for t in self.terms]}

    @classmethod
    def from_json(cls, d) -> "RhsVariant":
        return cls(d["label"], tuple(RhsTerm.from_json(t) for t in d["terms"]))


@dataclass(frozen=True)
class CatalanLimit:
    """lim_{a->0} [f(a) - c(a) g(a)] / a**3, with c the g-coefficient of the ``via_g`` variant.

    The inner-series route reads the limit as ``inner_coeff * sum(inner_series at a = 0)``.
    """

    value: Expr
    inner_coeff: Fraction
    inner_series: PochhammerSeries

    def to_json(self) -> dict:
        return {"value": cf.to_json(self.value), "inner_coeff": str(self.inner_coeff),
                "inner_series": self.inner_series.to_json()}

    @classmethod
    def from_json(cls, d) -> "CatalanLimit":
        return cls(cf.from_json(d["value"]), Fraction(d["inner_coeff"]), PochhammerSeries.from_json(d["inner_series"]))


@dataclass(frozen=True)
class IdentityDef:
    id: int
    lhs_z: Fraction
    lhs_num: Tuple
    lhs_den: Tuple
    lhs_weight: Tuple[int, ...]  # coefficients of the weight in powers of (n + a)
    rhs_variants: Tuple[RhsVariant, ...]
    special_values: Tuple[Tuple[Fraction, Expr], ...] = ()
    derivatives_at_0: Tuple[Expr, Expr, Expr] = None
    aux_g: Optional[int] = None  # identity whose f serves as g
    expanded_from: Optional[Tuple[str, str]] = None  # (variant with g, variant of g substituted)
    catalan_limit: Optional[CatalanLimit] = None
    singular_a: Tuple[Fraction, ...] = ()
    wz_pairs: Tuple[str, ...] = field(default=())

    @property
    def lhs(self) -> PochhammerSeries:
        return _series(self.lhs_z, self.lhs_num, self.lhs_den, shifted_weight(self.lhs_weight), f"f{self.id}")

    def variant(self, label: str) -> RhsVariant:
        for v in self.rhs_variants:
            if v.label == label:
                return v
        raise KeyError(f"identity {self.id} has no variant {label!r}")

    @property
    def variant_labels(self) -> List[str]:
        return [v.label for v in self.rhs_variants]

    def pairs(self) -> List[WZPair]:
        return [BY_NAME[name] for name in self.wz_pairs]

    def with_lhs_weight(self, coeffs) -> "IdentityDef":
        return replace(self, lhs_weight=tuple(coeffs))

    def to_json(self) -> dict:
        d = {
            "id": self.id,
            "lhs": {"z": str(self.lhs_z), "num": [p.to_json() for p in self.lhs_num],
                    "den": [q.to_json() for q in self.lhs_den], "weight_in_n_plus_a": list(self.lhs_weight)},
            "rhs_variants": [v.to_json() for v in self.rhs_variants],
            "special_values": [{"a": str(x), "value": cf.to_json(e)} for x, e in self.special_values],
            "derivatives_at_0": [cf.to_json(e) for e in self.derivatives_at_0],
            "aux_g": self.aux_g,
            "expanded_from": None if self.expanded_from is None else list(self.expanded_from),
            "catalan_limit": None if self.catalan_limit is None else self.catalan_limit.to_json(),
            "singular_a": [str(x) for x in self.singular_a],
            "wz_pairs": [BY_NAME[p].to_json() for p in self.wz_pairs],
        }
        return d

    @classmethod
    def from_json(cls, d) -> "IdentityDef":
        from .series import Affine

        lhs = d["lhs"]
        cat = d.get("catalan_limit")
        exp_from = d.get("expanded_from")
        return cls(
            id=d["id"],
            lhs_z=Fraction(lhs["z"]),
            lhs_num=tuple(Affine.from_json(p) for p in lhs["num"]),
            lhs_den=tuple(Affine.from_json(q) for q in lhs["den"]),
            lhs_weight=tuple(lhs["weight_in_n_plus_a"]),
            rhs_variants=tuple(RhsVariant.from_json(v) for v in d["rhs_variants"]),
            special_values=tuple((Fraction(s["a"]), cf.from_json(s["value"])) for s in d["special_values"]),
            derivatives_at_0=tuple(cf.from_json(e) for e in d["derivatives_at_0"]),
            aux_g=d.get("aux_g"),
            expanded_from=None if exp_from is None else tuple(exp_from),
            catalan_limit=None if cat is None else CatalanLimit.from_json(cat),
            singular_a=tuple(Fraction(x) for x in d["singular_a"]),
            wz_pairs=tuple(p["name"] for p in d["wz_pairs"]),
        )


# ---------------------------------------------------------------------------
# shorthands for the table below

def P(x) -> PochA:
    return PochA(Fraction(x))


def cos_pi(slope=1, offset=0) -> CosPi:
    return CosPi(affine(slope, offset))


def base_pow(base, slope=1, offset=0) -> Pow:
    return Pow(Fraction(base), affine(slope, offset))


def c(x) -> A:
    """Constant parameter."""
    return A(0, x)


def term(coeff, series=None) -> RhsTerm:
    return RhsTerm(cf.wrap(coeff), series)


one_a = P(1)
half_a = P(h)
quarter_ratio = one_a ** 3 / (P(h) * P(Fraction(1, 4)) * P(Fraction(3, 4)))

# a + 1/2, a + 1, ...
ah, a1, a2h = A(1, h), A(1, 1), A(2, 1)
pole_2a = 2 * a - 1
pole_4a = 4 * a - 1


def _ids() -> List[IdentityDef]:
    out: List[IdentityDef] = []

    def v(label, *terms) -> RhsVariant:
        return RhsVariant(label, tuple(terms))

    out.append(IdentityDef(
        1, Fraction(1, 4), (ah,) * 3, (a1,) * 3, (1, 6),
        (v("series", term(8 * a, _series(1, [c(h), c(h)], [a1, a1]))),
         v("closed",
           term(4 / PI * base_pow(4) / cos_pi() ** 2 * one_a ** 3 / half_a ** 3),
           term(16 * a ** 2 / pole_2a, _series(1, [c(h), ah], [a1, A(-1, Fraction(3, 2))])))),
        special_values=((h, PI ** 2 / 2),),
        derivatives_at_0=(4 / PI, 32 / PI * LN2, 4 / PI * (64 * LN2 ** 2 - 3 * PI ** 2)),
        singular_a=(h,),
        wz_pairs=("id1A", "id1B"),
    ))
    out.append(IdentityDef(
        2, Fraction(1, 64), (ah,) * 3, (a1,) * 3, (5, 42),
        (v("series", term(32 * a, _series(1, [ah, ah], [a2h, a2h]))),
         v("closed",
           term(16 / PI * base_pow(64) / cos_pi() ** 2 * one_a ** 3 / half_a ** 3),
           term(128 * a ** 2 / pole_2a, _series(1, [ah, ah], [a2h, A(-1, Fraction(3, 2))])))),
        special_values=((h, 8 * PI ** 2 / 3),),
        derivatives_at_0=(16 / PI, 192 / PI * LN2, 16 / PI * (144 * LN2 ** 2 - 7 * PI ** 2)),
        singular_a=(h,),
        wz_pairs=("id2A", "id2B"),
    ))
    out.append(IdentityDef(
        3, Fraction(-1, 8), (ah,) * 3, (a1,) * 3, (1, 6),
        (v("series", term(4 * a, _series(1, [A(h, Fraction(1, 4)), A(h, Fraction(3, 4))], [a1, a1]))),
         v("closed",
           term(2 * SQRT2 / PI * base_pow(8) / cos_pi() * one_a ** 3 / half_a ** 3),
           term(16 * a ** 2 / pole_2a, _series(h, [ah, ah], [a1, A(-1, Fraction(3, 2))])))),
        special_values=((h, 4 * CATALAN),),
        derivatives_at_0=(2 * SQRT2 / PI, 18 * SQRT2 / PI * LN2, 2 * SQRT2 / PI * (81 * LN2 ** 2 - 4 * PI ** 2)),
        singular_a=(h,),
        wz_pairs=("id3A", "id3B"),
    ))
    out.append(IdentityDef(
        4, Fraction(-1, 4), (ah, A(1, Fraction(1, 4)), A(1, Fraction(3, 4))), (a1,) * 3, (3, 20),
        (v("series", term(16 * a, _series(1, [c(h), ah], [a1, a2h]))),
         v("closed",
           term(8 / PI * base_pow(4) / cos_pi() * quarter_ratio),
           term(48 * a ** 2 / pole_2a, _series(Fraction(1, 4), [ah, A(2, h)], [a1, A(-1, Fraction(3, 2))])))),
        special_values=((h, 16 * LN2),),
        derivatives_at_0=(8 / PI, 80 / PI * LN2, 8 / PI * (100 * LN2 ** 2 - 5 * PI ** 2)),
        singular_a=(h,),
        wz_pairs=("id4A", "id4B"),
    ))
    out.append(IdentityDef(
        5, Fraction(-27, 512), (ah, A(1, Fraction(1, 6)), A(1, Fraction(5, 6))), (a1,) * 3, (15, 154),
        (v("series", term(128 * a, _series(1, [A(h, Fraction(1, 4)), A(h, Fraction(3, 4))], [a1, a2h]))),
         v("closed",
           term(32 * SQRT2 / PI * base_pow(Fraction(512, 27)) / cos_pi()
                * one_a ** 3 / (P(h) * P(Fraction(1, 6)) * P(Fraction(5, 6)))),
           term(512 * a ** 2 / pole_2a, _series(h, [ah, A(3, h)], [a2h, A(-1, Fraction(3, 2))])))),
        special_values=((h, 128 * LN2),),
        derivatives_at_0=(32 * SQRT2 / PI, 480 * SQRT2 / PI * LN2, 32 * SQRT2 / PI * (225 * LN2 ** 2 - 11 * PI ** 2)),
        singular_a=(h,),
        wz_pairs=("id5A", "id5B"),
    ))
    out.append(IdentityDef(
        6, Fraction(1, 9), (ah, A(1, Fraction(1, 4)), A(1, Fraction(3, 4))), (a1,) * 3, (1, 8),
        (v("closed",
           term(2 * SQRT3 / PI * base_pow(9) / cos_pi(2) * quarter_ratio),
           term(36 * a ** 2 / pole_4a, _series(Fraction(3, 4), [c(h), ah], [a1, A(-2, Fraction(3, 2))]))),),
        special_values=((h, SQRT3 * PI),),
        derivatives_at_0=(2 * SQRT3 / PI, 4 * SQRT3 / PI * (LN3 + 4 * LN2),
                          4 * SQRT3 / PI * (32 * LN2 ** 2 + 2 * LN3 ** 2 + 16 * LN3 * LN2 - 3 * PI ** 2)),
        singular_a=(Fraction(1, 4),),
        wz_pairs=("id6",),
    ))
    out.append(IdentityDef(
        7, Fraction(-1, 48), (ah, A(1, Fraction(1, 4)), A(1, Fraction(3, 4))), (a1,) * 3, (3, 28),
        (v("closed",
           term(16 * SQRT3 / (3 * PI) * base_pow(48) / cos_pi() * quarter_ratio),
           term(96 * a ** 2 / pole_2a, _series(Fraction(3, 4), [ah, A(2, h)], [a2h, A(-1, Fraction(3, 2))]))),),
        derivatives_at_0=(16 * SQRT3 / (3 * PI), 16 * SQRT3 / (3 * PI) * (LN3 + 12 * LN2),
                          16 * SQRT3 / (3 * PI) * (144 * LN2 ** 2 + LN3 ** 2 + 24 * LN3 * LN2 - 9 * PI ** 2)),
        singular_a=(h,),
        wz_pairs=("id7",),
    ))

    catalan_series = _series(1, [c(h)] * 3, [c(1), c(1), c(Fraction(3, 2))], label="catalan")
    g1, g2 = out[0].lhs, out[1].lhs
    g_coeff8 = 2 / PI / cos_pi() * one_a ** 2 / half_a ** 2
    tail8 = _series(1, [c(h), c(h), ah], [a1, a1, A(-1, Fraction(3, 2))])
    out.append(IdentityDef(
        8, Fraction(-1, 4), (ah,) * 5, (a1,) * 5, (1, 8, 20),
        (v("series", term(8 * a, _series(1, [c(h)] * 4, [a1] * 4, 4 * N + 2 * K + 1))),
         v("via_g", term(g_coeff8, g1), term(32 * a ** 3 / pole_2a, tail8)),
         v("expanded",
           term(8 / PI ** 2 * base_pow(4) / cos_pi() ** 3 * one_a ** 5 / half_a ** 5),
           term(32 / PI / cos_pi() * one_a ** 2 / half_a ** 2 * a ** 2 / pole_2a,
                _series(1, [c(h), ah], [a1, A(-1, Fraction(3, 2))])),
           term(32 * a ** 3 / pole_2a, tail8))),
        special_values=((h, 7 * ZETA3),),
        derivatives_at_0=(8 / PI ** 2, 96 / PI ** 2 * LN2, 64 / (3 * PI ** 2) * (54 * LN2 ** 2 - PI ** 2)),
        aux_g=1,
        expanded_from=("via_g", "closed"),
        catalan_limit=CatalanLimit(-128 * CATALAN / PI, Fraction(-32), catalan_series),
        singular_a=(h,),
        wz_pairs=("id8A", "id8B"),
    ))
    g_coeff9 = 8 / PI * base_pow(16) / cos_pi() * one_a ** 2 / half_a ** 2
    tail9 = _series(1, [ah] * 3, [a2h, a2h, A(-1, Fraction(3, 2))])
    out.append(IdentityDef(
        9, Fraction(-1, 1024), (ah,) * 5, (a1,) * 5, (13, 180, 820),
        (v("series", term(128 * a, _series(1, [ah] * 4, [a2h] * 4, 4 * N + 6 * K + 1))),
         v("via_g", term(g_coeff9, g2), term(2048 * a ** 3 / pole_2a, tail9)),
         v("expanded",
           term(128 / PI ** 2 * base_pow(1024) / cos_pi() ** 3 * one_a ** 5 / half_a ** 5),
           term(1024 / PI * base_pow(16) / cos_pi() * one_a ** 2 / half_a ** 2 * a ** 2 / pole_2a,
                _series(1, [ah, ah], [a2h, A(-1, Fraction(3, 2))])),
           term(2048 * a ** 3 / pole_2a, tail9))),
        special_values=((h, 256 * ZETA3),),
        derivatives_at_0=(128 / PI ** 2, 2560 / PI ** 2 * LN2, 2560 / (3 * PI ** 2) * (60 * LN2 ** 2 - PI ** 2)),
        aux_g=2,
        expanded_from=("via_g", "closed"),
        catalan_limit=CatalanLimit(-8192 * CATALAN / PI, Fraction(-2048), catalan_series),
        singular_a=(h,),
        wz_pairs=("id9A", "id9B"),
    ))
    quarter_pair = one_a ** 2 / (P(Fraction(1, 4)) * P(Fraction(3, 4)))
    g_coeff10 = 2 / PI / (base_pow(4) * cos_pi(2)) * quarter_pair
    tail10 = _series(1, [c(h)] * 3, [a1, a1, A(-2, Fraction(3, 2))])
    out.append(IdentityDef(
        10, Fraction(1, 16), (ah, ah, ah, A(1, Fraction(1, 4)), A(1, Fraction(3, 4))), (a1,) * 5, (3, 34, 120),
        (v("series", term(32 * a, _series(1, [c(h), c(h), ah, ah], [a1, a1, a2h, a2h], 4 * N + 4 * K + 1))),
         v("via_g", term(g_coeff10, g2), term(512 * a ** 3 / pole_4a, tail10)),
         v("expanded",
           term(32 / PI ** 2 * base_pow(16) / (cos_pi() ** 2 * cos_pi(2)) * one_a ** 5
                / (half_a ** 3 * P(Fraction(1, 4)) * P(Fraction(3, 4)))),
           term(256 / PI / (base_pow(4) * cos_pi(2)) * quarter_pair * a ** 2 / pole_2a,
                _series(1, [ah, ah], [a2h, A(-1, Fraction(3, 2))])),
           term(512 * a ** 3 / pole_4a, tail10))),
        special_values=((h, 16 * PI ** 2 / 3),),
        derivatives_at_0=(32 / PI ** 2, 512 / PI ** 2 * LN2, 64 / (3 * PI ** 2) * (384 * LN2 ** 2 - 7 * PI ** 2)),
        aux_g=2,
        expanded_from=("via_g", "closed"),
        catalan_limit=CatalanLimit(-2048 * CATALAN / PI, Fraction(-512), catalan_series),
        singular_a=(Fraction(1, 4), h),
        wz_pairs=("id10A", "id10B"),
    ))
    return out


IDENTITIES: Dict[int, IdentityDef] = {d.id: d for d in _ids()}

# Guessed closed forms of S(a) = lim_k sum_n G(n + a, k); only one is known.
BOUNDARY_FORMS: Dict[str, Expr] = {"id1B": 4 / PI / cos_pi() ** 2}

DEFAULT_GRID: Tuple[Fraction, ...] = (Fraction(1, 10), Fraction(1, 5), Fraction(3, 10), Fraction(2, 5))


def get(identity: int) -> IdentityDef:
    try:
        return IDENTITIES[identity]
    except KeyError:
        raise KeyError(f"no identity {identity}; known: 1..10") from None


def g_series(d: IdentityDef) -> Optional[PochhammerSeries]:
    return None if d.aux_g is None else IDENTITIES[d.aux_g].lhs


def default_grid(d: IdentityDef) -> List[Fraction]:
    pts = list(DEFAULT_GRID) + [x for x, _ in d.special_values]
    return sorted(set(pts))


def compose(d: IdentityDef, registry: Optional[Dict[int, IdentityDef]] = None) -> RhsVariant:
    """The ``via_g`` variant with every g-series term replaced by g's own right-hand side."""
    registry = registry or IDENTITIES
    if d.expanded_from is None:
        raise ValueError(f"identity {d.id} has no composed variant")
    with_g, g_variant = d.expanded_from
    g_def = registry[d.aux_g]
    g = g_def.lhs
    g_rhs = g_def.variant(g_variant)
    terms: List[RhsTerm] = []
    for t in d.variant(with_g).terms:
        if t.series == g:
            terms.extend(RhsTerm(t.coeff * s.coeff, s.series) for s in g_rhs.terms)
        else:
            terms.append(t)
    return RhsVariant(f"{with_g}+{g_variant}", tuple(terms))


def export_document() -> dict:
    return {
        "identities": [IDENTITIES[i].to_json() for i in sorted(IDENTITIES)],
        "boundary_forms": {k: cf.to_json(v) for k, v in BOUNDARY_FORMS.items()},
        "certificates": [p.to_json() for p in sorted(BY_NAME.values(), key=lambda p: (p.identity, p.name))],
    }


def import_document(doc: dict) -> Dict[int, IdentityDef]:
    return {d["id"]: IdentityDef.from_json(d) for d in doc["identities"]}

