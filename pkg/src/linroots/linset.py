"""F_q-linear sets {<(x, F(x))> : x in F_{q^nt}} on PG(1, q^nt).

Points are indexed by their slope m (the point <(1, m)>), plus the point
at infinity <(0, 1)>, which never belongs to these sets.  The weight of
<(1, m)> is dim_{F_q} ker(F(x) - m x).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import EXHAUSTIVE_LIMIT, FieldTooLarge
from .kernel import (
    DegenerateCoefficient,
    evaluate_all,
    f3_quadratic,
    kernel_dim_restricted,
    quadratic_root_location,
    t2_classify,
)
from .linalg import rank
from .linpoly import LinPoly, SigmaForm, Tower, h_poly, make_tower, restricted_dickson


class BadNorm(ValueError):
    pass


@dataclass(frozen=True)
class LinearSet:
    """L_F for F(x) = sum b_i x^{q^{s0 + n i}} = G(x^sigma)."""
    tower: Tower
    s0: int
    b: tuple[int, ...]

    def __post_init__(self):
        if not any(self.b):
            raise ValueError("F must not vanish identically")
        # validates s0 and the length of b
        object.__setattr__(self, "_form", SigmaForm(self.tower, self.s0, tuple(self.b)))

    @property
    def form(self) -> SigmaForm:
        return self._form

    def poly(self) -> LinPoly:
        return h_poly(self._form)

    def slope_form(self, m: int) -> SigmaForm:
        """(F(x) - m x) / m as a sigma-shifted form, for m != 0."""
        fld = self.tower.field
        inv = fld.inv(m)
        return self._form.with_b([fld.mul(inv, x) for x in self.b])

    def g_kernel_dim(self) -> int:
        """dim_{F_{q^n}} ker G."""
        return self.tower.t - rank(restricted_dickson(self._form))


@dataclass
class WeightSpectrum:
    counts: dict[int, int]
    infinity_weight: int
    size: int
    q: int
    rank: int

    @property
    def max_weight(self) -> int:
        return max(self.counts, default=0)

    @property
    def scattered(self) -> bool:
        return self.max_weight == 1

    @property
    def club(self) -> int | None:
        heavy = {w: c for w, c in self.counts.items() if w > 1}
        if len(heavy) == 1 and list(heavy.values()) == [1]:
            return next(iter(heavy))
        return None

    def to_record(self) -> dict:
        return {
            "size": self.size,
            "counts": {str(w): c for w, c in sorted(self.counts.items())},
            "infinity_weight": self.infinity_weight,
            "scattered": self.scattered,
            "club": self.club,
        }


def point_weight(L: LinearSet, slope: int | None) -> int:
    """Weight of <(1, slope)>; ``None`` stands for the point <(0, 1)>."""
    if slope is None:
        return 0
    if slope == 0:
        return L.tower.n * L.g_kernel_dim()
    return kernel_dim_restricted(L.slope_form(slope)).dim


def _weights_exhaustive(L: LinearSet, limit: int) -> np.ndarray:
    fld = L.tower.field
    vals = evaluate_all(L.poly(), limit)
    xs = np.arange(1, fld.order, dtype=np.int64)
    slopes = fld.vdiv(vals[1:], xs)
    hits = np.bincount(slopes, minlength=fld.order)
    q = L.tower.q
    weights = np.zeros(fld.order, dtype=np.int64)
    nz = np.nonzero(hits)[0]
    for m in nz:
        c, w, v = int(hits[m]) + 1, 0, 1
        while v < c:
            v *= q
            w += 1
        if v != c:
            raise AssertionError(f"slope {m} hit by {c - 1} points")
        weights[m] = w
    return weights


def _weights_classify(L: LinearSet) -> np.ndarray:
    fld = L.tower.field
    weights = np.zeros(fld.order, dtype=np.int64)
    weights[0] = point_weight(L, 0)
    for m in range(1, fld.order):
        F = L.slope_form(m)
        try:
            weights[m] = t2_classify(F).dim
        except DegenerateCoefficient:
            weights[m] = kernel_dim_restricted(F).dim
    return weights


def weight_spectrum(L: LinearSet, limit: int = EXHAUSTIVE_LIMIT,
                    method: str = "auto") -> WeightSpectrum:
    """Weights of every point of L, with the counting identities checked.

    ``method`` is ``"exhaustive"`` (enumerate x), ``"classify"`` (closed
    forms per slope, t = 2 and n in {2, 3} only) or ``"auto"``.
    """
    tw = L.tower
    fld, q = tw.field, tw.q
    if method == "auto":
        if fld.order <= limit:
            method = "exhaustive"
        elif tw.t == 2 and tw.n in (2, 3):
            method = "classify"
        else:
            raise FieldTooLarge(f"field of order {fld.order} exceeds the limit {limit} "
                                "and no closed form applies")
    if method == "exhaustive":
        weights = _weights_exhaustive(L, limit)
    elif method == "classify":
        if not (tw.t == 2 and tw.n in (2, 3)):
            raise ValueError("closed-form weights need t = 2 and n in {2, 3}")
        weights = _weights_classify(L)
    else:
        raise ValueError(f"unknown method {method!r}")

    vals, cnts = np.unique(weights[weights > 0], return_counts=True)
    counts = {int(w): int(c) for w, c in zip(vals, cnts)}
    spec = WeightSpectrum(counts, int(weights[0]), int(sum(counts.values())), q, tw.field.m // tw.e)
    _check_spectrum(L, spec, weights)
    return spec


def _check_spectrum(L: LinearSet, spec: WeightSpectrum, weights: np.ndarray):
    q, k = spec.q, spec.rank
    if sum(spec.counts.values()) != spec.size:
        raise AssertionError("point count identity fails")
    lhs = sum(c * (q**w - 1) // (q - 1) for w, c in spec.counts.items())
    if lhs != (q**k - 1) // (q - 1):
        raise AssertionError("vector count identity fails")
    hG = L.g_kernel_dim()
    if spec.infinity_weight != L.tower.n * hG:
        raise AssertionError("weight of <(1,0)> differs from dim ker G")
    rest = weights[1:]
    if rest.size and int(rest.max()) > L.tower.t - hG:
        raise AssertionError("a point exceeds the weight bound t - dim ker G")


def is_scattered(L: LinearSet, limit: int = EXHAUSTIVE_LIMIT) -> bool:
    return weight_spectrum(L, limit).scattered


def is_club(L: LinearSet, limit: int = EXHAUSTIVE_LIMIT) -> int | None:
    return weight_spectrum(L, limit).club


def trace_linear_set(tower: Tower, s0: int = 1) -> LinearSet:
    """F = Tr_{q^nt/q^n} o sigma, i.e. all b_i = 1."""
    return LinearSet(tower, s0, (1,) * tower.t)


# -- the family x^{q^5} + alpha x^{q^2} on PG(1, q^6) ----------------------------

def f3_tower(p: int, e: int = 1) -> Tower:
    return make_tower(p, e, 3, 2)


def f3_linear_set(tower: Tower, alpha: int) -> LinearSet:
    return LinearSet(tower, 5, (1, alpha))


@dataclass
class F3Verdict:
    scattered: bool
    root_location: str
    A: int
    beta: int
    gamma: int


def scattered_f3_criterion(tower: Tower, alpha: int) -> F3Verdict:
    """Closed-form scatteredness test for x^{q^5} + alpha x^{q^2}."""
    fld, e = tower.field, tower.e
    if (tower.n, tower.t) != (3, 2):
        raise ValueError("this criterion lives on F_{q^6} viewed with n = 3, t = 2")
    nrm = fld.norm_between(alpha, 6 * e, 3 * e)
    if nrm in (0, 1):
        raise BadNorm("N_{q^6/q^3}(alpha) must avoid 0 and 1")
    A, beta, gamma = f3_quadratic(fld, e, alpha)
    for c in (beta, gamma):
        if not fld.in_subfield(c, e):
            raise AssertionError("quadratic coefficients left F_q")
    loc = quadratic_root_location(fld, e, beta, gamma)
    return F3Verdict(loc == "two_in_Fq", loc, A, beta, gamma)


def lf3_cardinality(tower: Tower, alpha: int) -> dict:
    """Size of L_{f_3} and its number of weight-2 points."""
    verdict = scattered_f3_criterion(tower, alpha)
    q = tower.q
    x2 = {"two_in_Fq2": 2 * (q * q + q + 1), "one": q * q + q + 1, "two_in_Fq": 0}[
        verdict.root_location]
    size = (q**6 - 1) // (q - 1) - q * x2
    return {"size": size, "x_2": x2, "root_location": verdict.root_location}


def search_alpha(tower: Tower) -> list[int]:
    """Every alpha in F_{q^6}^* making L_{f_3} scattered, ascending."""
    fld, e = tower.field, tower.e
    found = []
    for alpha in range(1, fld.order):
        if fld.norm_between(alpha, 6 * e, 3 * e) == 1:
            continue
        if scattered_f3_criterion(tower, alpha).scattered:
            found.append(alpha)
    return found
