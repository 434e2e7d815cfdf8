"""Desk-scale acceptance checks shared by ``linroots selftest`` and the test suite.

Golden values live in ``GOLDEN`` so a caller can pass a corrupted copy and
watch the matching check fail.
"""

from __future__ import annotations

import copy
import random
import time
from dataclasses import dataclass

from .gf import make_field
from .kernel import (
    g_kernel_bound,
    gow_bound,
    kernel_dim_all,
    kernel_dim_bruteforce,
    kernel_dim_dickson,
    kernel_dim_restricted,
    permutation_check,
    plant_g_root,
    plant_root,
    random_sigma_form,
    t2_classify,
    trinomial_bound,
)
from .linalg import Matrix, det
from .linpoly import LinPoly, SigmaForm, dickson, embed, evaluate, make_tower
from .linset import (
    f3_linear_set,
    f3_tower,
    is_scattered,
    lf3_cardinality,
    search_alpha,
    trace_linear_set,
    weight_spectrum,
)
from .roots import fp_span, roots_via_L

GOLDEN = {
    # f = -x - x^q + x^{q^4} with n = 3, s0 = 1, i.e. b = (-1, 1, 0, ...)
    "trinomial": {"p": 2, "n": 3, "t": 5, "s0": 1, "b": (-1, 1, 0, 0, 0), "dim": 4},
    "trinomial_t4": {7: 1, 13: 1, 2: 0, 3: 0, 5: 0, 11: 0, 17: 0},
    "trinomial_t3": {5: 0, 7: 0, 13: 0, 37: 1, 41: 0},
    "trinomial_t2": {5: 0, 7: 0, 13: 0, 37: 1, 41: 0},
    "dickson_4x4": {
        "rows": ((-1, 3, -3, 0), (0, -1, 3, -3), (-3, 0, -1, 3), (3, -3, 0, -1)),
        "det": 91,
        "det1": 9,
        "primes": (2, 3, 5, 7, 11, 13, 17, 37, 41),
    },
    "random_instances": 500,
    "bound_instances": 1000,
    "f3_q3_x2": (0, 13, 26),
    "club": {"p": 2, "n": 2, "t": 3, "i": 4},
}

SEED = 20240


@dataclass
class Outcome:
    key: str
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.key} {self.title}: {self.detail}"


class Failed(Exception):
    pass


def _require(cond: bool, msg: str):
    if not cond:
        raise Failed(msg)


def _trinomial(p: int, t: int, b=None) -> SigmaForm:
    tw = make_tower(p, 1, 3, t)
    fld = tw.field
    b = b if b is not None else (-1, 1) + (0,) * (t - 2)
    return SigmaForm(tw, 1, tuple(fld.scalar(c % p) for c in b))


# -- 1: the worked trinomial ----------------------------------------------------

def check_trinomial_t5(g) -> str:
    c = g["trinomial"]
    F = _trinomial(c["p"], c["t"], c["b"])
    reports = kernel_dim_all(F)
    dims = {m: r.dim for m, r in reports.items()}
    _require("brute" in dims, "brute force was skipped")
    _require(set(dims.values()) == {c["dim"]}, f"dims {dims}")
    basis = roots_via_L(F)
    fld = F.field
    f = embed(F)
    _require(basis.dim == c["dim"], f"roots_via_L gave {basis.dim} elements")
    _require(all(evaluate(f, y) == 0 for y in basis.elements), "a returned element is not a root")
    _require(len(fp_span(fld, basis.elements)) == c["dim"], "returned roots are dependent")
    return f"dim {c['dim']} by {','.join(sorted(dims))}; {basis.dim} verified roots"


def _prime_sweep(dims_by_p: dict, t: int) -> str:
    got = {}
    for p in sorted(dims_by_p):
        F = _trinomial(p, t)
        reports = kernel_dim_all(F, limit=0)
        dims = {m: r.dim for m, r in reports.items()}
        _require(len(set(dims.values())) == 1, f"p={p}: methods disagree {dims}")
        d = dims["restricted"]
        _require(permutation_check(F) == (d == 0), f"p={p}: permutation_check disagrees with dim")
        got[p] = d
    bad = {p: (got[p], dims_by_p[p]) for p in got if got[p] != dims_by_p[p]}
    _require(not bad, "got/expected " + ", ".join(f"p={p}: {a}/{b}" for p, (a, b) in bad.items()))
    return "dim " + " ".join(f"p{p}={d}" for p, d in got.items())


def check_trinomial_t4(g) -> str:
    return _prime_sweep(g["trinomial_t4"], 4)


def check_trinomial_t3(g) -> str:
    return _prime_sweep(g["trinomial_t3"], 3)


def check_trinomial_t2(g) -> str:
    return _prime_sweep(g["trinomial_t2"], 2)


def check_dickson_4x4(g) -> str:
    c = g["dickson_4x4"]
    for p in c["primes"]:
        fld = make_field(p, 12)
        poly = LinPoly.from_terms(fld, 3, {2: fld.scalar(-3 % p), 1: 3 % p, 0: fld.scalar(-1 % p)})
        D = dickson(poly)
        M = Matrix.from_ints(fld, c["rows"])
        _require(D == M, f"p={p}: Dickson matrix differs from the displayed one")
        _require(det(D) == c["det"] % p, f"p={p}: det D = {det(D)}")
        D1 = D.submatrix(range(3), range(1, 4))
        _require(det(D1) == c["det1"] % p, f"p={p}: det D_1 = {det(D1)}")
    return f"det D = {c['det']}, det D_1 = {c['det1']} mod p for {len(c['primes'])} primes"


# -- 2: cross-method agreement --------------------------------------------------

def check_cross_method(g) -> str:
    rng = random.Random(SEED)
    seen = {}
    for _ in range(g["random_instances"]):
        p, n, t = rng.choice((2, 3)), rng.choice((2, 3)), rng.choice((2, 3))
        tw = make_tower(p, 1, n, t)
        F = random_sigma_form(tw, rng)
        if rng.random() < 0.5:
            try:
                F = plant_root(F, rng.randrange(1, tw.field.order))
            except ValueError:
                pass
        dims = {m: r.dim for m, r in kernel_dim_all(F).items()}
        _require(len(dims) == 6, f"only {sorted(dims)} ran on {F.format()}")
        _require(len(set(dims.values())) == 1, f"{tw.spec()} {F.format()}: {dims}")
        d = dims["brute"]
        seen[d] = seen.get(d, 0) + 1
    return (f"{g['random_instances']} instances, 6 methods agree; dims "
            + " ".join(f"{d}:{c}" for d, c in sorted(seen.items())))


# -- 3, 4: t = 2, n = 2 ----------------------------------------------------------

def check_t2n2_classification(g) -> str:
    tw = make_tower(2, 1, 2, 2)
    fld = tw.field
    q = 2
    fq = lambda x, k: fld.frobenius(x, k)  # noqa: E731
    hist = {0: 0, 1: 0, 2: 0}
    for b0 in range(1, fld.order):
        for b1 in range(1, fld.order):
            F = SigmaForm(tw, 3, (b0, b1))
            d = t2_classify(F).dim
            brute = kernel_dim_bruteforce(F).dim
            _require(d == brute, f"b=({b0},{b1}): closed form {d}, brute {brute}")
            hist[d] += 1
            if d != 2:
                continue
            z = fld.div(b0, b1)
            n1 = fld.mul(b1, fq(b1, 1))
            _require(fld.pow(n1, q - 1) == fld.neg(fld.mul(z, fq(z, 1))),
                     f"b=({b0},{b1}): first equation of the norm system fails")
            denom = fld.sub(fq(z, 1), fld.mul(z, fld.mul(fq(z, 1), fq(z, 2))))
            _require(denom != 0 and n1 == fld.inv(denom),
                     f"b=({b0},{b1}): second equation of the norm system fails")
            w = fld.sub(fld.pow(b0, q * q + 1), fld.pow(b1, q * q + 1))
            _require(fld.norm_between(w, 2, 1) == fld.neg(1),
                     f"b=({b0},{b1}): N(b0^(q^2+1) - b1^(q^2+1)) != -1")
    return f"225 pairs match brute force; dims 0:{hist[0]} 1:{hist[1]} 2:{hist[2]}"


def check_t2n2_counts(g) -> str:
    parts = []
    for p in (2, 3):
        tw = make_tower(p, 1, 2, 2)
        fld, q = tw.field, p
        zs = [z for z in range(1, fld.order)
              if fld.norm_between(z, 4, 1) == 1 and fld.norm_between(z, 4, 2) != 1]
        _require(zs, f"q={q}: no admissible z")
        for z in zs:
            hits = sum(
                kernel_dim_restricted(SigmaForm(tw, 3, (fld.mul(z, b1), b1))).dim == 2
                for b1 in range(1, fld.order))
            _require(hits == q + 1, f"q={q}, z={z}: {hits} values of b1 give dim 2")
        parts.append(f"q={q}: {len(zs)} z, q+1 each")
    return "; ".join(parts)


# -- 5: x^{q^5} + alpha x^{q^2} --------------------------------------------------

def check_f3(g) -> str:
    tw = f3_tower(3)
    fld = tw.field
    alphas = search_alpha(tw)
    _require(alphas, "q=3: no scattered alpha found")
    checked = 0
    x2_seen = set()
    for a in range(1, fld.order):
        if fld.norm_between(a, 6, 3) == 1:
            continue
        closed = lf3_cardinality(tw, a)
        spec = weight_spectrum(f3_linear_set(tw, a))  # checks both counting identities
        x2 = spec.counts.get(2, 0)
        _require(closed["size"] == spec.size and closed["x_2"] == x2,
                 f"alpha={a}: closed form {closed}, exhaustive size {spec.size}, x_2 {x2}")
        _require(set(spec.counts) <= {1, 2}, f"alpha={a}: weights {spec.counts}")
        _require((a in alphas) == spec.scattered, f"alpha={a}: search and spectrum disagree")
        x2_seen.add(x2)
        checked += 1
    _require(x2_seen <= set(g["f3_q3_x2"]), f"x_2 values {sorted(x2_seen)}")
    tw2 = f3_tower(2)
    _require(search_alpha(tw2) == [], "q=2: the closed form reports a scattered alpha")
    _require(not any(is_scattered(f3_linear_set(tw2, a)) for a in range(1, tw2.field.order)),
             "q=2: an exhaustive spectrum is scattered")
    return (f"q=3: {len(alphas)} scattered alpha, {checked} alpha match exhaustively, "
            f"x_2 in {sorted(x2_seen)}; q=2: none scattered")


# -- 6: bounds -------------------------------------------------------------------

def check_bounds(g) -> str:
    rng = random.Random(SEED + 1)
    count = g["bound_instances"]

    shapes = [(p, e, N) for p in (2, 3) for e in (1, 2) for N in range(2, 7) if p ** (e * N) <= 4096]
    for _ in range(count):
        p, e, N = rng.choice(shapes)
        fld = make_field(p, e * N)
        terms = {i: rng.randrange(fld.order) for i in range(N) if rng.random() < 0.6}
        f = LinPoly.from_terms(fld, e, terms)
        if f.is_zero():
            f = LinPoly.identity(fld, e)
        d, k = kernel_dim_dickson(f).dim, gow_bound(f)
        _require(d <= k, f"Gow: dim {d} > {k} for {f.format()}")

    shapes = [(p, e, n, t) for p, e in ((2, 1), (3, 1), (2, 2)) for n in (2, 3) for t in (2, 3, 4)
              if p ** (e * n * t) <= 2**16]
    for _ in range(count):
        tw = make_tower(*rng.choice(shapes))
        F = random_sigma_form(tw, rng)
        try:
            F = plant_root(F, rng.randrange(1, tw.field.order))
        except ValueError:
            pass
        d = kernel_dim_restricted(F).dim
        _require(d <= tw.t, f"dim {d} > t for {F.format()}")

    heavy = 0
    for _ in range(count):
        tw = make_tower(*rng.choice(shapes))
        F = random_sigma_form(tw, rng)
        if any(F.b[1:]) and rng.random() < 0.7:
            F = plant_g_root(F, rng.randrange(1, tw.field.order))
        bound = g_kernel_bound(F)
        heavy += bound < tw.t
        d = kernel_dim_restricted(F).dim
        _require(d <= bound, f"dim {d} > t - dim ker G = {bound} for {F.format()}")

    tw = make_tower(2, 1, 3, 4)
    fld = tw.field
    reached = 0
    for _ in range(count):
        ell = rng.randrange(1, 4)
        s0 = rng.choice([s for s in range(1, 13) if s % 3])
        b = [0] * 4
        b[0], b[ell] = rng.randrange(1, fld.order), rng.randrange(1, fld.order)
        F = SigmaForm(tw, s0, tuple(b))
        if rng.random() < 0.5:
            try:
                F = plant_root(F, rng.randrange(1, fld.order))
            except ValueError:
                pass
        tb = trinomial_bound(F)
        d = kernel_dim_restricted(F).dim
        _require(d <= tb.bound, f"trinomial: dim {d} > {tb.bound} for {F.format()}")
        reached += d == tb.bound
    return (f"{count} instances each for the Gow, t, t - dim ker G and trinomial bounds; "
            f"{heavy} with nontrivial ker G, {reached} trinomials at the bound")


# -- 7: club ---------------------------------------------------------------------

def check_club(g) -> str:
    c = g["club"]
    tw = make_tower(c["p"], 1, c["n"], c["t"])
    spec = weight_spectrum(trace_linear_set(tw))
    heavy = {w: k for w, k in spec.counts.items() if w > 1}
    _require(spec.club == c["i"], f"club index {spec.club}, spectrum {spec.counts}")
    _require(sum(heavy.values()) == 1, f"heavy points {heavy}")
    return f"i = {spec.club}, spectrum {dict(sorted(spec.counts.items()))}"


CRITERIA = [
    ("1a", "trinomial q=2 n=3 t=5", check_trinomial_t5),
    ("1b", "trinomial n=3 t=4", check_trinomial_t4),
    ("1c", "trinomial n=3 t=3", check_trinomial_t3),
    ("1c'", "trinomial n=3 t=2", check_trinomial_t2),
    ("1d", "4x4 Dickson determinants", check_dickson_4x4),
    ("2", "cross-method agreement", check_cross_method),
    ("3", "t=2 n=2 classification over F_16", check_t2n2_classification),
    ("4", "q+1 values of b_1 per admissible z", check_t2n2_counts),
    ("5", "x^(q^5) + alpha x^(q^2) scatteredness", check_f3),
    ("6", "kernel bounds", check_bounds),
    ("7", "relative trace club", check_club),
]


def run_criterion(key: str, golden=None) -> Outcome:
    g = GOLDEN if golden is None else golden
    for k, title, fn in CRITERIA:
        if k == key:
            start = time.perf_counter()
            try:
                detail, ok = fn(g), True
            except Failed as exc:
                detail, ok = str(exc), False
            except Exception as exc:  # a crash is a failure, reported by name
                detail, ok = f"{type(exc).__name__}: {exc}", False
            return Outcome(k, title, ok, detail, time.perf_counter() - start)
    raise KeyError(key)


def run_all(golden=None) -> list[Outcome]:
    return [run_criterion(k, golden) for k, _, _ in CRITERIA]


def corrupted_golden() -> dict:
    """GOLDEN with one b-coefficient of the worked trinomial changed."""
    g = copy.deepcopy(GOLDEN)
    b = list(g["trinomial"]["b"])
    b[2] = 1
    g["trinomial"]["b"] = tuple(b)
    return g
