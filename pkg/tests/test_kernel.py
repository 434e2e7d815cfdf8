import random
from math import gcd

import numpy as np
import pytest

from linroots.gf import FieldTooLarge, make_field
from linroots.kernel import (
    DegenerateCoefficient,
    NotATrinomial,
    WrongShape,
    evaluate_all,
    f3_quadratic,
    g_kernel_bound,
    gow_bound,
    kernel_dim,
    kernel_dim_all,
    kernel_dim_bruteforce,
    kernel_dim_companion,
    kernel_dim_dickson,
    kernel_dim_minors,
    kernel_dim_restricted,
    max_kernel_check,
    permutation_check,
    plant_g_root,
    plant_root,
    quadratic_root_location,
    random_sigma_form,
    recursive_P,
    restricted_product,
    semilinear_kernel_dim,
    t2_classify,
    trinomial_bound,
)
from linroots.linpoly import LinPoly, SigmaForm, embed, evaluate, make_tower


def trinomial(p, t):
    """-x - x^q + x^{q^4} with q = p, n = 3."""
    tw = make_tower(p, 1, 3, t)
    F = tw.field
    return SigmaForm(tw, 1, (F.neg(1), 1) + (0,) * (t - 2))


def _rand_poly(F, e, rng):
    N = F.m // e
    return LinPoly.from_terms(F, e, {i: rng.randrange(F.order) for i in range(N)
                                     if rng.random() < 0.6})


# -- trivial and worked cases ----------------------------------------------------

def test_minus_x_has_trivial_kernel():
    F = make_field(2, 6)
    f = LinPoly.from_terms(F, 1, {0: 1})
    assert {r.dim for r in kernel_dim_all(f).values()} == {0}
    tw = make_tower(3, 1, 2, 2)
    S = SigmaForm(tw, 1, (0, 0))
    assert {r.dim for r in kernel_dim_all(S).values()} == {0}
    assert permutation_check(S)


def test_frobenius_fixed_field():
    F = make_field(3, 4)
    f = LinPoly.from_terms(F, 1, {1: 1, 0: F.neg(1)})
    assert {r.dim for r in kernel_dim_all(f).values()} == {1}
    assert kernel_dim_companion(f).witnesses == {"k": 1, "rank": 0}


def test_worked_trinomial_t5():
    F = trinomial(2, 5)
    dims = {m: r.dim for m, r in kernel_dim_all(F).items()}
    assert dims == {m: 4 for m in ("brute", "dickson", "minors", "companion",
                                   "restricted", "semilinear")}
    assert not max_kernel_check(F)
    assert not permutation_check(F)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13, 17])
def test_worked_trinomial_t4(p):
    F = trinomial(p, 4)
    want = 1 if p in (7, 13) else 0
    assert kernel_dim_dickson(F).dim == want
    assert kernel_dim_minors(F).dim == want
    assert kernel_dim_restricted(F).dim == want
    assert permutation_check(F) == (want == 0)


def test_minors_on_worked_matrix_at_p7():
    F = trinomial(7, 4)
    P = LinPoly.from_terms(F.field, 3, {0: F.field.neg(1), 1: 3, 2: F.field.neg(3)})
    r = kernel_dim_minors(P)
    assert r.dim == 1
    assert r.witnesses["dets"] == [0, 9 % 7]


@pytest.mark.parametrize("p", [5, 7, 13, 37, 41])
def test_worked_trinomial_t3(p):
    F = trinomial(p, 3)
    assert kernel_dim_restricted(F).dim == (1 if p == 37 else 0)
    assert semilinear_kernel_dim(F).dim == (1 if p == 37 else 0)


def test_worked_trinomial_t2_has_roots_only_at_p7():
    # H^3 - x = -4x^{q^3} + 3x on F_{q^6}; roots need (3/4)^{q^3+1} = (3/4)^2 = 1
    for p in (5, 7, 11, 13, 37, 41):
        F = trinomial(p, 2)
        fld = F.field
        ratio = fld.div(3, 4 % p)
        solvable = fld.norm_between(ratio, 6, 3) == 1
        assert solvable == (p == 7)
        assert kernel_dim_restricted(F).dim == int(solvable)
        assert kernel_dim_dickson(F).dim == int(solvable)
    assert kernel_dim_bruteforce(trinomial(7, 2)).dim == 1
    assert kernel_dim_bruteforce(trinomial(5, 2)).dim == 0


# -- method cross-checks ---------------------------------------------------------

def test_dickson_and_minors_match_brute_force_on_general_polynomials():
    F = make_field(3, 6)
    rng = random.Random(10)
    for _ in range(200):
        e = rng.choice((1, 2, 3))
        f = _rand_poly(F, e, rng)
        d = kernel_dim_bruteforce(f).dim
        assert kernel_dim_dickson(f).dim == d
        assert kernel_dim_minors(f).dim == d


@pytest.mark.parametrize("p,m", [(2, 10), (3, 6)])
def test_companion_matches_brute_force(p, m):
    F = make_field(p, m)
    rng = random.Random(m)
    for _ in range(200):
        f = _rand_poly(F, 1, rng)
        if f.is_zero():
            continue
        u = rng.choice([u for u in range(1, m) if gcd(u, m) == 1])
        try:
            got = kernel_dim_companion(f, u).dim
        except ValueError:  # sigma-degree 0 for this generator
            continue
        assert got == kernel_dim_bruteforce(f).dim


@pytest.mark.parametrize("p,e,n,t", [(2, 1, 2, 2), (2, 1, 3, 2), (3, 1, 2, 2), (2, 1, 2, 3),
                                     (2, 2, 2, 2), (3, 1, 3, 2), (2, 1, 3, 3)])
def test_all_methods_agree(p, e, n, t):
    tw = make_tower(p, e, n, t)
    rng = random.Random(p * 1000 + e * 100 + n * 10 + t)
    for _ in range(25):
        F = random_sigma_form(tw, rng)
        if rng.random() < 0.6:
            try:
                F = plant_root(F, rng.randrange(1, tw.field.order))
            except ValueError:
                pass
        dims = {m: r.dim for m, r in kernel_dim_all(F).items()}
        assert len(set(dims.values())) == 1, (F, dims)


def test_planted_root_is_a_root():
    tw = make_tower(3, 1, 2, 2)
    rng = random.Random(11)
    F = random_sigma_form(tw, rng)
    x0 = 17
    G = plant_root(F, x0)
    assert evaluate(embed(G), x0) == 0
    assert kernel_dim_restricted(G).dim >= 1


def test_brute_force_respects_the_limit():
    F = trinomial(2, 5)
    with pytest.raises(FieldTooLarge):
        kernel_dim_bruteforce(F, limit=1000)
    assert "brute" not in kernel_dim_all(F, limit=1000)
    with pytest.raises(ValueError):
        kernel_dim(embed(F), "restricted")


# -- permutation and maximum kernel ----------------------------------------------

def test_permutation_check_matches_bijectivity():
    tw = make_tower(2, 1, 3, 4)
    rng = random.Random(12)
    for _ in range(30):
        F = random_sigma_form(tw, rng)
        if rng.random() < 0.5:
            F = plant_root(F, rng.randrange(1, tw.field.order))
        image = evaluate_all(embed(F))
        assert permutation_check(F) == (len(np.unique(image)) == tw.field.order)


def test_max_kernel_small_cases():
    tw = make_tower(2, 1, 2, 2)
    assert not max_kernel_check(SigmaForm(tw, 1, (1, 0)))
    F = tw.field
    q = 2
    found = 0
    for b0 in range(1, 16):
        for b1 in range(1, 16):
            S = SigmaForm(tw, 3, (b0, b1))
            P0 = F.add(F.pow(b0, 1 + q), F.pow(b1, q * q + q))
            P1 = F.add(F.mul(b1, F.pow(b0, q)), F.mul(F.pow(b0, q * q), F.pow(b1, q)))
            system = P0 == 0 and P1 == 1
            assert max_kernel_check(S) == system
            assert (kernel_dim_bruteforce(S).dim == 2) == system
            found += system
    assert found > 0


# -- recursion -------------------------------------------------------------------

def test_recursive_P():
    tw1 = make_tower(2, 1, 1, 3)
    S1 = SigmaForm(tw1, 1, (3, 5, 0))
    assert recursive_P(S1) == list(S1.b)

    tw = make_tower(3, 1, 2, 2)
    F, q = tw.field, 3
    rng = random.Random(14)
    for _ in range(20):
        b0, b1 = rng.randrange(F.order), rng.randrange(F.order)
        S = SigmaForm(tw, 3, (b0, b1))
        P0 = F.add(F.pow(b0, 1 + q), F.pow(b1, q * q + q))
        P1 = F.add(F.mul(b1, F.pow(b0, q)), F.mul(F.pow(b0, q * q), F.pow(b1, q)))
        assert recursive_P(S) == [P0, P1]

    for n, t in ((2, 3), (3, 2), (3, 3)):
        tw = make_tower(2, 1, n, t)
        for _ in range(10):
            S = random_sigma_form(tw, rng)
            assert tuple(recursive_P(S)) == restricted_product(S).row(0)


# -- bounds ----------------------------------------------------------------------

@pytest.mark.parametrize("t", [4, 5, 6, 7])
def test_trinomial_bound_s1_l2(t):
    tw = make_tower(2, 1, 3, t)
    b = [0] * t
    b[0] = b[2] = 1
    assert trinomial_bound(SigmaForm(tw, 1, tuple(b))).bound == min(t - 1, 5)


@pytest.mark.parametrize("t", range(4, 12))
def test_trinomial_bound_s2_l3(t):
    tw = make_tower(2, 1, 3, t)
    b = [0] * t
    b[0] = b[3] = 1
    assert trinomial_bound(SigmaForm(tw, 2, tuple(b))).bound == min(t - 1, 8)


def test_trinomial_bound_holds_against_brute_force():
    tw = make_tower(2, 1, 3, 4)
    F = tw.field
    rng = random.Random(15)
    for _ in range(500):
        ell = rng.randrange(1, 4)
        s0 = rng.choice([s for s in range(1, 13) if s % 3])
        b = [0] * 4
        b[0], b[ell] = rng.randrange(1, F.order), rng.randrange(1, F.order)
        S = SigmaForm(tw, s0, tuple(b))
        if rng.random() < 0.5:
            try:
                S = plant_root(S, rng.randrange(1, F.order))
            except ValueError:
                pass
        assert kernel_dim_bruteforce(S).dim <= trinomial_bound(S).bound


def test_trinomial_bound_rejects_other_shapes():
    tw = make_tower(2, 1, 3, 4)
    with pytest.raises(NotATrinomial):
        trinomial_bound(SigmaForm(tw, 1, (1, 1, 1, 0)))
    with pytest.raises(NotATrinomial):
        trinomial_bound(SigmaForm(tw, 1, (0, 1, 1, 0)))


def test_g_kernel_bound():
    tw = make_tower(2, 1, 2, 3)
    assert g_kernel_bound(SigmaForm(tw, 1, (1, 0, 0))) == 3
    assert g_kernel_bound(SigmaForm(tw, 1, (1, 1, 1))) == 1
    rng = random.Random(16)
    singular = 0
    for _ in range(300):
        S = random_sigma_form(tw, rng)
        if any(S.b[1:]):
            S = plant_g_root(S, rng.randrange(1, tw.field.order))
        bound = g_kernel_bound(S)
        singular += bound < 3
        assert kernel_dim_bruteforce(S).dim <= bound
    assert singular > 200


def test_gow_bound():
    F = make_field(2, 8)
    assert gow_bound(LinPoly.from_terms(F, 1, {1: 1, 0: 1})) == 1
    assert gow_bound(LinPoly.from_terms(F, 1, {3: 1, 0: 1})) == 1  # x^{q^3} generates too
    assert gow_bound(LinPoly.from_terms(F, 1, {2: 1, 0: 1})) == 2
    rng = random.Random(17)
    for _ in range(100):
        f = _rand_poly(F, 1, rng)
        if not f.is_zero():
            assert kernel_dim_bruteforce(f).dim <= gow_bound(f)


# -- t = 2 closed forms ----------------------------------------------------------

def _roots_in(fld, e, deg, beta, gamma):
    sub = fld.subfield_elements(e * deg)
    return [y for y in sub if fld.add(fld.add(fld.mul(y, y), fld.mul(beta, y)), gamma) == 0]


@pytest.mark.parametrize("p,m", [(2, 4), (3, 2), (5, 2), (2, 6)])
def test_quadratic_root_location(p, m):
    fld = make_field(p, m)
    e = m // 2
    Fq = fld.subfield_elements(e)
    for beta in Fq:
        for gamma in Fq:
            small = _roots_in(fld, e, 1, beta, gamma)
            big = _roots_in(fld, e, 2, beta, gamma)
            loc = quadratic_root_location(fld, e, beta, gamma)
            if len(small) == 1:
                assert loc == "one"
            elif len(small) == 2:
                assert loc == "two_in_Fq"
            else:
                assert len(big) == 2 and loc == "two_in_Fq2"


@pytest.mark.parametrize("s0", [1, 3])
def test_t2n2_exhaustive(s0):
    tw = make_tower(2, 1, 2, 2)
    F = tw.field
    for b0 in range(1, 16):
        for b1 in range(1, 16):
            S = SigmaForm(tw, s0, (b0, b1))
            c = t2_classify(S)
            assert c.dim == kernel_dim_bruteforce(S).dim
            if c.dim == 2:
                w = F.sub(F.pow(b0, 5), F.pow(b1, 5))
                assert F.norm_between(w, 2, 1) == F.neg(1)


@pytest.mark.parametrize("p,e,n", [(3, 1, 2), (2, 2, 2), (5, 1, 2), (2, 1, 3), (3, 1, 3),
                                   (2, 2, 3)])
def test_t2_classify_random(p, e, n):
    tw = make_tower(p, e, n, 2)
    rng = random.Random(p + 10 * e + 100 * n)
    s0s = [s for s in range(1, 2 * n + 1) if gcd(s, n) == 1]
    seen = set()
    for _ in range(150):
        S = random_sigma_form(tw, rng, s0=rng.choice(s0s))
        if rng.random() < 0.7:
            try:
                S = plant_root(S, rng.randrange(1, tw.field.order))
            except ValueError:
                pass
        if not (S.b[0] and S.b[1]):
            with pytest.raises(DegenerateCoefficient):
                t2_classify(S)
            continue
        d = t2_classify(S).dim
        assert d == kernel_dim_restricted(S).dim
        seen.add(d)
    assert {0, 1} <= seen


def test_t2n3_norm_one_ratio_never_gives_dim2():
    tw = make_tower(2, 1, 3, 2)
    F = tw.field
    rng = random.Random(18)
    ratios = [a for a in range(1, F.order) if F.norm_between(a, 6, 3) == 1]
    for alpha in ratios:
        assert f3_quadratic(F, 1, alpha) is None
        b0 = rng.randrange(1, F.order)
        S = SigmaForm(tw, 5, (b0, F.mul(alpha, b0)))
        assert t2_classify(S).dim != 2
        assert kernel_dim_bruteforce(S).dim != 2


def test_t2_classify_shape_errors():
    with pytest.raises(WrongShape):
        t2_classify(SigmaForm(make_tower(2, 1, 2, 3), 1, (1, 1, 1)))
    with pytest.raises(WrongShape):
        t2_classify(SigmaForm(make_tower(2, 1, 4, 2), 1, (1, 1)))
