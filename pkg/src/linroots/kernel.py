"""Kernel dimension of q-polynomials by several independent routes.

Every ``kernel_dim_*`` function returns a :class:`KernelReport` whose
``dim`` is the F_q-dimension of the kernel.  :func:`kernel_dim` picks the
t x t restricted-Dickson route for :class:`SigmaForm` input and the full
Dickson matrix otherwise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .gf import EXHAUSTIVE_LIMIT, Field
from .linalg import Matrix, det, rank, shift_matrix, twist, twisted_product
from .linpoly import (
    LinPoly,
    SigmaForm,
    Tower,
    dickson,
    embed,
    h_poly,
    restricted_dickson,
    semilinear_power,
    sigma_adjoint,
    swap_form,
)

METHODS = ("brute", "dickson", "minors", "companion", "restricted", "semilinear")


class NotMonicable(ValueError):
    pass


class NotATrinomial(ValueError):
    pass


class WrongShape(ValueError):
    pass


class DegenerateCoefficient(ValueError):
    pass


@dataclass
class KernelReport:
    dim: int
    method: str
    witnesses: dict = field(default_factory=dict)


def _as_linpoly(f) -> LinPoly:
    return embed(f) if isinstance(f, SigmaForm) else f


# -- exhaustive evaluation ---------------------------------------------------

def evaluate_all(f: LinPoly, limit: int = EXHAUSTIVE_LIMIT) -> np.ndarray:
    """f(x) for every field element x, indexed by x."""
    F = f.field
    F.tables(limit)
    xs = np.arange(F.order, dtype=np.int64)
    acc = np.zeros(F.order, dtype=np.int64)
    for i, a in f.terms():
        acc = F.vadd(acc, F.vmul(np.int64(a), F.vfrobenius(xs, f.e * i)))
    return acc


def _log_q(count: int, q: int) -> int:
    d, v = 0, 1
    while v < count:
        v *= q
        d += 1
    if v != count:
        raise AssertionError(f"{count} is not a power of {q}")
    return d


def kernel_dim_bruteforce(f, limit: int = EXHAUSTIVE_LIMIT) -> KernelReport:
    f = _as_linpoly(f)
    roots = int(np.count_nonzero(evaluate_all(f, limit) == 0))
    return KernelReport(_log_q(roots, f.q), "brute", {"roots": roots})


# -- matrix routes ---------------------------------------------------------------

def kernel_dim_dickson(f) -> KernelReport:
    f = _as_linpoly(f)
    rk = rank(dickson(f))
    return KernelReport(f.N - rk, "dickson", {"rank": rk})


def kernel_dim_minors(f) -> KernelReport:
    """Smallest m with det D_m(f) != 0; D_m drops the first m columns and last m rows."""
    f = _as_linpoly(f)
    D = dickson(f)
    N = f.N
    dets = []
    for m in range(N):
        d = det(D.submatrix(range(N - m), range(m, N)))
        dets.append(d)
        if d:
            return KernelReport(m, "minors", {"dets": dets})
    return KernelReport(N, "minors", {"dets": dets})


def companion_matrix(f: LinPoly, u: int = 1) -> tuple[Matrix, int]:
    """Companion matrix of f read as a sigma-polynomial, x^sigma = x^{q^u}."""
    N = f.N
    if gcd(u, N) != 1:
        raise ValueError(f"x -> x^(q^{u}) does not generate the Galois group")
    F = f.field
    c = [f.coeffs[(j * u) % N] for j in range(N)]
    k = max((j for j in range(N) if c[j]), default=-1)
    if k < 1:
        raise NotMonicable("sigma-degree must be at least 1")
    lead = F.inv(c[k])
    rows = [[0] * k for _ in range(k)]
    for i in range(k):
        if i:
            rows[i][i - 1] = 1
        rows[i][k - 1] = F.neg(F.mul(c[i], lead))
    return Matrix.from_rows(F, rows), k


def kernel_dim_companion(f, u: int = 1) -> KernelReport:
    """k - rank(C C^sigma ... C^{sigma^{N-1}} - I) for sigma-degree k."""
    f = _as_linpoly(f)
    if f.is_zero():
        return KernelReport(f.N, "companion", {"k": None})
    if f.sigma_degree == 0 and u == 1:
        return KernelReport(0, "companion", {"k": 0})
    C, k = companion_matrix(f, u)
    step = f.e * u
    prod = C
    for i in range(1, f.N):
        prod = prod @ twist(C, step * i)
    rk = rank(prod - Matrix.identity(f.field, k))
    return KernelReport(k - rk, "companion", {"k": k, "rank": rk})


def restricted_product(F: SigmaForm) -> Matrix:
    """D^{tau^{n-1}} ... D^tau D for D the restricted Dickson matrix."""
    tw = F.tower
    return twisted_product(restricted_dickson(F), tw.e * F.s_tau, tw.n)


def kernel_dim_restricted(F: SigmaForm) -> KernelReport:
    t = F.tower.t
    M = restricted_product(F)
    rk = rank(M - shift_matrix(F.field, t, F.s_tau))
    return KernelReport(t - rk, "restricted", {"rank": rk, "s": F.s_tau})


def semilinear_kernel_dim(F: SigmaForm) -> KernelReport:
    """F_{q^n}-dimension of ker(H^n - id), from its full Dickson matrix."""
    tw = F.tower
    P = semilinear_power(F, tw.n) - LinPoly.identity(F.field, tw.e)
    dim_q = tw.nt - rank(dickson(P))
    if dim_q % tw.n:
        raise AssertionError("ker(H^n - id) is not an F_{q^n}-space")
    return KernelReport(dim_q // tw.n, "semilinear", {"dim_over_Fq": dim_q})


def kernel_dim(f, method: str = "auto", limit: int = EXHAUSTIVE_LIMIT) -> KernelReport:
    if method == "auto":
        method = "restricted" if isinstance(f, SigmaForm) else "dickson"
    if method in ("restricted", "semilinear") and not isinstance(f, SigmaForm):
        raise ValueError(f"method {method!r} needs a sigma-shifted form")
    runner = {
        "brute": lambda: kernel_dim_bruteforce(f, limit),
        "dickson": lambda: kernel_dim_dickson(f),
        "minors": lambda: kernel_dim_minors(f),
        "companion": lambda: kernel_dim_companion(f),
        "restricted": lambda: kernel_dim_restricted(f),
        "semilinear": lambda: semilinear_kernel_dim(f),
    }.get(method)
    if runner is None:
        raise ValueError(f"unknown method {method!r}")
    return runner()


def kernel_dim_all(f, limit: int = EXHAUSTIVE_LIMIT) -> dict[str, KernelReport]:
    """Run every method whose preconditions hold."""
    methods = list(METHODS)
    if not isinstance(f, SigmaForm):
        methods = [m for m in methods if m not in ("restricted", "semilinear")]
    if _as_linpoly(f).field.order > limit:
        methods.remove("brute")
    return {m: kernel_dim(f, m, limit) for m in methods}


# -- consequences of the restricted criterion ----------------------------------

def permutation_check(F: SigmaForm) -> bool:
    M = restricted_product(F)
    return det(M - shift_matrix(F.field, F.tower.t, F.s_tau)) != 0


def max_kernel_check(F: SigmaForm) -> bool:
    """True iff dim ker F = t, i.e. the twisted product equals J^s."""
    tw = F.tower
    M = restricted_product(F)
    full = M == shift_matrix(F.field, tw.t, F.s_tau)
    if full:
        fld = F.field
        d = det(restricted_dickson(F))
        sign = fld.neg(1) if (F.s_tau * (tw.t - 1)) % 2 else 1
        # det D lies in F_{q^n}; the product of its tau-conjugates is N_{q^n/q}
        nrm = fld.norm_between(d, tw.e * tw.n, tw.e)
        if nrm != sign:
            raise AssertionError("norm condition for a maximum kernel fails")
    return full


def recursive_P(F: SigmaForm) -> list[int]:
    """(P_{0,n}, ..., P_{t-1,n}) from the coefficient recursion."""
    tw = F.tower
    fld, t, n = tw.field, tw.t, tw.n
    b = F.b
    step = tw.e * tw.n
    tau = tw.e * F.s_tau
    # weight[j][k] = b_{(j-k) mod t}^{q^{nk}}
    weight = [[fld.frobenius(b[(j - k) % t], step * k) for k in range(t)] for j in range(t)]
    P = list(b)
    for _ in range(n - 1):
        Pt = [fld.frobenius(x, tau) for x in P]
        nxt = []
        for j in range(t):
            acc = 0
            for w, y in zip(weight[j], Pt):
                if w and y:
                    acc = fld.add(acc, fld.mul(w, y))
            nxt.append(acc)
        P = nxt
    return P


@dataclass
class TrinomialBound:
    bound: int
    ell: int
    conditions: dict


def trinomial_bound(F: SigmaForm) -> TrinomialBound:
    """Upper bound on dim ker for -x + a x^sigma + b x^{sigma q^{ell n}}."""
    tw = F.tower
    n, t, s = tw.n, tw.t, F.s0
    support = [i for i, x in enumerate(F.b) if x]
    if len(support) != 2 or support[0] != 0:
        raise NotATrinomial(f"b-support must be {{0, ell}}, got {support}")
    ell = support[1]
    c1 = all((s + h * ell) % t for h in range(n + 1))
    c2 = all((j * ell) % t for j in range(1, n + 1)) and s % t != 0
    c3 = all((ell * n - i * ell) % t for i in range(n)) and (s + ell * n) % t != 0
    hyp = t <= n * ell + s
    conditions = {"cond1": c1, "cond2": c2, "cond3": c3, "t_le_nl_plus_s": hyp}
    bound = min(t - 1, (n - 1) * ell + s) if hyp and (c1 or c2 or c3) else t
    return TrinomialBound(bound, ell, conditions)


def gow_bound(f) -> int:
    """Smallest sigma-degree of f over all generators sigma = q^s of the Galois group."""
    f = _as_linpoly(f)
    N = f.N
    if f.is_zero():
        raise ValueError("the zero polynomial has no degree bound")
    best = N
    for s in range(1, N + 1):
        if gcd(s, N) != 1:
            continue
        inv = pow(s, -1, N) if N > 1 else 0
        best = min(best, max((i * inv) % N for i, c in enumerate(f.coeffs) if c))
    return best


def g_kernel_bound(F: SigmaForm) -> int:
    """t - dim_{F_{q^n}} ker G, which is rank of the restricted Dickson matrix."""
    return rank(restricted_dickson(F))


# -- t = 2 closed forms ----------------------------------------------------------

def quadratic_root_location(fld: Field, e: int, beta: int, gamma: int) -> str:
    """Where the roots of Y^2 + beta Y + gamma (coefficients in F_q) live.

    Returns ``"one"`` (a double root in F_q), ``"two_in_Fq"`` or
    ``"two_in_Fq2"`` (conjugate roots in F_{q^2} outside F_q).
    """
    q = fld.p**e
    if fld.p == 2:
        if beta == 0:
            return "one"
        y = fld.div(gamma, fld.mul(beta, beta))
        tr = 0
        for i in range(e):
            tr = fld.add(tr, fld.frobenius(y, i))
        return "two_in_Fq" if tr == 0 else "two_in_Fq2"
    disc = fld.sub(fld.mul(beta, beta), fld.mul(fld.scalar(4), gamma))
    if disc == 0:
        return "one"
    return "two_in_Fq" if fld.pow(disc, (q - 1) // 2) == 1 else "two_in_Fq2"


def f3_quadratic(fld: Field, e: int, alpha: int):
    """A and the coefficients (beta, gamma) of Y^2 + beta Y + gamma for a ratio alpha.

    Here ``alpha^{q^3+1} != 1`` is required; returns None otherwise.
    """
    q3 = 3 * e
    beta_ = fld.mul(alpha, fld.frobenius(alpha, q3))
    if beta_ == 1:
        return None
    A = fld.neg(fld.div(beta_, fld.sub(1, beta_)))
    tr = fld.trace_between(A, q3, e)
    nm = fld.norm_between(A, q3, e)
    return A, fld.sub(1, tr), nm


def _fq(fld: Field, e: int, x: int, k: int) -> int:
    return fld.frobenius(x, e * k)


@dataclass
class T2Classification:
    dim: int
    branch: str
    certificate: dict


def canonical_t2(F: SigmaForm) -> tuple[SigmaForm, list[str]]:
    """Rewrite a t = 2 form to s0 = 3 (n = 2) or s0 = 5 (n = 3).

    Uses the sigma/sigma q^n swap and the adjoint, neither of which
    changes the kernel dimension.
    """
    n = F.tower.n
    target = {2: 3, 3: 5}[n]
    options = [([], F), (["swap"], swap_form(F))]
    adj = sigma_adjoint(F)
    options += [(["adjoint"], adj), (["adjoint", "swap"], swap_form(adj))]
    for steps, G in options:
        if G.s0 == target:
            return G, steps
    raise WrongShape(f"cannot bring s0={F.s0} to s0={target}")  # pragma: no cover


def t2_classify(F: SigmaForm) -> T2Classification:
    tw = F.tower
    if tw.t != 2 or tw.n not in (2, 3):
        raise WrongShape(f"closed forms need t = 2 and n in {{2, 3}}, got n={tw.n}, t={tw.t}")
    if not (F.b[0] and F.b[1]):
        raise DegenerateCoefficient("b_0 and b_1 must both be nonzero")
    G, steps = canonical_t2(F)
    fld, e = tw.field, tw.e
    b0, b1 = G.b
    fq = lambda x, k: _fq(fld, e, x, k)  # noqa: E731
    mul, add, sub = fld.mul, fld.add, fld.sub
    cert = {"rewrites": steps, "s0": G.s0}

    if tw.n == 2:
        # f = -x + b0 x^{q^3} + b1 x^q
        z = fld.div(b0, b1)
        norm_z = fld.norm_between(z, 4 * e, e)
        denom = sub(fq(z, 1), mul(fq(z, 1), mul(fq(z, 2), z)))
        dim2 = (norm_z == 1 and denom != 0
                and mul(b1, fq(b1, 1)) == fld.inv(denom))
        P0 = add(mul(b0, fq(b0, 1)), mul(fq(b1, 2), fq(b1, 1)))
        P1 = add(mul(b1, fq(b0, 1)), mul(fq(b0, 2), fq(b1, 1)))
    else:
        # f = -x + b0 x^{q^5} + b1 x^{q^2}
        alpha = fld.div(b1, b0)
        quad = f3_quadratic(fld, e, alpha)
        dim2 = False
        if quad is not None:
            A, beta, gamma = quad
            cert["A"] = A
            cert["root_location"] = quadratic_root_location(fld, e, beta, gamma)
            z = mul(b0, mul(fq(b0, 1), fq(b0, 2)))
            x = mul(b0, mul(fq(b0, 2), fq(b0, 4)))
            T = mul(z, alpha)
            Y = mul(x, mul(alpha, mul(fq(alpha, 2), fq(alpha, 4))))
            dim2 = (add(fq(T, 1), fq(T, 2)) == sub(1, A) and add(T, Y) == A)
        P0 = add(mul(fq(b1, 2), add(mul(fq(b0, 4), fq(b1, 3)), mul(b0, fq(b1, 4)))),
                 mul(fq(b0, 2), add(mul(fq(b0, 1), b0), mul(fq(b1, 3), fq(b1, 1)))))
        P1 = add(mul(fq(b1, 2), add(mul(fq(b0, 4), fq(b0, 3)), mul(fq(b1, 4), b1))),
                 mul(fq(b0, 2), add(mul(fq(b0, 3), fq(b1, 1)), mul(b1, fq(b0, 1)))))
    cert["dim2_system"] = dim2
    k = 2 * e * tw.n  # x -> x^{q^n + 1}
    lhs = mul(P0, fld.frobenius(P0, k // 2))
    P1m = sub(P1, 1)
    rhs = mul(P1m, fld.frobenius(P1m, k // 2))
    invertible = lhs != rhs
    cert["invertible"] = invertible
    if dim2:
        return T2Classification(2, "dim2", cert)
    if invertible:
        return T2Classification(0, "invertible", cert)
    return T2Classification(1, "dim1", cert)


# -- random instances ------------------------------------------------------------

def random_sigma_form(tower: Tower, rng: random.Random, s0: int | None = None,
                      support=None) -> SigmaForm:
    """Uniform b over the given support, redrawn while all-zero."""
    nt, n = tower.nt, tower.n
    if s0 is None:
        s0 = rng.choice([s for s in range(1, nt + 1) if gcd(s, n) == 1])
    support = range(tower.t) if support is None else support
    order = tower.field.order
    while True:
        b = [0] * tower.t
        for i in support:
            b[i] = rng.randrange(order)
        if any(b):
            return SigmaForm(tower, s0, tuple(b))


def plant_root(F: SigmaForm, x0: int) -> SigmaForm:
    """Rescale b so that x0 becomes a root of F; F must satisfy H(x0) != 0."""
    fld = F.field
    m = fld.div(h_poly(F)(x0), x0)
    if m == 0:
        raise DegenerateCoefficient("H vanishes at the chosen point")
    inv = fld.inv(m)
    return F.with_b([fld.mul(inv, x) for x in F.b])


def plant_g_root(F: SigmaForm, y: int) -> SigmaForm:
    """Adjust b_0 so that G(y) = 0, giving G a nontrivial kernel."""
    fld, tw = F.field, F.tower
    acc = 0
    for i, c in enumerate(F.b[1:], start=1):
        if c:
            acc = fld.add(acc, fld.mul(c, fld.frobenius(y, tw.e * tw.n * i)))
    b0 = fld.neg(fld.div(acc, y))
    return F.with_b((b0,) + tuple(F.b[1:]))
