"""q-polynomials over F_{q^N} and the sigma-shifted family built on a tower.

A :class:`LinPoly` stores the reduced coefficient vector of
``sum a_i x^{q^i}`` modulo ``x^{q^N} - x``.  A :class:`SigmaForm` is

    -x + b_0 x^{q^{s0}} + b_1 x^{q^{s0+n}} + ... + b_{t-1} x^{q^{s0+n(t-1)}}

over F_{q^{nt}}, i.e. ``G(x^sigma) - x`` with ``G = sum b_i x^{q^{ni}}`` and
``x^sigma = x^{q^{s0}}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .gf import Field, make_field
from .linalg import Matrix


class TowerMismatch(ValueError):
    pass


class ZeroLeadingCoefficient(ValueError):
    pass


@dataclass(frozen=True)
class LinPoly:
    field: Field
    e: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.field.m % self.e:
            raise TowerMismatch(f"q = {self.field.p}^{self.e} is not a subfield "
                                f"of {self.field.spec()}")
        if len(self.coeffs) != self.field.m // self.e:
            raise ValueError("coefficient vector has the wrong length")

    @classmethod
    def from_terms(cls, field: Field, e: int, terms) -> LinPoly:
        """Build from ``{exponent: coeff}`` or (exponent, coeff) pairs.

        Exponents are in q-power units and wrap modulo N; repeated
        exponents are summed.
        """
        N = field.m // e
        coeffs = [0] * N
        items = terms.items() if isinstance(terms, dict) else terms
        for k, c in items:
            coeffs[k % N] = field.add(coeffs[k % N], c)
        return cls(field, e, tuple(coeffs))

    @classmethod
    def identity(cls, field: Field, e: int = 1) -> LinPoly:
        return cls.from_terms(field, e, {0: 1})

    @classmethod
    def monomial(cls, field: Field, e: int, k: int, c: int = 1) -> LinPoly:
        return cls.from_terms(field, e, {k: c})

    @property
    def N(self) -> int:
        return len(self.coeffs)

    @property
    def q(self) -> int:
        return self.field.p**self.e

    @property
    def sigma_degree(self) -> int:
        """Largest i with a_i != 0, or -1 for the zero polynomial."""
        for i in range(self.N - 1, -1, -1):
            if self.coeffs[i]:
                return i
        return -1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _same(self, other: LinPoly):
        if self.field != other.field or self.e != other.e:
            raise TowerMismatch("polynomials live over different fields")

    def __add__(self, other: LinPoly) -> LinPoly:
        self._same(other)
        add = self.field.add
        return LinPoly(self.field, self.e,
                       tuple(add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: LinPoly) -> LinPoly:
        self._same(other)
        sub = self.field.sub
        return LinPoly(self.field, self.e,
                       tuple(sub(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c: int) -> LinPoly:
        """The polynomial c * f(x)."""
        mul = self.field.mul
        return LinPoly(self.field, self.e, tuple(mul(c, a) for a in self.coeffs))

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def terms(self):
        return [(i, a) for i, a in enumerate(self.coeffs) if a]

    def format(self, style: str = "coords") -> str:
        fmt = self.field.format_element
        return ";".join(f"{i}:{fmt(a, style)}" for i, a in self.terms()) or "0:0"


def evaluate(f: LinPoly, x: int) -> int:
    F = f.field
    acc = 0
    for i, a in enumerate(f.coeffs):
        if a:
            acc = F.add(acc, F.mul(a, F.frobenius(x, f.e * i)))
    return acc


def compose(f: LinPoly, g: LinPoly) -> LinPoly:
    """Coefficients of f(g(x)) reduced modulo x^{q^N} - x."""
    f._same(g)
    F, N, e = f.field, f.N, f.e
    out = [0] * N
    for i, a in enumerate(f.coeffs):
        if not a:
            continue
        for j, b in enumerate(g.coeffs):
            if b:
                k = (i + j) % N
                out[k] = F.add(out[k], F.mul(a, F.frobenius(b, e * i)))
    return LinPoly(F, e, tuple(out))


def adjoint(f: LinPoly) -> LinPoly:
    """Adjoint with respect to (x, y) -> Tr(xy): sum a_i^{q^{N-i}} x^{q^{N-i}}."""
    F, N, e = f.field, f.N, f.e
    out = [0] * N
    for i, a in enumerate(f.coeffs):
        k = (N - i) % N
        out[k] = F.frobenius(a, e * k)
    return LinPoly(F, e, tuple(out))


def dickson(f: LinPoly) -> Matrix:
    """N x N Dickson matrix; entry (i, j) is a_{(j-i) mod N}^{q^i}."""
    F, N, e = f.field, f.N, f.e
    return Matrix(F, tuple(tuple(F.frobenius(f.coeffs[(j - i) % N], e * i)
                                 for j in range(N)) for i in range(N)))


def power_of(f: LinPoly, k: int) -> LinPoly:
    acc = LinPoly.identity(f.field, f.e)
    for _ in range(k):
        acc = compose(f, acc)
    return acc


# -- towers and the sigma-shifted family ---------------------------------------

@dataclass(frozen=True)
class Tower:
    """F_q < F_{q^n} < F_{q^{nt}} with q = p^e, all inside one field."""
    p: int
    e: int
    n: int
    t: int
    field: Field

    def __post_init__(self):
        if self.field.p != self.p or self.field.m != self.e * self.n * self.t:
            raise TowerMismatch(
                f"field {self.field.spec()} is not F_(q^nt) for q={self.p}^{self.e}, "
                f"n={self.n}, t={self.t}")

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def nt(self) -> int:
        return self.n * self.t

    def linpoly(self, terms) -> LinPoly:
        return LinPoly.from_terms(self.field, self.e, terms)

    def spec(self) -> str:
        return (f"q={self.p}^{self.e} n={self.n} t={self.t} "
                f"field={self.field.spec()}")


def make_tower(p: int, e: int, n: int, t: int, field: Field | None = None) -> Tower:
    if field is None:
        field = make_field(p, e * n * t)
    return Tower(p, e, n, t, field)


@dataclass(frozen=True)
class SigmaForm:
    tower: Tower
    s0: int
    b: tuple[int, ...]

    def __post_init__(self):
        tw = self.tower
        if len(self.b) != tw.t:
            raise ValueError(f"expected {tw.t} coefficients b_i, got {len(self.b)}")
        if not 1 <= self.s0 <= tw.nt:
            raise ValueError(f"s0 must lie in [1, {tw.nt}], got {self.s0}")
        if gcd(self.s0, tw.n) != 1:
            raise ValueError(f"gcd(s0, n) = gcd({self.s0}, {tw.n}) != 1")
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))

    @property
    def field(self) -> Field:
        return self.tower.field

    @property
    def s_tau(self) -> int:
        """Exponent of tau = sigma^{-1} = x^{q^{s_tau}}, taken in [1, nt]."""
        nt = self.tower.nt
        return (nt - self.s0) % nt or nt

    @property
    def r(self) -> int:
        return self.s_tau % self.tower.t

    def positions(self) -> list[int]:
        """q-power exponent carrying b_i."""
        tw = self.tower
        return [(self.s0 + tw.n * i) % tw.nt for i in range(tw.t)]

    def with_b(self, b) -> SigmaForm:
        return SigmaForm(self.tower, self.s0, tuple(b))

    def format(self, style: str = "coords") -> str:
        fmt = self.field.format_element
        parts = []
        for x in self.b:
            s = fmt(x, style)
            parts.append(f"[{s}]" if "," in s else s)
        return f"s0={self.s0}; b=" + ",".join(parts)


def embed(F: SigmaForm) -> LinPoly:
    """F as a general q-polynomial over F_{q^{nt}}."""
    fld = F.field
    terms = [(0, fld.neg(1))] + list(zip(F.positions(), F.b))
    return F.tower.linpoly(terms)


def g_poly(F: SigmaForm) -> LinPoly:
    """G(x) = sum b_i x^{q^{ni}} as a q-polynomial."""
    n = F.tower.n
    return F.tower.linpoly([(n * i, b) for i, b in enumerate(F.b)])


def h_poly(F: SigmaForm) -> LinPoly:
    """H = G o sigma, i.e. embed(F) + x."""
    return F.tower.linpoly(list(zip(F.positions(), F.b)))


def normalize_form(a: int, b, tower: Tower, s0: int) -> SigmaForm:
    """Rescale a*x + sum b_i x^{...} to leading coefficient -1."""
    fld = tower.field
    if a == 0:
        raise ZeroLeadingCoefficient("the coefficient of x must be nonzero")
    c = fld.neg(fld.inv(a))
    return SigmaForm(tower, s0, tuple(fld.mul(c, x) for x in b))


def restricted_dickson(F: SigmaForm) -> Matrix:
    """t x t Dickson matrix of G in q^n-indexing: (i, j) -> b_{j-i}^{q^{ni}}."""
    tw = F.tower
    fld, t = tw.field, tw.t
    step = tw.e * tw.n
    return Matrix(fld, tuple(tuple(fld.frobenius(F.b[(j - i) % t], step * i)
                                   for j in range(t)) for i in range(t)))


def semilinear_power(F: SigmaForm, k: int) -> LinPoly:
    """q-polynomial of H^k, H = G o sigma."""
    return power_of(h_poly(F), k)


def L_operator(F: SigmaForm) -> LinPoly:
    """L = H^{n-1} + ... + H + id."""
    H = h_poly(F)
    acc = LinPoly.identity(F.field, F.tower.e)
    total = acc
    for _ in range(F.tower.n - 1):
        acc = compose(H, acc)
        total = total + acc
    return total


def sigma_adjoint(F: SigmaForm) -> SigmaForm:
    """The adjoint of F, again of sigma-shifted shape with s0' = n - s0."""
    tw = F.tower
    fld, n, t, nt = tw.field, tw.n, tw.t, tw.nt
    s0 = (n - F.s0) % nt or nt
    b = [0] * t
    for i, x in enumerate(F.b):
        k = (n * (t - i) - F.s0) % nt
        b[t - 1 - i] = fld.frobenius(x, tw.e * k)
    return SigmaForm(tw, s0, tuple(b))


def swap_form(F: SigmaForm) -> SigmaForm:
    """For t = 2: the same polynomial read with sigma' = sigma * q^n."""
    tw = F.tower
    if tw.t != 2:
        raise ValueError("swap_form needs t = 2")
    s0 = (F.s0 + tw.n) % tw.nt or tw.nt
    return SigmaForm(tw, s0, (F.b[1], F.b[0]))


# -- text formats ----------------------------------------------------------------

def split_list(text: str) -> list[str]:
    """Split on commas that are not inside brackets."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [s.strip() for s in out if s.strip()]


def parse_element_list(text: str, field: Field) -> list[int]:
    return [field.parse_element(tok) for tok in split_list(text)]


def parse_linpoly(text: str, field: Field, e: int) -> LinPoly:
    """Parse ``exp:elem;exp:elem;...``, exponents in q-power units."""
    terms = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        k, sep, c = chunk.partition(":")
        if not sep:
            raise ValueError(f"bad monomial {chunk!r}")
        try:
            k = int(k)
        except ValueError:
            raise ValueError(f"bad exponent in {chunk!r}") from None
        terms.append((k, field.parse_element(c)))
    return LinPoly.from_terms(field, e, terms)


def parse_sigma_form(text: str, tower: Tower) -> SigmaForm:
    """Parse ``s0=<int>; b=<elem>,<elem>,...``."""
    fields = {}
    for chunk in text.split(";"):
        key, sep, val = chunk.partition("=")
        if sep:
            fields[key.strip()] = val.strip()
    if "s0" not in fields or "b" not in fields:
        raise ValueError(f"sigma form needs s0= and b=, got {text!r}")
    return SigmaForm(tower, int(fields["s0"]), tuple(parse_element_list(fields["b"], tower.field)))
