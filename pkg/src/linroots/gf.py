"""Arithmetic in F_{p^m} with a fixed polynomial basis.

Elements are plain Python ints.  The base-p digits of an element, least
significant first, are its coordinates with respect to 1, x, ..., x^{m-1},
so ``sum(c_j * p**j)`` packs the coordinate list ``[c_0, ..., c_{m-1}]``.
Prime-field constants are therefore the ints ``0 .. p-1``.

Small fields are served from log/antilog tables; large ones (up to about
2^64 elements) fall back to schoolbook polynomial arithmetic.
"""

from __future__ import annotations

from functools import cached_property, lru_cache

import numpy as np
import sympy

#: fields up to this order get scalar log tables at construction
SCALAR_TABLE_LIMIT = 2**16
#: default bound on the field order for anything that enumerates the field
EXHAUSTIVE_LIMIT = 2**22


class FieldError(ValueError):
    pass


class NotPrime(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class DegreeMismatch(FieldError):
    pass


class NotADivisor(FieldError):
    pass


class FieldTooLarge(FieldError):
    pass


# -- polynomials over F_p, coefficient lists least degree first --------------

def _trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mod(a, f, p):
    a = _trim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for j, fj in enumerate(f):
            a[shift + j] = (a[shift + j] - c * fj) % p
        _trim(a)
    return a


def _poly_mulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_mod(out, f, p)


def _poly_powmod(a, k, f, p):
    result = [1]
    base = _poly_mod(list(a), f, p)
    while k:
        if k & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        k >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(modulus, p):
    """Rabin's test for a monic polynomial given least degree first."""
    f = [c % p for c in modulus]
    m = len(f) - 1
    if m < 1 or f[-1] != 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    frob = {}
    cur = x
    for i in range(1, m + 1):
        cur = _poly_powmod(cur, p, f, p)
        frob[i] = cur
    if _poly_sub(frob[m], x, p):
        return False
    for r in sympy.primefactors(m):
        g = _poly_gcd(f, _poly_sub(frob[m // r], x, p), p)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p, m):
    """Lexicographically smallest monic irreducible of degree m over F_p.

    Order compares the coefficient of x^{m-1} first, then x^{m-2}, ..., so
    for (2, 4) the answer is x^4 + x + 1.
    """
    for idx in range(p**m):
        low = []
        v = idx
        for _ in range(m):
            v, r = divmod(v, p)
            low.append(r)
        if m > 1 and low[0] == 0:
            continue
        cand = low + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class Field:
    """The finite field F_p[x]/(modulus).

    Construct through :func:`make_field`.  Instances are immutable and
    compare equal when p, m and the modulus agree.
    """

    def __init__(self, p: int, m: int, modulus):
        if not sympy.isprime(p):
            raise NotPrime(f"{p} is not prime")
        if m < 1:
            raise DegreeMismatch(f"extension degree must be >= 1, got {m}")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise DegreeMismatch(
                f"modulus must be monic of degree {m}, got {list(modulus)}")
        if not is_irreducible(modulus, p):
            raise ReducibleModulus(f"{list(modulus)} is reducible over F_{p}")
        self.p = p
        self.m = m
        self.modulus = modulus
        self.order = p**m
        self._pw = [p**j for j in range(m)]
        self._frob_cache: dict[int, list] = {}
        self._np_tables = None
        if p == 2:
            self._modmask = sum(c << j for j, c in enumerate(modulus))
        self._small = self.order <= SCALAR_TABLE_LIMIT
        if self._small:
            exp, log, zech = self.tables()
            self._exp = exp.tolist()
            self._log = log.tolist()
            self._zech = zech.tolist() if zech is not None else None

    # -- identity -------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Field) and self.p == other.p
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        return f"Field({self.spec()})"

    def spec(self) -> str:
        """Text form ``p^m:modulus=c0,...,cm`` that rebuilds this field."""
        mod = ",".join(str(c) for c in self.modulus)
        return f"{self.p}^{self.m}:modulus={mod}"

    # -- coordinates ----------------------------------------------------

    zero = 0
    one = 1

    def scalar(self, c: int) -> int:
        return c % self.p

    def coeffs(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.m):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.m:
            raise DegreeMismatch(
                f"{len(coeffs)} coordinates given for a degree-{self.m} field")
        return sum((c % self.p) * w for c, w in zip(coeffs, self._pw))

    def elements(self):
        return range(self.order)

    def check(self, a: int) -> int:
        if not (isinstance(a, (int, np.integer)) and 0 <= a < self.order):
            raise ValueError(f"{a!r} is not an element of {self!r}")
        return int(a)

    # -- arithmetic -----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if not a:
            return b
        if not b:
            return a
        if self._small:
            n1 = self.order - 1
            la = self._log[a]
            z = self._zech[(self._log[b] - la) % n1]
            return 0 if z < 0 else self._exp[(la + z) % n1]
        p = self.p
        da, db = self.coeffs(a), self.coeffs(b)
        return sum(((x + y) % p) * w for x, y, w in zip(da, db, self._pw))

    def neg(self, a: int) -> int:
        if self.p == 2 or not a:
            return a
        if self._small:
            n1 = self.order - 1
            return self._exp[(self._log[a] + n1 // 2) % n1]
        p = self.p
        return sum(((-c) % p) * w for c, w in zip(self.coeffs(a), self._pw))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self._small:
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        return self._mul_generic(a, b)

    def _mul_generic(self, a: int, b: int) -> int:
        m = self.m
        if self.p == 2:
            r = 0
            top = 1 << m
            mask = self._modmask
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a & top:
                    a ^= mask
            return r
        p = self.p
        da, db = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    if y:
                        prod[i + j] += x * y
        mod = self.modulus
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k] % p
            if c:
                base = k - m
                for j in range(m):
                    prod[base + j] -= c * mod[j]
        return sum((prod[j] % p) * w for j, w in enumerate(self._pw))

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("inverse of zero in " + self.spec())
        if self._small:
            n1 = self.order - 1
            return self._exp[(-self._log[a]) % n1]
        return self._pow_generic(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        if k == 0:
            return 1
        if not a:
            return 0
        if self._small:
            n1 = self.order - 1
            return self._exp[(self._log[a] * k) % n1]
        return self._pow_generic(a, k % (self.order - 1) or self.order - 1)

    def _pow_generic(self, a: int, k: int) -> int:
        result = 1
        while k:
            if k & 1:
                result = self._mul_generic(result, a)
            k >>= 1
            if k:
                a = self._mul_generic(a, a)
        return result

    def frobenius(self, a: int, e: int) -> int:
        """a^{p^e}; e is read modulo m."""
        e %= self.m
        if e == 0 or a < self.p:
            return a
        if self._small:
            n1 = self.order - 1
            return self._exp[(self._log[a] * (self.p**e)) % n1]
        images = self._frob_images(e)
        if self.p == 2:
            r = 0
            j = 0
            while a:
                if a & 1:
                    r ^= images[j]
                a >>= 1
                j += 1
            return r
        p = self.p
        acc = [0] * self.m
        for c, img in zip(self.coeffs(a), images):
            if c:
                for i, v in enumerate(img):
                    acc[i] += c * v
        return sum((v % p) * w for v, w in zip(acc, self._pw))

    def _frob_images(self, e: int):
        # images of the basis x^j under a -> a^{p^e}
        cached = self._frob_cache.get(e)
        if cached is None:
            q = self.p**e
            imgs = [self._pow_generic(w, q) for w in self._pw]
            cached = imgs if self.p == 2 else [self.coeffs(v) for v in imgs]
            self._frob_cache[e] = cached
        return cached

    # -- subfields ------------------------------------------------------

    def _check_divisor(self, d: int):
        if d < 1 or self.m % d:
            raise NotADivisor(f"{d} does not divide the degree {self.m}")

    def rel_norm(self, a: int, d: int) -> int:
        """Norm from F_{p^m} down to F_{p^d}."""
        self._check_divisor(d)
        return self.pow(a, (self.order - 1) // (self.p**d - 1))

    def rel_trace(self, a: int, d: int) -> int:
        """Trace from F_{p^m} down to F_{p^d}."""
        self._check_divisor(d)
        acc = 0
        for i in range(self.m // d):
            acc = self.add(acc, self.frobenius(a, d * i))
        return acc

    def norm_between(self, a: int, top: int, bottom: int) -> int:
        """N_{p^top / p^bottom}(a) for a in the subfield F_{p^top}."""
        self._check_divisor(top)
        if top % bottom:
            raise NotADivisor(f"{bottom} does not divide {top}")
        return self.pow(a, (self.p**top - 1) // (self.p**bottom - 1))

    def trace_between(self, a: int, top: int, bottom: int) -> int:
        """Tr_{p^top / p^bottom}(a) for a in the subfield F_{p^top}."""
        self._check_divisor(top)
        if top % bottom:
            raise NotADivisor(f"{bottom} does not divide {top}")
        acc = 0
        for i in range(top // bottom):
            acc = self.add(acc, self.frobenius(a, bottom * i))
        return acc

    def in_subfield(self, a: int, d: int) -> bool:
        self._check_divisor(d)
        return self.frobenius(a, d) == a

    def subfield_elements(self, d: int) -> list[int]:
        """All elements of F_{p^d}, ascending; uses the generator."""
        self._check_divisor(d)
        if d == self.m:
            return list(range(self.order))
        h = self.pow(self.generator, (self.order - 1) // (self.p**d - 1))
        out, x = [0], 1
        for _ in range(self.p**d - 1):
            out.append(x)
            x = self.mul(x, h)
        return sorted(out)

    # -- generator --------------------------------------------------------

    @cached_property
    def generator(self) -> int:
        """Smallest element (as an int) of multiplicative order p^m - 1."""
        n1 = self.order - 1
        if n1 == 1:
            return 1
        cofactors = [n1 // r for r in sympy.primefactors(n1)]
        for g in range(2, self.order):
            if all(self._pow_generic(g, c) != 1 for c in cofactors):
                return g
        raise AssertionError("no generator")  # pragma: no cover

    def discrete_log(self, a: int) -> int:
        if not a:
            raise ValueError("zero has no discrete logarithm")
        if self._small:
            return self._log[a]
        if self._np_tables is not None:
            return int(self._np_tables[1][a])
        return self._bsgs_log(a)

    def _bsgs_log(self, a: int) -> int:
        n1 = self.order - 1
        step = int(n1**0.5) + 1
        if step > 2**24:
            raise FieldTooLarge("discrete logarithm too expensive for this field")
        g = self.generator
        baby = {}
        x = 1
        for j in range(step):
            baby.setdefault(x, j)
            x = self._mul_generic(x, g)
        giant = self._pow_generic(self.inv(g), step)
        y = a
        for i in range(step + 1):
            if y in baby:
                return (i * step + baby[y]) % n1
            y = self._mul_generic(y, giant)
        raise AssertionError("discrete log not found")  # pragma: no cover

    # -- vectorised tables --------------------------------------------------

    def tables(self, limit: int = EXHAUSTIVE_LIMIT):
        """(exp, log, zech) numpy tables relative to :attr:`generator`.

        ``log[0]`` is -1; ``zech[k] = log(1 + g^k)`` (-1 when that sum is 0)
        and is None in characteristic 2.
        """
        if self.order > limit:
            raise FieldTooLarge(
                f"field of order {self.order} exceeds the exhaustive limit {limit}")
        if self._np_tables is not None:
            return self._np_tables
        p, m, n1 = self.p, self.m, self.order - 1
        g = self.generator
        pw = np.array(self._pw, dtype=np.int64)
        block = min(n1, 4096)
        first = [1]
        for _ in range(block - 1):
            first.append(self._mul_generic(first[-1], g))
        g_block = self._mul_generic(first[-1], g)
        step = np.array([self.coeffs(self._mul_generic(g_block, w)) for w in self._pw],
                        dtype=np.int64)
        digits = np.array([self.coeffs(v) for v in first], dtype=np.int64)
        chunks = [digits @ pw]
        total = block
        while total < n1:
            digits = (digits @ step) % p
            chunks.append(digits @ pw)
            total += block
        exp = np.concatenate(chunks)[:n1]
        log = np.full(self.order, -1, dtype=np.int64)
        log[exp] = np.arange(n1, dtype=np.int64)
        zech = None
        if p != 2:
            bumped = np.where(exp % p == p - 1, exp - (p - 1), exp + 1)
            zech = log[bumped]
        self._np_tables = (exp, log, zech)
        return self._np_tables

    def vmul(self, a, b):
        exp, log, _ = self.tables()
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = exp[(log[a] + log[b]) % (self.order - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        exp, log, zech = self.tables()
        n1 = self.order - 1
        la, lb = log[a], log[b]
        z = zech[(lb - la) % n1]
        out = np.where(z < 0, 0, exp[(la + z) % n1])
        out = np.where(a == 0, b, out)
        return np.where(b == 0, a, out)

    def vneg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        exp, log, _ = self.tables()
        n1 = self.order - 1
        return np.where(a == 0, 0, exp[(log[a] + n1 // 2) % n1])

    def vfrobenius(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        e %= self.m
        if e == 0:
            return a
        exp, log, _ = self.tables()
        n1 = self.order - 1
        k = pow(self.p, e, n1)
        return np.where(a == 0, 0, exp[(log[a] * k) % n1])

    def vdiv(self, a, b):
        """Elementwise a / b; entries with b == 0 come back as -1."""
        exp, log, _ = self.tables()
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = exp[(log[a] - log[b]) % (self.order - 1)]
        out = np.where(a == 0, 0, out)
        return np.where(b == 0, -1, out)

    # -- text format --------------------------------------------------------

    def parse_element(self, text: str) -> int:
        """Parse ``0``, ``g^k``, an integer constant or ``c0,c1,...``."""
        s = text.strip()
        if s.startswith("[") and s.endswith("]"):
            s = s[1:-1]
        if not s:
            raise ValueError(f"empty element in {text!r}")
        if s.startswith("g^"):
            try:
                k = int(s[2:])
            except ValueError:
                raise ValueError(f"bad generator power {text!r}") from None
            return self.pow(self.generator, k)
        try:
            parts = [int(c) for c in s.split(",")]
        except ValueError:
            raise ValueError(f"bad element {text!r}") from None
        if len(parts) == 1:
            return self.scalar(parts[0])
        return self.from_coeffs(parts)

    def format_element(self, a: int, style: str = "coords") -> str:
        if a == 0:
            return "0"
        if style == "power":
            return f"g^{self.discrete_log(a)}"
        return ",".join(str(c) for c in self.coeffs(a))


def make_field(p: int, m: int, modulus=None) -> Field:
    """Build F_{p^m}; without a modulus the lex-smallest irreducible is used."""
    if not sympy.isprime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise DegreeMismatch(f"extension degree must be >= 1, got {m}")
    key = None if modulus is None else tuple(int(c) for c in modulus)
    return _cached_field(p, m, key)


@lru_cache(maxsize=None)
def _cached_field(p: int, m: int, modulus):
    if modulus is None:
        modulus = smallest_irreducible(p, m)
    return Field(p, m, modulus)


def parse_field(text: str) -> Field:
    """Parse the ``p^m[:modulus=c0,...,cm]`` field format."""
    head, _, tail = text.strip().partition(":")
    try:
        p_str, m_str = head.split("^") if "^" in head else (head, "1")
        p, m = int(p_str), int(m_str)
    except ValueError:
        raise ValueError(f"bad field spec {text!r}") from None
    modulus = None
    if tail:
        key, _, val = tail.partition("=")
        if key.strip() != "modulus":
            raise ValueError(f"bad field option {tail!r}")
        try:
            modulus = [int(c) for c in val.split(",")]
        except ValueError:
            raise ValueError(f"bad modulus {val!r}") from None
    return make_field(p, m, modulus)
