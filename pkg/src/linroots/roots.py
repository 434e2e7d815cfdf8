"""Explicit kernels: an F_p linear-algebra oracle and the L(E_1(H^n)) route."""

from __future__ import annotations

from dataclasses import dataclass

from .gf import Field
from .linpoly import (
    L_operator,
    LinPoly,
    SigmaForm,
    embed,
    evaluate,
    semilinear_power,
)


@dataclass
class KernelBasis:
    """Basis of a kernel over the subfield F_{p^degree}."""
    elements: list[int]
    degree: int

    @property
    def dim(self) -> int:
        return len(self.elements)


# -- linear algebra over F_p on coordinate vectors -------------------------------

def fp_rref(rows, p: int):
    """Reduced row echelon form over F_p; returns (nonzero rows, pivot columns)."""
    rows = [[x % p for x in r] for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def fp_nullspace(A, p: int) -> list[list[int]]:
    """Basis of {v : A v = 0} over F_p, one vector per free column."""
    ncols = len(A[0])
    R, pivots = fp_rref(A, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(R, pivots):
            v[pc] = (-row[fc]) % p
        basis.append(v)
    return basis


def fp_matrix(f: LinPoly) -> list[list[int]]:
    """Matrix of f over F_p in the polynomial basis (columns are images)."""
    F = f.field
    cols = [F.coeffs(evaluate(f, F.p**j)) for j in range(F.m)]
    return [list(r) for r in zip(*cols)]


def fp_span(field: Field, elements) -> list[int]:
    """Canonical F_p-basis (RREF rows) of the span of the given elements."""
    R, _ = fp_rref([field.coeffs(x) for x in elements], field.p)
    return [field.from_coeffs(r) for r in R]


def fp_kernel(f: LinPoly) -> list[int]:
    F = f.field
    return fp_span(F, [F.from_coeffs(v) for v in fp_nullspace(fp_matrix(f), F.p)])


def subfield_basis(field: Field, d: int) -> list[int]:
    """F_p-basis of F_{p^d}, the kernel of x -> x^{p^d} - x."""
    if d == field.m:
        return [field.p**j for j in range(field.m)]
    frob = LinPoly.from_terms(field, 1, {d: 1, 0: field.neg(1)})
    return fp_kernel(frob)


def regroup(field: Field, elements, d: int) -> list[int]:
    """Greedy basis over F_{p^d} of the F_{p^d}-space spanned by ``elements``."""
    scalars = subfield_basis(field, d)
    chosen, span_rows = [], []
    rank = 0
    for v in elements:
        trial = span_rows + [field.coeffs(v)]
        if len(fp_rref(trial, field.p)[0]) == rank:
            continue
        chosen.append(v)
        span_rows += [field.coeffs(field.mul(lam, v)) for lam in scalars]
        rank = len(fp_rref(span_rows, field.p)[0])
    return chosen


def same_span(field: Field, a, b) -> bool:
    return fp_span(field, a) == fp_span(field, b)


# -- kernels ---------------------------------------------------------------------

def kernel_basis_generic(f) -> KernelBasis:
    """F_q-basis of ker f from the null space of its F_p matrix."""
    if isinstance(f, SigmaForm):
        f = embed(f)
    F = f.field
    return KernelBasis(regroup(F, fp_kernel(f), f.e), f.e)


def fixed_space_Hn(F: SigmaForm) -> KernelBasis:
    """F_{q^n}-basis of E_1(H^n) = ker(H^n - id)."""
    tw = F.tower
    P = semilinear_power(F, tw.n) - LinPoly.identity(F.field, tw.e)
    d = tw.e * tw.n
    return KernelBasis(regroup(F.field, fp_kernel(P), d), d)


def roots_via_L(F: SigmaForm) -> KernelBasis:
    """F_q-basis of ker F computed as the image L(E_1(H^n))."""
    tw = F.tower
    fld = F.field
    E = fixed_space_Hn(F)
    if not E.elements:
        return KernelBasis([], tw.e)
    L = L_operator(F)
    lams = subfield_basis(fld, tw.e * tw.n)
    images = [evaluate(L, fld.mul(lam, v)) for v in E.elements for lam in lams]
    return KernelBasis(regroup(fld, fp_span(fld, images), tw.e), tw.e)


def fix_semilinear_property_check(F: SigmaForm) -> bool:
    """Fix(H) has F_q-dimension dim_{F_{q^n}} E_1(H^n) and spans it over F_{q^n}."""
    tw = F.tower
    fld = F.field
    E = fixed_space_Hn(F)
    fix = kernel_basis_generic(F)
    if fix.dim != E.dim:
        return False
    if not fix.elements:
        return True
    lams = subfield_basis(fld, tw.e * tw.n)
    spread = [fld.mul(lam, y) for y in fix.elements for lam in lams]
    E_fp = [fld.mul(lam, v) for v in E.elements for lam in lams]
    return same_span(fld, spread, E_fp)
