"""Cyclotomic coset machinery for the multiplicative group of F_{q^n}.

For a divisor s of q^n - 1 with q^n - 1 = l*s, the subgroup C_0 of l-th powers
splits F_{q^n}^* into cosets C_i = gamma^i C_0.  A linearized polynomial
factors as S(x) = x^(q^(r1)) * f(x^(s*q^(r1))), and on C_i the value of the
inner factor is the constant A_i = f(xi^(i*q^(r1))) with xi = gamma^s.  That
turns S into a coset-indexed multiplier table, which several scatteredness
criteria exploit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import FieldTooLarge, NotADivisor
from .field import DEFAULT_CAP, FFElement, FieldCtx
from .linpoly import LinearizedPolynomial, evaluate_many


@dataclass(frozen=True)
class CyclotomicDecomposition:
    """Coset structure for one divisor s of q^n - 1 (so l = (q^n - 1)/s)."""

    s: int
    l: int
    xi: FFElement

    def coset_of(self, x: FFElement) -> int:
        """Index i with x in C_i; O(1) from the discrete log."""
        if x.dlog is None:
            raise ValueError("zero belongs to no coset")
        return x.dlog % self.l


@dataclass(frozen=True)
class CoefficientTable:
    """Per-coset multipliers A_i = f(xi^(i*q^(r1))) for the inner factor f."""

    r1: int
    A: tuple[FFElement, ...]
    f_terms: tuple[tuple[int, FFElement], ...]


def decompose(ctx: FieldCtx, s: int) -> CyclotomicDecomposition:
    if s < 1 or ctx.order % s != 0:
        raise NotADivisor(f"{s} does not divide {ctx.order}")
    l = ctx.order // s
    return CyclotomicDecomposition(s=s, l=l, xi=ctx.element_from_dlog(s % ctx.order))


def factorize_poly(ctx: FieldCtx, s_poly: LinearizedPolynomial
                   ) -> tuple[int, int, tuple[tuple[int, FFElement], ...]]:
    """Split S(x) into x^(q^(r1)) * f(x^(s*q^(r1))).

    Takes s = q^d - 1 with d = gcd(n, r_2 - r_1, ..., r_k - r_1): the largest
    divisor of that shape dividing every q^(r_i - r_1) - 1 and q^n - 1, which
    makes the exponents of f integral and the output canonical.
    Returns (r1, s, f_terms).
    """
    r1 = s_poly.min_exponent
    diffs = [r - r1 for r, _ in s_poly.terms[1:]]
    d = math.gcd(ctx.n, *diffs) if diffs else ctx.n
    s = ctx.q**d - 1
    f_terms = [(0, s_poly.terms[0][1])]
    for r, a in s_poly.terms[1:]:
        f_terms.append(((ctx.q ** (r - r1) - 1) // s, a))
    return r1, s, tuple(f_terms)


def coefficient_table(ctx: FieldCtx, decomp: CyclotomicDecomposition, r1: int,
                      f_terms) -> CoefficientTable:
    """Evaluate f at xi^(i*q^(r1)) for every coset index i."""
    step = decomp.s * pow(ctx.q, r1, ctx.order) % ctx.order
    values = []
    for i in range(decomp.l):
        base_dlog = step * i % ctx.order
        acc = ctx.zero()
        for e, c in f_terms:
            acc = ctx.add(acc, ctx.element_from_dlog((c.dlog + e * base_dlog) % ctx.order))
        values.append(acc)
    return CoefficientTable(r1=r1, A=tuple(values), f_terms=tuple(f_terms))


def cyclotomic_eval(ctx: FieldCtx, decomp: CyclotomicDecomposition,
                    table: CoefficientTable, x: FFElement) -> FFElement:
    """The coset-indexed map: 0 at 0, else A_i * x^(q^(r1)) on C_i."""
    if x.dlog is None:
        return ctx.zero()
    return ctx.mul(table.A[decomp.coset_of(x)], ctx.frobenius(x, table.r1))


def lemma_relation_check(ctx: FieldCtx, s_poly: LinearizedPolynomial,
                         limit: int = DEFAULT_CAP) -> bool:
    """Full-domain check that S agrees with its coset-indexed form everywhere."""
    if ctx.size > limit:
        raise FieldTooLarge(ctx.size, limit)
    r1, s, f_terms = factorize_poly(ctx, s_poly)
    decomp = decompose(ctx, s)
    table = coefficient_table(ctx, decomp, r1, f_terms)

    # Vectorized over all nonzero elements: S(g^a) vs A[a mod l] * g^(a*q^r1).
    a = np.arange(ctx.order, dtype=np.int64)
    lhs = evaluate_many(ctx, s_poly, a)
    table_dlog = np.array([-1 if v.dlog is None else v.dlog for v in table.A],
                          dtype=np.int64)
    adlog = table_dlog[a % decomp.l]
    prod_dlog = (adlog + a * pow(ctx.q, r1, ctx.order)) % ctx.order
    rhs = np.where(adlog < 0, 0, ctx._antilog[prod_dlog])
    # both maps fix zero, so the scan over nonzero elements decides equality
    return bool(np.array_equal(lhs, rhs))
