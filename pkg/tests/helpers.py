"""Shared test utilities: an independent Hessian-determinant oracle for the
Monge-Ampere polynomial, random input generators, and fixture supports.

The oracle takes a completely different route from the library's simplex
expansion: it forms the logarithmic Hessian entries N_ij = p D_iD_j p -
(D_i p)(D_j p) with D_i = x_i d/dx_i and reduces the determinant against
powers of p. Agreement between the two is a strong correctness check.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from toric_gec import LaurentPolynomial, difference_lattice_basis, exact_quotient

FIGURE2_TRAPEZOID = [(-1, -1), (2, -1), (0, 1), (-1, 1)]
HEXAGON_VERTICES = [(0, -1), (1, -1), (1, 0), (0, 1), (-1, 1), (-1, 0)]
HEXAGON_POINTS = HEXAGON_VERTICES + [(0, 0)]

TRAPEZOID_POINTS = [
    (-1, -1), (0, -1), (1, -1), (2, -1),
    (-1, 0), (0, 0), (1, 0),
    (-1, 1), (0, 1),
]


def log_derivative(p: LaurentPolynomial, i: int) -> LaurentPolynomial:
    """D_i p = x_i * dp/dx_i, which keeps Laurent exponents intact."""
    terms = {}
    for e, c in p.terms.items():
        if e[i]:
            terms[e] = c * e[i]
    return LaurentPolynomial(p.rank, terms)


def hessian_mu_oracle(p: LaurentPolynomial) -> LaurentPolynomial:
    """Monge-Ampere polynomial from the logarithmic Hessian determinant.

    Defined for full-rank supports of rank 1 or 2: mu = N_11 for n = 1 and
    mu = det(N)/p for n = 2, both exact. Rank-deficient supports make the
    determinant vanish identically while the chart-based operator does not,
    so those inputs are rejected.
    """
    n = p.rank
    support_rank, _ = difference_lattice_basis(p.support())
    if support_rank != n:
        raise ValueError("oracle requires a full-rank support")
    d = [log_derivative(p, i) for i in range(n)]
    dd = [[log_derivative(d[j], i) for j in range(n)] for i in range(n)]
    big_n = [[p * dd[i][j] - d[i] * d[j] for j in range(n)] for i in range(n)]
    if n == 1:
        return big_n[0][0]
    if n == 2:
        det = big_n[0][0] * big_n[1][1] - big_n[0][1] * big_n[1][0]
        quot = exact_quotient(p, det)
        if quot is None:
            raise ValueError("Hessian determinant is not divisible by p")
        return quot
    raise ValueError("oracle implemented only for rank 1 and 2")


def random_coefficient(rng: random.Random, positive: bool = True) -> Fraction:
    num = rng.randint(1, 9)
    den = rng.choice([1, 1, 1, 2, 3])
    c = Fraction(num, den)
    if not positive and rng.random() < 0.3:
        c = -c
    return c


def polynomial_on_support(
    rng: random.Random, support: list[tuple[int, ...]]
) -> LaurentPolynomial:
    """Random polynomial with a nonzero coefficient at every listed point."""
    rank = len(support[0])
    terms = {tuple(e): random_coefficient(rng) for e in support}
    return LaurentPolynomial(rank, terms)


def random_unimodular_matrix(rng: random.Random, n: int, steps: int = 6) -> list[list[int]]:
    """Random GL_n(Z) matrix built from elementary row operations."""
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if n == 1:
            continue
        k = rng.randint(-2, 2)
        for c in range(n):
            m[i][c] += k * m[j][c]
        if rng.random() < 0.3:
            m[i], m[j] = m[j], m[i]
    if rng.random() < 0.5 and n:
        m[0] = [-x for x in m[0]]
    return m


def random_cube_polynomial(
    rng: random.Random, rank: int, nterms: int, span: int = 2
) -> LaurentPolynomial:
    """Random polynomial with exponents drawn from a small box, nonzero."""
    nterms = min(nterms, (2 * span + 1) ** rank)
    exps = set()
    while len(exps) < nterms:
        exps.add(tuple(rng.randint(-span, span) for _ in range(rank)))
    terms = {e: random_coefficient(rng, positive=False) for e in exps}
    p = LaurentPolynomial(rank, terms)
    if p.is_zero():
        return random_cube_polynomial(rng, rank, nterms, span)
    return p


def random_product_polynomial(rng: random.Random, rank: int) -> LaurentPolynomial:
    """Product of binomial factors, so the support is automatically
    unimodular: these are torus translates of products of lines."""
    p = LaurentPolynomial.constant(rank, random_coefficient(rng))
    for i in range(rank):
        x = LaurentPolynomial.variable(rank, i)
        one = LaurentPolynomial.constant(rank, random_coefficient(rng))
        p = p * (x + one) ** rng.randint(1, 2)
    return p


def univariate_from_interval(coeffs: list[int]) -> LaurentPolynomial:
    return LaurentPolynomial(1, {(i,): Fraction(c) for i, c in enumerate(coeffs) if c})


def all_interval_polynomials(d: int, values: range):
    """Every univariate polynomial with support exactly [0, d] and interior
    coefficients from the value set (endpoints always nonzero)."""
    for combo in product(values, repeat=d + 1):
        if combo[0] == 0 or combo[-1] == 0:
            continue
        yield univariate_from_interval(list(combo))
