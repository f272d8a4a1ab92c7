"""Shared oracles and random generators.

The oracles here recompute everything from first principles (symbolic polar
integration of monomials and explicit operator application), independently of
the closed forms under test.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict

import pytest

from hypolab.arith import ExactComplex, HermitianExactMatrix, ZERO
from hypolab.bergman import project
from hypolab.symbols import FourTermSymbol, HarmonicPolySymbol

Poly = Dict[int, ExactComplex]


# -- exact quadrature oracle ----------------------------------------------


def monomial_pair_integral(a: int, b: int) -> Fraction:
    """Exact integral of conj(z)^a z^b over the disk, area measure / pi.

    In polar coordinates the angular factor integrates to delta(a, b) and the
    radial factor to 2 / (a + b + 2); the product is the oracle value.
    """
    if a != b:
        return Fraction(0)
    radial = Fraction(2, a + b + 2)
    return radial


def oracle_project(u: int, v: int) -> Poly:
    """Brute-force projection sum_j (j+1) <conj(z)^u z^v, z^j> z^j."""
    out: Poly = {}
    for j in range(v + 1):
        # <conj(z)^u z^v, z^j> integrates z^v conj(z)^(u+j)
        coeff = (j + 1) * monomial_pair_integral(u + j, v)
        if coeff != 0:
            out[j] = ExactComplex(coeff)
    return out


def poly_inner(x: Poly, y: Poly) -> ExactComplex:
    """<x, y> from the quadrature oracle, term by term."""
    total = ZERO
    for dx, cx in x.items():
        for dy, cy in y.items():
            w = monomial_pair_integral(dy, dx)
            if w != 0:
                total = total + cx * cy.conjugate() * ExactComplex(w)
    return total


# -- operator-application oracle -------------------------------------------


def apply_symbol(sym: HarmonicPolySymbol, poly: Poly) -> Poly:
    """T_phi on a polynomial via Lemma-style projection, term by term."""
    out: Poly = {}

    def add(deg: int, coeff: ExactComplex) -> None:
        acc = out.get(deg, ZERO) + coeff
        if acc.is_zero():
            out.pop(deg, None)
        else:
            out[deg] = acc

    for deg, coeff in poly.items():
        for d, f in sym.analytic.items():
            add(deg + d, f * coeff)
        for e, c in sym.coanalytic.items():
            term = project(e, deg)
            if not term.is_zero():
                add(term.degree, c * coeff * term.coeff)
    return out


def oracle_commutator_element(sym: HarmonicPolySymbol, src: int, dst: int) -> ExactComplex:
    """<C z^src, z^dst> by double operator application (independent of the
    production path, which expands <T x, T y> products instead)."""
    conj_sym = sym.conjugate()
    e_src = {src: ExactComplex(Fraction(1))}
    forward = apply_symbol(conj_sym, apply_symbol(sym, e_src))
    backward = apply_symbol(sym, apply_symbol(conj_sym, e_src))
    coeff = forward.get(dst, ZERO) - backward.get(dst, ZERO)
    return coeff * ExactComplex(Fraction(1, dst + 1))


def oracle_mixed_commutator(a: int, b: int, h: Poly) -> ExactComplex:
    """<[T_conj(z)^a, T_z^b] h, h> = <z^b h, z^a h> - <P(conj(z)^a h), P(conj(z)^b h)>."""

    def shift(poly: Poly, d: int) -> Poly:
        return {deg + d: coeff for deg, coeff in poly.items()}

    def project_down(poly: Poly, e: int) -> Poly:
        out: Poly = {}
        for deg, coeff in poly.items():
            term = project(e, deg)
            if not term.is_zero():
                out[term.degree] = out.get(term.degree, ZERO) + coeff * term.coeff
        return out

    return poly_inner(shift(h, b), shift(h, a)) - poly_inner(project_down(h, a), project_down(h, b))


# -- random generators ------------------------------------------------------


def rand_fraction(rng: random.Random, span: int = 30, den: int = 3) -> Fraction:
    """Random rational in [-span, span]."""
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def rand_bounded_fraction(rng: random.Random) -> Fraction:
    """Random rational in [-10, 10]."""
    return Fraction(rng.randint(-30, 30), rng.randint(3, 7))


def rand_exact_complex(rng: random.Random) -> ExactComplex:
    return ExactComplex(rand_bounded_fraction(rng), rand_bounded_fraction(rng))


def rand_hermitian(rng: random.Random, dim: int) -> HermitianExactMatrix:
    entries = [[None] * dim for _ in range(dim)]
    for i in range(dim):
        entries[i][i] = ExactComplex(rand_bounded_fraction(rng))
        for j in range(i + 1, dim):
            value = rand_exact_complex(rng)
            entries[i][j] = value
            entries[j][i] = value.conjugate()
    return HermitianExactMatrix(entries)


def rand_psd(rng: random.Random, dim: int, rank: int | None = None) -> HermitianExactMatrix:
    """B* B for a random rectangular B; PSD by construction, rank-deficient
    when rank < dim."""
    rows = rank if rank is not None else dim
    b = [[rand_exact_complex(rng) for _ in range(dim)] for _ in range(rows)]
    entries = [
        [
            sum((b[r][i].conjugate() * b[r][j] for r in range(rows)), ZERO)
            for j in range(dim)
        ]
        for i in range(dim)
    ]
    return HermitianExactMatrix(entries)


def rand_harmonic_symbol(rng: random.Random, max_degree: int = 5, max_terms: int = 2) -> HarmonicPolySymbol:
    analytic = {}
    coanalytic = {}
    for _ in range(rng.randint(1, max_terms)):
        analytic[rng.randint(0, max_degree)] = rand_exact_complex(rng)
    for _ in range(rng.randint(0, max_terms)):
        coanalytic[rng.randint(1, max_degree)] = rand_exact_complex(rng)
    return HarmonicPolySymbol(analytic, coanalytic)


def rand_balanced_symbol(rng: random.Random, max_exp: int = 5) -> FourTermSymbol:
    g = rng.randint(1, max_exp)
    m = rng.randint(0, max_exp - g)
    p = rng.randint(0, max_exp - g)
    return FourTermSymbol(
        alpha=rand_exact_complex(rng),
        n=m + g,
        beta=rand_exact_complex(rng),
        m=m,
        gamma=rand_exact_complex(rng),
        p=p,
        delta=rand_exact_complex(rng),
        q=p + g,
    )


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240809)
