"""Seeded generators of random (weak/full) bimodules for property suites.

Weakness and fullness are guaranteed by construction, not by rejection:
1-dimensional building blocks with the functional constraints of the
chosen algebra, symmetrizations/anti-symmetrizations of random left
modules, direct sums, tensor products, hom spaces and duals, and a final
change of basis.  The axiom reports of the results are still asserted by
the callers, so a construction bug cannot silently weaken a test.
"""

from __future__ import annotations

import random

from .algebra import LeibnizAlgebra, make_A, make_N, make_e
from .bimodule import (
    Bimodule,
    antisymmetrize,
    conjugate,
    direct_sum,
    dual,
    hom_bimodule,
    one_dim_bimodule,
    symmetrize,
    trivial_bimodule,
)
from .linalg import LinAlgError, Matrix, invert


def random_invertible(field, n: int, rng: random.Random) -> Matrix:
    while True:
        m = Matrix(
            field,
            [
                [field.from_int(rng.randint(-2, 2)) for _ in range(n)]
                for _ in range(n)
            ],
        )
        try:
            invert(m)
            return m
        except LinAlgError:
            continue


def random_one_dim_weak(alg: LeibnizAlgebra, rng: random.Random) -> Bimodule:
    """Random 1-dim weak bimodule: both functionals vanish on products."""
    f = alg.field
    from .algebra import products_and_series
    from .linalg import nullspace, unit_vector

    span = products_and_series(alg)["product_span"]
    if span.dim == 0:
        funcs = [unit_vector(f, alg.dim, i) for i in range(alg.dim)]
    else:
        funcs = nullspace(span.basis).basis_vectors()

    def combo():
        out = [f.zero()] * alg.dim
        for v in funcs:
            coeff = f.from_int(rng.randint(-2, 2))
            out = [f.add(x, f.mul(coeff, y)) for x, y in zip(out, v)]
        return out

    return one_dim_bimodule(alg, combo(), combo())


def random_left_module_matrices(alg: LeibnizAlgebra, dim: int, rng: random.Random):
    """Left action matrices satisfying LLM for the supported shapes: any
    matrix for the 1-dim algebra; for the 2-dim solvable and nilpotent
    algebras the second basis element (the kernel direction, which is a
    product) must act by zero while the first is free."""
    f = alg.field
    rand = lambda: Matrix(
        f,
        [[f.from_int(rng.randint(-2, 2)) for _ in range(dim)] for _ in range(dim)],
    )
    if alg == make_e(f):
        return [rand()]
    if alg == make_A(f) or alg == make_N(f):
        return [rand(), Matrix.zeros(f, dim, dim)]
    raise ValueError(
        "random left modules support the 1-dim algebra and the 2-dim "
        "solvable/nilpotent examples"
    )


def random_full_bimodule(
    alg: LeibnizAlgebra, dim: int, rng: random.Random
) -> Bimodule:
    """Random full bimodule of exactly the given dimension."""
    blocks = []
    remaining = dim
    while remaining > 0:
        size = rng.randint(1, min(2, remaining))
        lam = random_left_module_matrices(alg, size, rng)
        kind = rng.random()
        if kind < 0.42:
            blocks.append(symmetrize(alg, lam))
        elif kind < 0.84:
            blocks.append(antisymmetrize(alg, lam))
        else:
            blocks.append(trivial_bimodule(alg, size))
        remaining -= size
    mod = blocks[0]
    for b in blocks[1:]:
        mod = direct_sum(mod, b)
    return conjugate(mod, random_invertible(alg.field, dim, rng))


def random_weak_bimodule(
    alg: LeibnizAlgebra, dim: int, rng: random.Random
) -> Bimodule:
    """Random weak bimodule of exactly the given dimension; mixes genuinely
    non-full 1-dim blocks with full blocks, hom spaces and duals."""
    blocks = []
    remaining = dim
    while remaining > 0:
        roll = rng.random()
        if roll < 0.45:
            blocks.append(random_one_dim_weak(alg, rng))
            remaining -= 1
        elif roll < 0.7 and remaining >= 1:
            size = rng.randint(1, min(2, remaining))
            blocks.append(random_full_bimodule(alg, size, rng))
            remaining -= size
        elif roll < 0.85:
            a = random_one_dim_weak(alg, rng)
            b = random_one_dim_weak(alg, rng)
            blocks.append(hom_bimodule(a, b))
            remaining -= 1
        else:
            blocks.append(dual(random_one_dim_weak(alg, rng)))
            remaining -= 1
    mod = blocks[0]
    for b in blocks[1:]:
        mod = direct_sum(mod, b)
    return conjugate(mod, random_invertible(alg.field, dim, rng))
