"""Lie bracket, inner derivations, and the Lie/associative generator
correspondence.

An inner Lie derivation is the map x -> [a, x] - [x, a] = 2(ax - xa)
for a fixed skew generator a; the same map is the inner associative
derivation of 2a, and conversely the associative derivation of any g is
the Lie derivation of g/2.  Both directions are exposed and tested.
"""

from __future__ import annotations

from . import _kernel
from .matrices import (
    SkewMatrix,
    SquareMatrix,
    mat_mul,
    mat_scale,
    mat_sub,
    _check_same_skew,
    _check_same_square,
)
from .rings import PrimeField


def bracket(x, y):
    """Commutator xy - yx; skew inputs give a skew result."""
    if isinstance(x, SkewMatrix) and isinstance(y, SkewMatrix):
        _check_same_skew(x, y)
        xs, ys = x.to_square(), y.to_square()
        return SkewMatrix.from_square(mat_sub(mat_mul(xs, ys), mat_mul(ys, xs)))
    xs = x.to_square() if isinstance(x, SkewMatrix) else x
    ys = y.to_square() if isinstance(y, SkewMatrix) else y
    _check_same_square(xs, ys)
    return mat_sub(mat_mul(xs, ys), mat_mul(ys, xs))


def apply_lie_derivation(a: SkewMatrix, x: SkewMatrix) -> SkewMatrix:
    """Image of x under the inner Lie derivation generated by a,
    [a,x] - [x,a] = 2(ax - xa)."""
    _check_same_skew(a, x)
    ring = a.ring
    if isinstance(ring, PrimeField):
        return SkewMatrix(ring, a.n, _kernel.deriv_image(a.n, ring.p, a.upper, x.upper))
    axs = mat_mul(a.to_square(), x.to_square())
    xas = mat_mul(x.to_square(), a.to_square())
    diff = mat_sub(axs, xas)
    dbl = SquareMatrix(ring, a.n, [tuple(ring.double(v) for v in row) for row in diff.rows])
    return SkewMatrix.from_square(dbl)


def lie_derivation_square(a: SquareMatrix, x: SquareMatrix) -> SquareMatrix:
    """The same map on arbitrary square matrices, via brackets."""
    return mat_sub(bracket(a, x), bracket(x, a))


def apply_assoc_derivation(g: SquareMatrix, x: SquareMatrix) -> SquareMatrix:
    """Image of x under the inner associative derivation gx - xg."""
    _check_same_square(g, x)
    return mat_sub(mat_mul(g, x), mat_mul(x, g))


def lie_to_assoc_generator(a: SkewMatrix) -> SquareMatrix:
    """Generator of the matching associative derivation: 2a."""
    ring = a.ring
    sq = a.to_square()
    return SquareMatrix(ring, a.n, [tuple(ring.double(v) for v in row) for row in sq.rows])


def assoc_to_lie_generator(g: SquareMatrix) -> SquareMatrix:
    """Generator of the matching Lie derivation: g/2."""
    ring = g.ring
    return mat_scale(ring.half(ring.one()), g)


def check_lie_leibniz(a: SkewMatrix, x: SkewMatrix, y: SkewMatrix) -> bool:
    """True iff D([x,y]) = [D(x),y] + [x,D(y)] for D generated by a."""
    lhs = apply_lie_derivation(a, bracket(x, y))
    rhs = bracket(apply_lie_derivation(a, x), y).add(bracket(x, apply_lie_derivation(a, y)))
    return lhs == rhs


class InnerLieDerivation:
    """Inner Lie derivation represented by its skew generator."""

    def __init__(self, generator: SkewMatrix):
        self.generator = generator
        self.n = generator.n
        self.ring = generator.ring

    def __call__(self, x: SkewMatrix) -> SkewMatrix:
        return apply_lie_derivation(self.generator, x)


class InnerAssocDerivation:
    """Inner associative derivation represented by its square generator."""

    def __init__(self, generator: SquareMatrix):
        self.generator = generator
        self.n = generator.n
        self.ring = generator.ring

    def __call__(self, x: SquareMatrix) -> SquareMatrix:
        return apply_assoc_derivation(self.generator, x)
