"""The graded Lie algebra structure on cochains.

A (p+1)-cochain carries graded degree p.  For a of degree p and b of degree q
the circle product a o b is the degree p+q element

    (a o b)(x_1..x_{p+q+1}) = sum_{k=1..p+1} (-1)^{q(k-1)}
        sum_{s in Sh(q, p-k+1)} sgn(s)
            a(x_1,..,x_{k-1}, b(x_k, x_{s(k+1)},..,x_{s(k+q)}),
              x_{s(k+q+1)},..,x_{s(p+q+1)})

where Sh(q, r) are the (q, r)-shuffles of the argument positions after the
slot of b.  The superbracket [a, b] = a o b + (-1)^{pq+1} b o a and the
differential d a = (-1)^{deg a} (coboundary of a) make this a differential
graded Lie algebra; the tests check antisymmetry, the graded Jacobi identity
and that d is a square-zero derivation of the bracket.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import LeibnizAlgebra
from .cochain import Cochain, coboundary
from .errors import DimensionMismatch, PreconditionError
from .linalg import F0, vec_is_zero


@dataclass(frozen=True)
class Shuffle:
    """A (p,q)-shuffle: increasing on the first p and on the last q positions."""

    p: int
    q: int
    permutation: tuple[int, ...]  # images of 1..p+q, 1-based
    sign: int


def _parity_sign(perm: tuple[int, ...]) -> int:
    inversions = 0
    for a, b in itertools.combinations(perm, 2):
        if a > b:
            inversions += 1
    return -1 if inversions % 2 else 1


def shuffles(p: int, q: int) -> list[Shuffle]:
    """All (p,q)-shuffles, lexicographic by permutation image.

    Generated by choosing the image set of the first block; the count is
    binomial(p+q, p).
    """
    if p < 0 or q < 0:
        raise PreconditionError("shuffle block sizes must be nonnegative")
    letters = range(1, p + q + 1)
    out = []
    for first in itertools.combinations(letters, p):
        rest = tuple(x for x in letters if x not in first)
        perm = first + rest
        out.append(Shuffle(p, q, perm, _parity_sign(perm)))
    return out


@lru_cache(maxsize=None)
def _shuffle_data(p: int, q: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    return tuple((s.permutation, s.sign) for s in shuffles(p, q))


@dataclass(frozen=True)
class GradedElement:
    """A cochain together with its graded degree (arity minus one)."""

    cochain: Cochain
    degree: int

    def __post_init__(self):
        if self.degree != self.cochain.arity - 1:
            raise DimensionMismatch("degree must equal arity - 1")

    @classmethod
    def of(cls, cochain: Cochain) -> "GradedElement":
        return cls(cochain, cochain.arity - 1)


def circle(alg: LeibnizAlgebra, a: GradedElement, b: GradedElement) -> GradedElement:
    """The circle product; the result has degree deg(a) + deg(b)."""
    fa, fb = a.cochain, b.cochain
    if fa.dim != alg.dim or fb.dim != alg.dim:
        raise DimensionMismatch("cochain dimension differs from algebra dimension")
    n = alg.dim
    p, q = a.degree, b.degree
    arity = p + q + 1
    shuffle_table = {k: _shuffle_data(q, p - k + 1) for k in range(1, p + 2)}
    values = []
    for x in itertools.product(range(n), repeat=arity):
        acc = [F0] * n
        for k in range(1, p + 2):
            k_sign = -1 if (q * (k - 1)) % 2 else 1
            window = x[k:]  # arguments x_{k+1} .. x_{p+q+1}
            prefix = x[: k - 1]
            for perm, psign in shuffle_table[k]:
                inner_args = (x[k - 1],) + tuple(window[j - 1] for j in perm[:q])
                inner = fb.eval_basis(inner_args)
                if vec_is_zero(inner):
                    continue
                suffix = tuple(window[j - 1] for j in perm[q:])
                s = k_sign * psign
                for c, coeff in enumerate(inner):
                    if coeff:
                        row = fa.eval_basis(prefix + (c,) + suffix)
                        w = coeff if s == 1 else -coeff
                        for t in range(n):
                            if row[t]:
                                acc[t] += w * row[t]
        values.append(tuple(acc))
    return GradedElement(Cochain(arity, n, tuple(values)), p + q)


def graded_bracket(alg: LeibnizAlgebra, a: GradedElement, b: GradedElement) -> GradedElement:
    """[a, b] = a o b + (-1)^{pq+1} b o a."""
    ab = circle(alg, a, b)
    ba = circle(alg, b, a)
    sign = Fraction(1) if (a.degree * b.degree + 1) % 2 == 0 else Fraction(-1)
    return GradedElement(ab.cochain + ba.cochain.scale(sign), ab.degree)


def dgla_differential(alg: LeibnizAlgebra, a: GradedElement) -> GradedElement:
    """d a = (-1)^{deg a} times the coboundary of a; raises degree by one."""
    d = coboundary(alg, a.cochain)
    if a.degree % 2:
        d = -d
    return GradedElement(d, a.degree + 1)
