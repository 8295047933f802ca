"""The Meyer function of genus one and torus-bundle signatures.

The central object is a function M: SL2(Z) -> (1/3)Z whose coboundary is the
signature cocycle of surface bundles with torus fiber.  A bundle over a
punctured sphere with monodromies multiplying to the identity has signature
equal to the sum of the M-values of its monodromies; that sum is always an
integer even though individual values are thirds.

M is evaluated through the Rademacher function Phi and Dedekind sums, with
sign terms calibrated so that M(B^k) = sign(k) - k/3 under this package's
orientation convention.  The cocycle itself is also computed directly from
exact linear algebra, which gives an independent route used by the tests:
M(xy) - M(x) - M(y) must equal the signature of the cocycle form on the
kernel of [(x^-1 - I) | (y - I)].
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import ConsistencyError
from .sl2z import ID, MatrixZ
from .wall import kernel_subspace, symmetric_signature


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def dedekind_sum(h: int, k: int) -> Fraction:
    """s(h,k) = sum over i in 1..k-1 of ((i/k)) ((hi/k)), sawtooth products.

    Computed as a single exact sum: for k not dividing hi the product of
    sawtooths is (2i - k)(2(hi mod k) - k) / (4k^2), and terms with k | hi
    vanish.
    """
    if k < 1:
        raise ValueError("dedekind_sum needs k >= 1")
    h %= k
    total = 0
    for i in range(1, k):
        r = (h * i) % k
        if r:
            total += (2 * i - k) * (2 * r - k)
    return Fraction(total, 4 * k * k)


def rademacher_phi(m: MatrixZ) -> int:
    """The Rademacher function: integer-valued, odd, Phi(B^k) = k."""
    if m.det != 1:
        raise ValueError("not in SL2(Z): determinant is -1")
    if m.c != 0:
        value = Fraction(m.a + m.d, m.c) - 12 * _sign(m.c) * dedekind_sum(m.d, abs(m.c))
    else:
        value = Fraction(m.b, m.d)
    if value.denominator != 1:
        raise ConsistencyError(f"Rademacher value {value} is not an integer for {m}")
    return int(value)


def meyer_function(m: MatrixZ) -> Fraction:
    """The Meyer function of genus one, valued in (1/3)Z.

    Closed formula: -Phi(m)/3 plus a sign correction that vanishes exactly
    on trace-2 parabolics (c != 0) and on the -B^k family (c = 0, d < 0).
    The correction was calibrated against the cocycle recursion seeded by
    M(B^k) = sign(k) - k/3; the tests re-run that recursion as an oracle.
    """
    if m.det != 1:
        raise ValueError("not in SL2(Z): determinant is -1")
    base = -Fraction(rademacher_phi(m), 3)
    if m.c != 0:
        return base + _sign(m.c * (m.a + m.d - 2))
    if m.d > 0:
        return base + _sign(m.b)
    return base


def meyer_cocycle(x: MatrixZ, y: MatrixZ) -> int:
    """Signature of Meyer's cocycle form for the pair (x, y).

    The form lives on V = ker[(x^-1 - I) | (y - I)] inside Q^4 and sends
    ((u,v), (u',v')) to (u+v)^T J (I-y) v' with J the standard symplectic
    plane.  Its signature equals M(xy) - M(x) - M(y).
    """
    if x.det != 1 or y.det != 1:
        raise ValueError("not in SL2(Z): determinant is -1")
    xi = x.inverse()
    space = kernel_subspace(
        [
            [xi.a - 1, xi.b, y.a - 1, y.b],
            [xi.c, xi.d - 1, y.c, y.d - 1],
        ]
    )
    basis = space.basis()
    if not basis:
        return 0
    # K = J (I - y) with J = (0 -1; 1 0)
    k11, k12 = y.c, -(1 - y.d)
    k21, k22 = 1 - y.a, -y.b
    kmat = ((Fraction(k11), Fraction(k12)), (Fraction(k21), Fraction(k22)))

    def pairing(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        return sum(
            (u[i] + u[2 + i]) * kmat[i][j] * v[2 + j] for i in range(2) for j in range(2)
        )

    n = len(basis)
    gram = [[pairing(basis[i], basis[j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if gram[i][j] != gram[j][i]:
                raise ConsistencyError("Meyer cocycle form came out non-symmetric")
    return symmetric_signature(gram)


def fiber_sum_signature(monodromies: Sequence[MatrixZ]) -> int:
    """Signature of a torus bundle over a punctured sphere with the given
    boundary monodromies; requires the ordered product (last first) to be
    the identity."""
    product = ID
    for m in monodromies:
        if m.det != 1:
            raise ValueError("not in SL2(Z): determinant is -1")
        product = m * product
    if product != ID:
        raise ValueError(
            f"monodromies do not close up: ordered product is {product}, not the identity"
        )
    total = sum(meyer_function(m) for m in monodromies)
    if total.denominator != 1:
        raise ConsistencyError(f"signature sum {total} is not an integer")
    return int(total)
