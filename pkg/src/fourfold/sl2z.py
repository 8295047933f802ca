"""Exact arithmetic in SL2(Z): words, abelianization, commutators, conjugacy.

All computations are integer exact.  Matrices are immutable 2x2 integer
matrices of determinant +1 or -1, words are formal products of the
generators S and T, and every nontrivial decision procedure returns a
certificate that is verified by plain matrix multiplication before it is
handed back.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional

from .errors import ConsistencyError

Quad = tuple[int, int, int, int]

# ---------------------------------------------------------------- tuple core
# Hot loops (word round trips, normal forms) run on plain 4-tuples; the
# public MatrixZ API wraps these.


def _mul4(x: Quad, y: Quad) -> Quad:
    return (
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    )


def _inv4(x: Quad) -> Quad:
    det = x[0] * x[3] - x[1] * x[2]
    if det == 1:
        return (x[3], -x[1], -x[2], x[0])
    return (-x[3], x[1], x[2], -x[0])


_ID4: Quad = (1, 0, 1, 1)  # patched below; placeholder silences linters
_ID4 = (1, 0, 0, 1)


def _pow4(x: Quad, n: int) -> Quad:
    if n < 0:
        x, n = _inv4(x), -n
    out = _ID4
    while n:
        if n & 1:
            out = _mul4(out, x)
        x = _mul4(x, x)
        n >>= 1
    return out


def _letter4(gen: str, exp: int) -> Quad:
    if gen == "T":
        return (1, exp, 0, 1)
    # S has order 4: S^2 = -id
    e = exp % 4
    if e == 0:
        return _ID4
    if e == 1:
        return (0, -1, 1, 0)
    if e == 2:
        return (-1, 0, 0, -1)
    return (0, 1, -1, 0)


# ---------------------------------------------------------------- matrices


@dataclass(frozen=True, slots=True)
class MatrixZ:
    """Immutable 2x2 integer matrix with determinant +1 or -1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.det not in (1, -1):
            raise ValueError(f"determinant must be +1 or -1, got {self.det}")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def as_tuple(self) -> Quad:
        return (self.a, self.b, self.c, self.d)

    @staticmethod
    def of(quad: Quad) -> "MatrixZ":
        return MatrixZ(quad[0], quad[1], quad[2], quad[3])

    def __mul__(self, other: "MatrixZ") -> "MatrixZ":
        return MatrixZ.of(_mul4(self.as_tuple(), other.as_tuple()))

    __matmul__ = __mul__

    def inverse(self) -> "MatrixZ":
        return MatrixZ.of(_inv4(self.as_tuple()))

    def __pow__(self, n: int) -> "MatrixZ":
        return MatrixZ.of(_pow4(self.as_tuple(), n))

    def __neg__(self) -> "MatrixZ":
        return MatrixZ(-self.a, -self.b, -self.c, -self.d)

    @property
    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == _ID4

    @classmethod
    def parse(cls, text: str) -> "MatrixZ":
        """Parse the flat text form "a,b,c,d" (row major)."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected 4 comma separated entries, got {text!r}")
        try:
            a, b, c, d = (int(p) for p in parts)
        except ValueError:
            raise ValueError(f"matrix entries must be integers: {text!r}") from None
        return cls(a, b, c, d)

    def compact(self) -> str:
        """Flat text form "a,b,c,d" (row major), inverse of parse."""
        return f"{self.a},{self.b},{self.c},{self.d}"

    def __str__(self) -> str:
        return f"({self.a} {self.b}; {self.c} {self.d})"


ID = MatrixZ(1, 0, 0, 1)
NEG_ID = MatrixZ(-1, 0, 0, -1)
S = MatrixZ(0, -1, 1, 0)
T = MatrixZ(1, 1, 0, 1)
B = T  # the positive twist; both names are used in the literature on torus bundles
TAU = MatrixZ(-1, 0, 0, 1)  # determinant -1 reflection
W = S * T  # order 6, W^3 = -id

_GENS = ("S", "T")


def commutator(g: MatrixZ, h: MatrixZ) -> MatrixZ:
    return g * h * g.inverse() * h.inverse()


# ---------------------------------------------------------------- words


@dataclass(frozen=True)
class GeneratorWord:
    """Reduced formal word in S and T with integer exponents.

    Reduced means adjacent letters use distinct generators and no exponent
    is zero.  The empty word is the identity.
    """

    letters: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        prev = None
        for gen, exp in self.letters:
            if gen not in _GENS:
                raise ValueError(f"unknown generator {gen!r}")
            if not isinstance(exp, int) or exp == 0:
                raise ValueError(f"exponents must be nonzero integers, got {exp!r}")
            if gen == prev:
                raise ValueError("adjacent letters must use distinct generators")
            prev = gen

    @classmethod
    def of(cls, pairs: Iterable[tuple[str, int]]) -> "GeneratorWord":
        """Build a word, merging adjacent equal generators and dropping zeros."""
        stack: list[list] = []
        for gen, exp in pairs:
            if exp == 0:
                continue
            if stack and stack[-1][0] == gen:
                stack[-1][1] += exp
                if stack[-1][1] == 0:
                    stack.pop()
            else:
                stack.append([gen, exp])
        return cls(tuple((g, e) for g, e in stack))

    @classmethod
    def parse(cls, text: str) -> "GeneratorWord":
        """Parse the text form "T^3 S T^-1"; "" and "1" denote the identity."""
        text = text.strip()
        if text in ("", "1"):
            return cls(())
        pairs = []
        for token in text.split():
            gen, caret, exp = token.partition("^")
            if gen not in _GENS:
                raise ValueError(f"bad word token {token!r}")
            if caret:
                try:
                    e = int(exp)
                except ValueError:
                    raise ValueError(f"bad exponent in token {token!r}") from None
            else:
                e = 1
            pairs.append((gen, e))
        return cls.of(pairs)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(g if e == 1 else f"{g}^{e}" for g, e in self.letters)

    @property
    def length(self) -> int:
        return len(self.letters)

    def inverse(self) -> "GeneratorWord":
        return GeneratorWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __mul__(self, other: "GeneratorWord") -> "GeneratorWord":
        return GeneratorWord.of(self.letters + other.letters)


def word_to_matrix(w: GeneratorWord) -> MatrixZ:
    """Evaluate a word to its SL2(Z) matrix."""
    out = _ID4
    for gen, exp in w.letters:
        out = _mul4(out, _letter4(gen, exp))
    return MatrixZ.of(out)


def _nearest_quotient(a: int, c: int) -> int:
    # quotient minimizing |a - q*c|; ties broken toward the floor
    q = a // c
    r = a - q * c
    if 2 * abs(r) > abs(c):
        q += 1 if c > 0 else -1
    return q


def matrix_to_word(m: MatrixZ) -> GeneratorWord:
    """Decompose m into a reduced word in S and T by Euclidean reduction.

    The word length is O(log max|entry|).  Raises ValueError for
    determinant -1 input, which is not in SL2(Z).
    """
    if m.det != 1:
        raise ValueError("not in SL2(Z): determinant is -1")
    cur = m.as_tuple()
    pairs: list[tuple[str, int]] = []
    while cur[2] != 0:
        q = _nearest_quotient(cur[0], cur[2])
        if q:
            pairs.append(("T", q))
        pairs.append(("S", 1))
        # cur := S^-1 T^-q cur, so that cur_old = T^q S cur_new
        a, b, c, d = cur
        a, b = a - q * c, b - q * d
        cur = (c, d, -a, -b)
    # now cur is (1, b, 0, 1) or (-1, b, 0, -1)
    if cur[0] == 1:
        if cur[1]:
            pairs.append(("T", cur[1]))
    else:
        pairs.append(("S", 2))
        if cur[1]:
            pairs.append(("T", -cur[1]))
    return GeneratorWord.of(pairs)


# ---------------------------------------------------------------- abelianization
# The abelianized group is cyclic of order 12, generated by the class of T;
# the presentation <S, T | S^4, (ST)^3 S^-2> forces class(S) = -3*class(T).

_CLASS_S = 9
_CLASS_T = 1


@dataclass(frozen=True, eq=False)
class AbelianClass:
    """Residue class mod 12 in the abelianization of SL2(Z)."""

    value: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", self.value % 12)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, AbelianClass):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other % 12
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("AbelianClass", self.value))

    def __add__(self, other: "AbelianClass") -> "AbelianClass":
        return AbelianClass(self.value + other.value)

    def __neg__(self) -> "AbelianClass":
        return AbelianClass(-self.value)

    def __int__(self) -> int:
        return self.value

    @property
    def additive_order(self) -> int:
        return 12 // gcd(12, self.value)

    def __repr__(self) -> str:
        return f"AbelianClass({self.value})"

    def __str__(self) -> str:
        return f"{self.value} (mod 12)"


def abelianization_class(m: MatrixZ) -> AbelianClass:
    """Class of m in SL2(Z)^ab = Z/12, normalized so class(T) = 1."""
    word = matrix_to_word(m)
    total = 0
    for gen, exp in word.letters:
        total += exp * (_CLASS_T if gen == "T" else _CLASS_S)
    return AbelianClass(total)


def is_in_derived_subgroup(m: MatrixZ) -> bool:
    return abelianization_class(m) == 0


# ---------------------------------------------------------------- commutators
# The derived subgroup is free on U = [T,S] and V = [S,T^-1].  A matrix of
# abelian class 0 is rewritten over the Schreier generators of the index-12
# subgroup (transversal T^j) and each Schreier generator carries a frozen
# word in U, V; the letters map straight to commutators.  No minimality is
# claimed for the emitted decomposition, only verified correctness.

U_BASIS = MatrixZ(2, 1, 1, 1)  # equals [T, S]
V_BASIS = MatrixZ(1, 1, 1, 2)  # equals [S, T^-1]

_PAIR_FOR_LETTER = {
    ("U", 1): (T, S),
    ("U", -1): (S, T),
    ("V", 1): (S, T.inverse()),
    ("V", -1): (T.inverse(), S),
}

# _SCHREIER_S[j] is a word for T^j S T^-((j+9) mod 12); _SCHREIER_T12 one for
# T^12.  Derived once by breadth-first search in the free group on U, V;
# every entry is re-verified by the test suite via plain multiplication.
_SCHREIER_S: tuple[tuple[tuple[str, int], ...], ...] = (
    (("V", 1), ("U", -1), ("V", -1), ("U", 1), ("V", 1), ("U", -1)),
    (("U", 1), ("V", 1), ("U", -1), ("V", -1), ("U", 1), ("V", 1), ("U", -1)),
    (("U", 1), ("V", -1), ("U", 1), ("V", 1), ("U", -1), ("V", -1), ("U", 1), ("V", 1), ("U", -1)),
    (("U", 1), ("V", -1)),
    (("U", 1), ("V", -1), ("U", -1)),
    (("U", 1), ("V", -1), ("U", -1), ("V", 1), ("U", -1)),
    (("U", 1), ("V", -1), ("U", -1), ("V", 2), ("U", -1)),
    (("U", 1), ("V", -1), ("U", -1), ("V", 1), ("U", 1), ("V", 1), ("U", -1)),
    (("U", 1), ("V", -1), ("U", -1), ("V", 1), ("U", 1), ("V", -1), ("U", 1), ("V", 1), ("U", -1)),
    (("U", 1), ("V", -1), ("U", -1), ("V", 1), ("U", 1), ("V", -2), ("U", 1), ("V", 1), ("U", -1)),
    (("U", 1), ("V", -1), ("U", -1), ("V", 1), ("U", 1), ("V", -1), ("U", -1), ("V", -1), ("U", 1), ("V", 1), ("U", -1)),
    (("U", 1), ("V", -1), ("U", -1), ("V", 1), ("U", 1), ("V", -1), ("U", -1), ("V", 1), ("U", -1), ("V", -1), ("U", 1), ("V", 1), ("U", -1)),
)
_SCHREIER_T12: tuple[tuple[str, int], ...] = (
    ("U", 1), ("V", -1), ("U", -1), ("V", 1), ("U", 1), ("V", -1), ("U", -1), ("V", 1),
)


@dataclass(frozen=True)
class CommutatorCertificate:
    """Ordered commutator decomposition: [g1,h1]...[gr,hr] = target."""

    pairs: tuple[tuple[MatrixZ, MatrixZ], ...]
    target: MatrixZ

    def product(self) -> MatrixZ:
        out = ID
        for g, h in self.pairs:
            out = out * commutator(g, h)
        return out

    def verify(self) -> bool:
        return self.product() == self.target

    def __len__(self) -> int:
        return len(self.pairs)


def _invert_uv(word: tuple[tuple[str, int], ...]) -> tuple[tuple[str, int], ...]:
    return tuple((g, -e) for g, e in reversed(word))


def _reduce_uv(letters: list[tuple[str, int]]) -> list[tuple[str, int]]:
    stack: list[list] = []
    for gen, exp in letters:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([gen, exp])
    return [(g, e) for g, e in stack]


def commutator_decomposition(m: MatrixZ) -> CommutatorCertificate:
    """Express a derived-subgroup element as an explicit commutator product.

    Raises ValueError when m has determinant -1 or nonzero abelian class.
    The returned certificate is verified by multiplication before return.
    """
    if m.det != 1:
        raise ValueError("not in SL2(Z): determinant is -1")
    cls = abelianization_class(m)
    if cls != 0:
        raise ValueError(
            f"not in the derived subgroup: abelian class is {cls.value} (mod 12)"
        )
    word = matrix_to_word(m)
    emitted: list[tuple[str, int]] = []
    j = 0
    for gen, exp in word.letters:
        if gen == "T":
            q = (j + exp) // 12
            if q:
                emitted.extend(_SCHREIER_T12 * q if q > 0 else _invert_uv(_SCHREIER_T12) * (-q))
            j = (j + exp) % 12
        else:
            step = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                if step > 0:
                    emitted.extend(_SCHREIER_S[j])
                    j = (j + 9) % 12
                else:
                    j = (j + 3) % 12
                    emitted.extend(_invert_uv(_SCHREIER_S[j]))
    if j != 0:
        raise ConsistencyError("coset walk did not return to the base coset")
    pairs: list[tuple[MatrixZ, MatrixZ]] = []
    for gen, exp in _reduce_uv(emitted):
        sign = 1 if exp > 0 else -1
        pairs.extend([_PAIR_FOR_LETTER[(gen, sign)]] * abs(exp))
    cert = CommutatorCertificate(tuple(pairs), m)
    if not cert.verify():
        raise ConsistencyError("commutator certificate failed multiplication check")
    return cert


# ---------------------------------------------------------------- conjugacy
# Strategy: PSL2(Z) = Z/2 * Z/3 with s = [S] and w = [ST].  Elements get a
# unique alternating normal form; conjugacy there is cyclic rotation of the
# cyclically reduced form.  Lifting back to SL2(Z) only requires checking
# the sign of one witness, because every element of a PSL centralizer lifts
# to a matrix commuting with the given matrix exactly.

_PslLetter = tuple[str, int]  # ("s", 1) or ("w", 1 or 2)

_W4 = W.as_tuple()
_W24 = _mul4(_W4, _W4)


def _psl_push(stack: list[list], gen: str, exp: int) -> None:
    order = 2 if gen == "s" else 3
    exp %= order
    if exp == 0:
        return
    if stack and stack[-1][0] == gen:
        stack[-1][1] = (stack[-1][1] + exp) % order
        if stack[-1][1] == 0:
            stack.pop()
    else:
        stack.append([gen, exp])


def psl_normal_form(m: MatrixZ) -> tuple[_PslLetter, ...]:
    """Alternating normal form of [m] in PSL2(Z) = <s | s^2> * <w | w^3>."""
    word = matrix_to_word(m)
    stack: list[list] = []
    for gen, exp in word.letters:
        if gen == "S":
            _psl_push(stack, "s", exp % 2)
        else:
            if exp > 0:
                for _ in range(exp):
                    _psl_push(stack, "s", 1)
                    _psl_push(stack, "w", 1)
            else:
                for _ in range(-exp):
                    _psl_push(stack, "w", 2)
                    _psl_push(stack, "s", 1)
    nf = tuple((g, e) for g, e in stack)
    lifted = _lift_psl(nf).as_tuple()
    mt = m.as_tuple()
    if lifted != mt and lifted != (-mt[0], -mt[1], -mt[2], -mt[3]):
        raise ConsistencyError("normal form does not lift to the input matrix")
    return nf


def _lift_psl(letters: Iterable[_PslLetter]) -> MatrixZ:
    out = _ID4
    for gen, exp in letters:
        out = _mul4(out, (0, -1, 1, 0) if gen == "s" else (_W4 if exp == 1 else _W24))
    return MatrixZ.of(out)


def _psl_invert(letters: Iterable[_PslLetter]) -> tuple[_PslLetter, ...]:
    out = []
    for gen, exp in reversed(tuple(letters)):
        out.append((gen, exp if gen == "s" else 3 - exp))
    return tuple(out)


def _cyclic_reduce(
    nf: tuple[_PslLetter, ...]
) -> tuple[tuple[_PslLetter, ...], tuple[_PslLetter, ...]]:
    """Return (cyc, prefix) with [m] = prefix * cyc * prefix^-1 and cyc cyclically reduced."""
    w = list(nf)
    prefix: list[_PslLetter] = []
    while len(w) >= 2 and w[0][0] == w[-1][0]:
        head = w.pop(0)
        prefix.append(head)
        stack = [list(l) for l in w]
        _psl_push(stack, head[0], head[1])
        w = [(g, e) for g, e in stack]
    return tuple(w), tuple(prefix)


@dataclass(frozen=True)
class ConjugacyResult:
    """Outcome of a conjugacy test, with a verified witness when true."""

    conjugate: bool
    witness: Optional[MatrixZ]

    def __bool__(self) -> bool:
        return self.conjugate


def are_conjugate(m1: MatrixZ, m2: MatrixZ) -> ConjugacyResult:
    """Decide conjugacy in SL2(Z); a returned witness g satisfies g m1 g^-1 = m2."""
    if m1.det != 1 or m2.det != 1:
        raise ValueError("not in SL2(Z): determinant is -1")
    if m1 == m2:
        return ConjugacyResult(True, ID)
    if m1 in (ID, NEG_ID) or m2 in (ID, NEG_ID):
        return ConjugacyResult(False, None)  # central elements are alone in their class
    cyc1, p1 = _cyclic_reduce(psl_normal_form(m1))
    cyc2, p2 = _cyclic_reduce(psl_normal_form(m2))
    if len(cyc1) != len(cyc2):
        return ConjugacyResult(False, None)
    n = len(cyc1)
    witness_letters: Optional[tuple[_PslLetter, ...]] = None
    if n == 1:
        if cyc1 == cyc2:
            witness_letters = p2 + _psl_invert(p1)
    else:
        for k in range(n):
            if cyc1[k:] + cyc1[:k] == cyc2:
                q = cyc1[:k]
                witness_letters = p2 + _psl_invert(q) + _psl_invert(p1)
                break
    if witness_letters is None:
        return ConjugacyResult(False, None)
    g = _lift_psl(witness_letters)
    conj = g * m1 * g.inverse()
    if conj == m2:
        return ConjugacyResult(True, g)
    if conj == -m2:
        # The sign of a witness is independent of the choice: every PSL
        # centralizer element lifts to a matrix commuting with m1 exactly.
        return ConjugacyResult(False, None)
    raise ConsistencyError("witness conjugates to neither m2 nor -m2")


# ---------------------------------------------------------------- semi-bundles


def semibundle_relator(phi: MatrixZ) -> MatrixZ:
    """The obstruction word phi tau phi^-1 tau; identity iff phi commutes with tau."""
    return phi * TAU * phi.inverse() * TAU
