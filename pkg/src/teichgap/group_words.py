"""Exact arithmetic in SL(2,Z) and in the free group PGamma_2 = <x, y>.

Free words over ``x, y`` are plain strings in which an upper-case letter is
the inverse of the lower-case one (``"Xy"`` is x^-1 y).  Words are kept freely
reduced everywhere.  Words over the 13 generators of PGamma_6 are tuples of
``(name, exponent)`` pairs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

__all__ = [
    "Mat2", "IDENTITY", "MINUS_I", "T", "L", "S", "X", "Y",
    "reduce_word", "invert_word", "word_power", "parse_word", "format_word",
    "eval_word", "decompose_gamma2", "gamma_auto", "gamma_inv",
    "GEN_WORDS", "parse_gen_word", "gen_to_xy", "LEMMA_CHANGE_ROWS",
    "verify_lemma_change", "coset_action", "apply_word_to_coset",
    "COSET_REPS", "coset_rep_table", "coset_index_mod6",
    "m2_value", "m_value", "M_VALUES", "M2_VALUES", "membership", "in_pgamma6",
]


@dataclass(frozen=True)
class Mat2:
    """Integer 2x2 matrix ``(a b; c d)`` of determinant one."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self} is not 1")

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "Mat2":
        return Mat2(self.d, -self.b, -self.c, self.a)

    def __pow__(self, e: int) -> "Mat2":
        base = self if e >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(e)):
            out = out @ base
        return out

    @property
    def trace(self) -> int:
        return self.a + self.d

    def mod(self, n: int) -> tuple[int, int, int, int]:
        return (self.a % n, self.b % n, self.c % n, self.d % n)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @classmethod
    def parse(cls, text: str) -> "Mat2":
        parts = text.replace(",", " ").split()
        if len(parts) != 4:
            raise ValueError(f"expected four integers, got {text!r}")
        return cls(*(int(p) for p in parts))

    def __str__(self):
        return f"({self.a} {self.b}; {self.c} {self.d})"


IDENTITY = Mat2(1, 0, 0, 1)
MINUS_I = Mat2(-1, 0, 0, -1)
T = Mat2(1, 1, 0, 1)
L = Mat2(1, 0, 1, 1)
S = Mat2(0, -1, 1, 0)
X = Mat2(1, 2, 0, 1)
Y = Mat2(1, 0, 2, 1)

_LETTER_MATRIX = {"x": X, "X": X.inverse(), "y": Y, "Y": Y.inverse()}


# ---------------------------------------------------------------- free words

def reduce_word(word: Iterable[str]) -> str:
    out: list[str] = []
    for ch in word:
        if out and out[-1] == ch.swapcase():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def invert_word(word: str) -> str:
    return word[::-1].swapcase()


def word_power(word: str, e: int) -> str:
    if e < 0:
        return reduce_word(invert_word(word) * -e)
    return reduce_word(word * e)


_SUPERSCRIPTS = str.maketrans("⁻⁰¹²³⁴⁵⁶⁷⁸⁹", "-0123456789")
_TOKEN = re.compile(r"\s*([xyXY()])\s*(?:\^\s*\{?\s*(-?\d+)\s*\}?)?")


def parse_word(text: str) -> str:
    """Parse ``x^-1 y^2``, ``x⁻¹y²``, ``(x^-1y)^3`` or raw ``XyX`` into a reduced word."""
    text = text.translate(_SUPERSCRIPTS)
    if text.strip() == "1":  # the identity, as printed by format_word
        return ""
    # superscripts lose their caret; put it back in front of exponent runs
    text = re.sub(r"(?<=[xyXY)])(-?\d+)", r"^\1", text)
    stack: list[list[str]] = [[]]
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse word {text!r} at position {pos}")
        tok, exp = m.group(1), m.group(2)
        pos = m.end()
        if tok == "(":
            if exp is not None:
                raise ValueError("exponent after '('")
            stack.append([])
            continue
        if tok == ")":
            if len(stack) == 1:
                raise ValueError(f"unbalanced parentheses in {text!r}")
            inner = reduce_word("".join(stack.pop()))
        else:
            inner = tok
        stack[-1].append(word_power(inner, 1 if exp is None else int(exp)))
    if len(stack) != 1:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    return reduce_word("".join(stack[0]))


def format_word(word: str) -> str:
    """Human form with exponents, e.g. ``"XyyXyy"`` -> ``"x^-1 y^2 x^-1 y^2"``."""
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        e = (j - i) * (1 if word[i].islower() else -1)
        parts.append(word[i].lower() + ("" if e == 1 else f"^{e}"))
        i = j
    return " ".join(parts)


def eval_word(word: str) -> Mat2:
    out = IDENTITY
    for ch in word:
        out = out @ _LETTER_MATRIX[ch]
    return out


def _nearest(num: int, den: int) -> int:
    if den < 0:
        num, den = -num, -den
    return (2 * num + den) // (2 * den)


def decompose_gamma2(m: Mat2) -> tuple[int, str]:
    """Write ``sign * m`` as the unique reduced word in x, y.

    Returns ``(sign, word)`` with ``eval_word(word) == sign * m``.
    """
    a, b, c, d = m.entries()
    if a * d - b * c != 1:
        raise ValueError(f"{m} does not have determinant 1")
    if b % 2 or c % 2 or a % 2 == 0 or d % 2 == 0:
        raise ValueError(f"{m} is not congruent to the identity mod 2")
    factors: list[str] = []
    while c != 0:
        # a is odd and c is even, so |a| != |c| and the remainder is strict
        if abs(a) > abs(c):
            q = _nearest(a, 2 * c)
            a, b = a - 2 * q * c, b - 2 * q * d
            factors.append(word_power("x", q))
        else:
            q = _nearest(c, 2 * a)
            c, d = c - 2 * q * a, d - 2 * q * b
            factors.append(word_power("y", q))
    sign = a  # a = d = +-1 now
    factors.append(word_power("x", (b * sign) // 2))
    return sign, reduce_word("".join(factors))


_GAMMA = {"x": "y", "X": "Y", "y": "Xy", "Y": "Yx"}
_GAMMA_INV = {"x": "xY", "X": "yX", "y": "x", "Y": "X"}


def gamma_auto(word: str) -> str:
    """The automorphism x -> y, y -> x^-1 y."""
    return reduce_word("".join(_GAMMA[ch] for ch in word))


def gamma_inv(word: str) -> str:
    """Inverse automorphism x -> x y^-1, y -> x."""
    return reduce_word("".join(_GAMMA_INV[ch] for ch in word))


# --------------------------------------------------- generators of PGamma_6

GEN_WORDS: dict[str, str] = {
    "A": parse_word("yxyx"),
    "B": parse_word("xyxy"),
    "C": parse_word("y x y^-2 x"),
    "D": parse_word("y x y^-1 x^-1 y x^-1 y"),
    "E": parse_word("y x^-1 y^-1 x^-1 y"),
    "F": parse_word("x y^-2 x y"),
    "G": parse_word("y x^-1 y x^-1 y^-1 x y"),
    "L1": parse_word("x^3"),
    "L2": parse_word("y^-1 x^3 y"),
    "L3": parse_word("y x^3 y^-1"),
    "L4": parse_word("y^-1 x^-1 y x^3 y^-1 x y"),
    "L5": parse_word("y^-3"),
    "L6": parse_word("y^-1 (x^-1 y)^3 y"),
}

M_VALUES = {"A": 1, "B": 0, "C": 1, "D": 1, "E": 1, "F": 0, "G": 0,
            **{f"L{i}": 0 for i in range(1, 7)}}
M2_VALUES = {"A": 1, "B": -1, "C": 1, "D": 1, "E": 0, "F": -1, "G": -1,
             **{f"L{i}": 0 for i in range(1, 7)}}

_GEN_TOKEN = re.compile(r"\s*(L[1-6]|[A-G])\s*(?:\^\s*\{?\s*(-?\d+)\s*\}?|(⁻¹))?")

GenWord = tuple[tuple[str, int], ...]


def parse_gen_word(text: str) -> GenWord:
    """Parse e.g. ``"L1 A^-1 L3"`` or ``"AA⁻¹"`` into a reduced generator word."""
    out: list[tuple[str, int]] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _GEN_TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse generator word {text!r} at {pos}")
        name = m.group(1)
        exp = -1 if m.group(3) else int(m.group(2) or 1)
        pos = m.end()
        if out and out[-1][0] == name:
            exp += out.pop()[1]
        if exp:
            out.append((name, exp))
    return tuple(out)


def gen_to_xy(g: GenWord | str) -> str:
    if isinstance(g, str):
        g = parse_gen_word(g)
    return reduce_word("".join(word_power(GEN_WORDS[name], e) for name, e in g))


# (generator, word in x/y for gamma^-1(generator), rewrite in the 13 generators)
LEMMA_CHANGE_ROWS: tuple[tuple[str, str, str], ...] = (
    ("A", "x^2 y^-1 x^2 y^-1", "L1 A^-1 L3"),
    ("B", "x y^-1 x^2 y^-1 x", "F L4 L6 L5 C"),
    ("C", "x^2 y^-1 x^-1 y^-1", "L1 A^-1"),
    ("D", "x^2 y^-1 x^-1 y^2", "L1 A^-1 L5^-1"),
    ("E", "x y x^-2 y", "B L2^-1"),
    ("F", "x y^-1 x^-1 y^-1 x", "F L6 L5 C"),
    ("G", "x y^2 x^-1 y^-1 x", "B L6 L5 C"),
    ("L1", "(x y^-1)^3", "F G^-1"),
    ("L2", "(y^-1 x)^3", "D^-1 C"),
    ("L3", "x (x y^-1)^3 x^-1", "L1 A^-1 L3 E L2 B^-1"),
    ("L4", "x^-1 y (x y^-1)^3 y^-1 x", "C^-1 L5^-1 L6^-1 L5 C"),
    ("L5", "x^-3", "L1^-1"),
    ("L6", "x^-1 y^3 x", "C^-1 A"),
)


@dataclass(frozen=True)
class LemmaRow:
    generator: str
    image: str
    rewrite: str
    image_matches: bool
    rewrite_matches: bool
    m_bridge: bool

    @property
    def passed(self) -> bool:
        return self.image_matches and self.rewrite_matches and self.m_bridge


def _m_of_gen_word(g: GenWord, values: dict[str, int]) -> int:
    return sum(values[name] * e for name, e in g)


def verify_lemma_change(k: int = 3) -> list[LemmaRow]:
    """Check the 13 rewriting identities for gamma^-1 and m(gamma^-1 X) = -m2(X)."""
    rows = []
    mod = 2 * k
    for gen, image, rewrite in LEMMA_CHANGE_ROWS:
        lhs = gamma_inv(GEN_WORDS[gen])
        rhs_gen = parse_gen_word(rewrite)
        bridge = (_m_of_gen_word(rhs_gen, M_VALUES) + M2_VALUES[gen]) % mod == 0
        rows.append(LemmaRow(
            generator=gen,
            image=format_word(lhs),
            rewrite=rewrite,
            image_matches=lhs == parse_word(image),
            rewrite_matches=lhs == gen_to_xy(rhs_gen),
            m_bridge=bridge,
        ))
    return rows


# ------------------------------------------------------- action on cosets

# Cycles of x and y on {1..12} x Z/2k; each entry is (coset, drift offset).
_X_CYCLES = (((1, 0), (2, 0), (3, 0)), ((4, 0), (8, 1), (5, 1)),
             ((6, 0), (9, 1), (7, 1)), ((10, 0), (12, 0), (11, 0)))
_Y_CYCLES = (((1, 0), (6, 0), (5, 1)), ((2, 0), (8, 0), (10, 0)),
             ((3, 0), (11, 0), (9, 0)), ((4, 0), (7, 1), (12, 0)))


def _cycle_table(cycles, step: int) -> dict[int, tuple[int, int]]:
    table = {}
    for cyc in cycles:
        for pos, (i, off) in enumerate(cyc):
            ni, noff = cyc[(pos + step) % len(cyc)]
            table[i] = (ni, noff - off)
    return table


_ACTION = {
    "x": _cycle_table(_X_CYCLES, 1), "X": _cycle_table(_X_CYCLES, -1),
    "y": _cycle_table(_Y_CYCLES, 1), "Y": _cycle_table(_Y_CYCLES, -1),
}


def coset_action(letter: str, point: tuple[int, int], k: int) -> tuple[int, int]:
    """Right multiplication of the coset ``(i, j)`` of G_6(2k) by one letter."""
    i, j = point
    ni, dj = _ACTION[letter][i]
    return ni, (j + dj) % (2 * k)


def apply_word_to_coset(word: str, point: tuple[int, int], k: int) -> tuple[int, int]:
    for ch in word:
        point = coset_action(ch, point, k)
    return point


COSET_REPS: tuple[str, ...] = tuple(parse_word(w) for w in (
    "", "x", "x^2", "y^-1 x", "y^-1", "y", "y x^-1", "y^-1 x^-1", "y x",
    "y^-1 x^-1 y", "y x y^-1", "y x y^-1 x^-1"))


def _projective_mod(m: Mat2, n: int) -> frozenset[tuple[int, int, int, int]]:
    return frozenset({m.mod(n), (-m).mod(n)})


def coset_rep_table() -> list[tuple[str, Mat2, tuple[int, int, int, int]]]:
    """Words, matrices and mod-6 reductions of A_1, ..., A_12."""
    return [(w, eval_word(w), eval_word(w).mod(6)) for w in COSET_REPS]


_REP_CLASSES = [_projective_mod(eval_word(w), 6) for w in COSET_REPS]


def coset_index_mod6(m: Mat2) -> int:
    """Index i of the coset PGamma_6 * A_i containing +-m (m must lie in +-Gamma_2)."""
    cls = _projective_mod(m, 6)
    for i, rep in enumerate(_REP_CLASSES, start=1):
        if cls == rep:
            return i
    raise ValueError(f"{m} is not in +-Gamma_2")


def in_pgamma6(word: str) -> bool:
    return _projective_mod(eval_word(word), 6) == _projective_mod(IDENTITY, 6)


def m2_value(word: str, k: int) -> int:
    """Value of m_2 on a word of PGamma_6, read off the coset action."""
    if not in_pgamma6(word):
        raise ValueError(f"{format_word(word)} is not in PGamma_6")
    i, j = apply_word_to_coset(word, (1, 0), k)
    assert i == 1, "coset action disagrees with the mod-6 reduction"
    return j


def m_value(word: str, k: int) -> int:
    """Value of m on a word of PGamma_6, via m = -m_2 o gamma."""
    return (-m2_value(gamma_auto(word), k)) % (2 * k)


def membership(m: Mat2, group: str, *, n: int | None = None, k: int | None = None) -> bool:
    """Membership of ``m`` in one of ``Gamma_N``, ``+-Gamma_N``, ``PGamma_2``,
    ``PGamma_6``, ``PGamma_6(2k)`` or ``G_6(2k)`` (projective groups tested on +-m)."""
    if group in ("Gamma_N", "+-Gamma_N"):
        if n is None:
            raise ValueError("level n required")
        ok = {m.mod(n)}
        if group == "+-Gamma_N":
            ok.add((-m).mod(n))
        return IDENTITY.mod(n) in ok
    if group == "PGamma_2":
        return membership(m, "+-Gamma_N", n=2)
    if group == "PGamma_6":
        return membership(m, "+-Gamma_N", n=6)
    if group in ("PGamma_6(2k)", "G_6(2k)"):
        if k is None or k < 1:
            raise ValueError("k >= 1 required")
        if not membership(m, "PGamma_6"):
            return False
        _, word = decompose_gamma2(m)
        f = m_value if group == "PGamma_6(2k)" else m2_value
        return f(word, k) == 0
    raise ValueError(f"unknown group {group!r}")
