"""Words in the free group F(x, y).

Words are written over the alphabet ``x, y, X, Y`` where ``X = x^-1`` and
``Y = y^-1``.  Letters are ``Letter(base, sign)`` with base 0 for x and 1 for y.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .errors import InadmissibleError

GENERATORS = "xy"
_CHARS = {"x": (0, 1), "X": (0, -1), "y": (1, 1), "Y": (1, -1)}


class Letter(NamedTuple):
    base: int
    sign: int

    def inverse(self) -> Letter:
        return Letter(self.base, -self.sign)

    def __str__(self) -> str:
        c = GENERATORS[self.base]
        return c if self.sign > 0 else c.upper()


X = Letter(0, 1)
Y = Letter(1, 1)


@dataclass(frozen=True)
class Word:
    """An immutable sequence of letters; not necessarily reduced."""

    letters: tuple[Letter, ...] = ()

    @classmethod
    def parse(cls, text: str) -> Word:
        """Parse a string such as ``"xyXY"``; whitespace is ignored and ``"1"`` is the empty word."""
        letters = []
        for ch in text:
            if ch.isspace() or ch == "1":
                continue
            try:
                letters.append(Letter(*_CHARS[ch]))
            except KeyError:
                raise ValueError(f"invalid letter {ch!r} in word {text!r}") from None
        return cls(tuple(letters))

    @classmethod
    def of(cls, letters: Iterable[Letter]) -> Word:
        return cls(tuple(Letter(*l) for l in letters))

    def __str__(self) -> str:
        return "".join(map(str, self.letters)) or "1"

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.letters[i])
        return self.letters[i]

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> Word:
        if k < 0:
            return self.inverse() ** -k
        return Word(self.letters * k)

    def inverse(self) -> Word:
        return Word(tuple(l.inverse() for l in reversed(self.letters)))

    def is_reduced(self) -> bool:
        return all(a != b.inverse() for a, b in zip(self.letters, self.letters[1:]))

    def is_cyclically_reduced(self) -> bool:
        if not self.is_reduced():
            return False
        return len(self) < 2 or self.letters[0] != self.letters[-1].inverse()

    def rotations(self) -> list[Word]:
        n = len(self.letters)
        return [Word(self.letters[i:] + self.letters[:i]) for i in range(max(n, 1))]


@dataclass(frozen=True)
class RootDecomposition:
    root: Word
    exponent: int


@dataclass(frozen=True)
class NormalizedProblem:
    """Roots ``w_i`` of the inputs with ``u_i ~ w_i^(p^m_i * t_i)``."""

    w1: Word
    w2: Word
    m1: int
    m2: int
    t1: int
    t2: int
    p: int
    target_exponent: int


def free_reduce(w: Word) -> Word:
    stack: list[Letter] = []
    for l in w:
        if stack and stack[-1] == l.inverse():
            stack.pop()
        else:
            stack.append(l)
    return Word(tuple(stack))


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Return ``(core, conjugator)`` with ``conjugator * core * conjugator^-1 == w``.

    ``w`` must be freely reduced.
    """
    letters = w.letters
    i, j = 0, len(letters)
    while j - i >= 2 and letters[i] == letters[j - 1].inverse():
        i += 1
        j -= 1
    return Word(letters[i:j]), Word(letters[:i])


def max_root(w: Word) -> RootDecomposition:
    """Split a nonempty cyclically reduced word as ``root ** exponent`` with maximal exponent."""
    n = len(w)
    if n == 0:
        raise ValueError("max_root of the empty word")
    for period in range(1, n + 1):
        if n % period == 0 and w.letters == w.letters[:period] * (n // period):
            return RootDecomposition(Word(w.letters[:period]), n // period)
    raise AssertionError("unreachable")


def p_adic_split(e: int, p: int) -> tuple[int, int]:
    """Write ``e = p**m * t`` with ``p`` not dividing ``t``."""
    if e < 1:
        raise ValueError("p_adic_split needs e >= 1")
    m = 0
    while e % p == 0:
        e //= p
        m += 1
    return m, e


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def _root_of(w: Word) -> Word:
    core, _ = cyclic_reduce(free_reduce(w))
    return max_root(core).root


def conjugate_cyclic_check(u1: Word, u2: Word) -> bool:
    """True iff ``u1`` and ``u2`` lie in conjugate cyclic subgroups of F(x, y).

    Two nontrivial elements of a free group generate commensurable conjugate
    cyclic subgroups exactly when their cyclically reduced roots agree up to
    rotation and inversion.
    """
    r1, r2 = _root_of(u1), _root_of(u2)
    if len(r1) != len(r2):
        return False
    candidates = set(r2.rotations()) | set(r2.inverse().rotations())
    return r1 in candidates


def normalize_inputs(u1: Word, u2: Word, p: int, n: int) -> NormalizedProblem:
    """Reduce the problem to cyclically reduced roots that are not proper powers.

    In a finite p-group image ``ord(u_i) = ord(w_i) / p**m_i`` whenever
    ``ord(w_i) > p**m_i``, so a ratio ``p**(n + m1 - m2)`` between the root
    orders gives ratio ``p**n`` between the input orders.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    u1, u2 = free_reduce(u1), free_reduce(u2)
    if not len(u1) or not len(u2):
        raise InadmissibleError("empty (trivial) word")
    if conjugate_cyclic_check(u1, u2):
        raise InadmissibleError(f"{u1} and {u2} lie in conjugate cyclic subgroups")
    d1 = max_root(cyclic_reduce(u1)[0])
    d2 = max_root(cyclic_reduce(u2)[0])
    m1, t1 = p_adic_split(d1.exponent, p)
    m2, t2 = p_adic_split(d2.exponent, p)
    return NormalizedProblem(d1.root, d2.root, m1, m2, t1, t2, p, n + m1 - m2)
