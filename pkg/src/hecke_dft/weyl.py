"""Extended affine Weyl group of type A1 and its action on the integers.

The group is ``W = <s, u | s^2 = u^2 = 1>``.  Writing ``s1 = s`` and
``s0 = u s u``, every element has a unique form ``u^r s_{i1} ... s_{ip}``
with an alternating (hence reduced) word in ``{0, 1}``.  Since the infinite
dihedral group ``W_S = <s0, s1>`` has exactly two elements of each positive
length, an element is pinned down by the triple ``(r, p, last)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple

__all__ = [
    "WeylElement",
    "LatticeConfig",
    "IDENTITY",
    "S0",
    "S1",
    "U",
    "from_word",
    "length",
    "multiply",
    "inverse",
    "act",
    "chamber_map",
    "fold",
    "eta",
    "bruhat_less",
    "enumerate_strictly_less",
    "reduced_word",
    "elements_up_to",
]


@dataclass(frozen=True, order=True)
class WeylElement:
    """Element ``u^u_exponent * (alternating word of length word_length)``.

    ``last_generator`` is the rightmost letter of the word (``None`` for the
    empty word).
    """

    u_exponent: int = 0
    word_length: int = 0
    last_generator: Optional[int] = None

    def __post_init__(self):
        if self.u_exponent not in (0, 1):
            raise ValueError(f"u_exponent must be 0 or 1, got {self.u_exponent}")
        if self.word_length < 0:
            raise ValueError(f"word_length must be >= 0, got {self.word_length}")
        if self.word_length == 0:
            if self.last_generator is not None:
                raise ValueError("empty word cannot have a last generator")
        elif self.last_generator not in (0, 1):
            raise ValueError(
                f"last_generator must be 0 or 1, got {self.last_generator}"
            )

    @property
    def word(self) -> Tuple[int, ...]:
        p, g = self.word_length, self.last_generator
        if p == 0:
            return ()
        first = g if p % 2 == 1 else 1 - g
        return tuple((first + i) % 2 for i in range(p))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return multiply(self, other)

    def __repr__(self):
        letters = "".join(f"s{i}" for i in self.word)
        if self.u_exponent:
            letters = "u" + letters
        return f"WeylElement({letters or '1'})"


IDENTITY = WeylElement()
S1 = WeylElement(0, 1, 1)
S0 = WeylElement(0, 1, 0)
U = WeylElement(1, 0, None)


@dataclass(frozen=True)
class LatticeConfig:
    """Period ``M`` of the lattice action and Hecke parameter ``tau``."""

    M: int
    tau: float

    def __post_init__(self):
        if isinstance(self.M, bool) or int(self.M) != self.M:
            raise ValueError(f"M must be an integer, got {self.M!r}")
        if self.M <= 1:
            raise ValueError(f"M must satisfy M > 1, got M={self.M}")
        if not 0.0 < float(self.tau) < 1.0:
            raise ValueError(f"tau must lie in the open interval (0, 1), got {self.tau}")


def _reduce(letters: Sequence[int]) -> Tuple[int, ...]:
    out = []
    for i in letters:
        if out and out[-1] == i:
            out.pop()
        else:
            out.append(i)
    return tuple(out)


def from_word(u_exponent: int, letters: Sequence[int]) -> WeylElement:
    """Build ``u^u_exponent s_{letters[0]} s_{letters[1]} ...`` (any word)."""
    word = _reduce(letters)
    if not word:
        return WeylElement(u_exponent % 2, 0, None)
    return WeylElement(u_exponent % 2, len(word), word[-1])


def length(w: WeylElement) -> int:
    return w.word_length


def multiply(w: WeylElement, v: WeylElement) -> WeylElement:
    # u^r a u^q b = u^(r+q) (u^q a u^q) b and conjugation by u swaps s0 <-> s1
    a = w.word
    if v.u_exponent:
        a = tuple(1 - i for i in a)
    return from_word(w.u_exponent + v.u_exponent, a + v.word)


def inverse(w: WeylElement) -> WeylElement:
    # (u^r a)^-1 = a^-1 u^r = u^r (u^r a^-1 u^r)
    rev = tuple(reversed(w.word))
    if w.u_exponent:
        rev = tuple(1 - i for i in rev)
    return from_word(w.u_exponent, rev)


def _act_letter(i: int, n: int, M: int) -> int:
    return -n if i == 1 else 2 * M - n


def _modulus(M) -> int:
    # accept a bare period or anything carrying one (LatticeConfig)
    return int(getattr(M, "M", M))


def act(w: WeylElement, n: int, M) -> int:
    """Image of ``n`` under ``w`` with ``s n = -n`` and ``u n = M - n``.

    ``M`` may be an integer or a :class:`LatticeConfig`.
    """
    M = _modulus(M)
    for i in reversed(w.word):
        n = _act_letter(i, n, M)
    if w.u_exponent:
        n = M - n
    return n


def chamber_map(n: int, M) -> WeylElement:
    """Shortest ``w_n`` in ``W_S`` moving ``n`` into ``{0, ..., M}``."""
    M = _modulus(M)
    if 0 <= n <= M:
        return IDENTITY
    if n > M:
        # n = p M + r with 0 < r <= M; word ... s1 s0 of length p
        p = (n - 1) // M
        return WeylElement(0, p, 0)
    # n = -p M + r with 0 <= r < M; word ... s0 s1 of length p
    return WeylElement(0, -(n // M), 1)


def fold(n: int, M) -> int:
    """``n_+``, the representative of ``n`` in ``{0, ..., M}``."""
    return act(chamber_map(n, M), n, M)


def eta(w: WeylElement) -> int:
    """``l(ws) - l(w)``; always +1 or -1."""
    if w.word_length == 0 or w.last_generator == 0:
        return 1
    return -1


def bruhat_less(v: WeylElement, w: WeylElement) -> bool:
    # v^-1 w lies in W_S exactly when the u-exponents agree
    return v.u_exponent == w.u_exponent and v.word_length < w.word_length


def enumerate_strictly_less(w: WeylElement) -> list:
    """All ``v < w``, sorted by ``(length, last_generator)``."""
    r = w.u_exponent
    out = [WeylElement(r, 0, None)] if w.word_length > 0 else []
    for p in range(1, w.word_length):
        out.append(WeylElement(r, p, 0))
        out.append(WeylElement(r, p, 1))
    return out


def reduced_word(w: WeylElement) -> Tuple[int, Tuple[int, ...]]:
    return w.u_exponent, w.word


def elements_up_to(max_length: int, u_exponents: Sequence[int] = (0, 1)) -> Iterator[WeylElement]:
    """All elements of length at most ``max_length``."""
    for r in u_exponents:
        yield WeylElement(r, 0, None)
        for p in range(1, max_length + 1):
            yield WeylElement(r, p, 0)
            yield WeylElement(r, p, 1)
