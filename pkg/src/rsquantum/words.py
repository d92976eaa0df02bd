"""Words over the generator alphabet: Lyndon words, factorizations, orders.

A word is a tuple of letters in 1..n. Python tuple comparison is exactly the
lexicographic order in which a proper prefix is smaller than its extensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

Word = tuple


def to_str(w: Word) -> str:
    if all(x < 10 for x in w):
        return "".join(map(str, w))
    return ".".join(map(str, w))


def from_str(text: str) -> Word:
    text = text.strip()
    if "." in text or "," in text:
        return tuple(int(x) for x in text.replace(",", ".").split(".") if x)
    return tuple(int(c) for c in text)


def content(w: Word, rank: int) -> tuple:
    out = [0] * rank
    for x in w:
        out[x - 1] += 1
    return tuple(out)


@lru_cache(maxsize=None)
def is_lyndon(w: Word) -> bool:
    """True iff w is strictly smaller than each of its proper right factors."""
    if not w:
        raise ValueError("empty word")
    return all(w < w[k:] for k in range(1, len(w)))


@lru_cache(maxsize=None)
def std_factorize(w: Word) -> tuple[Word, Word]:
    """Split a Lyndon word as (u, v) with v its longest proper Lyndon right factor."""
    if len(w) < 2 or not is_lyndon(w):
        raise ValueError(f"{to_str(w)} is not a Lyndon word of length >= 2")
    for k in range(1, len(w)):
        if is_lyndon(w[k:]):
            return w[:k], w[k:]
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class LyndonTree:
    word: Word
    left: "LyndonTree | None" = None
    right: "LyndonTree | None" = None

    @classmethod
    def of(cls, w: Word) -> "LyndonTree":
        if len(w) == 1:
            return cls(w)
        u, v = std_factorize(w)
        return cls(w, cls.of(u), cls.of(v))

    def bracketing(self) -> str:
        if self.left is None:
            return to_str(self.word)
        return f"[{self.left.bracketing()},{self.right.bracketing()}]"


def words_with_content(mu: tuple):
    """All words of the given content, in increasing lexicographic order."""
    letters = [i + 1 for i, k in enumerate(mu) for _ in range(k)]
    return sorted(set(permutations(letters)))


def _multiset_words(counts: list, prefix: list):
    if not any(counts):
        yield tuple(prefix)
        return
    for i, k in enumerate(counts):
        if k:
            counts[i] -= 1
            prefix.append(i + 1)
            yield from _multiset_words(counts, prefix)
            prefix.pop()
            counts[i] += 1


def iter_words(mu: tuple):
    """Words of content mu in increasing lexicographic order, generated lazily."""
    yield from _multiset_words(list(mu), [])


def enumerate_lyndon(mu: tuple) -> list[Word]:
    """Lyndon words of content mu, sorted increasingly."""
    if not any(mu):
        return []
    first = next(i for i, k in enumerate(mu) if k) + 1
    out = []
    for w in iter_words(mu):
        if w[0] != first:
            break
        if is_lyndon(w):
            out.append(w)
    return out


def precede(u: Word, w: Word) -> bool:
    """Strict order: shorter first; equal length compares lexicographically reversed."""
    if len(u) != len(w):
        return len(u) < len(w)
    return u > w


def max_shuffle(u: Word, v: Word) -> Word:
    """Lexicographically largest interleaving of u and v."""
    out = []
    i = j = 0
    while i < len(u) and j < len(v):
        if u[i:] >= v[j:]:
            out.append(u[i])
            i += 1
        else:
            out.append(v[j])
            j += 1
    return tuple(out) + u[i:] + v[j:]
