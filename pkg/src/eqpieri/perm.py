"""
Permutations of {1, ..., n} in one-line notation, Bruhat order, and the
m-Bruhat chain searches used by the Pieri rule.

>>> w = Permutation.parse("631594287")
>>> w.length()
15
>>> str(w.times_transposition(3, 4))
'635194287'
"""

from __future__ import annotations

__all__ = [
    "Permutation", "ChainWitness", "length", "compose", "identity",
    "longest_element", "special_cycle", "bruhat_leq", "m_bruhat_chain",
    "r_arrow", "covers_by_transposition", "all_permutations",
]

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _itertools_permutations
from typing import Iterator, Optional


@dataclass(frozen=True, order=True)
class Permutation:
    """An element of S_n; ``images[i-1]`` is w(i)."""
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(k) for k in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def parse(cls, text: str) -> Permutation:
        """Accept "631594287" (n <= 9) or "6,3,1,5,9,4,2,8,7"."""
        text = text.strip()
        if "," in text:
            parts = [s.strip() for s in text.strip("[]()").split(",")]
            return cls(tuple(int(s) for s in parts if s))
        if not text.isdigit():
            raise ValueError(f"malformed permutation string: {text!r}")
        return cls(tuple(int(c) for c in text))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(str(k) for k in self.images)
        return ",".join(str(k) for k in self.images)

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"

    def length(self) -> int:
        return length(self)

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, k in enumerate(self.images, start=1):
            inv[k - 1] = i
        return Permutation(tuple(inv))

    def times_transposition(self, a: int, b: int) -> Permutation:
        """Right multiplication by the transposition (a, b): swap positions."""
        images = list(self.images)
        images[a - 1], images[b - 1] = images[b - 1], images[a - 1]
        return Permutation(tuple(images))

    def times_simple(self, i: int) -> Permutation:
        return self.times_transposition(i, i + 1)

    def embed(self, n: int) -> Permutation:
        """The same permutation in S_n, n >= self.n, fixing the new points."""
        return Permutation(self.images + tuple(range(self.n + 1, n + 1)))

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Canonical ordering: by length, then one-line lex."""
        return (length(self), self.images)


@dataclass(frozen=True)
class ChainWitness:
    """Transpositions (a_i, b_i), a_i <= m < b_i, each raising length by one."""
    m: int
    steps: tuple[tuple[int, int], ...]

    @property
    def b_values(self) -> tuple[int, ...]:
        return tuple(b for _, b in self.steps)

    def replay(self, w: Permutation) -> list[Permutation]:
        """The chain of permutations starting at w, endpoint last."""
        chain = [w]
        for a, b in self.steps:
            chain.append(chain[-1].times_transposition(a, b))
        return chain

    def __len__(self) -> int:
        return len(self.steps)


@lru_cache(maxsize=None)
def _inversions(images: tuple[int, ...]) -> int:
    n = len(images)
    return sum(1 for i in range(n) for j in range(i + 1, n) if images[i] > images[j])


def length(w: Permutation) -> int:
    """Number of inversions i < j with w(i) > w(j)."""
    return _inversions(w.images)


def _check_window(u: Permutation, v: Permutation) -> None:
    if u.n != v.n:
        raise ValueError(f"window mismatch: S_{u.n} vs S_{v.n}")


def compose(w: Permutation, v: Permutation) -> Permutation:
    """The product wv, (wv)(i) = w(v(i))."""
    _check_window(w, v)
    return Permutation(tuple(w.images[k - 1] for k in v.images))


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def longest_element(n: int) -> Permutation:
    if n < 1:
        raise ValueError("n must be positive")
    return Permutation(tuple(range(n, 0, -1)))


def special_cycle(m: int, p: int, n: int) -> Permutation:
    """
    The cycle (m, m+p, m+p-1, ..., m+1) in S_n.

    >>> str(special_cycle(3, 4, 9))
    '127345689'
    """
    if not (1 <= m < n and 1 <= p <= n - m):
        raise ValueError(f"need 1 <= m < n and 1 <= p <= n-m, got m={m}, p={p}, n={n}")
    images = list(range(1, n + 1))
    images[m - 1] = m + p
    for j in range(m + 1, m + p + 1):
        images[j - 1] = j - 1
    return Permutation(tuple(images))


def all_permutations(n: int) -> Iterator[Permutation]:
    for images in _itertools_permutations(range(1, n + 1)):
        yield Permutation(images)


def bruhat_leq(u: Permutation, v: Permutation) -> bool:
    """Tableau criterion: sorted prefixes of u are dominated by those of v."""
    _check_window(u, v)
    pu: list[int] = []
    pv: list[int] = []
    for k in range(u.n - 1):
        pu.append(u.images[k])
        pv.append(v.images[k])
        pu.sort()
        pv.sort()
        if any(x > y for x, y in zip(pu, pv)):
            return False
    return True


def covers_by_transposition(w: Permutation, a: int, b: int) -> bool:
    """Whether l(w (a,b)) = l(w) + 1, for a < b."""
    lo, hi = w(a), w(b)
    if lo > hi:
        return False
    return not any(lo < w(c) < hi for c in range(a + 1, b))


def _search_chain(w: Permutation, u: Permutation, m: int,
                  distinct_b: bool) -> Optional[ChainWitness]:
    _check_window(w, u)
    n = w.n
    if not 1 <= m < n:
        raise ValueError(f"need 1 <= m < n, got m={m}, n={n}")
    target_len = length(u)
    if length(w) > target_len:
        return None
    target = u.images
    dead: set[tuple[tuple[int, ...], frozenset[int]]] = set()

    def feasible(images: tuple[int, ...]) -> bool:
        # values only rise in positions <= m and only fall beyond m
        return (all(images[i] <= target[i] for i in range(m))
                and all(images[i] >= target[i] for i in range(m, n)))

    def dfs(v: Permutation, used: frozenset[int]) -> Optional[list[tuple[int, int]]]:
        if v.images == target:
            return []
        if length(v) >= target_len:
            return None
        key = (v.images, used if distinct_b else frozenset())
        if key in dead:
            return None
        for a in range(1, m + 1):
            if v(a) == target[a - 1]:
                continue
            for b in range(m + 1, n + 1):
                if distinct_b and b in used:
                    continue
                if v(b) == target[b - 1] or not covers_by_transposition(v, a, b):
                    continue
                nxt = v.times_transposition(a, b)
                if not feasible(nxt.images):
                    continue
                rest = dfs(nxt, used | {b})
                if rest is not None:
                    return [(a, b)] + rest
        dead.add(key)
        return None

    if not feasible(w.images):
        return None
    steps = dfs(w, frozenset())
    if steps is None:
        return None
    return ChainWitness(m, tuple(steps))


@lru_cache(maxsize=65536)
def m_bruhat_chain(w: Permutation, u: Permutation, m: int) -> Optional[ChainWitness]:
    """A witness for w <=_m u, or None."""
    return _search_chain(w, u, m, distinct_b=False)


@lru_cache(maxsize=65536)
def r_arrow(w: Permutation, u: Permutation, m: int) -> Optional[ChainWitness]:
    """A witness for the r_m-arrow from w to u (distinct b's), or None."""
    return _search_chain(w, u, m, distinct_b=True)
