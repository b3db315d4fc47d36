"""
The equivariant Pieri rule for the complete flag manifold: which Schubert
classes [X_u] occur in [X_w] * [X_{r(m,p)}], and with which coefficient.

>>> w, u = Permutation.parse("631594287"), Permutation.parse("839154267")
>>> str(pieri_coefficient(w, u, 3, 4))
'-t1 - t2 + t6 + t8'
>>> summand_text(compute_datum(w, u, 3, 4))
'(t6 - t1) + (t8 - t2)'
"""

from __future__ import annotations

__all__ = [
    "PieriDatum", "ExpansionResult", "compute_datum", "nonvanishing",
    "pieri_coefficient", "pieri_summands", "summand_text", "pieri_expand",
    "pieri_expand_full_scan", "classical_limit", "candidate_endpoints",
]

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .perm import (
    Permutation, all_permutations, bruhat_leq, covers_by_transposition,
    length, r_arrow, special_cycle,
)
from .poly import Polynomial, t


@dataclass(frozen=True)
class PieriDatum:
    q: int
    nu: frozenset[int]
    a_seq: tuple[int, ...]
    b_seq: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.a_seq)


@dataclass
class ExpansionResult:
    n: int
    m: int
    p: int
    w: Permutation
    terms: dict[Permutation, Polynomial] = field(default_factory=dict)

    def q_of(self, u: Permutation) -> int:
        return self.p + length(self.w) - length(u)

    def to_json(self) -> dict:
        return {
            "n": self.n, "m": self.m, "p": self.p, "w": str(self.w),
            "terms": [{"u": str(u), "coefficient": str(c), "q": self.q_of(u)}
                      for u, c in self.terms.items()],
        }


def _check_params(n: int, m: int, p: int) -> None:
    if not (1 <= m < n and 1 <= p <= n - m):
        raise ValueError(f"need 1 <= m < n and 1 <= p <= n-m, got m={m}, p={p}, n={n}")


def compute_datum(w: Permutation, u: Permutation, m: int, p: int) -> PieriDatum:
    """The index package (q, nu, a, b) for a pair connected by an r_m-arrow."""
    n = w.n
    _check_params(n, m, p)
    q = p + length(w) - length(u)
    if q < 0:
        raise ValueError(f"q = {q} < 0: l(u) exceeds l(w) + p")
    if r_arrow(w, u, m) is None:
        raise ValueError(f"no r_{m}-arrow from {w} to {u}")

    nu = {n + 1 - w(i) for i in range(1, m + 1)}
    nu |= {n + 1 - w(b) for b in range(m + 1, n + 1) if w(b) > u(b)}
    if len(nu) != m + p - q:
        raise AssertionError(f"|nu| = {len(nu)} != m+p-q = {m + p - q} for {w}, {u}, m={m}, p={p}")
    cut = n - m - p + 1
    a_seq = tuple(sorted(k for k in nu if k <= cut))
    b_seq = tuple(k for k in range(cut + 1, n + 1) if k not in nu)
    if len(b_seq) != q + len(a_seq) - 1:
        raise AssertionError(f"|b| = {len(b_seq)} != q+r-1 for {w}, {u}, m={m}, p={p}")
    return PieriDatum(q, frozenset(nu), a_seq, b_seq)


@lru_cache(maxsize=None)
def nonvanishing(w: Permutation, u: Permutation, m: int, p: int) -> bool:
    _check_params(w.n, m, p)
    if p + length(w) - length(u) < 0:
        return False
    if not bruhat_leq(special_cycle(m, p, w.n), u):
        return False
    return r_arrow(w, u, m) is not None


def pieri_summands(datum: PieriDatum) -> list[list[tuple[int, int]]]:
    """
    One list of factors (b, a), standing for t_b - t_a, per increasing
    subsequence c_1 < ... < c_q of 1..q+r-1.
    """
    q, r = datum.q, datum.r
    if q == 0:
        return [[]]
    summands = []
    for cs in combinations(range(1, q + r), q):
        factors = []
        for i, c in enumerate(cs, start=1):
            j = c - i + 1
            if not 1 <= j <= r:
                raise AssertionError(f"a-index {j} outside 1..{r}")
            factors.append((datum.b_seq[c - 1], datum.a_seq[j - 1]))
        summands.append(factors)
    return summands


def summand_text(datum: PieriDatum) -> str:
    if datum.q == 0:
        return "1"
    return " + ".join("".join(f"(t{b} - t{a})" for b, a in s)
                      for s in pieri_summands(datum))


@lru_cache(maxsize=None)
def pieri_coefficient(w: Permutation, u: Permutation, m: int, p: int) -> Polynomial:
    """Coefficient of [X_u] in [X_w] * [X_{r(m,p)}]; zero when it vanishes."""
    if w.n != u.n:
        raise ValueError(f"window mismatch: S_{w.n} vs S_{u.n}")
    if not nonvanishing(w, u, m, p):
        return Polynomial()
    datum = compute_datum(w, u, m, p)
    if datum.q == 0:
        return Polynomial.constant(1)
    total = Polynomial()
    for factors in pieri_summands(datum):
        term = Polynomial.constant(1)
        for b, a in factors:
            term = term * (t(b) - t(a))
        total = total + term
    return total


def candidate_endpoints(w: Permutation, m: int, p: int) -> set[Permutation]:
    """Endpoints of length-increasing chains from w with distinct b's, at most p steps."""
    n = w.n
    seen: set[tuple[tuple[int, ...], frozenset[int]]] = set()
    found: set[Permutation] = set()

    def dfs(v: Permutation, used: frozenset[int]) -> None:
        key = (v.images, used)
        if key in seen:
            return
        seen.add(key)
        found.add(v)
        if len(used) == p:
            return
        for a in range(1, m + 1):
            for b in range(m + 1, n + 1):
                if b not in used and covers_by_transposition(v, a, b):
                    dfs(v.times_transposition(a, b), used | {b})

    dfs(w, frozenset())
    return found


def _assemble(w: Permutation, m: int, p: int, us) -> ExpansionResult:
    result = ExpansionResult(w.n, m, p, w)
    for u in sorted(us, key=Permutation.sort_key):
        c = pieri_coefficient(w, u, m, p)
        if c:
            result.terms[u] = c
    return result


def pieri_expand(w: Permutation, m: int, p: int) -> ExpansionResult:
    """All nonzero terms of [X_w] * [X_{r(m,p)}]."""
    _check_params(w.n, m, p)
    return _assemble(w, m, p, candidate_endpoints(w, m, p))


def pieri_expand_full_scan(w: Permutation, m: int, p: int) -> ExpansionResult:
    """Same as pieri_expand but scanning all of S_n; for cross-checks at small n."""
    _check_params(w.n, m, p)
    return _assemble(w, m, p, all_permutations(w.n))


def classical_limit(e: ExpansionResult) -> dict[Permutation, int]:
    """Coefficients at t = 0, zeros dropped."""
    limit = {}
    for u, c in e.terms.items():
        value = c.constant_term()
        if value:
            limit[u] = value
    return limit
