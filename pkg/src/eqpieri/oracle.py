"""
Independent checks on the Pieri formula.

Two routes, neither of which uses the closed formula:

* double Schubert polynomials: expand S_w * S_v in the Schubert basis by
  divided differences and specialization x := y, which gives every
  equivariant structure constant of the flag manifold at small n;
* factorial Schur functions: the restriction of a special Grassmannian
  Schubert class to a torus-fixed point.

Both produce polynomials in the y alphabet. A ``ConventionMap`` translating
y into the t alphabet of the Pieri formula is found by calibration, not
assumed.
"""

from __future__ import annotations

__all__ = [
    "ConventionMap", "CalibrationError", "CANDIDATE_MAPS", "max_n",
    "double_schubert", "schubert_from_word", "expand_product",
    "expand_product_classical", "calibrate", "convention",
    "LocalizationConvention", "calibrate_localization", "localization_convention",
    "localization_special", "factorial_h", "verify", "verify_triple",
]

import os
import random
import threading
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Optional

from . import kernels
from .perm import Permutation, all_permutations, identity, length, longest_element, special_cycle
from .pieri import compute_datum, pieri_coefficient, pieri_expand
from .poly import Polynomial, Variable, parse, substitute, t, y

DEFAULT_MAX_N = 7


def max_n() -> int:
    """The tractability guard; SCHUBERT_MAX_N overrides it."""
    return int(os.environ.get("SCHUBERT_MAX_N", DEFAULT_MAX_N))


def _guard(n: int) -> None:
    if n > max_n():
        raise ValueError(f"n = {n} exceeds the oracle guard n <= {max_n()} "
                         f"(set SCHUBERT_MAX_N to override)")


# -- packed double Schubert polynomials
#
# Slot layout: x_1..x_n in slots 0..n-1, y_1..y_n in slots n..2n-1.

def _kernel_for(n: int, kpoly_cls=None):
    cls = kpoly_cls or kernels.KPoly
    if 2 * n > kernels.max_slots(cls):
        cls = kernels.PyKPoly
    return cls


def _seed(n: int, cls, classical: bool):
    """prod_{i+j<=n} (x_i - y_j), or its y := 0 specialization."""
    nslots = 2 * n
    result = cls.from_terms(nslots, [((0,) * nslots, 1)])
    for i in range(1, n):
        for j in range(1, n + 1 - i):
            xi = [0] * nslots
            xi[i - 1] = 1
            terms = [(tuple(xi), 1)]
            if not classical:
                yj = [0] * nslots
                yj[n + j - 1] = 1
                terms.append((tuple(yj), -1))
            result = result.mul(cls.from_terms(nslots, terms))
    return result


_memo: dict[tuple, object] = {}
_memo_lock = threading.Lock()


def _ascent_toward_top(w: Permutation) -> Optional[int]:
    """
    Move the largest value not yet where w_0 puts it one step left; return
    the position i of that ascent, or None when w = w_0.
    """
    n = w.n
    for k in range(n, 0, -1):
        pos = w.images.index(k) + 1
        if pos != n + 1 - k:
            return pos - 1
    return None


def _schubert_packed(w: Permutation, cls, classical: bool = False):
    key = (w.images, cls, classical)
    cached = _memo.get(key)
    if cached is not None:
        return cached
    # climb to w_0, then divide back down
    path = []
    v = w
    while True:
        i = _ascent_toward_top(v)
        if i is None:
            break
        path.append(i)
        v = v.times_simple(i)
    top_key = (v.images, cls, classical)
    f = _memo.get(top_key)
    if f is None:
        f = _seed(w.n, cls, classical)
        with _memo_lock:
            _memo.setdefault(top_key, f)
    for i in reversed(path):
        v = v.times_simple(i)
        k = (v.images, cls, classical)
        g = _memo.get(k)
        if g is None:
            g = f.divdiff(i - 1)
            with _memo_lock:
                _memo.setdefault(k, g)
        f = g
    return f


def _to_polynomial(n: int, packed_terms) -> Polynomial:
    names = [Variable("x", i) for i in range(1, n + 1)] + [Variable("y", j) for j in range(1, n + 1)]
    return Polynomial({tuple((names[s], e) for s, e in enumerate(exps) if e): c
                       for exps, c in packed_terms})


def _y_polynomial(y_terms) -> Polynomial:
    return Polynomial({tuple((Variable("y", i + 1), e) for i, e in enumerate(exps) if e): c
                       for exps, c in y_terms})


def double_schubert(w: Permutation, kpoly_cls=None) -> Polynomial:
    """S_w(x; y), from the top class by divided differences in x."""
    _guard(w.n)
    cls = _kernel_for(w.n, kpoly_cls)
    try:
        packed = _schubert_packed(w, cls)
    except OverflowError:
        packed = _schubert_packed(w, kernels.PyKPoly)
    return _to_polynomial(w.n, packed.terms())


def schubert_from_word(n: int, word: Iterable[int], kpoly_cls=None) -> Polynomial:
    """Apply d_{i_1} first, then d_{i_2}, ... to S_{w_0}; no reducedness check."""
    cls = _kernel_for(n, kpoly_cls)
    f = _seed(n, cls, classical=False)
    for i in word:
        f = f.divdiff(i - 1)
    return _to_polynomial(n, f.terms())


def _expand_packed(w: Permutation, v: Permutation, cls, classical: bool):
    n = w.n
    f = _schubert_packed(w, cls, classical).mul(_schubert_packed(v, cls, classical))
    # table[z] = d_{j_k} ... d_{j_1} f for any reduced z = s_{j_1} ... s_{j_k};
    # the coefficient of S_u is table[u^-1] at x = y
    coefficients: dict[Permutation, list] = {}
    level = {identity(n): f}
    while level:
        nxt = {}
        for z, g in level.items():
            terms = g.specialize(n)
            if terms:
                coefficients[z.inverse()] = terms
            for j in range(1, n):
                if z(j) < z(j + 1):
                    zj = z.times_simple(j)
                    if zj not in nxt:
                        h = g.divdiff(j - 1)
                        if h:
                            nxt[zj] = h
        level = nxt
    return coefficients


def _expand(w: Permutation, v: Permutation, kpoly_cls, classical: bool):
    if w.n != v.n:
        raise ValueError(f"window mismatch: S_{w.n} vs S_{v.n}")
    _guard(w.n)
    cls = _kernel_for(w.n, kpoly_cls)
    try:
        return _expand_packed(w, v, cls, classical)
    except OverflowError:
        return _expand_packed(w, v, kernels.PyKPoly, classical)


def expand_product(w: Permutation, v: Permutation, kpoly_cls=None) -> dict[Permutation, Polynomial]:
    """Nonzero c^u_{w,v}(y) with S_w S_v = sum_u c^u_{w,v} S_u, for u in S_n."""
    raw = _expand(w, v, kpoly_cls, classical=False)
    return {u: _y_polynomial(raw[u]) for u in sorted(raw, key=Permutation.sort_key)}


def expand_product_classical(w: Permutation, v: Permutation, kpoly_cls=None) -> dict[Permutation, int]:
    """The same expansion for single Schubert polynomials (y := 0)."""
    raw = _expand(w, v, kpoly_cls, classical=True)
    out = {}
    for u in sorted(raw, key=Permutation.sort_key):
        value = sum(c for exps, c in raw[u] if not any(exps))
        if value:
            out[u] = value
    return out


# -- conventions

@dataclass(frozen=True)
class ConventionMap:
    """y_j := sign * t_{j'} with j' = n+1-j when ``reverse``, else j' = j."""
    reverse: bool
    sign: int
    status: str = "uncalibrated"

    def t_index(self, j: int, n: int) -> int:
        return n + 1 - j if self.reverse else j

    def y_to_t(self, f: Polynomial, n: int) -> Polynomial:
        return substitute(f, {Variable("y", j): self.sign * t(self.t_index(j, n))
                              for j in range(1, n + 1)})

    def describe(self) -> str:
        target = "t_{n+1-j}" if self.reverse else "t_j"
        return f"y_j -> {'-' if self.sign < 0 else ''}{target}"

    def to_json(self) -> dict:
        return {"reverse": self.reverse, "sign": self.sign, "status": self.status,
                "map": self.describe()}

    def same_map(self, other: ConventionMap) -> bool:
        return (self.reverse, self.sign) == (other.reverse, other.sign)


CANDIDATE_MAPS = tuple(ConventionMap(reverse, sign)
                       for reverse in (False, True) for sign in (1, -1))


class CalibrationError(RuntimeError):
    pass


def _triples(n: int):
    for w in sorted(all_permutations(n), key=Permutation.sort_key):
        for m in range(1, n):
            for p in range(1, n - m + 1):
                yield w, m, p


def calibrate(n_cal: int = 3, kpoly_cls=None) -> ConventionMap:
    """The unique candidate map under which the oracle reproduces the formula at n_cal."""
    if not 3 <= n_cal <= 5:
        raise ValueError("calibration window must satisfy 3 <= n_cal <= 5")
    alive = list(CANDIDATE_MAPS)
    for w, m, p in _triples(n_cal):
        oracle = expand_product(w, special_cycle(m, p, n_cal), kpoly_cls)
        formula = pieri_expand(w, m, p).terms
        alive = [c for c in alive
                 if {u: c.y_to_t(f, n_cal) for u, f in oracle.items()} == formula]
        if not alive:
            raise CalibrationError(f"no convention reproduces the formula at n = {n_cal}")
    if len(alive) > 1:
        raise CalibrationError(f"{len(alive)} conventions agree at n = {n_cal}; use a larger window")
    return ConventionMap(alive[0].reverse, alive[0].sign, "calibrated")


_calibration: Optional[ConventionMap] = None
_calibration_lock = threading.Lock()


def convention() -> ConventionMap:
    """The process-wide calibrated map; calibrates once on first use."""
    global _calibration
    if _calibration is None:
        with _calibration_lock:
            if _calibration is None:
                _calibration = calibrate(3)
    return _calibration


# -- factorial Schur localization

def factorial_h(q: int, zs: list[Polynomial], shifts: list[Polynomial]) -> Polynomial:
    """
    Factorial complete homogeneous function
    h_q(z | a) = sum_{i_1 <= ... <= i_q} prod_j (z_{i_j} - a_{i_j + j - 1}).
    """
    k = len(zs)
    if q == 0:
        return Polynomial.constant(1)
    if k + q - 1 > len(shifts):
        raise ValueError(f"need {k + q - 1} shift parameters, have {len(shifts)}")
    total = Polynomial()
    for idx in combinations_with_replacement(range(k), q):
        term = Polynomial.constant(1)
        for j, i in enumerate(idx):
            term = term * (zs[i] - shifts[i + j])
            if not term:
                break
        total = total + term
    return total


@dataclass(frozen=True)
class LocalizationConvention:
    """How a fixed point and the y alphabet enter the factorial Schur value."""
    reverse_fixed_point: bool
    variables: ConventionMap

    def to_json(self) -> dict:
        return {"reverse_fixed_point": self.reverse_fixed_point,
                "variables": self.variables.to_json()}


# restriction values of special classes at one fixed point of G(6, 9),
# as a check on the indexing conventions
_REFERENCE_POINT = (9, frozenset({1, 2, 4, 5, 7, 9}))
_REFERENCE_VALUES = {
    1: "(t6 - t1) + (t8 - t2)",
    2: "(t3 - t1)*(t6 - t1) + (t3 - t1)*(t8 - t2) + (t6 - t2)*(t8 - t2)",
    3: "(t3 - t1)*(t6 - t1)*(t8 - t1)",
}


def _expand_factored(text: str) -> Polynomial:
    total = Polynomial()
    for summand in text.split(" + "):
        term = Polynomial.constant(1)
        for factor in summand.split("*"):
            term = term * parse(factor.strip().strip("()"))
        total = total + term
    return total


def _localize(nu: frozenset[int], q: int, n: int, conv: LocalizationConvention) -> Polynomial:
    point = sorted(n + 1 - k for k in nu) if conv.reverse_fixed_point else sorted(nu)
    value = factorial_h(q, [y(i) for i in point], [y(j) for j in range(1, n + 1)])
    return conv.variables.y_to_t(value, n)


def calibrate_localization() -> LocalizationConvention:
    n, nu = _REFERENCE_POINT
    expected = {q: _expand_factored(text) for q, text in _REFERENCE_VALUES.items()}
    alive = []
    for reverse in (False, True):
        for cmap in CANDIDATE_MAPS:
            conv = LocalizationConvention(reverse, ConventionMap(cmap.reverse, cmap.sign, "calibrated"))
            if all(_localize(nu, q, n, conv) == f for q, f in expected.items()):
                alive.append(conv)
    if len(alive) != 1:
        raise CalibrationError(f"{len(alive)} localization conventions match the reference values")
    return alive[0]


_loc_calibration: Optional[LocalizationConvention] = None


def localization_convention() -> LocalizationConvention:
    global _loc_calibration
    if _loc_calibration is None:
        with _calibration_lock:
            if _loc_calibration is None:
                _loc_calibration = calibrate_localization()
    return _loc_calibration


def localization_special(nu: Iterable[int], q: int, n: int) -> Polynomial:
    """
    Restriction of the codimension-q special class of G(|nu|, n) to the
    fixed point spanned by e_k, k in nu, in the t alphabet.
    """
    nu = frozenset(nu)
    if not nu or not all(1 <= k <= n for k in nu):
        raise ValueError(f"fixed point must be a nonempty subset of 1..{n}")
    if q < 0 or len(nu) + q - 1 > n:
        raise ValueError(f"q = {q} out of range for G({len(nu)}, {n})")
    return _localize(nu, q, n, localization_convention())


# -- verification sweeps

def verify_triple(w: Permutation, m: int, p: int, cmap: ConventionMap,
                  localization: bool = True) -> list[dict]:
    """Mismatches for one (w, m, p); empty when formula and oracles agree."""
    n = w.n
    mismatches = []
    formula = pieri_expand(w, m, p).terms
    oracle = {u: cmap.y_to_t(f, n) for u, f in expand_product(w, special_cycle(m, p, n)).items()}
    for u in sorted(set(formula) | set(oracle), key=Permutation.sort_key):
        fu, ou = formula.get(u, Polynomial()), oracle.get(u, Polynomial())
        if fu != ou:
            mismatches.append({"kind": "expansion", "w": str(w), "u": str(u), "m": m, "p": p,
                               "formula": str(fu), "oracle": str(ou)})
    if localization:
        for u, fu in formula.items():
            datum = compute_datum(w, u, m, p)
            lu = localization_special(datum.nu, datum.q, n)
            if lu != fu:
                mismatches.append({"kind": "localization", "w": str(w), "u": str(u), "m": m,
                                   "p": p, "formula": str(fu), "oracle": str(lu)})
    return mismatches


def _verify_job(args):
    images, m, p, reverse, sign, localization = args
    return verify_triple(Permutation(images), m, p, ConventionMap(reverse, sign, "calibrated"),
                         localization)


def verify(n: int, sample: Optional[int] = None, seed: Optional[int] = None,
           jobs: int = 1, localization: bool = True) -> dict:
    """Compare formula and oracles over all (w, m, p) at window n, or a random sample."""
    _guard(n)
    if n < 2:
        raise ValueError("verification needs n >= 2")
    triples = list(_triples(n))
    if sample is not None and sample < len(triples):
        triples = random.Random(seed).sample(triples, sample)
        triples.sort(key=lambda tr: (tr[0].sort_key(), tr[1], tr[2]))
    cmap = convention()
    args = [(w.images, m, p, cmap.reverse, cmap.sign, localization) for w, m, p in triples]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verify_job, args, chunksize=8))
    else:
        results = [_verify_job(a) for a in args]
    mismatches = [mm for batch in results for mm in batch]
    n_perms = 1
    for k in range(2, n + 1):
        n_perms *= k
    return {
        "n": n,
        "pairs_checked": len(triples) * n_perms,
        "triples_checked": len(triples),
        "convention": cmap.to_json(),
        "kernel": kernels.BACKEND,
        "mismatches": mismatches,
    }
