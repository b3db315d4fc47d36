"""
Pure-Python twin of the compiled kernels in ``_ckernels.pyx``.

Same API and same results; exponents are packed 8 bits per slot into Python
ints and coefficients are unbounded, so nothing here overflows.
"""

from __future__ import annotations

BITS = 8
MAX_EXPONENT = 255
_MASK = (1 << BITS) - 1


class KPoly:
    __slots__ = ("nslots", "_terms")

    def __init__(self, nslots: int):
        self.nslots = nslots
        self._terms: dict[int, int] = {}

    @classmethod
    def from_terms(cls, nslots: int, terms) -> KPoly:
        out = cls(nslots)
        acc = out._terms
        for exps, coeff in terms:
            if len(exps) != nslots:
                raise ValueError("exponent vector length mismatch")
            key = 0
            for i, e in enumerate(exps):
                if not 0 <= e <= MAX_EXPONENT:
                    raise OverflowError(f"exponent {e} exceeds {MAX_EXPONENT}")
                key |= e << (BITS * i)
            acc[key] = acc.get(key, 0) + coeff
        out._prune()
        return out

    def _prune(self) -> None:
        self._terms = {k: c for k, c in sorted(self._terms.items()) if c}

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        return [(tuple((k >> (BITS * i)) & _MASK for i in range(self.nslots)), c)
                for k, c in self._terms.items()]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def mul(self, other: KPoly) -> KPoly:
        if other.nslots != self.nslots:
            raise ValueError("slot count mismatch")
        out = KPoly(self.nslots)
        acc = out._terms
        get = acc.get
        right = list(other._terms.items())
        for ka, ca in self._terms.items():
            for kb, cb in right:
                s = ka + kb
                acc[s] = get(s, 0) + ca * cb
        out._prune()
        return out

    def divdiff(self, slot: int) -> KPoly:
        if slot < 0 or slot + 1 >= self.nslots:
            raise ValueError("slot out of range")
        shift = BITS * slot
        shift2 = shift + BITS
        clear = ~((_MASK | (_MASK << BITS)) << shift)
        out = KPoly(self.nslots)
        acc = out._terms
        get = acc.get
        for key, c in self._terms.items():
            a = (key >> shift) & _MASK
            b = (key >> shift2) & _MASK
            if a == b:
                continue
            if a > b:
                hi, lo = a, b
            else:
                hi, lo, c = b, a, -c
            base = key & clear
            for kk in range(hi - lo):
                k2 = base | ((hi - 1 - kk) << shift) | ((lo + kk) << shift2)
                acc[k2] = get(k2, 0) + c
        out._prune()
        return out

    def specialize(self, n: int) -> list[tuple[tuple[int, ...], int]]:
        if 2 * n > self.nslots:
            raise ValueError("need 2n slots")
        acc: dict[tuple[int, ...], int] = {}
        for exps, c in self.terms():
            folded = tuple(exps[i] + exps[n + i] for i in range(n))
            acc[folded] = acc.get(folded, 0) + c
        return sorted((k, c) for k, c in acc.items() if c)
