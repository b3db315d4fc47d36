# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""
Compiled sparse-polynomial kernels over packed exponent vectors.

Each monomial is a uint64 holding up to 16 exponents of 4 bits each;
coefficients are int64. Any exponent or coefficient overflow raises
OverflowError so callers can retry with the pure-Python kernels.
"""

from libc.stdint cimport uint64_t, int64_t
from libcpp.vector cimport vector
from libcpp.unordered_map cimport unordered_map
from libcpp.pair cimport pair
from libcpp.algorithm cimport sort
from cython.operator cimport dereference as deref, preincrement as inc

cdef extern from *:
    """
    #include <stdint.h>
    static inline int eqp_add_ovf(int64_t a, int64_t b, int64_t *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int eqp_mul_ovf(int64_t a, int64_t b, int64_t *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    """
    bint eqp_add_ovf(int64_t a, int64_t b, int64_t *r) nogil
    bint eqp_mul_ovf(int64_t a, int64_t b, int64_t *r) nogil

cdef enum:
    C_BITS = 4
    C_MAX_SLOTS = 16
    C_MAX_EXPONENT = 15

BITS = C_BITS
MAX_SLOTS = C_MAX_SLOTS
MAX_EXPONENT = C_MAX_EXPONENT

# carry into any nibble boundary means an exponent overflowed
cdef uint64_t BOUNDARY = 0x1111111111111110ULL
cdef uint64_t NIBBLE = 0xF

ctypedef unordered_map[uint64_t, int64_t] accum_t


cdef class KPoly:
    cdef readonly int nslots
    cdef vector[uint64_t] keys
    cdef vector[int64_t] coeffs

    def __cinit__(self, int nslots):
        if nslots < 1 or nslots > C_MAX_SLOTS:
            raise OverflowError(f"compiled kernels support at most {C_MAX_SLOTS} variables")
        self.nslots = nslots

    @classmethod
    def from_terms(cls, int nslots, terms):
        cdef accum_t acc
        cdef uint64_t key
        cdef int64_t c, s
        cdef KPoly out = KPoly(nslots)
        for exps, coeff in terms:
            if len(exps) != nslots:
                raise ValueError("exponent vector length mismatch")
            key = 0
            for i, e in enumerate(exps):
                if e < 0 or e > C_MAX_EXPONENT:
                    raise OverflowError(f"exponent {e} exceeds {C_MAX_EXPONENT}")
                key |= (<uint64_t>e) << (C_BITS * i)
            c = coeff
            if eqp_add_ovf(acc[key], c, &s):
                raise OverflowError("coefficient overflow")
            acc[key] = s
        out._load(acc)
        return out

    cdef void _load(self, accum_t &acc):
        cdef vector[pair[uint64_t, int64_t]] items
        cdef accum_t.iterator it = acc.begin()
        while it != acc.end():
            if deref(it).second != 0:
                items.push_back(deref(it))
            inc(it)
        sort(items.begin(), items.end())
        self.keys.clear()
        self.coeffs.clear()
        self.keys.reserve(items.size())
        self.coeffs.reserve(items.size())
        for item in items:
            self.keys.push_back(item.first)
            self.coeffs.push_back(item.second)

    def terms(self):
        cdef size_t k
        cdef int i
        out = []
        for k in range(self.keys.size()):
            key = self.keys[k]
            out.append((tuple(int((key >> (C_BITS * i)) & NIBBLE) for i in range(self.nslots)),
                        int(self.coeffs[k])))
        return out

    def __len__(self):
        return self.keys.size()

    def __bool__(self):
        return self.keys.size() > 0

    def mul(self, KPoly other):
        if other.nslots != self.nslots:
            raise ValueError("slot count mismatch")
        cdef accum_t acc
        cdef size_t i, j, na = self.keys.size(), nb = other.keys.size()
        cdef uint64_t ka, kb, s
        cdef int64_t c, total
        cdef bint overflow = False
        cdef KPoly out = KPoly(self.nslots)
        acc.reserve(na * nb if na * nb < 1000000 else 1000000)
        with nogil:
            for i in range(na):
                ka = self.keys[i]
                for j in range(nb):
                    kb = other.keys[j]
                    s = ka + kb
                    if ((ka ^ kb ^ s) & BOUNDARY) or s < ka:
                        overflow = True
                        break
                    if eqp_mul_ovf(self.coeffs[i], other.coeffs[j], &c):
                        overflow = True
                        break
                    if eqp_add_ovf(acc[s], c, &total):
                        overflow = True
                        break
                    acc[s] = total
                if overflow:
                    break
        if overflow:
            raise OverflowError("exponent or coefficient overflow in product")
        out._load(acc)
        return out

    def divdiff(self, int slot):
        """Divided difference in the variables at slot and slot + 1."""
        if slot < 0 or slot + 1 >= self.nslots:
            raise ValueError("slot out of range")
        cdef accum_t acc
        cdef size_t k, n = self.keys.size()
        cdef int shift = C_BITS * slot
        cdef uint64_t key, base, mask = (<uint64_t>0xFF) << shift
        cdef int a, b, hi, lo, kk
        cdef int64_t c, total
        cdef bint overflow = False
        cdef KPoly out = KPoly(self.nslots)
        with nogil:
            for k in range(n):
                key = self.keys[k]
                a = <int>((key >> shift) & NIBBLE)
                b = <int>((key >> (shift + C_BITS)) & NIBBLE)
                if a == b:
                    continue
                c = self.coeffs[k]
                if a > b:
                    hi = a
                    lo = b
                else:
                    hi = b
                    lo = a
                    c = -c
                base = key & ~mask
                # (z^hi w^lo - z^lo w^hi) / (z - w) = sum z^(hi-1-kk) w^(lo+kk)
                for kk in range(hi - lo):
                    key = base | ((<uint64_t>(hi - 1 - kk)) << shift) \
                        | ((<uint64_t>(lo + kk)) << (shift + C_BITS))
                    if eqp_add_ovf(acc[key], c, &total):
                        overflow = True
                        break
                    acc[key] = total
                if overflow:
                    break
        if overflow:
            raise OverflowError("coefficient overflow in divided difference")
        out._load(acc)
        return out

    def specialize(self, int n):
        """Set slot i equal to slot n + i for i < n; return y-exponent terms."""
        if 2 * n > self.nslots:
            raise ValueError("need 2n slots")
        cdef unordered_map[uint64_t, int64_t] acc
        cdef size_t k
        cdef int i
        cdef uint64_t key, folded
        cdef int64_t total
        for k in range(self.keys.size()):
            key = self.keys[k]
            folded = 0
            for i in range(n):
                folded |= (((key >> (C_BITS * i)) & NIBBLE)
                           + ((key >> (C_BITS * (n + i))) & NIBBLE)) << (8 * i)
            if eqp_add_ovf(acc[folded], self.coeffs[k], &total):
                raise OverflowError("coefficient overflow in specialization")
            acc[folded] = total
        out = []
        cdef accum_t.iterator it = acc.begin()
        while it != acc.end():
            if deref(it).second != 0:
                folded = deref(it).first
                out.append((tuple(int((folded >> (8 * i)) & 0xFF) for i in range(n)),
                            int(deref(it).second)))
            inc(it)
        out.sort()
        return out
