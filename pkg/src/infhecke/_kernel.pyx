# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled straightening kernel; same algorithm as ``_kernel_py``."""

from fractions import Fraction

_ONE = Fraction(1)


cdef inline void _acc(dict out, object mono, object v):
    if v:
        out[mono] = v
    else:
        out.pop(mono, None)


cdef class Straightener:
    cdef public int ngens
    cdef public dict corrections
    cdef public tuple unit
    cdef dict _gen_cache
    cdef dict _mono_cache

    def __init__(self, int ngens, corrections):
        self.ngens = ngens
        self.corrections = {
            key: tuple((m, Fraction(c)) for m, c in poly.items() if c)
            for key, poly in corrections.items()
        }
        self.unit = (0,) * ngens
        self._gen_cache = {}
        self._mono_cache = {}

    def cache_size(self):
        return len(self._gen_cache) + len(self._mono_cache)

    cpdef dict gen_times_mono(self, int i, tuple m):
        cdef tuple key = (i, m)
        cdef object hit = self._gen_cache.get(key)
        if hit is not None:
            return <dict>hit
        cdef int n = self.ngens
        cdef int k = 0
        while k < n and m[k] == 0:
            k += 1
        cdef list lst
        cdef dict out
        if i <= k:
            lst = list(m)
            lst[i] += 1
            out = {tuple(lst): _ONE}
            self._gen_cache[key] = out
            return out
        lst = list(m)
        lst[k] -= 1
        cdef tuple m1 = tuple(lst)
        out = {}
        cdef dict inner, inner2
        cdef object mono, c, mono2, c2, rm, rc
        inner = self.gen_times_mono(i, m1)
        for mono, c in inner.items():
            inner2 = self.gen_times_mono(k, <tuple>mono)
            for mono2, c2 in inner2.items():
                _acc(out, mono2, out.get(mono2, 0) + c * c2)
        corr = self.corrections.get((i, k))
        if corr:
            for rm, rc in corr:
                inner2 = self.mono_times_mono(<tuple>rm, m1)
                for mono2, c2 in inner2.items():
                    _acc(out, mono2, out.get(mono2, 0) + rc * c2)
        self._gen_cache[key] = out
        return out

    cpdef dict mono_times_mono(self, tuple a, tuple b):
        cdef tuple key = (a, b)
        cdef object hit = self._mono_cache.get(key)
        if hit is not None:
            return <dict>hit
        cdef int n = self.ngens
        cdef int j = n - 1
        cdef int k = 0
        cdef int t
        cdef dict out
        cdef list lst
        while j >= 0 and a[j] == 0:
            j -= 1
        if j < 0:
            out = {b: _ONE}
            self._mono_cache[key] = out
            return out
        while k < n and b[k] == 0:
            k += 1
        if j <= k:
            lst = [0] * n
            for t in range(n):
                lst[t] = a[t] + b[t]
            out = {tuple(lst): _ONE}
            self._mono_cache[key] = out
            return out
        lst = list(a)
        lst[j] -= 1
        cdef tuple a1 = tuple(lst)
        out = {}
        cdef dict inner, inner2
        cdef object mono, c, mono2, c2
        inner = self.gen_times_mono(j, b)
        for mono, c in inner.items():
            inner2 = self.mono_times_mono(a1, <tuple>mono)
            for mono2, c2 in inner2.items():
                _acc(out, mono2, out.get(mono2, 0) + c * c2)
        self._mono_cache[key] = out
        return out

    cpdef dict mul(self, dict A, dict B):
        cdef dict out = {}
        cdef dict prod
        cdef object ma, ca, mb, cb, c, mono, c2
        for ma, ca in A.items():
            for mb, cb in B.items():
                c = ca * cb
                prod = self.mono_times_mono(<tuple>ma, <tuple>mb)
                for mono, c2 in prod.items():
                    _acc(out, mono, out.get(mono, 0) + c * c2)
        return out

    def word(self, indices):
        cdef dict cur = {self.unit: _ONE}
        cdef dict nxt, prod
        cdef object mono, c, mono2, c2
        cdef int i
        for i in reversed(list(indices)):
            nxt = {}
            for mono, c in cur.items():
                prod = self.gen_times_mono(i, <tuple>mono)
                for mono2, c2 in prod.items():
                    _acc(nxt, mono2, nxt.get(mono2, 0) + c * c2)
            cur = nxt
        return cur
