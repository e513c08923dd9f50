"""Pure-Python straightening kernel.

Monomials are tuples of non-negative exponents, read as the ordered product
g_0^a_0 g_1^a_1 ... in generator order.  Polynomials are plain dicts
``{monomial: Fraction}`` without zero entries.

``corrections[(i, j)]`` for ``i > j`` is the normal form of
``g_i g_j - g_j g_i``, so the rewrite rule is
``g_i g_j -> g_j g_i + corrections[(i, j)]``.

``_kernel.pyx`` is a line-for-line typed copy of this module; keep the two in
step.
"""

from fractions import Fraction


class Straightener:
    def __init__(self, ngens, corrections):
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

    def gen_times_mono(self, i, m):
        """Normal form of g_i * m."""
        key = (i, m)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        k = 0
        n = self.ngens
        while k < n and m[k] == 0:
            k += 1
        if i <= k:
            lst = list(m)
            lst[i] += 1
            out = {tuple(lst): Fraction(1)}
            self._gen_cache[key] = out
            return out
        # m = g_k * m1 and g_i g_k = g_k g_i + r(i, k)
        lst = list(m)
        lst[k] -= 1
        m1 = tuple(lst)
        out = {}
        for mono, c in self.gen_times_mono(i, m1).items():
            for mono2, c2 in self.gen_times_mono(k, mono).items():
                v = out.get(mono2, 0) + c * c2
                if v:
                    out[mono2] = v
                else:
                    out.pop(mono2, None)
        corr = self.corrections.get((i, k))
        if corr:
            for rm, rc in corr:
                for mono2, c2 in self.mono_times_mono(rm, m1).items():
                    v = out.get(mono2, 0) + rc * c2
                    if v:
                        out[mono2] = v
                    else:
                        out.pop(mono2, None)
        self._gen_cache[key] = out
        return out

    def mono_times_mono(self, a, b):
        """Normal form of a * b for normal monomials a, b."""
        key = (a, b)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        n = self.ngens
        j = n - 1
        while j >= 0 and a[j] == 0:
            j -= 1
        if j < 0:
            out = {b: Fraction(1)}
            self._mono_cache[key] = out
            return out
        k = 0
        while k < n and b[k] == 0:
            k += 1
        if j <= k:
            out = {tuple(x + y for x, y in zip(a, b)): Fraction(1)}
            self._mono_cache[key] = out
            return out
        # a = a1 * g_j, so a * b = a1 * (g_j * b)
        lst = list(a)
        lst[j] -= 1
        a1 = tuple(lst)
        out = {}
        for mono, c in self.gen_times_mono(j, b).items():
            for mono2, c2 in self.mono_times_mono(a1, mono).items():
                v = out.get(mono2, 0) + c * c2
                if v:
                    out[mono2] = v
                else:
                    out.pop(mono2, None)
        self._mono_cache[key] = out
        return out

    def mul(self, A, B):
        out = {}
        for ma, ca in A.items():
            for mb, cb in B.items():
                c = ca * cb
                for mono, c2 in self.mono_times_mono(ma, mb).items():
                    v = out.get(mono, 0) + c * c2
                    if v:
                        out[mono] = v
                    else:
                        out.pop(mono, None)
        return out

    def word(self, indices):
        """Normal form of the product g_{i_1} g_{i_2} ... g_{i_r}."""
        cur = {self.unit: Fraction(1)}
        for i in reversed(indices):
            nxt = {}
            for mono, c in cur.items():
                for mono2, c2 in self.gen_times_mono(i, mono).items():
                    v = nxt.get(mono2, 0) + c * c2
                    if v:
                        nxt[mono2] = v
                    else:
                        nxt.pop(mono2, None)
            cur = nxt
        return cur
