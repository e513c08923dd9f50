"""Sparse exact Gaussian elimination with provenance.

Vectors are dicts ``{key: Fraction}``.  Keys only need to be mutually
comparable (tuples of ints in practice).  Every stored row remembers which
input vectors it was built from, so a successful membership test comes with
the exact linear combination that proves it.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Hashable, Iterable, Mapping


def _axpy(target: dict, c, source: Mapping) -> None:
    """target += c * source, dropping zeros."""
    for k, v in source.items():
        w = target.get(k, 0) + c * v
        if w:
            target[k] = w
        else:
            target.pop(k, None)


class EchelonBasis:
    """Incrementally built row-echelon basis over Q.

    Each row is normalised so that its pivot (smallest key) has coefficient 1,
    and no pivot of an older row is ever eliminated from a newer one, which
    is all the reduction loop below needs.
    """

    def __init__(self, track: bool = True):
        self.track = track
        self.rows: dict = {}       # pivot -> row
        self.prov: dict = {}       # pivot -> {tag: coeff}
        self.order: list = []      # pivots in insertion order

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping) -> tuple[dict, dict]:
        """Return ``(residue, combination)`` with vec = residue + sum(c * input[tag])."""
        r = dict(vec)
        comb: dict = {}
        heap = list(r)
        heapq.heapify(heap)
        while heap:
            k = heapq.heappop(heap)
            c = r.get(k)
            if c is None:
                continue
            row = self.rows.get(k)
            if row is None:
                continue
            for kk in row:
                if kk not in r:
                    heapq.heappush(heap, kk)
            _axpy(r, -c, row)
            if self.track:
                _axpy(comb, c, self.prov[k])
        return r, comb

    def add(self, vec: Mapping, tag: Hashable = None) -> bool:
        """Insert ``vec``; return True when it enlarged the span."""
        r, comb = self.reduce(vec)
        if not r:
            return False
        pivot = min(r)
        inv = 1 / r[pivot]
        row = {k: v * inv for k, v in r.items()}
        self.rows[pivot] = row
        self.order.append(pivot)
        if self.track:
            # row = inv * (vec - sum comb) = inv * input[tag] - inv * comb
            prov = {k: -v * inv for k, v in comb.items()}
            _axpy(prov, inv, {tag: Fraction(1)})
            self.prov[pivot] = prov
        return True

    def contains(self, vec: Mapping) -> bool:
        r, _ = self.reduce(vec)
        return not r

    def express(self, vec: Mapping) -> dict | None:
        """Coefficients ``{tag: c}`` with vec = sum c * input[tag], or None."""
        if not self.track:
            raise ValueError("this basis was built without provenance")
        r, comb = self.reduce(vec)
        return None if r else comb


def nullspace(vectors: Iterable[Mapping]) -> list[dict]:
    """Basis of ``{c : sum_i c_i * vectors[i] = 0}`` as dicts ``{i: c_i}``."""
    basis = EchelonBasis(track=True)
    kernel = []
    for i, vec in enumerate(vectors):
        r, comb = basis.reduce(vec)
        if r:
            basis.add(vec, tag=i)
        else:
            relation = {j: -c for j, c in comb.items()}
            relation[i] = Fraction(1)
            kernel.append(relation)
    return kernel


def rank(vectors: Iterable[Mapping]) -> int:
    basis = EchelonBasis(track=False)
    for vec in vectors:
        basis.add(vec)
    return basis.rank


def combine(vectors: list[Mapping], coeffs: Mapping[int, Fraction]) -> dict:
    out: dict = {}
    for i, c in coeffs.items():
        _axpy(out, c, vectors[i])
    return out


def same_span(a: list[Mapping], b: list[Mapping]) -> bool:
    ba = EchelonBasis(track=False)
    for v in a:
        ba.add(v)
    bb = EchelonBasis(track=False)
    for v in b:
        bb.add(v)
    return ba.rank == bb.rank and all(ba.contains(v) for v in b)
