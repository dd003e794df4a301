"""Finite p-group quotients of F(x, y) from truncated noncommutative power series.

``x -> 1 + X`` and ``y -> 1 + Y`` extend to a homomorphism of F(x, y) into
the units of ``F_p<X, Y>`` modulo monomials of length > d.  Every unit with
constant term 1 there has p-power order, so the image is a finite p-group,
and raising ``d`` separates more and more of the free group.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .action_graph import ActionGraph, cycles_all_simple
from .errors import BudgetExceeded
from .words import Letter, Word

DEFAULT_VERTEX_BUDGET = 2**20
SYMBOLS = "XY"


@dataclass(frozen=True)
class TruncatedSeries:
    """Element of ``F_p<X, Y>`` truncated above degree ``d``; zero coefficients are dropped."""

    coeffs: dict[str, int] = field(hash=False)
    degree: int
    p: int

    @classmethod
    def one(cls, degree: int, p: int) -> TruncatedSeries:
        return cls({"": 1}, degree, p)

    @classmethod
    def from_terms(cls, terms: dict[str, int], degree: int, p: int) -> TruncatedSeries:
        coeffs = {}
        for mon, c in terms.items():
            c %= p
            if c and len(mon) <= degree:
                coeffs[mon] = c
        return cls(coeffs, degree, p)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.degree, self.p, self.coeffs) == (other.degree, other.p, other.coeffs)

    def is_one(self) -> bool:
        return self.coeffs == {"": 1}

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        return series_mul(self, other)

    def __str__(self) -> str:
        terms = []
        for mon in sorted(self.coeffs, key=lambda m: (len(m), m)):
            c = self.coeffs[mon]
            body = mon or "1"
            terms.append(body if c == 1 and mon else f"{c}{mon}" if mon else str(c))
        return " + ".join(terms) or "0"


def embed_letter(l: Letter, d: int, p: int) -> TruncatedSeries:
    """``x -> 1 + X``, ``x^-1 -> 1 - X + X^2 - ...`` truncated at degree ``d``."""
    if d < 1:
        raise ValueError("truncation degree must be at least 1")
    s = SYMBOLS[l.base]
    if l.sign > 0:
        return TruncatedSeries.from_terms({"": 1, s: 1}, d, p)
    return TruncatedSeries.from_terms({s * j: (-1) ** j for j in range(d + 1)}, d, p)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    if (a.degree, a.p) != (b.degree, b.p):
        raise ValueError("degree or modulus mismatch")
    out: dict[str, int] = {}
    for ma, ca in a.coeffs.items():
        room = a.degree - len(ma)
        for mb, cb in b.coeffs.items():
            if len(mb) <= room:
                out[ma + mb] = out.get(ma + mb, 0) + ca * cb
    return TruncatedSeries.from_terms(out, a.degree, a.p)


def series_inv(a: TruncatedSeries) -> TruncatedSeries:
    """Inverse of ``1 + alpha`` as ``sum_j (-alpha)^j``; ``alpha`` is nilpotent."""
    if a.coeffs.get("", 0) != 1:
        raise ValueError("only series with constant term 1 are inverted")
    neg_alpha = TruncatedSeries.from_terms(
        {m: -c for m, c in a.coeffs.items() if m}, a.degree, a.p)
    out = TruncatedSeries.one(a.degree, a.p)
    power = TruncatedSeries.one(a.degree, a.p)
    for _ in range(a.degree):
        power = series_mul(power, neg_alpha)
        out = TruncatedSeries.from_terms(
            {m: out.coeffs.get(m, 0) + power.coeffs.get(m, 0)
             for m in out.coeffs.keys() | power.coeffs.keys()},
            a.degree, a.p)
    return out


def image_of_word(w: Word, d: int, p: int) -> TruncatedSeries:
    out = TruncatedSeries.one(d, p)
    for l in w:
        out = series_mul(out, embed_letter(l, d, p))
    return out


def monomials(d: int) -> list[str]:
    """Nonconstant monomials of length <= d, by length then lexicographically."""
    return ["".join(t) for k in range(1, d + 1) for t in itertools.product(SYMBOLS, repeat=k)]


def _pack(rows: np.ndarray, bits: int) -> np.ndarray:
    if bits == 8:
        return rows
    expanded = np.unpackbits(rows[:, :, None], axis=2)[:, :, 8 - bits:]
    return np.packbits(expanded.reshape(len(rows), -1), axis=1)


def build_base_graph(w1: Word, w2: Word, p: int, d: int,
                     budget: int = DEFAULT_VERTEX_BUDGET) -> ActionGraph:
    """Cayley graph of the image of F(x, y) in the degree-``d`` truncated units mod ``p``.

    Vertices are group elements numbered breadth first from the identity
    (vertex 0); the generator edges are right multiplication by ``1 + X`` and
    ``1 + Y``.  ``w1`` and ``w2`` do not influence the graph; they are taken
    so the signature matches ``find_base``.
    """
    if p >= 128:
        raise ValueError("moduli of 128 and above are not supported")
    mons = monomials(d)
    index = {m: i for i, m in enumerate(mons)}
    bits = max(1, (p - 1).bit_length())
    # right multiplication by 1 + S: alpha -> alpha + alpha*S + S
    moves = []
    for s in SYMBOLS:
        src = np.array([index[m] for m in mons if len(m) < d], dtype=np.int64)
        tgt = np.array([index[m + s] for m in mons if len(m) < d], dtype=np.int64)
        moves.append((src, tgt, index[s]))

    identity = np.zeros((1, len(mons)), dtype=np.uint8)
    seen = {_pack(identity, bits)[0].tobytes(): 0}
    perms: list[list[int]] = [[], []]
    frontier = identity
    while len(frontier):
        images = []
        for src, tgt, unit in moves:
            img = frontier.astype(np.int16)
            img[:, tgt] += frontier[:, src]
            img[:, unit] += 1
            images.append((img % p).astype(np.uint8))
        keys = [_pack(img, bits) for img in images]
        fresh = []
        for i in range(len(frontier)):
            for gen in (0, 1):
                key = keys[gen][i].tobytes()
                vid = seen.get(key)
                if vid is None:
                    vid = len(seen)
                    if vid >= budget:
                        raise BudgetExceeded(
                            f"vertex budget {budget} exceeded at truncation degree {d}")
                    seen[key] = vid
                    fresh.append(images[gen][i])
                perms[gen].append(vid)
        frontier = np.array(fresh, dtype=np.uint8).reshape(-1, len(mons))
    return ActionGraph(perms[0], perms[1], base_vertex=0)


def find_base(w1: Word, w2: Word, p: int, d_max: int = 8,
              budget: int = DEFAULT_VERTEX_BUDGET) -> tuple[ActionGraph, int]:
    """Least truncation degree whose Cayley graph has ``w1``, ``w2`` nontrivial and all their cycles simple."""
    failure = "no truncation degree tried"
    for d in range(1, d_max + 1):
        trivial = [str(w) for w in (w1, w2) if image_of_word(w, d, p).is_one()]
        if trivial:
            failure = f"image of {', '.join(trivial)} trivial at degree {d}"
            continue
        try:
            g = build_base_graph(w1, w2, p, d, budget)
        except BudgetExceeded as exc:
            raise BudgetExceeded(f"{exc}; last failure: {failure}") from exc
        bad = [str(w) for w in (w1, w2) if not cycles_all_simple(g, w)]
        if not bad:
            return g, d
        failure = f"{', '.join(bad)}-cycles not simple at degree {d}"
    raise BudgetExceeded(f"truncation degree {d_max} exhausted: {failure}")
