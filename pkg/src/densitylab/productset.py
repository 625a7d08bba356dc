"""Windowed productsets A*B and multiplicative gap analysis.

For a window [x, n*x], the gap statistic m is the largest ceiling ratio
between consecutive productset elements inside the window, with the leading
gap from x to the first product included (the window start is prepended to
the sequence whenever the first product exceeds it).  With that convention
m is sound by construction: every interval [u, m*u] inside [x, n*x] whose
start does not exceed the last product meets A*B.

``gap_witness`` scans window starts and reports the x minimizing m.  Once a
window with m = 2 is on record only singleton windows (m = 1) can improve
the report, so later candidates are probed with a capped distinct-product
count instead of a full enumeration; the result is identical to evaluating
every candidate in full.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, DomainError
from .intset import IntegerSetSpec
from .numerics import geometric_grid

__all__ = ["GapReport", "products_in", "max_gap_ratio", "gap_witness"]

PRODUCT_HORIZON = 10**9
_CHUNK = 1 << 23
# explicit-by-explicit pairs get an exact window scan up to this many products
EXACT_SCAN_MAX_PRODUCTS = 4096


@dataclass(frozen=True)
class GapReport:
    """Gap analysis of A*B over the window [x, n*x]."""

    n: int
    x: int
    m: int
    products_examined: int
    window: tuple[int, int]

    def __post_init__(self):
        if self.m < 1:
            raise DomainError("gap ratio bound must be >= 1")
        if self.x * self.n > self.window[1]:
            raise DomainError("window does not cover [x, n*x]")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "x": self.x,
            "m": self.m,
            "products": self.products_examined,
            "lo": self.window[0],
            "hi": self.window[1],
        }


def products_in(a_spec: IntegerSetSpec, b_spec: IntegerSetSpec, lo: int, hi: int,
                limit: int = PRODUCT_HORIZON) -> np.ndarray:
    """Sorted distinct {a*b : a in A, b in B, lo <= a*b <= hi}.

    Iterates a over A cap [1, hi] and range-scans B cap [ceil(lo/a),
    floor(hi/a)], in flat vectorized chunks.
    """
    lo, hi = int(lo), int(hi)
    if lo > hi or lo < 1:
        raise DomainError("need 1 <= lo <= hi")
    if hi > limit:
        raise CapacityError(f"productset window capped at {limit}")
    a_elems = a_spec.members(1, hi)
    b_elems = b_spec.members(1, hi)
    if len(a_elems) == 0 or len(b_elems) == 0:
        return np.empty(0, dtype=np.int64)
    b_lo = np.searchsorted(b_elems, -(-lo // a_elems), side="left")
    b_hi = np.searchsorted(b_elems, hi // a_elems, side="right")
    lens = b_hi - b_lo
    nz = np.flatnonzero(lens > 0)
    pieces = []
    start = 0
    while start < len(nz):
        stop = start
        total = 0
        while stop < len(nz) and total + lens[nz[stop]] <= _CHUNK:
            total += lens[nz[stop]]
            stop += 1
        if stop == start:  # single oversized range
            stop = start + 1
            total = int(lens[nz[start]])
        sel = nz[start:stop]
        reps = lens[sel]
        offsets = np.concatenate(([0], np.cumsum(reps)[:-1]))
        pos = np.arange(int(np.sum(reps)), dtype=np.int64)
        pos += np.repeat(b_lo[sel] - offsets, reps)
        pieces.append(np.repeat(a_elems[sel], reps) * b_elems[pos])
        start = stop
    if not pieces:
        return np.empty(0, dtype=np.int64)
    return np.unique(np.concatenate(pieces))


def max_gap_ratio(products) -> int:
    """max over consecutive pairs of ceil(c_{i+1}/c_i); 1 for a singleton."""
    c = np.asarray(products, dtype=np.int64)
    if len(c) == 0:
        raise DomainError("gap ratio of an empty list")
    if np.any(c[:-1] >= c[1:]) or c[0] < 1:
        raise DomainError("need a strictly increasing positive list")
    if len(c) == 1:
        return 1
    return int(np.max(-((-c[1:]) // c[:-1])))


def _window_gap(products: np.ndarray, x: int) -> int:
    """Gap statistic with the leading gap from x included."""
    if products[0] > x:
        return max(-(-int(products[0]) // x), max_gap_ratio(products))
    return max_gap_ratio(products)


def _distinct_upto2(a_elems: np.ndarray, b_elems: np.ndarray, lo: int, hi: int):
    """(count of distinct products in [lo, hi] capped at 2, one product).

    Scans a in blocks with early exit; for dense sets the first block (small
    divisors with long b-ranges) already decides.
    """
    seen: int | None = None
    for start in range(0, len(a_elems), 1024):
        chunk = a_elems[start : start + 1024]
        b_lo = np.searchsorted(b_elems, -(-lo // chunk), side="left")
        b_hi = np.searchsorted(b_elems, hi // chunk, side="right")
        lens = b_hi - b_lo
        nz = np.flatnonzero(lens > 0)
        if len(nz) == 0:
            continue
        if np.any(lens[nz] > 1):
            return 2, None
        uniq = np.unique(chunk[nz] * b_elems[b_lo[nz]])
        if len(uniq) > 1 or (seen is not None and seen != int(uniq[0])):
            return 2, None
        seen = int(uniq[0])
    return (0, None) if seen is None else (1, seen)


def _grid_candidates(n: int, x_max: int, grid_ratio: float) -> list[int]:
    return geometric_grid(1, x_max, grid_ratio)


def _exact_candidates(a_spec, b_spec, n: int, x_max: int, horizon: int) -> list[int] | None:
    """All window starts where the gap statistic can change, for small
    explicit productsets; None when the exact scan does not apply."""
    if a_spec.kind != "explicit" or b_spec.kind != "explicit":
        return None
    prods = products_in(a_spec, b_spec, 1, horizon)
    if len(prods) > EXACT_SCAN_MAX_PRODUCTS:
        return None
    cands = {1, x_max}
    for p in prods.tolist():
        for c in (p - 1, p, p + 1, -(-p // n), -(-p // n) - 1):
            if 1 <= c <= x_max:
                cands.add(c)
    return sorted(cands)


def gap_witness(a_spec: IntegerSetSpec, b_spec: IntegerSetSpec, n: int, horizon: int,
                grid_ratio: float = 1.1) -> GapReport | None:
    """Report the window start x in [1, horizon/n] minimizing the gap
    statistic m of A*B over [x, n*x] (ties to the smallest x); None when
    every candidate window is empty.

    Candidate starts lie on a geometric grid (exact change-point scan for
    small explicit productsets).  Full enumeration runs until a window with
    the multi-product floor m = 2 is found; afterwards candidates are probed
    for singleton windows only, which is equivalent and far cheaper.
    """
    n = int(n)
    if n < 2:
        raise DomainError("need n >= 2")
    x_max = horizon // n
    if x_max < 1:
        raise DomainError("horizon admits no window")
    cands = _exact_candidates(a_spec, b_spec, n, x_max, horizon)
    if cands is None:
        cands = _grid_candidates(n, x_max, grid_ratio)
    a_elems = None
    best: GapReport | None = None
    for x in cands:
        lo, hi = x, n * x
        if best is not None and best.m <= 1:
            break
        if best is not None and best.m == 2:
            # multi-product windows cannot beat m = 2; only a singleton
            # window whose product equals x (m = 1) improves the report
            if a_elems is None:
                a_elems = a_spec.members(1, horizon)
                b_elems = b_spec.members(1, horizon)
            count, prod = _distinct_upto2(a_elems, b_elems, lo, hi)
            if count == 1:
                g = _window_gap(np.asarray([prod]), x)
                if g < best.m:
                    best = GapReport(n, x, g, 1, (lo, hi))
                    break
            continue
        prods = products_in(a_spec, b_spec, lo, hi)
        if len(prods) == 0:
            continue
        m = _window_gap(prods, x)
        if best is None or m < best.m:
            best = GapReport(n, x, m, len(prods), (lo, hi))
    return best
