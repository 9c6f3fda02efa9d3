"""Argument-principle zero counting for s -> F(s, x) on rectangles.

Each cell boundary is walked twice: once by tracking arg F with samples
dense enough that consecutive phase jumps stay below pi/2, and once by
integrating F'/F with Gauss-Legendre nodes.  Both must give the same integer.
Edges are shared between neighbouring cells and computed once.
"""
from __future__ import annotations

import cmath
import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import DomainError
from .lfunctions import sharp_x
from .specfun import picard_F_with_deriv
from .specfun.quadrature import fsum_complex, gauss_legendre

RE_FLOOR = 1.0 / 3.0 + 0.01
BOUNDARY_GUARD = 1e-8
MAX_BISECTIONS = 14
MAX_SUBDIVISION_DEPTH = 3
_GL_ORDER = 4
# longest stretch of an edge handled by one Gauss-Legendre panel
PANEL_LENGTH = 0.05

CSV_COLUMNS = ("re_lo", "re_hi", "im_lo", "im_hi", "winding_phase", "winding_logderiv",
               "min_abs", "samples", "flag")


@dataclass(frozen=True)
class ScanCell:
    re_lo: float
    re_hi: float
    im_lo: float
    im_hi: float
    winding: int
    winding_logderiv: int
    min_abs: float
    samples: int
    flag: str = ""

    def __post_init__(self):
        if not (self.re_lo < self.re_hi and self.im_lo < self.im_hi):
            raise ValueError("degenerate cell")

    @property
    def agrees(self) -> bool:
        return self.winding == self.winding_logderiv and not self.flag

    def row(self) -> tuple:
        return (self.re_lo, self.re_hi, self.im_lo, self.im_hi, self.winding,
                self.winding_logderiv, self.min_abs, self.samples, self.flag)


@dataclass(frozen=True)
class EdgeResult:
    dphase: float       # total change of arg F along the edge
    logderiv: complex   # int F'/F ds along the edge
    min_abs: float
    samples: int
    ok: bool

    def reversed(self) -> "EdgeResult":
        return EdgeResult(-self.dphase, -self.logderiv, self.min_abs, self.samples, self.ok)


def _angle(a: complex, b: complex) -> float:
    """arg(b/a) in (-pi, pi]."""
    return cmath.phase(b / a)


def edge_data(s0: complex, s1: complex, x: float, guard: float = BOUNDARY_GUARD) -> EdgeResult:
    """Phase change and log-derivative integral of F(., x) along the segment s0 -> s1."""
    xg, wg = gauss_legendre(_GL_ORDER)
    delta = s1 - s0
    panels = max(1, math.ceil(abs(delta) / PANEL_LENGTH - 1e-9))
    vals = {}
    parts = []
    # the Gauss nodes serve both methods; panel ends are phase samples only
    for k in range(panels):
        for t, w in zip(xg, wg):
            p = (k + 0.5 * (1.0 + float(t))) / panels
            F, dF = picard_F_with_deriv(s0 + p * delta, x)
            vals[p] = F
            parts.append(float(w) * dF / F)
    logderiv = fsum_complex(parts) * (0.5 * delta / panels)
    for k in range(panels + 1):
        p = k / panels
        vals[p] = picard_F_with_deriv(s0 + p * delta, x)[0]
    n_initial = len(vals)

    ok = True
    min_abs = min(abs(v) for v in vals.values())
    if min_abs < guard:
        ok = False
    # refine until every consecutive phase jump is below pi/2
    order = sorted(vals)
    stack = list(zip(order[:-1], order[1:]))
    pieces = []
    bisections = 0
    while stack:
        a, b = stack.pop()
        fa, fb = vals[a], vals[b]
        if fa == 0 or fb == 0:
            ok = False
            pieces.append((a, 0.0))
            continue
        jump = _angle(fa, fb)
        if abs(jump) < 0.5 * math.pi:
            pieces.append((a, jump))
            continue
        if bisections >= MAX_BISECTIONS * n_initial:
            ok = False
            pieces.append((a, jump))
            continue
        bisections += 1
        c = 0.5 * (a + b)
        vals[c] = picard_F_with_deriv(s0 + c * delta, x)[0]
        min_abs = min(min_abs, abs(vals[c]))
        if abs(vals[c]) < guard:
            ok = False
        stack.append((c, b))
        stack.append((a, c))
    # deterministic summation order along the edge
    pieces.sort()
    dphase = math.fsum(j for _, j in pieces)
    return EdgeResult(dphase, logderiv, min_abs, len(vals), ok)


class _EdgeCache:
    """Edge results keyed by exact endpoint pairs, oriented low-to-high."""

    def __init__(self, x: float, guard: float):
        self.x = x
        self.guard = guard
        self.data: dict = {}

    def get(self, s0: complex, s1: complex) -> EdgeResult:
        key = (s0.real, s0.imag, s1.real, s1.imag)
        rkey = (s1.real, s1.imag, s0.real, s0.imag)
        if key in self.data:
            return self.data[key]
        if rkey in self.data:
            return self.data[rkey].reversed()
        res = edge_data(s0, s1, self.x, self.guard)
        self.data[key] = res
        return res


def _check_cell(re_lo, re_hi, im_lo, im_hi):
    if not re_lo > RE_FLOOR - 1e-12:
        raise DomainError(f"cells must lie in Re(s) >= {RE_FLOOR:.4f}")
    if not (re_lo < re_hi and im_lo < im_hi):
        raise DomainError("degenerate cell")


def _cell_from_edges(bounds, edges: list[EdgeResult], depth: int, cache: _EdgeCache) -> ScanCell:
    re_lo, re_hi, im_lo, im_hi = bounds
    total_phase = math.fsum(e.dphase for e in edges)
    total_ld = sum((e.logderiv for e in edges), 0j)
    w_phase = int(round(total_phase / (2.0 * math.pi)))
    ld = total_ld / (2j * math.pi)
    w_ld = int(round(ld.real))
    ok = all(e.ok for e in edges)
    consistent = (abs(total_phase - 2.0 * math.pi * w_phase) < 1e-6
                  and abs(ld.real - w_ld) < 0.05 and abs(ld.imag) < 0.05)
    min_abs = min(e.min_abs for e in edges)
    samples = sum(e.samples for e in edges)
    if ok and consistent and w_phase == w_ld:
        return ScanCell(re_lo, re_hi, im_lo, im_hi, w_phase, w_ld, min_abs, samples, "")
    if depth >= MAX_SUBDIVISION_DEPTH:
        flag = "guard" if not ok else "disagree"
        return ScanCell(re_lo, re_hi, im_lo, im_hi, w_phase, w_ld, min_abs, samples, flag)
    # forced subdivision into four children; their windings add up to the parent's
    children = subdivide(bounds)
    parts = [winding_details(c, cache.x, depth + 1, cache) for c in children]
    flag = next((p.flag for p in parts if p.flag), "")
    return ScanCell(re_lo, re_hi, im_lo, im_hi, sum(p.winding for p in parts),
                    sum(p.winding_logderiv for p in parts), min(p.min_abs for p in parts),
                    sum(p.samples for p in parts), flag)


def subdivide(bounds) -> list[tuple[float, float, float, float]]:
    re_lo, re_hi, im_lo, im_hi = bounds
    rm = 0.5 * (re_lo + re_hi)
    im = 0.5 * (im_lo + im_hi)
    return [(re_lo, rm, im_lo, im), (rm, re_hi, im_lo, im), (re_lo, rm, im, im_hi), (rm, re_hi, im, im_hi)]


def _boundary(bounds):
    re_lo, re_hi, im_lo, im_hi = bounds
    a = complex(re_lo, im_lo)
    b = complex(re_hi, im_lo)
    c = complex(re_hi, im_hi)
    e = complex(re_lo, im_hi)
    # counter-clockwise: bottom, right, top, left
    return [(a, b), (b, c), (c, e), (e, a)]


def winding_details(cell, x: float, depth: int = 0, cache: _EdgeCache | None = None) -> ScanCell:
    """Both winding numbers of F(., x) around ``cell`` = (re_lo, re_hi, im_lo, im_hi) or a ScanCell."""
    if isinstance(cell, ScanCell):
        bounds = (cell.re_lo, cell.re_hi, cell.im_lo, cell.im_hi)
    else:
        bounds = tuple(float(v) for v in cell)
    _check_cell(*bounds)
    x = float(x)
    if cache is None:
        cache = _EdgeCache(x, BOUNDARY_GUARD)
    edges = [cache.get(s0, s1) for s0, s1 in _boundary(bounds)]
    return _cell_from_edges(bounds, edges, depth, cache)


def winding_number(cell, x: float) -> int:
    """Zero count of F(., x) inside the cell from phase tracking (cross-checked, see winding_details)."""
    return winding_details(cell, x).winding


def _axis(lo: float, hi: float, grid: float) -> list[float]:
    n = max(1, int(round((hi - lo) / grid)))
    return [lo + (hi - lo) * i / n for i in range(n + 1)]


def zero_scan(d: int, re_range, im_range, grid: float, workers: int = 1,
              x: float | None = None) -> list[ScanCell]:
    """Tile re_range x im_range by cells of side about ``grid`` and count zeros of F(., x_d).

    x_d = (d+1)^2/(2d) unless ``x`` is given.  Cells are returned row by row
    (increasing Im, then increasing Re).
    """
    re_lo, re_hi = (float(v) for v in re_range)
    im_lo, im_hi = (float(v) for v in im_range)
    if not (re_lo > RE_FLOOR - 1e-12 and re_hi <= 2.0 + 1e-12 and re_lo < re_hi):
        raise DomainError(f"re_range must lie in ({RE_FLOOR:.4f}, 2]")
    if not (im_lo < im_hi and grid > 0):
        raise DomainError("bad im_range or grid")
    x = sharp_x(d) if x is None else float(x)
    rs = _axis(re_lo, re_hi, grid)
    ims = _axis(im_lo, im_hi, grid)
    cache = _EdgeCache(x, BOUNDARY_GUARD)

    # every grid edge once, in a fixed order; workers only change who computes what
    segs = []
    for j, im in enumerate(ims):
        for i in range(len(rs) - 1):
            segs.append((complex(rs[i], im), complex(rs[i + 1], im)))
    for j in range(len(ims) - 1):
        for r in rs:
            segs.append((complex(r, ims[j]), complex(r, ims[j + 1])))

    def work(seg):
        return edge_data(seg[0], seg[1], x, BOUNDARY_GUARD)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(work, segs, chunksize=64))
    else:
        results = [work(sg) for sg in segs]
    for (s0, s1), res in zip(segs, results):
        cache.data[(s0.real, s0.imag, s1.real, s1.imag)] = res

    cells = []
    for j in range(len(ims) - 1):
        for i in range(len(rs) - 1):
            bounds = (rs[i], rs[i + 1], ims[j], ims[j + 1])
            edges = [cache.get(s0, s1) for s0, s1 in _boundary(bounds)]
            cells.append(_cell_from_edges(bounds, edges, 0, cache))
    return cells


def write_csv(cells, fh) -> None:
    w = csv.writer(fh)
    w.writerow(CSV_COLUMNS)
    for c in cells:
        w.writerow([repr(v) if isinstance(v, float) else v for v in c.row()])


def summarize(cells) -> dict:
    return {
        "cells": len(cells),
        "winding_total": sum(c.winding for c in cells),
        "winding_logderiv_total": sum(c.winding_logderiv for c in cells),
        "disagreements": sum(1 for c in cells if not c.agrees),
        "flagged": sum(1 for c in cells if c.flag),
        "min_abs": min((c.min_abs for c in cells), default=math.inf),
    }

