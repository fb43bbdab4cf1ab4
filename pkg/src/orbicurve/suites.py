"""Exhaustive and randomized verification suites.

Each suite checks one mathematical statement over a bounded family and
reports instance/failure counts with a first counterexample if any.  The
heavy chain enumerations run on a cached integer core (component-level
cohomology counts and node characters keyed by small int tuples) whose
values are re-derived through the public dataclass API on a systematic
sample of instances, so the fast path cannot drift from the real one.

Summand additivity is used where it is exact: h^1 of a direct sum is the sum
of summand h^1's (and the rank formula is additive in the sector weights),
so rank-2 tallies over a chain are computed in closed form from the rank-1
sweep instead of materializing the quadratic number of pairs.
"""
from __future__ import annotations

import itertools
import os
import random
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import bundles, cohomology, convexity, curves, sectors, series, wps
from .foundation import Phase

SAMPLE_EVERY = 199  # every k-th fast-core instance is replayed through the API


@dataclass
class SuiteResult:
    name: str
    instances: int = 0
    failures: int = 0
    first_counterexample: dict | None = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failures == 0


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("ORBICURVE_WORKERS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# Cached integer core.  A component is (a, b, l1, l2); a bundle on it is
# (k1, k2, d).  Characters are the fiber weights of the canonical isotropy
# generators, stored as integer numerators modulo the isotropy order.
# ---------------------------------------------------------------------------


def component_family(max_ab: int, max_l: int) -> list[tuple[int, int, int, int]]:
    """All valid (a, b, l1, l2) with a, b <= max_ab and l1*l2 <= max_l."""
    out = []
    for a in range(1, max_ab + 1):
        for b in range(1, max_ab + 1):
            if gcd(a, b) != 1:
                continue
            for l1 in range(1, max_l + 1):
                for l2 in range(1, max_l // l1 + 1):
                    if gcd(l1, l2) == 1 and gcd(l1, b) == 1 and gcd(l2, a) == 1:
                        out.append((a, b, l1, l2))
    return out


@lru_cache(maxsize=None)
def _h0(comp, bnd) -> int:
    a, b, l1, l2 = comp
    k1, k2, d = bnd
    if d < 0:
        return 0
    n = 0
    for i in range(0, d // a + 1):
        if i % l1 != k1 % l1:
            continue
        rem = d - a * i
        if rem % b == 0 and (rem // b) % l2 == k2 % l2:
            n += 1
    return n


@lru_cache(maxsize=None)
def _h1(comp, bnd) -> int:
    a, b, l1, l2 = comp
    k1, k2, d = bnd
    if d > -(a + b):
        return 0
    n = 0
    for p in range(1, (-d) // a + 1):
        if (-p) % l1 != k1 % l1:
            continue
        rem = -d - a * p
        if rem >= b and rem % b == 0 and (-(rem // b)) % l2 == k2 % l2:
            n += 1
    return n


@lru_cache(maxsize=None)
def _x1_sol(comp, bnd) -> bool:
    """A basis monomial not vanishing at x1 exists (namely x^{d/a})."""
    a, b, l1, l2 = comp
    k1, k2, d = bnd
    return d >= 0 and d % a == 0 and (d // a) % l1 == k1 % l1 and k2 % l2 == 0


@lru_cache(maxsize=None)
def _x2_sol(comp, bnd) -> bool:
    a, b, l1, l2 = comp
    k1, k2, d = bnd
    return d >= 0 and d % b == 0 and (d // b) % l2 == k2 % l2 and k1 % l1 == 0


@lru_cache(maxsize=None)
def _char_x1(comp, bnd) -> int:
    """Canonical-generator fiber weight numerator mod c at x1."""
    a, b, l1, l2 = comp
    k1, k2, d = bnd
    c = a * l1 * l2
    t = pow(a * l1 - b * l2, -1, c)
    return (t * (a * l2 * k1 + a * l1 * k2 - l2 * d)) % c


@lru_cache(maxsize=None)
def _char_x2(comp, bnd) -> int:
    a, b, l1, l2 = comp
    k1, k2, d = bnd
    r = b * l1 * l2
    t = pow(b * l2 - a * l1, -1, r)
    return (t * (b * l2 * k1 + b * l1 * k2 - l1 * d)) % r


def _twist(comp, bnd, point: int, sign: int):
    """Tensor with O(x1) or O(x2) (or duals): x1 ~ (0,1,b), x2 ~ (1,0,a)."""
    a, b, l1, l2 = comp
    k1, k2, d = bnd
    if point == 1:
        return (k1 % l1, (k2 + sign) % l2, d + sign * b)
    return ((k1 + sign) % l1, k2 % l2, d + sign * a)


def _dual(comp, bnd):
    _, _, l1, l2 = comp
    k1, k2, d = bnd
    return ((-k1) % l1, (-k2) % l2, -d)


def _rank_int(rows: list[list[int]]) -> int:
    """Rank of a small integer matrix by fraction-free elimination."""
    m = [row[:] for row in rows if any(row)]
    rank = 0
    ncols = len(m[0]) if m else 0
    col = 0
    while m and col < ncols:
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pr = m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f_num, f_den = m[r][col], pr[col]
                m[r] = [x * f_den - y * f_num for x, y in zip(m[r], pr)]
        rank += 1
        col += 1
    return rank


def chain_h0_h1(pieces: tuple) -> tuple[int, int]:
    """(h0, h1) of a line bundle on a chain; pieces = ((comp, bnd), ...).

    Normalization sequence: h0 = ker of the node evaluation map, h1 = sum of
    component h1 plus its cokernel.  Only the (at most one per end) monomials
    nonzero at a node enter the evaluation matrix.
    """
    n = len(pieces)
    h0s = [_h0(c, bd) for c, bd in pieces]
    h1_total = sum(_h1(c, bd) for c, bd in pieces)
    if n == 1:
        return h0s[0], h1_total
    # columns: per component, the end-nonzero monomials (same monomial when d=0)
    col_ids: dict[tuple, int] = {}

    def col(j: int, end: str) -> int:
        comp, bnd = pieces[j]
        key = (j, "both") if bnd[2] == 0 else (j, end)
        if key not in col_ids:
            col_ids[key] = len(col_ids)
        return col_ids[key]

    rows = []
    n_active = 0
    for j in range(n - 1):
        cl, bl = pieces[j]
        cr, br = pieces[j + 1]
        r_left = cl[1] * cl[2] * cl[3]
        r_right = cr[0] * cr[2] * cr[3]
        assert r_left == r_right, "node isotropy mismatch in suite enumeration"
        chl = _char_x2(cl, bl)
        chr_ = _char_x1(cr, br)
        assert (chl + chr_) % r_left == 0, "unbalanced node in suite enumeration"
        if chl % r_left != 0:
            continue
        n_active += 1
        entries = []
        if _x2_sol(cl, bl):
            entries.append((col(j, "x2"), 1))
        if _x1_sol(cr, br):
            entries.append((col(j + 1, "x1"), -1))
        rows.append((len(rows), entries))
    ncols = len(col_ids)
    mat = [[0] * ncols for _ in rows]
    for ridx, entries in rows:
        for cidx, v in entries:
            mat[ridx][cidx] += v
    rank = _rank_int(mat) if mat and ncols else 0
    h0 = sum(h0s) - rank
    h1 = h1_total + (n_active - rank)
    return h0, h1


def chain_adjacency(comps: list[tuple]) -> list[list[int]]:
    orders_c = [a * l1 * l2 for a, b, l1, l2 in comps]
    orders_d = [b * l1 * l2 for a, b, l1, l2 in comps]
    return [[j for j in range(len(comps)) if orders_d[i] == orders_c[j]] for i in range(len(comps))]


def iter_chains(comps: list[tuple], max_len: int, first: int | None = None):
    """Yield tuples of component indices forming valid chains, lazily (DFS)."""
    adjacency = chain_adjacency(comps)
    starts = range(len(comps)) if first is None else [first]
    for i in starts:
        stack = [(i,)]
        while stack:
            path = stack.pop()
            yield path
            if len(path) < max_len:
                for j in reversed(adjacency[path[-1]]):
                    stack.append(path + (j,))


# ---------------------------------------------------------------------------
# API replay used by the sampled cross-checks.
# ---------------------------------------------------------------------------


def _api_chain(chain_comps: tuple, pieces: tuple):
    comps = [curves.TwistedComponent(*c) for c in chain_comps]
    chain = curves.CurveChain(tuple(comps))
    return bundles.ChainBundle(
        chain, tuple(bundles.EqLineBundle(c, *bnd) for c, bnd in zip(comps, pieces))
    )


def _api_check_convexity_instance(chain_comps: tuple, pieces: tuple, expected_h1: int) -> None:
    cb = _api_chain(chain_comps, pieces)
    rep = cohomology.h_twisted(cb, curves.MarkedPoint.X2, -1)
    assert rep.h1 == expected_h1, (chain_comps, pieces, rep.h1, expected_h1)


def _api_check_concavity_instance(chain_comps, pieces, expected_hc, expected_hd) -> None:
    cb = _api_chain(chain_comps, pieces)
    hc = cohomology.h_twisted(cb, curves.MarkedPoint.X2, -1).h1
    hd = cohomology.h_twisted(bundles.chain_dual(cb), curves.MarkedPoint.X1, -1).h0
    assert (hc, hd) == (expected_hc, expected_hd), (chain_comps, pieces, hc, hd)


# ---------------------------------------------------------------------------
# Criteria 1-3: smooth components, modest grids, straight through the API.
# ---------------------------------------------------------------------------


def _component_grid(max_ab: int, max_l: int):
    for a, b, l1, l2 in component_family(max_ab, max_l):
        comp = curves.TwistedComponent(a, b, l1, l2)
        for k1 in range(l1):
            for k2 in range(l2):
                yield comp, k1, k2


def suite_h1_vanishing(max_ab: int = 6, max_l: int = 6, max_d: int = 12) -> SuiteResult:
    res = SuiteResult("h1-vanishing")
    for comp, k1, k2 in _component_grid(max_ab, max_l):
        for d in range(0, max_d + 1):
            L = bundles.EqLineBundle(comp, k1, k2, d)
            h1, _ = cohomology.h1_component(L)
            res.instances += 1
            if h1 != 0:
                res.failures += 1
                res.first_counterexample = res.first_counterexample or {"bundle": str(L), "h1": h1}
    return res


def suite_h1_two_path(max_ab: int = 6, max_l: int = 6, max_d: int = 12) -> SuiteResult:
    res = SuiteResult("h1-two-path")
    for comp, k1, k2 in _component_grid(max_ab, max_l):
        for d in range(-max_d, max_d + 1):
            L = bundles.EqLineBundle(comp, k1, k2, d)
            n_direct, _ = cohomology.h1_negative_monomials(L)
            n_serre, _ = cohomology.h0_component(
                bundles.tensor(bundles.canonical_bundle(comp), bundles.dual(L))
            )
            res.instances += 1
            if n_direct != n_serre:
                res.failures += 1
                res.first_counterexample = res.first_counterexample or {
                    "bundle": str(L),
                    "direct": n_direct,
                    "serre": n_serre,
                }
    return res


def suite_riemann_roch(max_ab: int = 6, max_l: int = 6, max_d: int = 12) -> SuiteResult:
    res = SuiteResult("riemann-roch")
    for comp, k1, k2 in _component_grid(max_ab, max_l):
        for d in range(-max_d, max_d + 1):
            L = bundles.EqLineBundle(comp, k1, k2, d)
            h0, _ = cohomology.h0_component(L)
            h1, _ = cohomology.h1_component(L)
            chi = cohomology.riemann_roch_check(L)
            res.instances += 1
            if h0 - h1 != chi:
                res.failures += 1
                res.first_counterexample = res.first_counterexample or {
                    "bundle": str(L),
                    "h0": h0,
                    "h1": h1,
                    "riemann_roch": str(chi),
                }
    return res


# ---------------------------------------------------------------------------
# Criteria 4 and 5: chain enumerations on the fast core.
# ---------------------------------------------------------------------------


class _CompTables:
    """Per-component arrays for the chain sweeps, indexed by bundle ordinal.

    For each bundle (k1, k2, d) in the grid this precomputes the node
    characters and the (h0, h1, nonzero-at-x1, nonzero-at-x2, d == 0) tuples
    of the four roles a piece can play: plain, twisted by -x2 (last component
    of the convexity side), dualized (dual side), and dualized-then-twisted
    by -x1 (first component of the dual side).
    """

    __slots__ = ("bnds", "char1", "char2", "by1", "plain", "tw2", "dualx", "dtw1", "r2")

    def __init__(self, comp, d_lo: int, d_hi: int):
        a, b, l1, l2 = comp
        self.r2 = b * l1 * l2
        self.bnds = [
            (k1, k2, d) for k1 in range(l1) for k2 in range(l2) for d in range(d_lo, d_hi + 1)
        ]
        data = lambda bnd: (
            _h0(comp, bnd),
            _h1(comp, bnd),
            _x1_sol(comp, bnd),
            _x2_sol(comp, bnd),
            bnd[2] == 0,
        )
        self.char1 = [_char_x1(comp, bnd) for bnd in self.bnds]
        self.char2 = [_char_x2(comp, bnd) for bnd in self.bnds]
        self.plain = [data(bnd) for bnd in self.bnds]
        self.tw2 = [data(_twist(comp, bnd, 2, -1)) for bnd in self.bnds]
        self.dualx = [data(_dual(comp, bnd)) for bnd in self.bnds]
        self.dtw1 = [data(_twist(comp, _dual(comp, bnd), 1, -1)) for bnd in self.bnds]
        self.by1: dict[int, list[int]] = {}
        for t, ch in enumerate(self.char1):
            self.by1.setdefault(ch, []).append(t)


def _rank_le2(nz1: bool, nz2: bool, dep: bool) -> int:
    return int(nz1) + int(nz2) - int(dep)


def _h1_conv(tabs: list[_CompTables], idx: tuple[int, ...]) -> int:
    """h1 of the bundle twisted by -x2, via the normalization sequence."""
    n = len(idx)
    if n == 1:
        return tabs[0].tw2[idx[0]][1]
    if n == 2:
        p0 = tabs[0].plain[idx[0]]
        p1 = tabs[1].tw2[idx[1]]
        active = tabs[0].char2[idx[0]] == 0
        nz = active and (p0[3] or p1[2])
        return p0[1] + p1[1] + int(active) - int(nz)
    p0 = tabs[0].plain[idx[0]]
    p1 = tabs[1].plain[idx[1]]
    p2 = tabs[2].tw2[idx[2]]
    active1 = tabs[0].char2[idx[0]] == 0
    active2 = tabs[1].char2[idx[1]] == 0
    nz1 = active1 and (p0[3] or p1[2])
    nz2 = active2 and (p1[3] or p2[2])
    dep = nz1 and nz2 and p1[4] and p1[2] and p1[3] and not p0[3] and not p2[2]
    rank = _rank_le2(nz1, nz2, dep)
    return p0[1] + p1[1] + p2[1] + int(active1) + int(active2) - rank


def _h0_dual(tabs: list[_CompTables], idx: tuple[int, ...]) -> int:
    """h0 of the dualized bundle twisted by -x1."""
    n = len(idx)
    if n == 1:
        return tabs[0].dtw1[idx[0]][0]
    if n == 2:
        p0 = tabs[0].dtw1[idx[0]]
        p1 = tabs[1].dualx[idx[1]]
        active = tabs[0].char2[idx[0]] == 0  # dual character vanishes iff plain does
        nz = active and (p0[3] or p1[2])
        return p0[0] + p1[0] - int(nz)
    p0 = tabs[0].dtw1[idx[0]]
    p1 = tabs[1].dualx[idx[1]]
    p2 = tabs[2].dualx[idx[2]]
    active1 = tabs[0].char2[idx[0]] == 0
    active2 = tabs[1].char2[idx[1]] == 0
    nz1 = active1 and (p0[3] or p1[2])
    nz2 = active2 and (p1[3] or p2[2])
    dep = nz1 and nz2 and p1[4] and p1[2] and p1[3] and not p0[3] and not p2[2]
    rank = _rank_le2(nz1, nz2, dep)
    return p0[0] + p1[0] + p2[0] - rank


def _iter_balanced(tabs: list[_CompTables]):
    """Yield index tuples of balanced bundle assignments, chain length <= 3."""
    n = len(tabs)
    if n == 1:
        for t0 in range(len(tabs[0].bnds)):
            yield (t0,)
        return
    if n == 2:
        r0 = tabs[0].r2
        for t0 in range(len(tabs[0].bnds)):
            req = (-tabs[0].char2[t0]) % r0
            for t1 in tabs[1].by1.get(req, ()):
                yield (t0, t1)
        return
    r0, r1 = tabs[0].r2, tabs[1].r2
    for t0 in range(len(tabs[0].bnds)):
        req1 = (-tabs[0].char2[t0]) % r0
        for t1 in tabs[1].by1.get(req1, ()):
            req2 = (-tabs[1].char2[t1]) % r1
            for t2 in tabs[2].by1.get(req2, ()):
                yield (t0, t1, t2)


def _convexity_chunk(args) -> dict:
    max_ab, max_l, max_d, max_len, first = args
    if max_len > 3:
        raise ValueError("convexity sweep is specialized to chains of length <= 3")
    comps = component_family(max_ab, max_l)
    cache: dict[int, _CompTables] = {}
    tally = {
        "instances": 0,
        "failures": 0,
        "first": None,
        "rank2_pairs": 0,
        "rank2_failures": 0,
        "sampled": 0,
    }
    for chain in iter_chains(comps, max_len, first):
        for i in chain:
            if i not in cache:
                cache[i] = _CompTables(comps[i], 0, max_d)
        tabs = [cache[i] for i in chain]
        chain_comps = tuple(comps[i] for i in chain)
        n_good = 0
        n_line = 0
        for idx in _iter_balanced(tabs):
            h1 = _h1_conv(tabs, idx)
            tally["instances"] += 1
            n_line += 1
            if h1 == 0:
                n_good += 1
            else:
                tally["failures"] += 1
                if tally["first"] is None:
                    pieces = tuple(t.bnds[i] for t, i in zip(tabs, idx))
                    tally["first"] = {"chain": chain_comps, "pieces": pieces, "h1": h1}
            if tally["instances"] % SAMPLE_EVERY == 0:
                pieces = tuple(t.bnds[i] for t, i in zip(tabs, idx))
                _api_check_convexity_instance(chain_comps, pieces, h1)
                tally["sampled"] += 1
        # every grid bundle is semi-positive (d >= 0), so rank-2 split bundles
        # fail exactly when one of the two summands has nonzero h1
        tally["rank2_pairs"] += n_line * n_line
        tally["rank2_failures"] += n_line * n_line - n_good * n_good
    return tally


def suite_weak_convexity(
    max_ab: int = 4, max_l: int = 4, max_d: int = 8, max_len: int = 3, workers: int | None = None
) -> SuiteResult:
    """Semi-positive implies convex: h1(L(-x2)) = 0 for all d >= 0 chain bundles.

    Rank-1 bundles are enumerated exhaustively; rank-2 counts follow exactly
    by additivity of h1 over summands.
    """
    res = SuiteResult("thm-weak-convexity")
    comps = component_family(max_ab, max_l)
    args = [(max_ab, max_l, max_d, max_len, i) for i in range(len(comps))]
    for tally in _run_chunks(_convexity_chunk, args, workers):
        res.instances += tally["instances"]
        res.failures += tally["failures"]
        if res.first_counterexample is None and tally["first"] is not None:
            res.first_counterexample = _format_chain_cx(tally["first"])
        for key in ("rank2_pairs", "rank2_failures", "sampled"):
            res.details[key] = res.details.get(key, 0) + tally[key]
    res.failures += res.details.get("rank2_failures", 0)
    return res


def _concavity_chunk(args) -> dict:
    max_ab, max_l, max_d, max_len, first = args
    if max_len > 3:
        raise ValueError("concavity sweep is specialized to chains of length <= 3")
    comps = component_family(max_ab, max_l)
    cache: dict[int, _CompTables] = {}
    tally = {
        "instances": 0,
        "failures": 0,
        "first": None,
        "sampled": 0,
        # split-level convexity <-> concavity tallies: classes by
        # (h1(L(-x2)) == 0, h0(dual L(-x1)) == 0)
        "n_tt": 0,
        "n_tf": 0,
        "n_ft": 0,
        "n_ff": 0,
        "rank2_pairs": 0,
        "rank2_equiv_failures": 0,
    }
    for chain in iter_chains(comps, max_len, first):
        for i in chain:
            if i not in cache:
                cache[i] = _CompTables(comps[i], -max_d, max_d)
        tabs = [cache[i] for i in chain]
        chain_comps = tuple(comps[i] for i in chain)
        c_tt = c_tf = c_ft = c_ff = 0
        for idx in _iter_balanced(tabs):
            hc = _h1_conv(tabs, idx)
            hd = _h0_dual(tabs, idx)
            tally["instances"] += 1
            if hc != hd:
                tally["failures"] += 1
                if tally["first"] is None:
                    pieces = tuple(t.bnds[i] for t, i in zip(tabs, idx))
                    tally["first"] = {"chain": chain_comps, "pieces": pieces, "h1": hc, "h0_dual": hd}
            if hc == 0:
                if hd == 0:
                    c_tt += 1
                else:
                    c_tf += 1
            elif hd == 0:
                c_ft += 1
            else:
                c_ff += 1
            if tally["instances"] % SAMPLE_EVERY == 0:
                pieces = tuple(t.bnds[i] for t, i in zip(tabs, idx))
                _api_check_concavity_instance(chain_comps, pieces, hc, hd)
                tally["sampled"] += 1
        n = c_tt + c_tf + c_ft + c_ff
        x = c_tt + c_tf  # convex side count
        y = c_tt + c_ft  # concave side count
        tally["rank2_pairs"] += n * n
        tally["rank2_equiv_failures"] += x * x + y * y - 2 * c_tt * c_tt
        tally["n_tt"] += c_tt
        tally["n_tf"] += c_tf
        tally["n_ft"] += c_ft
        tally["n_ff"] += c_ff
    return tally


def suite_weak_concavity(
    max_ab: int = 4, max_l: int = 4, max_d: int = 8, max_len: int = 3, workers: int | None = None
) -> SuiteResult:
    """Convexity <-> concavity: h0(dual(L)(-x1)) = h1(L(-x2)) for every summand."""
    res = SuiteResult("thm-weak-concavity")
    comps = component_family(max_ab, max_l)
    args = [(max_ab, max_l, max_d, max_len, i) for i in range(len(comps))]
    for tally in _run_chunks(_concavity_chunk, args, workers):
        res.instances += tally["instances"]
        res.failures += tally["failures"]
        if res.first_counterexample is None and tally["first"] is not None:
            res.first_counterexample = _format_chain_cx(tally["first"])
        for key in ("sampled", "rank2_pairs", "rank2_equiv_failures", "n_tt", "n_tf", "n_ft", "n_ff"):
            res.details[key] = res.details.get(key, 0) + tally[key]
    res.failures += res.details.get("rank2_equiv_failures", 0)
    return res


def _format_chain_cx(first: dict) -> dict:
    out = {"chain": [list(c) for c in first["chain"]], "pieces": [list(p) for p in first["pieces"]]}
    for k, v in first.items():
        if k not in ("chain", "pieces"):
            out[k] = v
    return out


def _log_canonical_chunk(args) -> dict:
    max_ab, max_l, max_len, first = args
    comps = component_family(max_ab, max_l)
    tally = {"instances": 0, "failures": 0, "first": None, "sampled": 0}
    for chain in iter_chains(comps, max_len, first):
        chain_comps = tuple(comps[i] for i in chain)
        trivial = tuple((c, (0, 0, 0)) for c in chain_comps)
        h0, h1 = chain_h0_h1(trivial)
        om_x2 = ((chain_comps[0], _twist(chain_comps[0], (0, 0, 0), 1, -1)),) + trivial[1:]
        h0x, h1x = chain_h0_h1(om_x2)
        tally["instances"] += 1
        ok = (h0, h1, h0x, h1x) == (1, 0, 0, 0)
        if not ok:
            tally["failures"] += 1
            if tally["first"] is None:
                tally["first"] = {
                    "chain": [list(c) for c in chain_comps],
                    "log_canonical": (h0, h1),
                    "omega_x2": (h0x, h1x),
                }
        if tally["instances"] % SAMPLE_EVERY == 0:
            comps_api = [curves.TwistedComponent(*c) for c in chain_comps]
            cert = convexity.log_canonical_certificate(curves.CurveChain(tuple(comps_api)))
            assert (cert.h0_log_canonical, cert.h1_log_canonical) == (h0, h1)
            assert (cert.h0_omega_x2, cert.h1_omega_x2) == (h0x, h1x)
            tally["sampled"] += 1
    return tally


def suite_log_canonical(
    max_ab: int = 4, max_l: int = 4, max_len: int = 6, workers: int | None = None
) -> SuiteResult:
    res = SuiteResult("log-canonical")
    comps = component_family(max_ab, max_l)
    args = [(max_ab, max_l, max_len, i) for i in range(len(comps))]
    for tally in _run_chunks(_log_canonical_chunk, args, workers):
        res.instances += tally["instances"]
        res.failures += tally["failures"]
        if res.first_counterexample is None and tally["first"] is not None:
            res.first_counterexample = tally["first"]
        res.details["sampled"] = res.details.get("sampled", 0) + tally["sampled"]
    return res


# ---------------------------------------------------------------------------
# Criterion 7: rank formula against direct cohomology on single components.
# ---------------------------------------------------------------------------


def suite_rank_formula(max_ab: int = 4, max_l: int = 4, max_d: int = 8) -> SuiteResult:
    res = SuiteResult("rank-formula")
    deltas: dict[Fraction, int] = {}
    n_convex = 0
    for a, b, l1, l2 in component_family(max_ab, max_l):
        comp = curves.TwistedComponent(a, b, l1, l2)
        chain = curves.CurveChain((comp,))
        for k1 in range(l1):
            for k2 in range(l2):
                for d in range(-max_d, max_d + 1):
                    L = bundles.EqLineBundle(comp, k1, k2, d)
                    cb = bundles.ChainBundle(chain, (L,))
                    if cohomology.h_twisted(cb, curves.MarkedPoint.X2, -1).h1 != 0:
                        continue  # not weakly convex, formula not asserted
                    n_convex += 1
                    g1 = sectors.SectorAction((bundles.age_at(L, curves.MarkedPoint.X1),))
                    g2 = sectors.SectorAction((bundles.age_at(L, curves.MarkedPoint.X2),))
                    rf = sectors.rank_formula(L.degree, g1, g2)
                    direct = cohomology.h_twisted(
                        bundles.chain_dual(cb), curves.MarkedPoint.X1, -1
                    ).h1
                    res.instances += 1
                    ok = rf == direct and rf.denominator == 1 and rf >= 0
                    if not ok:
                        res.failures += 1
                        res.first_counterexample = res.first_counterexample or {
                            "bundle": str(L),
                            "rank_formula": str(rf),
                            "direct_h1": direct,
                        }
                    deltas[rf - direct] = deltas.get(rf - direct, 0) + 1
    # rank-2 split bundles: both the formula and the direct rank are additive
    # over summands, so pairs fail only through nonzero per-summand deltas
    good_pairs = sum(
        n1 * deltas.get(-delta, 0) for delta, n1 in deltas.items()
    )
    res.details["rank2_pairs"] = n_convex * n_convex
    res.details["rank2_failures"] = n_convex * n_convex - good_pairs
    res.failures += res.details["rank2_failures"]
    return res


def suite_rank2_direct(max_ab: int = 3, max_l: int = 2, max_d: int = 4) -> SuiteResult:
    """Small direct sweep of genuine rank-2 split bundles through the full API."""
    res = SuiteResult("rank2-direct")
    for a, b, l1, l2 in component_family(max_ab, max_l):
        comp = curves.TwistedComponent(a, b, l1, l2)
        chain = curves.CurveChain((comp,))
        line_bundles = [
            bundles.EqLineBundle(comp, k1, k2, d)
            for k1 in range(l1)
            for k2 in range(l2)
            for d in range(-max_d, max_d + 1)
        ]
        for L1, L2 in itertools.combinations_with_replacement(line_bundles, 2):
            split = bundles.SplitBundle(
                (bundles.ChainBundle(chain, (L1,)), bundles.ChainBundle(chain, (L2,)))
            )
            if not convexity.is_weakly_convex_on(split):
                continue
            g1 = sectors.SectorAction(
                tuple(bundles.age_at(L, curves.MarkedPoint.X1) for L in (L1, L2))
            )
            g2 = sectors.SectorAction(
                tuple(bundles.age_at(L, curves.MarkedPoint.X2) for L in (L1, L2))
            )
            rf = sectors.rank_formula(L1.degree + L2.degree, g1, g2)
            direct = sum(
                cohomology.h_twisted(
                    bundles.chain_dual(bundles.ChainBundle(chain, (L,))),
                    curves.MarkedPoint.X1,
                    -1,
                ).h1
                for L in (L1, L2)
            )
            res.instances += 1
            if rf != direct:
                res.failures += 1
                res.first_counterexample = res.first_counterexample or {
                    "bundles": [str(L1), str(L2)],
                    "rank_formula": str(rf),
                    "direct_h1": direct,
                }
    return res


# ---------------------------------------------------------------------------
# Criterion 8: age-sum and sign-consistency identities on random sectors.
# ---------------------------------------------------------------------------


def suite_age_sum(trials: int = 10000, max_den: int = 12, seed: int = 0) -> SuiteResult:
    res = SuiteResult("age-sum")
    rng = random.Random(seed)
    for _ in range(trials):
        rank = rng.randint(1, 5)
        weights = []
        for _ in range(rank):
            den = rng.randint(1, max_den)
            weights.append(Fraction(rng.randint(0, den - 1), den))
        s = sectors.SectorAction(tuple(weights))
        res.instances += 1
        lhs = sectors.age(s) + sectors.age(sectors.inverse_sector(s))
        rhs = s.rank - s.rank_fixed
        ok = lhs == rhs
        # sign-consistency: phase of the cycle sign times the residual ages
        # equals the invariant-level phase e^{i*pi*(beta_det + rank)}
        g2 = sectors.SectorAction(tuple(sorted(weights, key=str)))
        if rng.random() < 0.5:
            beta_det = Fraction(rng.randint(-12, 12), rng.randint(1, 4))
        else:
            beta_det = sectors.age(s) - sectors.age(sectors.inverse_sector(g2)) + rng.randint(0, 6)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            sig = sectors.sign_cycle(beta_det, s, g2)
        lhs_phase = sig.phase * Phase(
            sectors.age(s) + sectors.age(g2) + g2.rank_fixed
        )
        rhs_phase = sectors.sign_invariant(beta_det, s.rank)
        ok = ok and lhs_phase == rhs_phase
        if not ok:
            res.failures += 1
            res.first_counterexample = res.first_counterexample or {
                "weights": [str(w) for w in weights],
                "lhs": str(lhs),
                "rhs": str(rhs),
            }
    return res


# ---------------------------------------------------------------------------
# Criteria 9 and 10: state-space pairings and the operator identity.
# ---------------------------------------------------------------------------


def wps_model_family(max_n: int = 5, max_w: int = 4, max_r: int = 2, max_k: int = 4):
    for n in range(2, max_n + 1):
        for weights in itertools.combinations_with_replacement(range(1, max_w + 1), n):
            for r in range(0, max_r + 1):
                for degrees in itertools.combinations_with_replacement(range(1, max_k + 1), r):
                    yield wps.WPSModel(weights, degrees)


def suite_pairing_comparison(max_n: int = 5, max_w: int = 4, max_r: int = 2, max_k: int = 4) -> SuiteResult:
    res = SuiteResult("pairing-comparison")
    for model in wps_model_family(max_n, max_w, max_r, max_k):
        pairing = wps.verify_pairing_comparison(model)
        iso = wps.verify_delta_iso_dims(model)
        # sector-level age-sum identity, checked alongside
        ages_ok = all(
            sectors.age(s.fiber_weights) + sectors.age(sectors.inverse_sector(s.fiber_weights))
            == model.rank - s.rank_fixed
            for s in wps.enumerate_sectors(model)
        )
        res.instances += 1
        if not (pairing.ok and iso.ok and ages_ok):
            res.failures += 1
            res.first_counterexample = res.first_counterexample or {
                "model": str(model),
                "pairing_failures": pairing.failures[:1],
                "iso_ok": iso.ok,
                "ages_ok": ages_ok,
            }
        res.details["pairing_checks"] = res.details.get("pairing_checks", 0) + pairing.checks
    return res


def qsd_model_family(max_dim: int = 6) -> list[wps.WPSModel]:
    candidates = [
        wps.WPSModel((1, 1), (2,)),
        wps.WPSModel((1, 1, 1), (3,)),
        wps.WPSModel((1, 1, 2, 2), (1,)),
        wps.WPSModel((1, 2), (1, 1)),
        wps.WPSModel((1, 1, 2), (2, 1)),
        wps.WPSModel((1, 2, 3), (1,)),
        wps.WPSModel((1, 1, 1, 1), (2, 2)),
        wps.WPSModel((1, 3), ()),
    ]
    return [m for m in candidates if len(series.compact_type_basis(m)) <= max_dim]


def suite_qsd_operator(trials: int = 1000, order: int = 4, max_dim: int = 6, seed: int = 0) -> SuiteResult:
    res = SuiteResult("qsd-operator")
    rng = random.Random(seed)
    models = qsd_model_family(max_dim)
    for _ in range(trials):
        model = rng.choice(models)
        n = rng.randint(1, order)
        table = series.random_invariant_table(model, n, rng, n_classes=rng.randint(1, 3), a_max=rng.randint(0, 3))
        report = series.verify_qsd_operator_identity(table, model, n)
        res.instances += 1
        res.details["coefficient_checks"] = res.details.get("coefficient_checks", 0) + report.checks
        if not report.ok:
            res.failures += 1
            res.first_counterexample = res.first_counterexample or {
                "model": str(model),
                "violation": report.first_violation,
            }
    return res


# ---------------------------------------------------------------------------
# Criterion 11: brute-force isotropy oracle.
# ---------------------------------------------------------------------------


def suite_isotropy_oracle(max_cd: int = 12) -> SuiteResult:
    res = SuiteResult("isotropy-oracle")
    for c in range(1, max_cd + 1):
        for d in range(1, max_cd + 1):
            comp = curves.present(c, d)
            counts = curves.brute_force_isotropy_counts(comp)
            res.instances += 1
            ok = (
                counts["x1"] == c == curves.isotropy_order(comp, curves.MarkedPoint.X1)
                and counts["x2"] == d == curves.isotropy_order(comp, curves.MarkedPoint.X2)
                and counts["generic"] == 1 == curves.isotropy_order(comp)
            )
            if not ok:
                res.failures += 1
                res.first_counterexample = res.first_counterexample or {
                    "c": c,
                    "d": d,
                    "component": str(comp),
                    "counts": counts,
                }
    return res


def suite_age_oracle(max_ab: int = 4, max_l: int = 4, max_d: int = 6) -> SuiteResult:
    """Closed-form ages against the generator-hunting brute force."""
    res = SuiteResult("age-oracle")
    for a, b, l1, l2 in component_family(max_ab, max_l):
        comp = curves.TwistedComponent(a, b, l1, l2)
        for k1 in range(l1):
            for k2 in range(l2):
                for d in range(-max_d, max_d + 1):
                    L = bundles.EqLineBundle(comp, k1, k2, d)
                    for pt in (curves.MarkedPoint.X1, curves.MarkedPoint.X2):
                        res.instances += 1
                        fast = bundles.age_at(L, pt)
                        slow = bundles.brute_force_age(L, pt)
                        if fast != slow:
                            res.failures += 1
                            res.first_counterexample = res.first_counterexample or {
                                "bundle": str(L),
                                "point": pt.value,
                                "formula": str(fast),
                                "oracle": str(slow),
                            }
    return res


# ---------------------------------------------------------------------------
# Runner plumbing.
# ---------------------------------------------------------------------------


def _run_chunks(fn, args_list, workers: int | None):
    workers = default_workers() if workers is None else max(1, workers)
    if workers == 1 or len(args_list) <= 1:
        for args in args_list:
            yield fn(args)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(fn, args_list)


SUITES = {
    "h1-vanishing": suite_h1_vanishing,
    "h1-two-path": suite_h1_two_path,
    "riemann-roch": suite_riemann_roch,
    "thm-weak-convexity": suite_weak_convexity,
    "thm-weak-concavity": suite_weak_concavity,
    "log-canonical": suite_log_canonical,
    "rank-formula": suite_rank_formula,
    "rank2-direct": suite_rank2_direct,
    "age-sum": suite_age_sum,
    "pairing-comparison": suite_pairing_comparison,
    "qsd-operator": suite_qsd_operator,
    "isotropy-oracle": suite_isotropy_oracle,
    "age-oracle": suite_age_oracle,
}
