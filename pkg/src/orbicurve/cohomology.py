"""Exact cohomology of equivariant line bundles on components and chains.

Section spaces on a smooth component are spanned by invariant monomials:
H^0 of O^{k1,k2}(d) counts pairs (i, j) of non-negative integers with
a*i + b*j = d, i = k1 (mod l1), j = k2 (mod l2).  H^1 is computed by two
independent routes that must agree:

  * Serre route: h^1(L) = h^0(omega tensor dual(L)) through the bundle
    operations, with omega the canonical bundle;
  * direct route: count "negative" monomials x^-p y^-q with p, q >= 1,
    a*p + b*q = -d and the induced congruences -p = k1 (l1), -q = k2 (l2).

On a chain, restriction to the normalization gives the exact sequence whose
connecting map F evaluates sections at the nodes; h^0 = dim ker F and
h^1 = sum of component h^1 plus dim coker F.  A monomial x^i y^j is nonzero
at x1 iff j = 0 and at x2 iff i = 0, so F has at most two +-1 entries per
row and its rank is computed exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bundles import (
    ChainBundle,
    EqLineBundle,
    acts_trivially_at,
    age_at,
    canonical_bundle,
    chain_twist,
    dual,
    tensor,
)
from .curves import MarkedPoint
from .linalg import mat_rank


class InternalInconsistency(RuntimeError):
    """Two independent computations of the same number disagreed: a bug."""


@dataclass(frozen=True)
class SectionBasis:
    """Exponent pairs of basis monomials; negative pairs describe H^1 classes."""

    monomials: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.monomials)

    def nonzero_at(self, pt: MarkedPoint) -> list[int]:
        """Indices of basis monomials with nonzero value at the given point."""
        if pt is MarkedPoint.X1:
            return [n for n, (_, j) in enumerate(self.monomials) if j == 0]
        if pt is MarkedPoint.X2:
            return [n for n, (i, _) in enumerate(self.monomials) if i == 0]
        raise ValueError(f"unknown marked point {pt!r}")


@dataclass(frozen=True)
class CohomologyReport:
    h0: int
    h1: int
    euler_char: Fraction
    method: str

    def __post_init__(self):
        if self.h0 < 0 or self.h1 < 0:
            raise ValueError("cohomology dimensions must be non-negative")


def h0_component(L: EqLineBundle) -> tuple[int, SectionBasis]:
    a, b, l1, l2 = L.comp.a, L.comp.b, L.comp.l1, L.comp.l2
    monos = []
    if L.d >= 0:
        for i in range(0, L.d // a + 1):
            if i % l1 != L.k1:
                continue
            rem = L.d - a * i
            if rem % b == 0 and (rem // b) % l2 == L.k2:
                monos.append((i, rem // b))
    basis = SectionBasis(tuple(monos))
    return len(basis), basis


def h1_negative_monomials(L: EqLineBundle) -> tuple[int, SectionBasis]:
    a, b, l1, l2 = L.comp.a, L.comp.b, L.comp.l1, L.comp.l2
    monos = []
    if L.d <= -(a + b):
        for p in range(1, (-L.d) // a + 1):
            if (-p) % l1 != L.k1:
                continue
            rem = -L.d - a * p
            if rem >= b and rem % b == 0 and (-(rem // b)) % l2 == L.k2:
                monos.append((-p, -(rem // b)))
    return len(monos), SectionBasis(tuple(monos))


def h1_component(L: EqLineBundle) -> tuple[int, SectionBasis]:
    n_direct, basis = h1_negative_monomials(L)
    n_serre, _ = h0_component(tensor(canonical_bundle(L.comp), dual(L)))
    if n_direct != n_serre:
        raise InternalInconsistency(
            f"h1 routes disagree on {L}: direct {n_direct}, Serre {n_serre}"
        )
    return n_direct, basis


def riemann_roch_check(L: EqLineBundle) -> Fraction:
    """deg(L) + 1 - age_x1(L) - age_x2(L); equals h0 - h1 on every bundle."""
    return L.degree + 1 - age_at(L, MarkedPoint.X1) - age_at(L, MarkedPoint.X2)


def report_component(L: EqLineBundle) -> CohomologyReport:
    h0, _ = h0_component(L)
    h1, _ = h1_component(L)
    return CohomologyReport(h0, h1, riemann_roch_check(L), method="oracle")


def report_riemann_roch(L: EqLineBundle) -> CohomologyReport:
    """Alternative report: h1 through Serre duality, h0 from the Euler characteristic."""
    h1, _ = h0_component(tensor(canonical_bundle(L.comp), dual(L)))
    chi = riemann_roch_check(L)
    h0 = chi + h1
    if h0.denominator != 1 or h0 < 0:
        raise InternalInconsistency(f"Euler characteristic route broke on {L}: chi={chi}, h1={h1}")
    return CohomologyReport(int(h0), h1, chi, method="riemann-roch")


def _node_rows(B: ChainBundle) -> tuple[list[list[Fraction]], int, int]:
    """Node evaluation matrix of the normalization sequence.

    Returns (rows, n_active_nodes, total_h0).  Columns index the concatenated
    component section bases; row j (for an active node) takes the value of the
    section on component j at its x2 end minus the value on component j+1 at
    its x1 end.  Inactive nodes (isotropy acting nontrivially on the fiber)
    contribute no row: the fiber has no invariant sections there.
    """
    bases = []
    offsets = [0]
    for piece in B.pieces:
        _, basis = h0_component(piece)
        bases.append(basis)
        offsets.append(offsets[-1] + len(basis))
    total = offsets[-1]
    rows: list[list[Fraction]] = []
    n_active = 0
    for j, k in B.chain.nodes:
        left_trivial = acts_trivially_at(B.pieces[j], MarkedPoint.X2)
        right_trivial = acts_trivially_at(B.pieces[k], MarkedPoint.X1)
        if left_trivial != right_trivial:
            raise ValueError(f"node {j}: unbalanced fiber characters")
        if not left_trivial:
            continue
        n_active += 1
        row = [Fraction(0)] * total
        for n in bases[j].nonzero_at(MarkedPoint.X2):
            row[offsets[j] + n] = Fraction(1)
        for n in bases[k].nonzero_at(MarkedPoint.X1):
            row[offsets[k] + n] = Fraction(-1)
        rows.append(row)
    return rows, n_active, total


def h_chain(B: ChainBundle) -> CohomologyReport:
    violations = B.validate()
    if violations:
        raise ValueError("invalid chain bundle: " + "; ".join(violations))
    h1_comps = sum(h1_component(p)[0] for p in B.pieces)
    rows, n_active, total_h0 = _node_rows(B)
    rank = mat_rank(rows) if rows else 0
    h0 = total_h0 - rank
    h1 = h1_comps + (n_active - rank)
    euler = sum((riemann_roch_check(p) for p in B.pieces), Fraction(0)) - n_active_euler(B)
    return CohomologyReport(h0, h1, euler, method="chain")


def n_active_euler(B: ChainBundle) -> int:
    """Number of nodes whose fiber carries invariant sections (gluing conditions)."""
    n = 0
    for j, _ in B.chain.nodes:
        if acts_trivially_at(B.pieces[j], MarkedPoint.X2):
            n += 1
    return n


def h_twisted(B: ChainBundle, pt: MarkedPoint, sign: int) -> CohomologyReport:
    return h_chain(chain_twist(B, pt, sign))
