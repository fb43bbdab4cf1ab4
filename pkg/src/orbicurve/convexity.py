"""Decision procedures for weak semi-positivity, weak convexity and weak concavity.

For a split bundle E = L_1 + ... + L_r on a two-pointed chain:
  * weakly semi-positive: every summand has non-negative degree on every
    component (the per-component reading, which is what the vanishing
    argument actually uses);
  * weakly convex: h^1(C, L_i(-x2)) = 0 for every summand;
  * the dual is weakly concave: h^0(C, dual(L_i)(-x1)) = 0 for every summand.

Semi-positivity implies convexity, and convexity of E is equivalent to
concavity of its dual; both facts are verified here rather than assumed.
"""
from __future__ import annotations

from dataclasses import dataclass

from .bundles import SplitBundle, chain_dual, chain_twist, trivial_chain_bundle
from .cohomology import h_chain, h_twisted
from .curves import CurveChain, MarkedPoint


class CertificateError(RuntimeError):
    """A certificate condition failed; this signals an implementation bug."""


@dataclass
class ConvexityVerdict:
    weakly_semipositive: bool
    weakly_convex: bool
    weakly_concave_dual: bool
    witnesses: list[tuple[int, int]]  # (summand, component) indices violating semi-positivity


def is_weakly_semipositive(B: SplitBundle) -> tuple[bool, list[tuple[int, int]]]:
    _check_valid(B)
    witnesses = [
        (i, j)
        for i, summand in enumerate(B.summands)
        for j, piece in enumerate(summand.pieces)
        if piece.d < 0
    ]
    return not witnesses, witnesses


def is_weakly_convex_on(B: SplitBundle) -> bool:
    _check_valid(B)
    return all(h_twisted(s, MarkedPoint.X2, -1).h1 == 0 for s in B.summands)


def is_weakly_concave_on_dual(B: SplitBundle) -> bool:
    _check_valid(B)
    return all(h_twisted(chain_dual(s), MarkedPoint.X1, -1).h0 == 0 for s in B.summands)


def convexity_verdict(B: SplitBundle) -> ConvexityVerdict:
    semipos, witnesses = is_weakly_semipositive(B)
    convex = is_weakly_convex_on(B)
    concave = is_weakly_concave_on_dual(B)
    verdict = ConvexityVerdict(semipos, convex, concave, witnesses)
    # Post-hoc theorem assertions, never used as computational shortcuts.
    if verdict.weakly_semipositive and not verdict.weakly_convex:
        raise CertificateError(f"semi-positive bundle failed convexity: {B}")
    if verdict.weakly_convex != verdict.weakly_concave_dual:
        raise CertificateError(f"convexity/concavity mismatch: {B}")
    return verdict


def _check_valid(B: SplitBundle) -> None:
    violations = B.validate()
    if violations:
        raise ValueError("invalid split bundle: " + "; ".join(violations))


@dataclass
class LogCanonicalCertificate:
    chain_length: int
    per_component_trivial: bool
    h0_log_canonical: int
    h1_log_canonical: int
    h0_omega_x2: int
    h1_omega_x2: int


def log_canonical_certificate(chain: CurveChain) -> LogCanonicalCertificate:
    """Certify that omega(x1+x2) is trivial on the chain.

    Checks, with exact chain cohomology:
      * omega(x1+x2) restricts to the trivial equivariant bundle on every
        component (so the all-trivial chain bundle represents it);
      * h^0(omega(x1+x2)) = 1 and h^1 = 0;
      * h^0(omega(x2)) = h^1(omega(x2)) = 0, the conditions that make the
        residue trivialization work in families.
    """
    from .bundles import EqLineBundle, canonical_bundle, point_bundle, tensor

    for j, comp in enumerate(chain.components):
        log_can = tensor(
            tensor(canonical_bundle(comp), point_bundle(comp, MarkedPoint.X1)),
            point_bundle(comp, MarkedPoint.X2),
        )
        if log_can != EqLineBundle(comp, 0, 0, 0):
            raise CertificateError(f"component {j}: omega(x1+x2) = {log_can} is not trivial")

    log_chain = trivial_chain_bundle(chain)
    rep = h_chain(log_chain)
    omega_x2 = chain_twist(log_chain, MarkedPoint.X1, -1)  # omega(x2) = omega(x1+x2) - x1
    rep2 = h_chain(omega_x2)
    cert = LogCanonicalCertificate(
        chain_length=len(chain),
        per_component_trivial=True,
        h0_log_canonical=rep.h0,
        h1_log_canonical=rep.h1,
        h0_omega_x2=rep2.h0,
        h1_omega_x2=rep2.h1,
    )
    if rep.h0 != 1 or rep.h1 != 0:
        raise CertificateError(f"log canonical bundle not trivial on chain: h0={rep.h0}, h1={rep.h1}")
    if rep2.h0 != 0 or rep2.h1 != 0:
        raise CertificateError(f"omega(x2) cohomology nonzero: h0={rep2.h0}, h1={rep2.h1}")
    return cert
