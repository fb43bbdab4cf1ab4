"""State spaces of weighted projective ambients with split bundles.

The ambient is the weighted projective stack with weights (w_1..w_n); the
bundle is a sum of O(k_j), k_j > 0.  Twisted sectors are indexed by rational
rotation numbers f in [0,1) fixing at least one coordinate; the sector with
rotation f is the sub-weighted-projective space on the fixed weights, its
cohomology the truncated polynomial ring Q[H]/(H^{dim+1}) with exact top
integral 1/(product of fixed weights).

Three pairings are computed exactly on these rings:
  * the orbifold Poincare pairing (sector f couples with sector 1-f);
  * the ambient pairing of the cut-out substack, which inserts the Euler
    factor of the fixed bundle part e = (prod k_j) * H^{rank_fixed};
  * the compact-type pairing of the dual bundle total space, which inserts
    the dual Euler factor (-1)^{rank_fixed} * e.

The transformation delta_tilde multiplies a class supported on the sector
with rotation f by the exact phase e^{i*pi*age_f} and reinterprets it as an
ambient class; the verification routines below confirm that it matches the
pairings up to the global sign (-1)^rank and has the right image dimensions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .foundation import Phase, PhasedScalar
from .linalg import mat_nullspace, mat_rank
from .sectors import SectorAction, age


@dataclass(frozen=True)
class WPSModel:
    weights: tuple[int, ...]
    bundle_degrees: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        object.__setattr__(self, "bundle_degrees", tuple(int(k) for k in self.bundle_degrees))
        if len(self.weights) < 2 or any(w < 1 for w in self.weights):
            raise ValueError("need at least two positive weights")
        if any(k < 1 for k in self.bundle_degrees):
            raise ValueError("bundle degrees must be positive")

    @property
    def dim(self) -> int:
        return len(self.weights) - 1

    @property
    def rank(self) -> int:
        return len(self.bundle_degrees)

    def __str__(self) -> str:
        w = ",".join(map(str, self.weights))
        k = ",".join(map(str, self.bundle_degrees))
        return f"P({w})/O({k})" if self.bundle_degrees else f"P({w})"


@dataclass(frozen=True)
class Sector:
    f: Fraction
    fixed_indices: tuple[int, ...]
    fiber_weights: SectorAction

    @property
    def dim(self) -> int:
        return len(self.fixed_indices) - 1

    @property
    def rank_fixed(self) -> int:
        return self.fiber_weights.rank_fixed

    @property
    def age(self) -> Fraction:
        return age(self.fiber_weights)


def sector_at(m: WPSModel, f: Fraction) -> Sector:
    f = Fraction(f) % 1
    fixed = tuple(i for i, w in enumerate(m.weights) if (f * w).denominator == 1)
    if not fixed:
        raise ValueError(f"rotation {f} fixes no coordinate of {m}")
    fibers = SectorAction(tuple((f * k) % 1 for k in m.bundle_degrees))
    return Sector(f, fixed, fibers)


def enumerate_sectors(m: WPSModel) -> list[Sector]:
    rotations = {Fraction(0)}
    for w in m.weights:
        for k in range(w):
            rotations.add(Fraction(k, w))
    return [sector_at(m, f) for f in sorted(rotations)]


def euler_factor(m: WPSModel, s: Sector) -> tuple[int, int]:
    """e(E_f) = coeff * H^power on the sector: the fixed summands contribute k_j*H."""
    coeff = 1
    power = 0
    for k, w in zip(m.bundle_degrees, s.fiber_weights.weights):
        if w == 0:
            coeff *= k
            power += 1
    return coeff, power


def dual_euler_factor(m: WPSModel, s: Sector) -> tuple[int, int]:
    coeff, power = euler_factor(m, s)
    return (-1) ** power * coeff, power


def integrate(m: WPSModel, s: Sector, power: int) -> Fraction:
    """Integral of H^power over the sector; nonzero only in top degree."""
    if power > s.dim:
        raise ValueError(f"H^{power} exceeds sector dimension {s.dim}")
    if power < s.dim:
        return Fraction(0)
    denom = 1
    for i in s.fixed_indices:
        denom *= m.weights[i]
    return Fraction(1, denom)


class StateElement:
    """A sector-graded polynomial class: rotation f -> coefficients of 1, H, H^2, ...

    Coefficients are Fractions or PhasedScalars; each sector's list is
    truncated at the sector dimension.
    """

    def __init__(self, model: WPSModel, parts: dict[Fraction, list] | None = None):
        self.model = model
        self.parts: dict[Fraction, list] = {}
        for f, coeffs in (parts or {}).items():
            f = Fraction(f) % 1
            dim = sector_at(model, f).dim
            coeffs = list(coeffs)
            if len(coeffs) > dim + 1:
                raise ValueError(f"class of degree > {dim} on sector {f}")
            coeffs += [Fraction(0)] * (dim + 1 - len(coeffs))
            self.parts[f] = coeffs

    @classmethod
    def basis(cls, model: WPSModel, f: Fraction, power: int) -> "StateElement":
        dim = sector_at(model, f).dim
        coeffs = [Fraction(0)] * (dim + 1)
        coeffs[power] = Fraction(1)
        return cls(model, {f: coeffs})

    def __add__(self, other: "StateElement") -> "StateElement":
        out = {f: list(c) for f, c in self.parts.items()}
        for f, coeffs in other.parts.items():
            if f in out:
                out[f] = [a + b for a, b in zip(out[f], coeffs)]
            else:
                out[f] = list(coeffs)
        return StateElement(self.model, out)

    def scale(self, c) -> "StateElement":
        return StateElement(
            self.model, {f: [c * x for x in coeffs] for f, coeffs in self.parts.items()}
        )

    def coeff(self, f: Fraction, power: int):
        f = Fraction(f) % 1
        if f not in self.parts:
            return Fraction(0)
        return self.parts[f][power]


def _is_zero(x) -> bool:
    if isinstance(x, PhasedScalar):
        return x.is_zero()
    return x == 0


def _pair_sectorwise(m: WPSModel, alpha: StateElement, beta: StateElement, euler) -> PhasedScalar:
    """Common core of the three pairings: sum over f of the top-degree part of
    alpha_f * beta_{1-f} * (extra Euler factor from `euler`)."""
    acc = PhasedScalar()
    for f, a_coeffs in alpha.parts.items():
        g = (1 - f) % 1
        if g not in beta.parts:
            continue
        s = sector_at(m, f)
        e_coeff, e_power = euler(m, s)
        top = s.dim - e_power
        if top < 0:
            continue
        vol = integrate(m, s, s.dim)
        b_coeffs = beta.parts[g]
        for p, a in enumerate(a_coeffs):
            q = top - p
            if not (0 <= q < len(b_coeffs)):
                continue
            b = b_coeffs[q]
            if _is_zero(a) or _is_zero(b):
                continue
            acc = acc + PhasedScalar.coerce(a) * PhasedScalar.coerce(b) * (e_coeff * vol)
    return acc


def _no_euler(m: WPSModel, s: Sector) -> tuple[int, int]:
    return 1, 0


def _specialize(x: PhasedScalar):
    return x.to_rational() if x.is_rational() else x


def cr_pairing(m: WPSModel, alpha: StateElement, beta: StateElement):
    """Orbifold Poincare pairing; rational for rational inputs."""
    return _specialize(_pair_sectorwise(m, alpha, beta, _no_euler))


def ambient_pairing(m: WPSModel, alpha: StateElement, beta: StateElement):
    """Pairing of ambient classes on the cut-out substack, via the Euler factor."""
    return _specialize(_pair_sectorwise(m, alpha, beta, euler_factor))


def ct_pairing(m: WPSModel, alpha: StateElement, beta: StateElement):
    """Compact-type pairing on the dual bundle total space (classes given by
    their zero-section preimages)."""
    return _specialize(_pair_sectorwise(m, alpha, beta, dual_euler_factor))


def delta_tilde(m: WPSModel, gamma: StateElement) -> StateElement:
    """Phase-corrected transport of a compact-type class to an ambient class."""
    out: dict[Fraction, list] = {}
    for f, coeffs in gamma.parts.items():
        phase = PhasedScalar.from_phase(Phase(sector_at(m, f).age))
        out[f] = [phase * PhasedScalar.coerce(c) for c in coeffs]
    return StateElement(m, out)


@dataclass
class PairingComparisonReport:
    model: WPSModel
    checks: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_pairing_comparison(m: WPSModel) -> PairingComparisonReport:
    """Check <delta(g1), delta(g2)>_ambient = (-1)^rank <g1, g2>_compact-type
    over the full spanning set of sector monomials."""
    report = PairingComparisonReport(m)
    sign = Fraction((-1) ** m.rank)
    sectors = enumerate_sectors(m)
    basis = [(s.f, p) for s in sectors for p in range(s.dim + 1)]
    elems = [StateElement.basis(m, f, p) for f, p in basis]
    transported = [delta_tilde(m, g) for g in elems]
    for i, (f1, p1) in enumerate(basis):
        for j, (f2, p2) in enumerate(basis):
            lhs = PhasedScalar.coerce(ambient_pairing(m, transported[i], transported[j]))
            rhs = PhasedScalar.coerce(ct_pairing(m, elems[i], elems[j])) * sign
            report.checks += 1
            if lhs != rhs:
                report.failures.append(
                    {"g1": (f1, p1), "g2": (f2, p2), "lhs": str(lhs), "rhs": str(rhs)}
                )
    return report


@dataclass
class SectorDimReport:
    f: Fraction
    image_dim: int
    ambient_pairing_rank: int
    kernel_stable: bool

    @property
    def ok(self) -> bool:
        return self.image_dim == self.ambient_pairing_rank and self.kernel_stable


@dataclass
class DeltaIsoReport:
    model: WPSModel
    sectors: list[SectorDimReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.sectors)


def _euler_mult_matrix(m: WPSModel, s: Sector) -> list[list[Fraction]]:
    """Matrix of multiplication by e(E_f) on Q[H]/(H^{dim+1}), columns H^p."""
    coeff, power = euler_factor(m, s)
    n = s.dim + 1
    mat = [[Fraction(0)] * n for _ in range(n)]
    for p in range(n):
        if p + power < n:
            mat[p + power][p] = Fraction(coeff)
    return mat


def verify_delta_iso_dims(m: WPSModel) -> DeltaIsoReport:
    """Per sector: image dimension of the Euler-factor multiplication equals
    the rank of the ambient pairing block, and the pairing kernel is stable
    under that multiplication (well-definedness of the quotient model)."""
    report = DeltaIsoReport(m)
    for s in enumerate_sectors(m):
        mult = _euler_mult_matrix(m, s)
        image_dim = mat_rank(mult)
        partner = sector_at(m, (1 - s.f) % 1)
        block = [
            [
                PhasedScalar.coerce(
                    ambient_pairing(
                        m, StateElement.basis(m, s.f, p), StateElement.basis(m, partner.f, q)
                    )
                ).to_rational()
                for q in range(partner.dim + 1)
            ]
            for p in range(s.dim + 1)
        ]
        rank = mat_rank(block)
        transpose = [list(r) for r in zip(*block)] if block and block[0] else []
        kernel = mat_nullspace(transpose) if transpose else []
        stable = True
        for v in kernel:
            image = [sum(mult[i][j] * v[j] for j in range(len(v))) for i in range(len(v))]
            paired = [
                sum(image[p] * block[p][q] for p in range(len(image)))
                for q in range(partner.dim + 1)
            ]
            if any(x != 0 for x in paired):
                stable = False
        report.sectors.append(SectorDimReport(s.f, image_dim, rank, stable))
    return report
