"""Numerical verification of the stability inequalities.

Each check measures the left-hand side of one inequality (a geometric gap
between two maps or domains), measures the right-hand norms of the datum
difference, assembles the explicit constant from the hypothesis bounds, and
reports the ratio lhs / (K * rhs).  A check passes when the ratio does not
exceed 1 + PASS_TOL.

Measurement conventions
-----------------------
* Norms written over an arclength or angle interval are measured with plain
  (non-wrapping) distances on the closed interval, grid endpoints included.
* Seminorms are exact maxima over the sample pairs and therefore lower
  bounds of the continuum seminorms; sup norms of smooth periodic fields are
  evaluated on the trigonometric interpolant (oversampled and polished), so
  that right-hand sides are not understated relative to left-hand secants.
* Class constants (m, M0, M1) default to values measured from the data,
  which gives the tightest legitimate check; explicit hypothesis values can
  be supplied and are used verbatim when the data actually satisfies them,
  otherwise the check falls back to measured values and says so in ``notes``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from . import norms
from ._spectral import TrigInterpolant, trig_sup_abs
from .boundary import BoundaryFunction, build_cumulative
from .conformal import ConformalMap, boundary_grid, forward_operator
from .errors import InvalidInputError
from .families import disk_for_constant
from .geometry import (align_rotation, boundary_of, hausdorff_distance,
                       inradius_circumradius, largest_inscribed_circle,
                       smallest_enclosing_circle)

TWO_PI = 2.0 * np.pi
PASS_TOL = 1e-9
# Left-hand sides at or below this absolute level count as exactly zero; they
# are float dust from symmetric configurations (identical inputs, disks).
ZERO_TOL = 1e-12

CSV_HEADER = "theorem,row,lhs,rhs,K,product,ratio,pass,n,alignment,m,M0,M1,L1,L2,alpha"


# ---------------------------------------------------------------------------
# the kernel constant
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _c_alpha_cached(alpha: float, epsabs: float) -> float:
    # Substituting t = u^2 turns the integrable endpoint singularity
    # t^(alpha-1) into u^(2*alpha-1), which adaptive quadrature handles.
    upper = math.sqrt(math.pi)

    def integrand(u: float) -> float:
        return 2.0 * u ** (2.0 * alpha + 1.0) / math.tan(0.5 * u * u)

    value, _err = quad(integrand, 0.0, upper, epsabs=epsabs, epsrel=epsabs, limit=400)
    return float(2.0 ** alpha / (4.0 * math.pi ** 2) * value)


def c_alpha(alpha: float, epsabs: float = 1e-13) -> float:
    """The conjugate-kernel constant (2^a / 4 pi^2) * int_0^pi t^a cot(t/2) dt.

    Finite for every a in (0, 1]; at a = 1 it equals ln(2)/pi.
    """
    if not 0.0 < alpha <= 1.0:
        raise InvalidInputError(f"alpha must lie in (0, 1], got {alpha}")
    return _c_alpha_cached(float(alpha), float(epsabs))


# ---------------------------------------------------------------------------
# constants bundle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstantsBundle:
    """Hypothesis constants and every assembled inequality constant.

    The assemblies are re-derived from the intermediate bounds (see the
    comments in :meth:`assemble`); unit tests recompute each one from its
    constituents.
    """

    alpha: float
    m: float
    M0: float
    M1: float | None = None
    L: float | None = None
    L1: float | None = None
    L2: float | None = None
    p: float | None = None
    P: float | None = None
    c_alpha: float = 0.0
    C1: float = 0.0
    C2: float = 0.0
    K_stab: float = 0.0
    K_disco: float = 0.0
    K_raggi: float = 0.0
    K1: float | None = None
    K2: float | None = None
    K_lugua: float = math.nan
    K_ultimo: float = math.nan

    @classmethod
    def assemble(cls, alpha: float, m: float, M0: float, M1: float | None = None,
                 L: float | None = None, L1: float | None = None,
                 L2: float | None = None, p: float | None = None,
                 P: float | None = None) -> "ConstantsBundle":
        if not (0 < m <= M0):
            raise InvalidInputError(f"need 0 < m <= M0, got m={m}, M0={M0}")
        if M1 is not None and not M0 <= M1 * (1 + 1e-12):
            raise InvalidInputError(f"need M0 <= M1, got M0={M0}, M1={M1}")
        if p is not None and P is not None:
            sides = [x for x in (L1, L2) if x is not None]
            if sides and not (0 < p <= min(sides) and max(sides) <= P):
                raise InvalidInputError("need 0 < p <= L1, L2 <= P")
        ca = c_alpha(alpha)
        # Sup/seminorm control of the log-ratio of the circle data:
        #   [log psi1 - log psi2]_a <= C1 * sup|dpsi| + C2 * [dpsi]_a
        C1 = M0 ** 2 / ((TWO_PI) ** alpha * m ** (alpha + 3.0))
        C2 = M0 / m ** 2
        # Pointwise on the closed disk, splitting f1'-f2' into a modulus gap
        # and a phase gap smoothed by the conjugate kernel:
        #   |f1'-f2'| <= (1/(2 pi m^2)) sup|dpsi| + (c_a/m) [h]_a,
        # the same bound controls sup|f1-f2| after radial integration, and
        # [h]_a expands through C1, C2; adding both contributions and taking
        # the common coefficient of sup|dpsi| + [dpsi]_a gives
        K_stab = 2.0 * (1.0 / (TWO_PI * m ** 2) + ca * C1 / m + ca * C2 / m)
        # Moving the circle norm back to the arclength interval costs the
        # Lipschitz constant of the inverse cumulative map (1/(2 pi m)) on the
        # seminorm term only:
        K_disco = K_stab * (1.0 + 1.0 / (TWO_PI * m) ** alpha)
        K_raggi = K_disco

        K1 = K2 = None
        K_lugua = math.nan
        K_ultimo = math.nan
        if M1 is not None and L is not None:
            # equal perimeters: sup of the circle-data gap in terms of the
            # arclength-data gap (composition step plus interpolation of the
            # plain sup through the a-power, using sup|dphi| <= 2 M1):
            A = M1 * (L / m) ** alpha + (2.0 * M1) ** (1.0 - alpha)
            # derivative gap of the circle data: three-way split of the
            # quotient phi'/ (2 pi phi) composed with the inverse cumulative
            # maps; the middle term reuses A:
            B = (M1 / m) * (L / m) ** alpha + (M1 / m ** 2) * A
            # 2 pi sup|dpsi'| <= B * sup|dphi|^a + (1/m) sup|dphi'|, and the
            # seminorm obeys [dpsi]_a <= (2 pi)^(1-a) sup|dpsi'|, so
            #   ||f1-f2||_C1 <= K_stab [ (A + (2pi)^-a B) sup|dphi|^a
            #                            + ((2pi)^-a / m) sup|dphi'| ]
            K_lugua = K_stab * max(A + TWO_PI ** (-alpha) * B,
                                   TWO_PI ** (-alpha) / m)
        if M1 is not None and p is not None and P is not None:
            # general perimeters, rescaled data; E denotes the combined gap
            #   E = |L1-L2|/P + sup|dphi_hat| / M1  (E <= 4 always)
            K1 = M1 * (((M1 / m) * P ** 3 / p ** 2) ** alpha + 4.0 ** (1.0 - alpha))
            # derivative-gap constant, split as in the equal-perimeter case
            # with the rescaled quotients; the extra third piece carries the
            # perimeter mismatch of the two rescaling factors:
            #   term1: (M1/m) ((M1/m) P^3/p^2)^a  (rescaled arclength gap)
            #   term2: (M1/m^2) K1                 (through the sup gap)
            #   term3: (M1 P^3 /(p^3 m)) 4^(1-a)   (rescale-factor mismatch)
            K2 = ((M1 / m) * ((M1 / m) * P ** 3 / p ** 2) ** alpha
                  + (M1 / m ** 2) * K1
                  + (M1 * P ** 3 / (p ** 3 * m)) * 4.0 ** (1.0 - alpha))
            K_ultimo = K_stab * max(K1 + TWO_PI ** (-alpha) * K2,
                                    TWO_PI ** (-alpha) * P / (p * m))
        return cls(alpha=alpha, m=m, M0=M0, M1=M1, L=L, L1=L1, L2=L2, p=p, P=P,
                   c_alpha=ca, C1=C1, C2=C2, K_stab=K_stab, K_disco=K_disco,
                   K_raggi=K_raggi, K1=K1, K2=K2, K_lugua=K_lugua,
                   K_ultimo=K_ultimo)

    @property
    def K_hausdorff(self) -> float:
        # sup|dphi'| <= (2 M1)^(1-a) (sup|dphi| + sup|dphi'|)^a turns the
        # mixed right-hand side into the a-power of the C1 norm.
        if self.M1 is None or math.isnan(self.K_lugua):
            return math.nan
        return self.K_lugua * (1.0 + (2.0 * self.M1) ** (1.0 - self.alpha))

    @property
    def K_corollary(self) -> float:
        # E <= max(1/P, 1/M1) * (|L1-L2| + sup|dphi_hat|)
        if self.M1 is None or self.P is None or math.isnan(self.K_ultimo):
            return math.nan
        return self.K_ultimo * max(max(1.0 / self.P, 1.0 / self.M1) ** self.alpha, 1.0)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StabilityReport:
    """One verified inequality: lhs <= K * rhs_norm, pass iff ratio <= 1 + tol.

    ``ratio`` is zero when the left side is float dust (below ``ZERO_TOL``)
    and infinite when the left side is genuine but the right side vanishes.
    """

    theorem: str
    row: str
    lhs: float
    rhs_norm: float
    K: float
    n: int
    alignment: str
    m: float
    M0: float
    alpha: float
    M1: float | None = None
    L1: float | None = None
    L2: float | None = None
    notes: str = ""

    @property
    def product(self) -> float:
        return self.K * self.rhs_norm

    @property
    def ratio(self) -> float:
        if self.lhs <= ZERO_TOL:
            return 0.0
        if self.product <= 0.0:
            return math.inf
        return self.lhs / self.product

    @property
    def passed(self) -> bool:
        return self.ratio <= 1.0 + PASS_TOL

    def csv_row(self) -> str:
        def num(x):
            return "" if x is None else f"{x:.17g}"

        fields = [self.theorem, self.row, num(self.lhs), num(self.rhs_norm),
                  num(self.K), num(self.product), num(self.ratio),
                  "true" if self.passed else "false", str(self.n),
                  self.alignment, num(self.m), num(self.M0), num(self.M1),
                  num(self.L1), num(self.L2), num(self.alpha)]
        return ",".join(fields)


def reports_to_csv(reports) -> str:
    return "\n".join([CSV_HEADER] + [r.csv_row() for r in reports]) + "\n"


# ---------------------------------------------------------------------------
# measurement helpers
# ---------------------------------------------------------------------------

def _closed_interval_function(values: np.ndarray, period: float) -> norms.SampledFunction:
    grid = np.concatenate([np.arange(values.size) * (period / values.size), [period]])
    vals = np.concatenate([values, [values[0]]])
    return norms.SampledFunction(grid, vals)


def _interval_seminorm(values: np.ndarray, period: float, alpha: float) -> float:
    return norms.holder_seminorm(_closed_interval_function(values, period), alpha)


def _c1_gap(f1: ConformalMap, f2: ConformalMap, n: int) -> float:
    """sup|f1 - f2| + sup|f1' - f2'| over the boundary nodes."""
    z = np.exp(1j * boundary_grid(n))
    df = f1(z) - f2(z)
    dfp = f1.fprime(z) - f2.fprime(z)
    return float(np.max(np.abs(df)) + np.max(np.abs(dfp)))


@dataclass(frozen=True)
class _CircleData:
    """A datum pushed to the circle grid through its cumulative map."""

    s_nodes: np.ndarray
    psi: np.ndarray
    psi_prime: np.ndarray


def _push_to_circle(phi: BoundaryFunction, n: int) -> _CircleData:
    cm = build_cumulative(phi)
    s = cm.s_of(boundary_grid(n))
    psi = phi.interpolant()(s)
    if np.min(psi) <= 0:
        raise InvalidInputError("datum must be strictly positive on the circle grid")
    dphi = TrigInterpolant(phi.derivative(), phi.L)(s)
    # d/d theta of phi(Phi^{-1}) with (Phi^{-1})' = 1/(2 pi psi)
    return _CircleData(s_nodes=s, psi=psi, psi_prime=dphi / (TWO_PI * psi))


def _measured_constants(phis: list[BoundaryFunction], alpha: float,
                        with_M1: bool = False):
    m = min(p.min_value() for p in phis)
    norm0 = [p.holder_norm0(alpha) for p in phis]
    M0 = max(norm0)
    M1 = None
    if with_M1:
        # the hypothesis constant must dominate both Holder norms
        M1 = max(max(n0, p.holder_norm1(alpha)) for n0, p in zip(norm0, phis))
        M1 = max(M1, M0)
    if m <= 0:
        raise InvalidInputError("data must be strictly positive for the class bounds")
    return m, M0, M1


def _merge_constant(supplied, measured, mode: str, notes: list[str], name: str):
    """Use the supplied hypothesis value when the data satisfies it."""
    if supplied is None:
        return measured
    ok = supplied <= measured if mode == "lower" else supplied >= measured
    if ok:
        return float(supplied)
    notes.append(f"{name}={supplied:g} violated by data (measured {measured:g}); "
                 "using measured value")
    return measured


def _common_frame(f1: ConformalMap, f2: ConformalMap | None):
    """Rotate both maps by the first one's rotation constant.

    Every reported quantity is rotation-invariant by design; fixing the frame
    makes the floating-point path independent of the inputs' common
    orientation, so reports stay orientation-free to rounding level.
    """
    a1 = complex(f1.coefficients[1])
    if abs(a1) == 0:
        return f1, f2
    gamma = -float(np.angle(a1))
    return f1.rotated(gamma), None if f2 is None else f2.rotated(gamma)


# ---------------------------------------------------------------------------
# the checks
# ---------------------------------------------------------------------------

def seminorm_bounds(psi1: np.ndarray, psi2: np.ndarray, h: np.ndarray,
                    alpha: float, bundle: ConstantsBundle, n: int,
                    alignment: str = "proof", theorem: str = "stab_gen",
                    phi_seminorms: tuple[float, float] | None = None
                    ) -> list[StabilityReport]:
    """Rows for the two circle-data seminorm estimates.

    * each pushed datum: [psi_j]_a <= [phi_j]_a / (2 pi m)^a  (falls back to
      the class bound M0 when the arclength seminorms are not supplied);
    * the log ratio: [h]_a <= C1 sup|psi1-psi2| + C2 [psi1-psi2]_a.
    """
    psi1 = np.asarray(psi1, dtype=float)
    psi2 = np.asarray(psi2, dtype=float)
    if np.min(psi1) <= 0 or np.min(psi2) <= 0:
        raise InvalidInputError("circle data must be strictly positive")
    common = dict(n=n, alignment=alignment, m=bundle.m, M0=bundle.M0,
                  M1=bundle.M1, L1=bundle.L1, L2=bundle.L2, alpha=alpha)
    rows = []
    for j, psi in enumerate((psi1, psi2), start=1):
        lhs = _interval_seminorm(psi, TWO_PI, alpha)
        rhs = bundle.M0 if phi_seminorms is None else phi_seminorms[j - 1]
        rows.append(StabilityReport(
            theorem=theorem, row=f"pushforward_seminorm_{j}", lhs=lhs,
            rhs_norm=rhs, K=(TWO_PI * bundle.m) ** (-alpha), **common))
    dpsi = psi1 - psi2
    lhs_h = _interval_seminorm(np.asarray(h, dtype=float), TWO_PI, alpha)
    rhs_h = (bundle.C1 * trig_sup_abs(dpsi)
             + bundle.C2 * _interval_seminorm(dpsi, TWO_PI, alpha))
    rows.append(StabilityReport(theorem=theorem, row="log_ratio_seminorm",
                                lhs=lhs_h, rhs_norm=rhs_h, K=1.0, **common))
    return rows


def check_theorem_stab_gen(f1: ConformalMap, f2: ConformalMap, alpha: float,
                           n: int = 512, alignment: str = "proof",
                           m: float | None = None, M0: float | None = None
                           ) -> list[StabilityReport]:
    """C1-norm gap of two maps against the Holder norm of the gap of their
    circle data, after rotation about the common interior base point."""
    notes: list[str] = []
    f1, f2 = _common_frame(f1, f2)
    phi1 = forward_operator(f1, n)
    phi2 = forward_operator(f2, n)
    m_meas, M0_meas, _ = _measured_constants([phi1, phi2], alpha)
    m_eff = _merge_constant(m, m_meas, "lower", notes, "m")
    M0_eff = _merge_constant(M0, M0_meas, "upper", notes, "M0")
    bundle = ConstantsBundle.assemble(alpha, m_eff, M0_eff, L1=phi1.L, L2=phi2.L)

    d1 = _push_to_circle(phi1, n)
    d2 = _push_to_circle(phi2, n)
    h = np.log(d1.psi) - np.log(d2.psi)
    phi_seminorms = (
        norms.holder_seminorm(phi1.as_interval_function(), alpha),
        norms.holder_seminorm(phi2.as_interval_function(), alpha),
    )
    rows = seminorm_bounds(d1.psi, d2.psi, h, alpha, bundle, n=n,
                           alignment=alignment, phi_seminorms=phi_seminorms)

    _, f2r = align_rotation(f1, f2, mode=alignment, n=n)
    dpsi = d1.psi - d2.psi
    rhs = trig_sup_abs(dpsi) + _interval_seminorm(dpsi, TWO_PI, alpha)
    rows.append(StabilityReport(
        theorem="stab_gen", row="map_gap", lhs=_c1_gap(f1, f2r, n),
        rhs_norm=rhs, K=bundle.K_stab, n=n, alignment=alignment, m=bundle.m,
        M0=bundle.M0, M1=None, L1=phi1.L, L2=phi2.L, alpha=alpha,
        notes="; ".join(notes)))
    return rows


def check_theorem_disco(f: ConformalMap, C: float, alpha: float, n: int = 512,
                        alignment: str = "proof", m: float | None = None,
                        M0: float | None = None) -> list[StabilityReport]:
    """Distance of a map from the constant-datum disk map with datum C,
    bounded through the Holder norm of datum - C on the arclength interval."""
    if not C > 0:
        raise InvalidInputError("constant datum must be positive")
    notes: list[str] = []
    f, _ = _common_frame(f, None)
    phi = forward_operator(f, n)
    m_meas, M0_meas, _ = _measured_constants([phi], alpha)
    m_eff = _merge_constant(m, m_meas, "lower", notes, "m")
    M0_eff = _merge_constant(M0, M0_meas, "upper", notes, "M0")
    if not m_eff <= C <= M0_eff:
        # the hypothesis wants C inside [m, M0]; widen the class and say so
        notes.append(f"C={C:g} outside [m, M0]=[{m_eff:g}, {M0_eff:g}]; widened")
        m_eff = min(m_eff, C)
        M0_eff = max(M0_eff, C)
    bundle = ConstantsBundle.assemble(alpha, m_eff, M0_eff, L1=phi.L, L2=1.0 / C)

    _, f_C = align_rotation(f, disk_for_constant(C, zeta_o=f.zeta_o), mode=alignment, n=n)
    gap = phi.values - C
    rhs = trig_sup_abs(gap) + _interval_seminorm(gap, phi.L, alpha)
    return [StabilityReport(
        theorem="disco", row="map_gap_vs_disk", lhs=_c1_gap(f, f_C, n),
        rhs_norm=rhs, K=bundle.K_disco, n=n, alignment=alignment, m=bundle.m,
        M0=bundle.M0, M1=None, L1=phi.L, L2=1.0 / C, alpha=alpha,
        notes="; ".join(notes))]


def check_theorem_raggi(f: ConformalMap, alpha: float, n: int = 512,
                        m: float | None = None, M0: float | None = None
                        ) -> list[StabilityReport]:
    """Gap between the centered circumradius and inradius, plus the
    free-center variant, against the Holder norm of datum - 1/(2 pi rho)."""
    f, _ = _common_frame(f, None)
    phi = forward_operator(f, n)
    b = boundary_of(f, n)
    rho, R = inradius_circumradius(b)
    _, rho_free = largest_inscribed_circle(b)
    _, R_free = smallest_enclosing_circle(b.points)

    rows = []
    for row_name, lo, hi in (("radii_gap", rho, R),
                             ("radii_gap_free_center", rho_free, R_free)):
        notes: list[str] = []
        C = 1.0 / (TWO_PI * lo)
        m_meas, M0_meas, _ = _measured_constants([phi], alpha)
        m_eff = _merge_constant(m, m_meas, "lower", notes, "m")
        M0_eff = _merge_constant(M0, M0_meas, "upper", notes, "M0")
        if not m_eff <= C <= M0_eff:
            m_eff = min(m_eff, C)
            M0_eff = max(M0_eff, C)
        bundle = ConstantsBundle.assemble(alpha, m_eff, M0_eff, L1=phi.L, L2=1.0 / C)
        gap = phi.values - C
        rhs = trig_sup_abs(gap) + _interval_seminorm(gap, phi.L, alpha)
        rows.append(StabilityReport(
            theorem="raggi", row=row_name, lhs=hi - lo, rhs_norm=rhs,
            K=bundle.K_raggi, n=n, alignment="proof", m=bundle.m, M0=bundle.M0,
            M1=None, L1=phi.L, L2=1.0 / C, alpha=alpha, notes="; ".join(notes)))
    return rows


def _require_same_grid(phi1: BoundaryFunction, phi2: BoundaryFunction) -> int:
    if phi1.n != phi2.n:
        raise InvalidInputError("data must share the sample count for comparison")
    return phi1.n


def check_theorem_lugua_hausdorff(phi1: BoundaryFunction, phi2: BoundaryFunction,
                                  f1: ConformalMap, f2: ConformalMap, alpha: float,
                                  alignment: str = "proof",
                                  m: float | None = None, M0: float | None = None,
                                  M1: float | None = None) -> list[StabilityReport]:
    """Equal-perimeter stability chain: arclength gap of the inverse
    cumulative maps, sup and derivative gaps of the circle data, the C1-norm
    map gap, and the Hausdorff-distance corollary."""
    n = _require_same_grid(phi1, phi2)
    f1, f2 = _common_frame(f1, f2)
    L = phi1.L
    if abs(phi1.L - phi2.L) > 1e-8 * max(1.0, L):
        raise InvalidInputError(
            "perimeters differ; use check_theorem_ultimo for that case")
    notes: list[str] = []
    m_meas, M0_meas, M1_meas = _measured_constants([phi1, phi2], alpha, with_M1=True)
    m_eff = _merge_constant(m, m_meas, "lower", notes, "m")
    M0_eff = _merge_constant(M0, M0_meas, "upper", notes, "M0")
    M1_eff = _merge_constant(M1, M1_meas, "upper", notes, "M1")
    bundle = ConstantsBundle.assemble(alpha, m_eff, M0_eff, M1=M1_eff, L=L,
                                      L1=phi1.L, L2=phi2.L)
    note_text = "; ".join(notes)

    d1 = _push_to_circle(phi1, n)
    d2 = _push_to_circle(phi2, n)
    common = dict(n=n, alignment=alignment, m=bundle.m, M0=bundle.M0,
                  M1=bundle.M1, L1=phi1.L, L2=phi2.L, alpha=alpha)

    sup_dphi = trig_sup_abs(phi1.values - phi2.values)
    sup_dphi_prime = trig_sup_abs(phi1.derivative() - phi2.derivative())
    dpsi = d1.psi - d2.psi
    sup_dpsi_prime = trig_sup_abs(d1.psi_prime - d2.psi_prime)

    rows = [StabilityReport(
        theorem="lugua", row="arclength_gap",
        lhs=float(np.max(np.abs(d1.s_nodes - d2.s_nodes))),
        rhs_norm=sup_dphi, K=L / bundle.m, notes=note_text, **common)]

    A = bundle.M1 * (L / bundle.m) ** alpha + (2.0 * bundle.M1) ** (1.0 - alpha)
    rows.append(StabilityReport(
        theorem="lugua", row="pushforward_sup_gap", lhs=trig_sup_abs(dpsi),
        rhs_norm=sup_dphi ** alpha, K=A, notes=note_text, **common))

    rows.append(StabilityReport(
        theorem="lugua", row="seminorm_from_derivative",
        lhs=_interval_seminorm(dpsi, TWO_PI, alpha),
        rhs_norm=sup_dpsi_prime, K=TWO_PI ** (1.0 - alpha),
        notes=note_text, **common))

    B = (bundle.M1 / bundle.m) * (L / bundle.m) ** alpha + (bundle.M1 / bundle.m ** 2) * A
    rows.append(StabilityReport(
        theorem="lugua", row="pushforward_derivative_gap",
        lhs=TWO_PI * sup_dpsi_prime,
        rhs_norm=B * sup_dphi ** alpha + sup_dphi_prime / bundle.m,
        K=1.0, notes=note_text, **common))

    _, f2r = align_rotation(f1, f2, mode=alignment, n=n)
    rows.append(StabilityReport(
        theorem="lugua", row="map_gap", lhs=_c1_gap(f1, f2r, n),
        rhs_norm=sup_dphi ** alpha + sup_dphi_prime, K=bundle.K_lugua,
        notes=note_text, **common))

    d_h = hausdorff_distance(boundary_of(f1, n), boundary_of(f2r, n))
    rows.append(StabilityReport(
        theorem="hausdorff", row="hausdorff", lhs=d_h,
        rhs_norm=(sup_dphi + sup_dphi_prime) ** alpha, K=bundle.K_hausdorff,
        notes=note_text, **common))
    return rows


def check_theorem_ultimo(phi1: BoundaryFunction, phi2: BoundaryFunction,
                         f1: ConformalMap, f2: ConformalMap, alpha: float,
                         alignment: str = "proof", m: float | None = None,
                         M0: float | None = None, M1: float | None = None,
                         p: float | None = None, P: float | None = None
                         ) -> list[StabilityReport]:
    """General-perimeter stability chain on the rescaled common interval,
    including the Hausdorff-distance corollary."""
    from .boundary import rescale_to_common_interval

    n = _require_same_grid(phi1, phi2)
    f1, f2 = _common_frame(f1, f2)
    notes: list[str] = []
    m_meas, M0_meas, M1_meas = _measured_constants([phi1, phi2], alpha, with_M1=True)
    m_eff = _merge_constant(m, m_meas, "lower", notes, "m")
    M0_eff = _merge_constant(M0, M0_meas, "upper", notes, "M0")
    M1_eff = _merge_constant(M1, M1_meas, "upper", notes, "M1")
    L1, L2 = phi1.L, phi2.L
    p_meas, P_meas = min(L1, L2), max(L1, L2)
    p_eff = _merge_constant(p, p_meas, "lower", notes, "p")
    P_eff = _merge_constant(P, P_meas, "upper", notes, "P")
    bundle = ConstantsBundle.assemble(alpha, m_eff, M0_eff, M1=M1_eff,
                                      L1=L1, L2=L2, p=p_eff, P=P_eff)
    note_text = "; ".join(notes)

    hat1, hat2, L = rescale_to_common_interval(phi1, phi2)
    d1 = _push_to_circle(phi1, n)
    d2 = _push_to_circle(phi2, n)
    shat1 = (L / L1) * d1.s_nodes
    shat2 = (L / L2) * d2.s_nodes

    sup_dhat = trig_sup_abs(hat1.values - hat2.values)
    sup_dhat_prime = trig_sup_abs(hat1.derivative() - hat2.derivative())
    E = abs(L1 - L2) / bundle.P + sup_dhat / bundle.M1
    dpsi = d1.psi - d2.psi
    sup_dpsi_prime = trig_sup_abs(d1.psi_prime - d2.psi_prime)
    common = dict(n=n, alignment=alignment, m=bundle.m, M0=bundle.M0,
                  M1=bundle.M1, L1=L1, L2=L2, alpha=alpha)

    rows = [StabilityReport(
        theorem="ultimo", row="rescaled_arclength_gap",
        lhs=float(np.max(np.abs(shat1 - shat2))), rhs_norm=E,
        K=(bundle.M1 / bundle.m) * bundle.P ** 2 / bundle.p,
        notes=note_text, **common)]

    rows.append(StabilityReport(
        theorem="ultimo", row="pushforward_sup_gap", lhs=trig_sup_abs(dpsi),
        rhs_norm=E ** alpha, K=bundle.K1, notes=note_text, **common))

    rows.append(StabilityReport(
        theorem="ultimo", row="seminorm_from_derivative",
        lhs=_interval_seminorm(dpsi, TWO_PI, alpha),
        rhs_norm=sup_dpsi_prime, K=TWO_PI ** (1.0 - alpha),
        notes=note_text, **common))

    rows.append(StabilityReport(
        theorem="ultimo", row="pushforward_derivative_gap",
        lhs=TWO_PI * sup_dpsi_prime,
        rhs_norm=(bundle.K2 * E ** alpha
                  + (bundle.P / (bundle.p * bundle.m)) * sup_dhat_prime),
        K=1.0, notes=note_text, **common))

    _, f2r = align_rotation(f1, f2, mode=alignment, n=n)
    rows.append(StabilityReport(
        theorem="ultimo", row="map_gap", lhs=_c1_gap(f1, f2r, n),
        rhs_norm=E ** alpha + sup_dhat_prime, K=bundle.K_ultimo,
        notes=note_text, **common))

    d_h = hausdorff_distance(boundary_of(f1, n), boundary_of(f2r, n))
    rows.append(StabilityReport(
        theorem="ultimo", row="hausdorff", lhs=d_h,
        rhs_norm=(sup_dhat + abs(L1 - L2)) ** alpha + sup_dhat_prime,
        K=bundle.K_corollary, notes=note_text, **common))
    return rows
