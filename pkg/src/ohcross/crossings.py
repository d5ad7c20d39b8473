"""Location and classification of level crossings in the magnetic field.

Two discriminant factors carry all crossing information as functions of
x = b_tilde^2. The quartic factor governs the pair of levels that meet at
zero energy: its real roots are exact crossings and its complex roots mark
avoided ones, located through a resolvent-cubic closed form. The octic
factor covers the remaining adjacent-pair crossings and is rooted
numerically, or through reduced closed forms at the parallel and
perpendicular geometries where it collapses.

Every avoided-crossing candidate is validated against the spectrum itself:
the reported location is the interior minimum of the measured pair gap
near the algebraic seed, and candidates without such a minimum are
discarded as spurious.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .algebra import Polynomial, numeric_roots, solve_cubic, solve_quartic
from .discriminant import REL_FLOOR, f1_quartic_coefficients, g_coefficients
from .hamiltonian import build_hamiltonian
from .model import ScaledParameters, b_field_from_tilde

# Measured pair gap below this (internal GHz) classifies a crossing as exact.
GAP_CLASSIFICATION_THRESHOLD = 1e-7

# Gaps below this (internal GHz) sit at the eigensolver noise level and are
# reported as exactly zero.
GAP_MEASUREMENT_FLOOR = 1e-12

# |x| below this fraction of the largest root magnitude snaps to x = 0.
ROOT_SNAP_REL = 1e-9

# Imaginary parts below this fraction of |x| are treated as rounding noise.
IMAG_SNAP_REL = 1e-7

# Half width, in the internal field variable, of the gap-minimum search.
SEARCH_HALF_WIDTH_TILDE = 0.15

# Records of the same level pair closer than this (tesla) are duplicates.
DEDUPE_B_TESLA = 1e-6

_COARSE_POINTS = 81
_GOLDEN_TOL_TESLA = 1e-11

# Adjacent same-sign level pairs tracked by the octic factor (1-based).
_ADJACENT_PAIRS = ((1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (7, 8))

_SPECIAL_ANGLE_TOL = 1e-12


class CrossingError(ValueError):
    """Base class for crossing-analysis failures."""


class NoCriticalFieldError(CrossingError):
    """The critical electric field does not exist at this angle."""


class BranchError(CrossingError):
    """Closed-form resolvent branch disagrees with the numeric cubic root."""


class ResolventMismatchError(CrossingError):
    """The two quartic-discriminant routes disagree beyond tolerance."""


@dataclass(frozen=True)
class F1Quartic:
    """Monic quartic factor f1/81 in x = b_tilde^2, named coefficients."""

    c0: float
    c2: float
    c4: float
    c6: float

    def monic_ascending(self) -> tuple:
        return (self.c0, self.c2, self.c4, self.c6, 1.0)


def f1_quartic_tilde(e_tilde: float, delta_tilde: float, theta: float) -> F1Quartic:
    """The quartic factor at the given electric configuration."""
    c0, c2, c4, c6 = f1_quartic_coefficients(e_tilde, delta_tilde, theta)
    return F1Quartic(c0=c0, c2=c2, c4=c4, c6=c6)


@dataclass(frozen=True)
class ResolventData:
    """Depressed-quartic data and the resolvent-cubic root for the f1 factor.

    q, r, s     depressed coefficients after removing the cubic term
    delta_c     quartic discriminant, closed product form
    g_c         the strictly positive polynomial factor inside delta_c
    c_r         the branch-resolved resolvent value entering the location
                composition (a quarter of the largest real cubic root)
    d_b         real part of the principal-branch cube-root kernel
    """

    q: float
    r: float
    s: float
    delta_c: float
    g_c: float
    c_r: float
    d_b: float


def resolvent_analysis(e_tilde: float, delta_tilde: float,
                       theta: float) -> ResolventData:
    """Depression, discriminant and resolvent root of the quartic factor.

    The discriminant is computed along two routes: the closed product form
    and 2^24 (C^2 - 4 P^3) with C = 2q^3 - 72qs + 27r^2, P = q^2 + 12s.
    They must agree to 1e-9 of the cancellation scale or
    ResolventMismatchError is raised.

    The resolvent value c_r comes from the principal-branch complex cube
    root composition; its real part is validated against a quarter of the
    largest real root of z^3 + 2q z^2 + (q^2-4s) z - r^2 computed by the
    independent cubic solver, and BranchError reports any disagreement.
    """
    quart = f1_quartic_tilde(e_tilde, delta_tilde, theta)
    c0, c2, c4, c6 = quart.c0, quart.c2, quart.c4, quart.c6
    q = c4 - 3.0 * c6 * c6 / 8.0
    r = (8.0 * c2 - 4.0 * c4 * c6 + c6 ** 3) / 8.0
    s = c0 - c6 * (64.0 * c2 - 16.0 * c4 * c6 + 3.0 * c6 ** 3) / 256.0

    st = math.sin(theta)
    c2t = math.cos(2.0 * theta)
    e2 = e_tilde * e_tilde
    d2 = delta_tilde * delta_tilde
    g_c = (32.0 * d2 ** 3 + 16.0 * e2 * d2 * d2 * (25.0 - 23.0 * c2t)
           + 576.0 * e2 * e2 * d2 * st * st * (7.0 - c2t)
           + 2592.0 * e2 ** 3 * st * st * math.cos(theta) ** 4)
    delta_c = (-(2.0 / 3.0) ** 2 * (32.0 / 3.0) ** 9
               * (delta_tilde * e2) ** 4 * (d2 + 9.0 * e2) ** 3
               * st ** 8 * g_c)

    big_c = 2.0 * q ** 3 - 72.0 * q * s + 27.0 * r * r
    big_p = q * q + 12.0 * s
    delta_generic = 2.0 ** 24 * (big_c * big_c - 4.0 * big_p ** 3)
    scale = 2.0 ** 24 * max(big_c * big_c, 4.0 * abs(big_p) ** 3)
    if abs(delta_c - delta_generic) > 1e-9 * max(scale, REL_FLOOR):
        raise ResolventMismatchError(
            f"discriminant routes disagree: {delta_c:.6e} vs {delta_generic:.6e}")

    inner = complex(12.0 * q ** 3 * r * r + 81.0 * r ** 4
                    - 48.0 * q * (q ** 3 + 9.0 * r * r) * s
                    + 384.0 * q * q * s * s - 768.0 * s ** 3)
    kernel = (2.0 / 3.0) * q ** 3 + 9.0 * r * r - 24.0 * q * s + cmath.sqrt(inner)
    d_b = 3.0 ** (1.0 / 3.0) * kernel ** (1.0 / 3.0)
    lim_scale = max(abs(q), abs(s) ** 0.5, abs(r) ** (2.0 / 3.0))
    if abs(d_b) <= 1e-10 * max(lim_scale, REL_FLOOR):
        # kernel and numerator vanish together; the composition tends to -q/6
        cr_complex = complex(-q / 6.0)
    else:
        cr_complex = (2.0 ** (1.0 / 3.0) * (2.0 * q * q + 24.0 * s) / (24.0 * d_b)
                      + 2.0 ** (2.0 / 3.0) * d_b / 24.0 - q / 6.0)
    c_r = cr_complex.real

    # Solve the confirming cubic in a scaled variable z = alpha w so all
    # coefficients stay O(1); otherwise a huge constant term (r^2 grows
    # like the eighth power of the field) would swamp the leading 1.
    alpha = max(abs(2.0 * q), abs(q * q - 4.0 * s) ** 0.5,
                (r * r) ** (1.0 / 3.0), REL_FLOOR)
    cubic = Polynomial((-r * r / alpha ** 3, (q * q - 4.0 * s) / (alpha * alpha),
                        2.0 * q / alpha, 1.0))
    zs = solve_cubic(cubic)
    reals = [alpha * z.real for z in zs.roots
             if abs(z.imag) <= 1e-8 * max(1.0, abs(z))]
    if not reals:
        raise BranchError("resolvent cubic has no real root")
    reference = max(reals) / 4.0
    # Near the critical field both routes cancel down to ~eps * q of
    # noise while the value itself tends to zero, so the disagreement is
    # measured against the natural resolvent scale as well as the value.
    # A wrong branch would err at the full resolvent scale, eight orders
    # above this tolerance.
    tol = max(1e-8 * max(abs(c_r), abs(reference)),
              1e-9 * lim_scale, REL_FLOOR)
    if abs(c_r - reference) > tol:
        raise BranchError(
            f"principal-branch resolvent {c_r:.12e} disagrees with "
            f"largest cubic root {reference:.12e}")
    return ResolventData(q=q, r=r, s=s, delta_c=delta_c, g_c=g_c,
                         c_r=c_r, d_b=float(d_b.real))


def critical_field_tilde(delta_tilde: float, theta: float) -> float:
    """Electric field (internal units) where the first crossing changes
    character: delta_tilde / sqrt(1 - 2 cos 2 theta).

    Exists only for angles strictly between pi/6 and 5 pi/6; outside,
    NoCriticalFieldError is raised.
    """
    denom = 1.0 - 2.0 * math.cos(2.0 * theta)
    if denom <= 0.0:
        raise NoCriticalFieldError(
            f"no critical field at theta = {theta:.6f}: the first crossing "
            "keeps one character for every field strength")
    return delta_tilde / math.sqrt(denom)


def b1_exact_tilde(e_tilde: float, delta_tilde: float, theta: float) -> float:
    """Closed-form location (internal units) of the first crossing of the
    zero-energy level pair.

    Composition of the branch-resolved resolvent value with the depressed
    coefficients; the branch pair switches at the critical field. Reduces
    to delta_tilde / 3 exactly when the electric field vanishes.
    """
    quart = f1_quartic_tilde(e_tilde, delta_tilde, theta)
    data = resolvent_analysis(e_tilde, delta_tilde, theta)
    q, r, s = data.q, data.r, data.s
    cr = max(data.c_r, 0.0)
    sq = math.sqrt(cr)
    denom = 1.0 - 2.0 * math.cos(2.0 * theta)
    ecrit = delta_tilde / math.sqrt(denom) if denom > 0.0 else math.inf
    # r changes sign exactly where the branch pair switches, so the ratio
    # r / (4 sqrt(C_r)) tends to -sqrt(q^2 - 4 s) / 2 from both sides; at
    # the switch itself (sqrt(C_r) = 0) that shared limit is used directly.
    if e_tilde < ecrit:
        re = -sq - quart.c6 / 4.0
        if sq > 0.0:
            im2 = q / 2.0 + cr - r / (4.0 * sq)
        else:
            im2 = q / 2.0 + cr - math.sqrt(max(q * q - 4.0 * s, 0.0)) / 2.0
    else:
        re = sq - quart.c6 / 4.0
        if sq > 0.0:
            im2 = q / 2.0 + cr + r / (4.0 * sq)
        else:
            im2 = q / 2.0 + cr - math.sqrt(max(q * q - 4.0 * s, 0.0)) / 2.0
    im = math.sqrt(max(im2, 0.0))
    mod = math.hypot(re, im)
    return math.sqrt(max((re + mod) / 2.0, 0.0))


def b1_exact(p: ScaledParameters) -> float:
    """b1_exact_tilde on a parameter set (its b_tilde plays no role)."""
    return b1_exact_tilde(p.e_tilde, p.delta_tilde, p.theta)


def b1_approx_tilde(e_tilde: float, delta_tilde: float, theta: float) -> float:
    """Small-field expansion of the first-crossing location:
    delta/3 + 3 (3 + cos 2 theta) e^2 / (8 delta)."""
    return (delta_tilde / 3.0
            + 3.0 * (3.0 + math.cos(2.0 * theta)) * e_tilde * e_tilde
            / (8.0 * delta_tilde))


def _levels_descending(p: ScaledParameters) -> np.ndarray:
    return np.linalg.eigvalsh(build_hamiltonian(p))[::-1]


def pair_gap(p: ScaledParameters, pair) -> float:
    """Measured energy gap (internal GHz) between two labeled levels.

    Measured with a symmetric eigensolver rather than the quartic closed
    form: the symmetric eigenproblem keeps absolute accuracy near eps
    times the matrix norm even at a near-degeneracy, while the route
    through m = lambda^2 loses exactly the small splitting of interest
    there. Gaps below GAP_MEASUREMENT_FLOOR are indistinguishable from
    solver noise and are reported as zero.
    """
    i, j = pair
    levels = _levels_descending(p)
    gap = float(levels[i - 1] - levels[j - 1])
    return gap if gap > GAP_MEASUREMENT_FLOOR else 0.0


def gap_lowest_pair(p: ScaledParameters) -> float:
    """Gap between the two levels that meet at zero energy (labels 4, 5)."""
    return pair_gap(p, (4, 5))


def golden_min(f, a: float, b: float, tol: float = 1e-12) -> float:
    """Golden-section minimizer for a unimodal scalar function."""
    ratio = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - ratio * (b - a)
    d = a + ratio * (b - a)
    fc, fd = f(c), f(d)
    while abs(b - a) > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - ratio * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + ratio * (b - a)
            fd = f(d)
    return (a + b) / 2.0


@dataclass(frozen=True)
class CrossingRecord:
    """One located crossing of a specific level pair.

    b_location  magnetic field in tesla
    kind        "real" when the measured gap closes below the
                classification threshold, else "avoided"
    pair        1-based level labels (i, j) with i < j
    gap         measured minimal gap in internal GHz (0.0 for real)
    source      which factor and route produced the candidate
    """

    b_location: float
    kind: str
    pair: tuple
    gap: float
    source: str


def _minimal_adjacent_pair(p: ScaledParameters) -> tuple:
    """Adjacent same-sign pair with the smallest gap; ties take smallest i.

    Mirror-image pairs have gaps equal to rounding, so a candidate must
    beat the incumbent by more than the measurement floor to displace it.
    """
    levels = _levels_descending(p)
    best = None
    for i, j in _ADJACENT_PAIRS:
        gap = float(levels[i - 1] - levels[j - 1])
        if best is None or gap < best[0] - GAP_MEASUREMENT_FLOOR:
            best = (gap, (i, j))
    return best[1]


def _refine_gap_minimum(p: ScaledParameters, pair, b_seed_tilde: float):
    """Locate the interior minimum of the pair gap near an algebraic seed.

    Coarse scan of the bracket, then golden-section refinement in tesla.
    Returns (b_tesla, gap) or None when the minimum sits on the bracket
    edge, which marks the seed as spurious.
    """
    tesla_per_tilde = b_field_from_tilde(1.0)

    def gap_at_tesla(b_tesla: float) -> float:
        return pair_gap(p.with_b_tilde(b_tesla / tesla_per_tilde), pair)

    lo_tilde = max(b_seed_tilde - SEARCH_HALF_WIDTH_TILDE, 0.0)
    hi_tilde = b_seed_tilde + SEARCH_HALF_WIDTH_TILDE
    lo = lo_tilde * tesla_per_tilde
    hi = hi_tilde * tesla_per_tilde
    step = (hi - lo) / (_COARSE_POINTS - 1)
    values = [gap_at_tesla(lo + k * step) for k in range(_COARSE_POINTS)]
    k_min = min(range(_COARSE_POINTS), key=values.__getitem__)
    if k_min == 0 or k_min == _COARSE_POINTS - 1:
        return None
    a = lo + (k_min - 1) * step
    b = lo + (k_min + 1) * step
    b_min = golden_min(gap_at_tesla, a, b, tol=_GOLDEN_TOL_TESLA)
    return b_min, gap_at_tesla(b_min)


def _records_from_roots(xs, p: ScaledParameters, source: str,
                        pair_policy: str) -> list:
    """Shared candidate pipeline from x-roots to validated records.

    Roots with negative imaginary part are conjugate partners and skipped;
    tiny magnitudes snap to x = 0 and tiny imaginary parts snap to the real
    axis. Negative real x has no field location and is dropped. The seed is
    Re[sqrt(x)]; the measured gap at the seed decides real vs avoided, and
    avoided candidates must survive interior-minimum refinement.
    """
    tesla_per_tilde = b_field_from_tilde(1.0)
    roots = list(xs)
    if not roots:
        return []
    top = max(abs(x) for x in roots)
    records = []
    for x in roots:
        x = complex(x)
        if x.imag < 0.0:
            continue
        if abs(x) < ROOT_SNAP_REL * top:
            x = complex(0.0)
        elif abs(x.imag) < IMAG_SNAP_REL * abs(x):
            x = complex(x.real)
        if x.imag == 0.0 and x.real < 0.0:
            continue
        seed_tilde = cmath.sqrt(x).real
        p_seed = p.with_b_tilde(seed_tilde)
        if pair_policy == "opposite":
            pair = (4, 5)
        else:
            pair = _minimal_adjacent_pair(p_seed)
        gap_seed = pair_gap(p_seed, pair)
        if gap_seed < GAP_CLASSIFICATION_THRESHOLD:
            records.append(CrossingRecord(
                b_location=seed_tilde * tesla_per_tilde, kind="real",
                pair=pair, gap=0.0, source=source))
            continue
        refined = _refine_gap_minimum(p, pair, seed_tilde)
        if refined is None:
            continue
        b_min, gap_min = refined
        if gap_min < GAP_CLASSIFICATION_THRESHOLD:
            records.append(CrossingRecord(
                b_location=b_min, kind="real", pair=pair,
                gap=0.0, source=source))
        else:
            records.append(CrossingRecord(
                b_location=b_min, kind="avoided", pair=pair,
                gap=gap_min, source=source))
    return records


def f1_crossings(p: ScaledParameters) -> list:
    """Crossing records of the zero-energy pair from the quartic factor."""
    quart = f1_quartic_tilde(p.e_tilde, p.delta_tilde, p.theta)
    roots = solve_quartic(Polynomial(quart.monic_ascending()))
    return _records_from_roots(roots.roots, p, "f1-analytic", "opposite")


def f2_crossings(p: ScaledParameters) -> list:
    """Crossing records of the adjacent pairs from the octic factor.

    Generic angles root the full octic numerically; the parallel and
    perpendicular geometries use the collapsed closed forms, whose factors
    are lower degree and carry the root structure exactly.
    """
    e2 = p.e_tilde * p.e_tilde
    d2 = p.delta_tilde * p.delta_tilde
    if (abs(p.theta) <= _SPECIAL_ANGLE_TOL
            or abs(p.theta - math.pi) <= _SPECIAL_ANGLE_TOL):
        quart = Polynomial((4.0 * e2 ** 4,
                            -5.0 * e2 * e2 * (d2 + 5.0 * e2),
                            d2 * d2 + 10.0 * d2 * e2 + 42.0 * e2 * e2,
                            -5.0 * (d2 + 5.0 * e2),
                            4.0))
        roots = solve_quartic(quart).roots
        return _records_from_roots(roots, p, "f2-parallel", "adjacent")
    if abs(p.theta - math.pi / 2.0) <= _SPECIAL_ANGLE_TOL:
        quart = Polynomial((e2 ** 4,
                            e2 * e2 * (d2 + 4.0 * e2),
                            d2 * d2 + 8.0 * d2 * e2 + 6.0 * e2 * e2,
                            -2.0 * (d2 - 2.0 * e2),
                            1.0))
        xs = [complex(0.0), complex((d2 + 8.0 * e2) / 4.0)]
        xs.extend(solve_quartic(quart).roots)
        return _records_from_roots(xs, p, "f2-perpendicular", "adjacent")
    octic = Polynomial(g_coefficients(p.e_tilde, p.delta_tilde, p.theta))
    roots = numeric_roots(octic)
    return _records_from_roots(roots.roots, p, "f2-octic", "adjacent")


def crossing_catalog(p: ScaledParameters, include_mirror: bool = False) -> tuple:
    """All validated crossings at the given electric configuration.

    Records from both factors, deduplicated (same pair within 1e-6 T keeps
    the analytic quartic route) and sorted by field location. Locations at
    negative field are the mirror image of the positive ones because the
    spectrum is even in B; they are suppressed unless include_mirror is set.
    """
    records = f1_crossings(p) + f2_crossings(p)
    kept = []
    for rec in sorted(records, key=lambda r: (r.b_location, r.pair)):
        dup = None
        for k, other in enumerate(kept):
            if (other.pair == rec.pair
                    and abs(other.b_location - rec.b_location) < DEDUPE_B_TESLA):
                dup = k
                break
        if dup is None:
            kept.append(rec)
        elif rec.source == "f1-analytic" and kept[dup].source != "f1-analytic":
            kept[dup] = rec
    if include_mirror:
        mirrored = [CrossingRecord(-r.b_location, r.kind, r.pair, r.gap, r.source)
                    for r in kept if r.b_location > 0.0]
        kept.extend(mirrored)
    kept.sort(key=lambda r: (r.b_location, r.pair))
    return tuple(kept)
