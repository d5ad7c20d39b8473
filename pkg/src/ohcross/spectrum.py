"""Level energies of the eight-state model, closed form and numeric.

The characteristic polynomial of the field Hamiltonian contains only even
powers because the spectrum is symmetric about zero. That reduces the
degree-8 problem to a quartic in m = lambda^2, which the closed-form
quartic solver handles; the cyclic Jacobi route provides the independent
numeric check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import Polynomial, det_gauss, solve_quartic, symmetric_eigenvalues
from .hamiltonian import build_hamiltonian
from .model import ScaledParameters

ODD_COEFF_REL = 1e-9
CONSTANT_TERM_REL = 1e-10
# At a level crossing the even quartic has a double root, which backward
# error of order eps in the coefficients splits into a conjugate pair with
# imaginary part of order sqrt(eps) ~ 1.5e-8 relative. The reality check
# must clear that noise floor; genuine asymmetry faults show up at O(1).
IMAG_ROOT_REL = 1e-6
NEGATIVE_ROOT_REL = 1e-6
DET_REFINE_RATIO = 1e-6


class SpectrumError(ValueError):
    """Raised when spectrum computation breaks one of its contracts."""


class HermiticityViolationError(SpectrumError):
    """Quartic roots came out complex or negative beyond tolerance.

    For a real symmetric Hamiltonian every m = lambda^2 root must be real
    and nonnegative, so a violation indicates corrupted input or a solver
    fault rather than physics.
    """


@dataclass(frozen=True)
class CharPoly:
    """Characteristic polynomial det(lambda I - H), ascending coefficients.

    Always degree 8 and monic. Odd coefficients must vanish (the spectrum
    is symmetric about zero); they are checked against 1e-9 of the largest
    coefficient magnitude and then usable terms live at even indices only.
    """

    coeffs: tuple

    def __post_init__(self) -> None:
        if len(self.coeffs) != 9:
            raise SpectrumError("characteristic polynomial must have 9 coefficients")
        if abs(self.coeffs[8] - 1.0) > 1e-12:
            raise SpectrumError("characteristic polynomial must be monic")
        top = max(abs(c) for c in self.coeffs)
        for k in range(1, 9, 2):
            if abs(self.coeffs[k]) > ODD_COEFF_REL * top:
                raise SpectrumError(
                    f"odd coefficient at degree {k} is {self.coeffs[k]:.3e}, "
                    "spectrum symmetry violated")

    def even_part(self) -> Polynomial:
        """Quartic in m = lambda^2 carrying the full spectral content."""
        return Polynomial(self.coeffs[0::2])


def characteristic_polynomial(h) -> CharPoly:
    """Coefficients of det(lambda I - H) by the Faddeev-LeVerrier recurrence.

    The constant term is cross-checked against an independent pivoted
    elimination determinant to 1e-10 relative before the result is returned.
    """
    mat = np.asarray(h, dtype=float)
    if mat.shape != (8, 8):
        raise SpectrumError("expected an 8x8 matrix")
    n = 8
    p = np.zeros(n + 1)
    p[n] = 1.0
    acc = np.zeros_like(mat)
    eye = np.eye(n)
    for k in range(1, n + 1):
        acc = mat @ acc + p[n - k + 1] * eye
        p[n - k] = -float(np.trace(mat @ acc)) / k
    det = det_gauss(mat)
    scale = max(1.0, abs(p[0]), abs(det))
    if abs(p[0] - det) > CONSTANT_TERM_REL * scale:
        raise SpectrumError(
            f"constant term {p[0]:.6e} disagrees with determinant {det:.6e}")
    return CharPoly(coeffs=tuple(float(c) for c in p))


@dataclass(frozen=True)
class Spectrum:
    """All eight level energies in internal GHz units, sorted descending."""

    lambdas: tuple
    params: ScaledParameters

    def __post_init__(self) -> None:
        if len(self.lambdas) != 8:
            raise SpectrumError("spectrum must hold exactly 8 levels")
        for lo, hi in zip(self.lambdas[1:], self.lambdas[:-1]):
            if lo > hi:
                raise SpectrumError("levels must be sorted descending")

    def level(self, label: int) -> float:
        """Energy of level `label`, counted 1..8 from the top."""
        if not 1 <= label <= 8:
            raise SpectrumError(f"level label must be 1..8, got {label}")
        return self.lambdas[label - 1]


def eigenvalues_from_charpoly(cp: CharPoly) -> list:
    """The four m = lambda^2 values, ascending, via the closed-form quartic.

    Roots are validated as real and nonnegative relative to the largest
    root, polished with Newton steps on the quartic, clamped at zero, and
    the smallest root is refined through the determinant product identity
    when it is more than six orders below the largest (the quartic solve
    loses relative accuracy exactly there).
    """
    quart = cp.even_part()
    roots = solve_quartic(quart).expanded()
    scale = max(abs(z) for z in roots)
    ms = []
    for z in roots:
        if scale > 0.0:
            if abs(z.imag) > IMAG_ROOT_REL * scale:
                raise HermiticityViolationError(
                    f"lambda^2 root {z} has a non-real part beyond tolerance")
            if z.real < -NEGATIVE_ROOT_REL * scale:
                raise HermiticityViolationError(
                    f"lambda^2 root {z} is negative beyond tolerance")
        ms.append(z.real)
    a0, a1, a2, a3 = quart.coeffs[0], quart.coeffs[1], quart.coeffs[2], quart.coeffs[3]
    polished = []
    for m in ms:
        for _ in range(3):
            f = (((m + a3) * m + a2) * m + a1) * m + a0
            fp = ((4.0 * m + 3.0 * a3) * m + 2.0 * a2) * m + a1
            if fp == 0.0:
                break
            m -= f / fp
        polished.append(max(m, 0.0))
    polished.sort()
    if polished[3] > 0.0 and polished[0] < DET_REFINE_RATIO * polished[3]:
        others = polished[1] * polished[2] * polished[3]
        if others > 0.0:
            # det(H) equals the product of the four lambda^2 values
            polished[0] = max(cp.coeffs[0] / others, 0.0)
    return polished


def analytic_eigenvalues(params: ScaledParameters) -> Spectrum:
    """Closed-form spectrum at the given scaled field configuration."""
    if params.b_tilde == 0.0 and params.e_tilde == 0.0:
        # Fully degenerate point: the quartic in m collapses to a quadruple
        # root, which any root finder scatters by eps**(1/4) in relative
        # terms, far beyond the reality tolerance. The spectrum there is
        # just the doubling splitting, so return it directly.
        half = params.delta_tilde / 10.0
        return Spectrum(lambdas=(half,) * 4 + (-half,) * 4, params=params)
    cp = characteristic_polynomial(build_hamiltonian(params))
    ms = eigenvalues_from_charpoly(cp)
    half = [math.sqrt(m) for m in ms]
    lams = sorted(half + [-v for v in half], reverse=True)
    return Spectrum(lambdas=tuple(lams), params=params)


def numeric_eigenvalues(params: ScaledParameters) -> Spectrum:
    """Spectrum by Jacobi diagonalization, independent of the closed form."""
    lams = symmetric_eigenvalues(build_hamiltonian(params))
    return Spectrum(lambdas=tuple(lams), params=params)


def eigenvalue_at(params: ScaledParameters, label: int) -> float:
    """Single level energy, label counted 1..8 from the top level down."""
    return analytic_eigenvalues(params).level(label)
