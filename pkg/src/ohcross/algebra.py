"""Shared exact and numeric algebra kernels.

Closed-form cubic and quartic solvers (depression plus resolvent cubic),
a companion-matrix numeric root finder, a cyclic Jacobi eigensolver and a
pivoted-elimination determinant. The numeric routines are deliberately
independent of the closed forms so each side can serve as an oracle for
the other.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

COEFF_TRIM_REL = 1e-14
ROOT_MERGE_REL = 1e-8
CUBIC_RESIDUAL_REL = 1e-9
QUARTIC_RESIDUAL_REL = 1e-8
NUMERIC_RESIDUAL_REL = 1e-8
SYMMETRY_TOL = 1e-12
JACOBI_OFFDIAG_REL = 1e-13

_CUBE_ROOT_OF_UNITY = complex(-0.5, math.sqrt(3.0) / 2.0)


class AlgebraError(ValueError):
    """Base class for kernel failures."""


class DegreeError(AlgebraError):
    """Polynomial degree does not match what the operation requires."""


class ZeroPolynomialError(AlgebraError):
    """All coefficients vanish, so roots are undefined."""


class NonMonicError(AlgebraError):
    """The operation requires a monic polynomial; the caller must normalize."""


class ResidualError(AlgebraError):
    """A computed root or decomposition failed its residual bound."""


class AsymmetricMatrixError(AlgebraError):
    """Matrix input to the symmetric eigensolver is not symmetric."""


@dataclass(frozen=True)
class Polynomial:
    """Real-coefficient polynomial with coefficients in ascending degree order.

    High-order coefficients whose magnitude is at most 1e-14 times the
    largest coefficient magnitude are trimmed at construction, so the stored
    leading coefficient is always significant. The all-zero polynomial is
    kept as a single zero entry.
    """

    coeffs: tuple

    def __init__(self, coeffs) -> None:
        vals = [float(c) for c in coeffs]
        if not vals:
            vals = [0.0]
        top = max(abs(c) for c in vals)
        if top == 0.0:
            object.__setattr__(self, "coeffs", (0.0,))
            return
        cut = COEFF_TRIM_REL * top
        k = len(vals) - 1
        while k > 0 and abs(vals[k]) <= cut:
            k -= 1
        object.__setattr__(self, "coeffs", tuple(vals[:k + 1]))

    @property
    def degree(self) -> int:
        """Degree after trimming; -1 for the zero polynomial."""
        if self.is_zero:
            return -1
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0.0

    @property
    def max_abs_coeff(self) -> float:
        return max(abs(c) for c in self.coeffs)

    def __call__(self, x):
        acc = 0.0 if not isinstance(x, complex) else complex(0.0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_magnitude(self, x) -> float:
        """Sum of |c_i| |x|^i, the natural residual scale at x."""
        ax = abs(x)
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * ax + abs(c)
        return acc


@dataclass(frozen=True)
class ComplexRootSet:
    """Roots with multiplicities, ordered by (real part, imaginary part).

    Roots closer than 1e-8 relative are merged with summed multiplicity,
    since analytically degenerate roots split under floating point. The
    total multiplicity always equals the polynomial degree.
    """

    roots: tuple
    multiplicities: tuple

    @property
    def count(self) -> int:
        return sum(self.multiplicities)

    def expanded(self) -> list:
        """Roots repeated according to multiplicity."""
        out = []
        for z, m in zip(self.roots, self.multiplicities):
            out.extend([z] * m)
        return out


def merge_roots(raw, merge_rel: float = ROOT_MERGE_REL) -> ComplexRootSet:
    """Cluster near-identical roots and order the result deterministically."""
    pts = sorted((complex(z) for z in raw), key=lambda z: (z.real, z.imag))
    clusters = []  # [root sum, count]
    for z in pts:
        joined = False
        for cl in clusters:
            mean = cl[0] / cl[1]
            tol = merge_rel * max(abs(z), abs(mean))
            if abs(z - mean) <= tol:
                cl[0] += z
                cl[1] += 1
                joined = True
                break
        if not joined:
            clusters.append([z, 1])
    final = sorted(((s / n, n) for s, n in clusters),
                   key=lambda item: (item[0].real, item[0].imag))
    return ComplexRootSet(roots=tuple(z for z, _ in final),
                          multiplicities=tuple(n for _, n in final))


def _check_residuals(poly: Polynomial, roots, rel: float) -> None:
    for z in roots:
        scale = max(poly.max_abs_coeff, poly.eval_magnitude(z))
        if abs(poly(z)) > rel * scale:
            raise ResidualError(
                f"root {z} has residual {abs(poly(z)):.3e}, "
                f"above {rel:.1e} of scale {scale:.3e}")


def _polish(monic_ascending, z, steps: int = 2):
    """Guarded complex Newton steps on a monic polynomial."""
    def val(x):
        acc = complex(0.0)
        for c in reversed(monic_ascending):
            acc = acc * x + c
        return acc

    def deriv(x):
        acc = complex(0.0)
        n = len(monic_ascending) - 1
        for k in range(n, 0, -1):
            acc = acc * x + k * monic_ascending[k]
        return acc

    z = complex(z)
    fz = val(z)
    for _ in range(steps):
        d = deriv(z)
        if d == 0:
            break
        z_new = z - fz / d
        f_new = val(z_new)
        if abs(f_new) >= abs(fz):
            break
        z, fz = z_new, f_new
    return z


def _cubic_monic_roots(a2: float, a1: float, a0: float) -> list:
    """All roots of z^3 + a2 z^2 + a1 z + a0, closed form, complex."""
    p = a1 - a2 * a2 / 3.0
    q = 2.0 * a2 ** 3 / 27.0 - a2 * a1 / 3.0 + a0
    shift = -a2 / 3.0
    if p == 0.0 and q == 0.0:
        return [complex(shift)] * 3
    sq = cmath.sqrt(complex(q * q / 4.0 + p ** 3 / 27.0))
    u3_plus = -q / 2.0 + sq
    u3_minus = -q / 2.0 - sq
    u3 = u3_plus if abs(u3_plus) >= abs(u3_minus) else u3_minus
    if u3 == 0:
        return [complex(shift)] * 3
    u = u3 ** (1.0 / 3.0)
    out = []
    uk = u
    for _ in range(3):
        out.append(uk - p / (3.0 * uk) + shift)
        uk = uk * _CUBE_ROOT_OF_UNITY
    return out


def solve_cubic(poly: Polynomial) -> ComplexRootSet:
    """Closed-form roots of a degree-3 polynomial.

    Each returned root satisfies |p(root)| <= 1e-9 times the coefficient
    magnitude scale at that root.
    """
    if poly.degree != 3:
        raise DegreeError(f"solve_cubic needs degree 3, got {poly.degree}")
    lead = poly.coeffs[3]
    monic = (poly.coeffs[0] / lead, poly.coeffs[1] / lead,
             poly.coeffs[2] / lead, 1.0)
    roots = _cubic_monic_roots(monic[2], monic[1], monic[0])
    roots = [_polish(monic, z) for z in roots]
    _check_residuals(poly, roots, CUBIC_RESIDUAL_REL)
    return merge_roots(roots)


@dataclass(frozen=True)
class DepressedQuartic:
    """Result of the substitution u = x + shift applied to a monic quartic.

    Reconstruction u^4 + q u^2 + r u + s with u = x + shift reproduces the
    original coefficients; shift is a quarter of the cubic coefficient.
    """

    q: float
    r: float
    s: float
    shift: float


def depress_quartic(poly: Polynomial) -> DepressedQuartic:
    """Depress a monic quartic, removing its cubic term."""
    if poly.degree != 4:
        raise DegreeError(f"depress_quartic needs degree 4, got {poly.degree}")
    if abs(poly.coeffs[4] - 1.0) > 1e-12:
        raise NonMonicError("depress_quartic requires a monic quartic")
    a0, a1, a2, a3 = poly.coeffs[0], poly.coeffs[1], poly.coeffs[2], poly.coeffs[3]
    q = a2 - 3.0 * a3 * a3 / 8.0
    r = a1 - a2 * a3 / 2.0 + a3 ** 3 / 8.0
    s = a0 - a1 * a3 / 4.0 + a2 * a3 * a3 / 16.0 - 3.0 * a3 ** 4 / 256.0
    return DepressedQuartic(q=q, r=r, s=s, shift=a3 / 4.0)


def _depressed_quartic_roots(q: float, r: float, s: float) -> list:
    """Roots of u^4 + q u^2 + r u + s by resolvent cubic, best branch."""
    zs = _cubic_monic_roots(2.0 * q, q * q - 4.0 * s, -r * r)
    qscale = math.sqrt(max(abs(q), math.sqrt(abs(s)), 1e-300))
    best = None
    for z in zs:
        proot = cmath.sqrt(z)
        if abs(proot) < 1e-9 * qscale:
            # degenerate resolvent root: fall back to the biquadratic split
            disc = cmath.sqrt(complex(q * q - 4.0 * s))
            u2a = (-q + disc) / 2.0
            u2b = (-q - disc) / 2.0
            ra, rb = cmath.sqrt(u2a), cmath.sqrt(u2b)
            cand = [ra, -ra, rb, -rb]
        else:
            b1 = (q + z - r / proot) / 2.0
            b2 = (q + z + r / proot) / 2.0
            d1 = cmath.sqrt(proot * proot - 4.0 * b1)
            d2 = cmath.sqrt(proot * proot - 4.0 * b2)
            cand = [(-proot + d1) / 2.0, (-proot - d1) / 2.0,
                    (proot + d2) / 2.0, (proot - d2) / 2.0]
        res = sum(abs(((u * u + q) * u + r) * u + s) for u in cand)
        if best is None or res < best[0]:
            best = (res, cand)
    return best[1]


def solve_quartic(poly: Polynomial) -> ComplexRootSet:
    """Closed-form roots of a degree-4 polynomial.

    Depression plus resolvent cubic; every resolvent branch is tried and the
    branch with the smallest residual wins. Each root satisfies
    |p(root)| <= 1e-8 times the coefficient magnitude scale at that root.
    """
    if poly.degree != 4:
        raise DegreeError(f"solve_quartic needs degree 4, got {poly.degree}")
    lead = poly.coeffs[4]
    monic = tuple(c / lead for c in poly.coeffs[:4]) + (1.0,)
    dq = depress_quartic(Polynomial(monic))
    us = _depressed_quartic_roots(dq.q, dq.r, dq.s)
    roots = [_polish(monic, u - dq.shift) for u in us]
    _check_residuals(poly, roots, QUARTIC_RESIDUAL_REL)
    return merge_roots(roots)


def numeric_roots(poly: Polynomial) -> ComplexRootSet:
    """All complex roots via companion-matrix eigenvalues.

    Serves as the independent numeric oracle for the closed-form solvers
    and as the general root finder for degrees they do not cover. Each root
    satisfies |p(root)| <= 1e-8 times the coefficient magnitude scale.
    """
    if poly.is_zero:
        raise ZeroPolynomialError("zero polynomial has no defined roots")
    if poly.degree < 1:
        raise DegreeError("numeric_roots needs degree >= 1")
    raw = np.roots(np.array(poly.coeffs[::-1], dtype=float))
    roots = sorted((complex(z) for z in raw), key=lambda z: (z.real, z.imag))
    _check_residuals(poly, roots, NUMERIC_RESIDUAL_REL)
    return merge_roots(roots)


def symmetric_eigenvalues(m) -> list:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Returns all eigenvalues sorted descending. The sweep loop runs until the
    off-diagonal Frobenius norm falls below 1e-13 times the matrix norm.
    Raises AsymmetricMatrixError when the input is not symmetric to 1e-12.
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise AsymmetricMatrixError("input must be a square matrix")
    n = a.shape[0]
    scale = max(1.0, float(np.max(np.abs(a))) if a.size else 0.0)
    if float(np.max(np.abs(a - a.T))) > SYMMETRY_TOL * scale:
        raise AsymmetricMatrixError("matrix is not symmetric within 1e-12")
    a = (a + a.T) / 2.0
    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        return [0.0] * n
    for _ in range(100):
        off = math.sqrt(2.0) * float(np.linalg.norm(np.triu(a, 1)))
        if off <= JACOBI_OFFDIAG_REL * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                diff = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(diff) > 1e150:
                    t = 1.0 / (2.0 * diff)
                else:
                    sign = 1.0 if diff >= 0.0 else -1.0
                    t = sign / (abs(diff) + math.sqrt(1.0 + diff * diff))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                # rotation annihilates the target entry analytically
                a[p, q] = 0.0
                a[q, p] = 0.0
    else:
        raise ResidualError("Jacobi sweep limit reached without convergence")
    return sorted((float(v) for v in np.diag(a)), reverse=True)


def det_gauss(m) -> float:
    """Determinant by Gaussian elimination with partial pivoting."""
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise AlgebraError("determinant needs a square matrix")
    n = a.shape[0]
    det = 1.0
    for i in range(n):
        piv = i + int(np.argmax(np.abs(a[i:, i])))
        if piv != i:
            a[[i, piv]] = a[[piv, i]]
            det = -det
        if a[i, i] == 0.0:
            return 0.0
        det *= a[i, i]
        a[i + 1:, i:] -= np.outer(a[i + 1:, i] / a[i, i], a[i, i:])
    return det
