"""Motion polynomials and the rational point paths they induce.

A motion polynomial C(t) has dual quaternion coefficients and a norm
polynomial C(t) * conj(C(t)) that is a nonzero real polynomial.  Curves
are stored densely by ascending powers of t.  The projective parameter
line is completed by the marker value INFINITY, at which a polynomial
evaluates to its leading coefficient.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .dq import STUDY_TOL, TOL, DualQuaternion
from .errors import OnBorderOfDomain, StudyViolation


class _Infinity:
    """Parameter value at infinity on the projective line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


INFINITY = _Infinity()


def _coeff_array(coeffs) -> np.ndarray:
    """Normalize input to a read-only (n+1, 8) float array."""
    if isinstance(coeffs, np.ndarray) and coeffs.ndim == 2:
        arr = np.array(coeffs, dtype=float)
    else:
        rows = []
        for c in coeffs:
            rows.append(c.coeffs if isinstance(c, DualQuaternion) else c)
        arr = np.array(rows, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 8 or arr.shape[0] < 1:
        raise ValueError("expected an (n+1, 8) coefficient array")
    if not np.all(np.isfinite(arr)):
        raise ValueError("coefficients must be finite")
    arr = np.ascontiguousarray(arr)
    arr.flags.writeable = False
    return arr


def _polymul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Convolution product of two dual quaternion coefficient arrays."""
    la, lb = a.shape[0], b.shape[0]
    out = np.zeros((la + lb - 1, 8))
    for i in range(la):
        for j in range(lb):
            out[i + j] += _kernels.dq_mul8(a[i], b[j])
    return out


def _conj_rows(a: np.ndarray) -> np.ndarray:
    signs = np.array([1.0, -1, -1, -1, 1, -1, -1, -1])
    return a * signs


def _eps_conj_rows(a: np.ndarray) -> np.ndarray:
    signs = np.array([1.0, 1, 1, 1, -1, -1, -1, -1])
    return a * signs


class MotionPolynomial:
    """Polynomial with dual quaternion coefficients, ascending powers.

    Parameters
    ----------
    coeffs : sequence of DualQuaternion or (n+1, 8) array_like
        Coefficient of t**k at index k.
    study_tol : float
        Relative tolerance for the norm check; coefficients of the dual
        and vector parts of C * conj(C) must stay below this fraction of
        the largest real coefficient.
    validate : bool
        Skip the norm check when False (used for derivatives, which are
        generally not motion polynomials themselves).
    """

    __slots__ = ("_coeffs", "_study_tol", "_validated")

    def __init__(self, coeffs, study_tol: float = STUDY_TOL, validate: bool = True):
        arr = _coeff_array(coeffs)
        self._coeffs = arr
        self._study_tol = float(study_tol)
        self._validated = False
        if validate:
            lead = arr[-1]
            scale = float(np.max(np.abs(arr)))
            if scale == 0.0 or np.max(np.abs(lead)) <= TOL * scale:
                raise ValueError("leading coefficient must be nonzero")
            self._verify_norm()
            self._validated = True

    @classmethod
    def from_axes(cls, axes, study_tol: float = STUDY_TOL) -> "MotionPolynomial":
        """Product (t - h_1)(t - h_2)...(t - h_n) of linear factors.

        Each axis is the Pluecker line of a revolute joint.  The product
        of line factors always satisfies the norm condition in exact
        arithmetic; it is still verified so inconsistent axes are
        reported as StudyViolation.
        """
        axes = list(axes)
        if not axes:
            raise ValueError("need at least one axis")
        one = np.zeros(8)
        one[0] = 1.0
        acc = None
        for h in axes:
            hc = h.coeffs if isinstance(h, DualQuaternion) else np.asarray(h, float)
            if hc.shape != (8,):
                raise ValueError("each axis needs 8 coefficients")
            factor = np.stack([-hc, one])
            acc = factor if acc is None else _polymul(acc, factor)
        return cls(acc, study_tol=study_tol)

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only (degree+1, 8) coefficient array."""
        return self._coeffs

    @property
    def degree(self) -> int:
        return self._coeffs.shape[0] - 1

    @property
    def study_tol(self) -> float:
        return self._study_tol

    @property
    def validated(self) -> bool:
        return self._validated

    def __repr__(self):
        return "MotionPolynomial(degree=%d, study_tol=%g)" % (
            self.degree,
            self._study_tol,
        )

    def coefficient(self, k: int) -> DualQuaternion:
        return DualQuaternion(self._coeffs[k])

    def norm_poly(self) -> np.ndarray:
        """Coefficients of C * conj(C), shape (2*degree + 1, 8)."""
        return _polymul(self._coeffs, _conj_rows(self._coeffs))

    def _verify_norm(self):
        n = self.norm_poly()
        real = np.abs(n[:, 0])
        rest = np.abs(n[:, 1:])
        scale = float(np.max(real))
        if scale == 0.0 or scale <= self._study_tol * float(np.max(np.abs(n))):
            raise StudyViolation("norm polynomial is numerically zero")
        defect = float(np.max(rest)) / scale
        if defect > self._study_tol:
            raise StudyViolation(
                "norm polynomial is not real: relative defect %.3e exceeds %.3e"
                % (defect, self._study_tol)
            )

    def evaluate(self, t) -> DualQuaternion:
        """Value at a parameter, with INFINITY giving the leading coefficient.

        Raises OnBorderOfDomain when the primal norm of the value
        vanishes relative to its magnitude, since no displacement is
        defined there.
        """
        if t is INFINITY:
            value = self._coeffs[-1].copy()
        else:
            value = _kernels.poly_eval8(self._coeffs, float(t))
        if self._validated:
            total = float(np.dot(value, value))
            primal = float(np.dot(value[:4], value[:4]))
            if total == 0.0 or primal <= self._study_tol * total:
                raise OnBorderOfDomain(
                    "motion is undefined at t = %r (vanishing primal norm)" % (t,)
                )
        return DualQuaternion(value)

    def derivative(self) -> "MotionPolynomial":
        """Formal derivative.  Not validated as a motion polynomial."""
        c = self._coeffs
        if c.shape[0] == 1:
            return MotionPolynomial(
                np.zeros((1, 8)), study_tol=self._study_tol, validate=False
            )
        k = np.arange(1, c.shape[0], dtype=float)[:, None]
        return MotionPolynomial(c[1:] * k, study_tol=self._study_tol, validate=False)

    def reparameterize_reciprocal(self) -> "MotionPolynomial":
        """Coefficient reversal, i.e. t**degree * C(1/t).

        Swaps the roles of the finite parameter origin and infinity;
        applying it twice returns the original polynomial.
        """
        return MotionPolynomial(
            self._coeffs[::-1].copy(),
            study_tol=self._study_tol,
            validate=self._validated,
        )

    def act_poly(self, x) -> np.ndarray:
        """Coefficients of eps_conj(C) * (1 + eps x) * conj(C)."""
        x = np.asarray(x, dtype=float)
        if x.shape != (3,):
            raise ValueError("expected 3 point coordinates")
        embed = np.zeros((1, 8))
        embed[0, 0] = 1.0
        embed[0, 5:8] = x
        return _polymul(
            _polymul(_eps_conj_rows(self._coeffs), embed), _conj_rows(self._coeffs)
        )

    def point_path(self, x) -> "RationalPointPath":
        """Rational path traced by a point under the motion.

        Returns homogeneous coordinates (x0 : x1 : x2 : x3) as real
        polynomials of degree at most 2*degree.  The rotational
        components of the acted point must vanish; a failure to do so
        beyond study_tol reports StudyViolation.
        """
        p = self.act_poly(x)
        scale = float(np.max(np.abs(p)))
        if scale == 0.0:
            raise StudyViolation("point path is identically zero")
        junk = float(np.max(np.abs(p[:, 1:5])))
        if junk > self._study_tol * scale:
            raise StudyViolation(
                "acted point has non-point components: relative defect %.3e"
                % (junk / scale)
            )
        return RationalPointPath(p[:, 0].copy(), p[:, 5:8].T.copy())


class RationalPointPath:
    """Homogeneous rational curve (x0 : x1 : x2 : x3) in 3-space.

    x0 is the homogeneous coordinate; the Euclidean point at parameter t
    is (x1/x0, x2/x0, x3/x0).  Derivative coefficient arrays are
    precomputed for the speed kernel.
    """

    __slots__ = ("_x0", "_xi", "_x0d", "_xid")

    def __init__(self, x0, xi):
        x0 = np.ascontiguousarray(np.asarray(x0, dtype=float))
        xi = np.ascontiguousarray(np.asarray(xi, dtype=float))
        if x0.ndim != 1 or xi.shape != (3, x0.shape[0]):
            raise ValueError("expected x0 of shape (n,) and xi of shape (3, n)")
        if not (np.all(np.isfinite(x0)) and np.all(np.isfinite(xi))):
            raise ValueError("coefficients must be finite")
        if float(np.max(np.abs(x0))) == 0.0:
            raise ValueError("homogeneous coordinate is identically zero")
        self._x0 = x0
        self._xi = xi
        self._x0d = _poly_derivative(x0)
        self._xid = np.ascontiguousarray(
            np.stack([_poly_derivative(xi[i]) for i in range(3)])
        )
        for a in (self._x0, self._xi, self._x0d, self._xid):
            a.flags.writeable = False

    @property
    def x0(self) -> np.ndarray:
        return self._x0

    @property
    def xi(self) -> np.ndarray:
        return self._xi

    @property
    def x0d(self) -> np.ndarray:
        """Coefficients of the derivative of x0."""
        return self._x0d

    @property
    def xid(self) -> np.ndarray:
        """Coefficients of the derivatives of x1, x2, x3, shape (3, n)."""
        return self._xid

    @property
    def degree(self) -> int:
        return self._x0.shape[0] - 1

    def __repr__(self):
        return "RationalPointPath(degree=%d)" % (self.degree,)

    def hom(self, t: float) -> np.ndarray:
        """Homogeneous coordinates (x0, x1, x2, x3) at t."""
        out = np.empty(4)
        out[0] = _kernels.horner(self._x0, float(t))
        for i in range(3):
            out[i + 1] = _kernels.horner(self._xi[i], float(t))
        return out

    def point(self, t: float) -> np.ndarray:
        """Euclidean point at t.  Raises PoleOnPath where x0 vanishes."""
        from .errors import PoleOnPath

        h = self.hom(t)
        scale = float(np.max(np.abs(h)))
        if scale == 0.0 or abs(h[0]) <= 1e-14 * scale:
            raise PoleOnPath("path has a pole at t = %r" % (t,))
        return h[1:] / h[0]

    def speed(self, t: float) -> float:
        """Norm of the Euclidean velocity at t."""
        return float(
            _kernels.path_speed(self._x0, self._x0d, self._xi, self._xid, float(t))
        )

    def reciprocal(self) -> "RationalPointPath":
        """Path in the reciprocal chart u = 1/t.

        Coefficient reversal of all four polynomials; traces the same
        point set with the parameter roles of 0 and infinity exchanged.
        """
        return RationalPointPath(self._x0[::-1].copy(), self._xi[:, ::-1].copy())


def _poly_derivative(c: np.ndarray) -> np.ndarray:
    if c.shape[0] == 1:
        return np.zeros(1)
    return c[1:] * np.arange(1, c.shape[0], dtype=float)
