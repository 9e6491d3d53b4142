"""Joint-space kinematics for one-parameter rational linkages.

The driving revolute joint has a rotation quaternion q0 + qx*i + qy*j
+ qz*k.  Its joint angle theta relates to the curve parameter t through

    t = |q_vec| / tan(theta / 2) + q0

which maps theta = 0 to the point at infinity and theta = pi to q0.
Inverse kinematics minimizes the squared distance between normalized
pose representatives with a damped Gauss-Newton iteration, first in the
t chart and, when every seed fails there, in the reciprocal chart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .dq import CANONICAL_TOL, STUDY_TOL, TOL, DualQuaternion
from .errors import InvalidPose, NoConvergence, StudyViolation
from .motionpoly import INFINITY, MotionPolynomial

TWO_PI = 2.0 * math.pi

_RESIDUAL_FLOOR = 1e-32


def _axis_parts(axis) -> tuple:
    q = np.asarray(axis, dtype=float)
    if q.shape != (4,):
        raise ValueError("driving axis must be a quaternion of 4 coefficients")
    r = float(np.sqrt(np.dot(q[1:], q[1:])))
    if r <= TOL:
        raise ValueError("driving axis needs a nonzero vector part")
    return float(q[0]), r


def angle_to_param(theta, axis):
    """Curve parameter for a joint angle of the driving revolute axis.

    The angle is taken modulo 2*pi.  Zero maps to INFINITY and pi maps
    exactly to the scalar part of the axis quaternion.
    """
    q0, r = _axis_parts(axis)
    th = float(theta) % TWO_PI
    if th == 0.0:
        return INFINITY
    if th == math.pi:
        return q0
    return r / math.tan(0.5 * th) + q0


def param_to_angle(t, axis) -> float:
    """Joint angle in [0, 2*pi) for a curve parameter, inverse of
    angle_to_param."""
    q0, r = _axis_parts(axis)
    if t is INFINITY:
        return 0.0
    return (2.0 * math.atan2(r, float(t) - q0)) % TWO_PI


@dataclass(frozen=True, eq=False)
class Mechanism:
    """A single-loop linkage driven by one revolute joint.

    Attributes
    ----------
    motion : MotionPolynomial
        Motion of the coupler relative to the base, monic in the usual
        construction from joint axes.
    driving_axis : ndarray, shape (4,)
        Rotation quaternion of the driven joint, used by the angle
        chart.
    tool_home : DualQuaternion
        Displacement from the coupler frame to the tool frame, applied
        on the right of the evaluated motion.
    """

    motion: MotionPolynomial
    driving_axis: np.ndarray
    tool_home: DualQuaternion = None

    def __post_init__(self):
        if not isinstance(self.motion, MotionPolynomial):
            raise TypeError("motion must be a MotionPolynomial")
        if not self.motion.validated:
            raise ValueError("mechanism needs a validated motion polynomial")
        axis = np.array(self.driving_axis, dtype=float)
        _axis_parts(axis)
        axis.flags.writeable = False
        object.__setattr__(self, "driving_axis", axis)
        tool = self.tool_home
        if tool is None:
            tool = DualQuaternion.identity()
        if not isinstance(tool, DualQuaternion):
            tool = DualQuaternion(tool)
        if not tool.is_study(max(self.motion.study_tol, STUDY_TOL)):
            raise StudyViolation("tool_home is not a displacement")
        object.__setattr__(self, "tool_home", tool)


def direct_kinematics(mechanism: Mechanism, theta) -> DualQuaternion:
    """Pose of the tool at a joint angle of the driving axis."""
    t = angle_to_param(theta, mechanism.driving_axis)
    return mechanism.motion.evaluate(t) * mechanism.tool_home


@dataclass(frozen=True)
class IKOptions:
    """Tuning knobs for inverse_kinematics."""

    success_tol: float = 1e-10
    max_iterations: int = 100
    n_seeds: int = 21
    max_halvings: int = 30
    divergence_bound: float = 1e8
    step_tol: float = 1e-14


@dataclass(frozen=True)
class IKResult:
    """Converged inverse kinematics solution.

    residual is the squared norm of the normalized pose error at the
    final parameter; residual_trace lists it at every accepted iterate
    of the winning seed, so it is non-increasing by construction.
    """

    t: object
    theta: float
    residual: float
    iterations: int
    branch: str
    residual_trace: tuple = field(repr=False, default=())


class _Target:
    """Canonical and unit-norm representatives of a fixed target pose."""

    __slots__ = ("can", "unit")

    def __init__(self, p8: np.ndarray):
        n = math.sqrt(float(np.dot(p8, p8)))
        if n <= TOL:
            raise InvalidPose("target pose is numerically zero")
        self.can = p8 / p8[0] if abs(p8[0]) > CANONICAL_TOL * n else None
        self.unit = (p8 / n) * _first_nonzero_sign(p8)


def _first_nonzero_sign(v: np.ndarray) -> float:
    n = math.sqrt(float(np.dot(v, v)))
    for x in v:
        if abs(x) > TOL * n:
            return -1.0 if x < 0.0 else 1.0
    return 1.0


def _error_terms(c: np.ndarray, cd: np.ndarray, target: _Target):
    """Normalized error E = p_hat - C_hat(t) and derivative of C_hat.

    Uses the canonical representative (division by the first coordinate)
    whenever both the curve value and the target allow it, otherwise the
    unit-norm representative with a sign fixed by the first nonzero
    coordinate; both sides always switch together.  Returns None when
    the curve value vanishes.
    """
    n2 = float(np.dot(c, c))
    if n2 <= 0.0:
        return None
    n = math.sqrt(n2)
    if target.can is not None and abs(c[0]) > CANONICAL_TOL * n:
        chat = c / c[0]
        chatd = (cd * c[0] - c * cd[0]) / (c[0] * c[0])
        err = target.can - chat
    else:
        s = _first_nonzero_sign(c)
        chat = (s / n) * c
        chatd = (s / n) * (cd - c * (float(np.dot(c, cd)) / n2))
        err = target.unit - chat
    return err, chatd


@dataclass
class _SeedRun:
    t: float
    residual: float
    iterations: int
    trace: tuple
    failed: bool


def _residual_at(coeffs, dcoeffs, target, t) -> float:
    c = _kernels.poly_eval8(coeffs, t)
    terms = _error_terms(c, _kernels.poly_eval8(dcoeffs, t), target)
    if terms is None:
        return math.inf
    err, _ = terms
    return float(np.dot(err, err))


def _refine(coeffs, dcoeffs, target, t0, opt: IKOptions) -> _SeedRun:
    """Damped Gauss-Newton from one seed, run to stagnation."""
    t = float(t0)
    c = _kernels.poly_eval8(coeffs, t)
    terms = _error_terms(c, _kernels.poly_eval8(dcoeffs, t), target)
    if terms is None:
        return _SeedRun(t, math.inf, 0, (), True)
    err, chatd = terms
    f = float(np.dot(err, err))
    trace = [f]
    iters = 0
    failed = False
    while iters < opt.max_iterations:
        if f <= _RESIDUAL_FLOOR:
            break
        denom = float(np.dot(chatd, chatd))
        if denom <= 1e-300:
            break
        step = float(np.dot(chatd, err)) / denom
        lam = 1.0
        accepted = False
        t_try = t
        for _ in range(opt.max_halvings + 1):
            t_try = t + lam * step
            if abs(t_try) > opt.divergence_bound:
                failed = True
                break
            c_try = _kernels.poly_eval8(coeffs, t_try)
            terms_try = _error_terms(
                c_try, _kernels.poly_eval8(dcoeffs, t_try), target
            )
            if terms_try is not None:
                err_try, chatd_try = terms_try
                f_try = float(np.dot(err_try, err_try))
                if f_try < f:
                    accepted = True
                    break
            lam *= 0.5
        if failed or not accepted:
            break
        moved = abs(t_try - t)
        t = t_try
        f = f_try
        err = err_try
        chatd = chatd_try
        trace.append(f)
        iters += 1
        if moved <= opt.step_tol * (1.0 + abs(t)):
            break
    return _SeedRun(t, f, iters, tuple(trace), failed)


def _seed_values(n_seeds: int) -> np.ndarray:
    if n_seeds < 1:
        raise ValueError("need at least one seed")
    if n_seeds == 1:
        return np.array([0.0])
    return np.linspace(-1.0, 1.0, n_seeds)


def _ranked_seeds(coeffs, dcoeffs, target, n_seeds: int) -> list:
    ts = _seed_values(n_seeds)
    scores = np.array([_residual_at(coeffs, dcoeffs, target, t) for t in ts])
    order = np.argsort(scores, kind="stable")
    return [float(ts[i]) for i in order]


def ik_seed_grid(motion: MotionPolynomial, pose: DualQuaternion, n_seeds: int = 21):
    """Start parameters on [-1, 1] ranked by normalized pose error.

    A single seed degenerates to [0.0].  The pose is compared against
    the motion itself, so divide a tool displacement out first when the
    mechanism has one.
    """
    coeffs = motion.coeffs
    dcoeffs = _derivative_rows(coeffs)
    target = _Target(np.asarray(pose.coeffs, dtype=float))
    return _ranked_seeds(coeffs, dcoeffs, target, n_seeds)


def _derivative_rows(coeffs: np.ndarray) -> np.ndarray:
    if coeffs.shape[0] == 1:
        return np.zeros((1, 8))
    k = np.arange(1, coeffs.shape[0], dtype=float)[:, None]
    return np.ascontiguousarray(coeffs[1:] * k)


def _run_branch(coeffs, target, opt: IKOptions):
    dcoeffs = _derivative_rows(coeffs)
    best = None
    for seed in _ranked_seeds(coeffs, dcoeffs, target, opt.n_seeds):
        run = _refine(coeffs, dcoeffs, target, seed, opt)
        if run.failed:
            continue
        if best is None or (run.residual, abs(run.t)) < (best.residual, abs(best.t)):
            best = run
    return best


def inverse_kinematics(
    mechanism: Mechanism, pose: DualQuaternion, options: IKOptions = None
) -> IKResult:
    """Joint angle of the driving axis that reproduces a tool pose.

    Seeds a damped Gauss-Newton iteration on [-1, 1], picking the best
    converged parameter by residual and then by magnitude.  When every
    seed diverges or stalls above success_tol, the same search runs on
    the reciprocal parameterization, which places poses near the
    parameter infinity (joint angle near zero) at small parameters.

    Raises InvalidPose for targets that are clearly not displacements
    and NoConvergence (carrying the best iterate found) when both
    charts fail.  The pose gate allows a hundredfold of the mechanism's
    Study tolerance: evaluating a curve with slightly perturbed
    coefficients amplifies the norm defect pointwise, so poses produced
    by such a mechanism's own direct kinematics would otherwise be
    rejected.
    """
    opt = options if options is not None else IKOptions()
    if not isinstance(pose, DualQuaternion):
        pose = DualQuaternion(pose)
    tol = min(0.1, 100.0 * max(mechanism.motion.study_tol, STUDY_TOL))
    if not pose.is_study(tol):
        raise InvalidPose(
            "target pose is not a displacement (Study defect above %.1e)" % tol
        )
    # divide the tool out on the right; the scale of conj(tool) is
    # irrelevant because representatives are normalized
    curve_target = _kernels.dq_mul8(
        pose.coeffs, mechanism.tool_home.conjugate().coeffs
    )
    target = _Target(curve_target)
    axis = mechanism.driving_axis
    coeffs = mechanism.motion.coeffs

    direct = _run_branch(coeffs, target, opt)
    if direct is not None and direct.residual <= opt.success_tol:
        return IKResult(
            t=direct.t,
            theta=param_to_angle(direct.t, axis),
            residual=direct.residual,
            iterations=direct.iterations,
            branch="direct",
            residual_trace=direct.trace,
        )

    recip = _run_branch(np.ascontiguousarray(coeffs[::-1]), target, opt)
    if recip is not None and recip.residual <= opt.success_tol:
        t = INFINITY if recip.t == 0.0 else 1.0 / recip.t
        return IKResult(
            t=t,
            theta=param_to_angle(t, axis),
            residual=recip.residual,
            iterations=recip.iterations,
            branch="reciprocal",
            residual_trace=recip.trace,
        )

    candidates = []
    if direct is not None:
        candidates.append((direct.residual, abs(direct.t), direct, "direct"))
    if recip is not None:
        t_mapped = INFINITY if recip.t == 0.0 else 1.0 / recip.t
        t_size = math.inf if t_mapped is INFINITY else abs(t_mapped)
        candidates.append((recip.residual, t_size, recip, "reciprocal"))
    best_result = None
    if candidates:
        candidates.sort(key=lambda item: (item[0], item[1]))
        _, _, run, branch = candidates[0]
        t = run.t
        if branch == "reciprocal":
            t = INFINITY if run.t == 0.0 else 1.0 / run.t
        best_result = IKResult(
            t=t,
            theta=param_to_angle(t, axis),
            residual=run.residual,
            iterations=run.iterations,
            branch=branch,
            residual_trace=run.trace,
        )
    raise NoConvergence(
        "inverse kinematics did not reach success_tol=%.1e (best residual %s)"
        % (opt.success_tol, best_result.residual if best_result else "n/a"),
        best=best_result,
    )
