"""Arc length, equidistant segmentation and joint velocity profiles.

Arc length of a rational point path uses adaptive Simpson quadrature on
the closed-form speed

    |x' * x0 - x * x0'| / x0**2

summed over the three Euclidean components.  Arcs that sweep through
the home configuration (joint angle zero, curve parameter at infinity)
are split into pieces integrated in the t chart and in the reciprocal
chart u = 1/t, where the same path has reversed coefficients.

Profiles sample a duration T at frequency f into n = round(T*f) steps,
n+1 samples with timestamps i/f.  Reported joint velocities are forward
differences omega_i = (theta_{i+1} - theta_i) * f with the last value
repeated, so they are exactly consistent with the returned angles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .dq import TOL
from .errors import PoleOnPath, QuadratureFailure
from .kinematics import Mechanism, angle_to_param
from .motionpoly import INFINITY, RationalPointPath

TWO_PI = 2.0 * math.pi

ARC_DIRECTIONS = ("short", "long", "increasing", "decreasing")


def _real_roots(coeffs: np.ndarray) -> np.ndarray:
    """Real roots of an ascending real coefficient polynomial."""
    scale = float(np.max(np.abs(coeffs)))
    if scale == 0.0:
        return np.array([math.nan])
    desc = coeffs[::-1]
    lead = 0
    while lead < desc.shape[0] - 1 and abs(desc[lead]) <= 1e-14 * scale:
        lead += 1
    desc = desc[lead:]
    if desc.shape[0] <= 1:
        return np.empty(0)
    roots = np.roots(desc)
    real = roots[np.abs(roots.imag) <= 1e-8 * (1.0 + np.abs(roots.real))].real
    return real


def _check_poles(path: RationalPointPath, lo: float, hi: float):
    roots = _real_roots(path.x0)
    if roots.size == 0:
        return
    margin = 1e-12 * (1.0 + hi - lo)
    inside = roots[(roots >= lo - margin) & (roots <= hi + margin)]
    if inside.size or np.any(np.isnan(roots)):
        where = float(inside[0]) if inside.size else math.nan
        raise PoleOnPath(
            "homogeneous coordinate vanishes at t = %r inside [%r, %r]"
            % (where, lo, hi)
        )


def arc_length(
    path: RationalPointPath,
    t0: float,
    t1: float,
    tol: float = 1e-10,
    max_depth: int = 40,
) -> float:
    """Length of the path between two finite parameters.

    tol is the absolute Simpson tolerance per subinterval.  Raises
    PoleOnPath when x0 has a real root inside the interval and
    QuadratureFailure when some subinterval still misses tolerance at
    max_depth.
    """
    a, b = float(t0), float(t1)
    if a == b:
        return 0.0
    lo, hi = (a, b) if a < b else (b, a)
    _check_poles(path, lo, hi)
    value, flag = _kernels.arc_simpson(
        path.x0, path.x0d, path.xi, path.xid, lo, hi, float(tol), int(max_depth)
    )
    if flag:
        raise QuadratureFailure(
            "adaptive Simpson hit depth %d above tolerance %g on [%r, %r]"
            % (max_depth, tol, lo, hi)
        )
    return float(value)


@dataclass(frozen=True)
class PathSegmentation:
    """Equidistant knots along a path segment.

    params holds n+1 curve parameters in traversal order and angles the
    matching joint angles when a driving axis was supplied.
    """

    params: tuple
    angles: object
    segment_length: float
    total_length: float


def equidistant_params(
    path: RationalPointPath,
    t0: float,
    t1: float,
    n: int,
    driving_axis=None,
    tol: float = 1e-10,
    max_depth: int = 40,
    max_bisect: int = 200,
) -> PathSegmentation:
    """Split [t0, t1] into n pieces of equal arc length.

    Interior knots come from bisection on the cumulative length,
    resolved incrementally from the previous knot to a tolerance of
    1e-8 times the segment length.
    """
    n = int(n)
    if n < 1:
        raise ValueError("need at least one segment")
    a, b = float(t0), float(t1)
    total = arc_length(path, a, b, tol=tol, max_depth=max_depth)
    seg = total / n
    # accept at half the knot tolerance so the cumulative positions stay
    # within it and every segment deviates by at most the full tolerance
    btol = 0.5 * seg * 1e-8
    params = [a]
    prev = a
    done = 0.0
    for i in range(1, n):
        want = i * seg - done
        lo, hi = prev, b
        mid = prev
        got = 0.0
        for _ in range(max_bisect):
            mid = 0.5 * (lo + hi)
            got = arc_length(path, prev, mid, tol=tol, max_depth=max_depth)
            if abs(got - want) <= btol:
                break
            if got < want:
                lo = mid
            else:
                hi = mid
        params.append(mid)
        prev = mid
        done += got
    params.append(b)
    angles = None
    if driving_axis is not None:
        from .kinematics import param_to_angle

        angles = tuple(param_to_angle(p, driving_axis) for p in params)
    return PathSegmentation(
        params=tuple(params),
        angles=angles,
        segment_length=seg,
        total_length=total,
    )


def resolve_arc(theta0: float, theta1: float, direction: str = "short") -> float:
    """Signed angular travel from theta0 to theta1 along the chosen arc.

    increasing/decreasing force the sign; short/long pick the smaller or
    larger angular span, breaking the half-turn tie towards increasing
    for short and decreasing for long.  Coincident angles travel zero.
    """
    if direction not in ARC_DIRECTIONS:
        raise ValueError("direction must be one of %s" % (ARC_DIRECTIONS,))
    inc = (float(theta1) - float(theta0)) % TWO_PI
    if inc == 0.0:
        return 0.0
    dec = inc - TWO_PI
    if direction == "increasing":
        return inc
    if direction == "decreasing":
        return dec
    if direction == "short":
        return inc if inc <= math.pi else dec
    return dec if inc <= math.pi else inc


class _UnwrappedArc:
    """Tool point path addressed by unwrapped driving joint angle.

    Integrates in the t chart away from home crossings (angle multiples
    of 2*pi) and in the reciprocal chart inside a window of half-width
    w around them; w is chosen so the reciprocal pieces stay away from
    t = 0, which that chart cannot represent.
    """

    def __init__(self, mechanism: Mechanism, tool, tol=1e-10, max_depth=40):
        tracked = mechanism.tool_home.act_on_point(np.asarray(tool, dtype=float))
        self.path = mechanism.motion.point_path(tracked)
        self.rpath = self.path.reciprocal()
        self.axis = mechanism.driving_axis
        q0 = float(self.axis[0])
        r = float(np.sqrt(np.dot(self.axis[1:], self.axis[1:])))
        if abs(q0) > TOL:
            self.window = min(0.5 * math.pi, math.atan(r / abs(q0)))
        else:
            self.window = 0.5 * math.pi
        self.tol = float(tol)
        self.max_depth = int(max_depth)

    def _param(self, phi: float) -> float:
        return angle_to_param(phi, self.axis)

    def _recip_param(self, phi: float) -> float:
        t = self._param(phi)
        return 0.0 if t is INFINITY else 1.0 / t

    def _pieces(self, lo: float, hi: float):
        """Split [lo, hi] into (a, b, in_window) chart pieces."""
        w = self.window
        k_min = math.ceil((lo - w) / TWO_PI)
        k_max = math.floor((hi + w) / TWO_PI)
        cuts = [lo]
        windows = []
        for k in range(k_min, k_max + 1):
            c = TWO_PI * k
            a = max(lo, c - w)
            b = min(hi, c + w)
            if b > a:
                windows.append((a, b))
                cuts.extend((a, b))
        cuts.append(hi)
        cuts = sorted(set(cuts))
        pieces = []
        for a, b in zip(cuts[:-1], cuts[1:]):
            mid = 0.5 * (a + b)
            inside = any(wa <= mid <= wb for wa, wb in windows)
            pieces.append((a, b, inside))
        return pieces

    def length(self, phi_a: float, phi_b: float) -> float:
        """Arc length between two unwrapped angles."""
        if phi_a == phi_b:
            return 0.0
        lo, hi = (phi_a, phi_b) if phi_a < phi_b else (phi_b, phi_a)
        total = 0.0
        for a, b, in_window in self._pieces(lo, hi):
            if in_window:
                ua = self._recip_param(a)
                ub = self._recip_param(b)
                total += arc_length(
                    self.rpath, ua, ub, tol=self.tol, max_depth=self.max_depth
                )
            else:
                ta = self._param(a)
                tb = self._param(b)
                total += arc_length(
                    self.path, ta, tb, tol=self.tol, max_depth=self.max_depth
                )
        return total


def arc_length_between(
    mechanism: Mechanism,
    theta0: float,
    theta1: float,
    tool=(0.0, 0.0, 0.0),
    direction: str = "short",
    tol: float = 1e-10,
    max_depth: int = 40,
) -> float:
    """Tool point arc length between two joint angles along a chosen arc."""
    delta = resolve_arc(theta0, theta1, direction)
    if delta == 0.0:
        return 0.0
    arc = _UnwrappedArc(mechanism, tool, tol=tol, max_depth=max_depth)
    return arc.length(float(theta0), float(theta0) + delta)


@dataclass(frozen=True)
class TrajectoryProfile:
    """Uniformly timed joint-space samples of one driving joint.

    Angles are unwrapped, i.e. continuous across the 2*pi seam, so that
    forward differences always reflect the physical travel.
    """

    times: np.ndarray
    thetas: np.ndarray
    omegas: np.ndarray
    duration: float
    frequency: float
    mode: str

    def __post_init__(self):
        for name in ("times", "thetas", "omegas"):
            arr = np.ascontiguousarray(np.asarray(getattr(self, name), dtype=float))
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        if not (self.times.shape == self.thetas.shape == self.omegas.shape):
            raise ValueError("times, thetas and omegas must have equal shapes")

    @property
    def samples(self) -> list:
        """Samples as (time, theta, omega) tuples of Python floats."""
        return [
            (float(t), float(th), float(om))
            for t, th, om in zip(self.times, self.thetas, self.omegas)
        ]


def _sample_count(duration: float, frequency: float) -> int:
    T = float(duration)
    f = float(frequency)
    if T <= 0.0 or f <= 0.0:
        raise ValueError("duration and frequency must be positive")
    n = int(round(T * f))
    if n < 1:
        raise ValueError("duration times frequency must round to at least one step")
    return n


def _finish_profile(thetas, duration, frequency, mode) -> TrajectoryProfile:
    thetas = np.asarray(thetas, dtype=float)
    n = thetas.shape[0] - 1
    times = np.arange(n + 1) / float(frequency)
    omegas = np.empty(n + 1)
    omegas[:n] = np.diff(thetas) * float(frequency)
    omegas[n] = omegas[n - 1]
    return TrajectoryProfile(
        times=times,
        thetas=thetas,
        omegas=omegas,
        duration=float(duration),
        frequency=float(frequency),
        mode=mode,
    )


def linear_profile(
    theta0: float,
    theta1: float,
    duration: float,
    frequency: float,
    direction: str = "short",
) -> TrajectoryProfile:
    """Constant velocity sweep of the chosen arc."""
    n = _sample_count(duration, frequency)
    delta = resolve_arc(theta0, theta1, direction)
    thetas = float(theta0) + delta * np.arange(n + 1) / n
    return _finish_profile(thetas, duration, frequency, "linear")


def quintic_time_scaling(theta_start: float, theta_end: float, duration: float):
    """Quintic rest-to-rest scaling between two unwrapped angles.

    Returns a callable mapping a time to (theta, omega).  Boundary
    values are exact, boundary velocities and accelerations vanish, and
    the peak speed 15*|theta_end - theta_start| / (8*duration) occurs at
    the half-time.  Times outside [0, duration] clamp to the endpoints.
    """
    T = float(duration)
    if T <= 0.0:
        raise ValueError("duration must be positive")
    start = float(theta_start)
    delta = float(theta_end) - start

    def scaling(time: float) -> tuple:
        tau = float(time) / T
        if tau <= 0.0:
            tau = 0.0
        elif tau >= 1.0:
            tau = 1.0
        s = tau * tau * tau * (10.0 + tau * (-15.0 + 6.0 * tau))
        sd = 30.0 * tau * tau * (1.0 + tau * (-2.0 + tau))
        return start + s * delta, sd * delta / T

    return scaling


def quintic_profile(
    theta0: float,
    theta1: float,
    duration: float,
    frequency: float,
    direction: str = "short",
) -> TrajectoryProfile:
    """Rest-to-rest quintic sweep of the chosen arc, sampled uniformly."""
    n = _sample_count(duration, frequency)
    delta = resolve_arc(theta0, theta1, direction)
    scaling = quintic_time_scaling(theta0, float(theta0) + delta, duration)
    f = float(frequency)
    thetas = np.array([scaling(i / f)[0] for i in range(n + 1)])
    return _finish_profile(thetas, duration, frequency, "quintic")


def _blend_warp(u: float, ramp: float = 0.1) -> float:
    """Monotone C1 warp of [0, 1] with flat ends and a linear middle.

    The slope ramps in over the first and out over the last `ramp`
    fraction with a cubic smoothstep, which removes the velocity jump of
    a purely equidistant profile at start and stop.
    """
    m = 1.0 / (1.0 - ramp)

    def ramp_area(x: float) -> float:
        v = x / ramp
        return m * ramp * (v * v * v - 0.5 * v * v * v * v)

    if u <= 0.0:
        return 0.0
    if u >= 1.0:
        return 1.0
    if u < ramp:
        return ramp_area(u)
    if u > 1.0 - ramp:
        return 1.0 - ramp_area(1.0 - u)
    return m * ramp * 0.5 + m * (u - ramp)


def equidistant_profile(
    mechanism: Mechanism,
    theta0: float,
    theta1: float,
    duration: float,
    frequency: float,
    tool=(0.0, 0.0, 0.0),
    direction: str = "short",
    blend: bool = False,
    tol: float = 1e-10,
    max_depth: int = 40,
    max_bisect: int = 200,
) -> TrajectoryProfile:
    """Profile whose samples are equidistant along the tool point path.

    The tool point is given in the tool frame and travels the chosen
    arc, including through the home configuration when the arc crosses
    it.  Each sampling step covers the same tool path length, so the
    joint velocity rises where the tool point moves slowly.  With
    blend=True the first and last tenth of the samples ease in and out
    instead of starting at full speed.
    """
    n = _sample_count(duration, frequency)
    delta = resolve_arc(theta0, theta1, direction)
    start = float(theta0)
    if delta == 0.0:
        thetas = np.full(n + 1, start)
        return _finish_profile(thetas, duration, frequency, "equidistant")
    arc = _UnwrappedArc(mechanism, tool, tol=tol, max_depth=max_depth)
    span = abs(delta)
    sigma = 1.0 if delta > 0.0 else -1.0
    total = arc.length(start, start + delta)
    btol = 0.5 * (total / n) * 1e-8
    fractions = [_blend_warp(i / n) if blend else i / n for i in range(n + 1)]
    thetas = np.empty(n + 1)
    thetas[0] = start
    prev_psi = 0.0
    done = 0.0
    for i in range(1, n):
        want = fractions[i] * total - done
        lo, hi = prev_psi, span
        mid = prev_psi
        got = 0.0
        for _ in range(max_bisect):
            mid = 0.5 * (lo + hi)
            got = arc.length(start + sigma * prev_psi, start + sigma * mid)
            if abs(got - want) <= btol:
                break
            if got < want:
                lo = mid
            else:
                hi = mid
        thetas[i] = start + sigma * mid
        done += got
        prev_psi = mid
    thetas[n] = start + delta
    return _finish_profile(thetas, duration, frequency, "equidistant")
