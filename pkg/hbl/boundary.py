import numpy as np
from collections import namedtuple
from scipy.integrate import quad, trapezoid
import logging
from .analytic import DomainError
from .harmonic import eval_map, partials, dilatation_function

# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.
#
# Copyright the hbl developers

"""
Boundary behaviour of harmonic maps at a point zeta = exp(i theta0) of the
unit circle.

The central object is the curve
``Gamma(theta) = (1 - m |theta - theta0|) exp(i theta)`` which spirals into
zeta from both sides, and the integral

    L(m) = int_Gamma (1 - |a(z)|^2) / (1 - |z|^2) |dz|

of a dilatation a along it. If L(m) is infinite for some m < 1/pi the
boundary function is continuous at zeta. Infinity is not finitely
decidable, so L(m) is computed on a shrinking schedule of cut-offs and
classified from the trend of the partial values.

The module also holds the radial derivative criterion, the area of the
image, the area inequality that bounds it by L(m), a sampled majorization
check and sampled cluster sets.
"""

logger = logging.getLogger(__name__)

CONVERGENT = "convergent"
DIVERGENT = "divergent"
INCONCLUSIVE = "inconclusive"

TENDS_TO_ZERO = "tends-to-zero"
TENDS_TO_POSITIVE = "tends-to-positive"

DEFAULT_SCHEDULE = tuple(10.0 ** -np.arange(1, 8))
DEFAULT_RADII = tuple(1.0 - np.logspace(-1, -4, 13))

# lower bound on |Gamma'| for m < 1/pi
SPEED_FLOOR = 0.3
AREA_CONSTANT = 0.15

DivergenceVerdict = namedtuple("DivergenceVerdict",
                               ["verdict", "limit_or_rate", "slope",
                                "residual", "label"])

LmEstimate = namedtuple("LmEstimate", ["m", "partial_values", "verdict"])

BlwTrend = namedtuple("BlwTrend", ["radii", "values", "verdict",
                                   "c_estimate"])

Thm54Report = namedtuple("Thm54Report",
                         ["area", "H", "integral_L", "rhs",
                          "inequality_holds", "estimates"])
Thm54Report.__new__.__defaults__ = ((),)

ClusterSample = namedtuple("ClusterSample",
                           ["sources", "points", "reference",
                            "max_distance"])

MajorizedLm = namedtuple("MajorizedLm", ["L_a", "L_F", "holds"])


class BoundaryDiagnosticsError(Exception):
    """
    A generic error created by the boundary diagnostics
    """

    pass


class BoundaryEvaluationError(BoundaryDiagnosticsError):
    """
        Raised when a map cannot be evaluated close to the boundary
    """
    def __init__(self, message, radius):
        self.message = message
        self.radius = radius

    def __str__(self):
        return "{} (at radius {})".format(self.message, self.radius)


class GammaCurve(object):
    """
    The curve (1 - m |theta - theta0|) exp(i theta), for
    0 < |theta - theta0| <= min(pi, 1/m)::

        curve = GammaCurve(0.0, 0.2)
        curve.point(np.pi)    # (-0.3717+0j), speed 0.4221

    Args:
        zeta_angle: theta0, the angle of the boundary point
        m: slope of the approach, m > 0
    """
    def __init__(self, zeta_angle, m):
        if not m > 0:
            raise BoundaryDiagnosticsError("m must be positive, got "
                                           "{}".format(m))
        self.zeta_angle = float(zeta_angle)
        self.m = float(m)

    @property
    def theta_max(self):
        """Largest admissible |theta - theta0|"""
        return min(np.pi, 1.0 / self.m)

    @property
    def zeta(self):
        return np.exp(1j * self.zeta_angle)

    def point(self, theta):
        """Return (z, |dz/dtheta|) at theta"""
        u = abs(theta - self.zeta_angle)
        if not 0 < u <= self.theta_max * (1.0 + 1e-15):
            raise BoundaryDiagnosticsError(
                "theta={} outside the curve's range 0 < |theta - theta0| "
                "<= {}".format(theta, self.theta_max))
        modulus = 1.0 - self.m * u
        return (modulus * np.exp(1j * theta),
                float(np.hypot(self.m, modulus)))


def gamma_point(curve, theta):
    """
    Point and speed |Gamma'(theta)| of a GammaCurve at theta. For m < 1/pi
    the speed stays above SPEED_FLOOR (its minimum, near m = 0.29, is about
    0.303).
    """
    return curve.point(theta)


def _piece(a, curve, lo, hi, tol):
    # int over lo <= |theta - theta0| <= hi, both branches, in s = log u;
    # with 1 - |z|^2 = m u (2 - m u) the factor u of du = u ds cancels
    m = curve.m
    theta0 = curve.zeta_angle

    def integrand(s, sign):
        u = np.exp(s)
        mu = m * u
        z = (1.0 - mu) * np.exp(1j * (theta0 + sign * u))
        weight = 1.0 - abs(a(z)) ** 2
        if weight <= 0:
            raise BoundaryDiagnosticsError(
                "Not a sense-preserving dilatation on the curve: |a(z)| >= 1 "
                "at z={}".format(z))
        return weight * np.hypot(m, 1.0 - mu) / (m * (2.0 - mu))

    total = 0.0
    for sign in (1.0, -1.0):
        value, err = quad(integrand, np.log(lo), np.log(hi), args=(sign,),
                          epsabs=tol, epsrel=0.0, limit=200)
        total += value
    logger.debug("L piece [%.1e, %.3g] = %.12g", lo, hi, total)
    return total


def lm_integral(a, curve, delta, tol=1e-9):
    """
    The truncated integral L(m) over delta <= |theta - theta0| <= theta_max.

    Args:
        a: AnalyticFunction with |a| < 1 on the curve
        curve: GammaCurve
        delta: cut-off, 0 < delta < theta_max
        tol: absolute quadrature tolerance per branch

    Returns:
        float

    Raises:
        BoundaryDiagnosticsError: bad cut-off, or |a| >= 1 on the curve
    """
    if not 0 < delta < curve.theta_max:
        raise BoundaryDiagnosticsError("Cut-off must lie in (0, {}), got "
                                       "{}".format(curve.theta_max, delta))
    return _piece(a, curve, delta, curve.theta_max, tol)


def classify_partials(deltas, values, slope_threshold=1e-3,
                      cauchy_tolerance=1e-6, fit_tolerance=1e-2):
    """
    Decide from partial values L(delta_k) whether the integral converges.

    Convergent: the last increment is below ``cauchy_tolerance`` (relative
    to max(1, |L|)) and no larger than the one before. Divergent: a line
    fitted to the values against log(1/delta) over the second half of the
    schedule has a per-branch slope above ``slope_threshold`` and a
    residual below ``fit_tolerance`` relative to the rise of the line.

    Returns:
        DivergenceVerdict
    """
    deltas = np.asarray(deltas, dtype=float)
    values = np.asarray(values, dtype=float)
    if values.size < 3:
        raise BoundaryDiagnosticsError("Need at least three cut-offs")
    steps = np.diff(values)
    last = values[-1]
    n_fit = max(3, values.size // 2 + values.size % 2)
    x = np.log(1.0 / deltas[-n_fit:])
    y = values[-n_fit:]
    coeffs = np.polyfit(x, y, 1)
    rms = float(np.sqrt(np.mean((np.polyval(coeffs, x) - y) ** 2)))
    slope = 0.5 * float(coeffs[0])
    rise = abs(coeffs[0]) * (x[-1] - x[0])
    residual = rms / rise if rise > 0 else np.inf
    if steps[-1] < cauchy_tolerance * max(1.0, abs(last)) and \
            steps[-1] <= steps[-2]:
        return DivergenceVerdict(CONVERGENT, float(last), slope, residual,
                                 "finite: no continuity conclusion")
    if slope > slope_threshold and residual < fit_tolerance:
        return DivergenceVerdict(DIVERGENT, slope, slope, residual,
                                 "infinite: boundary function forced "
                                 "continuous at zeta")
    logger.warning("L(m) inconclusive: slope %.3g, relative residual %.3g",
                   slope, residual)
    return DivergenceVerdict(INCONCLUSIVE, float(last), slope, residual,
                             "inconclusive")


def lm_classify(a, zeta_angle, m, schedule=DEFAULT_SCHEDULE,
                slope_threshold=1e-3, cauchy_tolerance=1e-6,
                fit_tolerance=1e-2, tol=1e-9):
    """
    L(m) on a schedule of shrinking cut-offs, with its verdict::

        est = lm_classify(ScaledIdentity(0.5), 0.0, 0.2)
        est.verdict.verdict    # 'divergent'

    Partial values are accumulated piece by piece, so they are
    non-decreasing by construction.

    Returns:
        LmEstimate

    Raises:
        BoundaryDiagnosticsError: the schedule is not strictly decreasing or
            leaves (0, theta_max)
    """
    schedule = np.asarray(schedule, dtype=float)
    if schedule.ndim != 1 or schedule.size < 3 or \
            np.any(np.diff(schedule) >= 0):
        raise BoundaryDiagnosticsError("Cut-off schedule must be strictly "
                                       "decreasing with at least 3 entries")
    curve = GammaCurve(zeta_angle, m)
    if schedule[0] >= curve.theta_max or schedule[-1] <= 0:
        raise BoundaryDiagnosticsError("Cut-offs must lie in (0, {})".format(
            curve.theta_max))
    values = []
    running = 0.0
    upper = curve.theta_max
    for delta in schedule:
        running += _piece(a, curve, delta, upper, tol)
        values.append(running)
        upper = delta
    verdict = classify_partials(schedule, values, slope_threshold,
                                cauchy_tolerance, fit_tolerance)
    return LmEstimate(curve.m, list(zip(schedule.tolist(), values)), verdict)


def majorized_lm_check(a, F, zeta_angle, m, delta, tol=1e-9):
    """
    When |a| <= |F| the integrand of L(m) for a dominates the one for F;
    compare the two truncated integrals.

    Returns:
        MajorizedLm(L_a, L_F, holds)
    """
    curve = GammaCurve(zeta_angle, m)
    L_a = lm_integral(a, curve, delta, tol)
    L_F = lm_integral(F, curve, delta, tol)
    return MajorizedLm(L_a, L_F, L_a >= L_F - 4.0 * tol)


def blw_radial(f, zeta_angle, radii=DEFAULT_RADII, zero_threshold=1e-3,
               spread=0.05):
    """
    The radial trend of (1 - r) |h'(r zeta)|. The boundary function is
    continuous at zeta exactly when this tends to zero; at a jump it
    settles at a positive constant c.

    Returns:
        BlwTrend

    Raises:
        BoundaryDiagnosticsError: bad radii
        BoundaryEvaluationError: h' cannot be evaluated at a radius
    """
    radii = np.asarray(radii, dtype=float)
    if radii.size < 5 or np.any(np.diff(radii) <= 0) or radii[0] <= 0 or \
            radii[-1] >= 1:
        raise BoundaryDiagnosticsError("Radii must be increasing in (0, 1), "
                                       "at least five of them")
    if radii[-1] < 0.999:
        raise BoundaryDiagnosticsError("Last radius must be at least 0.999")
    zeta = np.exp(1j * zeta_angle)
    values = []
    for r in radii:
        try:
            hp = f.h.deriv(r * zeta)
        except DomainError as e:
            raise BoundaryEvaluationError(str(e), r)
        if not np.isfinite(hp):
            raise BoundaryEvaluationError("h' is not finite", r)
        values.append((1.0 - r) * abs(hp))
    values = np.asarray(values)
    tail = values[-5:]
    c = float(np.median(tail))
    if tail[-1] < zero_threshold and np.all(np.diff(tail) < 0):
        return BlwTrend(radii, values, TENDS_TO_ZERO, 0.0)
    if c > 0 and np.all(np.abs(tail - c) <= spread * c):
        return BlwTrend(radii, values, TENDS_TO_POSITIVE, c)
    return BlwTrend(radii, values, INCONCLUSIVE, c)


def _jacobian(f, z):
    hp, gp = partials(f, z)
    return np.abs(hp) ** 2 - np.abs(gp) ** 2


def _polar_area(f, n):
    dr = 1.0 / n
    dtheta = np.pi / n
    r = (np.arange(n) + 0.5) * dr
    theta = (np.arange(2 * n) + 0.5) * dtheta
    ring = np.exp(1j * theta)
    total = 0.0
    negative = 0
    for ri in r:
        J = _jacobian(f, ri * ring)
        negative += int(np.count_nonzero(J < 0))
        total += float(np.sum(J)) * ri
    if negative:
        logger.warning("%d polar cells with negative Jacobian: the map "
                       "reverses orientation there", negative)
    return total * dr * dtheta


def area_integral(f, resolution=256):
    """
    Area of the image of the disk, the integral of the Jacobian
    |h'|^2 - |g'|^2, by the midpoint rule on a polar grid with
    ``resolution`` rings and twice as many spokes, improved by Richardson
    extrapolation against half the resolution.

    Returns:
        float
    """
    n = int(resolution)
    if n < 4:
        raise BoundaryDiagnosticsError("Resolution must be at least 4")
    fine = _polar_area(f, n)
    coarse = _polar_area(f, n // 2)
    return (4.0 * fine - coarse) / 3.0


def region_bound(f, m0, resolution=256):
    """
    Lower bound for the area swept by the curves Gamma(m), 0 < m < m0:

        int_0^m0 (1 - m pi) int J(Gamma_m(theta)) |theta - theta0| dtheta dm

    evaluated by the midpoint rule. Only meaningful for m0 <= 1/pi; the
    point zeta is taken as 1.
    """
    if not 0 < m0 <= 1.0 / np.pi:
        raise BoundaryDiagnosticsError("m0 must lie in (0, 1/pi]")
    n = int(resolution)
    dm = m0 / n
    du = np.pi / n
    u = (np.arange(n) + 0.5) * du
    theta = np.concatenate([-u[::-1], u])
    total = 0.0
    for m in (np.arange(n) + 0.5) * dm:
        z = (1.0 - m * np.abs(theta)) * np.exp(1j * theta)
        total += (1.0 - m * np.pi) * float(
            np.sum(_jacobian(f, z) * np.abs(theta)))
    return total * dm * du


def _h_sample_points(zeta, compact_margin, n_radial=64, n_angular=128):
    r = np.linspace(0.0, 1.0 - compact_margin, n_radial)
    phi = 2.0 * np.pi * np.arange(n_angular) / n_angular
    disk = (r[:, None] * np.exp(1j * phi)[None, :]).ravel()
    t = np.geomspace(1e-4, 0.5, 40)
    psi = np.linspace(-0.45 * np.pi, 0.45 * np.pi, 19)
    sector = (zeta * (1.0 - t[:, None] * np.exp(1j * psi)[None, :])).ravel()
    sector = sector[np.abs(sector) < 1.0]
    return np.concatenate([disk, sector])


def thm54_check(f, zeta_angle, m_grid, compact_margin=0.05,
                resolution=256, schedule=DEFAULT_SCHEDULE):
    """
    The area inequality Area < (pi H^2 / 0.15) int_0^{1/pi} L(m) dm.

    H is the largest sampled (1 - |z|) |h'(z)| over the disk of radius
    1 - compact_margin together with a sector approaching zeta. The
    integral of L is the trapezoid rule over ``m_grid``: one divergent L(m)
    makes the right-hand side infinite; an inconclusive one contributes its
    last partial value, a lower bound.

    Returns:
        Thm54Report
    """
    m_grid = np.asarray(m_grid, dtype=float)
    if m_grid.size < 1 or np.any(m_grid <= 0) or \
            np.any(m_grid >= 1.0 / np.pi):
        raise BoundaryDiagnosticsError("m grid must lie inside (0, 1/pi)")
    if not 0 < compact_margin < 1:
        raise BoundaryDiagnosticsError("compact_margin must be in (0, 1)")
    zeta = np.exp(1j * zeta_angle)
    pts = _h_sample_points(zeta, compact_margin)
    H = float(np.max((1.0 - np.abs(pts)) * np.abs(f.h.deriv(pts))))
    area = area_integral(f, resolution)
    a = dilatation_function(f)
    estimates = [lm_classify(a, zeta_angle, m, schedule) for m in m_grid]
    verdicts = [e.verdict.verdict for e in estimates]
    if DIVERGENT in verdicts:
        integral_L = np.inf
    else:
        L = np.asarray([e.partial_values[-1][1] for e in estimates])
        integral_L = float(trapezoid(L, m_grid)) if L.size > 1 \
            else float(L[0] * m_grid[0])
    rhs = np.pi * H ** 2 / AREA_CONSTANT * integral_L
    return Thm54Report(area, H, integral_L, rhs, bool(area < rhs),
                       tuple(estimates))


def majorization_check(a, F, samples, tol=1e-9):
    """
    Necessary condition for a to be majorized by F: |a| <= |F| on the
    samples. Whether a = phi F with |phi| <= 1 is not decided.

    Returns:
        (necessary_ok, worst_ratio)
    """
    samples = np.atleast_1d(np.asarray(samples, dtype=complex))
    Fz = np.abs(np.atleast_1d(F(samples)))
    az = np.abs(np.atleast_1d(a(samples)))
    keep = Fz > 1e-12
    if not np.any(keep):
        raise BoundaryDiagnosticsError("F vanishes at every sample")
    worst = float(np.max(az[keep] / Fz[keep]))
    return worst <= 1.0 + tol, worst


def _segment_distance(points, p, q):
    d = q - p
    if d == 0:
        return np.abs(points - p)
    t = np.clip(np.real(np.conj(d) * (points - p)) / abs(d) ** 2, 0.0, 1.0)
    return np.abs(points - p - t * d)


def cluster_sample(f, zeta_angle, approach="tangential-fan", n=32,
                   depth=(1e-4, 1e-2), points_per_path=16):
    """
    Sampled cluster set of f at zeta. A radial approach samples n points on
    the radius; a tangential fan samples n paths zeta (1 - t exp(i psi)),
    |psi| <= 0.45 pi. Points closer to the circle than 1e-4 are dropped.

    When f carries step boundary data the samples are measured against the
    segment joining the one-sided boundary values at zeta (a single point
    where the boundary function is continuous).

    Returns:
        ClusterSample(sources, points, reference, max_distance); the last
        two are None without step data
    """
    if n < 10:
        raise BoundaryDiagnosticsError("Need at least 10 samples, got "
                                       "{}".format(n))
    zeta = np.exp(1j * zeta_angle)
    if approach == "radial":
        t = np.geomspace(depth[0], depth[1], n)
        z = zeta * (1.0 - t)
    elif approach == "tangential-fan":
        t = np.geomspace(depth[0], depth[1], points_per_path)
        psi = np.linspace(-0.45 * np.pi, 0.45 * np.pi, n)
        z = (zeta * (1.0 - t[None, :] * np.exp(1j * psi)[:, None])).ravel()
    else:
        raise BoundaryDiagnosticsError("Unknown approach "+str(approach))
    z = z[np.abs(z) <= 1.0 - 1e-4]
    try:
        w = eval_map(f, z)
    except DomainError as e:
        raise BoundaryEvaluationError(str(e), float(np.max(np.abs(z))))
    if not np.all(np.isfinite(w)):
        raise BoundaryEvaluationError("Non-finite map value",
                                      float(np.max(np.abs(z))))
    if f.boundary is None:
        return ClusterSample(z, w, None, None)
    left, right = f.boundary.one_sided_values(zeta_angle)
    distance = float(np.max(_segment_distance(w, left, right)))
    return ClusterSample(z, w, (left, right), distance)
