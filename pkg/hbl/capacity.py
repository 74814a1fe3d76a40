import numpy as np
from collections import namedtuple
from scipy import sparse
from scipy.sparse.linalg import bicgstab, spilu, LinearOperator
from scipy.spatial.distance import pdist
import logging

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
Conformal invariants: moduli of annuli, the Grotzsch and Teichmuller
capacity functions (through complete elliptic integrals evaluated by the
arithmetic-geometric mean), the continuum bounds built on them, and a
finite-difference ring capacity solver used as an independent oracle.
"""

logger = logging.getLogger(__name__)

CapacityResult = namedtuple("CapacityResult",
                            ["value", "method", "error_estimate",
                             "resolution", "truncation_radius"])
CapacityResult.__new__.__defaults__ = (None, None)

ContinuumMetrics = namedtuple("ContinuumMetrics",
                              ["diameter", "distance_to_origin"])

CLOSED_FORM = "closed-form"
ELLIPTIC = "elliptic"
GRID_ORACLE = "grid-oracle"

MIN_RESOLUTION = 32


class CapacityError(Exception):
    """
    A generic error created by the conformal invariant functions
    """

    pass


class ConvergenceError(CapacityError):
    """
        Raised when the ring capacity solver fails to reach its residual
        target within the iteration budget
    """
    def __init__(self, message, residual):
        self.message = message
        self.residual = residual

    def __str__(self):
        return "{} (residual {:.3e})".format(self.message, self.residual)


def annulus_modulus(R, R_prime):
    """
    Modulus of the family of curves joining the boundary circles of the
    annulus R < |z| < R_prime: 2 pi / log(R_prime / R).
    """
    if not 0 < R < R_prime:
        raise CapacityError("Annulus needs 0 < R < R', got R={}, "
                            "R'={}".format(R, R_prime))
    return CapacityResult(2.0 * np.pi / np.log(R_prime / R), CLOSED_FORM, 0.0)


def agm(a, b, tol=1e-16):
    """Arithmetic-geometric mean of two positive numbers"""
    a = float(a)
    b = float(b)
    if a <= 0 or b <= 0:
        raise CapacityError("AGM needs positive arguments")
    for _ in range(64):
        if abs(a - b) <= tol * a:
            break
        a, b = 0.5 * (a + b), np.sqrt(a * b)
    return 0.5 * (a + b)


def ellipk(k):
    """
    Complete elliptic integral of the first kind K(k), k the modulus (not
    the parameter m = k^2).
    """
    if not 0 <= k < 1:
        raise CapacityError("Elliptic modulus must be in [0, 1), got "
                            "{}".format(k))
    return np.pi / (2.0 * agm(1.0, np.sqrt((1.0 - k) * (1.0 + k))))


def _mu(r, r_comp):
    # (pi/2) K(r') / K(r) = (pi/2) agm(1, r') / agm(1, r)
    return 0.5 * np.pi * agm(1.0, r_comp) / agm(1.0, r)


def grotzsch_mu(r):
    """
    The modulus of the Grotzsch ring, the unit disk minus the segment
    [0, r]::

        mu(r) = (pi / 2) K(sqrt(1 - r^2)) / K(r)

    Args:
        r: 0 < r < 1

    Returns:
        mu(r), a decreasing function with mu(r) ~ log(4 / r) as r -> 0
    """
    if not 0 < r < 1:
        raise CapacityError("grotzsch_mu needs 0 < r < 1, got {}".format(r))
    return _mu(r, np.sqrt((1.0 - r) * (1.0 + r)))


def gamma2(s):
    """
    Grotzsch capacity function: the modulus of the curve family joining the
    unit circle to the ray [s, infinity).

    Args:
        s: s > 1

    Returns:
        CapacityResult, 2 pi / mu(1/s)
    """
    if not s > 1:
        raise CapacityError("gamma2 needs s > 1, got {}".format(s))
    return CapacityResult(2.0 * np.pi / grotzsch_mu(1.0 / s), ELLIPTIC, 0.0)


def tau2(t):
    """
    Teichmuller capacity function: the modulus of the curve family joining
    [-1, 0] to [t, infinity). A decreasing homeomorphism of (0, inf) onto
    itself with tau2(t) = 2 gamma2(sqrt(t + 1)).

    Args:
        t: t > 0

    Returns:
        CapacityResult
    """
    if not t > 0 or not np.isfinite(t):
        raise CapacityError("tau2 needs 0 < t < inf, got {}".format(t))
    # r = 1/sqrt(t+1), r' = sqrt(t/(t+1)) formed without cancellation
    r = 1.0 / np.sqrt(t + 1.0)
    r_comp = np.sqrt(t / (t + 1.0))
    return CapacityResult(4.0 * np.pi / _mu(r, r_comp), ELLIPTIC, 0.0)


def continuum_metrics(vertices):
    """
    Diameter (over vertices) and distance to the origin (over segments) of
    a polyline continuum.

    Args:
        vertices: complex vertices of the polyline, in order

    Returns:
        ContinuumMetrics
    """
    v = np.atleast_1d(np.asarray(vertices, dtype=complex))
    if v.size < 2:
        raise CapacityError("A continuum needs at least two vertices")
    xy = np.column_stack([v.real, v.imag])
    diameter = float(np.max(pdist(xy)))
    if diameter == 0:
        raise CapacityError("Degenerate continuum: all vertices coincide")
    p = v[:-1]
    d = v[1:] - v[:-1]
    length2 = np.abs(d) ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.where(length2 > 0, -np.real(np.conj(d) * p) / length2, 0.0)
    t = np.clip(t, 0.0, 1.0)
    distance = float(np.min(np.abs(p + t * d)))
    return ContinuumMetrics(diameter, distance)


def lemmaB_bound(C):
    """
    Lower bound (1/4) tau2(d(0, C) / d(C)) on the modulus of the curves in
    the disk separating a continuum C of diameter at most one from the
    unit circle.

    Args:
        C: ContinuumMetrics (or a polyline, which is measured first)

    Returns:
        float
    """
    if not isinstance(C, ContinuumMetrics):
        C = continuum_metrics(C)
    if not 0 < C.diameter <= 1:
        raise CapacityError("Continuum diameter must be in (0, 1], got "
                            "{}".format(C.diameter))
    if not C.distance_to_origin > 0:
        raise CapacityError("Continuum must not contain the origin")
    return 0.25 * tau2(C.distance_to_origin / C.diameter).value


def qc_modulus_bounds(K, M):
    """
    The distortion of a modulus M under a K-quasiconformal map:
    (M / K, K M).
    """
    if K < 1 or M < 0:
        raise CapacityError("Need K >= 1 and M >= 0, got K={}, "
                            "M={}".format(K, M))
    return M / K, K * M


def minorized_modulus_check(M_minorizing, M_minorized, tol=1e-12):
    """
    If every curve of one family contains a curve of another, the first
    family has the smaller modulus. Returns True when the two moduli
    respect that ordering.
    """
    return M_minorized <= M_minorizing * (1.0 + tol) + tol


class DiskComponent(object):
    """Closed disk |z - center| <= radius"""
    def __init__(self, center, radius):
        if not radius > 0:
            raise CapacityError("Disk radius must be positive")
        self.center = complex(center)
        self.radius = float(radius)

    def mask(self, Z, h):
        return np.abs(Z - self.center) <= self.radius

    def extent(self):
        return abs(self.center) + self.radius


class PolylineComponent(object):
    """A polyline continuum, thickened to the grid nodes next to it"""
    def __init__(self, vertices):
        v = np.atleast_1d(np.asarray(vertices, dtype=complex))
        if v.size < 2:
            raise CapacityError("A polyline needs at least two vertices")
        self.vertices = v

    def distance(self, Z):
        best = np.full(Z.shape, np.inf)
        for p, q in zip(self.vertices[:-1], self.vertices[1:]):
            d = q - p
            if d == 0:
                best = np.minimum(best, np.abs(Z - p))
                continue
            t = np.clip(np.real(np.conj(d) * (Z - p)) / abs(d) ** 2, 0, 1)
            best = np.minimum(best, np.abs(Z - p - t * d))
        return best

    def mask(self, Z, h):
        # h / sqrt(2) keeps the node chain 4-connected
        return self.distance(Z) <= h / np.sqrt(2.0)

    def extent(self):
        return float(np.max(np.abs(self.vertices)))


class CircleExterior(object):
    """The closed exterior |z| >= radius"""
    def __init__(self, radius):
        if not radius > 0:
            raise CapacityError("Circle radius must be positive")
        self.radius = float(radius)

    def mask(self, Z, h):
        return np.abs(Z) >= self.radius

    def extent(self):
        return self.radius


class RayComponent(object):
    """The ray from ``start`` to infinity, pointing away from the origin"""
    def __init__(self, start):
        if start == 0:
            raise CapacityError("A ray component cannot start at the origin")
        self.start = complex(start)

    def as_polyline(self, radius):
        end = self.start / abs(self.start) * radius
        return PolylineComponent([self.start, end])

    def extent(self):
        return abs(self.start)


class RingDomainSpec(object):
    """
    A ring domain: the complement of two disjoint closed sets, the inner
    one bounded. Inner components are :class:`DiskComponent` or
    :class:`PolylineComponent`; outer components are :class:`CircleExterior`
    or :class:`RayComponent`::

        annulus = RingDomainSpec(DiskComponent(0, 1), CircleExterior(np.e),
                                 grid_resolution=512)
        ring_capacity_numeric(annulus).value   # about 2 pi

    Args:
        inner: inner component
        outer: outer component
        grid_resolution: nodes per side of the finest grid (>= 32)
        truncation_radius: where a ray is cut off when it cannot be
            handled exactly (defaults to 50)
    """
    def __init__(self, inner, outer, grid_resolution=256,
                 truncation_radius=None):
        if not isinstance(inner, (DiskComponent, PolylineComponent)):
            raise CapacityError("Inner component must be a disk or a "
                                "polyline")
        if not isinstance(outer, (CircleExterior, RayComponent)):
            raise CapacityError("Outer component must be a circle exterior "
                                "or a ray")
        if int(grid_resolution) < MIN_RESOLUTION:
            raise CapacityError("Grid resolution must be at least {}, got "
                                "{}".format(MIN_RESOLUTION, grid_resolution))
        self.inner = inner
        self.outer = outer
        self.grid_resolution = int(grid_resolution)
        self.truncation_radius = truncation_radius
        self._check_disjoint()

    def _check_disjoint(self):
        inner = self.inner
        if isinstance(self.outer, CircleExterior):
            if inner.extent() >= self.outer.radius:
                raise CapacityError("Inner component meets the outer circle")
            return
        ray = self.outer.as_polyline(max(1e6, 10 * inner.extent()))
        if isinstance(inner, DiskComponent):
            gap = ray.distance(np.asarray([inner.center]))[0] - inner.radius
        else:
            gap = np.min(ray.distance(inner.vertices))
        if gap <= 0:
            raise CapacityError("Inner component meets the ray")


def _grid_energy(inner_mask, outer_mask, Z, h, tol, maxiter):
    # potential 0 on inner nodes, 1 on outer nodes, harmonic in between
    unknown = ~(inner_mask | outer_mask)
    n_unknown = int(np.count_nonzero(unknown))
    if n_unknown == 0:
        raise CapacityError("Grid has no free nodes between the components")
    fixed = outer_mask.astype(float)
    index = -np.ones(Z.shape, dtype=np.int64)
    index[unknown] = np.arange(n_unknown)
    rows, cols = np.nonzero(unknown)
    rhs = np.zeros(n_unknown)
    I = [np.arange(n_unknown)]
    J = [np.arange(n_unknown)]
    V = [np.full(n_unknown, 4.0)]
    me = index[rows, cols]
    for dr, dc in ((1, 0), (-1, 0), (0, 1), (0, -1)):
        nr = rows + dr
        nc = cols + dc
        other = index[nr, nc]
        free = other >= 0
        I.append(me[free])
        J.append(other[free])
        V.append(-np.ones(np.count_nonzero(free)))
        np.add.at(rhs, me[~free], fixed[nr[~free], nc[~free]])
    A = sparse.csr_matrix((np.concatenate(V),
                           (np.concatenate(I), np.concatenate(J))),
                          shape=(n_unknown, n_unknown))
    ilu = spilu(A.tocsc(), drop_tol=1e-4, fill_factor=10)
    M = LinearOperator(A.shape, ilu.solve)
    x, info = bicgstab(A, rhs, rtol=0.0, atol=tol, maxiter=maxiter, M=M)
    residual = float(np.linalg.norm(rhs - A @ x))
    logger.debug("Ring solve on %d unknowns: info=%d residual=%.3e",
                 n_unknown, info, residual)
    if info != 0 or residual > 10.0 * tol:
        raise ConvergenceError("Ring capacity iteration did not converge",
                               residual)
    u = fixed.copy()
    u[unknown] = x
    return float(np.sum(np.diff(u, axis=0) ** 2) +
                 np.sum(np.diff(u, axis=1) ** 2))


def _solve_on_grid(inner, outer_mask_fn, extent, n, tol, maxiter):
    # odd node count so the real axis is a grid row
    n = n + 1 if n % 2 == 0 else n
    half = extent * (1.0 + 4.0 / n)
    x = np.linspace(-half, half, n)
    h = x[1] - x[0]
    Z = x[None, :] + 1j * x[:, None]
    outer = outer_mask_fn(Z, h)
    # the frame is always part of the outer set
    outer[0, :] = outer[-1, :] = outer[:, 0] = outer[:, -1] = True
    inner_mask = inner.mask(Z, h) & ~outer
    return _grid_energy(inner_mask, outer, Z, h, tol, maxiter)


def ring_capacity_numeric(spec, tolerance=1e-8, maxiter=None):
    """
    Capacity of a ring domain from the Dirichlet energy of its
    finite-difference potential.

    The potential is 0 on the inner component and 1 on the outer one; the
    five-point system is solved by ILU-preconditioned BiCGSTAB to an
    absolute residual of ``tolerance``. The same problem is solved at half
    resolution and the difference is the error estimate.

    A ray facing an inner disk centred at the origin is mapped by
    w = radius / z onto the unit disk slit along a segment, which the grid
    can hold exactly; any other ray is truncated at the spec's truncation
    radius.

    Args:
        spec: RingDomainSpec
        tolerance: absolute residual target
        maxiter: iteration budget per solve

    Returns:
        CapacityResult with method 'grid-oracle'

    Raises:
        ConvergenceError: the residual target was not met
    """
    inner = spec.inner
    outer = spec.outer
    truncation = None
    if isinstance(outer, RayComponent) and isinstance(inner, DiskComponent) \
            and abs(inner.center) < 1e-14:
        tip = inner.radius / outer.start
        inner = PolylineComponent([0j, tip])
        outer = CircleExterior(1.0)
    if isinstance(outer, CircleExterior):
        extent = outer.radius

        def outer_mask(Z, h):
            return outer.mask(Z, h)
    else:
        truncation = float(spec.truncation_radius or 50.0)
        if truncation <= max(abs(outer.start), inner.extent()):
            raise CapacityError("Truncation radius {} does not enclose the "
                                "ring".format(truncation))
        ray = outer.as_polyline(truncation)
        extent = truncation

        def outer_mask(Z, h):
            return (np.abs(Z) >= truncation) | ray.mask(Z, h)

    fine = spec.grid_resolution
    coarse = max(MIN_RESOLUTION, fine // 2)
    value = _solve_on_grid(inner, outer_mask, extent, fine, tolerance,
                           maxiter)
    rough = _solve_on_grid(inner, outer_mask, extent, coarse, tolerance,
                           maxiter)
    error = max(abs(value - rough), 1e-15 * value)
    logger.debug("Ring capacity %.6f (coarse %.6f)", value, rough)
    return CapacityResult(value, GRID_ORACLE, error, spec.grid_resolution,
                          truncation)
