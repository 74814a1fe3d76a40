import numpy as np
from collections import namedtuple
from scipy.integrate import quad
import logging
from .analytic import (AnalyticFunction, Polynomial, StepMapPart, DomainError,
                       as_analytic)

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
Harmonic mappings f = h + conj(g) of the unit disk (or upper half-plane)
and the quantities read off from them: values, partial derivatives,
dilatations, local expansions and the multiplicity of a zero. The Poisson
extension of a piecewise-constant boundary function is built in closed
form by :func:`poisson_step_map`.
"""

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * np.pi

# |h'| below this multiple of machine epsilon (scaled by |g'|) is degenerate
DEGENERATE_SCALE = 64.0

DilatationReport = namedtuple("DilatationReport",
                              ["a_f", "nu_f", "D_f", "jacobian"])

LocalExpansion = namedtuple("LocalExpansion",
                            ["analytic", "coanalytic", "radius"])

MultiplicityResult = namedtuple("MultiplicityResult",
                                ["order", "analytic_coefficients",
                                 "coanalytic_coefficients", "tolerance_used",
                                 "coanalytic_order", "radius",
                                 "sense_reversing"])


class HarmonicMapError(Exception):
    """
    A generic error created by harmonic map construction or analysis
    """

    pass


class DegeneratePointError(HarmonicMapError):
    """
        Raised when h' vanishes (numerically) at a point so the dilatation
        is undefined there
    """
    def __init__(self, z, h_prime):
        self.z = z
        self.h_prime = h_prime

    def __str__(self):
        return "Degenerate point z={}: |h'(z)|={:.3g}".format(
            self.z, abs(self.h_prime))


class LocallyConstantError(HarmonicMapError):
    """
        Raised when no expansion coefficient rises above the tolerance:
        the map is locally constant or the sampling radius is too small
    """
    def __init__(self, center, radius):
        self.center = center
        self.radius = radius

    def __str__(self):
        return ("Map is locally constant at {} or radius {:.3g} is too "
                "small".format(self.center, self.radius))


class StepBoundaryFunction(object):
    """
    A piecewise-constant function on the unit circle. Arc k runs from
    ``jump_points[k]`` to ``jump_points[k+1]`` (the last one wraps round to
    ``jump_points[0] + 2 pi``) and carries ``values[k]``::

        b = StepBoundaryFunction([0, np.pi], [1, -1])
        b.value_at(np.pi / 2)          # (1+0j)
        b.one_sided_values(np.pi)      # ((1+0j), (-1+0j))

    Args:
        jump_points: strictly increasing angles in [0, 2 pi)
        values: complex value on each arc

    Raises:
        HarmonicMapError: the data does not describe a genuine step
            function (fewer than two arcs, unsorted, repeated values
            across a jump)
    """
    def __init__(self, jump_points, values):
        t = np.asarray(jump_points, dtype=float)
        w = np.asarray(values, dtype=complex)
        if t.ndim != 1 or t.size < 2:
            raise HarmonicMapError("A step function needs at least two "
                                   "jump points")
        if w.shape != t.shape:
            raise HarmonicMapError("Need one value per arc: {} jump points, "
                                   "{} values".format(t.size, w.size))
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(w))):
            raise HarmonicMapError("Jump points and values must be finite")
        if t[0] < 0 or t[-1] >= TWO_PI or np.any(np.diff(t) <= 0):
            raise HarmonicMapError("Jump points must be strictly increasing "
                                   "in [0, 2pi)")
        if np.any(w == np.roll(w, 1)):
            raise HarmonicMapError("Adjacent arc values must differ")
        self.jump_points = t
        self.values = w

    def __len__(self):
        return self.jump_points.size

    def arc_lengths(self):
        ends = np.append(self.jump_points[1:], self.jump_points[0] + TWO_PI)
        return ends - self.jump_points

    def arcs(self):
        """Return a list of (start, end, value) triples"""
        ends = self.jump_points + self.arc_lengths()
        return list(zip(self.jump_points, ends, self.values))

    def _locate(self, angle):
        angle = np.mod(angle, TWO_PI)
        k = np.searchsorted(self.jump_points, angle, side="right") - 1
        # angles before t_0 belong to the last (wrapping) arc
        return angle, int(k) % len(self)

    def value_at(self, angle):
        """
        The boundary value at exp(i angle). At a jump point the value of
        the arc starting there is returned.
        """
        return complex(self.values[self._locate(angle)[1]])

    def one_sided_values(self, angle, tol=1e-12):
        """
        The limits (f*(angle-), f*(angle+)) of the boundary function. They
        differ exactly at the jump points.
        """
        angle, k = self._locate(angle)
        dist = np.abs(np.angle(np.exp(1j * (angle - self.jump_points))))
        hit = np.nonzero(dist < tol)[0]
        if hit.size:
            j = int(hit[0])
            return complex(self.values[j - 1]), complex(self.values[j])
        v = complex(self.values[k])
        return v, v

    def jump_set(self):
        """The set E of discontinuities, as points on the circle"""
        return np.exp(1j * self.jump_points)

    def __repr__(self):
        return "StepBoundaryFunction({}, {})".format(
            list(self.jump_points), list(self.values))


def regular_polygon_boundary(n_vertices):
    """
    Step data sending n equal arcs to the vertices of the regular n-gon
    inscribed in the unit circle. With three vertices this is the classic
    map of the disk onto a triangle.

    Args:
        n_vertices: number of vertices (at least 3)

    Returns:
        StepBoundaryFunction
    """
    if n_vertices < 3:
        raise HarmonicMapError("A polygon needs at least 3 vertices")
    k = np.arange(n_vertices)
    return StepBoundaryFunction(TWO_PI * k / n_vertices,
                                np.exp(TWO_PI * 1j * k / n_vertices))


class HarmonicMap(object):
    """
    A harmonic map f = h + conj(g) given by its analytic part h and
    co-analytic part g, normalised by g(origin) = 0 where the origin is 0
    for the disk and i for the upper half-plane::

        f = HarmonicMap(Polynomial([0, 1]), ScaledIdentity(0.5))
        f(1j)    # 0.5j

    Args:
        h: analytic part (AnalyticFunction or number)
        g: co-analytic part (AnalyticFunction or number)
        domain: 'disk' or 'half-plane'
        image_polygon: optional vertices of the image when it is a known
            polygon
        boundary: the StepBoundaryFunction the map was built from, if any

    Raises:
        HarmonicMapError: unknown domain or g(origin) != 0
    """
    def __init__(self, h, g, domain="disk", image_polygon=None,
                 boundary=None, normalisation_tol=1e-10):
        if domain not in ("disk", "half-plane"):
            raise HarmonicMapError("Domain must be 'disk' or 'half-plane', "
                                   "got "+str(domain))
        self.h = as_analytic(h)
        self.g = as_analytic(g)
        self.domain = domain
        self.boundary = boundary
        if image_polygon is not None:
            image_polygon = np.asarray(image_polygon, dtype=complex)
        self.image_polygon = image_polygon
        g0 = self.g(self.origin)
        if abs(g0) > normalisation_tol:
            raise HarmonicMapError("Co-analytic part must vanish at the "
                                   "origin, g({})={}".format(self.origin, g0))

    @property
    def origin(self):
        return 0j if self.domain == "disk" else 1j

    def boundary_distance(self, z):
        """Distance from z to the boundary of the map's domain"""
        z = np.asarray(z, dtype=complex)
        if self.domain == "disk":
            return 1.0 - np.abs(z)
        return z.imag

    def check_point(self, z):
        """
        Raises:
            DomainError: z is not an interior point of the domain
        """
        dist = self.boundary_distance(z)
        if not np.all(dist > 0):
            z = np.asarray(z, dtype=complex)
            worst = complex(z.ravel()[np.argmin(np.ravel(dist))])
            raise DomainError("Point lies {:.3g} outside the {}".format(
                -float(np.min(dist)), self.domain), worst, 0.0)

    def __call__(self, z):
        return eval_map(self, z)

    def scaled(self, c):
        """Return the map c f"""
        c = complex(c)
        return HarmonicMap(self.h * c, self.g * c.conjugate(), self.domain,
                           None if self.image_polygon is None
                           else c * self.image_polygon)

    def __repr__(self):
        return "HarmonicMap(h={!r}, g={!r}, domain={!r})".format(
            self.h, self.g, self.domain)


def eval_map(f, z):
    """
    Evaluate f = h + conj(g).

    Args:
        f: HarmonicMap
        z: a complex number or an array of them

    Returns:
        f(z) with the shape of z

    Raises:
        DomainError: z is not inside the domain of f
    """
    f.check_point(z)
    return f.h(z) + np.conj(f.g(z))


def partials(f, z):
    """
    The pair (h'(z), g'(z)); f_z = h' and f_zbar = conj(g').
    """
    f.check_point(z)
    return f.h.deriv(z), f.g.deriv(z)


def dilatation(f, z):
    """
    Dilatation data of f at z.

    Args:
        f: HarmonicMap
        z: interior point

    Returns:
        DilatationReport with the second complex dilatation a_f = g'/h',
        nu_f = conj(g')/h', the distortion D_f (infinite once |a_f| >= 1)
        and the Jacobian |h'|^2 - |g'|^2

    Raises:
        DegeneratePointError: h'(z) vanishes to machine precision
    """
    hp, gp = partials(f, complex(z))
    if abs(hp) <= DEGENERATE_SCALE * np.finfo(float).eps * max(1.0, abs(gp)):
        raise DegeneratePointError(z, hp)
    a = gp / hp
    nu = np.conj(gp) / hp
    modulus = abs(a)
    D = (1.0 + modulus) / (1.0 - modulus) if modulus < 1.0 else np.inf
    return DilatationReport(complex(a), complex(nu), D,
                            abs(hp) ** 2 - abs(gp) ** 2)


def dilatation_function(f):
    """The second complex dilatation a_f = g'/h' as an AnalyticFunction"""
    return f.g.derivative() / f.h.derivative()


def poisson_step_map(b):
    """
    The Poisson extension of a step boundary function, in closed form.

    The map is f = sum_k w_k omega_k, omega_k being the harmonic measure of
    arc k. Its analytic and co-analytic parts are :class:`StepMapPart`
    objects, normalised so that g(0) = 0 and f(0) is the arc-length
    weighted mean of the values::

        f = poisson_step_map(regular_polygon_boundary(3))
        f(0)                 # 0 (the centroid)
        partials(f, 0)[0]    # |h'(0)| = 3 sqrt(3) / (2 pi)

    Args:
        b: StepBoundaryFunction

    Returns:
        HarmonicMap on the unit disk
    """
    f = HarmonicMap(StepMapPart(b, "analytic"), StepMapPart(b, "coanalytic"),
                    "disk", boundary=b)
    if len(b) >= 3:
        f.image_polygon = b.values.copy()
    return f


def poisson_integral(b, z, tol=1e-13):
    """
    Direct adaptive quadrature of the Poisson integral of b at z, arc by
    arc. Slow, but independent of the closed form in
    :func:`poisson_step_map`.
    """
    z = complex(z)
    if not abs(z) < 1:
        raise DomainError("Poisson integral needs |z| < 1", z, 1.0)
    weight = 1.0 - abs(z) ** 2

    def kernel(t):
        return weight / abs(np.exp(1j * t) - z) ** 2

    total = 0j
    for start, end, value in b.arcs():
        measure, _ = quad(kernel, start, end, epsabs=tol, epsrel=tol,
                          limit=200)
        total += value * measure / TWO_PI
    return total


def _default_radius(f, center):
    return min(0.1, 0.5 * float(f.boundary_distance(center)))


def local_fourier(f, center, radius=None, n_modes=32):
    """
    Local expansion of f about ``center``::

        f(center + z) = sum_k a_k z^k + sum_k conj(b_k z^k)

    obtained by sampling f on a circle and taking the discrete Fourier
    transform. Non-negative modes give a_k, negative modes conj(b_k).

    Args:
        f: HarmonicMap
        center: expansion point
        radius: sampling radius; defaults to min(0.1, half the distance to
            the boundary)
        n_modes: number of samples on the circle

    Returns:
        LocalExpansion(analytic, coanalytic, radius); both coefficient
        arrays are indexed by k, with coanalytic[0] = 0

    Raises:
        DomainError: the sampling circle leaves the domain
    """
    center = complex(center)
    if radius is None:
        radius = _default_radius(f, center)
    if not radius > 0 or radius >= f.boundary_distance(center):
        raise DomainError("Sampling circle of radius {:.3g} leaves the "
                          "domain".format(radius), center,
                          float(f.boundary_distance(center)))
    n = int(n_modes)
    phi = TWO_PI * np.arange(n) / n
    samples = eval_map(f, center + radius * np.exp(1j * phi))
    c = np.fft.fft(samples) / n
    K = (n - 1) // 2
    scale = radius ** np.arange(K + 1)
    analytic = c[:K + 1] / scale
    coanalytic = np.zeros(K + 1, dtype=complex)
    coanalytic[1:] = np.conj(c[n - np.arange(1, K + 1)]) / scale[1:]
    return LocalExpansion(analytic, coanalytic, radius)


def multiplicity(f, zero_point, tolerance=1e-7, radius=None, n_modes=32):
    """
    The order of the zero of f - f(zero_point) at ``zero_point``: the index
    of the first analytic coefficient above the tolerance, the
    coefficients being normalised by the largest sampled value. When the
    co-analytic order is the smaller one the zero is sense-reversing and
    is flagged as such; a purely anti-analytic zero has ``order`` None.

    ``tolerance_used[k]`` is the threshold |a_k| and |b_k| are compared
    with, tolerance * peak / radius^k.

    Returns:
        MultiplicityResult

    Raises:
        LocallyConstantError: no analytic or co-analytic coefficient rises
            above the tolerance
    """
    zero_point = complex(zero_point)
    if radius is None:
        radius = _default_radius(f, zero_point)
    expansion = local_fourier(f, zero_point, radius, n_modes)
    n = int(n_modes)
    phi = TWO_PI * np.arange(n) / n
    base = eval_map(f, zero_point)
    circle = eval_map(f, zero_point + radius * np.exp(1j * phi))
    peak = np.max(np.abs(circle - base))
    if peak == 0:
        raise LocallyConstantError(zero_point, radius)
    k = np.arange(expansion.analytic.size)
    thresholds = tolerance * peak / radius ** k
    above = np.nonzero(np.abs(expansion.analytic[1:]) > thresholds[1:])[0]
    co_above = np.nonzero(np.abs(expansion.coanalytic[1:]) >
                          thresholds[1:])[0]
    if above.size == 0 and co_above.size == 0:
        raise LocallyConstantError(zero_point, radius)
    order = int(above[0]) + 1 if above.size else None
    co_order = int(co_above[0]) + 1 if co_above.size else None
    reversing = co_order is not None and (order is None or co_order < order)
    if reversing:
        logger.warning("Zero at %s is sense-reversing: analytic order %s, "
                       "co-analytic order %d", zero_point, order, co_order)
    return MultiplicityResult(order, expansion.analytic,
                              expansion.coanalytic, thresholds,
                              co_order, radius, reversing)
