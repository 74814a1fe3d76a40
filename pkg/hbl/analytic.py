import numpy as np
from numpy.polynomial import polynomial as npoly
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
This module contains the AnalyticFunction family. Every member can be
evaluated, together with its first derivative, at any interior point of its
declared disk of validity (a centre and a radius, the radius being infinite
for entire functions). Inputs may be Python complex numbers or numpy arrays;
the output has the same shape as the input.

The family is closed under arithmetic, so dilatations such as
``0.5 * ScaledIdentity(1) * F`` or ``g' / h'`` are analytic objects in
their own right.
"""

logger = logging.getLogger(__name__)

# fraction of the radius of convergence a PowerSeries may be evaluated in
SERIES_GUARD = 0.99


class AnalyticFunctionError(Exception):
    """
    A generic error created by an AnalyticFunction
    """

    pass


class DomainError(AnalyticFunctionError):
    """
        Raised when a point is outside (or on the boundary of) the domain
        an object may be evaluated in
    """
    def __init__(self, message, z, limit):
        self.message = message
        self.z = z
        self.limit = limit

    def __str__(self):
        return "at z={} (limit {}); {}".format(self.z, self.limit,
                                               self.message)


def _as_complex(z):
    return np.asarray(z, dtype=complex)


def _output(value):
    # give scalars back as Python complex numbers
    if np.ndim(value) == 0:
        return complex(value)
    return value


def as_analytic(obj):
    """
    Promote numbers to constant polynomials; AnalyticFunctions are returned
    untouched.

    Args:
        obj: an AnalyticFunction or a (complex) number

    Returns:
        an AnalyticFunction
    """
    if isinstance(obj, AnalyticFunction):
        return obj
    if np.isscalar(obj):
        return Polynomial([complex(obj)])
    raise AnalyticFunctionError("Cannot interpret {!r} as an analytic "
                                "function".format(obj))


class AnalyticFunction(object):
    """
    Base class of the analytic-function family. Subclasses implement
    ``_value`` and ``_deriv`` on complex numpy arrays; this class does the
    domain checking and the scalar/array book-keeping::

        a = ScaledIdentity(0.5)
        a(0.2j)          # 0.1j
        a.deriv(0.2j)    # 0.5
        (a * a)(1j)      # -0.25

    Attributes:
        center: centre of the disk of validity
        radius: radius of the disk of validity (``numpy.inf`` if entire)
    """
    center = 0j
    radius = np.inf

    def __call__(self, z):
        z = _as_complex(z)
        self.check_domain(z)
        return _output(self._value(z))

    def deriv(self, z):
        """
        The complex derivative at z.

        Args:
            z: a complex number or array of complex numbers

        Returns:
            the derivative, with the shape of z

        Raises:
            DomainError: z is outside the disk of validity
        """
        z = _as_complex(z)
        self.check_domain(z)
        return _output(self._deriv(z))

    def limit(self):
        """Largest distance from the centre at which we may evaluate"""
        return self.radius

    def check_domain(self, z):
        """
        Make sure every point of z lies strictly inside the disk of validity.

        Raises:
            DomainError: at least one point is outside
        """
        if not np.all(np.isfinite(z)):
            raise DomainError("Non-finite evaluation point", z, self.limit())
        if np.isinf(self.limit()):
            return
        dist = np.abs(z - self.center)
        bad = dist >= self.limit()
        if np.any(bad):
            worst = z[bad].ravel()[0] if np.ndim(z) else complex(z)
            raise DomainError("Point is {:.3g} beyond the boundary of the "
                              "domain".format(float(np.max(dist) -
                                                    self.limit())),
                              worst, self.limit())

    def boundary_distance(self, z):
        """Distance from z to the edge of the evaluation disk"""
        return self.limit() - np.abs(_as_complex(z) - self.center)

    def derivative(self):
        """Return the derivative as an AnalyticFunction"""
        return Derivative(self)

    def rotated(self, angle):
        """Return the function z -> self(exp(-i angle) z)"""
        return Rotated(self, angle)

    def _cauchy_deriv(self, func, z, n=16):
        # derivative of an analytic `func` by the trapezoidal Cauchy formula
        # on a small circle; exact to round-off for analytic integrands
        rho = np.minimum(1e-2, 0.5 * self.boundary_distance(z))
        rho = np.where(np.isfinite(rho), rho, 1e-2)
        phi = 2.0 * np.pi * np.arange(n) / n
        ring = np.exp(1j * phi)
        pts = z[..., None] + rho[..., None] * ring
        vals = func(pts)
        return np.mean(vals * np.conj(ring), axis=-1) / rho

    def __add__(self, other):
        return Sum([self, as_analytic(other)])

    __radd__ = __add__

    def __sub__(self, other):
        return Sum([self, as_analytic(other) * -1.0])

    def __rsub__(self, other):
        return Sum([as_analytic(other), self * -1.0])

    def __mul__(self, other):
        return Product(self, as_analytic(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __truediv__(self, other):
        return Quotient(self, as_analytic(other))

    def __rtruediv__(self, other):
        return Quotient(as_analytic(other), self)


class Polynomial(AnalyticFunction):
    """
    A polynomial in z with coefficients in increasing order::

        p = Polynomial([0, 1, 0.5])   # z + 0.5 z^2
    """
    def __init__(self, coefficients):
        coeffs = np.atleast_1d(np.asarray(coefficients, dtype=complex))
        if coeffs.size == 0:
            raise AnalyticFunctionError("A polynomial needs at least one "
                                        "coefficient")
        if not np.all(np.isfinite(coeffs)):
            raise AnalyticFunctionError("Polynomial coefficients must be "
                                        "finite")
        self.coefficients = coeffs
        self._dcoeffs = npoly.polyder(coeffs) if coeffs.size > 1 \
            else np.zeros(1, dtype=complex)

    def _value(self, z):
        return npoly.polyval(z, self.coefficients)

    def _deriv(self, z):
        return npoly.polyval(z, self._dcoeffs)

    def __repr__(self):
        return "Polynomial({})".format(list(self.coefficients))


class PowerSeries(AnalyticFunction):
    """
    A truncated power series about ``center`` with radius of convergence
    ``radius``. Evaluation is refused outside ``0.99 * radius`` to keep the
    truncation error in check.
    """
    def __init__(self, center, coefficients, radius):
        if not radius > 0:
            raise AnalyticFunctionError("Radius of convergence must be "
                                        "positive, got {}".format(radius))
        self.center = complex(center)
        self.radius = float(radius)
        self.coefficients = np.atleast_1d(np.asarray(coefficients,
                                                     dtype=complex))
        self._dcoeffs = npoly.polyder(self.coefficients) \
            if self.coefficients.size > 1 else np.zeros(1, dtype=complex)

    def limit(self):
        return SERIES_GUARD * self.radius

    def _value(self, z):
        return npoly.polyval(z - self.center, self.coefficients)

    def _deriv(self, z):
        return npoly.polyval(z - self.center, self._dcoeffs)


class ScaledIdentity(AnalyticFunction):
    """The map z -> alpha z"""
    def __init__(self, alpha):
        self.alpha = complex(alpha)

    def _value(self, z):
        return self.alpha * z

    def _deriv(self, z):
        return np.full(z.shape, self.alpha, dtype=complex)

    def __repr__(self):
        return "ScaledIdentity({})".format(self.alpha)


class FiniteBlaschke(AnalyticFunction):
    """
    A finite Blaschke product::

        B(z) = rotation * prod_k (z - a_k) / (1 - conj(a_k) z)

    with every zero a_k in the unit disk and a unimodular rotation.
    """
    def __init__(self, zeros, rotation=1.0):
        zeros = np.atleast_1d(np.asarray(zeros, dtype=complex))
        if np.any(np.abs(zeros) >= 1.0):
            raise AnalyticFunctionError("Blaschke zeros must lie in the unit "
                                        "disk")
        if abs(abs(complex(rotation)) - 1.0) > 1e-12:
            raise AnalyticFunctionError("Blaschke rotation must be "
                                        "unimodular, got |{}|".format(
                                            rotation))
        self.zeros = zeros
        self.rotation = complex(rotation)
        largest = np.max(np.abs(zeros)) if zeros.size else 0.0
        self.radius = np.inf if largest == 0 else 1.0 / largest

    def _factors(self, z):
        a = self.zeros
        zz = z[..., None]
        return (zz - a) / (1.0 - np.conj(a) * zz)

    def _value(self, z):
        if self.zeros.size == 0:
            return np.full(z.shape, self.rotation, dtype=complex)
        return self.rotation * np.prod(self._factors(z), axis=-1)

    def _deriv(self, z):
        if self.zeros.size == 0:
            return np.zeros(z.shape, dtype=complex)
        factors = self._factors(z)
        a = self.zeros
        dfactors = (1.0 - np.abs(a) ** 2) / \
            (1.0 - np.conj(a) * z[..., None]) ** 2
        total = np.zeros(z.shape, dtype=complex)
        # product rule, no division by factors (which vanish at the zeros)
        for k in range(a.size):
            others = np.delete(factors, k, axis=-1)
            total = total + dfactors[..., k] * np.prod(others, axis=-1)
        return self.rotation * total


class StepMapPart(AnalyticFunction):
    """
    Closed-form analytic (``role='analytic'``) or co-analytic
    (``role='coanalytic'``) part of the Poisson extension of a step
    boundary function. See :func:`hbl.harmonic.poisson_step_map`.

    With F_k the analytic completion of the harmonic measure of arc k
    (normalised so F_k(0) is the arc's share of the circle)::

        h = sum_k w_k F_k / 2 + sum_k w_k F_k(0) / 2
        g = sum_k conj(w_k) (F_k - F_k(0)) / 2

    and the derivatives only see the jumps::

        h' = 1/(2 pi i) sum_k (w_k - w_{k-1}) / (exp(i t_k) - z)
    """
    radius = 1.0

    def __init__(self, arcs, role):
        if role not in ("analytic", "coanalytic"):
            raise AnalyticFunctionError("role must be 'analytic' or "
                                        "'coanalytic', got "+str(role))
        self.arcs = arcs
        self.role = role
        t = np.asarray(arcs.jump_points, dtype=float)
        w = np.asarray(arcs.values, dtype=complex)
        self._start = np.exp(1j * t)
        self._end = np.exp(1j * np.roll(t, -1))
        self._share = np.asarray(arcs.arc_lengths()) / (2.0 * np.pi)
        self._jumps = w - np.roll(w, 1)
        self._weights = w if role == "analytic" else np.conj(w)

    def completions(self, z):
        """
        Values of the analytic completions F_k at z, one column per arc.

        Args:
            z: complex array inside the unit disk

        Returns:
            array of shape z.shape + (n_arcs,)
        """
        zz = _as_complex(z)[..., None]
        to_end = self._end - zz
        to_start = self._start - zz
        # angle subtended by the arc at z, always inside (0, 2 pi)
        subtended = np.mod(np.angle(to_end / to_start), 2.0 * np.pi)
        return (subtended / np.pi - self._share -
                1j / np.pi * np.log(np.abs(to_end) / np.abs(to_start)))

    def _value(self, z):
        F = self.completions(z)
        if self.role == "analytic":
            return (np.sum(self._weights * F, axis=-1) / 2.0 +
                    np.sum(self._weights * self._share) / 2.0)
        return np.sum(self._weights * (F - self._share), axis=-1) / 2.0

    def _deriv(self, z):
        jumps = self._jumps if self.role == "analytic" \
            else np.conj(self._jumps)
        poles = self._start
        return np.sum(jumps / (poles - z[..., None]), axis=-1) / \
            (2j * np.pi)


class Sum(AnalyticFunction):
    """Sum of analytic functions"""
    def __init__(self, operands):
        self.operands = [as_analytic(o) for o in operands]

    def check_domain(self, z):
        for o in self.operands:
            o.check_domain(z)

    def boundary_distance(self, z):
        return np.min([o.boundary_distance(z) for o in self.operands],
                      axis=0)

    def _value(self, z):
        return sum(o._value(z) for o in self.operands)

    def _deriv(self, z):
        return sum(o._deriv(z) for o in self.operands)


class Product(AnalyticFunction):
    """Product of two analytic functions"""
    def __init__(self, left, right):
        self.left = as_analytic(left)
        self.right = as_analytic(right)

    def check_domain(self, z):
        self.left.check_domain(z)
        self.right.check_domain(z)

    def boundary_distance(self, z):
        return np.minimum(self.left.boundary_distance(z),
                          self.right.boundary_distance(z))

    def _value(self, z):
        return self.left._value(z) * self.right._value(z)

    def _deriv(self, z):
        return (self.left._deriv(z) * self.right._value(z) +
                self.left._value(z) * self.right._deriv(z))


class Quotient(Product):
    """Quotient of two analytic functions (the denominator must not vanish)"""
    def _value(self, z):
        return self.left._value(z) / self.right._value(z)

    def _deriv(self, z):
        den = self.right._value(z)
        return (self.left._deriv(z) * den -
                self.left._value(z) * self.right._deriv(z)) / den ** 2


class Derivative(AnalyticFunction):
    """
    The derivative of another analytic function, as an analytic function.
    Its own derivative comes from the Cauchy integral formula.
    """
    def __init__(self, base):
        self.base = as_analytic(base)

    def check_domain(self, z):
        self.base.check_domain(z)

    def boundary_distance(self, z):
        return self.base.boundary_distance(z)

    def _value(self, z):
        return self.base._deriv(z)

    def _deriv(self, z):
        return self._cauchy_deriv(self.base._deriv, z)


class Rotated(AnalyticFunction):
    """The function z -> base(exp(-i angle) z)"""
    def __init__(self, base, angle):
        self.base = as_analytic(base)
        self.angle = float(angle)
        self._unit = np.exp(-1j * self.angle)

    def check_domain(self, z):
        self.base.check_domain(self._unit * z)

    def boundary_distance(self, z):
        return self.base.boundary_distance(self._unit * _as_complex(z))

    def _value(self, z):
        return self.base._value(self._unit * z)

    def _deriv(self, z):
        return self._unit * self.base._deriv(self._unit * z)
