import numpy as np
from collections import namedtuple
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
Hyperbolic geometry of the unit disk and the upper half-plane: distances,
Mobius maps between the two models, hyperbolic disks as Euclidean circles,
and the radius bound for hyperbolic balls about points approaching the
real axis.
"""

logger = logging.getLogger(__name__)

DISK = "disk"
HALF_PLANE = "half-plane"

HyperbolicDisk = namedtuple("HyperbolicDisk", ["center", "radius", "domain"])


class HyperbolicError(Exception):
    """
    A generic error created by the hyperbolic geometry functions
    """

    pass


def _check_halfplane(*points):
    for z in points:
        if not np.all(np.imag(z) > 0):
            raise HyperbolicError("Point {} is not in the upper "
                                  "half-plane".format(z))


def _check_disk(*points):
    for w in points:
        if not np.all(np.abs(w) < 1):
            raise HyperbolicError("Point {} is not in the unit "
                                  "disk".format(w))


def _arccosh1p(delta):
    # arccosh(1 + delta) without losing the small-delta digits
    delta = np.asarray(delta, dtype=float)
    return np.log1p(delta + np.sqrt(delta * (2.0 + delta)))


def dist_halfplane(z1, z2):
    """
    Hyperbolic distance in the upper half-plane,
    cosh(rho) = 1 + |z1 - z2|^2 / (2 Im z1 Im z2).

    Raises:
        HyperbolicError: a point is not in the open half-plane
    """
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    _check_halfplane(z1, z2)
    delta = np.abs(z1 - z2) ** 2 / (2.0 * z1.imag * z2.imag)
    rho = _arccosh1p(delta)
    return float(rho) if rho.ndim == 0 else rho


def dist_disk(w1, w2):
    """
    Hyperbolic distance in the unit disk (curvature -1),
    2 artanh(|w1 - w2| / |1 - conj(w1) w2|).

    Raises:
        HyperbolicError: a point is not in the open disk
    """
    w1 = np.asarray(w1, dtype=complex)
    w2 = np.asarray(w2, dtype=complex)
    _check_disk(w1, w2)
    delta = 2.0 * np.abs(w1 - w2) ** 2 / \
        ((1.0 - np.abs(w1) ** 2) * (1.0 - np.abs(w2) ** 2))
    rho = _arccosh1p(delta)
    return float(rho) if rho.ndim == 0 else rho


class MobiusTransform(object):
    """
    The Mobius map z -> (a z + b) / (c z + d), held as a 2x2 complex matrix
    normalised to determinant one::

        phi = MobiusTransform([[1, 1j], [0, 1]])   # z -> z + i
        phi(0)              # 1j
        phi.inverse()(1j)   # 0
    """
    def __init__(self, matrix):
        m = np.asarray(matrix, dtype=complex).reshape(2, 2)
        det = np.linalg.det(m)
        if abs(det) < 1e-300:
            raise HyperbolicError("Singular Mobius matrix")
        self.matrix = m / np.sqrt(det)

    def __call__(self, z):
        (a, b), (c, d) = self.matrix
        z = np.asarray(z, dtype=complex)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = (a * z + b) / (c * z + d)
        return complex(w) if w.ndim == 0 else w

    def inverse(self):
        (a, b), (c, d) = self.matrix
        return MobiusTransform([[d, -b], [-c, a]])

    def compose(self, other):
        """Return the map self(other(z))"""
        return MobiusTransform(self.matrix @ other.matrix)

    def __repr__(self):
        return "MobiusTransform({})".format(self.matrix.tolist())


def disk_automorphism(a, rotation=1.0):
    """
    The automorphism w -> rotation (w - a) / (1 - conj(a) w) of the unit
    disk, sending a to 0.
    """
    a = complex(a)
    _check_disk(a)
    if abs(abs(complex(rotation)) - 1.0) > 1e-12:
        raise HyperbolicError("Rotation must be unimodular")
    rotation = complex(rotation)
    return MobiusTransform([[rotation, -rotation * a], [-a.conjugate(), 1]])


def mobius_disk_to_halfplane(b):
    """
    The Mobius map phi(w) = (b - conj(b) w) / (1 - w) of the unit disk onto
    the upper half-plane with phi(0) = b. Its inverse is available through
    ``phi.inverse()``.

    Args:
        b: a point of the upper half-plane

    Returns:
        MobiusTransform
    """
    b = complex(b)
    _check_halfplane(b)
    return MobiusTransform([[-b.conjugate(), b], [-1, 1]])


def hyperbolic_disk_euclidean(d):
    """
    The Euclidean circle bounding a hyperbolic disk.

    In the unit disk a disk of radius R about c is the Euclidean disk with
    centre c (1 - t^2) / (1 - t^2 |c|^2) and radius
    t (1 - |c|^2) / (1 - t^2 |c|^2), t = tanh(R / 2). In the half-plane a
    disk of radius R about x + iy has centre x + iy cosh R and radius
    y sinh R.

    Args:
        d: HyperbolicDisk

    Returns:
        (euclidean_center, euclidean_radius)
    """
    center = complex(d.center)
    R = float(d.radius)
    if not R > 0:
        raise HyperbolicError("Hyperbolic radius must be positive")
    if d.domain == DISK:
        _check_disk(center)
        t = np.tanh(0.5 * R)
        c2 = abs(center) ** 2
        scale = 1.0 - t * t * c2
        return center * (1.0 - t * t) / scale, t * (1.0 - c2) / scale
    if d.domain == HALF_PLANE:
        _check_halfplane(center)
        return (complex(center.real, center.imag * np.cosh(R)),
                center.imag * np.sinh(R))
    raise HyperbolicError("Unknown domain "+str(d.domain))


def claim41_check(b, constant=10.0):
    """
    Radius bound for the hyperbolic ball about b that must reach i:
    R = log(constant / Im b). Returns (R, whether dist(i, b) < R).

    The default constant is 10; any constant above 4 works for b close
    enough to the real axis.
    """
    b = complex(b)
    _check_halfplane(b)
    bound = float(np.log(constant / b.imag))
    return bound, bool(dist_halfplane(1j, b) < bound)


def hyperbolic_ball_bound(R, mu):
    """
    Bound (4 / pi) tanh(R / 2)^mu on a map into the unit disk with a zero
    of order mu, over a hyperbolic ball of radius R about the zero.
    """
    R = np.asarray(R, dtype=float)
    if np.any(R < 0) or mu < 0:
        raise HyperbolicError("Need R >= 0 and mu >= 0")
    bound = 4.0 / np.pi * np.tanh(0.5 * R) ** mu
    return float(bound) if bound.ndim == 0 else bound
