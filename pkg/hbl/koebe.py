import numpy as np
from collections import namedtuple
from scipy.ndimage import median_filter
import logging
from .capacity import tau2, continuum_metrics, CapacityError
from .harmonic import eval_map
from .hyperbolic import hyperbolic_ball_bound

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
Koebe-type uniqueness diagnostics. A harmonic map that is uniformly small on
continua crowding the boundary, or that has zeros of growing multiplicity
approaching the boundary, must vanish identically; the functions here
evaluate the quantitative hypotheses of those statements on concrete data.

The conclusions themselves are not computable facts about an arbitrary map,
so reports only carry the hypothesis side together with a label saying what
the hypothesis would force.
"""

logger = logging.getLogger(__name__)

# q_j above this contradicts the modulus chain
CERTIFICATE = 16.0 * np.pi
MAX_DIAMETER = 0.25
DEGENERATE_LOG = 1e-6

UNBOUNDED = "unbounded"
BOUNDED = "bounded"
UNDETERMINED = "undetermined"

KoebeReport = namedtuple("KoebeReport",
                         ["quantities", "modulus_lower", "modulus_upper", "K",
                          "trend", "label", "w"])
KoebeReport.__new__.__defaults__ = (None,)

SecondFormReport = namedtuple("SecondFormReport",
                              ["values", "inequality_holds", "degenerate"])

VanishingReport = namedtuple("VanishingReport",
                             ["terms", "tends_to_zero", "label"])

SchwarzReport = namedtuple("SchwarzReport",
                           ["worst_ratio", "holds", "linear_ratio"])


class KoebeError(Exception):
    """
    A generic error created by the Koebe analyser
    """

    pass


class KoebeSequenceItem(object):
    """
    One term (C_j, r_j, M_j) of a continuum sequence: a polyline continuum
    inside the disk of radius r_j on which the map is bounded by M_j.

    M_j may be given directly or through ``log_inv_M`` = log(1 / M_j), so
    that bounds such as exp(-8^j) stay representable::

        item = KoebeSequenceItem([0.2, 0.45], 0.5, log_inv_M=100.0)

    Raises:
        KoebeError: the continuum leaves the disk of radius r_j, is a point,
            or the bound is not in (0, 1)
    """
    def __init__(self, continuum, r, M=None, log_inv_M=None):
        vertices = np.atleast_1d(np.asarray(continuum, dtype=complex))
        if not 0 < r < 1:
            raise KoebeError("r_j must lie in (0, 1), got {}".format(r))
        if np.any(np.abs(vertices) >= r):
            raise KoebeError("Continuum leaves the disk of radius {}".format(
                r))
        if (M is None) == (log_inv_M is None):
            raise KoebeError("Give exactly one of M and log_inv_M")
        if log_inv_M is None:
            if not 0 < M < 1:
                raise KoebeError("M_j must lie in (0, 1), got {}".format(M))
            log_inv_M = -np.log(M)
        elif not log_inv_M > 0:
            raise KoebeError("log(1/M_j) must be positive, got {}".format(
                log_inv_M))
        try:
            self.metrics = continuum_metrics(vertices)
        except CapacityError as e:
            raise KoebeError(str(e))
        self.continuum = vertices
        self.r = float(r)
        self.log_inv_M = float(log_inv_M)

    @property
    def M(self):
        return float(np.exp(-self.log_inv_M))

    @property
    def diameter(self):
        return self.metrics.diameter


def _trend(q, certificate=CERTIFICATE):
    if np.max(q) <= certificate:
        return BOUNDED
    tail = max(1, len(q) // 3)
    head = q[:-tail]
    if head.size and np.max(q[-tail:]) > np.max(head):
        return UNBOUNDED
    return UNDETERMINED


def koebe_quantity(items, f=None, alpha=None, n_samples=256,
                   certificate=CERTIFICATE):
    """
    The hypothesis quantity q_j = tau2(1/d(C_j)) log(1/M_j) (1-r_j)/(1+r_j)
    for each item, with the modulus chain behind it: the lower bound
    tau2(1/d)/4 on the modulus of curves separating C_j from the circle,
    the upper bound 4 pi / log(1/M_j) on the modulus of their images, and
    the distortion K_j = (1+r_j)/(1-r_j). An item with q_j > 16 pi breaks
    the chain.

    Args:
        items: list of KoebeSequenceItem
        f: optional HarmonicMap; with ``alpha`` the distance w from
            alpha to the image of the closed disk of radius 1/2 is sampled
        alpha: the value the map is compared with
        n_samples: angular resolution of the polar grid w is sampled on

    Returns:
        KoebeReport

    Raises:
        KoebeError: empty input or a continuum wider than 1/4
    """
    if len(items) == 0:
        raise KoebeError("Need at least one sequence item")
    lower = []
    upper = []
    K = []
    q = []
    for j, item in enumerate(items):
        if item.diameter > MAX_DIAMETER:
            raise KoebeError("Item {} has diameter {:.4g} > 1/4; subdivide "
                             "the continuum into pieces of diameter at most "
                             "1/4".format(j, item.diameter))
        t = tau2(1.0 / item.diameter).value
        k = (1.0 + item.r) / (1.0 - item.r)
        lower.append(0.25 * t)
        upper.append(4.0 * np.pi / item.log_inv_M)
        K.append(k)
        q.append(t * item.log_inv_M / k)
    q = np.asarray(q)
    trend = _trend(q, certificate)
    label = ("hypothesis satisfied: the map is forced to be constant"
             if trend == UNBOUNDED else "hypothesis not established")
    w = None
    if f is not None and alpha is not None:
        phi = 2.0 * np.pi * np.arange(n_samples) / n_samples
        radii = np.linspace(0.0, 0.5, n_samples // 8 + 1)
        grid = (radii[:, None] * np.exp(1j * phi)[None, :]).ravel()
        w = float(np.min(np.abs(eval_map(f, grid) - alpha)))
    logger.debug("Koebe quantities %s, trend %s", q, trend)
    return KoebeReport(q, np.asarray(lower), np.asarray(upper),
                       np.asarray(K), trend, label, w)


def koebe_quantity_second_form(items):
    """
    The weaker quantity log(1/M_j) (1-r_j) / (log(1/d_j) (1+r_j)), together
    with the per-item check tau2(1/d) >= (pi/2) / log(1/d) that makes it a
    valid substitute. Items with log(1/d) below 1e-6 are flagged
    degenerate (the quantity blows up as d tends to one).

    Raises:
        KoebeError: an item has diameter >= 1
    """
    values = []
    holds = []
    degenerate = []
    for j, item in enumerate(items):
        d = item.diameter
        if d >= 1:
            raise KoebeError("Item {} has diameter {:.4g} >= 1".format(j, d))
        log_inv_d = -np.log(d)
        ratio = (1.0 - item.r) / (1.0 + item.r)
        flagged = bool(log_inv_d < DEGENERATE_LOG)
        if flagged:
            logger.warning("Item %d: diameter %.15g too close to 1", j, d)
        degenerate.append(flagged)
        values.append(item.log_inv_M * ratio / log_inv_d if log_inv_d > 0
                      else np.inf)
        t = tau2(1.0 / d).value
        holds.append(bool(t * item.log_inv_M >=
                          0.5 * np.pi * item.log_inv_M / log_inv_d))
    return SecondFormReport(np.asarray(values), holds, degenerate)


class ZeroSequence(object):
    """
    Zeros b_k of a bounded map of the upper half-plane with multiplicities
    mu_k. ``constant`` is the c of the terms ((c - Im b_k)/(c + Im b_k))^mu_k;
    the classic statement uses 10, any c > 4 will do.
    """
    def __init__(self, points, multiplicities, constant=10.0):
        points = np.atleast_1d(np.asarray(points, dtype=complex))
        mult = np.atleast_1d(np.asarray(multiplicities))
        if points.shape != mult.shape:
            raise KoebeError("Need one multiplicity per zero")
        if points.size == 0:
            raise KoebeError("A zero sequence needs at least one zero")
        if np.any(points.imag <= 0):
            raise KoebeError("Zeros must lie in the upper half-plane")
        if np.any(mult < 1) or np.any(mult != np.round(mult)):
            raise KoebeError("Multiplicities must be positive integers")
        if not constant > 0:
            raise KoebeError("The constant must be positive")
        self.points = points
        self.multiplicities = mult.astype(float)
        self.constant = float(constant)

    def __len__(self):
        return self.points.size


def vanishing_criterion(seq, threshold=1e-3):
    """
    The terms ((c - Im b_k)/(c + Im b_k))^mu_k of a zero sequence and whether
    they tend to zero: the largest magnitude in the last quarter is below
    ``threshold`` and the 3-point moving median of the magnitudes is
    non-increasing over that quarter. Terms keep their sign, so a zero with
    Im b_k > c and odd mu_k gives a negative term.

    Returns:
        VanishingReport
    """
    c = seq.constant
    y = seq.points.imag
    with np.errstate(divide="ignore"):
        terms = ((c - y) / (c + y)) ** seq.multiplicities
    magnitude = np.abs(terms)
    quarter = max(1, len(terms) // 4)
    tail = magnitude[-quarter:]
    smooth = median_filter(magnitude, size=3, mode="nearest")[-quarter:]
    verdict = bool(np.max(tail) < threshold and
                   np.all(np.diff(smooth) <= 0))
    label = ("hypothesis satisfied: the map is forced to vanish" if verdict
             else "hypothesis not established")
    return VanishingReport(terms, verdict, label)


def vanishing_bound(seq):
    """
    Per-zero bound on |f(i)| for a map into the unit disk: (4/pi) times the
    term, the Schwarz bound on the hyperbolic ball of radius log(c / Im b_k)
    about b_k.
    """
    terms = vanishing_criterion(seq).terms
    return 4.0 / np.pi * np.abs(terms)


def schwarz_bound_check(f, mu, samples, tol=1e-9):
    """
    Sampled check of the harmonic Schwarz bound
    |f(z)| <= (4/pi) arctan(|z|^mu) for a sense-preserving map of the disk
    into itself with a zero of order mu at the origin. The weaker linear
    bound (4/pi)|z|^mu is reported alongside. The origin is skipped.

    Returns:
        SchwarzReport

    Raises:
        KoebeError: f(0) is not zero, or f leaves the disk at a sample
    """
    samples = np.atleast_1d(np.asarray(samples, dtype=complex))
    f0 = eval_map(f, 0j)
    if abs(f0) > 1e-9:
        raise KoebeError("Map does not vanish at the origin: f(0)={}".format(
            f0))
    samples = samples[np.abs(samples) > 0]
    values = np.abs(eval_map(f, samples))
    if np.any(values >= 1):
        bad = samples[np.argmax(values)]
        raise KoebeError("Map leaves the unit disk at z={}".format(bad))
    r = np.abs(samples) ** mu
    worst = float(np.max(values / (4.0 / np.pi * np.arctan(r))))
    linear = float(np.max(values / hyperbolic_ball_bound(
        2.0 * np.arctanh(np.abs(samples)), mu)))
    return SchwarzReport(worst, worst <= 1.0 + tol, linear)
