import unittest
import os
import sys
import numpy as np
from scipy.integrate import quad
# make sure we use the devel version first
sys.path.insert(0, os.path.dirname(os.path.realpath(__file__))+'/..')
from hbl.analytic import Polynomial, ScaledIdentity
from hbl.harmonic import HarmonicMap, poisson_step_map, \
    regular_polygon_boundary
from hbl.boundary import (GammaCurve, gamma_point, lm_integral,
                          classify_partials, lm_classify, majorized_lm_check,
                          blw_radial, area_integral, region_bound, thm54_check,
                          SPEED_FLOOR,
                          majorization_check, cluster_sample,
                          BoundaryDiagnosticsError, CONVERGENT, DIVERGENT,
                          INCONCLUSIVE, TENDS_TO_ZERO, TENDS_TO_POSITIVE)

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

triangle = poisson_step_map(regular_polygon_boundary(3))
identity = HarmonicMap(Polynomial([0, 1]), 0)


def branch_slope(alpha, m):
    """ Per-branch growth of L(m) in log(1/delta) for a(z) = alpha z
    """
    return (1 - abs(alpha) ** 2) * np.sqrt(1 + m * m) / (2 * m)


class TestGammaCurve(unittest.TestCase):
    """Tests the curves spiralling into a boundary point"""

    def test_point(self):
        curve = GammaCurve(0.0, 0.2)
        z, speed = gamma_point(curve, np.pi)
        self.assertAlmostEqual(abs(z - (1 - 0.2 * np.pi) * -1), 0.0,
                               delta=1e-15)
        self.assertAlmostEqual(z.real, -0.37168, delta=1e-5)
        self.assertAlmostEqual(speed, np.hypot(0.2, 1 - 0.2 * np.pi),
                               delta=1e-15)

    def test_approach(self):
        """ The curve tends to zeta from both sides
        """
        curve = GammaCurve(np.pi / 2, 0.2)
        for theta in (np.pi / 2 + 1e-9, np.pi / 2 - 1e-9):
            z, _ = gamma_point(curve, theta)
            self.assertAlmostEqual(abs(z - 1j), 0.0, delta=1e-8)

    def test_speed_bounds(self):
        rng = np.random.default_rng(31)
        for m in (0.05, 0.2, 0.29, 0.31):
            curve = GammaCurve(0.4, m)
            u = rng.uniform(1e-12, curve.theta_max, 1000)
            sign = rng.choice([-1.0, 1.0], 1000)
            for theta in 0.4 + sign * u:
                z, speed = curve.point(theta)
                self.assertTrue(SPEED_FLOOR < speed < 2)
                self.assertLess(abs(z), 1)

    def test_range(self):
        curve = GammaCurve(0.0, 0.5)
        self.assertEqual(curve.theta_max, 2.0)
        with self.assertRaises(BoundaryDiagnosticsError):
            curve.point(0.0)
        with self.assertRaises(BoundaryDiagnosticsError):
            curve.point(2.5)
        with self.assertRaises(BoundaryDiagnosticsError):
            GammaCurve(0.0, 0.0)


class TestLmIntegral(unittest.TestCase):
    """Tests the truncated integral L(m)"""

    def test_arclength(self):
        """ With a(z) = z the integrand is the speed alone
        """
        curve = GammaCurve(0.0, 0.2)
        value = lm_integral(ScaledIdentity(1.0), curve, 1e-6)
        self.assertLess(value, 4 * np.pi)
        arc = quad(lambda u: np.hypot(0.2, 1 - 0.2 * u), 1e-6, np.pi,
                   epsabs=1e-12)[0]
        self.assertAlmostEqual(value, 2 * arc, delta=1e-7)

    def test_logarithmic_growth(self):
        """ a = 0: L(m) grows like 2 * sqrt(1 + m^2) / (2m) per decade of
            log(1/delta), one share per branch
        """
        curve = GammaCurve(0.0, 0.2)
        zero = Polynomial([0.0])
        L2, L4, L6 = [lm_integral(zero, curve, d) for d in (1e-2, 1e-4, 1e-6)]
        expected = 2 * branch_slope(0, 0.2) * np.log(100)
        self.assertAlmostEqual(L6 - L4, expected, delta=1e-3 * expected)
        self.assertAlmostEqual(L4 - L2, expected, delta=1e-2 * expected)

    def test_validation(self):
        curve = GammaCurve(0.0, 0.2)
        with self.assertRaises(BoundaryDiagnosticsError):
            lm_integral(ScaledIdentity(0.5), curve, np.pi)
        with self.assertRaises(BoundaryDiagnosticsError):
            lm_integral(ScaledIdentity(0.5), curve, 0.0)
        with self.assertRaises(BoundaryDiagnosticsError):
            lm_integral(ScaledIdentity(2.0), curve, 1e-3)


class TestClassification(unittest.TestCase):
    """Tests the finite decision procedure for L(m) = infinity"""

    deltas = 10.0 ** -np.arange(1, 8)

    def test_synthetic_convergent(self):
        verdict = classify_partials(self.deltas, 3.0 - self.deltas)
        self.assertEqual(verdict.verdict, CONVERGENT)
        self.assertAlmostEqual(verdict.limit_or_rate, 3.0, delta=1e-6)

    def test_synthetic_divergent(self):
        verdict = classify_partials(self.deltas, 2 * np.log(1 / self.deltas))
        self.assertEqual(verdict.verdict, DIVERGENT)
        self.assertAlmostEqual(verdict.slope, 1.0, delta=1e-12)
        self.assertLess(verdict.residual, 1e-10)

    def test_synthetic_inconclusive(self):
        values = [1, 2, 2.5, 5, 5.1, 9, 9.05]
        with self.assertLogs("hbl.boundary", level="WARNING"):
            verdict = classify_partials(self.deltas, values)
        self.assertEqual(verdict.verdict, INCONCLUSIVE)
        self.assertGreater(verdict.residual, 1e-2)

    def test_too_short(self):
        with self.assertRaises(BoundaryDiagnosticsError):
            classify_partials([0.1, 0.01], [1.0, 2.0])

    def test_example_grid(self):
        """ a(z) = alpha z: divergent for |alpha| < 1, convergent for
            |alpha| = 1, at two boundary points and three slopes
        """
        for zeta in (0.0, np.pi / 2):
            for m in (0.1, 0.2, 0.3):
                for alpha in (0.0, 0.5, 0.9, 1.0):
                    est = lm_classify(ScaledIdentity(alpha), zeta, m)
                    expected = CONVERGENT if alpha == 1.0 else DIVERGENT
                    self.assertEqual(est.verdict.verdict, expected,
                                     msg="alpha={} m={} zeta={}".format(
                                         alpha, m, zeta))
                    values = [v for _, v in est.partial_values]
                    self.assertTrue(np.all(np.diff(values) >= 0))

    def test_divergence_rate(self):
        for alpha in (0.0, 0.5, 0.9):
            est = lm_classify(ScaledIdentity(alpha), 0.0, 0.2)
            expected = branch_slope(alpha, 0.2)
            self.assertAlmostEqual(est.verdict.slope, expected,
                                   delta=0.02 * expected)
            self.assertIn("continuous", est.verdict.label)

    def test_zero_dilatation_rate(self):
        est = lm_classify(Polynomial([0.0]), 0.0, 0.2)
        self.assertEqual(est.verdict.verdict, DIVERGENT)
        self.assertAlmostEqual(est.verdict.slope, 2.55, delta=0.01)

    def test_rotation_equivariance(self):
        """ L for a at zeta equals L for a(exp(-i phi) z) at exp(i phi) zeta
        """
        a = Polynomial([0.2, 0.5, 0.1j])
        phi = 1.1
        first = lm_classify(a, 0.3, 0.2)
        second = lm_classify(a.rotated(phi), 0.3 + phi, 0.2)
        self.assertEqual(first.verdict.verdict, second.verdict.verdict)
        for (_, u), (_, v) in zip(first.partial_values,
                                  second.partial_values):
            self.assertAlmostEqual(u, v, delta=1e-7)

    def test_schedule_validation(self):
        with self.assertRaises(BoundaryDiagnosticsError):
            lm_classify(ScaledIdentity(0.5), 0.0, 0.2, [1e-3, 1e-2, 1e-4])
        with self.assertRaises(BoundaryDiagnosticsError):
            lm_classify(ScaledIdentity(0.5), 0.0, 0.2, [1e-2, 1e-3])
        with self.assertRaises(BoundaryDiagnosticsError):
            lm_classify(ScaledIdentity(0.5), 0.0, 0.5, [3.0, 1e-1, 1e-2])

    def test_majorized(self):
        """ |0.5 z| <= |0.9 z| so its integrand is the larger one
        """
        report = majorized_lm_check(ScaledIdentity(0.5), ScaledIdentity(0.9),
                                    0.0, 0.2, 1e-4)
        self.assertTrue(report.holds)
        self.assertGreater(report.L_a, report.L_F)


class TestRadialCriterion(unittest.TestCase):
    """Tests the radial (1 - r)|h'| trend"""

    def test_jump_point(self):
        """ At a jump the trend settles at |jump| / (2 pi)
        """
        trend = blw_radial(triangle, 0.0)
        self.assertEqual(trend.verdict, TENDS_TO_POSITIVE)
        self.assertAlmostEqual(trend.c_estimate, np.sqrt(3) / (2 * np.pi),
                               delta=1e-2)

    def test_arc_interior(self):
        trend = blw_radial(triangle, np.pi)
        self.assertEqual(trend.verdict, TENDS_TO_ZERO)
        self.assertEqual(trend.c_estimate, 0.0)

    def test_identity(self):
        trend = blw_radial(identity, 0.7)
        self.assertEqual(trend.verdict, TENDS_TO_ZERO)
        self.assertAlmostEqual(trend.values[-1], 1e-4, delta=1e-12)

    def test_radii_validation(self):
        with self.assertRaises(BoundaryDiagnosticsError):
            blw_radial(identity, 0.0, [0.5, 0.6, 0.7, 0.8, 0.9])
        with self.assertRaises(BoundaryDiagnosticsError):
            blw_radial(identity, 0.0, [0.9, 0.99, 0.999])
        with self.assertRaises(BoundaryDiagnosticsError):
            blw_radial(identity, 0.0, [0.99, 0.9, 0.999, 0.9995, 0.9999])


class TestArea(unittest.TestCase):
    """Tests the image area and the regions swept by the curves"""

    def test_identity(self):
        self.assertAlmostEqual(area_integral(identity), np.pi, delta=1e-6)

    def test_shear(self):
        """ h = z, g = alpha z^2 / 2: area pi (1 - |alpha|^2 / 2)
        """
        alpha = 0.6
        f = HarmonicMap(Polynomial([0, 1]), Polynomial([0, 0, alpha / 2]))
        self.assertAlmostEqual(area_integral(f), np.pi * (1 - alpha ** 2 / 2),
                               delta=1e-6)

    def test_coefficient_oracle(self):
        """ Area = pi sum k (|a_k|^2 - |b_k|^2) for polynomial parts
        """
        a = np.array([0, 1, 0.2, 0.1j])
        b = np.array([0, 0, 0.3])
        f = HarmonicMap(Polynomial(a), Polynomial(b))
        k = np.arange(4)
        expected = np.pi * (np.sum(k * np.abs(a) ** 2) -
                            np.sum(k[:3] * np.abs(b) ** 2))
        self.assertAlmostEqual(area_integral(f), expected, delta=1e-6)

    def test_triangle(self):
        """ The inscribed equilateral triangle has area 3 sqrt(3) / 4
        """
        expected = 3 * np.sqrt(3) / 4
        self.assertAlmostEqual(area_integral(triangle, resolution=1024),
                               expected, delta=0.01 * expected)

    def test_region_bound(self):
        m0 = 0.2
        self.assertAlmostEqual(region_bound(identity, m0),
                               np.pi ** 2 * (m0 - np.pi * m0 ** 2 / 2),
                               delta=1e-10)
        with self.assertRaises(BoundaryDiagnosticsError):
            region_bound(identity, 0.5)

    def test_resolution(self):
        with self.assertRaises(BoundaryDiagnosticsError):
            area_integral(identity, resolution=2)


class TestAreaInequality(unittest.TestCase):
    """Tests the area bound by H and the integral of L(m)"""

    m_grid = [0.05, 0.1, 0.2, 0.3]

    def test_identity_divergent(self):
        report = thm54_check(identity, 0.0, self.m_grid)
        self.assertEqual(report.integral_L, np.inf)
        self.assertEqual(report.rhs, np.inf)
        self.assertTrue(report.inequality_holds)
        self.assertAlmostEqual(report.area, np.pi, delta=1e-6)
        self.assertAlmostEqual(report.H, 1.0, delta=1e-12)
        self.assertEqual(len(report.estimates), 4)

    def test_triangle(self):
        report = thm54_check(triangle, np.pi, self.m_grid)
        self.assertTrue(all(e.verdict.verdict == CONVERGENT
                            for e in report.estimates))
        self.assertTrue(np.isfinite(report.integral_L))
        self.assertAlmostEqual(report.area, 1.299, delta=0.02)
        self.assertTrue(report.inequality_holds)
        self.assertGreater(report.H, 0)

    def test_polynomial_pairs(self):
        """ Polynomial pairs with |a| < 1 on the closed disk: L(m) diverges
            at every m, so the right-hand side is infinite
        """
        pairs = [(Polynomial([0, 1]), Polynomial([0, 0, 0.25])),
                 (Polynomial([0, 1, 0.1]), Polynomial([0, 0, 0.2])),
                 (Polynomial([0, 1, 0, 0.1]), Polynomial([0, 0, 0.05]))]
        for h, g in pairs:
            report = thm54_check(HarmonicMap(h, g), 0.0, self.m_grid)
            self.assertEqual(report.integral_L, np.inf)
            self.assertTrue(report.inequality_holds)
            self.assertGreater(report.area, 0)

    def test_scaling(self):
        """ Doubling f quadruples both sides
        """
        report = thm54_check(triangle, np.pi, self.m_grid)
        doubled = thm54_check(triangle.scaled(2.0), np.pi, self.m_grid)
        self.assertAlmostEqual(doubled.area, 4 * report.area,
                               delta=1e-9 * report.area)
        self.assertAlmostEqual(doubled.H, 2 * report.H, delta=1e-9)
        self.assertAlmostEqual(doubled.integral_L, report.integral_L,
                               delta=1e-6)
        self.assertEqual(doubled.inequality_holds, report.inequality_holds)

    def test_validation(self):
        with self.assertRaises(BoundaryDiagnosticsError):
            thm54_check(identity, 0.0, [0.1, 0.5])
        with self.assertRaises(BoundaryDiagnosticsError):
            thm54_check(identity, 0.0, self.m_grid, compact_margin=1.0)


class TestMajorization(unittest.TestCase):
    """Tests the sampled necessary condition |a| <= |F|"""

    def setUp(self):
        rng = np.random.default_rng(32)
        r = np.sqrt(rng.uniform(0, 0.99, 200))
        self.samples = r * np.exp(2j * np.pi * rng.uniform(0, 1, 200))

    def test_factor(self):
        F = Polynomial([0, 1])
        ok, worst = majorization_check(Polynomial([0, 0, 0.5]), F,
                                       self.samples)
        self.assertTrue(ok)
        self.assertLessEqual(worst, 0.5)

    def test_equal(self):
        F = Polynomial([0, 0.8])
        ok, worst = majorization_check(F, F, self.samples)
        self.assertTrue(ok)
        self.assertAlmostEqual(worst, 1.0, delta=1e-15)

    def test_lower_order(self):
        ok, worst = majorization_check(Polynomial([0, 1]),
                                       Polynomial([0, 0, 1]), self.samples)
        self.assertFalse(ok)
        self.assertGreater(worst, 1)

    def test_vanishing_F(self):
        with self.assertRaises(BoundaryDiagnosticsError):
            majorization_check(Polynomial([0, 1]), Polynomial([0.0]),
                               self.samples)


class TestClusterSets(unittest.TestCase):
    """Tests sampled cluster sets at boundary points"""

    def test_jump_point(self):
        """ Near a jump the values lie close to the side joining the two
            vertices
        """
        sample = cluster_sample(triangle, 0.0)
        left, right = sample.reference
        self.assertAlmostEqual(abs(left - np.exp(4j * np.pi / 3)), 0.0,
                               delta=1e-12)
        self.assertAlmostEqual(abs(right - 1), 0.0, delta=1e-12)
        self.assertLess(sample.max_distance, 1e-2)
        # the fan sees the whole side, not a single point
        spread = np.ptp(np.real((sample.points - left) / (right - left)))
        self.assertGreater(spread, 0.5)

    def test_arc_interior(self):
        sample = cluster_sample(triangle, np.pi, approach="radial")
        left, right = sample.reference
        self.assertEqual(left, right)
        self.assertLess(sample.max_distance, 1e-2)

    def test_identity(self):
        zeta = np.exp(0.4j)
        sample = cluster_sample(identity, 0.4)
        self.assertIsNone(sample.reference)
        self.assertIsNone(sample.max_distance)
        self.assertTrue(np.all(np.abs(sample.points - zeta) <= 1e-2 + 1e-12))
        self.assertTrue(np.all(np.abs(sample.sources) <= 1 - 1e-4))

    def test_validation(self):
        with self.assertRaises(BoundaryDiagnosticsError):
            cluster_sample(identity, 0.0, n=5)
        with self.assertRaises(BoundaryDiagnosticsError):
            cluster_sample(identity, 0.0, approach="spiral")


if __name__ == '__main__':
    unittest.main()
