import unittest
import os
import sys
import numpy as np
from scipy import special
# make sure we use the devel version first
sys.path.insert(0, os.path.dirname(os.path.realpath(__file__))+'/..')
from hbl.capacity import (annulus_modulus, agm, ellipk, grotzsch_mu, gamma2,
                          tau2, continuum_metrics, lemmaB_bound,
                          qc_modulus_bounds, minorized_modulus_check,
                          RingDomainSpec, DiskComponent, PolylineComponent,
                          CircleExterior, RayComponent, ring_capacity_numeric,
                          CapacityError, CLOSED_FORM, ELLIPTIC, GRID_ORACLE)

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


class TestClosedForms(unittest.TestCase):
    """Tests the annulus modulus and the elliptic capacity functions"""

    def test_annulus(self):
        result = annulus_modulus(1, np.e)
        self.assertAlmostEqual(result.value, 2 * np.pi, delta=1e-14)
        self.assertEqual(result.method, CLOSED_FORM)
        self.assertEqual(result.error_estimate, 0.0)
        self.assertAlmostEqual(annulus_modulus(1, np.e ** 2).value, np.pi,
                               delta=1e-15)
        self.assertAlmostEqual(annulus_modulus(2, 20).value,
                               2 * np.pi / np.log(10), delta=1e-14)
        with self.assertRaises(CapacityError):
            annulus_modulus(2, 1)

    def test_agm_ellipk(self):
        """ K(k) from the AGM agrees with scipy (which takes m = k^2)
        """
        self.assertAlmostEqual(agm(1, 1), 1.0, delta=1e-16)
        for k in (0.0, 0.1, 0.5, 0.9, 0.999):
            self.assertAlmostEqual(ellipk(k), special.ellipk(k * k),
                                   delta=1e-12 * special.ellipk(k * k))

    def test_mu_symmetric_point(self):
        self.assertAlmostEqual(grotzsch_mu(1 / np.sqrt(2)), np.pi / 2,
                               delta=1e-14)

    def test_mu_small_argument(self):
        self.assertAlmostEqual(grotzsch_mu(1e-6), np.log(4e6), delta=1e-6)

    def test_mu_functional_identity(self):
        """ mu(r) mu(sqrt(1 - r^2)) = pi^2 / 4
        """
        for r in (0.1, 0.3, 0.5, 0.7, 0.9):
            self.assertAlmostEqual(
                grotzsch_mu(r) * grotzsch_mu(np.sqrt(1 - r * r)),
                np.pi ** 2 / 4, delta=1e-10)

    def test_mu_domain(self):
        for r in (0, 1, -0.5, 2):
            with self.assertRaises(CapacityError):
                grotzsch_mu(r)

    def test_tau2_values(self):
        self.assertAlmostEqual(tau2(1).value, 8.0, delta=1e-10)
        self.assertAlmostEqual(gamma2(np.sqrt(2)).value, 4.0, delta=1e-10)
        self.assertEqual(tau2(1).method, ELLIPTIC)
        self.assertGreater(tau2(0.5).value, tau2(1).value)
        self.assertGreater(tau2(1).value, tau2(2).value)

    def test_gamma_tau_relation(self):
        for s in (1.1, 2, 5, 20):
            self.assertAlmostEqual(gamma2(s).value,
                                   0.5 * tau2(s * s - 1).value,
                                   delta=1e-12 * gamma2(s).value)

    def test_tau2_monotone(self):
        """ Strictly decreasing on a log grid over [1e-3, 1e3], with no
            jumps between neighbours
        """
        t = np.logspace(-3, 3, 400)
        values = np.array([tau2(x).value for x in t])
        self.assertTrue(np.all(np.diff(values) < 0))
        self.assertTrue(np.all(np.abs(np.diff(values)) < 0.1 * values[1:] +
                               0.1))

    def test_domain_errors(self):
        with self.assertRaises(CapacityError):
            gamma2(1.0)
        with self.assertRaises(CapacityError):
            tau2(0.0)

    def test_second_form_inequality(self):
        """ tau2(1/d) >= (pi/2) / log(1/d) for small continua
        """
        for d in (1e-1, 1e-2, 1e-3):
            self.assertGreaterEqual(tau2(1 / d).value,
                                    0.5 * np.pi / np.log(1 / d))


class TestContinua(unittest.TestCase):
    """Tests continuum metrics and the bounds built on them"""

    def test_metrics(self):
        m = continuum_metrics([0.5, 0.75])
        self.assertAlmostEqual(m.diameter, 0.25, delta=1e-15)
        self.assertAlmostEqual(m.distance_to_origin, 0.5, delta=1e-15)

    def test_segment_distance(self):
        """ The segment from 1-i to 1+i passes at distance 1 from 0,
            although both vertices are further away
        """
        m = continuum_metrics([1 - 1j, 1 + 1j])
        self.assertAlmostEqual(m.distance_to_origin, 1.0, delta=1e-15)
        self.assertAlmostEqual(m.diameter, 2.0, delta=1e-15)

    def test_lemmaB(self):
        self.assertAlmostEqual(lemmaB_bound(continuum_metrics([0.5, 0.75])),
                               0.25 * tau2(2).value, delta=1e-15)
        self.assertAlmostEqual(lemmaB_bound([0.25, 0.5]), 2.0, delta=1e-10)

    def test_lemmaB_decreasing(self):
        near = lemmaB_bound([0.2, 0.4])
        far = lemmaB_bound([0.5, 0.7])
        self.assertGreater(near, far)

    def test_lemmaB_validation(self):
        with self.assertRaises(CapacityError):
            lemmaB_bound([0.0, 0.5])
        with self.assertRaises(CapacityError):
            lemmaB_bound([0.1, 1.5])
        with self.assertRaises(CapacityError):
            continuum_metrics([0.3, 0.3])

    def test_qc_bounds(self):
        self.assertEqual(qc_modulus_bounds(1, 3.0), (3.0, 3.0))
        lower, upper = qc_modulus_bounds(3, 2 * np.pi)
        self.assertAlmostEqual(lower, 2 * np.pi / 3, delta=1e-15)
        self.assertAlmostEqual(upper, 6 * np.pi, delta=1e-15)
        lo2, up2 = qc_modulus_bounds(2, 1.5)
        lo4, up4 = qc_modulus_bounds(4, 1.5)
        self.assertTrue(lo4 <= lo2 <= up2 <= up4)

    def test_minorized(self):
        """ Curves joining the circles of 1 < |z| < 4 all contain curves
            joining those of 1 < |z| < 2, so the first family is smaller
        """
        wide = annulus_modulus(1, 4).value
        narrow = annulus_modulus(1, 2).value
        self.assertTrue(minorized_modulus_check(narrow, wide))
        self.assertFalse(minorized_modulus_check(wide, narrow))


class TestRingCapacity(unittest.TestCase):
    """Tests the finite-difference ring capacity oracle"""

    def test_spec_validation(self):
        with self.assertRaises(CapacityError):
            RingDomainSpec(DiskComponent(0, 1), CircleExterior(2),
                           grid_resolution=16)
        with self.assertRaises(CapacityError):
            RingDomainSpec(DiskComponent(0, 2), CircleExterior(1.5))
        with self.assertRaises(CapacityError):
            RingDomainSpec(DiskComponent(0, 1), RayComponent(0.5))
        with self.assertRaises(CapacityError):
            RingDomainSpec(PolylineComponent([0, 1]), CircleExterior(1))

    def test_annulus_e(self):
        """ 1 < |z| < e at resolution 512 is within 2% of 2 pi
        """
        spec = RingDomainSpec(DiskComponent(0, 1), CircleExterior(np.e),
                              grid_resolution=512)
        result = ring_capacity_numeric(spec)
        self.assertEqual(result.method, GRID_ORACLE)
        self.assertGreater(result.error_estimate, 0)
        self.assertAlmostEqual(result.value, 2 * np.pi,
                               delta=0.02 * 2 * np.pi)

    def test_annulus_two(self):
        spec = RingDomainSpec(DiskComponent(0, 1), CircleExterior(2),
                              grid_resolution=512)
        exact = 2 * np.pi / np.log(2)
        self.assertAlmostEqual(ring_capacity_numeric(spec).value, exact,
                               delta=0.02 * exact)

    def test_grotzsch_ring(self):
        """ Unit disk against the ray [3, inf): within 5% of gamma2(3)
        """
        spec = RingDomainSpec(DiskComponent(0, 1), RayComponent(3.0),
                              grid_resolution=256)
        exact = gamma2(3).value
        result = ring_capacity_numeric(spec)
        self.assertAlmostEqual(result.value, exact, delta=0.05 * exact)

    def test_truncated_ray(self):
        """ An off-centre disk forces truncation, which is recorded
        """
        spec = RingDomainSpec(DiskComponent(0.2, 1), RayComponent(3.0),
                              grid_resolution=64, truncation_radius=20)
        result = ring_capacity_numeric(spec)
        self.assertEqual(result.truncation_radius, 20.0)
        self.assertGreater(result.value, 0)

    def test_refinement(self):
        """ The error estimate shrinks with the grid
        """
        coarse = ring_capacity_numeric(RingDomainSpec(
            DiskComponent(0, 1), CircleExterior(2), grid_resolution=64))
        fine = ring_capacity_numeric(RingDomainSpec(
            DiskComponent(0, 1), CircleExterior(2), grid_resolution=256))
        self.assertLess(fine.error_estimate, coarse.error_estimate)


if __name__ == '__main__':
    unittest.main()
