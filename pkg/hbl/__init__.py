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
hbl contains the following components:

    * analytic - analytic functions (polynomials, series, Blaschke
      products, closed-form step-map parts) and their arithmetic
    * harmonic - harmonic maps f = h + conj(g), Poisson step maps,
      dilatations, local expansions and multiplicities
    * capacity - annulus moduli, Grotzsch/Teichmuller capacities and a
      grid ring-capacity oracle
    * hyperbolic - hyperbolic distance, Mobius maps and hyperbolic disks
    * koebe - Koebe-type uniqueness diagnostics
    * boundary - L(m) divergence, radial derivative trends, areas and
      cluster sets at a boundary point
    * scenario, cli - the ``hbl`` command and its JSON scenarios

"""

__version__ = "0.1.0"

from .analytic import (Polynomial, PowerSeries, ScaledIdentity,  # NOQA
                       FiniteBlaschke, StepMapPart)
from .harmonic import (HarmonicMap, StepBoundaryFunction,  # NOQA
                       poisson_step_map, regular_polygon_boundary, eval_map,
                       partials, dilatation, dilatation_function,
                       local_fourier, multiplicity)
from .capacity import (annulus_modulus, grotzsch_mu, gamma2, tau2,  # NOQA
                       lemmaB_bound, qc_modulus_bounds,
                       ring_capacity_numeric)
from .hyperbolic import (dist_halfplane, dist_disk,  # NOQA
                         mobius_disk_to_halfplane, HyperbolicDisk,
                         hyperbolic_disk_euclidean, claim41_check)
from .koebe import (KoebeSequenceItem, ZeroSequence, koebe_quantity,  # NOQA
                    koebe_quantity_second_form, vanishing_criterion,
                    schwarz_bound_check)
from .boundary import (GammaCurve, gamma_point, lm_integral,  # NOQA
                       lm_classify, blw_radial, area_integral, thm54_check,
                       majorization_check, cluster_sample)
