import os
import tempfile

import numpy as np

from jcarray_problem_base_test import JCArrayTestCase
from jcarray import LatticeSpec, pyJCArray
from jcarray.presets import getPreset
from jcarray.utilities import LossyParams

"""
Decoupled, lossless sites with backscattering eta = Gamma at rho = 1e-3.
The only forbidden band in the window 1 +/- 15 rho is |delta| < 1, i.e.
omega/omega_eg in (0.999, 1.001). A second problem scans two lattice
constants at once and writes the sampled dispersion.
"""

RHO = 1e-3
WINDOW = (1.0 - 15.0 * RHO, 1.0 + 15.0 * RHO)


class ProblemTest(JCArrayTestCase.JCArrayTest):
    N_PROCS = 1  # this is how many MPI processes to use for this TestCase.

    # Gap edges are checked to 2e-2 Gamma
    rtol = 0.0
    atol = 2e-5

    REFS = {
        "short_num_rows": 1,
        "short_L_over_lambda0_min": 0.05,
        "short_omega_lo_min": 0.999,
        "short_omega_hi_max": 1.001,
        "short_width_max": 0.002,
        "scan_num_rows": 2,
        "scan_L_over_lambda0_min": 0.05,
        "scan_L_over_lambda0_max": 0.5,
        "scan_omega_lo_min": 0.999,
        "scan_omega_hi_max": 1.001,
    }

    def setup_problems(self, comm):
        """
        Setup pyJCArray object and problems we will be testing.
        """
        front = pyJCArray(getPreset("bands-a"), comm=comm)
        front.setLattice(LatticeSpec(l_over_lambda0=0.05, rho=RHO))
        front.initialize()

        short = front.createBandProblem("short", WINDOW, 3000)
        scan = front.createBandProblem(
            "scan",
            WINDOW,
            3000,
            lattices=[
                LatticeSpec(l_over_lambda0=0.05, rho=RHO),
                LatticeSpec(l_over_lambda0=0.5, rho=RHO),
            ],
            options={"writeDispersion": True},
        )
        return [short, scan], front

    def test_gap_lookup(self):
        prob = self.jc_probs[1]
        prob.solve()
        gaps = prob.getGaps()
        self.assertEqual(sorted(gaps), [0.05, 0.5])
        self.assertGreater(prob.getGaps(0.05)[0].width, prob.getGaps(0.5)[0].width)
        with self.assertRaises(KeyError):
            prob.getGaps(0.25)

    def test_metadata(self):
        prob = self.jc_probs[0]
        prob.solve()
        meta = prob.getMetadata()
        self.assertEqual(meta["mode"], "bands")
        lo, hi, width = meta["principal_gaps"]["0.05"]
        self.assertAlmostEqual(lo, 0.999, delta=2e-5)
        self.assertAlmostEqual(hi, 1.001, delta=2e-5)
        self.assertAlmostEqual(width, hi - lo)

    def test_dispersion_table(self):
        prob = self.jc_probs[1]
        prob.solve()
        with tempfile.TemporaryDirectory() as tmp_dir:
            prob.writeTable(os.path.join(tmp_dir, "gaps.csv"))
            disp_file = os.path.join(tmp_dir, "gaps.dispersion.csv")
            with open(disp_file) as fh:
                header = fh.readline().strip()
            self.assertEqual(
                header, "L_over_lambda0,omega_over_omega_eg,q_l,rhs,k_l,propagating"
            )
            data = np.loadtxt(disp_file, delimiter=",", skiprows=1)
        self.assertEqual(data.shape, (6000, 6))
        # Propagating samples carry a Bloch phase, blocked samples do not
        propagating = data[:, 5] == 1
        self.assertTrue(np.all(np.isfinite(data[propagating, 4])))
        self.assertTrue(np.all(np.isnan(data[~propagating, 4])))

    def test_lossy_site(self):
        front = pyJCArray(getPreset("case5"), comm=self.comm)
        front.setLattice(LatticeSpec(l_over_lambda0=0.05, rho=RHO))
        front.initialize()
        with self.assertRaises(LossyParams):
            front.createBandProblem("lossy", WINDOW, 3000)
