import unittest

import numpy as np

from jcarray.cqed import CqedParams
from jcarray.scattering import (
    decoupledLosslessAmplitudes,
    decoupledLossyAmplitudes,
    findTransmissionMinima,
    generalAmplitudes,
    maskedGeneralAmplitudes,
    noBackscatterAmplitudes,
    oracleSolve,
    oracleSystem,
    rabiSplitting,
    siteSpectrum,
)
from jcarray.utilities import (
    DegenerateDenominator,
    EmptyWindow,
    PreconditionViolation,
    SingularSystem,
    SubcriticalCoupling,
)

"""
Closed-form single-site amplitudes, checked against each other and against
a dense solve of the stationary transport equations.
"""


class GeneralAmplitudesTest(unittest.TestCase):
    def setUp(self):
        self.atol = 1e-12
        self.delta = np.linspace(-10.0, 10.0, 2001)

    def test_all_pass(self):
        amps = generalAmplitudes(CqedParams(), 0.7)
        self.assertAlmostEqual(amps.T, 1.0, delta=self.atol)
        self.assertAlmostEqual(abs(amps.r), 0.0, delta=self.atol)

    def test_full_reflection(self):
        amps = generalAmplitudes(CqedParams(eta=1.0), 0.0)
        self.assertAlmostEqual(abs(amps.t), 0.0, delta=self.atol)
        self.assertAlmostEqual(amps.r, 1j, delta=self.atol)
        self.assertAlmostEqual(amps.R, 1.0, delta=self.atol)

    def test_moderate_coupling_values(self):
        amps = generalAmplitudes(CqedParams(g=2.0, kappa=0.5, gamma=0.5), 0.0)
        self.assertAlmostEqual(amps.t, 0.276190476190476, places=12)
        self.assertAlmostEqual(amps.r, 0.609523809523810, places=12)

    def test_scalar_and_array_agree(self):
        params = CqedParams(g=5.0, kappa=0.5, gamma=0.5, eta=2.0, delta_ac=4.0)
        amps = generalAmplitudes(params, self.delta)
        for i in [0, 417, 1000, 2000]:
            single = generalAmplitudes(params, self.delta[i])
            self.assertIsInstance(single.t, complex)
            self.assertAlmostEqual(single.t, amps.t[i], places=14)
            self.assertAlmostEqual(single.r, amps.r[i], places=14)

    def test_lossless_unitarity(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            g, eta, deltaAc = rng.uniform(0.0, 5.0), rng.uniform(0.0, 5.0), rng.uniform(-5, 5)
            params = CqedParams(g=g, eta=eta, delta_ac=deltaAc)
            amps, poles = maskedGeneralAmplitudes(params, self.delta)
            total = (amps.T + amps.R)[~poles]
            np.testing.assert_allclose(total, 1.0, rtol=0.0, atol=self.atol)

    def test_lossy_sites_lose_photons(self):
        params = CqedParams(g=2.0, kappa=0.5, gamma=0.5, eta=2.0)
        amps = generalAmplitudes(params, self.delta)
        self.assertTrue(np.all(amps.T + amps.R <= 1.0 + self.atol))

    def test_pole_tolerance(self):
        # Every denominator is a pole under an absurd tolerance
        params = CqedParams(g=1.0)
        amps, poles = maskedGeneralAmplitudes(params, self.delta[:5], poleTol=1e12)
        self.assertTrue(np.all(poles))
        self.assertTrue(np.all(np.isnan(amps.t)))
        with self.assertRaises(DegenerateDenominator):
            generalAmplitudes(params, 0.0, poleTol=1e12)


class SpecialCaseTest(unittest.TestCase):
    def setUp(self):
        self.atol = 1e-12
        self.delta = np.linspace(-10.0, 10.0, 2001)

    def assertMatchesGeneral(self, params, amps):
        general = generalAmplitudes(params, self.delta)
        np.testing.assert_allclose(amps.t, general.t, rtol=0.0, atol=self.atol)
        np.testing.assert_allclose(amps.r, general.r, rtol=0.0, atol=self.atol)

    def test_decoupled_lossless(self):
        for eta in [0.0, 1.0, 2.0, 3.7]:
            with self.subTest(eta=eta):
                params = CqedParams(eta=eta)
                self.assertMatchesGeneral(params, decoupledLosslessAmplitudes(params, self.delta))

    def test_decoupled_lossless_values(self):
        amps = decoupledLosslessAmplitudes(CqedParams(eta=0.0), 0.0)
        self.assertAlmostEqual(amps.t, -1.0, delta=self.atol)
        self.assertAlmostEqual(amps.r, 0.0, delta=self.atol)
        amps = decoupledLosslessAmplitudes(CqedParams(eta=1.0), 0.0)
        self.assertAlmostEqual(amps.t, 0.0, delta=self.atol)
        self.assertAlmostEqual(amps.r, 1j, delta=self.atol)
        amps = decoupledLosslessAmplitudes(CqedParams(eta=2.0), 0.0)
        self.assertAlmostEqual(amps.t, 0.6, delta=self.atol)
        self.assertAlmostEqual(amps.r, 0.8j, delta=self.atol)
        self.assertAlmostEqual(amps.T + amps.R, 1.0, delta=self.atol)

    def test_decoupled_lossy(self):
        for kappa in [0.0, 0.5, 1.0, 2.0]:
            with self.subTest(kappa=kappa):
                params = CqedParams(kappa=kappa, gamma=kappa, eta=1.0)
                self.assertMatchesGeneral(params, decoupledLossyAmplitudes(params, self.delta))

    def test_decoupled_lossy_values(self):
        amps = decoupledLossyAmplitudes(CqedParams(kappa=2.0, gamma=2.0, eta=1.0), 0.0)
        self.assertAlmostEqual(amps.r, 0.2j, delta=self.atol)
        amps = decoupledLossyAmplitudes(CqedParams(kappa=1.0, gamma=1.0, eta=1.0), 0.0)
        self.assertAlmostEqual(amps.r, 0.4j, delta=self.atol)
        lossless = decoupledLosslessAmplitudes(CqedParams(eta=1.0), self.delta)
        lossy = decoupledLossyAmplitudes(CqedParams(eta=1.0), self.delta)
        np.testing.assert_allclose(lossy.t, lossless.t, atol=self.atol)

    def test_no_backscatter(self):
        for g in [0.0, 0.25, 2.0, 5.0]:
            with self.subTest(g=g):
                params = CqedParams(g=g, kappa=0.5, gamma=0.5)
                self.assertMatchesGeneral(params, noBackscatterAmplitudes(params, self.delta))

    def test_no_backscatter_values(self):
        amps = noBackscatterAmplitudes(CqedParams(kappa=0.5, gamma=0.5), 0.0)
        self.assertEqual(amps.r, 0.0)
        amps = noBackscatterAmplitudes(CqedParams(g=2.0, kappa=0.5, gamma=0.5), 0.0)
        self.assertAlmostEqual(amps.t, 0.276190476190476, places=12)
        self.assertAlmostEqual(amps.r, 0.609523809523810, places=12)
        amps = noBackscatterAmplitudes(CqedParams(g=5.0, kappa=0.5, gamma=0.5), 0.0)
        self.assertAlmostEqual(amps.r, 50.0 / (1.5 * 50.75), places=12)

    def test_preconditions(self):
        with self.assertRaises(PreconditionViolation):
            decoupledLosslessAmplitudes(CqedParams(g=1.0, eta=1.0), 0.0)
        with self.assertRaises(PreconditionViolation):
            decoupledLosslessAmplitudes(CqedParams(kappa=0.1, eta=1.0), 0.0)
        with self.assertRaises(PreconditionViolation):
            decoupledLossyAmplitudes(CqedParams(kappa=0.5, gamma=0.2), 0.0)
        with self.assertRaises(PreconditionViolation):
            noBackscatterAmplitudes(CqedParams(g=1.0, eta=0.5), 0.0)
        with self.assertRaises(PreconditionViolation):
            noBackscatterAmplitudes(CqedParams(g=1.0, delta_ac=0.5), 0.0)


class OracleTest(unittest.TestCase):
    def setUp(self):
        self.atol = 1e-10

    def test_random_draws(self):
        rng = np.random.default_rng(2024)
        maxErr = 0.0
        for _ in range(10000):
            g, kappa, gamma, eta = rng.uniform(0.0, 5.0, 4)
            deltaAc = rng.uniform(-5.0, 5.0)
            delta = rng.uniform(-10.0, 10.0)
            params = CqedParams(g=g, kappa=kappa, gamma=gamma, eta=eta, delta_ac=deltaAc)
            closed = generalAmplitudes(params, delta)
            oracle = oracleSolve(params, delta)
            maxErr = max(maxErr, abs(closed.t - oracle.t), abs(closed.r - oracle.r))
        self.assertLess(maxErr, self.atol)

    def test_decoupled_atom_stays_unexcited(self):
        solution = oracleSolve(CqedParams(), 0.3)
        self.assertAlmostEqual(abs(solution.t), 1.0, delta=1e-12)
        self.assertAlmostEqual(abs(solution.r), 0.0, delta=1e-12)
        self.assertAlmostEqual(abs(solution.e_q), 0.0, delta=1e-12)

    def test_decoupled_atom_residual(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            kappa, gamma, eta = rng.uniform(0.0, 5.0, 3)
            params = CqedParams(kappa=kappa, gamma=gamma, eta=eta, delta_ac=rng.uniform(-5, 5))
            # Away from the singular atomic resonance
            delta = rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 10.0)
            self.assertLess(abs(oracleSolve(params, delta).e_q), 1e-14)

    def test_equation_residual(self):
        rng = np.random.default_rng(8)
        for _ in range(1000):
            g, kappa, gamma, eta = rng.uniform(0.0, 5.0, 4)
            params = CqedParams(g=g, kappa=kappa, gamma=gamma, eta=eta)
            delta = rng.uniform(-10.0, 10.0)
            A, b = oracleSystem(params, delta)
            residual = A @ oracleSolve(params, delta).vector() - b
            self.assertLess(np.linalg.norm(residual), 1e-10)

    def test_moderate_coupling(self):
        params = CqedParams(g=2.0, kappa=0.5, gamma=0.5)
        amps = oracleSolve(params, 0.0).amplitudes()
        self.assertAlmostEqual(amps.t, 0.276190476190476, places=10)
        self.assertAlmostEqual(amps.r, 0.609523809523810, places=10)

    def test_atomic_dip(self):
        params = CqedParams(g=5.0, kappa=0.5, gamma=0.5, eta=2.0, delta_ac=4.0)
        oracle = oracleSolve(params, -5.0)
        closed = generalAmplitudes(params, -5.0)
        self.assertAlmostEqual(oracle.t, closed.t, delta=self.atol)
        self.assertAlmostEqual(oracle.r, closed.r, delta=self.atol)
        self.assertEqual(oracle.vector().shape, (5,))

    def test_singular_decoupled_atom(self):
        # The atomic row vanishes for g = 0 on the atomic resonance
        with self.assertRaises(SingularSystem):
            oracleSolve(CqedParams(eta=1.0), 0.0)
        # The closed form stays finite there
        amps = generalAmplitudes(CqedParams(eta=1.0), 0.0)
        self.assertTrue(np.isfinite(amps.t))


class SiteSpectrumTest(unittest.TestCase):
    def test_spectrum(self):
        spectrum = siteSpectrum(CqedParams(eta=2.0), (-10.0, 10.0, 2001))
        self.assertEqual(len(spectrum), 2001)
        self.assertEqual(spectrum.numFlagged, 0)
        np.testing.assert_allclose(spectrum.T + spectrum.R, 1.0, atol=1e-12)
        self.assertEqual(spectrum.table().shape, (2001, 4))

    def test_even_in_detuning(self):
        grid = (-10.0, 10.0, 2001)
        rng = np.random.default_rng(17)
        draws = []
        for _ in range(20):
            # No backscattering, or a decoupled atom
            g, kappa, gamma, eta = rng.uniform(0.0, 5.0, 4)
            draws += [CqedParams(g=g, kappa=kappa, gamma=gamma), CqedParams(kappa=kappa, eta=eta)]
        for params in draws:
            with self.subTest(params=params):
                spectrum = siteSpectrum(params, grid)
                np.testing.assert_allclose(spectrum.T, spectrum.T[::-1], rtol=0.0, atol=1e-12)
                np.testing.assert_allclose(spectrum.R, spectrum.R[::-1], rtol=0.0, atol=1e-12)

    def test_flagged_points_are_nan(self):
        spectrum = siteSpectrum(CqedParams(g=1.0), (-1.0, 1.0, 11), poleTol=1e12)
        self.assertEqual(spectrum.numFlagged, 11)
        self.assertTrue(np.all(np.isnan(spectrum.T)))


class TransmissionMinimaTest(unittest.TestCase):
    def test_all_pass_has_no_minima(self):
        self.assertEqual(findTransmissionMinima(CqedParams(), (-5.0, 5.0)), [])

    def test_backscattering_splitting(self):
        minima = findTransmissionMinima(CqedParams(eta=2.0), (-5.0, 5.0))
        self.assertEqual(len(minima), 2)
        np.testing.assert_allclose(minima, [-np.sqrt(3.0), np.sqrt(3.0)], atol=1e-5)

    def test_rabi_splitting(self):
        params = CqedParams(g=2.0, kappa=0.5, gamma=0.5)
        minima = findTransmissionMinima(params, (-10.0, 10.0))
        self.assertEqual(len(minima), 3)
        self.assertAlmostEqual(minima[1], 0.0, delta=1e-5)
        self.assertAlmostEqual(minima[-1] - minima[0], rabiSplitting(params), delta=0.3)

    def test_empty_window(self):
        with self.assertRaises(EmptyWindow):
            findTransmissionMinima(CqedParams(), (1.0, -1.0))
        with self.assertRaises(EmptyWindow):
            findTransmissionMinima(CqedParams(), (-1.0, 1.0), grid=2)


class RabiSplittingTest(unittest.TestCase):
    def test_values(self):
        self.assertAlmostEqual(rabiSplitting(CqedParams(g=2.0)), 2.0 * np.sqrt(7.0))
        self.assertAlmostEqual(rabiSplitting(CqedParams(g=5.0)), 14.0)

    def test_subcritical(self):
        with self.assertRaises(SubcriticalCoupling):
            rabiSplitting(CqedParams(g=0.5))


if __name__ == "__main__":
    unittest.main()
