import json
import os
import tempfile
import unittest

from jcarray import loadConfig, parseConfig, pyJCArray
from jcarray.config import serializeConfig
from jcarray.presets import getPreset
from jcarray.utilities import InvalidValue, MissingField, OutputError, ParseError, UnknownKey

"""
Parsing and validation of JSON run descriptions.
"""

CASE1_ARRAY = {
    "mode": "array",
    "preset": "case1",
    "lattice": {"n_sites": 10, "l_over_lambda0": 0.25},
    "sweep": {"delta_min": -10, "delta_max": 10, "n_points": 2001},
    "output_path": "case1_n10.csv",
}


def document(**changes):
    doc = json.loads(json.dumps(CASE1_ARRAY))
    doc.update(changes)
    return json.dumps(doc)


class RunConfigTest(unittest.TestCase):
    def test_preset_array(self):
        config = parseConfig(document())
        self.assertEqual(config.mode, "array")
        self.assertEqual(config.params, getPreset("case1"))
        self.assertEqual(config.lattice.n_sites, 10)
        self.assertEqual(config.lattice.phase_model, "markovian")
        self.assertEqual(config.lattice.rho, 1e-3)
        self.assertEqual(config.sweep, (-10.0, 10.0, 2001))
        self.assertEqual(config.output_path, "case1_n10.csv")
        self.assertEqual(config.output_format, "csv")
        self.assertEqual(config.warnings, ())

    def test_negative_rate(self):
        with self.assertRaises(InvalidValue):
            parseConfig(document(params={"kappa": -1.0}))

    def test_preset_override_warns(self):
        config = parseConfig(document(params={"g": 2.0, "eta": 1.0}))
        self.assertEqual(config.params.g, 2.0)
        # eta agrees with the preset and is not reported
        self.assertEqual(len(config.warnings), 1)
        self.assertIn("params.g", config.warnings[0])

    def test_override_warning_outlives_solves(self):
        config = parseConfig(
            document(
                params={"g": 2.0},
                sweep={"delta_min": -1.0, "delta_max": 1.0, "n_points": 4},
            )
        )
        prob = pyJCArray.fromConfig(config).createProblemFromConfig(config)
        prob.solve()
        first = prob.getMetadata()["warnings"]
        prob.solve()
        self.assertEqual(prob.getMetadata()["warnings"], first)
        self.assertEqual(first[0], config.warnings[0])

    def test_round_trip(self):
        docs = [
            document(params={"g": 2.0}),
            json.dumps(
                {
                    "mode": "bands",
                    "preset": "bands-d",
                    "lattice": {"l_over_lambda0": [0.05, 0.5]},
                    "write_dispersion": True,
                }
            ),
            json.dumps(
                {
                    "mode": "disorder",
                    "params": {"g": 0.25, "kappa": 0.5, "gamma": 0.5},
                    "lattice": {"n_sites": 10, "l_over_lambda0": 0.25, "phase_model": "dispersive"},
                    "disorder": {"sigma_over_l": 0.25, "realizations": 100, "seed": 7},
                    "sweep": {"delta_min": -10, "delta_max": 10, "n_points": 1000},
                    "output_format": "json",
                }
            ),
            json.dumps(
                {
                    "mode": "single",
                    "preset": "single-5",
                    "sweep": {"delta_min": -10, "delta_max": 10, "n_points": 2001},
                    "scan": {"field": "g", "values": [0.5, 2.0]},
                }
            ),
        ]
        for text in docs:
            config = parseConfig(text)
            with self.subTest(mode=config.mode):
                self.assertEqual(parseConfig(serializeConfig(config)), config)

    def test_band_preset_window(self):
        config = parseConfig(
            json.dumps({"mode": "bands", "preset": "bands-a", "lattice": {"l_over_lambda0": 0.05}})
        )
        lo, hi, nPoints = config.sweep
        self.assertAlmostEqual(lo, 1.0 - 15e-3)
        self.assertAlmostEqual(hi, 1.0 + 15e-3)
        self.assertEqual(nPoints, 3000)

    def test_bands_need_lossless_sites(self):
        text = json.dumps(
            {
                "mode": "bands",
                "preset": "case5",
                "lattice": {"l_over_lambda0": 0.05},
                "sweep": {"omega_min": 0.99, "omega_max": 1.01, "n_points": 1000},
            }
        )
        with self.assertRaises(InvalidValue):
            parseConfig(text)
        with self.assertRaises(MissingField):
            parseConfig(
                json.dumps(
                    {"mode": "bands", "params": {"g": 1.0}, "lattice": {"l_over_lambda0": 0.05}}
                )
            )

    def test_unknown_keys(self):
        with self.assertRaises(UnknownKey):
            parseConfig(document(colour="blue"))
        with self.assertRaises(UnknownKey):
            parseConfig(document(lattice={"n_sites": 10, "l_over_lambda0": 0.25, "spacing": 1}))
        # 'disorder' is not valid in array mode
        with self.assertRaises(UnknownKey):
            parseConfig(document(disorder={"sigma_over_l": 0.25}))

    def test_missing_fields(self):
        doc = json.loads(document())
        del doc["sweep"]
        with self.assertRaises(MissingField):
            parseConfig(json.dumps(doc))
        doc = json.loads(document())
        del doc["preset"]
        with self.assertRaises(MissingField):
            parseConfig(json.dumps(doc))
        with self.assertRaises(MissingField):
            parseConfig(document(lattice={"n_sites": 10}))

    def test_invalid_values(self):
        bad = [
            {"mode": "scan"},
            {"preset": "case9"},
            {"output_format": "xml"},
            {"lattice": {"n_sites": 0, "l_over_lambda0": 0.25}},
            {"lattice": {"n_sites": 10, "l_over_lambda0": [0.25, 0.5]}},
            {"lattice": {"n_sites": 10, "l_over_lambda0": 0.25, "phase_model": "lossy"}},
            {"lattice": {"n_sites": 10, "l_over_lambda0": 0.25, "ring_radius_over_lambda0": 0.1}},
            {"sweep": {"delta_min": 1, "delta_max": -1, "n_points": 11}},
            {"sweep": {"delta_min": -1, "delta_max": 1, "n_points": 1}},
            {"sweep": {"delta_min": -1, "delta_max": 1, "n_points": 10.5}},
        ]
        for changes in bad:
            with self.subTest(changes=changes):
                with self.assertRaises(InvalidValue):
                    parseConfig(document(**changes))

    def test_invalid_disorder(self):
        base = json.loads(document(mode="disorder"))
        base.pop("output_path")
        for block in [
            {"sigma_over_l": 0.75},
            {"sigma_over_l": 0.25, "realizations": 1},
            {"sigma_over_l": 0.25, "seed": -3},
            {"sigma_over_l": 0.25, "clamp": "yes"},
        ]:
            with self.subTest(disorder=block):
                base["disorder"] = block
                with self.assertRaises(InvalidValue):
                    parseConfig(json.dumps(base))

    def test_parse_errors(self):
        with self.assertRaises(ParseError):
            parseConfig("{not json")
        with self.assertRaises(ParseError):
            parseConfig("[1, 2]")

    def test_mode_argument(self):
        doc = json.loads(document())
        del doc["mode"]
        self.assertEqual(parseConfig(json.dumps(doc), mode="array").mode, "array")
        with self.assertRaises(InvalidValue):
            parseConfig(document(), mode="single")

    def test_load_config(self):
        with tempfile.TemporaryDirectory() as tmp_dir:
            fileName = os.path.join(tmp_dir, "run.json")
            with open(fileName, "w") as fh:
                fh.write(document())
            self.assertEqual(loadConfig(fileName), parseConfig(document()))
            with self.assertRaises(OutputError):
                loadConfig(os.path.join(tmp_dir, "missing.json"))


if __name__ == "__main__":
    unittest.main()
