import contextlib
import io
import unittest
from unittest import mock

from jcarray.problems import SingleSiteProblem
from jcarray.utilities import BaseUI, Error, NegativeRate

"""
Case-insensitive, type-checked options and the boxed messages shared by
the front end and the problems.
"""


class Widget(BaseUI):
    defaultOptions = {
        "printLevel": [int, 0, "Print level."],
        "stepSize": [float, 0.5, "Step size."],
        "label": [str, "w", "Label."],
    }


def captured(call, *args):
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        call(*args)
    return out.getvalue()


class OptionsTest(unittest.TestCase):
    def setUp(self):
        self.widget = Widget(options={"STEPSIZE": 2}, comm=None)

    def test_defaults_and_overrides(self):
        self.assertEqual(self.widget.getOption("printlevel"), 0)
        self.assertEqual(self.widget.getOption("label"), "w")
        # Ints are accepted for float options
        self.assertIsInstance(self.widget.getOption("stepSize"), float)
        self.assertEqual(self.widget.getOption("stepSize"), 2.0)

    def test_wrong_type(self):
        with self.assertRaises(Error):
            self.widget.setOption("label", 3)
        with self.assertRaises(Error):
            self.widget.setOption("stepSize", True)
        self.assertEqual(self.widget.getOption("label"), "w")

    def test_unknown_option_is_ignored(self):
        out = captured(self.widget.setOption, "bogus", 1)
        self.assertIn("'bogus' is not a valid option", out)
        with self.assertRaises(AttributeError):
            self.widget.getOption("bogus")

    def test_defaults_are_per_instance(self):
        other = Widget(comm=None)
        self.assertEqual(other.getOption("stepSize"), 0.5)

    def test_print_options(self):
        self.widget.setOption("label", "v")
        out = captured(self.widget.printOptions)
        self.assertIn("stepSize (float) = 2.0", out)
        self.assertIn("label (str) = 'v'", out)
        out = captured(SingleSiteProblem.printDefaultOptions)
        self.assertIn("poleTol (float) = 1e-14", out)

    def test_info_follows_print_level(self):
        self.assertEqual(captured(self.widget._info, "quiet"), "")
        self.widget.setOption("printLevel", 1)
        self.assertEqual(captured(self.widget._info, "loud"), "Widget Info: loud\n")

    def test_serial_without_mpi4py(self):
        with mock.patch("jcarray.utilities.MPI", None):
            widget = Widget()
        self.assertIsNone(widget.comm)
        self.assertEqual((widget.rank, widget.size), (0, 1))


class ErrorTest(unittest.TestCase):
    def test_boxed_message(self):
        error = Widget(comm=None)._JCError("rate is negative " * 10, NegativeRate)
        self.assertIsInstance(error, NegativeRate)
        self.assertEqual(error.objName, "Widget")
        lines = str(error).strip().splitlines()
        self.assertTrue(lines[1].startswith("| Widget Error: rate is negative"))
        self.assertGreater(len(lines), 3)
        self.assertEqual({len(line) for line in lines}, {80})


if __name__ == "__main__":
    unittest.main()
