"""
Run configuration documents.

A run is described by a JSON object, for example::

    {
        "mode": "array",
        "preset": "case1",
        "lattice": {"n_sites": 10, "l_over_lambda0": 0.25},
        "sweep": {"delta_min": -10, "delta_max": 10, "n_points": 2001},
        "output_path": "case1_n10.csv"
    }

Presets expand before validation; explicit ``params`` entries override them
and every override that changes a value is recorded as a warning.
"""

# =============================================================================
# Imports
# =============================================================================
import dataclasses
import json
import numbers
from typing import Optional

from .cqed import CqedParams
from .disorder import DisorderSpec
from .presets import BAND_WINDOW_HALF_WIDTH, getPreset, isBandPreset
from .transfer import LatticeSpec
from .utilities import (
    InvalidValue,
    MissingField,
    OutputError,
    ParameterError,
    ParseError,
    UnknownKey,
)

MODES = ("single", "array", "bands", "disorder")
OUTPUT_FORMATS = ("csv", "json")

# Blocks accepted by each mode; the first group is required
_MODE_KEYS = {
    "single": ({"sweep"}, {"scan"}),
    "array": ({"lattice", "sweep"}, set()),
    "bands": ({"lattice"}, {"sweep", "write_dispersion"}),
    "disorder": ({"lattice", "disorder", "sweep"}, set()),
}
_COMMON_KEYS = {"mode", "preset", "params", "output_path", "output_format"}
_LATTICE_KEYS = ("n_sites", "l_over_lambda0", "phase_model", "rho", "ring_radius_over_lambda0")
_DISORDER_KEYS = ("sigma_over_l", "realizations", "seed", "clamp")
_DELTA_SWEEP_KEYS = ("delta_min", "delta_max", "n_points")
_OMEGA_SWEEP_KEYS = ("omega_min", "omega_max", "n_points")
# Default number of scan points of a preset dispersion window
BAND_DEFAULT_POINTS = 3000


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """
    A fully validated run description.

    ``lattices`` holds one lattice for the array and disorder modes, one or more
    for the bands mode and none for the single mode. ``sweep`` is
    ``(delta_min, delta_max, n_points)`` or, for bands, ``(omega_min, omega_max, n_points)``.
    """

    mode: str
    params: CqedParams
    sweep: tuple
    lattices: tuple = ()
    disorder: Optional[DisorderSpec] = None
    scan: Optional[tuple] = None
    output_path: Optional[str] = None
    output_format: str = "csv"
    preset: Optional[str] = None
    write_dispersion: bool = False
    warnings: tuple = ()

    @property
    def lattice(self):
        return self.lattices[0] if self.lattices else None

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


def _isNumber(value):
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


def _isInteger(value):
    return isinstance(value, numbers.Integral) and not isinstance(value, bool)


def _block(doc, key, allowed):
    block = doc[key]
    if not isinstance(block, dict):
        raise InvalidValue("parseConfig", f"'{key}' must be an object.")
    for name in block:
        if name not in allowed:
            raise UnknownKey("parseConfig", f"Unknown key '{key}.{name}'.")
    return block


def _number(block, key, name, required=True, default=None, integer=False):
    if name not in block:
        if required:
            raise MissingField("parseConfig", f"Missing field '{key}.{name}'.")
        return default
    value = block[name]
    if integer:
        if not _isInteger(value):
            raise InvalidValue("parseConfig", f"'{key}.{name}' must be an integer, got {value!r}.")
        return int(value)
    if not _isNumber(value):
        raise InvalidValue("parseConfig", f"'{key}.{name}' must be a number, got {value!r}.")
    return float(value)


def _parseParams(doc, preset):
    warnings = []
    if preset is not None:
        try:
            base = getPreset(preset)
        except InvalidValue as e:
            raise InvalidValue("parseConfig", e.message)
    elif "params" in doc:
        base = CqedParams()
    else:
        raise MissingField("parseConfig", "Either 'preset' or 'params' must be given.")

    changes = {}
    if "params" in doc:
        block = _block(doc, "params", CqedParams.__dataclass_fields__)
        for name in block:
            value = _number(block, "params", name)
            if preset is not None and value != getattr(base, name):
                warnings.append(
                    f"Explicit params.{name} = {value!r} overrides preset "
                    f"'{preset}' value {getattr(base, name)!r}."
                )
            changes[name] = value
    params = base.replace(**changes)
    try:
        params.validate()
    except ParameterError as e:
        raise InvalidValue("parseConfig", e.message)
    return params, warnings


def _parseLattices(doc, mode):
    block = _block(doc, "lattice", _LATTICE_KEYS)
    if "l_over_lambda0" not in block:
        raise MissingField("parseConfig", "Missing field 'lattice.l_over_lambda0'.")
    constants = block["l_over_lambda0"]
    if isinstance(constants, list):
        if mode != "bands":
            raise InvalidValue(
                "parseConfig", "A list of lattice constants is only valid in mode 'bands'."
            )
        if len(constants) == 0:
            raise InvalidValue("parseConfig", "'lattice.l_over_lambda0' must not be empty.")
    else:
        constants = [constants]
    for value in constants:
        if not _isNumber(value):
            raise InvalidValue(
                "parseConfig", f"'lattice.l_over_lambda0' must be numeric, got {value!r}."
            )

    nSites = _number(block, "lattice", "n_sites", required=mode != "bands", default=1, integer=True)
    phaseModel = block.get("phase_model", "markovian")
    if phaseModel not in LatticeSpec.phaseModels:
        raise InvalidValue(
            "parseConfig",
            f"'lattice.phase_model' must be one of {LatticeSpec.phaseModels}, got {phaseModel!r}.",
        )
    rho = _number(block, "lattice", "rho", required=False, default=1e-3)
    radius = _number(block, "lattice", "ring_radius_over_lambda0", required=False)

    lattices = []
    for value in constants:
        lattice = LatticeSpec(
            n_sites=nSites,
            l_over_lambda0=float(value),
            phase_model=phaseModel,
            rho=rho,
            ring_radius_over_lambda0=radius,
        )
        try:
            lattice.validate()
        except ParameterError as e:
            raise InvalidValue("parseConfig", e.message)
        lattices.append(lattice)
    return tuple(lattices)


def _parseDisorder(doc):
    block = _block(doc, "disorder", _DISORDER_KEYS)
    clamp = block.get("clamp", True)
    if not isinstance(clamp, bool):
        raise InvalidValue("parseConfig", f"'disorder.clamp' must be a boolean, got {clamp!r}.")
    spec = DisorderSpec(
        sigma_over_l=_number(block, "disorder", "sigma_over_l"),
        realizations=_number(block, "disorder", "realizations", False, 100, integer=True),
        seed=_number(block, "disorder", "seed", False, 0, integer=True),
        clamp=clamp,
    )
    try:
        spec.validate()
    except ParameterError as e:
        raise InvalidValue("parseConfig", e.message)
    if spec.realizations < 2:
        raise InvalidValue(
            "parseConfig", f"'disorder.realizations' must be >= 2, got {spec.realizations}."
        )
    return spec


def _parseSweep(doc, mode, preset, lattices):
    keys = _OMEGA_SWEEP_KEYS if mode == "bands" else _DELTA_SWEEP_KEYS
    if "sweep" not in doc:
        if mode == "bands" and isBandPreset(preset):
            rho = lattices[0].rho
            return (
                1.0 - BAND_WINDOW_HALF_WIDTH * rho,
                1.0 + BAND_WINDOW_HALF_WIDTH * rho,
                BAND_DEFAULT_POINTS,
            )
        raise MissingField("parseConfig", "Missing block 'sweep'.")
    block = _block(doc, "sweep", keys)
    lo = _number(block, "sweep", keys[0])
    hi = _number(block, "sweep", keys[1])
    nPoints = _number(block, "sweep", "n_points", integer=True)
    if not lo < hi:
        raise InvalidValue("parseConfig", f"Sweep needs {keys[0]} < {keys[1]}, got [{lo}, {hi}].")
    minPoints = 100 if mode == "bands" else 2
    if nPoints < minPoints:
        raise InvalidValue(
            "parseConfig", f"'sweep.n_points' must be >= {minPoints}, got {nPoints}."
        )
    return (lo, hi, nPoints)


def _parseScan(doc):
    block = _block(doc, "scan", ("field", "values"))
    if "field" not in block or "values" not in block:
        raise MissingField("parseConfig", "'scan' needs both 'field' and 'values'.")
    field = block["field"]
    if field not in CqedParams.__dataclass_fields__ or field == "big_gamma":
        raise InvalidValue("parseConfig", f"'scan.field' {field!r} is not a scannable rate.")
    values = block["values"]
    if not isinstance(values, list) or len(values) == 0 or not all(map(_isNumber, values)):
        raise InvalidValue("parseConfig", "'scan.values' must be a non-empty list of numbers.")
    return (field, tuple(float(value) for value in values))


def parseConfig(text, mode=None):
    """
    Parse and validate a JSON run description.

    Parameters
    ----------
    text : str
        JSON document.
    mode : str, optional
        Run mode imposed by the caller. It fills in a missing 'mode' field
        and must agree with a present one.

    Returns
    -------
    config : RunConfig
    """
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, TypeError) as e:
        raise ParseError("parseConfig", f"Malformed configuration: {e}")
    if not isinstance(doc, dict):
        raise ParseError("parseConfig", "The configuration must be a JSON object.")

    if mode is not None:
        if doc.setdefault("mode", mode) != mode:
            raise InvalidValue(
                "parseConfig",
                f"Configuration is for mode {doc['mode']!r} but mode {mode!r} was requested.",
            )
    if "mode" not in doc:
        raise MissingField("parseConfig", "Missing field 'mode'.")
    mode = doc["mode"]
    if mode not in MODES:
        raise InvalidValue("parseConfig", f"'mode' must be one of {MODES}, got {mode!r}.")

    required, optional = _MODE_KEYS[mode]
    for key in doc:
        if key not in _COMMON_KEYS | required | optional:
            raise UnknownKey("parseConfig", f"Key '{key}' is not valid in mode '{mode}'.")
    for key in sorted(required):
        if key not in doc and not (key == "sweep" and mode == "bands"):
            raise MissingField("parseConfig", f"Mode '{mode}' requires the '{key}' block.")

    preset = doc.get("preset")
    if preset is not None and not isinstance(preset, str):
        raise InvalidValue("parseConfig", f"'preset' must be a string, got {preset!r}.")
    if preset is not None:
        preset = preset.lower()
    params, warnings = _parseParams(doc, preset)

    lattices = _parseLattices(doc, mode) if "lattice" in doc else ()
    disorder = _parseDisorder(doc) if mode == "disorder" else None
    sweep = _parseSweep(doc, mode, preset, lattices)
    scan = _parseScan(doc) if "scan" in doc else None

    if mode == "bands" and not params.lossless():
        raise InvalidValue(
            "parseConfig",
            "Mode 'bands' requires lossless sites (kappa = gamma = 0), got "
            f"kappa={params.kappa}, gamma={params.gamma}.",
        )

    outputPath = doc.get("output_path")
    if outputPath is not None and not isinstance(outputPath, str):
        raise InvalidValue("parseConfig", "'output_path' must be a string.")
    outputFormat = doc.get("output_format", "csv")
    if outputFormat not in OUTPUT_FORMATS:
        raise InvalidValue(
            "parseConfig", f"'output_format' must be one of {OUTPUT_FORMATS}, got {outputFormat!r}."
        )
    writeDispersion = doc.get("write_dispersion", False)
    if not isinstance(writeDispersion, bool):
        raise InvalidValue("parseConfig", "'write_dispersion' must be a boolean.")

    return RunConfig(
        mode=mode,
        params=params,
        sweep=sweep,
        lattices=lattices,
        disorder=disorder,
        scan=scan,
        output_path=outputPath,
        output_format=outputFormat,
        preset=preset,
        write_dispersion=writeDispersion,
        warnings=tuple(warnings),
    )


def configToDict(config):
    """Plain-JSON representation of a RunConfig, the inverse of parseConfig."""
    doc = {"mode": config.mode, "params": config.params.asDict()}
    if config.preset is not None:
        doc["preset"] = config.preset
    if config.lattices:
        first = config.lattice
        constants = [lattice.l_over_lambda0 for lattice in config.lattices]
        lattice = {
            "n_sites": first.n_sites,
            "l_over_lambda0": constants if len(constants) > 1 else constants[0],
            "phase_model": first.phase_model,
            "rho": first.rho,
        }
        if first.ring_radius_over_lambda0 is not None:
            lattice["ring_radius_over_lambda0"] = first.ring_radius_over_lambda0
        doc["lattice"] = lattice
    if config.disorder is not None:
        doc["disorder"] = config.disorder.asDict()
    keys = _OMEGA_SWEEP_KEYS if config.mode == "bands" else _DELTA_SWEEP_KEYS
    doc["sweep"] = dict(zip(keys, config.sweep))
    if config.scan is not None:
        doc["scan"] = {"field": config.scan[0], "values": list(config.scan[1])}
    if config.output_path is not None:
        doc["output_path"] = config.output_path
    doc["output_format"] = config.output_format
    if config.mode == "bands":
        doc["write_dispersion"] = config.write_dispersion
    return doc


def serializeConfig(config):
    """
    Write a RunConfig as a JSON document that parses back to an equal RunConfig.
    """
    return json.dumps(configToDict(config), indent=2, sort_keys=True) + "\n"


def loadConfig(fileName, mode=None):
    """Read and parse a JSON run description from a file."""
    try:
        with open(fileName) as fh:
            text = fh.read()
    except OSError as e:
        raise OutputError("loadConfig", f"Could not read '{fileName}': {e}")
    return parseConfig(text, mode)
