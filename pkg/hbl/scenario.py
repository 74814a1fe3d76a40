import os
import copy
import json
import logging
import numpy as np
import jsonschema
from .analytic import (Polynomial, ScaledIdentity, FiniteBlaschke,
                       AnalyticFunctionError)
from .harmonic import (HarmonicMap, StepBoundaryFunction, HarmonicMapError,
                       poisson_step_map, regular_polygon_boundary,
                       dilatation_function)
from .koebe import KoebeSequenceItem, ZeroSequence, KoebeError

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
Scenario files for the ``hbl`` command. A scenario is a JSON document
validated against ``hbl/data/scenario.schema.json``; defaults are taken from
the schema and unknown keys are refused. Complex numbers are written either
as plain numbers or as ``[re, im]`` pairs.

Sequence files referenced by koebe and vanishing scenarios are JSON too::

    {"items": [{"continuum": [[0.2, 0], [0.45, 0]], "r": 0.5,
                "log_inv_M": 8.0}, ...]}

    {"points": [[0, 1], [0, 0.5], ...], "multiplicities": [1, 4, ...],
     "constant": 10}
"""

logger = logging.getLogger(__name__)

SCHEMA_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                           "data", "scenario.schema.json")

THM54_M_LIMIT = 1.0 / np.pi


class ScenarioError(Exception):
    """
        Raised when a scenario fails validation. ``pointer`` is the JSON
        pointer of the offending value
    """
    def __init__(self, message, pointer=""):
        self.message = message
        self.pointer = pointer

    def __str__(self):
        return "{}: {}".format(self.pointer or "/", self.message)


def load_schema():
    """Return the shipped scenario schema"""
    with open(SCHEMA_PATH, "r", encoding="utf-8") as f:
        return json.load(f)


def _pointer(parts):
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1")
                   for p in parts)


def _error_pointer(error):
    path = list(error.absolute_path)
    if error.validator == "additionalProperties" and \
            isinstance(error.instance, dict):
        known = set(error.schema.get("properties", {}))
        extra = sorted(k for k in error.instance if k not in known)
        if extra:
            path.append(extra[0])
    return _pointer(path)


def _fill_defaults(schema, instance):
    props = schema.get("properties", {})
    for key, sub in props.items():
        if key not in instance and "default" in sub:
            instance[key] = copy.deepcopy(sub["default"])
        if isinstance(instance.get(key), dict) and "properties" in sub:
            _fill_defaults(sub, instance[key])
    return instance


def to_complex(value):
    """Decode a number or an [re, im] pair"""
    if isinstance(value, (list, tuple)):
        return complex(value[0], value[1])
    return complex(value)


def to_complex_list(values):
    return np.asarray([to_complex(v) for v in values], dtype=complex)


def _parse_shorthand(text):
    # "zero" or "alpha_z:<number>"
    if text == "zero":
        return {"type": "zero"}
    try:
        return {"type": "alpha_z", "alpha": float(text.split(":", 1)[1])}
    except (IndexError, ValueError):
        raise ScenarioError("Cannot read dilatation {!r}".format(text),
                            "/dilatation_spec")


class ScenarioConfig(object):
    """
    A validated scenario with every default filled in. The attributes
    mirror the top-level keys of the schema; ``base_dir`` is the directory
    relative paths are resolved against::

        config = parse_scenario("scenarios/lm_scan_alpha_half.json")
        config.m_values       # [0.05, 0.1, 0.2, 0.3]
        config.dilatation()   # ScaledIdentity(0.5)
    """
    def __init__(self, document, base_dir="."):
        self.document = document
        self.base_dir = base_dir
        self.command = document["command"]
        self.target = document.get("target")
        self.map_spec = document.get("map_spec")
        self.dilatation_spec = document.get("dilatation_spec")
        self.zeta_angles = list(document["zeta_angles"])
        self.m_values = list(document["m_values"])
        self.delta_schedule = list(document["delta_schedule"])
        self.points = document.get("points")
        self.sequences = document.get("sequences")
        self.parameters = dict(document["parameters"])
        self.output = dict(document["output"])
        self.thresholds = dict(document["thresholds"])

    def sequence_path(self):
        if self.sequences is None:
            return None
        return os.path.join(self.base_dir, self.sequences)

    def evaluation_points(self):
        if self.points is None:
            raise ScenarioError("This command needs evaluation points",
                                "/points")
        return to_complex_list(self.points)

    def harmonic_map(self):
        """
        Build the HarmonicMap described by ``map_spec``.

        Raises:
            ScenarioError: no map given, or the data is not a valid map
        """
        spec = self.map_spec
        if spec is None:
            raise ScenarioError("This command needs a map_spec", "/map_spec")
        try:
            if spec["type"] == "step":
                return poisson_step_map(StepBoundaryFunction(
                    spec["jump_points"], to_complex_list(spec["values"])))
            if spec["type"] == "polygon":
                return poisson_step_map(
                    regular_polygon_boundary(spec["vertices"]))
            g = spec.get("g", [0])
            return HarmonicMap(Polynomial(to_complex_list(spec["h"])),
                               Polynomial(to_complex_list(g)),
                               spec.get("domain", "disk"))
        except (HarmonicMapError, AnalyticFunctionError) as e:
            raise ScenarioError(str(e), "/map_spec")

    def dilatation(self):
        """
        Build the analytic dilatation described by ``dilatation_spec``;
        without one, the dilatation of the map is used.
        """
        spec = self.dilatation_spec
        if spec is None or spec == "map":
            return dilatation_function(self.harmonic_map())
        if isinstance(spec, str):
            spec = _parse_shorthand(spec)
        kind = spec["type"]
        try:
            if kind == "zero":
                return Polynomial([0j])
            if kind == "alpha_z":
                if "alpha" not in spec:
                    raise ScenarioError("alpha_z needs alpha",
                                        "/dilatation_spec")
                return ScaledIdentity(to_complex(spec["alpha"]))
            if kind == "polynomial":
                return Polynomial(to_complex_list(spec.get("coefficients",
                                                           [0])))
            if kind == "blaschke":
                return FiniteBlaschke(to_complex_list(spec.get("zeros", [])),
                                      to_complex(spec.get("rotation", 1)))
            return dilatation_function(self.harmonic_map())
        except AnalyticFunctionError as e:
            raise ScenarioError(str(e), "/dilatation_spec")

    def _sequence_document(self):
        path = self.sequence_path()
        if path is None:
            raise ScenarioError("This command needs a sequences file",
                                "/sequences")
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)

    def koebe_items(self):
        """The KoebeSequenceItems of the sequences file"""
        items = []
        for j, raw in enumerate(self._sequence_document().get("items", [])):
            try:
                items.append(KoebeSequenceItem(
                    to_complex_list(raw["continuum"]), raw["r"],
                    M=raw.get("M"), log_inv_M=raw.get("log_inv_M")))
            except (KeyError, KoebeError) as e:
                raise ScenarioError(str(e), "/sequences")
        if not items:
            raise ScenarioError("Sequence file has no items", "/sequences")
        return items

    def zero_sequence(self):
        """The ZeroSequence of the sequences file"""
        raw = self._sequence_document()
        try:
            return ZeroSequence(to_complex_list(raw["points"]),
                                raw["multiplicities"],
                                raw.get("constant",
                                        self.parameters.get("constant",
                                                            10.0)))
        except (KeyError, KoebeError) as e:
            raise ScenarioError(str(e), "/sequences")


def _check_semantics(config):
    if config.command == "thm54":
        for i, m in enumerate(config.m_values):
            if not m < THM54_M_LIMIT:
                raise ScenarioError("m must be < 1/pi for thm54, got "
                                    "{}".format(m), _pointer(["m_values", i]))
    schedule = config.delta_schedule
    for i in range(1, len(schedule)):
        if not schedule[i] < schedule[i - 1]:
            raise ScenarioError("delta_schedule must be strictly decreasing",
                                _pointer(["delta_schedule", i]))
    if config.sequences is not None and \
            not os.path.isfile(config.sequence_path()):
        raise ScenarioError("Sequence file {} does not exist".format(
            config.sequence_path()), "/sequences")


def parse_scenario_document(document, base_dir="."):
    """
    Validate a scenario held in memory and fill its defaults.

    Raises:
        ScenarioError: the first schema violation, in document order
    """
    schema = load_schema()
    validator = jsonschema.Draft7Validator(schema)
    errors = sorted(validator.iter_errors(document),
                    key=lambda e: (list(map(str, e.absolute_path)),
                                   e.validator))
    if errors:
        error = errors[0]
        raise ScenarioError(error.message, _error_pointer(error))
    document = _fill_defaults(schema, copy.deepcopy(document))
    config = ScenarioConfig(document, base_dir)
    _check_semantics(config)
    return config


def parse_scenario(path, overrides=None):
    """
    Read, validate and complete a scenario file.

    Args:
        path: path to the JSON scenario
        overrides: optional dict of top-level keys replacing those in the
            file (used by the command-line shortcut flags)

    Returns:
        ScenarioConfig

    Raises:
        ScenarioError: unreadable file, malformed JSON or schema violation
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            document = json.load(f)
    except (IOError, OSError) as e:
        raise ScenarioError("Cannot read scenario: {}".format(e))
    except ValueError as e:
        raise ScenarioError("Malformed JSON: {}".format(e))
    if not isinstance(document, dict):
        raise ScenarioError("A scenario must be a JSON object")
    for key, value in (overrides or {}).items():
        if key == "parameters" and isinstance(document.get(key), dict):
            document[key] = dict(document[key], **value)
        else:
            document[key] = value
    return parse_scenario_document(document,
                                   os.path.dirname(os.path.abspath(path)))
