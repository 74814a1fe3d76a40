import os
import io
import sys
import csv
import json
import argparse
import datetime
import logging
from concurrent.futures import ThreadPoolExecutor
import numpy as np
from . import __version__
from . import harmonic, capacity, hyperbolic, koebe, boundary
from .analytic import AnalyticFunctionError
from .harmonic import HarmonicMapError
from .capacity import CapacityError
from .hyperbolic import HyperbolicError
from .koebe import KoebeError
from .boundary import BoundaryDiagnosticsError
from .scenario import (ScenarioError, parse_scenario,
                       parse_scenario_document, to_complex, to_complex_list)

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
The ``hbl`` command. Each command reads a scenario (or just shortcut flags),
calls into the library and writes a JSON result document and, for tabular
commands, a CSV table::

    hbl capacity tau2 --s 1
    hbl lm-scan --config scenarios/lm_scan_alpha_half.json --out results
    hbl koebe --config scenarios/koebe_geometric.json --reproducible

Exit codes: 0 on success, 2 when the scenario is invalid, 3 when a numerical
routine fails.
"""

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_SCENARIO = 2
EXIT_NUMERICAL = 3

NUMERICAL_ERRORS = (AnalyticFunctionError, HarmonicMapError, CapacityError,
                    HyperbolicError, KoebeError, BoundaryDiagnosticsError)

COMMANDS = ("map-eval", "dilatation", "lm-scan", "blw", "area", "thm54",
            "koebe", "vanishing", "capacity", "hyperbolic", "cluster",
            "multiplicity")


def jsonable(obj):
    """
    Convert results to plain JSON values: complex numbers become [re, im],
    named tuples become objects and non-finite floats become the strings
    "inf", "-inf" and "nan".
    """
    if hasattr(obj, "_asdict"):
        return {k: jsonable(v) for k, v in obj._asdict().items()}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [jsonable(float(obj.real)), jsonable(float(obj.imag))]
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if np.isnan(value):
            return "nan"
        if np.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    return obj


def dumps(document):
    return json.dumps(jsonable(document), sort_keys=True, indent=2) + "\n"


def csv_text(header, rows):
    """CSV with a leading schema_version column, LF line endings"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, delimiter=",", lineterminator="\n")
    writer.writerow(["schema_version"] + list(header))
    for row in rows:
        writer.writerow([SCHEMA_VERSION] + [_csv_cell(v) for v in row])
    return buffer.getvalue()


def _csv_cell(value):
    value = jsonable(value)
    if isinstance(value, float):
        return repr(value)
    return value


def _param(config, name, default=None, required=True):
    if name in config.parameters:
        return config.parameters[name]
    if default is None and required:
        raise ScenarioError("Missing parameter '{}'".format(name),
                            "/parameters/" + name)
    return default


def _cmd_map_eval(config, pool):
    f = config.harmonic_map()
    z = config.evaluation_points()
    result = {"points": z, "values": harmonic.eval_map(f, z)}
    if _param(config, "oracle", False, required=False):
        if f.boundary is None:
            raise ScenarioError("The Poisson oracle needs step data",
                                "/parameters/oracle")
        result["oracle"] = [harmonic.poisson_integral(f.boundary, p)
                            for p in z]
    rows = [(p.real, p.imag, v.real, v.imag)
            for p, v in zip(z, result["values"])]
    return result, (["z_re", "z_im", "f_re", "f_im"], rows)


def _cmd_dilatation(config, pool):
    f = config.harmonic_map()
    reports = [harmonic.dilatation(f, p) for p in
               config.evaluation_points()]
    return {"points": config.evaluation_points(), "reports": reports}, None


def _lm_cell(args):
    a, zeta, m, schedule, thresholds = args
    return boundary.lm_classify(a, zeta, m, schedule,
                                slope_threshold=thresholds["slope"],
                                cauchy_tolerance=thresholds["cauchy"],
                                fit_tolerance=thresholds["fit"])


def _cmd_lm_scan(config, pool):
    a = config.dilatation()
    cells = [(a, zeta, m, config.delta_schedule, config.thresholds)
             for zeta in config.zeta_angles for m in config.m_values]
    estimates = list(pool.map(_lm_cell, cells))
    result = []
    rows = []
    for (_, zeta, m, _, _), est in zip(cells, estimates):
        result.append({"zeta": zeta, "m": m,
                       "partial_values": est.partial_values,
                       "verdict": est.verdict})
        for delta, value in est.partial_values:
            rows.append((zeta, m, delta, value, est.verdict.verdict))
    return result, (["zeta", "m", "delta", "value", "verdict"], rows)


def _cmd_blw(config, pool):
    f = config.harmonic_map()
    radii = _param(config, "radii", boundary.DEFAULT_RADII, required=False)
    trends = [boundary.blw_radial(f, zeta, radii,
                                  zero_threshold=config.thresholds["blw"])
              for zeta in config.zeta_angles]
    rows = [(zeta, r, v, t.verdict) for zeta, t in
            zip(config.zeta_angles, trends) for r, v in zip(t.radii,
                                                            t.values)]
    result = [dict(t._asdict(), zeta=zeta)
              for zeta, t in zip(config.zeta_angles, trends)]
    return result, (["zeta", "r", "value", "verdict"], rows)


def _cmd_area(config, pool):
    f = config.harmonic_map()
    resolution = _param(config, "resolution", 256, required=False)
    return {"area": boundary.area_integral(f, resolution),
            "resolution": resolution}, None


def _cmd_thm54(config, pool):
    f = config.harmonic_map()
    reports = []
    for zeta in config.zeta_angles:
        report = boundary.thm54_check(
            f, zeta, config.m_values,
            compact_margin=_param(config, "compact_margin", 0.05,
                                  required=False),
            resolution=_param(config, "resolution", 256, required=False),
            schedule=config.delta_schedule)
        summary = report._asdict()
        summary["estimates"] = [{"m": e.m, "verdict": e.verdict}
                                for e in report.estimates]
        summary["zeta"] = zeta
        reports.append(summary)
    return reports, None


def _cmd_koebe(config, pool):
    items = config.koebe_items()
    report = koebe.koebe_quantity(
        items, certificate=config.thresholds["koebe_certificate"])
    second = None
    if all(item.diameter < 1 for item in items):
        second = koebe.koebe_quantity_second_form(items)
    rows = [(j + 1, item.diameter, item.r, item.log_inv_M, q, lo, up, K)
            for j, (item, q, lo, up, K) in enumerate(zip(
                items, report.quantities, report.modulus_lower,
                report.modulus_upper, report.K))]
    return ({"report": report, "second_form": second},
            (["j", "diameter", "r", "log_inv_M", "q", "modulus_lower",
              "modulus_upper", "K"], rows))


def _cmd_vanishing(config, pool):
    seq = config.zero_sequence()
    report = koebe.vanishing_criterion(
        seq, threshold=config.thresholds["vanishing"])
    rows = [(k + 1, b.real, b.imag, mu, t) for k, (b, mu, t) in enumerate(
        zip(seq.points, seq.multiplicities, report.terms))]
    return ({"report": report, "bounds": koebe.vanishing_bound(seq)},
            (["k", "b_re", "b_im", "multiplicity", "term"], rows))


def _cmd_capacity(config, pool):
    target = config.target
    if target == "annulus":
        return capacity.annulus_modulus(_param(config, "R"),
                                        _param(config, "R_prime")), None
    if target == "mu":
        return {"value": capacity.grotzsch_mu(_param(config, "r"))}, None
    if target == "gamma2":
        return capacity.gamma2(_param(config, "s")), None
    if target == "tau2":
        return capacity.tau2(_param(config, "s")), None
    if target == "lemmaB":
        metrics = capacity.continuum_metrics(
            to_complex_list(_param(config, "vertices")))
        return {"metrics": metrics,
                "value": capacity.lemmaB_bound(metrics)}, None
    if target == "qc_bounds":
        lower, upper = capacity.qc_modulus_bounds(_param(config, "K"),
                                                  _param(config, "M"))
        return {"lower": lower, "upper": upper}, None
    resolution = _param(config, "resolution", 256, required=False)
    if target == "ring_annulus":
        spec = capacity.RingDomainSpec(
            capacity.DiskComponent(0, _param(config, "R")),
            capacity.CircleExterior(_param(config, "R_prime")), resolution)
        return capacity.ring_capacity_numeric(spec), None
    if target == "grotzsch_ring":
        spec = capacity.RingDomainSpec(
            capacity.DiskComponent(0, 1.0),
            capacity.RayComponent(_param(config, "s")), resolution,
            _param(config, "truncation_radius", 50.0, required=False))
        return capacity.ring_capacity_numeric(spec), None
    raise ScenarioError("Unknown capacity target {!r}".format(target),
                        "/target")


def _cmd_hyperbolic(config, pool):
    target = config.target
    if target == "dist_halfplane":
        return {"value": hyperbolic.dist_halfplane(
            to_complex(_param(config, "z1")),
            to_complex(_param(config, "z2")))}, None
    if target == "dist_disk":
        return {"value": hyperbolic.dist_disk(
            to_complex(_param(config, "z1")),
            to_complex(_param(config, "z2")))}, None
    if target == "claim41":
        bound, contains = hyperbolic.claim41_check(
            to_complex(_param(config, "b")),
            _param(config, "constant", 10.0, required=False))
        return {"radius_bound": bound, "contains_i": contains}, None
    if target == "disk_euclidean":
        d = hyperbolic.HyperbolicDisk(
            to_complex(_param(config, "center")), _param(config, "radius"),
            _param(config, "domain", hyperbolic.DISK, required=False))
        center, radius = hyperbolic.hyperbolic_disk_euclidean(d)
        return {"euclidean_center": center,
                "euclidean_radius": radius}, None
    if target == "mobius":
        phi = hyperbolic.mobius_disk_to_halfplane(
            to_complex(_param(config, "b")))
        z = config.evaluation_points()
        return {"matrix": phi.matrix, "points": z, "images": phi(z)}, None
    raise ScenarioError("Unknown hyperbolic target {!r}".format(target),
                        "/target")


def _cmd_cluster(config, pool):
    f = config.harmonic_map()
    samples = [boundary.cluster_sample(
        f, zeta, _param(config, "approach", "tangential-fan",
                        required=False),
        _param(config, "n", 32, required=False))
        for zeta in config.zeta_angles]
    result = [{"zeta": zeta, "reference": s.reference,
               "max_distance": s.max_distance, "count": len(s.points)}
              for zeta, s in zip(config.zeta_angles, samples)]
    rows = [(zeta, z.real, z.imag, w.real, w.imag)
            for zeta, s in zip(config.zeta_angles, samples)
            for z, w in zip(s.sources, s.points)]
    return result, (["zeta", "z_re", "z_im", "f_re", "f_im"], rows)


def _cmd_multiplicity(config, pool):
    f = config.harmonic_map()
    results = [harmonic.multiplicity(
        f, p, _param(config, "tolerance", 1e-7, required=False),
        _param(config, "radius", None, required=False),
        _param(config, "n_modes", 32, required=False))
        for p in config.evaluation_points()]
    return [{"zero_point": p, "order": r.order,
             "coanalytic_order": r.coanalytic_order,
             "sense_reversing": r.sense_reversing,
             "tolerance_used": r.tolerance_used}
            for p, r in zip(config.evaluation_points(), results)], None


DISPATCH = {
    "map-eval": _cmd_map_eval,
    "dilatation": _cmd_dilatation,
    "lm-scan": _cmd_lm_scan,
    "blw": _cmd_blw,
    "area": _cmd_area,
    "thm54": _cmd_thm54,
    "koebe": _cmd_koebe,
    "vanishing": _cmd_vanishing,
    "capacity": _cmd_capacity,
    "hyperbolic": _cmd_hyperbolic,
    "cluster": _cmd_cluster,
    "multiplicity": _cmd_multiplicity,
}


def _write(path, text):
    with io.open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def run(config, out_dir=None, reproducible=False, threads=1):
    """
    Execute a scenario.

    Args:
        config: ScenarioConfig
        out_dir: directory for ``<command>.json`` (and ``<command>.csv``
            when the scenario asks for CSV); nothing is written if None
        reproducible: leave out the metadata block (version and time)
        threads: worker pool size for independent scan cells

    Returns:
        (exit_code, document) where document is the JSON-ready result
    """
    document = {"schema_version": SCHEMA_VERSION, "command": config.command}
    if config.target is not None:
        document["target"] = config.target
    if not reproducible:
        document["metadata"] = {
            "hbl_version": __version__,
            "created": datetime.datetime.now(
                datetime.timezone.utc).isoformat()}
    table = None
    try:
        with ThreadPoolExecutor(max_workers=max(1, int(threads))) as pool:
            result, table = DISPATCH[config.command](config, pool)
        document["result"] = result
        code = EXIT_OK
    except ScenarioError as e:
        logger.error("Invalid scenario: %s", e)
        document["error"] = {"type": type(e).__name__, "message": str(e)}
        code = EXIT_SCENARIO
    except NUMERICAL_ERRORS as e:
        logger.error("%s: %s", type(e).__name__, e)
        document["error"] = {"type": type(e).__name__, "message": str(e)}
        code = EXIT_NUMERICAL
    document = jsonable(document)
    if out_dir is not None:
        if not os.path.isdir(out_dir):
            os.makedirs(out_dir)
        stem = config.output.get("path") or config.command
        _write(os.path.join(out_dir, stem + ".json"), dumps(document))
        if table is not None and config.output.get("format") == "csv":
            _write(os.path.join(out_dir, stem + ".csv"), csv_text(*table))
    return code, document


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hbl",
        description="Boundary behaviour diagnostics for planar harmonic "
                    "mappings.")
    parser.add_argument("command", choices=COMMANDS,
                        help="what to compute")
    parser.add_argument("target", nargs="?", default=None,
                        help="sub-target for capacity and hyperbolic "
                             "(e.g. tau2, dist_halfplane)")
    parser.add_argument("--config", dest="config",
                        help="JSON scenario file (see "
                             "hbl/data/scenario.schema.json)")
    parser.add_argument("--out", dest="out",
                        help="directory for result files; the JSON "
                             "document goes to stdout if omitted")
    parser.add_argument("--reproducible", action="store_true",
                        help="omit the metadata block so reruns are "
                             "byte-identical")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker pool size for lm-scan cells "
                             "(default 1)")
    parser.add_argument("--alpha", type=float,
                        help="shortcut: dilatation alpha*z")
    parser.add_argument("--zeta", type=float,
                        help="shortcut: a single boundary angle")
    parser.add_argument("--m", type=float,
                        help="shortcut: a single curve slope m")
    parser.add_argument("--s", type=float,
                        help="shortcut: capacity argument s")
    parser.add_argument("--verbose", action="store_true",
                        help="log debugging output to stderr")
    return parser


def _overrides(args):
    overrides = {}
    if args.target is not None:
        overrides["target"] = args.target
    if args.alpha is not None:
        overrides["dilatation_spec"] = {"type": "alpha_z",
                                        "alpha": args.alpha}
    if args.zeta is not None:
        overrides["zeta_angles"] = [args.zeta]
    if args.m is not None:
        overrides["m_values"] = [args.m]
    if args.s is not None:
        overrides["parameters"] = {"s": args.s}
    return overrides


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    overrides = _overrides(args)
    try:
        if args.config:
            config = parse_scenario(args.config, overrides)
            if config.command != args.command:
                raise ScenarioError("Scenario is for '{}', not '{}'".format(
                    config.command, args.command), "/command")
        else:
            document = dict(overrides, command=args.command)
            config = parse_scenario_document(document, os.getcwd())
    except ScenarioError as e:
        sys.stderr.write("hbl: invalid scenario: {}\n".format(e))
        return EXIT_SCENARIO
    code, document = run(config, args.out, args.reproducible, args.threads)
    if args.out is None:
        sys.stdout.write(dumps(document))
    return code


if __name__ == "__main__":
    sys.exit(main())
