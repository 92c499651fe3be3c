"""Command-line front end: job files in, deterministic reports out.

A job file is a JSON object

  {"command": "carlitz", "payload": {...}, "output": "table"}

whose payload is validated against the schema of its command (print it with
`pyiwasawa schema <command>`) before anything is computed.
"""

import argparse
import json
import logging
import sys

import jsonschema

from pyiwasawa import carlitz
from pyiwasawa import cohomology
from pyiwasawa import control_report
from pyiwasawa import errors
from pyiwasawa import exceptions
from pyiwasawa import ffpoly
from pyiwasawa import finite_level_algebra as fla
from pyiwasawa import module_theory as mt
from pyiwasawa import output
from pyiwasawa import tate_local
from pyiwasawa.parse import node


log = logging.getLogger(__name__)

COMMANDS = ("cohomology", "fitting", "carlitz", "tate", "control-report",
            "intersect")

_COUNT = {"type": "integer", "minimum": 0}
_POSITIVE = {"type": "integer", "minimum": 1}
_PRIME = {"type": "integer", "minimum": 2}
_FLAG = {"type": "boolean"}
_EXPONENTS = {"type": "array", "items": _POSITIVE}
_COEFFICIENTS = {"type": "array", "items": _COUNT}
_ELEMENT = {"type": ["string", "integer"]}


def _object(required, properties):
  return {"type": "object", "required": list(required),
          "properties": properties, "additionalProperties": False}


def _ring_kind(kind, **properties):
  properties["kind"] = {"const": kind}
  return _object(sorted(properties), properties)


RING_SCHEMA = {"oneOf": [
    _ring_kind(fla.GROUP_RING, l=_PRIME, N=_POSITIVE, p=_PRIME,
               exponents=_EXPONENTS),
    _ring_kind(fla.TRUNC_POLY, p=_PRIME, N=_POSITIVE, d=_COUNT, M=_POSITIVE),
    _ring_kind(fla.CYCLIC_POLY, p=_PRIME, N=_POSITIVE, k=_COUNT),
]}

PLACE_SCHEMA = _object(["name", "ord_v_j", "residue_size"], {
    "name": {"type": "string"},
    "ord_v_j": {"type": "integer"},
    "residue_size": _PRIME,
    "reduction": {"enum": [tate_local.GOOD, tate_local.SPLIT_MULTIPLICATIVE]},
    "behavior": {"enum": list(tate_local.BEHAVIORS)},
    "decomposition_rank": _COUNT,
    "ramification_index": _POSITIVE,
    "local_torsion": _POSITIVE,
})

SCHEMAS = {
    "cohomology": _object(["group", "module"], {
        "group": _object(["p"], {"p": _PRIME, "exponents": _EXPONENTS}),
        "module": _object(["l", "exponents"], {"l": _PRIME,
                                               "exponents": _EXPONENTS}),
        "actions": {"type": "array", "items": {
            "type": "array", "items": {
                "type": "array", "items": {"type": "integer"}}}},
        "profinite": _FLAG,
        "dual": _FLAG,
    }),
    "fitting": _object(["ring", "generators"], {
        "ring": RING_SCHEMA,
        "generators": _COUNT,
        "relations": {"type": "array",
                      "items": {"type": "array", "items": _ELEMENT}},
        "project": _COUNT,
        "characteristic": _object(["torsion_factors"], {
            "free_rank": _COUNT,
            "torsion_factors": {"type": "array", "items": _object(
                ["factor", "exponent"],
                {"factor": _ELEMENT, "exponent": _POSITIVE})},
        }),
    }),
    "carlitz": _object(["p", "prime", "n"], {
        "p": _PRIME,
        "f": _POSITIVE,
        "prime": _COEFFICIENTS,
        "n": _POSITIVE,
        "unit_group": _FLAG,
        "operand": _COEFFICIENTS,
    }),
    "tate": _object(["p"], {
        "p": _PRIME,
        "places": {"type": "array", "items": PLACE_SCHEMA},
        "tower_e": _POSITIVE,
        "d": _POSITIVE,
        "l": _PRIME,
        "j": _object(["numerator"], {"f": _POSITIVE,
                                     "numerator": _COEFFICIENTS,
                                     "denominator": _COEFFICIENTS}),
    }),
    "control-report": _object(["p", "d", "torsion_order"], {
        "p": _PRIME,
        "d": _POSITIVE,
        "torsion_order": _POSITIVE,
        "places": {"type": "array", "items": PLACE_SCHEMA},
        "sigma": {"type": "array", "items": {"type": "string"}},
        "l": _PRIME,
        "selmer_cofinitely_generated": _FLAG,
        "base_sigma_selmer_finite": _FLAG,
        "j_level": _COUNT,
    }),
    "intersect": _object(["ring", "ideals"], {
        "ring": RING_SCHEMA,
        "ideals": {"type": "array", "minItems": 1, "items": _object(
            ["generators"], {"ring": RING_SCHEMA,
                             "generators": {"type": "array",
                                            "items": _ELEMENT}})},
    }),
}

JOB_SCHEMA = _object(["command", "payload"], {
    "command": {"enum": list(COMMANDS)},
    "payload": {"type": "object"},
    "output": {"enum": list(output.FORMATS)},
})


def _check(instance, schema, prefix=()):
  error = jsonschema.exceptions.best_match(
      jsonschema.Draft7Validator(schema).iter_errors(instance))
  if error is not None:
    raise exceptions.JobValidationError(
        error.message, tuple(prefix) + tuple(error.absolute_path))


def validate_job(job):
  _check(job, JOB_SCHEMA)
  _check(job["payload"], SCHEMAS[job["command"]], ("payload",))


def load_job(path):
  try:
    with open(path) as fi:
      job = json.load(fi)
  except IOError as e:
    raise exceptions.JobValidationError("cannot read job file: %s" %
                                        e.strerror)
  except ValueError as e:
    raise exceptions.JobValidationError("not valid JSON: %s" % e)
  validate_job(job)
  return job


def _element(ring, value, path):
  if isinstance(value, int):
    return ring.constant(value)
  try:
    return ring.parse(value)
  except exceptions.InvalidArgument as e:
    raise exceptions.JobValidationError(e.message, ("payload",) + path)


def _run_cohomology(payload, report_log):
  gm = cohomology.gmodule_from_descriptor(payload)
  profinite = payload.get("profinite", False)
  result = {"H%d" % i: cohomology.cohomology_groups(gm, i).descriptor()
            for i in (0, 1, 2)}
  check = cohomology.lemma_bound_check(gm, profinite)
  result["bound_check"] = {"h1_order": check.h1_order,
                           "h1_bound": check.h1_bound,
                           "holds": check.holds()}
  if check.h1_order > check.h1_bound:
    report_log.bound_violated("|H^1|", check.h1_order, check.h1_bound)
  if profinite:
    result["bound_check"].update(h2_order=check.h2_order,
                                 h2_bound=check.h2_bound)
    if check.h2_order > check.h2_bound:
      report_log.bound_violated("|H^2|", check.h2_order, check.h2_bound)
    result["profinite"] = {
        "H%d" % i: cohomology.cohomology_profinite(gm, i).descriptor()
        for i in (1, 2)}
  if payload.get("dual", False):
    left, right = cohomology.li_dual_pair(gm)
    result["dual_pair"] = {"left": left.descriptor(),
                           "right": right.descriptor(),
                           "isomorphic": left.isomorphic(right)}
  return result


def _run_fitting(payload, report_log):
  ring = fla.ring_from_descriptor(payload["ring"])
  rows = [[_element(ring, x, ("relations", i, j)) for j, x in enumerate(row)]
          for i, row in enumerate(payload.get("relations", []))]
  pres = mt.ModulePresentation(ring, rows, payload["generators"])
  fitt = mt.fitting_ideal(pres)
  result = {"ring": ring.describe(),
            "fitting_ideal": fitt.descriptor(),
            "module_order": mt.module_order(pres),
            "structure": mt.module_structure(pres).descriptor(),
            "minimal_generators": mt.min_generators(pres)}
  if "project" in payload:
    keep = payload["project"]
    lower = mt.project_presentation(pres, keep)
    lower_fitt = mt.fitting_ideal(lower)
    result["projection"] = {
        "ring": lower.ring.describe(),
        "fitting_ideal": lower_fitt.descriptor(),
        "commutes": mt.project_ideal(fitt, keep) == lower_fitt}
  if "characteristic" in payload:
    claim = payload["characteristic"]
    factors = [(_element(ring, f["factor"],
                         ("characteristic", "torsion_factors", i, "factor")),
                f["exponent"])
               for i, f in enumerate(claim["torsion_factors"])]
    spec = mt.ElementaryModuleSpec(ring, claim.get("free_rank", 0), factors)
    result["fitt_char"] = mt.fitt_char_compare(pres=pres, spec=spec)
  return result


def _run_carlitz(payload, report_log):
  ctx = ffpoly.FqContext(payload["p"], payload.get("f", 1))
  prime = ffpoly.from_coefficients(ctx, payload["prime"])
  n = payload["n"]
  result = {"q": ctx.q, "prime": ffpoly.format_poly(prime), "n": n}
  result.update(carlitz.torsion_layer(ctx, prime, n).descriptor())
  if payload.get("unit_group", False):
    result["unit_group"] = carlitz.unit_group_structure(ctx, prime,
                                                        n).descriptor()
  if "operand" in payload:
    phi = carlitz.carlitz_polynomial(
        ctx, ffpoly.from_coefficients(ctx, payload["operand"]))
    result["carlitz_polynomial"] = phi.format()
  return result


def _run_tate(payload, report_log):
  p = payload["p"]
  rows = []
  for desc in payload.get("places", []):
    t = tate_local.place_from_descriptor(desc, p)
    entry = {"name": t.name, "reduction": t.reduction}
    if t.is_split_multiplicative:
      entry.update(tate_local.local_invariants(t).descriptor())
      if "tower_e" in payload:
        entry["tower_component_order"] = tate_local.tower_component_order(
            t, payload["tower_e"]).order
    if "d" in payload:
      entry["kernel"] = tate_local.ker_dw_classify(
          t, payload.get("l", p), payload["d"]).descriptor()
    rows.append(entry)
  result = {"places": rows}
  if "j" in payload:
    j = payload["j"]
    ctx = ffpoly.FqContext(p, j.get("f", 1))
    level = tate_local.j_power_level(
        ctx, ffpoly.from_coefficients(ctx, j["numerator"]),
        ffpoly.from_coefficients(ctx, j.get("denominator", [1])))
    result["j_level"] = {"level": level.level,
                         "max_torsion": level.max_torsion,
                         "bound": level.describe()}
  return result


def _run_control_report(payload, report_log):
  inp = control_report.control_input_from_descriptor(payload)
  if inp.sigma is not None:
    return control_report.sigma_report(inp, report_log).descriptor()
  return control_report.control_report(inp, report_log).descriptor()


def _run_intersect(payload, report_log):
  ring = fla.ring_from_descriptor(payload["ring"])
  ideals = []
  for i, entry in enumerate(payload["ideals"]):
    source = (fla.ring_from_descriptor(entry["ring"]) if "ring" in entry
              else ring)
    gens = [_element(source, g, ("ideals", i, "generators", k))
            for k, g in enumerate(entry["generators"])]
    ideal = fla.ideal_span(source, gens)
    if source != ring:
      ideal = mt.preimage_ideal(ideal, ring)
    ideals.append(ideal)
  intersection = mt.pro_fitting_intersection(ideals)
  return {"ring": ring.describe(),
          "ideals": [ideal.descriptor() for ideal in ideals],
          "intersection": intersection.descriptor()}


_HANDLERS = {
    "cohomology": _run_cohomology,
    "fitting": _run_fitting,
    "carlitz": _run_carlitz,
    "tate": _run_tate,
    "control-report": _run_control_report,
    "intersect": _run_intersect,
}


def dispatch(job, report_log):
  log.info("running %s job", job["command"])
  return _HANDLERS[job["command"]](job["payload"], report_log)


class JobResult(node.Node("text", "exit_code", "message")):
  """Report text for stdout, exit code and error message for stderr."""
  __slots__ = ()


def run_job(path, fmt=None, report_log=None):
  """Load, validate and run one job file.

  Args:
    path: The job file.
    fmt: output.JSON or output.TABLE; overrides the job's own "output".
    report_log: An errors.ReportLog for consistency warnings.

  Returns:
    A JobResult. Library errors become their exit code and a message; the
    text is empty then.
  """
  report_log = errors.ReportLog() if report_log is None else report_log
  try:
    job = load_job(path)
    payload = dispatch(job, report_log)
    text = output.emit_report(payload, fmt or job.get("output", output.JSON))
  except exceptions.IwasawaError as e:
    log.info("job %s failed: %s", path, e.message)
    return JobResult("", e.exit_code, "%s: %s" % (type(e).__name__,
                                                  e.message))
  return JobResult(text, 0, None)


def schema_text(command):
  return json.dumps(SCHEMAS[command], sort_keys=True, indent=2)


def parse_args(argv):
  common = argparse.ArgumentParser(add_help=False)
  common.add_argument("--verbosity", default="WARNING",
                      choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                      help="Logging level for messages on stderr.")
  parser = argparse.ArgumentParser(
      prog="pyiwasawa",
      description="Iwasawa-theoretic invariants at finite level.")
  subparsers = parser.add_subparsers(dest="action")
  subparsers.required = True
  run = subparsers.add_parser("run", parents=[common],
                              help="Run a job file and print the report.")
  run.add_argument("jobfile")
  run.add_argument("--format", choices=list(output.FORMATS), default=None,
                   help="Output format; defaults to the job's \"output\".")
  schema = subparsers.add_parser("schema", parents=[common],
                                 help="Print the payload schema of a command.")
  schema.add_argument("command", choices=list(COMMANDS))
  return parser.parse_args(argv)


def main(argv=None):
  args = parse_args(sys.argv[1:] if argv is None else argv)
  logging.basicConfig(level=getattr(logging, args.verbosity),
                      stream=sys.stderr,
                      format="%(levelname)s:%(name)s: %(message)s")
  if args.action == "schema":
    print(schema_text(args.command))
    return 0
  report_log = errors.ReportLog()
  try:
    result = run_job(args.jobfile, args.format, report_log)
  except Exception:  # pylint: disable=broad-except
    log.exception("unexpected failure running %s", args.jobfile)
    return 1
  report_log.print_to_stderr()
  if result.message:
    print(result.message, file=sys.stderr)
  if result.text:
    print(result.text)
  return result.exit_code
