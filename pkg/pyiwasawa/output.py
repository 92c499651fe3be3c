"""Rendering of report payloads as JSON or as an aligned text table."""

import json

from pyiwasawa import exceptions


JSON = "json"
TABLE = "table"
FORMATS = (JSON, TABLE)


def _scalar(value):
  if value is None:
    return "-"
  if isinstance(value, bool):
    return "true" if value else "false"
  return str(value)


def _flatten(prefix, value, rows):
  if isinstance(value, dict):
    for key in sorted(value):
      _flatten("%s.%s" % (prefix, key) if prefix else key, value[key], rows)
  elif isinstance(value, list) and value and all(isinstance(v, dict)
                                                 for v in value):
    for i, item in enumerate(value):
      _flatten("%s[%d]" % (prefix, i), item, rows)
  elif isinstance(value, list):
    rows.append((prefix, ", ".join(_scalar(v) for v in value) or "[]"))
  else:
    rows.append((prefix, _scalar(value)))


def table_rows(payload):
  rows = []
  _flatten("", payload, rows)
  return rows


def emit_report(payload, fmt=JSON):
  """Render a report descriptor (a JSON-compatible dict).

  Both formats sort keys, so identical payloads give identical bytes.

  Args:
    payload: The report as nested dicts, lists and scalars.
    fmt: JSON or TABLE.

  Returns:
    The text without a trailing newline; "{}" or "" for an empty payload.
  """
  if fmt == JSON:
    return json.dumps(payload, sort_keys=True, indent=2)
  if fmt != TABLE:
    raise exceptions.InvalidArgument("unknown output format %r", fmt)
  rows = table_rows(payload)
  if not rows:
    return ""
  width = max(len(key) for key, _ in rows)
  return "\n".join("%-*s  %s" % (width, key, value) for key, value in rows)
