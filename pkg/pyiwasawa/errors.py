"""Code and data structures for storing and displaying report diagnostics."""

import logging
import sys

from pyiwasawa import utils


log = logging.getLogger(__name__)

# "Error level" enum for distinguishing between warnings and errors:
SEVERITY_WARNING = 1
SEVERITY_ERROR = 2

_SEVERITY_NAMES = {SEVERITY_WARNING: "warning", SEVERITY_ERROR: "error"}


class Error(object):
  """A diagnostic attached to a place (or to the whole report)."""

  def __init__(self, severity, place, message):
    self.severity = severity
    self.place = place
    self.message = message

  def position(self):
    return "place %s" % self.place if self.place is not None else "report"

  def __str__(self):
    return "%s: %s: %s" % (self.position(), _SEVERITY_NAMES[self.severity],
                           self.message.replace("\n", "\n  "))


class ReportLogBase(object):
  """A stream of diagnostics."""

  def __init__(self):
    self.errors = []

  def __len__(self):
    return len(self.errors)

  def __bool__(self):
    return bool(len(self))

  def __iter__(self):
    return iter(self.errors)

  def _add(self, severity, place, message, args):
    error = Error(severity, place, message % args)
    # print_to_stderr() is what reaches the user; logging only traces.
    log.debug("%s", error)
    self.errors.append(error)

  def warn(self, place, message, *args):
    self._add(SEVERITY_WARNING, place, message, args)

  def error(self, place, message, *args):
    self._add(SEVERITY_ERROR, place, message, args)

  def has_error(self):
    return any(e.severity == SEVERITY_ERROR for e in self.errors)

  def sorted_errors(self):
    return sorted(self.errors,
                  key=lambda e: utils.numeric_sort_key(e.position()))

  def print_to_file(self, fi):
    for error in self.sorted_errors():
      print(error, file=fi)

  def print_to_stderr(self):
    self.print_to_file(sys.stderr)


class ReportLog(ReportLogBase):
  """ReportLog with convenience functions."""

  def unbounded_places(self, place, d):
    self.warn(place, "unramified inert bad place in a tower of rank %d: "
              "infinitely many places lie above it, the kernel bound is "
              "per place only", d)

  def torsion_above_level(self, t, p, level):
    self.warn(None, "torsion order %d exceeds %d^%d = %d allowed by the "
              "j-invariant level %d", t, p, 2 * level, p ** (2 * level), level)

  def sigma_fallback(self, missing):
    self.warn(None, "sigma does not contain the ramified place(s) %s; "
              "reporting the ordinary control report", ", ".join(missing))

  def sigma_extra(self, extra):
    self.warn(None, "sigma contains unknown place(s) %s", ", ".join(extra))

  def bound_violated(self, what, actual, bound):
    self.error(None, "%s = %d exceeds the bound %d", what, actual, bound)
