"""Exceptions raised by pyiwasawa.

Every exception carries the exit code the command-line front end uses when it
surfaces the error.
"""


class IwasawaError(Exception):
  """Base class for all errors raised by this package."""

  exit_code = 1

  def __init__(self, message, *args):
    if args:
      message = message % args
    super(IwasawaError, self).__init__(message)
    self.message = message


class JobValidationError(IwasawaError):
  """A job file is malformed. The message names the offending field path."""

  exit_code = 2

  def __init__(self, message, path=()):
    self.path = tuple(path)
    if self.path:
      message = "%s: %s" % ("/".join(str(p) for p in self.path), message)
    super(JobValidationError, self).__init__(message)


class HypothesisViolation(IwasawaError):
  """Input lies outside the hypotheses the bounds are proved under."""

  exit_code = 3


class StabilizationFailure(IwasawaError):
  exit_code = 4


class SizeCapExceeded(IwasawaError):
  exit_code = 5


class IsotrivialCurve(IwasawaError):
  exit_code = 6


class ReductionTypeError(IwasawaError):
  """A good-reduction place was used where split multiplicative is needed."""

  exit_code = 7


class DimensionMismatch(IwasawaError):
  """Operands live in different rings or ambient spaces."""

  exit_code = 8


class InvalidArgument(IwasawaError):
  exit_code = 9


class ActionError(InvalidArgument):
  """Group action matrices do not define a module action."""

  exit_code = 10


class ReducibleModulus(InvalidArgument):
  exit_code = 11
