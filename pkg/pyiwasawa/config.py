"""Resource caps, read from the environment on every call."""

import logging
import os

from pyiwasawa import exceptions


log = logging.getLogger(__name__)

MAX_RING_CARDINALITY_VAR = "PYIWASAWA_MAX_RING_CARDINALITY"
MAX_TORSION_COUNT_VAR = "PYIWASAWA_MAX_TORSION_COUNT"
MAX_UNIT_RESIDUES_VAR = "PYIWASAWA_MAX_UNIT_RESIDUES"
MAX_GROUP_ORDER_VAR = "PYIWASAWA_MAX_GROUP_ORDER"

DEFAULT_MAX_RING_CARDINALITY = 10 ** 7
DEFAULT_MAX_TORSION_COUNT = 10 ** 6
DEFAULT_MAX_UNIT_RESIDUES = 10 ** 5
DEFAULT_MAX_GROUP_ORDER = 10 ** 6


def _read_int(name, default):
  value = os.environ.get(name)
  if value is None or not value.strip():
    return default
  try:
    result = int(value)
  except ValueError:
    raise exceptions.InvalidArgument("%s must be an integer, got %r",
                                     name, value)
  if result < 1:
    raise exceptions.InvalidArgument("%s must be positive, got %d",
                                     name, result)
  log.debug("%s overridden to %d", name, result)
  return result


def max_ring_cardinality():
  """Cap on rank * coefficient modulus of a finite-level ring."""
  return _read_int(MAX_RING_CARDINALITY_VAR, DEFAULT_MAX_RING_CARDINALITY)


def max_torsion_count():
  return _read_int(MAX_TORSION_COUNT_VAR, DEFAULT_MAX_TORSION_COUNT)


def max_unit_residues():
  return _read_int(MAX_UNIT_RESIDUES_VAR, DEFAULT_MAX_UNIT_RESIDUES)


def max_group_order():
  """Cap on the order of the group acting on a cohomology module."""
  return _read_int(MAX_GROUP_ORDER_VAR, DEFAULT_MAX_GROUP_ORDER)


def check_cap(what, size, cap):
  """Raise SizeCapExceeded if size > cap."""
  if size > cap:
    raise exceptions.SizeCapExceeded("%s has size %d, above the cap %d",
                                     what, size, cap)
