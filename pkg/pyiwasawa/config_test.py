"""Tests for config.py."""

import os

from pyiwasawa import config
from pyiwasawa import exceptions

import unittest
from unittest import mock


class ConfigTest(unittest.TestCase):

  def testDefaults(self):
    with mock.patch.dict(os.environ, clear=True):
      self.assertEqual(config.max_ring_cardinality(), 10 ** 7)
      self.assertEqual(config.max_torsion_count(), 10 ** 6)
      self.assertEqual(config.max_unit_residues(), 10 ** 5)
      self.assertEqual(config.max_group_order(), 10 ** 6)

  def testOverride(self):
    with mock.patch.dict(os.environ,
                         {config.MAX_TORSION_COUNT_VAR: "500"}):
      self.assertEqual(config.max_torsion_count(), 500)

  def testInvalid(self):
    for value in ("many", "0"):
      with mock.patch.dict(os.environ,
                           {config.MAX_UNIT_RESIDUES_VAR: value}):
        self.assertRaises(exceptions.InvalidArgument,
                          config.max_unit_residues)

  def testCheckCap(self):
    config.check_cap("ring", 100, 100)
    self.assertRaises(exceptions.SizeCapExceeded, config.check_cap, "ring",
                      101, 100)


if __name__ == "__main__":
  unittest.main()
