"""Tests for errors.py."""

import io

from pyiwasawa import errors

import unittest


class ReportLogTest(unittest.TestCase):

  def testWarnAndError(self):
    report_log = errors.ReportLog()
    self.assertFalse(report_log)
    report_log.warn("v", "kernel of order %d", 3)
    self.assertEqual(len(report_log), 1)
    self.assertFalse(report_log.has_error())
    report_log.bound_violated("|H^1|", 27, 9)
    self.assertTrue(report_log.has_error())
    self.assertEqual([str(e) for e in report_log], [
        "place v: warning: kernel of order 3",
        "report: error: |H^1| = 27 exceeds the bound 9"])

  def testLogsAtDebugOnly(self):
    report_log = errors.ReportLog()
    with self.assertLogs("pyiwasawa.errors", level="DEBUG") as logs:
      report_log.sigma_extra(["w"])
      report_log.bound_violated("|H^2|", 9, 3)
    self.assertEqual([r.levelname for r in logs.records], ["DEBUG", "DEBUG"])
    self.assertIn("sigma contains unknown place(s) w", logs.output[0])

  def testSortedOutput(self):
    report_log = errors.ReportLog()
    report_log.torsion_above_level(27, 3, 1)
    report_log.unbounded_places("v10", 2)
    report_log.unbounded_places("v2", 2)
    out = io.StringIO()
    report_log.print_to_file(out)
    lines = out.getvalue().splitlines()
    self.assertEqual([line.split(":")[0] for line in lines],
                     ["place v2", "place v10", "report"])


if __name__ == "__main__":
  unittest.main()
