"""Tests for tate_local.py."""

from pyiwasawa import exceptions
from pyiwasawa import ffpoly
from pyiwasawa import tate_local

import unittest


def place(ord_v_j, behavior=tate_local.SPLITS_COMPLETELY, d_v=0, e=1, p=3,
          residue_size=9):
  return tate_local.TateLocalData("v", p, ord_v_j, residue_size,
                                  behavior=behavior, decomposition_rank=d_v,
                                  ramification_index=e)


class TateLocalDataTest(unittest.TestCase):

  def testReductionDerived(self):
    self.assertEqual(place(-2).reduction, tate_local.SPLIT_MULTIPLICATIVE)
    self.assertEqual(place(0).reduction, tate_local.GOOD)
    self.assertEqual(place(3).reduction, tate_local.GOOD)

  def testContradictoryReduction(self):
    self.assertRaises(exceptions.InvalidArgument, tate_local.TateLocalData,
                      "v", 3, -1, 9, tate_local.GOOD)

  def testResidueSize(self):
    self.assertRaises(exceptions.InvalidArgument, place, -1, residue_size=4)
    self.assertRaises(exceptions.InvalidArgument, place, -1, residue_size=1)

  def testRamificationMatchesBehavior(self):
    self.assertRaises(exceptions.InvalidArgument, place, -1,
                      tate_local.RAMIFIED, 1, 1)
    self.assertRaises(exceptions.InvalidArgument, place, -1,
                      tate_local.UNRAMIFIED_INERT, 1, 3)
    self.assertRaises(exceptions.InvalidArgument, place, -1,
                      tate_local.RAMIFIED, 1, 6)

  def testSplitPlacesHaveNoDecompositionRank(self):
    self.assertRaises(exceptions.InvalidArgument, place, -1,
                      tate_local.SPLITS_COMPLETELY, 1)

  def testDescriptorRoundTrip(self):
    t = place(-4, tate_local.RAMIFIED, 2, 9)
    self.assertEqual(tate_local.place_from_descriptor(t.descriptor(), 3), t)


class LocalInvariantsTest(unittest.TestCase):

  def testComponentAndIndex(self):
    inv = tate_local.local_invariants(place(-5, p=2, residue_size=4))
    self.assertEqual(inv.component_order, 5)
    self.assertEqual(inv.tate_index, 15)
    self.assertTrue(inv.h1_e0.is_trivial())

  def testH1OfE0(self):
    inv = tate_local.local_invariants(place(-1, tate_local.RAMIFIED, 1, 9))
    self.assertEqual(inv.h1_e0.invariant_factors, (9,))

  def testGoodReduction(self):
    self.assertRaises(exceptions.ReductionTypeError,
                      tate_local.local_invariants, place(0))

  def testTowerComponent(self):
    t = place(-5, p=5, residue_size=25)
    self.assertEqual(tate_local.tower_component_order(t, 1).order, 5)
    tower = tate_local.tower_component_order(t, 5)
    self.assertEqual(tower.order, 25)
    self.assertEqual(tower.fixed_quotient.invariant_factors, (5,))

  def testTowerGrowsThePPartByE(self):
    t = place(-6)
    self.assertEqual(tate_local.tower_component_order(t, 9).order, 54)

  def testTowerRejectsBadIndex(self):
    self.assertRaises(exceptions.InvalidArgument,
                      tate_local.tower_component_order, place(-1), 2)
    self.assertRaises(exceptions.ReductionTypeError,
                      tate_local.tower_component_order, place(1), 3)


class ClassifyTest(unittest.TestCase):

  def testGoodReduction(self):
    kernel = tate_local.ker_dw_classify(place(0), 3, 1)
    self.assertEqual(kernel.kind, tate_local.ZERO)

  def testSplitsCompletely(self):
    kernel = tate_local.ker_dw_classify(place(-3), 3, 2)
    self.assertEqual(kernel.describe(), "Zero")

  def testUnramifiedInert(self):
    kernel = tate_local.ker_dw_classify(
        place(-18, tate_local.UNRAMIFIED_INERT, 1), 3, 2)
    self.assertEqual(kernel, tate_local.LocalKernel(
        tate_local.FINITE_BOUNDED, 9))
    self.assertEqual(kernel.describe(), "FiniteBounded(9)")

  def testRamified(self):
    kernel = tate_local.ker_dw_classify(
        place(-1, tate_local.RAMIFIED, 2, 3), 3, 2)
    self.assertEqual(kernel.describe(), "CorankAtMost(2)")
    self.assertEqual(kernel.descriptor(), {"kind": "CorankAtMost",
                                           "bound": 2})

  def testOtherCoefficients(self):
    kernel = tate_local.ker_dw_classify(
        place(-1, tate_local.RAMIFIED, 2, 3), 5, 2)
    self.assertEqual(kernel.kind, tate_local.ZERO)

  def testDecompositionRankAboveTowerRank(self):
    self.assertRaises(exceptions.InvalidArgument, tate_local.ker_dw_classify,
                      place(-1, tate_local.RAMIFIED, 2, 3), 3, 1)


class JPowerLevelTest(unittest.TestCase):

  def testLinear(self):
    level = tate_local.j_power_level(ffpoly.FqContext(3, 1), (0, 1))
    self.assertEqual(level.level, 0)
    self.assertEqual(level.max_torsion, 1)

  def testPthPowerQuotient(self):
    ctx = ffpoly.FqContext(3, 1)
    level = tate_local.j_power_level(ctx, (0, 0, 0, 1),
                                     ffpoly.power(ctx, (1, 1), 3))
    self.assertEqual(level.level, 1)
    self.assertEqual(level.describe(), "E[3^inf] in E[3^1]")

  def testCommonFactorsCancel(self):
    ctx = ffpoly.FqContext(2, 1)
    num = ffpoly.mul(ctx, ffpoly.power(ctx, (0, 1), 4), (1, 1))
    self.assertEqual(tate_local.j_power_level(ctx, num, (1, 1)).level, 2)

  def testConstantCoefficientIgnored(self):
    ctx = ffpoly.FqContext(2, 2)
    self.assertEqual(tate_local.j_power_level(ctx, (0, 0, 3)).level, 1)

  def testIsotrivial(self):
    ctx = ffpoly.FqContext(3, 1)
    self.assertRaises(exceptions.IsotrivialCurve, tate_local.j_power_level,
                      ctx, (2,))
    self.assertRaises(exceptions.IsotrivialCurve, tate_local.j_power_level,
                      ctx, (1, 1), (2, 2))

  def testZero(self):
    self.assertRaises(exceptions.InvalidArgument, tate_local.j_power_level,
                      ffpoly.FqContext(3, 1), ())

  def testFactoringAgrees(self):
    ctx = ffpoly.FqContext(2, 1)
    num = ffpoly.mul(ctx, ffpoly.power(ctx, (1, 1, 1), 2),
                     ffpoly.power(ctx, (0, 1), 6))
    self.assertEqual(tate_local.j_power_level(ctx, num).level, 1)
    self.assertEqual(
        tate_local.j_power_level(ctx, num, use_factoring=True).level, 1)


if __name__ == "__main__":
  unittest.main()
