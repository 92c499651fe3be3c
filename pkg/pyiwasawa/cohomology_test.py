"""Tests for cohomology.py."""

import os

from pyiwasawa import cohomology
from pyiwasawa import config
from pyiwasawa import exceptions
from pyiwasawa import finite_level_algebra as fla
from pyiwasawa import pp_linalg
from pyiwasawa.tests import oracles

import unittest
from unittest import mock


def group(p, *exponents):
  return fla.FiniteAbelianPGroup(p, exponents)


def module(l, *exponents):
  return pp_linalg.AbelianGroupStructure(l, exponents)


class GModuleTest(unittest.TestCase):

  def testReduction(self):
    gm = cohomology.GModuleData(group(3, 2), module(3, 2), [[[13]]])
    self.assertEqual(gm.actions, (((4,),),))

  def testNonCommuting(self):
    self.assertRaises(exceptions.ActionError, cohomology.GModuleData,
                      group(2, 1, 1), module(3, 1, 1),
                      [[[0, 1], [1, 0]], [[1, 0], [0, 2]]])

  def testWrongOrder(self):
    self.assertRaises(exceptions.ActionError, cohomology.GModuleData,
                      group(2, 1), module(7, 1), [[[2]]])

  def testNotAnEndomorphism(self):
    self.assertRaises(exceptions.ActionError, cohomology.GModuleData,
                      group(3, 1), module(3, 1, 2), [[[1, 1], [0, 1]]])
    cohomology.GModuleData(group(3, 1), module(3, 1, 2), [[[1, 3], [0, 1]]])

  def testMatrixCount(self):
    self.assertRaises(exceptions.ActionError, cohomology.GModuleData,
                      group(3, 1, 1), module(3, 1), [[[1]]])

  def testDescriptorRoundTrip(self):
    gm = cohomology.GModuleData(group(3, 2), module(3, 2), [[[4]]])
    self.assertEqual(cohomology.gmodule_from_descriptor(gm.descriptor()), gm)

  def testDescriptorDefaultsToTrivial(self):
    gm = cohomology.gmodule_from_descriptor(
        {"group": {"p": 2, "exponents": [1, 1]},
         "module": {"l": 2, "exponents": [1]}})
    self.assertTrue(gm.is_trivial_action())


def term_sum_norm(gm, index):
  total = gm.reduce([[0] * gm.rank for _ in range(gm.rank)])
  for t in range(gm.group.factor_orders[index]):
    total = gm.add(total, gm.power(gm.actions[index], t))
  return total


class NormTest(unittest.TestCase):

  def testSmall(self):
    gm = cohomology.GModuleData(group(3, 2), module(3, 2), [[[4]]])
    self.assertEqual(gm.norm(0), ((0,),))
    gm = cohomology.trivial_gmodule(group(3, 1), module(3, 2))
    self.assertEqual(gm.norm(0), ((3,),))
    gm = cohomology.GModuleData(group(2, 2), module(5, 1), [[[2]]])
    self.assertEqual(gm.norm(0), ((0,),))

  def testMatchesTermSum(self):
    for gm in [
        cohomology.GModuleData(group(3, 1, 2), module(3, 1, 2),
                               [[[1, 0], [0, 1]], [[1, 3], [0, 4]]]),
        cohomology.GModuleData(group(2, 3), module(3, 2), [[[8]]]),
        cohomology.trivial_gmodule(group(2, 1, 3), module(2, 1, 3))]:
      for i in range(gm.group.rank):
        self.assertEqual(gm.norm(i), term_sum_norm(gm, i))

  def testLargeCyclicFactor(self):
    with mock.patch.dict(os.environ,
                         {config.MAX_GROUP_ORDER_VAR: str(2 ** 16)}):
      gm = cohomology.trivial_gmodule(group(2, 16), module(3, 2))
      # 2^16 == 7 mod 9
      self.assertEqual(gm.norm(0), ((7,),))
      gm = cohomology.trivial_gmodule(group(2, 16), module(2, 3))
      self.assertEqual(gm.norm(0), ((0,),))


class GroupCapTest(unittest.TestCase):

  def testDefaultCap(self):
    with mock.patch.dict(os.environ, clear=True):
      self.assertRaises(exceptions.SizeCapExceeded,
                        cohomology.gmodule_from_descriptor,
                        {"group": {"p": 3, "exponents": [16]},
                         "module": {"l": 3, "exponents": [1]}})

  def testOverride(self):
    with mock.patch.dict(os.environ, {config.MAX_GROUP_ORDER_VAR: "8"}):
      cohomology.trivial_gmodule(group(2, 3), module(3, 1))
      self.assertRaises(exceptions.SizeCapExceeded,
                        cohomology.trivial_gmodule, group(3, 2), module(3, 1))


class FiniteCohomologyTest(unittest.TestCase):

  def testCyclicTrivial(self):
    gm = cohomology.trivial_gmodule(group(3, 1), module(3, 1))
    for i in (0, 1, 2):
      self.assertEqual(cohomology.cohomology_groups(gm, i).exponents, (1,))

  def testTwistedCyclic(self):
    gm = cohomology.GModuleData(group(3, 2), module(3, 2), [[[4]]])
    self.assertEqual(cohomology.cohomology_groups(gm, 0).exponents, (1,))
    self.assertEqual(cohomology.cohomology_groups(gm, 1).exponents, (1,))
    self.assertEqual(cohomology.cohomology_groups(gm, 1).order,
                     oracles.h1_order(gm))
    self.assertEqual(cohomology.cohomology_groups(gm, 2).exponents, (1,))

  def testHerbrand(self):
    gm = cohomology.GModuleData(group(3, 2), module(3, 2), [[[4]]])
    self.assertEqual(cohomology.tate_h0(gm).order,
                     cohomology.cohomology_groups(gm, 1).order)

  def testRankTwoTrivial(self):
    gm = cohomology.trivial_gmodule(group(2, 1, 1), module(2, 1))
    self.assertEqual(cohomology.cohomology_groups(gm, 1).exponents, (1, 1))
    self.assertEqual(cohomology.cohomology_groups(gm, 2).exponents,
                     (1, 1, 1))
    self.assertEqual(cohomology.cohomology_groups(gm, 1).order,
                     oracles.h1_order(gm))

  def testTrivialActionIsHom(self):
    g, b = group(3, 1, 2), module(3, 1, 3)
    gm = cohomology.trivial_gmodule(g, b)
    self.assertEqual(cohomology.cohomology_groups(gm, 1),
                     cohomology.hom_structure(g, b))
    self.assertEqual(cohomology.hom_structure(g, b).exponents, (1, 1, 1, 2))

  def testCoprimeOrdersVanish(self):
    gm = cohomology.GModuleData(group(2, 2), module(5, 1), [[[2]]])
    self.assertTrue(cohomology.cohomology_groups(gm, 0).is_trivial())
    self.assertTrue(cohomology.cohomology_groups(gm, 1).is_trivial())
    self.assertTrue(cohomology.cohomology_groups(gm, 2).is_trivial())

  def testTrivialModule(self):
    gm = cohomology.trivial_gmodule(group(3, 1), module(3))
    self.assertTrue(cohomology.cohomology_groups(gm, 1).is_trivial())

  def testBadDegree(self):
    gm = cohomology.trivial_gmodule(group(3, 1), module(3, 1))
    self.assertRaises(exceptions.InvalidArgument,
                      cohomology.cohomology_groups, gm, 3)
    self.assertRaises(exceptions.InvalidArgument,
                      cohomology.cohomology_profinite, gm, 0)

  def testComplexSquaresToZero(self):
    gm = cohomology.GModuleData(group(3, 1, 2), module(3, 1, 2),
                                [[[1, 3], [0, 1]], [[1, 0], [0, 4]]])
    self.assertTrue(cohomology.cochain_complex(gm).composes_to_zero())

  def testBoundCheck(self):
    gm = cohomology.trivial_gmodule(group(2, 1, 1), module(2, 1))
    check = cohomology.lemma_bound_check(gm)
    self.assertEqual((check.h1_order, check.h1_bound), (4, 4))
    self.assertEqual((check.h2_order, check.h2_bound), (2, 2))
    self.assertTrue(check.holds())


class ProfiniteTest(unittest.TestCase):

  def testProcyclicTrivial(self):
    gm = cohomology.trivial_gmodule(group(3, 1), module(3, 1))
    self.assertEqual(cohomology.cohomology_profinite(gm, 1).exponents, (1,))
    self.assertTrue(cohomology.cohomology_profinite(gm, 2).is_trivial())

  def testProcyclicTwisted(self):
    gm = cohomology.GModuleData(group(3, 1), module(3, 2), [[[4]]])
    self.assertEqual(cohomology.cohomology_profinite(gm, 1).exponents, (1,))

  def testCoprime(self):
    gm = cohomology.GModuleData(group(2, 1), module(3, 2), [[[8]]])
    self.assertTrue(cohomology.cohomology_profinite(gm, 1).is_trivial())
    self.assertTrue(cohomology.cohomology_profinite(gm, 2).is_trivial())

  def testRankTwoTrivial(self):
    gm = cohomology.trivial_gmodule(group(3, 1, 1), module(3, 1))
    self.assertEqual(cohomology.cohomology_profinite(gm, 1).exponents, (1, 1))
    self.assertEqual(cohomology.cohomology_profinite(gm, 2).exponents, (1,))

  def testColimitMatchesKoszul(self):
    gm = cohomology.GModuleData(group(2, 1, 2), module(2, 1, 2),
                                [[[1, 2], [0, 1]], [[1, 0], [0, 3]]])
    for i in (1, 2):
      self.assertEqual(cohomology.cohomology_profinite(gm, i),
                       cohomology.koszul_cohomology(gm, i))


class DualityTest(unittest.TestCase):

  def testSelfDual(self):
    gm = cohomology.trivial_gmodule(group(3, 1), module(3, 2))
    self.assertEqual(cohomology.pontryagin_dual(gm), gm)

  def testMixedFactors(self):
    gm = cohomology.trivial_gmodule(group(3, 1), module(3, 1, 2))
    dual = cohomology.pontryagin_dual(gm)
    self.assertEqual(dual.module.invariant_factors, (3, 9))

  def testInverseScalar(self):
    gm = cohomology.GModuleData(group(2, 2), module(5, 1), [[[2]]])
    self.assertEqual(cohomology.pontryagin_dual(gm).actions, (((3,),),))

  def testDoubleDual(self):
    gm = cohomology.GModuleData(group(3, 1, 2), module(3, 1, 2),
                                [[[1, 3], [0, 1]], [[1, 0], [0, 4]]])
    dual = cohomology.pontryagin_dual(gm)
    self.assertEqual(cohomology.pontryagin_dual(dual), gm)

  def testTrivialCyclic(self):
    gm = cohomology.trivial_gmodule(group(2, 1), module(3, 1))
    left, right = cohomology.li_dual_pair(gm)
    self.assertEqual(left.exponents, (1,))
    self.assertEqual(right.exponents, (1,))

  def testTrivialSquare(self):
    gm = cohomology.trivial_gmodule(group(2, 1), module(3, 2))
    left, right = cohomology.li_dual_pair(gm)
    self.assertEqual(left.exponents, (2,))
    self.assertEqual(right.exponents, (2,))

  def testSignAction(self):
    gm = cohomology.GModuleData(group(2, 1), module(3, 2), [[[8]]])
    left, right = cohomology.li_dual_pair(gm)
    self.assertEqual(left.exponents, (1,))
    self.assertEqual(right.exponents, (1,))

  def testSameCharacteristic(self):
    gm = cohomology.trivial_gmodule(group(3, 1), module(3, 1))
    self.assertRaises(exceptions.HypothesisViolation, cohomology.li_dual_pair,
                      gm)


class CorankTest(unittest.TestCase):

  def testCoranks(self):
    self.assertTrue(cohomology.corank_of_h2_trivial(0, 3, 2).structure
                    .is_trivial())
    one = cohomology.corank_of_h2_trivial(1, 3, 3)
    self.assertEqual(one.structure.invariant_factors, (27,))
    self.assertEqual(one.corank, 1)
    self.assertEqual(one.describe(), "(Q_3/Z_3)^1")
    two = cohomology.corank_of_h2_trivial(2, 2, 4)
    self.assertEqual(two.structure.invariant_factors, (16, 16))

  def testRange(self):
    self.assertRaises(exceptions.InvalidArgument,
                      cohomology.corank_of_h2_trivial, 3, 2, 1, 2)
    self.assertRaises(exceptions.InvalidArgument,
                      cohomology.corank_of_h2_trivial, -1, 2, 1)


if __name__ == "__main__":
  unittest.main()
