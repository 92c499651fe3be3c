"""Tests for finite_level_algebra.py."""

import os

from pyiwasawa import config
from pyiwasawa import exceptions
from pyiwasawa import finite_level_algebra as fla
from pyiwasawa.tests import oracles
from pyiwasawa.tests import test_base

import unittest


def binomial(n, k):
  result = 1
  for i in range(k):
    result = result * (n - i) // (i + 1)
  return result


class GroupTest(unittest.TestCase):

  def testElements(self):
    g = fla.FiniteAbelianPGroup(2, [1, 2])
    self.assertEqual(g.order, 8)
    self.assertEqual(g.elements()[:3], [(0, 0), (0, 1), (0, 2)])
    self.assertEqual(g.add((1, 3), (1, 2)), (0, 1))

  def testValidation(self):
    self.assertRaises(exceptions.InvalidArgument, fla.FiniteAbelianPGroup,
                      6, [1])
    self.assertRaises(exceptions.InvalidArgument, fla.FiniteAbelianPGroup,
                      3, [0])


class MultiplyTest(unittest.TestCase):

  def testIdentity(self):
    ring = fla.trunc_poly(3, 2, 2, 3)
    a = ring.parse("1 + 2*T1 + T1*T2")
    self.assertEqual(fla.ring_multiply(a, ring.one(), ring), a)

  def testBinomialExpansion(self):
    p = 3
    ring = fla.group_ring(p, 2, fla.FiniteAbelianPGroup(p, [1]))
    x = ring.power(ring.parse("g - 1"), p)
    q = ring.coeff.modulus
    expected = [0] * p
    for i in range(p + 1):
      expected[i % p] += binomial(p, i) * (-1) ** (p - i)
    self.assertEqual(x, tuple(c % q for c in expected))

  def testTruncation(self):
    ring = fla.trunc_poly(3, 1, 1, 3)
    self.assertTrue(ring.is_zero(ring.multiply(ring.parse("T"),
                                               ring.parse("T^2"))))

  def testGroupLawMatchesConvolution(self):
    ring = fla.group_ring(2, 2, fla.FiniteAbelianPGroup(2, [1, 1]))
    x = ring.parse("1 + 3*g1 + g1*g2")
    y = ring.parse("2 - g2")
    self.assertEqual(ring.multiply(x, y),
                     oracles.convolve_group_ring(ring, x, y))

  def testCyclicPolyRelation(self):
    ring = fla.cyclic_poly(2, 3, 2)
    self.assertEqual(ring.power(ring.parse("1 + T"), 4), ring.one())


class IsomorphismTest(test_base.PropertyTest):

  def setUp(self):
    super(IsomorphismTest, self).setUp()
    self.ring = fla.group_ring(3, 2, fla.FiniteAbelianPGroup(3, [1]))
    self.poly = fla.polynomial_ring_for(self.ring)

  def toPoly(self, x):
    return fla.group_ring_to_polynomial(x, self.ring, self.poly)

  def testGenerator(self):
    self.assertEqual(self.toPoly(self.ring.variable(0)),
                     self.poly.parse("1 + T"))

  def testRelation(self):
    self.assertEqual(self.toPoly(self.ring.power(self.ring.variable(0), 3)),
                     self.poly.one())

  def testNorm(self):
    n = self.ring.rank
    norm = tuple([1] * n)
    q = self.ring.coeff.modulus
    expected = tuple(binomial(n, s + 1) % q for s in range(n))
    self.assertEqual(self.toPoly(norm), expected)

  def testRingIsomorphism(self):
    q = self.ring.coeff.modulus
    self.assertEqual(self.toPoly(self.ring.one()), self.poly.one())
    for _ in range(50):
      x = tuple(self.rng.randrange(q) for _ in range(self.ring.rank))
      y = tuple(self.rng.randrange(q) for _ in range(self.ring.rank))
      self.assertEqual(self.toPoly(self.ring.add(x, y)),
                       self.poly.add(self.toPoly(x), self.toPoly(y)))
      self.assertEqual(self.toPoly(self.ring.multiply(x, y)),
                       self.poly.multiply(self.toPoly(x), self.toPoly(y)))
      self.assertEqual(fla.polynomial_to_group_ring(
          self.toPoly(x), self.poly, self.ring), x)

  def testRejectsRankTwo(self):
    ring = fla.group_ring(3, 1, fla.FiniteAbelianPGroup(3, [1, 1]))
    self.assertRaises(exceptions.DimensionMismatch,
                      fla.polynomial_ring_for, ring)


class AugmentationTest(unittest.TestCase):

  def testCoprimeCoefficients(self):
    ring = fla.group_ring(2, 2, fla.FiniteAbelianPGroup(3, [1]))
    i1 = fla.augmentation_ideal_power(ring, 1)
    i2 = fla.augmentation_ideal_power(ring, 2)
    self.assertEqual(i1, i2)
    self.assertEqual(i1.cardinality, i2.cardinality)

  def testSameCoefficients(self):
    ring = fla.group_ring(3, 2, fla.FiniteAbelianPGroup(3, [1]))
    i1 = fla.augmentation_ideal_power(ring, 1)
    i2 = fla.augmentation_ideal_power(ring, 2)
    self.assertEqual(i1.quotient_order(i2), 3)

  def testTrivialGroup(self):
    ring = fla.group_ring(3, 2, fla.FiniteAbelianPGroup(3, []))
    self.assertTrue(fla.augmentation_ideal_power(ring, 1).is_zero())
    self.assertTrue(fla.augmentation_ideal_power(ring, 3).is_zero())

  def testErrors(self):
    ring = fla.group_ring(3, 2, fla.FiniteAbelianPGroup(3, [1]))
    self.assertRaises(exceptions.InvalidArgument,
                      fla.augmentation_ideal_power, ring, 0)
    self.assertRaises(exceptions.DimensionMismatch,
                      fla.augmentation_ideal_power, fla.trunc_poly(3, 1, 1, 2),
                      1)


class IdealTest(unittest.TestCase):

  def testUnitIdeal(self):
    ring = fla.trunc_poly(3, 2, 1, 4)
    ideal = fla.ideal_span(ring, [ring.one()])
    self.assertEqual(ideal.cardinality, 9 ** 4)
    self.assertTrue(ideal.is_unit())

  def testMaximalIdeal(self):
    ring = fla.trunc_poly(3, 2, 1, 4)
    ideal = fla.ideal_span(ring, [ring.parse("p"), ring.parse("T")])
    self.assertTrue(ideal.contains(ring.parse("p*T")))
    self.assertFalse(ideal.contains(ring.one()))
    self.assertTrue(ideal.check_ideal())

  def testSaturation(self):
    ring = fla.trunc_poly(3, 3, 1, 6)
    gen = ring.parse("T^2 + p^2")
    ideal = fla.ideal_span(ring, [gen])
    self.assertEqual(ideal.span_basis, oracles.saturate_span(ring, [gen]))
    # R/(T^2 + 9) is free of rank 2 over Z/27.
    self.assertEqual(ideal.cardinality, 27 ** 4)

  def testProductInsideIntersection(self):
    ring = fla.trunc_poly(2, 2, 2, 3)
    a = fla.ideal_span(ring, [ring.parse("p"), ring.parse("T1")])
    b = fla.ideal_span(ring, [ring.parse("T1 + T2")])
    ab = a.product(b)
    self.assertEqual(ab, b.product(a))
    self.assertTrue(ab.issubset(a.intersect(b)))
    self.assertTrue(a.intersect(b).check_ideal())

  def testProductAssociative(self):
    ring = fla.trunc_poly(3, 2, 1, 5)
    a = fla.ideal_span(ring, [ring.parse("p + T")])
    b = fla.ideal_span(ring, [ring.parse("T^2")])
    c = fla.ideal_span(ring, [ring.parse("p")])
    self.assertEqual(a.product(b).product(c), a.product(b.product(c)))

  def testSum(self):
    ring = fla.trunc_poly(3, 2, 1, 3)
    a = fla.ideal_span(ring, [ring.parse("p")])
    b = fla.ideal_span(ring, [ring.parse("T")])
    self.assertEqual(a.sum(b), fla.ideal_span(ring, [ring.parse("p"),
                                                     ring.parse("T")]))

  def testDescriptorRoundTrip(self):
    for ring in [fla.trunc_poly(2, 3, 2, 2), fla.cyclic_poly(3, 2, 1),
                 fla.group_ring(2, 1, fla.FiniteAbelianPGroup(3, [1]))]:
      self.assertEqual(fla.ring_from_descriptor(ring.descriptor()), ring)


class CapTest(unittest.TestCase):

  def setUp(self):
    self.saved = os.environ.get(config.MAX_RING_CARDINALITY_VAR)

  def tearDown(self):
    if self.saved is None:
      os.environ.pop(config.MAX_RING_CARDINALITY_VAR, None)
    else:
      os.environ[config.MAX_RING_CARDINALITY_VAR] = self.saved

  def testCap(self):
    os.environ[config.MAX_RING_CARDINALITY_VAR] = "100"
    self.assertRaises(exceptions.SizeCapExceeded, fla.trunc_poly, 3, 2, 2, 4)
    fla.trunc_poly(3, 2, 1, 4)

  def testCapBeforeEnumeration(self):
    # Default cap; these bases would not fit in memory.
    os.environ.pop(config.MAX_RING_CARDINALITY_VAR, None)
    huge = fla.FiniteAbelianPGroup(3, [30])
    self.assertRaises(exceptions.SizeCapExceeded, fla.group_ring, 2, 1, huge)
    self.assertRaises(exceptions.SizeCapExceeded, fla.trunc_poly,
                      2, 1, 40, 2)
    self.assertRaises(exceptions.SizeCapExceeded, fla.cyclic_poly, 2, 1, 60)


if __name__ == "__main__":
  unittest.main()
