"""Randomized checks of local invariants and of the j-invariant level."""

from pyiwasawa import exceptions
from pyiwasawa import ffpoly
from pyiwasawa import tate_local
from pyiwasawa.tests import test_base

import unittest


class LocalSuite(test_base.PropertyTest):

  def random_place(self, p, ramified_ok=True):
    behaviors = list(tate_local.BEHAVIORS)
    if not ramified_ok:
      behaviors.remove(tate_local.RAMIFIED)
    behavior = self.rng.choice(behaviors)
    e = p ** self.rng.randint(1, 3) if behavior == tate_local.RAMIFIED else 1
    d_v = (0 if behavior == tate_local.SPLITS_COMPLETELY
           else self.rng.randint(1, 3))
    ord_v_j = self.rng.choice([-1, 1]) * self.rng.randint(1, 60)
    return tate_local.TateLocalData("v", p, ord_v_j,
                                    p ** self.rng.randint(1, 4),
                                    behavior=behavior, decomposition_rank=d_v,
                                    ramification_index=e)

  def testH1OfE0HasOrderE(self):
    for p in (2, 3, 5, 7):
      for k in range(5):
        t = tate_local.TateLocalData(
            "v", p, -1, p,
            behavior=tate_local.RAMIFIED if k else tate_local.UNRAMIFIED_INERT,
            decomposition_rank=1, ramification_index=p ** k)
        self.assertEqual(tate_local.local_invariants(t).h1_e0.order, p ** k)

  def testTowerMultiplicativity(self):
    for _ in range(200):
      p = self.rng.choice([2, 3, 5])
      t = self.random_place(p)
      if not t.is_split_multiplicative:
        continue
      e1 = p ** self.rng.randint(0, 3)
      e2 = p ** self.rng.randint(0, 3)
      once = tate_local.tower_component_order(t, e1 * e2).order
      twice = tate_local.tower_component_order(t.lifted(e1), e2).order
      self.assertEqual(once, twice)
      self.assertEqual(once % tate_local.component_order(t), 0)

  def testIndexDivisibleByComponentOrder(self):
    for _ in range(200):
      t = self.random_place(self.rng.choice([2, 3]))
      if not t.is_split_multiplicative:
        continue
      inv = tate_local.local_invariants(t)
      self.assertEqual(inv.component_order, -t.ord_v_j)
      self.assertEqual(inv.tate_index % inv.component_order, 0)

  def testOtherCoefficientsGiveZero(self):
    for _ in range(300):
      p = self.rng.choice([2, 3, 5])
      l = self.rng.choice([q for q in (2, 3, 5, 7, 11) if q != p])
      t = self.random_place(p)
      kernel = tate_local.ker_dw_classify(t, l, 3)
      self.assertEqual(kernel.kind, tate_local.ZERO)

  def testUnramifiedPlacesHaveFiniteKernels(self):
    for _ in range(200):
      p = self.rng.choice([2, 3])
      kernel = tate_local.ker_dw_classify(
          self.random_place(p, ramified_ok=False), p, 3)
      self.assertNotEqual(kernel.kind, tate_local.CORANK_AT_MOST)


class JPowerLevelSuite(test_base.PropertyTest):

  FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)]

  def random_poly(self, ctx, max_degree):
    deg = self.rng.randint(0, max_degree)
    return ffpoly.normalize(
        [self.rng.randrange(ctx.q) for _ in range(deg)] +
        [self.rng.randrange(1, ctx.q)])

  def random_j(self, ctx):
    while True:
      num = self.random_poly(ctx, 3)
      den = self.random_poly(ctx, 2)
      g = ffpoly.gcd(ctx, num, den)
      if not (ffpoly.is_constant(ffpoly.exact_div(ctx, num, g)) and
              ffpoly.is_constant(ffpoly.exact_div(ctx, den, g))):
        return num, den

  def testPthPowerRaisesLevel(self):
    for _ in range(100):
      ctx = ffpoly.FqContext(*self.rng.choice(self.FIELDS))
      num, den = self.random_j(ctx)
      level = tate_local.j_power_level(ctx, num, den).level
      raised = tate_local.j_power_level(ctx, ffpoly.power(ctx, num, ctx.p),
                                        ffpoly.power(ctx, den, ctx.p))
      self.assertEqual(raised.level, level + 1)

  def testFactoringAgrees(self):
    for _ in range(100):
      ctx = ffpoly.FqContext(*self.rng.choice(self.FIELDS))
      num, den = self.random_j(ctx)
      k = self.rng.randint(1, 2)
      num, den = ffpoly.power(ctx, num, k), ffpoly.power(ctx, den, k)
      self.assertEqual(
          tate_local.j_power_level(ctx, num, den),
          tate_local.j_power_level(ctx, num, den, use_factoring=True))

  def testConstantsAreIsotrivial(self):
    for p, f in self.FIELDS:
      ctx = ffpoly.FqContext(p, f)
      for c in range(1, ctx.q):
        self.assertRaises(exceptions.IsotrivialCurve,
                          tate_local.j_power_level, ctx, (c,))


if __name__ == "__main__":
  unittest.main()
