"""Local invariants at places of split multiplicative reduction.

A place is described by TateLocalData: the valuation of j, the residue field
size and how the place behaves in the Z_p^d tower. Nothing here constructs
the curve itself; the quantities below are those the control bounds consume.
"""

import logging
import math

from pyiwasawa import exceptions
from pyiwasawa import ffpoly
from pyiwasawa import pp_linalg
from pyiwasawa import utils
from pyiwasawa.parse import node


log = logging.getLogger(__name__)

GOOD = "Good"
SPLIT_MULTIPLICATIVE = "SplitMultiplicative"

SPLITS_COMPLETELY = "SplitsCompletely"
UNRAMIFIED_INERT = "UnramifiedInert"
RAMIFIED = "Ramified"
BEHAVIORS = (SPLITS_COMPLETELY, UNRAMIFIED_INERT, RAMIFIED)

# Kinds of LocalKernel.
ZERO = "Zero"
FINITE_BOUNDED = "FiniteBounded"
CORANK_AT_MOST = "CorankAtMost"


class TateLocalData(node.Node("name", "p", "ord_v_j", "residue_size",
                              "reduction", "behavior", "decomposition_rank",
                              "ramification_index", "local_torsion")):
  """A place v of the base field.

  Attributes:
    name: Label used in reports.
    p: The characteristic.
    ord_v_j: ord_v(j(E)); negative exactly at split multiplicative places.
    residue_size: |F_v|, a power of p.
    reduction: GOOD or SPLIT_MULTIPLICATIVE, derived from ord_v_j.
    behavior: One of BEHAVIORS.
    decomposition_rank: Z_p-rank of the decomposition group in the tower.
    ramification_index: A power of p; 1 unless behavior is RAMIFIED.
    local_torsion: |E(F_v)[p^inf]| if known, else None.
  """
  __slots__ = ()

  def __new__(cls, name, p, ord_v_j, residue_size, reduction=None,
              behavior=SPLITS_COMPLETELY, decomposition_rank=0,
              ramification_index=1, local_torsion=None):
    if not utils.is_prime(p):
      raise exceptions.InvalidArgument("place %s: %r is not prime", name, p)
    derived = SPLIT_MULTIPLICATIVE if ord_v_j < 0 else GOOD
    if reduction is not None and reduction != derived:
      raise exceptions.InvalidArgument(
          "place %s: reduction %s contradicts ord_v(j) = %d", name, reduction,
          ord_v_j)
    if (residue_size < 2 or
        utils.prime_power_exponent(residue_size, p) is None):
      raise exceptions.InvalidArgument(
          "place %s: residue field size %r is not a power of %d", name,
          residue_size, p)
    if behavior not in BEHAVIORS:
      raise exceptions.InvalidArgument("place %s: unknown behavior %r", name,
                                       behavior)
    if utils.prime_power_exponent(ramification_index, p) is None:
      raise exceptions.InvalidArgument(
          "place %s: ramification index %r is not a power of %d", name,
          ramification_index, p)
    if (behavior == RAMIFIED) != (ramification_index > 1):
      raise exceptions.InvalidArgument(
          "place %s: ramification index %d does not match behavior %s", name,
          ramification_index, behavior)
    if decomposition_rank < 0 or (behavior == SPLITS_COMPLETELY and
                                  decomposition_rank):
      raise exceptions.InvalidArgument(
          "place %s: bad decomposition rank %d for %s", name,
          decomposition_rank, behavior)
    if (local_torsion is not None and
        utils.prime_power_exponent(local_torsion, p) is None):
      raise exceptions.InvalidArgument(
          "place %s: local torsion %r is not a power of %d", name,
          local_torsion, p)
    return super(TateLocalData, cls).__new__(
        cls, name, p, ord_v_j, residue_size, derived, behavior,
        decomposition_rank, ramification_index, local_torsion)

  @property
  def is_split_multiplicative(self):
    return self.reduction == SPLIT_MULTIPLICATIVE

  @property
  def is_ramified(self):
    return self.behavior == RAMIFIED

  def lifted(self, e):
    """The place above self in a layer with ramification index e."""
    _check_ramification(self.p, e)
    return self._replace(ord_v_j=self.ord_v_j * e)

  def descriptor(self):
    desc = {"name": self.name, "ord_v_j": self.ord_v_j,
            "residue_size": self.residue_size, "behavior": self.behavior,
            "decomposition_rank": self.decomposition_rank,
            "ramification_index": self.ramification_index}
    if self.local_torsion is not None:
      desc["local_torsion"] = self.local_torsion
    return desc


def place_from_descriptor(desc, p):
  return TateLocalData(desc["name"], p, desc["ord_v_j"], desc["residue_size"],
                       desc.get("reduction"),
                       desc.get("behavior", SPLITS_COMPLETELY),
                       desc.get("decomposition_rank", 0),
                       desc.get("ramification_index", 1),
                       desc.get("local_torsion"))


def _check_ramification(p, e):
  if utils.prime_power_exponent(e, p) is None:
    raise exceptions.InvalidArgument("ramification index %r is not a power "
                                     "of %d", e, p)


def _require_split(t):
  if not t.is_split_multiplicative:
    raise exceptions.ReductionTypeError(
        "place %s has good reduction (ord_v(j) = %d)", t.name, t.ord_v_j)


def component_order(t):
  """|T_v| = -ord_v(j)."""
  _require_split(t)
  return -t.ord_v_j


def cyclic(p, e):
  """Z/e for a power e of p."""
  _check_ramification(p, e)
  k = utils.valuation(e, p)
  return pp_linalg.AbelianGroupStructure(p, [k] if k else [])


class LocalInvariants(node.Node("component_order", "tate_index", "h1_e0")):
  __slots__ = ()

  def descriptor(self):
    return {"component_order": self.component_order,
            "tate_index": self.tate_index,
            "h1_e0": self.h1_e0.descriptor()}


def local_invariants(t):
  """Component group order, Tate period index and H^1(G, E_0).

  Args:
    t: A split multiplicative place.

  Returns:
    LocalInvariants. The index of q_E^Z in F_v^* modulo units is
    ord_v(q_E) |F_v^*| with ord_v(q_E) = -ord_v(j); H^1 of the local Galois
    group with values in E_0 is cyclic of order the ramification index.

  Raises:
    ReductionTypeError: If t has good reduction.
  """
  order = component_order(t)
  return LocalInvariants(order, order * (t.residue_size - 1),
                         cyclic(t.p, t.ramification_index))


class TowerComponent(node.Node("order", "fixed_quotient")):
  """|T_w| above v, and T_w^Gamma / T_v."""
  __slots__ = ()


def tower_component_order(t, e):
  """|T_w| = |T_v| e for a place w above v with ramification index e."""
  _require_split(t)
  _check_ramification(t.p, e)
  return TowerComponent(component_order(t) * e, cyclic(t.p, e))


class LocalKernel(node.Node("kind", "bound")):
  """Classification of the kernel of the local restriction map."""
  __slots__ = ()

  def describe(self):
    if self.bound is None:
      return self.kind
    return "%s(%d)" % (self.kind, self.bound)

  def descriptor(self):
    desc = {"kind": self.kind}
    if self.bound is not None:
      desc["bound"] = self.bound
    return desc


def ker_dw_classify(t, l, d):
  """Classify Ker d_w for the l-primary Selmer group in a Z_p^d tower.

  Args:
    t: The place.
    l: The coefficient prime.
    d: Rank of the tower.

  Returns:
    LocalKernel: ZERO when l != p, when reduction is good or when v splits
    completely; FINITE_BOUNDED by the p-part of |T_v| at unramified inert bad
    places; CORANK_AT_MOST the decomposition rank at ramified bad places.
  """
  if t.decomposition_rank > d:
    raise exceptions.InvalidArgument(
        "place %s: decomposition rank %d exceeds the tower rank %d", t.name,
        t.decomposition_rank, d)
  if l != t.p or not t.is_split_multiplicative:
    return LocalKernel(ZERO, None)
  if t.behavior == SPLITS_COMPLETELY:
    return LocalKernel(ZERO, None)
  if t.behavior == UNRAMIFIED_INERT:
    order = component_order(t)
    return LocalKernel(FINITE_BOUNDED, t.p ** utils.valuation(order, t.p))
  return LocalKernel(CORANK_AT_MOST, t.decomposition_rank)


class JPowerLevel(node.Node("p", "level")):
  """j lies in F^{p^n} but not in F^{p^{n+1}}; then E[p^inf] lies in E[p^n]."""
  __slots__ = ()

  @property
  def max_torsion(self):
    """|E[p^n]| <= p^{2n}."""
    return self.p ** (2 * self.level)

  def describe(self):
    return "E[%d^inf] in E[%d^%d]" % (self.p, self.p, self.level)


def _multiplicities(ctx, f, use_factoring):
  if ffpoly.is_constant(f):
    return []
  if use_factoring:
    return [m for _, m in ffpoly.factor(ctx, f)[1]]
  return [m for _, m in ffpoly.squarefree_decomposition(ctx, f)]


def j_power_level(ctx, numerator, denominator=(1,), use_factoring=False):
  """The largest n with j = numerator / denominator a p^n-th power.

  Constants of F_q are p-th powers, so only the multiplicities of the
  irreducible factors matter: n is the p-adic valuation of their gcd.

  Raises:
    IsotrivialCurve: If j is constant.
  """
  numerator = ffpoly.normalize(numerator)
  denominator = ffpoly.normalize(denominator)
  if not numerator or not denominator:
    raise exceptions.InvalidArgument("j must be a nonzero rational function")
  g = ffpoly.gcd(ctx, numerator, denominator)
  numerator = ffpoly.exact_div(ctx, numerator, g)
  denominator = ffpoly.exact_div(ctx, denominator, g)
  if ffpoly.is_constant(numerator) and ffpoly.is_constant(denominator):
    raise exceptions.IsotrivialCurve("j = %s is constant",
                                     ffpoly.format_poly(numerator))
  total = 0
  for m in (_multiplicities(ctx, numerator, use_factoring) +
            _multiplicities(ctx, denominator, use_factoring)):
    total = math.gcd(total, m)
  level = utils.valuation(total, ctx.p)
  log.info("j-invariant is a %d^%d-th power", ctx.p, level)
  return JPowerLevel(ctx.p, level)
