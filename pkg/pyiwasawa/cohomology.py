"""Cohomology of finite abelian p-groups acting on finite abelian l-groups.

A module B = Z/l^{a_1} + ... + Z/l^{a_n} is modelled inside the ambient
(Z/l^m)^n, m = max a_j, together with the relation rows l^{a_j} e_j. Group
elements act on row vectors from the right: x -> x A.

For G = Z/p^{k_1} x ... x Z/p^{k_d} the cochains come from the tensor
product of the 2-periodic resolutions of the cyclic factors. In degree n the
cochain group is a sum of copies of B indexed by multi-indices nu with
|nu| = n; the differential from nu to nu + e_i is (-1)^{nu_1+...+nu_{i-1}}
times (A_i - 1) when nu_i is even and the norm of A_i when nu_i is odd.
"""

import itertools
import logging

import numpy

from pyiwasawa import config
from pyiwasawa import exceptions
from pyiwasawa import finite_level_algebra as fla
from pyiwasawa import pp_linalg
from pyiwasawa.parse import node


log = logging.getLogger(__name__)


def _trivial(p):
  return pp_linalg.AbelianGroupStructure(p, ())


class GModuleData(node.Node("group", "module", "actions")):
  """A finite abelian l-group with an action of a finite abelian p-group.

  Attributes:
    group: FiniteAbelianPGroup with generators gamma_1..gamma_d.
    module: AbelianGroupStructure over the prime l, in its invariant-factor
      basis.
    actions: One n x n integer matrix per group generator, as nested tuples.
      Entry (i, j) is reduced mod l^{a_j}.
  """
  __slots__ = ()

  def __new__(cls, group, module, actions):
    config.check_cap("acting group %r" % (group.factor_orders,), group.order,
                     config.max_group_order())
    n = module.rank
    actions = [[[int(x) for x in row] for row in a] for a in actions]
    if len(actions) != group.rank:
      raise exceptions.ActionError("%d action matrices for a group of rank %d",
                                   len(actions), group.rank)
    for a in actions:
      if len(a) != n or any(len(row) != n for row in a):
        raise exceptions.ActionError("action matrices must be %dx%d", n, n)
    moduli = [module.p ** e for e in module.exponents]
    reduced = tuple(tuple(tuple(row[j] % moduli[j] for j in range(n))
                          for row in a) for a in actions)
    self = super(GModuleData, cls).__new__(cls, group, module, reduced)
    self._check_actions()
    return self

  @property
  def l(self):
    return self.module.p

  @property
  def p(self):
    return self.group.p

  @property
  def rank(self):
    return self.module.rank

  @property
  def ring(self):
    """Coefficient ring of the ambient (Z/l^m)^n."""
    return pp_linalg.PrimePowerRing(self.l, max(self.module.exponent, 1))

  def _check_actions(self):
    exps = self.module.exponents
    l = self.l
    for idx, a in enumerate(self.actions):
      for i in range(self.rank):
        for j in range(self.rank):
          if exps[j] > exps[i] and a[i][j] % l ** (exps[j] - exps[i]):
            raise exceptions.ActionError(
                "action %d: entry (%d, %d) does not define an endomorphism",
                idx + 1, i, j)
      order = self.group.factor_orders[idx]
      if self.power(a, order) != self.identity():
        raise exceptions.ActionError(
            "action %d does not have order dividing %d", idx + 1, order)
    for a, b in itertools.combinations(self.actions, 2):
      if self.compose(a, b) != self.compose(b, a):
        raise exceptions.ActionError("action matrices do not commute")

  # Endomorphisms as reduced nested tuples.

  def reduce(self, rows):
    moduli = [self.l ** e for e in self.module.exponents]
    return tuple(tuple(int(row[j]) % moduli[j] for j in range(self.rank))
                 for row in rows)

  def identity(self):
    return self.reduce([[int(i == j) for j in range(self.rank)]
                        for i in range(self.rank)])

  def compose(self, a, b):
    """The matrix of x -> (x a) b."""
    n = self.rank
    return self.reduce([[sum(a[i][k] * b[k][j] for k in range(n))
                         for j in range(n)] for i in range(n)])

  def power(self, a, e):
    result = self.identity()
    base = a
    while e:
      if e & 1:
        result = self.compose(result, base)
      base = self.compose(base, base)
      e >>= 1
    return result

  def add(self, a, b):
    return self.reduce([[x + y for x, y in zip(r, s)] for r, s in zip(a, b)])

  def norm(self, index):
    """Sum of the powers A^t, t < |<gamma_index>|, by binary doubling."""
    a = self.actions[index]
    total = self.reduce([[0] * self.rank for _ in range(self.rank)])
    power = self.identity()
    for bit in bin(self.group.factor_orders[index])[2:]:
      # (N_k, A^k) -> (N_2k, A^2k); a set bit appends one more power.
      total = self.add(total, self.compose(total, power))
      power = self.compose(power, power)
      if bit == "1":
        total = self.add(total, power)
        power = self.compose(power, a)
    return total

  def inverse(self, index):
    a = self.actions[index]
    return self.power(a, self.group.factor_orders[index] - 1)

  def matrix(self, rows):
    return pp_linalg.PrimePowerMatrix.from_rows(self.ring, rows, self.rank)

  def relations(self):
    """Rows l^{a_j} e_j that vanish in B, skipping a_j == m."""
    m = self.ring.N
    rows = []
    for j, e in enumerate(self.module.exponents):
      if e < m:
        rows.append([self.l ** e if k == j else 0 for k in range(self.rank)])
    return pp_linalg.PrimePowerMatrix.from_rows(self.ring, rows, self.rank)

  def is_trivial_action(self):
    return all(a == self.identity() for a in self.actions)

  def descriptor(self):
    return {"group": {"p": self.p, "exponents": list(self.group.exponents)},
            "module": {"l": self.l,
                       "exponents": list(self.module.exponents)},
            "actions": [[list(row) for row in a] for a in self.actions]}


def gmodule_from_descriptor(desc):
  group = fla.FiniteAbelianPGroup(desc["group"]["p"],
                                  desc["group"].get("exponents", []))
  module = pp_linalg.AbelianGroupStructure(desc["module"]["l"],
                                           desc["module"]["exponents"])
  actions = desc.get("actions")
  if actions is None:
    actions = [[[int(i == j) for j in range(module.rank)]
                for i in range(module.rank)]] * group.rank
  return GModuleData(group, module, actions)


def trivial_gmodule(group, module):
  n = module.rank
  identity = [[int(i == j) for j in range(n)] for i in range(n)]
  return GModuleData(group, module, [identity] * group.rank)


def _components(d, degree, exterior):
  """Multi-indices nu with |nu| == degree, in lexicographic order."""
  bound = 1 if exterior else degree
  return [nu for nu in itertools.product(range(bound + 1), repeat=d)
          if sum(nu) == degree]


class CochainComplex(object):
  """Cochains of gm in degrees 0..top, inside ambients (Z/l^m)^{rank * |C^n|}.

  Attributes:
    gm: The GModuleData.
    levels: Exponents K_i of the cyclic factors the complex is built for; the
      action factors through the group, whose exponents must not exceed these.
    exterior: Keep only nu in {0,1}^d (the Koszul complex of the gamma_i - 1).
    components: components[n] lists the multi-indices of degree n.
    differentials: differentials[n] is the matrix of C^n -> C^{n+1}.
    relations: relations[n] spans the zero cochains in the ambient of C^n.
  """

  def __init__(self, gm, top, levels=None, exterior=False):
    self.gm = gm
    self.top = top
    self.exterior = exterior
    self.levels = tuple(levels or gm.group.exponents)
    if any(k < g for k, g in zip(self.levels, gm.group.exponents)):
      raise exceptions.InvalidArgument("levels %r below the group exponents",
                                       self.levels)
    d = gm.group.rank
    self.components = [_components(d, n, exterior) for n in range(top + 1)]
    self.operators = self._operators()
    self.differentials = [self._differential(n) for n in range(top)]
    self.relations = [self._relations(n) for n in range(top + 1)]

  def _operators(self):
    """(gamma_i - 1, norm at level K_i) as object arrays."""
    gm = self.gm
    ops = []
    one = numpy.array(gm.identity(), dtype=object).reshape(gm.rank, gm.rank)
    for i in range(gm.group.rank):
      a = numpy.array(gm.actions[i], dtype=object).reshape(gm.rank, gm.rank)
      scale = gm.p ** (self.levels[i] - gm.group.exponents[i])
      norm = numpy.array(gm.norm(i), dtype=object).reshape(gm.rank, gm.rank)
      ops.append((a - one, norm * scale))
    return ops

  def dimension(self, n):
    return len(self.components[n]) * self.gm.rank

  def _differential(self, n):
    gm = self.gm
    r = gm.rank
    source, target = self.components[n], self.components[n + 1]
    index = {nu: k for k, nu in enumerate(target)}
    out = numpy.zeros((len(source) * r, len(target) * r), dtype=object)
    for s, nu in enumerate(source):
      sign = 1
      for i in range(len(nu)):
        image = nu[:i] + (nu[i] + 1,) + nu[i + 1:]
        if image in index:
          minus_one, norm = self.operators[i]
          block = minus_one if nu[i] % 2 == 0 else norm
          t = index[image]
          out[s * r:(s + 1) * r, t * r:(t + 1) * r] = sign * block
        if nu[i] % 2:
          sign = -sign
    return pp_linalg.PrimePowerMatrix(gm.ring, out)

  def _relations(self, n):
    base = self.gm.relations()
    r = self.gm.rank
    count = len(self.components[n])
    rows = []
    for c in range(count):
      for row in base.array:
        full = [0] * (count * r)
        full[c * r:(c + 1) * r] = [int(x) for x in row]
        rows.append(full)
    return pp_linalg.PrimePowerMatrix.from_rows(self.gm.ring, rows,
                                                count * r)

  def cocycles(self, n):
    """Lifts to the ambient of all n-cocycles (including the relations)."""
    dim = self.dimension(n)
    ring = self.gm.ring
    if n >= self.top:
      raise exceptions.InvalidArgument("cocycles in degree %d need degree %d",
                                       n, n + 1)
    stacked = pp_linalg.stack(ring, [self.differentials[n],
                                     self.relations[n + 1]],
                              self.dimension(n + 1))
    if not dim:
      return pp_linalg.PrimePowerMatrix.zeros(ring, 0, 0)
    return pp_linalg.kernel_basis(stacked).take_columns(0, dim)

  def coboundaries(self, n):
    """Coboundaries together with the relations of C^n."""
    parts = [self.relations[n]]
    if n > 0:
      parts.insert(0, self.differentials[n - 1])
    return pp_linalg.stack(self.gm.ring, parts, self.dimension(n))

  def cohomology(self, n):
    if not self.dimension(n):
      return _trivial(self.gm.l)
    result = pp_linalg.quotient_structure(self.cocycles(n),
                                          self.coboundaries(n))
    log.debug("H^%d at levels %r: %s", n, self.levels, result)
    return result

  def composes_to_zero(self):
    """Does every d^{n+1} d^n vanish modulo the relations?"""
    for n in range(self.top - 1):
      product = self.differentials[n].multiply(self.differentials[n + 1])
      if not pp_linalg.contains_span(self.relations[n + 2], product):
        return False
    return True

  def slot_scaling(self, n, factors):
    """Diagonal matrix scaling component nu by prod factors_i^{nu_i // 2}."""
    ring = self.gm.ring
    r = self.gm.rank
    diag = []
    for nu in self.components[n]:
      s = 1
      for f, e in zip(factors, nu):
        s *= pow(f, e // 2, ring.modulus)
      diag.extend([s % ring.modulus] * r)
    out = numpy.zeros((len(diag), len(diag)), dtype=object)
    for i, s in enumerate(diag):
      out[i, i] = s
    return pp_linalg.PrimePowerMatrix(ring, out)


def cochain_complex(gm, top=3):
  return CochainComplex(gm, top)


def _check_degree(i, allowed):
  if i not in allowed:
    raise exceptions.InvalidArgument("cohomological degree %r not in %r", i,
                                     tuple(allowed))


def cohomology_groups(gm, i):
  """H^i(G, B) for i in 0, 1, 2.

  Args:
    gm: A GModuleData.
    i: The degree.

  Returns:
    An AbelianGroupStructure over the module prime.
  """
  _check_degree(i, (0, 1, 2))
  if gm.module.is_trivial():
    return _trivial(gm.l)
  return CochainComplex(gm, i + 1).cohomology(i)


def koszul_cohomology(gm, i):
  """H^i of the Koszul complex of gamma_1 - 1, ..., gamma_d - 1 on B."""
  if i < 0:
    raise exceptions.InvalidArgument("negative cohomological degree %d", i)
  if i > gm.group.rank or gm.module.is_trivial():
    return _trivial(gm.l)
  return CochainComplex(gm, i + 1, exterior=True).cohomology(i)


def coinvariants(gm):
  """B / sum_i (gamma_i - 1) B."""
  ring = gm.ring
  one = gm.identity()
  rows = [gm.relations()]
  for a in gm.actions:
    rows.append(gm.matrix([[a[i][j] - one[i][j] for j in range(gm.rank)]
                           for i in range(gm.rank)]))
  return pp_linalg.cokernel_structure(pp_linalg.stack(ring, rows, gm.rank))


def _inflation_image(gm, degree, levels, step):
  """Image of H^degree at levels in H^degree at levels + step."""
  source = CochainComplex(gm, degree + 1, levels)
  raised = [k + step for k in levels]
  target = CochainComplex(gm, degree + 1, raised)
  factor = gm.p ** step
  scaled = source.cocycles(degree).multiply(
      source.slot_scaling(degree, [factor] * gm.group.rank))
  return pp_linalg.quotient_structure(scaled, target.coboundaries(degree))


def cohomology_profinite(gm, i):
  """Continuous H^i(Z_p^d, B) for an action through the finite group of gm.

  For d = 1 the closed forms H^1 = B / (gamma - 1) B and H^2 = 0 are used.
  For d >= 2 the colimit along inflation is approximated by the image of one
  level in the next, at two consecutive pairs of levels spaced by the
  exponent of B; if they disagree the levels are raised once more.

  Raises:
    StabilizationFailure: the images never agreed.
  """
  _check_degree(i, (1, 2))
  d = gm.group.rank
  if gm.l != gm.p or d == 0 or gm.module.is_trivial():
    return _trivial(gm.l)
  if d == 1:
    return coinvariants(gm) if i == 1 else _trivial(gm.l)
  step = gm.module.exponent
  base = list(gm.group.exponents)

  def image(s):
    return _inflation_image(gm, i, [k + s * step for k in base], step)

  previous = image(0)
  for s in (1, 2):
    current = image(s)
    if current.isomorphic(previous):
      log.info("H^%d stabilized after %d level steps: %s", i, s, current)
      return current
    log.info("H^%d not yet stable at step %d: %s vs %s", i, s, previous,
             current)
    previous = current
  raise exceptions.StabilizationFailure(
      "H^%d of %s did not stabilize along inflation", i, gm.module)


def pontryagin_dual(gm):
  """The dual module with the contragredient action, in the dual basis.

  For the dual basis phi_j(e_i) = delta_ij / l^{a_j}, gamma acts on phi_j by
  phi_j o gamma^{-1}; with C the matrix of gamma^{-1} the new entry (j, i)
  is C[i][j] l^{a_i - a_j}.
  """
  exps = gm.module.exponents
  l = gm.l
  duals = []
  for index in range(gm.group.rank):
    c = gm.inverse(index)
    rows = []
    for j in range(gm.rank):
      row = []
      for i in range(gm.rank):
        if exps[i] >= exps[j]:
          row.append(c[i][j] * l ** (exps[i] - exps[j]))
        else:
          row.append(c[i][j] // l ** (exps[j] - exps[i]))
      rows.append(row)
    duals.append(rows)
  return GModuleData(gm.group, gm.module, duals)


def fixed_points(gm):
  """Lifts of B^G to the ambient."""
  return CochainComplex(gm, 1).cocycles(0)


def torsion_points(gm, k=1):
  """Lifts of B[l^k] to the ambient."""
  ring = gm.ring
  scalar = pp_linalg.PrimePowerMatrix.identity(ring, gm.rank).scale(gm.l ** k)
  stacked = pp_linalg.stack(ring, [scalar, gm.relations()], gm.rank)
  return pp_linalg.kernel_basis(stacked).take_columns(0, gm.rank)


def li_dual_pair(gm):
  """Both sides of the duality for l != p.

  Returns:
    (left, right): left is B^dual / l I B^dual for the augmentation ideal I,
    right is the subgroup B^G + B[l] (isomorphic to its own dual).

  Raises:
    HypothesisViolation: l == p.
  """
  if gm.l == gm.p:
    raise exceptions.HypothesisViolation(
        "duality needs coefficient prime %d different from group prime %d",
        gm.l, gm.p)
  if gm.module.is_trivial():
    return _trivial(gm.l), _trivial(gm.l)
  ring = gm.ring
  dual = pontryagin_dual(gm)
  one = dual.identity()
  parts = [dual.relations()]
  for a in dual.actions:
    parts.append(dual.matrix([[gm.l * (a[i][j] - one[i][j])
                               for j in range(gm.rank)]
                              for i in range(gm.rank)]))
  left = pp_linalg.cokernel_structure(pp_linalg.stack(ring, parts, gm.rank))
  sub = pp_linalg.stack(ring, [fixed_points(gm), torsion_points(gm)], gm.rank)
  right = pp_linalg.quotient_structure(sub, gm.relations())
  return left, right


class CorankDescriptor(node.Node("structure", "corank")):
  """Finite-level truncation (Z/p^N)^r of (Q_p/Z_p)^r."""
  __slots__ = ()

  def describe(self):
    if not self.corank:
      return "0"
    return "(Q_%d/Z_%d)^%d" % (self.structure.p, self.structure.p,
                               self.corank)


def corank_of_h2_trivial(gamma_rank, p, N, d=None):
  """H^2(Gamma_v, Z_p) truncated at p^N, for a decomposition group of rank."""
  if gamma_rank < 0 or (d is not None and gamma_rank > d):
    raise exceptions.InvalidArgument("decomposition rank %r out of range",
                                     gamma_rank)
  if N < 1:
    raise exceptions.InvalidArgument("truncation level must be >= 1")
  return CorankDescriptor(
      pp_linalg.AbelianGroupStructure(p, [N] * gamma_rank), gamma_rank)


def tate_h0(gm):
  """B^G / N B for cyclic G."""
  if gm.group.rank != 1:
    raise exceptions.InvalidArgument("Tate H^0 needs a cyclic group")
  if gm.module.is_trivial():
    return _trivial(gm.l)
  norm = gm.matrix(gm.norm(0))
  rel = pp_linalg.stack(gm.ring, [norm, gm.relations()], gm.rank)
  return pp_linalg.quotient_structure(fixed_points(gm), rel)


def hom_structure(group, module):
  """Hom(G, B) = sum over factor pairs of Z/gcd."""
  if group.p != module.p:
    return _trivial(module.p)
  return pp_linalg.AbelianGroupStructure(
      module.p, [min(k, a) for k in group.exponents
                 for a in module.exponents])


class BoundCheck(node.Node("h1_order", "h1_bound", "h2_order", "h2_bound")):
  """|H^1| against |B|^d at finite level, profinite |H^2| against
  |B|^{d(d-1)/2}."""
  __slots__ = ()

  def holds(self):
    return self.h1_order <= self.h1_bound and (
        self.h2_order is None or self.h2_order <= self.h2_bound)


def lemma_bound_check(gm, profinite=True):
  d = gm.group.rank
  size = gm.module.order
  h1 = cohomology_groups(gm, 1).order
  h2 = h2_bound = None
  if profinite:
    h2 = cohomology_profinite(gm, 2).order
    h2_bound = size ** (d * (d - 1) // 2)
  check = BoundCheck(h1, size ** d, h2, h2_bound)
  if not check.holds():
    log.warning("cohomology bound violated for %s: %r", gm.module, check)
  return check
