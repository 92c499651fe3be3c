"""Finitely presented modules over finite-level rings.

A ModulePresentation with an a x b matrix describes the cokernel of
Lambda^a -> Lambda^b (relations are rows). This module computes Fitting
ideals, characteristic ideals of elementary modules, projections between
levels of a tower, pro-Fitting intersections and minimal generator counts.
"""

import itertools
import logging

import numpy

from pyiwasawa import exceptions
from pyiwasawa import finite_level_algebra as fla
from pyiwasawa import pp_linalg
from pyiwasawa import utils
from pyiwasawa.parse import node


log = logging.getLogger(__name__)

MAX_MINOR_SIZE = 5

# Results of fitt_char_compare.
EQUAL = "Equal"
FITT_INSIDE_CHAR = "FittInsideChar"
OTHER = "Other"

# Results of tower_fitting_compare.
CONTAINED = "Contained"


class ModulePresentation(object):
  """coker(Lambda^a -> Lambda^b), relations given as the rows of matrix."""

  def __init__(self, ring, matrix, b=None):
    rows = [tuple(ring.element(x) for x in row) for row in matrix]
    if b is None:
      if not rows:
        raise exceptions.DimensionMismatch(
            "generator count needed for a presentation without relations")
      b = len(rows[0])
    if any(len(row) != b for row in rows):
      raise exceptions.DimensionMismatch("relation rows must have %d entries",
                                         b)
    self.ring = ring
    self.matrix = tuple(rows)
    self.a = len(rows)
    self.b = b

  def __eq__(self, other):
    return (isinstance(other, ModulePresentation) and
            self.ring == other.ring and self.b == other.b and
            self.matrix == other.matrix)

  def __ne__(self, other):
    return not self == other

  def __hash__(self):
    return hash((self.ring, self.b, self.matrix))

  def __repr__(self):
    return "ModulePresentation(%s, %dx%d)" % (self.ring.describe(), self.a,
                                              self.b)

  def descriptor(self):
    return {"ring": self.ring.descriptor(), "generators": self.b,
            "relations": [[self.ring.format(x) for x in row]
                          for row in self.matrix]}


class ElementaryModuleSpec(node.Node("ring", "free_rank", "torsion_factors")):
  """Lambda^r + sum_i Lambda/(g_i^{e_i}).

  torsion_factors is a tuple of (g_i, e_i) pairs with g_i a ring element.
  """
  __slots__ = ()

  def __new__(cls, ring, free_rank, torsion_factors):
    if free_rank < 0:
      raise exceptions.InvalidArgument("free rank must be >= 0")
    factors = []
    for g, e in torsion_factors:
      g = ring.element(g)
      if e < 1:
        raise exceptions.InvalidArgument("multiplicity must be >= 1, got %d",
                                         e)
      if ring.is_zero(g):
        raise exceptions.InvalidArgument("torsion factor must be nonzero")
      if fla.ideal_span(ring, [g]).is_unit():
        raise exceptions.InvalidArgument("torsion factor %s is a unit",
                                         ring.format(g))
      factors.append((g, int(e)))
    return super(ElementaryModuleSpec, cls).__new__(
        cls, ring, int(free_rank), tuple(factors))


def determinant(ring, matrix):
  """Determinant by cofactor expansion along the first row."""
  n = len(matrix)
  if n == 0:
    return ring.one()
  if n == 1:
    return matrix[0][0]
  if n == 2:
    return ring.subtract(ring.multiply(matrix[0][0], matrix[1][1]),
                         ring.multiply(matrix[0][1], matrix[1][0]))
  result = ring.zero()
  for j in range(n):
    entry = matrix[0][j]
    if ring.is_zero(entry):
      continue
    minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
    term = ring.multiply(entry, determinant(ring, minor))
    result = ring.add(result, term) if j % 2 == 0 else ring.subtract(result,
                                                                      term)
  return result


def fitting_ideal(pres):
  """The ideal generated by all b x b minors of the presentation.

  Args:
    pres: A ModulePresentation.

  Returns:
    A RingIdeal; the zero ideal when a < b and the unit ideal when b == 0.

  Raises:
    InvalidArgument: b is larger than MAX_MINOR_SIZE.
  """
  ring = pres.ring
  if pres.b == 0:
    return fla.unit_ideal(ring)
  if pres.a < pres.b:
    return fla.zero_ideal(ring)
  if pres.b > MAX_MINOR_SIZE:
    raise exceptions.InvalidArgument(
        "Fitting ideal needs b <= %d generators, got %d", MAX_MINOR_SIZE,
        pres.b)
  minors = []
  for rows in itertools.combinations(range(pres.a), pres.b):
    det = determinant(ring, [pres.matrix[i] for i in rows])
    if not ring.is_zero(det):
      minors.append(det)
  log.debug("%d nonzero %dx%d minors", len(minors), pres.b, pres.b)
  return fla.ideal_span(ring, utils.dedup(minors))


def characteristic_ideal(spec):
  """(prod g_i^{e_i}) for torsion elementary modules, (0) otherwise."""
  ring = spec.ring
  if spec.free_rank > 0:
    return fla.zero_ideal(ring)
  generator = ring.one()
  for g, e in spec.torsion_factors:
    generator = ring.multiply(generator, ring.power(g, e))
  return fla.ideal_span(ring, [generator])


def elementary_presentation(spec):
  """Block-diagonal presentation: free columns first, then g_i^{e_i}."""
  ring = spec.ring
  r = spec.free_rank
  b = r + len(spec.torsion_factors)
  rows = []
  for i, (g, e) in enumerate(spec.torsion_factors):
    row = [ring.zero()] * b
    row[r + i] = ring.power(g, e)
    rows.append(row)
  return ModulePresentation(ring, rows, b)


def direct_sum(first, second):
  """Block-diagonal presentation of the direct sum."""
  if first.ring != second.ring:
    raise exceptions.DimensionMismatch("presentations over different rings")
  ring = first.ring
  rows = [list(row) + [ring.zero()] * second.b for row in first.matrix]
  rows += [[ring.zero()] * first.b + list(row) for row in second.matrix]
  return ModulePresentation(ring, rows, first.b + second.b)


def _relation_module(pres):
  """Z/l^N-span of all relation multiples, inside Lambda^b flattened."""
  ring = pres.ring
  width = pres.b * ring.rank
  rows = []
  for relation in pres.matrix:
    for j in range(ring.rank):
      rows.append([c for x in relation
                   for c in ring.multiply_by_basis(x, j)])
  if not rows:
    return pp_linalg.PrimePowerMatrix.zeros(ring.coeff, 0, width)
  return pp_linalg.PrimePowerMatrix(ring.coeff, numpy.array(rows,
                                                            dtype=object))


def module_structure(pres):
  """The presented module as an abelian l-group."""
  return pp_linalg.cokernel_structure(_relation_module(pres))


def module_order(pres):
  return module_structure(pres).order


def annihilates(pres, f):
  """Does the ring element f kill every generator of the module?"""
  ring = pres.ring
  relations = _relation_module(pres)
  for j in range(pres.b):
    vector = []
    for i in range(pres.b):
      vector.extend(f if i == j else ring.zero())
    if not pp_linalg.contains_vector(relations, vector):
      return False
  return True


def _check_tower_rings(source, target):
  if source.coeff != target.coeff or source.kind != target.kind:
    raise exceptions.DimensionMismatch(
        "%s and %s are not levels of one tower", source.describe(),
        target.describe())
  if source.kind == fla.TRUNC_POLY:
    if source.degree_cap != target.degree_cap:
      raise exceptions.DimensionMismatch("truncation degrees differ")
    big, small = source.variables, target.variables
  elif source.kind == fla.GROUP_RING:
    n = target.group.rank
    if (source.group.p != target.group.p or
        source.group.exponents[:n] != target.group.exponents):
      raise exceptions.DimensionMismatch(
          "%s is not a quotient of %s", target.describe(), source.describe())
    big, small = source.group.rank, n
  else:
    raise exceptions.DimensionMismatch("projections need trunc_poly or "
                                       "group_ring, got %s", source.kind)
  if small >= big:
    raise exceptions.DimensionMismatch(
        "projection must drop at least one variable (%d -> %d)", big, small)


def projected_ring(ring, keep):
  """The level-keep ring of the tower ring belongs to."""
  if ring.kind == fla.TRUNC_POLY:
    return fla.trunc_poly(ring.coeff.p, ring.coeff.N, keep, ring.degree_cap)
  elif ring.kind == fla.GROUP_RING:
    group = fla.FiniteAbelianPGroup(ring.group.p, ring.group.exponents[:keep])
    return fla.group_ring(ring.coeff.p, ring.coeff.N, group)
  raise exceptions.DimensionMismatch("no tower structure on %s",
                                     ring.describe())


def project_element(x, source, target):
  """T_j -> 0 (or g_j -> 1) for the dropped variables."""
  keep = target.variables if source.is_polynomial() else target.group.rank
  out = [0] * target.rank
  index = {b: i for i, b in enumerate(target.basis)}
  for b, c in zip(source.basis, x):
    if not c:
      continue
    if source.kind == fla.TRUNC_POLY:
      if any(b[keep:]):
        continue
    out[index[b[:keep]]] += c
  return target.element(out)


def lift_element(x, source, target):
  """Inverse-direction inclusion Lambda_d -> Lambda_e (monomials unchanged)."""
  extra = len(target.basis[0]) - len(source.basis[0])
  index = {b: i for i, b in enumerate(target.basis)}
  out = [0] * target.rank
  for b, c in zip(source.basis, x):
    if c:
      out[index[b + (0,) * extra]] = c
  return target.element(out)


def project_ideal(ideal, keep):
  """Image of ideal under the projection to the level-keep ring."""
  source = ideal.ring
  target = projected_ring(source, keep)
  _check_tower_rings(source, target)
  images = [project_element(g, source, target) for g in ideal.generators]
  return fla.ideal_span(target, images)


def preimage_ideal(ideal, target):
  """Full preimage in target of an ideal of a lower level."""
  source = ideal.ring
  _check_tower_rings(target, source)
  gens = [lift_element(g, source, target) for g in ideal.generators]
  if target.kind == fla.TRUNC_POLY:
    gens += [target.variable(j)
             for j in range(source.variables, target.variables)]
  else:
    gens += [target.subtract(target.variable(j), target.one())
             for j in range(source.group.rank, target.group.rank)]
  return fla.ideal_span(target, gens)


def project_presentation(pres, keep):
  """The presentation with every entry projected to level keep."""
  source = pres.ring
  target = projected_ring(source, keep)
  _check_tower_rings(source, target)
  rows = [[project_element(x, source, target) for x in row]
          for row in pres.matrix]
  return ModulePresentation(target, rows, pres.b)


def pro_fitting_intersection(ideals):
  """Intersection of ideals of one ambient ring."""
  if not ideals:
    raise exceptions.InvalidArgument("need at least one ideal")
  result = ideals[0]
  for ideal in ideals[1:]:
    if ideal.ring != result.ring:
      raise exceptions.DimensionMismatch(
          "ideals of %s and %s", result.ring.describe(), ideal.ring.describe())
    result = result.intersect(ideal)
  return result


def min_generators(pres):
  """dim over Z/l of M / mM, the minimal number of generators of M."""
  ring = pres.ring
  residue_field = pp_linalg.PrimePowerRing(ring.coeff.p, 1)
  if not pres.a or not pres.b:
    return pres.b
  reduced = pp_linalg.PrimePowerMatrix.from_rows(
      residue_field, [[ring.residue(x) for x in row] for row in pres.matrix],
      pres.b)
  rank = len([r for r in pp_linalg.howell_form(reduced).array if r.any()])
  return pres.b - rank


def fitt_char_compare(pres=None, spec=None, char=None):
  """Compare Fitt(M) with Char(M).

  Args:
    pres: A presentation of M; defaults to the elementary presentation of
      spec.
    spec: An ElementaryModuleSpec; gives Char(M) if char is not passed.
    char: A claimed characteristic ideal.

  Returns:
    EQUAL, FITT_INSIDE_CHAR or OTHER.
  """
  if pres is None:
    if spec is None:
      raise exceptions.InvalidArgument("need a presentation or a spec")
    pres = elementary_presentation(spec)
  if char is None:
    if spec is None:
      raise exceptions.InvalidArgument("need a spec or a claimed Char")
    char = characteristic_ideal(spec)
  fitt = fitting_ideal(pres)
  if fitt == char:
    return EQUAL
  elif fitt.issubset(char):
    return FITT_INSIDE_CHAR
  return OTHER


class TowerComparison(node.Node("relation", "equality_expected")):
  __slots__ = ()


def tower_fitting_compare(upper, lower, principal_or_torsion_free=False):
  """Compare the projection of Fitt(upper) with Fitt(lower).

  upper presents a module over Lambda_e, lower one over Lambda_d with d < e.
  The flag records the branch (trivial p-torsion or principal Fitting ideal)
  under which equality is expected rather than containment.

  Returns:
    TowerComparison(relation, equality_expected); relation is EQUAL,
    CONTAINED (projection inside Fitt(lower)) or OTHER.
  """
  keep = (lower.ring.variables if lower.ring.is_polynomial()
          else lower.ring.group.rank)
  projected = project_ideal(fitting_ideal(upper), keep)
  target = fitting_ideal(lower)
  if projected.ring != target.ring:
    raise exceptions.DimensionMismatch("lower level ring mismatch")
  if projected == target:
    relation = EQUAL
  elif projected.issubset(target):
    relation = CONTAINED
  else:
    relation = OTHER
  return TowerComparison(relation, bool(principal_or_torsion_free))


class PseudoNullWitness(node.Node("annihilates_first", "annihilates_second",
                                  "coprime_supports", "independent")):
  """Outcome of a pseudo-null witness check."""
  __slots__ = ()

  def accepted(self):
    return all(self)


def _polynomial_view(ring, x):
  if ring.is_polynomial():
    return ring, x
  target = fla.polynomial_ring_for(ring)
  return target, fla.group_ring_to_polynomial(x, ring, target)


def leading_support(ring, x):
  """(v_p of the content, min exponent of each variable) of a nonzero x."""
  ring, x = _polynomial_view(ring, x)
  terms = [(b, c) for b, c in zip(ring.basis, x) if c]
  if not terms:
    raise exceptions.InvalidArgument("zero has no support")
  content = min(ring.coeff.valuation(c) for _, c in terms)
  mins = tuple(min(b[i] for b, _ in terms) for i in range(len(ring.basis[0])))
  return (content,) + mins


def pseudo_null_witness(pres, f, g):
  """Check f, g as a witness that the presented module is pseudo-null.

  Both must annihilate the module, their leading supports must be coprime
  (no common power of p or common variable divides both), and neither may
  lie in the principal ideal of the other. This is a heuristic check at
  finite level, not a decision procedure.
  """
  ring = pres.ring
  if ring.is_zero(f) or ring.is_zero(g):
    return PseudoNullWitness(False, False, False, False)
  sf, sg = leading_support(ring, f), leading_support(ring, g)
  coprime = all(min(a, b) == 0 for a, b in zip(sf, sg))
  independent = (not fla.ideal_span(ring, [f]).contains(g) and
                 not fla.ideal_span(ring, [g]).contains(f))
  return PseudoNullWitness(annihilates(pres, f), annihilates(pres, g),
                           coprime, independent)
