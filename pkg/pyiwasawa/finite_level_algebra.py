"""Finite-level models of Iwasawa algebras and their ideals.

Three ring kinds are supported:

  group_ring   Z/l^N[G] for a finite abelian p-group G (l = p or l != p)
  trunc_poly   Z/p^N[T_1..T_d] / (T_1^M, ..., T_d^M)
  cyclic_poly  Z/p^N[T] / ((1+T)^{p^k} - 1), the image of Z/p^N[Z/p^k]
               under g -> 1 + T

Elements are tuples of residues indexed by the ring's basis (group elements
or monomials in lexicographic order). Ideals are stored through the Howell
form of their Z/l^N-span.
"""

import itertools
import logging

import numpy

from pyiwasawa import config
from pyiwasawa import exceptions
from pyiwasawa import pp_linalg
from pyiwasawa import utils
from pyiwasawa.parse import node
from pyiwasawa.parse import parser


log = logging.getLogger(__name__)

GROUP_RING = "group_ring"
TRUNC_POLY = "trunc_poly"
CYCLIC_POLY = "cyclic_poly"


class FiniteAbelianPGroup(node.Node("p", "exponents")):
  """G = Z/p^{k_1} x ... x Z/p^{k_d}; elements are exponent vectors."""
  __slots__ = ()

  def __new__(cls, p, exponents):
    if not utils.is_prime(p):
      raise exceptions.InvalidArgument("group prime %r is not prime", p)
    exponents = tuple(int(k) for k in exponents)
    if any(k < 1 for k in exponents):
      raise exceptions.InvalidArgument(
          "cyclic factor exponents must be >= 1, got %r", exponents)
    return super(FiniteAbelianPGroup, cls).__new__(cls, p, exponents)

  @property
  def rank(self):
    return len(self.exponents)

  @property
  def order(self):
    return self.p ** sum(self.exponents)

  @property
  def factor_orders(self):
    return tuple(self.p ** k for k in self.exponents)

  def elements(self):
    return list(itertools.product(*[range(n) for n in self.factor_orders]))

  def add(self, x, y):
    return tuple((a + b) % n for a, b, n in zip(x, y, self.factor_orders))

  def generators(self):
    return [tuple(int(i == j) for j in range(self.rank))
            for i in range(self.rank)]

  def structure(self):
    return pp_linalg.AbelianGroupStructure(self.p, self.exponents)

  def raised(self, step):
    """The group with every exponent increased by step."""
    return FiniteAbelianPGroup(self.p, [k + step for k in self.exponents])


class FiniteLevelRing(object):
  """A finite commutative ring with a fixed Z/l^N-basis.

  Attributes:
    kind: GROUP_RING, TRUNC_POLY or CYCLIC_POLY.
    coeff: The PrimePowerRing of coefficients.
    group: The FiniteAbelianPGroup (group rings only).
    variables: Number of polynomial variables (polynomial kinds).
    degree_cap: M for trunc_poly, p^k for cyclic_poly.
    basis: Tuple of exponent vectors, in lexicographic order.
  """

  def __init__(self, kind, coeff, basis, group=None, variables=0,
               degree_cap=0):
    self.kind = kind
    self.coeff = coeff
    self.group = group
    self.variables = variables
    self.degree_cap = degree_cap
    self.basis = tuple(basis)
    self.rank = len(self.basis)
    config.check_cap("ring %s" % self.describe(), self.rank * coeff.modulus,
                     config.max_ring_cardinality())
    self._index = {b: i for i, b in enumerate(self.basis)}
    self._products = self._build_products()
    log.info("built %s of rank %d", self.describe(), self.rank)

  # Construction

  def _build_products(self):
    """products[i][j] is a list of (index, coefficient) for b_i * b_j."""
    table = []
    if self.kind == GROUP_RING:
      for x in self.basis:
        table.append([[(self._index[self.group.add(x, y)], 1)]
                      for y in self.basis])
    elif self.kind == TRUNC_POLY:
      m = self.degree_cap
      for x in self.basis:
        row = []
        for y in self.basis:
          z = tuple(a + b for a, b in zip(x, y))
          row.append([(self._index[z], 1)] if all(e < m for e in z) else [])
        table.append(row)
    else:
      reduced = self._cyclic_power_reductions()
      n = self.rank
      for i in range(n):
        table.append([[(k, c) for k, c in enumerate(reduced[i + j]) if c]
                      for j in range(n)])
    return table

  def _cyclic_power_reductions(self):
    """Coefficient vectors of T^s mod (1+T)^n - 1 for s < 2n - 1."""
    n, q = self.rank, self.coeff.modulus
    binomials = [1]
    for s in range(1, n + 1):
      binomials.append(binomials[-1] * (n - s + 1) // s)
    # T^n == -sum_{1 <= s < n} C(n, s) T^s
    top = [0] + [(-binomials[s]) % q for s in range(1, n)]
    powers = []
    for s in range(2 * n - 1):
      if s < n:
        powers.append([int(s == i) for i in range(n)])
        continue
      prev = powers[-1]
      shifted = [0] + prev[:-1]
      lead = prev[-1]
      powers.append([(a + lead * b) % q for a, b in zip(shifted, top)])
    return powers

  # Identity

  def key(self):
    if self.kind == GROUP_RING:
      return (self.kind, self.coeff, self.group)
    return (self.kind, self.coeff, self.variables, self.degree_cap)

  def __eq__(self, other):
    return isinstance(other, FiniteLevelRing) and self.key() == other.key()

  def __ne__(self, other):
    return not self == other

  def __hash__(self):
    return hash(self.key())

  def describe(self):
    c = self.coeff
    if self.kind == GROUP_RING:
      return "Z/%d^%d[%s]" % (c.p, c.N, " x ".join(
          "Z/%d" % n for n in self.group.factor_orders) or "1")
    elif self.kind == TRUNC_POLY:
      return "Z/%d^%d[T1..T%d]/(T^%d)" % (c.p, c.N, self.variables,
                                          self.degree_cap)
    return "Z/%d^%d[T]/((1+T)^%d-1)" % (c.p, c.N, self.degree_cap)

  def __repr__(self):
    return "FiniteLevelRing(%s)" % self.describe()

  def descriptor(self):
    c = self.coeff
    if self.kind == GROUP_RING:
      return {"kind": GROUP_RING, "l": c.p, "N": c.N, "p": self.group.p,
              "exponents": list(self.group.exponents)}
    elif self.kind == TRUNC_POLY:
      return {"kind": TRUNC_POLY, "p": c.p, "N": c.N, "d": self.variables,
              "M": self.degree_cap}
    return {"kind": CYCLIC_POLY, "p": c.p, "N": c.N,
            "k": utils.prime_power_exponent(self.degree_cap, c.p)}

  def is_polynomial(self):
    return self.kind in (TRUNC_POLY, CYCLIC_POLY)

  # Elements

  def zero(self):
    return (0,) * self.rank

  def basis_element(self, i):
    return tuple(int(i == j) for j in range(self.rank))

  def one(self):
    return self.basis_element(0)

  def constant(self, c):
    return self.scale(c, self.one())

  def element(self, coefficients):
    if len(coefficients) != self.rank:
      raise exceptions.DimensionMismatch(
          "element of length %d in a ring of rank %d", len(coefficients),
          self.rank)
    q = self.coeff.modulus
    return tuple(int(c) % q for c in coefficients)

  def variable(self, i):
    """T_{i+1} for polynomial rings, g_{i+1} for group rings."""
    if self.kind == GROUP_RING:
      if not 0 <= i < self.group.rank:
        raise exceptions.InvalidArgument("no group generator g%d", i + 1)
      return self.basis_element(self._index[self.group.generators()[i]])
    if not 0 <= i < self.variables:
      raise exceptions.InvalidArgument("no variable T%d", i + 1)
    exps = tuple(int(j == i) for j in range(self.variables))
    if self.kind == CYCLIC_POLY:
      exps = (1,)
    if exps not in self._index:
      return self.zero()  # T^1 vanishes when M == 1
    return self.basis_element(self._index[exps])

  def symbol(self, name):
    """Resolve a symbol of the expression language."""
    if name == "l":
      return self.constant(self.coeff.p)
    if name == "p":
      return self.constant(self.group.p if self.kind == GROUP_RING
                           else self.coeff.p)
    prefix = "g" if self.kind == GROUP_RING else "T"
    count = self.group.rank if self.kind == GROUP_RING else self.variables
    if name == prefix and count == 1:
      return self.variable(0)
    if name.startswith(prefix) and name[1:].isdigit():
      return self.variable(int(name[1:]) - 1)
    raise exceptions.InvalidArgument("unknown symbol %r in %s", name,
                                     self.describe())

  def add(self, x, y):
    q = self.coeff.modulus
    return tuple((a + b) % q for a, b in zip(x, y))

  def subtract(self, x, y):
    q = self.coeff.modulus
    return tuple((a - b) % q for a, b in zip(x, y))

  def negate(self, x):
    q = self.coeff.modulus
    return tuple((-a) % q for a in x)

  def scale(self, c, x):
    q = self.coeff.modulus
    return tuple((c * a) % q for a in x)

  def multiply(self, x, y):
    q = self.coeff.modulus
    out = [0] * self.rank
    ys = [(j, b) for j, b in enumerate(y) if b]
    for i, a in enumerate(x):
      if not a:
        continue
      row = self._products[i]
      for j, b in ys:
        for k, c in row[j]:
          out[k] += a * b * c
    return tuple(v % q for v in out)

  def multiply_by_basis(self, x, j):
    q = self.coeff.modulus
    out = [0] * self.rank
    for i, a in enumerate(x):
      if a:
        for k, c in self._products[i][j]:
          out[k] += a * c
    return tuple(v % q for v in out)

  def power(self, x, k):
    if k < 0:
      raise exceptions.InvalidArgument("negative exponent %d", k)
    result = self.one()
    base = x
    while k:
      if k & 1:
        result = self.multiply(result, base)
      base = self.multiply(base, base)
      k >>= 1
    return result

  def is_zero(self, x):
    return not any(x)

  def augmentation(self, x):
    """Sum of coefficients (group rings): the image under g -> 1."""
    return sum(x) % self.coeff.modulus

  def residue(self, x):
    """Image in the residue field Z/l of the maximal ideal (l, T) / (l, g-1)."""
    if self.kind == GROUP_RING:
      return self.augmentation(x) % self.coeff.p
    return x[0] % self.coeff.p

  def parse(self, text):
    return parser.evaluate(text, self)

  def format(self, x):
    """Human-readable text that parse() reads back."""
    terms = []
    for b, c in zip(self.basis, x):
      if not c:
        continue
      factors = []
      if self.kind == GROUP_RING:
        names = (["g"] if self.group.rank == 1 else
                 ["g%d" % (i + 1) for i in range(self.group.rank)])
      else:
        names = (["T"] if len(b) == 1 else
                 ["T%d" % (i + 1) for i in range(len(b))])
      for name, e in zip(names, b):
        if e == 1:
          factors.append(name)
        elif e:
          factors.append("%s^%d" % (name, e))
      if not factors:
        terms.append(str(c))
      elif c == 1:
        terms.append("*".join(factors))
      else:
        terms.append("%d*%s" % (c, "*".join(factors)))
    return " + ".join(terms) if terms else "0"


def _check_footprint(what, rank, coeff):
  """Cap check run before a basis of the given rank is materialized."""
  config.check_cap(what, rank * coeff.modulus, config.max_ring_cardinality())


def group_ring(l, N, group):
  """Z/l^N[G]."""
  coeff = pp_linalg.PrimePowerRing(l, N)
  if not isinstance(group, FiniteAbelianPGroup):
    raise exceptions.InvalidArgument("group ring needs a FiniteAbelianPGroup")
  _check_footprint("group ring Z/%d^%d[G] with |G| = %d" % (l, N, group.order),
                   group.order, coeff)
  return FiniteLevelRing(GROUP_RING, coeff, group.elements(), group=group)


def trunc_poly(p, N, d, M):
  """Z/p^N[T_1..T_d] / (T_1^M, ..., T_d^M)."""
  coeff = pp_linalg.PrimePowerRing(p, N)
  if d < 0 or M < 1:
    raise exceptions.InvalidArgument("need d >= 0 and M >= 1, got d=%r M=%r",
                                     d, M)
  _check_footprint("truncated ring Z/%d^%d[T1..T%d]/(T^%d)" % (p, N, d, M),
                   M ** d, coeff)
  basis = itertools.product(range(M), repeat=d)
  return FiniteLevelRing(TRUNC_POLY, coeff, basis, variables=d, degree_cap=M)


def cyclic_poly(p, N, k):
  """Z/p^N[T] / ((1+T)^{p^k} - 1)."""
  coeff = pp_linalg.PrimePowerRing(p, N)
  if k < 0:
    raise exceptions.InvalidArgument("cyclic exponent must be >= 0")
  n = p ** k
  _check_footprint("cyclic ring Z/%d^%d[T]/((1+T)^%d-1)" % (p, N, n), n, coeff)
  return FiniteLevelRing(CYCLIC_POLY, coeff, [(i,) for i in range(n)],
                         variables=1, degree_cap=n)


def ring_from_descriptor(desc):
  kind = desc.get("kind")
  if kind == GROUP_RING:
    group = FiniteAbelianPGroup(desc["p"], desc.get("exponents", []))
    return group_ring(desc["l"], desc["N"], group)
  elif kind == TRUNC_POLY:
    return trunc_poly(desc["p"], desc["N"], desc["d"], desc["M"])
  elif kind == CYCLIC_POLY:
    return cyclic_poly(desc["p"], desc["N"], desc["k"])
  raise exceptions.InvalidArgument("unknown ring kind %r", kind)


def ring_multiply(a, b, ring):
  return ring.multiply(a, b)


def _check_cyclic_group_ring(ring):
  if (ring.kind != GROUP_RING or ring.group.rank != 1 or
      ring.group.p != ring.coeff.p):
    raise exceptions.DimensionMismatch(
        "need Z/p^N[Z/p^k] with a single cyclic factor, got %s",
        ring.describe())


def polynomial_ring_for(ring):
  """The cyclic_poly ring isomorphic to a cyclic group ring."""
  _check_cyclic_group_ring(ring)
  return cyclic_poly(ring.coeff.p, ring.coeff.N, ring.group.exponents[0])


def group_ring_to_polynomial(x, ring, target=None):
  """Image of x under g^i -> (1 + T)^i.

  Args:
    x: An element of ring.
    ring: A group ring Z/p^N[Z/p^k].
    target: The cyclic_poly ring; built if not given.

  Returns:
    The image element of target.
  """
  _check_cyclic_group_ring(ring)
  target = target or polynomial_ring_for(ring)
  one_plus_t = target.add(target.one(), target.variable(0))
  result = target.zero()
  image = target.one()
  for i in range(ring.rank):
    if x[i]:
      result = target.add(result, target.scale(x[i], image))
    image = target.multiply(image, one_plus_t)
  return result


def polynomial_to_group_ring(y, target, ring):
  """Inverse of group_ring_to_polynomial: T^i -> (g - 1)^i."""
  _check_cyclic_group_ring(ring)
  if target.kind != CYCLIC_POLY or target.rank != ring.rank:
    raise exceptions.DimensionMismatch("%s is not the polynomial model of %s",
                                       target.describe(), ring.describe())
  g_minus_one = ring.subtract(ring.variable(0), ring.one())
  result = ring.zero()
  image = ring.one()
  for i in range(target.rank):
    if y[i]:
      result = ring.add(result, ring.scale(y[i], image))
    image = ring.multiply(image, g_minus_one)
  return result


class RingIdeal(object):
  """An ideal of a FiniteLevelRing.

  Attributes:
    ring: The ambient ring.
    generators: Tuple of elements generating the ideal.
    span_basis: Howell form (rank x rank) of the Z/l^N-span of the ideal.
  """

  def __init__(self, ring, generators, span_basis):
    self.ring = ring
    self.generators = tuple(generators)
    self.span_basis = span_basis
    self._rows = None

  def _span_rows(self):
    if self._rows is None:
      self._rows = [r for r in self.span_basis.array if r.any()]
    return self._rows

  def span_elements_as_ring_elements(self):
    return [tuple(int(x) for x in r) for r in self._span_rows()]

  @property
  def cardinality(self):
    return pp_linalg.span_cardinality(self.span_basis)

  def is_zero(self):
    return self.span_basis.is_zero()

  def is_unit(self):
    return self.contains(self.ring.one())

  def contains(self, x):
    return pp_linalg.contains_vector(self.span_basis, x)

  def issubset(self, other):
    self._check_same_ring(other)
    return pp_linalg.contains_span(other.span_basis, self.span_basis)

  def _check_same_ring(self, other):
    if self.ring != other.ring:
      raise exceptions.DimensionMismatch(
          "ideals of %s and %s", self.ring.describe(), other.ring.describe())

  def __eq__(self, other):
    return (isinstance(other, RingIdeal) and self.ring == other.ring and
            self.span_basis == other.span_basis)

  def __ne__(self, other):
    return not self == other

  def __hash__(self):
    return hash(self.span_basis)

  def check_ideal(self):
    """Verify the span is closed under multiplication by the basis."""
    for r in self.span_elements_as_ring_elements():
      for j in range(self.ring.rank):
        if not self.contains(self.ring.multiply_by_basis(r, j)):
          return False
    return True

  def minimal_generators(self):
    """Generators, replaced by the span rows when those are fewer."""
    rows = self.span_elements_as_ring_elements()
    if len(rows) < len(self.generators):
      return rows
    return list(self.generators)

  def sum(self, other):
    self._check_same_ring(other)
    span = pp_linalg.howell_form(pp_linalg.stack(
        self.ring.coeff, [self.span_basis, other.span_basis], self.ring.rank))
    return RingIdeal(self.ring, self.generators + other.generators, span)

  def product(self, other):
    self._check_same_ring(other)
    gens = [self.ring.multiply(a, b) for a in self.minimal_generators()
            for b in other.minimal_generators()]
    return ideal_span(self.ring, utils.dedup(gens))

  def intersect(self, other):
    self._check_same_ring(other)
    _, inter = pp_linalg.submodule_compare(self.span_basis, other.span_basis)
    ideal = RingIdeal(self.ring, (), inter)
    ideal.generators = tuple(ideal.span_elements_as_ring_elements())
    return ideal

  def power(self, k):
    if k < 1:
      raise exceptions.InvalidArgument("ideal power needs k >= 1, got %d", k)
    result = self
    for _ in range(k - 1):
      result = result.product(self)
    return result

  def quotient_order(self, sub):
    """|self / sub| for sub contained in self."""
    if not sub.issubset(self):
      raise exceptions.InvalidArgument("not a subideal")
    return self.cardinality // sub.cardinality

  def descriptor(self):
    return {"ring": self.ring.descriptor(),
            "generators": [self.ring.format(g) for g in
                           self.minimal_generators()],
            "span_cardinality": self.cardinality}

  def __repr__(self):
    return "RingIdeal(%s, [%s])" % (self.ring.describe(), ", ".join(
        self.ring.format(g) for g in self.minimal_generators()))


def _span_basis(ring, rows):
  if rows:
    return pp_linalg.howell_form(pp_linalg.PrimePowerMatrix(
        ring.coeff, numpy.array(rows, dtype=object)))
  return pp_linalg.howell_form(pp_linalg.PrimePowerMatrix.zeros(ring.coeff, 0,
                                                                ring.rank))


def ideal_span(ring, generators):
  """The ideal generated by generators (a possibly empty list of elements)."""
  generators = [ring.element(g) for g in generators]
  rows = [ring.multiply_by_basis(g, j) for g in generators
          for j in range(ring.rank) if any(g)]
  return RingIdeal(ring, generators, _span_basis(ring, rows))


def zero_ideal(ring):
  return ideal_span(ring, [])


def unit_ideal(ring):
  return ideal_span(ring, [ring.one()])


def augmentation_ideal_power(ring, k):
  """I^k for the augmentation ideal I of a group ring.

  Args:
    ring: A group ring.
    k: A positive integer.

  Returns:
    A RingIdeal.

  Raises:
    DimensionMismatch: ring is not a group ring.
    InvalidArgument: k < 1.
  """
  if ring.kind != GROUP_RING:
    raise exceptions.DimensionMismatch(
        "augmentation ideal needs a group ring, got %s", ring.describe())
  if k < 1:
    raise exceptions.InvalidArgument("augmentation ideal power needs k >= 1")
  gens = [ring.subtract(ring.variable(i), ring.one())
          for i in range(ring.group.rank)]
  ideal = ideal_span(ring, gens)
  return ideal.power(k)
