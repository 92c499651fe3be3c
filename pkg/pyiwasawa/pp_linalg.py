"""Exact linear algebra over the chain ring Z/p^N.

Matrices are dense numpy arrays of residues. Row spans are compared through
the Howell normal form, which is canonical over Z/p^N; module structure comes
from the Smith normal form.
"""

import logging

import numpy

from pyiwasawa import exceptions
from pyiwasawa import utils
from pyiwasawa.parse import node


log = logging.getLogger(__name__)

MAX_PRIME = 10 ** 4
MAX_PRECISION = 16

# Relations returned by submodule_compare.
EQUAL = "Equal"
A_CONTAINS_B = "AcontainsB"
B_CONTAINS_A = "BcontainsA"
INCOMPARABLE = "Incomparable"

# numpy int64 arithmetic is exact below this modulus: products of two
# residues summed over fewer than 2**22 terms stay below 2**62.
_INT64_MODULUS_LIMIT = 2 ** 20


class PrimePowerRing(node.Node("p", "N")):
  """The residue ring Z/p^N."""
  __slots__ = ()

  def __new__(cls, p, N):
    if not isinstance(p, int) or not utils.is_prime(p) or p > MAX_PRIME:
      raise exceptions.InvalidArgument("%r is not a prime <= %d", p, MAX_PRIME)
    if not isinstance(N, int) or not 1 <= N <= MAX_PRECISION:
      raise exceptions.InvalidArgument(
          "precision %r not in [1, %d]", N, MAX_PRECISION)
    return super(PrimePowerRing, cls).__new__(cls, p, N)

  @property
  def modulus(self):
    return self.p ** self.N

  @property
  def dtype(self):
    return numpy.int64 if self.modulus < _INT64_MODULUS_LIMIT else object

  def reduce(self, x):
    return int(x) % self.modulus

  def valuation(self, x):
    """p-adic valuation of a residue; N for zero."""
    x = int(x) % self.modulus
    if x == 0:
      return self.N
    return utils.valuation(x, self.p)

  def unit_inverse(self, u):
    return pow(int(u), -1, self.modulus)

  def __str__(self):
    return "Z/%d^%d" % (self.p, self.N)


class PrimePowerMatrix(object):
  """An immutable dense matrix over a PrimePowerRing."""

  def __init__(self, ring, array):
    array = numpy.asarray(array)
    if array.ndim != 2:
      raise exceptions.DimensionMismatch("matrix must be two-dimensional")
    array = numpy.array(array % ring.modulus, dtype=ring.dtype)
    array.flags.writeable = False
    self.ring = ring
    self.array = array

  @classmethod
  def from_rows(cls, ring, rows, cols=None):
    rows = [[int(x) for x in row] for row in rows]
    if cols is None:
      if not rows:
        raise exceptions.DimensionMismatch(
            "column count needed for an empty row list")
      cols = len(rows[0])
    if any(len(row) != cols for row in rows):
      raise exceptions.DimensionMismatch("rows of unequal length")
    array = numpy.zeros((len(rows), cols), dtype=object)
    for i, row in enumerate(rows):
      for j, x in enumerate(row):
        array[i, j] = x
    return cls(ring, array)

  @classmethod
  def zeros(cls, ring, rows, cols):
    return cls(ring, numpy.zeros((rows, cols), dtype=ring.dtype))

  @classmethod
  def identity(cls, ring, n):
    return cls(ring, numpy.eye(n, dtype=ring.dtype))

  @property
  def rows(self):
    return self.array.shape[0]

  @property
  def cols(self):
    return self.array.shape[1]

  def entries(self):
    return tuple(tuple(int(x) for x in row) for row in self.array)

  def row(self, i):
    return tuple(int(x) for x in self.array[i])

  def nonzero_rows(self):
    return PrimePowerMatrix(self.ring,
                            self.array[[bool(r.any()) for r in self.array]]
                            if self.rows else self.array)

  def _check_same_ring(self, other):
    if self.ring != other.ring:
      raise exceptions.DimensionMismatch(
          "matrices over %s and %s", self.ring, other.ring)

  def multiply(self, other):
    self._check_same_ring(other)
    if self.cols != other.rows:
      raise exceptions.DimensionMismatch(
          "cannot multiply %dx%d by %dx%d", self.rows, self.cols,
          other.rows, other.cols)
    return PrimePowerMatrix(self.ring, self.array.dot(other.array))

  def add(self, other):
    self._check_same_ring(other)
    if self.array.shape != other.array.shape:
      raise exceptions.DimensionMismatch("shape mismatch in matrix addition")
    return PrimePowerMatrix(self.ring, self.array + other.array)

  def negate(self):
    return PrimePowerMatrix(self.ring, -self.array)

  def scale(self, c):
    c = int(c) % self.ring.modulus
    return PrimePowerMatrix(self.ring, self.array * c)

  def transpose(self):
    return PrimePowerMatrix(self.ring, self.array.T)

  def take_columns(self, start, stop):
    return PrimePowerMatrix(self.ring, self.array[:, start:stop])

  def is_zero(self):
    return not self.array.any()

  def __eq__(self, other):
    return (isinstance(other, PrimePowerMatrix) and self.ring == other.ring and
            self.array.shape == other.array.shape and
            bool((self.array == other.array).all()))

  def __ne__(self, other):
    return not self == other

  def __hash__(self):
    return hash((self.ring, self.array.shape, self.entries()))

  def __repr__(self):
    return "PrimePowerMatrix(%s, %r)" % (self.ring, [list(r) for r in
                                                     self.entries()])


def stack(ring, matrices, cols):
  """Vertical concatenation; matrices may be empty."""
  parts = []
  for m in matrices:
    if m.ring != ring:
      raise exceptions.DimensionMismatch("matrices over %s and %s",
                                         ring, m.ring)
    if m.cols != cols:
      raise exceptions.DimensionMismatch(
          "ambient column counts %d and %d differ", cols, m.cols)
    if m.rows:
      parts.append(m.array)
  if not parts:
    return PrimePowerMatrix.zeros(ring, 0, cols)
  return PrimePowerMatrix(ring, numpy.concatenate(parts, axis=0))


class AbelianGroupStructure(node.Node("p", "exponents")):
  """The finite abelian p-group  Z/p^{a_1} + ... + Z/p^{a_r},  a_1 <= a_2 <= ...

  Exponents are stored sorted; every exponent is >= 1.
  """
  __slots__ = ()

  def __new__(cls, p, exponents):
    exponents = tuple(sorted(int(a) for a in exponents))
    if any(a < 1 for a in exponents):
      raise exceptions.InvalidArgument("invariant factor exponents must be "
                                       ">= 1, got %r", exponents)
    return super(AbelianGroupStructure, cls).__new__(cls, p, exponents)

  @property
  def invariant_factors(self):
    return tuple(self.p ** a for a in self.exponents)

  @property
  def order(self):
    return self.p ** sum(self.exponents)

  @property
  def rank(self):
    return len(self.exponents)

  @property
  def exponent(self):
    """Largest a with Z/p^a a factor; 0 for the trivial group."""
    return self.exponents[-1] if self.exponents else 0

  def is_trivial(self):
    return not self.exponents

  def isomorphic(self, other):
    if self.is_trivial() or other.is_trivial():
      return self.is_trivial() and other.is_trivial()
    return self.p == other.p and self.exponents == other.exponents

  def descriptor(self):
    return {"p": self.p, "invariant_factors": list(self.invariant_factors)}

  @classmethod
  def from_descriptor(cls, desc):
    return abelian_group_from_factors(desc["p"], desc["invariant_factors"])

  def __str__(self):
    if not self.exponents:
      return "0"
    return " + ".join("Z/%d" % f for f in self.invariant_factors)


def abelian_group_from_factors(p, invariant_factors):
  exponents = []
  for f in invariant_factors:
    a = utils.prime_power_exponent(int(f), p)
    if a is None:
      raise exceptions.InvalidArgument("%r is not a power of %d", f, p)
    if a:
      exponents.append(a)
  return AbelianGroupStructure(p, exponents)


def _howell_rows(m):
  """Compute the nonzero rows of the Howell form of m.

  Returns:
    A list of (pivot_column, pivot_valuation, row) triples, with rows as
    numpy vectors, ordered by pivot column.
  """
  ring = m.ring
  q = ring.modulus
  p, N = ring.p, ring.N
  work = [numpy.array(r, dtype=ring.dtype) for r in m.array if r.any()]
  pivots = []
  for col in range(m.cols):
    if not work:
      break
    best, best_v = None, N
    for idx, r in enumerate(work):
      v = ring.valuation(r[col])
      if v < best_v:
        best, best_v = idx, v
    if best is None:
      continue
    pivot = work.pop(best)
    pv = p ** best_v
    unit = int(pivot[col]) // pv
    if unit != 1:
      pivot = (pivot * ring.unit_inverse(unit)) % q
    new_work = []
    for r in work:
      c = int(r[col])
      if c:
        r = (r - (c // pv) * pivot) % q
      if r.any():
        new_work.append(r)
    if best_v:
      annihilated = (pivot * p ** (N - best_v)) % q
      if annihilated.any():
        new_work.append(annihilated)
    work = new_work
    pivots.append([col, best_v, pivot])
  # Reduce entries above each pivot into [0, p^v).
  for i, (col, v, r) in enumerate(pivots):
    pv = p ** v
    for k in range(i):
      c = int(pivots[k][2][col])
      if c >= pv:
        pivots[k][2] = (pivots[k][2] - (c // pv) * r) % q
  return [tuple(t) for t in pivots]


def howell_form(m):
  """Canonical form of the row span of m.

  The result is square (cols x cols): the nonzero Howell rows in pivot order
  followed by zero rows. Two matrices with the same ambient column count
  have equal row spans iff their Howell forms are equal.

  Args:
    m: A PrimePowerMatrix.

  Returns:
    A PrimePowerMatrix.
  """
  rows = _howell_rows(m)
  out = numpy.zeros((m.cols, m.cols), dtype=m.ring.dtype)
  for i, (_, _, r) in enumerate(rows):
    out[i] = r
  return PrimePowerMatrix(m.ring, out)


def span_cardinality(m):
  ring = m.ring
  return ring.p ** sum(ring.N - v for _, v, _ in _howell_rows(m))


def _reduce_by_rows(ring, rows, vector):
  q = ring.modulus
  vec = numpy.array(vector, dtype=ring.dtype) % q
  for col, v, r in rows:
    c = int(vec[col])
    if not c:
      continue
    pv = ring.p ** v
    if c % pv:
      return vec
    vec = (vec - (c // pv) * r) % q
  return vec


def contains_vector(m, vector):
  """Is vector in the row span of m?"""
  if len(vector) != m.cols:
    raise exceptions.DimensionMismatch(
        "vector of length %d in ambient of rank %d", len(vector), m.cols)
  return not _reduce_by_rows(m.ring, _howell_rows(m), vector).any()


def contains_span(a, b):
  """Is span(b) a subset of span(a)?"""
  rows = _howell_rows(a)
  return all(not _reduce_by_rows(a.ring, rows, r).any() for r in b.array)


def smith_normal_form(m):
  """Smith normal form over Z/p^N.

  Args:
    m: A PrimePowerMatrix with r rows and c columns.

  Returns:
    A tuple (U, D, V) of PrimePowerMatrix with U (r x r) and V (c x c)
    invertible, U*m*V == D, D diagonal with entries p^{a_1} | p^{a_2} | ...
    (units are 1, zeros last).
  """
  ring = m.ring
  p, q = ring.p, ring.modulus
  r, c = m.rows, m.cols
  a = numpy.array(m.array, dtype=ring.dtype)
  u = numpy.eye(r, dtype=ring.dtype)
  v = numpy.eye(c, dtype=ring.dtype)
  for t in range(min(r, c)):
    best, best_v = None, ring.N
    for i in range(t, r):
      for j in range(t, c):
        val = ring.valuation(a[i, j])
        if val < best_v:
          best, best_v = (i, j), val
      if best_v == 0:
        break
    if best is None:
      break
    i, j = best
    if i != t:
      a[[t, i]] = a[[i, t]]
      u[[t, i]] = u[[i, t]]
    if j != t:
      a[:, [t, j]] = a[:, [j, t]]
      v[:, [t, j]] = v[:, [j, t]]
    pv = p ** best_v
    unit = int(a[t, t]) // pv
    if unit != 1:
      inv = ring.unit_inverse(unit)
      a[t] = (a[t] * inv) % q
      u[t] = (u[t] * inv) % q
    for i2 in range(t + 1, r):
      x = int(a[i2, t])
      if x:
        f = x // pv
        a[i2] = (a[i2] - f * a[t]) % q
        u[i2] = (u[i2] - f * u[t]) % q
    for j2 in range(t + 1, c):
      x = int(a[t, j2])
      if x:
        f = x // pv
        a[:, j2] = (a[:, j2] - f * a[:, t]) % q
        v[:, j2] = (v[:, j2] - f * v[:, t]) % q
  return (PrimePowerMatrix(ring, u), PrimePowerMatrix(ring, a),
          PrimePowerMatrix(ring, v))


def kernel_basis(m):
  """Left kernel {x : x*m == 0}, as a Howell form (rows x rows)."""
  ring = m.ring
  augmented = numpy.concatenate(
      [numpy.asarray(m.array, dtype=ring.dtype),
       numpy.eye(m.rows, dtype=ring.dtype)], axis=1)
  rows = _howell_rows(PrimePowerMatrix(ring, augmented))
  kernel = [r[m.cols:] for col, _, r in rows if col >= m.cols]
  if not kernel:
    return PrimePowerMatrix.zeros(ring, m.rows, m.rows)
  return howell_form(PrimePowerMatrix(ring, numpy.array(kernel)))


def intersection(a, b):
  """Howell form of span(a) & span(b)."""
  ring = a.ring
  ha = howell_form(a).nonzero_rows()
  hb = howell_form(b).nonzero_rows()
  if not ha.rows or not hb.rows:
    return PrimePowerMatrix.zeros(ring, a.cols, a.cols)
  k = kernel_basis(stack(ring, [ha, hb.negate()], a.cols))
  return howell_form(k.take_columns(0, ha.rows).multiply(ha))


def submodule_compare(a, b):
  """Compare the row spans of a and b.

  Returns:
    (relation, intersection): relation is one of EQUAL, A_CONTAINS_B,
    B_CONTAINS_A, INCOMPARABLE; intersection is the Howell form of the
    intersection of the spans.

  Raises:
    DimensionMismatch: if the rings or ambient column counts differ.
  """
  if a.ring != b.ring:
    raise exceptions.DimensionMismatch("spans over %s and %s", a.ring, b.ring)
  if a.cols != b.cols:
    raise exceptions.DimensionMismatch(
        "ambient ranks %d and %d differ", a.cols, b.cols)
  a_has_b = contains_span(a, b)
  b_has_a = contains_span(b, a)
  if a_has_b and b_has_a:
    return EQUAL, howell_form(a)
  elif a_has_b:
    return A_CONTAINS_B, howell_form(b)
  elif b_has_a:
    return B_CONTAINS_A, howell_form(a)
  return INCOMPARABLE, intersection(a, b)


def cokernel_structure(m):
  """Structure of (Z/p^N)^cols / span(m)."""
  ring = m.ring
  _, d, _ = smith_normal_form(m)
  exponents = []
  for t in range(m.cols):
    if t < min(m.rows, m.cols):
      e = ring.valuation(d.array[t, t])
    else:
      e = ring.N
    if e:
      exponents.append(e)
  return AbelianGroupStructure(ring.p, exponents)


def quotient_structure(sub, rel):
  """Structure of (span(sub) + span(rel)) / span(rel)."""
  ring = sub.ring
  gens = howell_form(sub).nonzero_rows()
  if not gens.rows:
    return AbelianGroupStructure(ring.p, ())
  rels = howell_form(rel).nonzero_rows()
  k = kernel_basis(stack(ring, [gens, rels], sub.cols))
  result = cokernel_structure(k.take_columns(0, gens.rows))
  if log.isEnabledFor(logging.DEBUG):
    log.debug("quotient of %d generators by %d relations: %s",
              gens.rows, rels.rows, result)
  return result
