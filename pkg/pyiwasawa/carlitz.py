"""The Carlitz module over A = F_q[T].

Phi_T(x) = T x + x^q, extended F_q-linearly and multiplicatively. An additive
polynomial sum_i c_i x^{q^i} is stored as its coefficient tuple (c_0, c_1, ...)
of elements of A; c_0 is the operand a of Phi_a.
"""

import itertools
import logging

from pyiwasawa import config
from pyiwasawa import exceptions
from pyiwasawa import ffpoly
from pyiwasawa import pp_linalg
from pyiwasawa import utils
from pyiwasawa.parse import node


log = logging.getLogger(__name__)

T = (0, 1)


class CarlitzPolynomial(node.Node("ctx", "coefficients")):
  """Phi_a(x) = sum_i coefficients[i] x^{q^i}."""
  __slots__ = ()

  def __new__(cls, ctx, coefficients):
    coefficients = [ffpoly.normalize(c) for c in coefficients]
    while coefficients and not coefficients[-1]:
      coefficients.pop()
    return super(CarlitzPolynomial, cls).__new__(cls, ctx, tuple(coefficients))

  @property
  def operand(self):
    return self.coefficients[0] if self.coefficients else ()

  @property
  def x_degree(self):
    """Degree in x; 0 for the zero map."""
    if not self.coefficients:
      return 0
    return self.ctx.q ** (len(self.coefficients) - 1)

  def linear_coefficient(self):
    """d/dx of Phi_a, which is c_0 since every other exponent is a q-power."""
    return self.operand

  def is_separable(self):
    return bool(self.linear_coefficient())

  def format(self):
    terms = []
    for i, c in enumerate(self.coefficients):
      if not c:
        continue
      mono = "x" if i == 0 else "x^%d" % self.ctx.q ** i
      terms.append(mono if c == (1,) else "(%s)%s" % (ffpoly.format_poly(c),
                                                     mono))
    return " + ".join(terms) if terms else "0"


def _times_t(ctx, coefficients):
  """Phi_T o Phi_b from the coefficients of Phi_b."""
  out = []
  for i in range(len(coefficients) + 1):
    c = ffpoly.mul(ctx, T, coefficients[i]) if i < len(coefficients) else ()
    if i:
      c = ffpoly.add(ctx, c, ffpoly.qth_power(ctx, coefficients[i - 1]))
    out.append(c)
  return out


def carlitz_polynomial(ctx, a):
  """Phi_a for a nonzero a in F_q[T]."""
  a = ffpoly.normalize(a)
  if not a:
    raise exceptions.InvalidArgument("Phi_a is only defined here for a != 0")
  total = []
  power = [(1,)]
  for j, c in enumerate(a):
    if j:
      power = _times_t(ctx, power)
    if c:
      total = _add_coefficients(ctx, total,
                                [ffpoly.scale(ctx, c, x) for x in power])
  return CarlitzPolynomial(ctx, total)


def _add_coefficients(ctx, first, second):
  n = max(len(first), len(second))
  return [ffpoly.add(ctx, first[i] if i < len(first) else (),
                     second[i] if i < len(second) else ())
          for i in range(n)]


def _check_same_field(first, second):
  if first.ctx != second.ctx:
    raise exceptions.DimensionMismatch("Carlitz polynomials over %s and %s",
                                       first.ctx, second.ctx)


def carlitz_add(first, second):
  _check_same_field(first, second)
  return CarlitzPolynomial(first.ctx,
                           _add_coefficients(first.ctx, first.coefficients,
                                             second.coefficients))


def _frobenius_power(ctx, c, i):
  for _ in range(i):
    c = ffpoly.qth_power(ctx, c)
  return c


def carlitz_compose(first, second):
  """first o second; coefficient k is sum_{i+j=k} a_i b_j^{q^i}."""
  _check_same_field(first, second)
  ctx = first.ctx
  a, b = first.coefficients, second.coefficients
  if not a or not b:
    return CarlitzPolynomial(ctx, ())
  out = [()] * (len(a) + len(b) - 1)
  for i, ai in enumerate(a):
    if not ai:
      continue
    for j, bj in enumerate(b):
      term = ffpoly.mul(ctx, ai, _frobenius_power(ctx, bj, i))
      out[i + j] = ffpoly.add(ctx, out[i + j], term)
  return CarlitzPolynomial(ctx, out)


def carlitz_evaluate(phi, x, m):
  """Phi_a(x) in A/m."""
  ctx = phi.ctx
  if ffpoly.degree(m) < 1:
    raise exceptions.InvalidArgument("modulus must be nonconstant")
  result = ()
  power = ffpoly.mod(ctx, x, m)
  for i, c in enumerate(phi.coefficients):
    if i:
      power = ffpoly.powmod(ctx, power, ctx.q, m)
    result = ffpoly.add(ctx, result, ffpoly.mul(ctx, c, power))
  return ffpoly.mod(ctx, result, m)


def _check_prime(ctx, prime, n):
  prime = ffpoly.normalize(prime)
  if n < 1:
    raise exceptions.InvalidArgument("level n must be >= 1, got %d", n)
  if not prime or prime[-1] != 1 or not ffpoly.is_irreducible(ctx, prime):
    raise exceptions.ReducibleModulus(
        "%s is not a monic irreducible of %s[T]", ffpoly.format_poly(prime),
        ctx)
  return prime


class TorsionLayer(node.Node("torsion_count", "galois_order", "zp_part_order",
                             "prime_to_p_order", "separable")):
  __slots__ = ()

  def descriptor(self):
    return dict(self._asdict())


def torsion_layer(ctx, prime, n):
  """Sizes attached to Phi[prime^n] and Gal(F(Phi[prime^n])/F) = (A/prime^n)*.

  Args:
    ctx: The constant field.
    prime: A monic irreducible polynomial in F_q[T].
    n: The level, >= 1.

  Returns:
    A TorsionLayer.

  Raises:
    ReducibleModulus: If prime is not monic irreducible.
    SizeCapExceeded: If q^{n deg prime} is above the torsion count cap.
  """
  prime = _check_prime(ctx, prime, n)
  deg = ffpoly.degree(prime)
  torsion_count = ctx.q ** (n * deg)
  config.check_cap("Phi[prime^n]", torsion_count, config.max_torsion_count())
  zp_part = ctx.q ** ((n - 1) * deg)
  prime_to_p = ctx.q ** deg - 1
  # Phi_{prime^n} has linear coefficient prime^n != 0, hence no repeated roots.
  separable = bool(ffpoly.power(ctx, prime, n))
  log.info("torsion layer %s^%d over %s: %d points",
           ffpoly.format_poly(prime), n, ctx, torsion_count)
  return TorsionLayer(torsion_count, zp_part * prime_to_p, zp_part,
                      prime_to_p, separable)


class UnitGroupStructure(node.Node("order", "sylow")):
  """A finite abelian group given by its Sylow subgroups.

  sylow is a tuple of pp_linalg.AbelianGroupStructure, one per prime dividing
  the order, in increasing order of primes.
  """
  __slots__ = ()

  def sylow_subgroup(self, r):
    for s in self.sylow:
      if s.p == r:
        return s
    return pp_linalg.AbelianGroupStructure(r, ())

  @property
  def invariant_factors(self):
    """d_1 | d_2 | ... with the group isomorphic to the sum of Z/d_i."""
    columns = [list(reversed(s.invariant_factors)) for s in self.sylow]
    width = max([len(c) for c in columns] or [0])
    factors = []
    for i in range(width):
      d = 1
      for c in columns:
        if i < len(c):
          d *= c[i]
      factors.append(d)
    return tuple(reversed(factors))

  def descriptor(self):
    return {"order": self.order,
            "invariant_factors": list(self.invariant_factors),
            "sylow": [s.descriptor() for s in self.sylow]}

  def __str__(self):
    if not self.invariant_factors:
      return "0"
    return " + ".join("Z/%d" % d for d in self.invariant_factors)


def residues(ctx, m):
  """All polynomials of degree < deg m."""
  for digits in itertools.product(range(ctx.q), repeat=ffpoly.degree(m)):
    yield ffpoly.normalize(reversed(digits))


def unit_group_structure(ctx, prime, n):
  """Structure of (A/prime^n)* from a census of power maps.

  For every prime r dividing the group order, |G[r^k]| is counted for
  k = 1, 2, ... until it reaches the full Sylow order; the differences of
  log_r |G[r^k]| give the number of cyclic factors of order >= r^k.
  """
  prime = _check_prime(ctx, prime, n)
  m = ffpoly.power(ctx, prime, n)
  size = ctx.q ** ffpoly.degree(m)
  config.check_cap("A/prime^n", size, config.max_unit_residues())
  units = [x for x in residues(ctx, m) if ffpoly.mod(ctx, x, prime)]
  order = len(units)
  sylow = []
  for r, e in utils.factor_integer(order):
    # killed[k] = |G[r^k]|
    killed = [1] + [0] * e
    for x in units:
      y = x
      for k in range(1, e + 1):
        y = ffpoly.powmod(ctx, y, r, m)
        if y == (1,):
          for j in range(k, e + 1):
            killed[j] += 1
          break
    at_least = [utils.valuation(killed[k], r) - utils.valuation(
        killed[k - 1], r) for k in range(1, e + 1)]
    exponents = []
    for k in range(1, e + 1):
      above = at_least[k] if k < e else 0
      exponents.extend([k] * (at_least[k - 1] - above))
    sylow.append(pp_linalg.AbelianGroupStructure(r, exponents))
  if log.isEnabledFor(logging.DEBUG):
    log.debug("(A/%s^%d)* has order %d", ffpoly.format_poly(prime), n, order)
  return UnitGroupStructure(order, tuple(sylow))
