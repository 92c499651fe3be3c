"""Arithmetic in F_q and F_q[T].

F_q = F_p[x]/(m(x)) where m is the least monic irreducible of degree f (least
in the integer encoding sum m_i p^i). Field elements are the integers
0 <= a < q whose base-p digits are the coefficients of the representing
polynomial. Polynomials over F_q are tuples of field elements, lowest degree
first, without trailing zeros; the zero polynomial is ().
"""

import itertools
import logging

from pyiwasawa import exceptions
from pyiwasawa import utils
from pyiwasawa.parse import node


log = logging.getLogger(__name__)

MAX_FIELD_SIZE = 64


def _digits(a, p, n):
  out = []
  for _ in range(n):
    a, r = divmod(a, p)
    out.append(r)
  return out


def _undigits(digits, p):
  value = 0
  for d in reversed(digits):
    value = value * p + d
  return value


def _prime_poly_mod(a, m, p):
  """a mod m over F_p, coefficient lists lowest first, m monic."""
  a = list(a)
  n = len(m) - 1
  for i in range(len(a) - 1, n - 1, -1):
    c = a[i]
    if c:
      for j in range(n + 1):
        a[i - n + j] = (a[i - n + j] - c * m[j]) % p
  return a[:n] + [0] * (n - len(a[:n]))


def _prime_poly_irreducible(m, p):
  """Trial division of a monic polynomial over F_p by all monic factors."""
  n = len(m) - 1
  for k in range(1, n // 2 + 1):
    for low in itertools.product(range(p), repeat=k):
      if not any(_prime_poly_mod(m, list(low) + [1], p)):
        return False
  return True


class FqContext(node.Node("p", "f", "modulus")):
  """The finite field F_q, q = p^f, with its multiplication tables."""
  __slots__ = ()

  def __new__(cls, p, f, modulus=None):
    if not utils.is_prime(p):
      raise exceptions.InvalidArgument("field characteristic %r is not prime",
                                       p)
    if f < 1 or p ** f > MAX_FIELD_SIZE:
      raise exceptions.InvalidArgument("field size %d^%d out of range", p, f)
    if modulus is None:
      modulus = _least_irreducible(p, f)
    modulus = tuple(int(c) % p for c in modulus)
    if (len(modulus) != f + 1 or modulus[-1] != 1 or
        not _prime_poly_irreducible(modulus, p)):
      raise exceptions.ReducibleModulus(
          "%r is not a monic irreducible of degree %d over F_%d", modulus, f,
          p)
    return super(FqContext, cls).__new__(cls, p, f, modulus)

  @property
  def q(self):
    return self.p ** self.f

  @property
  def tables(self):
    return _tables(self)

  def elements(self):
    return range(self.q)

  def add(self, a, b):
    return self.tables[0][a][b]

  def neg(self, a):
    return self.tables[2][a]

  def sub(self, a, b):
    return self.tables[0][a][self.tables[2][b]]

  def mul(self, a, b):
    return self.tables[1][a][b]

  def inv(self, a):
    if not a:
      raise exceptions.InvalidArgument("zero has no inverse in F_%d", self.q)
    return self.tables[3][a]

  def power(self, a, e):
    result = 1
    while e:
      if e & 1:
        result = self.mul(result, a)
      a = self.mul(a, a)
      e >>= 1
    return result

  def from_int(self, c):
    """Image of the integer c under Z -> F_p -> F_q."""
    return c % self.p

  def pth_root(self, a):
    return self.power(a, self.q // self.p)

  def __str__(self):
    return "F_%d" % self.q


def _least_irreducible(p, f):
  for value in range(p ** f):
    m = _digits(value, p, f) + [1]
    if _prime_poly_irreducible(m, p):
      return tuple(m)
  raise exceptions.ReducibleModulus("no irreducible of degree %d over F_%d",
                                    f, p)


@utils.memoize
def _tables(ctx):
  """(add, mul, neg, inv) tables indexed by element encodings."""
  p, f, q = ctx.p, ctx.f, ctx.q
  digits = [_digits(a, p, f) for a in range(q)]
  add = [[_undigits([(x + y) % p for x, y in zip(digits[a], digits[b])], p)
          for b in range(q)] for a in range(q)]
  neg = [_undigits([(-x) % p for x in digits[a]], p) for a in range(q)]
  mul = []
  for a in range(q):
    row = []
    for b in range(q):
      prod = [0] * (2 * f - 1)
      for i, x in enumerate(digits[a]):
        if x:
          for j, y in enumerate(digits[b]):
            prod[i + j] = (prod[i + j] + x * y) % p
      row.append(_undigits(_prime_poly_mod(prod, ctx.modulus, p), p))
    mul.append(row)
  inv = [0] * q
  for a in range(1, q):
    inv[a] = mul[a].index(1)
  log.debug("built tables for %s", ctx)
  return add, mul, neg, inv


# Polynomials over F_q.


def normalize(a):
  a = list(a)
  while a and not a[-1]:
    a.pop()
  return tuple(a)


def degree(a):
  """Degree of a; -1 for the zero polynomial."""
  return len(a) - 1


def constant(c):
  return normalize((c,))


def monomial(c, k):
  return normalize((0,) * k + (c,))


def is_constant(a):
  return len(a) <= 1


def add(ctx, a, b):
  if len(a) < len(b):
    a, b = b, a
  return normalize([ctx.add(x, b[i]) if i < len(b) else x
                    for i, x in enumerate(a)])


def neg(ctx, a):
  return tuple(ctx.neg(x) for x in a)


def sub(ctx, a, b):
  return add(ctx, a, neg(ctx, b))


def scale(ctx, c, a):
  return normalize([ctx.mul(c, x) for x in a])


def mul(ctx, a, b):
  if not a or not b:
    return ()
  out = [0] * (len(a) + len(b) - 1)
  for i, x in enumerate(a):
    if not x:
      continue
    for j, y in enumerate(b):
      if y:
        out[i + j] = ctx.add(out[i + j], ctx.mul(x, y))
  return normalize(out)


def divmod_poly(ctx, a, b):
  """(quotient, remainder) of a by b."""
  if not b:
    raise exceptions.InvalidArgument("polynomial division by zero")
  a = list(a)
  n = len(b) - 1
  lead_inv = ctx.inv(b[-1])
  quotient = [0] * max(len(a) - n, 0)
  for i in range(len(a) - 1, n - 1, -1):
    c = a[i]
    if not c:
      continue
    c = ctx.mul(c, lead_inv)
    quotient[i - n] = c
    for j in range(n + 1):
      a[i - n + j] = ctx.sub(a[i - n + j], ctx.mul(c, b[j]))
  return normalize(quotient), normalize(a[:n])


def mod(ctx, a, b):
  return divmod_poly(ctx, a, b)[1]


def exact_div(ctx, a, b):
  quotient, remainder = divmod_poly(ctx, a, b)
  if remainder:
    raise exceptions.InvalidArgument("division is not exact")
  return quotient


def monic(ctx, a):
  if not a:
    return a
  return scale(ctx, ctx.inv(a[-1]), a)


def gcd(ctx, a, b):
  """Monic gcd; gcd(0, 0) = 0."""
  while b:
    a, b = b, mod(ctx, a, b)
  return monic(ctx, a)


def power(ctx, a, e):
  result = (1,)
  while e:
    if e & 1:
      result = mul(ctx, result, a)
    a = mul(ctx, a, a)
    e >>= 1
  return result


def powmod(ctx, a, e, m):
  result = mod(ctx, (1,), m)
  a = mod(ctx, a, m)
  while e:
    if e & 1:
      result = mod(ctx, mul(ctx, result, a), m)
    a = mod(ctx, mul(ctx, a, a), m)
    e >>= 1
  return result


def derivative(ctx, a):
  return normalize([ctx.mul(ctx.from_int(i), a[i]) for i in range(1, len(a))])


def qth_power(ctx, a):
  """a^q, which for coefficients in F_q only spreads the exponents."""
  out = [0] * (ctx.q * (len(a) - 1) + 1) if a else []
  for i, c in enumerate(a):
    out[i * ctx.q] = c
  return normalize(out)


def pth_root(ctx, a):
  """The p-th root of a polynomial in T^p."""
  if any(c for i, c in enumerate(a) if i % ctx.p):
    raise exceptions.InvalidArgument("polynomial is not a p-th power")
  return normalize([ctx.pth_root(a[i]) for i in range(0, len(a), ctx.p)])


def monic_polynomials(ctx, n):
  """All monic polynomials of degree n, in lexicographic order."""
  for low in itertools.product(range(ctx.q), repeat=n):
    yield tuple(low) + (1,)


def is_irreducible(ctx, a):
  """Trial division by every monic polynomial of degree <= deg(a) / 2."""
  n = degree(a)
  if n < 1:
    return False
  for k in range(1, n // 2 + 1):
    for g in monic_polynomials(ctx, k):
      if not mod(ctx, a, g):
        return False
  return True


def factor(ctx, a):
  """Irreducible factorization by trial division.

  Returns:
    (leading coefficient, [(monic irreducible, multiplicity), ...]) with
    factors in increasing degree, then lexicographic order.
  """
  if not a:
    raise exceptions.InvalidArgument("cannot factor zero")
  lead = a[-1]
  rest = monic(ctx, a)
  factors = []
  k = 1
  while 2 * k <= degree(rest):
    for g in monic_polynomials(ctx, k):
      count = 0
      quotient, remainder = divmod_poly(ctx, rest, g)
      while not remainder:
        rest = quotient
        count += 1
        quotient, remainder = divmod_poly(ctx, rest, g)
      if count:
        factors.append((g, count))
    k += 1
  if degree(rest) > 0:
    factors.append((rest, 1))
  return lead, _merge(factors)


def _merge(factors):
  merged = {}
  for g, m in factors:
    merged[g] = merged.get(g, 0) + m
  return sorted(merged.items(), key=lambda item: (len(item[0]), item[0][::-1]))


def squarefree_decomposition(ctx, a):
  """Write monic(a) as prod g_i^{m_i} with g_i squarefree, pairwise coprime.

  Returns:
    A list of (g, m) pairs with nonconstant g, sorted by m.
  """
  if not a:
    raise exceptions.InvalidArgument("cannot decompose zero")
  result = []
  _squarefree(ctx, monic(ctx, a), 1, result)
  merged = {}
  for g, m in result:
    merged[m] = mul(ctx, merged.get(m, (1,)), g)
  return sorted(((g, m) for m, g in merged.items()), key=lambda t: t[1])


def _squarefree(ctx, f, scale_by, out):
  if degree(f) < 1:
    return
  df = derivative(ctx, f)
  if not df:
    _squarefree(ctx, pth_root(ctx, f), scale_by * ctx.p, out)
    return
  c = gcd(ctx, f, df)
  w = exact_div(ctx, f, c)
  i = 1
  while degree(w) > 0:
    y = gcd(ctx, w, c)
    g = exact_div(ctx, w, y)
    if degree(g) > 0:
      out.append((g, i * scale_by))
    i += 1
    w = y
    c = exact_div(ctx, c, y)
  if degree(c) > 0:
    _squarefree(ctx, pth_root(ctx, c), scale_by * ctx.p, out)


def evaluate(ctx, a, x):
  result = 0
  for c in reversed(a):
    result = ctx.add(ctx.mul(result, x), c)
  return result


def format_poly(a, var="T"):
  """Render a polynomial; field elements print as their integer encodings."""
  if not a:
    return "0"
  terms = []
  for i in range(len(a) - 1, -1, -1):
    c = a[i]
    if not c:
      continue
    if i == 0:
      terms.append(str(c))
      continue
    mono = var if i == 1 else "%s^%d" % (var, i)
    terms.append(mono if c == 1 else "%d*%s" % (c, mono))
  return " + ".join(terms)


def from_coefficients(ctx, coefficients):
  """Polynomial from a list of field-element encodings, lowest first."""
  out = []
  for c in coefficients:
    c = int(c)
    if not 0 <= c < ctx.q:
      raise exceptions.InvalidArgument("%d is not an element of %s", c, ctx)
    out.append(c)
  return normalize(out)
