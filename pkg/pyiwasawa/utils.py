"""Generic functions."""

import functools
import os
import re
import shutil
import tempfile
import textwrap


def memoize(f):
  """Cache results of a function of hashable positional arguments."""
  cache = {}

  @functools.wraps(f)
  def wrapper(*args):
    try:
      return cache[args]
    except KeyError:
      result = cache[args] = f(*args)
      return result
  wrapper.cache = cache
  return wrapper


def numeric_sort_key(s):
  return tuple((int(e) if e.isdigit() else e) for e in re.split(r"(\d+)", s))


def dedup(seq):
  """Return a sequence in the same order, but with duplicates removed."""
  seen = set()
  result = []
  for s in seq:
    if s not in seen:
      result.append(s)
    seen.add(s)
  return result


def is_prime(n):
  """Deterministic trial division."""
  if n < 2:
    return False
  if n % 2 == 0:
    return n == 2
  f = 3
  while f * f <= n:
    if n % f == 0:
      return False
    f += 2
  return True


def factor_integer(n):
  """Factor a positive integer by trial division.

  Args:
    n: A positive integer.

  Returns:
    A list of (prime, exponent) pairs in increasing order of primes.
  """
  assert n >= 1
  result = []
  f = 2
  while f * f <= n:
    e = 0
    while n % f == 0:
      n //= f
      e += 1
    if e:
      result.append((f, e))
    f += 1 if f == 2 else 2
  if n > 1:
    result.append((n, 1))
  return result


def valuation(n, p):
  """p-adic valuation of a nonzero integer."""
  assert n != 0
  v = 0
  while n % p == 0:
    n //= p
    v += 1
  return v


def prime_power_exponent(n, p):
  """Return k with n == p**k, or None if n is not a power of p."""
  if n < 1:
    return None
  k = 0
  while n % p == 0:
    n //= p
    k += 1
  return k if n == 1 else None


class Tempdir(object):
  """Context handler for creating temporary directories."""

  def __enter__(self):
    self.path = tempfile.mkdtemp()
    return self

  def create_directory(self, filename):
    """Create a subdirectory in the temporary directory."""
    path = os.path.join(self.path, filename)
    os.makedirs(path, exist_ok=True)
    return path

  def create_file(self, filename, indented_data=None):
    """Create a file in the temporary directory. Also dedents the contents."""
    filedir, filename = os.path.split(filename)
    if filedir:
      self.create_directory(filedir)
    path = os.path.join(self.path, filedir, filename)
    with open(path, "w") as fi:
      if indented_data:
        fi.write(textwrap.dedent(indented_data))
    return path

  def __exit__(self, error_type, value, tb):
    shutil.rmtree(path=self.path)
    return False  # reraise any exceptions
