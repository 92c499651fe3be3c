# -*- coding:utf-8; python-indent:2; indent-tabs-mode:nil -*-
"""AST for ring-element expressions such as "p*T1 + T2^2" or "(g - 1)^3"."""

from pyiwasawa.parse import node


class Number(node.Node("value")):
  """An integer literal."""
  __slots__ = ()


class Symbol(node.Node("name")):
  """A ring generator (T, T1, g2, ...) or the coefficient prime "p"."""
  __slots__ = ()


class Neg(node.Node("operand")):
  __slots__ = ()


class Sum(node.Node("left", "right")):
  __slots__ = ()


class Difference(node.Node("left", "right")):
  __slots__ = ()


class Product(node.Node("left", "right")):
  __slots__ = ()


class Power(node.Node("base", "exponent")):
  """base ^ exponent, with a nonnegative integer exponent."""
  __slots__ = ()


class Value(node.Node("element")):
  """An evaluated ring element, produced while folding a tree."""
  __slots__ = ()
