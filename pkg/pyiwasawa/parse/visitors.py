# -*- coding:utf-8; python-indent:2; indent-tabs-mode:nil -*-
"""Visitor(s) for walking expression trees."""

from pyiwasawa.parse import expr


class Visitor(object):
  """Base class for visitors.

  A subclass defines VisitFoo(self, node) for each node class Foo it rewrites;
  nodes are visited bottom-up, after their children.

  Attributes:
    visit_functions: A dictionary mapping node class names to the
      corresponding Visit functions.
  """
  _visitor_functions_cache = {}

  def __init__(self):
    cls = self.__class__
    if cls not in Visitor._visitor_functions_cache:
      Visitor._visitor_functions_cache[cls] = {
          attr[len("Visit"):]: getattr(cls, attr) for attr in dir(cls)
          if attr.startswith("Visit") and attr != "Visit"}
    self.visit_functions = Visitor._visitor_functions_cache[cls]

  def Visit(self, node, *args, **kwargs):
    return self.visit_functions[node.__class__.__name__](
        self, node, *args, **kwargs)


class PrintVisitor(Visitor):
  """Converts an expression tree back to text."""

  def VisitNumber(self, node):
    return str(node.value)

  def VisitSymbol(self, node):
    return node.name

  def VisitNeg(self, node):
    return "-(%s)" % node.operand

  def VisitSum(self, node):
    return "(%s + %s)" % (node.left, node.right)

  def VisitDifference(self, node):
    return "(%s - %s)" % (node.left, node.right)

  def VisitProduct(self, node):
    return "%s*%s" % (node.left, node.right)

  def VisitPower(self, node):
    return "%s^%s" % (node.base, node.exponent)


class EvaluateInRing(Visitor):
  """Folds an expression tree into a ring element.

  The ring must provide constant(), symbol(name), add(), subtract(),
  multiply(), negate() and power(). Every node is replaced by an
  expr.Value holding the element; the caller unwraps the root.
  """

  def __init__(self, ring):
    super(EvaluateInRing, self).__init__()
    self.ring = ring

  def VisitNumber(self, node):
    return expr.Value(self.ring.constant(node.value))

  def VisitSymbol(self, node):
    return expr.Value(self.ring.symbol(node.name))

  def VisitNeg(self, node):
    return expr.Value(self.ring.negate(node.operand.element))

  def VisitSum(self, node):
    return expr.Value(self.ring.add(node.left.element, node.right.element))

  def VisitDifference(self, node):
    return expr.Value(
        self.ring.subtract(node.left.element, node.right.element))

  def VisitProduct(self, node):
    return expr.Value(
        self.ring.multiply(node.left.element, node.right.element))

  def VisitPower(self, node):
    # The exponent stays a literal Number; it was folded to a Value, so read
    # the integer back from the original tree.
    return expr.Value(self.ring.power(node.base.element,
                                      self.old_node.exponent.value))
