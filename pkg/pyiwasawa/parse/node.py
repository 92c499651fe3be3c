# -*- coding:utf-8; python-indent:2; indent-tabs-mode:nil -*-
"""Immutable value types built on collections.namedtuple.

Reports, local data and expression trees are all Node subclasses:

  class Sum(Node("left", "right")):
    __slots__ = ()

Unlike a bare namedtuple, a Node only equals instances of its own class, its
repr() carries the class name, and expression trees can be rewritten with
Visit() (see visitors.Visitor).
"""

import collections


def _default_visit(self, visitor, *args, **kwargs):
  """Rewrite this tree bottom-up; see visitors.Visitor."""
  return _visit(self, visitor, args, kwargs)


def Node(*field_names):
  """Create a new Node base class with the given fields."""
  base = collections.namedtuple("_", field_names)

  class ValueNode(base):
    __slots__ = ()

    def __eq__(self, other):
      return self is other or (self.__class__ is other.__class__ and
                               tuple.__eq__(self, other))

    def __ne__(self, other):
      return not self == other

    def __hash__(self):
      return hash((self.__class__.__name__, tuple(self)))

    def __repr__(self):
      name = self.__class__.__name__
      if len(self) == 1:
        return "%s(%r)" % (name, self[0])
      return "%s%r" % (name, tuple(self))

    Visit = _default_visit  # pylint: disable=invalid-name

  return ValueNode


def _visit_children(children, visitor, args, kwargs):
  """Visit each child; returns None if no child changed."""
  out = [_visit(child, visitor, args, kwargs) for child in children]
  if all(new is old for new, old in zip(out, children)):
    return None
  return out


def _visit(value, visitor, args, kwargs):
  if type(value) is tuple:
    changed = _visit_children(value, visitor, args, kwargs)
    return value if changed is None else tuple(changed)
  if not hasattr(value, "Visit"):
    return value
  cls = value.__class__
  if cls.Visit is not _default_visit:
    return value.Visit(visitor, *args, **kwargs)
  changed = _visit_children(value, visitor, args, kwargs)
  result = value if changed is None else cls(*changed)
  visitor.old_node = value
  if cls.__name__ in visitor.visit_functions:
    result = visitor.Visit(result, *args, **kwargs)
  del visitor.old_node
  return result
