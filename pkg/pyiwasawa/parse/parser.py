# -*- coding:utf-8; python-indent:2; indent-tabs-mode:nil -*-
"""Parser & Lexer for ring-element expressions.

Grammar (usual precedence, "^" binds tightest and takes an integer exponent):

  expr : expr '+' expr | expr '-' expr | expr '*' expr | '-' expr
       | expr '^' NUMBER | '(' expr ')' | NUMBER | NAME

Juxtaposition is not multiplication: write "p*T", not "pT".
"""

# needed for ply grammar rules:
# pylint: disable=g-bad-name, g-short-docstring-punctuation
# pylint: disable=g-doc-args, g-no-space-after-docstring-summary

import logging

from ply import lex
from ply import yacc

from pyiwasawa import exceptions
from pyiwasawa.parse import expr
from pyiwasawa.parse import visitors


log = logging.getLogger(__name__)


class ExpressionSyntaxError(exceptions.InvalidArgument):
  """An expression could not be tokenized or parsed."""

  def __init__(self, msg, src, lexpos=None):
    if lexpos is not None:
      msg = "%s at column %d in %r" % (msg, lexpos + 1, src)
    else:
      msg = "%s in %r" % (msg, src)
    super(ExpressionSyntaxError, self).__init__(msg)
    self.src = src
    self.lexpos = lexpos


class ExprLexer(object):
  """Lexer for ring-element expressions."""

  tokens = (
      'CARET',
      'LPAREN',
      'MINUS',
      'NAME',
      'NUMBER',
      'PLUS',
      'RPAREN',
      'TIMES',
  )

  # The ply parsing library expects class members to be named in a specific way.
  t_CARET = r'\^|\*\*'
  t_LPAREN = r'\('
  t_MINUS = r'-'
  t_PLUS = r'\+'
  t_RPAREN = r'\)'
  t_TIMES = r'\*'
  t_ignore = ' \t'

  def __init__(self):
    self.lexer = lex.lex(module=self, debug=False)
    self.src = ''

  def t_NAME(self, t):
    r"""[A-Za-z_][A-Za-z0-9_]*"""
    return t

  def t_NUMBER(self, t):
    r"""[0-9]+"""
    t.value = int(t.value)
    return t

  def t_error(self, t):
    raise ExpressionSyntaxError("Illegal character '%s'" % t.value[0],
                                self.src, t.lexpos)


class ExprParser(object):
  """Parser for ring-element expressions."""

  precedence = (
      ('left', 'PLUS', 'MINUS'),
      ('left', 'TIMES'),
      ('right', 'UMINUS'),
      ('left', 'CARET'),
  )

  def __init__(self, **kwargs):
    self.lexer = ExprLexer()
    self.tokens = self.lexer.tokens
    self.src = ''
    self.parser = yacc.yacc(
        start='expr',
        module=self,
        debug=False,
        write_tables=False,
        errorlog=yacc.NullLogger(),
        **kwargs)

  def Parse(self, src):
    self.src = src
    self.lexer.src = src
    if not src.strip():
      raise ExpressionSyntaxError('Empty expression', src)
    return self.parser.parse(src, lexer=self.lexer.lexer)

  def p_expr_plus(self, p):
    """expr : expr PLUS expr"""
    p[0] = expr.Sum(p[1], p[3])

  def p_expr_minus(self, p):
    """expr : expr MINUS expr"""
    p[0] = expr.Difference(p[1], p[3])

  def p_expr_times(self, p):
    """expr : expr TIMES expr"""
    p[0] = expr.Product(p[1], p[3])

  def p_expr_uminus(self, p):
    """expr : MINUS expr %prec UMINUS"""
    p[0] = expr.Neg(p[2])

  def p_expr_power(self, p):
    """expr : expr CARET NUMBER"""
    p[0] = expr.Power(p[1], expr.Number(p[3]))

  def p_expr_paren(self, p):
    """expr : LPAREN expr RPAREN"""
    p[0] = p[2]

  def p_expr_number(self, p):
    """expr : NUMBER"""
    p[0] = expr.Number(p[1])

  def p_expr_name(self, p):
    """expr : NAME"""
    p[0] = expr.Symbol(p[1])

  def p_error(self, t):
    if t is None:
      raise ExpressionSyntaxError('Parse error: unexpected end', self.src)
    raise ExpressionSyntaxError('Parse error: unexpected %r' % t.value,
                                self.src, t.lexpos)


_parser = None


def parse_string(src):
  """Parse an expression into an expr tree."""
  global _parser
  if _parser is None:
    _parser = ExprParser()
  return _parser.Parse(src)


def evaluate(src, ring):
  """Parse src and evaluate it as an element of ring."""
  tree = parse_string(src)
  if log.isEnabledFor(logging.DEBUG):
    log.debug("parsed %r as %s", src, tree.Visit(visitors.PrintVisitor()))
  result = tree.Visit(visitors.EvaluateInRing(ring))
  return result.element
