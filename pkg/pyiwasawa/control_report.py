"""Bounds for the restriction maps of Selmer groups in a Z_p^d tower.

Given |E[p^inf](F_d)|, the tower rank and the local data of the bad places,
control_report bounds Ker a_n, Ker b_n and Coker b_n and classifies the local
kernels; sigma_report does the same for the Sigma-Selmer groups, where the
ramified places are excised.
"""

import logging

from pyiwasawa import errors
from pyiwasawa import exceptions
from pyiwasawa import tate_local
from pyiwasawa import utils
from pyiwasawa.parse import node


log = logging.getLogger(__name__)

FINITELY_GENERATED = "FinitelyGenerated"
FINITE_KERNELS_COKERNELS = "FiniteKernelsCokernels"
UNBOUNDED = "Unbounded"


class ControlInput(node.Node("p", "d", "torsion_order", "places", "sigma",
                             "l", "selmer_cofinitely_generated",
                             "base_sigma_selmer_finite", "j_level")):
  """Everything the control bounds depend on.

  Attributes:
    p: Characteristic of the base field.
    d: Rank of the tower.
    torsion_order: |E[p^inf](F_d)|, a power of p.
    places: Tuple of tate_local.TateLocalData, in report order.
    sigma: Tuple of place names, or None.
    l: The coefficient prime, p unless given.
    selmer_cofinitely_generated: Sel_E(F)_p is cofinitely generated over Z_p.
    base_sigma_selmer_finite: The Sigma-Selmer group over F is finite.
    j_level: tate_local.JPowerLevel.level of the j-invariant, or None.
  """
  __slots__ = ()

  def __new__(cls, p, d, torsion_order, places=(), sigma=None, l=None,
              selmer_cofinitely_generated=False,
              base_sigma_selmer_finite=False, j_level=None):
    if not utils.is_prime(p):
      raise exceptions.InvalidArgument("%r is not prime", p)
    l = p if l is None else l
    if not utils.is_prime(l):
      raise exceptions.InvalidArgument("%r is not prime", l)
    if d < 1:
      raise exceptions.InvalidArgument("tower rank must be >= 1, got %d", d)
    if utils.prime_power_exponent(torsion_order, p) is None:
      raise exceptions.InvalidArgument("torsion order %r is not a power of %d",
                                       torsion_order, p)
    places = tuple(places)
    names = [t.name for t in places]
    if len(set(names)) != len(names):
      raise exceptions.InvalidArgument("place names are not unique: %s",
                                       ", ".join(names))
    for t in places:
      if t.p != p:
        raise exceptions.InvalidArgument(
            "place %s has characteristic %d, expected %d", t.name, t.p, p)
    if sigma is not None:
      sigma = tuple(sigma)
    if j_level is not None and j_level < 0:
      raise exceptions.InvalidArgument("j level must be >= 0, got %d", j_level)
    return super(ControlInput, cls).__new__(
        cls, p, d, torsion_order, places, sigma, l,
        bool(selmer_cofinitely_generated), bool(base_sigma_selmer_finite),
        j_level)


class SigmaBlock(node.Node("lower", "upper", "cofinitely_generated",
                           "dual_torsion", "mordell_weil_finitely_generated")):
  """lower and upper are tuples of (place name, LocalKernel)."""
  __slots__ = ()

  def descriptor(self):
    return {"lower": _places_descriptor(self.lower),
            "upper": _places_descriptor(self.upper),
            "cofinitely_generated": self.cofinitely_generated,
            "dual_torsion": self.dual_torsion,
            "mordell_weil_finitely_generated":
                self.mordell_weil_finitely_generated}


class ControlReport(node.Node("ker_a_bound", "ker_b_bound", "coker_b_bound",
                              "places", "total_corank_bound", "verdict",
                              "sigma")):
  """places is a tuple of (place name, tate_local.LocalKernel)."""
  __slots__ = ()

  def kernel(self, name):
    return dict(self.places)[name]

  def descriptor(self):
    desc = {"ker_a_bound": self.ker_a_bound,
            "ker_b_bound": self.ker_b_bound,
            "coker_b_bound": self.coker_b_bound,
            "places": _places_descriptor(self.places),
            "total_corank_bound": self.total_corank_bound,
            "verdict": self.verdict}
    if self.sigma is not None:
      desc["sigma"] = self.sigma.descriptor()
    return desc


def _places_descriptor(places):
  out = []
  for name, kernel in places:
    entry = {"name": name}
    entry.update(kernel.descriptor())
    out.append(entry)
  return out


def check_hypotheses(inp):
  """Every ramified place must have split multiplicative reduction."""
  for t in inp.places:
    if t.is_ramified and not t.is_split_multiplicative:
      raise exceptions.HypothesisViolation(
          "place %s is ramified in the tower but has good reduction", t.name)


def _warn(inp, report_log):
  if inp.l != inp.p:
    return
  if inp.d >= 2:
    for t in inp.places:
      if (t.is_split_multiplicative and
          t.behavior == tate_local.UNRAMIFIED_INERT):
        report_log.unbounded_places(t.name, inp.d)
  if (inp.j_level is not None and
      inp.torsion_order > inp.p ** (2 * inp.j_level)):
    report_log.torsion_above_level(inp.torsion_order, inp.p, inp.j_level)


def _classify(inp, places):
  return tuple((t.name, tate_local.ker_dw_classify(t, inp.l, inp.d))
               for t in places)


def _bounds(inp):
  t, d = inp.torsion_order, inp.d
  return t ** d, t ** d, t ** (d * (d - 1) // 2)


def _coprime_report(inp):
  zero = tate_local.LocalKernel(tate_local.ZERO, None)
  return ControlReport(1, 1, 1, tuple((t.name, zero) for t in inp.places), 0,
                       FINITE_KERNELS_COKERNELS, None)


def control_report(inp, report_log=None):
  """Bounds for the maps of Selmer groups along the tower.

  Args:
    inp: A ControlInput.
    report_log: An errors.ReportLog collecting consistency warnings.

  Returns:
    A ControlReport with Ker a_n, Ker b_n <= t^d and Coker b_n <= t^{d(d-1)/2}
    for t = |E[p^inf](F_d)|, the local kernel of every place and the sum of
    the coranks allowed at ramified places.

  Raises:
    HypothesisViolation: If a ramified place has good reduction.
  """
  report_log = errors.ReportLog() if report_log is None else report_log
  check_hypotheses(inp)
  _warn(inp, report_log)
  if inp.l != inp.p:
    return _coprime_report(inp)
  ker_a, ker_b, coker_b = _bounds(inp)
  places = _classify(inp, inp.places)
  corank = sum(k.bound for _, k in places
               if k.kind == tate_local.CORANK_AT_MOST)
  if inp.selmer_cofinitely_generated:
    verdict = FINITELY_GENERATED
  elif any(k.kind == tate_local.CORANK_AT_MOST for _, k in places):
    verdict = UNBOUNDED
  else:
    verdict = FINITE_KERNELS_COKERNELS
  log.info("control report: d=%d t=%d verdict %s", inp.d, inp.torsion_order,
           verdict)
  return ControlReport(ker_a, ker_b, coker_b, places, corank, verdict, None)


def _upper_kernel(inp, t):
  """Ker of H^1(F_v, E[p^inf]) -> H^1(F_w, E[p^inf]).

  It is H^1 of the decomposition group with values in E(F_w)[p^inf], hence of
  order at most |E(F_w)[p^inf]|^d.
  """
  if t.local_torsion is None:
    return tate_local.LocalKernel(tate_local.FINITE_BOUNDED, None)
  return tate_local.LocalKernel(tate_local.FINITE_BOUNDED,
                                t.local_torsion ** inp.d)


def sigma_report(inp, report_log=None):
  """Bounds for the lower and upper Sigma-Selmer groups.

  With Sigma the set of ramified places, the ramified obstruction is excised:
  the lower variant drops the places of Sigma and the upper variant bounds
  them by the local torsion. Neither has a corank contribution. If Sigma is
  empty or misses a ramified bad place, the ordinary control report is
  returned.
  """
  report_log = errors.ReportLog() if report_log is None else report_log
  check_hypotheses(inp)
  sigma = inp.sigma or ()
  names = set(t.name for t in inp.places)
  extra = [name for name in sigma if name not in names]
  if extra:
    report_log.sigma_extra(extra)
  missing = [t.name for t in inp.places
             if t.is_ramified and t.name not in sigma]
  if missing:
    report_log.sigma_fallback(missing)
    return control_report(inp, report_log)
  if not sigma:
    return control_report(inp, report_log)
  _warn(inp, report_log)
  if inp.l != inp.p:
    return _coprime_report(inp)
  ker_a, ker_b, coker_b = _bounds(inp)
  outside = [t for t in inp.places if t.name not in sigma]
  lower = _classify(inp, outside)
  upper = lower + tuple((t.name, _upper_kernel(inp, t)) for t in inp.places
                        if t.name in sigma)
  base_finite = inp.base_sigma_selmer_finite
  block = SigmaBlock(lower, upper,
                     inp.selmer_cofinitely_generated or base_finite,
                     base_finite, base_finite and inp.d == 1)
  return ControlReport(ker_a, ker_b, coker_b, lower, 0,
                       FINITE_KERNELS_COKERNELS, block)


def control_input_from_descriptor(desc):
  p = desc["p"]
  return ControlInput(
      p, desc["d"], desc["torsion_order"],
      [tate_local.place_from_descriptor(place, p)
       for place in desc.get("places", [])],
      desc.get("sigma"), desc.get("l"),
      desc.get("selmer_cofinitely_generated", False),
      desc.get("base_sigma_selmer_finite", False), desc.get("j_level"))
