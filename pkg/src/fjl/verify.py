"""Named exact checks, one per inequality or identity of the construction.

Each check returns a :class:`CheckReport` whose margin is an exact
rational, positive when the check passes. Inequalities contribute their
slack; identities contribute nothing while they hold and make the margin
negative (minus the discrepancy) when they do not.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from decimal import Context, Decimal
from fractions import Fraction
from typing import Callable, Iterable, Optional

from fjl import kernels
from fjl.dynamics import BUDGET, marty_lower_bound, orbit_modulus_margin
from fjl.exact import (QBox, box_of_rect, pow2, rat, rat_to_json,
                       rect_contains)
from fjl.geometry import (CELLS, DEFAULT, Construction, affine_apply, phi,
                          square_P, square_Q, square_R, square_S)
from fjl.tree import level_measure, level_summary

REPORT_VERSION = 1
DEFAULT_PRECISION = 12


class CheckError(RuntimeError):
    def __init__(self, check_id: str, cause: BaseException):
        super().__init__(f"check {check_id} aborted: {cause!r}")
        self.check_id = check_id


@dataclass(frozen=True)
class CheckReport:
    id: str
    params: tuple
    statement: str
    margin: Fraction
    verdict: str
    # zero margin accepted because the hypothesis itself is strict
    strict_zero: bool = False
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self, precision: int = DEFAULT_PRECISION) -> dict:
        return {
            "id": self.id,
            "params": list(self.params),
            "statement": self.statement,
            "margin": rat_to_json(self.margin),
            "margin_approx": decimal_str(self.margin, precision),
            "verdict": self.verdict,
            "strict_zero": self.strict_zero,
            "details": {k: _detail_json(v) for k, v in self.details.items()},
        }


def _detail_json(v):
    if isinstance(v, Fraction):
        return str(v)
    return v


def decimal_str(q: Fraction, precision: int = DEFAULT_PRECISION) -> str:
    ctx = Context(prec=precision)
    return str(ctx.divide(Decimal(q.numerator), Decimal(q.denominator)))


def report_precision() -> int:
    raw = os.environ.get("FJL_REPORT_PRECISION")
    return int(raw) if raw else DEFAULT_PRECISION


class _Ledger:
    """Accumulates inequality margins and identities for one check."""

    def __init__(self):
        self.margins: dict[str, Fraction] = {}
        self.broken: dict[str, Fraction] = {}
        self.notes: dict = {}

    def ineq(self, name: str, margin: Fraction) -> None:
        self.margins[name] = margin

    def ident(self, name: str, lhs: Fraction, rhs: Fraction) -> None:
        if lhs != rhs:
            self.broken[name] = abs(lhs - rhs)
        self.notes[name] = "holds" if lhs == rhs else f"fails: {lhs} != {rhs}"

    def report(self, cid: str, params: tuple, statement: str,
               strict_zero_ok: bool = False) -> CheckReport:
        details = dict(self.notes)
        details.update(self.margins)
        if self.broken:
            margin = -max(self.broken.values())
        else:
            margin = min(self.margins.values())
        zero_strict = strict_zero_ok and not self.broken and margin == 0
        verdict = "pass" if margin > 0 or zero_strict else "fail"
        return CheckReport(cid, params, statement, margin, verdict, zero_strict, details)


def check_budget_separation(j: int, cons: Construction = DEFAULT) -> CheckReport:
    led = _Ledger()
    d = cons.delta(j)
    led.ineq("delta_next_minus_budget", cons.delta(j + 1) - d * d)
    # 2*(a*j + b) > a*(j+1) + b for every j >= 1 iff a >= 0 and b > 0
    a, b = cons.delta_slope, cons.delta_offset
    symbolic = a >= 0 and a * 1 + b > 0 and b > 0
    led.notes["symbolic_exponent_gap"] = f"{a}*j + {b} > 0 for all j>=1: {symbolic}"
    if not symbolic:
        led.broken["symbolic_exponent_gap"] = Fraction(1)
    return led.report("budget_separation", (j,), "delta_j^2 < delta_{j+1}")


def check_covering(j: int, cons: Construction = DEFAULT) -> CheckReport:
    """Perturbed image of R^1_{j,l}: boundary misses Q^1, body hits Q^1, all in Q^3."""
    led = _Ledger()
    budget = cons.delta(j) ** 2
    q1, q3 = square_Q(j + 1, 1, cons), square_Q(j + 1, 3, cons)
    a = b = c = None
    for l in range(1, CELLS + 1):
        m = phi(j, l, cons)
        image = affine_apply(m, box_of_rect(square_R(j, l, 1, cons)))
        ma = rect_contains(image, q1).margin - budget
        mb = rect_contains(q3, image).margin - budget
        mc = rect_contains(q1, QBox.point(m(square_R(j, l, 1, cons).center))).margin - budget
        a = ma if a is None else min(a, ma)
        b = mb if b is None else min(b, mb)
        c = mc if c is None else min(c, mc)
    led.ineq("boundary_misses_Q1", a)
    led.ineq("image_inside_Q3", b)
    led.ineq("image_meets_Q1", c)
    return led.report("covering", (j,),
                      "f(bd R^1_{j,l}) misses Q^1_{j+1}, f(R^1_{j,l}) meets Q^1_{j+1}, "
                      "f(R^1_{j,l}) inside Q^3_{j+1}")


def check_derivative(j: int, cons: Construction = DEFAULT) -> CheckReport:
    led = _Ledger()
    d = cons.delta(j)
    s = cons.scale(j)
    closed = 2 * (pow2(-j - 3) - cons.delta(j + 1)) / (pow2(-j - 3) - 4 * d)
    led.ident("scale_closed_form", s, closed)
    led.ineq("scale_minus_2_minus_delta", s - 2 - d)
    radius = cons.r_half(j, 2) - cons.r_half(j, 1)
    led.ident("cauchy_radius_is_delta", radius, d)
    led.ineq("cauchy_radius", radius)
    # |f' - phi'| <= delta_j^2 / delta_j on R^1
    led.ineq("perturbed_lower_minus_2", s - d - 2)
    return led.report("derivative", (j,), "phi' > 2 + delta_j and |f'| > 2 on R^1_{j,l}")


def check_injectivity(j: int, cons: Construction = DEFAULT) -> CheckReport:
    led = _Ledger()
    led.ineq("re_fprime_minus_2", cons.scale(j) - cons.delta(j) - 2)
    return led.report("injectivity", (j,), "Re f' > 2 > 0 on R^1_{j,l}, so f is injective there")


def check_P_absorption(budget: Fraction = BUDGET.on_P) -> CheckReport:
    led = _Ledger()
    p00 = square_P(0, 0)
    led.ident("absorbing_point_is_centre", p00.center.x, Fraction(1))
    led.ident("absorbing_point_is_centre_y", p00.center.y, Fraction(1))
    led.ineq("half_side_minus_budget", p00.half_side - rat(budget))
    return led.report("P_absorption", (str(rat(budget)),),
                      "f(P) lies in P_{0,0}: |f(z)-(1+i)| < 1/2 and half side of P_{0,0} is 1/2",
                      strict_zero_ok=True)


def check_disjointness(j_max: int, k_max: Optional[int] = None,
                       q_max: Optional[int] = None) -> CheckReport:
    """All pairs among P_{j,k} (|j| <= j_max, |k| <= k_max) and Q^3_j (j <= q_max)."""
    k_max = j_max if k_max is None else k_max
    q_max = 2 * j_max if q_max is None else q_max
    fam = [(f"P({j},{k})", square_P(j, k))
           for j in range(-j_max, j_max + 1) for k in range(-k_max, k_max + 1)]
    fam += [(f"Q3({j})", square_Q(j, 3)) for j in range(1, q_max + 1)]
    gap, i, k = kernels.min_box_gap([r for _, r in fam])
    led = _Ledger()
    led.ineq("min_pairwise_gap", gap)
    led.notes["closest_pair"] = f"{fam[i][0]} / {fam[k][0]}"
    led.notes["squares"] = len(fam)
    led.notes["backend"] = kernels.BACKEND
    return led.report("disjointness", (j_max, k_max, q_max),
                      "P_{j,k} and Q^3_j pairwise disjoint")


def check_cell_measure(j: int, k: int) -> CheckReport:
    led = _Ledger()
    n = abs(j) + abs(k) + 1
    meas = square_S(j, k).area - square_P(j, k).area
    led.ident("four_minus_four_h_squared", meas, 4 - 4 * (1 - pow2(-n)) ** 2)
    led.ident("expanded", meas, 8 * pow2(-n) - 4 * pow2(-2 * n))
    led.ineq("bound_minus_measure", 4 * pow2(-abs(j)) * pow2(-abs(k)) - meas)
    return led.report("cell_measure", (j, k), "meas(S_{j,k} minus P_{j,k}) < 4*2^-|j|*2^-|k|")


@dataclass(frozen=True)
class SeriesResult:
    partial_sum: Fraction
    tail_bound: Fraction
    closed_form: Fraction

    def to_json(self) -> dict:
        return {"partial_sum": str(self.partial_sum), "tail_bound": str(self.tail_bound),
                "closed_form": str(self.closed_form)}


def _abs_geometric(r: Fraction, n: Optional[int] = None) -> Fraction:
    """sum over |j| <= n (all j if n is None) of r**|j|, for 0 < r < 1."""
    full = (1 + r) / (1 - r)
    if n is None:
        return full
    return full - 2 * r ** (n + 1) / (1 - r)


def measure_complement(n: int) -> SeriesResult:
    """meas(C minus P) summed over cells with |j|, |k| <= n.

    The partial sum adds the cell measures one by one; the closed form and
    tail come from geometric series.
    """
    if n < 0:
        raise ValueError("truncation must be non-negative")
    partial = Fraction(0)
    for j in range(-n, n + 1):
        for k in range(-n, n + 1):
            partial += square_S(j, k).area - square_P(j, k).area
    half, quarter = Fraction(1, 2), Fraction(1, 4)
    closed = 4 * _abs_geometric(half) ** 2 - _abs_geometric(quarter) ** 2
    # omitted cells have measure < 4*2^-|j|*2^-|k|
    tail = 4 * (_abs_geometric(half) ** 2 - _abs_geometric(half, n) ** 2)
    return SeriesResult(partial, tail, closed)


def check_complement_series(n: int) -> CheckReport:
    res = measure_complement(n)
    led = _Ledger()
    led.ident("closed_form", res.closed_form, Fraction(299, 9))
    led.ineq("tail_minus_error", res.tail_bound - (res.closed_form - res.partial_sum))
    led.ineq("coarse_bound_minus_closed", 36 - res.closed_form)
    led.notes["partial_sum"] = str(res.partial_sum)
    return led.report("complement_series", (n,), "meas(C minus P) = 299/9 < 36")


def loss_chain(j: int, cons: Construction = DEFAULT) -> list[Fraction]:
    """The successive expressions bounding the per-node loss at depth j."""
    dn = cons.delta(j + 1)
    big, small = 2 * cons.r_half(j + 1, 3), 2 * cons.r_half(j + 1, 1)
    c = pow2(-j - 4)
    return [
        pow2(-2 * j) * 16 * (big * big - small * small),
        pow2(-2 * j) * 16 * (2 * c * 4 * dn - 16 * dn * dn),
        pow2(-2 * j) * 16 * 2 * c * 4 * dn,
        pow2(-3 * j + 3) * dn,
        pow2(-5 * j - 5),
    ]


def check_loss_chain(j: int, cons: Construction = DEFAULT) -> CheckReport:
    led = _Ledger()
    v = loss_chain(j, cons)
    led.ident("expand_difference_of_squares", v[0], v[1])
    led.ineq("drop_square_term", v[2] - v[1])
    led.ident("collect_powers", v[2], v[3])
    led.ident("final_power_of_two", v[3], v[4])
    s = level_summary(j, cons)
    per_node = s.loss_to_next / s.node_count
    led.ineq("chain_minus_exact_model_loss", v[0] - per_node)
    led.notes["exact_model_loss_per_node"] = str(per_node)
    return led.report("loss_chain", (j,), "per-node loss at depth j < 2^(-5j-5)")


def check_total_loss(j_max: int = 64, cons: Construction = DEFAULT) -> CheckReport:
    led = _Ledger()
    for j in range(1, j_max + 1):
        led.ident(f"termwise_{j}", 16 ** (j - 1) * loss_chain(j, cons)[3], pow2(-j - 9))
    first, ratio = pow2(-10), Fraction(1, 2)
    total = first / (1 - ratio)
    led.ident("geometric_sum", total, pow2(-9))
    root = level_measure(1, cons)
    led.ident("root_measure", root, Fraction(9, 8) * pow2(-9))
    led.ineq("root_minus_total_loss", root - total)
    return led.report("total_loss", (j_max,),
                      "total loss 2^-9 < meas(R^1_{1,1}) = (9/8)*2^-9")


def check_exact_model_loss(j: int, cons: Construction = DEFAULT) -> CheckReport:
    led = _Ledger()
    s = level_summary(j, cons)
    led.ident("node_count", s.node_count, 16 ** (j - 1))
    led.ineq("bound_minus_loss", s.paper_loss_bound * s.node_count - s.loss_to_next)
    return led.report("exact_model_loss", (j,), "exact-model level loss < 16^(j-1)*2^(-5j-5)")


def marty_first_exceeding(threshold: Fraction, j_max: int) -> Optional[int]:
    for j in range(1, j_max + 1):
        if marty_lower_bound(j) > threshold:
            return j
    return None


def check_marty_divergence(threshold, j_max: int = 64) -> CheckReport:
    threshold = rat(threshold)
    led = _Ledger()
    first = marty_first_exceeding(threshold, j_max)
    if first is None:
        led.ineq("value_minus_threshold", marty_lower_bound(j_max) - threshold)
        led.notes["first_j"] = None
    else:
        led.ineq("value_minus_threshold", marty_lower_bound(first) - threshold)
        led.notes["first_j"] = first
        led.ineq("modulus_bound_slack", min(orbit_modulus_margin(j) for j in range(1, first + 1)))
    return led.report("marty_divergence", (str(threshold), j_max),
                      "spherical derivative of f^j on T exceeds the threshold")


@dataclass(frozen=True)
class VerifyConfig:
    jmax: int = 32
    lattice: int = 16
    series_n: int = 64
    marty_thresholds: tuple = (Fraction(1), Fraction(100))
    cons: Construction = DEFAULT


def _planned(cfg: VerifyConfig) -> Iterable[tuple[str, Callable[[], CheckReport]]]:
    c = cfg.cons
    for name, fn in (("budget_separation", check_budget_separation),
                     ("covering", check_covering),
                     ("derivative", check_derivative),
                     ("injectivity", check_injectivity),
                     ("loss_chain", check_loss_chain),
                     ("exact_model_loss", check_exact_model_loss)):
        for j in range(1, cfg.jmax + 1):
            yield f"{name}[{j}]", (lambda fn=fn, j=j: fn(j, c))
    yield "P_absorption", check_P_absorption
    yield "disjointness", lambda: check_disjointness(cfg.lattice, cfg.lattice, cfg.jmax)
    for j in range(-cfg.lattice, cfg.lattice + 1):
        for k in range(-cfg.lattice, cfg.lattice + 1):
            yield f"cell_measure[{j},{k}]", (lambda j=j, k=k: check_cell_measure(j, k))
    yield "complement_series", lambda: check_complement_series(cfg.series_n)
    yield "total_loss", lambda: check_total_loss(64, c)
    for t in cfg.marty_thresholds:
        yield f"marty_divergence[{t}]", (lambda t=t: check_marty_divergence(t, max(cfg.jmax, 64)))


def run_all(cfg: VerifyConfig = VerifyConfig()) -> list[CheckReport]:
    reports = []
    for cid, thunk in _planned(cfg):
        try:
            reports.append(thunk())
        except (ArithmeticError, ValueError, TypeError) as exc:
            raise CheckError(cid, exc) from exc
    return reports


def report_document(reports: list[CheckReport], precision: Optional[int] = None) -> dict:
    precision = report_precision() if precision is None else precision
    n_pass = sum(r.passed for r in reports)
    return {"version": REPORT_VERSION,
            "checks": [r.to_json(precision) for r in reports],
            "summary": {"pass": n_pass, "fail": len(reports) - n_pass}}


def dumps_report(reports: list[CheckReport], precision: Optional[int] = None) -> str:
    return json.dumps(report_document(reports, precision), indent=2, sort_keys=False) + "\n"
