"""Replay the non-existence argument for linear Weingarten translation surfaces.

Every identity in the argument is rebuilt from its stated form and checked
twice: exactly (the difference reduces to the zero rational function) and by
sampling at random rational points.  A step passes only when both agree.

Conventions.  ``f1..f4`` and ``g1..g4`` are the derivatives of the two
profiles, ``S`` is the square root of the metric factor ``W`` and ``p``, ``q``
are the one-variable factors of the curvature formulas: in Euclidean space
``p = 1 + f1^2``, ``q = 1 + g1^2``; in Lorentz-Minkowski space
``p = 1 + eps f1^2``, ``q = -1 + g1^2`` with ``eps`` the causal sign
(-1 spacelike, +1 timelike).  The Lorentzian displays use a second sign
symbol; a *reading* fixes whether it equals ``eps`` (uniform) or ``-eps``
(mixed), and the Lorentzian verifiers try every reading.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

from .identity import poly_identity_test
from .poly import JetPoly
from .ratfunc import RatFunc, register_atom
from .sqrtw import DX, DY, Derivation, SqrtWExpr

SAMPLES = 20

MUTATIONS = (
    "F_definition",  # F built with the sign of f1^2 in its denominator flipped (1 - f1^2 in Euclidean space)
    "mixed_derivative_coefficient",  # 6 replaced by 5
    "second_factor_sign",  # sign of 2 f1 f2 g1 g2 (f2 - g2) flipped
    "display_4w",  # 4W replaced by 3W in the x-derivative display
    "reduced_lambda_sign",  # lambda terms on the left of the reduced equation flipped
)

f1, f2, f3, f4, g1, g2, g3, g4 = (JetPoly.var(n) for n in ("f1", "f2", "f3", "f4", "g1", "g2", "g3", "g4"))
a, b, lam, m = (JetPoly.var(n) for n in ("a", "b", "lam", "m"))
HIGH_JETS = {"f3", "f4", "g3", "g4"}


def _check_mutation(mutation: str | None) -> None:
    if mutation is not None and mutation not in MUTATIONS:
        raise ValueError(f"unknown mutation {mutation!r}; expected one of {', '.join(MUTATIONS)}")


# ---------------------------------------------------------------------------
# Modes


@dataclass(frozen=True)
class Mode:
    name: str = "euclidean"
    eps: int = 1
    display_eps: int = 1
    reading: str | None = None

    @property
    def lorentzian(self) -> bool:
        return self.name == "lorentzian"

    @property
    def W(self) -> JetPoly:
        if self.lorentzian:
            return 1 + self.eps * f1 * f1 - g1 * g1
        return 1 + f1 * f1 + g1 * g1

    @property
    def p(self) -> JetPoly:
        return 1 + self.eps * f1 * f1 if self.lorentzian else 1 + f1 * f1

    @property
    def q(self) -> JetPoly:
        return g1 * g1 - 1 if self.lorentzian else 1 + g1 * g1

    @property
    def sigma(self) -> int:
        """Sign in front of G."""
        return self.eps if self.lorentzian else 1

    @property
    def kappa(self) -> int:
        """Factor relating the b of the product form to the b of aH + bK."""
        return -self.eps if self.lorentzian else 1

    @property
    def S(self) -> SqrtWExpr:
        return SqrtWExpr.sqrt(self.W)

    def lift(self, value) -> SqrtWExpr:
        return SqrtWExpr(value, 0, self.W)

    def F(self, mutation: str | None = None) -> SqrtWExpr:
        den = 2 - self.p if mutation == "F_definition" else self.p
        return self.lift(RatFunc.quotient(f2, den))

    def G(self) -> SqrtWExpr:
        return self.lift(RatFunc.quotient(self.sigma * g2, self.q))

    def label(self) -> str:
        return self.name if self.reading is None else f"{self.name}:{self.reading}"


EUCLIDEAN = Mode()
LORENTZ_READINGS = (
    Mode("lorentzian", -1, -1, "uniform/spacelike"),
    Mode("lorentzian", 1, 1, "uniform/timelike"),
    Mode("lorentzian", -1, 1, "mixed/spacelike"),
    Mode("lorentzian", 1, -1, "mixed/timelike"),
)

for _mode in (EUCLIDEAN,) + LORENTZ_READINGS:
    for _atom in (_mode.p, _mode.q, _mode.W):
        register_atom(_atom)


# ---------------------------------------------------------------------------
# Reports


@dataclass
class Step:
    name: str
    status: str
    witness: str | None = None
    note: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


@dataclass
class Report:
    suite: str
    mode: str
    steps: list[Step] = field(default_factory=list)
    cofactor: str | None = None
    reading: str | None = None
    attempts: list[dict] | None = None

    @property
    def passed(self) -> bool:
        return bool(self.steps) and all(s.passed for s in self.steps)

    def step(self, name: str) -> Step:
        for s in self.steps:
            if s.name == name:
                return s
        raise KeyError(name)

    def to_dict(self) -> dict:
        out = {"suite": self.suite, "mode": self.mode, "steps": [s.to_dict() for s in self.steps]}
        if self.cofactor is not None:
            out["cofactor"] = self.cofactor
        if self.reading is not None:
            out["reading"] = self.reading
        if self.attempts is not None:
            out["attempts"] = self.attempts
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _leading_terms(p: JetPoly, count: int = 3) -> str:
    monos = sorted(p.terms, reverse=True)[:count]
    text = str(JetPoly({mono: p.terms[mono] for mono in monos}))
    return text + (" + ..." if len(p.terms) > count else "")


def _describe(expr: SqrtWExpr | RatFunc) -> str:
    parts = [("rational part", expr.rational), ("sqrt(W) part", expr.coeff)] if isinstance(expr, SqrtWExpr) else [("value", expr)]
    return "; ".join(f"{label} has numerator {_leading_terms(r.num)}" for label, r in parts if not r.is_zero())


def _check(name: str, expr: SqrtWExpr | RatFunc, seed: int, note: str | None = None) -> Step:
    exact = expr.is_zero()
    sampled = poly_identity_test(expr, seed, SAMPLES)
    if exact and sampled:
        return Step(name, "pass", note=note)
    if exact != sampled:
        return Step(name, "fail", "exact reduction and sampling disagree", note)
    return Step(name, "fail", _describe(expr), note)


# ---------------------------------------------------------------------------
# Lorentzian readings


Verifier = Callable[..., Report]


def _over_readings(verifier: Verifier, seed: int, mutation: str | None) -> Report:
    """Run ``verifier`` for every Lorentzian reading; keep the first that passes."""
    reports = [verifier(mode, seed=seed, mutation=mutation) for mode in LORENTZ_READINGS]
    attempts = [{"reading": mode.reading, "status": "pass" if r.passed else "fail"} for mode, r in zip(LORENTZ_READINGS, reports)]
    chosen = next((r for r in reports if r.passed), reports[0])
    chosen.attempts = attempts
    return chosen


def _resolve(mode: Mode | str) -> Mode | None:
    """Concrete mode, or None when every Lorentzian reading has to be tried."""
    if isinstance(mode, Mode):
        return mode
    if mode == "euclidean":
        return EUCLIDEAN
    if mode == "lorentzian":
        return None
    raise ValueError(f"unknown mode {mode!r}; expected 'euclidean' or 'lorentzian'")


def _new_report(suite: str, mode: Mode) -> Report:
    return Report(suite, mode.name, reading=mode.reading)


# ---------------------------------------------------------------------------
# c = 0


def verify_c0_chain(mode: Mode | str = EUCLIDEAN, seed: int = 0, mutation: str | None = None) -> Report:
    """From aH + bK = 0 to the product form a(F+G)S + bFG = 0 and the squared relation for W."""
    _check_mutation(mutation)
    md = _resolve(mode)
    if md is None:
        return _over_readings(verify_c0_chain, seed, mutation)
    report = _new_report("homogeneous_chain", md)
    S, W, p, q = md.S, md.lift(md.W), md.p, md.q

    # mean and Gauss curvature of the graph, with the 2 of 2H absorbed into a
    if md.lorentzian:
        e = md.eps
        two_H = md.lift(RatFunc(e * (-e * f2 * (1 - g1 * g1) + g2 * (1 + e * f1 * f1)))) / (W * S)
        K = md.lift(RatFunc(-f2 * g2)) / (W * W)
        relation = a * two_H + b * K
        note = None if md.kappa == 1 else "b is replaced by -b so that the product form reads a(F+G)S + bFG"
    else:
        H = md.lift(RatFunc(f2 * (1 + g1 * g1) + g2 * (1 + f1 * f1))) / (2 * W * S)
        K = md.lift(RatFunc(f2 * g2)) / (W * W)
        relation = md.lift(RatFunc(a * (f2 * (1 + g1 * g1) + g2 * (1 + f1 * f1)))) / (W * S) + b * K
        note = None

    fp = RatFunc.quotient(f2, p)
    gq = RatFunc.quotient(md.sigma * g2, q)
    cleared = a * md.lift(fp + gq) * S + md.kappa * b * md.lift(fp * gq)
    report.steps.append(_check("cleared_denominators", cleared * md.lift(p * q) - relation * W * W, seed, note))

    F, G = md.F(mutation), md.G()
    in_FG = a * (F + G) * S + md.kappa * b * F * G
    report.steps.append(_check("product_form_in_F_G", in_FG - cleared, seed))

    # a(F+G)S = -bFG squared: W = (b/a)^2 (FG/(F+G))^2
    conj = a * (F + G) * S - md.kappa * b * F * G
    ratio = F * G / (F + G)
    squared = W - (b * b) * ratio * ratio / (a * a)
    report.steps.append(_check("squared_W_relation", in_FG * conj / (a * a * (F + G) * (F + G)) - squared, seed))

    if not md.lorentzian:
        report.steps.append(_check("relation_from_curvatures", relation - (2 * a * H + b * K), seed))
    return report


def verify_eab(mode: Mode | str = EUCLIDEAN, seed: int = 0, mutation: str | None = None) -> Report:
    """Mixed second derivative of (b/a)^2 (FG/(F+G))^2 and of W."""
    _check_mutation(mutation)
    md = _resolve(mode)
    if md is None:
        return _over_readings(verify_eab, seed, mutation)
    report = _new_report("mixed_derivative", md)
    F, G = md.F(mutation), md.G()
    W = md.lift(md.W)
    report.steps.append(_check("mixed_derivative_of_W_vanishes", W.derive(DX).derive(DY), seed))

    scale = RatFunc(b * b) / RatFunc(a * a)
    u = F * G / (F + G)
    target = scale * u * u
    lhs = target.derive(DX).derive(DY)
    coefficient = 5 if mutation == "mixed_derivative_coefficient" else 6
    rhs = coefficient * scale * F * F * G * G * F.derive(DX) * G.derive(DY) / (F + G) ** 4
    report.steps.append(_check("mixed_derivative_of_squared_ratio", lhs - rhs, seed))
    report.steps.append(_check("derivations_commute", target.derive(DY).derive(DX) - lhs, seed))
    return report


# ---------------------------------------------------------------------------
# c != 0: the pair of equations P1 S = Q1, P2 S = Q2


@dataclass(frozen=True)
class PQ:
    P1: RatFunc
    Q1: RatFunc
    P2: RatFunc
    Q2: RatFunc


def _derived(F: SqrtWExpr, G: SqrtWExpr) -> tuple[RatFunc, RatFunc, RatFunc, RatFunc]:
    """F and G as rational functions together with their derivatives."""
    return F.rational, G.rational, F.derive(DX).rational, G.derive(DY).rational


def build_pq(mode: Mode | str = EUCLIDEAN) -> PQ:
    """Read P1, Q1 (first-derivative equation) and P2, Q2 (third-jet equation) off their stated forms.

    Each equation is taken as ``P * S = Q``.
    """
    md = _resolve(mode)
    if md is None:
        raise ValueError("build_pq needs a concrete Lorentzian reading")
    Fr, Gr, Fx, Gy = _derived(md.F(), md.G())
    ff, gg = RatFunc(f1 * f2), RatFunc(g1 * g2)
    if md.lorentzian:
        ve = md.display_eps
        pe, qe = RatFunc(ve + f1 * f1), RatFunc(g1 * g1 - 1)
        X = Fx / ff + 2 * (Fr + Gr) / pe + ve * Gy / gg + ve * 2 * (Fr + Gr) / qe
        Y = Fx * Gr / ff + 2 * Fr * Gr / pe + ve * Fr * Gy / gg + ve * 2 * Fr * Gr / qe
        Z = RatFunc(f3) / ff * RatFunc(g1 * g1 - 1) + 2 * g2 + 2 * ve * f2 + ve * RatFunc(ve + f1 * f1) * g3 / gg
        V = RatFunc(f2 * g3) / gg + ve * RatFunc(g2 * f3) / ff
        return PQ(a * X, -b * Y, a * Z, -ve * b * V)
    p, q = RatFunc(md.p), RatFunc(md.q)
    X = Fx / ff + 2 * (Fr + Gr) / p - Gy / gg - 2 * (Fr + Gr) / q
    Y = Fx * Gr / ff + 2 * Fr * Gr / p - Fr * Gy / gg - 2 * Fr * Gr / q
    Z = RatFunc(f3) / ff * q + 2 * g2 - 2 * f2 - RatFunc(g3) / gg * p
    V = RatFunc(f2 * g3) / gg - RatFunc(g2 * f3) / ff
    return PQ(a * X, -b * Y, a * Z, b * V)


def claimed_factors(md: Mode, mutation: str | None = None) -> tuple[JetPoly, JetPoly]:
    """The two factors of the claimed factorization."""
    flip = -1 if mutation == "second_factor_sign" else 1
    if md.lorentzian:
        ve = md.display_eps
        factor1 = f1 * f2 * f2 * g3 + ve * f3 * g1 * g2 * g2
        factor2 = flip * 2 * f1 * f2 * g1 * g2 * (f2 + ve * g2) + f1 * f2 * (f1 * f1 + ve) * g3 + ve * f3 * g1 * g2 * (g1 * g1 - 1)
        return factor1, factor2
    factor1 = f1 * f2 * f2 * g3 - f3 * g1 * g2 * g2
    factor2 = flip * 2 * f1 * f2 * g1 * g2 * (f2 - g2) + f1 * f2 * (1 + f1 * f1) * g3 - f3 * g1 * g2 * (1 + g1 * g1)
    return factor1, factor2


def _cofactor_problem(c: RatFunc, md: Mode) -> str | None:
    """Why ``c`` is not an admissible cofactor, or None when it is."""
    if c.is_zero():
        return "cofactor is zero"
    high = c.variables() & HIGH_JETS
    if high:
        return f"cofactor involves {', '.join(sorted(high))}"
    if not c.num.is_monomial():
        return f"cofactor numerator {c.num} is not a monomial"
    allowed = {JetPoly.var(n) for n in ("a", "b", "f1", "f2", "g1", "g2")}
    allowed |= {register_atom(x) for x in (md.p, md.q, md.W)}
    extra = [atom for atom in c.den if atom not in allowed]
    if extra:
        return f"cofactor denominator has unexpected factor {extra[0]}"
    return None


def _factor_check(name: str, product: RatFunc, factor1: JetPoly, factor2: JetPoly, md: Mode, seed: int) -> tuple[Step, RatFunc | None]:
    if product.is_zero():
        return Step(name, "fail", "the combination vanishes identically, so it has no factorization with a nonzero cofactor"), None
    cofactor = product / RatFunc(factor1 * factor2)
    problem = _cofactor_problem(cofactor, md)
    if problem is not None:
        return Step(name, "fail", f"{problem}; quotient {cofactor}"), None
    step = _check(name, product - cofactor * RatFunc(factor1 * factor2), seed, note=f"cofactor {cofactor}")
    return step, cofactor if step.passed else None


def verify_factorization(mode: Mode | str = EUCLIDEAN, seed: int = 0, mutation: str | None = None) -> Report:
    """P1 Q2 - P2 Q1 and P2 Q2 against the claimed product of two factors."""
    _check_mutation(mutation)
    md = _resolve(mode)
    if md is None:
        return _over_readings(verify_factorization, seed, mutation)
    report = _new_report("factorization", md)
    pq = build_pq(md)
    factor1, factor2 = claimed_factors(md, mutation)

    cross = pq.P1 * pq.Q2 - pq.P2 * pq.Q1
    step, cofactor = _factor_check("cross_combination_factors", cross, factor1, factor2, md, seed)
    if cross.is_zero():
        ratio = pq.P1 / pq.P2
        flipped = pq.P1 * pq.Q2 + pq.P2 * pq.Q1
        flipped_c = flipped / RatFunc(factor1 * factor2) if not flipped.is_zero() else None
        step.note = (
            f"the two equations are proportional: P1/P2 = Q1/Q2 = {ratio}"
            + (f"; reading the first equation as P1 S = -Q1 gives P1 Q2 + P2 Q1 = C factor1 factor2 with C = {flipped_c}" if flipped_c is not None else "")
        )
    report.steps.append(step)
    if cofactor is not None:
        report.cofactor = str(cofactor)

    p2q2, _ = _factor_check("p2q2_factors", pq.P2 * pq.Q2, factor1, factor2, md, seed)
    report.steps.append(p2q2)
    return report


def verify_build_pq(mode: Mode | str = EUCLIDEAN, seed: int = 0, mutation: str | None = None) -> Report:
    """Shape of P1, Q1, P2, Q2: which constant each carries and the numerator of Q2."""
    md = _resolve(mode)
    if md is None:
        return _over_readings(verify_build_pq, seed, mutation)
    report = _new_report("build_pq", md)
    pq = build_pq(md)
    zero_a = {"a": JetPoly()}
    zero_b = {"b": JetPoly()}
    report.steps.append(_check("P1_linear_in_a", pq.P1.substitute(zero_a), seed))
    report.steps.append(_check("P2_linear_in_a", pq.P2.substitute(zero_a), seed))
    report.steps.append(_check("Q1_linear_in_b", pq.Q1.substitute(zero_b), seed))
    report.steps.append(_check("Q2_linear_in_b", pq.Q2.substitute(zero_b), seed))
    no_b = all("b" not in x.variables() for x in (pq.P1, pq.P2)) and all("a" not in x.variables() for x in (pq.Q1, pq.Q2))
    report.steps.append(Step("P_free_of_b_and_Q_free_of_a", "pass" if no_b else "fail"))
    factor1, _ = claimed_factors(md)
    sign = -md.display_eps if md.lorentzian else 1
    q2_cleared = pq.Q2 * RatFunc(f1 * f2 * g1 * g2)
    report.steps.append(_check("Q2_numerator_is_b_times_first_factor", q2_cleared - RatFunc(sign * b * factor1), seed))
    return report


# ---------------------------------------------------------------------------
# Differentiation displays (Euclidean)


def verify_differentiation_displays(mode: Mode | str = EUCLIDEAN, seed: int = 0, mutation: str | None = None) -> Report:
    """Differentiate the c != 0 equation in both product and rearranged form and compare with the stated derivatives."""
    _check_mutation(mutation)
    md = _resolve(mode)
    if md is None or md.lorentzian:
        raise ValueError("the differentiation displays exist only in Euclidean space")
    report = _new_report("differentiation_displays", md)
    S, W = md.S, md.lift(md.W)
    P, Q = md.lift(md.p), md.lift(md.q)
    F, G = md.F(mutation), md.G()
    Fx, Gy = F.derive(DX), G.derive(DY)
    ff, gg = md.lift(f1 * f2), md.lift(g1 * g2)
    N = md.lift(f2 * md.q + g2 * md.p)

    # aH + bK = 1 with 2a renamed to a, then multiplied by W^2 / (p q)
    relation = a * N / (W * S) + b * md.lift(f2 * g2) / (W * W)
    product = a * (F + G) * S + b * F * G
    residual = product - W * W / (P * Q)
    report.steps.append(_check("product_form_from_relation", residual - (relation - 1) * W * W / (P * Q), seed))

    four = 3 if mutation == "display_4w" else 4
    disp_x = a * (Fx * S + (F + G) * ff / S) + b * Fx * G - (four * W * ff / (P * Q) - 2 * ff * W * W / (P * P * Q))
    report.steps.append(_check("x_derivative_of_product_form", residual.derive(DX) - disp_x, seed))

    y_rhs = 4 * W * gg / (P * Q) - 2 * gg * W * W / (P * Q * Q)
    literal_y = a * (Gy * S + (F + G) * gg / S) + b * Fx * G - y_rhs
    symmetric_y = a * (Gy * S + (F + G) * gg / S) + b * F * Gy - y_rhs
    dy = residual.derive(DY)
    literal_ok = (dy - literal_y).is_zero()
    symmetric_ok = (dy - symmetric_y).is_zero()
    findings = {
        (True, False): "the stated b F' G term is correct",
        (False, True): "the stated b F' G term fails; the symmetric b F G' term makes the display an identity",
        (True, True): "both readings are identities",
        (False, False): "neither reading is an identity",
    }
    disp_y = symmetric_y if symmetric_ok or not literal_ok else literal_y
    step = _check("y_derivative_of_product_form", dy - disp_y, seed, note=findings[(literal_ok, symmetric_ok)])
    report.steps.append(step)

    combined = (a * Fx * S / ff + b * Fx * G / ff + 2 * W * W / (P * P * Q)) - (a * Gy * S / gg + b * F * Gy / gg + 2 * W * W / (P * Q * Q))
    report.steps.append(_check("divided_displays", disp_x / ff - disp_y / gg - combined, seed))

    # eliminate W^2 with the product form: W^2 = product * p * q
    eliminated = (a * Fx * S / ff + b * Fx * G / ff + 2 * product / P) - (a * Gy * S / gg + b * F * Gy / gg + 2 * product / Q)
    pq = build_pq(md)
    first_eq = pq.P1 * S - pq.Q1
    report.steps.append(_check("first_equation_from_divided_derivatives", eliminated - first_eq, seed))

    rearranged = a * N * S + b * md.lift(f2 * g2) - W * W
    disp_x2 = a * md.lift(f3 * md.q + 2 * f1 * f2 * g2) * S + a * N * ff / S + b * md.lift(f3 * g2) - 4 * ff * W
    disp_y2 = a * md.lift(2 * f2 * g1 * g2 + g3 * md.p) * S + a * N * gg / S + b * md.lift(f2 * g3) - 4 * gg * W
    report.steps.append(_check("x_derivative_of_rearranged_form", rearranged.derive(DX) - disp_x2, seed))
    report.steps.append(_check("y_derivative_of_rearranged_form", rearranged.derive(DY) - disp_y2, seed))

    second_eq = pq.P2 * S - pq.Q2
    report.steps.append(_check("second_equation_from_rearranged_derivatives", disp_x2 / ff - disp_y2 / gg - second_eq, seed))
    return report


# ---------------------------------------------------------------------------
# Case P2 = Q2 = 0 (Euclidean)


def _numerator_equivalent(name: str, expr: RatFunc, target: JetPoly, seed: int) -> Step:
    """``expr`` vanishes exactly where ``target`` does, up to nonvanishing factors."""
    ratio = expr / RatFunc(target)
    const_num = ratio.num.is_constant() or ratio.num.is_monomial()
    if not ratio.is_zero() and const_num and not (ratio.variables() & HIGH_JETS):
        return _check(name, expr - ratio * RatFunc(target), seed, note=f"ratio {ratio}")
    return Step(name, "fail", f"quotient {ratio} is not a nonvanishing factor")


def verify_case3_chain(mode: Mode | str = EUCLIDEAN, seed: int = 0, mutation: str | None = None) -> Report:
    """P2 = Q2 = 0 in the jets: the two factor equations, the reduction with lambda and the constant-m branch."""
    _check_mutation(mutation)
    md = _resolve(mode)
    if md is None or md.lorentzian:
        raise ValueError("the case analysis is replayed only in Euclidean space")
    report = _new_report("vanishing_pair_chain", md)
    factor1, factor2 = claimed_factors(md)
    p, q = RatFunc(md.p), RatFunc(md.q)

    ratio_eq = RatFunc(f3) / RatFunc(f1 * f2 * f2) - RatFunc(g3) / RatFunc(g1 * g2 * g2)
    balance_eq = 2 * RatFunc(f2 - g2) + RatFunc(g3) / RatFunc(g1 * g2) * p - RatFunc(f3) / RatFunc(f1 * f2) * q
    report.steps.append(_numerator_equivalent("third_jet_ratio_is_first_factor", ratio_eq, factor1, seed))
    report.steps.append(_numerator_equivalent("third_jet_balance_is_second_factor", balance_eq, factor2, seed))

    sub = {"f3": 2 * lam * f1 * f2 * f2, "g3": 2 * lam * g1 * g2 * g2}
    reduced = balance_eq.substitute(sub)
    displayed = 2 * RatFunc(f2 - g2) + 2 * lam * p * g2 - 2 * lam * q * f2
    report.steps.append(_check("third_jets_eliminated", reduced - displayed, seed))

    flip = -1 if mutation == "reduced_lambda_sign" else 1
    reduced_eq = RatFunc(f2 - g2 + flip * (lam * g2 - lam * f2) - (lam * f2 * g1 * g1 - lam * g2 * f1 * f1))
    report.steps.append(_check("lambda_reduced_equation", reduced - 2 * reduced_eq, seed))

    mixed = reduced_eq.derive(DX).derive(DY)
    report.steps.append(_check("lambda_reduced_mixed_derivative", mixed - 2 * lam * RatFunc(f1 * f2 * g3 - g1 * g2 * f3), seed))

    # lambda = 0 and f'' = g'' = m constant
    S, W = md.S, md.lift(md.W)
    N = md.lift(f2 * md.q + g2 * md.p)
    rearranged = a * N * S + b * md.lift(f2 * g2) - W * W
    at_m = rearranged.substitute({"f2": m, "g2": m}) / S
    stated = a * m * md.lift(2 + f1 * f1 + g1 * g1) - (W * S - b * m * m * S / W)
    report.steps.append(_check("rearranged_form_at_constant_m", at_m - stated, seed))

    d_m = Derivation("x", {"f1": m})
    reduced_m = stated.derive(d_m) / md.lift(f1 * m)
    target = 2 * a * m - (3 * S + b * m * m * S / (W * W))
    report.steps.append(_check("x_derivative_at_constant_m", reduced_m - target, seed))
    return report


# ---------------------------------------------------------------------------
# Suites


SUITES = ("c0", "c1", "lorentzian", "all")


def run_suite(name: str, seed: int = 0, mutation: str | None = None) -> list[Report]:
    """Reports of a named suite in a fixed order."""
    _check_mutation(mutation)
    if name == "c0":
        return [verify_c0_chain(EUCLIDEAN, seed, mutation), verify_eab(EUCLIDEAN, seed, mutation)]
    if name == "c1":
        return [
            verify_differentiation_displays(EUCLIDEAN, seed, mutation),
            verify_build_pq(EUCLIDEAN, seed, mutation),
            verify_factorization(EUCLIDEAN, seed, mutation),
            verify_case3_chain(EUCLIDEAN, seed, mutation),
        ]
    if name == "lorentzian":
        return [
            verify_c0_chain("lorentzian", seed, mutation),
            verify_eab("lorentzian", seed, mutation),
            verify_factorization("lorentzian", seed, mutation),
        ]
    if name == "all":
        return [r for part in ("c0", "c1", "lorentzian") for r in run_suite(part, seed, mutation)]
    raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")


def suite_json(reports: Iterable[Report]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2) + "\n"


__all__ = [
    "EUCLIDEAN",
    "LORENTZ_READINGS",
    "MUTATIONS",
    "Mode",
    "PQ",
    "Report",
    "Step",
    "SUITES",
    "build_pq",
    "claimed_factors",
    "run_suite",
    "suite_json",
    "verify_build_pq",
    "verify_c0_chain",
    "verify_case3_chain",
    "verify_differentiation_displays",
    "verify_eab",
    "verify_factorization",
]
