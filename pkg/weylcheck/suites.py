"""Verification suites and the commands built on them.

Each suite adds named checks to a Report. A failed identity is a failed
check, never an exception; exceptions are left for budgets and bad input.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, List, Optional

from .algebra import LaurentPoly, MultiPoly
from .characters import (
    char_L_at_1,
    coxeter_parameter,
    exterior_sum_series,
    fixed_dimension,
    graded_char_L,
    graded_char_standard,
    isotypic_series,
    kappa,
    multiplicity_in_L,
    perm_char_Q_mod,
)
from .cherednik import (
    CherednikFrame,
    HcElement,
    Letter,
    commutator_yx,
    frame_for_root_system,
    is_central,
    kappa_element,
    letter_element,
    pbw_normal_form,
    sign_idempotent,
    sl2_closure_check,
    trivial_idempotent,
    trivial_module_check,
)
from .coinvariants import (
    bi_variables,
    compare_DW_RW,
    diagonal_coinvariant_dims,
    poisson_bracket,
    poisson_identity_check,
    quadratic_invariants,
    wallach_generation_check,
)
from .config import RunConfig
from .dunkl import (
    DunklContext,
    coinvariant_image_check,
    commutativity_check,
    consistency_check,
    contravariant_ranks,
    expected_L_dimensions,
    h_grading_check,
    random_polynomial,
)
from .errors import UnsupportedParameter
from .render import status
from .report import Report
from .rootsystem import (
    RootSystemData,
    WeylGroup,
    build_root_system,
    coxeter_element,
    enumerate_weyl_group,
    known_degrees,
    molien_degrees,
    molien_series,
)
from .series import (
    alternating_sum_check,
    hilbert_L,
    hilbert_L_check,
    invariant_series_p,
    lemma_shape_check,
    sign_isotypic_standard_series,
)
from .typeb import build_koszul_model, build_theta, fixed_point_cross_check, signed_generators, theta_variants

SUITES = ("series", "characters", "cherednik", "coinvariants", "typeB")
SERIES_KINDS = ("p", "hilbL", "eMc", "DW")
EXCEPTIONAL = ("E", "F", "G")


def parse_parameter(text: Optional[str], rs: RootSystemData):
    """``"1/4"`` for every class, or ``"c_s,c_l"`` for two root lengths."""
    if text is None:
        return None
    try:
        values = [Fraction(part.strip()) for part in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UnsupportedParameter(f"cannot read parameter {text!r}; use NUM/DEN[,NUM/DEN]")
    if len(values) == 1:
        return values[0]
    if len(values) == 2 and rs.parameter_names == ("c_s", "c_l"):
        return {"c_s": values[0], "c_l": values[1]}
    raise UnsupportedParameter(f"{rs.label} takes parameters {rs.parameter_names}, got {text!r}")


def _dunkl_allowed(rs: RootSystemData, cfg: RunConfig) -> bool:
    return rs.rank <= 2 or cfg.allow_large


# -- info -----------------------------------------------------------------------


def info(rs: RootSystemData, cfg: RunConfig, report: Report):
    ref = "root data"
    report.objects.update(
        {
            "rank": rs.rank,
            "N": rs.N,
            "h": rs.h,
            "exponents": list(rs.exponents),
            "degrees": list(rs.degrees),
            "order": rs.order,
            "L_dimension": (rs.h + 1) ** rs.rank,
            "parameters": list(rs.parameter_names),
        }
    )
    report.check("N = nh/2", ref, Fraction(rs.rank * rs.h, 2), rs.N)
    report.check("exponents sum to N", ref, rs.N, sum(rs.exponents))
    report.check("h+1-e_k are the degrees", ref, sorted(rs.degrees), sorted(rs.h + 1 - e for e in rs.exponents))
    report.check("degrees match the classification", ref, list(known_degrees(rs.type_label, rs.rank)), list(rs.degrees))
    report.check("highest root has height h-1", ref, rs.h - 1, max(sum(r) for r in rs.positive_roots))
    report.check("Coxeter element has order h", ref, rs.h, coxeter_element(rs).order(limit=4 * rs.h))


# -- suites ---------------------------------------------------------------------


def series_suite(rs: RootSystemData, group: WeylGroup, cfg: RunConfig, report: Report):
    ref = "alternating-sum lemma"
    for name, ok in alternating_sum_check(rs, 1).checks:
        report.check(name, ref, True, ok)
    for m in sorted({2, 3, cfg.m} - {1}):
        for name, ok in lemma_shape_check(rs, m).checks:
            report.check(f"m={m}: {name}", "lowest-weight shape", True, ok)
    for name, ok in hilbert_L_check(rs).checks:
        report.check(name, "hilbert series of L", True, ok)

    report.check("|W| equals the product of the degrees", "root data", rs.order, group.order)
    molien = molien_series(group, truncation=rs.h)
    report.check("Molien series recovers the degrees", "invariant theory", list(rs.degrees), list(molien_degrees(molien, rs.rank, rs.h)))
    for i in range(rs.rank + 1):
        report.check(
            f"multiplicity of wedge^{i} h in the coinvariants",
            "isotypic series",
            exterior_sum_series(rs, i),
            isotypic_series(rs, group, i),
        )
    for k in range(rs.rank + 1):
        mult = multiplicity_in_L(rs, group, k)
        report.check(f"multiplicity of wedge^{k} h in L is a natural number", "character of L", True, mult >= 0 and mult.denominator == 1)


def characters_suite(rs: RootSystemData, group: WeylGroup, cfg: RunConfig, report: Report):
    ref = "fixed points on Q/(h+1)Q"
    q = rs.h + 1
    limits: Dict[tuple, int] = {}
    representatives = {}
    matches = 0
    literal_differs = 0
    coprime = True
    for w in group:
        coeffs = w.char_coefficients()
        if coeffs not in limits:
            limits[coeffs] = char_L_at_1(rs, coeffs)
            representatives[coeffs] = w
        value = limits[coeffs]
        if value == perm_char_Q_mod(rs, w, q):
            matches += 1
        if rs.h ** fixed_dimension(coeffs) != value:
            literal_differs += 1
        if rs.type_label in EXCEPTIONAL and gcd(w.order(limit=q * rs.h), q) != 1:
            coprime = False
    report.check("char_L(w) at t=1 equals fixed points on Q/(h+1)Q", ref, group.order, matches)
    if rs.type_label in EXCEPTIONAL:
        report.check("element orders are prime to h+1", ref, True, coprime)
    report.objects["elements_where_h_power_differs"] = literal_differs

    c = coxeter_parameter(rs)
    mismatched = 0
    for coeffs, w in sorted(representatives.items()):
        total = graded_char_standard(rs, 0, w, c)
        for k in range(1, rs.rank + 1):
            term = graded_char_standard(rs, k, w, c)
            total = total + (term if k % 2 == 0 else -term)
        if total != graded_char_L(rs, w):
            mismatched += 1
    report.check("char_L is the alternating sum of standard characters", "character of L", 0, mismatched)
    asymmetric = sum(
        1 for w in representatives.values() if graded_char_L(rs, w).invert_t() != graded_char_L(rs, w.inverse())
    )
    report.check("char_L(w, 1/t) = char_L(w^-1, t)", "character of L", 0, asymmetric)
    report.check("char_L at the identity is the Hilbert series", "hilbert series of L", True, graded_char_L(rs, group.identity) == hilbert_L(rs))
    report.check(
        "kappa(wedge^k h) at c=1 equals hk",
        "kappa",
        [rs.h * k for k in range(rs.rank + 1)],
        [kappa(rs, k, 1).as_constant() for k in range(rs.rank + 1)],
    )


def _reflect_x(frame: CherednikFrame, w, i: int) -> HcElement:
    image = frame.act(w, MultiPoly.variable(frame.x_variables, i))
    zero = frame.zero_monomial
    return HcElement(frame, {(mono, w, zero): frame.param(v) for mono, v in image.terms().items()})


def _random_word(frame: CherednikFrame, rng: random.Random, degree: int) -> List[Letter]:
    word: List[Letter] = []
    for _ in range(rng.randint(1, degree)):
        word.append((rng.choice("xy"), rng.randrange(frame.rank)))
        if rng.random() < 0.4:
            word.append(("w", rng.choice(frame.generators)))
    return word


def _apply_word(ctx: DunklContext, word: List[Letter], f: MultiPoly) -> MultiPoly:
    for kind, value in reversed(word):
        if kind == "x":
            f = f * MultiPoly.variable(ctx.variables, value)
        elif kind == "y":
            f = ctx.apply(value, f)
        else:
            f = ctx.frame.act(value, f)
    return f


def cherednik_suite(rs: RootSystemData, group: WeylGroup, cfg: RunConfig, report: Report):
    ref = "one-dimensional module"
    rng = random.Random(cfg.seed)
    frame = frame_for_root_system(rs)
    n = rs.rank
    inv_h = Fraction(1, rs.h)

    report.check("one-dimensional module at c = 1/h", ref, True, trivial_module_check(frame, inv_h))
    others = [inv_h + Fraction(1, 7)] + [Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(5)]
    others = [c for c in others if c != inv_h]
    report.check("no one-dimensional module elsewhere", ref, 0, sum(trivial_module_check(frame, c) for c in others))
    chosen = parse_parameter(cfg.c, rs)
    if chosen is not None:
        report.objects["one_dimensional_module_at_c"] = trivial_module_check(frame, chosen)

    same = all(
        commutator_yx(frame, i, j) == commutator_yx(frame, i, j, over_all_roots=True)
        for i in range(n)
        for j in range(n)
    )
    report.check("half-sum over all roots equals sum over positive roots", "defining relation", True, same)

    ref = "PBW normal form"
    xy = HcElement.x(frame, 0) * HcElement.y(frame, 0) + commutator_yx(frame, 0, 0)
    report.check("y1 x1 = x1 y1 + [y1, x1]", ref, True, pbw_normal_form(frame, "y1 x1", cfg.pbw_degree) == xy)
    s1 = frame.generators[0]
    report.check("s1 x1 = s1(x1) s1", ref, True, pbw_normal_form(frame, "s1 x1", cfg.pbw_degree) == _reflect_x(frame, s1, 0))
    if n >= 2:
        report.check(
            "x1 x2 = x2 x1",
            ref,
            True,
            pbw_normal_form(frame, "x1 x2", cfg.pbw_degree) == pbw_normal_form(frame, "x2 x1", cfg.pbw_degree),
        )
    disagreements = 0
    for _ in range(cfg.pbw_samples):
        word = _random_word(frame, rng, cfg.pbw_degree)
        left = letter_element(frame, word[0])
        for letter in word[1:]:
            left = left * letter_element(frame, letter)
        if left != pbw_normal_form(frame, word, cfg.pbw_degree):
            disagreements += 1
    report.objects["pbw_words_sampled"] = cfg.pbw_samples
    report.check("association order does not change normal forms", ref, 0, disagreements)

    sl2 = sl2_closure_check(frame)
    report.check("sl2 triple closes", "sl2 triple", True, sl2.closes)
    report.check("sl2 constants do not depend on c", "sl2 triple", True, sl2.independent_of_c)
    report.check("sl2 constants are consistent", "sl2 triple", True, sl2.consistent)
    if sl2.independent_of_c:
        report.check(
            "sl2 structure constants",
            "sl2 triple",
            [-4, 2, -2],
            [v.as_constant() for v in (sl2.lam, sl2.mu, sl2.nu)],
        )

    if group.order <= cfg.idempotent_max_order:
        e = trivial_idempotent(group)
        e_sign = sign_idempotent(group)
        report.check("e^2 = e", "group algebra", True, e * e == e)
        report.check("e_sign^2 = e_sign", "group algebra", True, e_sign * e_sign == e_sign)
        report.check("sum c_a (1 - s_a) is central", "group algebra", True, is_central(kappa_element(rs), group.generators))

    if not _dunkl_allowed(rs, cfg):
        status(f"skipping Dunkl checks for {rs.label}; pass --allow-large to run them", cfg.verbose)
        return
    _dunkl_checks(rs, group, cfg, report, rng)


def _dunkl_checks(rs: RootSystemData, group: WeylGroup, cfg: RunConfig, report: Report, rng: random.Random):
    ref = "contravariant form"
    ctx = DunklContext(rs, coxeter_parameter(rs), degree_cap=cfg.degree_cap)
    ranks = contravariant_ranks(ctx)
    expected = expected_L_dimensions(rs.rank, rs.h)
    expected = (expected + [0] * len(ranks))[: len(ranks)]
    report.check("ranks of the contravariant form", ref, expected, ranks)
    report.check("ranks add up to (h+1)^n", ref, (rs.h + 1) ** rs.rank, sum(ranks))
    centred = LaurentPoly.from_coefficients(ranks, start=-rs.N)
    report.check("ranks are palindromic", ref, True, centred.is_palindromic())

    if ctx.degree_cap >= rs.rank * rs.h:
        image = coinvariant_image_check(ctx, group)
        for name, ok in image.checks.items():
            report.check(name, "coinvariant image", True, ok)
        report.objects["coinvariant_image"] = image.to_dict()

    chosen = parse_parameter(cfg.c, rs)
    if chosen is not None:
        report.objects["contravariant_ranks_at_c"] = contravariant_ranks(DunklContext(rs, chosen, degree_cap=cfg.degree_cap))

    ref = "Dunkl operators"
    failures = {"commute": 0, "consistency": 0, "grading": 0, "homomorphism": 0}
    sampled_values = []
    for _ in range(3):
        c = Fraction(rng.randint(-12, 12), rng.randint(1, 7))
        sample_ctx = DunklContext(rs, c, degree_cap=cfg.degree_cap)
        frame = sample_ctx.frame
        sampled_values.append(c)
        for _ in range(cfg.dunkl_samples):
            f = random_polynomial(sample_ctx.variables, rng, max_degree=5)
            if f.is_zero():
                continue
            if not commutativity_check(sample_ctx, f):
                failures["commute"] += 1
            if not consistency_check(sample_ctx, f):
                failures["consistency"] += 1
            if not h_grading_check(sample_ctx, f.homogeneous_component(f.degree())):
                failures["grading"] += 1
        for _ in range(5):
            word = _random_word(frame, rng, 3)
            f = random_polynomial(sample_ctx.variables, rng, max_degree=3)
            if sample_ctx.act(pbw_normal_form(frame, word, cfg.pbw_degree), f) != _apply_word(sample_ctx, word, f):
                failures["homomorphism"] += 1
    report.check("Dunkl operators commute", ref, 0, failures["commute"])
    report.check("[T_i, x_j] matches the defining relation", ref, 0, failures["consistency"])
    report.check("h acts on degree m by m + n/2 - sum c", ref, 0, failures["grading"])
    report.check("PBW products act as composites", ref, 0, failures["homomorphism"])
    report.objects["dunkl_samples"] = {"per_value": cfg.dunkl_samples, "values": [str(c) for c in sampled_values]}


def coinvariants_suite(rs: RootSystemData, group: WeylGroup, cfg: RunConfig, report: Report):
    if rs.rank > cfg.coinvariant_max_rank and not cfg.allow_large:
        raise UnsupportedParameter(
            f"diagonal coinvariants of {rs.label} exceed rank {cfg.coinvariant_max_rank}; pass --allow-large"
        )
    ref = "diagonal coinvariants"
    x2, y2 = quadratic_invariants(rs)
    variables = bi_variables(rs.rank)
    euler = MultiPoly.zero(variables)
    for i in range(rs.rank):
        euler = euler + MultiPoly.variable(variables, i) * MultiPoly.variable(variables, rs.rank + i)
    report.check("{y^2, x^2} = 4 sum x_i y_i", "Poisson bracket", True, poisson_bracket(y2, x2) == euler * 4)
    identities = poisson_identity_check(rs.rank, random.Random(cfg.seed), cfg.poisson_samples)
    report.objects["poisson"] = identities.to_dict()
    for name, label in (
        ("antisymmetry", "{f, g} = -{g, f}"),
        ("leibniz", "{f, gh} = {f, g}h + g{f, h}"),
        ("jacobi", "Jacobi identity holds"),
        ("bidegree", "{f, g} has bidegree deg f + deg g - (1, 1)"),
    ):
        report.check(f"{label} on sampled triples", "Poisson bracket", 0, identities.failures[name])

    table = diagonal_coinvariant_dims(rs, group, cfg.bidegree_bound, cfg.cell_budget)
    report.objects["DW"] = table.to_dict()
    report.check("table certified by a zero anti-diagonal", ref, True, table.certified_degree is not None)
    report.check("table symmetric under x <-> y", ref, True, table.is_symmetric())
    classical = LaurentPoly.constant(1)
    for d in rs.degrees:
        classical = classical * LaurentPoly.geometric(d - 1)
    report.check("y-degree 0 column is the classical coinvariant algebra", ref, classical, table.column_series())
    if table.certified_degree is not None:
        comparison = compare_DW_RW(rs, table)
        report.objects["DW_vs_RW"] = comparison.to_dict()
        report.check("D_W dominates R_W coefficientwise", ref, True, comparison.dominates)
        if rs.type_label == "A":
            report.check("D_W equals R_W in type A", ref, True, comparison.equal)

    generation = wallach_generation_check(rs, group, cell_budget=cfg.cell_budget)
    report.objects["generation"] = generation.to_dict()
    report.check("invariants and brackets generate the diagonal invariants", "generation", True, generation.passed)


def typeb_suite(rs: RootSystemData, group: WeylGroup, cfg: RunConfig, report: Report):
    n, label = rs.rank, rs.type_label
    if label not in ("B", "D"):
        raise UnsupportedParameter(f"the typeB suite runs on types B and D, not {rs.label}")
    if not cfg.allow_large and ((label == "B" and n > 3) or (label == "D" and n > 4)):
        raise UnsupportedParameter(f"{rs.label} is beyond the default range; pass --allow-large")
    ref = "Koszul model"
    model = build_koszul_model(n, label)
    report.check("dim C[h]/I = q^n", ref, model.q ** n, sum(1 for _ in model.basis()))
    report.check("x_1^q lies in I", ref, True, model.normal_form((model.q,) + (0,) * (n - 1)) is None)

    theta = build_theta(n, label)
    report.check("theta is bijective", "theta", True, theta.is_bijective())
    report.check("theta intertwines the generators", "theta", [], theta.equivariance_failures(signed_generators(n, label)))
    report.objects["theta_variants"] = theta_variants(n, label)

    cross = fixed_point_cross_check(n, label)
    report.objects["fixed_points"] = cross.to_dict()
    report.check("every element checked", ref, group.order, len(cross.rows))
    report.check("graded trace is the Koszul alternating sum", ref, True, cross.koszul_ok)
    report.check("V has the character of h", ref, True, cross.v_character_ok)
    report.check(
        "trace, fixed points on S, on Q/qQ and char_L agree",
        "fixed points on Q/(h+1)Q",
        len(cross.rows),
        sum(1 for r in cross.rows if r.ok),
    )


SUITE_FUNCTIONS: Dict[str, Callable] = {
    "series": series_suite,
    "characters": characters_suite,
    "cherednik": cherednik_suite,
    "coinvariants": coinvariants_suite,
    "typeB": typeb_suite,
}


def _applicable(suite: str, rs: RootSystemData, cfg: RunConfig) -> bool:
    if suite == "typeB":
        return rs.type_label in ("B", "D") and (cfg.allow_large or rs.rank <= (3 if rs.type_label == "B" else 4))
    if suite == "coinvariants":
        return rs.rank <= cfg.coinvariant_max_rank or cfg.allow_large
    return True


def verify(rs: RootSystemData, cfg: RunConfig, report: Report):
    if cfg.what != "all" and cfg.what not in SUITE_FUNCTIONS:
        raise UnsupportedParameter(f"unknown suite {cfg.what!r}; choose from {', '.join(SUITES)} or all")
    with report.timed("group"):
        group = enumerate_weyl_group(rs, cfg.group_budget)
    names = [s for s in SUITES if _applicable(s, rs, cfg)] if cfg.what == "all" else [cfg.what]
    for name in names:
        status(f"running {name} on {rs.label}", cfg.verbose)
        with report.timed(name):
            SUITE_FUNCTIONS[name](rs, group, cfg, report)


# -- series ---------------------------------------------------------------------


def emit_series(rs: RootSystemData, cfg: RunConfig, report: Report):
    what = cfg.what
    if what == "hilbL":
        series = hilbert_L(rs)
        report.objects["series"] = series
        report.check("hilbert_L at t=1", "hilbert series of L", (rs.h + 1) ** rs.rank, series.value_at_one())
        report.check("hilbert_L symmetric under t -> 1/t", "hilbert series of L", True, series.is_palindromic())
    elif what == "p":
        order = cfg.trunc if cfg.trunc is not None else 2 * rs.h
        series = invariant_series_p(rs).series(order)
        report.objects["series"] = series
        if rs.order <= cfg.group_budget:
            group = enumerate_weyl_group(rs, cfg.group_budget)
            report.check("p agrees with the Molien series", "invariant theory", series, molien_series(group, order))
    elif what == "eMc":
        tables: Dict[str, object] = {}
        for i in range(rs.rank + 1):
            tables[f"i={i}"] = sign_isotypic_standard_series(rs, i, cfg.m)
        report.objects["series"] = tables
        for name, ok in alternating_sum_check(rs, cfg.m).checks:
            report.check(name, "alternating-sum lemma", True, ok)
    elif what == "DW":
        if rs.rank > cfg.coinvariant_max_rank and not cfg.allow_large:
            raise UnsupportedParameter(f"diagonal coinvariants of {rs.label} need --allow-large")
        group = enumerate_weyl_group(rs, cfg.group_budget)
        table = diagonal_coinvariant_dims(rs, group, cfg.bidegree_bound, cfg.cell_budget)
        report.objects["table"] = table.to_dict()
        report.check("table certified by a zero anti-diagonal", "diagonal coinvariants", True, table.certified_degree is not None)
    else:
        raise UnsupportedParameter(f"unknown series {what!r}; choose from {', '.join(SERIES_KINDS)}")


def run(cfg: RunConfig) -> Report:
    """Build the root system and run the configured command."""
    rs = build_root_system(cfg.type_label, cfg.rank)
    report = Report(config=cfg.to_dict())
    if cfg.command == "info":
        info(rs, cfg, report)
    elif cfg.command == "verify":
        verify(rs, cfg, report)
    elif cfg.command == "series":
        with report.timed("series"):
            emit_series(rs, cfg, report)
    else:
        raise UnsupportedParameter(f"unknown command {cfg.command!r}")
    return report
