"""Positivity machinery over a visible-curve model: Zariski decomposition,
nef and pseudo-effectivity certificates, thresholds, and volumes.

Every notion here is relative to the model's visible curves. nef_certificate
upgrades that to a surface-wide statement: once the class has an effective
representative supported on visible curves and meets every visible curve
non-negatively, any curve outside the representative's support meets it
non-negatively for free.

Divisors that involve the canonical class are passed as their visible part
plus ``plus_canonical=True``; the class computations add K = -3H + sum e_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from logsurf.dualgraph import (
    DualGraph,
    GermClassification,
    NotNegativeDefinite,
    classify_germ,
)
from logsurf.exact import (
    FeasibilityResult,
    QMatrix,
    Rational,
    is_negative_definite,
    lp_feasible,
    rat,
    solve_linear,
)
from logsurf.lattice import (
    QDivisor,
    SurfaceModel,
    divisor_class,
    germ_of_cluster,
    qdiv,
)


class NegativeCoefficient(Exception):
    pass


class NoEffectiveRepresentative(Exception):
    pass


class NegativeIntersection(Exception):
    pass


class EmptyInterval(Exception):
    pass


def _target_class(m: SurfaceModel, d, plus_canonical: bool) -> tuple[Rational, ...]:
    if isinstance(d, (QDivisor, Mapping)):
        cls = divisor_class(m, qdiv(d))
    elif isinstance(d, (tuple, list)):
        if len(d) != m.rank:
            raise ValueError("class vector has wrong length")
        cls = tuple(rat(c) for c in d)
    else:
        raise TypeError(f"cannot interpret {d!r} as a divisor or class")
    if plus_canonical:
        cls = tuple(a + b for a, b in zip(m.canonical_class, cls))
    return cls


def _visible_gram(m: SurfaceModel, labels: Sequence[str]) -> QMatrix:
    return QMatrix.from_rows(
        [[m.pairing(m.visible_class(a), m.visible_class(b)) for b in labels] for a in labels]
    )


@dataclass(frozen=True)
class ZariskiResult:
    positive_coeffs: QDivisor
    positive_class: tuple[Rational, ...]
    negative_part: QDivisor
    support_gram: QMatrix
    includes_canonical: bool


def zariski(
    m: SurfaceModel,
    d: QDivisor | Mapping,
    plus_canonical: bool = False,
    scan_order: Sequence[str] | None = None,
    one_at_a_time: bool = False,
) -> ZariskiResult:
    """Zariski decomposition of [K +] D by Fujita iteration.

    Grow the negative support S: with N solving (D - N).C = 0 on S, add every
    visible curve the current candidate still meets negatively, until none is
    left. The result does not depend on the scan order; ``one_at_a_time``
    adds only the first violator per round, which is how the order-independence
    property gets exercised.
    """
    dd = qdiv(d)
    if not dd.is_effective():
        raise ValueError("divisor must be effective on visible curves")
    labels = list(scan_order) if scan_order is not None else sorted(m.visible)
    if set(labels) != set(m.visible) or len(labels) != len(m.visible):
        raise ValueError("scan_order must be a permutation of the visible labels")
    d_class = _target_class(m, dd, plus_canonical)
    d_dot = {lbl: m.pairing(d_class, m.visible_class(lbl)) for lbl in labels}

    support: list[str] = []
    while True:
        if support:
            gram = _visible_gram(m, support)
            if not is_negative_definite(gram):
                raise NotNegativeDefinite(f"support {support} has degenerate intersection matrix")
            n_vals = solve_linear(gram, tuple(d_dot[lbl] for lbl in support))
            for lbl, v in zip(support, n_vals):
                if v < 0:
                    raise NegativeCoefficient(f"negative part coefficient {v} at {lbl}")
        else:
            n_vals = ()
        n_div = QDivisor.from_dict(dict(zip(support, n_vals)))
        n_class = divisor_class(m, n_div)
        p_class = tuple(a - b for a, b in zip(d_class, n_class))
        violators = [
            lbl
            for lbl in labels
            if lbl not in support and m.pairing(p_class, m.visible_class(lbl)) < 0
        ]
        if not violators:
            break
        support.extend(violators[:1] if one_at_a_time else violators)

    for lbl in support:
        if m.pairing(p_class, m.visible_class(lbl)) != 0:
            raise AssertionError("positive part meets its own negative support")
    return ZariskiResult(
        positive_coeffs=dd.sub(n_div),
        positive_class=p_class,
        negative_part=n_div,
        support_gram=_visible_gram(m, support),
        includes_canonical=plus_canonical,
    )


def volume(m: SurfaceModel, d: QDivisor | Mapping, plus_canonical: bool = False) -> Rational:
    """Self-intersection of the Zariski positive part (0 when not big)."""
    z = zariski(m, d, plus_canonical)
    return m.pairing(z.positive_class, z.positive_class)


def psef_test(m: SurfaceModel, d, plus_canonical: bool = False) -> FeasibilityResult:
    """Is the class a nonnegative combination of visible curves? Exact LP."""
    target = _target_class(m, d, plus_canonical)
    labels = sorted(m.visible)
    a = QMatrix.from_rows(
        [[m.visible_class(lbl)[i] for lbl in labels] for i in range(m.rank)]
    )
    return lp_feasible(a, target)


@dataclass(frozen=True)
class NefCertificate:
    effective_rep: QDivisor
    visible_intersections: dict[str, Rational]


def nef_certificate(m: SurfaceModel, d, plus_canonical: bool = False) -> NefCertificate:
    """Certify nefness of a class through the visible-curve model.

    Finds an effective representative supported on visible curves (LP) and
    checks the class against every visible curve. Together these cover all
    curves on the surface: anything else meets the representative's support
    properly, hence non-negatively.
    """
    target = _target_class(m, d, plus_canonical)
    inters = {lbl: m.pairing(target, m.visible_class(lbl)) for lbl in sorted(m.visible)}
    for lbl, v in inters.items():
        if v < 0:
            raise NegativeIntersection(f"{lbl}: intersection {v} < 0")
    feas = psef_test(m, target)
    if not feas.feasible:
        raise NoEffectiveRepresentative("class is not a nonnegative visible combination")
    rep = QDivisor.from_dict(dict(zip(sorted(m.visible), feas.x)))
    return NefCertificate(effective_rep=rep, visible_intersections=inters)


@dataclass(frozen=True)
class ThresholdResult:
    value: Rational | None
    bracket: tuple[Rational, Rational | None] | None = None
    binding_constraints: tuple[str, ...] = ()
    certificate_at_value: object = None
    certified: bool = True
    lc_bound_ok: bool = True
    farkas_below: tuple[Rational, ...] | None = None


def nef_threshold(
    m: SurfaceModel,
    base: QDivisor | Mapping,
    ray: QDivisor | Mapping,
    plus_canonical: bool = False,
) -> ThresholdResult:
    """inf{s >= 0 : ([K +] base + s*ray) meets every visible curve >= 0}.

    Each visible curve contributes a linear constraint in s, as does the lc
    coefficient bound (coefficient of base + s*ray at most 1 on every curve
    in either support). The constraint intervals are intersected exactly;
    EmptyInterval when nothing survives.
    """
    base_d, ray_d = qdiv(base), qdiv(ray)
    base_class = _target_class(m, base_d, plus_canonical)
    ray_class = divisor_class(m, ray_d)
    constraints: list[tuple[str, Rational, Rational]] = []
    for lbl in sorted(m.visible):
        c = m.visible_class(lbl)
        constraints.append((lbl, m.pairing(base_class, c), m.pairing(ray_class, c)))
    for lbl in sorted(set(base_d.support()) | set(ray_d.support())):
        # coefficient bound: base_l + s*ray_l <= 1
        constraints.append((f"coeff({lbl})", 1 - base_d.coeff(lbl), -ray_d.coeff(lbl)))
    lo = Fraction(0)
    hi: Rational | None = None
    for name, alpha, beta in constraints:
        if beta == 0:
            if alpha < 0:
                raise EmptyInterval(f"constraint {name} fails for every s")
        elif beta > 0:
            lo = max(lo, -alpha / beta)
        else:
            bound = -alpha / beta
            hi = bound if hi is None else min(hi, bound)
    if hi is not None and lo > hi:
        raise EmptyInterval(f"feasible interval is empty: lo={lo} > hi={hi}")
    binding = tuple(
        name for name, alpha, beta in constraints if beta > 0 and -alpha / beta == lo
    )
    value_class = tuple(b + lo * r for b, r in zip(base_class, ray_class))
    try:
        cert = nef_certificate(m, value_class)
    except NoEffectiveRepresentative:
        cert = None
    return ThresholdResult(
        value=lo,
        bracket=(lo, hi),
        binding_constraints=binding,
        certificate_at_value=cert,
    )


def _simplest_between(lo: Rational, hi: Rational) -> Fraction:
    """Smallest-denominator rational in the closed interval [lo, hi]."""
    a, b = Fraction(lo), Fraction(hi)
    if a > b:
        raise ValueError("empty interval")

    def rec(a: Fraction, b: Fraction) -> Fraction:
        fl = a.numerator // a.denominator
        if a == fl:
            return Fraction(fl)
        if fl + 1 <= b:
            return Fraction(fl + 1)
        return fl + 1 / rec(1 / (b - fl), 1 / (a - fl))

    return rec(a, b)


def _simplest_candidate(lo: Rational, hi: Rational) -> Fraction:
    """Smallest-denominator rational in the half-open interval (lo, hi]."""
    c = _simplest_between(lo, hi)
    if c > lo:
        return c
    return _simplest_between((Fraction(lo) + Fraction(hi)) / 2, hi)


def pet(
    m: SurfaceModel,
    base: QDivisor | Mapping,
    ray: QDivisor | Mapping,
    resolution: Rational,
    plus_canonical: bool = False,
) -> ThresholdResult:
    """Pseudo-effective threshold inf{t >= 0 : [K +] base + t*ray visible-effective}.

    Bisection on psef_test down to the requested bracket width, then
    smallest-denominator candidates inside the bracket. A candidate c counts
    as certified exact when the class at c is feasible and a Farkas vector y
    from an infeasible probe p < c satisfies y.(class at c) >= 0: y.(class at
    t) is linear in t and negative at p, so it is negative for all t < p as
    well, while effectiveness of the ray makes the feasible set upward
    closed. Without a certificate the bracket is returned and value is None.
    """
    res = rat(resolution)
    if res <= 0:
        raise ValueError("resolution must be positive")
    base_d, ray_d = qdiv(base), qdiv(ray)
    if not ray_d.is_effective():
        raise ValueError("ray must be effective: upward closure of the feasible set depends on it")
    base_class = _target_class(m, base_d, plus_canonical)
    ray_class = divisor_class(m, ray_d)
    labels = sorted(m.visible)
    a = QMatrix.from_rows(
        [[m.visible_class(lbl)[i] for lbl in labels] for i in range(m.rank)]
    )

    def class_at(t: Rational) -> tuple[Rational, ...]:
        return tuple(b + t * r for b, r in zip(base_class, ray_class))

    def feas(t: Rational) -> FeasibilityResult:
        return lp_feasible(a, class_at(t))

    def lc_ok(t: Rational) -> bool:
        return all(
            base_d.coeff(lbl) + t * ray_d.coeff(lbl) <= 1
            for lbl in set(base_d.support()) | set(ray_d.support())
        )

    def witness(x: Sequence[Rational]) -> QDivisor:
        return QDivisor.from_dict(dict(zip(labels, x)))

    r0 = feas(Fraction(0))
    if r0.feasible:
        return ThresholdResult(
            value=Fraction(0),
            certificate_at_value=witness(r0.x),
            lc_bound_ok=lc_ok(Fraction(0)),
        )
    if all(c == 0 for c in ray_class):
        return ThresholdResult(value=None, certified=False, farkas_below=r0.y)

    lo, lo_y = Fraction(0), r0.y
    hi = Fraction(1)
    hi_x = None
    for _ in range(64):
        r = feas(hi)
        if r.feasible:
            hi_x = r.x
            break
        lo, lo_y = hi, r.y
        hi *= 2
    if hi_x is None:
        return ThresholdResult(value=None, bracket=(lo, None), certified=False, farkas_below=lo_y)

    while hi - lo > res:
        mid = (lo + hi) / 2
        r = feas(mid)
        if r.feasible:
            hi, hi_x = mid, r.x
        else:
            lo, lo_y = mid, r.y

    for _ in range(8):
        cand = _simplest_candidate(lo, hi)
        r_c = feas(cand)
        if not r_c.feasible:
            lo, lo_y = cand, r_c.y
            continue
        if cand < hi:
            hi, hi_x = cand, r_c.x
        probe = (lo + cand) / 2
        for _ in range(40):
            r_p = feas(probe)
            if r_p.feasible:
                # Threshold lies below the candidate; tighten and retry.
                hi, hi_x = probe, r_p.x
                break
            lo, lo_y = probe, r_p.y
            at_cand = sum(yi * ci for yi, ci in zip(r_p.y, class_at(cand)))
            if at_cand >= 0:
                return ThresholdResult(
                    value=cand,
                    bracket=(lo, hi),
                    certificate_at_value=witness(r_c.x),
                    certified=True,
                    lc_bound_ok=lc_ok(cand),
                    farkas_below=r_p.y,
                )
            probe = (probe + cand) / 2
        else:
            break
    return ThresholdResult(
        value=None,
        bracket=(lo, hi),
        certified=False,
        farkas_below=lo_y,
        certificate_at_value=witness(hi_x),
    )


def pullback_after_contraction(
    m: SurfaceModel,
    contracted: Iterable[str],
    d: QDivisor | Mapping | None = None,
    include_canonical: bool = False,
) -> tuple[QDivisor, tuple[Rational, ...]]:
    """Pull a divisor back through the contraction of the given curves.

    Solves for coefficients on the contracted curves so that the total meets
    each of them in zero; that is the numerical pullback of the image of
    [K +] d from the contracted surface. d must be supported away from the
    contracted set.
    """
    cset = list(dict.fromkeys(contracted))
    dd = qdiv(d) if d is not None else QDivisor(())
    if set(dd.support()) & set(cset):
        raise ValueError("divisor must be supported away from the contracted curves")
    gram = _visible_gram(m, cset)
    if cset and not is_negative_definite(gram):
        raise NotNegativeDefinite("contracted set is not negative definite")
    t_class = _target_class(m, dd, include_canonical)
    rhs = tuple(-m.pairing(t_class, m.visible_class(lbl)) for lbl in cset)
    sol = solve_linear(gram, rhs) if cset else ()
    total = dd.add(QDivisor.from_dict(dict(zip(cset, sol))))
    return total, _target_class(m, total, include_canonical)


@dataclass(frozen=True)
class ContractionReport:
    contracted: tuple[str, ...]
    clusters: tuple[tuple[str, ...], ...]
    picard_number: int
    cluster_germs: tuple[DualGraph, ...]
    cluster_classifications: tuple[GermClassification, ...]
    zariski_result: ZariskiResult | None = field(repr=False, default=None)


def contraction_report(
    m: SurfaceModel, d: QDivisor | Mapping, plus_canonical: bool = False
) -> ContractionReport:
    """What the ample model of [K +] d contracts, cluster by cluster."""
    z = zariski(m, d, plus_canonical)
    contracted = tuple(
        lbl
        for lbl in sorted(m.visible)
        if m.pairing(z.positive_class, m.visible_class(lbl)) == 0
    )
    adj: dict[str, list[str]] = {lbl: [] for lbl in contracted}
    for i, x in enumerate(contracted):
        for y in contracted[i + 1 :]:
            if m.pairing(m.visible_class(x), m.visible_class(y)) > 0:
                adj[x].append(y)
                adj[y].append(x)
    seen: set[str] = set()
    clusters: list[tuple[str, ...]] = []
    for lbl in contracted:
        if lbl in seen:
            continue
        stack, comp = [lbl], []
        seen.add(lbl)
        while stack:
            cur = stack.pop()
            comp.append(cur)
            for nb in adj[cur]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        clusters.append(tuple(sorted(comp)))
    clusters.sort()
    germs = tuple(germ_of_cluster(m, cl) for cl in clusters)
    return ContractionReport(
        contracted=contracted,
        clusters=tuple(clusters),
        picard_number=m.rank - len(contracted),
        cluster_germs=germs,
        cluster_classifications=tuple(classify_germ(g) for g in germs),
        zariski_result=z,
    )
