"""Picard lattices of iterated blow-ups of the plane.

A model starts from n general lines in P^2 (orthogonal basis H, e1, ..., ek
with the diagonal form +1, -1, ..., -1) and applies blow-up steps, each
naming the two visible curves whose intersection point gets blown up. The
model tracks the class of every visible curve (strict transforms of the
lines and of the exceptional curves) together with which pairs still meet.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from logsurf.dualgraph import Disconnected, DualGraph, GraphVertex, _components, intersection_matrix
from logsurf.exact import QMatrix, Rational, is_negative_definite, rat


class UnknownLabel(Exception):
    pass


class PairNotIncident(Exception):
    pass


class NotContractible(Exception):
    pass


class RecipeError(Exception):
    pass


@dataclass(frozen=True)
class QDivisor:
    """Formal rational combination of visible curves; absent label means 0."""

    coeffs: tuple[tuple[str, Rational], ...]

    def __post_init__(self) -> None:
        cleaned = tuple(sorted((lbl, rat(c)) for lbl, c in self.coeffs if rat(c) != 0))
        labels = [lbl for lbl, _ in cleaned]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate labels in divisor")
        object.__setattr__(self, "coeffs", cleaned)

    @classmethod
    def from_dict(cls, d: Mapping[str, int | str | Rational]) -> QDivisor:
        return cls(tuple(d.items()))

    def as_dict(self) -> dict[str, Rational]:
        return dict(self.coeffs)

    def coeff(self, label: str) -> Rational:
        for lbl, c in self.coeffs:
            if lbl == label:
                return c
        return Fraction(0)

    def support(self) -> tuple[str, ...]:
        return tuple(lbl for lbl, _ in self.coeffs)

    def add(self, other: QDivisor) -> QDivisor:
        d = self.as_dict()
        for lbl, c in other.coeffs:
            d[lbl] = d.get(lbl, Fraction(0)) + c
        return QDivisor.from_dict(d)

    def sub(self, other: QDivisor) -> QDivisor:
        return self.add(other.scale(-1))

    def scale(self, r: int | str | Rational) -> QDivisor:
        rr = rat(r)
        return QDivisor(tuple((lbl, c * rr) for lbl, c in self.coeffs))

    def is_effective(self) -> bool:
        return all(c >= 0 for _, c in self.coeffs)


def qdiv(d: Mapping[str, int | str | Rational] | QDivisor) -> QDivisor:
    return d if isinstance(d, QDivisor) else QDivisor.from_dict(d)


@dataclass(frozen=True)
class BlowupRecipe:
    num_lines: int
    steps: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        if self.num_lines < 0:
            raise RecipeError("negative line count")


@dataclass
class SurfaceModel:
    rank: int
    basis: tuple[str, ...]
    visible: dict[str, tuple[Rational, ...]]
    incidence: frozenset[frozenset[str]]
    steps: tuple[tuple[str, str], ...]
    num_lines: int

    @property
    def form_diagonal(self) -> tuple[int, ...]:
        return (1,) + (-1,) * (self.rank - 1)

    @property
    def canonical_class(self) -> tuple[Rational, ...]:
        return (Fraction(-3),) + (Fraction(1),) * (self.rank - 1)

    def pairing(self, x: Sequence[Rational], y: Sequence[Rational]) -> Rational:
        if len(x) != self.rank or len(y) != self.rank:
            raise ValueError("class vector has wrong length")
        total = x[0] * y[0]
        for a, b in zip(x[1:], y[1:]):
            total -= a * b
        return total

    def visible_class(self, label: str) -> tuple[Rational, ...]:
        try:
            return self.visible[label]
        except KeyError:
            raise UnknownLabel(label) from None


def build_from_recipe(recipe: BlowupRecipe) -> SurfaceModel:
    """Blow up n general lines step by step; step i creates visible curve Ei."""
    n = recipe.num_lines
    k = len(recipe.steps)
    rank = 1 + k
    basis = ("H",) + tuple(f"e{i}" for i in range(1, k + 1))

    visible: dict[str, list[Fraction]] = {
        f"L{i}": [Fraction(1)] + [Fraction(0)] * k for i in range(n)
    }
    incidence = {frozenset((f"L{i}", f"L{j}")) for i in range(n) for j in range(i + 1, n)}
    for s, (a, b) in enumerate(recipe.steps, start=1):
        if a not in visible:
            raise UnknownLabel(f"step {s}: {a}")
        if b not in visible:
            raise UnknownLabel(f"step {s}: {b}")
        pair = frozenset((a, b))
        if pair not in incidence:
            raise PairNotIncident(f"step {s}: {a} and {b} do not meet")
        new = f"E{s}"
        visible[a][s] -= 1
        visible[b][s] -= 1
        col = [Fraction(0)] * (k + 1)
        col[s] = Fraction(1)
        visible[new] = col
        incidence.discard(pair)
        incidence.add(frozenset((new, a)))
        incidence.add(frozenset((new, b)))
    return SurfaceModel(
        rank=rank,
        basis=basis,
        visible={lbl: tuple(v) for lbl, v in visible.items()},
        incidence=frozenset(incidence),
        steps=tuple((a, b) for a, b in recipe.steps),
        num_lines=n,
    )


def divisor_class(m: SurfaceModel, d: QDivisor | Mapping[str, Rational]) -> tuple[Rational, ...]:
    dd = qdiv(d)
    total = [Fraction(0)] * m.rank
    for lbl, c in dd.coeffs:
        cls = m.visible_class(lbl)
        for i in range(m.rank):
            total[i] += c * cls[i]
    return tuple(total)


def _as_class(m: SurfaceModel, x) -> tuple[Rational, ...]:
    if isinstance(x, QDivisor):
        return divisor_class(m, x)
    if isinstance(x, str):
        return m.visible_class(x)
    if isinstance(x, Mapping):
        return divisor_class(m, QDivisor.from_dict(x))
    if isinstance(x, (tuple, list)):
        if len(x) != m.rank:
            raise ValueError("class vector has wrong length")
        return tuple(rat(c) for c in x)
    raise TypeError(f"cannot interpret {x!r} as a divisor or class")


def intersection(m: SurfaceModel, x, y) -> Rational:
    """Intersection number; x and y may be QDivisors, visible labels, or class vectors."""
    return m.pairing(_as_class(m, x), _as_class(m, y))


def log_pullback(
    m: SurfaceModel, line_coeffs: Sequence[int | str | Rational]
) -> tuple[QDivisor, tuple[Rational, ...]]:
    """Pull back K_{P^2} + sum c_i L_i through the whole blow-up tower.

    Returns the divisor D with f*(K + sum c_i L_i) = K_model + D (coefficients
    on every visible curve, found by the a+b-1 recursion at each step) and
    the class of K_model + D.
    """
    if len(line_coeffs) != m.num_lines:
        raise ValueError(f"need {m.num_lines} line coefficients, got {len(line_coeffs)}")
    coeffs: dict[str, Rational] = {f"L{i}": rat(c) for i, c in enumerate(line_coeffs)}
    for s, (a, b) in enumerate(m.steps, start=1):
        coeffs[f"E{s}"] = coeffs[a] + coeffs[b] - 1
    d = QDivisor.from_dict(coeffs)
    cls = divisor_class(m, d)
    k = m.canonical_class
    return d, tuple(x + y for x, y in zip(k, cls))


def germ_of_cluster(
    m: SurfaceModel,
    cluster: Iterable[str],
    boundary: Iterable[str] = (),
) -> DualGraph:
    """Export a contractible cluster of visible curves as a dual graph.

    Cluster curves become exceptional vertices, boundary curves plain ones.
    Edges come from pairwise intersection numbers, so the graph's Gram matrix
    reproduces the lattice one. The cluster must be negative definite
    (NotContractible otherwise) and the whole picture connected.
    """
    cl = list(dict.fromkeys(cluster))
    bd = [b for b in dict.fromkeys(boundary) if b not in cl]
    labels = cl + bd
    classes = {lbl: m.visible_class(lbl) for lbl in labels}
    gram = QMatrix.from_rows(
        [[m.pairing(classes[a], classes[b]) for b in cl] for a in cl]
    )
    if not is_negative_definite(gram):
        raise NotContractible("cluster intersection matrix is not negative definite")
    verts = []
    for lbl in labels:
        self_int = m.pairing(classes[lbl], classes[lbl])
        if self_int.denominator != 1:
            raise ValueError(f"{lbl} has non-integral self-intersection")
        verts.append(GraphVertex(lbl, int(self_int), genus=0, is_exceptional=lbl in set(cl)))
    edges: list[tuple[str, str]] = []
    for i, a in enumerate(labels):
        for b in labels[i + 1 :]:
            prod = m.pairing(classes[a], classes[b])
            if prod < 0 or prod.denominator != 1:
                raise ValueError(f"unexpected intersection {prod} between {a} and {b}")
            edges.extend([(a, b)] * int(prod))
    g = DualGraph(tuple(verts), tuple(edges))
    if len(_components(g)) > 1:
        raise Disconnected("cluster plus boundary is not connected")
    return g


def parse_recipe(obj: str | Mapping) -> tuple[BlowupRecipe, dict[str, QDivisor]]:
    """Read the recipe JSON: {"lines": n, "steps": [[a,b],...], "divisors": {...}}.

    Divisor coefficients are "p/q" strings or integers. Returns the recipe and
    any named divisors.
    """
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise RecipeError(f"bad JSON: {exc}") from exc
    if not isinstance(obj, Mapping):
        raise RecipeError("recipe must be a JSON object")
    if "lines" not in obj or "steps" not in obj:
        raise RecipeError("recipe needs 'lines' and 'steps'")
    try:
        num_lines = int(obj["lines"])
        steps = tuple((str(a), str(b)) for a, b in obj["steps"])
    except (TypeError, ValueError) as exc:
        raise RecipeError(f"malformed recipe: {exc}") from exc
    recipe = BlowupRecipe(num_lines, steps)
    divisors: dict[str, QDivisor] = {}
    for name, table in dict(obj.get("divisors", {})).items():
        if not isinstance(table, Mapping):
            raise RecipeError(f"divisor {name!r} must map labels to rationals")
        try:
            divisors[str(name)] = QDivisor.from_dict({str(k): rat(v) for k, v in table.items()})
        except (TypeError, ValueError) as exc:
            raise RecipeError(f"divisor {name!r}: {exc}") from exc
    return recipe, divisors
