"""Weighted fans and tropical cycles.

A TropicalCycle is a pure weighted fan tagged with the min or max convention;
WeightedFan is the escape hatch for non-pure results. Construction never
checks balancing; is_balanced is the separate verifier. The JSON schema here
is the on-disk interchange format of the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CycleSchemaError,
    DimMismatchError,
    MultiplicityMismatchError,
    NotPureError,
)
from .fans import (
    Fan,
    cone_from_generators,
    faces,
    fan_cones,
    fan_dim,
    fan_from_cones,
    is_pure,
    negate_cone,
)
from .linalg import (
    IntMatrix,
    dot,
    int_inverse,
    integer_kernel_basis,
    smith_normal_form,
    solve_rational,
    vec_neg,
)


@dataclass(frozen=True)
class TropicalCycle:
    """A pure weighted fan with a convention tag."""

    fan: Fan
    multiplicities: tuple
    convention: str

    def __post_init__(self):
        if len(self.multiplicities) != self.fan.n_maximal():
            raise MultiplicityMismatchError(
                f"{self.fan.n_maximal()} maximal cones but "
                f"{len(self.multiplicities)} multiplicities")
        if not is_pure(self.fan):
            raise NotPureError("a tropical cycle needs a pure fan")

    @property
    def ambient_dim(self) -> int:
        return self.fan.ambient_dim


@dataclass(frozen=True)
class WeightedFan:
    """A weighted fan that is allowed to be non-pure."""

    fan: Fan
    multiplicities: tuple
    convention: str

    def __post_init__(self):
        if len(self.multiplicities) != self.fan.n_maximal():
            raise MultiplicityMismatchError(
                f"{self.fan.n_maximal()} maximal cones but "
                f"{len(self.multiplicities)} multiplicities")

    @property
    def ambient_dim(self) -> int:
        return self.fan.ambient_dim


def weighted_from_cones(ambient_dim, weighted_cones, convention,
                        merge_duplicates=False):
    """Assemble a cycle (or weighted fan when non-pure) from (cone, weight)
    pairs; zero-weight cones are dropped, duplicates summed when merging."""
    groups = {}
    order = []
    for cone, weight in weighted_cones:
        key = (cone.rays.entries, cone.lineality.entries)
        if key in groups:
            if not merge_duplicates:
                raise MultiplicityMismatchError("duplicate maximal cone")
            prev_cone, prev_w = groups[key]
            groups[key] = (prev_cone, prev_w + weight)
        else:
            groups[key] = (cone, weight)
            order.append(key)
    kept = [(c, w) for key in order for c, w in [groups[key]] if w != 0]
    for _, w in kept:
        if w < 0:
            raise MultiplicityMismatchError("multiplicities must be positive")
    fan, sources = fan_from_cones(ambient_dim, [c for c, _ in kept],
                                  drop_contained=False)
    mults = tuple(kept[i][1] for i in sources)
    if is_pure(fan):
        return TropicalCycle(fan, mults, convention)
    return WeightedFan(fan, mults, convention)


def make_cycle(fan: Fan, multiplicities, convention: str = "min") -> TropicalCycle:
    """Attach weights to the maximal cones of a pure fan.

    Balancing is deliberately not checked here; use is_balanced.
    """
    mults = tuple(int(m) for m in multiplicities)
    if len(mults) != fan.n_maximal():
        raise MultiplicityMismatchError(
            f"{fan.n_maximal()} maximal cones but {len(mults)} multiplicities")
    if any(m < 0 for m in mults):
        raise MultiplicityMismatchError("multiplicities must be positive")
    if not is_pure(fan):
        raise NotPureError("fan is not pure; use WeightedFan")
    if any(m == 0 for m in mults):
        cones = fan_cones(fan)
        pairs = [(c, m) for c, m in zip(cones, mults) if m != 0]
        out = weighted_from_cones(fan.ambient_dim, pairs, convention)
        if isinstance(out, WeightedFan):
            raise NotPureError("fan is not pure after dropping zero weights")
        return out
    return TropicalCycle(fan, mults, convention)


def swap_convention(cycle):
    """Negate the fan pointwise and flip the convention tag (an involution)."""
    fan = cycle.fan
    flipped = "max" if cycle.convention == "min" else "min"
    if fan.is_empty():
        return type(cycle)(fan, cycle.multiplicities, flipped)
    pairs = [(negate_cone(c), m)
             for c, m in zip(fan_cones(fan), cycle.multiplicities)]
    out = weighted_from_cones(fan.ambient_dim, pairs, flipped)
    return out


def rays(cycle) -> IntMatrix:
    return cycle.fan.rays


def lineality_space(cycle) -> IntMatrix:
    return cycle.fan.lineality


def max_cones(cycle) -> list:
    return [list(c) for c in cycle.fan.maximal_cones]


def multiplicities(cycle) -> list:
    return list(cycle.multiplicities)


def cycle_dim(cycle) -> int:
    return fan_dim(cycle.fan)


def span_lattice_basis(cone) -> IntMatrix:
    """Saturated basis (columns) of span(cone) intersected with Z^n."""
    return integer_kernel_basis(cone.equations)


def quotient_normal_vector(sigma, tau):
    """A lattice vector of span(sigma) generating the rank-one quotient
    (Z^n cap span sigma) / (Z^n cap span tau), signed to point into sigma."""
    b_sigma = span_lattice_basis(sigma)
    b_tau = span_lattice_basis(tau)
    d = b_sigma.ncols
    if b_tau.ncols != d - 1:
        raise DimMismatchError("tau is not a codimension-one face of sigma")
    coords = []
    for col in b_tau.columns():
        x = solve_rational(b_sigma.entries, col)
        if x is None or any(v.denominator != 1 for v in x):
            raise DimMismatchError("face lattice is not contained in the cell lattice")
        coords.append(tuple(v.numerator for v in x))
    c = IntMatrix.from_columns(coords, d)
    _, p, _ = smith_normal_form(c)
    pinv = int_inverse(p)
    v = b_sigma.mul_vec(pinv.column(d - 1))
    # orient across the facet: positive on an inequality of sigma tight on tau
    for a in sigma.inequalities.entries:
        tight = all(dot(a, g) == 0 for g in tau.rays.columns()) and \
            all(dot(a, g) == 0 for g in tau.lineality.columns())
        if tight:
            s = dot(a, v)
            if s == 0:
                continue
            return v if s > 0 else vec_neg(v)
    raise DimMismatchError("no inequality of sigma is tight exactly on tau")


def is_balanced(cycle) -> bool:
    """Check the balancing condition at every codimension-one face."""
    if isinstance(cycle, WeightedFan) and not is_pure(cycle.fan):
        raise NotPureError("balancing is defined for pure cycles only")
    fan = cycle.fan
    if fan.is_empty():
        return True
    cones = fan_cones(fan)
    facet_map = {}
    for c in cones:
        if c.dim == 0:
            continue
        for tau in faces(c, 1):
            facet_map[(tau.rays.entries, tau.lineality.entries)] = tau
    for tau in facet_map.values():
        total = [0] * fan.ambient_dim
        for c, m in zip(cones, cycle.multiplicities):
            if c.contains_cone(tau) and c.dim == tau.dim + 1:
                v = quotient_normal_vector(c, tau)
                total = [t + m * x for t, x in zip(total, v)]
        if any(dot(row, total) != 0 for row in tau.equations.entries):
            return False
    return True


def cycle_to_dict(cycle) -> dict:
    """The JSON-serializable form of a cycle or weighted fan."""
    fan = cycle.fan
    return {
        "convention": cycle.convention,
        "ambient_dim": fan.ambient_dim,
        "rays": [list(c) for c in fan.rays.columns()],
        "lineality": [list(c) for c in fan.lineality.columns()],
        "maximal_cones": [list(c) for c in fan.maximal_cones],
        "multiplicities": list(cycle.multiplicities),
        "dim": fan_dim(fan),
        "pure": is_pure(fan),
    }


def fan_to_dict(fan: Fan, convention: str) -> dict:
    d = cycle_to_dict(WeightedFan(fan, (1,) * fan.n_maximal(), convention))
    del d["multiplicities"]
    return d


def _require(data, field, kind):
    if field not in data:
        raise CycleSchemaError("missing field", field)
    value = data[field]
    if kind is list and not isinstance(value, list):
        raise CycleSchemaError("expected a list", field)
    if kind is int and not isinstance(value, int):
        raise CycleSchemaError("expected an integer", field)
    return value


def _int_columns(value, ambient, field):
    cols = []
    for col in value:
        if not isinstance(col, list) or len(col) != ambient \
                or not all(isinstance(x, int) for x in col):
            raise CycleSchemaError(
                f"expected integer columns of length {ambient}", field)
        cols.append(tuple(col))
    return cols


def cycle_from_dict(data, require_weights: bool = True):
    """Rebuild a cycle, weighted fan, or bare fan from its JSON form."""
    if not isinstance(data, dict):
        raise CycleSchemaError("expected a JSON object", "$")
    convention = _require(data, "convention", None)
    if convention not in ("min", "max"):
        raise CycleSchemaError("convention must be 'min' or 'max'", "convention")
    ambient = _require(data, "ambient_dim", int)
    if ambient < 0:
        raise CycleSchemaError("ambient_dim must be nonnegative", "ambient_dim")
    ray_cols = _int_columns(_require(data, "rays", list), ambient, "rays")
    lin_cols = _int_columns(_require(data, "lineality", list), ambient, "lineality")
    mc = _require(data, "maximal_cones", list)
    cones = []
    for cone_idx in mc:
        if not isinstance(cone_idx, list) or \
                not all(isinstance(i, int) and 0 <= i < len(ray_cols)
                        for i in cone_idx):
            raise CycleSchemaError("bad ray index set", "maximal_cones")
        cones.append(cone_from_generators([ray_cols[i] for i in cone_idx],
                                          lin_cols, ambient))
    weights = None
    if "multiplicities" in data and data["multiplicities"] is not None:
        weights = data["multiplicities"]
        if not isinstance(weights, list) or \
                not all(isinstance(m, int) for m in weights):
            raise CycleSchemaError("expected a list of integers", "multiplicities")
        if len(weights) != len(cones):
            raise CycleSchemaError(
                f"{len(cones)} maximal cones but {len(weights)} multiplicities",
                "multiplicities")
        if any(m < 0 for m in weights):
            raise CycleSchemaError("negative multiplicity", "multiplicities")
    elif require_weights:
        raise CycleSchemaError("missing field", "multiplicities")
    if weights is None:
        fan, _ = fan_from_cones(ambient, cones, drop_contained=True)
        return fan
    return weighted_from_cones(ambient, list(zip(cones, weights)), convention,
                               merge_duplicates=False)
