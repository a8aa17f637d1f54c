"""Finite sampled families of trifiltered spaces and their defect strata.

A ``SampledFamily`` pairs labeled parameter points with one fiber each and
an optional adjacency graph recording which samples are neighbors (grid
edges, typically).  Declaring a family ``weight_locked`` asserts that the
Hodge numbers are the same at every sample; this is checked at
construction time and is the precondition for ``alpha_map``.

``alpha_map`` evaluates the splitting defect fiberwise and partitions the
sample set into strata of constant defect.  Two diagnostics sit on top of
it:

* ``hypothesis_H_audit`` compares the full f-table at each point against
  its most frequent value over the family, per (p, q).  The locus where
  nothing deviates is where the family looks locally constant, and on the
  worked grids below it coincides with the defect strata.
* ``semicontinuity_report`` orients every defect-changing edge in the
  increasing direction and flags points that are strict local maxima of
  the defect.  Special fibers should sit at local minima, so a flagged
  point means the sample grid caught something a genuine family cannot do.

Per-point evaluation is independent, so ``alpha_map`` accepts a worker
count; results are aggregated in sample order either way.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from mixedhodge.exactfield import GaussianRational, gauss
from mixedhodge.filtration import common_window, filtered_space
from mixedhodge.invariants import alpha
from mixedhodge.linalg import intersect, span, zero_subspace
from mixedhodge.multifilt import (
    TrifilteredSpace,
    hodge_numbers,
    is_opposed,
    triple_from_json,
)

# one point's f-table, as sorted ((p, q), dim) pairs over a shared window
FTable = tuple[tuple[tuple[int, int], int], ...]


@dataclass(frozen=True)
class ParameterPoint:
    """A labeled sample point: ordered named coordinates, real or complex."""

    label: str
    coords: tuple[tuple[str, float | complex], ...]

    def __post_init__(self) -> None:
        if not isinstance(self.label, str) or not self.label:
            raise ValueError("parameter label must be a nonempty string")
        names = [n for n, _ in self.coords]
        if len(set(names)) != len(names):
            raise ValueError(f"repeated coordinate name at {self.label!r}")
        for name, value in self.coords:
            if not isinstance(name, str) or not name:
                raise ValueError("coordinate names must be nonempty strings")
            if not isinstance(value, (float, complex)):
                raise ValueError(f"coordinate {name!r} must be float or complex")


def parameter_point(label: str, coords) -> ParameterPoint:
    """Build a ParameterPoint from a dict or an iterable of (name, value)
    pairs, coercing ints and Fractions to float."""
    items = coords.items() if isinstance(coords, dict) else coords
    out = []
    for name, value in items:
        if isinstance(value, bool):
            raise ValueError(f"coordinate {name!r} must be a number")
        if isinstance(value, (int, Fraction)):
            value = float(value)
        out.append((name, value))
    return ParameterPoint(label, tuple(out))


@dataclass(frozen=True)
class SampledFamily:
    parameters: tuple[ParameterPoint, ...]
    fibers: tuple[TrifilteredSpace, ...]
    edges: tuple[tuple[int, int], ...] = ()
    weight_locked: bool = False

    def __post_init__(self) -> None:
        if not self.parameters:
            raise ValueError("a family needs at least one sample point")
        if len(self.parameters) != len(self.fibers):
            raise ValueError(
                f"{len(self.parameters)} parameter points "
                f"but {len(self.fibers)} fibers"
            )
        labels = [p.label for p in self.parameters]
        if len(set(labels)) != len(labels):
            counts = Counter(labels)
            dup = next(l for l in labels if counts[l] > 1)
            raise ValueError(f"duplicate parameter label {dup!r}")
        scheme = tuple(n for n, _ in self.parameters[0].coords)
        for p in self.parameters:
            if tuple(n for n, _ in p.coords) != scheme:
                raise ValueError(
                    f"coordinate names at {p.label!r} differ from the first point"
                )
        n0 = self.fibers[0].ambient_dim
        for p, t in zip(self.parameters, self.fibers):
            if t.ambient_dim != n0:
                raise ValueError(
                    f"fiber at {p.label!r} has ambient dimension "
                    f"{t.ambient_dim}, expected {n0}"
                )
        npts = len(self.parameters)
        for e in self.edges:
            i, j = e
            if not (0 <= i < j < npts):
                raise ValueError(f"bad edge {e!r}")
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("repeated edge")
        if self.weight_locked:
            h0 = hodge_numbers(self.fibers[0])
            for p, t in zip(self.parameters, self.fibers):
                if hodge_numbers(t) != h0:
                    raise ValueError(
                        "weight locked family has varying "
                        f"hodge numbers at {p.label!r}"
                    )


def sampled_family(
    parameters,
    fibers,
    edges=(),
    weight_locked: bool = False,
) -> SampledFamily:
    """Normalizing constructor: tuples throughout, edges deduplicated and
    stored with the smaller endpoint first."""
    canon = sorted({(min(i, j), max(i, j)) for i, j in edges})
    return SampledFamily(
        tuple(parameters), tuple(fibers), tuple(canon), weight_locked
    )


@dataclass(frozen=True)
class StrataReport:
    """Fiberwise defect data over a weight locked family.

    ``alphas`` is indexed like the sample points.  ``strata`` lists
    (defect value, point indices) with values ascending; the cells are
    disjoint and cover every point.  ``f_tables`` are all taken over one
    window shared by the whole family, so entries align across points.
    ``changing_edges`` are the adjacency edges whose endpoints land in
    different strata.
    """

    alphas: tuple[Fraction, ...]
    strata: tuple[tuple[Fraction, tuple[int, ...]], ...]
    f_tables: tuple[FTable, ...]
    changing_edges: tuple[tuple[int, int], ...]


def _family_windows(fam: SampledFamily) -> tuple[range, range]:
    f_lo = min(common_window(t.F).start for t in fam.fibers)
    f_hi = max(common_window(t.F).stop for t in fam.fibers)
    g_lo = min(common_window(t.G).start for t in fam.fibers)
    g_hi = max(common_window(t.G).stop for t in fam.fibers)
    return range(f_lo, f_hi), range(g_lo, g_hi)


def _point_data(
    fam: SampledFamily, i: int, ps: range, qs: range
) -> tuple[Fraction, FTable]:
    t = fam.fibers[i]
    if not is_opposed(t):
        raise ValueError(
            f"fiber at parameter point {fam.parameters[i].label!r} is not opposed"
        )
    table = tuple(
        ((p, q), intersect(t.F.at(p), t.G.at(q)).dim) for p in ps for q in qs
    )
    return alpha(t), table


def alpha_map(fam: SampledFamily, workers: int = 1) -> StrataReport:
    """Defect of every fiber, grouped into strata of constant value.

    Requires a weight locked family; a non-opposed fiber is reported by
    its parameter label.  ``workers`` > 1 evaluates points concurrently,
    with aggregation always in sample order.
    """
    if not fam.weight_locked:
        raise ValueError("alpha_map requires a weight-locked family")
    ps, qs = _family_windows(fam)
    indices = range(len(fam.fibers))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda i: _point_data(fam, i, ps, qs), indices))
    else:
        rows = [_point_data(fam, i, ps, qs) for i in indices]
    alphas = tuple(a for a, _ in rows)
    tables = tuple(tab for _, tab in rows)
    by_value: dict[Fraction, list[int]] = {}
    for i, a in enumerate(alphas):
        by_value.setdefault(a, []).append(i)
    strata = tuple((a, tuple(pts)) for a, pts in sorted(by_value.items()))
    changing = tuple(e for e in fam.edges if alphas[e[0]] != alphas[e[1]])
    return StrataReport(alphas, strata, tables, changing)


@dataclass(frozen=True)
class HypothesisAudit:
    """Pointwise constancy check of the f-table against its generic value.

    The generic value of each entry is the most frequent one over the
    sample set (ties go to the smaller value, which is the right call when
    special fibers only ever jump up).  ``deviations`` lists, per (p, q)
    with any deviation, the points that differ.  ``holds`` means no entry
    deviates anywhere.  ``stratum_verdicts`` answers the same question
    within each defect stratum, and ``min_is_generic`` records whether the
    minimum of every entry is attained on the majority sample set.
    """

    generic_table: FTable
    deviations: tuple[tuple[tuple[int, int], tuple[int, ...]], ...]
    holds: bool
    stratum_verdicts: tuple[tuple[Fraction, bool], ...]
    min_is_generic: bool


def hypothesis_H_audit(
    fam: SampledFamily, report: StrataReport | None = None
) -> HypothesisAudit:
    if report is None:
        report = alpha_map(fam)
    keys = [k for k, _ in report.f_tables[0]]
    per_point = [dict(tab) for tab in report.f_tables]
    generic: list[tuple[tuple[int, int], int]] = []
    deviations: list[tuple[tuple[int, int], tuple[int, ...]]] = []
    min_is_generic = True
    for key in keys:
        values = [tab[key] for tab in per_point]
        counts = Counter(values)
        top = max(counts.values())
        gen = min(v for v, c in counts.items() if c == top)
        generic.append((key, gen))
        off = tuple(i for i, v in enumerate(values) if v != gen)
        if off:
            deviations.append((key, off))
        if min(values) != gen:
            min_is_generic = False
    verdicts = tuple(
        (a, len({report.f_tables[i] for i in pts}) == 1)
        for a, pts in report.strata
    )
    return HypothesisAudit(
        tuple(generic), tuple(deviations), not deviations, verdicts, min_is_generic
    )


@dataclass(frozen=True)
class SemicontinuityReport:
    """``increasing_edges`` are the defect-changing edges oriented from the
    smaller value to the larger.  ``suspects`` are points strictly above
    all of their neighbors; isolated points have no say."""

    increasing_edges: tuple[tuple[int, int], ...]
    suspects: tuple[int, ...]


def semicontinuity_report(
    fam: SampledFamily, report: StrataReport | None = None
) -> SemicontinuityReport:
    if report is None:
        report = alpha_map(fam)
    a = report.alphas
    increasing = []
    for i, j in fam.edges:
        if a[i] < a[j]:
            increasing.append((i, j))
        elif a[j] < a[i]:
            increasing.append((j, i))
    neighbors: dict[int, list[int]] = {}
    for i, j in fam.edges:
        neighbors.setdefault(i, []).append(j)
        neighbors.setdefault(j, []).append(i)
    suspects = tuple(
        i for i in sorted(neighbors) if all(a[n] < a[i] for n in neighbors[i])
    )
    return SemicontinuityReport(tuple(increasing), suspects)


def _coord_json(value: float | complex):
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


def _coord_from_json(obj) -> float | complex:
    if isinstance(obj, bool):
        raise ValueError(f"malformed coordinate value {obj!r}")
    if isinstance(obj, (int, float)):
        return float(obj)
    if (
        isinstance(obj, (list, tuple))
        and len(obj) == 2
        and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in obj)
    ):
        return complex(float(obj[0]), float(obj[1]))
    raise ValueError(f"malformed coordinate value {obj!r}")


def family_to_json(fam: SampledFamily) -> dict:
    return {
        "parameters": [
            {
                "label": p.label,
                "coords": [[name, _coord_json(v)] for name, v in p.coords],
            }
            for p in fam.parameters
        ],
        "fibers": [t.to_json() for t in fam.fibers],
        "edges": [list(e) for e in fam.edges],
        "weight_locked": fam.weight_locked,
    }


def family_from_json(data: object) -> SampledFamily:
    if not isinstance(data, dict):
        raise ValueError("family JSON must be an object")
    for key in ("parameters", "fibers"):
        if key not in data:
            raise ValueError(f"family JSON missing key {key!r}")
    raw_params = data["parameters"]
    raw_fibers = data["fibers"]
    if not isinstance(raw_params, list) or not isinstance(raw_fibers, list):
        raise ValueError("parameters and fibers must be arrays")
    params = []
    for obj in raw_params:
        if not isinstance(obj, dict) or "label" not in obj or "coords" not in obj:
            raise ValueError(f"malformed parameter point {obj!r}")
        coords = obj["coords"]
        if not isinstance(coords, list) or any(
            not isinstance(c, (list, tuple)) or len(c) != 2 for c in coords
        ):
            raise ValueError(f"malformed coordinates at {obj.get('label')!r}")
        params.append(
            ParameterPoint(
                obj["label"],
                tuple((name, _coord_from_json(v)) for name, v in coords),
            )
        )
    fibers = [triple_from_json(obj) for obj in raw_fibers]
    edges = data.get("edges", [])
    if not isinstance(edges, list):
        raise ValueError("edges must be an array")
    pairs = []
    for e in edges:
        if (
            not isinstance(e, (list, tuple))
            or len(e) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)
        ):
            raise ValueError(f"malformed edge {e!r}")
        pairs.append((e[0], e[1]))
    locked = data.get("weight_locked", False)
    if not isinstance(locked, bool):
        raise ValueError("weight_locked must be a boolean")
    return sampled_family(params, fibers, pairs, locked)


def _fraction_json(a: Fraction):
    return int(a) if a.denominator == 1 else [a.numerator, a.denominator]


def strata_json(fam: SampledFamily, report: StrataReport) -> dict:
    """The strata report as a JSON-ready dict, points keyed by label."""
    points = []
    for i, p in enumerate(fam.parameters):
        points.append(
            {
                "label": p.label,
                "coords": [[name, _coord_json(v)] for name, v in p.coords],
                "alpha": _fraction_json(report.alphas[i]),
                "f": [[pp, qq, d] for (pp, qq), d in report.f_tables[i]],
            }
        )
    return {
        "points": points,
        "strata": [
            {
                "alpha": _fraction_json(a),
                "points": [fam.parameters[i].label for i in pts],
            }
            for a, pts in report.strata
        ],
        "changing_edges": [list(e) for e in report.changing_edges],
    }


def _fmt_coord(value: float | complex) -> str:
    if isinstance(value, complex):
        sign = "+" if value.imag >= 0 else "-"
        return f"{value.real!r}{sign}{abs(value.imag)!r}j"
    return repr(value)


def strata_csv(fam: SampledFamily, report: StrataReport) -> str:
    """One row per sample point: label, coordinates, defect, f-table."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    names = [name for name, _ in fam.parameters[0].coords]
    keys = [k for k, _ in report.f_tables[0]]
    writer.writerow(
        ["label", *names, "alpha", *(f"f_{p}_{q}" for p, q in keys)]
    )
    for i, p in enumerate(fam.parameters):
        writer.writerow(
            [
                p.label,
                *(_fmt_coord(v) for _, v in p.coords),
                str(report.alphas[i]),
                *(str(d) for _, d in report.f_tables[i]),
            ]
        )
    return buf.getvalue()


def two_flag_fiber(lam: GaussianRational, kap: GaussianRational) -> TrifilteredSpace:
    """Rank 2 with weight pieces in degrees 2 and 0; F and G are the lines
    through (lam, 1) and (kap, 1), both sitting in level 1.  The defect is
    0 when lam = kap and 1 otherwise, which makes this the fiber of choice
    for the worked grids."""
    low = span([[1, 0]], 2)
    w = filtered_space(2, {-1: low, 1: zero_subspace(2)})
    f = filtered_space(2, {1: span([(lam, gauss(1))], 2), 2: zero_subspace(2)})
    g = filtered_space(2, {1: span([(kap, gauss(1))], 2), 2: zero_subspace(2)})
    return TrifilteredSpace(2, W=w, F=f, G=g)


def _grid_edges(nrows: int, ncols: int) -> list[tuple[int, int]]:
    edges = []
    for r in range(nrows):
        for c in range(ncols):
            i = r * ncols + c
            if c + 1 < ncols:
                edges.append((i, i + 1))
            if r + 1 < nrows:
                edges.append((i, i + ncols))
    return edges


def lambda_conjugate_grid(
    radius: int = 5, step: Fraction = Fraction(1, 5)
) -> SampledFamily:
    """Square grid over the lambda plane with G the conjugate flag of F.

    The fiber at lambda is the rank 2 extension whose F-line passes
    through (lambda, 1); its defect is 0 exactly on the real axis and 1
    everywhere else.  The default covers [-1, 1]^2 at 11 samples per side.
    Grid coordinates are exact multiples of ``step``, so the real axis is
    hit exactly.
    """
    side = 2 * radius + 1
    params = []
    fibers = []
    for ia in range(side):
        re = (ia - radius) * step
        for ib in range(side):
            im = (ib - radius) * step
            lam = gauss(re, im)
            params.append(
                parameter_point(
                    f"({re},{im})", (("lambda_re", re), ("lambda_im", im))
                )
            )
            fibers.append(two_flag_fiber(lam, lam.conj()))
    return sampled_family(params, fibers, _grid_edges(side, side), weight_locked=True)


def lambda_kappa_grid(
    radius: int = 2, step: Fraction = Fraction(1, 2)
) -> SampledFamily:
    """Two independent real flag positions; the defect vanishes exactly on
    the diagonal lam = kap."""
    side = 2 * radius + 1
    params = []
    fibers = []
    for ia in range(side):
        lam = (ia - radius) * step
        for ib in range(side):
            kap = (ib - radius) * step
            params.append(
                parameter_point(f"({lam},{kap})", (("lambda", lam), ("kappa", kap)))
            )
            fibers.append(two_flag_fiber(gauss(lam), gauss(kap)))
    return sampled_family(params, fibers, _grid_edges(side, side), weight_locked=True)
