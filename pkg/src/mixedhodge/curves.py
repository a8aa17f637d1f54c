"""Numerical splitting defect of punctured curves of genus 0 and 1.

This module is the one floating-point corner of the package.  Everything is
double precision: the inputs are moduli of marked projective lines or complex
tori, and the outputs are counts of period-matrix rows passing a reality or
modulus test at an explicit tolerance.  Nothing here touches the exact
subspace arithmetic of the other modules.

Genus 0: a configuration is m punctures and n glued point pairs on the
projective line.  Row i of the period matrix compares punctures p_i, p_{i+1}
against each glued pair through a cross-ratio; the row is balanced when every
cross-ratio lies on the unit circle, and the defect alpha counts unbalanced
rows.

Genus 1: same shape, with the cross-ratio replaced by a difference of logs of
Jacobi theta values at lattice-shifted points.  The balance test as stated is
reality of each entry, which is sensitive to the branch of the logarithm;
reports therefore carry both the raw imaginary parts and their reduction mod
2 pi, with a separate verdict for each.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field


class _Infinity:
    """The point at infinity on the projective line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inf"


INF = _Infinity()

_TWO_PI = 2.0 * math.pi


def is_inf(x) -> bool:
    return x is INF


@dataclass(frozen=True)
class CurveConfig:
    genus: int
    punctures: tuple
    pairs: tuple
    tau: complex | None = None
    tol: float = 1e-9
    theta_truncation: int = 40


@dataclass(frozen=True)
class PeriodMatrix:
    b_block: tuple
    c_block: tuple
    # rows whose cross-ratio sits on the branch cut of the log; the modulus
    # test is branch-free, so these are caveats rather than errors
    branch_flags: tuple = field(default=())


def cross_ratio(a, b, c, d) -> complex:
    """((a-c)/(a-d)) / ((b-c)/(b-d)), with limit rules at infinity.

    Exactly one of the four points may be the point at infinity; the factors
    through it cancel pairwise in the limit.  Four pairwise distinct points
    never yield 0 or a zero denominator, so either one raises.
    """
    pts = (a, b, c, d)
    for i in range(4):
        for j in range(i + 1, 4):
            u, v = pts[i], pts[j]
            if (is_inf(u) and is_inf(v)) or (
                not is_inf(u) and not is_inf(v) and u == v
            ):
                raise ValueError("coincident points in cross-ratio")
    if is_inf(a):
        num, den = b - d, b - c
    elif is_inf(b):
        num, den = a - c, a - d
    elif is_inf(c):
        num, den = b - d, a - d
    elif is_inf(d):
        num, den = a - c, b - c
    else:
        num, den = (a - c) * (b - d), (a - d) * (b - c)
    if den == 0 or num == 0:
        raise ValueError("coincident points in cross-ratio")
    return num / den


def apply_mobius(coeffs: tuple, z):
    """(az+b)/(cz+d) on the projective line, infinity included."""
    a, b, c, d = coeffs
    if a * d - b * c == 0:
        raise ValueError("singular transformation")
    if is_inf(z):
        return a / c if c != 0 else INF
    den = c * z + d
    if den == 0:
        return INF
    return (a * z + b) / den


def _check_genus0(cfg: CurveConfig) -> None:
    if cfg.genus != 0:
        raise ValueError("configuration is not genus 0")
    if len(cfg.punctures) < 1:
        raise ValueError("at least one puncture is required")
    pts = list(cfg.punctures) + [x for pair in cfg.pairs for x in pair]
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            u, v = pts[i], pts[j]
            if (is_inf(u) and is_inf(v)) or (
                not is_inf(u) and not is_inf(v) and u == v
            ):
                raise ValueError("configuration points are not pairwise distinct")


def _row_ratios(cfg: CurveConfig) -> list:
    m = len(cfg.punctures)
    out = []
    for i in range(m - 1):
        pi, pnext = cfg.punctures[i], cfg.punctures[i + 1]
        out.append(
            [cross_ratio(q, p, pi, pnext) for (p, q) in cfg.pairs]
        )
    return out


def genus0_period_matrix(cfg: CurveConfig) -> PeriodMatrix:
    """Bidiagonal residue block plus the log-of-cross-ratio block."""
    _check_genus0(cfg)
    m = len(cfg.punctures)
    if m < 2:
        raise ValueError("the period matrix needs at least two punctures")
    two_pi_i = complex(0.0, _TWO_PI)
    b_block = tuple(
        tuple(
            two_pi_i if i == j else (-two_pi_i if j == i - 1 else 0j)
            for j in range(m - 1)
        )
        for i in range(m - 1)
    )
    flags = []
    c_rows = []
    for i, ratios in enumerate(_row_ratios(cfg)):
        row = []
        for j, r in enumerate(ratios):
            if abs(r.imag) <= cfg.tol and r.real < 0:
                flags.append((i, j))
            row.append(cmath.log(r))
        c_rows.append(tuple(row))
    return PeriodMatrix(b_block, tuple(c_rows), tuple(flags))


def genus0_report(cfg: CurveConfig) -> dict:
    """Row moduli and the count of rows off the unit circle."""
    _check_genus0(cfg)
    m = len(cfg.punctures)
    rows = []
    balanced = 0
    for i, ratios in enumerate(_row_ratios(cfg)):
        moduli = [abs(r) for r in ratios]
        if all(abs(mod - 1.0) <= cfg.tol for mod in moduli):
            balanced += 1
        rows.append({"i": i, "moduli": moduli})
    return {"alpha": (m - 1) - balanced, "rows": rows}


def genus0_alpha(cfg: CurveConfig) -> int:
    return genus0_report(cfg)["alpha"]


def theta(z: complex, tau: complex, truncation: int = 40) -> complex:
    """Jacobi theta sum over |n| <= truncation."""
    if tau.imag <= 0:
        raise ValueError("tau must have positive imaginary part")
    if truncation < 1:
        raise ValueError("truncation must be at least 1")
    total = 1 + 0j
    for n in range(1, truncation + 1):
        # keep the exponents combined so a huge |Im z| cannot produce a
        # 0 * inf pair from the two half-terms
        base = 1j * math.pi * n * n * tau
        osc = 2j * math.pi * n * z
        total += cmath.exp(base + osc) + cmath.exp(base - osc)
    return total


def _theta_tail_ok(tau: complex, max_abs_im_z: float, n: int, tol: float) -> bool:
    """Crude geometric tail bound for the truncated theta sum."""
    log_first = -math.pi * tau.imag * (n + 1) ** 2 + _TWO_PI * (n + 1) * max_abs_im_z
    log_ratio = -math.pi * tau.imag * (2 * n + 3) + _TWO_PI * max_abs_im_z
    if log_ratio >= 0:
        return False
    if log_first > 700.0:
        return False
    tail = 2.0 * math.exp(log_first) / (1.0 - math.exp(log_ratio))
    return tail <= tol / 10.0


def _lattice_reduce(d: complex, tau: complex) -> tuple:
    """Coordinates of d in the basis (1, tau), each reduced mod 1."""
    b = d.imag / tau.imag
    a = d.real - b * tau.real
    return a - round(a), b - round(b)


def _check_genus1(cfg: CurveConfig) -> None:
    if cfg.genus != 1:
        raise ValueError("configuration is not genus 1")
    if cfg.tau is None or cfg.tau.imag <= 0:
        raise ValueError("genus 1 needs tau with positive imaginary part")
    if len(cfg.punctures) < 1:
        raise ValueError("at least one puncture is required")
    pts = list(cfg.punctures) + [x for pair in cfg.pairs for x in pair]
    if any(is_inf(x) for x in pts):
        raise ValueError("genus 1 points must be finite complex numbers")
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            a, b = _lattice_reduce(pts[i] - pts[j], cfg.tau)
            if abs(a) <= cfg.tol and abs(b) <= cfg.tol:
                raise ValueError(
                    "configuration points are not pairwise distinct mod the lattice"
                )


def genus1_report(cfg: CurveConfig) -> dict:
    """Imaginary parts of the theta-log entries, raw and reduced mod 2 pi.

    The row test as stated is reality of each entry; the mod 2 pi columns
    quotient out the branch choice of the logarithm and get their own
    verdict, since reality of a log difference is only branch-independent
    up to that lattice.
    """
    _check_genus1(cfg)
    tau = cfg.tau
    shift = (1 + tau) / 2
    m = len(cfg.punctures)

    zs = [
        x - p - shift
        for p in cfg.punctures
        for pair in cfg.pairs
        for x in pair
    ]
    max_im = max((abs(z.imag) for z in zs), default=0.0)
    if not _theta_tail_ok(tau, max_im, cfg.theta_truncation, cfg.tol):
        raise ValueError(
            "theta truncation too small for the requested tolerance at this tau"
        )

    def log_theta(z: complex) -> complex:
        val = theta(z, tau, cfg.theta_truncation)
        if abs(val) <= cfg.tol:
            raise ValueError("theta vanishes at a required point")
        return cmath.log(val)

    rows = []
    raw_balanced = 0
    mod_balanced = 0
    for i in range(m - 1):
        pi, pnext = cfg.punctures[i], cfg.punctures[i + 1]
        imag_parts = []
        for p, q in cfg.pairs:
            c = (log_theta(q - pi - shift) - log_theta(q - pnext - shift)) - (
                log_theta(p - pi - shift) - log_theta(p - pnext - shift)
            )
            imag_parts.append(c.imag)
        reduced = [math.remainder(v, _TWO_PI) for v in imag_parts]
        if all(abs(v) <= cfg.tol for v in imag_parts):
            raw_balanced += 1
        if all(abs(v) <= cfg.tol for v in reduced):
            mod_balanced += 1
        rows.append(
            {"i": i, "imag_parts": imag_parts, "imag_parts_mod_2pi": reduced}
        )
    return {
        "alpha": (m - 1) - raw_balanced,
        "alpha_mod_2pi": (m - 1) - mod_balanced,
        "rows": rows,
    }


def genus1_alpha(cfg: CurveConfig) -> int:
    return genus1_report(cfg)["alpha"]


def curve_report(cfg: CurveConfig) -> dict:
    if cfg.genus == 0:
        return genus0_report(cfg)
    if cfg.genus == 1:
        return genus1_report(cfg)
    raise ValueError("genus must be 0 or 1")


def _point_from_json(obj):
    if obj == "inf":
        return INF
    if (
        isinstance(obj, list)
        and len(obj) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj)
    ):
        return complex(obj[0], obj[1])
    raise ValueError(f"malformed point {obj!r}")


def _point_to_json(x):
    if is_inf(x):
        return "inf"
    return [x.real, x.imag]


def config_from_json(data: dict) -> CurveConfig:
    if not isinstance(data, dict):
        raise ValueError("curve config must be an object")
    genus = data.get("genus")
    if genus not in (0, 1):
        raise ValueError("genus must be 0 or 1")
    punctures = tuple(_point_from_json(p) for p in data.get("punctures", []))
    pairs = []
    for pair in data.get("pairs", []):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ValueError(f"malformed pair {pair!r}")
        pairs.append((_point_from_json(pair[0]), _point_from_json(pair[1])))
    tau = None
    if "tau" in data and data["tau"] is not None:
        t = _point_from_json(data["tau"])
        tau = t
    tol = data.get("tol", 1e-9)
    if not (isinstance(tol, (int, float)) and tol > 0):
        raise ValueError("tol must be a positive number")
    trunc = data.get("theta_truncation", 40)
    if not (isinstance(trunc, int) and not isinstance(trunc, bool) and trunc >= 1):
        raise ValueError("theta_truncation must be a positive integer")
    return CurveConfig(
        genus=genus,
        punctures=punctures,
        pairs=tuple(pairs),
        tau=tau,
        tol=float(tol),
        theta_truncation=trunc,
    )


def config_to_json(cfg: CurveConfig) -> dict:
    out = {
        "genus": cfg.genus,
        "punctures": [_point_to_json(p) for p in cfg.punctures],
        "pairs": [[_point_to_json(p), _point_to_json(q)] for p, q in cfg.pairs],
        "tol": cfg.tol,
        "theta_truncation": cfg.theta_truncation,
    }
    if cfg.tau is not None:
        out["tau"] = [cfg.tau.real, cfg.tau.imag]
    return out
