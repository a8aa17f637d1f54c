"""Seeded random generators for structures, extensions, and morphisms.

Everything here draws from a caller-supplied random.Random, so a fixed seed
reproduces the exact same structures.  The main generator works by structured
rejection: it first draws a symmetric dimension diamond, then realises it with
a random real flag for the weight filtration and a random complex flag for the
Hodge filtration.  A generic pair of flags with matching dimension data is
opposed on every graded piece, so the rejection rate stays low; degenerate
draws are simply discarded and retried.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .exactfield import I, GaussianRational, gauss
from .filtration import FilteredSpace, filtered_space, from_increasing
from .linalg import (
    Matrix,
    Subspace,
    annihilator,
    from_rows,
    kernel,
    span,
    zero_subspace,
)
from .mhs import MixedHodgeStructure, assemble_extension, validate
from .multifilt import FilteredMorphism

# Entry range for random flag vectors.  Small integers keep the exact
# arithmetic fast; the retry loop absorbs the occasional rank collision.
_ENTRY = 9


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-_ENTRY, _ENTRY))


def random_gauss(rng: random.Random, real: bool = False) -> GaussianRational:
    re = rng.randint(-_ENTRY, _ENTRY)
    im = 0 if real else rng.randint(-_ENTRY, _ENTRY)
    return gauss(re, im)


def random_vector(
    rng: random.Random, n: int, real: bool = False
) -> tuple[GaussianRational, ...]:
    return tuple(random_gauss(rng, real=real) for _ in range(n))


def random_basis(rng: random.Random, n: int, real: bool = False) -> list:
    """A random ordered basis of the full space, entries in a small box."""
    vectors: list[tuple[GaussianRational, ...]] = []
    current = zero_subspace(n)
    stuck = 0
    while current.dim < n:
        v = random_vector(rng, n, real=real)
        grown = span([*vectors, v], n)
        if grown.dim > current.dim:
            vectors.append(v)
            current = grown
            stuck = 0
        else:
            stuck += 1
            if stuck > 64:
                raise RuntimeError("random basis draw failed to reach full rank")
    return vectors


def random_hodge_diamond(
    rng: random.Random,
    max_dim: int,
    type_range: tuple[int, int] = (-2, 2),
    weight_range: tuple[int, int] = (-2, 3),
) -> dict[tuple[int, int], int]:
    """A symmetric table h^{p,q} = h^{q,p} with total dimension in [1, max_dim].

    Types (p, q) run over the box type_range with p + q inside weight_range.
    Off-diagonal cells are filled in mirror pairs; a leftover odd unit goes to
    a diagonal cell, or the total is rounded up when no diagonal cell exists.
    """
    lo, hi = type_range
    cells = [
        (p, q)
        for p in range(lo, hi + 1)
        for q in range(lo, hi + 1)
        if weight_range[0] <= p + q <= weight_range[1]
    ]
    if not cells:
        raise ValueError("empty type box")
    diagonal = [c for c in cells if c[0] == c[1]]
    remaining = rng.randint(1, max_dim)
    if remaining % 2 and not diagonal:
        remaining += 1
    h: dict[tuple[int, int], int] = {}
    while remaining > 0:
        if remaining == 1:
            p, q = rng.choice(diagonal)
        else:
            p, q = rng.choice(cells)
        if p == q:
            h[(p, q)] = h.get((p, q), 0) + 1
            remaining -= 1
        else:
            h[(p, q)] = h.get((p, q), 0) + 1
            h[(q, p)] = h.get((q, p), 0) + 1
            remaining -= 2
    return h


def _flag_from_generators(
    gens: dict[int, list], n: int
) -> FilteredSpace | None:
    """Decreasing filtration with level p spanned by all generators at >= p.

    A level stays constant down to the next smaller generator index, so each
    value is keyed by the start of the region on which it holds.  Returns
    None when the generators fail to span the full space.
    """
    ps = sorted(gens, reverse=True)
    levels: dict[int, Subspace] = {ps[0] + 1: zero_subspace(n)}
    acc: list = []
    for k, p in enumerate(ps):
        acc.extend(gens[p])
        if k + 1 < len(ps):
            levels[ps[k + 1] + 1] = span(acc, n)
    if span(acc, n).dim != n:
        return None
    return filtered_space(n, levels)


def generically_realizable(h: dict[tuple[int, int], int]) -> bool:
    """Whether flags in general position can realise the diamond h.

    For independent generic flags, dim(F^p ∩ W_m) = max(0, c_p + w_m - n).
    The diamond prescribes that intersection dimension directly; when the two
    disagree for some (p, m) the diamond needs special position, and drawing
    random flags for it would loop forever.  Dropping those diamonds up front
    keeps the rejection loop cheap without changing what it accepts.
    """
    n = sum(h.values())
    ps = sorted({p for p, _ in h}, reverse=True)
    weights = sorted({p + q for p, q in h})
    c: dict[int, int] = {}
    running = 0
    for p in ps:
        running += sum(d for (pp, _), d in h.items() if pp == p)
        c[p] = running
    w: dict[int, int] = {}
    running = 0
    for m in weights:
        running += sum(d for (pp, qq), d in h.items() if pp + qq == m)
        w[m] = running
    for p in ps:
        for m in weights:
            prescribed = sum(
                d for (pp, qq), d in h.items() if pp >= p and pp + qq <= m
            )
            if prescribed != max(0, c[p] + w[m] - n):
                return False
    return True


def structure_from_diamond(
    rng: random.Random, h: dict[tuple[int, int], int]
) -> MixedHodgeStructure | None:
    """One realisation attempt of a dimension diamond; None if degenerate.

    The weight flag is real, so it is conjugation stable for free.  The Hodge
    flag is a generic complex flag with the prescribed jump dimensions; when
    the draw happens to be non-generic the validation step rejects it.
    """
    n = sum(h.values())
    weights = sorted({p + q for p, q in h})
    w_basis = random_basis(rng, n, real=True)
    running = 0
    increasing: dict[int, Subspace] = {}
    for m in weights:
        running += sum(d for (p, q), d in h.items() if p + q == m)
        increasing[m] = span(w_basis[:running], n)
    w = from_increasing(n, increasing)

    f_basis = random_basis(rng, n)
    ps = sorted({p for p, _ in h}, reverse=True)
    gens: dict[int, list] = {}
    start = 0
    for p in ps:
        d = sum(dd for (pp, _), dd in h.items() if pp == p)
        gens[p] = f_basis[start : start + d]
        start += d
    f = _flag_from_generators(gens, n)
    if f is None:
        return None
    try:
        return validate(w, f)
    except ValueError:
        return None


def adapted_structure_from_diamond(
    rng: random.Random, h: dict[tuple[int, int], int]
) -> MixedHodgeStructure | None:
    """A realisation of h with the Hodge flag drawn adapted to the weights.

    Block vectors x, y of each weight give generators x + iy and x - iy for a
    mirror pair of cells and real generators for diagonal cells, then every
    generator picks up a random tail in the lower-weight part.  The tails
    die on the graded pieces, so any symmetric diamond is realisable this
    way, including ones that need special flag position.
    """
    n = sum(h.values())
    weights = sorted({p + q for p, q in h})
    sizes = {m: sum(d for (p, q), d in h.items() if p + q == m) for m in weights}
    w_basis = random_basis(rng, n, real=True)
    increasing: dict[int, Subspace] = {}
    running = 0
    for m in weights:
        running += sizes[m]
        increasing[m] = span(w_basis[:running], n)
    w = from_increasing(n, increasing)

    def with_tail(v: tuple, lower: int) -> tuple:
        out = list(v)
        for k in range(lower):
            coef = gauss(rng.randint(-2, 2), rng.randint(-2, 2))
            if coef:
                out = [a + coef * b for a, b in zip(out, w_basis[k])]
        return tuple(out)

    gens: dict[int, list] = {}
    offset = 0
    for m in weights:
        idx = offset
        for p, q in sorted(c for c in h if c[0] + c[1] == m):
            if p < q:
                continue
            for _ in range(h[(p, q)]):
                if p == q:
                    x = w_basis[idx]
                    idx += 1
                    gens.setdefault(p, []).append(with_tail(x, offset))
                else:
                    x, y = w_basis[idx], w_basis[idx + 1]
                    idx += 2
                    plus = tuple(a + I * b for a, b in zip(x, y))
                    minus = tuple(a - I * b for a, b in zip(x, y))
                    gens.setdefault(p, []).append(with_tail(plus, offset))
                    gens.setdefault(q, []).append(with_tail(minus, offset))
        offset += sizes[m]

    f = _flag_from_generators(gens, n)
    if f is None:
        return None
    try:
        return validate(w, f)
    except ValueError:
        return None


def random_mhs(
    rng: random.Random,
    max_dim: int = 8,
    type_range: tuple[int, int] = (-2, 2),
    weight_range: tuple[int, int] = (-2, 3),
    attempts: int = 400,
) -> MixedHodgeStructure:
    """A random valid structure, by rejection sampling over random flags.

    Proposals alternate between a fully generic flag (kept only when its
    diamond is one generic position can realise) and a weight-adapted flag
    with random lower-weight tails, which reaches the special-position
    diamonds as well.  Every candidate goes through validation; failures
    are discarded and redrawn.
    """
    for _ in range(attempts):
        h = random_hodge_diamond(rng, max_dim, type_range, weight_range)
        if rng.random() < 0.5:
            if not generically_realizable(h):
                continue
            m = structure_from_diamond(rng, h)
        else:
            m = adapted_structure_from_diamond(rng, h)
        if m is not None:
            return m
    raise RuntimeError(f"no valid structure after {attempts} attempts")


def random_extension(
    rng: random.Random, max_dim_each: int = 3
) -> tuple[MixedHodgeStructure, MixedHodgeStructure, Matrix, MixedHodgeStructure]:
    """(sub, quotient, lift, total) with sub weights strictly below quotient.

    Weight separation makes every lift matrix produce a valid total structure,
    so the lift can be drawn freely.
    """
    split = rng.randint(-1, 1)
    a = random_mhs(rng, max_dim_each, weight_range=(-2, split))
    b = random_mhs(rng, max_dim_each, weight_range=(split + 1, 3))
    lift = from_rows(
        [random_vector(rng, b.ambient_dim) for _ in range(a.ambient_dim)],
        b.ambient_dim,
    )
    total = assemble_extension(a, b, lift)
    return a, b, lift, total


def _real_kernel_matrix(rows: list[list[Fraction]], n_unknowns: int) -> list[list[Fraction]]:
    """Basis of the rational solution space of a homogeneous system."""
    if not rows:
        ident = [[Fraction(i == j) for j in range(n_unknowns)] for i in range(n_unknowns)]
        return ident
    m = from_rows(
        [[gauss(c) for c in row] for row in rows], n_unknowns
    )
    ker = kernel_matrix(m)
    return [[ker.entry(i, j).re for j in range(n_unknowns)] for i in range(ker.rows)]


def kernel_matrix(m: Matrix) -> Matrix:
    """Kernel basis rows of a matrix, as a matrix (possibly zero rows)."""
    return kernel(m).basis


def random_compatible_morphism(
    rng: random.Random,
    src: MixedHodgeStructure,
    dst: MixedHodgeStructure,
) -> FilteredMorphism:
    """A random real matrix compatible with both weight and Hodge levels.

    Compatibility with a filtration level is a linear condition on the matrix
    entries: each annihilator functional of the target level must vanish on
    the image of each source basis vector.  Realness of the unknowns plus
    compatibility with F gives compatibility with the conjugate filtration
    for free, so only W and F contribute equations.  The conditions are
    solved exactly over the rationals and a random integer combination of the
    kernel basis is returned; the zero morphism is always available, so the
    construction never fails.
    """
    ns, nt = src.ambient_dim, dst.ambient_dim
    rows: list[list[Fraction]] = []

    def add_constraints(level_src: Subspace, level_dst: Subspace) -> None:
        ann = annihilator(level_dst)
        if ann.dim == 0 or level_src.dim == 0:
            return
        for vi in range(level_src.dim):
            v = level_src.basis.row(vi)
            for ai in range(ann.dim):
                a = ann.basis.row(ai)
                re_row = [Fraction(0)] * (nt * ns)
                im_row = [Fraction(0)] * (nt * ns)
                for i in range(nt):
                    for j in range(ns):
                        coeff = a[i] * v[j]
                        re_row[i * ns + j] = coeff.re
                        im_row[i * ns + j] = coeff.im
                rows.append(re_row)
                if any(im_row):
                    rows.append(im_row)

    for fs, fd in ((src.W, dst.W), (src.F, dst.F)):
        keys = {k for k, _ in fs.levels} | {k for k, _ in fd.levels}
        for key in sorted(keys):
            add_constraints(fs.at(key), fd.at(key))

    basis = _real_kernel_matrix(rows, nt * ns)
    entries = [Fraction(0)] * (nt * ns)
    for brow in basis:
        c = rng.randint(-3, 3)
        if c:
            entries = [e + c * b for e, b in zip(entries, brow)]
    mat = from_rows(
        [[gauss(entries[i * ns + j]) for j in range(ns)] for i in range(nt)],
        ns,
    )
    return FilteredMorphism(mat, src.triple(), dst.triple())
