from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from mixedhodge.exactfield import GaussianRational

settings.register_profile(
    "default",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def fractions_(draw, max_num: int = 50, max_den: int = 20) -> Fraction:
    num = draw(st.integers(min_value=-max_num, max_value=max_num))
    den = draw(st.integers(min_value=1, max_value=max_den))
    return Fraction(num, den)


@st.composite
def gaussians(draw, **kw) -> GaussianRational:
    return GaussianRational(draw(fractions_(**kw)), draw(fractions_(**kw)))


@st.composite
def nonzero_gaussians(draw, **kw) -> GaussianRational:
    x = draw(gaussians(**kw))
    if not x:
        return GaussianRational(Fraction(1), Fraction(0))
    return x


# small entries keep exact row reduction fast in property tests
@st.composite
def small_gaussians(draw) -> GaussianRational:
    re = draw(st.integers(min_value=-3, max_value=3))
    im = draw(st.integers(min_value=-2, max_value=2))
    return GaussianRational(Fraction(re), Fraction(im))


@st.composite
def vectors(draw, ambient_dim: int) -> tuple[GaussianRational, ...]:
    return tuple(draw(small_gaussians()) for _ in range(ambient_dim))


@st.composite
def subspaces(draw, ambient_dim: int):
    from mixedhodge.linalg import span

    k = draw(st.integers(min_value=0, max_value=ambient_dim))
    vecs = [draw(vectors(ambient_dim)) for _ in range(k)]
    return span(vecs, ambient_dim)


def weight_two_zero_triple(lmb, kap):
    """Rank 2 with one piece in weight 2 and one in weight 0.

    e spans the lower weight; F and G are the lines through f + lmb*e and
    f + kap*e, both sitting in level 1.  Opposed for every lmb, kap.
    """
    from mixedhodge.exactfield import gauss
    from mixedhodge.filtration import filtered_space
    from mixedhodge.linalg import span, zero_subspace
    from mixedhodge.multifilt import TrifilteredSpace

    e = span([[1, 0]], 2)
    w = filtered_space(2, {-1: e, 1: zero_subspace(2)})
    f = filtered_space(
        2, {1: span([(gauss(lmb), gauss(1))], 2), 2: zero_subspace(2)}
    )
    g = filtered_space(
        2, {1: span([(gauss(kap), gauss(1))], 2), 2: zero_subspace(2)}
    )
    return TrifilteredSpace(2, W=w, F=f, G=g)


def weight_two_zero_mhs(lmb):
    """The genuine structure behind weight_two_zero_triple: G is forced to
    be the conjugate of F, so only the one parameter remains."""
    from mixedhodge.exactfield import gauss
    from mixedhodge.filtration import filtered_space
    from mixedhodge.linalg import span, zero_subspace
    from mixedhodge.mhs import validate

    e = span([[1, 0]], 2)
    w = filtered_space(2, {-1: e, 1: zero_subspace(2)})
    f = filtered_space(
        2, {1: span([(gauss(lmb), gauss(1))], 2), 2: zero_subspace(2)}
    )
    return validate(w, f)


def one_dim_triple(w_jump: int, f_jump: int, g_jump: int):
    """Rank 1 triple concentrated at trigraded index (w_jump, f_jump, g_jump)."""
    from mixedhodge.filtration import shift, trivial
    from mixedhodge.multifilt import TrifilteredSpace

    return TrifilteredSpace(
        1,
        W=shift(trivial(1), w_jump),
        F=shift(trivial(1), f_jump),
        G=shift(trivial(1), g_jump),
    )


def random_flag_basis(draw, n: int) -> list:
    """n independent vectors: random draws completed by standard vectors."""
    from mixedhodge.exactfield import gauss
    from mixedhodge.linalg import span

    basis = []
    for _ in range(n):
        r = draw(vectors(n))
        if span(basis + [r], n).dim > len(basis):
            basis.append(r)
    for i in range(n):
        if len(basis) == n:
            break
        e = tuple(gauss(1 if j == i else 0) for j in range(n))
        if span(basis + [e], n).dim > len(basis):
            basis.append(e)
    return basis


@st.composite
def filtered_spaces(draw, ambient_dim: int, lo: int = -3, hi: int = 3):
    """Random decreasing filtration built from a random flag."""
    from mixedhodge.filtration import filtered_space
    from mixedhodge.linalg import span

    n = ambient_dim
    basis = random_flag_basis(draw, n)
    # dims of the proper levels, strictly decreasing and ending at 0
    max_inner = min(n - 1, hi - lo)
    inner = sorted(
        draw(st.sets(st.integers(min_value=1, max_value=n - 1), max_size=max_inner))
        if n > 1
        else [],
        reverse=True,
    )
    dims = inner + [0]
    keys = sorted(
        draw(
            st.sets(
                st.integers(min_value=lo, max_value=hi),
                min_size=len(dims),
                max_size=len(dims),
            )
        )
    )
    levels = {k: span(basis[:d], n) for k, d in zip(keys, dims)}
    return filtered_space(n, levels)
