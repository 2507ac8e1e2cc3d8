import hypothesis.strategies as st

from motivecalc import Atom, Atlas, Sum, TatePolynomial, TensorTwist


def tate_polys(max_exp=8, max_coeff=9, min_size=0, max_size=6):
    return st.dictionaries(
        st.integers(0, max_exp),
        st.integers(1, max_coeff),
        min_size=min_size,
        max_size=max_size,
    ).map(TatePolynomial)


def nonzero_tate_polys(**kw):
    kw.setdefault("min_size", 1)
    return tate_polys(**kw)


ATOM_NAMES = ["P2", "P4", "Q6", "K3", "Gr(2,5)"]


def session_atlas() -> Atlas:
    atlas = Atlas()
    atlas.projective_space(2)
    atlas.projective_space(4)
    atlas.quadric(6)
    atlas.k3()
    atlas.grassmannian(2, 5)
    return atlas


def motive_exprs(names=tuple(ATOM_NAMES), max_leaves=12):
    base = st.sampled_from(list(names)).map(Atom)
    return st.recursive(
        base,
        lambda children: st.one_of(
            st.lists(children, min_size=1, max_size=4).map(lambda cs: Sum(tuple(cs))),
            st.tuples(children, nonzero_tate_polys(max_exp=4, max_coeff=4)).map(
                lambda t: TensorTwist(*t)
            ),
        ),
        max_leaves=max_leaves,
    )
