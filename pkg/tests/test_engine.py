"""Engine tests against small reference groups defined locally.

The backends here (cyclic addition, 3x3 unitriangular arithmetic, symmetric
group on 3 letters) are independent of the construction module, so the
engine is exercised by representations it was not written around.
"""

import numpy as np
import pytest

from pgf.engine import (
    Backend,
    CapExceeded,
    ConjugacyReport,
    FiniteGroup,
    GroupError,
    Subgroup,
)


class CyclicRowBackend(Backend):
    def __init__(self, n):
        self.n = n
        self.width = 1
        self.radices = (n,)

    def mul_rows(self, a, b):
        return (a + b) % self.n

    def inv_rows(self, a):
        return (-a) % self.n


class Heis3Backend(Backend):
    """3x3 unitriangular matrices over Z/pZ as rows (a, b, c).

    Matrix [[1,a,c],[0,1,b],[0,0,1]]; product appends c = c1 + c2 + a1*b2.
    """

    def __init__(self, p):
        self.p = p
        self.width = 3
        self.radices = (p, p, p)

    def mul_rows(self, a, b):
        p = self.p
        out = np.empty_like(a)
        out[:, 0] = (a[:, 0] + b[:, 0]) % p
        out[:, 1] = (a[:, 1] + b[:, 1]) % p
        out[:, 2] = (a[:, 2] + b[:, 2] + a[:, 0] * b[:, 1]) % p
        return out

    def inv_rows(self, a):
        p = self.p
        out = np.empty_like(a)
        out[:, 0] = (-a[:, 0]) % p
        out[:, 1] = (-a[:, 1]) % p
        out[:, 2] = (a[:, 0] * a[:, 1] - a[:, 2]) % p
        return out


class Sym3Backend(Backend):
    """Permutations of {0,1,2} stored as image rows."""

    width = 3
    radices = (3, 3, 3)

    def identity_row(self):
        return np.array([0, 1, 2], dtype=np.int16)

    def mul_rows(self, a, b):
        # apply a first, then b
        return np.take_along_axis(b, a.astype(np.int64), axis=1).astype(np.int16)

    def inv_rows(self, a):
        return np.argsort(a, axis=1).astype(np.int16)


def cyclic(n):
    back = CyclicRowBackend(n)
    gen = np.array([[1]], dtype=np.int16)
    return FiniteGroup.from_closure(f"C{n}", back, gen)


def heis(p):
    back = Heis3Backend(p)
    gens = np.array([[1, 0, 0], [0, 1, 0]], dtype=np.int16)
    return FiniteGroup.from_closure(f"H{p}", back, gens)


def sym3():
    back = Sym3Backend()
    gens = np.array([[1, 0, 2], [1, 2, 0]], dtype=np.int16)
    return FiniteGroup.from_closure("S3", back, gens)


# -- basics ----------------------------------------------------------------


def test_cyclic_basics():
    g = cyclic(12)
    assert g.order == 12
    g.verify_group_axioms()
    assert g.is_abelian()
    assert not g.is_prime_power()
    assert g.exponent() == 12
    for k in range(12):
        row = int(g.rows[k, 0])
        assert g.element_order(k) == 12 // np.gcd(12, row)
    assert g.center().order == 12
    assert g.conjugate_type() == [1]
    assert g.nilpotency_class() == 1


def test_cyclic_prime_power():
    g = cyclic(27)
    assert g.is_prime_power()
    assert g.prime == 3
    assert g.exponent() == 27
    assert g.nilpotency_class() == 1
    assert g.derived_subgroup().order == 1


def test_power_matches_modular_arithmetic():
    g = cyclic(12)
    one = g.index_of_rows(np.array([[1]], dtype=np.int16))[0]
    for e in (-5, -1, 0, 1, 7, 25):
        expect = g.index_of_rows(np.array([[e % 12]], dtype=np.int16))[0]
        assert g.power(int(one), e) == expect


def test_heisenberg_structure():
    g = heis(3)
    assert g.order == 27
    g.verify_group_axioms()
    assert not g.is_abelian()
    assert g.nilpotency_class() == 2
    assert g.exponent() == 3
    z = g.center()
    assert z.order == 3
    assert {g.describe(int(i)) for i in z.members} == {"(0,0,0)", "(0,0,1)", "(0,0,2)"}
    der = g.derived_subgroup()
    assert der.same_as(z)
    assert g.conjugate_type() == [1, 3]
    assert g.camina_check()


def test_heisenberg_5():
    g = heis(5)
    assert g.order == 125
    assert g.nilpotency_class() == 2
    assert g.conjugate_type() == [1, 5]
    assert g.exponent() == 5


def test_commutator_orientation():
    # [x,y] = x^-1 y^-1 x y; for x=(1,0,0), y=(0,1,0) this lands on (0,0,1)
    g = heis(3)
    x = int(g.index_of_rows(np.array([[1, 0, 0]], dtype=np.int16))[0])
    y = int(g.index_of_rows(np.array([[0, 1, 0]], dtype=np.int16))[0])
    c = g.commutator(x, y)
    assert g.describe(c) == "(0,0,1)"
    xy = g.mul(x, y)
    yx_c = g.mul(g.mul(y, x), c)
    assert xy == yx_c  # xy = yx[x,y]


def test_closure_and_normal_closure():
    g = heis(3)
    x = int(g.index_of_rows(np.array([[1, 0, 0]], dtype=np.int16))[0])
    line = g.closure_members([x])
    assert len(line) == 3
    normal = g.normal_closure_members([x])
    assert len(normal) == 9
    rows = g.rows[normal]
    assert np.all(rows[:, 1] == 0)


def test_centralizers():
    g = heis(3)
    x = int(g.index_of_rows(np.array([[1, 0, 0]], dtype=np.int16))[0])
    cx = g.centralizer(x)
    assert cx.order == 9
    z0 = int(g.center().members[-1])
    assert g.centralizer(z0).order == 27
    der = g.derived_subgroup()
    assert g.centralizer_in(der, x).order == 3
    assert g.breadth(x) == 1
    assert g.breadth(g.identity) == 0


def test_breadth_set_against_hand_count():
    g = heis(3)
    # A = {(a,0,c)}: abelian, normal; b_A(y) = 1 exactly when the middle
    # coordinate of y is nonzero, which happens for 18 of the 27 elements
    mask = g.rows[:, 1] == 0
    a = g.subgroup(np.nonzero(mask)[0])
    assert a.order == 9
    hits = g.breadth_set(a)
    assert len(hits) == 18
    assert np.all(g.rows[hits, 1] != 0)


def test_breadth_set_rejects_nonabelian_and_nonnormal():
    g = heis(3)
    with pytest.raises(GroupError, match="abelian"):
        g.breadth_set(g.full_subgroup())
    x = int(g.index_of_rows(np.array([[1, 0, 0]], dtype=np.int16))[0])
    line = g.closure([x])
    with pytest.raises(GroupError, match="normal"):
        g.breadth_set(line)


def test_sym3_is_not_nilpotent():
    g = sym3()
    assert g.order == 6
    g.verify_group_axioms()
    assert g.derived_subgroup().order == 3
    assert g.center().order == 1
    assert g.conjugate_type() == [1, 2, 3]
    with pytest.raises(GroupError, match="not nilpotent"):
        g.nilpotency_class()
    assert g.camina_check()  # transposition classes fill the nontrivial coset


def test_camina_rejects_degenerate():
    with pytest.raises(GroupError):
        cyclic(12).camina_check()


def test_gamma_series():
    g = heis(3)
    assert g.gamma(1).order == 27
    assert g.gamma(2).order == 3
    assert g.gamma(3).order == 1
    assert g.gamma(9).order == 1
    with pytest.raises(GroupError):
        g.gamma(0)


# -- quotients -------------------------------------------------------------


def test_quotient_heis_by_center():
    g = heis(3)
    q = g.quotient(g.center())
    assert q.order == 9
    q.verify_group_axioms()
    assert q.is_abelian()
    assert q.exponent() == 3
    assert q.nilpotency_class() == 1
    assert q.identity == 0


def test_quotient_rejects_non_normal():
    g = heis(3)
    x = int(g.index_of_rows(np.array([[1, 0, 0]], dtype=np.int16))[0])
    with pytest.raises(GroupError, match="non-normal"):
        g.quotient(g.closure([x]))


def test_quotient_of_quotient():
    g = heis(3)
    q = g.quotient(g.center())
    qq = q.quotient(q.full_subgroup())
    assert qq.order == 1
    assert qq.nilpotency_class() == 0
    line = q.closure([q.generators[0]])
    q2 = q.quotient(line)  # abelian parent: every subgroup is normal
    assert q2.order == 3


def test_quotient_is_a_homomorphism():
    g = heis(5)
    q = g.quotient(g.center())
    assert q.order == 25
    # the coset id of a parent element is its index in the quotient, because
    # coset leaders come out sorted; fold(x) fold(y) must equal fold(xy)
    fold = q.backend.coset_of
    rng = np.random.default_rng(7)
    xs = rng.integers(0, g.order, 400)
    ys = rng.integers(0, g.order, 400)
    assert np.array_equal(q.mul_many(fold[xs], fold[ys]), fold[g.mul_many(xs, ys)])


# -- subgroup validation ---------------------------------------------------


def test_subgroup_validation():
    g = cyclic(27)
    with pytest.raises(GroupError, match="Lagrange"):
        g.subgroup([0, 1])
    g12 = cyclic(12)
    three = g12.index_of_rows(np.array([[0], [1], [2]], dtype=np.int16))
    with pytest.raises(GroupError, match="closed"):
        g12.subgroup(three)
    four = g12.index_of_rows(np.array([[0], [3], [6], [9]], dtype=np.int16))
    sub = g12.subgroup(four)
    assert sub.order == 4
    assert sub.is_abelian()


def test_elementary_abelian_detection():
    g = heis(3)
    assert g.center().is_elementary_abelian()
    c27 = cyclic(27)
    assert not c27.full_subgroup().is_elementary_abelian()
    c12sub = cyclic(12).closure(
        [int(cyclic(12).index_of_rows(np.array([[6]], dtype=np.int16))[0])]
    )
    assert c12sub.order == 2


def test_membership_helpers():
    g = heis(3)
    z = g.center()
    mask = z.membership_mask()
    assert mask.sum() == 3
    assert bool(np.all(z.contains_many(z.members)))
    outside = np.setdiff1d(np.arange(g.order), z.members)
    assert not bool(np.any(z.contains_many(outside)))


# -- universes, caps, labels -----------------------------------------------


def test_explicit_universe_matches_closure():
    p = 3
    rows = np.array(
        [[a, b, c] for a in range(p) for b in range(p) for c in range(p)],
        dtype=np.int16,
    )
    g1 = FiniteGroup("H3-full", Heis3Backend(p), rows)
    g2 = heis(p)
    assert np.array_equal(g1.codes, g2.codes)
    assert g1.conjugate_type() == g2.conjugate_type()
    assert g1.generators  # greedy generation found something


def test_duplicate_universe_rejected():
    rows = np.zeros((2, 1), dtype=np.int16)
    with pytest.raises(GroupError, match="duplicate"):
        FiniteGroup("bad", CyclicRowBackend(5), rows)


def test_cap_enforcement():
    with pytest.raises(CapExceeded):
        FiniteGroup.from_closure("C12", CyclicRowBackend(12),
                                 np.array([[1]], dtype=np.int16), cap=10)
    rows = np.arange(12, dtype=np.int16)[:, None]
    with pytest.raises(CapExceeded):
        FiniteGroup("C12", CyclicRowBackend(12), rows, cap=10)


def test_index_of_rows_rejects_foreign_rows():
    g = heis(3)
    sub_rows = g.rows[g.center().members]
    small = FiniteGroup("Z", Heis3Backend(3), sub_rows, generators=None)
    with pytest.raises(GroupError, match="universe"):
        small.index_of_rows(np.array([[1, 0, 0]], dtype=np.int16))


def test_mul_many_broadcasting():
    g = heis(3)
    a = np.arange(3, dtype=np.int64)[:, None]
    b = np.arange(4, dtype=np.int64)[None, :]
    out = g.mul_many(a, b)
    assert out.shape == (3, 4)
    for i in range(3):
        for j in range(4):
            assert out[i, j] == g.mul(i, j)


def test_labels_and_describe():
    g = heis(3)
    seen = {g.label(i) for i in range(g.order)}
    assert len(seen) == g.order
    assert g.describe(g.identity) == "(0,0,0)"


# -- conjugacy report sanity ----------------------------------------------


def test_conjugacy_report_validators():
    with pytest.raises(GroupError):
        ConjugacyReport(
            class_of=np.zeros(6, dtype=np.int64),
            class_reps=[0],
            class_sizes=[5],
            conjugate_type=[5],
        )
    with pytest.raises(GroupError):
        ConjugacyReport(
            class_of=np.zeros(6, dtype=np.int64),
            class_reps=[0, 1],
            class_sizes=[2, 4],
            conjugate_type=[2, 4],
        )


def test_class_sizes_partition():
    g = heis(5)
    rep = g.conjugacy_classes()
    assert sum(rep.class_sizes) == g.order
    assert g.class_size_of()[g.identity] == 1
    sizes = np.asarray(rep.class_sizes)
    assert np.all((sizes == 1) | (sizes == 5))
    # centralizer order times class size is the group order
    for cls, r in enumerate(rep.class_reps[:10]):
        assert g.centralizer(int(r)).order * rep.class_sizes[cls] == g.order


# -- relabeling invariance -------------------------------------------------

def test_relabel_preserves_invariants():
    g = heis(3)
    rng = np.random.default_rng(11)
    perm = rng.permutation(g.order)
    h = g.relabel(perm)
    h.verify_group_axioms()
    assert h.order == g.order
    assert h.nilpotency_class() == g.nilpotency_class()
    assert h.conjugate_type() == g.conjugate_type()
    assert h.center().order == g.center().order
    assert sorted(h.element_orders().tolist()) == sorted(g.element_orders().tolist())


def test_relabel_rejects_non_permutation():
    g = cyclic(12)
    with pytest.raises(GroupError):
        g.relabel(np.zeros(12, dtype=np.int64))


# -- identity suite --------------------------------------------------------


def test_class3_identities_exhaustive_on_heisenberg():
    rep = heis(3).check_class3_identities()
    for name, entry in rep.items():
        assert entry["passed"], name
        assert entry["counterexample"] is None
        assert entry["checked"] > 0
    assert set(rep) == {
        "central_pair_triple_vanishes",
        "central_commutator_swap",
        "product_expansion",
        "power_expansion",
        "power_commutator_collapse",
    }


def test_class3_identities_sampled_path():
    rep = heis(5).check_class3_identities(samples=500, seed=3)
    assert all(entry["passed"] for entry in rep.values())


def test_class3_identities_reject_bad_input():
    with pytest.raises(GroupError):
        sym3().check_class3_identities()
    with pytest.raises(GroupError):
        cyclic(12).check_class3_identities()


def test_axioms_sampled_path():
    g = cyclic(2048)
    g.verify_group_axioms(samples=2000, seed=5)
    assert g.exponent() == 2048
