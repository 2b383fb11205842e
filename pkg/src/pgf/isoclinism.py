"""Isoclinism in the sense of P. Hall, with explicit verifiable witnesses.

The commutation map of a group descends to its central quotient; two groups
are isoclinic when an isomorphism pair (phi on the central quotients, theta
on the derived subgroups) makes the two commutation maps commute.  The
decision procedures here search phi by backtracking over generator images;
theta is never searched, it is forced by phi through the commuting square
and only checked for consistency.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .engine import CapExceeded, FiniteGroup, GroupError, Subgroup

SEARCH_CAP = 729


@dataclass(frozen=True)
class SearchConfig:
    """Budgets for the backtracking searches."""

    max_nodes: int = 10 ** 6
    time_limit: float = 120.0
    order_profile_pruning: bool = True

    def __post_init__(self):
        if self.max_nodes <= 0 or self.time_limit <= 0:
            raise GroupError("search budgets must be positive")


class _BudgetExceeded(Exception):
    pass


class _Budget:
    def __init__(self, cfg: SearchConfig):
        self.cfg = cfg
        self.nodes = 0
        self.deadline = time.perf_counter() + cfg.time_limit

    def tick(self):
        self.nodes += 1
        if self.nodes > self.cfg.max_nodes or time.perf_counter() > self.deadline:
            raise _BudgetExceeded


@dataclass
class CommutationMap:
    """The bracket table over the central quotient.

    table[i, j] is the parent element index of [x, y] for any
    representatives x, y of cosets i, j; independence of the choice is
    re-verified on construction by representative resampling.
    """

    quotient: FiniteGroup
    derived: Subgroup
    table: np.ndarray

    def image_members(self) -> np.ndarray:
        return np.unique(self.table)


def commutation_map(g: FiniteGroup, resample: int = 100, seed: int = 0) -> CommutationMap:
    """Tabulate the bracket over coset leaders of the central quotient."""
    z = g.center()
    qz = g.quotient(z)
    leaders = qz.backend.leaders
    table = g.commutator_many(leaders[:, None], leaders[None, :])
    der = g.derived_subgroup()
    if not bool(np.all(der.contains_many(table.ravel()))):
        raise GroupError("bracket table leaves the derived subgroup")
    if np.any(np.diagonal(table) != g.identity):
        raise GroupError("bracket of a coset with itself must be trivial")
    rng = np.random.default_rng(seed)
    q = len(leaders)
    for _ in range(resample):
        i, j = int(rng.integers(q)), int(rng.integers(q))
        x = g.mul(int(leaders[i]), int(z.members[rng.integers(z.order)]))
        y = g.mul(int(leaders[j]), int(z.members[rng.integers(z.order)]))
        if g.commutator(x, y) != table[i, j]:
            raise GroupError(
                f"bracket table is not well defined at cosets ({i}, {j})")
    return CommutationMap(qz, der, table)


def _fingerprints(g: FiniteGroup) -> np.ndarray:
    """(order, class size) per element, stacked as columns."""
    return np.stack([g.element_orders(), g.class_size_of()], axis=1)


def _induced_map(a: FiniteGroup, b: FiniteGroup, srcs, imgs):
    """Homomorphism <srcs> -> b extending srcs[i] -> imgs[i], or None.

    Grows the closure of the assigned generators, propagating images along
    products; any conflict kills the assignment.
    """
    amap = np.full(a.order, -1, dtype=np.int64)
    amap[a.identity] = b.identity
    for s, i in zip(srcs, imgs):
        if amap[s] != -1 and amap[s] != i:
            return None
        amap[s] = i
    srcs_arr = np.asarray(srcs, dtype=np.int64)
    imgs_arr = np.asarray(imgs, dtype=np.int64)
    frontier = np.unique(np.concatenate([[a.identity], srcs_arr]))
    while len(frontier) and len(srcs_arr):
        new_src = a.mul_many(frontier[:, None], srcs_arr[None, :]).ravel()
        new_img = b.mul_many(amap[frontier][:, None], imgs_arr[None, :]).ravel()
        order = np.argsort(new_src, kind="stable")
        new_src = new_src[order]
        new_img = new_img[order]
        starts = np.nonzero(np.r_[True, new_src[1:] != new_src[:-1]])[0]
        # duplicates of one product must carry one image
        if np.any(np.maximum.reduceat(new_img, starts) != np.minimum.reduceat(new_img, starts)):
            return None
        new_src = new_src[starts]
        new_img = new_img[starts]
        known = amap[new_src] != -1
        if np.any(amap[new_src[known]] != new_img[known]):
            return None
        fresh = ~known
        amap[new_src[fresh]] = new_img[fresh]
        frontier = new_src[fresh]
    return amap


def _search_bijections(a: FiniteGroup, b: FiniteGroup, budget: _Budget, on_found):
    """Backtrack over generator images; call on_found for each isomorphism.

    on_found returns True to stop the search.  Returns True when stopped by
    on_found, False when the tree is exhausted.  Candidate images carry the
    same (order, class size) fingerprint as the source generator and are
    tried in ascending index order, so the first witness is the
    lexicographically least.
    """
    gens = a._greedy_generators()
    fpa = _fingerprints(a)
    fpb = _fingerprints(b)
    buckets: dict = {}
    for idx, fp in enumerate(map(tuple, fpb.tolist())):
        buckets.setdefault(fp, []).append(idx)

    def injective(amap) -> bool:
        picked = amap[amap != -1]
        return len(np.unique(picked)) == len(picked)

    def rec(level, srcs, imgs):
        if level == len(gens):
            amap = _induced_map(a, b, srcs, imgs)
            if amap is None or np.any(amap == -1):
                return False
            if not injective(amap):
                return False
            return on_found(amap)
        g = gens[level]
        for h in buckets.get(tuple(fpa[g].tolist()), []):
            budget.tick()
            amap = _induced_map(a, b, srcs + [g], imgs + [h])
            # a bijection restricts injectively to every subgroup, so a
            # collision on the partial span already kills this branch
            if amap is None or not injective(amap):
                continue
            if rec(level + 1, srcs + [g], imgs + [h]):
                return True
        return False

    return rec(0, [], [])


@dataclass
class IsomorphismResult:
    outcome: str                       # isomorphic | refuted | inconclusive
    mapping: np.ndarray | None = None
    reason: str | None = None
    nodes: int = 0

    def as_dict(self) -> dict:
        return {
            "outcome": self.outcome,
            "reason": self.reason,
            "nodes": self.nodes,
            "mapping": None if self.mapping is None else self.mapping.tolist(),
        }


def _isomorphism_refuter(a: FiniteGroup, b: FiniteGroup):
    """First cheap invariant separating a from b, or None."""
    if a.order != b.order:
        return f"orders {a.order} vs {b.order}"
    if a.is_abelian() != b.is_abelian():
        return "one group is abelian, the other is not"
    if a.exponent() != b.exponent():
        return f"exponents {a.exponent()} vs {b.exponent()}"

    def ncl(g):
        try:
            return g.nilpotency_class()
        except GroupError:
            return None

    if ncl(a) != ncl(b):
        return f"nilpotency classes {ncl(a)} vs {ncl(b)}"
    if a.conjugate_type() != b.conjugate_type():
        return f"conjugate types {a.conjugate_type()} vs {b.conjugate_type()}"
    if a.center().order != b.center().order:
        return f"center orders {a.center().order} vs {b.center().order}"
    if a.derived_subgroup().order != b.derived_subgroup().order:
        return f"derived orders {a.derived_subgroup().order} vs {b.derived_subgroup().order}"
    la = [s.order for s in a.lower_central_series()]
    lb = [s.order for s in b.lower_central_series()]
    if la != lb:
        return f"lower central orders {la} vs {lb}"
    ha = np.unique(_fingerprints(a), axis=0, return_counts=True)
    hb = np.unique(_fingerprints(b), axis=0, return_counts=True)
    if not (np.array_equal(ha[0], hb[0]) and np.array_equal(ha[1], hb[1])):
        return "element (order, class size) histograms differ"
    return None


def are_isomorphic(a: FiniteGroup, b: FiniteGroup,
                   cfg: SearchConfig | None = None) -> IsomorphismResult:
    """Explicit isomorphism search with invariant refutation up front.

    Budget exhaustion is reported as inconclusive, never as refutation.
    """
    cfg = cfg or SearchConfig()
    if a is b:
        return IsomorphismResult("isomorphic", np.arange(a.order, dtype=np.int64))
    if cfg.order_profile_pruning:
        reason = _isomorphism_refuter(a, b)
        if reason is not None:
            return IsomorphismResult("refuted", reason=reason)
    elif a.order != b.order:
        return IsomorphismResult("refuted", reason=f"orders {a.order} vs {b.order}")
    budget = _Budget(cfg)
    found: list = []

    def grab(amap):
        found.append(amap.copy())
        return True

    try:
        _search_bijections(a, b, budget, grab)
    except _BudgetExceeded:
        return IsomorphismResult("inconclusive", reason="search budget exhausted",
                                 nodes=budget.nodes)
    if found:
        return IsomorphismResult("isomorphic", found[0], nodes=budget.nodes)
    return IsomorphismResult("refuted", reason="generator-image search exhausted",
                             nodes=budget.nodes)


def verify_isomorphism(a: FiniteGroup, b: FiniteGroup, mapping: np.ndarray,
                       chunk: int = 512) -> bool:
    """Re-check a claimed isomorphism: bijection plus full product table."""
    mapping = np.asarray(mapping, dtype=np.int64)
    if mapping.shape != (a.order,) or a.order != b.order:
        return False
    if len(np.unique(mapping)) != b.order:
        return False
    idx = np.arange(a.order, dtype=np.int64)
    for start in range(0, a.order, chunk):
        xs = idx[start:start + chunk]
        lhs = mapping[a.mul_many(xs[:, None], idx[None, :])]
        rhs = b.mul_many(mapping[xs][:, None], mapping[idx][None, :])
        if not np.array_equal(lhs, rhs):
            return False
    return True


@dataclass
class IsoclinismWitness:
    """phi on central-quotient indices; theta on derived-subgroup members.

    theta is stored as aligned arrays: theta_src holds the sorted member
    indices of the first group's derived subgroup, theta_dst their images.
    """

    phi: np.ndarray
    theta_src: np.ndarray
    theta_dst: np.ndarray

    def theta_of(self, idx) -> np.ndarray:
        pos = np.searchsorted(self.theta_src, idx)
        return self.theta_dst[pos]

    def inverted(self) -> "IsoclinismWitness":
        phi_inv = np.empty_like(self.phi)
        phi_inv[self.phi] = np.arange(len(self.phi), dtype=np.int64)
        order = np.argsort(self.theta_dst, kind="stable")
        return IsoclinismWitness(phi_inv, self.theta_dst[order], self.theta_src[order])

    def as_dict(self) -> dict:
        return {
            "phi": self.phi.tolist(),
            "theta_src": self.theta_src.tolist(),
            "theta_dst": self.theta_dst.tolist(),
        }


@dataclass
class IsoclinismResult:
    outcome: str                       # isoclinic | refuted | inconclusive
    witness: IsoclinismWitness | None = None
    reason: str | None = None
    nodes: int = 0

    def as_dict(self) -> dict:
        return {
            "outcome": self.outcome,
            "reason": self.reason,
            "nodes": self.nodes,
            "witness": None if self.witness is None else self.witness.as_dict(),
        }


def _force_theta(am: CommutationMap, bm: CommutationMap, phi: np.ndarray):
    """theta forced by phi on bracket values; None when inconsistent.

    The commuting square sends [x, y] to the bracket of the phi images, so
    every bracket value gets exactly one candidate image; single-valuedness
    and extension to the whole derived subgroup are checked, not assumed.
    """
    src = am.table.ravel()
    dst = bm.table[phi][:, phi].ravel()
    order = np.argsort(src, kind="stable")
    src = src[order]
    dst = dst[order]
    starts = np.nonzero(np.r_[True, src[1:] != src[:-1]])[0]
    if np.any(np.maximum.reduceat(dst, starts) != np.minimum.reduceat(dst, starts)):
        return None
    pair_src = src[starts]
    pair_dst = dst[starts]
    a_parent = am.derived.parent
    b_parent = bm.derived.parent
    amap = _induced_map(a_parent, b_parent, pair_src.tolist(), pair_dst.tolist())
    if amap is None:
        return None
    src_members = am.derived.members
    if np.any(amap[src_members] == -1):
        return None
    dst_members = amap[src_members]
    if not np.array_equal(np.sort(dst_members), bm.derived.members):
        return None
    return IsoclinismWitness(phi.copy(), src_members.copy(), dst_members)


def verify_isoclinism_witness(g: FiniteGroup, h: FiniteGroup,
                              witness: IsoclinismWitness) -> bool:
    """Independent re-verification: both isomorphisms and the square."""
    am = commutation_map(g)
    bm = commutation_map(h)
    if not verify_isomorphism(am.quotient, bm.quotient, witness.phi):
        return False
    # theta as a bijection of derived subgroups respecting products
    src = am.derived.members
    if not (np.array_equal(witness.theta_src, src)
            and np.array_equal(np.sort(witness.theta_dst), bm.derived.members)):
        return False
    lhs = witness.theta_of(g.mul_many(src[:, None], src[None, :]))
    rhs = h.mul_many(witness.theta_of(src)[:, None], witness.theta_of(src)[None, :])
    if not np.array_equal(lhs, rhs):
        return False
    forced = bm.table[witness.phi][:, witness.phi]
    return bool(np.array_equal(witness.theta_of(am.table), forced))


def are_isoclinic(g: FiniteGroup, h: FiniteGroup,
                  cfg: SearchConfig | None = None,
                  allow_large: bool = False) -> IsoclinismResult:
    """Search an isoclinism witness; refute on mismatched frame sizes.

    phi ranges over isomorphisms of the central quotients found by
    backtracking; each complete phi forces theta, which is checked and the
    whole witness re-verified before being returned.  Exhausting the phi
    tree refutes; budget exhaustion is inconclusive.
    """
    cfg = cfg or SearchConfig()
    gq = g.order // g.center().order
    hq = h.order // h.center().order
    gd = g.derived_subgroup().order
    hd = h.derived_subgroup().order
    if gq != hq:
        return IsoclinismResult("refuted",
                                reason=f"central quotient orders {gq} vs {hq}")
    if gd != hd:
        return IsoclinismResult("refuted",
                                reason=f"derived subgroup orders {gd} vs {hd}")
    if not allow_large and (gq > SEARCH_CAP or gd > SEARCH_CAP):
        raise CapExceeded(
            f"isoclinism search on central quotients of order {gq} and derived "
            f"subgroups of order {gd} exceeds the default cap {SEARCH_CAP}; "
            f"pass allow_large=True to override")
    am = commutation_map(g)
    bm = commutation_map(h)
    if g is h:
        n = am.quotient.order
        witness = IsoclinismWitness(np.arange(n, dtype=np.int64),
                                    am.derived.members.copy(),
                                    am.derived.members.copy())
        return IsoclinismResult("isoclinic", witness)
    if cfg.order_profile_pruning:
        reason = _isomorphism_refuter(am.quotient, bm.quotient)
        if reason is not None:
            return IsoclinismResult("refuted", reason=f"central quotients: {reason}")
    budget = _Budget(cfg)
    box: list = []

    def try_phi(phi):
        witness = _force_theta(am, bm, phi)
        if witness is None:
            return False
        if not verify_isoclinism_witness(g, h, witness):
            return False
        box.append(witness)
        return True

    try:
        _search_bijections(am.quotient, bm.quotient, budget, try_phi)
    except _BudgetExceeded:
        return IsoclinismResult("inconclusive", reason="search budget exhausted",
                                nodes=budget.nodes)
    if box:
        return IsoclinismResult("isoclinic", box[0], nodes=budget.nodes)
    return IsoclinismResult("refuted", reason="no central-quotient isomorphism carries the bracket",
                            nodes=budget.nodes)


def conjugate_type_isoclinism_consistency(g: FiniteGroup, h: FiniteGroup) -> bool:
    """Isoclinic groups share their conjugate type; check it."""
    return g.conjugate_type() == h.conjugate_type()
