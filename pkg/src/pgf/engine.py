"""Index-based finite group engine.

A FiniteGroup stores its element universe as a numpy coordinate matrix, one
row per element, sorted by an integer row code (mixed-radix over the
columns).  The element index is the row position, so indexing is canonical
and deterministic for a given construction.  All group arithmetic funnels
through a Backend, which knows how to multiply and invert coordinate rows
in bulk; hot loops (closure, conjugacy, centralizers, series) are expressed
as vectorized index operations on top of it.

Products are memoized in a flat n x n table once the order is at most
TABLE_CAP; larger groups multiply on demand from the coordinate rows.
Element enumeration is refused beyond a hard cap (default 10**6).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_CAP = 10**6
TABLE_CAP = 4096
ASSOC_EXHAUSTIVE_LIMIT = 1000
IDENTITY_EXHAUSTIVE_LIMIT = 300


class GroupError(ValueError):
    """Domain error in a group-engine operation."""


class CapExceeded(GroupError):
    """Element enumeration exceeded the configured hard cap."""


class Backend:
    """Row arithmetic for one element representation.

    Subclasses define width (column count), radices (per-column code radix,
    least significant first), identity_row, mul_rows, inv_rows.  check_rows
    may assert a representation invariant on freshly produced rows.
    """

    width: int
    radices: tuple[int, ...]

    def identity_row(self) -> np.ndarray:
        return np.zeros(self.width, dtype=np.int16)

    def mul_rows(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def inv_rows(self, a: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def mul_index(self, group_rows: np.ndarray, i: np.ndarray, j: np.ndarray):
        """Optional fast path: product indices for index arrays i, j, or None
        to fall back on row multiplication plus code lookup."""
        return None

    def check_rows(self, rows: np.ndarray) -> None:
        pass

    def describe_row(self, row: np.ndarray) -> str:
        return "(" + ",".join(str(int(v)) for v in row) + ")"

    def encode(self, rows: np.ndarray) -> np.ndarray:
        codes = np.zeros(len(rows), dtype=np.int64)
        mult = 1
        for k, r in enumerate(self.radices):
            codes += rows[:, k].astype(np.int64) * mult
            mult *= r
        return codes


def _as_index_array(x) -> np.ndarray:
    return np.asarray(x, dtype=np.int64)


@dataclass
class ConjugacyReport:
    """Conjugacy data: per-element class ids plus derived summaries."""

    class_of: np.ndarray
    class_reps: list[int]
    class_sizes: list[int]
    conjugate_type: list[int]

    def __post_init__(self):
        n = len(self.class_of)
        if sum(self.class_sizes) != n:
            raise GroupError("class sizes do not partition the group")
        for s in self.class_sizes:
            if n % s != 0:
                raise GroupError("class size does not divide the group order")
        if self.conjugate_type != sorted(set(self.class_sizes)):
            raise GroupError("conjugate type inconsistent with class sizes")


class Subgroup:
    """A subgroup given by the sorted index array of its members."""

    def __init__(self, parent: "FiniteGroup", members, check: bool = True):
        self.parent = parent
        self.members = np.unique(_as_index_array(members))
        if check:
            self._validate()

    def _validate(self):
        g = self.parent
        mem = self.members
        k = len(mem)
        if k == 0 or mem[0] < 0 or mem[-1] >= g.order:
            raise GroupError("subgroup members out of range")
        if g.order % k != 0:
            raise GroupError(f"Lagrange violation: {k} does not divide {g.order}")
        if not self.contains(g.identity):
            raise GroupError("subgroup does not contain the identity")
        if not bool(np.all(self.contains_many(g.inv_many(mem)))):
            raise GroupError("subgroup not closed under inversion")
        # product closure: exhaustive for small subgroups, sampled beyond
        if k <= 1024:
            prods = g.mul_many(np.repeat(mem, k), np.tile(mem, k))
        else:
            rng = np.random.default_rng(0)
            prods = g.mul_many(rng.choice(mem, 10**5), rng.choice(mem, 10**5))
        if not bool(np.all(self.contains_many(prods))):
            raise GroupError("subgroup not closed under multiplication")

    @property
    def order(self) -> int:
        return len(self.members)

    def contains(self, i: int) -> bool:
        pos = int(np.searchsorted(self.members, i))
        return pos < len(self.members) and self.members[pos] == i

    def contains_many(self, idx) -> np.ndarray:
        idx = _as_index_array(idx)
        pos = np.searchsorted(self.members, idx)
        pos = np.minimum(pos, len(self.members) - 1)
        return self.members[pos] == idx

    def membership_mask(self) -> np.ndarray:
        mask = np.zeros(self.parent.order, dtype=bool)
        mask[self.members] = True
        return mask

    def is_abelian(self) -> bool:
        mem = self.members
        k = len(mem)
        a = np.repeat(mem, k)
        b = np.tile(mem, k)
        return bool(np.all(self.parent.mul_many(a, b) == self.parent.mul_many(b, a)))

    def is_elementary_abelian(self) -> bool:
        if not self.is_abelian():
            return False
        orders = self.parent.element_orders()[self.members]
        p = self.parent.prime
        return bool(np.all((orders == 1) | (orders == p)))

    def same_as(self, other: "Subgroup") -> bool:
        return self.parent is other.parent and np.array_equal(self.members, other.members)


class FiniteGroup:
    """A finite group on an indexed, canonically ordered element universe."""

    def __init__(
        self,
        name: str,
        backend: Backend,
        rows: np.ndarray,
        generators=None,
        sort: bool = True,
        cap: int = DEFAULT_CAP,
        table_cap: int = TABLE_CAP,
        field=None,
        kind: str | None = None,
        assume_generates: bool = False,
    ):
        rows = np.ascontiguousarray(rows, dtype=np.int16)
        if len(rows) > cap:
            raise CapExceeded(f"group order {len(rows)} exceeds cap {cap}")
        codes = backend.encode(rows)
        if sort:
            order = np.argsort(codes, kind="stable")
            rows = np.ascontiguousarray(rows[order])
            codes = codes[order]
        if len(codes) > 1 and bool(np.any(codes[1:] == codes[:-1])):
            raise GroupError("duplicate elements in universe")
        backend.check_rows(rows)
        self.name = name
        self.backend = backend
        self.rows = rows
        self.codes = codes
        self.order = len(rows)
        self.field = field
        self.kind = kind
        self.identity = int(self.index_of_rows(backend.identity_row()[None, :])[0])
        n = self.order
        self._table = None
        self._table_cap = table_cap
        self._inv = None
        self._orders = None
        self._center = None
        self._classes = None
        self._lcs = None
        self._caches: dict = {}
        if generators is None:
            generators = self._greedy_generators()
            assume_generates = True
        self.generators = [int(g) for g in generators]
        for g in self.generators:
            if not 0 <= g < n:
                raise GroupError("generator index out of range")
        # center/series/conjugacy shortcuts all lean on the generators
        # actually generating, so an unverified explicit list is checked here
        if not assume_generates and len(self.closure_members(self.generators)) != n:
            raise GroupError("declared generators do not generate the group")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_closure(
        cls,
        name: str,
        backend: Backend,
        generator_rows: np.ndarray,
        cap: int = DEFAULT_CAP,
        **kw,
    ) -> "FiniteGroup":
        """Breadth-first closure of generator rows under multiplication."""
        gen_rows = np.ascontiguousarray(generator_rows, dtype=np.int16)
        backend.check_rows(gen_rows)
        rows = np.vstack([backend.identity_row()[None, :], gen_rows])
        codes = backend.encode(rows)
        codes, first = np.unique(codes, return_index=True)
        rows = rows[first]
        frontier = rows
        while len(frontier):
            batches = []
            for g in gen_rows:
                prod = backend.mul_rows(frontier, np.broadcast_to(g, frontier.shape))
                batches.append(prod)
            cand = np.vstack(batches)
            backend.check_rows(cand)
            ccodes = backend.encode(cand)
            ccodes, cfirst = np.unique(ccodes, return_index=True)
            cand = cand[cfirst]
            pos = np.searchsorted(codes, ccodes)
            pos = np.minimum(pos, len(codes) - 1)
            fresh = codes[pos] != ccodes
            if not fresh.any():
                break
            frontier = cand[fresh]
            codes = np.concatenate([codes, ccodes[fresh]])
            rows = np.vstack([rows, frontier])
            order = np.argsort(codes, kind="stable")
            codes = codes[order]
            rows = rows[order]
            if len(rows) > cap:
                raise CapExceeded(f"closure exceeded cap {cap}")
        gen_idx = np.searchsorted(codes, backend.encode(gen_rows))
        return cls(name, backend, rows, generators=gen_idx.tolist(), sort=False, cap=cap,
                   assume_generates=True, **kw)

    def _greedy_generators(self) -> list[int]:
        gens: list[int] = []
        known = np.zeros(self.order, dtype=bool)
        known[self.identity] = True
        while not known.all():
            nxt = int(np.argmin(known))
            gens.append(nxt)
            known[self.closure_members(gens)] = True
        return gens

    # -- primitive operations ---------------------------------------------

    def index_of_rows(self, rows: np.ndarray) -> np.ndarray:
        codes = self.backend.encode(np.asarray(rows))
        pos = np.searchsorted(self.codes, codes)
        pos = np.minimum(pos, self.order - 1)
        if not bool(np.all(self.codes[pos] == codes)):
            raise GroupError("product left the element universe (closure violation)")
        return pos

    def _mul_index_raw(self, i: np.ndarray, j: np.ndarray) -> np.ndarray:
        direct = self.backend.mul_index(self.rows, i, j)
        if direct is not None:
            return direct
        return self.index_of_rows(self.backend.mul_rows(self.rows[i], self.rows[j]))

    def mul_many(self, i, j) -> np.ndarray:
        i = _as_index_array(i)
        j = _as_index_array(j)
        i, j = np.broadcast_arrays(i, j)
        shape = i.shape
        i = i.ravel()
        j = j.ravel()
        if self.order <= self._table_cap:
            if self._table is None:
                self._table = np.full((self.order, self.order), -1, dtype=np.int32)
            out = self._table[i, j].astype(np.int64)
            miss = out < 0
            if miss.any():
                im, jm = i[miss], j[miss]
                prod = self._mul_index_raw(im, jm)
                self._table[im, jm] = prod
                out[miss] = prod
            return out.reshape(shape)
        return self._mul_index_raw(i, j).reshape(shape)

    def mul(self, i: int, j: int) -> int:
        return int(self.mul_many(i, j))

    def inv_many(self, i) -> np.ndarray:
        if self._inv is None:
            self._inv = self.index_of_rows(self.backend.inv_rows(self.rows))
        return self._inv[_as_index_array(i)]

    def inv(self, i: int) -> int:
        return int(self.inv_many(i))

    def label(self, i: int) -> bytes:
        """Canonical element encoding (the coordinate row, little-endian int16)."""
        return self.rows[i].tobytes()

    def describe(self, i: int) -> str:
        return self.backend.describe_row(self.rows[i])

    def conjugate_many(self, x, g) -> np.ndarray:
        """g^-1 * x * g, vectorized."""
        g = _as_index_array(g)
        return self.mul_many(self.mul_many(self.inv_many(g), x), g)

    def commutator_many(self, a, b) -> np.ndarray:
        """[a, b] = a^-1 b^-1 a b, vectorized."""
        left = self.mul_many(self.inv_many(a), self.inv_many(b))
        return self.mul_many(self.mul_many(left, a), b)

    def commutator(self, a: int, b: int) -> int:
        return int(self.commutator_many(a, b))

    def power_many(self, i, e: int) -> np.ndarray:
        i = _as_index_array(i)
        e = int(e)
        if e < 0:
            return self.power_many(self.inv_many(i), -e)
        out = np.full(i.shape, self.identity, dtype=np.int64)
        base = i
        while e:
            if e & 1:
                out = self.mul_many(out, base)
            if e > 1:
                base = self.mul_many(base, base)
            e >>= 1
        return out

    def power(self, i: int, e: int) -> int:
        return int(self.power_many(i, e))

    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            n = self.order
            orders = np.ones(n, dtype=np.int64)
            cur = np.arange(n, dtype=np.int64)
            alive = cur != self.identity
            base = np.arange(n, dtype=np.int64)
            while alive.any():
                idx = np.nonzero(alive)[0]
                cur[idx] = self.mul_many(cur[idx], base[idx])
                orders[idx] += 1
                alive[idx] = cur[idx] != self.identity
            self._orders = orders
        return self._orders

    def element_order(self, i: int) -> int:
        return int(self.element_orders()[i])

    def exponent(self) -> int:
        return int(math.lcm(*np.unique(self.element_orders()).tolist()))

    @property
    def prime(self) -> int:
        """Smallest prime factor of the order (the prime, for p-groups)."""
        n = self.order
        if n == 1:
            raise GroupError("trivial group has no prime")
        d = 2
        while d * d <= n:
            if n % d == 0:
                return d
            d += 1
        return n

    def is_prime_power(self) -> bool:
        if self.order == 1:
            return True
        p = self.prime
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1

    def is_abelian(self) -> bool:
        idx = np.arange(self.order, dtype=np.int64)
        for g in self.generators:
            if not bool(np.all(self.mul_many(idx, g) == self.mul_many(g, idx))):
                return False
        return True

    # -- subgroup machinery ------------------------------------------------

    def subgroup(self, members) -> Subgroup:
        return Subgroup(self, members)

    def trivial_subgroup(self) -> Subgroup:
        return Subgroup(self, [self.identity], check=False)

    def full_subgroup(self) -> Subgroup:
        return Subgroup(self, np.arange(self.order), check=False)

    def closure_members(self, gens) -> np.ndarray:
        """Index BFS: members of the subgroup generated by gens."""
        gens = np.unique(_as_index_array(gens))
        members = np.unique(np.concatenate([[self.identity], gens]))
        frontier = members
        while len(frontier):
            prods = self.mul_many(frontier[:, None], gens[None, :]).ravel()
            prods = np.unique(prods)
            pos = np.searchsorted(members, prods)
            pos = np.minimum(pos, len(members) - 1)
            fresh = prods[members[pos] != prods]
            if not len(fresh):
                break
            members = np.union1d(members, fresh)
            frontier = fresh
        return members

    def closure(self, gens) -> Subgroup:
        return Subgroup(self, self.closure_members(gens), check=False)

    def normal_closure_members(self, members) -> np.ndarray:
        """Smallest normal subgroup containing members, as a sorted index array.

        Grows a generating set: whenever a conjugate of a current generator
        falls outside the closure so far, it joins the generating set.  At the
        fixed point every conjugate of every generator lies in the subgroup,
        which therefore is normal (conjugation by the group's generators
        reaches all conjugations).
        """
        sub_gens = np.unique(_as_index_array(members))
        cur = self.closure_members(sub_gens)
        while True:
            conj = [self.conjugate_many(sub_gens, g) for g in self.generators]
            cand = np.unique(np.concatenate(conj))
            pos = np.minimum(np.searchsorted(cur, cand), len(cur) - 1)
            fresh = cand[cur[pos] != cand]
            if not len(fresh):
                return cur
            sub_gens = np.unique(np.concatenate([sub_gens, fresh]))
            cur = self.closure_members(sub_gens)

    def center(self) -> Subgroup:
        if self._center is None:
            mask = np.ones(self.order, dtype=bool)
            idx = np.arange(self.order, dtype=np.int64)
            for g in self.generators:
                cand = idx[mask]
                ok = self.mul_many(cand, g) == self.mul_many(g, cand)
                mask[cand[~ok]] = False
            self._center = Subgroup(self, idx[mask], check=False)
        return self._center

    def centralizer(self, x: int) -> Subgroup:
        idx = np.arange(self.order, dtype=np.int64)
        ok = self.mul_many(idx, x) == self.mul_many(x, idx)
        return Subgroup(self, idx[ok], check=False)

    def centralizer_in(self, a: Subgroup, x: int) -> Subgroup:
        if a.parent is not self:
            raise GroupError("subgroup belongs to a different group")
        mem = a.members
        ok = self.mul_many(mem, x) == self.mul_many(x, mem)
        return Subgroup(self, mem[ok], check=False)

    # -- conjugacy ---------------------------------------------------------

    def conjugacy_classes(self) -> ConjugacyReport:
        """Classes as connected components of the generator-conjugation maps.

        Conjugation by each generator is a permutation of the index set;
        min-label flooding along those permutations (both directions) makes
        every element carry the least index of its class, so class ids come
        out ordered by their minimal representatives.
        """
        if self._classes is None:
            n = self.order
            gens = [g for g in dict.fromkeys(self.generators) if g != self.identity]
            idx = np.arange(n, dtype=np.int64)
            moves = []
            for g in gens:
                img = self.conjugate_many(idx, g)
                back = np.empty(n, dtype=np.int64)
                back[img] = idx
                moves.append(img)
                moves.append(back)
            labels = idx.copy()
            while True:
                before = labels
                for img in moves:
                    labels = np.minimum(labels, labels[img])
                labels = labels[labels]  # path compression
                if np.array_equal(labels, before):
                    break
            reps, class_of = np.unique(labels, return_inverse=True)
            sizes = np.bincount(class_of)
            self._classes = ConjugacyReport(
                class_of=class_of.astype(np.int64),
                class_reps=reps.tolist(),
                class_sizes=sizes.tolist(),
                conjugate_type=sorted(set(sizes.tolist())),
            )
        return self._classes

    def conjugate_type(self) -> list[int]:
        return self.conjugacy_classes().conjugate_type

    def class_size_of(self) -> np.ndarray:
        rep = self.conjugacy_classes()
        return np.asarray(rep.class_sizes, dtype=np.int64)[rep.class_of]

    # -- series and class --------------------------------------------------

    def derived_subgroup(self) -> Subgroup:
        return self.lower_central_series()[1] if self.order > 1 else self.trivial_subgroup()

    def lower_central_series(self) -> list[Subgroup]:
        """gamma_1 >= gamma_2 >= ..., ending at the first repeated term.

        Each step commutates a generating set of the previous term against
        the group generators; the normal closure of those values is the next
        term, since [H, G] is generated as a normal subgroup by commutators
        of generators.
        """
        if self._lcs is None:
            series = [self.full_subgroup()]
            gens = [g for g in dict.fromkeys(self.generators) if g != self.identity]
            gen_arr = np.asarray(gens, dtype=np.int64)
            while True:
                prev = series[-1]
                prev_gens = gen_arr if len(series) == 1 else prev.members
                if len(gens) and len(prev_gens):
                    comms = self.commutator_many(
                        np.repeat(prev_gens, len(gens)), np.tile(gen_arr, len(prev_gens))
                    )
                    seed = np.unique(comms)
                else:
                    seed = np.array([self.identity], dtype=np.int64)
                nxt = self.normal_closure_members(seed)
                if len(nxt) == len(prev.members) and np.array_equal(nxt, prev.members):
                    break
                series.append(Subgroup(self, nxt, check=False))
                if len(nxt) == 1:
                    break
            self._lcs = series
        return self._lcs

    def nilpotency_class(self) -> int:
        series = self.lower_central_series()
        if series[-1].order != 1:
            raise GroupError(f"{self.name} is not nilpotent")
        return len(series) - 1 if len(series) > 1 else 0

    def gamma(self, k: int) -> Subgroup:
        """k-th lower central term (1-based); constant once the series hits 1."""
        series = self.lower_central_series()
        if k < 1:
            raise GroupError("lower central index must be >= 1")
        return series[min(k, len(series)) - 1]

    # -- quotient / relabel ------------------------------------------------

    @classmethod
    def from_index_rows(cls, name, backend, rows, generators, field=None, kind=None) -> "FiniteGroup":
        """Construct a group whose coordinates are indices into another group
        (quotients, relabelings, products); rows stay int64."""
        g = cls.__new__(cls)
        _init_wide(g, name, backend, rows, generators=generators, field=field, kind=kind)
        return g

    def quotient(self, n_sub: Subgroup, name: str | None = None) -> "FiniteGroup":
        if n_sub.parent is not self:
            raise GroupError("subgroup belongs to a different group")
        mem = n_sub.members
        for g in self.generators:
            if not bool(np.all(n_sub.contains_many(self.conjugate_many(mem, g)))):
                raise GroupError("quotient by a non-normal subgroup")
        n = self.order
        idx = np.arange(n, dtype=np.int64)
        rep = np.full(n, np.iinfo(np.int64).max, dtype=np.int64)
        for k in mem:
            np.minimum(rep, self.mul_many(idx, int(k)), out=rep)
        leaders = np.unique(rep)
        coset_of = np.searchsorted(leaders, rep)
        backend = QuotientBackend(self, leaders, coset_of)
        # int16 rows cannot hold parent indices; the wide initializer keeps int64
        rows = leaders[:, None].astype(np.int64)
        qname = name or f"{self.name} / {n_sub.order}"
        q = FiniteGroup.__new__(FiniteGroup)
        _init_wide(q, qname, backend, rows, generators=np.unique(coset_of[self.generators]).tolist(),
                   field=self.field, kind=None)
        return q

    def relabel(self, perm) -> "FiniteGroup":
        """Same group with element perm[i] renamed to i (test utility)."""
        perm = _as_index_array(perm)
        if sorted(perm.tolist()) != list(range(self.order)):
            raise GroupError("relabeling must be a permutation")
        backend = RelabeledBackend(self, perm)
        rows = np.arange(self.order, dtype=np.int64)[:, None]
        inv_perm = np.empty(self.order, dtype=np.int64)
        inv_perm[perm] = np.arange(self.order, dtype=np.int64)
        g = FiniteGroup.__new__(FiniteGroup)
        _init_wide(g, f"{self.name} (relabeled)", backend, rows,
                   generators=inv_perm[self.generators].tolist(), field=self.field, kind=None)
        return g

    # -- structural predicates --------------------------------------------

    def breadth(self, x: int) -> int:
        """log_p of the index of the centralizer of x."""
        if not self.is_prime_power():
            raise GroupError("breadth needs a p-group")
        c = self.centralizer(x).order
        index = self.order // c
        b = round(math.log(index, self.prime))
        if self.prime**b != index:
            raise GroupError("centralizer index is not a prime power")
        return b

    def centralizer_orders_in(self, a: Subgroup) -> np.ndarray:
        """|C_A(x)| for every element x, vectorized over the whole group."""
        mem = a.members
        n = self.order
        counts = np.zeros(n, dtype=np.int64)
        chunk = max(1, 4 * 10**6 // max(1, len(mem)))
        for start in range(0, n, chunk):
            xs = np.arange(start, min(start + chunk, n), dtype=np.int64)
            left = self.mul_many(xs[:, None], mem[None, :])
            right = self.mul_many(mem[None, :], xs[:, None])
            counts[xs] = (left == right).sum(axis=1)
        return counts

    def breadth_set(self, a: Subgroup) -> np.ndarray:
        """Indices achieving the maximal breadth relative to subgroup a.

        a must be abelian and normal; b_a(x) = log_p [a : C_a(x)].
        """
        if not self.is_prime_power():
            raise GroupError("breadth needs a p-group")
        if not a.is_abelian():
            raise GroupError("breadth set needs an abelian subgroup")
        for g in self.generators:
            if not bool(np.all(a.contains_many(self.conjugate_many(a.members, g)))):
                raise GroupError("breadth set needs a normal subgroup")
        counts = self.centralizer_orders_in(a)
        return np.nonzero(counts == counts.min())[0]

    def camina_check(self) -> bool:
        """Whether every class outside the derived subgroup is a full coset."""
        der = self.derived_subgroup()
        if der.order == 1 or der.order == self.order:
            raise GroupError("Camina check is undefined for degenerate derived subgroups")
        sizes = self.class_size_of()
        outside = ~der.membership_mask()
        return bool(np.all(sizes[outside] == der.order))

    # -- identity suite ----------------------------------------------------

    def check_class3_identities(self, samples: int = 10**4, seed: int = 0,
                                exhaustive_limit: int = IDENTITY_EXHAUSTIVE_LIMIT,
                                chunk: int = 2 * 10**6) -> dict:
        """Commutator identities valid in nilpotency class <= 3 (odd p).

        Exhaustive over all element tuples when the order is at most
        exhaustive_limit, otherwise over seeded random tuples.  Triple space
        is walked in flat chunks so memory stays bounded.  Returns a report
        dict per identity: {passed, checked, counterexample}.
        """
        if self.nilpotency_class() > 3:
            raise GroupError("identity suite requires nilpotency class <= 3")
        if not self.is_prime_power():
            raise GroupError("identity suite requires a p-group")
        n = self.order
        p = self.prime if n > 1 else 3
        e = self.identity
        zmask = self.center().membership_mask()
        pow_t = np.stack([self.power_many(np.arange(n, dtype=np.int64), s) for s in range(p)])
        combos = np.array([(i, j, k) for i in range(p) for j in range(p) for k in range(p)],
                          dtype=np.int64)
        names = (
            "central_pair_triple_vanishes",
            "central_commutator_swap",
            "product_expansion",
            "power_expansion",
            "power_commutator_collapse",
        )
        report = {name: {"passed": True, "checked": 0, "counterexample": None} for name in names}

        def record(name, ok_mask, tuples):
            entry = report[name]
            entry["checked"] += int(len(ok_mask))
            bad = np.nonzero(~ok_mask)[0]
            if len(bad):
                entry["passed"] = False
                if entry["counterexample"] is None:
                    k = int(bad[0])
                    entry["counterexample"] = tuple(self.describe(int(t[k])) for t in tuples)

        def run_triples(a, b, c, offset):
            # triple commutator vanishes when both inner commutators are central
            cac = self.commutator_many(a, c)
            cbc = self.commutator_many(b, c)
            cab = self.commutator_many(a, b)
            cond = zmask[cac] & zmask[cbc]
            triple = self.commutator_many(cab[cond], c[cond])
            record(names[0], triple == e, (a[cond], b[cond], c[cond]))

            # central [a,b] makes [[a,t],b] and [[b,t],a] agree
            cond = zmask[cab]
            aa, bb, tt = a[cond], b[cond], c[cond]
            lhs = self.commutator_many(self.commutator_many(aa, tt), bb)
            rhs = self.commutator_many(self.commutator_many(bb, tt), aa)
            record(names[1], lhs == rhs, (aa, bb, tt))

            # [ab,c] = [a,c][b,c][[a,c],b] and [a,bc] = [a,b][a,c][[a,b],c]
            lhs = self.commutator_many(self.mul_many(a, b), c)
            rhs = self.mul_many(self.mul_many(cac, cbc), self.commutator_many(cac, b))
            ok = lhs == rhs
            lhs = self.commutator_many(a, self.mul_many(b, c))
            rhs = self.mul_many(self.mul_many(cab, cac), self.commutator_many(cab, c))
            record(names[2], ok & (lhs == rhs), (a, b, c))

            # [a^i,b^j,c^k] = [[a,b],c]^(ijk), exponents cycling through GF(p)^3
            t = (offset + np.arange(len(a), dtype=np.int64)) % len(combos)
            iexp, jexp, kexp = combos[t, 0], combos[t, 1], combos[t, 2]
            lhs = self.commutator_many(
                self.commutator_many(pow_t[iexp, a], pow_t[jexp, b]), pow_t[kexp, c]
            )
            base = self.commutator_many(cab, c)
            rhs = pow_t[(iexp * jexp * kexp) % p, base]
            record(names[4], lhs == rhs, (a, b, c))

        def run_pairs(a, b):
            # [a^s,b] = [a,b]^s [[a,b],a]^(s(s-1)/2), and dually in the second slot
            ok = np.ones(len(a), dtype=bool)
            cab = self.commutator_many(a, b)
            for s in range(p):
                binom = (s * (s - 1) // 2) % p
                corr = pow_t[binom, self.commutator_many(cab, a)]
                ok &= self.commutator_many(pow_t[s, a], b) == self.mul_many(pow_t[s, cab], corr)
                corr = pow_t[binom, self.commutator_many(cab, b)]
                ok &= self.commutator_many(a, pow_t[s, b]) == self.mul_many(pow_t[s, cab], corr)
            record(names[3], ok, (a, b))

        if n <= exhaustive_limit:
            total = n * n * n
            for start in range(0, total, chunk):
                flat = np.arange(start, min(start + chunk, total), dtype=np.int64)
                ab, c = np.divmod(flat, n)
                a, b = np.divmod(ab, n)
                run_triples(a, b, c, start)
            total2 = n * n
            for start in range(0, total2, chunk):
                flat = np.arange(start, min(start + chunk, total2), dtype=np.int64)
                a, b = np.divmod(flat, n)
                run_pairs(a, b)
        else:
            rng = np.random.default_rng(seed)
            run_triples(rng.integers(0, n, samples), rng.integers(0, n, samples),
                        rng.integers(0, n, samples), 0)
            run_pairs(rng.integers(0, n, samples), rng.integers(0, n, samples))
        return report

    # -- axioms ------------------------------------------------------------

    def verify_group_axioms(self, samples: int = 10**5, seed: int = 0) -> None:
        """Identity/inverse laws exhaustively; associativity exhaustively up to
        ASSOC_EXHAUSTIVE_LIMIT elements, by seeded sampling beyond."""
        n = self.order
        idx = np.arange(n, dtype=np.int64)
        e = self.identity
        if not bool(np.all(self.mul_many(idx, e) == idx)) or not bool(np.all(self.mul_many(e, idx) == idx)):
            raise GroupError("identity law fails")
        inv = self.inv_many(idx)
        if not bool(np.all(self.mul_many(idx, inv) == e)) or not bool(np.all(self.mul_many(inv, idx) == e)):
            raise GroupError("inverse law fails")
        if n <= ASSOC_EXHAUSTIVE_LIMIT:
            pairs_a = np.repeat(idx, n)
            pairs_b = np.tile(idx, n)
            ab = self.mul_many(pairs_a, pairs_b)
            for c in range(n):
                left = self.mul_many(ab, c)
                right = self.mul_many(pairs_a, self.mul_many(pairs_b, c))
                if not bool(np.all(left == right)):
                    raise GroupError(f"associativity fails with c={c}")
        else:
            rng = np.random.default_rng(seed)
            a = rng.integers(0, n, samples)
            b = rng.integers(0, n, samples)
            c = rng.integers(0, n, samples)
            if not bool(np.all(self.mul_many(self.mul_many(a, b), c) == self.mul_many(a, self.mul_many(b, c)))):
                raise GroupError("associativity fails on a sampled triple")


def _init_wide(g: FiniteGroup, name, backend, rows, generators, field, kind):
    """Initialize a FiniteGroup whose rows hold parent indices (int64)."""
    rows = np.ascontiguousarray(rows, dtype=np.int64)
    codes = backend.encode(rows)
    order = np.argsort(codes, kind="stable")
    rows = np.ascontiguousarray(rows[order])
    codes = codes[order]
    if len(codes) > 1 and bool(np.any(codes[1:] == codes[:-1])):
        raise GroupError("duplicate elements in universe")
    g.name = name
    g.backend = backend
    g.rows = rows
    g.codes = codes
    g.order = len(rows)
    g.field = field
    g.kind = kind
    g.identity = int(np.searchsorted(codes, backend.encode(backend.identity_row()[None, :])[0]))
    if g.identity >= g.order or codes[g.identity] != backend.encode(backend.identity_row()[None, :])[0]:
        raise GroupError("identity not present")
    g._table = None
    g._table_cap = TABLE_CAP
    g._inv = None
    g._orders = None
    g._center = None
    g._classes = None
    g._lcs = None
    g._caches = {}
    g.generators = [int(x) for x in generators]


class QuotientBackend(Backend):
    """Cosets of a normal subgroup; a row holds the parent index of the
    minimal coset member, which acts as the canonical representative.

    leaders is ascending, so the quotient group's element index equals the
    coset id, which mul_index exploits to skip the row round trip.
    """

    def __init__(self, parent: FiniteGroup, leaders: np.ndarray, coset_of: np.ndarray):
        self.parent = parent
        self.leaders = leaders
        self.coset_of = coset_of
        self.width = 1
        self.radices = (parent.order,)

    def mul_index(self, group_rows, i, j):
        if len(group_rows) != len(self.leaders):
            return None
        prod = self.parent.mul_many(group_rows[i, 0], group_rows[j, 0])
        return self.coset_of[prod]

    def identity_row(self) -> np.ndarray:
        return np.array([self.leaders[self.coset_of[self.parent.identity]]], dtype=np.int64)

    def mul_rows(self, a, b):
        prod = self.parent.mul_many(a[:, 0], b[:, 0])
        return self.leaders[self.coset_of[prod]][:, None]

    def inv_rows(self, a):
        inv = self.parent.inv_many(a[:, 0])
        return self.leaders[self.coset_of[inv]][:, None]

    def describe_row(self, row) -> str:
        return self.parent.describe(int(row[0])) + "N"

    def encode(self, rows):
        return rows[:, 0].astype(np.int64)


class RelabeledBackend(Backend):
    """A permuted copy of another group's index set (testing aid)."""

    def __init__(self, base: FiniteGroup, perm: np.ndarray):
        self.base = base
        self.perm = perm
        inv = np.empty(len(perm), dtype=np.int64)
        inv[perm] = np.arange(len(perm), dtype=np.int64)
        self.inv_perm = inv
        self.width = 1
        self.radices = (base.order,)

    def identity_row(self):
        return np.array([self.inv_perm[self.base.identity]], dtype=np.int64)

    def mul_rows(self, a, b):
        prod = self.base.mul_many(self.perm[a[:, 0]], self.perm[b[:, 0]])
        return self.inv_perm[prod][:, None]

    def inv_rows(self, a):
        return self.inv_perm[self.base.inv_many(self.perm[a[:, 0]])][:, None]

    def describe_row(self, row):
        return self.base.describe(int(self.perm[int(row[0])]))

    def encode(self, rows):
        return rows[:, 0].astype(np.int64)
