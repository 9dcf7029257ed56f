"""Finite subgroups of mu_N^n : S_n.

Groups are stored extensionally, as the full sorted element set, which makes
set equality, membership and normality tests exact and trivial.  The torus
order of the ambient field is always lcm(m, 4) so that fourth roots of unity
coexist with the m-th roots used by the group itself.

The conjugacy-class machinery at the bottom of the module enumerates normal
subgroups as join-closed unions of conjugacy classes.  That lattice is the
single audited algorithm behind thick-subgroup enumeration and the
normal-abelian-subgroup scans used by the classification code.
"""

from __future__ import annotations

import itertools
import os
from collections import Counter
from dataclasses import dataclass, field
from math import factorial, gcd, lcm

from .monomial import MonomialElement, identity, perm_sign

DEFAULT_CAP = 50_000


def group_size_cap() -> int:
    """Size cap for group construction, overridable via MYSTICA_CAP."""
    value = os.environ.get("MYSTICA_CAP")
    return int(value) if value else DEFAULT_CAP


class CapExceededError(RuntimeError):
    pass


@dataclass(frozen=True)
class GroupTag:
    """Provenance of a constructed group, used for labels and JSON."""

    kind: str  # "G", "W", "generated", "explicit", "ambient"
    params: tuple = ()

    @property
    def label(self) -> str:
        if self.kind == "G":
            m, p, n = self.params
            return f"G({m},{p},{n})"
        if self.kind == "W":
            m, d, n = self.params
            return f"W({m},{d},{n})"
        return self.kind


class FiniteMonomialGroup:
    """A finite set of monomial elements closed under the group law."""

    def __init__(self, n: int, N: int, elements, tag: GroupTag | None = None):
        self.n = n
        self.N = N
        elems = sorted(set(elements), key=lambda a: a.sort_key())
        for a in elems:
            if (a.n, a.N) != (n, N):
                raise ValueError("element outside the stated ambient")
        self.elements = tuple(elems)
        self._eset = frozenset(elems)
        self.tag = tag or GroupTag("explicit")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, a) -> bool:
        return a in self._eset

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteMonomialGroup)
            and (self.n, self.N) == (other.n, other.N)
            and self._eset == other._eset
        )

    def __hash__(self) -> int:
        return hash((self.n, self.N, self._eset))

    def __repr__(self) -> str:
        return f"<{self.tag.label} order {self.order} in mu_{self.N}^{self.n}:S_{self.n}>"

    def identity(self) -> MonomialElement:
        return identity(self.n, self.N)

    def element_set(self) -> frozenset:
        return self._eset

    def is_subgroup_of(self, other: "FiniteMonomialGroup") -> bool:
        a, b = common_ambient(self, other)
        return a._eset <= b._eset

    def torus_elements(self) -> tuple[MonomialElement, ...]:
        return tuple(a for a in self.elements if a.is_torus())

    def lift(self, N: int) -> "FiniteMonomialGroup":
        if N == self.N:
            return self
        return FiniteMonomialGroup(self.n, N, (a.lift(N) for a in self.elements), self.tag)

    def retag(self, tag: GroupTag) -> "FiniteMonomialGroup":
        return FiniteMonomialGroup(self.n, self.N, self.elements, tag)

    def to_json(self) -> dict:
        if self.tag.kind == "G":
            m, p, n = self.tag.params
            return {"kind": "G", "m": m, "p": p, "n": n}
        if self.tag.kind == "W":
            m, d, n = self.tag.params
            return {"kind": "W", "m": m, "cprime": d, "n": n}
        return {"kind": "explicit", "elements": [a.to_json() for a in self.elements]}


def common_ambient(a: FiniteMonomialGroup, b: FiniteMonomialGroup):
    if a.n != b.n:
        raise ValueError("groups live in different ranks")
    N = lcm(a.N, b.N)
    return a.lift(N), b.lift(N)


def ambient_order(m: int) -> int:
    """Torus order used for all work at level m: lcm(m, 4)."""
    return lcm(m, 4)


def make_gmpn(m: int, p: int, n: int, *, N: int | None = None) -> FiniteMonomialGroup:
    """The imprimitive reflection group: pairs t*w with det t in the index-p
    subgroup of the m-th roots of unity.  Order m^n n!/p."""
    if m < 1 or n < 1 or p < 1 or m % p != 0:
        raise ValueError(f"p={p} must divide m={m} and both must be positive")
    N = N or ambient_order(m)
    if N % m != 0:
        raise ValueError(f"ambient order {N} does not contain the {m}-th roots")
    step = N // m
    elems = []
    for perm in itertools.permutations(range(n)):
        for f in itertools.product(range(m), repeat=n):
            if sum(f) % p == 0:
                elems.append(MonomialElement(n, N, perm, tuple(step * x for x in f)))
    group = FiniteMonomialGroup(n, N, elems, GroupTag("G", (m, p, n)))
    assert group.order == m**n * factorial(n) // p
    return group


def make_w(m: int, d: int, n: int, *, N: int | None = None) -> FiniteMonomialGroup:
    """The det-twisted family: pairs t*w with det(t*w) in the order-d subgroup
    of the m-th roots of unity.  Order m^(n-1) d n!."""
    if m < 1 or n < 1 or d < 1 or m % d != 0:
        raise ValueError(f"d={d} must divide m={m} and both must be positive")
    N = N or ambient_order(m)
    if N % m != 0:
        raise ValueError(f"ambient order {N} does not contain the {m}-th roots")
    step = N // m
    L = lcm(m, 2)  # det(t*w) lives in the L-th roots of unity
    elems = []
    for perm in itertools.permutations(range(n)):
        sign_term = 0 if perm_sign(perm) == 1 else L // 2
        for f in itertools.product(range(m), repeat=n):
            det_exp = (sum(f) * (L // m) + sign_term) % L
            if det_exp % (L // d) == 0:
                elems.append(MonomialElement(n, N, perm, tuple(step * x for x in f)))
    group = FiniteMonomialGroup(n, N, elems, GroupTag("W", (m, d, n)))
    if m % 2 == 0:
        expected = m ** (n - 1) * d * factorial(n)
    else:
        # odd permutations need det t in -C', which misses the m-th roots
        expected = m ** (n - 1) * d * factorial(n) // (1 if n == 1 else 2)
    assert group.order == expected
    return group


def closure_generate(
    ambient: tuple[int, int],
    gens,
    cap: int | None = None,
) -> FiniteMonomialGroup:
    """Smallest subgroup of mu_N^n : S_n containing the generators."""
    N, n = ambient
    cap = cap or group_size_cap()
    gens = list(gens)
    for g in gens:
        if (g.n, g.N) != (n, N):
            raise ValueError("generator outside the stated ambient")
    e = identity(n, N)
    seen = {e}
    frontier = [e]
    gens_full = gens + [g.inverse() for g in gens]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens_full:
                b = a * g
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
                    if len(seen) > cap:
                        raise CapExceededError(f"closure exceeded cap {cap}")
        frontier = nxt
    return FiniteMonomialGroup(n, N, seen, GroupTag("generated"))


def ambient_group(m: int, n: int) -> FiniteMonomialGroup:
    return make_gmpn(m, 1, n)


def is_thick(G: FiniteMonomialGroup, ambient_m: int) -> bool:
    """Whether G is a thick subgroup of G(ambient_m, 1, n): normal with full
    projection to the symmetric group."""
    amb = make_gmpn(ambient_m, 1, G.n)
    Gl, ambl = common_ambient(G, amb)
    if not Gl._eset <= ambl._eset:
        raise ValueError(f"group is not contained in G({ambient_m},1,{G.n})")
    perms = {a.perm for a in Gl.elements}
    if len(perms) != factorial(G.n):
        return False
    # normality under a generating set of the ambient is enough
    from .monomial import adjacent_swap, torus_gen

    Nl = ambl.N
    gens = [adjacent_swap(G.n, Nl, i) for i in range(1, G.n)]
    gens.append(torus_gen(G.n, Nl, 1, Nl // ambient_m))
    for g in gens:
        ginv = g.inverse()
        for x in Gl.elements:
            if g * x * ginv not in Gl:
                return False
    return True


@dataclass(frozen=True)
class TorusSubgroup:
    """The intersection of a group with the diagonal torus."""

    elements: tuple[MonomialElement, ...]
    m_detected: int  # order of the smallest root subgroup containing all entries
    cprime_order: int  # order of the determinant image of the torus part
    form_matches: bool  # T equals {t : det t in C'} inside mu_m^n
    generation_matches: bool  # T is generated by t_1^(eps') and t_i^(eps) t_j^(eps^-1)

    @property
    def order(self) -> int:
        return len(self.elements)


def torus_part(G: FiniteMonomialGroup) -> TorusSubgroup:
    n, N = G.n, G.N
    torus = G.torus_elements()
    # smallest m with all entries inside the m-th roots
    m = 1
    for t in torus:
        for e in t.exps:
            if e:
                m = lcm(m, N // gcd(e, N))
    for a in G.elements:
        for e in a.exps:
            if e:
                m = lcm(m, N // gcd(e, N))
    det_exps = {sum(t.exps) % N for t in torus}
    cprime = len(det_exps)
    # det values of torus elements live in mu_m; the image is a subgroup
    step = N // m
    tset = {t.exps for t in torus}
    # does T match {t in mu_m^n : det t in C'}?
    dstep = m // cprime  # C' = exponents divisible by m/cprime (as m-th roots)
    expected = set()
    for f in itertools.product(range(m), repeat=n):
        if (sum(f) % m) % dstep == 0:
            expected.add(tuple(step * x for x in f))
    form_matches = tset == expected
    # generation statement: t_1^(eps') for eps' in C', and t_i^(eps) t_j^(eps^-1)
    gens = []
    for j in range(cprime):
        exps = [0] * n
        exps[0] = (j * dstep * step) % N
        gens.append(MonomialElement(n, N, tuple(range(n)), tuple(exps)))
    for i in range(n):
        for j in range(n):
            if i != j:
                exps = [0] * n
                exps[i] = step % N
                exps[j] = (-step) % N
                gens.append(MonomialElement(n, N, tuple(range(n)), tuple(exps)))
    generated = closure_generate((N, n), gens)
    generation_matches = generated.element_set() == frozenset(torus)
    return TorusSubgroup(torus, m, cprime, form_matches, generation_matches)


# ---------------------------------------------------------------------------
# Conjugacy classes, the class-join lattice and structure probes
# ---------------------------------------------------------------------------


class IndexedGroup:
    """Index-based view of a group for combinatorial computations."""

    def __init__(self, G: FiniteMonomialGroup):
        self.group = G
        self.elems = list(G.elements)
        self.index = {a: i for i, a in enumerate(self.elems)}
        self.id_index = self.index[G.identity()]
        self.inv = [self.index[a.inverse()] for a in self.elems]
        self._classes: list[frozenset[int]] | None = None
        self._class_of: list[int] | None = None
        self._class_mult: list[list[frozenset[int]]] | None = None
        self._gens: list[int] | None = None

    def mul(self, i: int, j: int) -> int:
        return self.index[self.elems[i] * self.elems[j]]

    # -- generators ------------------------------------------------------

    def generators(self) -> list[int]:
        """A small generating set found greedily."""
        if self._gens is not None:
            return self._gens
        gens: list[int] = []
        covered = {self.id_index}
        for i in range(len(self.elems)):
            if i in covered:
                continue
            gens.append(i)
            covered = self._closure_indices(gens)
            if len(covered) == len(self.elems):
                break
        self._gens = gens
        return gens

    def _closure_indices(self, gens: list[int]) -> set[int]:
        seen = {self.id_index}
        frontier = [self.id_index]
        gset = list(gens) + [self.inv[g] for g in gens]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gset:
                    b = self.mul(a, g)
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return seen

    # -- conjugacy classes -------------------------------------------------

    def conjugacy_classes(self) -> list[frozenset[int]]:
        if self._classes is not None:
            return self._classes
        gens = self.generators()
        n = len(self.elems)
        class_of = [-1] * n
        classes: list[frozenset[int]] = []
        for start in range(n):
            if class_of[start] >= 0:
                continue
            orbit = {start}
            frontier = [start]
            while frontier:
                nxt = []
                for x in frontier:
                    for g in gens:
                        y = self.mul(self.mul(g, x), self.inv[g])
                        if y not in orbit:
                            orbit.add(y)
                            nxt.append(y)
                frontier = nxt
            cid = len(classes)
            classes.append(frozenset(orbit))
            for x in orbit:
                class_of[x] = cid
        self._classes = classes
        self._class_of = class_of
        return classes

    def class_of(self, i: int) -> int:
        self.conjugacy_classes()
        return self._class_of[i]

    def class_mult(self) -> list[list[frozenset[int]]]:
        """class_mult[i][j]: the set of classes met by (rep of class i) * class j."""
        if self._class_mult is not None:
            return self._class_mult
        classes = self.conjugacy_classes()
        reps = [min(c) for c in classes]
        table: list[list[frozenset[int]]] = []
        for rep in reps:
            row = []
            for cls in classes:
                row.append(frozenset(self._class_of[self.mul(rep, x)] for x in cls))
            table.append(row)
        self._class_mult = table
        return table

    # -- the class-join lattice of normal subgroups -------------------------

    def _close_class_set(self, seed: frozenset[int]) -> frozenset[int]:
        table = self.class_mult()
        current = set(seed)
        current.add(self._class_of[self.id_index])
        changed = True
        while changed:
            changed = False
            for i in list(current):
                for j in list(current):
                    extra = table[i][j]
                    if not extra <= current:
                        current |= extra
                        changed = True
        return frozenset(current)

    def normal_subgroup_class_sets(self) -> list[frozenset[int]]:
        """All normal subgroups, each as a frozenset of class indices."""
        classes = self.conjugacy_classes()
        trivial = self._close_class_set(frozenset())
        principals = {self._close_class_set(frozenset([c])) for c in range(len(classes))}
        known = {trivial} | principals
        frontier = list(known)
        while frontier:
            nxt = []
            for a in frontier:
                for p in principals:
                    joined = self._close_class_set(a | p)
                    if joined not in known:
                        known.add(joined)
                        nxt.append(joined)
            frontier = nxt
        return sorted(known, key=lambda s: (sum(len(classes[c]) for c in s), sorted(s)))

    def materialize(self, class_set: frozenset[int]) -> set[int]:
        classes = self.conjugacy_classes()
        out: set[int] = set()
        for c in class_set:
            out |= classes[c]
        return out

    def subgroup_from_indices(self, indices, tag: GroupTag | None = None) -> FiniteMonomialGroup:
        G = self.group
        return FiniteMonomialGroup(G.n, G.N, (self.elems[i] for i in indices), tag)

    def is_abelian_subset(self, indices: set[int]) -> bool:
        lst = sorted(indices)
        for a in lst:
            for b in lst:
                if b >= a:
                    break
                if self.mul(a, b) != self.mul(b, a):
                    return False
        return True


def enumerate_thick(m: int, n: int, cap: int | None = None) -> list[FiniteMonomialGroup]:
    """All thick subgroups of G(m,1,n), found by brute-force enumeration of
    normal subgroups as joins of conjugacy-class closures."""
    cap = cap or group_size_cap()
    if m**n * factorial(n) > cap:
        raise CapExceededError(f"ambient order {m ** n * factorial(n)} exceeds cap {cap}")
    amb = make_gmpn(m, 1, n)
    ig = IndexedGroup(amb)
    out = []
    for class_set in ig.normal_subgroup_class_sets():
        indices = ig.materialize(class_set)
        perms = {ig.elems[i].perm for i in indices}
        if len(perms) != factorial(n):
            continue
        group = ig.subgroup_from_indices(indices)
        out.append(group.retag(identify_tag(group, m)))
    out.sort(key=lambda g: (g.order, [a.sort_key() for a in g.elements]))
    return out


def identify_tag(G: FiniteMonomialGroup, m: int) -> GroupTag:
    """Match a subgroup of G(m,1,n) against the standard families."""
    n = G.n
    for p in range(1, m + 1):
        if m % p == 0 and G.order == m**n * factorial(n) // p:
            if G == make_gmpn(m, p, n).lift(G.N):
                return GroupTag("G", (m, p, n))
    for d in range(1, m + 1):
        if m % d == 0 and G.order == m ** (n - 1) * d * factorial(n):
            if G == make_w(m, d, n).lift(G.N):
                return GroupTag("W", (m, d, n))
    return GroupTag("generated")


@dataclass(frozen=True)
class StructureProbes:
    """Exact structural invariants computed by enumeration."""

    order: int
    center_order: int
    derived_order: int
    abelianization: tuple[int, ...]  # invariant factors, ascending divisor chain
    class_sizes: tuple[int, ...]
    order_histogram: tuple[tuple[int, int], ...]  # (element order, count)
    center: FiniteMonomialGroup = field(compare=False, repr=False)
    derived: FiniteMonomialGroup = field(compare=False, repr=False)


def structure_probes(G: FiniteMonomialGroup, cap: int | None = None) -> StructureProbes:
    cap = cap or group_size_cap()
    if G.order > cap:
        raise CapExceededError(f"group of order {G.order} exceeds cap {cap}")
    ig = IndexedGroup(G)
    n_elems = len(ig.elems)
    gens = ig.generators()
    center = [i for i in range(n_elems) if all(ig.mul(i, g) == ig.mul(g, i) for g in gens)]
    commutators = set()
    for a in range(n_elems):
        inv_a = ig.inv[a]
        for g in gens:
            commutators.add(ig.mul(ig.mul(a, g), ig.mul(inv_a, ig.inv[g])))
    derived = _subgroup_closure(ig, commutators)
    ab_invariants = _abelian_quotient_invariants(ig, derived)
    class_sizes = tuple(sorted(len(c) for c in ig.conjugacy_classes()))
    hist = Counter(a.element_order() for a in G.elements)
    return StructureProbes(
        order=G.order,
        center_order=len(center),
        derived_order=len(derived),
        abelianization=ab_invariants,
        class_sizes=class_sizes,
        order_histogram=tuple(sorted(hist.items())),
        center=ig.subgroup_from_indices(center),
        derived=ig.subgroup_from_indices(derived),
    )


def _subgroup_closure(ig: IndexedGroup, seed: set[int]) -> set[int]:
    seen = set(seed)
    seen.add(ig.id_index)
    frontier = list(seen)
    gens = sorted(seed)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = ig.mul(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def _abelian_quotient_invariants(ig: IndexedGroup, derived: set[int]) -> tuple[int, ...]:
    """Invariant factors of G/[G,G] (an ascending divisor chain)."""
    # cosets of the derived subgroup
    coset_of: dict[int, int] = {}
    reps: list[int] = []
    for i in range(len(ig.elems)):
        if i in coset_of:
            continue
        cid = len(reps)
        reps.append(i)
        for d in derived:
            coset_of[ig.mul(i, d)] = cid
    size = len(reps)

    def cmul(a: int, b: int) -> int:
        return coset_of[ig.mul(reps[a], reps[b])]

    cid_identity = coset_of[ig.id_index]
    # order statistics per prime determine the abelian type
    primes = _prime_factors(size)
    partitions: dict[int, list[int]] = {}
    for p in primes:
        counts = []
        k = 1
        power = p
        while True:
            cnt = 0
            for a in range(size):
                if _cpow(cmul, a, power, cid_identity) == cid_identity:
                    cnt += 1
            counts.append(cnt)
            if cnt == _count_p_part(cmul, size, p, cid_identity):
                break
            k += 1
            power *= p
        s_values = [0] + [_int_log(c, p) for c in counts]
        lam = []
        for i in range(1, len(s_values)):
            lam.append(s_values[i] - s_values[i - 1])
        # lam[i] = number of parts >= i+1; convert conjugate to parts
        parts = []
        for i, cnt in enumerate(lam):
            nxt = lam[i + 1] if i + 1 < len(lam) else 0
            parts.extend([i + 1] * (cnt - nxt))
        partitions[p] = sorted(parts, reverse=True)
    depth = max((len(v) for v in partitions.values()), default=0)
    factors = []
    for k in range(depth):
        f = 1
        for p, parts in partitions.items():
            if k < len(parts):
                f *= p ** parts[k]
        factors.append(f)
    return tuple(sorted(factors))


def _cpow(cmul, a: int, k: int, ident: int) -> int:
    out = ident
    base = a
    while k:
        if k & 1:
            out = cmul(out, base)
        base = cmul(base, base)
        k >>= 1
    return out


def _count_p_part(cmul, size: int, p: int, ident: int) -> int:
    pk = 1
    while size % (pk * p) == 0:
        pk *= p
    count = 0
    for a in range(size):
        if _cpow(cmul, a, pk, ident) == ident:
            count += 1
    return count


def _int_log(value: int, base: int) -> int:
    out = 0
    while value > 1:
        value //= base
        out += 1
    return out


def _prime_factors(value: int) -> list[int]:
    out = []
    d = 2
    while d * d <= value:
        if value % d == 0:
            out.append(d)
            while value % d == 0:
                value //= d
        d += 1
    if value > 1:
        out.append(value)
    return out
