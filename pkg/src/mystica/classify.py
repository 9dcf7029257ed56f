"""Abstract-isomorphism testing and the regular/singular dichotomy.

Isomorphism is decided in two stages: a fingerprint of cheap isomorphism
invariants filters obvious non-pairs, then a complete backtracking search
maps a generating set onto candidate images with order, class-size and
injectivity pruning.  Everything is exact and deterministic; the search is
sound and complete for the desk-scale orders it is run at.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .groups import (
    CapExceededError,
    FiniteMonomialGroup,
    GroupTag,
    IndexedGroup,
    common_ambient,
    enumerate_thick,
    make_gmpn,
    structure_probes,
)
from .monomial import central_scalar
from .mystic import mu_group

ISO_CAP = 500


@dataclass(frozen=True)
class Fingerprint:
    """Cheap isomorphism invariants; equal fingerprints are necessary but not
    sufficient for isomorphism."""

    order: int
    order_histogram: tuple[tuple[int, int], ...]
    center_order: int
    abelianization: tuple[int, ...]
    class_sizes: tuple[int, ...]
    derived_order: int
    class_power_data: tuple[tuple[int, int, int, int], ...]


def fingerprint(G: FiniteMonomialGroup, cap: int | None = None) -> Fingerprint:
    probes = structure_probes(G, cap)
    ig = IndexedGroup(G)
    classes = ig.conjugacy_classes()
    power_data = []
    for cls in classes:
        rep = min(cls)
        square_cls = ig.class_of(ig.mul(rep, rep))
        power_data.append(
            (
                len(cls),
                ig.elems[rep].element_order(),
                len(classes[square_cls]),
                ig.elems[min(classes[square_cls])].element_order(),
            )
        )
    return Fingerprint(
        order=probes.order,
        order_histogram=probes.order_histogram,
        center_order=probes.center_order,
        abelianization=probes.abelianization,
        class_sizes=probes.class_sizes,
        derived_order=probes.derived_order,
        class_power_data=tuple(sorted(power_data)),
    )


class _MultTable:
    """Dense multiplication table for the backtracking search."""

    def __init__(self, G: FiniteMonomialGroup):
        ig = IndexedGroup(G)
        self.ig = ig
        size = len(ig.elems)
        self.size = size
        self.table = [[0] * size for _ in range(size)]
        for i in range(size):
            row = self.table[i]
            a = ig.elems[i]
            index = ig.index
            for j in range(size):
                row[j] = index[a * ig.elems[j]]
        self.id_index = ig.id_index
        self.orders = [g.element_order() for g in ig.elems]
        ig.conjugacy_classes()
        self.class_size = [len(ig.conjugacy_classes()[ig.class_of(i)]) for i in range(size)]

    def signature(self, i: int) -> tuple[int, int]:
        return (self.orders[i], self.class_size[i])


def _closure_extend(A: _MultTable, B: _MultTable, pairs):
    """Grow the partial map along the Cayley graph of the chosen generators;
    None on any conflict.  The returned map is a homomorphism from the
    subgroup generated by the left generators."""
    phi = {A.id_index: B.id_index}
    frontier = [A.id_index]
    while frontier:
        nxt = []
        for x in frontier:
            px = phi[x]
            for a, b in pairs:
                y = A.table[x][a]
                py = B.table[px][b]
                cur = phi.get(y)
                if cur is None:
                    phi[y] = py
                    nxt.append(y)
                elif cur != py:
                    return None
        frontier = nxt
    return phi


def isomorphic(G: FiniteMonomialGroup, H: FiniteMonomialGroup, cap: int = ISO_CAP) -> bool:
    """Complete isomorphism decision for groups of order up to the cap."""
    if G.order != H.order:
        return False
    if G.order > cap or H.order > cap:
        raise CapExceededError(f"isomorphism search capped at order {cap}")
    if G.n == H.n:
        a, b = common_ambient(G, H)
        if a == b:
            return True
    if fingerprint(G) != fingerprint(H):
        return False
    A = _MultTable(G)
    B = _MultTable(H)
    gens = A.ig.generators()
    gen_sigs = [A.signature(g) for g in gens]
    b_classes = B.ig.conjugacy_classes()

    def candidates(level: int):
        sig = gen_sigs[level]
        if level == 0:
            # one representative per class is enough up to inner automorphisms
            return [min(cls) for cls in b_classes if B.signature(min(cls)) == sig]
        return [i for i in range(B.size) if B.signature(i) == sig]

    def search(level: int, pairs):
        if level == len(gens):
            phi = _closure_extend(A, B, pairs)
            if phi is None or len(phi) != A.size:
                return False
            return len(set(phi.values())) == A.size
        for image in candidates(level):
            new_pairs = pairs + [(gens[level], image)]
            phi = _closure_extend(A, B, new_pairs)
            if phi is None:
                continue
            if len(set(phi.values())) != len(phi):
                continue  # kernel already visible, cannot extend to a bijection
            if search(level + 1, new_pairs):
                return True
        return False

    return search(0, [])


# -- regular / singular -------------------------------------------------


@dataclass(frozen=True)
class RegularityReport:
    group: str
    status: str  # "regular" or "singular"
    torus_order: int
    witness: FiniteMonomialGroup | None

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "status": self.status,
            "torus_order": self.torus_order,
            "witness_order": self.witness.order if self.witness else None,
        }


def regular_singular(G: FiniteMonomialGroup, cap: int | None = None) -> RegularityReport:
    """Enumerate the normal subgroups of the group, keep the abelian ones and
    compare their orders against the torus part; singular means some normal
    abelian subgroup other than the torus reaches the torus order."""
    ig = IndexedGroup(G)
    torus_indices = {ig.index[t] for t in G.torus_elements()}
    torus_order = len(torus_indices)
    witness = None
    for class_set in ig.normal_subgroup_class_sets():
        indices = ig.materialize(class_set)
        if len(indices) < torus_order or indices == torus_indices:
            continue
        if ig.is_abelian_subset(indices):
            witness = ig.subgroup_from_indices(indices)
            break
    status = "singular" if witness is not None else "regular"
    return RegularityReport(G.tag.label, status, torus_order, witness)


# -- the power obstruction distinguishing a group from its counterpart ---


@dataclass(frozen=True)
class PowerObstructionReport:
    params: tuple[int, int, int]
    exponent: int
    central_in_counterpart_powers: bool
    central_involutions_of_group_in_powers: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return self.central_in_counterpart_powers and not self.central_involutions_of_group_in_powers


def z_power_obstruction(m: int, p: int, n: int) -> PowerObstructionReport:
    """For even n and odd m/p: the scalar involution is an (n*|C'|)-th power
    in the counterpart group but no central involution of the original group
    is such a power."""
    G = make_gmpn(m, p, n)
    mu = mu_group(G)
    exponent = n * (m // p)
    z = central_scalar(n, G.N, G.N // 2)
    mu_powers = {g**exponent for g in mu.elements}
    g_powers = {g**exponent for g in G.elements}
    probes = structure_probes(G)
    bad = tuple(
        g.to_text()
        for g in probes.center.elements
        if g.element_order() == 2 and g in g_powers
    )
    return PowerObstructionReport(
        params=(m, p, n),
        exponent=exponent,
        central_in_counterpart_powers=z in mu_powers,
        central_involutions_of_group_in_powers=bad,
    )


# -- verification grids --------------------------------------------------


@dataclass(frozen=True)
class GridEntry:
    params: dict
    predicted: bool
    computed: bool

    @property
    def match(self) -> bool:
        return self.predicted == self.computed

    def to_json(self) -> dict:
        return {"params": self.params, "predicted": self.predicted, "computed": self.computed, "match": self.match}


@dataclass(frozen=True)
class GridReport:
    name: str
    entries: tuple[GridEntry, ...]

    @property
    def mismatches(self) -> tuple[GridEntry, ...]:
        return tuple(e for e in self.entries if not e.match)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_json(self) -> list:
        return [e.to_json() for e in self.entries]


def verify_not_iso_grid(max_m: int = 4, max_n: int = 4, cap: int = ISO_CAP) -> GridReport:
    """Abstract isomorphism of each group with its counterpart against the
    parity rule: not isomorphic exactly when n is even and m/p is odd."""
    entries = []
    for m in range(2, max_m + 1, 2):
        for n in range(2, max_n + 1):
            for p in range(1, m + 1):
                if m % p:
                    continue
                G = make_gmpn(m, p, n)
                if G.order > cap:
                    continue
                mu = mu_group(G)
                predicted = not (n % 2 == 0 and (m // p) % 2 == 1)
                computed = isomorphic(G, mu, cap)
                entries.append(GridEntry({"m": m, "p": p, "n": n}, predicted, computed))
    return GridReport("counterpart-isomorphism-parity", tuple(entries))


def _pair_predicted_isomorphic(G: FiniteMonomialGroup, H: FiniteMonomialGroup) -> bool:
    """The classification's prediction for a pair of distinct thick subgroups."""
    tg, th = G.tag, H.tag
    if G.n == H.n:
        n = G.n
        if n % 2 == 0:
            return False
        pair = {tg.kind: tg.params, th.kind: th.params}
        if set(pair) != {"G", "W"}:
            return False
        m, p, _ = pair["G"]
        mw, d, _ = pair["W"]
        return m == mw and m % 2 == 0 and d == m // p and (m // p) % 2 == 1
    low, high = (G, H) if G.n < H.n else (H, G)
    if high.tag != GroupTag("G", (1, 1, 4)):
        return False
    return low.tag in (GroupTag("G", (2, 2, 3)), GroupTag("W", (2, 1, 3)))


def thick_atlas(max_m: int, max_n: int, cap: int = ISO_CAP) -> list[FiniteMonomialGroup]:
    """All thick subgroups for every level m <= max_m and rank 2 <= n <= max_n,
    deduplicated as subgroups, with orders within the cap."""
    seen = {}
    for m in range(1, max_m + 1):
        for n in range(2, max_n + 1):
            if m**n * factorial(n) > 50_000:
                continue
            for T in enumerate_thick(m, n):
                if T.order > cap:
                    continue
                norm = _normalized_key(T)
                if norm not in seen:
                    seen[norm] = T
    return sorted(seen.values(), key=lambda g: (g.n, g.order, g.tag.label))


def _normalized_key(T: FiniteMonomialGroup):
    """Identity of a subgroup: its rank plus its element set at a common
    torus order."""
    target = 12
    while target % T.N:
        target *= 2
    lifted = T.lift(target)
    return (T.n, frozenset(a.sort_key() for a in lifted.elements))


def verify_classification_grid(
    max_m: int = 4, max_n: int = 4, max_m_cross: int = 2, cap: int = ISO_CAP
) -> GridReport:
    """Exhaustive pairwise isomorphism among thick subgroups, checked against
    the classification's characterization.  Same-rank pairs range over the
    full atlas; cross-rank pairs take the second group from the smaller
    atlas."""
    atlas = thick_atlas(max_m, max_n, cap)
    small = [T for T in thick_atlas(max_m_cross, max_n, cap)]
    entries = []
    for i, G in enumerate(atlas):
        for H in atlas[i + 1 :]:
            if G.n == H.n:
                if _normalized_key(G) == _normalized_key(H):
                    continue
                if G.order != H.order:
                    continue  # trivially not isomorphic, skip the search
                predicted = _pair_predicted_isomorphic(G, H)
                computed = isomorphic(G, H, cap)
                entries.append(
                    GridEntry(
                        {"left": G.tag.label, "right": H.tag.label, "n": G.n},
                        predicted,
                        computed,
                    )
                )
    for G in atlas:
        for H in small:
            if G.n >= H.n or G.order != H.order:
                continue
            predicted = _pair_predicted_isomorphic(G, H)
            computed = isomorphic(G, H, cap)
            entries.append(
                GridEntry(
                    {"left": G.tag.label, "right": H.tag.label, "n": G.n, "n2": H.n},
                    predicted,
                    computed,
                )
            )
    return GridReport("thick-subgroup-classification", tuple(entries))


def singular_list(max_m: int = 4, max_n: int = 4, cap: int = 50_000) -> list[RegularityReport]:
    """Regular/singular status of every thick subgroup on the grid."""
    out = []
    for G in thick_atlas(max_m, max_n, cap):
        out.append(regular_singular(G))
    return [r for r in out if r.status == "singular"]
