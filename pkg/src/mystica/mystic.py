"""The det-twist correspondence between the reflection families, decided at
the level of group-algebra operators.

Two faithful actions are considered equivalent when the operators of the two
full group sums coincide; the artifact decides this on all degree slices up
to a truncation degree D, which every report records.  The correspondence mu
maps the torus-filtered family to the det-filtered family; the group-ring
check verifies that the coefficient-twisting map carries one integral group
ring onto the other inside Z[i, 1/2].
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclo import Cyclotomic, cyc_make, in_gaussian_half_ring
from .groupalg import GroupAlgebraElement, j_c
from .groups import FiniteMonomialGroup, GroupTag, common_ambient, enumerate_thick, make_w
from .linalg import modular_full_rank_certificate, sparse_rank
from .monomial import MonomialElement, perm_sign
from .qpoly import operator_matrix, slice_monomials


def default_truncation_degree(m: int, p: int, n: int) -> int:
    """Large enough to see every fundamental generator degree once."""
    return max(2 * m, n * m // p, 8)


def mu_group(G: FiniteMonomialGroup) -> FiniteMonomialGroup:
    """The counterpart group {w t_1^(det w) t : w in S_n, t in T} of a
    torus-filtered group with even m; equals the det-filtered group with the
    same torus."""
    if G.tag.kind != "G":
        raise ValueError("mu is defined on groups built as G(m,p,n)")
    m, p, n = G.tag.params
    if m % 2 != 0:
        raise ValueError(
            "no counterpart group exists for odd m: the invariants are not closed "
            "under the sign-twisted product, so no group acting by twisted "
            "automorphisms has them as its invariants"
        )
    N = G.N
    torus = G.torus_elements()
    perms = sorted({g.perm for g in G.elements})
    elems = []
    for w in perms:
        w_elem = MonomialElement(n, N, w, (0,) * n)
        det_exps = [0] * n
        if perm_sign(w) == -1:
            det_exps[0] = N // 2
        twist = MonomialElement(n, N, tuple(range(n)), tuple(det_exps))
        for t in torus:
            elems.append(w_elem * twist * t)
    out = FiniteMonomialGroup(n, N, elems, GroupTag("W", (m, m // p, n)))
    expected = make_w(m, m // p, n, N=N)
    if out != expected:
        raise AssertionError("counterpart construction disagrees with the det filter")
    assert out.order == G.order
    return out


@dataclass(frozen=True)
class EquivalenceReport:
    left: str
    right: str
    degree: int
    per_degree: tuple[bool, ...]
    verdict: bool

    def to_json(self) -> dict:
        return {
            "g": self.left,
            "mu_g": self.right,
            "D": self.degree,
            "per_degree": list(self.per_degree),
            "verdict": self.verdict,
        }


def _group_sum_operator(G: FiniteMonomialGroup, c, degree: int):
    terms = [(g, Cyclotomic.one()) for g in G.elements]
    return operator_matrix(terms, c, degree)


def mystic_equiv_check(
    G: FiniteMonomialGroup,
    act_left,
    H: FiniteMonomialGroup,
    act_right,
    degree: int,
) -> EquivalenceReport:
    """Compare the operators of the two group sums on every slice 0..degree."""
    Gl, Hl = common_ambient(G, H)
    flags = []
    for d in range(degree + 1):
        left = _group_sum_operator(Gl, act_left, d)
        right = _group_sum_operator(Hl, act_right, d)
        flags.append(left == right)
    return EquivalenceReport(
        left=G.tag.label,
        right=H.tag.label,
        degree=degree,
        per_degree=tuple(flags),
        verdict=all(flags),
    )


def equivalent_up_to(
    G: FiniteMonomialGroup,
    act_left,
    H: FiniteMonomialGroup,
    act_right,
    degree: int,
) -> bool:
    """Like mystic_equiv_check but stops at the first differing slice."""
    Gl, Hl = common_ambient(G, H)
    for d in range(degree + 1):
        if _group_sum_operator(Gl, act_left, d) != _group_sum_operator(Hl, act_right, d):
            return False
    return True


def unique_equivalent_thick(
    G: FiniteMonomialGroup, degree: int, cap: int | None = None
) -> list[FiniteMonomialGroup]:
    """All thick subgroups of G(m,1,n) whose twisted action is equivalent to
    the untwisted action of G; exactly one match is expected, the counterpart."""
    if G.tag.kind != "G":
        raise ValueError("the uniqueness scan starts from a G(m,p,n) group")
    m, _, n = G.tag.params
    left_cache: dict = {}

    def left(d: int):
        if d not in left_cache:
            left_cache[d] = _group_sum_operator(G, 0, d)
        return left_cache[d]

    matches = []
    for T in enumerate_thick(m, n, cap):
        Tl = T.lift(G.N)
        if all(left(d) == _group_sum_operator(Tl, 1, d) for d in range(degree + 1)):
            matches.append(T)
    return matches


@dataclass(frozen=True)
class GroupRingIsoReport:
    group: str
    counterpart: str
    order: int
    support_contained: bool
    coefficients_in_ring: bool
    inverse_support_contained: bool
    inverse_coefficients_in_ring: bool
    change_of_basis_invertible: bool

    @property
    def passed(self) -> bool:
        return (
            self.support_contained
            and self.coefficients_in_ring
            and self.inverse_support_contained
            and self.inverse_coefficients_in_ring
            and self.change_of_basis_invertible
        )

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "counterpart": self.counterpart,
            "order": self.order,
            "support_contained": self.support_contained,
            "coefficients_in_ring": self.coefficients_in_ring,
            "inverse_support_contained": self.inverse_support_contained,
            "inverse_coefficients_in_ring": self.inverse_coefficients_in_ring,
            "change_of_basis_invertible": self.change_of_basis_invertible,
            "passed": self.passed,
        }


def group_ring_iso_check(G: FiniteMonomialGroup) -> GroupRingIsoReport:
    """Verify that the i-twist carries the integral group ring of G onto that
    of the counterpart group inside Z[i, 1/2].

    The coefficient matrix of the twist (rows indexed by G, columns by the
    counterpart) and the coefficient matrix of the inverse twist are both
    computed; invertibility over the fraction field is certified by checking
    that the two matrix products are the identity, row by row.
    """
    mu = mu_group(G)
    if G.N % 4 != 0:
        raise ValueError("ambient torus order must contain i")
    c = cyc_make(4, 1).lift(G.N) if G.N != 4 else cyc_make(4, 1)
    cinv = c.inverse()

    images: dict[MonomialElement, GroupAlgebraElement] = {}
    support_ok = True
    ring_ok = True
    for g in G.elements:
        img = j_c(c, GroupAlgebraElement.from_element(g))
        images[g] = img
        if not img.support() <= mu.element_set():
            support_ok = False
        if not all(in_gaussian_half_ring(v) for v in img.terms.values()):
            ring_ok = False

    inverse_images: dict[MonomialElement, GroupAlgebraElement] = {}
    inv_support_ok = True
    inv_ring_ok = True
    for h in mu.elements:
        img = j_c(cinv, GroupAlgebraElement.from_element(h))
        inverse_images[h] = img
        if not img.support() <= G.element_set():
            inv_support_ok = False
        if not all(in_gaussian_half_ring(v) for v in img.terms.values()):
            inv_ring_ok = False

    invertible = len(G) == len(mu) and support_ok and inv_support_ok
    if invertible:
        for g in G.elements:
            acc = GroupAlgebraElement.zero(G.n, G.N)
            for h, coeff in images[g].items():
                acc = acc + inverse_images[h].scale(coeff)
            if acc != GroupAlgebraElement.from_element(g):
                invertible = False
                break
    if invertible:
        for h in mu.elements:
            acc = GroupAlgebraElement.zero(G.n, G.N)
            for g, coeff in inverse_images[h].items():
                acc = acc + images[g].scale(coeff)
            if acc != GroupAlgebraElement.from_element(h):
                invertible = False
                break

    return GroupRingIsoReport(
        group=G.tag.label,
        counterpart=mu.tag.label,
        order=G.order,
        support_contained=support_ok,
        coefficients_in_ring=ring_ok,
        inverse_support_contained=inv_support_ok,
        inverse_coefficients_in_ring=inv_ring_ok,
        change_of_basis_invertible=invertible,
    )


def faithfulness_rank(G: FiniteMonomialGroup, c, degree: int) -> int:
    """Rank of the family of operators of the group elements on the slices of
    degree at most the bound, viewed as one long vector each; equals the
    group order exactly when the operators are linearly independent."""
    rows = []
    for g in G.elements:
        row: dict = {}
        for d in range(degree + 1):
            mat = operator_matrix(g, c, d)
            for (r, col), v in mat.entries.items():
                row[(d, r, col)] = v
        rows.append(row)
    return sparse_rank(rows)


def faithfulness_saturation_degree(G: FiniteMonomialGroup, c, max_degree: int):
    """Smallest degree bound at which the rank reaches the group order, with
    the rank found there; (None, best rank) if the bound is never reached.

    Full rank is certified through the modular reduction map (a proof, not an
    estimate); degrees where the certificate is inconclusive fall back to the
    exact elimination only for small groups, otherwise they are skipped and a
    later degree provides the certificate.
    """
    rows = [dict() for _ in G.elements]
    space = 0
    for d in range(max_degree + 1):
        for row, g in zip(rows, G.elements):
            mat = operator_matrix(g, c, d)
            for (r, col), v in mat.entries.items():
                row[(d, r, col)] = v
        space += len(slice_monomials(G.n, d)) ** 2
        if space < G.order:
            continue  # the span cannot reach the group order yet
        if modular_full_rank_certificate(rows, G.order):
            return d, G.order
        if G.order <= 64:
            rank = sparse_rank([dict(r) for r in rows])
            if rank == G.order:
                return d, rank
    rank = sparse_rank([dict(r) for r in rows]) if G.order <= 64 else 0
    return None, rank
