"""The graded polynomial space with its family of twisted products and the
sign-twisted group actions on it.

Monomials are exponent tuples; polynomials are sparse maps from exponent
tuples to cyclotomic coefficients.  The product on S_q(V) is the bilinear
extension of x^k *_q x^k' = <k,k'> x^{k+k'}, where the bracket is read off
the q-matrix.  The twisted action of a monomial matrix multiplies each
monomial by a cocycle value and a torus character before permuting the
exponents.

The parameter c of the twisted action is any invertible field element; the
distinguished value 0 selects the untwisted action (cocycle identically 1).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm

from .cyclo import Cyclotomic
from .groups import FiniteMonomialGroup
from .linalg import SparseMatrix, sparse_rank
from .monomial import MonomialElement, perm_apply

_ONE = Cyclotomic.one()


def _coerce_c(c):
    """None for the untwisted action, otherwise an invertible Cyclotomic."""
    if c is None:
        return None
    if isinstance(c, (int, Fraction)):
        if c == 0:
            return None
        return Cyclotomic.rational(c)
    if c.is_zero():
        return None
    return c


@lru_cache(maxsize=None)
def slice_monomials(n: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Degree-d exponent tuples in lexicographic order, largest first."""

    def gen(rest, remaining):
        if rest == 1:
            yield (remaining,)
            return
        for lead in range(remaining, -1, -1):
            for tail in gen(rest - 1, remaining - lead):
                yield (lead,) + tail

    return tuple(gen(n, degree))


class QMatrix:
    """A commutation matrix: q_ii = 1 and q_ij q_ji = 1, entries exact."""

    def __init__(self, n: int, entries):
        self.n = n
        self.entries = tuple(tuple(e if isinstance(e, Cyclotomic) else Cyclotomic.rational(e) for e in row) for row in entries)
        if len(self.entries) != n or any(len(r) != n for r in self.entries):
            raise ValueError("q-matrix has wrong shape")
        for i in range(n):
            if self.entries[i][i] != 1:
                raise ValueError("diagonal q-matrix entries must be 1")
            for j in range(n):
                if self.entries[i][j] * self.entries[j][i] != 1:
                    raise ValueError("q_ij q_ji = 1 violated")

    @staticmethod
    def sign_matrix(n: int, sign: int) -> "QMatrix":
        value = Cyclotomic.rational(sign)
        one = Cyclotomic.one()
        return QMatrix(n, [[one if i == j else value for j in range(n)] for i in range(n)])

    @staticmethod
    def minus_one(n: int) -> "QMatrix":
        return QMatrix.sign_matrix(n, -1)

    @staticmethod
    def plus_one(n: int) -> "QMatrix":
        return QMatrix.sign_matrix(n, 1)

    def is_minus_one(self) -> bool:
        return all(
            self.entries[i][j] == (1 if i == j else -1)
            for i in range(self.n)
            for j in range(self.n)
        )


def qform_bracket(q: QMatrix, k: tuple[int, ...], kprime: tuple[int, ...]) -> Cyclotomic:
    """<k, k'> = prod_{i<j} q_ij^(k'_i k_j)."""
    if len(k) != q.n or len(kprime) != q.n:
        raise ValueError("exponent vectors do not match the q-matrix rank")
    if q.is_minus_one():
        s = sum(kprime[i] * k[j] for i in range(q.n) for j in range(i + 1, q.n))
        return Cyclotomic.rational(-1 if s % 2 else 1)
    out = Cyclotomic.one()
    for i in range(q.n):
        for j in range(i + 1, q.n):
            e = kprime[i] * k[j]
            if e:
                out = out * q.entries[i][j] ** e
    return out


class QPolynomial:
    """Sparse polynomial: exponent tuple -> cyclotomic coefficient."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        clean = {}
        for k, v in (terms or {}).items():
            if not isinstance(v, Cyclotomic):
                v = Cyclotomic.rational(v)
            if not v.is_zero():
                clean[tuple(k)] = v
        self.terms = clean

    @staticmethod
    def zero(n: int) -> "QPolynomial":
        return QPolynomial(n)

    @staticmethod
    def monomial(k, coeff=1) -> "QPolynomial":
        return QPolynomial(len(k), {tuple(k): coeff})

    @staticmethod
    def variable(i: int, n: int, power: int = 1) -> "QPolynomial":
        """x_i^power with one-based index i."""
        k = [0] * n
        k[i - 1] = power
        return QPolynomial(n, {tuple(k): 1})

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        out = dict(self.terms)
        for k, v in other.terms.items():
            cur = out.get(k)
            total = v if cur is None else cur + v
            if total.is_zero():
                out.pop(k, None)
            else:
                out[k] = total
        return QPolynomial(self.n, out)

    def __neg__(self) -> "QPolynomial":
        return QPolynomial(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "QPolynomial") -> "QPolynomial":
        return self + (-other)

    def scale(self, coeff) -> "QPolynomial":
        if not isinstance(coeff, Cyclotomic):
            coeff = Cyclotomic.rational(coeff)
        return QPolynomial(self.n, {k: v * coeff for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, QPolynomial):
            return NotImplemented
        return self.n == other.n and self.terms.keys() == other.terms.keys() and all(
            v == other.terms[k] for k, v in self.terms.items()
        )

    def is_zero(self) -> bool:
        return not self.terms

    def to_text(self) -> str:
        from .cyclo import scalar_to_text

        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=lambda t: (sum(t), t), reverse=True):
            coeff = self.terms[k]
            vars_txt = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(k) if e
            )
            ctxt = scalar_to_text(coeff)
            if not vars_txt:
                parts.append(f"({ctxt})" if ("+" in ctxt or ctxt.startswith("-")) else ctxt)
            elif coeff == 1:
                parts.append(vars_txt)
            else:
                parts.append(f"({ctxt})*{vars_txt}")
        return " + ".join(parts)

    def to_json(self) -> list:
        from .cyclo import scalar_to_text

        return [
            {"exp": list(k), "coeff": scalar_to_text(self.terms[k])}
            for k in sorted(self.terms, key=lambda t: (sum(t), t), reverse=True)
        ]

    def __repr__(self) -> str:
        return f"QPolynomial({self.to_text()!r})"


def qmul(q: QMatrix, f: QPolynomial, g: QPolynomial) -> QPolynomial:
    if f.n != g.n or f.n != q.n:
        raise ValueError("rank mismatch in twisted product")
    out: dict = {}
    for k, a in f.terms.items():
        for k2, b in g.terms.items():
            coeff = qform_bracket(q, k, k2) * a * b
            key = tuple(x + y for x, y in zip(k, k2))
            cur = out.get(key)
            total = coeff if cur is None else cur + coeff
            if total.is_zero():
                out.pop(key, None)
            else:
                out[key] = total
    return QPolynomial(f.n, out)


def commute_check(q: QMatrix, polys) -> bool:
    polys = list(polys)
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if qmul(q, polys[i], polys[j]) != qmul(q, polys[j], polys[i]):
                return False
    return True


# -- cocycles ----------------------------------------------------------


def phi_eval(c, i: int, j: int, k) -> Cyclotomic:
    """phi_ij^(c)(k) = (-1)^(k_i k_j) c^(parity(k_i) - parity(k_j)); indices zero-based."""
    cc = _coerce_c(c)
    if cc is None:
        return Cyclotomic.one()
    sign = -1 if (k[i] * k[j]) % 2 else 1
    out = cc ** ((k[i] % 2) - (k[j] % 2))
    return out if sign == 1 else -out


@lru_cache(maxsize=None)
def _inversions(perm: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    n = len(perm)
    return tuple(
        (i, j) for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j]
    )


def phi_w_eval(c, perm: tuple[int, ...], k) -> Cyclotomic:
    """Product of phi_ij^(c)(k) over the inversions of the permutation."""
    cc = _coerce_c(c)
    if cc is None:
        return Cyclotomic.one()
    sign = 0
    cexp = 0
    for i, j in _inversions(tuple(perm)):
        sign += k[i] * k[j]
        cexp += (k[i] % 2) - (k[j] % 2)
    out = cc**cexp
    return out if sign % 2 == 0 else -out


def _act_data(g: MonomialElement, k: tuple[int, ...]):
    """(image exponent vector, sign bit, c exponent, torus root exponent).

    For g = t*w in canonical form, the action sends x^k to
    phi_w(k) * prod_j t_{w(j)}^(k_j) * x^(w(k)).
    """
    w = g.perm
    e = g.exps
    N = g.N
    image = perm_apply(w, k)
    root_exp = 0
    for i in range(g.n):
        ki = k[i]
        if ki:
            root_exp += e[w[i]] * ki
    sign = 0
    cexp = 0
    for i, j in _inversions(w):
        sign += k[i] * k[j]
        cexp += (k[i] % 2) - (k[j] % 2)
    return image, sign % 2, cexp, root_exp % N


def act_c(c, g: MonomialElement, f: QPolynomial) -> QPolynomial:
    """The twisted action of a monomial matrix on a polynomial."""
    if f.n != g.n:
        raise ValueError("rank mismatch")
    cc = _coerce_c(c)
    out: dict = {}
    for k, coeff in f.terms.items():
        image, sign, cexp, root_exp = _act_data(g, k)
        scalar = Cyclotomic.root(g.N, root_exp)
        if cc is not None:
            if sign:
                scalar = -scalar
            if cexp:
                scalar = scalar * cc**cexp
        total = coeff * scalar
        cur = out.get(image)
        total = total if cur is None else cur + total
        if total.is_zero():
            out.pop(image, None)
        else:
            out[image] = total
    return QPolynomial(f.n, out)


def _terms_of(actor):
    """Normalize an operator argument to (terms, n, N)."""
    if isinstance(actor, MonomialElement):
        return [(actor, _ONE)], actor.n, actor.N
    if hasattr(actor, "items") and hasattr(actor, "n"):
        return list(actor.items()), actor.n, actor.N
    terms = list(actor)
    if not terms:
        raise ValueError("empty operator")
    head = terms[0][0]
    return terms, head.n, head.N


def operator_matrix(actor, c, degree: int) -> SparseMatrix:
    """Exact matrix of the actor on the degree slice, columns indexed by
    slice_monomials.  For group-algebra input this is the coefficient-weighted
    sum of the element matrices."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    terms, n, N = _terms_of(actor)
    cc = _coerce_c(c)
    basis = slice_monomials(n, degree)
    pos = {k: idx for idx, k in enumerate(basis)}
    if N % 2 == 0 and (cc is None or cc == 1):
        int_coeffs = []
        for _, coeff in terms:
            if coeff.is_rational() and coeff.rational_value().denominator == 1:
                int_coeffs.append(int(coeff.rational_value()))
            else:
                int_coeffs = None
                break
        if int_coeffs is not None:
            return _integer_sum_matrix(terms, int_coeffs, cc is not None, n, N, basis, pos)
    field_order = lcm(N, cc.order) if cc is not None else N
    step = field_order // N
    matrix = SparseMatrix(len(basis), len(basis))
    for elem, coeff in terms:
        if (elem.n, elem.N) != (n, N):
            raise ValueError("mixed ambients in operator")
        scalar_cache: dict = {}
        for col, k in enumerate(basis):
            image, sign, cexp, root_exp = _act_data(elem, k)
            if cc is None:
                key = (0, 0, root_exp)
            else:
                key = (sign, cexp, root_exp)
            scalar = scalar_cache.get(key)
            if scalar is None:
                scalar = coeff * Cyclotomic.root(field_order, root_exp * step)
                if cc is not None:
                    if cexp:
                        scalar = scalar * cc**cexp
                    if sign:
                        scalar = -scalar
                scalar_cache[key] = scalar
            matrix.add(pos[image], col, scalar)
    return matrix


def _integer_sum_matrix(terms, int_coeffs, minus: bool, n, N, basis, pos) -> SparseMatrix:
    """Fast path for integer-coefficient sums of element operators under the
    two sign actions: per matrix entry, count each root of unity with integer
    multiplicity, then materialize the cyclotomic values once.  Valid because
    every element scalar is +-zeta_N^e and -1 = zeta_N^(N/2) for even N."""
    from .monomial import perm_inverse

    half = N // 2
    by_perm: dict = {}
    for (elem, _), cint in zip(terms, int_coeffs):
        if (elem.n, elem.N) != (n, N):
            raise ValueError("mixed ambients in operator")
        by_perm.setdefault(elem.perm, []).append((elem.exps, cint))
    counts: dict = {}
    for perm, members in by_perm.items():
        winv = perm_inverse(perm)
        inv_pairs = _inversions(perm)
        for col, k in enumerate(basis):
            row = pos[perm_apply(perm, k)]
            kwinv = [k[winv[j]] for j in range(n)]
            offset = 0
            if minus and sum(k[i] * k[j] for i, j in inv_pairs) % 2:
                offset = half
            key = (row, col)
            arr = counts.get(key)
            if arr is None:
                arr = counts[key] = [0] * N
            support = [(j, kj) for j, kj in enumerate(kwinv) if kj]
            for exps, cint in members:
                s = offset
                for j, kj in support:
                    s += exps[j] * kj
                arr[s % N] += cint
    deg, rows = _ctx_rows(N)
    matrix = SparseMatrix(len(basis), len(basis))
    for key, arr in counts.items():
        vec = [0] * deg
        for t, cnt in enumerate(arr):
            if cnt:
                row = rows[t]
                for d in range(deg):
                    if row[d]:
                        vec[d] += cnt * row[d]
        if any(vec):
            matrix.entries[key] = Cyclotomic(N, tuple(Fraction(v) for v in vec))
    return matrix


@lru_cache(maxsize=None)
def _ctx_rows(N: int):
    from .cyclo import _ctx

    return _ctx(N)


# -- invariants --------------------------------------------------------


class DimensionMismatchError(RuntimeError):
    """The two invariant-dimension computations disagreed."""


def invariant_dimension(G: FiniteMonomialGroup, c, degree: int) -> int:
    """Dimension of the fixed space of the degree slice, computed both as the
    rank of the symmetrizer matrix and as the trace average; the two must
    agree exactly."""
    terms = [(g, _ONE) for g in G.elements]
    matrix = operator_matrix(terms, c, degree)
    rank = sparse_rank(matrix.columns())

    cc = _coerce_c(c)
    n, N = G.n, G.N
    basis = slice_monomials(n, degree)
    field_order = lcm(N, cc.order) if cc is not None else N
    step = field_order // N
    by_perm: dict = {}
    for g in G.elements:
        by_perm.setdefault(g.perm, []).append(g)
    trace = Cyclotomic.zero(field_order)
    for perm, members in by_perm.items():
        fixed = [k for k in basis if perm_apply(perm, k) == k]
        for g in members:
            for k in fixed:
                _, sign, cexp, root_exp = _act_data(g, k)
                scalar = Cyclotomic.root(field_order, root_exp * step)
                if cc is not None:
                    if cexp:
                        scalar = scalar * cc**cexp
                    if sign:
                        scalar = -scalar
                trace = trace + scalar
    average = trace / G.order
    if not average.is_rational() or average.rational_value().denominator != 1:
        raise DimensionMismatchError(f"trace average {average!r} is not an integer")
    traced = int(average.rational_value())
    if traced != rank:
        raise DimensionMismatchError(
            f"symmetrizer rank {rank} != trace average {traced} for {G!r} at degree {degree}"
        )
    return rank


def hilbert_free(degrees, D: int) -> list[int]:
    """First D+1 coefficients of prod_i 1/(1 - t^(d_i)), exactly."""
    if D < 0:
        raise ValueError("D must be nonnegative")
    coeffs = [1] + [0] * D
    for d in degrees:
        if d < 1:
            raise ValueError("generator degrees must be positive")
        for i in range(d, D + 1):
            coeffs[i] += coeffs[i - d]
    return coeffs


def invariant_degrees(m: int, p: int, n: int) -> list[int]:
    """Degrees of the fundamental invariants: m, 2m, ..., (n-1)m, n*m/p."""
    return [k * m for k in range(1, n)] + [n * (m // p)]


def fundamental_invariants(m: int, p: int, n: int) -> list[QPolynomial]:
    """Power sums in x_i^m plus the product of all variables to the power m/p."""
    if m % p != 0:
        raise ValueError(f"p={p} must divide m={m}")
    out = []
    for k in range(1, n):
        terms = {}
        for i in range(n):
            key = [0] * n
            key[i] = k * m
            terms[tuple(key)] = 1
        out.append(QPolynomial(n, terms))
    l = m // p
    out.append(QPolynomial(n, {(l,) * n: 1}))
    return out
