"""The coordinate-algebra side of the duality.

O_q elements are free words in the matrix generators u[a,b] (a = row,
b = column, 1-based); the FRT and determinant relations are never imposed
syntactically.  Instead everything factors through the evaluation pairing
with the enveloping algebra: a length-k word pairs with X as the matrix
entry of the k-th tensor power of the vector representation,

    <X, u[a1,b1]...u[ak,bk]> = rho_k(X)_{(a),(b)},

where the generators act through the coproduct (so E_i acts in one tensor
slot with K_i's to its right, F_i with K_i^{-1}'s to its left, K_i
diagonally in every slot) and the defining table is

    <E_i, u[i+1,i]> = <F_i, u[i,i+1]> = 1,
    <K_j^{+-1}, u[i,i]> = q^{+-(delta_{j+1,i} - delta_{j,i})}.

Equality of O_q elements is decided functionally: e1 = e2 iff e1 - e2
annihilates the span of rho_k images of the enveloping algebra, computed
once per (rank, length) by closing the generator action on the identity
matrix until the span stabilizes.
"""

from __future__ import annotations

from qflag.scalars import NU, ONE, RatQ, ZERO, qpow
from qflag.uqsl import UqElement

OqWord = tuple  # tuple[(row, col), ...]


def _acc(d, k, c):
    if not c:
        return
    s = d.get(k, ZERO) + c
    if s:
        d[k] = s
    else:
        d.pop(k, None)


class OqElement:
    """Sparse combination of free u-words; words may have mixed lengths,
    but the functional-equality oracle works per length."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms: dict[OqWord, RatQ] = {}
        if terms:
            for w, c in dict(terms).items():
                if c:
                    self.terms[tuple(tuple(p) for p in w)] = c

    @staticmethod
    def unit(n: int) -> "OqElement":
        return OqElement(n, {(): ONE})

    @staticmethod
    def u(n: int, a: int, b: int) -> "OqElement":
        if not (1 <= a <= n + 1 and 1 <= b <= n + 1):
            raise ValueError(f"matrix indices must lie in 1..{n + 1}")
        return OqElement(n, {((a, b),): ONE})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, OqElement)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            _acc(out, w, c)
        e = OqElement(self.n)
        e.terms = out
        return e

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def __neg__(self):
        return self.scale(-ONE)

    def scale(self, c) -> "OqElement":
        c = c if isinstance(c, RatQ) else RatQ(c)
        e = OqElement(self.n)
        if c:
            e.terms = {w: c * x for w, x in self.terms.items()}
        return e

    def __mul__(self, other):
        if isinstance(other, (RatQ, int)):
            return self.scale(other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _acc(out, w1 + w2, c1 * c2)
        e = OqElement(self.n)
        e.terms = out
        return e

    def __rmul__(self, other):
        if isinstance(other, (RatQ, int)):
            return self.scale(other)
        return NotImplemented

    def lengths(self) -> set[int]:
        return {len(w) for w in self.terms}

    def homogeneous_length(self) -> int:
        ls = self.lengths()
        if len(ls) != 1:
            raise ValueError(f"element mixes word lengths {sorted(ls)}")
        return ls.pop()

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            c = self.terms[w]
            cs = str(c)
            ws = "".join(f"u[{a},{b}]" for a, b in w) or "1"
            if cs == "1":
                body = ws
            elif cs == "-1":
                body = f"-{ws}"
            else:
                if any(s in cs[1:] for s in "+-") or "/" in cs:
                    cs = f"({cs})"
                body = f"{cs}*{ws}" if ws != "1" else cs
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"<Oq {self.render()}>"


# -- the tensor-power action -------------------------------------------------


def _kdiag_exp(i: int, b: int) -> int:
    """Exponent of q in <K_i, u[b,b]>."""
    return (1 if b == i + 1 else 0) - (1 if b == i else 0)


def _apply_token(n: int, token, vec: dict) -> dict:
    """Apply one generator to a sparse vector over column multi-indices."""
    kind, i = token[0], token[1]
    out: dict = {}
    if kind == "K":
        exp = token[2] if len(token) > 2 else 1
        for b, c in vec.items():
            e = sum(_kdiag_exp(i, x) for x in b)
            _acc(out, b, c * qpow(exp * e))
        return out
    if kind == "E":
        # E_i in slot t, K_i in the slots after t
        for b, c in vec.items():
            for t, x in enumerate(b):
                if x == i:
                    tail = sum(_kdiag_exp(i, y) for y in b[t + 1 :])
                    nb = b[:t] + (i + 1,) + b[t + 1 :]
                    _acc(out, nb, c * qpow(tail))
        return out
    if kind == "F":
        # K_i^{-1} before slot t, F_i in slot t
        for b, c in vec.items():
            for t, x in enumerate(b):
                if x == i + 1:
                    head = sum(_kdiag_exp(i, y) for y in b[:t])
                    nb = b[:t] + (i,) + b[t + 1 :]
                    _acc(out, nb, c * qpow(-head))
        return out
    raise ValueError(f"unknown token {token!r}")


def _apply_mono(n: int, mono, vec: dict) -> dict:
    """Apply a normal monomial (F-word, K-vec, E-word), rightmost factor first."""
    f, kv, e = mono
    for l in reversed(e):
        vec = _apply_token(n, ("E", l), vec)
        if not vec:
            return vec
    if any(kv):
        out: dict = {}
        for b, c in vec.items():
            ex = sum(v * _kdiag_exp(i + 1, x) for i, v in enumerate(kv) if v for x in b)
            _acc(out, b, c * qpow(ex))
        vec = out
    for l in reversed(f):
        vec = _apply_token(n, ("F", l), vec)
        if not vec:
            return vec
    return vec


def pair(x: UqElement, e: OqElement | OqWord) -> RatQ:
    """Evaluation pairing <x, e>, bilinear in both arguments."""
    n = x.algebra.n
    words = e.terms.items() if isinstance(e, OqElement) else [(tuple(e), ONE)]
    total = ZERO
    for w, wc in words:
        rows = tuple(a for a, _ in w)
        cols = tuple(b for _, b in w)
        for m, c in x.terms.items():
            v = _apply_mono(n, m, {cols: ONE})
            hit = v.get(rows)
            if hit:
                total = total + wc * c * hit
    return total


def left_act(x: UqElement, e: OqElement) -> OqElement:
    """Left action X |> a = a_(1) <X, a_(2)>: rows stay, columns move."""
    n = x.algebra.n
    e.homogeneous_length()
    out: dict = {}
    for w, wc in e.terms.items():
        rows = tuple(a for a, _ in w)
        cols = tuple(b for _, b in w)
        for m, c in x.terms.items():
            for newcols, cc in _apply_mono(n, m, {cols: ONE}).items():
                _acc(out, tuple(zip(rows, newcols)), wc * c * cc)
    res = OqElement(n)
    res.terms = out
    return res


# -- functional equality -----------------------------------------------------

_span_cache: dict[tuple[int, int], list[dict]] = {}


def rep_span(n: int, k: int) -> list[dict]:
    """Basis (echelon, as sparse (rows, cols) -> coeff dicts) of the span of
    rho_k images of the enveloping algebra, closed degree by degree until
    two consecutive rounds add no rank."""
    hit = _span_cache.get((n, k))
    if hit is not None:
        return hit
    from qflag.freealg import Span

    tokens = (
        [("E", i) for i in range(1, n + 1)]
        + [("F", i) for i in range(1, n + 1)]
        + [("K", i, 1) for i in range(1, n + 1)]
        + [("K", i, -1) for i in range(1, n + 1)]
    )

    def apply_to_matrix(token, mat: dict) -> dict:
        # columns of rho(g) . M, computed column by column
        out: dict = {}
        bycol: dict = {}
        for (a, b), c in mat.items():
            bycol.setdefault(b, {})[a] = c
        for b, col in bycol.items():
            for a, c in _apply_token(n, token, col).items():
                _acc(out, (a, b), c)
        return out

    ident = {(b, b): ONE for b in _all_indices(n, k)}
    span = Span()
    span.add(dict(ident))
    basis = [ident]
    frontier = [ident]
    stale_rounds = 0
    while stale_rounds < 2:
        new_frontier = []
        grew = False
        for mat in frontier:
            for tok in tokens:
                cand = apply_to_matrix(tok, mat)
                if cand and span.add(dict(cand)):
                    basis.append(cand)
                    new_frontier.append(cand)
                    grew = True
        frontier = new_frontier
        stale_rounds = 0 if grew else stale_rounds + 1
        if not frontier:
            stale_rounds = 2
    out = [dict(sp) for sp in (span.pivots[p] for p in sorted(span.pivots))]
    _span_cache[(n, k)] = out
    return out


def _all_indices(n: int, k: int):
    if k == 0:
        return [()]
    out = [()]
    for _ in range(k):
        out = [t + (x,) for t in out for x in range(1, n + 2)]
    return out


def functional_is_zero(e: OqElement, k: int) -> bool:
    """True iff e (length-k homogeneous) kills every rho_k image."""
    if not e:
        return True
    if e.homogeneous_length() != k:
        raise ValueError("length mismatch")
    coeffs = {
        (tuple(a for a, _ in w), tuple(b for _, b in w)): c for w, c in e.terms.items()
    }
    for mat in rep_span(e.n, k):
        s = ZERO
        for key, c in coeffs.items():
            m = mat.get(key)
            if m:
                s = s + c * m
        if s:
            return False
    return True


def oq_equal(e1: OqElement, e2: OqElement, k: int) -> bool:
    """Equality in O_q(SU_{n+1}) via the functional realization."""
    return functional_is_zero(e1 - e2, k)


def frt_relations(n: int):
    """The FRT relation instances (lhs - rhs, length 2) of the coordinate
    algebra, one element per index pattern; all are functionally zero."""
    out = []
    u = lambda a, b: OqElement.u(n, a, b)
    for i in range(1, n + 2):
        for ip in range(i + 1, n + 2):
            for j in range(1, n + 2):
                # same column: u_ij u_i'j = q u_i'j u_ij
                out.append(u(i, j) * u(ip, j) - u(ip, j) * u(i, j) * qpow(1))
        for j in range(1, n + 2):
            for jp in range(j + 1, n + 2):
                # same row: u_ij u_ij' = q u_ij' u_ij
                out.append(u(i, j) * u(i, jp) - u(i, jp) * u(i, j) * qpow(1))
    for i in range(1, n + 2):
        for ip in range(i + 1, n + 2):
            for j in range(1, n + 2):
                for jp in range(j + 1, n + 2):
                    # antidiagonal pairs commute
                    out.append(u(i, jp) * u(ip, j) - u(ip, j) * u(i, jp))
                    # diagonal pairs: u_ij u_i'j' = u_i'j' u_ij + nu u_ij' u_i'j
                    out.append(
                        u(i, j) * u(ip, jp)
                        - u(ip, jp) * u(i, j)
                        - u(i, jp) * u(ip, j) * NU
                    )
    return out
