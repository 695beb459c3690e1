"""Exact arithmetic in the quantized enveloping algebra of sl(n+1).

Generators E_i, F_i, K_i^{+-1} (i = 1..n) with the standard relations

    K_i E_j = q^{a_ij} E_j K_i,   K_i F_j = q^{-a_ij} F_j K_i,
    E_i F_j - F_j E_i = delta_ij (K_i - K_i^{-1}) / (q - q^{-1}),

quantum Serre relations on the E's and on the F's, coproduct
Delta(E_i) = E_i x K_i + 1 x E_i, Delta(F_i) = F_i x 1 + K_i^{-1} x F_i,
Delta(K_i) = K_i x K_i, counit eps(E_i) = eps(F_i) = 0, eps(K_i) = 1, and
antipode S(E_i) = -E_i K_i^{-1}, S(F_i) = -K_i F_i, S(K_i) = K_i^{-1}.

Every element is held in triangular normal form: a sparse sum of monomials
(F-word, K-exponent vector, E-word), the E- and F-words reduced modulo a
shared degree-truncated Serre rewriting system (extended on demand).
Equality of elements is literal equality of this canonical form.

The braid operators T_i act by

    T_i(E_i) = -F_i K_i,  T_i(F_i) = -K_i^{-1} E_i,  T_i(K_j) = K_j K_i^{-a_ij},
    T_{k+-1}(E_k) = -[E_{k+-1}, E_k]_{q^{-1}},
    T_{k+-1}(F_k) = -[F_k, F_{k+-1}]_q,

fixing generators with distant indices; root vectors attached to a reduced
word of the longest element are the usual iterated braid images of the
simple E's, rescaled so the deg-lex-leading monomial has coefficient one.
"""

from __future__ import annotations

from qflag import weyl
from qflag.freealg import Alphabet, DegLex, FreeElement, complete_truncated
from qflag.scalars import NU, ONE, RatQ, TWO_Q, ZERO, qpow

Mono = tuple  # (fword, kvec, eword)


def _cartan(n: int, i: int, j: int) -> int:
    if i == j:
        return 2
    return -1 if abs(i - j) == 1 else 0


class UqAlgebra:
    """Rank-n context: Serre rewriting system and straightening caches."""

    def __init__(self, n: int):
        weyl.check_rank(n)
        self.n = n
        labels = tuple(f"x{i}" for i in range(1, n + 1))
        weights = tuple(
            tuple(1 if a == i else 0 for a in range(n)) for i in range(n)
        )
        self._alphabet = Alphabet(labels, weights)
        self._order = DegLex(size=n)
        rels = []
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    continue
                if abs(i - j) == 1:
                    # x_i^2 x_j - [2] x_i x_j x_i + x_j x_i^2
                    rels.append(
                        FreeElement(
                            {
                                (i - 1, i - 1, j - 1): ONE,
                                (i - 1, j - 1, i - 1): -TWO_Q,
                                (j - 1, i - 1, i - 1): ONE,
                            }
                        )
                    )
                elif i > j:
                    rels.append(FreeElement({(i - 1, j - 1): ONE, (j - 1, i - 1): -ONE}))
        self._serre = complete_truncated(rels, self._order, 2 * n, self._alphabet)
        self._word_nf_cache: dict[tuple, tuple] = {}
        self._straighten_cache: dict[tuple, dict] = {}
        self._move_cache: dict[tuple, dict] = {}

    # -- generators ------------------------------------------------------------

    def zero(self) -> "UqElement":
        return UqElement(self, {})

    def one(self) -> "UqElement":
        return UqElement(self, {((), (0,) * self.n, ()): ONE})

    def scalar(self, c) -> "UqElement":
        c = c if isinstance(c, RatQ) else RatQ(c)
        return UqElement(self, {((), (0,) * self.n, ()): c} if c else {})

    def E(self, i: int) -> "UqElement":
        self._check_index(i)
        return UqElement(self, {((), (0,) * self.n, (i,)): ONE})

    def F(self, i: int) -> "UqElement":
        self._check_index(i)
        return UqElement(self, {((i,), (0,) * self.n, ()): ONE})

    def K(self, i: int, exp: int = 1) -> "UqElement":
        self._check_index(i)
        kv = [0] * self.n
        kv[i - 1] = exp
        return UqElement(self, {((), tuple(kv), ()): ONE})

    def _check_index(self, i: int):
        if not 1 <= i <= self.n:
            raise ValueError(f"generator index {i} out of range 1..{self.n}")

    # -- Serre normal form on single words --------------------------------------

    def word_nf(self, word: tuple) -> dict[tuple, RatQ]:
        """Normal form of a word in the letters 1..n (shared by E and F sides)."""
        hit = self._word_nf_cache.get(word)
        if hit is None:
            if len(word) > self._serre.valid_degree:
                self._serre.extend_to(len(word) + 2)
            nf = self._serre.reduce(FreeElement.monomial(tuple(g - 1 for g in word)))
            hit = tuple((tuple(g + 1 for g in w), c) for w, c in sorted(nf.terms.items()))
            self._word_nf_cache[word] = hit
        return dict(hit)

    # -- multiplication ----------------------------------------------------------

    def _ad_sum(self, kvec, letters) -> int:
        """sum_{i,l} kvec_i a_{i,letter_l}, the K-past-word commutation exponent."""
        s = 0
        for l in letters:
            for i in range(1, self.n + 1):
                v = kvec[i - 1]
                if v:
                    s += v * _cartan(self.n, i, l)
        return s

    def _move_past_Fj(self, eword: tuple, j: int) -> dict:
        """E-word times F_j as sum of (fpart, kvec, eword) monomials."""
        key = (eword, j)
        hit = self._move_cache.get(key)
        if hit is not None:
            return hit
        if not eword:
            out = {((j,), (0,) * self.n, ()): ONE}
            self._move_cache[key] = out
            return out
        head, i = eword[:-1], eword[-1]
        out: dict = {}
        for (fp, kv, ew), c in self._move_past_Fj(head, j).items():
            _acc(out, (fp, kv, ew + (i,)), c)
        if i == j:
            # head * (K_i - K_i^{-1}) / nu, moving the K to the front
            ph = sum(_cartan(self.n, i, l) for l in head)
            kplus = tuple((1 if a == i - 1 else 0) for a in range(self.n))
            kminus = tuple((-1 if a == i - 1 else 0) for a in range(self.n))
            _acc(out, ((), kplus, head), qpow(-ph) / NU)
            _acc(out, ((), kminus, head), -(qpow(ph) / NU))
        self._move_cache[key] = out
        return out

    def _straighten(self, eword: tuple, fword: tuple) -> dict:
        """E-word times F-word as sum of normal-ordered monomials."""
        key = (eword, fword)
        hit = self._straighten_cache.get(key)
        if hit is not None:
            return hit
        if not eword or not fword:
            out = {(fword, (0,) * self.n, eword): ONE}
        else:
            j, frest = fword[0], fword[1:]
            out = {}
            for (fp, kv, ew), c in self._move_past_Fj(eword, j).items():
                for (f3, k3, e3), c3 in self._straighten(ew, frest).items():
                    phase = qpow(-self._ad_sum(kv, f3))
                    kt = tuple(a + b for a, b in zip(kv, k3))
                    _acc(out, (fp + f3, kt, e3), c * c3 * phase)
        self._straighten_cache[key] = out
        return out

    def mono_mul(self, m1: Mono, m2: Mono) -> dict:
        """Product of two normal monomials, renormalized."""
        (f1, k1, e1), (f2, k2, e2) = m1, m2
        out: dict = {}
        for (fm, km, em), c in self._straighten(e1, f2).items():
            # f1 K^{k1} fm K^{km} em K^{k2} e2
            phase = qpow(-self._ad_sum(k1, fm) - self._ad_sum(k2, em))
            ktot = tuple(a + b + c2 for a, b, c2 in zip(k1, km, k2))
            for fw, cf in self.word_nf(f1 + fm).items():
                for ew, ce in self.word_nf(em + e2).items():
                    _acc(out, (fw, ktot, ew), c * phase * cf * ce)
        return out

    # -- structure maps -----------------------------------------------------------

    def counit_mono(self, m: Mono) -> RatQ:
        f, _, e = m
        return ONE if not f and not e else ZERO

    def gen_coproduct(self, kind: str, i: int, exp: int = 1) -> "TensorSquare":
        one = self.one()
        if kind == "E":
            return TensorSquare.from_pairs(
                self, [(self.E(i), self.K(i)), (one, self.E(i))]
            )
        if kind == "F":
            return TensorSquare.from_pairs(
                self, [(self.F(i), one), (self.K(i, -1), self.F(i))]
            )
        if kind == "K":
            return TensorSquare.from_pairs(self, [(self.K(i, exp), self.K(i, exp))])
        raise ValueError(kind)

    def coproduct_mono(self, m: Mono) -> "TensorSquare":
        f, kv, e = m
        out = TensorSquare.from_pairs(self, [(self.one(), self.one())])
        for l in f:
            out = out * self.gen_coproduct("F", l)
        kl = UqElement(self, {((), kv, ()): ONE})
        out = out * TensorSquare.from_pairs(self, [(kl, kl)])
        for l in e:
            out = out * self.gen_coproduct("E", l)
        return out

    def antipode_gen(self, kind: str, i: int, exp: int = 1) -> "UqElement":
        if kind == "E":
            return -(self.E(i) * self.K(i, -1))
        if kind == "F":
            return -(self.K(i) * self.F(i))
        if kind == "K":
            return self.K(i, -exp)
        raise ValueError(kind)

    # -- braid operators ------------------------------------------------------------

    def braid_gen(self, i: int, kind: str, l: int, exp: int = 1) -> "UqElement":
        if kind == "K":
            return self.K(l, exp) * self.K(i, -exp * _cartan(self.n, i, l))
        if kind == "E":
            if l == i:
                return -(self.F(i) * self.K(i))
            if abs(l - i) == 1:
                return -qcomm(self.E(i), self.E(l), qpow(-1))
            return self.E(l)
        if kind == "F":
            if l == i:
                return -(self.K(i, -1) * self.E(i))
            if abs(l - i) == 1:
                return -qcomm(self.F(l), self.F(i), qpow(1))
            return self.F(l)
        raise ValueError(kind)


def _acc(d: dict, key, c: RatQ):
    if not c:
        return
    s = d.get(key, ZERO) + c
    if s:
        d[key] = s
    else:
        d.pop(key, None)


class UqElement:
    """Sparse linear combination of normal monomials (F-word, K-vec, E-word)."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: UqAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = {m: c for m, c in terms.items() if c}

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, UqElement)
            and self.algebra is other.algebra
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, c)
        return UqElement(self.algebra, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return UqElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def scale(self, c) -> "UqElement":
        c = c if isinstance(c, RatQ) else RatQ(c)
        return UqElement(self.algebra, {m: c * x for m, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (RatQ, int)):
            return self.scale(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                for m, c in self.algebra.mono_mul(m1, m2).items():
                    _acc(out, m, c1 * c2 * c)
        return UqElement(self.algebra, out)

    def __rmul__(self, other):
        if isinstance(other, (RatQ, int)):
            return self.scale(other)
        return NotImplemented

    # -- queries ---------------------------------------------------------------

    def counit(self) -> RatQ:
        out = ZERO
        for m, c in self.terms.items():
            if self.algebra.counit_mono(m):
                out = out + c
        return out

    def mono_weight(self, m: Mono) -> tuple[int, ...]:
        f, _, e = m
        n = self.algebra.n
        w = [0] * n
        for l in e:
            w[l - 1] += 1
        for l in f:
            w[l - 1] -= 1
        return tuple(w)

    def weight(self) -> tuple[int, ...]:
        wts = {self.mono_weight(m) for m in self.terms}
        if len(wts) > 1:
            offenders = sorted(str(_mono_str(m, self.algebra.n)) for m in self.terms)
            raise ValueError(f"element is not weight-homogeneous: monomials {offenders}")
        return wts.pop() if wts else (0,) * self.algebra.n

    def is_positive_part(self) -> bool:
        return all(not f and not any(kv) for (f, kv, _e) in self.terms)

    def e_degree(self) -> int:
        return max((len(e) for (_f, _kv, e) in self.terms), default=0)

    def eword_coords(self) -> dict:
        """Coordinates over E-words (positive-part elements only)."""
        if not self.is_positive_part():
            raise ValueError("element has F or K factors")
        return {e: c for (_f, _kv, e), c in self.terms.items()}

    def render(self) -> str:
        if not self.terms:
            return "0"
        n = self.algebra.n
        parts = []
        for m in sorted(self.terms, key=lambda m: (_mono_sort_key(m))):
            c = self.terms[m]
            cs, ms = str(c), _mono_str(m, n)
            if ms == "1":
                body = cs
            elif cs == "1":
                body = ms
            elif cs == "-1":
                body = f"-{ms}"
            else:
                if any(s in cs[1:] for s in "+-") or "/" in cs:
                    cs = f"({cs})"
                body = f"{cs}*{ms}"
            if not parts:
                parts.append(body)
            else:
                parts.append(f"- {body[1:]}" if body.startswith("-") else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"<Uq {self.render()}>"


def _mono_sort_key(m: Mono):
    f, kv, e = m
    return (len(f) + len(e), f, kv, e)


def _mono_str(m: Mono, n: int) -> str:
    f, kv, e = m
    out = []
    out.extend(f"F{l}" for l in f)
    for i, v in enumerate(kv):
        if v == 1:
            out.append(f"K{i + 1}")
        elif v:
            out.append(f"K{i + 1}^{v}")
    out.extend(f"E{l}" for l in e)
    return " ".join(out) if out else "1"


class TensorSquare:
    """Element of Uq x Uq: sparse map (monomial, monomial) -> coefficient,
    each leg in canonical form."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: UqAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = {m: c for m, c in terms.items() if c}

    @staticmethod
    def from_pairs(algebra: UqAlgebra, pairs) -> "TensorSquare":
        out: dict = {}
        for left, right in pairs:
            for m1, c1 in left.terms.items():
                for m2, c2 in right.terms.items():
                    _acc(out, (m1, m2), c1 * c2)
        return TensorSquare(algebra, out)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, TensorSquare) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, c)
        return TensorSquare(self.algebra, out)

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, c: RatQ) -> "TensorSquare":
        return TensorSquare(self.algebra, {m: c * x for m, x in self.terms.items()})

    def __mul__(self, other: "TensorSquare") -> "TensorSquare":
        alg = self.algebra
        out: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                c12 = c1 * c2
                for ma, ca in alg.mono_mul(a1, a2).items():
                    for mb, cb in alg.mono_mul(b1, b2).items():
                        _acc(out, (ma, mb), c12 * ca * cb)
        return TensorSquare(alg, out)

    def apply_counit(self, leg: int) -> UqElement:
        alg = self.algebra
        out: dict = {}
        for (m1, m2), c in self.terms.items():
            if leg == 0 and alg.counit_mono(m1):
                _acc(out, m2, c)
            elif leg == 1 and alg.counit_mono(m2):
                _acc(out, m1, c)
        return UqElement(alg, out)

    def render(self) -> str:
        n = self.algebra.n
        if not self.terms:
            return "0"
        parts = []
        for (m1, m2) in sorted(
            self.terms, key=lambda p: (_mono_sort_key(p[0]), _mono_sort_key(p[1]))
        ):
            c = self.terms[(m1, m2)]
            cs = str(c)
            if any(s in cs[1:] for s in "+-") or "/" in cs:
                cs = f"({cs})"
            body = f"{_mono_str(m1, n)} (x) {_mono_str(m2, n)}"
            if cs == "1":
                parts.append(body)
            elif cs == "-1":
                parts.append(f"-{body}")
            else:
                parts.append(f"{cs}*{body}")
        return "  +  ".join(parts)

    def __repr__(self):
        return f"<Uq^2 {self.render()}>"


# -- public operations ----------------------------------------------------------


def uq_normal_form(algebra: UqAlgebra, gen_terms) -> UqElement:
    """Element from raw generator words: iterable of (coeff, sequence of
    tokens), token = ('E', i) | ('F', i) | ('K', i, exp).  The returned
    element is the canonical triangular normal form of the expression."""
    total = algebra.zero()
    for coeff, seq in gen_terms:
        acc = algebra.scalar(coeff)
        for tok in seq:
            kind, i = tok[0], tok[1]
            if kind == "E":
                g = algebra.E(i)
            elif kind == "F":
                g = algebra.F(i)
            elif kind == "K":
                g = algebra.K(i, tok[2] if len(tok) > 2 else 1)
            else:
                raise ValueError(f"unknown generator token {tok!r}")
            acc = acc * g
        total = total + acc
    return total


def coproduct(x: UqElement) -> TensorSquare:
    alg = x.algebra
    out: dict = {}
    for m, c in x.terms.items():
        for mm, cc in alg.coproduct_mono(m).terms.items():
            _acc(out, mm, c * cc)
    return TensorSquare(alg, out)


def counit(x: UqElement) -> RatQ:
    return x.counit()


def braid_T(i: int, x: UqElement) -> UqElement:
    """Lusztig's braid automorphism T_i, extended multiplicatively."""
    alg = x.algebra
    alg._check_index(i)
    out = alg.zero()
    for (f, kv, e), c in x.terms.items():
        acc = alg.scalar(c)
        for l in f:
            acc = acc * alg.braid_gen(i, "F", l)
        for a, v in enumerate(kv):
            if v:
                acc = acc * alg.braid_gen(i, "K", a + 1, v)
        for l in e:
            acc = acc * alg.braid_gen(i, "E", l)
        out = out + acc
    return out


def weight(x: UqElement) -> tuple[int, ...]:
    return x.weight()


def qcomm(x: UqElement, y: UqElement, c) -> UqElement:
    """Twisted commutator [x, y]_c = xy - c yx."""
    c = c if isinstance(c, RatQ) else RatQ(c)
    return x * y - (y * x).scale(c)


def build_Eji(algebra: UqAlgebra, i: int, j: int) -> UqElement:
    """Iterated q^{-1}-commutator [E_{j-1}, [E_{j-2}, ... [E_{i+1}, E_i]...]]."""
    if not 1 <= i < j <= algebra.n + 1:
        raise ValueError(f"need 1 <= i < j <= {algebra.n + 1}, got ({i}, {j})")
    out = algebra.E(i)
    for a in range(i + 1, j):
        out = qcomm(algebra.E(a), out, qpow(-1))
    return out


def _eword_order(n: int) -> DegLex:
    return DegLex(size=n)


def leading_eword(x: UqElement):
    order = _eword_order(x.algebra.n)
    coords = x.eword_coords()
    lead = max(coords, key=lambda w: (len(w), tuple(w)))
    return lead, coords[lead]


def root_vectors(algebra: UqAlgebra, word) -> list[UqElement]:
    """Sign-normalized Lusztig root vectors for a reduced word of the
    longest element; entry k is weight-homogeneous of weight beta_k."""
    word = tuple(word)
    betas = weyl.beta_sequence(word, algebra.n)  # validates the word
    out = []
    for k in range(len(word)):
        x = algebra.E(word[k])
        for t in range(k - 1, -1, -1):
            x = braid_T(word[t], x)
        if not x.is_positive_part():
            raise AssertionError(
                f"root vector {k} of {word} has F or K factors after normalization"
            )
        lead, lc = leading_eword(x)
        x = x.scale(lc.inverse())
        if x.weight() != betas[k].weight(algebra.n):
            raise AssertionError(f"root vector {k} of {word} has unexpected weight")
        out.append(x)
    return out


def adjoint(algebra: UqAlgebra, gen, x: UqElement, side: str = "right") -> UqElement:
    """Adjoint action of a generator token ('E', i) | ('F', i) | ('K', i, exp).

    Right: ad(Y)(X) = S(Y_(1)) X Y_(2); left: ad_L(Y)(X) = Y_(1) X S(Y_(2)).
    """
    kind, i = gen[0], gen[1]
    exp = gen[2] if len(gen) > 2 else 1
    if kind == "K":
        k, kinv = algebra.K(i, exp), algebra.K(i, -exp)
        return (kinv * x * k) if side == "right" else (k * x * kinv)
    if kind == "E":
        e, k, kinv = algebra.E(i), algebra.K(i), algebra.K(i, -1)
        if side == "right":
            return -(e * kinv * x * k) + x * e
        return e * x * kinv - x * e * kinv
    if kind == "F":
        f, k, kinv = algebra.F(i), algebra.K(i), algebra.K(i, -1)
        if side == "right":
            return -(k * f * x) + k * x * f
        return f * x - kinv * x * k * f
    raise ValueError(f"unknown generator token {gen!r}")
