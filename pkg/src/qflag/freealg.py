"""Noncommutative polynomials over Q(q) with rewriting to normal form.

Words are tuples of letter ids (indices into an Alphabet); a FreeElement is
a sparse map word -> RatQ with zero coefficients pruned.  The engine
supplies degree-lexicographic monomial orders, reduction modulo a rewrite
system, degree-truncated completion of homogeneous relation systems
(overlap ambiguities resolved up to a validity degree, which is sound for
homogeneous two-sided ideals), and graded dimension counting by
normal-word enumeration.

Exact linear algebra over Q(q) (echelon spans, nullspaces, annihilators,
RREF) lives here too, since rank computations back both the dimension
oracle and the relation-space calculus.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from qflag.scalars import ONE, RatQ, ZERO

Word = tuple  # tuple[int, ...]


@dataclass(frozen=True)
class Alphabet:
    """Ordered generator set; position in `labels` is the default precedence.

    Each generator carries a weight vector (the root-lattice grading) and
    total degree 1.
    """

    labels: tuple[str, ...]
    weights: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("alphabet labels must be distinct")
        if len(self.weights) != len(self.labels):
            raise ValueError("one weight vector per label")

    @property
    def size(self) -> int:
        return len(self.labels)

    def word_weight(self, word: Word) -> tuple[int, ...]:
        if not self.weights:
            return ()
        acc = [0] * len(self.weights[0])
        for g in word:
            for i, x in enumerate(self.weights[g]):
                acc[i] += x
        return tuple(acc)

    def word_str(self, word: Word) -> str:
        return "".join(self.labels[g] for g in word) if word else "1"


class DegLex:
    """Degree-lexicographic order; ties broken by letter precedence,
    first letter dominant.  `precedence[g]` is the rank of letter g
    (higher rank = bigger letter)."""

    def __init__(self, precedence=None, size: int | None = None):
        if precedence is None:
            precedence = tuple(range(size))
        self.precedence = tuple(precedence)

    def key(self, word: Word):
        return (len(word), tuple(self.precedence[g] for g in word))

    def greater(self, a: Word, b: Word) -> bool:
        return self.key(a) > self.key(b)

    def reversed(self) -> "DegLex":
        m = max(self.precedence)
        return DegLex(tuple(m - p for p in self.precedence))


class FreeElement:
    """Sparse noncommutative polynomial; terms: dict word -> RatQ."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[Word, RatQ] = {}
        if terms:
            for w, c in dict(terms).items():
                if c:
                    self.terms[tuple(w)] = c

    @staticmethod
    def monomial(word: Word, coeff: RatQ = ONE) -> "FreeElement":
        e = FreeElement()
        if coeff:
            e.terms[tuple(word)] = coeff
        return e

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, FreeElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def copy(self) -> "FreeElement":
        e = FreeElement()
        e.terms = dict(self.terms)
        return e

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, ZERO) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        e = FreeElement()
        e.terms = out
        return e

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        e = FreeElement()
        e.terms = {w: -c for w, c in self.terms.items()}
        return e

    def scale(self, c: RatQ) -> "FreeElement":
        if not c:
            return FreeElement()
        e = FreeElement()
        e.terms = {w: c * x for w, x in self.terms.items()}
        return e

    def __mul__(self, other):
        out: dict[Word, RatQ] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = out.get(w, ZERO) + c1 * c2
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        e = FreeElement()
        e.terms = out
        return e

    def lead(self, order: DegLex) -> Word:
        return max(self.terms, key=order.key)

    def max_degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def is_homogeneous(self, alphabet: Alphabet):
        degs = {len(w) for w in self.terms}
        wts = {alphabet.word_weight(w) for w in self.terms}
        return len(degs) <= 1 and len(wts) <= 1

    def render(self, alphabet: Alphabet, order: DegLex | None = None) -> str:
        if not self.terms:
            return "0"
        words = sorted(self.terms, key=(order or DegLex(size=alphabet.size)).key, reverse=True)
        parts = []
        for w in words:
            c = self.terms[w]
            cs = str(c)
            mono = alphabet.word_str(w)
            if mono == "1":
                body = cs
            elif cs == "1":
                body = mono
            elif cs == "-1":
                body = f"-{mono}"
            else:
                if any(s in cs[1:] for s in "+-") or "/" in cs:
                    cs = f"({cs})"
                body = f"{cs}*{mono}"
            if not parts:
                parts.append(body)
            else:
                parts.append(f"- {body[1:]}" if body.startswith("-") else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"FreeElement({self.terms!r})"


@dataclass
class RewriteRule:
    """lead -> tail, with lead strictly greater than every tail word."""

    lead: Word
    tail: FreeElement

    def as_element(self) -> FreeElement:
        return FreeElement.monomial(self.lead) - self.tail


class TruncatedGB:
    """A reduction system valid up to `valid_degree`: every overlap
    ambiguity whose resolution lives in degree <= valid_degree reduces to
    zero.  For homogeneous ideals this decides ideal membership exactly in
    degrees <= valid_degree.  Extendable on demand."""

    def __init__(self, alphabet: Alphabet, order: DegLex):
        self.alphabet = alphabet
        self.order = order
        self.rules: dict[int, RewriteRule] = {}
        self._alive: set[int] = set()
        self._next_id = 0
        self._pending: list[tuple[int, int, int, int, Word]] = []  # (deg, id1, id2, seq, word)
        self._seq = 0
        self.valid_degree = 0
        self._lead_index: dict[Word, int] = {}

    # -- reduction -----------------------------------------------------------

    def _find_redex(self, word: Word, choice=None):
        """Return (pos, rule_id) for a factor match, or None."""
        cands = []
        n = len(word)
        for lead, rid in self._lead_index.items():
            L = len(lead)
            if L > n:
                continue
            for p in range(n - L + 1):
                if word[p : p + L] == lead:
                    if choice is None:
                        return (p, rid)
                    cands.append((p, rid))
        if not cands:
            return None
        return choice(cands)

    def reduce(self, elem: FreeElement, choice=None) -> FreeElement:
        """Normal form of elem; `choice` optionally picks among redexes
        (used to test strategy independence)."""
        work = list(elem.terms.items())
        out: dict[Word, RatQ] = {}
        while work:
            word, coeff = work.pop()
            hit = self._find_redex(word, choice)
            if hit is None:
                s = out.get(word, ZERO) + coeff
                if s:
                    out[word] = s
                else:
                    out.pop(word, None)
                continue
            p, rid = hit
            rule = self.rules[rid]
            pre, post = word[:p], word[p + len(rule.lead) :]
            for tw, tc in rule.tail.terms.items():
                work.append((pre + tw + post, coeff * tc))
        e = FreeElement()
        e.terms = out
        return e

    # -- completion ----------------------------------------------------------

    def _push_overlaps(self, rid: int):
        lead = self.rules[rid].lead
        for other, oid in list(self._lead_index.items()):
            for a, b, la, lb in ((lead, other, rid, oid), (other, lead, oid, rid)):
                if la == lb and a == b:
                    pass  # self-overlaps still valid below
                m = min(len(a), len(b))
                for t in range(1, m):
                    if a[-t:] == b[:t]:
                        w = a + b[t:]
                        self._seq += 1
                        heapq.heappush(self._pending, (len(w), la, lb, self._seq, w))

    def _insert(self, elem: FreeElement):
        """Reduce, orient, and install a new rule; retire rules whose lead
        becomes reducible."""
        elem = self.reduce(elem)
        if not elem:
            return
        lead = elem.lead(self.order)
        lc = elem.terms[lead]
        tail = FreeElement()
        tail.terms = {w: -(c / lc) for w, c in elem.terms.items() if w != lead}
        rid = self._next_id
        self._next_id += 1
        self.rules[rid] = RewriteRule(lead, tail)
        self._alive.add(rid)
        self._lead_index[lead] = rid
        # inclusion ambiguities: any existing lead containing the new lead
        stale = []
        for other, oid in self._lead_index.items():
            if oid != rid and len(other) >= len(lead):
                if any(other[p : p + len(lead)] == lead for p in range(len(other) - len(lead) + 1)):
                    stale.append(oid)
        for oid in stale:
            rule = self.rules.pop(oid)
            self._alive.discard(oid)
            del self._lead_index[rule.lead]
            self._insert(rule.as_element())
        self._push_overlaps(rid)

    def extend_to(self, dmax: int):
        """Resolve all pending overlap ambiguities of degree <= dmax."""
        while self._pending and self._pending[0][0] <= dmax:
            deg, r1, r2, _, word = heapq.heappop(self._pending)
            if r1 not in self._alive or r2 not in self._alive:
                continue
            a, b = self.rules[r1], self.rules[r2]
            # word = a.lead glued with b.lead over an overlap of length t
            t = len(a.lead) + len(b.lead) - len(word)
            left = a.tail * FreeElement.monomial(word[len(a.lead) :])
            right = FreeElement.monomial(word[: len(word) - len(b.lead)]) * b.tail
            diff = self.reduce(left - right)
            if diff:
                self._insert(diff)
        self.valid_degree = max(self.valid_degree, dmax)

    # -- queries ---------------------------------------------------------------

    def live_rules(self) -> list[RewriteRule]:
        return [self.rules[i] for i in sorted(self._alive)]

    def is_normal(self, word: Word) -> bool:
        return self._find_redex(word) is None

    def normal_words(self, k: int) -> list[Word]:
        """All normal words of degree k (requires valid_degree >= k)."""
        if k > self.valid_degree:
            raise ValueError(f"degree {k} above valid_degree {self.valid_degree}")
        words = [()]
        for _ in range(k):
            nxt = []
            for w in words:
                for g in range(self.alphabet.size):
                    cand = w + (g,)
                    # only suffix factors can be new
                    if all(
                        cand[len(cand) - L :] not in self._lead_index
                        for L in range(1, len(cand) + 1)
                    ):
                        nxt.append(cand)
            words = nxt
        return words


def complete_truncated(
    relations: list[FreeElement], order: DegLex, dmax: int, alphabet: Alphabet
) -> TruncatedGB:
    """Degree-truncated two-sided completion of a homogeneous relation set."""
    gb = TruncatedGB(alphabet, order)
    for r in relations:
        if not r:
            continue
        if not r.is_homogeneous(alphabet):
            raise ValueError("relations must be homogeneous in degree and weight")
        gb._insert(r)
    gb.extend_to(dmax)
    return gb


def nf_reduce(elem: FreeElement, gb: TruncatedGB, choice=None) -> FreeElement:
    """Normal form of elem modulo gb; errors above the validity degree."""
    d = elem.max_degree()
    if d > gb.valid_degree:
        raise ValueError(
            f"element of degree {d} exceeds the completion's valid degree {gb.valid_degree}"
        )
    return gb.reduce(elem, choice)


@dataclass
class DimensionTable:
    """dims[k] = dimension of the degree-k component; classical is set by
    the calculus layer when the binomial comparison applies."""

    dims: list[int]
    classical: bool | None = None
    truncated_at: int | None = field(default=None)

    def as_json_dict(self):
        out = {"dims": list(self.dims)}
        if self.classical is not None:
            out["classical"] = self.classical
        if self.truncated_at is not None:
            out["truncated_at"] = self.truncated_at
        return out


def graded_dims(
    relations: list[FreeElement], order: DegLex, kmax: int, alphabet: Alphabet
) -> DimensionTable:
    """Dimensions of the graded quotient of the free algebra, degrees 0..kmax."""
    gb = complete_truncated(relations, order, kmax + 1, alphabet)
    return DimensionTable([len(gb.normal_words(k)) for k in range(kmax + 1)])


# ---------------------------------------------------------------------------
# exact linear algebra over Q(q); vectors are dicts keyed by hashable coords


class Span:
    """Row-echelon span of sparse vectors, kept fully reduced (no row's
    support meets another row's pivot); supports rank and membership."""

    def __init__(self):
        self.pivots: dict = {}  # pivot coord -> vector (pivot coeff 1)

    def reduce(self, vec: dict) -> dict:
        """Residue of vec modulo the span (zero iff vec is in the span)."""
        out = {k: c for k, c in vec.items() if c}
        # rows are mutually reduced, so one elimination per pivot hit suffices
        for k in sorted(k for k in out if k in self.pivots):
            c = out.pop(k, None)
            if not c:
                continue
            for kk, x in self.pivots[k].items():
                if kk == k:
                    continue
                s = out.get(kk, ZERO) - c * x
                if s:
                    out[kk] = s
                else:
                    out.pop(kk, None)
        return out

    def add(self, vec: dict) -> bool:
        """Insert vec; True if the rank grew."""
        vec = self.reduce(vec)
        if not vec:
            return False
        piv = min(vec)
        c = vec[piv]
        row = {k: x / c for k, x in vec.items()}
        # back-eliminate the new pivot from existing rows
        for r in self.pivots.values():
            if piv in r:
                cc = r[piv]
                for k, x in row.items():
                    s = r.get(k, ZERO) - cc * x
                    if s:
                        r[k] = s
                    else:
                        r.pop(k, None)
        self.pivots[piv] = row
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    @property
    def dim(self) -> int:
        return len(self.pivots)


def rank(rows: list[dict]) -> int:
    sp = Span()
    for r in rows:
        sp.add(dict(r))
    return sp.dim


def nullspace_combinations(rows: list[dict]) -> list[dict]:
    """Vectors c (dicts index -> RatQ) with sum_i c_i rows[i] = 0."""
    combos = []
    echelon: dict = {}  # pivot coord -> (residue row, combination)
    for i, r in enumerate(rows):
        vec = {k: c for k, c in r.items() if c}
        combo = {i: ONE}
        while vec:
            hits = sorted(k for k in vec if k in echelon)
            if not hits:
                break
            k = hits[0]
            res, cmb = echelon[k]
            c = vec[k]
            for kk, x in res.items():
                s = vec.get(kk, ZERO) - c * x
                if s:
                    vec[kk] = s
                else:
                    vec.pop(kk, None)
            for jj, x in cmb.items():
                s = combo.get(jj, ZERO) - c * x
                if s:
                    combo[jj] = s
                else:
                    combo.pop(jj, None)
        if vec:
            piv = min(vec)
            c = vec[piv]
            echelon[piv] = (
                {k: x / c for k, x in vec.items()},
                {j: x / c for j, x in combo.items()},
            )
        else:
            combos.append(combo)
    return combos


def annihilator(rows: list[dict], coords: list) -> list[dict]:
    """Canonical basis (RREF over `coords` order) of {r : r . row = 0 for all rows}."""
    cindex = {k: i for i, k in enumerate(coords)}
    sp = Span()
    for r in rows:
        sp.add({cindex[k]: c for k, c in r.items() if c})
    pivs = sorted(sp.pivots)
    free = [i for i in range(len(coords)) if i not in sp.pivots]
    out = []
    for f in free:
        vec = {f: ONE}
        for p in pivs:
            c = sp.pivots[p].get(f)
            if c:
                vec[p] = -c
        out.append({coords[i]: c for i, c in vec.items()})
    return out


def rref(rows: list[dict], coords: list) -> list[dict]:
    """Canonical reduced row-echelon form with columns ordered by `coords`."""
    cindex = {k: i for i, k in enumerate(coords)}
    sp = Span()
    for r in rows:
        sp.add({cindex[k]: c for k, c in r.items() if c})
    out = []
    for p in sorted(sp.pivots):
        out.append({coords[i]: c for i, c in sp.pivots[p].items()})
    return out
