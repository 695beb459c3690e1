"""Tangent spaces spanned by root vectors and the differential calculi they
generate.

The pipeline: a reduced word of the longest element (or an explicit list of
positive-part expressions) spans a candidate tangent space T.  The coideal
test decides on which sides T + C1 is a coideal of the full-flag dual,
modelling restriction to the flag subalgebra by erasing K factors in the
tested tensor leg (K_i acts there as the counit).  The degree-two relations
of the maximal prolongation are computed per weight as the annihilator of
the coefficient tensors c with sum c_kl X_k X_l inside span(T): functionals
on the coordinate algebra vanishing on the classifying ideal are exactly
span(T) + C eps, so this is the exact relation space.  On top of the
relations sit the graded dimensions (diamond-lemma counting), the
associated-graded leading relations, the Frobenius/Nakayama data, the
line-module weights, the Grassmannian restriction with its ad-closure
check, and the antiholomorphic-kernel computation on spans of u-words.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from qflag import oq, weyl
from qflag.freealg import (
    Alphabet,
    DegLex,
    DimensionTable,
    FreeElement,
    Span,
    annihilator,
    complete_truncated,
    nullspace_combinations,
    rank,
    rref,
)
from qflag.oq import OqElement, left_act, rep_span
from qflag.scalars import ONE, RatQ, ZERO
from qflag.uqsl import UqAlgebra, UqElement, adjoint, coproduct, root_vectors
from qflag.weyl import Root


@dataclass
class TangentSpace:
    """Ordered basis of weight-homogeneous positive-part elements, tagged
    with its provenance (a Weyl word, or the expressions it was built from)."""

    algebra: UqAlgebra
    basis: list[UqElement]
    weights: list[tuple[int, ...]]
    labels: list[str]
    roots: list[Root] | None = None  # per-entry root when the weight is a root
    word: tuple[int, ...] | None = None
    source_exprs: list[str] | None = None
    _dim_table: DimensionTable | None = field(default=None, repr=False)
    _relations: "RelationSpace | None" = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.algebra.n

    @property
    def dim(self) -> int:
        return len(self.basis)


def _root_label(r: Root) -> str:
    return f"e[{r.j},{r.i}]"


def tangent_from_word(algebra: UqAlgebra, word) -> TangentSpace:
    """Span of the Lusztig root vectors of a reduced word of the longest
    element, ordered by the word's convex order."""
    word = tuple(word)
    basis = root_vectors(algebra, word)
    betas = weyl.beta_sequence(word, algebra.n)
    _assert_independent(basis)
    return TangentSpace(
        algebra=algebra,
        basis=basis,
        weights=[b.weight(algebra.n) for b in betas],
        labels=[_root_label(b) for b in betas],
        roots=list(betas),
        word=word,
    )


def tangent_from_exprs(algebra: UqAlgebra, elems, names=None) -> TangentSpace:
    """Tangent space from explicit positive-part elements."""
    basis = list(elems)
    weights = []
    for x in basis:
        if not isinstance(x, UqElement):
            raise TypeError("tangent_from_exprs expects UqElements")
        if not x.is_positive_part():
            raise ValueError(f"not in the positive part: {x.render()}")
        weights.append(x.weight())  # raises if inhomogeneous
    _assert_independent(basis)
    n = algebra.n
    roots = []
    for w in weights:
        hits = [r for r in weyl.positive_roots(n) if r.weight(n) == w]
        roots.append(hits[0] if hits else None)
    have_roots = all(r is not None for r in roots) and len(set(roots)) == len(roots)
    labels = (
        [_root_label(r) for r in roots]
        if have_roots
        else [f"e{k + 1}" for k in range(len(basis))]
    )
    return TangentSpace(
        algebra=algebra,
        basis=basis,
        weights=weights,
        labels=labels,
        roots=list(roots) if have_roots else None,
        source_exprs=[x.render() for x in basis] if names is None else list(names),
    )


def _assert_independent(basis):
    sp = Span()
    for x in basis:
        if not sp.add(dict(x.eword_coords())):
            raise ValueError(f"tangent basis is linearly dependent at {x.render()}")


# -- coideal verdicts ---------------------------------------------------------


@dataclass
class CoidealWitness:
    basis_label: str
    group_monomial: str
    residue: str

    def as_json_dict(self):
        return {
            "basis_element": self.basis_label,
            "tensor_component": self.group_monomial,
            "residue": self.residue,
        }


@dataclass
class CoidealReport:
    verdict: str  # two_sided | left_only | right_only | neither
    witnesses: dict[str, CoidealWitness]

    def as_json_dict(self):
        return {
            "verdict": self.verdict,
            "witness": {s: w.as_json_dict() for s, w in self.witnesses.items()},
        }


def _strip_k(mono):
    f, kv, e = mono
    return (f, tuple(0 for _ in kv), e)


def coideal_check(t: TangentSpace) -> CoidealReport:
    """Decide on which sides span(T) + C1 is a coideal of the full-flag
    dual.  K factors are erased in the tested leg (restriction to the flag
    subalgebra sends K_i to the counit); the other leg only groups terms."""
    alg = t.algebra
    unit_mono = ((), (0,) * alg.n, ())
    member = Span()
    member.add({unit_mono: ONE})
    for x in t.basis:
        member.add({((), (0,) * alg.n, w): c for w, c in x.eword_coords().items()})

    witnesses: dict[str, CoidealWitness] = {}
    for x, label in zip(t.basis, t.labels):
        delta = coproduct(x)
        right_groups: dict = {}
        left_groups: dict = {}
        for (m1, m2), c in delta.terms.items():
            g = right_groups.setdefault(m2, {})
            _acc_dict(g, _strip_k(m1), c)
            g = left_groups.setdefault(m1, {})
            _acc_dict(g, _strip_k(m2), c)
        for side, groups in (("right", right_groups), ("left", left_groups)):
            if side in witnesses:
                continue
            for key, vec in sorted(groups.items()):
                residue = member.reduce(dict(vec))
                if residue:
                    from qflag.uqsl import _mono_str

                    witnesses[side] = CoidealWitness(
                        basis_label=label,
                        group_monomial=_mono_str(key, alg.n),
                        residue=UqElement(alg, residue).render(),
                    )
                    break
    if not witnesses:
        verdict = "two_sided"
    elif "right" in witnesses and "left" in witnesses:
        verdict = "neither"
    elif "right" in witnesses:
        verdict = "left_only"
    else:
        verdict = "right_only"
    return CoidealReport(verdict, witnesses)


def _acc_dict(d, k, c):
    s = d.get(k, ZERO) + c
    if s:
        d[k] = s
    else:
        d.pop(k, None)


# -- quadratic relations -------------------------------------------------------


@dataclass
class RelationSpace:
    """Per-weight bases of the degree-two relations, over the cotangent
    alphabet dual to the tangent basis."""

    alphabet: Alphabet
    order: DegLex
    by_weight: dict[tuple[int, ...], list[FreeElement]]

    def all_relations(self) -> list[FreeElement]:
        out = []
        for w in sorted(self.by_weight):
            out.extend(self.by_weight[w])
        return out

    def total_dim(self) -> int:
        return sum(len(v) for v in self.by_weight.values())

    def render(self) -> dict[str, list[str]]:
        return {
            "+".join(map(str, w)) or "0": [r.render(self.alphabet, self.order) for r in rels]
            for w, rels in sorted(self.by_weight.items())
        }


def cotangent_alphabet(t: TangentSpace) -> Alphabet:
    return Alphabet(tuple(t.labels), tuple(t.weights))


def quadratic_relations(t: TangentSpace) -> RelationSpace:
    """The degree-two ideal of the maximal prolongation: per weight mu, the
    annihilator of C_mu = {c : sum c_kl X_k X_l in span(T)} under the
    pairing matching e_k (x) e_l with X_k X_l."""
    if t._relations is not None:
        return t._relations
    d = t.dim
    pair_weights: dict[tuple[int, ...], list[tuple[int, int]]] = {}
    for k in range(d):
        for l in range(d):
            mu = tuple(a + b for a, b in zip(t.weights[k], t.weights[l]))
            pair_weights.setdefault(mu, []).append((k, l))
    by_weight = {}
    for mu in sorted(pair_weights):
        pairs = pair_weights[mu]
        rows = []
        for (k, l) in pairs:
            rows.append((t.basis[k] * t.basis[l]).eword_coords())
        members = [m for m in range(d) if t.weights[m] == mu]
        for m in members:
            rows.append(t.basis[m].eword_coords())
        combos = nullspace_combinations(rows)
        c_mu = []
        for combo in combos:
            vec = {pairs[i]: c for i, c in combo.items() if i < len(pairs)}
            if vec:
                c_mu.append(vec)
        ann = annihilator(c_mu, pairs)
        rels = [FreeElement(vec) for vec in rref(ann, pairs)]
        if rels:
            by_weight[mu] = rels
    alphabet = cotangent_alphabet(t)
    t._relations = RelationSpace(alphabet, DegLex(size=d), by_weight)
    return t._relations


def exterior_dims(
    t: TangentSpace, kmax: int | None = None, early_stop: bool = False
) -> DimensionTable:
    """Graded dimensions of the quantum exterior algebra (quotient of the
    tensor algebra on the cotangent space by the degree-two relations).

    With early_stop, counting aborts at the first degree whose dimension
    differs from the classical binomial; the table is then marked
    non-classical and truncated_at records the last computed degree.
    """
    d = t.dim
    if kmax is None:
        kmax = d + 1
    cached = t._dim_table
    if cached is not None and cached.truncated_at is None and len(cached.dims) - 1 == kmax:
        return cached
    rel = quadratic_relations(t)
    gb = complete_truncated(rel.all_relations(), rel.order, 0, rel.alphabet)
    dims = []
    classical: bool | None = None
    truncated = None
    for k in range(kmax + 1):
        gb.extend_to(k)
        dims.append(len(gb.normal_words(k)))
        if early_stop and dims[k] != comb(d, k):
            classical = False
            truncated = k
            break
    if classical is None:
        if kmax >= d + 1:
            classical = all(dims[k] == comb(d, k) for k in range(d + 1)) and all(
                x == 0 for x in dims[d + 1 :]
            )
        else:
            classical = None  # not enough degrees to certify either way
    gb.extend_to(len(dims))
    table = DimensionTable(dims, classical, truncated)
    if truncated is None and kmax >= d + 1:
        t._dim_table = table
    return table


# -- module structure of the cotangent space ------------------------------------


def cotangent_action(t: TangentSpace, a: int, b: int) -> list[list[RatQ]]:
    """Matrix of the right action of u[a,b] on the cotangent basis: column
    gamma lists the coordinates <X_m, u_gamma u_ab> over the basis order.
    Requires root-labelled bases (each e_gamma realized by the word u_gamma)."""
    if t.roots is None:
        raise ValueError("cotangent_action needs a root-labelled tangent space")
    n = t.n
    cols = []
    for r in t.roots:
        word = ((r.j, r.i), (a, b))
        cols.append([oq.pair(x, word) for x in t.basis])
    return cols


# -- associated graded ------------------------------------------------------------


def gr_leading_relations(t: TangentSpace) -> RelationSpace:
    """Leading parts of the degree-two relations under the graded
    reverse-lexicographic order on multidegrees over the convex order:
    among equal total degrees, a smaller exponent on a smaller generator
    means a higher class.  (This is the order under which the two-term
    q-commutation part of a nested-pair relation dominates its prime-pair
    term, as the associated-graded presentation requires.)"""
    if t.roots is None:
        raise ValueError("gr_leading_relations needs a root-labelled tangent space")
    rel = quadratic_relations(t)
    d = t.dim

    def word_class(word):
        m = [0] * d
        for g in word:
            m[g] += 1
        return tuple(-x for x in m)

    by_weight = {}
    for mu, rels in rel.by_weight.items():
        classes = sorted(
            {word_class(w) for r in rels for w in r.terms}, reverse=True
        )
        coords = sorted(
            {w for r in rels for w in r.terms},
            key=lambda w: (classes.index(word_class(w)), w),
        )
        rows = rref([dict(r.terms) for r in rels], coords)
        leads = []
        for row in rows:
            top = min(classes.index(word_class(w)) for w in row)
            leads.append(
                FreeElement({w: c for w, c in row.items() if classes.index(word_class(w)) == top})
            )
        lead_coords = sorted({w for l in leads for w in l.terms})
        by_weight[mu] = [
            FreeElement(r) for r in rref([dict(l.terms) for l in leads], lead_coords)
        ]
    return RelationSpace(rel.alphabet, rel.order, by_weight)


# -- Frobenius data ----------------------------------------------------------------


@dataclass
class FrobeniusReport:
    top_degree: int
    top_dimension: int
    pairing_nondegenerate: dict[int, bool]
    nakayama_sign: dict[str, int]
    note: str | None = None

    def as_json_dict(self):
        return {
            "top_degree": self.top_degree,
            "top_dimension": self.top_dimension,
            "pairing_nondegenerate": {str(k): v for k, v in self.pairing_nondegenerate.items()},
            "nakayama_sign": dict(self.nakayama_sign),
            "note": self.note,
        }


def frobenius_report(t: TangentSpace) -> FrobeniusReport:
    d = t.dim
    table = exterior_dims(t, d + 1)
    dims = table.dims
    nonzero = [k for k, x in enumerate(dims) if x]
    if dims[-1] != 0:
        return FrobeniusReport(len(dims) - 1, dims[-1], {}, {}, note="dimensions do not vanish")
    top = max(nonzero)
    rel = quadratic_relations(t)
    gb = complete_truncated(rel.all_relations(), rel.order, top + 1, rel.alphabet)
    report = FrobeniusReport(top, dims[top], {}, {})
    if dims[top] != 1:
        report.note = "top dimension is not one; Nakayama data skipped"
        return report
    topword = gb.normal_words(top)[0]

    def top_coeff(elem: FreeElement) -> RatQ:
        out = gb.reduce(elem)
        if not out:
            return ZERO
        assert set(out.terms) == {topword}
        return out.terms[topword]

    # pairing nondegeneracy per complementary degree pair
    for k in range(top + 1):
        rows_k = gb.normal_words(k)
        rows_c = gb.normal_words(top - k)
        if len(rows_k) != len(rows_c):
            report.pairing_nondegenerate[k] = False
            continue
        mat = []
        for u in rows_k:
            mat.append(
                {
                    v: c
                    for v in rows_c
                    if (c := top_coeff(FreeElement.monomial(u + v)))
                }
            )
        report.pairing_nondegenerate[k] = rank(mat) == len(rows_k)
    # Nakayama sign on each generator
    for g in range(d):
        others = tuple(x for x in range(d) if x != g)
        c1 = top_coeff(FreeElement.monomial((g,) + others))
        c2 = top_coeff(FreeElement.monomial(others + (g,)))
        if not c1 or not c2:
            report.note = "generator pairs trivially with its complement"
            continue
        ratio = c1 / c2
        report.nakayama_sign[t.labels[g]] = 1 if ratio == ONE else (-1 if ratio == -ONE else 0)
    return report


# -- line modules -------------------------------------------------------------------


def line_decomposition(t: TangentSpace, k: int) -> list[tuple[int, ...]]:
    """Weights of the line modules in degree k: sums over increasing
    k-tuples of basis weights (multiset, sorted).  Requires a classical
    calculus so that wedge labels are valid."""
    table = exterior_dims(t)
    if not table.classical:
        raise ValueError("line decomposition requires a calculus of classical dimension")
    from itertools import combinations

    out = []
    for combo in combinations(range(t.dim), k):
        out.append(tuple(sum(t.weights[i][a] for i in combo) for a in range(t.n)))
    return sorted(out)


# -- Grassmannian restriction ---------------------------------------------------------


def _cartan_pair(n: int, kv, mu) -> int:
    out = 0
    for i in range(n):
        v = kv[i]
        if v:
            for j in range(n):
                m = mu[j]
                if m:
                    a = 2 if i == j else (-1 if abs(i - j) == 1 else 0)
                    out += v * a * m
    return out


def _strip_k_phased(alg: UqAlgebra, terms: dict) -> dict:
    """Project onto K-free coordinates modulo right multiplication by
    K^v - 1: the monomial f K^v e equals q^{(v, wt e)} f e K^v, so its
    class is q^{(v, wt e)} (f, 0, e)."""
    n = alg.n
    zero = (0,) * n
    out: dict = {}
    for (f, kv, e), c in terms.items():
        if any(kv):
            mu = [0] * n
            for l in e:
                mu[l - 1] += 1
            c = c * RatQ.q_power(_cartan_pair(n, kv, mu))
        _acc_dict(out, (f, zero, e), c)
    return out


def _kfree_monomials(alg: UqAlgebra, mu, e_max: int, f_max: int):
    """Normal K-free monomials (f, 0, e) of weight mu within degree bounds."""
    n = alg.n
    zero = (0,) * n
    alg._serre.extend_to(max(e_max, f_max) + 1)
    by_weight_e: dict = {}
    by_weight_f: dict = {}
    for deg in range(max(e_max, f_max) + 1):
        for w0 in alg._serre.normal_words(deg):
            word = tuple(g + 1 for g in w0)
            wt = [0] * n
            for l in word:
                wt[l - 1] += 1
            if deg <= e_max:
                by_weight_e.setdefault(tuple(wt), []).append(word)
            if deg <= f_max:
                by_weight_f.setdefault(tuple(-x for x in wt), []).append(word)
    out = []
    for fwt, fwords in by_weight_f.items():
        ewt = tuple(m - fw for m, fw in zip(mu, fwt))
        for ew in by_weight_e.get(ewt, []):
            for fw in fwords:
                out.append((fw, zero, ew))
    return out


def grassmann_restriction(t: TangentSpace, r: int) -> tuple[TangentSpace, bool]:
    """Restrict a nice-word tangent space to the r-plane Grassmannian: keep
    the root vectors whose root contains alpha_r, and check that their span
    is closed under the adjoint action of the Levi generators (all K_i,
    plus E_j, F_j for j in S = Pi minus alpha_r).

    Membership is taken in the restricted dual: a functional on the
    Grassmannian subalgebra kills every right multiple X E_j, X F_j (j in S)
    and identifies X K_i^{+-1} with X, so closure is tested modulo the span
    of those right multiples (a certified membership computation)."""
    alg = t.algebra
    n = alg.n
    if t.word is None or tuple(t.word) != weyl.nice_word(n):
        raise ValueError("grassmann_restriction expects the nice-word tangent space")
    if not 1 <= r <= n:
        raise ValueError(f"crossed node r must lie in 1..{n}")
    keep = [k for k, root in enumerate(t.roots) if root.i <= r < root.j]
    sub = TangentSpace(
        algebra=alg,
        basis=[t.basis[k] for k in keep],
        weights=[t.weights[k] for k in keep],
        labels=[t.labels[k] for k in keep],
        roots=[t.roots[k] for k in keep],
        word=None,
        source_exprs=[t.basis[k].render() for k in keep],
    )
    levi = [("K", i, 1) for i in range(1, n + 1)] + [("K", i, -1) for i in range(1, n + 1)]
    for j in range(1, n + 1):
        if j != r:
            levi.extend([("E", j), ("F", j)])
    candidates = []
    for g in levi:
        for x in sub.basis:
            y = adjoint(alg, g, x)
            if y:
                candidates.append(y)
    member = Span()
    for x in sub.basis:
        member.add(_strip_k_phased(alg, x.terms))
    e_max = max(
        [x.e_degree() for x in sub.basis]
        + [max((len(e) for (_f, _kv, e) in y.terms), default=0) for y in candidates]
    )
    f_max = 1 + max(
        max((len(f) for (f, _kv, _e) in y.terms), default=0) for y in candidates
    )
    weights_needed = set()
    for y in candidates:
        try:
            weights_needed.add(y.weight())
        except ValueError:
            weights_needed.update({y.mono_weight(m) for m in y.terms})
    gens_s = [j for j in range(1, n + 1) if j != r]
    for mu in sorted(weights_needed):
        for j in gens_s:
            alpha = tuple(1 if a == j - 1 else 0 for a in range(n))
            for kind, gelem, gw in (("E", alg.E(j), alpha), ("F", alg.F(j), tuple(-x for x in alpha))):
                target = tuple(m - w for m, w in zip(mu, gw))
                for mono in _kfree_monomials(alg, target, e_max, f_max - 1):
                    prod = UqElement(alg, {mono: ONE}) * gelem
                    if prod:
                        member.add(_strip_k_phased(alg, prod.terms))
    closed = all(
        member.contains(_strip_k_phased(alg, y.terms)) for y in candidates
    )
    return sub, closed


# -- antiholomorphic kernels -------------------------------------------------------------


def dbar_kernel(span_words, t: TangentSpace) -> tuple[int, list[OqElement]]:
    """Joint kernel of the left actions of all tangent basis vectors on the
    span of the given words, modulo functional equality in O_q.

    Returns (dimension, basis of representatives); the dimension is taken
    in the quotient of the span by its subspace of functionally-zero
    elements.
    """
    n = t.n
    words = []
    for w in span_words:
        w = tuple(tuple(p) for p in w)
        if w not in words:
            words.append(w)
    if not words:
        return 0, []
    k = len(words[0])
    if any(len(w) != k for w in words):
        raise ValueError("span words must share one length")
    span_mats = rep_span(n, k)

    def zero_conditions(images: list[OqElement]) -> list[dict]:
        """Rows of the system <condition matrix> . x = 0 over word indices."""
        rows = []
        for mat in span_mats:
            row = {}
            for j, img in enumerate(images):
                s = ZERO
                for w, c in img.terms.items():
                    key = (tuple(a for a, _ in w), tuple(b for _, b in w))
                    m = mat.get(key)
                    if m:
                        s = s + c * m
                if s:
                    row[j] = s
            if row:
                rows.append(row)
        return rows

    basis_elems = [OqElement(n, {w: ONE}) for w in words]
    conditions: list[dict] = []
    for x in t.basis:
        conditions.extend(zero_conditions([left_act(x, e) for e in basis_elems]))
    solutions = annihilator(conditions, list(range(len(words))))
    # fold out the functionally-zero subspace of the input span
    null_basis = annihilator(zero_conditions(basis_elems), list(range(len(words))))
    ext = Span()
    for v in null_basis:
        ext.add(dict(v))
    reps = []
    for v in solutions:
        if ext.add(dict(v)):
            reps.append(OqElement(n, {words[j]: c for j, c in v.items()}))
    return len(reps), reps


# -- survey -------------------------------------------------------------------------------


@dataclass
class SurveyRow:
    representative: tuple[int, ...]
    verdict: str
    dims: list[int] | None
    classical: bool | None
    truncated_at: int | None

    def as_json_dict(self):
        return {
            "word": weyl.word_str(self.representative),
            "verdict": self.verdict,
            "dims": self.dims,
            "classical": self.classical,
            "truncated_at": self.truncated_at,
        }


def survey_rows(
    algebra: UqAlgebra, early_stop: bool = True, max_classes: int | None = None
) -> tuple[list[SurveyRow], int]:
    """One row per commutation class of reduced words of the longest
    element, in lexicographic representative order: coideal verdict,
    exterior dimensions (early-stopped at the first non-classical
    deviation), classical flag.

    Returns (rows, total_classes); when max_classes cuts the run short,
    len(rows) < total_classes and the caller must mark the truncation.
    """
    graph = weyl.commutation_classes(algebra.n)
    rows = []
    for rep in graph.reps if max_classes is None else graph.reps[:max_classes]:
        t = tangent_from_word(algebra, rep)
        rep_report = coideal_check(t)
        if rep_report.verdict == "neither":
            rows.append(SurveyRow(rep, rep_report.verdict, None, None, None))
            continue
        table = exterior_dims(t, early_stop=early_stop)
        rows.append(
            SurveyRow(rep, rep_report.verdict, table.dims, table.classical, table.truncated_at)
        )
    return rows, graph.num_classes
