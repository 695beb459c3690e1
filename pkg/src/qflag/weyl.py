"""Type-A root system and Weyl group combinatorics.

The Weyl group of rank n is the symmetric group on n+1 letters; positive
roots are pairs (i, j) with 1 <= i < j <= n+1 standing for e_i - e_j.
Words are tuples of simple-reflection indices in 1..n.  A reduced word of
the longest element induces the beta sequence, which enumerates the
positive roots in the convex order attached to the word; that sequence is
the canonical convex order everywhere in this package.

Permutations are one-line arrays f with f[a] = image of a (1-based values
stored 0-based); appending a letter j to a word multiplies on the right,
i.e. swaps positions j, j+1 of the array.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import NamedTuple


class Root(NamedTuple):
    i: int
    j: int

    def __str__(self):
        return f"a[{self.i},{self.j}]"

    def weight(self, n: int) -> tuple[int, ...]:
        """Coordinates in the simple-root basis: alpha_i + ... + alpha_{j-1}."""
        return tuple(1 if self.i <= a < self.j else 0 for a in range(1, n + 1))


DEFAULT_RANK_CAP = 6


def rank_cap() -> int:
    return int(os.environ.get("QFLAG_RANK_CAP", DEFAULT_RANK_CAP))


def check_rank(n: int, cap: int | None = None):
    cap = rank_cap() if cap is None else cap
    if not 1 <= n <= cap:
        raise ValueError(f"rank must satisfy 1 <= n <= {cap} (got {n})")


def simple_roots(n: int) -> list[Root]:
    return [Root(i, i + 1) for i in range(1, n + 1)]


def positive_roots(n: int) -> list[Root]:
    return [Root(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 2)]


def root_pairing(beta: Root, gamma: Root) -> int:
    """Euclidean inner product of e_i - e_j with e_k - e_l."""
    (i, j), (k, l) = beta, gamma
    return (i == k) - (i == l) - (j == k) + (j == l)


def prime_pair(beta: Root, gamma: Root) -> tuple[Root, Root]:
    """For an orthogonal nested pair {a_{ab}, a_{cd}} with a < c < d < b,
    the crossing pair {a_{ad}, a_{cb}}, outer root first."""
    if root_pairing(beta, gamma) != 0:
        raise ValueError(f"{beta} and {gamma} are not orthogonal")
    for outer, inner in ((beta, gamma), (gamma, beta)):
        if outer.i < inner.i and inner.j < outer.j:
            return (Root(outer.i, inner.j), Root(inner.i, outer.j))
    raise ValueError(f"{beta} and {gamma} are not comparable (one nested in the other)")


# -- words and permutations -------------------------------------------------


def word_to_perm(w, n: int) -> tuple[int, ...]:
    perm = list(range(1, n + 2))
    for i in w:
        if not 1 <= i <= n:
            raise ValueError(f"letter {i} out of range 1..{n}")
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return tuple(perm)


def inversions(perm) -> int:
    return sum(
        1
        for a in range(len(perm))
        for b in range(a + 1, len(perm))
        if perm[a] > perm[b]
    )


@dataclass(frozen=True)
class WordProps:
    permutation: tuple[int, ...]
    length: int
    is_reduced: bool
    is_longest: bool


def word_props(w, n: int) -> WordProps:
    perm = word_to_perm(w, n)
    inv = inversions(perm)
    reduced = inv == len(w)
    top = n * (n + 1) // 2
    return WordProps(perm, inv, reduced, reduced and len(w) == top)


def nice_word(n: int) -> tuple[int, ...]:
    """(s_n s_{n-1} ... s_1)(s_n ... s_2) ... (s_n s_{n-1}) s_n."""
    out = []
    for start in range(1, n + 1):
        out.extend(range(n, start - 1, -1))
    return tuple(out)


def opposite_word(w, n: int) -> tuple[int, ...]:
    return tuple(n + 1 - i for i in w)


def beta_sequence(w, n: int) -> list[Root]:
    """The convex enumeration of the positive roots attached to a reduced
    word of the longest element."""
    props = word_props(w, n)
    if not props.is_longest:
        raise ValueError("beta_sequence requires a reduced word of the longest element")
    perm = list(range(1, n + 2))
    out = []
    for i in w:
        a, b = perm[i - 1], perm[i]
        if a > b:
            raise ValueError("word is not reduced")
        out.append(Root(a, b))
        perm[i - 1], perm[i] = b, a
    return out


# -- reduced words of the longest element ------------------------------------


def reduced_word_count(n: int) -> int:
    """Hook length formula on the staircase shape (n, n-1, ..., 1)."""
    shape = list(range(n, 0, -1))
    total = n * (n + 1) // 2
    hooks = 1
    for r, row in enumerate(shape):
        for c in range(row):
            arm = row - c - 1
            leg = sum(1 for rr in range(r + 1, len(shape)) if shape[rr] > c)
            hooks *= arm + leg + 1
    return math.factorial(total) // hooks


def reduced_words(n: int):
    """All reduced words of the longest element, by peeling right descents."""
    w0 = tuple(range(n + 1, 0, -1))
    out = []
    word = []

    def rec(perm):
        at_identity = True
        for i in range(1, n + 1):
            if perm[i - 1] > perm[i]:
                at_identity = False
                nxt = list(perm)
                nxt[i - 1], nxt[i] = nxt[i], nxt[i - 1]
                word.append(i)
                rec(tuple(nxt))
                word.pop()
        if at_identity:
            out.append(tuple(reversed(word)))

    rec(w0)
    return out


def _commutation_neighbors(w):
    for p in range(len(w) - 1):
        if abs(w[p] - w[p + 1]) >= 2:
            yield w[:p] + (w[p + 1], w[p]) + w[p + 2 :]


def _braid_neighbors(w):
    for p in range(len(w) - 2):
        a, b = w[p], w[p + 1]
        if w[p + 2] == a and abs(a - b) == 1:
            yield w[:p] + (b, a, b) + w[p + 3 :]


@dataclass
class ClassGraph:
    """Commutation classes of reduced words of the longest element, with an
    edge between two classes when some members differ by one braid move."""

    n: int
    reps: list[tuple[int, ...]]  # lexicographically smallest member per class
    sizes: list[int]
    edges: list[tuple[int, int]]
    class_of: dict[tuple[int, ...], int]

    @property
    def num_classes(self) -> int:
        return len(self.reps)

    def class_index(self, w) -> int:
        w = tuple(w)
        if w not in self.class_of:
            raise KeyError(f"{w} is not a reduced word of the longest element")
        return self.class_of[w]

    def neighbors(self, c: int) -> list[int]:
        out = set()
        for a, b in self.edges:
            if a == c:
                out.add(b)
            if b == c:
                out.add(a)
        return sorted(out)


def commutation_classes(n: int, cap: int | None = None) -> ClassGraph:
    check_rank(n)
    cap = rank_cap() if cap is None else cap
    if n > cap:
        raise ValueError(
            f"rank {n} above the class-enumeration cap {cap}: "
            f"{reduced_word_count(n)} reduced words would be required"
        )
    words = reduced_words(n)
    class_of: dict[tuple[int, ...], int] = {}
    classes: list[list[tuple[int, ...]]] = []
    for w in words:
        if w in class_of:
            continue
        cid = len(classes)
        stack, members = [w], []
        class_of[w] = cid
        while stack:
            u = stack.pop()
            members.append(u)
            for v in _commutation_neighbors(u):
                if v not in class_of:
                    class_of[v] = cid
                    stack.append(v)
        classes.append(members)
    # braid edges
    edges = set()
    for w, cid in class_of.items():
        for v in _braid_neighbors(w):
            other = class_of[v]
            if other != cid:
                edges.add((min(cid, other), max(cid, other)))
    # canonical order: sort classes by lexicographically smallest member
    reps = [min(members) for members in classes]
    order = sorted(range(len(classes)), key=lambda c: reps[c])
    relabel = {old: new for new, old in enumerate(order)}
    return ClassGraph(
        n=n,
        reps=[reps[c] for c in order],
        sizes=[len(classes[c]) for c in order],
        edges=sorted((relabel[a], relabel[b]) for a, b in edges),
        class_of={w: relabel[c] for w, c in class_of.items()},
    )


def involution_on_classes(graph: ClassGraph) -> list[int]:
    return [
        graph.class_of[opposite_word(rep, graph.n)] for rep in graph.reps
    ]


def word_str(w) -> str:
    if all(1 <= i <= 9 for i in w):
        return "".join(str(i) for i in w)
    return ",".join(str(i) for i in w)


def class_graph_dot(graph: ClassGraph, involution: bool = False) -> str:
    lines = ["graph commutation_classes {"]
    for c, rep in enumerate(graph.reps):
        lines.append(f'  c{c} [label="{word_str(rep)}"];')
    for a, b in graph.edges:
        lines.append(f"  c{a} -- c{b};")
    if involution:
        seen = set()
        for c, d in enumerate(involution_on_classes(graph)):
            key = (min(c, d), max(c, d))
            if key in seen:
                continue
            seen.add(key)
            if c == d:
                lines.append(f"  c{c} -- c{c} [color=blue, style=dashed];")
            else:
                lines.append(f"  c{key[0]} -- c{key[1]} [color=blue, style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
