"""Square-tiled surfaces as pairs of permutations.

Squares are numbered ``0 .. n-1`` internally; ``sig_a[s]`` is the right
neighbour of square ``s`` and ``sig_b[s]`` the one above.  The text format
and everything printed for humans is 1-based.

Every corner of every square is treated as a marked point, so a vertex is a
cycle of the turn map ``t = sig_b o sig_a o sig_b^-1 o sig_a^-1`` acting on
lower-left corners, and every row (column) of squares is a cylinder.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .group_words import IDENTITY, L, MINUS_I, Mat2, S, T

Perm = tuple[int, ...]


# ------------------------------------------------------------ permutations

def perm_inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def perm_compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """``p o q``: apply ``q`` first."""
    return tuple(p[v] for v in q)


def perm_cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for s in range(len(p)):
        if seen[s]:
            continue
        cyc = []
        while not seen[s]:
            seen[s] = True
            cyc.append(s)
            s = p[s]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Sequence[int]) -> Counter:
    return Counter(len(c) for c in perm_cycles(p))


def perm_from_cycles(cycles: Iterable[Iterable[int]], n: int, base: int = 1) -> Perm:
    p = list(range(n))
    seen = set()
    for cyc in cycles:
        cyc = [c - base for c in cyc]
        for i, v in enumerate(cyc):
            if v in seen or not 0 <= v < n:
                raise ValueError(f"bad cycle entry {v + base}")
            seen.add(v)
            p[v] = cyc[(i + 1) % len(cyc)]
    return tuple(p)


def _is_perm(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


# ------------------------------------------------------------------ origami

@dataclass(frozen=True)
class Origami:
    sig_a: Perm
    sig_b: Perm

    def __post_init__(self):
        object.__setattr__(self, "sig_a", tuple(self.sig_a))
        object.__setattr__(self, "sig_b", tuple(self.sig_b))
        if len(self.sig_a) != len(self.sig_b):
            raise ValueError("permutations act on different sets")
        if not (_is_perm(self.sig_a) and _is_perm(self.sig_b)):
            raise ValueError("sig_a and sig_b must be permutations of 0..n-1")

    @property
    def n(self) -> int:
        return len(self.sig_a)

    def is_connected(self) -> bool:
        return len(_component(self, 0)) == self.n

    def check(self) -> "Origami":
        if not self.is_connected():
            raise ValueError("the permutations do not act transitively")
        return self

    def turn(self) -> Perm:
        a, b = self.sig_a, self.sig_b
        ai, bi = perm_inverse(a), perm_inverse(b)
        return tuple(b[a[bi[ai[s]]]] for s in range(self.n))

    def relabel(self, pi: Sequence[int]) -> "Origami":
        """Origami whose square ``pi[s]`` plays the role of square ``s``."""
        a, b = self.sig_a, self.sig_b
        na, nb = [0] * self.n, [0] * self.n
        for s in range(self.n):
            na[pi[s]] = pi[a[s]]
            nb[pi[s]] = pi[b[s]]
        return Origami(tuple(na), tuple(nb))

    def __str__(self):
        def fmt(p):
            return "".join("(" + ",".join(str(v + 1) for v in c) + ")"
                           for c in perm_cycles(p) if len(c) > 1) or "()"
        return f"{fmt(self.sig_a)}\n{fmt(self.sig_b)}"


def _component(o: Origami, start: int) -> set[int]:
    seen = {start}
    todo = [start]
    gens = (o.sig_a, o.sig_b, perm_inverse(o.sig_a), perm_inverse(o.sig_b))
    while todo:
        s = todo.pop()
        for g in gens:
            if g[s] not in seen:
                seen.add(g[s])
                todo.append(g[s])
    return seen


@dataclass(frozen=True)
class Vertex:
    squares: tuple[int, ...]  # squares having this point as lower-left corner, turning counterclockwise
    label: str | None = None

    @property
    def order(self) -> int:
        return len(self.squares)


def vertices(o: Origami) -> list[Vertex]:
    return [Vertex(c) for c in perm_cycles(o.turn())]


def vertex_index(o: Origami) -> list[int]:
    """Map square -> index (into ``vertices(o)``) of its lower-left corner."""
    idx = [0] * o.n
    for i, v in enumerate(vertices(o)):
        for s in v.squares:
            idx[s] = i
    return idx


def genus(o: Origami) -> int:
    chi = len(vertices(o)) - o.n
    return (2 - chi) // 2


def stratum(o: Origami) -> tuple[int, ...]:
    """Orders of the zeros, decreasing."""
    return tuple(sorted((v.order - 1 for v in vertices(o) if v.order > 1), reverse=True))


def cylinders(o: Origami, direction: str = "horizontal") -> list[tuple[int, int]]:
    """``(circumference, count)`` pairs, one cylinder per row/column."""
    p = {"horizontal": o.sig_a, "vertical": o.sig_b}[direction]
    return sorted(cycle_type(p).items())


# ------------------------------------------------------- isomorphisms

def _extend(o1: Origami, o2: Origami, s1: int, s2: int, gens1=None, gens2=None) -> list[int] | None:
    """The unique isomorphism sending ``s1`` to ``s2``, if any."""
    n = o1.n
    if gens1 is None:
        gens1 = (o1.sig_a, o1.sig_b, perm_inverse(o1.sig_a), perm_inverse(o1.sig_b))
    if gens2 is None:
        gens2 = (o2.sig_a, o2.sig_b, perm_inverse(o2.sig_a), perm_inverse(o2.sig_b))
    psi = [-1] * n
    used = [False] * n
    psi[s1] = s2
    used[s2] = True
    todo = [s1]
    while todo:
        u = todo.pop()
        pu = psi[u]
        for g1, g2 in zip(gens1, gens2):
            v, w = g1[u], g2[pu]
            if psi[v] == -1:
                if used[w]:
                    return None
                psi[v] = w
                used[w] = True
                todo.append(v)
            elif psi[v] != w:
                return None
    if -1 in psi:
        raise ValueError("origami is not connected")
    return psi


def _square_signature(o: Origami) -> list[tuple[int, int, int]]:
    turn_len = [0] * o.n
    for c in perm_cycles(o.turn()):
        for s in c:
            turn_len[s] = len(c)
    a_len = [0] * o.n
    for c in perm_cycles(o.sig_a):
        for s in c:
            a_len[s] = len(c)
    b_len = [0] * o.n
    for c in perm_cycles(o.sig_b):
        for s in c:
            b_len[s] = len(c)
    return list(zip(turn_len, a_len, b_len))


def isomorphisms(o1: Origami, o2: Origami, limit: int | None = None) -> list[list[int]]:
    """All square bijections ``psi`` with ``psi o sig = sig o psi`` for both permutations."""
    if o1.n != o2.n:
        return []
    sig1, sig2 = _square_signature(o1), _square_signature(o2)
    gens1 = (o1.sig_a, o1.sig_b, perm_inverse(o1.sig_a), perm_inverse(o1.sig_b))
    gens2 = (o2.sig_a, o2.sig_b, perm_inverse(o2.sig_a), perm_inverse(o2.sig_b))
    # base square from the rarest signature class keeps the candidate list short
    counts = Counter(sig1)
    base = min(range(o1.n), key=lambda s: (counts[sig1[s]], sig1[s], s))
    out = []
    for t in range(o2.n):
        if sig2[t] != sig1[base]:
            continue
        psi = _extend(o1, o2, base, t, gens1, gens2)
        if psi is not None:
            out.append(psi)
            if limit is not None and len(out) >= limit:
                break
    return out


def is_isomorphic(o1: Origami, o2: Origami) -> list[int] | None:
    found = isomorphisms(o1, o2, limit=1)
    return found[0] if found else None


def translations(o: Origami) -> list[list[int]]:
    return isomorphisms(o, o)


def element_order(p: Sequence[int]) -> int:
    from math import lcm
    out = 1
    for c in perm_cycles(p):
        out = lcm(out, len(c))
    return out


def _bfs_form(o: Origami, base: int, ai: Perm, bi: Perm) -> tuple[Perm, Perm]:
    n = o.n
    num = [-1] * n
    order = [base]
    num[base] = 0
    gens = (o.sig_a, ai, o.sig_b, bi)
    head = 0
    while head < len(order):
        u = order[head]
        head += 1
        for g in gens:
            v = g[u]
            if num[v] == -1:
                num[v] = len(order)
                order.append(v)
    a, b = o.sig_a, o.sig_b
    return (tuple(num[a[u]] for u in order), tuple(num[b[u]] for u in order))


def canonical_form(o: Origami, exhaustive: bool = False) -> tuple[Perm, Perm]:
    """Isomorphism-invariant normal form of ``o``.

    Squares are renumbered breadth-first from a base square using the
    generator order a, a^-1, b, b^-1, and the lexicographically least pair
    wins.  By default only base squares in the rarest signature class
    (lower-left cone order, row length, column length) compete; that class
    is itself an invariant, so the result is still canonical.
    """
    ai, bi = perm_inverse(o.sig_a), perm_inverse(o.sig_b)
    if exhaustive:
        bases = range(o.n)
    else:
        sig = _square_signature(o)
        counts = Counter(sig)
        best = min(sig, key=lambda x: (counts[x], x))
        bases = [s for s in range(o.n) if sig[s] == best]
    return min(_bfs_form(o, s, ai, bi) for s in bases)


def canonical_origami(o: Origami) -> Origami:
    a, b = canonical_form(o)
    return Origami(a, b)


# ------------------------------------------------------------- coverings

@dataclass(frozen=True)
class Covering:
    source: Origami
    target: Origami
    phi: tuple[int, ...]

    @property
    def degree(self) -> int:
        return self.source.n // self.target.n

    def validate(self) -> "Covering":
        src, tgt, phi = self.source, self.target, self.phi
        if len(phi) != src.n:
            raise ValueError("phi must be defined on every source square")
        for s in range(src.n):
            if phi[src.sig_a[s]] != tgt.sig_a[phi[s]] or phi[src.sig_b[s]] != tgt.sig_b[phi[s]]:
                raise ValueError(f"phi does not commute with the gluings at square {s + 1}")
        fibres = Counter(phi)
        if src.n % tgt.n or any(fibres[t] != self.degree for t in range(tgt.n)):
            raise ValueError("fibres of phi have unequal sizes")
        return self

    def then(self, other: "Covering") -> "Covering":
        """Composite ``other o self``."""
        return Covering(self.source, other.target, tuple(other.phi[v] for v in self.phi))


def ram_data(c: Covering, target_vertex: int) -> tuple[int, ...]:
    """Ramification indices over the target vertex with index ``target_vertex``."""
    tv = vertices(c.target)
    t_idx = vertex_index(c.target)
    ell = tv[target_vertex].order
    out = []
    for w in vertices(c.source):
        if t_idx[c.phi[w.squares[0]]] != target_vertex:
            continue
        e, r = divmod(w.order, ell)
        if r:
            raise ValueError("non-integral ramification index: not a covering")
        out.append(e)
    return tuple(sorted(out, reverse=True))


def ram_data_at_square(c: Covering, square: int) -> tuple[int, ...]:
    """Ramification data over the lower-left corner of a target square."""
    return ram_data(c, vertex_index(c.target)[square])


def rh_check(c: Covering) -> bool:
    total = 0
    for v in range(len(vertices(c.target))):
        total += sum(e - 1 for e in ram_data(c, v))
    return 2 * genus(c.source) - 2 == c.degree * (2 * genus(c.target) - 2) + total


# ------------------------------------------------------- SL(2,Z) action

def _apply_generator(g: str, o: Origami) -> tuple[Origami, Perm]:
    """Image of ``o`` under one generator, plus the corner map.

    The corner map sends square ``s`` to the square of the image whose
    lower-left corner is the image of the lower-left corner of ``s``.
    """
    a, b = o.sig_a, o.sig_b
    ident = tuple(range(o.n))
    if g == "T":
        return Origami(a, perm_compose(b, perm_inverse(a))), ident
    if g == "t":
        return Origami(a, perm_compose(b, a)), ident
    if g == "L":
        return Origami(perm_compose(a, perm_inverse(b)), b), ident
    if g == "l":
        return Origami(perm_compose(a, b), b), ident
    if g == "-":
        na, nb = perm_inverse(a), perm_inverse(b)
        return Origami(na, nb), tuple(nb[na[s]] for s in range(o.n))
    if g == "S":
        # rotation by +90 degrees; old lower-left becomes new lower-right
        na, nb = perm_inverse(b), a
        return Origami(na, nb), na
    raise ValueError(f"unknown generator {g!r}")


_GEN_MATRIX = {"T": T, "t": T.inverse(), "L": L, "l": L.inverse(), "-": MINUS_I, "S": S}


def sl2_word(m: Mat2) -> str:
    """Word over T, t=T^-1, L, l=L^-1 and '-' (for -I) whose product is ``m``."""
    a, b, c, d = m.entries()
    steps: list[str] = []
    # left-multiply by powers of T^-1 / L^-1 until the first column is (+-1, 0)
    while c != 0:
        if a == 0:  # then c = +-1
            q = -c
            a, b = a - q * c, b - q * d
            steps.append(("T" if q > 0 else "t") * abs(q))
        elif abs(a) > abs(c):
            q = a // c
            a, b = a - q * c, b - q * d
            steps.append(("T" if q > 0 else "t") * abs(q))
        else:
            q = c // a
            c, d = c - q * a, d - q * b
            steps.append(("L" if q > 0 else "l") * abs(q))
    if a == -1:
        steps.append("-")
        a, b, d = 1, -b, 1
    steps.append(("T" if b > 0 else "t") * abs(b))
    return "".join(steps)


def word_matrix(word: str) -> Mat2:
    out = IDENTITY
    for ch in word:
        out = out @ _GEN_MATRIX[ch]
    return out


def sl2_action(g: str, o: Origami) -> Origami:
    """Image of ``o`` under T, L, S or -I (``g`` in ``{"T", "L", "S", "-I"}``)."""
    return _apply_generator("-" if g == "-I" else g, o)[0]


def matrix_action_with_corners(m: Mat2, o: Origami) -> tuple[Origami, Perm]:
    word = sl2_word(m)
    corners = tuple(range(o.n))
    for g in reversed(word):
        o, step = _apply_generator(g, o)
        corners = tuple(step[v] for v in corners)
    return o, corners


def matrix_action(m: Mat2, o: Origami) -> Origami:
    """The origami ``m . o`` obtained by applying the affine map with derivative ``m``.

    This is a left action: ``matrix_action(m1 @ m2, o)`` is isomorphic to
    ``matrix_action(m1, matrix_action(m2, o))``.
    """
    return matrix_action_with_corners(m, o)[0]


def veech_contains(m: Mat2, o: Origami) -> bool:
    return is_isomorphic(matrix_action(m, o), o) is not None


@dataclass
class OrbitResult:
    size: int
    complete: bool
    stabilizer: list[Mat2] = field(default_factory=list)
    edges: list[tuple[int, str, int]] = field(default_factory=list)
    reps: list[Mat2] = field(default_factory=list)
    reason: str = ""


def worker_count() -> int:
    """Worker processes for orbit searches, capped by ``ORIGAMI_THREADS``."""
    env = os.environ.get("ORIGAMI_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


_ORBIT_GENS = (("T", T), ("t", T.inverse()), ("S", S))


def _neighbour_forms(o: Origami) -> list[tuple[Perm, Perm]]:
    return [canonical_form(_apply_generator(name, o)[0]) for name, _ in _ORBIT_GENS]


def veech_orbit(o: Origami, max_orbit: int = 10_000, budget: float = 60.0,
                workers: int | None = None) -> OrbitResult:
    """Orbit of ``o`` under SL(2,Z) (generated by T and S), with Schreier generators.

    ``reps[i]`` maps ``o`` to the ``i``-th orbit point; every closed edge
    ``g . o_i = o_j`` contributes ``reps[j]^-1 g reps[i]`` to the stabilizer.
    -I is added when it stabilises ``o``.  Neighbours of a batch of orbit points
    are canonicalised in parallel but merged in breadth-first order, so the
    result does not depend on the number of workers.
    """
    start = time.monotonic()
    workers = workers or worker_count()
    base = canonical_form(o)
    index = {base: 0}
    forms = [Origami(*base)]
    reps = [IDENTITY]
    edges: list[tuple[int, str, int]] = []
    stab: set[Mat2] = set()
    if veech_contains(MINUS_I, o):
        stab.add(MINUS_I)
    head = 0
    complete = True
    reason = ""
    pool = None
    try:
        while head < len(forms) and complete:
            if time.monotonic() - start > budget:
                complete, reason = False, f"time budget {budget:g}s exhausted"
                break
            batch = forms[head:head + max(1, 16 * workers)]
            if workers > 1 and len(batch) >= 4 * workers:
                if pool is None:
                    pool = ProcessPoolExecutor(max_workers=workers)
                images = list(pool.map(_neighbour_forms, batch, chunksize=4))
            else:
                images = [_neighbour_forms(f) for f in batch]
            for imgs in images:
                for (name, g), img in zip(_ORBIT_GENS, imgs):
                    j = index.get(img)
                    if j is None:
                        if len(forms) >= max_orbit:
                            complete, reason = False, f"orbit size limit {max_orbit} reached"
                            break
                        j = len(forms)
                        index[img] = j
                        forms.append(Origami(*img))
                        reps.append(g @ reps[head])
                    else:
                        s = reps[j].inverse() @ g @ reps[head]
                        if s != IDENTITY:
                            stab.add(s)
                    edges.append((head, name, j))
                if not complete:
                    break
                head += 1
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
    gens_out = sorted(stab, key=lambda m: (sum(abs(x) for x in m.entries()), m.entries()))
    return OrbitResult(len(forms), complete, gens_out, edges, reps, reason)


# ------------------------------------------------------------ text format

def dumps(o: Origami, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"origami n={o.n}")
    lines.append("a " + " ".join(str(v + 1) for v in o.sig_a))
    lines.append("b " + " ".join(str(v + 1) for v in o.sig_b))
    return "\n".join(lines) + "\n"


def loads(text: str) -> Origami:
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln and not ln.startswith("#")]
    if len(rows) != 3 or not rows[0].startswith("origami n="):
        raise ValueError("expected 'origami n=<n>', 'a ...' and 'b ...' lines")
    n = int(rows[0].split("=", 1)[1])
    perms = {}
    for row in rows[1:]:
        key, *vals = row.split()
        if key not in ("a", "b") or len(vals) != n:
            raise ValueError(f"malformed permutation line {row[:40]!r}")
        perms[key] = tuple(int(v) - 1 for v in vals)
    return Origami(perms["a"], perms["b"])
