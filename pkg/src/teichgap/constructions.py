"""Builders for E[2], X, Y(k), Z_k with labels and covering maps, plus their checks.

Square indexing (0-based internally):

* E[2]: squares 0..3 are the printed squares 1..4.
* X: square ``(i, h)`` (coset ``1 <= i <= 12``, position ``1 <= h <= 4``) has index
  ``4 (i - 1) + (h - 1)``.
* Y(k): square ``(i, h, j)`` with ``0 <= j < 2k`` has index ``48 j + X-index(i, h)``.
* Z_k: square ``(i, h, j, l)`` with ``l in {0, 1}`` has index ``96 k l + Y-index(i, h, j)``.

Copy indices are stored 0-based; human-facing labels print ``j + 1``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .group_words import MINUS_I, Mat2, X as X_MAT, Y as Y_MAT, coset_action
from .origami import (
    Covering, Origami, cylinders, genus, is_isomorphic, isomorphisms,
    matrix_action_with_corners, perm_from_cycles, rh_check, ram_data, stratum,
    translations, element_order, vertex_index, vertices,
)
from . import z3_data

CLASSES = ("P", "Q", "R", "S")  # class of the lower-left corner of a square at position h


# ------------------------------------------------------------ labelled data

@dataclass(frozen=True)
class LabeledOrigami:
    origami: Origami
    square_labels: tuple[tuple[int, ...], ...]
    vertex_labels: dict[int, str] = field(default_factory=dict)  # vertex index -> name
    fields: tuple[str, ...] = ()

    def square(self, *label: int) -> int:
        return self._square_lookup()[tuple(label)]

    def _square_lookup(self) -> dict[tuple[int, ...], int]:
        return {lab: s for s, lab in enumerate(self.square_labels)}

    def vertex_of(self, name: str) -> int:
        for v, lab in self.vertex_labels.items():
            if lab == name:
                return v
        raise KeyError(name)

    def vertex_at(self, *label: int) -> int:
        """Index of the vertex at the lower-left corner of the labelled square."""
        return vertex_index(self.origami)[self.square(*label)]


def dumps_labels(lo: LabeledOrigami) -> str:
    """Sidecar label table: square number (1-based) followed by its label tuple."""
    lines = [f"labels n={lo.origami.n} fields={','.join(lo.fields)}"]
    for s, lab in enumerate(lo.square_labels):
        lines.append(f"{s + 1} " + " ".join(map(str, lab)))
    verts = vertices(lo.origami)
    for v, name in sorted(lo.vertex_labels.items()):
        lines.append(f"vertex {name} {verts[v].squares[0] + 1}")
    return "\n".join(lines) + "\n"


def loads_labels(text: str) -> tuple[dict[int, tuple[int, ...]], dict[str, int]]:
    """Parse a sidecar: returns (square -> label) and (vertex name -> a square), 1-based."""
    squares: dict[int, tuple[int, ...]] = {}
    verts: dict[str, int] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("labels"):
            continue
        parts = line.split()
        if parts[0] == "vertex":
            verts[parts[1]] = int(parts[2])
        else:
            squares[int(parts[0])] = tuple(int(p) for p in parts[1:])
    return squares, verts


# ----------------------------------------------------------------- builders

def _x_index(i: int, h: int) -> int:
    return 4 * (i - 1) + (h - 1)


def _coset12(letter: str, i: int) -> int:
    return coset_action(letter, (i, 0), 1)[0]


def build_E2() -> LabeledOrigami:
    o = Origami((1, 0, 3, 2), (2, 3, 0, 1))
    labels = {vertex_index(o)[s]: name for s, name in enumerate(CLASSES)}
    return LabeledOrigami(o, tuple((s + 1,) for s in range(4)), labels, ("square",))


def _glue(point, h: int, step):
    """Right and up neighbours of the square at coset point ``point`` and position ``h``."""
    right = {1: (point, 2), 2: (step("Y", point), 1), 3: (point, 4), 4: (step("y", point), 3)}[h]
    up = {1: (step("y", point), 3), 2: (step("Y", point), 4),
          3: (step("X", point), 1), 4: (step("x", point), 2)}[h]
    return right, up


def build_X() -> LabeledOrigami:
    n = 48
    a, b = [0] * n, [0] * n
    labels = []
    for i in range(1, 13):
        for h in range(1, 5):
            (ri, rh), (ui, uh) = _glue(i, h, _coset12)
            a[_x_index(i, h)] = _x_index(ri, rh)
            b[_x_index(i, h)] = _x_index(ui, uh)
            labels.append((i, h))
    o = Origami(tuple(a), tuple(b))
    vidx = vertex_index(o)
    names: dict[int, str] = {}
    for i in range(1, 13):
        names[vidx[_x_index(i, 3)]] = f"R{i}"
    names[vidx[_x_index(1, 1)]] = "P1"
    names[vidx[_x_index(1, 2)]] = "Q1"
    # remaining singular vertices: numbered per class by their smallest square
    counters = Counter({"P": 1, "Q": 1, "S": 0})
    for s in range(n):
        v = vidx[s]
        if v in names:
            continue
        cls = CLASSES[labels[s][1] - 1]
        counters[cls] += 1
        names[v] = f"{cls}{counters[cls]}"
    return LabeledOrigami(o, tuple(labels), names, ("i", "h"))


def covering_p(x: LabeledOrigami | None = None) -> Covering:
    x = x or build_X()
    e2 = build_E2().origami
    return Covering(x.origami, e2, tuple(h - 1 for (_, h) in x.square_labels)).validate()


def _y_index(i: int, h: int, j: int) -> int:
    return 48 * j + _x_index(i, h)


def slit_gauge(k: int) -> dict[tuple[int, int], int]:
    """Copy offset ``c(i, h)`` turning the coset-action drift into slit form.

    Square ``(i, h, j)`` of Y(k) is the coset point ``(i, j + c(i, h))``.  The offsets are
    constant along vertical gluings, so vertical gluings never change the copy and all
    drift sits on horizontal gluings; each vertical cylinder is normalized so that its
    squares at position 3 (or, lacking those, its first square) have offset 0.
    """
    step = lambda letter, pt: coset_action(letter, pt, k)  # noqa: E731
    m = 2 * k
    gauge: dict[tuple[int, int], int] = {}
    for i0 in range(1, 13):
        for h0 in range(1, 5):
            if (i0, h0) in gauge:
                continue
            cyl, pt, h = {}, (i0, 0), h0
            while (pt[0], h) not in cyl:
                cyl[(pt[0], h)] = pt[1]
                _, (pt, h) = _glue(pt, h, step)
            if pt[1] != 0:
                raise AssertionError("vertical cylinder with non-zero total drift")
            base = {d for (_, hh), d in cyl.items() if hh == 3}
            if len(base) > 1:
                raise AssertionError("position-3 squares of a vertical cylinder disagree")
            shift = base.pop() if base else 0
            for sq, d in cyl.items():
                gauge[sq] = (d - shift) % m
    return gauge


def build_Y(k: int) -> LabeledOrigami:
    if k < 1:
        raise ValueError("k must be at least 1")
    n, m = 96 * k, 2 * k
    a, b = [0] * n, [0] * n
    labels = [None] * n
    gauge = slit_gauge(k)
    step = lambda letter, pt: coset_action(letter, pt, k)  # noqa: E731
    for j in range(m):
        for i in range(1, 13):
            for h in range(1, 5):
                s = _y_index(i, h, j)
                ((ri, rj), rh), ((ui, uj), uh) = _glue((i, (j + gauge[i, h]) % m), h, step)
                a[s] = _y_index(ri, rh, (rj - gauge[ri, rh]) % m)
                b[s] = _y_index(ui, uh, (uj - gauge[ui, uh]) % m)
                labels[s] = (i, h, j)
    o = Origami(tuple(a), tuple(b))
    x = build_X()
    names = _lift_labels(o, labels, x, lambda lab: lab[:2], lambda lab: lab[2])
    return LabeledOrigami(o, tuple(labels), names, ("i", "h", "j"))


def y_slits(y: LabeledOrigami, k: int) -> dict[tuple[int, int], int]:
    """Copy change along each gluing of Y(k) that changes the copy: ``(i, h) -> drift``
    for horizontal gluings; raises if a vertical gluing changes the copy."""
    o, m = y.origami, 2 * k
    out = {}
    for s, (i, h, j) in enumerate(y.square_labels):
        if y.square_labels[o.sig_b[s]][2] != j:
            raise AssertionError("vertical gluing changes the copy")
        d = (y.square_labels[o.sig_a[s]][2] - j) % m
        if d and j == 0:
            out[i, h] = d if d <= k else d - m
    return out


def _lift_labels(o: Origami, labels, base: LabeledOrigami, project, copy_of) -> dict[int, str]:
    """Name each vertex ``w`` over a base vertex ``v`` as ``name(v)^c``, where ``c`` is the
    copy index of the square of ``w`` that lies over the first square of ``v``."""
    base_vs = vertices(base.origami)
    anchor = {v.squares[0]: idx for idx, v in enumerate(base_vs)}
    # fixed anchors: P1 at (1,1), Q1 at (1,2), R_i at (i,3)
    for idx, name in base.vertex_labels.items():
        if name == "P1":
            anchor_sq = base.square(1, 1)
        elif name == "Q1":
            anchor_sq = base.square(1, 2)
        elif name.startswith("R"):
            anchor_sq = base.square(int(name[1:]), 3)
        else:
            continue
        anchor = {s: v for s, v in anchor.items() if v != idx}
        anchor[anchor_sq] = idx
    lookup = base._square_lookup()
    names: dict[int, str] = {}
    for w, vert in enumerate(vertices(o)):
        for s in vert.squares:
            bs = lookup[project(labels[s])]
            if bs in anchor:
                names[w] = f"{base.vertex_labels[anchor[bs]]}^{copy_of(labels[s]) + 1}"
                break
    return names


def covering_q(y: LabeledOrigami, x: LabeledOrigami | None = None) -> Covering:
    x = x or build_X()
    return Covering(y.origami, x.origami,
                    tuple(x.square(i, h) for (i, h, _) in y.square_labels)).validate()


def build_Z(k: int, *, cocycles: bool = True) -> LabeledOrigami:
    """Z_k; with ``cocycles=False`` both cocycles vanish (two disjoint copies of Y(k))."""
    y = build_Y(k)
    ny = y.origami.n
    hsq = {y.square(1, 3, 0)} if cocycles else set()
    vsq = {y.square(2, 3, 2 * k - 1), y.square(5, 1, 0)} if cocycles else set()
    a, b = [0] * (2 * ny), [0] * (2 * ny)
    labels = []
    for l in range(2):
        for s in range(ny):
            a[l * ny + s] = ((l + (s in hsq)) % 2) * ny + y.origami.sig_a[s]
            b[l * ny + s] = ((l + (s in vsq)) % 2) * ny + y.origami.sig_b[s]
    for l in range(2):
        labels.extend(lab + (l,) for lab in y.square_labels)
    o = Origami(tuple(a), tuple(b))
    return LabeledOrigami(o, tuple(labels), {}, ("i", "h", "j", "l"))


def covering_r(z: LabeledOrigami, y: LabeledOrigami) -> Covering:
    return Covering(z.origami, y.origami,
                    tuple(y.square(*lab[:3]) for lab in z.square_labels)).validate()


def z3_reference() -> Origami:
    a = perm_from_cycles(z3_data.SIGMA_A_CYCLES, 576)
    b = perm_from_cycles(z3_data.SIGMA_B_CYCLES, 576)
    return Origami(a, b).check()


# ---------------------------------------------------------------- checks

@dataclass
class Check:
    name: str
    passed: bool
    witness: str = ""
    key: str = ""


def _multiset(seq: Iterable[int]) -> dict[int, int]:
    return dict(sorted(Counter(seq).items(), reverse=True))


def format_multiset(seq: Iterable[int]) -> str:
    return "{" + ", ".join(f"{v}^{c}" if c > 1 else f"{v}" for v, c in _multiset(seq).items()) + "}"


def x_census(x: LabeledOrigami | None = None) -> dict:
    x = x or build_X()
    o = x.origami
    trans = translations(o)
    return {
        "squares": o.n,
        "genus": genus(o),
        "stratum": stratum(o),
        "regular_vertices": sum(1 for v in vertices(o) if v.order == 1),
        "translation_order": len(trans),
        "element_orders": dict(sorted(Counter(element_order(t) for t in trans).items())),
        "horizontal_cylinders": cylinders(o, "horizontal"),
        "vertical_cylinders": cylinders(o, "vertical"),
    }


def _vertex_action(o: Origami, corners, psi) -> list[int]:
    """Vertex permutation induced by an affine map: corners (o -> g.o) then psi (g.o -> o)."""
    vidx = vertex_index(o)
    return [vidx[psi[corners[v.squares[0]]]] for v in vertices(o)]


def _parse_named_cycles(spec: str, lo: LabeledOrigami, shift: int = 0, modulus: int = 0) -> dict[int, int]:
    """Expected vertex images from cycles like ``R1 R6 R5 | R11 R9 R3`` (``+`` suffix = next copy)."""
    out: dict[int, int] = {}
    for cyc in spec.split("|"):
        names = cyc.split()
        for pos, tok in enumerate(names):
            nxt = names[(pos + 1) % len(names)]
            out[lo.vertex_of(_copy_name(tok, shift, modulus))] = lo.vertex_of(_copy_name(nxt, shift, modulus))
    return out


def _copy_name(tok: str, shift: int, modulus: int) -> str:
    if not modulus:
        return tok
    base, plus = tok.rstrip("+"), len(tok) - len(tok.rstrip("+"))
    return f"{base}^{(shift + plus) % modulus + 1}"


def _find_realizing_iso(o: Origami, g: Mat2, want) -> tuple[bool, int]:
    """Does some isomorphism g.o -> o realize the vertex permutation predicate ``want``?"""
    go, corners = matrix_action_with_corners(g, o)
    isos = isomorphisms(go, o)
    for psi in isos:
        if want(_vertex_action(o, corners, psi)):
            return True, len(isos)
    return False, len(isos)


# printed vertex permutations of f_T and f_L on X (R part and the P/Q/S part)
X_FT_R = "R1 R6 R5 | R11 R9 R3 | R10 R2 R8 | R12 R4 R7"
X_FL_R = "R1 R11 R4 | R5 R10 R9 | R6 R12 R2 | R3 R8 R7"
# printed vertex permutations of the lifts of T^2 and L^2 on Y(k); '+' marks copy j+1
Y_FT2_R = "R1 R5+ R6 | R11 R3 R9 | R10 R8 R2 | R12 R7+ R4"
Y_FL2_R = "R1 R4 R11 | R5 R9 R10 | R6 R2 R12 | R3 R7 R8"


def _key(name: str) -> str:
    return name.replace("^", "").replace("-I", "minusI").replace("_", "")


def _class_of_vertex(lo: LabeledOrigami, v: int) -> str:
    return lo.vertex_labels[v][0]


def verify_x_lemmas(x: LabeledOrigami | None = None) -> list[Check]:
    """Pinned facts about the action of f_T, f_L, f_T^2, f_L^2, f_-I on the vertices of X."""
    from .group_words import T, L
    x = x or build_X()
    o = x.origami
    nv = len(vertices(o))
    checks = []
    for name, g, rspec, swap in (("f_T", T, X_FT_R, {"P": "Q", "Q": "P", "S": "S"}),
                                 ("f_L", L, X_FL_R, {"Q": "S", "S": "Q", "P": "P"})):
        exp = _parse_named_cycles(rspec, x)

        def want(perm, exp=exp, swap=swap):
            for v in range(nv):
                cls = _class_of_vertex(x, v)
                if cls == "R":
                    if perm[v] != exp[v]:
                        return False
                elif _class_of_vertex(x, perm[v]) != swap[cls]:
                    return False
            return True
        ok, _ = _find_realizing_iso(o, g, want)
        checks.append(Check(f"{name} vertex permutation", ok, rspec, "vertex-action-" + _key(name)))
    for name, g, letters in (("f_T^2", T @ T, "Y"), ("f_L^2", L @ L, "Yx"), ("f_-I", MINUS_I, "")):
        def want(perm, letters=letters):
            for v in range(nv):
                lab = x.vertex_labels[v]
                if lab[0] != "R":
                    if perm[v] != v:
                        return False
                    continue
                i = int(lab[1:])
                for ch in letters:
                    i = _coset12(ch, i)
                if x.vertex_labels[perm[v]] != f"R{i}":
                    return False
            return True
        ok, _ = _find_realizing_iso(o, g, want)
        checks.append(Check(f"{name} fixes P/Q/S and acts on R by right multiplication "
                            f"with {letters or 'identity'}", ok, "", "vertex-action-" + _key(name)))
    # the lower edge of (A_1,1) is the only horizontal unit edge from P1 to Q1
    vidx = vertex_index(o)
    p1, q1 = x.vertex_of("P1"), x.vertex_of("Q1")
    edges = [s for s in range(o.n) if vidx[s] == p1 and vidx[o.sig_a[s]] == q1]
    checks.append(Check("unique horizontal unit saddle connection P1 -> Q1",
                        edges == [x.square(1, 1)], f"edges at squares {[e + 1 for e in edges]}",
                        "p1-q1-saddle-connection"))
    return checks


def verify_actiony(k: int, y: LabeledOrigami | None = None) -> list[Check]:
    """Lifts of T^2, L^2, -I to Y(k) realize the printed R-vertex permutations and fix P/Q/S."""
    y = y or build_Y(k)
    o = y.origami
    nv = len(vertices(o))
    m = 2 * k
    checks = []
    for name, g, rspec in (("T^2", X_MAT, Y_FT2_R), ("L^2", Y_MAT, Y_FL2_R), ("-I", MINUS_I, None)):
        exp: dict[int, int] = {}
        if rspec is not None:
            for j in range(m):
                exp.update(_parse_named_cycles(rspec, y, j, m))

        def want(perm, exp=exp):
            for v in range(nv):
                target = exp.get(v, v)
                if perm[v] != target:
                    return False
            return True
        ok, count = _find_realizing_iso(o, g, want)
        checks.append(Check(f"lift of {name} on Y({k})", ok, f"{count} candidate isomorphisms",
                            "action-" + _key(name)))
    return checks


def y_census(k: int, y: LabeledOrigami | None = None) -> dict:
    y = y or build_Y(k)
    o = y.origami
    q = covering_q(y)
    deck = translations(o)
    orders = Counter(v.order for v in vertices(o))
    return {
        "connected": o.is_connected(),
        "degree": q.degree,
        "unramified": all(all(e == 1 for e in ram_data(q, v)) for v in range(len(vertices(q.target)))),
        "deck_orders": sorted(Counter(element_order(t) for t in deck).items()),
        "has_cyclic_deck_2k": _cyclic_deck(q, deck),
        "genus": genus(o),
        "vertex_orders": dict(orders),
        "rh": rh_check(q),
    }


def _cyclic_deck(q: Covering, trans) -> bool:
    """The deck group of q (translations commuting with q) is cyclic of order deg q."""
    deck = [t for t in trans if all(q.phi[t[s]] == q.phi[s] for s in range(len(t)))]
    return len(deck) == q.degree and any(element_order(t) == q.degree for t in deck)


# ------------------------------------------------------ main criterion

def expected_multisets(k: int) -> dict[str, tuple[int, ...]]:
    return {
        "P": (6,) + (3,) * (16 * k - 2),
        "Q": (6, 6) + (3,) * (16 * k - 4),
        "R": (2,) + (1,) * (48 * k - 2),
        "S": (3,) * (16 * k),
    }


@dataclass
class MainpropCertificate:
    k: int
    A: bool
    B: bool
    C: bool
    D: bool
    multisets: dict[str, tuple[int, ...]]
    multisets_match: bool
    riemann_hurwitz: bool
    genus_z: int
    genus_y: int

    @property
    def conclusion(self) -> bool:
        return self.A and self.B and self.C and self.D


def _unique(values: list, idx: int) -> bool:
    return all(v != values[idx] for t, v in enumerate(values) if t != idx)


def mainprop_check(k: int) -> MainpropCertificate:
    e2, x, y, z = build_E2(), build_X(), build_Y(k), build_Z(k)
    p, q, r = covering_p(x), covering_q(y, x), covering_r(z, y)
    qr = r.then(q)
    pqr = qr.then(p)
    for c in (p, q, r, qr, pqr):
        c.validate()
        if not rh_check(c):
            raise ValueError("Riemann-Hurwitz fails for a covering")
    rm = {name: ram_data(pqr, v) for v, name in e2.vertex_labels.items()}
    cond_a = len(set(rm.values())) == 4
    # B: P1 vs other P-vertices, Q1 vs other Q-vertices (over q o r)
    cond_b = True
    for cls in "PQ":
        group = [v for v, nm in x.vertex_labels.items() if nm[0] == cls]
        data = [ram_data(qr, v) for v in group]
        cond_b &= _unique(data, group.index(x.vertex_of(f"{cls}1")))
    # C: some P1^j has r-ramification distinct from all other P1^j'
    p1 = [ram_data(r, y.vertex_of(f"P1^{j + 1}")) for j in range(2 * k)]
    cond_c = any(_unique(p1, j) for j in range(2 * k))
    # D: R1^1 is distinguished among all R_i^j
    rs = [(i, j) for j in range(2 * k) for i in range(1, 13)]
    rdata = [ram_data(r, y.vertex_of(f"R{i}^{j + 1}")) for (i, j) in rs]
    cond_d = _unique(rdata, rs.index((1, 0)))
    gz, gy = genus(z.origami), genus(y.origami)
    return MainpropCertificate(
        k=k, A=cond_a, B=cond_b, C=cond_c, D=cond_d, multisets=rm,
        multisets_match=rm == expected_multisets(k),
        riemann_hurwitz=(2 * gz - 2 == 2 * (2 * gy - 2) + 4),
        genus_z=gz, genus_y=gy)


def z_census(k: int, z: LabeledOrigami | None = None) -> dict:
    z = z or build_Z(k)
    o = z.origami
    return {
        "squares": o.n,
        "genus": genus(o),
        "stratum": stratum(o),
        "horizontal_cylinders": sum(c for _, c in cylinders(o, "horizontal")),
        "vertical_cylinders": sum(c for _, c in cylinders(o, "vertical")),
        "vertex_orders": dict(sorted(Counter(v.order for v in vertices(o)).items())),
    }


def verify_corollary_z3() -> list[Check]:
    built, ref = build_Z(3).origami, z3_reference()
    checks = []
    iso = is_isomorphic(built, ref)
    checks.append(Check("built Z_3 isomorphic to the printed permutations", iso is not None,
                        "isomorphism found" if iso else "no isomorphism", "isomorphic"))
    for name, o in (("built", built), ("printed", ref)):
        st = stratum(o)
        checks.append(Check(f"{name}: genus 147", genus(o) == 147, str(genus(o)), f"{name}.genus"))
        checks.append(Check(f"{name}: stratum (5,5,5,2^138,1)",
                            sorted(st) == sorted((1, 5, 5, 5) + (2,) * 138), format_multiset(st),
                            f"{name}.stratum"))
        hc = sum(c for _, c in cylinders(o, "horizontal"))
        vc = sum(c for _, c in cylinders(o, "vertical"))
        checks.append(Check(f"{name}: 95 horizontal / 94 vertical cylinders",
                            (hc, vc) == (95, 94), f"{hc}/{vc}", f"{name}.cylinders"))
    return checks


def r_ramified_vertices(k: int, y: LabeledOrigami | None = None,
                        z: LabeledOrigami | None = None) -> list[str]:
    """Names of the vertices of Y(k) over which r: Z_k -> Y(k) ramifies."""
    y = y or build_Y(k)
    z = z or build_Z(k)
    r = covering_r(z, y)
    return sorted(y.vertex_labels[v] for v in range(len(vertices(y.origami)))
                  if any(e > 1 for e in ram_data(r, v)))


def expected_ramified_vertices(k: int) -> list[str]:
    return sorted(["R1^1", f"P1^{2 * k}", "Q1^1", f"Q1^{2 * k}"])
