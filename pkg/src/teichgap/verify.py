"""Verification suites: every checked statement becomes a named claim in a report."""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

from . import constructions as C
from . import group_words as G
from . import origami as O
from . import spectral as SP

PASS, FAIL, SKIP = "pass", "fail", "skipped-budget"
SUITES = ("group", "origami-x", "origami-y", "origami-z", "spectral")
DEFAULT_BUDGET = 60.0


@dataclass
class Claim:
    id: str
    anchor: str
    status: str
    witness: str = ""


@dataclass
class VerificationReport:
    suite: str
    claims: list[Claim] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.status != FAIL for c in self.claims)

    def add(self, cid: str, anchor: str, ok: bool, witness: str = "") -> None:
        if any(c.id == cid for c in self.claims):
            raise ValueError(f"duplicate claim id {cid}")
        self.claims.append(Claim(cid, anchor, PASS if ok else FAIL, witness))

    def skip(self, cid: str, anchor: str, witness: str) -> None:
        self.claims.append(Claim(cid, anchor, SKIP, witness))

    def extend(self, other: "VerificationReport") -> None:
        for c in other.claims:
            if any(d.id == c.id for d in self.claims):
                raise ValueError(f"duplicate claim id {c.id}")
            self.claims.append(c)

    def to_json(self) -> str:
        return json.dumps({"suite": self.suite, "claims": [asdict(c) for c in self.claims],
                           "overall": "pass" if self.overall else "fail"}, indent=2)

    def to_text(self) -> str:
        width = max((len(c.id) for c in self.claims), default=10)
        lines = [f"suite {self.suite}"]
        for c in self.claims:
            lines.append(f"  [{c.status:^4}] {c.id:<{width}}  {c.witness}")
            lines.append(f"  {'':6} {'':<{width}}  ({c.anchor})")
        passed = sum(c.status == PASS for c in self.claims)
        skipped = sum(c.status == SKIP for c in self.claims)
        lines.append(f"overall: {'pass' if self.overall else 'fail'} "
                     f"({passed} passed, {len(self.claims) - passed - skipped} failed, {skipped} skipped)")
        return "\n".join(lines)


def _ms(seq: Iterable[int]) -> str:
    return C.format_multiset(seq)


def _orbit_claim(rep: VerificationReport, cid: str, anchor: str, o: O.Origami,
                 expected: int, budget: float) -> None:
    res = O.veech_orbit(o, max_orbit=max(10 * expected, 1000), budget=budget)
    if not res.complete:
        rep.skip(cid, anchor, f"{res.reason} after {res.size} orbit points")
        return
    rep.add(cid, anchor, res.size == expected, f"orbit size {res.size}")


# ------------------------------------------------------------------ group

def random_reduced_word(rng: random.Random, max_len: int = 40) -> str:
    length = rng.randint(0, max_len)
    out: list[str] = []
    inverse = {"x": "X", "X": "x", "y": "Y", "Y": "y"}
    while len(out) < length:
        ch = rng.choice("xXyY")
        if out and inverse[ch] == out[-1]:
            continue
        out.append(ch)
    return "".join(out)


def suite_group(ks: list[int], budget: float = DEFAULT_BUDGET) -> VerificationReport:
    rep = VerificationReport("group")
    rep.add("group.eval-xyxy", "rho(c1) = xyxy, trace 34",
            G.eval_word("xyxy") == G.Mat2(29, 12, 12, 5), str(G.eval_word("xyxy")))
    reps = G.coset_rep_table()
    rep.add("group.coset-reps", "coset representatives A1..A12 of PGamma_6 in PGamma_2",
            len({G.coset_index_mod6(m) for _, m, _ in reps}) == 12
            and (1, 2, 4, 3) in {reps[3][1].mod(6), (-reps[3][1]).mod(6)},
            f"A4 mod 6 = {reps[3][2]}")
    for k in ks:
        rows = G.verify_lemma_change(k)
        bad = [r.generator for r in rows if not r.passed]
        rep.add(f"group.k{k}.lemma-rows", "gamma^-1 rewriting identities for the 13 generators",
                not bad, f"{len(rows) - len(bad)}/{len(rows)} rows pass" + (f"; failing {bad}" if bad else ""))
        m_bad = [g for g, w in G.GEN_WORDS.items() if G.m_value(w, k) != G.M_VALUES[g] % (2 * k)]
        m2_bad = [g for g, w in G.GEN_WORDS.items() if G.m2_value(w, k) != G.M2_VALUES[g] % (2 * k)]
        rep.add(f"group.k{k}.m-values", "values of m on A..G, L1..L6", not m_bad,
                "all 13 match" if not m_bad else f"mismatch {m_bad}")
        rep.add(f"group.k{k}.m2-values", "values of m2 on A..G, L1..L6", not m2_bad,
                "all 13 match" if not m2_bad else f"mismatch {m2_bad}")
        orbit = {(1, 0)}
        frontier = [(1, 0)]
        while frontier:
            p = frontier.pop()
            for ch in "xXyY":
                q = G.coset_action(ch, p, k)
                if q not in orbit:
                    orbit.add(q)
                    frontier.append(q)
        rep.add(f"group.k{k}.coset-orbit", "transitive coset action on 24k points",
                len(orbit) == 24 * k, f"orbit of (1,0) has {len(orbit)} points")
        rep.add(f"group.k{k}.xyxy-member", "rho(c1) lies in +-Gamma_6(2k)",
                G.membership(G.Mat2(29, 12, 12, 5), "PGamma_6(2k)", k=k))
    rng = random.Random(20240601)
    failures = 0
    for _ in range(1000):
        w = random_reduced_word(rng)
        if G.decompose_gamma2(G.eval_word(w)) != (1, w):
            failures += 1
    rep.add("group.round-trip", "free generation of PGamma_2 by x, y", failures == 0,
            f"1000 random reduced words of length <= 40, {failures} failures")
    return rep


# -------------------------------------------------------------- origami-x

def suite_origami_x(ks: list[int], budget: float = DEFAULT_BUDGET) -> VerificationReport:
    rep = VerificationReport("origami-x")
    x = C.build_X()
    census = C.x_census(x)
    rep.add("x.squares", "X has 48 squares", census["squares"] == 48, str(census["squares"]))
    rep.add("x.genus", "X has genus 13", census["genus"] == 13, str(census["genus"]))
    rep.add("x.stratum", "X lies in H(2^12)", census["stratum"] == (2,) * 12, _ms(census["stratum"]))
    rep.add("x.regular-vertices", "R1..R12 have cone angle 2pi", census["regular_vertices"] == 12,
            str(census["regular_vertices"]))
    rep.add("x.horizontal-cylinders", "eight horizontal cylinders",
            census["horizontal_cylinders"] == [(6, 8)], str(census["horizontal_cylinders"]))
    rep.add("x.translations", "Trans(X) is PGamma_2/PGamma_6 of order 12 (A4 profile)",
            census["translation_order"] == 12 and census["element_orders"] == {1: 1, 2: 3, 3: 8},
            f"order {census['translation_order']}, element orders {census['element_orders']}")
    p = C.covering_p(x)
    e2 = C.build_E2()
    rm = {name: O.ram_data(p, v) for v, name in e2.vertex_labels.items()}
    rep.add("x.covering-p", "p: X -> E[2] of degree 12, unramified over R, index 3 over P, Q, S",
            p.degree == 12 and rm["R"] == (1,) * 12 and all(rm[c] == (3,) * 4 for c in "PQS")
            and O.rh_check(p), ", ".join(f"{n}: {_ms(v)}" for n, v in rm.items()))
    for chk in C.verify_x_lemmas(x):
        rep.add("x." + chk.key, chk.name, chk.passed, chk.witness)
    _orbit_claim(rep, "x.veech", "the Veech group of X is SL(2,Z)", x.origami, 1, budget)
    return rep


# -------------------------------------------------------------- origami-y

def suite_origami_y(ks: list[int], budget: float = DEFAULT_BUDGET) -> VerificationReport:
    rep = VerificationReport("origami-y")
    for k in ks:
        y = C.build_Y(k)
        c = C.y_census(k, y)
        rep.add(f"y.k{k}.connected", "Y is connected", c["connected"])
        rep.add(f"y.k{k}.covering-q", "q: Y -> X is unramified of degree 2k with cyclic deck group",
                c["degree"] == 2 * k and c["unramified"] and c["has_cyclic_deck_2k"] and c["rh"],
                f"degree {c['degree']}, unramified {c['unramified']}, cyclic deck {c['has_cyclic_deck_2k']}")
        rep.add(f"y.k{k}.genus", "genus of Y is 24k + 1", c["genus"] == 24 * k + 1, str(c["genus"]))
        rep.add(f"y.k{k}.vertex-census", "24k regular vertices and 24k of cone angle 6pi",
                c["vertex_orders"] == {1: 24 * k, 3: 24 * k}, str(c["vertex_orders"]))
        slits = C.y_slits(y, k)
        rep.add(f"y.k{k}.slits", "eight slit edges, vertical gluings stay in one copy",
                len(slits) == 8, str(sorted(slits)))
        for chk in C.verify_actiony(k, y):
            rep.add(f"y.k{k}.{chk.key}", "lifts of T^2, L^2, -I act on R_i^j as printed and fix P/Q/S",
                    chk.passed, chk.witness)
    _orbit_claim(rep, "y.k1.veech", "the Veech group of Y is SL(2,Z)", C.build_Y(1).origami, 1, budget)
    return rep


# -------------------------------------------------------------- origami-z

def suite_origami_z(ks: list[int], budget: float = DEFAULT_BUDGET) -> VerificationReport:
    rep = VerificationReport("origami-z")
    for k in ks:
        y, z = C.build_Y(k), C.build_Z(k)
        gz = O.genus(z.origami)
        rep.add(f"z.k{k}.size-genus", "Z_k has 192k squares and genus 48k + 3",
                z.origami.n == 192 * k and gz == 48 * k + 3, f"{z.origami.n} squares, genus {gz}")
        ram = C.r_ramified_vertices(k, y, z)
        rep.add(f"z.k{k}.ramification", "r is ramified exactly over R1^1, P1^2k, Q1^1, Q1^2k",
                ram == C.expected_ramified_vertices(k), ", ".join(ram))
        rep.add(f"z.k{k}.cocycle-guard", "vanishing cocycles give a disconnected double",
                not C.build_Z(k, cocycles=False).origami.is_connected())
        cert = C.mainprop_check(k)
        rep.add(f"z.k{k}.conditions", "ramification criterion: conditions A-D",
                cert.conclusion, f"A={cert.A} B={cert.B} C={cert.C} D={cert.D}")
        rep.add(f"z.k{k}.multisets", "rm(P), rm(Q), rm(R), rm(S) over p o q o r",
                cert.multisets_match, ", ".join(f"{n}: {_ms(v)}" for n, v in cert.multisets.items()))
        rep.add(f"z.k{k}.riemann-hurwitz", "2 g_Z - 2 = 2 (2 g_Y - 2) + 4", cert.riemann_hurwitz,
                f"g_Z = {cert.genus_z}, g_Y = {cert.genus_y}")
    if 3 in ks:
        ref = C.z3_reference()
        rep.add("z3.reference-cycle-types", "printed sigma_a {12, 6^94}, sigma_b {12^2, 6^92}",
                dict(O.cycle_type(ref.sig_a)) == {12: 1, 6: 94}
                and dict(O.cycle_type(ref.sig_b)) == {12: 2, 6: 92},
                f"a {dict(O.cycle_type(ref.sig_a))}, b {dict(O.cycle_type(ref.sig_b))}")
        for chk in C.verify_corollary_z3():
            rep.add("z3." + chk.key, chk.name, chk.passed, chk.witness)
    return rep


# --------------------------------------------------------------- spectral

def suite_spectral(ks: list[int], budget: float = DEFAULT_BUDGET) -> VerificationReport:
    rep = VerificationReport("spectral")
    ell = SP.geodesic_length(G.eval_word("xyxy"))
    rep.add("spectral.ell-c1", "l(c1) = 2 arccosh(17)", abs(ell - 2 * SP.ACOSH_17) < 1e-12, f"{ell:.6f}")
    for i, (name, ok, wit) in enumerate(SP.area_check(), start=1):
        rep.add(f"spectral.area.{i}", name, ok, wit)
    for k in ks:
        b = SP.bounds_for_k(k)
        consistent = abs(SP.buser_lambda(b.h_bound) - b.lambda_bound) <= 1e-12 * b.lambda_bound
        closed = abs(SP.lambda_closed_form(k) - b.lambda_bound) <= 1e-12 * b.lambda_bound
        rep.add(f"spectral.k{k}.buser", "Buser inversion and closed form agree", consistent and closed,
                f"lambda = {b.lambda_bound:.6f}")
        if k >= 3:
            ok = (b.complementary_series_certified and b.lambda_bound < 1 / (2 * k)
                  and b.gap_bound is not None and b.gap_bound < math.sqrt(3) / k)
            rep.add(f"spectral.k{k}.bound", "lambda < 1/(2k) <= 1/6 < 1/4 and gap < sqrt(3)/k", ok,
                    f"lambda {b.lambda_bound:.6f}, gap {b.gap_bound:.6f} < {math.sqrt(3) / k:.6f}")
        else:
            rep.add(f"spectral.k{k}.bound", "printed bound does not certify k < 3",
                    not b.complementary_series_certified,
                    f"lambda {b.lambda_bound:.4f} >= 1/4: complementary series NOT certified by this bound")
        if k == 3:
            rep.add("spectral.k3.value", "lambda bound for k = 3 is 0.163556, below 1/6 < 3/16",
                    abs(b.lambda_bound - 0.163556) < 1e-4 and b.noncongruence_certified,
                    f"{b.lambda_bound:.6f}")
    sweep = [SP.bounds_for_k(k) for k in range(3, 101)]
    rep.add("spectral.sweep", "lambda < 1/(2k) and gap < sqrt(3)/k for k = 3..100",
            all(b.lambda_bound < 1 / (2 * b.k) and b.gap_bound < math.sqrt(3) / b.k for b in sweep),
            "98 values")
    kt = SP.appendix_K_tilde()
    rep.add("spectral.k-tilde", "explicit constant K~", abs(kt - 10.9823) < 5e-4, f"{kt:.6f}")
    n = SP.appendix_min_N()
    rep.add("spectral.appendix-min-n", "complementary series for Gamma_2(N) once N >= 170",
            n == 170 and not SP.appendix_predicate(n - 1) and SP.appendix_stable_from(n),
            f"min N = {n}, predicate holds for N = {n}..{n + 100}")
    return rep


_SUITE_FUNCS: dict[str, Callable[[list[int], float], VerificationReport]] = {
    "group": suite_group,
    "origami-x": suite_origami_x,
    "origami-y": suite_origami_y,
    "origami-z": suite_origami_z,
    "spectral": suite_spectral,
}


def run_suite(name: str, ks: Iterable[int] = (3,), budget: float = DEFAULT_BUDGET) -> VerificationReport:
    ks = sorted(set(ks))
    if not ks or min(ks) < 1:
        raise ValueError("k-list must be nonempty with k >= 1")
    if budget <= 0:
        raise ValueError("budget must be positive")
    if name == "all":
        rep = VerificationReport("all")
        for suite in SUITES:
            rep.extend(_SUITE_FUNCS[suite](ks, budget))
        return rep
    if name not in _SUITE_FUNCS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    return _SUITE_FUNCS[name](ks, budget)


# ----------------------------------------------------------- theorem A

def _twist_powers(o: O.Origami) -> list[G.Mat2]:
    """Multi-twists T^n and L^n, n = lcm of cylinder circumferences (all heights are 1)."""
    out = []
    for direction, base in (("horizontal", G.T), ("vertical", G.L)):
        n = math.lcm(*(c for c, _ in O.cylinders(o, direction)))
        out.append(base ** n)
    return out


def certificate_theorem_A(k: int, budget: float = 20.0, max_orbit: int = 1000) -> VerificationReport:
    rep = VerificationReport(f"theorem-A k={k}")
    cert = C.mainprop_check(k)
    rep.add("theoremA.containment", "Veech(Z_k) is contained in +-Gamma_6(2k) (conditions A-D)",
            cert.conclusion, f"A={cert.A} B={cert.B} C={cert.C} D={cert.D}")
    b = SP.bounds_for_k(k)
    certified = b.complementary_series_certified and k >= 3
    rep.add("theoremA.complementary-series", "lambda bound below 1/4", certified,
            f"lambda {b.lambda_bound:.6f}" + ("" if certified else " >= 1/4 or k < 3: NOT certified"))
    if b.gap_bound is not None:
        rep.add("theoremA.gap", "gap bound below sqrt(3)/k", b.gap_bound < math.sqrt(3) / k,
                f"{b.gap_bound:.6f} < {math.sqrt(3) / k:.6f}")
    z = C.build_Z(k).origami
    sample = [m for m in _twist_powers(z) if O.veech_contains(m, z)]
    start = time.monotonic()
    res = O.veech_orbit(z, max_orbit=max_orbit, budget=budget)
    sample += [m for m in res.stabilizer if m not in sample]
    members = [G.membership(m, "PGamma_6(2k)", k=k) for m in sample]
    rep.add("theoremA.spot-check", "sampled Veech elements of Z_k lie in +-Gamma_6(2k)",
            bool(sample) and all(members),
            f"{sum(members)}/{len(sample)} sampled elements are members "
            f"(multi-twists + {len(res.stabilizer)} Schreier generators from "
            f"{res.size} orbit points in {time.monotonic() - start:.1f}s)")
    rep.add("theoremA.t-not-in-veech", "T is not in Veech(Z_k)", not O.veech_contains(G.T, z))
    return rep
