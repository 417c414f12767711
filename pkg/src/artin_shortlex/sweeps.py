"""Exhaustive invariant sweeps over small balls of words.

Each suite returns a :class:`SuiteReport` counting the instances checked per
property and listing any violations (as formatted words).  The same suites
back ``artin-shortlex verify`` and the acceptance tests.
"""

from __future__ import annotations

import time
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .dihedral import (
    DihedralCtx, _classify, _is_2geodesic, _stats, _tau, reduce_2gen, tau_moves,
)
from .geodesic import (
    FALLBACK_METHODS, fellow_travel_distance, fftp_witness, is_geodesic, minimal_nongeodesic_prefix,
)
from .reducer import (
    apply_factorization, in_W, is_critically_reduced, leftward_factorizations,
    maximal_2gen_suffix, rho, rightward_factorizations,
)
from .words import Anchor, Presentation, Word, alternating, words_up_to

SUITES = ("dihedral", "reducer", "geodesic", "automata")
_ENDS = Anchor.ENDS_WITH_X


@dataclass
class SuiteReport:
    name: str
    checked: Counter = field(default_factory=Counter)
    violations: dict = field(default_factory=lambda: defaultdict(list))
    notes: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def check(self, prop: str, ok: bool, witness=None) -> None:
        self.checked[prop] += 1
        if not ok:
            self.violations[prop].append(witness)

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    def n_violations(self) -> int:
        return sum(len(v) for v in self.violations.values())

    def to_json(self) -> dict:
        return {"suite": self.name, "ok": self.ok, "elapsed_s": round(self.elapsed, 3),
                "checked": dict(sorted(self.checked.items())),
                "violations": {k: v[:20] for k, v in sorted(self.violations.items()) if v},
                "notes": self.notes}


def _timed(fn: Callable[..., SuiteReport]) -> Callable[..., SuiteReport]:
    def run(*args, **kwargs) -> SuiteReport:
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.elapsed = time.perf_counter() - t0
        return rep
    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def _sign(c: int) -> int:
    return -1 if c & 1 else 1


def _is_signed(w: Word) -> bool:
    return len({c & 1 for c in w}) == 1


# -- dihedral ----------------------------------------------------------------

def _check_critical(rep: SuiteReport, w: Word, m: int, pres: Presentation, fmt) -> None:
    t = _tau(w, m)
    rep.check("tau_involution", t is not None and _classify(t, m) is not None
              and _tau(t, m) == w, fmt(w))
    if t is None:
        return
    rep.check("tau_same_element", reduce_2gen(w, DihedralCtx(0, 1, m), pres.order)
              == reduce_2gen(t, DihedralCtx(0, 1, m), pres.order), fmt(w))
    rep.check("tau_preserves_pn", _stats(t, m) == _stats(w, m), fmt(w))
    rep.check("tau_end_names_differ",
              t[0] >> 1 != w[0] >> 1 and t[-1] >> 1 != w[-1] >> 1, fmt(w))
    same = _is_signed(w)
    rep.check("tau_end_signs",
              (_sign(t[0]) == _sign(w[0])) == same and (_sign(t[-1]) == _sign(w[-1])) == same,
              fmt(w))
    dist = fellow_travel_distance(w, t, pres)
    rep.check("tau_fellow_travel_2m", dist <= 2 * m, (fmt(w), dist))
    for e in range(2, len(w)):
        t1 = _tau(w[:e], m)
        if t1 is not None:
            rep.check("critical_prefix_first_letter", t1[0] == t[0], fmt(w))
        t2 = _tau(w[len(w) - e:], m)
        if t2 is not None:
            rep.check("critical_suffix_last_letter", t2[-1] == t[-1], fmt(w))


def _longest_alt_suffix(w: Word) -> Word:
    if not w:
        return w
    s = len(w) - 1
    while s > 0 and w[s - 1] & 1 == w[s] & 1 and w[s - 1] >> 1 != w[s] >> 1:
        s -= 1
    return w[s:]


def _check_alt_suffix(rep: SuiteReport, w: Word, v: Word, m: int, fmt) -> None:
    p, n = _stats(w, m)
    if p == 0 or n == 0:
        return
    a = w[-1] >> 1
    b = 1 - a
    sigma = _longest_alt_suffix(w)
    A, B = 2 * a, 2 * b
    if sigma == alternating(A, B, p, anchor=_ENDS):
        alt = alternating(B ^ 1, A ^ 1, n, anchor=_ENDS)
        rep.check("alt_suffix_positive_run", v[-len(sigma):] == sigma or v[-n:] == alt, (fmt(w), fmt(v)))
    elif sigma == alternating(A ^ 1, B ^ 1, n, anchor=_ENDS):
        alt = alternating(B, A, p, anchor=_ENDS)
        rep.check("alt_suffix_negative_run", v[-len(sigma):] == sigma or v[-p:] == alt, (fmt(w), fmt(v)))
    else:
        rep.check("alt_suffix_preserved", _longest_alt_suffix(v) == sigma, (fmt(w), fmt(v)))


def _power_strip(rep: SuiteReport, w: Word, m: int, fmt) -> None:
    """Transfer of tau-moves from ``g^j u`` to ``g u``; misses are recorded as flags."""
    g = w[0]
    run = 1
    while run < len(w) and w[run] == g:
        run += 1
    for j in range(2, run + 1):
        u = w[j:]
        word = (g,) * j + u
        lasts = {r[-1] for _, _, r in tau_moves(word, m)}
        if not lasts:
            continue
        short = {r[-1] for _, _, r in tau_moves((g,) + u, m)}
        for last in lasts:
            ok = last in short
            rep.checked["power_strip_transfer"] += 1
            if not ok:
                rep.notes.setdefault("power_strip_flags", []).append([fmt(word), fmt((last,))])


@_timed
def dihedral_suite(ms: Sequence[int] = (3, 4, 5), max_len: int = 8,
                   oracle_len: int = 6) -> SuiteReport:
    """Critical-word properties, criticality of long words, the geodesic test,
    alternating suffixes of tau-related geodesics and tau-move transfer, on one pair."""
    from .oracle import ball_labels
    from . import kernels

    rep = SuiteReport("dihedral")
    for m in ms:
        pres = Presentation.dihedral(m)
        ctx = DihedralCtx(0, 1, m)
        fmt = pres.format_word
        geodesics = []
        for w in words_up_to(list(range(4)), max_len, reduced=True):
            p, n = _stats(w, m)
            geo = p + n <= m
            rep.check("is_2geodesic_matches_reduction",
                      geo == (len(reduce_2gen(w, ctx, pres.order)) == len(w)), fmt(w))
            if p + n >= m:
                has = any(_classify(w[i:k], m) is not None
                          for i in range(len(w)) for k in range(i + 2, len(w) + 1))
                rep.check("long_word_has_critical_subword", has, fmt(w))
            if not geo:
                continue
            geodesics.append(w)
            if _classify(w, m) is not None:
                rep.checked[f"critical_words_m{m}"] += 1
                _check_critical(rep, w, m, pres, fmt)
            if w and len(w) >= 2:
                _power_strip(rep, w, m, fmt)
            for _, _, v in tau_moves(w, m):
                if v != w:
                    _check_alt_suffix(rep, w, v, m, fmt)
        # oracle cross-check of geodesic test and uniqueness below m
        k, R = 4, oracle_len + 4
        labels = ball_labels(pres, R)
        off = kernels.length_offsets(k, R)
        shortest: dict = {}
        members: dict = defaultdict(list)
        for w in words_up_to(list(range(4)), oracle_len):
            c = int(labels[kernels.encode_word(w, k, off)])
            if c not in shortest or len(w) < shortest[c]:
                shortest[c] = len(w)
            members[c].append(w)
        for c, ws in members.items():
            for w in ws:
                rep.check("is_2geodesic_matches_oracle",
                          _is_2geodesic(w, m) == (len(w) == shortest[c]), fmt(w))
            same_len: dict = defaultdict(list)
            for w in ws:
                same_len[len(w)].append(w)
            for L, group in same_len.items():
                for w in group:
                    p, n = _stats(w, m)
                    if p + n < m and L == shortest[c]:
                        rep.check("unique_geodesic_below_m", len(group) == 1, fmt(w))
    rep.notes["power_strip_flag_count"] = len(rep.notes.get("power_strip_flags", []))
    return rep


# -- reducer -----------------------------------------------------------------

def _maximal_2gen_subwords(w: Word) -> list[tuple[int, int]]:
    """Spans ``[i, j)`` of maximal subwords of ``w`` involving exactly two generators."""
    spans = []
    L = len(w)
    for i in range(L):
        names: set = set()
        j = i
        while j < L and (len(names) < 2 or (w[j] >> 1) in names):
            names.add(w[j] >> 1)
            j += 1
        if len(names) == 2 and (i == 0 or (w[i - 1] >> 1) not in names):
            spans.append((i, j))
    return spans


@_timed
def reducer_suite(pres: Presentation, radius: int = 5, certify: bool = True,
                  jit: Optional[bool] = None) -> SuiteReport:
    """Normal-form soundness and completeness, cancellation and relator
    identities, closure of W, fellow travelling, structure of rightward
    reductions, tie-independence of optimal factorizations, and agreement
    with the dihedral reduction on 2-generator words."""
    from .automata import normal_forms_up_to
    from .oracle import certify_ball

    rep = SuiteReport("reducer")
    fmt = pres.format_word
    if certify:
        cert = certify_ball(pres, radius, jit=jit)
        rep.checked["ball_words"] = cert.words
        rep.checked["ball_classes"] = cert.classes
        for a, b in cert.merged:
            rep.violations["oracle_class_merged"].append([fmt(a), fmt(b)])
        for a, b in cert.unknowns:
            rep.violations["oracle_unknown_after_retry"].append([fmt(a), fmt(b)])
        for w in cert.not_reduced:
            rep.violations["rho_not_idempotent_or_longer"].append(fmt(w))
        for w in cert.not_decreasing:
            rep.violations["rho_not_shortlex_decreasing"].append(fmt(w))
        rep.notes["oracle_split_retried"] = len(cert.split)
        rep.notes["oracle_split_resolved"] = len(cert.resolved)

    W = normal_forms_up_to(pres, radius)
    Wset = set(W)
    k = 2 * pres.n
    M = pres.M
    halves = [(alternating(2 * i, 2 * j, pres.m(i, j)), alternating(2 * j, 2 * i, pres.m(i, j)))
              for i, j in pres.finite_pairs()]
    ties = 0
    for w in W:
        for i in range(len(w)):
            rep.check("W_prefix_closed", w[:i] in Wset, fmt(w))
            for j in range(i + 1, len(w) + 1):
                rep.check("W_subword_closed", in_W(w[i:j], pres), fmt(w))
        rep.check("W_matches_definition", is_critically_reduced(w, pres), fmt(w))
        for g in range(k):
            rep.check("cancel_pair_identity", rho(w + (g, g ^ 1), pres) == w, (fmt(w), pres.format_letter(g)))
            if w and w[-1] == g ^ 1:
                continue
            r = rho(w + (g,), pres)
            d = fellow_travel_distance(w, r, pres)
            rep.check("fellow_travel_M", d <= M, (fmt(w), pres.format_letter(g), d))
            ties += _check_optimal_ties(rep, w, g, pres, r)
        for left, right in halves:
            rep.check("relator_swap_identity", rho(w + left, pres) == rho(w + right, pres), fmt(w))
    rep.notes["optimal_ties"] = ties
    # ρ agrees with the dihedral reduction on 2-generator words
    for i, j in pres.finite_pairs():
        ctx = DihedralCtx(i, j, pres.m(i, j))
        letters = [2 * i, 2 * i + 1, 2 * j, 2 * j + 1]
        for w in words_up_to(letters, radius + 1):
            rep.check("rho_matches_dihedral", rho(w, pres) == reduce_2gen(w, ctx, pres.order), fmt(w))
    # the same identities over the complement of W up to the ball
    rep.checked["W_size"] = len(W)
    return rep


def _check_optimal_ties(rep: SuiteReport, w: Word, g: int, pres: Presentation, r: Word) -> int:
    """Every optimal factorization of ``w g`` must give the same result as rho."""
    fmt = pres.format_word
    rf = rightward_factorizations(w, g, pres)
    if rf:
        best = max(f.chain()[0][0] for f in rf)
        opts = [f for f in rf if f.chain()[0][0] == best]
        outs = {apply_factorization(f, pres).final_word for f in opts}
        rep.check("optimal_rightward_unique_output", outs == {r}, (fmt(w), pres.format_letter(g)))
        for f in opts:
            if f.k > 1:
                out = apply_factorization(f, pres).final_word
                _check_chain_maximality(rep, f, out, pres)
        return int(len(opts) > 1)
    lf = leftward_factorizations(w, g, pres)
    if lf:
        best = min(f.chain()[-1][0] for f in lf)
        opts = [f for f in lf if f.chain()[-1][0] == best]
        outs = {apply_factorization(f, pres).final_word for f in opts}
        rep.check("optimal_leftward_unique_output", outs == {r}, (fmt(w), pres.format_letter(g)))
        return int(len(opts) > 1)
    return 0


def _check_chain_maximality(rep: SuiteReport, f, out: Word, pres: Presentation) -> None:
    """With k > 1, ``w_2 .. w_k g`` are maximal 2-generator subwords of the
    input and the images ``u'_2 .. u'_k`` are maximal 2-generator subwords of
    the output."""
    fmt = pres.format_word
    src = f.word()
    lengths = [len(x) for x in f.factors]
    in_spans = set(_maximal_2gen_subwords(src))
    out_spans = set(_maximal_2gen_subwords(out))
    pos = len(f.alpha) + lengths[0]
    for i, L in enumerate(lengths[1:], start=2):
        end = pos + L + (len(f.beta) if i == len(lengths) else 0)
        rep.check("chain_factors_maximal_in_input", (pos, end) in in_spans, (fmt(src), i))
        pos += L
    # |u'_1| = |w_1| - 1 and |u'_l| = |w_l| afterwards
    pos = len(f.alpha) + lengths[0] - 1
    for i, L in enumerate(lengths[1:], start=2):
        rep.check("chain_images_maximal_in_output", (pos, pos + L) in out_spans, (fmt(src), fmt(out), i))
        pos += L


# -- geodesic ----------------------------------------------------------------

def geodesics_up_to(pres: Presentation, radius: int) -> list[Word]:
    out = [()]
    level = [()]
    for _ in range(radius):
        nxt = []
        for v in level:
            for g in range(2 * pres.n):
                if v and v[-1] == g ^ 1:
                    continue
                x = v + (g,)
                if len(rho(x, pres)) == len(x):
                    nxt.append(x)
        out.extend(nxt)
        level = nxt
    return out


def _fftp_sweep(rep: SuiteReport, pres: Presentation, radius: int, bound: int, prop: str,
                letters: Optional[Sequence[int]] = None) -> None:
    fmt = pres.format_word
    letters = list(range(2 * pres.n)) if letters is None else list(letters)
    methods = Counter()
    worst = 0
    level = [()]
    for _ in range(radius):
        nxt = []
        for v in level:
            for g in letters:
                x = v + (g,)
                if minimal_nongeodesic_prefix(x, pres) is None:
                    nxt.append(x)
                    continue
                wit = fftp_witness(x, pres)
                methods[wit.method] += 1
                worst = max(worst, wit.distance)
                good = (len(wit.word) < len(x) and wit.distance <= bound
                        and rho(wit.word, pres) == rho(x, pres))
                rep.check(prop, good, (fmt(x), fmt(wit.word), wit.distance))
        level = nxt
    rep.notes[f"{prop}_methods"] = dict(methods)
    rep.notes[f"{prop}_fallbacks"] = sum(methods[m] for m in FALLBACK_METHODS)
    rep.notes[f"{prop}_max_distance"] = worst


@_timed
def geodesic_suite(pres: Presentation, radius: int = 6) -> SuiteReport:
    """FFTP witnesses, the generator/inverse check and the constraints on last
    letters of equal geodesics, over all geodesics of length ``<= radius``."""
    from .automata import normal_forms_up_to

    rep = SuiteReport("geodesic")
    fmt = pres.format_word
    _fftp_sweep(rep, pres, radius, pres.M, "fftp_M")
    for i, j in pres.finite_pairs():
        m = pres.m(i, j)
        sub = Presentation.dihedral(m, (pres.generators[i], pres.generators[j]))
        _fftp_sweep(rep, sub, radius, 2 * m, "dihedral_fftp_2m")

    for w in normal_forms_up_to(pres, radius - 1):
        for x in range(pres.n):
            a, b = 2 * x, 2 * x + 1
            if w and (w[-1] == b or w[-1] == a):
                continue
            both_bad = not is_geodesic(w + (a,), pres) and not is_geodesic(w + (b,), pres)
            rep.check("generator_and_inverse_not_both_nongeodesic", not both_bad, (fmt(w), pres.generators[x]))

    classes: dict = defaultdict(list)
    for v in geodesics_up_to(pres, radius):
        if v:
            classes[rho(v, pres)].append(v)
    for nf, geos in classes.items():
        lasts = {v[-1] for v in geos}
        rep.check("at_most_two_last_letters", len(lasts) <= 2, fmt(nf))
        if len(lasts) < 2:
            continue
        for u in geos:
            for v in geos:
                if u[-1] >= v[-1]:
                    continue
                rep.check("distinct_last_letters_distinct_names", u[-1] >> 1 != v[-1] >> 1, (fmt(u), fmt(v)))
                want = {u[-1] >> 1, v[-1] >> 1}
                for x in (u, v):
                    _, suf, _ = maximal_2gen_suffix(x)
                    rep.check("two_generator_suffix_uses_last_names", {c >> 1 for c in suf} == want,
                              (fmt(u), fmt(v)))
    rep.checked["geodesic_classes"] = len(classes)
    return rep


# -- automata ----------------------------------------------------------------

@_timed
def automata_suite(pres: Presentation, depth: int = 6, max_states: int = 100_000,
                   geodesic_pair: Optional[tuple] = None) -> SuiteReport:
    """Build both acceptors, verify them exhaustively, and compare growth with
    the normal-form class count of the ball."""
    from .automata import (
        AcceptorMismatch, GEODESIC, SHORTLEX, build_acceptor, dfa_count_by_length,
    )

    rep = SuiteReport("automata")
    fmt = pres.format_word
    for kind in (SHORTLEX, GEODESIC):
        try:
            d = build_acceptor(pres, kind, max_states=max_states, verify_depth=depth)
        except AcceptorMismatch as e:
            rep.violations[f"{kind}_acceptor_agrees"].extend(fmt(w) for w in e.words[:20])
            continue
        rep.checked[f"{kind}_acceptor_agrees"] += 1
        counts = dfa_count_by_length(d, depth)
        rep.notes[f"{kind}_states"] = d.n_states
        rep.notes[f"{kind}_counts"] = counts
        if kind == SHORTLEX:
            classes = {rho(w, pres) for w in words_up_to(list(range(2 * pres.n)), depth)}
            nfs = Counter(len(nf) for nf in classes)
            ball = [nfs.get(L, 0) for L in range(depth + 1)]
            rep.notes["ball_class_counts"] = ball
            rep.check("shortlex_counts_match_ball", counts == ball, (counts, ball))
            # smaller difference set must give the same language on verified lengths
            small = build_acceptor(pres, kind, max_states=max_states, verify_depth=0,
                                   diff_depth=max(1, depth - 2))
            rep.check("shortlex_stable_under_rebuild",
                      dfa_count_by_length(small, depth) == counts, depth)
        if kind == GEODESIC:
            W_counts = Counter(len(w) for w in geodesics_up_to(pres, depth))
            rep.check("geodesic_counts_match_enumeration",
                      counts == [W_counts.get(L, 0) for L in range(depth + 1)], counts)
            if geodesic_pair is not None:
                for w in geodesic_pair:
                    rep.check("geodesic_accepts_pair", d.accepts(w), fmt(w))
    return rep


def run_suite(name: str, pres: Presentation, radius: int) -> SuiteReport:
    if name == "dihedral":
        finite = sorted({pres.m(i, j) for i, j in pres.finite_pairs()})
        return dihedral_suite(tuple(finite), max_len=max(radius, 1),
                              oracle_len=min(radius, 6))
    if name == "reducer":
        return reducer_suite(pres, radius)
    if name == "geodesic":
        return geodesic_suite(pres, radius)
    if name == "automata":
        return automata_suite(pres, radius)
    raise ValueError(f"unknown suite {name!r}")
