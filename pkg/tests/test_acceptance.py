"""Acceptance criteria, one test each; every test emits a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (lines appear in the terminal
summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import functools
import statistics
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES  # noqa: E402

from artin_shortlex import Presentation, parse_word  # noqa: E402
from artin_shortlex.dihedral import DihedralCtx, tau  # noqa: E402
from artin_shortlex.geodesic import equal_in_G  # noqa: E402
from artin_shortlex.oracle import Equal, certify_ball, oracle_equal  # noqa: E402
from artin_shortlex.reducer import (  # noqa: E402
    apply_factorization, clear_caches, find_leftward_lex_reducing, rho,
)
from artin_shortlex.sweeps import (  # noqa: E402
    automata_suite, dihedral_suite, geodesic_suite, reducer_suite,
)

DA3 = Presentation.dihedral(3)
G333 = Presentation.triangle(3, 3, 3)
G345 = Presentation.triangle(3, 4, 5)
COLD_RUNS = 25


def criterion(number: int, title: str, limit: float):
    """Record a PASS/FAIL line with wall time; a run over ``limit`` seconds fails."""
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            t0 = time.perf_counter()
            detail = ""
            try:
                detail = fn() or ""
                elapsed = time.perf_counter() - t0
                assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit:g}s"
            except AssertionError as exc:
                elapsed = time.perf_counter() - t0
                ACCEPTANCE_LINES.append(f"FAIL [{number}] {title} ({elapsed:.2f}s): {exc}")
                print(ACCEPTANCE_LINES[-1])
                raise
            ACCEPTANCE_LINES.append(f"PASS [{number}] {title} ({elapsed:.2f}s) {detail}".rstrip())
            print(ACCEPTANCE_LINES[-1])
        return run
    return wrap


def cold_median(fn) -> float:
    """Median wall time of ``fn`` with all memoization cleared before each run."""
    times = []
    for _ in range(COLD_RUNS):
        clear_caches()
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def assert_clean(rep, props):
    for p in props:
        assert rep.checked[p] > 0, f"{p} never checked"
        assert not rep.violations.get(p), f"{p}: {rep.violations[p][:3]}"


@functools.cache
def reducer_reports():
    return {name: reducer_suite(pres, 5, certify=False)
            for name, pres in (("333", G333), ("345", G345))}


@criterion(1, "tau of the worked critical word and equality in the dihedral group", 60)
def test_worked_critical_word_tau_and_equality():
    ctx = DihedralCtx.of(DA3)
    w, expect = parse_word("a b b A", DA3), parse_word("B a a b", DA3)

    def op():
        assert tau(w, ctx) == expect
        assert equal_in_G(w, expect, DA3)

    op()
    assert DA3.format_word(tau(w, ctx)) == "B a a b"
    t = cold_median(op)
    assert t < 1e-3, f"median cold time {t * 1e3:.3f} ms"
    return f"median {t * 1e3:.3f} ms"


@criterion(2, "braid relation normal form and one-move oracle certificate", 60)
def test_braid_relation_normal_form_and_oracle():
    aba, bab = parse_word("a b a", DA3), parse_word("b a b", DA3)

    def op():
        assert rho(bab, DA3) == aba
        assert oracle_equal(aba, bab, DA3, max_len=3, inverse_halves=False) == Equal(1)

    op()
    t = cold_median(op)
    assert t < 1e-3, f"median cold time {t * 1e3:.3f} ms"
    return f"median {t * 1e3:.3f} ms"


@criterion(3, "three-step leftward sequence on the (3,4,5) example", 60)
def test_worked_leftward_sequence_on_345():
    x = parse_word("c a a c a B C b b c A B B a", G345)
    expected = ["c a a c a B C b b c b A A B",
                "c a a c a c b c c B C A A B",
                "a c a c c a b c c B C A A B"]

    def op():
        f = find_leftward_lex_reducing(x[:-1], x[-1], G345)
        return apply_factorization(f, G345)

    tr = op()
    assert len(tr.steps) == 3
    cur, seen = x, []
    for s in tr.steps:
        cur = cur[:s.position] + s.after + cur[s.position + len(s.before):]
        seen.append(G345.format_word(cur))
    assert seen == expected, seen
    assert tr.final_word == parse_word(expected[-1], G345)
    t = cold_median(op)
    assert t < 1e-3, f"median cold time {t * 1e3:.3f} ms"
    return f"median {t * 1e3:.3f} ms"


@criterion(4, "critical-word properties for m in 3,4,5 up to length 8", 60)
def test_critical_word_properties_sweep():
    rep = dihedral_suite((3, 4, 5), max_len=8)
    assert_clean(rep, ["tau_involution", "tau_same_element", "tau_preserves_pn",
                       "tau_end_names_differ", "tau_end_signs", "tau_fellow_travel_2m"])
    assert rep.ok, rep.to_json()["violations"]
    n = sum(v for k, v in rep.checked.items() if k.startswith("critical_words_m"))
    return f"{n} critical words, 0 violations"


@criterion(5, "normal forms agree with oracle equality on the (3,3,3) ball of radius 5", 600)
def test_normal_forms_match_oracle_on_333_ball():
    rep = certify_ball(G333, 5)
    assert not rep.merged, rep.merged[:3]
    assert not rep.unknowns, rep.unknowns[:3]
    assert not rep.not_reduced and not rep.not_decreasing
    assert rep.words == sum(6 ** i for i in range(6))
    return f"{rep.words} words, {rep.classes} classes, {len(rep.split)} retried, 0 unknown"


@criterion(6, "cancellation and relator-swap identities on W up to length 5", 600)
def test_cancellation_and_relator_swap_identities():
    counts = []
    for rep in reducer_reports().values():
        assert_clean(rep, ["cancel_pair_identity", "relator_swap_identity"])
        counts.append(rep.checked["cancel_pair_identity"] + rep.checked["relator_swap_identity"])
    return f"{sum(counts)} instances, 0 violations"


@criterion(7, "appending a letter to a normal form fellow travels within M", 600)
def test_normal_form_extension_fellow_travels():
    details = []
    for name, rep in reducer_reports().items():
        assert_clean(rep, ["fellow_travel_M"])
        details.append(f"{name}: {rep.checked['fellow_travel_M']}")
    return "checked " + ", ".join(details)


@criterion(8, "fftp witnesses and last-letter constraints on (3,3,3) up to length 6", 900)
def test_fftp_and_last_letter_sweeps_on_333():
    rep = geodesic_suite(G333, 6)
    assert_clean(rep, ["fftp_M", "generator_and_inverse_not_both_nongeodesic",
                       "at_most_two_last_letters", "distinct_last_letters_distinct_names",
                       "two_generator_suffix_uses_last_names"])
    assert rep.notes["fftp_M_max_distance"] <= 6
    assert rep.ok, rep.to_json()["violations"]
    return (f"{rep.checked['fftp_M']} witnesses, max distance {rep.notes['fftp_M_max_distance']}, "
            f"{rep.notes['fftp_M_fallbacks']} fallbacks")


@criterion(9, "verified (3,3,3) acceptors, growth counts and the braid pair", 300)
def test_acceptors_on_333():
    pair = (parse_word("a b a", G333), parse_word("b a b", G333))
    rep = automata_suite(G333, 6, geodesic_pair=pair)
    assert_clean(rep, ["shortlex_acceptor_agrees", "geodesic_acceptor_agrees",
                       "shortlex_counts_match_ball", "geodesic_accepts_pair"])
    assert rep.notes["shortlex_counts"][:3] == [1, 6, 30]
    assert rep.ok, rep.to_json()["violations"]
    return (f"shortlex {rep.notes['shortlex_states']} states, counts "
            f"{rep.notes['shortlex_counts']}")


if __name__ == "__main__":
    failed = 0
    for fn in (test_worked_critical_word_tau_and_equality,
               test_braid_relation_normal_form_and_oracle,
               test_worked_leftward_sequence_on_345,
               test_critical_word_properties_sweep,
               test_normal_forms_match_oracle_on_333_ball,
               test_cancellation_and_relator_swap_identities,
               test_normal_form_extension_fellow_travels,
               test_fftp_and_last_letter_sweeps_on_333,
               test_acceptors_on_333):
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
