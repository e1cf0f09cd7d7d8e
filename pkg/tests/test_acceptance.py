"""Acceptance suite: one test per acceptance criterion, run with
`pytest tests/test_acceptance.py -v -s` for one pass/fail line each."""

import pathlib
import random
import time

import numpy as np
import pytest

from conftest import Session
from corpus import CORPUS
from demos import GOLDEN_CASES, GOLDEN_WRAP
from oracle import Oracle
from stepwise.cli import main
from stepwise.machine import Machine
from stepwise.trace import render_trace_plain
from test_prelude import EXPECTED_TYPES, canonical

GOLDEN_DIR = pathlib.Path(__file__).parent / "goldens"


def report(name: str, ok: bool) -> None:
    print(f"\nACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}")
    assert ok, name


def rsq(xs, ys, degree):
    coeffs = np.polyfit(xs, ys, degree)
    fit = np.polyval(coeffs, xs)
    ss_res = float(np.sum((ys - fit) ** 2))
    ss_tot = float(np.sum((ys - np.mean(ys)) ** 2))
    return 1.0 - ss_res / ss_tot if ss_tot else 1.0, coeffs


def steps_to_final(session, goal):
    t = session.run(goal, max_steps=500000)
    assert t.status == "final", (goal, t.status, t.error)
    return t.step_count - 1


@pytest.mark.parametrize("case", GOLDEN_CASES, ids=[c.name for c in GOLDEN_CASES])
def test_golden_traces(case):
    started = time.monotonic()
    s = Session(case.program)
    t = s.run(case.goal, max_steps=case.max_steps,
              continue_budget=case.continue_budget)
    rendered = render_trace_plain(t, width=GOLDEN_WRAP) + "\n"
    elapsed = time.monotonic() - started
    expected = (GOLDEN_DIR / f"{case.name}.txt").read_text()
    ok = rendered == expected and elapsed < 1.0
    if rendered != expected:
        print(f"\n--- expected ---\n{expected}--- got ---\n{rendered}")
    report(f"golden trace {case.name}", ok)


def test_complexity_reproduction():
    started = time.monotonic()
    fast = Session("fast_reverse xs = revAcc xs []\n"
                   "revAcc [] acc = acc\n"
                   "revAcc (x:xs) acc = revAcc xs (x:acc)\n")
    naive = Session("reverse [] = []\n"
                    "reverse (x:xs) = reverse xs ++ [x]\n")

    def lit(n):
        return "[" + ",".join(str(i) for i in range(1, n + 1)) + "]"

    ns = np.array([4, 8, 16, 32, 64])
    fast_steps = np.array([steps_to_final(fast, f"fast_reverse {lit(n)}")
                           for n in ns])
    naive_steps = np.array([steps_to_final(naive, f"reverse {lit(n)}")
                            for n in ns])
    r2_fast, affine = rsq(ns, fast_steps, 1)
    r2_naive, _ = rsq(ns, naive_steps, 2)
    affine_at_64 = float(np.polyval(affine, 64))
    elapsed = time.monotonic() - started
    ok = (r2_fast >= 0.999 and r2_naive >= 0.999
          and naive_steps[-1] >= 4 * affine_at_64 and elapsed < 5.0)
    print(f"\n  fast steps {fast_steps.tolist()} (affine R2={r2_fast:.6f}), "
          f"naive steps {naive_steps.tolist()} (quadratic R2={r2_naive:.6f}), "
          f"ratio at 64 = {naive_steps[-1] / affine_at_64:.1f}x, "
          f"{elapsed:.2f}s")
    report("complexity reproduction (reverse)", ok)


def test_sharing_corecursive_fibs():
    s = Session("fibs = 0 : 1 : zipWith (+) fibs (tail fibs)\n")
    ns = np.array([5, 10, 15, 20])
    steps = np.array([steps_to_final(s, f"fibs !! {n}") for n in ns])
    r2, _ = rsq(ns, steps, 1)
    print(f"\n  fibs steps {steps.tolist()} (affine R2={r2:.6f})")
    report("sharing: fibs element cost is affine", r2 >= 0.999)


def test_oracle_equivalence():
    assert len(CORPUS) >= 50
    mismatches = []
    for program, goal in CORPUS:
        s = Session(program)
        m = Machine(s.bindings, s.goal(goal), continue_budget=10**9)
        while m.step() is not None:
            pass
        if m.status != "final" or m.result_tree() != Oracle(program).eval(goal):
            mismatches.append(goal)
    print(f"\n  {len(CORPUS)} programs, {len(mismatches)} disagreements")
    report("oracle equivalence on corpus", not mismatches)


def test_non_termination_demos():
    s = Session()
    filtered = s.run("filter (\\x -> x*x<50) [1..]", max_steps=200,
                     continue_budget=10)
    finished = s.run("takeWhile (\\x -> x*x<50) [1..]", max_steps=1000,
                     continue_budget=10)
    ok = (filtered.status == "truncated"
          and finished.status == "final"
          and finished.final_display == "[1, 2, 3, 4, 5, 6, 7]")
    report("non-termination contrast (filter vs takeWhile)", ok)


def test_navigation_random_walks():
    cases = [c for c in GOLDEN_CASES
             if c.name in ("insert", "sum", "fold_append", "fold_reverse",
                           "tree_build")]
    assert len(cases) == 5
    rng = random.Random(7)
    for case in cases:
        s = Session(case.program)
        ref_machine = Machine(s.bindings, s.goal(case.goal))
        reference = [ref_machine.current.display]
        while len(reference) - 1 < case.max_steps and ref_machine.step():
            reference.append(ref_machine.current.display)
        s2 = Session(case.program)
        m = Machine(s2.bindings, s2.goal(case.goal))
        index = 0
        for _ in range(1000):
            if rng.random() < 0.55:
                if m.step() is not None:
                    index = min(index + 1, len(reference) - 1)
            else:
                m.step_back()
                index = max(index - 1, 0)
            assert m.current.display == reference[index], case.name
    report("navigation: 1000-move random walks over five traces", True)


def test_error_contract(capsys, tmp_path):
    f = tmp_path / "squares.hs"
    f.write_text("squares n = [x*x | x <- [1..n]]\n")
    code = main(["eval", str(f), "-e", "squares 3"])
    err = capsys.readouterr().err.strip()
    message_ok = (code == 1 and err == (
        "definition of squares, expression [x*x | x <- [1..n]]: "
        "list comprehensions are not supported"))

    s = Session()
    lambdas = s.run("(\\x -> x) == (\\y -> y)")
    lambda_ok = (lambdas.status == "error"
                 and "cannot compare functions" in lambdas.error)

    missing_base = Session("sum (x:xs) = x + sum xs\n").run("sum [1,2,3]")
    base_ok = (missing_base.status == "error"
               and "no equation matched" in missing_base.error)

    report("error contract (comprehension message, function comparison, "
           "incomplete match)", message_ok and lambda_ok and base_ok)


def test_published_name_coverage():
    from stepwise.prelude import load_prelude
    from stepwise.types import render_type

    env, _ = load_prelude()
    type_failures = [name for name, expected in EXPECTED_TYPES.items()
                     if name not in env
                     or render_type(env[name]) != canonical(expected)]

    import test_prelude

    covered = set()
    for mark in test_prelude.test_prelude_behavior.pytestmark:
        if mark.name != "parametrize":
            continue
        for goal, _ in mark.args[1]:
            for name in EXPECTED_TYPES:
                if name in goal:
                    covered.add(name)
    uncovered = set(EXPECTED_TYPES) - covered
    print(f"\n  {len(EXPECTED_TYPES)} published names, "
          f"{len(type_failures)} type mismatches, "
          f"{len(uncovered)} without behavioral checks")
    report("published prelude coverage (types + behavior)",
           not type_failures and not uncovered)
