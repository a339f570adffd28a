import random

import pytest

from grossturing import corpus
from grossturing.tmcore import (
    BoundaryViolation,
    Configuration,
    ConfigurationSyntaxError,
    InputSymbolOutOfAlphabet,
    MultiTapeMachine,
    Outcome,
    Runner,
    SingleTapeMachine,
    TapeView,
    Transition,
    initial_configuration,
    parse_configuration,
    render,
    run,
    step,
    tokenize_word,
    validate,
)


def two_tape(delta, finals=("acc",), inputs=({"a", "b"}, {"a", "b"})):
    states = {"q0", "q1", *finals} | {q for q, _ in delta} | {t.state for t in delta.values()}
    return MultiTapeMachine(
        states=frozenset(states),
        inputs=tuple(frozenset(s) for s in inputs),
        blank="_",
        startmark=">",
        start="q0",
        finals=frozenset(finals),
        delta=delta,
    )


def test_validate_corpus_clean(machines):
    for name, m in machines.items():
        assert validate(m) == [], name


def test_validate_reports_final_state_rule():
    m = two_tape({("acc", ("a", ">")): Transition("q1", ("a", ">"), ("N", "N"))})
    problems = validate(m)
    assert any("final state" in d.message for d in problems)


def test_validate_reports_startmark_in_alphabet():
    m = two_tape({}, inputs=({"a"}, {"a", ">"}))
    problems = validate(m)
    assert [d.location for d in problems] == ["input 2"]


def test_validate_reports_arity_and_symbols():
    m = two_tape(
        {
            ("q0", ("a", ">")): Transition("q1", ("a",), ("R",)),
            ("q1", ("z", ">")): Transition("q1", ("a", "a"), ("R", "X")),
        }
    )
    messages = " ".join(d.message for d in validate(m))
    assert "arity" in messages and "'z'" in messages and "'X'" in messages


def test_initial_configuration(machines):
    pal = machines["pal2"]
    assert render(initial_configuration(pal, "abba")) == "q0#^abba#^>"
    assert render(initial_configuration(pal, "")) == "q0#^_#^>"
    with pytest.raises(InputSymbolOutOfAlphabet):
        initial_configuration(pal, "ab$")


def test_step_example():
    m = two_tape({("q0", ("a", ">")): Transition("q1", ("a", "a"), ("R", "R"))})
    c0 = initial_configuration(m, "abba")
    c1 = step(m, c0)
    assert render(c1) == "q1#a^bba#a^_"
    assert step(m, c1) is Outcome.HALTED_UNDEFINED


def test_step_on_final_state_halts():
    m = two_tape({}, finals=("q0",))
    assert step(m, initial_configuration(m, "a")) is Outcome.HALTED_FINAL


def test_unary_successor(machines):
    res = run(machines["unary_succ"], "111")
    assert res.outcome is Outcome.HALTED_FINAL
    assert res.final.tapes[0].contents() == ("1",) * 4
    assert res.steps <= 10
    assert len(res.trace) == res.steps + 1


def test_palindromes(machines):
    pal = machines["pal2"]
    assert run(pal, "abba").accepted
    assert run(pal, "abcba").accepted
    assert run(pal, "").accepted
    assert run(pal, "abca").outcome is Outcome.HALTED_UNDEFINED


def test_copy3_final_shape(machines):
    res = run(machines["copy3"], "ab")
    assert res.accepted
    assert render(res.final) == "done#^ab#^ab#^_"


def test_binary_successor(machines):
    m = machines["succ2"]
    for n in range(0, 70):
        word = format(n, "b")
        res = run(m, word)
        assert res.accepted
        out = "".join(res.final.tapes[1].contents())
        assert int(out, 2) == n + 1, word


def test_zero_budget(machines):
    for m in machines.values():
        res = run(m, "", max_steps=0)
        assert res.steps == 0
        assert res.outcome is Outcome.BUDGET_EXHAUSTED or res.outcome is Outcome.HALTED_FINAL


def test_budget_exhausted(machines):
    res = run(machines["spread2"], "", max_steps=25)
    assert res.outcome is Outcome.BUDGET_EXHAUSTED and res.steps == 25


def test_trace_defaults():
    m = corpus.load("spread2")
    assert len(run(m, "", max_steps=100).trace) == 101
    assert run(m, "", max_steps=10, record=False).trace is None


def test_trace_dropped_past_limit(monkeypatch):
    from grossturing import tmcore

    monkeypatch.setattr(tmcore, "TRACE_LIMIT", 50)
    m = corpus.load("spread2")
    assert run(m, "", max_steps=50).trace is not None
    assert run(m, "", max_steps=51).trace is None
    assert len(run(m, "", max_steps=51, record=True).trace) == 52


def test_determinism(machines):
    for name, m in machines.items():
        x = corpus.SAMPLE_INPUTS[name]
        assert run(m, x, max_steps=500) == run(m, x, max_steps=500)


def test_final_state_absorbs(machines):
    res = run(machines["pal2"], "abba")
    runner = Runner(machines["pal2"], res.final)
    assert runner.halt is Outcome.HALTED_FINAL and not runner.step() and runner.steps == 0


def test_tape_conservation(machines):
    # cells never visited by any head keep their initial symbols
    m = machines["copy3"]
    res = run(m, "abab")
    visited = [set() for _ in range(m.k)]
    for c in res.trace:
        for i, v in enumerate(c.tapes):
            visited[i].add(v.head)
    first = res.trace[0]
    for i, v in enumerate(res.final.tapes):
        before = dict(enumerate(first.tapes[i].left + first.tapes[i].right, first.tapes[i].start))
        after = dict(enumerate(v.left + v.right, v.start))
        for p in set(before) | set(after):
            if p not in visited[i]:
                assert before.get(p, "_") == after.get(p, "_")


def test_semi_infinite_boundary():
    m = SingleTapeMachine(
        states=frozenset({"q0", "q1"}),
        alphabet=frozenset({"1", "_"}),
        blank="_",
        inputs=frozenset({"1"}),
        start="q0",
        finals=frozenset(),
        delta={("q0", ("1",)): Transition("q1", ("1",), ("L",))},
        tape_mode="semi-infinite",
    )
    with pytest.raises(BoundaryViolation):
        run(m, "1")
    two_way = SingleTapeMachine(**{**m.__dict__, "tape_mode": "two-way", "delta": dict(m.delta)})
    assert run(two_way, "1").outcome is Outcome.HALTED_UNDEFINED


def test_tape_view_trims_blanks():
    v = TapeView(("_", "_", "a"), ("b", "_", "_"), "_", 3)
    assert v.left == ("a",) and v.right == ("b",)
    assert TapeView((), (), "_").right == ("_",)


def _reachable(machines, rng, n):
    out = []
    names = sorted(corpus.MULTI_TAPE + corpus.SINGLE_TAPE + corpus.STRESS)
    while len(out) < n:
        name = rng.choice(names)
        m = machines[name]
        sigma = sorted(m.input_alphabet(0))
        x = [rng.choice(sigma) for _ in range(rng.randint(0, 6))] if sigma else []
        res = run(m, x, max_steps=rng.randint(0, 60), record=True)
        out.append((m, rng.choice(res.trace)))
    return out


def test_render_parse_round_trip(machines):
    rng = random.Random(20261015)
    for m, c in _reachable(machines, rng, 100):
        text = render(c)
        assert parse_configuration(text, m) == c
        assert render(parse_configuration(text, m)) == text


def test_parse_configuration_errors(machines):
    pal = machines["pal2"]
    for bad in ["q0#^ab", "#^a#^>", "q0#ab#^>", "q0#^a^b#^>", "q0#^ax#^>"]:
        with pytest.raises(ConfigurationSyntaxError):
            parse_configuration(bad, pal)


def test_tokenize_word():
    assert tokenize_word("abba", {"a", "b"}) == ("a", "b", "b", "a")
    assert tokenize_word("10 11", {"10", "11", "1"}) == ("10", "11")
    assert tokenize_word("aab", {"a", "aa", "b"}) == ("aa", "b")
    with pytest.raises(InputSymbolOutOfAlphabet):
        tokenize_word("abc", {"a", "b"})


def test_configuration_equality_ignores_absolute_position():
    a = Configuration("q", (TapeView(("x",), ("y",), "_", 5),))
    b = Configuration("q", (TapeView(("x",), ("y",), "_", -2),))
    assert a == b


def test_trace_dropped_when_tapes_grow():
    # a non-halting, tape-growing run must not keep a quadratic-size trace
    m = corpus.load("spread2")
    res = run(m, "", max_steps=20_000)
    assert res.trace is None and res.steps == 20_000
