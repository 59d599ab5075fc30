import pytest
from hypothesis import given

from oracles import brute_threshold, literal_class_c, run_word
from primset import PartialAutomaton
from primset.automata import (
    apply_word,
    careful_threshold,
    cerny,
    cerny_plus_identity,
    class_c_partition,
    find_sink,
    greedy_careful_word,
    is_class_c_partition,
    is_eulerian,
    is_synchronizing,
    reset_threshold,
)
from primset.errors import (
    CapExceeded,
    NotCarefullySynchronizing,
    NotComplete,
    NotSynchronizing,
    ParseError,
    ProcedureStuck,
    UndefinedTransition,
)
from primset.partitions import Partition, set_partitions

from conftest import automata

A, B, C = 0, 1, 2


def test_apply_empty_word():
    a = cerny(4)
    assert apply_word(a, {1, 3}, []) == frozenset({1, 3})


def test_cerny4_shortest_reset_word():
    word = [A, B, B, B, A, B, B, B, A]
    assert len(apply_word(cerny(4), range(4), word)) == 1


def test_undefined_transition_reports_state_and_position():
    a = PartialAutomaton.of([(1, None, 0), (0, 0, 0)])
    with pytest.raises(UndefinedTransition) as exc:
        apply_word(a, {0, 1, 2}, [1, 0, 0])
    # after letter 1 the image is {0}, after letter 0 it is {1}: the third step fails
    assert exc.value.state == 1 and exc.value.position == 2


def test_apply_word_rejects_bad_letters():
    with pytest.raises(ValueError):
        apply_word(cerny(3), {0}, [2])


def test_one_state_threshold():
    r = reset_threshold(PartialAutomaton.of([(0,)]))
    assert r.value == 0 and r.witness == ()


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
def test_cerny_thresholds(n):
    r = reset_threshold(cerny(n))
    assert r.value == (n - 1) ** 2
    assert len(apply_word(cerny(n), range(n), r.witness)) == 1


def test_permutation_letters_do_not_synchronize():
    a = PartialAutomaton.of([(1, 2, 0), (0, 2, 1)])
    with pytest.raises(NotSynchronizing):
        reset_threshold(a)
    assert not is_synchronizing(a)


def test_reset_threshold_needs_complete():
    with pytest.raises(NotComplete):
        reset_threshold(PartialAutomaton.of([(0, None)]))


@given(automata(max_n=4, max_k=2))
def test_rt_is_minimal_by_brute_force(a):
    try:
        r = reset_threshold(a)
    except NotSynchronizing:
        assert brute_threshold(a.letters, a.n, (a.n - 1) ** 2 + 1) is None
        return
    assert brute_threshold(a.letters, a.n, r.value) == r.value
    assert len(run_word(a.letters, range(a.n), r.witness)) == 1


@given(automata(max_n=4, max_k=3, partial=True))
def test_car_is_minimal_by_brute_force(a):
    try:
        r = careful_threshold(a)
    except NotCarefullySynchronizing:
        # a shortest careful word never repeats an image, so 2^n letters suffice
        assert brute_threshold(a.letters, a.n, min(2 ** a.n, 9)) is None
        return
    assert brute_threshold(a.letters, a.n, r.value) == r.value
    assert len(apply_word(a, range(a.n), r.witness)) == 1


@given(automata(max_n=5, max_k=3))
def test_car_equals_rt_on_complete_automata(a):
    if is_synchronizing(a):
        assert careful_threshold(a).value == reset_threshold(a).value


def test_every_letter_partial_is_not_careful():
    a = PartialAutomaton.of([(0, None, 1), (None, 0, 0)])
    with pytest.raises(NotCarefullySynchronizing):
        careful_threshold(a)


def test_greedy_one_state():
    assert greedy_careful_word(PartialAutomaton.of([(0,)])).word == ()


def test_greedy_cerny4():
    a = cerny(4)
    res = greedy_careful_word(a, (1,))
    assert len(apply_word(a, range(4), res.word)) == 1
    assert len(res.word) >= reset_threshold(a).value
    assert [s.k for s in res.trace] == [3, 2, 1]


@given(automata(min_n=2, max_n=7, max_k=3))
def test_greedy_bounds_on_complete_automata(a):
    if not is_synchronizing(a):
        return
    res = greedy_careful_word(a, (1,))
    n = a.n
    assert len(apply_word(a, range(n), res.word)) == 1
    for step in res.trace:
        assert step.length <= (n - step.k) * 2 ** (n - step.k - 1)


@given(automata(min_n=2, max_n=6, max_k=3, partial=True))
def test_greedy_larger_steps_still_careful(a):
    try:
        careful_threshold(a)
    except NotCarefullySynchronizing:
        return
    try:
        res = greedy_careful_word(a, (2, 1))
    except ProcedureStuck:
        # no total merging letter to start from
        return
    assert len(apply_word(a, range(a.n), res.word)) == 1


def test_greedy_stuck_without_start_letter():
    with pytest.raises(ProcedureStuck):
        greedy_careful_word(PartialAutomaton.of([(1, 0), (0, None)]))


def test_greedy_rejects_bad_schedule():
    with pytest.raises(ValueError):
        greedy_careful_word(cerny(3), (0,))


def test_cerny_small():
    assert reset_threshold(cerny(2)).value == 1
    with pytest.raises(ValueError):
        cerny(1)


def test_is_eulerian():
    assert is_eulerian(PartialAutomaton.of([(1, 2, 0), (0, 2, 1)]))
    assert not is_eulerian(cerny(3))
    # in-degrees of cerny(3): state 0 gets 3 edges, state 1 gets 2, state 2 gets 1
    indeg = [0, 0, 0]
    for letter in cerny(3).letters:
        for t in letter:
            indeg[t] += 1
    assert indeg == [3, 2, 1]


def test_is_eulerian_weights():
    a = PartialAutomaton.of([(0, 0), (1, 1)])
    assert is_eulerian(a)
    assert not is_eulerian(a, [2, 1])
    with pytest.raises(ValueError):
        is_eulerian(a, [1])


def test_find_sink():
    a = PartialAutomaton.of([(2, 2, 2), (1, 0, 2)])
    assert find_sink(a) == 2
    assert find_sink(cerny(4)) is None
    assert find_sink(PartialAutomaton.of([(0, 1, 2)])) == 0


def test_class_c_example():
    p = class_c_partition(cerny_plus_identity(4))
    assert p == Partition.of([[A, C], [B]])


@pytest.mark.parametrize("n", [3, 4])
def test_cerny_alone_has_no_class_c_partition(n):
    assert class_c_partition(cerny(n)) is None


def test_single_permutation_is_class_c():
    a = PartialAutomaton.of([(1, 2, 0)])
    assert class_c_partition(a) == Partition.whole(1)


@given(automata(max_n=3, max_k=4))
def test_class_c_matches_literal_check(a):
    for p in set_partitions(a.k):
        assert is_class_c_partition(a, p) == literal_class_c(a.letters, p.parts, a.n)


def test_class_c_alphabet_cap():
    a = PartialAutomaton.of([(0, 1)] * 13)
    with pytest.raises(CapExceeded):
        class_c_partition(a)


@given(automata(max_n=5, partial=True))
def test_text_round_trip(a):
    text = a.to_text()
    assert PartialAutomaton.from_text(text) == a
    assert PartialAutomaton.from_text(text).to_text() == text


@pytest.mark.parametrize("text", ["", "2\n0 1\n", "2 1\n0\n", "2 1\n0 5\n", "2 2\n0 1\n", "2 1\n0 x\n"])
def test_from_text_rejects(text):
    with pytest.raises(ParseError):
        PartialAutomaton.from_text(text)
