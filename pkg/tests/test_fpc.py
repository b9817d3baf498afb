from collections import Counter

import pytest

from linpbt.errors import ConfigurationError
from linpbt.fpc import (
    DEFAULT_GUARD,
    Height,
    Pair,
    Random,
    Size,
    expert,
    parse_certificate,
    unfold_expert,
)
from linpbt.speclang.program import parse_program
from linpbt.terms import mk


def clauses(text="p(a).\np(b).\np(c).\n"):
    return list(parse_program(text).clauses_for(("p", 1)))


def test_one_under_size_keeps_allowance():
    out = expert("one", Size(5))
    assert out.accepted and out.residual == Size(5)


def test_with_under_height_copies():
    assert expert("with", Height(3)).premises == (Height(3), Height(3))


def test_tensor_pair_componentwise():
    out = expert("tensor", Pair(Height(2), Size(4)))
    assert out.premises[0] == Pair(Height(2), Size(4))
    assert out.policy == ("copy", "thread")
    # the right premise of a size tensor starts from whatever the left left over
    c = Pair(Height(2), Size(4))
    assert c.tensor_right(Pair(Height(2), Size(1))) == Pair(Height(2), Size(1))


def test_unknown_rule():
    with pytest.raises(ValueError):
        expert("cut", Height(1))


def test_unfold_height_exhausted():
    assert unfold_expert(Height(0), mk("pv", mk("a")), clauses()) == []
    assert not expert("unfold", Height(0)).accepted


def test_unfold_size_order():
    cs = clauses("p(a).\np(b).\n")
    assert unfold_expert(Size(3), None, cs) == [(cs[0], Size(2)), (cs[1], Size(2))]


def test_unfold_height_order():
    cs = clauses()
    assert [k for _, k in unfold_expert(Height(2), None, cs)] == [Height(1)] * 3
    assert [c for c, _ in unfold_expert(Height(2), None, cs)] == cs


def test_random_permutation_reproducible():
    cs = clauses()
    a = [c for c, _ in unfold_expert(Random(42), None, cs)]
    b = [c for c, _ in unfold_expert(Random(42), None, cs)]
    assert a == b and sorted(map(id, a)) == sorted(map(id, cs))


def test_random_guard():
    assert unfold_expert(Random(1, guard=0), None, clauses()) == []
    (c, k), *_ = unfold_expert(Random(1, guard=3), None, clauses())
    assert k.guard == 2


def test_random_first_choice_uniform():
    cs = clauses()
    r = Random(0)
    firsts = Counter(id(r.permutation(cs)[0]) for _ in range(10_000))
    for c in cs:
        assert abs(firsts[id(c)] / 10_000 - 1 / 3) < 0.05


def test_random_weights_bias():
    cs = clauses("p(a) # 9.\np(b).\n")
    r = Random(5)
    firsts = Counter(r.permutation(cs)[0].rename_apart()[0].args[0].name for _ in range(2000))
    assert firsts["a"] > 1600


def test_pair_needs_both():
    cs = clauses()
    assert unfold_expert(Pair(Height(3), Size(0)), None, cs) == []
    got = unfold_expert(Pair(Height(3), Size(2)), None, cs)
    assert [k for _, k in got] == [Pair(Height(2), Size(1))] * 3


def test_size_with_join():
    assert Size(5).with_join(Size(2), Size(2)) == Size(2)
    assert Size(5).with_join(Size(2), Size(3)) is None


@pytest.mark.parametrize("text, cert", [
    ("height:4", Height(4)),
    ("size:7", Size(7)),
    ("random:seed=42,guard=20", Random(42, 20)),
    ("random", Random(0, DEFAULT_GUARD)),
    ("pair(height:4,random:seed=1)", Pair(Height(4), Random(1))),
    ("pair(size:3, pair(height:1,size:2))", Pair(Size(3), Pair(Height(1), Size(2)))),
])
def test_literals(text, cert):
    c = parse_certificate(text)
    assert c == cert
    assert parse_certificate(c.literal()) == c


@pytest.mark.parametrize("text", ["height", "height:-1", "depth:3", "pair(height:1)", "size:3)"])
def test_bad_literals(text):
    with pytest.raises(ConfigurationError):
        parse_certificate(text)


def test_seed_override():
    assert parse_certificate("pair(size:2,random:seed=1)", seed=9) == Pair(Size(2), Random(9))
