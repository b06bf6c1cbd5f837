import pytest
from hypothesis import given
from hypothesis import strategies as st

from zxnf._backend import diagram_matrix
from zxnf.diagram import (
    H,
    PhaseNotInteger,
    UnbalancedParenthesis,
    UnknownToken,
    X,
    Z,
    compile_to_generators,
    dagger,
    parse,
    t_count,
    to_text,
    word_to_diagram,
)
from zxnf.ring import projective_equal

nodes = st.one_of(
    st.builds(Z, st.integers(0, 7)),
    st.builds(X, st.integers(0, 7)),
    st.just(H),
)
diagrams = st.lists(nodes, max_size=25).map(tuple)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("", ()),
        ("Z(1)", (Z(1),)),
        ("Z(4); X(4)", (Z(4), X(4))),
        ("H;Z(-1)", (H, Z(7))),
        ("  X( 10 ) ; H ", (X(2), H)),
    ],
)
def test_parse(text, expected):
    assert parse(text) == expected


@pytest.mark.parametrize(
    "text, error, offset",
    [
        ("Q(1)", UnknownToken, 0),
        ("Z(1); Y(2)", UnknownToken, 6),
        ("Z(1.5)", PhaseNotInteger, 2),
        ("Z(a)", PhaseNotInteger, 2),
        ("Z(1", UnbalancedParenthesis, 1),
        ("Z(1))", UnbalancedParenthesis, 4),
        ("Z(1);", UnknownToken, 4),
        ("Z(1) X(2)", UnknownToken, 5),
    ],
)
def test_parse_errors(text, error, offset):
    with pytest.raises(error) as info:
        parse(text)
    assert info.value.offset == offset


def test_offsets_are_bytes():
    with pytest.raises(UnknownToken) as info:
        parse("Z(1); é")
    assert info.value.offset == 6


def test_print():
    assert to_text(()) == ""
    assert to_text((Z(1),)) == "Z(1)"
    assert to_text((H, Z(2))) == "H; Z(2)"


def test_dagger_examples():
    assert dagger((Z(1),)) == (Z(7),)
    assert dagger((H,)) == (H,)
    d = (Z(1), H, X(2))
    assert dagger(d) == (X(6), H, Z(7))
    assert projective_equal(diagram_matrix(dagger(d)), diagram_matrix(d).dagger())


def test_compile_examples():
    assert compile_to_generators((Z(3),)) == "TTT"
    assert compile_to_generators((H,)) == "TTRTT"
    assert compile_to_generators((X(2),)) == "R"
    assert compile_to_generators((X(4), Z(0))) == "RR"


def test_t_count():
    assert t_count((Z(1), X(3), H, Z(2), X(4))) == 2


@given(diagrams)
def test_round_trip(d):
    assert parse(to_text(d)) == d


@given(diagrams)
def test_dagger_involution(d):
    assert dagger(dagger(d)) == d


@given(diagrams)
def test_compile_preserves_semantics(d):
    compiled = word_to_diagram(compile_to_generators(d))
    assert projective_equal(diagram_matrix(compiled), diagram_matrix(d))
