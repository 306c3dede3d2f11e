from importlib import resources

import pytest

from pencilbound.corpus import (
    TAGS,
    corpus_families,
    load_corpus,
    parse_corpus_line,
    render_corpus,
    run_item,
    sharp,
    sparse_pair,
)

ITEMS = load_corpus()


def test_file_is_regenerated_from_families():
    text = resources.files("pencilbound").joinpath("data/corpus.txt").read_text("utf-8")
    assert text == render_corpus(corpus_families())


def test_lines_round_trip():
    for item in ITEMS:
        assert parse_corpus_line(item.to_line()).to_line() == item.to_line()


def test_tags_and_names():
    names = [it.name for it in ITEMS]
    assert len(names) == len(set(names))
    for it in ITEMS:
        assert it.expected
        assert all(tag in TAGS for _, tag in it.expected.values())


@pytest.mark.parametrize("item", ITEMS, ids=lambda it: it.name)
def test_fixture_agrees(item):
    outcome = run_item(item)
    assert outcome.ok, (outcome.mismatches, outcome.error, outcome.computed)


def test_sparse_degenerate_case_is_derived():
    assert sparse_pair(1).expected["bcount"] == (3, "derived")
    assert sparse_pair(2).expected["bcount"] == (8, "published")


def test_family_ranges():
    with pytest.raises(ValueError):
        sharp(7)
    with pytest.raises(ValueError):
        sparse_pair(0)


@pytest.mark.parametrize("line,fragment", [
    ("a | f: X | rho=1 (published)", "4 fields"),
    ("a | f: X | rho=1 (guess) | n", "bad expectation"),
    ("a | f: X | rho=1 | n", "bad expectation"),
])
def test_malformed_lines(line, fragment):
    with pytest.raises(ValueError, match=fragment):
        parse_corpus_line(line)
