from pathlib import Path

import pytest
import yaml

from semicont.conditions import ORDER, check_global
from semicont.formats import ModelFormatError, load_model, load_model_text, model_from_dict, model_to_dict
from semicont.topology import FiniteModel

MODELS = Path(__file__).resolve().parents[1] / "models"


@pytest.mark.parametrize("name", ["step.yaml", "sierpinski.yaml", "staircase.yaml"])
def test_round_trip(name):
    m = load_model(MODELS / name)
    again = model_from_dict(yaml.safe_load(yaml.safe_dump(model_to_dict(m))))
    assert model_to_dict(again) == model_to_dict(m)
    for c in ORDER:
        assert check_global(c, m).holds == check_global(c, again).holds


def test_sierpinski_file():
    m = load_model(MODELS / "sierpinski.yaml")
    assert isinstance(m, FiniteModel)
    assert m.space.points == ("a", "b")


def test_bad_opens_message():
    with pytest.raises(ModelFormatError, match="not a topology"):
        load_model(MODELS / "bad_opens.yaml")


@pytest.mark.parametrize(
    "text",
    [
        "points: [a]\nopens: [[], [a]]\nvalues: {a: nope}",
        "points: [a, b]\nopens: [[], [a, b]]\nvalues: [1]",
        "points: [a]\nopens: [[], [a]]\nvalues: {a: .nan}",
        "kind: finite\nopens: [[], [a]]",
        "kind: other",
        "domain: '[0,1]'\npieces: [['[0,1)', 0]]",
        "domain: '[0,1]'\npieces: [['[0,1]', '+inf']]",
        "[1, 2]",
        "a: [",
    ],
)
def test_rejects_bad_models(text):
    with pytest.raises(ModelFormatError):
        load_model_text(text)


def test_number_forms():
    m = load_model_text("points: [a, b, c, d]\nopens: [[], [a, b, c, d]]\nvalues: [1/3, 0.25, -inf, 2]")
    assert [str(v) for v in m.values] == ["1/3", "1/4", "-inf", "2"]


def test_missing_file():
    with pytest.raises(ModelFormatError):
        load_model(MODELS / "nope.yaml")
