import json

import pytest

from utils import options
from utils.options import DEFAULT_OPTIONS, OptionsManager


def write_options(data):
	with open(options.OPTIONS_FILE, "w", encoding="utf-8") as f:
		f.write(data if isinstance(data, str) else json.dumps(data))
	OptionsManager.Reset()


def test_defaults_without_file():
	for key, value in DEFAULT_OPTIONS.items():
		assert OptionsManager.Get(key) == value


def test_set_persists():
	OptionsManager.Set("restarts", 5)
	OptionsManager.Reset()
	assert OptionsManager.Get("restarts") == 5


def test_unknown_key():
	with pytest.raises(KeyError):
		OptionsManager.Set("volume", 3)


def test_bad_values_fall_back():
	write_options({"precision": "many", "cooling_rate": "0.9", "workers": 2})
	assert OptionsManager.Get("precision") == 4
	assert OptionsManager.Get("cooling_rate") == 0.9
	assert OptionsManager.Get("workers") == 2


@pytest.mark.parametrize("text", ["{not json", "[1, 2]"])
def test_unreadable_file_uses_defaults(text):
	write_options(text)
	assert OptionsManager.Get("seed") == 42


def test_time_budget_may_be_unbounded():
	write_options({"time_budget": None})
	assert OptionsManager.Get("time_budget") is None
