import pytest

from utils import options
from utils.options import OptionsManager


@pytest.fixture(autouse=True)
def isolated_options(tmp_path, monkeypatch):
	"""Every Test Reads Default Options From A Private File"""
	monkeypatch.setattr(options, "OPTIONS_FILE", str(tmp_path / "options.json"))
	OptionsManager.Reset()
	yield
	OptionsManager.Reset()
