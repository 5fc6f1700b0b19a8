import json
import os

from utils.alerts import AlertManager

OPTIONS_FILE = os.environ.get("DESIGNS_OPTIONS", "./options.json")

DEFAULT_OPTIONS = {
	"precision": 4,
	"report_format": "table",
	"initial_temperature": 0.05,
	"cooling_rate": 0.95,
	"moves_per_temperature": 200,
	"min_temperature": 1e-5,
	"restarts": 8,
	"seed": 42,
	"time_budget": 60.0,
	"recompute_interval": 256,
	"workers": 4
}

class OptionsManager:
	_options = None

	@classmethod
	def _load(cls):
		if cls._options is not None:
			return cls._options

		stored = {}
		if os.path.exists(OPTIONS_FILE):
			try:
				with open(OPTIONS_FILE, "r", encoding="utf-8") as f:
					stored = json.load(f)
			except (OSError, ValueError) as e:
				AlertManager.Get().CreateWarning(f"Ignoring Unreadable Options File {OPTIONS_FILE}: {e}")
		if not isinstance(stored, dict):
			stored = {}

		cls._options = {key: cls._coerce(key, stored.get(key, default)) for key, default in DEFAULT_OPTIONS.items()}

		return cls._options

	@staticmethod
	def _coerce(key: str, value):
		default = DEFAULT_OPTIONS[key]
		if key == "time_budget" and value is None:
			return None
		try:
			return type(default)(value)
		except (TypeError, ValueError):
			AlertManager.Get().CreateWarning(f"Option '{key}' Has Bad Value {value!r}, Using {default!r}")
			return default

	@classmethod
	def _save(cls):
		if cls._options is None:
			return

		with open(OPTIONS_FILE, "w", encoding="utf-8") as f:
			json.dump(cls._options, f, indent='\t')

	@classmethod
	def Get(cls, key: str) -> int | float | str:
		"""Returns A Persistent Option Value

		Args:
			key (str): The Key Of The Option

		Returns:
			int|float|str: The Gotten Value / Default Fallback
		"""
		return cls._load().get(key, DEFAULT_OPTIONS.get(key))

	@classmethod
	def Set(cls, key: str, value):
		"""Save The Option Of Key With A Given Value

		Args:
			key (str): The Option Key To Set
			value: The Value Of The Option
		"""
		if key not in DEFAULT_OPTIONS:
			raise KeyError(f"Unknown Option '{key}'")
		cls._load()[key] = cls._coerce(key, value)
		cls._save()

	@classmethod
	def Reset(cls):
		"""Drops The Cached Options So The Next Get Rereads The File"""
		cls._options = None
