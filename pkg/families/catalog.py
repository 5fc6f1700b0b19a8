import os
from dataclasses import dataclass

from design.design import ResolvableDesign, validate
from design.design_io import read_comments, read_design
from utils.alerts import AlertManager

CATALOG_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "catalog")


@dataclass(frozen=True)
class CatalogEntry:
	name: str
	design: ResolvableDesign
	provenance: str


class CatalogManager():
	_instance = None

	def __init__(self):
		self.catalog_dir = CATALOG_DIR
		self.entries = {}

		self._load_entries()

	@classmethod
	def Get(cls, name=None) -> "CatalogManager | CatalogEntry | None":
		"""Gets The CatalogManager Or One Embedded Design

		Args:
			name (str, optional): The Name On The First Comment Line Of A Catalog File. Defaults to None.

		Returns:
			CatalogManager | CatalogEntry | None: The Manager, The Entry, Or None If No File Has That Name
		"""
		if cls._instance is None:
			cls._instance = cls()

		if name is None:
			return cls._instance

		return cls._instance.entries.get(name)

	def _load_entries(self):
		self.entries.clear()

		if not os.path.isdir(self.catalog_dir):
			AlertManager.Get().CreateWarning(f"Catalog Directory {self.catalog_dir} Not Found")
			return

		for file in sorted(os.listdir(self.catalog_dir)):
			if not file.endswith(".design"):
				continue

			path = os.path.join(self.catalog_dir, file)
			try:
				with open(path, "r", encoding="utf-8") as f:
					text = f.read()

				design = read_design(text)
				violations = validate(design)
				if violations:
					AlertManager.Get().CreateWarning(f"Catalog Design {file} Is Invalid: {violations[0]}")
					continue

				comments = read_comments(text)
				name = design.label or file[:-len(".design")]
				provenance = comments[1] if len(comments) > 1 else "embedded"
				self.entries[name] = CatalogEntry(name, design.with_label(name), provenance)

			except Exception as e:
				AlertManager.Get().CreateWarning(f"Failed To Load Catalog Design {file}: {e}")

	def get_names(self) -> list[str]:
		return list(self.entries.keys())
