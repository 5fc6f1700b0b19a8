import csv
import io
from dataclasses import dataclass, field

from enums import ReportFormat


@dataclass
class Report:
	"""Key/Value Facts Plus An Optional Table, Rendered In Any ReportFormat"""
	title: str = ""
	pairs: list[tuple[str, object]] = field(default_factory=list)
	headers: list[str] = field(default_factory=list)
	rows: list[list[object]] = field(default_factory=list)

	def add(self, key: str, value):
		self.pairs.append((key, value))
		return self

	def table(self, headers: list[str], rows):
		self.headers = list(headers)
		self.rows = [list(row) for row in rows]
		return self

	def render(self, report_format: str) -> str:
		if report_format == ReportFormat.KV:
			return self._render_kv()
		if report_format == ReportFormat.CSV:
			return self._render_csv()
		if report_format == ReportFormat.TABLE:
			return self._render_table()
		raise ValueError(f"Unknown Report Format '{report_format}'")

	def _render_kv(self) -> str:
		lines = [f"{key}={value}" for key, value in self.pairs]
		for row in self.rows:
			lines.append(" ".join(f"{h}={v}" for h, v in zip(self.headers, row)))
		return "\n".join(lines) + "\n"

	def _render_csv(self) -> str:
		out = io.StringIO()
		writer = csv.writer(out, lineterminator="\n")
		if self.headers:
			writer.writerow(self.headers)
			writer.writerows(self.rows)
		else:
			writer.writerow([key for key, _ in self.pairs])
			writer.writerow([value for _, value in self.pairs])
		return out.getvalue()

	def _render_table(self) -> str:
		lines = []
		if self.title:
			lines.append(self.title)
		if self.pairs:
			width = max(len(key) for key, _ in self.pairs)
			lines.extend(f"{key.ljust(width)}  {value}" for key, value in self.pairs)
		if self.rows:
			if self.pairs:
				lines.append("")
			cells = [self.headers] + [[str(v) for v in row] for row in self.rows]
			widths = [max(len(str(row[i])) for row in cells) for i in range(len(self.headers))]
			for row in cells:
				lines.append("  ".join(str(v).ljust(w) for v, w in zip(row, widths)).rstrip())
		return "\n".join(lines) + "\n"
