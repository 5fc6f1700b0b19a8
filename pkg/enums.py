class Variant:
	PLAIN = "plain"
	R = "R"
	C = "C"
	RC = "RC"

	ALL = (PLAIN, R, C, RC)

	@staticmethod
	def parse(text: str) -> str:
		for variant in Variant.ALL:
			if text.lower() == variant.lower():
				return variant
		raise ValueError(f"Unknown Variant '{text}'")

class Family:
	GAMMA = "gamma"
	DELTA = "delta"

class ReportFormat:
	TABLE = "table"
	KV = "kv"
	CSV = "csv"

class Relation:
	IDENTITY = 0
	SAME_ROW = 1
	SAME_COLUMN = 2
	ADJACENT = 3
	OTHER = 4

class ExitCode:
	OK = 0
	FALSE = 1
	PARSE = 2
	DISCONNECTED = 3
	SHAPE = 4
	INTERNAL = 5
