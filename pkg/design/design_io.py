from design.design import ResolvableDesign
from utils.errors import ParseError


def read_comments(text: str) -> list[str]:
	"""Returns The Text Of Every '#' Comment Line, In Order"""
	return [line.strip()[1:].strip() for line in text.splitlines() if line.strip().startswith("#")]


def read_design(text: str, v: int | None = None, label: str | None = None) -> ResolvableDesign:
	"""Parses The Text Design Format

	One block per line as whitespace separated variety numbers, replicates
	separated by blank lines. Lines starting with '#' are comments and the
	first one becomes the label unless one is given.

	Args:
		text (str): The Design Text
		v (int, optional): Number Of Varieties. Inferred From The Largest Variety If Omitted.
		label (str, optional): Overrides The Label Taken From The First Comment

	Raises:
		ParseError: On Malformed Lines, Out Of Range Varieties Or Wrong Block Sizes

	Returns:
		ResolvableDesign: The Parsed Design
	"""
	replicates = []
	current = []
	first_comment = None

	for number, raw in enumerate(text.splitlines(), start=1):
		line = raw.strip()
		if line.startswith("#"):
			if first_comment is None:
				first_comment = line[1:].strip()
			continue
		if not line:
			if current:
				replicates.append(current)
				current = []
			continue

		try:
			block = tuple(int(token) for token in line.split())
		except ValueError:
			raise ParseError(f"Malformed Line '{line}'", number)
		current.append((number, block))

	if current:
		replicates.append(current)
	if not replicates:
		raise ParseError("No Replicates")

	k = len(replicates[0][0][1])
	largest = 0
	for replicate in replicates:
		for number, block in replicate:
			if len(block) != k:
				raise ParseError(f"Block Has {len(block)} Varieties, Expected {k}", number)
			for x in block:
				if x < 1 or (v is not None and x > v):
					raise ParseError(f"Variety {x} Out Of Range", number)
			largest = max(largest, *block)

	if v is None:
		v = largest
	if v % k != 0:
		raise ParseError(f"Variety Count {v} Is Not A Multiple Of Block Size {k}")
	for replicate in replicates:
		if len(replicate) != v // k:
			raise ParseError(f"Replicate Has {len(replicate)} Blocks, Expected {v // k}", replicate[0][0])

	if label is None:
		label = first_comment or ""
	return ResolvableDesign.from_lists(
		v, k, [[block for _, block in replicate] for replicate in replicates], label=label
	)


def write_design(design: ResolvableDesign) -> str:
	"""Writes A Design In The Same Text Format read_design Accepts"""
	parts = []
	if design.label:
		parts.append(f"# {design.label}\n")
	replicates = [
		"".join(" ".join(str(x) for x in block) + "\n" for block in replicate)
		for replicate in design.replicates
	]
	parts.append("\n".join(replicates))
	return "".join(parts)


def read_design_file(path: str, v: int | None = None) -> ResolvableDesign:
	with open(path, "r", encoding="utf-8") as f:
		return read_design(f.read(), v=v)
