from enums import ExitCode


class DesignError(ValueError):
	"""Base Class For Every Error The Design Tools Raise On Bad Input"""
	exit_code = ExitCode.SHAPE


class ParseError(DesignError):
	exit_code = ExitCode.PARSE

	def __init__(self, message: str, line: int | None = None):
		self.line = line
		if line is not None:
			message = f"Line {line}: {message}"
		super().__init__(message)


class DisconnectedError(DesignError):
	exit_code = ExitCode.DISCONNECTED


class ShapeError(DesignError):
	exit_code = ExitCode.SHAPE


class ValidationError(DesignError):
	exit_code = ExitCode.SHAPE

	def __init__(self, violations):
		self.violations = list(violations)
		lines = "\n".join(f"  {v}" for v in self.violations)
		super().__init__(f"Design Is Invalid ({len(self.violations)} Violations):\n{lines}")


class InternalConsistencyError(RuntimeError):
	exit_code = ExitCode.INTERNAL
