import logging
import sys

LOGGER_NAME = "designs"

class AlertManager:
	_instance = None

	def __init__(self):
		if AlertManager._instance is not None:
			raise RuntimeError("Use Get()")
		AlertManager._instance = self

		self.logger = logging.getLogger(LOGGER_NAME)
		if not self.logger.handlers:
			handler = logging.StreamHandler(sys.stderr)
			handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
			self.logger.addHandler(handler)
			self.logger.setLevel(logging.INFO)
			self.logger.propagate = False

	@classmethod
	def Get(cls):
		if cls._instance is None:
			cls._instance = cls()

		return cls._instance

	def SetVerbose(self, verbose: bool):
		self.logger.setLevel(logging.DEBUG if verbose else logging.INFO)

	def CreateAlert(self, message: str):
		"""This Function Creates A Generic Informational Alert

		Args:
			message (str): The Alert Message
		"""
		self.logger.info(message)

	def CreateWarning(self, message: str):
		"""This Function Creates A Generic Warning

		Args:
			message (str): The Warning Message
		"""
		self.logger.warning(message)

	def CreateDebug(self, message: str):
		self.logger.debug(message)
