import logging

__version__ = "0.4.0"
__title__ = "fracdrift"

logging.getLogger(__name__).addHandler(logging.NullHandler())


def logger(module: str | None = None) -> logging.Logger:
	"""
	Get the package logger, or the logger of one of its modules

	:param module: Short module name ("estimator") or dotted name ("fracdrift.estimator.gram")
	:return: Named stdlib logger
	"""
	if not module:
		return logging.getLogger(__name__)
	if module.startswith(f"{__name__}."):
		return logging.getLogger(module)
	return logging.getLogger(f"{__name__}.{module}")


def log_error(message: str, title: str | None = None) -> None:
	"""Record an error that was caught and handled, keeping the title searchable in logs"""
	if title:
		logger().error("[%s] %s", title, message)
	else:
		logger().error(message)


def throw(message: str, exc: type[Exception] | None = None) -> None:
	"""
	Raise `exc` (ValidationError by default) with `message`

	:param message: Human readable message naming the offending quantity
	:param exc: Exception class from `fracdrift.exceptions`
	"""
	from fracdrift.exceptions import ValidationError

	raise (exc or ValidationError)(message)
