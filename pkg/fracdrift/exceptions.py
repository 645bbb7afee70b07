class FracDriftError(Exception):
	pass


class ValidationError(FracDriftError):
	pass


class DomainError(ValidationError):
	pass


class DimensionError(ValidationError):
	pass


class ConfigError(ValidationError):
	pass


class OutputError(ConfigError):
	pass


class CapabilityError(FracDriftError):
	pass


class NumericError(FracDriftError):
	pass


class SingularDesignError(NumericError):
	pass


class IllConditionedBasisError(NumericError):
	pass


class DecompositionError(NumericError):
	pass


class ReportIntegrityError(FracDriftError):
	pass


# CLI exit codes, most specific class first
EXIT_CODES: list[tuple[type[FracDriftError], int]] = [
	(NumericError, 3),
	(ReportIntegrityError, 3),
	(ValidationError, 2),
	(CapabilityError, 2),
]


def exit_code_for(exc: BaseException) -> int:
	for cls, code in EXIT_CODES:
		if isinstance(exc, cls):
			return code
	return 1
