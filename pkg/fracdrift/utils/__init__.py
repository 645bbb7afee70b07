import ast
import math
from collections.abc import Callable
from typing import Any

import numpy as np

from fracdrift.exceptions import ConfigError

# names an expression selector may use besides the variable `t`
SAFE_NAMES: dict[str, Any] = {
	"pi": np.pi,
	"e": np.e,
	"sin": np.sin,
	"cos": np.cos,
	"tan": np.tan,
	"exp": np.exp,
	"log": np.log,
	"sqrt": np.sqrt,
	"abs": np.abs,
	"power": np.power,
	"minimum": np.minimum,
	"maximum": np.maximum,
	"where": np.where,
}


def seconds_to_duration(seconds: float | None) -> str:
	"""Compact wall-clock duration: 3725.4 -> "1h 2m 5s", 0.25 -> "0.25s" """
	if not seconds:
		return "0s"
	if seconds < 1:
		return f"{seconds:.2f}s"

	hours, rest = divmod(math.floor(seconds), 3600)
	minutes, secs = divmod(rest, 60)
	parts = [f"{value}{unit}" for value, unit in ((hours, "h"), (minutes, "m"), (secs, "s")) if value]
	return " ".join(parts) or "0s"


def get_context(**variables: Any) -> dict[str, Any]:
	"""Evaluation context for `safe_eval`: the whitelisted math names plus `variables`"""
	return {"__builtins__": {}, **SAFE_NAMES, **variables}


def safe_eval(expression: str, context: dict[str, Any]) -> Any:
	"""
	Evaluate an arithmetic expression against `context`

	:param expression: e.g. "10*t**2" or "sin(2*pi*t) + cos(2*pi*t)"
	:param context: Built by `get_context`
	:return: Result of the expression
	"""
	try:
		tree = ast.parse(expression, mode="eval")
	except SyntaxError as e:
		raise ConfigError(f"Expression '{expression}' is invalid: {e}")

	for node in ast.walk(tree):
		if isinstance(node, ast.Attribute | ast.Subscript | ast.Lambda | ast.comprehension):
			raise ConfigError(f"Expression '{expression}' uses a forbidden construct")
		if isinstance(node, ast.Name) and (node.id.startswith("_") or node.id not in context):
			raise ConfigError(f"Expression '{expression}' uses unknown name '{node.id}'")

	return eval(compile(tree, "<expression>", "eval"), context)


def compile_function(expression: str) -> Callable[[np.ndarray], np.ndarray]:
	"""Turn an expression in `t` into a vectorised function of time"""
	safe_eval(expression, get_context(t=np.linspace(0.1, 1.0, 3)))

	def function(t):
		t = np.asarray(t, dtype=float)
		return np.broadcast_to(safe_eval(expression, get_context(t=t)), t.shape).astype(float)

	function.__name__ = f"expr[{expression}]"
	return function
