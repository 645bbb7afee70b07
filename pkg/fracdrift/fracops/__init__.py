from fracdrift.fracops.constants import HurstConstants
from fracdrift.fracops.function_on_grid import FunctionOnGrid, as_callable
from fracdrift.fracops.transforms import (
	estimate_Q,
	forward_J,
	inverse_Jbar,
	jacobi_rule,
	jbar_values,
	molchan_kernel,
	output_grid,
)

__all__ = [
	"FunctionOnGrid",
	"HurstConstants",
	"as_callable",
	"estimate_Q",
	"forward_J",
	"inverse_Jbar",
	"jacobi_rule",
	"jbar_values",
	"molchan_kernel",
	"output_grid",
]
