from fracdrift.core.grid import Ensemble, SamplePath, TimeGrid
from fracdrift.core.quad_var import Lebesgue, MolchanPower, QuadVarModel, Tabulated, quad_var
from fracdrift.core.quadrature import integrate_cells, integrate_dqv, quadrature_rule

__all__ = [
	"Ensemble",
	"Lebesgue",
	"MolchanPower",
	"QuadVarModel",
	"SamplePath",
	"Tabulated",
	"TimeGrid",
	"integrate_cells",
	"integrate_dqv",
	"quad_var",
	"quadrature_rule",
]
