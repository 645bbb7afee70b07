from fracdrift.basis.base import BasisFamily
from fracdrift.basis.mu_weighted import MuWeightedBasis, mu_weighted_basis
from fracdrift.basis.trigonometric import (
	TrigonometricBasis,
	basis_sup_deriv_sq,
	sup_deriv_sq_on_grid,
	trig_eval,
)

__all__ = [
	"BasisFamily",
	"MuWeightedBasis",
	"TrigonometricBasis",
	"basis_sup_deriv_sq",
	"mu_weighted_basis",
	"sup_deriv_sq_on_grid",
	"trig_eval",
]
