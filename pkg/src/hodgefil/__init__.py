"""Model-free Hodge filtration data for X_0^+(N), N prime, from q-expansions."""

from .series import LaurentSeries
from .formsio import FormBasis, echelonize, eta_product_12, ingest_basis, validate_dimensions
from .derham import DeRhamData, Differential, build_raw_basis, cup, select_jdr, symplectic_complete
from .correspondence import EndoMatrix, hecke_matrix, nice_correspondence
from .hodge import GaugeSolution, HodgeResult, build_lambda, solve_gauge, solve_hodge
from .congruence import CongruenceReport, congruence_report, corank_mod_N

__all__ = [
    "LaurentSeries", "FormBasis", "echelonize", "eta_product_12", "ingest_basis", "validate_dimensions",
    "DeRhamData", "Differential", "build_raw_basis", "cup", "select_jdr", "symplectic_complete",
    "EndoMatrix", "hecke_matrix", "nice_correspondence", "GaugeSolution", "HodgeResult", "build_lambda",
    "solve_gauge", "solve_hodge", "CongruenceReport", "congruence_report", "corank_mod_N",
]
