from riqm.verify.differential import differential_commutator_oracle
from riqm.verify.ode import node_count_exact, node_count_grid, ode_residual, ode_residuals
from riqm.verify.quadrature import orthonormality_matrix, orthonormality_report, radial_overlap
from riqm.verify.report import QuadratureSpec, ResidualReport, reports_json

__all__ = [
    "QuadratureSpec", "ResidualReport", "differential_commutator_oracle", "node_count_exact",
    "node_count_grid", "ode_residual", "ode_residuals", "orthonormality_matrix",
    "orthonormality_report", "radial_overlap", "reports_json",
]
