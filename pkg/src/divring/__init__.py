"""Exact computational workbench around embeddability of group algebras of
right-ordered groups in division rings: ordered group arithmetic, lazy
series with inversion of the module action, closure-operator and
matrix-ideal audits over finite modules, and a reproducible experiment CLI.
"""

from .galg import AlgebraElement, algebra_mul, parse_algebra, support
from .ogroup import (
    DUAL_LEFT_ORDER,
    RIGHT_ORDER,
    ConjugatedBy,
    GroupDescriptor,
    GroupElement,
    compare,
    local_order_class,
    positivity_periodicity_probe,
)
from .scalars import (
    QQ,
    ZZ,
    Fp,
    IntegersMod,
    ModulePresentation,
    QuadImaginary,
    Zmod,
    enumerate_module,
    parse_module,
    parse_ring,
    parse_scaling_constant,
    rational_kernel_basis,
    scalar_inverse,
)
from .series import (
    SeriesStream,
    act_left,
    act_right,
    coefficient_at,
    dubrovin_invert,
    dubrovin_invert_left,
    pair,
    rho,
    rho_inverse,
    roundtrip_prefix_agreement,
    step_budget,
)
from .wqo import BudgetExceeded, ClosureBudget, PartialOpFamily, close, ordered_close, wpo_probe

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement", "algebra_mul", "parse_algebra", "support",
    "DUAL_LEFT_ORDER", "RIGHT_ORDER", "ConjugatedBy", "GroupDescriptor",
    "GroupElement", "compare", "local_order_class",
    "positivity_periodicity_probe",
    "QQ", "ZZ", "Fp", "IntegersMod", "ModulePresentation", "QuadImaginary",
    "Zmod", "enumerate_module", "parse_module", "parse_ring",
    "parse_scaling_constant", "rational_kernel_basis", "scalar_inverse",
    "SeriesStream", "act_left", "act_right", "coefficient_at",
    "dubrovin_invert", "dubrovin_invert_left", "pair", "rho", "rho_inverse",
    "roundtrip_prefix_agreement", "step_budget",
    "BudgetExceeded", "ClosureBudget", "PartialOpFamily", "close",
    "ordered_close", "wpo_probe",
]
