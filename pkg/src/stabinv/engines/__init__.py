from .canonical import canonical_inner_product, canonical_multi_invariant, disentangling_circuit
from .dense import BudgetError, dense_multi_invariant
from .evaluate import NotStabilizerError, evaluate
from .projector import projector_inner_product, projector_reference
from .result import EngineResult

__all__ = [
    "BudgetError",
    "EngineResult",
    "NotStabilizerError",
    "canonical_inner_product",
    "canonical_multi_invariant",
    "dense_multi_invariant",
    "disentangling_circuit",
    "evaluate",
    "projector_inner_product",
    "projector_reference",
]
