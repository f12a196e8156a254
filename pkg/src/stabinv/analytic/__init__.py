from .formulas import (
    bipartition_product_form,
    conjecture_exponents,
    coxeter_invariant_conjecture,
    entanglement_entropy,
    grouped_tripartite_formula,
    k_table,
    kempe_invariant,
    renyi2_multientropy,
    renyi_multientropy_tripartite,
    tripartite_counting_formula,
    tripartite_multi_invariant,
)
from .xstab import (
    XStabilizerState,
    build_toric_code,
    build_x_cube,
    parse_xgen,
    x_coxeter_invariant,
    x_state_from_generators,
)

__all__ = [
    "XStabilizerState",
    "bipartition_product_form",
    "build_toric_code",
    "build_x_cube",
    "conjecture_exponents",
    "coxeter_invariant_conjecture",
    "entanglement_entropy",
    "grouped_tripartite_formula",
    "k_table",
    "kempe_invariant",
    "parse_xgen",
    "renyi2_multientropy",
    "renyi_multientropy_tripartite",
    "tripartite_counting_formula",
    "tripartite_multi_invariant",
    "x_coxeter_invariant",
    "x_state_from_generators",
]
