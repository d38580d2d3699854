from .core import (
    Pedigree,
    PedigreeStats,
    PedigreeViolation,
    check_excess_bound,
    excess_bound,
    excess_margin,
    is_valid,
    stack_children,
    stats,
    validate,
)
from .families import (
    fig6_pedigree,
    generate_Gk,
    is_proper,
    one_move,
    proper_from_shape,
    random_balanced_proper,
    random_proper,
    random_shape,
)
from .proper import (
    LabelClass,
    classify_labels,
    enumerate_P,
    subpedigree_H,
    verify_subpedigree_H,
)
from .witness import extract_witness, reduce_labels
