"""Exact even moments of uniform random walks and the denominators of their moment matrices."""

__version__ = "0.1.0"

from .errors import ArithmeticIntegrityError, DomainError, NonIntegralResidue
from .numtheory import (
    Factorization,
    binomial,
    factorial_valuation,
    factorize,
    kummer_carries,
    multinomial,
    p_adic_valuation,
    run_product_gcd,
    star_bound,
)
from .moments import (
    AMatrix,
    WalkParams,
    a_entry,
    build_matrix,
    compositions,
    moment_direct,
    moment_matrix,
    row_sums_of_power,
)
from .denominators import (
    RnuReport,
    Status,
    WitnessResult,
    backwards_witness,
    small_j_closed_form,
    table_compare,
    tightened_bound,
    truncated_r,
    upper_bound,
    verify_conjecture,
    witnessed_r,
    witnesses,
)
from .congruence import (
    CaseKind,
    CongruenceCase,
    ResidueReport,
    check_theorem_mod,
    rational_residue,
    scan_residues,
)
from .render import (
    DenominatorGrid,
    Palette,
    default_palette,
    denominator_grid,
    dump_grid_csv,
    render_image,
)
