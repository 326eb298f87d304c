"""fzeta: shuffle algebra and f-alphabet machinery for multiple zeta values
extended by fourth and sixth roots of unity."""

from .algebra import LinComb, QSqrtM3, frac
from .words import (
    EMPTY,
    Letter,
    LetterOrder,
    ONE,
    ORDER_X4,
    ORDER_X6,
    Word,
    XI2,
    XI3,
    XI3SQ,
    XI4,
    XI4_3,
    XI6,
    XI6_5,
    ZERO,
    cfl_factorize,
    deconcatenations,
    is_lyndon,
    lyndon_count,
    lyndon_words,
    radford_decompose,
    radford_expand,
    shuffle,
    shuffle_comb,
)
from .iterint import (
    IterInt,
    LiValue,
    RegularizationError,
    based_at_one,
    from_li,
    rebase_to_zero,
    regularize,
    scale_to_one,
    to_li,
)
from .fwords import FExpr, FLetter, FWord, G1, f4, f6
from .bases import (
    BasisElement,
    broadhurst_basis,
    broadhurst_words,
    deligne4_basis,
    deligne4_words,
    generator_count,
    log3_free_class,
    lyndon_fg_words,
    psi0,
    psi0_order_check,
)

__version__ = "0.1.0"
