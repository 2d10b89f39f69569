"""Mean Assouad dimension and spectrum of symbolic systems."""

from ._assouad import (
    CarpetSystem,
    Error,
    PairSFT,
    RealAlphabet,
    alphabet,
    carpet,
    closed_form_dims,
    count_words,
    cover_count_formula,
    cover_count_oracle,
    estimate_madim,
    estimate_spectrum,
    f_lambda_alphabet,
    f_lambda_spectrum,
    fiber_count,
    interval_cover_count,
    interval_pack_count,
    make_sft,
    scale_indices,
    sinfty_curve,
    spectrum_closed_form,
    sup_fiber_count,
    topological_entropy,
    wandering_demo,
)

__all__ = [
    "CarpetSystem",
    "Error",
    "PairSFT",
    "RealAlphabet",
    "alphabet",
    "carpet",
    "closed_form_dims",
    "count_words",
    "cover_count_formula",
    "cover_count_oracle",
    "estimate_madim",
    "estimate_spectrum",
    "f_lambda_alphabet",
    "f_lambda_spectrum",
    "fiber_count",
    "interval_cover_count",
    "interval_pack_count",
    "make_sft",
    "scale_indices",
    "sinfty_curve",
    "spectrum_closed_form",
    "sup_fiber_count",
    "topological_entropy",
    "wandering_demo",
]
