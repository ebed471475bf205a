from .forms import BUILTINS, Form2, QuadratureConfig, Rectangle, form_from_json
from .integrate import QuadResult, eval_indexed, eval_iterated, eval_path, integrate
from .oracle import chain_integral, exact_value, poly_oracle, poly_oracle_indexed

Form2Descriptor = Form2

__all__ = [
    "BUILTINS",
    "Form2",
    "Form2Descriptor",
    "QuadratureConfig",
    "Rectangle",
    "form_from_json",
    "QuadResult",
    "eval_indexed",
    "eval_iterated",
    "eval_path",
    "integrate",
    "chain_integral",
    "exact_value",
    "poly_oracle",
    "poly_oracle_indexed",
]

from .checks import (  # noqa: E402
    composition_identity_check,
    homotopy_invariance_check,
    homotopy_suite,
    lemma21_check,
    lemma22_check,
    shuffle_relation_check,
    verify_interchange,
)
from .context import Grid2x2, HorizontalPair, MembraneRealization, Realization  # noqa: E402
from .membranes import (  # noqa: E402
    Membrane,
    Path,
    affine_membrane,
    alpha_map,
    glue_horizontal,
    glue_vertical,
    planar_form,
    pullback_form,
)

__all__ += [
    "composition_identity_check",
    "homotopy_invariance_check",
    "homotopy_suite",
    "lemma21_check",
    "lemma22_check",
    "shuffle_relation_check",
    "verify_interchange",
    "Grid2x2",
    "HorizontalPair",
    "MembraneRealization",
    "Realization",
    "Membrane",
    "Path",
    "affine_membrane",
    "alpha_map",
    "glue_horizontal",
    "glue_vertical",
    "planar_form",
    "pullback_form",
]
